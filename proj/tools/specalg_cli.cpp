/*
   Copyright 2026 The specalg Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// specalg: batch front-end over the library.
//
//   specalg <command> [--in FILE] [--out FILE] [--tol SPEC] [--nodes N]
//           [--radius R] [--format json|text]
//
// Exit codes: 0 success, 2 invalid input or a domain refusal, 3 numerical
// failure. Failures print {"error", "detail"}.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <specalg/serialize.hpp>

namespace {

using specalg::io::Json;
using namespace specalg;

constexpr int exit_ok = 0;
constexpr int exit_invalid = 2;
constexpr int exit_numerical = 3;

struct RunConfig {
    std::string command;
    std::string in;
    std::string out;
    std::string tol;
    std::optional<std::size_t> nodes;
    std::optional<double> radius;
    std::string format = "json";
};

Tolerances parse_tolerances(const std::string& spec) {
    Tolerances tol;
    if (spec.empty()) return tol;
    auto positive = [](const std::string& name, const std::string& text) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &used);
        } catch (const std::exception&) {
            throw ValidationError("tolerance '" + name + "' is not a number: " + text);
        }
        if (used != text.size() || !std::isfinite(v) || v <= 0.0)
            throw ValidationError("tolerance '" + name + "' must be positive and finite");
        return v;
    };
    if (spec.find('=') == std::string::npos) {
        tol.algebraic = positive("algebraic", spec);
        return tol;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ValidationError("tolerance override '" + item + "' needs name=value");
        const std::string name = item.substr(0, eq);
        const double v = positive(name, item.substr(eq + 1));
        if (name == "structure") tol.structure = v;
        else if (name == "algebraic") tol.algebraic = v;
        else if (name == "rank") tol.rank = v;
        else if (name == "cluster") tol.cluster = v;
        else if (name == "multiple_root") tol.multiple_root = v;
        else if (name == "qnil") tol.qnil = v;
        else if (name == "nilp") tol.nilp = v;
        else if (name == "quadrature") tol.quadrature = v;
        else throw ValidationError("unknown tolerance '" + name + "'");
    }
    return tol;
}

Json read_input(const std::string& path) {
    if (path.empty()) throw ValidationError("--in is required for this command");
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open input file '" + path + "'");
    try {
        return Json::parse(f);
    } catch (const Json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
}

const Json& need(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("input needs '") + key + "'");
    return j.at(key);
}

// Either {"homomorphism": {...}} or {"algebra": ..., "ideal": ...} (quotient map).
struct MapInput {
    AlgebraPtr source;
    Homomorphism T;
};

MapInput load_map(const Json& in, const Tolerances& tol) {
    if (in.contains("homomorphism")) {
        Homomorphism t = io::homomorphism_from_json(in.at("homomorphism"), tol);
        return {t.source, std::move(t)};
    }
    AlgebraPtr alg = io::algebra_from_json(need(in, "algebra"), tol);
    IdealBasis ideal = io::ideal_from_json(alg, need(in, "ideal"), tol);
    QuotientResult q = quotient(alg, ideal, tol);
    return {alg, q.projection};
}

Complex lambda_of(const Json& in) { return in.contains("lambda") ? io::complex_from_json(in.at("lambda")) : 0.0; }

Json run_gallery(const Tolerances& tol, bool& pass) {
    Json items = Json::array();
    std::size_t cases = 0, mismatches = 0;
    for (const GalleryItem& it : theorem_gallery()) {
        const Element b = it.T()(it.a);
        const PoleClassification pc = poles_and_iso(b, tol);
        for (const auto& [lambda, planted] : it.planted) {
            Json row{{"model", it.label}, {"lambda", io::to_json(lambda)}, {"planted_order", planted}};
            bool ok = false;
            try {
                const Certificate c = extract_certificate(it.T(), it.a, lambda, true, tol);
                std::size_t expected = 0;
                for (std::size_t i = 0; i < pc.poles.size(); ++i)
                    if (std::abs(pc.poles[i] - lambda) <= 1e-6 * std::max(1.0, std::abs(lambda)))
                        expected = pc.pole_orders[i];
                const KDDecomposition kd = decompose_kd(it.T(), shift(it.a, lambda), tol);
                const bool group = drazin(shift(b, lambda), tol).index <= 1;
                ok = c.verdict == Verdict::pole && c.pole_order == planted && expected == planted &&
                     c.residuals.at("q_match") <= 1e-7 && kd.reconstruction <= tol.alg(it.a.norm()) &&
                     kd.group_case == group;
                row["verdict"] = io::to_json(c)["verdict"];
                row["q_match"] = c.residuals.at("q_match");
            } catch (const Error& e) {
                row["error"] = io::error_json(e);
            }
            row["ok"] = ok;
            ++cases;
            if (!ok) ++mismatches;
            items.push_back(std::move(row));
        }
    }
    pass = mismatches == 0 && cases >= 30;
    return Json{{"version", gallery_version}, {"cases", cases}, {"mismatches", mismatches}, {"items", std::move(items)}};
}

Json run(const RunConfig& cfg, bool& pass) {
    const Tolerances tol = parse_tolerances(cfg.tol);
    if (cfg.nodes && (*cfg.nodes < 4 || *cfg.nodes % 2 != 0))
        throw ValidationError("--nodes must be even and at least 4");
    if (cfg.radius && (!std::isfinite(*cfg.radius) || *cfg.radius <= 0.0))
        throw ValidationError("--radius must be positive and finite");
    pass = true;
    if (cfg.command == "gallery") return run_gallery(tol, pass);

    const Json in = read_input(cfg.in);
    const std::string& cmd = cfg.command;
    if (cmd == "spectrum" || cmd == "laurent" || cmd == "drazin") {
        AlgebraPtr alg = io::algebra_from_json(need(in, "algebra"), tol);
        Element a = io::element_from_json(alg, need(in, "element"));
        if (cmd == "spectrum") return io::to_json(spectrum(a, tol));
        if (cmd == "laurent") {
            LaurentOptions opts;
            opts.nodes = cfg.nodes;
            opts.radius = cfg.radius;
            return io::to_json(laurent(a, lambda_of(in), opts, tol));
        }
        const std::string mode = in.value("mode", std::string("drazin"));
        if (mode == "drazin") return io::to_json(drazin(a, tol));
        if (mode == "group") return io::to_json(group_inverse(a, tol));
        if (mode == "koliha") return io::to_json(koliha_drazin(a, tol));
        throw ValidationError("unknown drazin mode '" + mode + "'");
    }
    if (cmd == "quotient") {
        AlgebraPtr alg = io::algebra_from_json(need(in, "algebra"), tol);
        IdealBasis ideal = io::ideal_from_json(alg, need(in, "ideal"), tol);
        return io::to_json(quotient(alg, ideal, tol));
    }
    const MapInput m = load_map(in, tol);
    if (cmd == "classify") return io::to_json(classify(m.T, io::element_from_json(m.source, need(in, "element")), tol));
    if (cmd == "lift") {
        Element q = io::element_from_json(m.T.target, need(in, "q"));
        std::optional<Element> seed;
        if (in.contains("seed")) seed = io::element_from_json(m.source, in.at("seed"));
        return io::to_json(lift_idempotent(m.T, q, seed, tol));
    }
    if (cmd == "certify") {
        Element a = io::element_from_json(m.source, need(in, "element"));
        return io::to_json(extract_certificate(m.T, a, lambda_of(in), in.value("nilpotency_check", true), tol));
    }
    if (cmd == "decompose")
        return io::to_json(decompose_kd(m.T, io::element_from_json(m.source, need(in, "element")), tol));
    throw ValidationError("unknown command '" + cmd + "'");
}

std::string render(const Json& report, const std::string& format) {
    if (format == "json") return report.dump(2) + "\n";
    std::string out;
    for (auto it = report.begin(); it != report.end(); ++it) {
        const Json& v = it.value();
        out += it.key() + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
    return out;
}

int emit(const RunConfig& cfg, const Json& report) {
    const std::string text = render(report, cfg.format);
    if (cfg.out.empty()) {
        std::cout << text;
        return exit_ok;
    }
    std::filesystem::path path(cfg.out);
    if (const char* dir = std::getenv("SPECALG_REPORT_DIR"); dir && path.is_relative())
        path = std::filesystem::path(dir) / path;
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "cannot write '" << path.string() << "'\n";
        return exit_invalid;
    }
    f << text;
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral computations on finite-dimensional algebras"};
    app.require_subcommand(1);
    RunConfig cfg;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"spectrum", "clustered spectrum of an element"},
        {"laurent", "principal part of the resolvent at a spectral point"},
        {"drazin", "Drazin, group or Koliha-Drazin inverse"},
        {"classify", "Fredholm / Riesz / T-nilpotent tags relative to a homomorphism"},
        {"quotient", "quotient algebra by a two-sided ideal"},
        {"lift", "lift an idempotent through a surjective homomorphism"},
        {"certify", "spectral certificate for T(a) at lambda"},
        {"decompose", "a = pxp + y + z decomposition"},
        {"gallery", "run the fixed model gallery"}};
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--in", cfg.in, "input JSON file");
        sub->add_option("--out", cfg.out, "report file (default stdout)");
        sub->add_option("--tol", cfg.tol, "algebraic tolerance, or name=value[,name=value...]");
        sub->add_option("--nodes", cfg.nodes, "quadrature nodes");
        sub->add_option("--radius", cfg.radius, "contour radius");
        sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sub->callback([&cfg, name = name] { cfg.command = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid;
    }

    try {
        bool pass = true;
        const Json report = run(cfg, pass);
        const int rc = emit(cfg, report);
        if (rc != exit_ok) return rc;
        return pass ? exit_ok : exit_numerical;
    } catch (const Error& e) {
        emit(cfg, io::error_json(e));
        return e.category() == ErrorCategory::numerical ? exit_numerical : exit_invalid;
    } catch (const Json::exception& e) {
        emit(cfg, Json{{"error", "ValidationError"}, {"detail", e.what()}});
        return exit_invalid;
    }
}
