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

#ifndef SPECALG_SERIALIZE_HPP
#define SPECALG_SERIALIZE_HPP

// JSON encoding of algebras, elements, ideals, homomorphisms and reports.
// Requires nlohmann/json (vendored as json.hpp).

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "specalg.hpp"

namespace specalg::io {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars, vectors, matrices
// ---------------------------------------------------------------------------

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

/// A complex number is [re, im] or a plain real number.
inline Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ValidationError("expected a complex number [re, im], got " + j.dump());
}

inline Json to_json(std::span<const Complex> v) {
    Json out = Json::array();
    for (const Complex& z : v) out.push_back(to_json(z));
    return out;
}

inline std::vector<Complex> vector_from_json(const Json& j) {
    if (!j.is_array()) throw ValidationError("expected an array of complex numbers");
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const Json& z : j) out.push_back(complex_from_json(z));
    return out;
}

inline Json to_json(const DenseMatrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

inline DenseMatrix matrix_from_json(const Json& j) {
    if (!j.is_array()) throw ValidationError("expected a matrix as an array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = rows == 0 ? 0 : j[0].size();
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw ValidationError("ragged matrix rows");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
    }
    return m;
}

inline Json to_json(const std::vector<double>& v) { return Json(v); }

// ---------------------------------------------------------------------------
// Algebras and elements
// ---------------------------------------------------------------------------

inline ModelSpec model_spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ValidationError("builtin model needs a 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    ModelSpec s;
    if (kind == "direct_sum") {
        s.kind = ModelSpec::Kind::direct_sum;
        if (!j.contains("parts") || !j.at("parts").is_array())
            throw ValidationError("direct_sum needs 'parts'");
        for (const Json& p : j.at("parts")) s.parts.push_back(model_spec_from_json(p));
        return s;
    }
    if (kind == "full_matrix") s.kind = ModelSpec::Kind::full_matrix;
    else if (kind == "upper_triangular") s.kind = ModelSpec::Kind::upper_triangular;
    else if (kind == "diagonal") s.kind = ModelSpec::Kind::diagonal;
    else throw ValidationError("unknown builtin model kind '" + kind + "'");
    if (!j.contains("n") || !j.at("n").is_number_unsigned() || j.at("n").get<std::size_t>() == 0)
        throw ValidationError("builtin model needs a positive integer 'n'");
    s.n = j.at("n").get<std::size_t>();
    return s;
}

/// {dim, label, unit, structure} with structure[i][j][k] = c_{ij}^k.
inline Json to_json(const StructureAlgebra& a) {
    const std::size_t d = a.dim();
    Json st = Json::array();
    for (std::size_t i = 0; i < d; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < d; ++j) {
            Json cell = Json::array();
            for (std::size_t k = 0; k < d; ++k) cell.push_back(to_json(a.constant(i, j, k)));
            row.push_back(std::move(cell));
        }
        st.push_back(std::move(row));
    }
    Json out{{"dim", d}, {"label", a.label()}, {"unit", to_json(a.unit())}, {"structure", std::move(st)}};
    if (!a.metadata().basis_labels.empty()) out["basis_labels"] = a.metadata().basis_labels;
    return out;
}

inline AlgebraPtr algebra_from_json(const Json& j, const Tolerances& tol = {}) {
    if (!j.is_object()) throw ValidationError("algebra must be an object");
    if (j.contains("builtin")) return builtin_model(model_spec_from_json(j.at("builtin")));
    if (!j.contains("dim") || !j.contains("unit") || !j.contains("structure"))
        throw ValidationError("algebra needs 'dim', 'unit' and 'structure' (or 'builtin')");
    const std::size_t d = j.at("dim").get<std::size_t>();
    const Json& st = j.at("structure");
    std::vector<Complex> c(d * d * d);
    if (!st.is_array() || st.size() != d) throw ValidationError("structure must be d x d x d");
    for (std::size_t i = 0; i < d; ++i) {
        if (!st[i].is_array() || st[i].size() != d) throw ValidationError("structure must be d x d x d");
        for (std::size_t k = 0; k < d; ++k) {
            const Json& cell = st[i][k];
            if (!cell.is_array() || cell.size() != d) throw ValidationError("structure must be d x d x d");
            for (std::size_t m = 0; m < d; ++m) c[(i * d + k) * d + m] = complex_from_json(cell[m]);
        }
    }
    AlgebraMetadata meta;
    if (j.contains("basis_labels")) meta.basis_labels = j.at("basis_labels").get<std::vector<std::string>>();
    return make_algebra(std::move(c), vector_from_json(j.at("unit")), j.value("label", std::string("A")),
                        std::move(meta), tol);
}

inline Json to_json(const Element& x) { return Json{{"coeffs", to_json(x.coeffs())}}; }

/// {"coeffs": [...]} or, for block models, {"blocks": [matrix, ...]}.
inline Element element_from_json(const AlgebraPtr& alg, const Json& j) {
    if (!j.is_object()) throw ValidationError("element must be an object");
    if (j.contains("coeffs")) {
        auto c = vector_from_json(j.at("coeffs"));
        if (c.size() != alg->dim())
            throw ValidationError("element has " + std::to_string(c.size()) + " coefficients, algebra dimension is " +
                                  std::to_string(alg->dim()));
        for (const Complex& z : c)
            if (!is_finite(z)) throw ValidationError("element coefficients must be finite");
        return {alg, std::move(c)};
    }
    if (j.contains("blocks")) {
        std::vector<DenseMatrix> mats;
        for (const Json& m : j.at("blocks")) mats.push_back(matrix_from_json(m));
        return from_blocks(alg, mats);
    }
    throw ValidationError("element needs 'coeffs' or 'blocks'");
}

// ---------------------------------------------------------------------------
// Ideals and homomorphisms
// ---------------------------------------------------------------------------

/// {"basis": [elements]}, {"builtin": "radical"} or {"builtin": "summand", "index": i}.
inline IdealBasis ideal_from_json(const AlgebraPtr& alg, const Json& j, const Tolerances& tol = {}) {
    if (!j.is_object()) throw ValidationError("ideal must be an object");
    if (j.contains("builtin")) {
        const std::string kind = j.at("builtin").get<std::string>();
        if (kind == "radical") return strictly_upper_ideal(alg, tol);
        if (kind == "summand") return summand_ideal(alg, j.value("index", std::size_t{1}), tol);
        throw ValidationError("unknown builtin ideal '" + kind + "'");
    }
    if (!j.contains("basis")) throw ValidationError("ideal needs 'basis' or 'builtin'");
    std::vector<Element> basis;
    for (const Json& e : j.at("basis")) basis.push_back(element_from_json(alg, e));
    return validate_ideal(alg, std::move(basis), j.value("label", std::string("J")), tol);
}

inline Json to_json(const IdealBasis& ideal) {
    Json basis = Json::array();
    for (const Element& e : ideal.basis) basis.push_back(to_json(e));
    return Json{{"basis", std::move(basis)}, {"label", ideal.label}};
}

inline Json to_json(const Homomorphism& t) {
    return Json{{"source", to_json(*t.source)}, {"target", to_json(*t.target)}, {"matrix", to_json(t.matrix)}};
}

inline Homomorphism homomorphism_from_json(const Json& j, const Tolerances& tol = {}) {
    if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("matrix"))
        throw ValidationError("homomorphism needs 'source', 'target' and 'matrix'");
    return make_homomorphism(algebra_from_json(j.at("source"), tol), algebra_from_json(j.at("target"), tol),
                             matrix_from_json(j.at("matrix")), tol);
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline Json to_json(const SpectrumReport& rep) {
    Json pts = Json::array();
    for (const auto& p : rep.points)
        pts.push_back(Json{{"lambda", to_json(p.lambda)}, {"multiplicity", p.multiplicity}, {"radius", p.radius}});
    return Json{{"points", std::move(pts)}, {"cluster_tol", rep.cluster_tol}};
}

inline Json to_json(const LaurentData& ld) {
    Json principal = Json::array();
    for (const Element& b : ld.b) principal.push_back(to_json(b));
    return Json{{"lambda0", to_json(ld.lambda0)},
                {"pole_order", ld.pole_order},
                {"principal_part", std::move(principal)},
                {"a0", to_json(ld.a0)},
                {"radius", ld.radius},
                {"nodes", ld.nodes},
                {"coefficient_norms", ld.coefficient_norms},
                {"node_change", ld.node_change},
                {"a0_change", ld.a0_change},
                {"terminates", ld.terminates}};
}

inline Json to_json(const GDInverseResult& r) {
    return Json{{"kind", to_string(r.kind)},
                {"index", r.index},
                {"inverse", to_json(r.inverse)},
                {"idempotent", to_json(r.idempotent)},
                {"residuals", Json::array({r.residuals[0], r.residuals[1], r.residuals[2]})},
                {"defect", to_json(r.defect)}};
}

inline Json to_json(const ClassificationTag& c) {
    return Json{{"fredholm", c.fredholm}, {"riesz", c.riesz}, {"t_nilpotent", c.t_nilpotent}, {"k", c.k}};
}

inline Json to_json(const LiftReport& r) {
    return Json{{"p", to_json(r.p)},
                {"iterations", r.iterations},
                {"defect_trace", r.defect_trace},
                {"coset_residuals", r.coset_residuals}};
}

inline Json to_json(const QuotientResult& q) {
    return Json{{"algebra", to_json(*q.algebra)},
                {"projection", to_json(q.projection.matrix)},
                {"complement_indices", q.complement_indices},
                {"ideal_dim", q.ideal.dim()},
                {"ideal_nilpotent", q.ideal.nilpotency_index.has_value()}};
}

inline Json to_json(const Certificate& c) {
    Json verdict{{"kind", to_string(c.verdict)}};
    if (c.verdict == Verdict::pole) verdict["order"] = c.pole_order;
    Json corner{{"kind", to_string(c.corner_class)}};
    if (c.corner_class == CornerClass::nilpotent) corner["k"] = c.corner_k;
    Json residuals = Json::object();
    for (const auto& [k, v] : c.residuals) residuals[k] = v;
    return Json{{"model", c.T.source->label()},
                {"lambda", to_json(c.lambda)},
                {"p", to_json(c.p)},
                {"q", to_json(c.q)},
                {"corner_class", std::move(corner)},
                {"verdict", std::move(verdict)},
                {"best_effort", c.best_effort},
                {"lift_iterations", c.lift_iterations},
                {"residuals", std::move(residuals)}};
}

inline Json to_json(const KDDecomposition& d) {
    Json cls{{"kind", to_string(d.x_class)}};
    if (d.x_class == CornerClass::nilpotent) cls["k"] = d.k;
    return Json{{"p", to_json(d.p)},         {"x", to_json(d.x)},
                {"y", to_json(d.y)},         {"z", to_json(d.z)},
                {"x_class", std::move(cls)}, {"group_case", d.group_case},
                {"reconstruction", d.reconstruction}};
}

inline Json error_json(const Error& e) { return Json{{"error", e.name()}, {"detail", e.detail()}}; }

}  // namespace specalg::io

#endif  // SPECALG_SERIALIZE_HPP
