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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace specalg;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double relative_scale(const Element& a, const Element& b, std::size_t m) {
    return std::max(1.0, std::pow(a.norm(), double(m)) * b.norm());
}

std::size_t ceil_log2(std::size_t k) {
    std::size_t r = 0;
    while ((std::size_t{1} << r) < k) ++r;
    return r;
}

// Left regular matrix of x built straight from the structure constants.
oracle::Mat regular_oracle(const Element& x) {
    const auto& alg = *x.algebra();
    const std::size_t d = alg.dim();
    oracle::Mat l = oracle::zeros(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        if (x[i] == Complex{}) continue;
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) l[k][j] += x[i] * alg.constant(i, j, k);
    }
    return l;
}

// Pairs (element, lambda) over every gallery item: each spectral point of a
// in A and of T(a) in the quotient.
struct SpectralCase {
    std::string label;
    Element x;
    Complex lambda;
};

std::vector<SpectralCase> gallery_points(const std::vector<GalleryItem>& gallery) {
    std::vector<SpectralCase> out;
    for (const GalleryItem& g : gallery) {
        const Element b = g.T()(g.a);
        for (const auto& pt : spectrum(g.a).points) out.push_back({g.label + " in A", g.a, pt.lambda});
        for (const auto& pt : spectrum(b).points) out.push_back({g.label + " in B", b, pt.lambda});
    }
    return out;
}

Outcome drazin_axioms() {
    Outcome o;
    std::size_t mismatches = 0, failures = 0;
    double worst = 0.0, worst_oracle = 0.0;
    const auto cases = drazin_cases(200);
    for (const DrazinCase& c : cases) {
        try {
            const GDInverseResult r = drazin(c.a);
            const std::size_t m = std::max<std::size_t>(r.index, 1);
            const AxiomResiduals ax = verify_axioms(c.a, r.inverse, m);
            worst = std::max(worst, ax.max() / relative_scale(c.a, r.inverse, m));
            if (r.index != c.index) ++mismatches;
            const auto blocks = oracle::blocks_of(r.inverse);
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                const auto want = oracle::planted_drazin(oracle::from(c.similarity[b]), oracle::from(c.core[b]),
                                                         c.nil_size[b]);
                worst_oracle = std::max(worst_oracle, oracle::diff(blocks[b], want) / std::max(1.0, oracle::fro(want)));
            }
        } catch (const Error& e) {
            ++failures;
            std::printf("  drazin %s: %s\n", c.label.c_str(), e.what());
        }
    }
    o.pass = cases.size() == 200 && worst <= 1e-8 && mismatches == 0 && failures == 0;
    o.detail = std::to_string(cases.size()) + " cases, worst relative axiom residual " + fmt(worst) +
               ", index mismatches " + std::to_string(mismatches) + ", errors " + std::to_string(failures) +
               ", worst distance to planted inverse " + fmt(worst_oracle);
    return o;
}

Outcome contour_agreement() {
    Outcome o;
    double worst_oracle = 0.0, worst_nodes = 0.0;
    std::size_t used = 0, failures = 0;
    for (const DrazinCase& c : drazin_cases(200)) {
        if (c.index == 0) continue;
        ++used;
        try {
            const Element p = spectral_idempotent(c.a, 0.0);
            const auto blocks = oracle::blocks_of(p);
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                const auto want = oracle::planted_projector(oracle::from(c.similarity[b]), c.nil_size[b]);
                worst_oracle = std::max(worst_oracle, oracle::diff(blocks[b], want));
            }
            LaurentOptions half;
            half.nodes = 128;
            const LaurentData coarse = laurent(c.a, 0.0, half);
            worst_nodes = std::max(worst_nodes, distance(coarse.b.front(), p) / std::max(1.0, p.norm()));
        } catch (const Error& e) {
            ++failures;
            std::printf("  contour %s: %s\n", c.label.c_str(), e.what());
        }
    }
    o.pass = worst_oracle <= 1e-8 && worst_nodes <= 1e-8 && failures == 0;
    o.detail = std::to_string(used) + " singular cases, worst distance to planted projector " + fmt(worst_oracle) +
               ", worst 256 vs 128 node change " + fmt(worst_nodes) + ", errors " + std::to_string(failures);
    return o;
}

Outcome triple_identity(const std::vector<SpectralCase>& points) {
    Outcome o;
    std::size_t mismatches = 0;
    for (const SpectralCase& s : points) {
        try {
            const std::size_t order = laurent(s.x, s.lambda).pole_order;
            const Element shifted = shift(s.x, s.lambda);
            const std::size_t asc = oracle::ascent(regular_oracle(shifted));
            const Element p = spectral_idempotent(s.x, s.lambda);
            const std::size_t nil = oracle::nilpotency_index(regular_oracle(shifted * p));
            if (order != asc || asc != nil) {
                ++mismatches;
                std::printf("  triple %s at (%g,%g): laurent %zu ascent %zu nilpotency %zu\n", s.label.c_str(),
                            s.lambda.real(), s.lambda.imag(), order, asc, nil);
            }
        } catch (const Error& e) {
            ++mismatches;
            std::printf("  triple %s: %s\n", s.label.c_str(), e.what());
        }
    }
    o.pass = mismatches == 0 && !points.empty();
    o.detail = std::to_string(points.size()) + " (element, lambda) pairs, mismatches " + std::to_string(mismatches);
    return o;
}

Outcome round_trip(const std::vector<GalleryItem>& gallery) {
    Outcome o;
    std::size_t cases = 0, mismatches = 0;
    double worst_q = 0.0;
    for (const GalleryItem& g : gallery) {
        const Element b = g.T()(g.a);
        const PoleClassification pc = poles_and_iso(b);
        for (const auto& [lambda, planted] : g.planted) {
            ++cases;
            try {
                const Certificate c = extract_certificate(g.T(), g.a, lambda);
                const ForwardResult f = verify_forward(c);
                std::size_t expected = 0;
                for (std::size_t i = 0; i < pc.poles.size(); ++i)
                    if (std::abs(pc.poles[i] - lambda) <= 1e-6 * std::max(1.0, std::abs(lambda)))
                        expected = pc.pole_orders[i];
                const double dq = distance(c.q, spectral_idempotent(b, lambda));
                worst_q = std::max(worst_q, dq);
                if (f.verdict != Verdict::pole || f.pole_order != expected || expected != planted || dq > 1e-7) {
                    ++mismatches;
                    std::printf("  round trip %s at (%g,%g): verdict %s order %zu expected %zu planted %zu\n",
                                g.label.c_str(), lambda.real(), lambda.imag(), to_string(f.verdict), f.pole_order,
                                expected, planted);
                }
            } catch (const Error& e) {
                ++mismatches;
                std::printf("  round trip %s: %s\n", g.label.c_str(), e.what());
            }
        }
    }
    o.pass = cases >= 30 && mismatches == 0 && worst_q <= 1e-7;
    o.detail = std::to_string(cases) + " (model, lambda) cases, mismatches " + std::to_string(mismatches) +
               ", worst |T(p) - q| " + fmt(worst_q);
    return o;
}

Outcome decomposition(const std::vector<GalleryItem>& gallery) {
    Outcome o;
    std::size_t positive = 0, negative = 0, mismatches = 0;
    double worst = 0.0;
    for (const GalleryItem& g : gallery) {
        for (const auto& [lambda, planted] : g.planted) {
            const Element a = shift(g.a, lambda);
            ++positive;
            try {
                const KDDecomposition d = decompose_kd(g.T(), a);
                const double rec = distance(d.p * d.x * d.p + d.y + d.z, a);
                worst = std::max(worst, rec);
                const bool group = drazin(g.T()(a)).index <= 1;
                if (rec > 1e-9 || d.group_case != group || !validate_decomposition(g.T(), a, d.p, d.x, d.y, d.z)) {
                    ++mismatches;
                    std::printf("  decompose %s at (%g,%g): reconstruction %s group %d/%d\n", g.label.c_str(),
                                lambda.real(), lambda.imag(), fmt(rec).c_str(), d.group_case, group);
                }
            } catch (const Error& e) {
                ++mismatches;
                std::printf("  decompose %s: %s\n", g.label.c_str(), e.what());
            }
        }
        // A shift off the spectrum of T(a): 1 + spectral radius.
        double rho = 0.0;
        for (const auto& pt : spectrum(g.T()(g.a)).points) rho = std::max(rho, std::abs(pt.lambda));
        ++negative;
        try {
            decompose_kd(g.T(), shift(g.a, Complex(1.0 + rho, 0.25)));
            ++mismatches;
            std::printf("  decompose %s: accepted an invertible image\n", g.label.c_str());
        } catch (const ElementInvertible&) {
        } catch (const Error& e) {
            ++mismatches;
            std::printf("  decompose %s (invertible image): %s\n", g.label.c_str(), e.what());
        }
    }
    o.pass = mismatches == 0 && worst <= 1e-9;
    o.detail = std::to_string(positive) + " cases with 0 in iso sigma(T(a)), " + std::to_string(negative) +
               " invertible images, mismatches " + std::to_string(mismatches) + ", worst reconstruction " +
               fmt(worst);
    return o;
}

Outcome lifting() {
    Outcome o;
    SplitMix64 rng(0x11f7);
    std::size_t classes = 0, failures = 0, worst_iter = 0;
    double worst_coset = 0.0, worst_excess = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t n = 2; n <= 8; ++n) {
        const AlgebraPtr ut = upper_triangular(n);
        const IdealBasis j = strictly_upper_ideal(ut);
        const QuotientResult q = quotient(ut, j);
        const std::size_t bound = ceil_log2(n) + 1;
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            ++classes;
            std::vector<Complex> c(n);
            for (std::size_t i = 0; i < n; ++i) c[i] = double((mask >> i) & 1u);
            const Element target(q.algebra, c);
            Element seed = q.lift(target);
            for (const Element& e : j.basis) seed += rng.complex() * e;
            for (int start = 0; start < 2; ++start) {
                try {
                    const LiftReport r = start == 0 ? lift_idempotent(q.projection, target)
                                                    : lift_idempotent(q.projection, target, seed);
                    worst_iter = std::max(worst_iter, r.iterations);
                    const double pn = r.p.norm();
                    bool ok = r.iterations <= bound && is_idempotent(r.p) && distance(q.projection(r.p), target) <= 1e-10;
                    for (double cr : r.coset_residuals) {
                        worst_coset = std::max(worst_coset, cr);
                        ok = ok && cr <= 1e-10;
                    }
                    // Defect recurrence with a rounding allowance of a few ulps of |h|^3.
                    const double slack = 64.0 * eps * std::pow(1.0 + pn, 3.0);
                    for (std::size_t i = 0; i + 1 < r.defect_trace.size(); ++i) {
                        const double ri = r.defect_trace[i];
                        const double excess = r.defect_trace[i + 1] - (4.0 * ri + 3.0) * ri * ri;
                        worst_excess = std::max(worst_excess, excess);
                        ok = ok && excess <= slack;
                    }
                    if (!ok) {
                        ++failures;
                        std::printf("  lift UT(%zu) class %zu start %d: iterations %zu\n", n, mask, start, r.iterations);
                    }
                } catch (const Error& e) {
                    ++failures;
                    std::printf("  lift UT(%zu) class %zu: %s\n", n, mask, e.what());
                }
            }
        }
    }
    o.pass = failures == 0;
    o.detail = std::to_string(classes) + " classes x 2 starts, failures " + std::to_string(failures) +
               ", max iterations " + std::to_string(worst_iter) + ", worst coset residual " + fmt(worst_coset) +
               ", worst recurrence excess " + fmt(worst_excess);
    return o;
}

Outcome finite_collapse(const std::vector<GalleryItem>& gallery) {
    Outcome o;
    std::size_t elements = 0, mismatches = 0;
    double worst = 0.0;
    for (const GalleryItem& g : gallery) {
        for (const Element& x : {g.a, g.T()(g.a)}) {
            ++elements;
            try {
                const PoleClassification pc = poles_and_iso(x);
                const std::size_t points = spectrum(x).points.size();
                const bool sets = pc.poles.size() == points && pc.iso.size() == points && pc.i_class.empty();
                const bool d_empty = drazin_spectrum(x).empty();
                const Element dz = drazin(x).inverse;
                const double diff = distance(koliha_drazin(x).inverse, dz) / std::max(1.0, dz.norm());
                worst = std::max(worst, diff);
                if (!sets || !d_empty || diff > 1e-9) {
                    ++mismatches;
                    std::printf("  collapse %s: sets %d sigma_D empty %d kd diff %s\n", g.label.c_str(), sets, d_empty,
                                fmt(diff).c_str());
                }
            } catch (const Error& e) {
                ++mismatches;
                std::printf("  collapse %s: %s\n", g.label.c_str(), e.what());
            }
        }
    }
    o.pass = mismatches == 0;
    o.detail = std::to_string(elements) + " elements, mismatches " + std::to_string(mismatches) +
               ", worst relative |KD - Drazin| " + fmt(worst);
    return o;
}

Outcome atkinson() {
    Outcome o;
    SplitMix64 rng(0xa7c1);
    std::size_t mismatches = 0, singular = 0;
    std::vector<std::pair<AlgebraPtr, QuotientResult>> models;
    for (std::size_t n = 2; n <= 5; ++n) {
        const AlgebraPtr ut = upper_triangular(n);
        models.emplace_back(ut, quotient(ut, strictly_upper_ideal(ut)));
    }
    for (auto [n, k] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 1}, {3, 2}, {4, 3}}) {
        const AlgebraPtr alg = direct_sum(full_matrix(n), full_matrix(k));
        models.emplace_back(alg, quotient(alg, summand_ideal(alg, 1)));
    }
    for (std::size_t t = 0; t < 500; ++t) {
        const auto& [alg, q] = models[t % models.size()];
        const auto& blocks = alg->metadata().blocks;
        std::vector<DenseMatrix> mats;
        for (const ModelBlock& b : blocks) {
            DenseMatrix m(b.n, b.n);
            for (std::size_t i = 0; i < b.n; ++i)
                for (std::size_t j = (b.kind == BlockKind::upper_triangular ? i : 0); j < b.n; ++j)
                    m(i, j) = rng.complex();
            mats.push_back(std::move(m));
        }
        if (t % 2 == 1) {
            // Plant a singular coset: a zero diagonal entry, or a rank-deficient first block.
            ++singular;
            DenseMatrix& f = mats[0];
            if (blocks[0].kind == BlockKind::upper_triangular) {
                f(rng.below(f.rows()), 0) = 0.0;
                const std::size_t i = rng.below(f.rows());
                f(i, i) = 0.0;
            } else {
                const std::size_t c = rng.below(f.cols());
                for (std::size_t i = 0; i < f.rows(); ++i) f(i, c) = f(i, (c + 1) % f.cols()) * Complex(0.0, 1.0);
            }
        }
        const Element a = from_blocks(alg, mats);
        const bool lib = classify(q.projection, a).fredholm;
        const bool direct = oracle::inverse(regular_oracle(q.projection(a)), 1e-10).has_value();
        if (lib != direct) {
            ++mismatches;
            std::printf("  atkinson case %zu in %s: classify %d, quotient inverse %d\n", t, alg->label().c_str(), lib,
                        direct);
        }
    }
    o.pass = mismatches == 0;
    o.detail = "500 elements (" + std::to_string(singular) + " planted singular), mismatches " +
               std::to_string(mismatches);
    return o;
}

}  // namespace

int main() {
    const auto gallery = theorem_gallery();
    const auto points = gallery_points(gallery);
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Drazin axiom suite", drazin_axioms},
        {"contour and algebra agreement", contour_agreement},
        {"pole-order triple identity", [&] { return triple_identity(points); }},
        {"certificate round trip", [&] { return round_trip(gallery); }},
        {"decomposition a = pxp + y + z", [&] { return decomposition(gallery); }},
        {"idempotent lifting", lifting},
        {"finite-collapse invariants", [&] { return finite_collapse(gallery); }},
        {"Atkinson analog", atkinson}};
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        const Outcome o = criteria[i].second();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %zu %s: %s (%s; %.2f s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
