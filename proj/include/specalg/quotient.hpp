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

#ifndef SPECALG_QUOTIENT_HPP
#define SPECALG_QUOTIENT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "spectral.hpp"

namespace specalg {

// ---------------------------------------------------------------------------
// Ideals
// ---------------------------------------------------------------------------

struct IdealBasis {
    AlgebraPtr algebra;
    std::vector<Element> basis;
    std::string label;
    DenseMatrix orthonormal;          // d x m, orthonormal basis of the span
    double closure_residual = 0.0;    // worst distance of e_i j_k, j_k e_i to the span
    bool inessential = true;          // finite spectra throughout, automatic here
    std::optional<std::size_t> nilpotency_index;  // least k with J^k = 0

    std::size_t dim() const noexcept { return basis.size(); }

    /// Columns are the basis elements in ambient coordinates.
    DenseMatrix matrix() const {
        DenseMatrix m(algebra->dim(), basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) m.set_column(j, basis[j].coeffs());
        return m;
    }

    double residual(const Element& x) const { return span_residual(orthonormal, x.coeffs()); }
};

namespace detail {

// Dimension sequence of J, J^2, ... until it reaches zero or stalls.
inline std::optional<std::size_t> ideal_nilpotency(const AlgebraPtr& alg, const DenseMatrix& q,
                                                   double rank_tol) {
    if (q.cols() == 0) return 1;
    const std::size_t d = alg->dim();
    DenseMatrix cur = q;
    for (std::size_t k = 1; k <= d + 1; ++k) {
        DenseMatrix prods(d, cur.cols() * q.cols());
        std::size_t c = 0;
        for (std::size_t a = 0; a < cur.cols(); ++a)
            for (std::size_t b = 0; b < q.cols(); ++b)
                prods.set_column(c++, alg->multiply(cur.column(a), q.column(b)));
        // q is orthonormal, so products are O(max constant) unless they vanish.
        if (prods.frobenius() <= rank_tol * (1.0 + alg->max_constant()) * double(prods.cols())) return k + 1;
        const DenseMatrix next = orthonormal_range(prods, rank_tol);
        if (next.cols() == 0) return k + 1;
        if (next.cols() == cur.cols()) return std::nullopt;
        cur = next;
    }
    return std::nullopt;
}

}  // namespace detail

/// Checks linear independence and two-sided closure of span(basis).
inline IdealBasis validate_ideal(const AlgebraPtr& alg, std::vector<Element> basis,
                                 std::string label = "J", const Tolerances& tol = {}) {
    const std::size_t d = alg->dim();
    for (const Element& e : basis)
        if (e.algebra().get() != alg.get()) throw AlgebraMismatch("ideal element of another algebra");
    IdealBasis out{alg, std::move(basis), std::move(label), DenseMatrix(d, 0), 0.0, true, std::nullopt};
    const std::size_t m = out.basis.size();
    if (m == 0) {
        out.nilpotency_index = 1;
        return out;
    }
    const DenseMatrix b = out.matrix();
    out.orthonormal = orthonormal_range(b, tol.rank);
    if (out.orthonormal.cols() != m) throw ValidationError("ideal basis is linearly dependent");
    if (m == d) throw NotProper("ideal spans the whole algebra");

    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const Element e = Element::basis(alg, i);
        for (std::size_t k = 0; k < m; ++k) {
            const Element& j = out.basis[k];
            for (int side = 0; side < 2; ++side) {
                const Element prod = side == 0 ? e * j : j * e;
                const double r = out.residual(prod);
                worst = std::max(worst, r);
                if (r > tol.alg(j.norm() * std::max(1.0, alg->max_constant())))
                    throw NotClosedUnderMultiplication(
                        std::string(side == 0 ? "e" : "j") + std::to_string(side == 0 ? i : k) +
                        " * " + std::string(side == 0 ? "j" : "e") +
                        std::to_string(side == 0 ? k : i) + " leaves the span, residual " +
                        fmt(r));
            }
        }
    }
    out.closure_residual = worst;
    out.nilpotency_index = detail::ideal_nilpotency(alg, out.orthonormal, tol.rank);
    return out;
}

/// Strictly upper entries of every upper triangular block.
inline IdealBasis strictly_upper_ideal(const AlgebraPtr& alg, const Tolerances& tol = {}) {
    std::vector<Element> basis;
    for (const ModelBlock& b : alg->metadata().blocks) {
        if (b.kind != BlockKind::upper_triangular) continue;
        for (std::size_t i = 0; i < b.n; ++i)
            for (std::size_t j = i + 1; j < b.n; ++j)
                basis.push_back(Element::basis(alg, b.offset + detail::upper_index(b.n, i, j)));
    }
    return validate_ideal(alg, std::move(basis), "radical", tol);
}

/// All basis elements of one summand of a block model.
inline IdealBasis summand_ideal(const AlgebraPtr& alg, std::size_t block, const Tolerances& tol = {}) {
    const auto& blocks = alg->metadata().blocks;
    if (block >= blocks.size())
        throw ValidationError("block index " + std::to_string(block) + " out of range");
    std::vector<Element> basis;
    for (std::size_t i = 0; i < blocks[block].dim(); ++i)
        basis.push_back(Element::basis(alg, blocks[block].offset + i));
    return validate_ideal(alg, std::move(basis), "summand" + std::to_string(block), tol);
}

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

struct Homomorphism {
    AlgebraPtr source;
    AlgebraPtr target;
    DenseMatrix matrix;  // target dim x source dim
    bool surjective = false;
    double unit_residual = 0.0;
    double multiplicativity_residual = 0.0;

    Element operator()(const Element& x) const {
        if (x.algebra().get() != source.get()) throw AlgebraMismatch("element is not in the source");
        return {target, matrix.apply(x.coeffs())};
    }
};

inline Homomorphism make_homomorphism(const AlgebraPtr& source, const AlgebraPtr& target,
                                      DenseMatrix matrix, const Tolerances& tol = {}) {
    const std::size_t ds = source->dim();
    const std::size_t dt = target->dim();
    if (matrix.rows() != dt || matrix.cols() != ds)
        throw ValidationError("homomorphism matrix must be " + std::to_string(dt) + "x" +
                              std::to_string(ds));
    for (const Complex& z : matrix.data())
        if (!is_finite(z)) throw ValidationError("homomorphism matrix has non-finite entries");
    Homomorphism t{source, target, std::move(matrix)};
    t.unit_residual = distance(t.matrix.apply(source->unit()), target->unit());
    if (t.unit_residual > tol.alg(1.0))
        throw ValidationError("T(1) != 1, residual " + fmt(t.unit_residual));

    std::vector<std::vector<Complex>> images(ds);
    for (std::size_t i = 0; i < ds; ++i) images[i] = t.matrix.column(i);
    double worst = 0.0;
    for (std::size_t i = 0; i < ds; ++i)
        for (std::size_t j = 0; j < ds; ++j) {
            std::vector<Complex> prod(ds);
            for (const auto& term : source->product(i, j)) prod[term.index] += term.coeff;
            const auto lhs = t.matrix.apply(prod);
            const auto rhs = target->multiply(images[i], images[j]);
            const double r = distance(lhs, rhs);
            worst = std::max(worst, r);
            if (r > tol.alg(norm(images[i]) * norm(images[j])))
                throw ValidationError("T(e" + std::to_string(i) + " e" + std::to_string(j) +
                                      ") != T(e" + std::to_string(i) + ") T(e" +
                                      std::to_string(j) + "), residual " + fmt(r));
        }
    t.multiplicativity_residual = worst;
    t.surjective = numerical_rank(t.matrix, tol.rank) == dt;
    return t;
}

inline Homomorphism identity_homomorphism(const AlgebraPtr& a) {
    return make_homomorphism(a, a, DenseMatrix::identity(a->dim()));
}

// ---------------------------------------------------------------------------
// Quotients
// ---------------------------------------------------------------------------

struct QuotientResult {
    AlgebraPtr algebra;
    Homomorphism projection;
    DenseMatrix section;  // d x (d - m): the completing standard basis vectors
    std::vector<std::size_t> complement_indices;
    IdealBasis ideal;

    Element lift(const Element& x) const {
        if (x.algebra().get() != algebra.get()) throw AlgebraMismatch("not a quotient element");
        return {projection.source, section.apply(x.coeffs())};
    }
};

/// A / J on the cosets of standard basis vectors completing a basis of J.
inline QuotientResult quotient(const AlgebraPtr& alg, const IdealBasis& ideal, const Tolerances& tol = {}) {
    if (ideal.algebra.get() != alg.get()) throw AlgebraMismatch("ideal of another algebra");
    const std::size_t d = alg->dim();
    const std::size_t m = ideal.dim();
    if (m >= d) throw NotProper("ideal spans the whole algebra");

    // Pivot on the columns of I - Q Q^H to pick well separated complements.
    DenseMatrix proj = DenseMatrix::identity(d) - ideal.orthonormal * ideal.orthonormal.adjoint();
    PivotedQR qr(proj, tol.rank);
    std::vector<std::size_t> comp(qr.permutation().begin(), qr.permutation().begin() + (d - m));
    std::sort(comp.begin(), comp.end());
    const std::size_t r = d - m;

    DenseMatrix full(d, d);
    const DenseMatrix jm = ideal.matrix();
    for (std::size_t j = 0; j < m; ++j) full.set_column(j, jm.column(j));
    DenseMatrix section(d, r);
    for (std::size_t a = 0; a < r; ++a) {
        full(comp[a], m + a) = 1.0;
        section(comp[a], a) = 1.0;
    }
    LuDecomposition lu(full, tol.rank);
    if (lu.singular()) throw ValidationError("could not complete the ideal basis");
    DenseMatrix pi(r, d);
    std::vector<Complex> e(d);
    for (std::size_t j = 0; j < d; ++j) {
        std::fill(e.begin(), e.end(), Complex{});
        e[j] = 1.0;
        const auto x = lu.solve(e);
        for (std::size_t a = 0; a < r; ++a) pi(a, j) = x[m + a];
    }

    std::vector<Complex> structure(r * r * r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
            std::vector<Complex> prod(d);
            for (const auto& t : alg->product(comp[a], comp[b])) prod[t.index] += t.coeff;
            const auto c = pi.apply(prod);
            for (std::size_t k = 0; k < r; ++k) structure[(a * r + b) * r + k] = c[k];
        }
    AlgebraMetadata meta;
    const auto& labels = alg->metadata().basis_labels;
    for (std::size_t idx : comp)
        meta.basis_labels.push_back("[" + (labels.empty() ? "e" + std::to_string(idx) : labels[idx]) + "]");
    auto q = make_algebra(std::move(structure), pi.apply(alg->unit()),
                          alg->label() + "/" + ideal.label, std::move(meta), tol);
    Homomorphism h = make_homomorphism(alg, q, std::move(pi), tol);
    return {std::move(q), std::move(h), std::move(section), std::move(comp), ideal};
}

/// Null space of T as an ideal of the source.
inline IdealBasis kernel(const Homomorphism& t, const Tolerances& tol = {}) {
    const DenseMatrix ns = null_space(t.matrix, tol.rank);
    std::vector<Element> basis;
    for (std::size_t j = 0; j < ns.cols(); ++j) basis.emplace_back(t.source, ns.column(j));
    try {
        return validate_ideal(t.source, std::move(basis), "ker", tol);
    } catch (const NotClosedUnderMultiplication& e) {
        throw ValidationError("kernel is not an ideal: " + e.detail());
    }
}

// ---------------------------------------------------------------------------
// Relative classes
// ---------------------------------------------------------------------------

struct ClassificationTag {
    bool fredholm = false;
    bool riesz = false;
    bool t_nilpotent = false;
    std::size_t k = 0;  // least power in the kernel when t_nilpotent
};

/// Least k <= dim with a^k in span(ker), if any.
inline std::optional<std::size_t> kernel_power(const Element& a, const IdealBasis& ker,
                                               const Tolerances& tol = {}) {
    const std::size_t d = a.algebra()->dim();
    const double base = std::max(1.0, a.norm());
    Element pw = a;
    double scale = base;
    for (std::size_t k = 1; k <= d; ++k) {
        if (ker.residual(pw) <= tol.algebraic * pw.norm() + 1e-13 * scale) return k;
        pw = pw * a;
        scale *= base;
    }
    return std::nullopt;
}

inline ClassificationTag classify(const Homomorphism& t, const Element& a, const IdealBasis& ker,
                                  const Tolerances& tol = {}) {
    const Element b = t(a);
    ClassificationTag out;
    out.fredholm = is_invertible(b, tol);
    out.riesz = is_quasinilpotent(b, tol);
    if (const auto k = kernel_power(a, ker, tol)) {
        out.t_nilpotent = true;
        out.k = *k;
    }
    return out;
}

inline ClassificationTag classify(const Homomorphism& t, const Element& a, const Tolerances& tol = {}) {
    return classify(t, a, kernel(t, tol), tol);
}

// ---------------------------------------------------------------------------
// Corners and lifting
// ---------------------------------------------------------------------------

struct CornerHom {
    Homomorphism hom;
    CornerAlgebra source;
    CornerAlgebra target;
};

/// T_{p,q}: pAp -> qBq with q = T(p).
inline CornerHom corner_hom(const Homomorphism& t, const Element& p, const Tolerances& tol = {}) {
    const Element q = t(p);
    if (q.norm() <= tol.alg(0.0)) throw IdempotentInKernel("T(p) = 0");
    CornerAlgebra src = corner_algebra(t.source, p, tol);
    CornerAlgebra tgt = corner_algebra(t.target, q, tol);
    DenseMatrix m = tgt.coordinates * t.matrix * src.embedding;
    Homomorphism h = make_homomorphism(src.algebra, tgt.algebra, std::move(m), tol);
    if (t.surjective && !h.surjective) throw ConclusionMismatch("corner map of a surjection is not onto");
    return {std::move(h), std::move(src), std::move(tgt)};
}

struct LiftReport {
    Element p;
    std::size_t iterations = 0;
    std::vector<double> defect_trace;     // |h_i^2 - h_i|, i = 0 .. iterations
    std::vector<double> coset_residuals;  // |T(h_i) - q|
};

namespace detail {

// h <- 3h^2 - 2h^3 without the surjectivity precondition.
inline LiftReport cubic_lift(const Homomorphism& t, const Element& q, Element h, const Tolerances& tol) {
    const std::size_t d = t.source->dim();
    const std::size_t limit =
        std::max<std::size_t>(40, 2 * static_cast<std::size_t>(std::ceil(std::log2(double(d)))));
    const Element three = 3.0 * Element::unit(t.source);
    LiftReport out{h, 0, {}, {}};
    const double eps = std::numeric_limits<double>::epsilon();
    double defect = distance(h * h, h);
    while (true) {
        out.defect_trace.push_back(defect);
        out.coset_residuals.push_back(distance(t(h), q));
        if (!std::isfinite(defect)) throw LiftDivergence("defect became non-finite");
        const bool converged = defect <= tol.alg(h.norm());
        const double floor = 64.0 * eps * (1.0 + h.norm()) * (1.0 + h.norm());
        if (converged && defect <= floor) break;
        if (out.iterations >= limit) {
            if (converged) break;
            throw LiftDivergence("defect " + fmt(defect) + " after " +
                                 std::to_string(out.iterations) + " iterations");
        }
        Element next = (h * h) * (three - 2.0 * h);
        const double next_defect = distance(next * next, next);
        // Past the tolerance, keep polishing only while the defect halves.
        if (converged && !(next_defect < 0.5 * defect)) break;
        h = std::move(next);
        defect = next_defect;
        ++out.iterations;
    }
    out.p = h;
    return out;
}

}  // namespace detail

/// h <- 3h^2 - 2h^3 from a preimage of q (minimum-norm unless `seed` is
/// given). The iteration stays in h_0 + N(T) and maps the defect
/// r = h^2 - h to (4r - 3) r^2.
inline LiftReport lift_idempotent(const Homomorphism& t, const Element& q,
                                  const std::optional<Element>& seed = std::nullopt,
                                  const Tolerances& tol = {}) {
    if (q.algebra().get() != t.target.get()) throw AlgebraMismatch("idempotent is not in the target");
    if (!t.surjective) throw NotSurjective("lifting needs a surjective homomorphism");
    if (!is_idempotent(q, tol)) throw NotIdempotent("q^2 != q");

    Element h = seed ? *seed : Element(t.source, min_norm_solve(t.matrix, q.coeffs(), tol.rank));
    if (h.algebra().get() != t.source.get()) throw AlgebraMismatch("seed is not in the source");
    const double coset0 = distance(t(h), q);
    if (coset0 > tol.alg(q.norm())) throw ValidationError("seed is not a preimage of q");

    return detail::cubic_lift(t, q, std::move(h), tol);
}

struct RieszPropertyReport {
    bool holds = true;
    bool kernel_nilpotent = false;
    std::size_t kernel_dim = 0;
    explicit operator bool() const noexcept { return holds; }
};

/// Every kernel element has a finite spectrum in finite dimension; the
/// check computes the spectrum of each kernel basis element and of their sum.
inline RieszPropertyReport has_riesz_property(const Homomorphism& t, const Tolerances& tol = {}) {
    const IdealBasis ker = kernel(t, tol);
    RieszPropertyReport out;
    out.kernel_dim = ker.dim();
    out.kernel_nilpotent = ker.nilpotency_index.has_value();
    Element sum = Element::zero(t.source);
    for (const Element& e : ker.basis) {
        sum += e;
        if (spectrum(e, tol).points.empty()) out.holds = false;
    }
    if (spectrum(sum, tol).points.empty()) out.holds = false;
    return out;
}

}  // namespace specalg

#endif  // SPECALG_QUOTIENT_HPP
