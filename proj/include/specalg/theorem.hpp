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

#ifndef SPECALG_THEOREM_HPP
#define SPECALG_THEOREM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "gd_inverse.hpp"
#include "quotient.hpp"
#include "spectral.hpp"

namespace specalg {

enum class CornerClass { riesz, nilpotent, riesz_not_nilpotent };
enum class Verdict { iso, pole, i_class };

inline const char* to_string(CornerClass c) {
    switch (c) {
        case CornerClass::riesz: return "riesz";
        case CornerClass::nilpotent: return "nilpotent";
        case CornerClass::riesz_not_nilpotent: return "riesz_not_nilpotent";
    }
    return "?";
}

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::iso: return "iso";
        case Verdict::pole: return "pole";
        case Verdict::i_class: return "I_class";
    }
    return "?";
}

/// Idempotent p of the source together with the Pierce pieces of a - lambda
/// that the spectral correspondence between A and B = T(A) is built on.
struct Certificate {
    Homomorphism T;
    Element a;
    Complex lambda;
    Element p;
    Element q;  // T(p)
    PierceDecomposition pieces;
    CornerClass corner_class = CornerClass::riesz;
    std::size_t corner_k = 0;  // when corner_class == nilpotent
    Element fredholm_part;     // (1 - p)(a - lambda)(1 - p)
    std::pair<Element, Element> kernel_parts;  // p(a - lambda)(1 - p), (1 - p)(a - lambda)p
    Verdict verdict = Verdict::iso;
    std::size_t pole_order = 0;  // when verdict == pole
    bool best_effort = false;    // T was not surjective
    std::size_t lift_iterations = 0;
    std::map<std::string, double> residuals;
};

struct ForwardResult {
    Verdict verdict = Verdict::iso;
    std::size_t pole_order = 0;
    std::map<std::string, double> residuals;
};

namespace detail {

inline double hom_scale(const Homomorphism& t) { return std::max(1.0, t.matrix.frobenius()); }

// |T(x)| against tol_alg relative to |T| |reference|.
inline bool maps_to_zero(const Homomorphism& t, const Element& x, double reference,
                         const Tolerances& tol, double* residual = nullptr) {
    const double r = t(x).norm();
    if (residual) *residual = r;
    return r <= tol.alg(hom_scale(t) * reference);
}

inline double pieces_scale(const Element& shifted, const Element& p) {
    const double pn = 1.0 + p.norm();
    return std::max(1.0, shifted.norm()) * pn * pn;
}

// Invertibility of x in the corner algebra T_{p',q'}: p'Ap' -> q'Bq'.
// Vacuous when q' = T(p') vanishes.
inline bool corner_fredholm(const Homomorphism& t, const Element& pc, const Element& x,
                            const Tolerances& tol) {
    if (pc.norm() <= tol.alg(0.0)) return true;
    if (t(pc).norm() <= tol.alg(hom_scale(t))) return true;
    const CornerHom ch = corner_hom(t, pc, tol);
    const Element image = ch.hom(ch.source.restrict(pc * x * pc));
    return is_invertible(image, tol);
}

// Least-squares preimage of q inside range(T), for non-surjective T.
inline Element range_preimage(const Homomorphism& t, const Element& q, const Tolerances& tol) {
    const DenseMatrix u = orthonormal_range(t.matrix, tol.rank);
    const DenseMatrix reduced = u.adjoint() * t.matrix;
    const auto rhs = u.adjoint().apply(q.coeffs());
    Element x(t.source, min_norm_solve(reduced, rhs, tol.rank));
    const double r = distance(t(x), q);
    if (r > tol.alg(q.norm() * hom_scale(t)))
        throw HypothesisFailed("spectral idempotent is not in the range of T, residual " +
                               fmt(r));
    return x;
}

}  // namespace detail

/// Checks the hypotheses of the forward direction on `cert` and confirms,
/// from an independent computation of sigma(T(a)), that lambda is isolated
/// (a pole of the corner's nilpotency order when the corner is T-nilpotent)
/// and that T(p) is the spectral idempotent of T(a) at lambda.
inline ForwardResult verify_forward(const Certificate& cert, const Tolerances& tol = {}) {
    const Homomorphism& t = cert.T;
    ForwardResult out;
    const Element shifted = shift(cert.a, cert.lambda);
    const Element& p = cert.p;
    const double scale = detail::pieces_scale(shifted, p);

    if (!is_idempotent(p, tol)) throw HypothesisFailed("p is not idempotent");
    const Element q = t(p);
    out.residuals["q_norm"] = q.norm();
    if (q.norm() <= tol.alg(detail::hom_scale(t))) throw HypothesisFailed("p lies in N(T)");

    const PierceDecomposition pieces = pierce(shifted, p, tol);
    double r1 = 0.0, r2 = 0.0;
    if (!detail::maps_to_zero(t, pieces.pap_c, scale, tol, &r1))
        throw HypothesisFailed("p(a - lambda)(1 - p) is not in N(T), |T(.)| = " + fmt(r1));
    if (!detail::maps_to_zero(t, pieces.p_c_ap, scale, tol, &r2))
        throw HypothesisFailed("(1 - p)(a - lambda)p is not in N(T), |T(.)| = " + fmt(r2));
    out.residuals["mixed_left"] = r1;
    out.residuals["mixed_right"] = r2;

    const Element pc = Element::unit(p.algebra()) - p;
    if (!detail::corner_fredholm(t, pc, pieces.p_c_ap_c, tol))
        throw HypothesisFailed("(1 - p)(a - lambda)(1 - p) is not Fredholm relative to the corner map");
    if (!is_quasinilpotent(t(pieces.pap), tol))
        throw HypothesisFailed("p(a - lambda)p is not Riesz relative to T");

    // Conclusion, computed independently on b = T(a).
    const Element b = t(cert.a);
    const SpectrumReport rep = spectrum(b, tol);
    if (!rep.contains(cert.lambda)) throw ConclusionMismatch("lambda is not in sigma(T(a))");
    const LaurentData ld = laurent(b, cert.lambda, {}, tol);
    const Element qb = spectral_idempotent(b, cert.lambda, tol);
    const double qdiff = distance(q, qb) / std::max(1.0, qb.norm());
    out.residuals["q_match"] = qdiff;
    if (qdiff > 1e-7)
        throw ConclusionMismatch("T(p) differs from the spectral idempotent of T(a) by " +
                                 fmt(qdiff));

    if (cert.corner_class == CornerClass::nilpotent) {
        if (!ld.terminates || ld.pole_order != cert.corner_k)
            throw ConclusionMismatch("pole order " + std::to_string(ld.pole_order) +
                                     " differs from the corner nilpotency index " +
                                     std::to_string(cert.corner_k));
        out.verdict = Verdict::pole;
        out.pole_order = ld.pole_order;
    } else {
        out.verdict = Verdict::iso;
    }
    return out;
}

/// Builds a certificate from (T, a, lambda) alone: q is the spectral
/// idempotent of T(a) at lambda, p a lift of q, and the corner is classified.
/// The forward check is then run on the result.
inline Certificate extract_certificate(const Homomorphism& t, const Element& a, Complex lambda,
                                       bool nilpotency_check = true, const Tolerances& tol = {}) {
    const Element b = t(a);
    const SpectrumReport rep = spectrum(b, tol);
    const auto idx = rep.find(lambda);
    if (!idx) throw NotIsolated("lambda is not in sigma(T(a))");
    const Element q = spectral_idempotent(b, lambda, tol);

    const bool best_effort = !t.surjective;
    LiftReport lift = best_effort ? detail::cubic_lift(t, q, detail::range_preimage(t, q, tol), tol)
                                  : lift_idempotent(t, q, std::nullopt, tol);
    const Element& p = lift.p;
    const Element shifted = shift(a, lambda);
    PierceDecomposition pieces = pierce(shifted, p, tol);

    Certificate cert{t,
                     a,
                     lambda,
                     p,
                     t(p),
                     pieces,
                     CornerClass::riesz,
                     0,
                     pieces.p_c_ap_c,
                     {pieces.pap_c, pieces.p_c_ap},
                     Verdict::iso,
                     0,
                     best_effort,
                     lift.iterations,
                     {}};
    if (!is_quasinilpotent(t(pieces.pap), tol))
        throw ConclusionMismatch("corner of the lifted idempotent is not Riesz");
    if (nilpotency_check) {
        const IdealBasis ker = kernel(t, tol);
        if (const auto k = kernel_power(pieces.pap, ker, tol)) {
            cert.corner_class = CornerClass::nilpotent;
            cert.corner_k = *k;
        } else {
            cert.corner_class = CornerClass::riesz_not_nilpotent;
        }
    }
    const ForwardResult fwd = verify_forward(cert, tol);
    cert.verdict = fwd.verdict;
    cert.pole_order = fwd.pole_order;
    cert.residuals = fwd.residuals;
    cert.residuals["lift_defect"] = lift.defect_trace.back();
    cert.residuals["lift_coset"] = lift.coset_residuals.back();
    return cert;
}

/// a = pxp + y + z with p a lift of the spectral idempotent of T(a) at 0.
struct KDDecomposition {
    Element p;
    Element x;
    Element y;
    Element z;
    CornerClass x_class = CornerClass::riesz;
    std::size_t k = 0;  // when x_class == nilpotent
    bool group_case = false;
    double reconstruction = 0.0;
    Certificate certificate;
};

inline bool group_case_check(const Certificate& cert, const Tolerances& tol = {}) {
    const Element pap = cert.p * cert.a * cert.p;
    return detail::maps_to_zero(cert.T, pap, detail::pieces_scale(cert.a, cert.p), tol);
}

/// Default decomposition: x = a, y = (1 - p)a(1 - p), z = pa(1 - p) + (1 - p)ap.
inline KDDecomposition decompose_kd(const Homomorphism& t, const Element& a, const Tolerances& tol = {}) {
    const Element b = t(a);
    if (!spectrum(b, tol).contains(0.0)) throw ElementInvertible("0 is not in sigma(T(a))");
    std::optional<Certificate> cert;
    try {
        cert = extract_certificate(t, a, 0.0, true, tol);
    } catch (const NotIsolated& e) {
        throw NotKDInvertible(e.detail());
    }
    const Element& p = cert->p;
    const Element pc = Element::unit(a.algebra()) - p;
    KDDecomposition out{p, a, pc * a * pc, p * a * pc + pc * a * p, cert->corner_class,
                        cert->corner_k, group_case_check(*cert, tol), 0.0, *cert};
    out.reconstruction = distance(p * out.x * p + out.y + out.z, a);
    if (out.reconstruction > tol.alg(a.norm()))
        throw ConclusionMismatch("reconstruction residual " + fmt(out.reconstruction));
    return out;
}

struct DecompositionCheck {
    bool valid = false;
    std::string reason;
    explicit operator bool() const noexcept { return valid; }
};

/// Accepts any (p, x, y, z) meeting the hypotheses: p idempotent outside
/// N(T), pxp Riesz relative to T, y in (1 - p)A(1 - p) and Fredholm for the
/// corner map, z in N(T), and a = pxp + y + z.
inline DecompositionCheck validate_decomposition(const Homomorphism& t, const Element& a, const Element& p,
                                                 const Element& x, const Element& y, const Element& z,
                                                 const Tolerances& tol = {}) {
    if (!is_idempotent(p, tol)) return {false, "p is not idempotent"};
    if (t(p).norm() <= tol.alg(detail::hom_scale(t))) return {false, "p lies in N(T)"};
    const double scale = detail::pieces_scale(a, p) * (1.0 + x.norm() + y.norm() + z.norm());
    const Element pxp = p * x * p;
    if (!is_quasinilpotent(t(pxp), tol)) return {false, "pxp is not Riesz relative to T"};
    const Element pc = Element::unit(a.algebra()) - p;
    if (distance(pc * y * pc, y) > tol.alg(scale)) return {false, "y is not in (1 - p)A(1 - p)"};
    if (!detail::corner_fredholm(t, pc, y, tol)) return {false, "y is not Fredholm for the corner map"};
    if (!detail::maps_to_zero(t, z, scale, tol)) return {false, "z is not in N(T)"};
    if (distance(pxp + y + z, a) > tol.alg(scale)) return {false, "a != pxp + y + z"};
    return {true, ""};
}

/// Finite analog of T - lambda = T1 (+) T2 + K: A = M_{n+m} (+) M_k with
/// J = 0 (+) M_k, a = lambda + P (T1 (+) T2) P^{-1} in the first summand and
/// the kernel element K2 in the second.
struct CalkinModel {
    AlgebraPtr algebra;
    QuotientResult quotient;
    Element a;
    Certificate certificate;
};

inline CalkinModel calkin_block_model(const DenseMatrix& t1, const DenseMatrix& t2, std::size_t k,
                                      const DenseMatrix& k2, Complex lambda,
                                      const std::optional<DenseMatrix>& similarity = std::nullopt,
                                      const Tolerances& tol = {}) {
    if (!t1.square() || !t2.square()) throw ValidationError("T1 and T2 must be square");
    if (k == 0) throw ValidationError("kernel block size must be at least 1");
    if (k2.rows() != k || k2.cols() != k) throw ValidationError("K must be k x k");
    const std::size_t n = t1.rows();
    const std::size_t m = t2.rows();
    if (n == 0) throw ValidationError("T1 must be non-empty");
    if (m > 0) {
        LuDecomposition lu(t2, tol.rank);
        if (lu.singular()) throw ValidationError("T2 is not invertible");
    }
    const std::size_t s = n + m;
    const AlgebraPtr mat = full_matrix(s);
    {
        DenseMatrix pad(s, s);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) pad(i, j) = t1(i, j);
        Element e1 = from_blocks(mat, {pad});
        if (!is_nilpotent(e1, tol)) throw ValidationError("T1 is not nilpotent");
    }

    DenseMatrix first(s, s);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) first(i, j) = t1(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) first(n + i, n + j) = t2(i, j);
    if (similarity) {
        if (similarity->rows() != s || similarity->cols() != s)
            throw ValidationError("similarity must be (n + m) x (n + m)");
        const Element sp = from_blocks(mat, {*similarity});
        const Element si = invert(sp, tol);
        first = to_blocks(sp * from_blocks(mat, {first}) * si)[0];
    }
    first = first + lambda * DenseMatrix::identity(s);

    const AlgebraPtr alg = direct_sum(mat, full_matrix(k));
    const IdealBasis ideal = summand_ideal(alg, 1, tol);
    QuotientResult quo = quotient(alg, ideal, tol);
    Element a = from_blocks(alg, {first, k2});
    Certificate cert = extract_certificate(quo.projection, a, lambda, true, tol);
    return {alg, std::move(quo), std::move(a), std::move(cert)};
}

}  // namespace specalg

#endif  // SPECALG_THEOREM_HPP
