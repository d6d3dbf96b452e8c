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

#ifndef SPECALG_GD_INVERSE_HPP
#define SPECALG_GD_INVERSE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "spectral.hpp"

namespace specalg {

enum class InverseKind { invertible, group, drazin };

inline const char* to_string(InverseKind k) {
    switch (k) {
        case InverseKind::invertible: return "invertible";
        case InverseKind::group: return "group";
        case InverseKind::drazin: return "drazin";
    }
    return "?";
}

/// Raw residuals of ab = ba, bab = b, a^m b a = a^m.
struct AxiomResiduals {
    double commute = 0.0;
    double inner = 0.0;
    double power = 0.0;

    double max() const noexcept { return std::max({commute, inner, power}); }
};

inline AxiomResiduals verify_axioms(const Element& a, const Element& b, std::size_t m) {
    a.check_same(b);
    const Element am = power(a, m);
    return {commutator_norm(a, b), distance(b * a * b, b), distance(am * b * a, am)};
}

struct GDInverseResult {
    Element inverse;
    Element idempotent;  // spectral idempotent at 0 (zero when invertible)
    std::size_t index = 0;
    InverseKind kind = InverseKind::invertible;
    std::array<double, 3> residuals{};  // relative: divided by max(1, |a|^m |b|)
    Element defect;                     // w = a b a - a
};

namespace detail {

inline std::array<double, 3> relative_residuals(const Element& a, const Element& b, std::size_t m) {
    const AxiomResiduals r = verify_axioms(a, b, m);
    const double s = std::max(1.0, std::pow(a.norm(), double(m)) * b.norm());
    return {r.commute / s, r.inner / s, r.power / s};
}

inline InverseKind kind_for_index(std::size_t index) {
    if (index == 0) return InverseKind::invertible;
    return index == 1 ? InverseKind::group : InverseKind::drazin;
}

inline GDInverseResult invertible_result(const Element& a, const Element& inv) {
    GDInverseResult out{inv, Element::zero(a.algebra()), 0, InverseKind::invertible,
                        relative_residuals(a, inv, 0), a * inv * a - a};
    return out;
}

}  // namespace detail

/// Drazin inverse through the spectral idempotent p at 0:
/// a^D = (a + p)^{-1} (1 - p), index = nilpotency index of a p.
inline GDInverseResult drazin(const Element& a, const Tolerances& tol = {}) {
    const auto& alg = a.algebra();
    if (!spectrum(a, tol).contains(0.0)) return detail::invertible_result(a, invert(a, tol));

    const Element p = spectral_idempotent(a, 0.0, tol);
    const Element one = Element::unit(alg);
    const Element inv = invert(a + p, tol) * (one - p);
    const NilpotencyCheck nil = is_nilpotent(a * p, tol);
    if (!nil) throw ConclusionMismatch("a p is not nilpotent at a pole");
    GDInverseResult out{inv, p, nil.index, detail::kind_for_index(nil.index),
                        detail::relative_residuals(a, inv, nil.index), a * inv * a - a};
    const double limit = 1e-8;
    if (std::max({out.residuals[0], out.residuals[1], out.residuals[2]}) > limit)
        throw ConclusionMismatch("Drazin axioms fail: relative residual " +
                                 fmt(std::max({out.residuals[0], out.residuals[1],
                                                          out.residuals[2]})));
    return out;
}

inline GDInverseResult group_inverse(const Element& a, const Tolerances& tol = {}) {
    GDInverseResult r = drazin(a, tol);
    if (r.index > 1) throw NoGroupInverse(r.index);
    return r;
}

/// Koliha-Drazin inverse from the holomorphic functional calculus: with
/// f = 0 near 0 and f = 1/lambda elsewhere, f(a) = -a_0 where a_0 is the
/// holomorphic Laurent coefficient of (lambda - a)^{-1} at 0. Independent of
/// the (a + p)^{-1}(1 - p) route used by drazin().
inline GDInverseResult koliha_drazin(const Element& a, const Tolerances& tol = {}) {
    const auto& alg = a.algebra();
    if (!spectrum(a, tol).contains(0.0)) return detail::invertible_result(a, invert(a, tol));

    const LaurentData ld = laurent(a, 0.0, {}, tol);
    const Element inv = -ld.a0;
    const Element p = ld.b.empty() ? Element::zero(alg) : ld.b.front();
    const Element w = a * inv * a - a;
    const NilpotencyCheck nil = is_nilpotent(a * p, tol);
    const std::size_t index = nil ? nil.index : ld.pole_order;
    GDInverseResult out{inv, p, index, detail::kind_for_index(index),
                        detail::relative_residuals(a, inv, index), w};
    if (!is_quasinilpotent(w, tol)) throw ConclusionMismatch("a b a - a is not quasi-nilpotent");
    return out;
}

/// sigma_D(a): points lambda of sigma(a) for which a - lambda has no Drazin
/// inverse passing the axioms.
inline std::vector<Complex> drazin_spectrum(const Element& a, const Tolerances& tol = {}) {
    std::vector<Complex> out;
    for (const auto& pt : spectrum(a, tol).points) {
        try {
            (void)drazin(shift(a, pt.lambda), tol);
        } catch (const Error&) {
            out.push_back(pt.lambda);
        }
    }
    return out;
}

struct CertificateVerdict {
    enum class Kind { iso, pole, fail };
    Kind kind = Kind::fail;
    std::size_t order = 0;  // pole order when kind == pole
    std::string reason;

    bool operator==(const CertificateVerdict& o) const {
        return kind == o.kind && order == o.order;
    }
};

/// Checks p != 0, p^2 = p, ap = pa, (a - lambda) p quasi-nilpotent and
/// a - lambda + p invertible; upgrades to pole(k) when (a - lambda) p is
/// nilpotent of index k.
inline CertificateVerdict check_iso_certificate(const Element& a, Complex lambda, const Element& p,
                                                const Tolerances& tol = {}) {
    using K = CertificateVerdict::Kind;
    a.check_same(p);
    if (p.norm() <= tol.alg(0.0)) return {K::fail, 0, "p = 0"};
    if (!is_idempotent(p, tol)) return {K::fail, 0, "p is not idempotent"};
    if (commutator_norm(a, p) > tol.alg(a.norm() * p.norm())) return {K::fail, 0, "ap != pa"};
    const Element shifted = shift(a, lambda);
    const Element local = shifted * p;
    if (!is_quasinilpotent(local, tol)) return {K::fail, 0, "(a - lambda) p is not quasi-nilpotent"};
    if (!is_invertible(shifted + p, tol)) return {K::fail, 0, "a - lambda + p is not invertible"};
    const NilpotencyCheck nil = is_nilpotent(local, tol);
    if (nil) return {K::pole, nil.index, ""};
    return {K::iso, 0, ""};
}

}  // namespace specalg

#endif  // SPECALG_GD_INVERSE_HPP
