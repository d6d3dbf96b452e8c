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

#ifndef SPECALG_SPECTRAL_HPP
#define SPECALG_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "dense.hpp"
#include "eigen.hpp"

namespace specalg {

struct SpectralPoint {
    Complex lambda;
    std::size_t multiplicity = 0;
    double radius = 0.0;  // max distance of the member eigenvalues to lambda
};

/// Clustered eigenvalues of L_a (or of a plain matrix).
struct SpectrumReport {
    std::vector<SpectralPoint> points;
    std::vector<Complex> raw;
    double cluster_tol = 0.0;

    double membership_radius(const SpectralPoint& p) const {
        return std::max(cluster_tol, 2.0 * p.radius);
    }

    std::optional<std::size_t> find(Complex lambda) const {
        std::optional<std::size_t> best;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double dist = std::abs(points[i].lambda - lambda);
            if (dist <= membership_radius(points[i]) && dist < best_dist) {
                best = i;
                best_dist = dist;
            }
        }
        return best;
    }

    bool contains(Complex lambda) const { return find(lambda).has_value(); }

    std::vector<Complex> lambdas() const {
        std::vector<Complex> out;
        for (const auto& p : points) out.push_back(p.lambda);
        return out;
    }
};

namespace detail {

// Coefficients c_0..c_m of prod_i (z - x_i), c_m = 1.
inline std::vector<Complex> monic_from_roots(const std::vector<Complex>& x) {
    std::vector<Complex> c(x.size() + 1);
    c[0] = 1.0;
    std::size_t deg = 0;
    for (const Complex& r : x) {
        // multiply by (z - r); c stored highest-first
        ++deg;
        for (std::size_t k = deg; k > 0; --k) c[k] -= r * c[k - 1];
    }
    return c;
}

inline double log_binomial(std::size_t m, std::size_t j) {
    return std::lgamma(double(m) + 1.0) - std::lgamma(double(j) + 1.0) -
           std::lgamma(double(m - j) + 1.0);
}

// A group of computed eigenvalues is read as one (possibly defective)
// eigenvalue when its centred local characteristic polynomial is a
// coefficient-level perturbation of z^m.
inline bool is_numerical_multiple_root(const std::vector<Complex>& members, double scale,
                                       double tol) {
    const std::size_t m = members.size();
    if (m < 2) return true;
    Complex mean = 0.0;
    for (const Complex& z : members) mean += z;
    mean /= double(m);
    std::vector<Complex> centred;
    for (const Complex& z : members) centred.push_back(z - mean);
    const auto c = monic_from_roots(centred);
    for (std::size_t j = 2; j <= m; ++j) {
        const double bound =
            std::exp(log_binomial(m, j) + std::log(tol) + double(j) * std::log(scale));
        if (std::abs(c[j]) > bound) return false;
    }
    return true;
}

struct LinkNode {
    std::size_t left = 0;
    std::size_t right = 0;
    double height = 0.0;
    std::vector<std::size_t> members;
};

}  // namespace detail

/// Groups eigenvalues into spectral points. Single-linkage tree over the
/// computed eigenvalues, cut top-down: a subtree is kept whole when all its
/// links are within `eps` or when it passes the multiple-root test; the
/// representative is the mean of its members.
inline std::vector<SpectralPoint> cluster_eigenvalues(const std::vector<Complex>& ev, double eps,
                                                      double scale, double root_tol) {
    const std::size_t m = ev.size();
    std::vector<SpectralPoint> out;
    if (m == 0) return out;

    struct Edge {
        double dist;
        std::size_t a;
        std::size_t b;
    };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) edges.push_back({std::abs(ev[i] - ev[j]), i, j});
    std::stable_sort(edges.begin(), edges.end(),
                     [](const Edge& x, const Edge& y) { return x.dist < y.dist; });

    std::vector<detail::LinkNode> nodes(m);
    std::vector<std::size_t> parent(2 * m), top(m);
    for (std::size_t i = 0; i < m; ++i) {
        nodes[i].members = {i};
        parent[i] = i;
        top[i] = i;
    }
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Edge& e : edges) {
        const std::size_t ra = find(e.a);
        const std::size_t rb = find(e.b);
        if (ra == rb) continue;
        detail::LinkNode node;
        node.left = top[ra];
        node.right = top[rb];
        node.height = e.dist;
        node.members = nodes[node.left].members;
        node.members.insert(node.members.end(), nodes[node.right].members.begin(),
                            nodes[node.right].members.end());
        nodes.push_back(std::move(node));
        parent[rb] = ra;
        top[ra] = nodes.size() - 1;
    }

    std::vector<std::size_t> stack{nodes.size() - 1};
    while (!stack.empty()) {
        const std::size_t id = stack.back();
        stack.pop_back();
        const auto& node = nodes[id];
        std::vector<Complex> members;
        for (std::size_t i : node.members) members.push_back(ev[i]);
        const bool leaf = id < m;
        if (leaf || node.height <= eps || detail::is_numerical_multiple_root(members, scale, root_tol)) {
            Complex mean = 0.0;
            for (const Complex& z : members) mean += z;
            mean /= double(members.size());
            const double floor = 1e-13 * scale;
            if (std::abs(mean.real()) <= floor) mean.real(0.0);
            if (std::abs(mean.imag()) <= floor) mean.imag(0.0);
            double radius = 0.0;
            for (const Complex& z : members) radius = std::max(radius, std::abs(z - mean));
            out.push_back({mean, members.size(), radius});
        } else {
            stack.push_back(node.left);
            stack.push_back(node.right);
        }
    }
    std::sort(out.begin(), out.end(), [](const SpectralPoint& x, const SpectralPoint& y) {
        if (x.lambda.real() != y.lambda.real()) return x.lambda.real() < y.lambda.real();
        return x.lambda.imag() < y.lambda.imag();
    });
    return out;
}

inline SpectrumReport matrix_spectrum(const DenseMatrix& m, const Tolerances& tol = {}) {
    SpectrumReport rep;
    rep.raw = eigenvalues(m);
    double rho = 0.0;
    for (const Complex& z : rep.raw) rho = std::max(rho, std::abs(z));
    const double n = m.rows() == 0 ? 1.0 : double(m.rows());
    const double scale = std::max({1.0, rho, m.frobenius() / std::sqrt(n)});
    rep.cluster_tol = tol.cluster_radius(rho);
    rep.points = cluster_eigenvalues(rep.raw, rep.cluster_tol, scale, tol.multiple_root);
    return rep;
}

/// sigma(a) as the clustered eigenvalues of the left regular representation.
inline SpectrumReport spectrum(const Element& a, const Tolerances& tol = {}) {
    return matrix_spectrum(left_regular(a), tol);
}

/// (a - lambda)^{-1}; refuses points on the spectrum.
inline Element resolvent(const Element& a, Complex lambda, const Tolerances& tol = {}) {
    const SpectrumReport rep = spectrum(a, tol);
    if (rep.contains(lambda))
        throw OnSpectrum("lambda = (" + fmt(lambda.real()) + ", " +
                         fmt(lambda.imag()) + ") lies on the spectrum");
    return invert(shift(a, lambda), tol);
}

struct LaurentOptions {
    std::optional<std::size_t> n_max;  // default: algebra dimension
    std::optional<std::size_t> nodes;  // default: Tolerances::nodes
    std::optional<double> radius;      // default: half the gap to the nearest other point
};

/// Principal part of (lambda - a)^{-1} around an isolated spectral point.
struct LaurentData {
    Complex lambda0;
    std::size_t pole_order = 0;
    std::vector<Element> b;              // b_1 .. b_p
    Element a0;                          // holomorphic coefficient a_0
    double radius = 0.0;
    std::size_t nodes = 0;
    std::vector<double> coefficient_norms;  // |b_n| for n = 1 .. n_max + 1
    std::vector<double> node_change;        // |b_n(nodes) - b_n(nodes / 2)|
    double a0_change = 0.0;
    double tail_norm = 0.0;                 // |b_{p+1}|
    bool terminates = false;                // b_{p+1} vanishes within n_max + 1 terms
};

/// b_n = (1 / 2 pi i) \oint (lambda - lambda0)^{n-1} (lambda - a)^{-1} d lambda
/// by the trapezoidal rule on a circle around lambda0. The pole order is the
/// length of the leading run of coefficients that stand out above both
/// tol_qnil * max(1, |b_1|) and the node-halving noise.
inline LaurentData laurent(const Element& a, Complex lambda0, const LaurentOptions& opts = {},
                           const Tolerances& tol = {}) {
    const auto& alg = a.algebra();
    const std::size_t d = alg->dim();
    const std::size_t n_max = opts.n_max.value_or(d);
    const std::size_t nodes = opts.nodes.value_or(tol.nodes);
    if (nodes < 4 || nodes % 2 != 0) throw ValidationError("node count must be even and at least 4");

    const DenseMatrix la = left_regular(a);
    const SpectrumReport rep = matrix_spectrum(la, tol);
    const auto idx = rep.find(lambda0);
    if (!idx) throw NotIsolated("lambda0 is not a point of the spectrum");
    const SpectralPoint& here = rep.points[*idx];

    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
        if (i == *idx) continue;
        gap = std::min(gap, std::abs(rep.points[i].lambda - here.lambda) - rep.points[i].radius);
    }
    double radius = std::isinf(gap) ? 1.0 : 0.5 * gap;
    if (opts.radius) {
        radius = *opts.radius;
        if (!(radius > 0.0) || !std::isfinite(radius)) throw ValidationError("radius must be positive");
        if (radius >= gap) throw NotIsolated("contour radius encloses another spectral point");
    }
    if (radius <= 2.0 * here.radius) throw NotIsolated("spectral point is not separated from its neighbours");

    const Complex center = here.lambda;
    const std::size_t terms = n_max + 1;
    std::vector<std::vector<Complex>> bf(terms, std::vector<Complex>(d));
    std::vector<std::vector<Complex>> bh(terms, std::vector<Complex>(d));
    std::vector<Complex> a0f(d), a0h(d);
    double integrand_max = 0.0;

    for (std::size_t j = 0; j < nodes; ++j) {
        const double theta = 2.0 * std::numbers::pi * double(j) / double(nodes);
        const Complex w = std::polar(radius, theta);
        DenseMatrix m = la;
        m *= -1.0;
        for (std::size_t i = 0; i < d; ++i) m(i, i) += center + w;
        LuDecomposition lu(std::move(m), 0.0);
        const auto res = lu.solve(alg->unit());
        integrand_max = std::max(integrand_max, radius * norm(res));
        const bool even = j % 2 == 0;
        for (std::size_t i = 0; i < d; ++i) {
            a0f[i] += res[i];
            if (even) a0h[i] += res[i];
        }
        Complex wn = 1.0;
        for (std::size_t n = 0; n < terms; ++n) {
            wn *= w;
            for (std::size_t i = 0; i < d; ++i) {
                const Complex v = wn * res[i];
                bf[n][i] += v;
                if (even) bh[n][i] += v;
            }
        }
    }
    const double full = 1.0 / double(nodes);
    const double half = 2.0 / double(nodes);
    for (std::size_t i = 0; i < d; ++i) {
        a0f[i] *= full;
        a0h[i] *= half;
    }
    for (std::size_t n = 0; n < terms; ++n)
        for (std::size_t i = 0; i < d; ++i) {
            bf[n][i] *= full;
            bh[n][i] *= half;
        }

    LaurentData out{center, 0, {}, Element(alg, a0f), radius, nodes, {}, {}, 0.0, 0.0};
    for (std::size_t n = 0; n < terms; ++n) {
        out.coefficient_norms.push_back(norm(bf[n]));
        out.node_change.push_back(distance(bf[n], bh[n]));
    }
    out.a0_change = distance(a0f, a0h);

    const double b1 = out.coefficient_norms[0];
    const double level = tol.qnil_tol(a.norm()) * std::max(1.0, b1);
    const double eps = std::numeric_limits<double>::epsilon();
    auto significant = [&](std::size_t n) {
        const double nrm = out.coefficient_norms[n];
        const double noise = std::max(100.0 * out.node_change[n],
                                      64.0 * eps * integrand_max * std::pow(radius, double(n)));
        return nrm > level && nrm > noise;
    };
    std::size_t p = 0;
    while (p < n_max && significant(p)) ++p;
    out.terminates = !significant(p);
    out.pole_order = p;
    out.tail_norm = out.coefficient_norms[p];
    for (std::size_t n = 0; n < p; ++n) out.b.emplace_back(alg, bf[n]);

    const double scale = std::max(1.0, b1);
    for (std::size_t n = 0; n <= std::min(p, n_max); ++n)
        if (out.node_change[n] > tol.quadrature * std::max(scale, out.coefficient_norms[n]))
            throw QuadratureUnresolved("b_" + std::to_string(n + 1) + " changes by " +
                                       fmt(out.node_change[n]) +
                                       " when the node count is halved");
    if (out.a0_change > tol.quadrature * std::max(scale, out.a0.norm()))
        throw QuadratureUnresolved("a_0 changes by " + fmt(out.a0_change) +
                                   " when the node count is halved");
    return out;
}

inline bool is_quasinilpotent(const Element& a, const Tolerances& tol = {}) {
    const SpectrumReport rep = spectrum(a, tol);
    const double limit = tol.qnil_tol(a.norm());
    for (const auto& p : rep.points)
        if (std::abs(p.lambda) > limit) return false;
    return true;
}

struct NilpotencyCheck {
    bool nilpotent = false;
    std::size_t index = 0;  // least k with a^k = 0, when nilpotent
    explicit operator bool() const noexcept { return nilpotent; }
};

/// Nilpotent when quasi-nilpotent and |a^k| <= tol_nilp * max(1, |a|)^k
/// for some k <= dim.
inline NilpotencyCheck is_nilpotent(const Element& a, const Tolerances& tol = {}) {
    if (!is_quasinilpotent(a, tol)) return {};
    const std::size_t d = a.algebra()->dim();
    const double base = std::max(1.0, a.norm());
    Element pw = a;
    double scale = base;
    for (std::size_t k = 1; k <= d; ++k) {
        if (pw.norm() <= tol.nilp * scale) return {true, k};
        pw = pw * a;
        scale *= base;
    }
    return {};
}

/// The residue b_1 at lambda0, with p^2 = p, ap = pa, (a - lambda0) p
/// quasi-nilpotent and a - lambda0 + p invertible all checked.
inline Element spectral_idempotent(const Element& a, Complex lambda0, const Tolerances& tol = {}) {
    const LaurentData ld = laurent(a, lambda0, {}, tol);
    if (ld.b.empty()) throw ConclusionMismatch("vanishing residue at a spectral point");
    const Element& p = ld.b.front();
    if (!is_idempotent(p, tol)) throw ConclusionMismatch("residue is not idempotent");
    if (commutator_norm(a, p) > tol.alg(a.norm() * p.norm()))
        throw ConclusionMismatch("residue does not commute with the element");
    const Element shifted = shift(a, ld.lambda0);
    if (!is_quasinilpotent(shifted * p, tol))
        throw ConclusionMismatch("(a - lambda0) p is not quasi-nilpotent");
    if (!is_invertible(shifted + p, tol)) throw ConclusionMismatch("a - lambda0 + p is singular");
    return p;
}

struct PoleClassification {
    std::vector<Complex> iso;
    std::vector<Complex> poles;
    std::vector<std::size_t> pole_orders;  // parallel to `poles`
    std::vector<Complex> i_class;          // iso minus poles
};

/// iso sigma(a), Pi(a) and I(a). Every point of a finite spectrum is
/// isolated; a point is a pole when its principal part terminates within
/// the dimension bound.
inline PoleClassification poles_and_iso(const Element& a, const Tolerances& tol = {}) {
    PoleClassification out;
    const std::size_t d = a.algebra()->dim();
    for (const auto& pt : spectrum(a, tol).points) {
        out.iso.push_back(pt.lambda);
        const LaurentData ld = laurent(a, pt.lambda, {}, tol);
        if (ld.pole_order >= 1 && ld.pole_order <= d && ld.terminates) {
            out.poles.push_back(pt.lambda);
            out.pole_orders.push_back(ld.pole_order);
        } else {
            out.i_class.push_back(pt.lambda);
        }
    }
    return out;
}

struct AscentDescent {
    std::size_t ascent = 0;
    std::size_t descent = 0;
};

/// Ascent from the nullities of M^n and descent from the ranks of M^n,
/// each the first n at which the sequence stops changing.
inline AscentDescent ascent_descent(const DenseMatrix& m, const Tolerances& tol = {}) {
    if (!m.square()) throw ValidationError("ascent/descent need a square matrix");
    const std::size_t n = m.rows();
    AscentDescent out{n, n};
    DenseMatrix pw = DenseMatrix::identity(n);
    std::size_t prev_null = 0;
    std::size_t prev_rank = n;
    bool ascent_found = false;
    bool descent_found = false;
    for (std::size_t k = 1; k <= n + 1 && !(ascent_found && descent_found); ++k) {
        pw = pw * m;
        const std::size_t nullity = null_space(pw, tol.rank).cols();
        const std::size_t rank = numerical_rank(pw, tol.rank);
        if (!ascent_found && nullity == prev_null) {
            out.ascent = k - 1;
            ascent_found = true;
        }
        if (!descent_found && rank == prev_rank) {
            out.descent = k - 1;
            descent_found = true;
        }
        prev_null = nullity;
        prev_rank = rank;
    }
    return out;
}

}  // namespace specalg

#endif  // SPECALG_SPECTRAL_HPP
