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

#ifndef SPECALG_EIGEN_HPP
#define SPECALG_EIGEN_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "dense.hpp"

namespace specalg {

namespace detail {

// Householder reduction to upper Hessenberg form, in place.
inline void reduce_to_hessenberg(DenseMatrix& h) {
    const std::size_t n = h.rows();
    if (n < 3) return;
    std::vector<Complex> v;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        v.assign(n - k - 1, Complex{});
        double xnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i - k - 1] = h(i, k);
            xnorm += std::norm(h(i, k));
        }
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) continue;
        const Complex x0 = v[0];
        const Complex phase = std::abs(x0) == 0.0 ? Complex{1.0} : x0 / std::abs(x0);
        v[0] += phase * xnorm;
        const double vnorm2 = std::norm(norm(v));
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;
        // H <- P H
        for (std::size_t j = k; j < n; ++j) {
            Complex s = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i - k - 1]) * h(i, j);
            s *= beta;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= s * v[i - k - 1];
        }
        // H <- H P
        for (std::size_t i = 0; i < n; ++i) {
            Complex s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j - k - 1];
            s *= beta;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j - k - 1]);
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

struct Givens {
    double c = 1.0;
    Complex s = 0.0;
};

// Rotation G = [c s; -conj(s) c] with G [x; y] = [r; 0].
inline Givens make_givens(Complex x, Complex y) {
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    if (ay == 0.0) return {1.0, 0.0};
    if (ax == 0.0) return {0.0, std::conj(y) / ay};
    const double r = std::hypot(ax, ay);
    return {ax / r, (x / ax) * std::conj(y) / r};
}

inline Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
    const Complex half_diff = 0.5 * (a - d);
    const Complex disc = std::sqrt(half_diff * half_diff + b * c);
    const Complex mid = 0.5 * (a + d);
    const Complex l1 = mid + disc;
    const Complex l2 = mid - disc;
    return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace detail

/// All eigenvalues of a square matrix, with algebraic multiplicity.
/// Hessenberg reduction followed by implicitly shifted single-shift complex
/// QR with deflation. Fails after 50 * n sweeps in total.
inline std::vector<Complex> eigenvalues(const DenseMatrix& m) {
    if (!m.square()) throw ValidationError("eigenvalues require a square matrix");
    const std::size_t n = m.rows();
    std::vector<Complex> eig(n);
    if (n == 0) return eig;
    for (const Complex& z : m.data())
        if (!is_finite(z)) throw ValidationError("matrix has non-finite entries");

    DenseMatrix h = m;
    detail::reduce_to_hessenberg(h);
    const double eps = std::numeric_limits<double>::epsilon();
    const double hnorm = h.frobenius();
    const std::size_t max_sweeps = 50 * n;
    std::size_t sweeps = 0;
    std::size_t since_deflation = 0;

    std::size_t hi = n - 1;
    while (true) {
        if (hi == 0) {
            eig[0] = h(0, 0);
            break;
        }
        // Locate the start of the unreduced block ending at hi.
        std::size_t lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            const double diag = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
            if (sub <= eps * diag || sub <= eps * hnorm * 1e-2) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eig[hi] = h(hi, hi);
            --hi;
            since_deflation = 0;
            continue;
        }
        if (++sweeps > max_sweeps)
            throw ConvergenceFailure("QR iteration did not converge within " +
                                     std::to_string(max_sweeps) + " sweeps");
        ++since_deflation;

        Complex mu;
        if (since_deflation % 11 == 10) {
            // Exceptional shift to break cycles.
            mu = h(hi, hi) + std::abs(h(hi, hi - 1).real()) +
                 (hi >= lo + 2 ? std::abs(h(hi - 1, hi - 2).real()) : 0.0);
        } else {
            mu = detail::wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1),
                                         h(hi, hi));
        }

        // Implicit shifted QR sweep on the active block lo..hi.
        Complex x = h(lo, lo) - mu;
        Complex y = h(lo + 1, lo);
        for (std::size_t k = lo; k < hi; ++k) {
            const detail::Givens g = detail::make_givens(x, y);
            const std::size_t col_start = k > lo ? k - 1 : lo;
            for (std::size_t j = col_start; j <= hi; ++j) {
                const Complex a = h(k, j);
                const Complex b = h(k + 1, j);
                h(k, j) = g.c * a + g.s * b;
                h(k + 1, j) = -std::conj(g.s) * a + g.c * b;
            }
            const std::size_t row_end = std::min(k + 2, hi);
            for (std::size_t i = lo; i <= row_end; ++i) {
                const Complex a = h(i, k);
                const Complex b = h(i, k + 1);
                h(i, k) = a * g.c + b * std::conj(g.s);
                h(i, k + 1) = -a * g.s + b * g.c;
            }
            if (k + 1 < hi) {
                x = h(k + 1, k);
                y = h(k + 2, k);
            }
        }
    }
    return eig;
}

/// Induced 2-norm: square root of the largest eigenvalue of A^H A.
inline double norm2(const DenseMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    const DenseMatrix g = a.adjoint() * a;
    double best = 0.0;
    for (const Complex& z : eigenvalues(g)) best = std::max(best, z.real());
    return std::sqrt(std::max(best, 0.0));
}

}  // namespace specalg

#endif  // SPECALG_EIGEN_HPP
