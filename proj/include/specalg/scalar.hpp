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

#ifndef SPECALG_SCALAR_HPP
#define SPECALG_SCALAR_HPP

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <cstddef>
#include <span>
#include <vector>

namespace specalg {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) noexcept {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline double norm(std::span<const Complex> v) noexcept {
    double s = 0.0;
    for (const Complex& z : v) s += std::norm(z);
    return std::sqrt(s);
}

inline double distance(std::span<const Complex> a, std::span<const Complex> b) noexcept {
    double s = 0.0;
    const std::size_t n = a.size() < b.size() ? a.size() : b.size();
    for (std::size_t i = 0; i < n; ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

/// Short decimal rendering of a residual for error messages.
inline std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

/// Scale-relative thresholds shared by every numerical decision in the
/// library. Each field is the dimensionless factor; the call site supplies
/// the scale it is multiplied with.
struct Tolerances {
    double structure = 1e-10;      // x (1 + max |structure constant|)
    double algebraic = 1e-9;       // x (1 + operand norms)
    double rank = 1e-10;           // x largest pivot
    double cluster = 1e-7;         // x max(1, spectral radius)
    double multiple_root = 1e-10;  // coefficient test for defective clusters
    double qnil = 1e-8;            // x max(1, |a|)
    double nilp = 1e-9;            // x geometric power scale
    double quadrature = 1e-8;      // node-doubling agreement
    std::size_t nodes = 256;

    double structure_tol(double max_constant) const noexcept {
        return structure * (1.0 + max_constant);
    }
    double alg(double scale) const noexcept { return algebraic * (1.0 + scale); }
    double qnil_tol(double element_norm) const noexcept {
        return qnil * (element_norm > 1.0 ? element_norm : 1.0);
    }
    double cluster_radius(double spectral_radius) const noexcept {
        return cluster * (spectral_radius > 1.0 ? spectral_radius : 1.0);
    }
};

}  // namespace specalg

#endif  // SPECALG_SCALAR_HPP
