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

#ifndef SPECALG_DENSE_HPP
#define SPECALG_DENSE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "scalar.hpp"

namespace specalg {

/// Row-major complex matrix. Carrier for regular representations,
/// homomorphism matrices and the eigenvalue kernel.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_)
            throw ValidationError("matrix entry count " + std::to_string(data_.size()) +
                                  " does not match " + std::to_string(rows_) + "x" +
                                  std::to_string(cols_));
    }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static DenseMatrix diagonal(std::span<const Complex> d) {
        DenseMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Complex> data() const noexcept { return data_; }
    std::span<Complex> data() noexcept { return data_; }

    std::vector<Complex> column(std::size_t j) const {
        std::vector<Complex> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void set_column(std::size_t j, std::span<const Complex> c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }

    DenseMatrix adjoint() const {
        DenseMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
        return t;
    }

    double frobenius() const noexcept { return specalg::norm(data_); }

    std::vector<Complex> apply(std::span<const Complex> x) const {
        if (x.size() != cols_) throw ValidationError("matrix-vector size mismatch");
        std::vector<Complex> y(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            Complex s = 0.0;
            const Complex* row = &data_[i * cols_];
            for (std::size_t j = 0; j < cols_; ++j) s += row[j] * x[j];
            y[i] = s;
        }
        return y;
    }

    DenseMatrix& operator+=(const DenseMatrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    DenseMatrix& operator-=(const DenseMatrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    DenseMatrix& operator*=(Complex s) {
        for (Complex& z : data_) z *= s;
        return *this;
    }

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
    friend DenseMatrix operator*(Complex s, DenseMatrix a) { return a *= s; }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.cols_ != b.rows_) throw ValidationError("matrix product shape mismatch");
        DenseMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{}) continue;
                const Complex* brow = &b.data_[k * b.cols_];
                Complex* crow = &c.data_[i * c.cols_];
                for (std::size_t j = 0; j < b.cols_; ++j) crow[j] += aik * brow[j];
            }
        return c;
    }

    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// `this - s*I`; square matrices only.
    DenseMatrix shifted(Complex s) const {
        DenseMatrix m = *this;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) m(i, i) -= s;
        return m;
    }

    DenseMatrix power(std::size_t k) const {
        DenseMatrix result = identity(rows_);
        for (std::size_t i = 0; i < k; ++i) result = result * (*this);
        return result;
    }

private:
    void check_same_shape(const DenseMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// LU factorisation with partial pivoting. Singularity is decided on the
/// pivot magnitudes: min |u_kk| <= rank_tol * max |u_kk|.
class LuDecomposition {
public:
    explicit LuDecomposition(DenseMatrix m, double rank_tol = 1e-10)
        : lu_(std::move(m)), perm_(lu_.rows()) {
        if (!lu_.square()) throw ValidationError("LU requires a square matrix");
        const std::size_t n = lu_.rows();
        std::iota(perm_.begin(), perm_.end(), std::size_t{0});
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = k;
            double best = std::abs(lu_(k, k));
            for (std::size_t i = k + 1; i < n; ++i) {
                const double v = std::abs(lu_(i, k));
                if (v > best) {
                    best = v;
                    piv = i;
                }
            }
            if (piv != k) {
                for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
                std::swap(perm_[k], perm_[piv]);
            }
            max_pivot_ = std::max(max_pivot_, best);
            if (best == 0.0) {
                exact_zero_pivot_ = true;
                continue;
            }
            const Complex inv = 1.0 / lu_(k, k);
            for (std::size_t i = k + 1; i < n; ++i) {
                const Complex f = lu_(i, k) * inv;
                lu_(i, k) = f;
                if (f == Complex{}) continue;
                for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
            }
        }
        min_pivot_ = n == 0 ? 0.0 : std::abs(lu_(0, 0));
        for (std::size_t k = 0; k < n; ++k) min_pivot_ = std::min(min_pivot_, std::abs(lu_(k, k)));
        singular_ = n > 0 && (exact_zero_pivot_ || min_pivot_ <= rank_tol * max_pivot_);
    }

    bool singular() const noexcept { return singular_; }
    double min_pivot() const noexcept { return min_pivot_; }
    double max_pivot() const noexcept { return max_pivot_; }

    std::vector<Complex> solve(std::span<const Complex> b) const {
        const std::size_t n = lu_.rows();
        if (b.size() != n) throw ValidationError("LU solve size mismatch");
        if (singular_) throw NotInvertible("matrix is numerically singular");
        std::vector<Complex> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
            x[i] /= lu_(i, i);
        }
        return x;
    }

private:
    DenseMatrix lu_;
    std::vector<std::size_t> perm_;
    double min_pivot_ = 0.0;
    double max_pivot_ = 0.0;
    bool exact_zero_pivot_ = false;
    bool singular_ = false;
};

/// Householder QR with column pivoting, A P = Q R. Pivoting stops once the
/// largest remaining column norm drops to rank_tol times the first pivot.
/// Ties between columns of equal norm go to the lower index.
class PivotedQR {
public:
    explicit PivotedQR(const DenseMatrix& a, double rank_tol = 1e-10)
        : m_(a.rows()), n_(a.cols()), r_(a), perm_(a.cols()) {
        std::iota(perm_.begin(), perm_.end(), std::size_t{0});
        const std::size_t steps = std::min(m_, n_);
        double first_pivot = 0.0;
        for (std::size_t k = 0; k < steps; ++k) {
            std::size_t piv = k;
            double best = column_norm(k, k);
            for (std::size_t j = k + 1; j < n_; ++j) {
                const double v = column_norm(j, k);
                if (v > best * (1.0 + 1e-12)) {
                    best = v;
                    piv = j;
                }
            }
            if (k == 0) first_pivot = best;
            if (best == 0.0 || best <= rank_tol * first_pivot) break;
            if (piv != k) {
                for (std::size_t i = 0; i < m_; ++i) std::swap(r_(i, k), r_(i, piv));
                std::swap(perm_[k], perm_[piv]);
            }
            // Householder vector for column k, rows k..m-1.
            std::vector<Complex> v(m_ - k);
            for (std::size_t i = k; i < m_; ++i) v[i - k] = r_(i, k);
            const Complex x0 = v[0];
            const double phase_abs = std::abs(x0);
            const Complex phase = phase_abs == 0.0 ? Complex{1.0} : x0 / phase_abs;
            const Complex alpha = -phase * best;
            v[0] -= alpha;
            const double vnorm2 = std::norm(specalg::norm(v));
            if (vnorm2 > 0.0) {
                for (std::size_t j = k; j < n_; ++j) {
                    Complex s = 0.0;
                    for (std::size_t i = k; i < m_; ++i) s += std::conj(v[i - k]) * r_(i, j);
                    s *= 2.0 / vnorm2;
                    for (std::size_t i = k; i < m_; ++i) r_(i, j) -= s * v[i - k];
                }
            }
            for (std::size_t i = k + 1; i < m_; ++i) r_(i, k) = 0.0;
            reflectors_.push_back(std::move(v));
            ++rank_;
        }
    }

    std::size_t rank() const noexcept { return rank_; }
    const std::vector<std::size_t>& permutation() const noexcept { return perm_; }
    const DenseMatrix& r() const noexcept { return r_; }

    /// Explicit m x m unitary factor.
    DenseMatrix q() const {
        DenseMatrix q = DenseMatrix::identity(m_);
        for (std::size_t k = reflectors_.size(); k-- > 0;) apply_reflector(k, q);
        return q;
    }

private:
    double column_norm(std::size_t j, std::size_t from) const {
        double s = 0.0;
        for (std::size_t i = from; i < m_; ++i) s += std::norm(r_(i, j));
        return std::sqrt(s);
    }

    // q <- H_k q, acting on rows k..m-1.
    void apply_reflector(std::size_t k, DenseMatrix& q) const {
        const auto& v = reflectors_[k];
        const double vnorm2 = std::norm(specalg::norm(v));
        if (vnorm2 == 0.0) return;
        for (std::size_t j = 0; j < q.cols(); ++j) {
            Complex s = 0.0;
            for (std::size_t i = k; i < m_; ++i) s += std::conj(v[i - k]) * q(i, j);
            s *= 2.0 / vnorm2;
            for (std::size_t i = k; i < m_; ++i) q(i, j) -= s * v[i - k];
        }
    }

    std::size_t m_;
    std::size_t n_;
    DenseMatrix r_;
    std::vector<std::size_t> perm_;
    std::vector<std::vector<Complex>> reflectors_;
    std::size_t rank_ = 0;
};

inline std::size_t numerical_rank(const DenseMatrix& a, double rank_tol = 1e-10) {
    return PivotedQR(a, rank_tol).rank();
}

inline DenseMatrix leading_columns(const DenseMatrix& q, std::size_t from, std::size_t count) {
    DenseMatrix out(q.rows(), count);
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < count; ++j) out(i, j) = q(i, from + j);
    return out;
}

/// Orthonormal basis (as columns) of the column space of `a`.
inline DenseMatrix orthonormal_range(const DenseMatrix& a, double rank_tol = 1e-10) {
    PivotedQR qr(a, rank_tol);
    return leading_columns(qr.q(), 0, qr.rank());
}

/// Orthonormal basis (as columns) of the null space of `a`.
inline DenseMatrix null_space(const DenseMatrix& a, double rank_tol = 1e-10) {
    PivotedQR qr(a.adjoint(), rank_tol);
    const std::size_t n = a.cols();
    return leading_columns(qr.q(), qr.rank(), n - qr.rank());
}

/// Distance from v to the span of the orthonormal columns of `basis`.
inline double span_residual(const DenseMatrix& basis, std::span<const Complex> v) {
    std::vector<Complex> r(v.begin(), v.end());
    for (std::size_t j = 0; j < basis.cols(); ++j) {
        Complex s = 0.0;
        for (std::size_t i = 0; i < basis.rows(); ++i) s += std::conj(basis(i, j)) * v[i];
        for (std::size_t i = 0; i < basis.rows(); ++i) r[i] -= s * basis(i, j);
    }
    return norm(r);
}

/// Left inverse of a full-column-rank matrix B (d x r) built from its QR
/// factors: returns C (r x d) with C B = I.
inline DenseMatrix left_inverse(const DenseMatrix& b, double rank_tol = 1e-10) {
    PivotedQR qr(b, rank_tol);
    const std::size_t r = b.cols();
    if (qr.rank() != r) throw ValidationError("matrix does not have full column rank");
    const DenseMatrix q = qr.q();
    const DenseMatrix& rr = qr.r();
    const auto& perm = qr.permutation();
    DenseMatrix c(r, b.rows());
    std::vector<Complex> z(r);
    for (std::size_t col = 0; col < b.rows(); ++col) {
        // z = R^{-1} Q_1^H e_col
        for (std::size_t i = 0; i < r; ++i) z[i] = std::conj(q(col, i));
        for (std::size_t i = r; i-- > 0;) {
            for (std::size_t j = i + 1; j < r; ++j) z[i] -= rr(i, j) * z[j];
            z[i] /= rr(i, i);
        }
        for (std::size_t i = 0; i < r; ++i) c(perm[i], col) = z[i];
    }
    return c;
}

/// Minimum-norm solution of T x = y for a full-row-rank T.
inline std::vector<Complex> min_norm_solve(const DenseMatrix& t, std::span<const Complex> y,
                                           double rank_tol = 1e-10) {
    // T^H P = Q R  =>  T = P R^H Q^H ; x = Q_1 R^{-H} P^T y.
    PivotedQR qr(t.adjoint(), rank_tol);
    const std::size_t r = t.rows();
    if (qr.rank() != r) throw ValidationError("matrix does not have full row rank");
    const DenseMatrix q = qr.q();
    const DenseMatrix& rr = qr.r();
    const auto& perm = qr.permutation();
    std::vector<Complex> w(r);
    for (std::size_t i = 0; i < r; ++i) w[i] = y[perm[i]];
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < i; ++j) w[i] -= std::conj(rr(j, i)) * w[j];
        w[i] /= std::conj(rr(i, i));
    }
    std::vector<Complex> x(t.cols());
    for (std::size_t i = 0; i < t.cols(); ++i)
        for (std::size_t j = 0; j < r; ++j) x[i] += q(i, j) * w[j];
    return x;
}

}  // namespace specalg

#endif  // SPECALG_DENSE_HPP
