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

#ifndef SPECALG_ALGEBRA_HPP
#define SPECALG_ALGEBRA_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dense.hpp"
#include "error.hpp"
#include "scalar.hpp"

namespace specalg {

// ---------------------------------------------------------------------------
// Structure algebras
// ---------------------------------------------------------------------------

enum class BlockKind { full, upper_triangular, diagonal };

/// One matrix block of a builtin model. `offset` is the index of the block's
/// first basis element in the algebra.
struct ModelBlock {
    BlockKind kind = BlockKind::full;
    std::size_t n = 0;
    std::size_t offset = 0;

    std::size_t dim() const noexcept {
        switch (kind) {
            case BlockKind::full: return n * n;
            case BlockKind::upper_triangular: return n * (n + 1) / 2;
            case BlockKind::diagonal: return n;
        }
        return 0;
    }
};

struct AlgebraMetadata {
    std::vector<ModelBlock> blocks;  // empty for algebras that are not block models
    std::vector<std::string> basis_labels;
};

struct AlgebraResiduals {
    double associativity = 0.0;
    double unit = 0.0;
    double tolerance = 0.0;
};

/// Finite-dimensional unital associative algebra over C given by structure
/// constants: e_i e_j = sum_k c[i][j][k] e_k. Immutable once built; obtain
/// instances through make_algebra or the builtin model constructors.
class StructureAlgebra {
public:
    struct Term {
        std::size_t index;
        Complex coeff;
    };

    std::size_t dim() const noexcept { return dim_; }
    const std::string& label() const noexcept { return label_; }
    std::span<const Complex> unit() const noexcept { return unit_; }
    const AlgebraMetadata& metadata() const noexcept { return meta_; }
    const AlgebraResiduals& residuals() const noexcept { return residuals_; }
    double max_constant() const noexcept { return max_constant_; }

    Complex constant(std::size_t i, std::size_t j, std::size_t k) const {
        return structure_[(i * dim_ + j) * dim_ + k];
    }
    std::span<const Complex> structure() const noexcept { return structure_; }

    /// Nonzero terms of e_i e_j.
    std::span<const Term> product(std::size_t i, std::size_t j) const {
        return products_[i * dim_ + j];
    }

    /// x y computed through the structure tensor.
    std::vector<Complex> multiply(std::span<const Complex> x, std::span<const Complex> y) const {
        std::vector<Complex> out(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (x[i] == Complex{}) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (y[j] == Complex{}) continue;
                const Complex xy = x[i] * y[j];
                for (const Term& t : products_[i * dim_ + j]) out[t.index] += xy * t.coeff;
            }
        }
        return out;
    }

private:
    friend std::shared_ptr<const StructureAlgebra> make_algebra(std::vector<Complex>,
                                                                std::vector<Complex>,
                                                                std::string, AlgebraMetadata,
                                                                const Tolerances&);
    StructureAlgebra() = default;

    std::size_t dim_ = 0;
    std::vector<Complex> structure_;
    std::vector<std::vector<Term>> products_;
    std::vector<Complex> unit_;
    std::string label_;
    AlgebraMetadata meta_;
    AlgebraResiduals residuals_;
    double max_constant_ = 0.0;
};

using AlgebraPtr = std::shared_ptr<const StructureAlgebra>;

/// Validates associativity and the unit axioms at tol_struct and returns
/// the algebra. `structure` is the flattened tensor c[(i*d + j)*d + k].
inline AlgebraPtr make_algebra(std::vector<Complex> structure, std::vector<Complex> unit,
                               std::string label, AlgebraMetadata meta = {},
                               const Tolerances& tol = {}) {
    const std::size_t d = unit.size();
    if (d == 0) throw ValidationError("algebra dimension must be at least 1");
    if (structure.size() != d * d * d)
        throw ValidationError("structure tensor has " + std::to_string(structure.size()) +
                              " entries, expected " + std::to_string(d * d * d));
    for (const Complex& z : structure)
        if (!is_finite(z)) throw ValidationError("structure constants must be finite");
    for (const Complex& z : unit)
        if (!is_finite(z)) throw ValidationError("unit coefficients must be finite");
    if (!meta.basis_labels.empty() && meta.basis_labels.size() != d)
        throw ValidationError("basis label count does not match dimension");

    std::shared_ptr<StructureAlgebra> alg(new StructureAlgebra());
    alg->dim_ = d;
    alg->unit_ = std::move(unit);
    alg->label_ = std::move(label);
    alg->meta_ = std::move(meta);
    alg->products_.resize(d * d);
    double max_c = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                const Complex c = structure[(i * d + j) * d + k];
                max_c = std::max(max_c, std::abs(c));
                if (c != Complex{}) alg->products_[i * d + j].push_back({k, c});
            }
    alg->structure_ = std::move(structure);
    alg->max_constant_ = max_c;

    const double tol_struct = tol.structure_tol(max_c);
    alg->residuals_.tolerance = tol_struct;

    // (e_i e_j) e_k - e_i (e_j e_k)
    std::vector<Complex> diff(d);
    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                std::fill(diff.begin(), diff.end(), Complex{});
                for (const auto& t : alg->products_[i * d + j])
                    for (const auto& s : alg->products_[t.index * d + k])
                        diff[s.index] += t.coeff * s.coeff;
                for (const auto& t : alg->products_[j * d + k])
                    for (const auto& s : alg->products_[i * d + t.index])
                        diff[s.index] -= t.coeff * s.coeff;
                const double r = norm(diff);
                worst = std::max(worst, r);
                if (r > tol_struct)
                    throw ValidationError("associativity residual " + fmt(r) +
                                          " at basis triple (" + std::to_string(i) + ", " +
                                          std::to_string(j) + ", " + std::to_string(k) + ")");
            }
    alg->residuals_.associativity = worst;

    double unit_worst = 0.0;
    std::vector<Complex> e(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::fill(e.begin(), e.end(), Complex{});
        e[i] = 1.0;
        auto left = alg->multiply(alg->unit_, e);
        auto right = alg->multiply(e, alg->unit_);
        unit_worst = std::max({unit_worst, distance(left, e), distance(right, e)});
    }
    alg->residuals_.unit = unit_worst;
    if (unit_worst > tol_struct)
        throw ValidationError("unit axiom residual " + fmt(unit_worst) +
                              " exceeds " + fmt(tol_struct));
    return alg;
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

class Element {
public:
    Element(AlgebraPtr algebra, std::vector<Complex> coeffs)
        : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
        if (!algebra_) throw ValidationError("element without algebra");
        if (coeffs_.size() != algebra_->dim())
            throw ValidationError("element has " + std::to_string(coeffs_.size()) +
                                  " coefficients, algebra '" + algebra_->label() +
                                  "' has dimension " + std::to_string(algebra_->dim()));
    }

    static Element zero(const AlgebraPtr& a) { return {a, std::vector<Complex>(a->dim())}; }
    static Element unit(const AlgebraPtr& a) {
        return {a, std::vector<Complex>(a->unit().begin(), a->unit().end())};
    }
    static Element basis(const AlgebraPtr& a, std::size_t i) {
        std::vector<Complex> c(a->dim());
        c.at(i) = 1.0;
        return {a, std::move(c)};
    }

    const AlgebraPtr& algebra() const noexcept { return algebra_; }
    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    std::size_t dim() const noexcept { return coeffs_.size(); }
    Complex operator[](std::size_t i) const { return coeffs_[i]; }

    double norm() const noexcept { return specalg::norm(coeffs_); }

    Element& operator+=(const Element& o) {
        check_same(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    Element& operator-=(const Element& o) {
        check_same(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    Element& operator*=(Complex s) {
        for (Complex& z : coeffs_) z *= s;
        return *this;
    }

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator-(Element a) { return a *= -1.0; }
    friend Element operator*(Complex s, Element a) { return a *= s; }
    friend Element operator*(const Element& a, const Element& b) {
        a.check_same(b);
        return {a.algebra_, a.algebra_->multiply(a.coeffs_, b.coeffs_)};
    }

    void check_same(const Element& o) const {
        if (algebra_.get() != o.algebra_.get())
            throw AlgebraMismatch("elements of '" + algebra_->label() + "' and '" +
                                  o.algebra_->label() + "'");
    }

private:
    AlgebraPtr algebra_;
    std::vector<Complex> coeffs_;
};

inline Element add(const Element& a, const Element& b) { return a + b; }
inline Element sub(const Element& a, const Element& b) { return a - b; }
inline Element mul(const Element& a, const Element& b) { return a * b; }
inline Element scale(Complex s, const Element& a) { return s * a; }

/// a - lambda * 1.
inline Element shift(const Element& a, Complex lambda) {
    return a - lambda * Element::unit(a.algebra());
}

inline double distance(const Element& a, const Element& b) {
    a.check_same(b);
    return distance(a.coeffs(), b.coeffs());
}

inline Element power(const Element& a, std::size_t k) {
    Element result = Element::unit(a.algebra());
    Element base = a;
    while (k > 0) {
        if (k & 1U) result = result * base;
        k >>= 1U;
        if (k > 0) base = base * base;
    }
    return result;
}

inline double commutator_norm(const Element& a, const Element& b) {
    return (a * b - b * a).norm();
}

// ---------------------------------------------------------------------------
// Regular representations and inverses
// ---------------------------------------------------------------------------

/// Matrix of x -> a x in the canonical basis.
inline DenseMatrix left_regular(const Element& a) {
    const auto& alg = *a.algebra();
    const std::size_t d = alg.dim();
    DenseMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        if (a[i] == Complex{}) continue;
        for (std::size_t j = 0; j < d; ++j)
            for (const auto& t : alg.product(i, j)) m(t.index, j) += a[i] * t.coeff;
    }
    return m;
}

/// Matrix of x -> x a in the canonical basis.
inline DenseMatrix right_regular(const Element& a) {
    const auto& alg = *a.algebra();
    const std::size_t d = alg.dim();
    DenseMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (a[j] == Complex{}) continue;
            for (const auto& t : alg.product(i, j)) m(t.index, i) += a[j] * t.coeff;
        }
    return m;
}

/// Solves L_a x = 1 and checks both a x = 1 and x a = 1.
inline std::optional<Element> try_invert(const Element& a, const Tolerances& tol = {}) {
    const auto& alg = a.algebra();
    LuDecomposition lu(left_regular(a), tol.rank);
    if (lu.singular()) return std::nullopt;
    Element x(alg, lu.solve(alg->unit()));
    const Element one = Element::unit(alg);
    const double limit = tol.alg(a.norm() * x.norm());
    if (distance(a * x, one) > limit || distance(x * a, one) > limit) return std::nullopt;
    return x;
}

inline Element invert(const Element& a, const Tolerances& tol = {}) {
    auto x = try_invert(a, tol);
    if (!x) throw NotInvertible("element of '" + a.algebra()->label() + "' is singular");
    return *std::move(x);
}

inline bool is_invertible(const Element& a, const Tolerances& tol = {}) {
    return try_invert(a, tol).has_value();
}

struct IdempotencyCheck {
    bool idempotent = false;
    double residual = 0.0;
    explicit operator bool() const noexcept { return idempotent; }
};

inline IdempotencyCheck is_idempotent(const Element& p, const Tolerances& tol = {}) {
    const double r = distance(p * p, p);
    return {r <= tol.alg(p.norm() * (1.0 + p.norm())), r};
}

// ---------------------------------------------------------------------------
// Pierce decomposition and corner algebras
// ---------------------------------------------------------------------------

/// a = pap + pap' + p'ap + p'ap' with p' = 1 - p.
struct PierceDecomposition {
    Element p;
    Element pap;
    Element pap_c;    // p a p'
    Element p_c_ap;   // p' a p
    Element p_c_ap_c; // p' a p'

    Element sum() const { return pap + pap_c + p_c_ap + p_c_ap_c; }
};

inline PierceDecomposition pierce(const Element& a, const Element& p, const Tolerances& tol = {}) {
    a.check_same(p);
    if (!is_idempotent(p, tol)) throw NotIdempotent("Pierce decomposition needs p^2 = p");
    const Element pc = Element::unit(p.algebra()) - p;
    const Element ap = a * p;
    const Element apc = a * pc;
    return {p, p * ap, p * apc, pc * ap, pc * apc};
}

/// pAp with unit p, together with the linear maps between it and A.
struct CornerAlgebra {
    AlgebraPtr algebra;
    Element idempotent;
    DenseMatrix embedding;    // d x r, columns are the corner basis inside A
    DenseMatrix coordinates;  // r x d left inverse of `embedding`
    std::vector<std::size_t> source_indices;

    Element embed(const Element& x) const {
        if (x.algebra().get() != algebra.get()) throw AlgebraMismatch("not a corner element");
        return {idempotent.algebra(), embedding.apply(x.coeffs())};
    }
    /// Coordinates of an element already lying in pAp.
    Element restrict(const Element& x) const {
        x.check_same(idempotent);
        return {algebra, coordinates.apply(x.coeffs())};
    }
    /// Coordinates of p x p.
    Element compress(const Element& x) const { return restrict(idempotent * x * idempotent); }
};

inline CornerAlgebra corner_algebra(const AlgebraPtr& source, const Element& p,
                                    const Tolerances& tol = {}) {
    if (p.algebra().get() != source.get()) throw AlgebraMismatch("idempotent of another algebra");
    if (!is_idempotent(p, tol)) throw NotIdempotent("corner algebra needs p^2 = p");
    if (p.norm() <= tol.alg(0.0)) throw ZeroIdempotent("corner algebra of p = 0");
    const std::size_t d = source->dim();

    const DenseMatrix images = left_regular(p) * right_regular(p);
    PivotedQR qr(images, tol.rank);
    std::vector<std::size_t> picked(qr.permutation().begin(),
                                    qr.permutation().begin() + qr.rank());
    std::sort(picked.begin(), picked.end());
    const std::size_t r = picked.size();

    DenseMatrix basis(d, r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t i = 0; i < d; ++i) basis(i, a) = images(i, picked[a]);
    DenseMatrix coords = left_inverse(basis, tol.rank);

    std::vector<Complex> structure(r * r * r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
            const auto prod = source->multiply(basis.column(a), basis.column(b));
            const auto c = coords.apply(prod);
            for (std::size_t k = 0; k < r; ++k) structure[(a * r + b) * r + k] = c[k];
        }
    std::vector<Complex> unit = coords.apply(p.coeffs());

    AlgebraMetadata meta;
    const auto& src_labels = source->metadata().basis_labels;
    for (std::size_t idx : picked)
        meta.basis_labels.push_back("p(" + (src_labels.empty() ? "e" + std::to_string(idx)
                                                              : src_labels[idx]) + ")p");
    auto alg = make_algebra(std::move(structure), std::move(unit),
                            "corner(" + source->label() + ")", std::move(meta), tol);
    return {std::move(alg), p, std::move(basis), std::move(coords), std::move(picked)};
}

// ---------------------------------------------------------------------------
// Builtin models
// ---------------------------------------------------------------------------

inline AlgebraPtr full_matrix(std::size_t n) {
    if (n == 0) throw ValidationError("full_matrix needs n >= 1");
    const std::size_t d = n * n;
    std::vector<Complex> c(d * d * d);
    AlgebraMetadata meta;
    meta.blocks.push_back({BlockKind::full, n, 0});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            meta.basis_labels.push_back("E" + std::to_string(i) + std::to_string(j));
            // E_ij E_jl = E_il
            for (std::size_t l = 0; l < n; ++l) c[((i * n + j) * d + (j * n + l)) * d + (i * n + l)] = 1.0;
        }
    std::vector<Complex> unit(d);
    for (std::size_t i = 0; i < n; ++i) unit[i * n + i] = 1.0;
    return make_algebra(std::move(c), std::move(unit), "M_" + std::to_string(n), std::move(meta));
}

namespace detail {
// Basis position of E_ij (i <= j) in upper_triangular(n): diagonal units
// first, then the strictly upper units in row-major order.
inline std::size_t upper_index(std::size_t n, std::size_t i, std::size_t j) {
    if (i == j) return i;
    std::size_t pos = n;
    for (std::size_t r = 0; r < i; ++r) pos += n - r - 1;
    return pos + (j - i - 1);
}
}  // namespace detail

inline AlgebraPtr upper_triangular(std::size_t n) {
    if (n == 0) throw ValidationError("upper_triangular needs n >= 1");
    const std::size_t d = n * (n + 1) / 2;
    std::vector<Complex> c(d * d * d);
    AlgebraMetadata meta;
    meta.blocks.push_back({BlockKind::upper_triangular, n, 0});
    meta.basis_labels.resize(d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const std::size_t ij = detail::upper_index(n, i, j);
            meta.basis_labels[ij] = "E" + std::to_string(i) + std::to_string(j);
            for (std::size_t l = j; l < n; ++l)
                c[(ij * d + detail::upper_index(n, j, l)) * d + detail::upper_index(n, i, l)] = 1.0;
        }
    std::vector<Complex> unit(d);
    for (std::size_t i = 0; i < n; ++i) unit[i] = 1.0;
    return make_algebra(std::move(c), std::move(unit), "UT_" + std::to_string(n), std::move(meta));
}

inline AlgebraPtr diagonal(std::size_t n) {
    if (n == 0) throw ValidationError("diagonal needs n >= 1");
    std::vector<Complex> c(n * n * n);
    AlgebraMetadata meta;
    meta.blocks.push_back({BlockKind::diagonal, n, 0});
    for (std::size_t i = 0; i < n; ++i) {
        c[(i * n + i) * n + i] = 1.0;
        meta.basis_labels.push_back("e" + std::to_string(i));
    }
    return make_algebra(std::move(c), std::vector<Complex>(n, 1.0), "C^" + std::to_string(n),
                        std::move(meta));
}

inline AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b) {
    const std::size_t da = a->dim();
    const std::size_t db = b->dim();
    const std::size_t d = da + db;
    std::vector<Complex> c(d * d * d);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            for (const auto& t : a->product(i, j)) c[(i * d + j) * d + t.index] = t.coeff;
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j)
            for (const auto& t : b->product(i, j))
                c[((da + i) * d + (da + j)) * d + da + t.index] = t.coeff;
    std::vector<Complex> unit(a->unit().begin(), a->unit().end());
    unit.insert(unit.end(), b->unit().begin(), b->unit().end());

    AlgebraMetadata meta;
    const auto& ma = a->metadata();
    const auto& mb = b->metadata();
    if (!ma.blocks.empty() && !mb.blocks.empty()) {
        meta.blocks = ma.blocks;
        for (ModelBlock blk : mb.blocks) {
            blk.offset += da;
            meta.blocks.push_back(blk);
        }
    }
    if (!ma.basis_labels.empty() && !mb.basis_labels.empty()) {
        for (const auto& s : ma.basis_labels) meta.basis_labels.push_back("0:" + s);
        for (const auto& s : mb.basis_labels) meta.basis_labels.push_back("1:" + s);
    }
    return make_algebra(std::move(c), std::move(unit), a->label() + "+" + b->label(),
                        std::move(meta));
}

/// Description of a builtin model, e.g. direct_sum(full_matrix(3), full_matrix(2)).
struct ModelSpec {
    enum class Kind { full_matrix, upper_triangular, diagonal, direct_sum };
    Kind kind = Kind::full_matrix;
    std::size_t n = 1;
    std::vector<ModelSpec> parts;  // direct_sum only, at least two
};

inline AlgebraPtr builtin_model(const ModelSpec& spec) {
    switch (spec.kind) {
        case ModelSpec::Kind::full_matrix: return full_matrix(spec.n);
        case ModelSpec::Kind::upper_triangular: return upper_triangular(spec.n);
        case ModelSpec::Kind::diagonal: return diagonal(spec.n);
        case ModelSpec::Kind::direct_sum: {
            if (spec.parts.size() < 2) throw ValidationError("direct_sum needs two or more parts");
            AlgebraPtr acc = builtin_model(spec.parts[0]);
            for (std::size_t i = 1; i < spec.parts.size(); ++i)
                acc = direct_sum(acc, builtin_model(spec.parts[i]));
            return acc;
        }
    }
    throw ValidationError("unknown model kind");
}

/// Block matrices of an element of a block model.
inline std::vector<DenseMatrix> to_blocks(const Element& a) {
    const auto& blocks = a.algebra()->metadata().blocks;
    if (blocks.empty()) throw ValidationError("algebra '" + a.algebra()->label() + "' is not a block model");
    std::vector<DenseMatrix> out;
    for (const ModelBlock& b : blocks) {
        DenseMatrix m(b.n, b.n);
        for (std::size_t i = 0; i < b.n; ++i)
            for (std::size_t j = 0; j < b.n; ++j) {
                switch (b.kind) {
                    case BlockKind::full: m(i, j) = a[b.offset + i * b.n + j]; break;
                    case BlockKind::upper_triangular:
                        if (i <= j) m(i, j) = a[b.offset + detail::upper_index(b.n, i, j)];
                        break;
                    case BlockKind::diagonal:
                        if (i == j) m(i, i) = a[b.offset + i];
                        break;
                }
            }
        out.push_back(std::move(m));
    }
    return out;
}

/// Element of a block model from its block matrices. Entries outside a
/// block's pattern must be zero.
inline Element from_blocks(const AlgebraPtr& alg, const std::vector<DenseMatrix>& mats) {
    const auto& blocks = alg->metadata().blocks;
    if (blocks.empty()) throw ValidationError("algebra '" + alg->label() + "' is not a block model");
    if (mats.size() != blocks.size())
        throw ValidationError("expected " + std::to_string(blocks.size()) + " blocks");
    std::vector<Complex> c(alg->dim());
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        const ModelBlock& b = blocks[k];
        const DenseMatrix& m = mats[k];
        if (m.rows() != b.n || m.cols() != b.n)
            throw ValidationError("block " + std::to_string(k) + " must be " +
                                  std::to_string(b.n) + "x" + std::to_string(b.n));
        for (std::size_t i = 0; i < b.n; ++i)
            for (std::size_t j = 0; j < b.n; ++j) {
                const Complex z = m(i, j);
                switch (b.kind) {
                    case BlockKind::full: c[b.offset + i * b.n + j] = z; break;
                    case BlockKind::upper_triangular:
                        if (i <= j) c[b.offset + detail::upper_index(b.n, i, j)] = z;
                        else if (z != Complex{}) throw ValidationError("entry below the diagonal in an upper triangular block");
                        break;
                    case BlockKind::diagonal:
                        if (i == j) c[b.offset + i] = z;
                        else if (z != Complex{}) throw ValidationError("off-diagonal entry in a diagonal block");
                        break;
                }
            }
    }
    return {alg, std::move(c)};
}

/// The same algebra written in the basis f_j = sum_i S(i, j) e_i.
struct BasisChange {
    AlgebraPtr source;
    AlgebraPtr algebra;
    DenseMatrix basis;    // S, columns are the new basis in old coordinates
    DenseMatrix inverse;  // S^{-1}

    Element to_new(const Element& x) const {
        if (x.algebra().get() != source.get()) throw AlgebraMismatch("not an element of the source");
        return {algebra, inverse.apply(x.coeffs())};
    }
    Element to_old(const Element& x) const {
        if (x.algebra().get() != algebra.get()) throw AlgebraMismatch("not an element of the rebased algebra");
        return {source, basis.apply(x.coeffs())};
    }
};

inline BasisChange rebase(const AlgebraPtr& source, const DenseMatrix& s, const Tolerances& tol = {}) {
    const std::size_t d = source->dim();
    if (s.rows() != d || s.cols() != d) throw ValidationError("basis change must be d x d");
    LuDecomposition lu(s, tol.rank);
    if (lu.singular()) throw ValidationError("basis change matrix is singular");
    DenseMatrix inv(d, d);
    std::vector<Complex> e(d);
    for (std::size_t j = 0; j < d; ++j) {
        std::fill(e.begin(), e.end(), Complex{});
        e[j] = 1.0;
        inv.set_column(j, lu.solve(e));
    }
    std::vector<Complex> c(d * d * d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            const auto coords = inv.apply(source->multiply(s.column(a), s.column(b)));
            for (std::size_t k = 0; k < d; ++k) c[(a * d + b) * d + k] = coords[k];
        }
    auto alg = make_algebra(std::move(c), inv.apply(source->unit()),
                            "rebased(" + source->label() + ")", {}, tol);
    return {source, std::move(alg), s, std::move(inv)};
}

}  // namespace specalg

#endif  // SPECALG_ALGEBRA_HPP
