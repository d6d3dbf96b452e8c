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

#ifndef SPECALG_GALLERY_HPP
#define SPECALG_GALLERY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "quotient.hpp"

namespace specalg {

inline constexpr const char* gallery_version = "gallery-v1";

/// splitmix64; doubles are built from the top 53 bits so results do not
/// depend on the standard library's distributions.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// Uniform in [0, 1).
    double unit() noexcept { return double(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * unit(); }
    Complex complex(double half_width = 1.0) noexcept {
        return {uniform(-half_width, half_width), uniform(-half_width, half_width)};
    }
    std::size_t below(std::size_t n) noexcept { return std::size_t(next() % n); }

private:
    std::uint64_t state_;
};

struct JordanBlock {
    Complex mu;
    std::size_t size = 1;
};

inline DenseMatrix jordan_matrix(const std::vector<JordanBlock>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.size;
    DenseMatrix m(n, n);
    std::size_t at = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.size; ++i) {
            m(at + i, at + i) = b.mu;
            if (i + 1 < b.size) m(at + i, at + i + 1) = 1.0;
        }
        at += b.size;
    }
    return m;
}

inline DenseMatrix random_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols, double scale) {
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = scale * rng.complex();
    return m;
}

/// I + scale * R, with R strictly upper when `upper` is set.
inline DenseMatrix random_similarity(SplitMix64& rng, std::size_t n, double scale, bool upper = false) {
    DenseMatrix s = DenseMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!upper || j > i) s(i, j) += scale * rng.complex();
    return s;
}

inline DenseMatrix matrix_inverse(const DenseMatrix& s) {
    LuDecomposition lu(s, 1e-12);
    if (lu.singular()) throw NotInvertible("similarity is singular");
    const std::size_t n = s.rows();
    DenseMatrix inv(n, n);
    std::vector<Complex> e(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(e.begin(), e.end(), Complex{});
        e[j] = 1.0;
        inv.set_column(j, lu.solve(e));
    }
    return inv;
}

inline DenseMatrix conjugate(const DenseMatrix& s, const DenseMatrix& m) {
    return s * m * matrix_inverse(s);
}

/// A model, a homomorphism onto a quotient, an element, and the spectral
/// points of T(a) with the resolvent pole order planted by construction.
struct GalleryItem {
    std::string label;
    AlgebraPtr algebra;
    QuotientResult quotient;
    Element a;
    std::vector<std::pair<Complex, std::size_t>> planted;  // (lambda, pole order) for T(a)

    const Homomorphism& T() const { return quotient.projection; }
};

namespace detail {

inline std::vector<std::pair<Complex, std::size_t>> planted_from_jordan(const std::vector<JordanBlock>& blocks) {
    std::vector<std::pair<Complex, std::size_t>> out;
    for (const auto& b : blocks) {
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == b.mu; });
        if (it == out.end()) out.push_back({b.mu, b.size});
        else it->second = std::max(it->second, b.size);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return x.first.real() != y.first.real() ? x.first.real() < y.first.real()
                                                : x.first.imag() < y.first.imag();
    });
    return out;
}

inline std::vector<std::pair<Complex, std::size_t>> planted_diagonal(const std::vector<Complex>& diag) {
    std::vector<JordanBlock> blocks;
    for (const Complex& z : diag) blocks.push_back({z, 1});
    return planted_from_jordan(blocks);
}

inline GalleryItem upper_item(SplitMix64& rng, const std::vector<Complex>& diag) {
    const std::size_t n = diag.size();
    AlgebraPtr alg = upper_triangular(n);
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = diag[i];
        for (std::size_t j = i + 1; j < n; ++j) m(i, j) = 0.5 * rng.complex();
    }
    QuotientResult q = quotient(alg, strictly_upper_ideal(alg));
    Element a = from_blocks(alg, {m});
    return {alg->label() + "/radical", alg, std::move(q), std::move(a), planted_diagonal(diag)};
}

inline GalleryItem block_item(SplitMix64& rng, const std::vector<JordanBlock>& first, std::size_t k,
                              const std::vector<Complex>& second) {
    const DenseMatrix core = jordan_matrix(first);
    const std::size_t n = core.rows();
    const DenseMatrix m1 = conjugate(random_similarity(rng, n, 0.2), core);
    std::vector<Complex> xs(second.begin(), second.begin() + std::min(k, second.size()));
    while (xs.size() < k) xs.push_back(second.back());
    DenseMatrix xd = DenseMatrix::diagonal(xs);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) xd(i, j) = 0.3 * rng.complex();
    const DenseMatrix m2 = conjugate(random_similarity(rng, k, 0.2), xd);
    AlgebraPtr alg = direct_sum(full_matrix(n), full_matrix(k));
    QuotientResult q = quotient(alg, summand_ideal(alg, 1));
    Element a = from_blocks(alg, {m1, m2});
    return {alg->label() + "/summand1", alg, std::move(q), std::move(a), planted_from_jordan(first)};
}

inline GalleryItem diagonal_item(const std::vector<Complex>& diag, const std::vector<std::size_t>& ideal_coords) {
    const std::size_t n = diag.size();
    AlgebraPtr alg = diagonal(n);
    std::vector<Element> basis;
    for (std::size_t i : ideal_coords) basis.push_back(Element::basis(alg, i));
    QuotientResult q = quotient(alg, validate_ideal(alg, std::move(basis), "coords"));
    Element a(alg, diag);
    std::vector<Complex> kept;
    for (std::size_t i = 0; i < n; ++i)
        if (std::find(ideal_coords.begin(), ideal_coords.end(), i) == ideal_coords.end())
            kept.push_back(diag[i]);
    return {alg->label() + "/coords", alg, std::move(q), std::move(a), planted_diagonal(kept)};
}

// An item rewritten in a random basis.
inline GalleryItem rebased_item(SplitMix64& rng, const GalleryItem& base) {
    const std::size_t d = base.algebra->dim();
    BasisChange bc = rebase(base.algebra, random_similarity(rng, d, 0.15));
    std::vector<Element> basis;
    for (const Element& j : base.quotient.ideal.basis) basis.push_back(bc.to_new(j));
    QuotientResult q = quotient(bc.algebra, validate_ideal(bc.algebra, std::move(basis), "image"));
    return {"rebased(" + base.label + ")", bc.algebra, std::move(q), bc.to_new(base.a), base.planted};
}

}  // namespace detail

/// The fixed model gallery: upper triangular algebras n = 2..6 over their
/// radical, block pairs M_n (+) M_k over 0 (+) M_k with n <= 5 and k <= 3,
/// diagonal algebras over coordinate ideals, and rebased items.
inline std::vector<GalleryItem> theorem_gallery() {
    SplitMix64 rng(0x5eed2026ULL);
    const Complex i1{0.0, 1.0};
    std::vector<GalleryItem> g;

    g.push_back(detail::upper_item(rng, {0.0, 1.0}));
    g.push_back(detail::upper_item(rng, {0.0, 0.0, 1.0}));
    g.push_back(detail::upper_item(rng, {0.0, 0.0, 1.0, 2.0}));
    g.push_back(detail::upper_item(rng, {1.0, 0.0, 1.0, 0.0, 2.0}));
    g.push_back(detail::upper_item(rng, {0.0, 1.0, 0.0, 2.0, 1.0, 3.0}));

    const std::vector<Complex> xs{4.0, -3.0, 2.0 * i1};
    using JB = JordanBlock;
    g.push_back(detail::block_item(rng, {JB{0.0, 1}, JB{2.0, 1}}, 1, xs));
    g.push_back(detail::block_item(rng, {JB{0.0, 2}}, 2, xs));
    g.push_back(detail::block_item(rng, {JB{0.0, 2}, JB{5.0, 1}}, 2, xs));
    g.push_back(detail::block_item(rng, {JB{1.0, 1}, JB{1.0, 1}, JB{-1.0, 1}}, 1, xs));
    g.push_back(detail::block_item(rng, {JB{0.0, 3}, JB{2.0, 1}}, 2, xs));
    g.push_back(detail::block_item(rng, {JB{1.0 + i1, 2}, JB{-1.0, 2}}, 3, xs));
    g.push_back(detail::block_item(rng, {JB{0.0, 2}, JB{1.0, 2}, JB{3.0, 1}}, 2, xs));
    g.push_back(detail::block_item(rng, {JB{1.0, 3}, JB{-1.0, 2}}, 3, xs));
    g.push_back(detail::block_item(rng, {JB{0.0, 2}, JB{0.0, 1}, JB{2.0, 2}}, 1, xs));
    g.push_back(detail::block_item(rng, {JB{0.0, 1}, JB{1.0, 1}, JB{2.0, 1}}, 3, xs));
    g.push_back(detail::block_item(rng, {JB{0.0, 4}}, 1, xs));

    g.push_back(detail::diagonal_item({0.0, 0.0, 1.0, 7.0}, {3}));
    g.push_back(detail::diagonal_item({-1.0, 0.0, 2.0, 0.0, 5.0}, {0, 4}));

    g.push_back(detail::rebased_item(rng, g[2]));
    g.push_back(detail::rebased_item(rng, g[5]));

    for (std::size_t i = 0; i < g.size(); ++i) g[i].label = std::to_string(i) + ":" + g[i].label;
    return g;
}

/// Element with planted Drazin structure: in every block, S (N (+) G) S^{-1}
/// with N nilpotent (Jordan blocks at 0) and G invertible upper triangular.
struct DrazinCase {
    std::string label;
    AlgebraPtr algebra;
    Element a;
    std::vector<DenseMatrix> similarity;  // S per block
    std::vector<DenseMatrix> core;        // N (+) G per block
    std::vector<std::size_t> nil_size;    // size of N per block
    std::size_t index = 0;                // planted Drazin index
};

namespace detail {

// Upper triangular: Jordan chains at 0 of length <= max_jordan, then G.
inline DenseMatrix planted_core(SplitMix64& rng, std::size_t n, std::size_t nil, std::size_t max_jordan) {
    DenseMatrix m(n, n);
    std::size_t at = 0;
    while (at < nil) {
        const std::size_t len = std::min(max_jordan, nil - at);
        for (std::size_t i = 0; i + 1 < len; ++i) m(at + i, at + i + 1) = 1.0;
        at += len;
        max_jordan = std::max<std::size_t>(1, std::min(max_jordan, 1 + rng.below(max_jordan)));
    }
    for (std::size_t i = nil; i < n; ++i) {
        const double r = rng.uniform(0.75, 2.0);
        const double th = rng.uniform(0.0, 6.283185307179586);
        m(i, i) = std::polar(r, th);
        for (std::size_t j = i + 1; j < n; ++j) m(i, j) = 0.3 * rng.complex();
    }
    return m;
}

inline std::size_t nilpotency_of_core(const DenseMatrix& m, std::size_t nil) {
    if (nil == 0) return 0;
    std::size_t best = 1, run = 1;
    for (std::size_t i = 0; i + 1 < nil; ++i) {
        if (m(i, i + 1) != Complex{}) best = std::max(best, ++run);
        else run = 1;
    }
    return best;
}

}  // namespace detail

/// `count` planted Drazin cases cycling through M_n (n <= 8), UT(n)
/// (n <= 8) and M_n (+) M_k (n + k <= 8).
inline std::vector<DrazinCase> drazin_cases(std::size_t count, std::uint64_t seed = 0xd7a2172026ULL) {
    SplitMix64 rng(seed);
    std::vector<DrazinCase> out;
    for (std::size_t c = 0; c < count; ++c) {
        const std::size_t family = c % 3;
        AlgebraPtr alg;
        std::vector<std::size_t> sizes;
        bool upper = false;
        if (family == 0) {
            sizes.push_back(2 + rng.below(7));
            alg = full_matrix(sizes[0]);
        } else if (family == 1) {
            sizes.push_back(2 + rng.below(7));
            upper = true;
            alg = upper_triangular(sizes[0]);
        } else {
            const std::size_t n = 2 + rng.below(5);
            sizes.push_back(n);
            sizes.push_back(1 + rng.below(7 - n));
            alg = direct_sum(full_matrix(n), full_matrix(sizes[1]));
        }
        std::vector<DenseMatrix> sims, cores, mats;
        std::vector<std::size_t> nils;
        std::size_t index = 0;
        for (std::size_t b = 0; b < sizes.size(); ++b) {
            const std::size_t n = sizes[b];
            // Every seventh case is invertible; otherwise the first block has a nilpotent part.
            std::size_t nil = 0;
            if (b == 0) nil = (c % 7 == 3) ? 0 : 1 + rng.below(n);
            else nil = rng.below(n + 1);
            const std::size_t max_j = nil == 0 ? 1 : 1 + rng.below(std::min<std::size_t>(nil, 4));
            DenseMatrix core = detail::planted_core(rng, n, nil, max_j);
            DenseMatrix s = random_similarity(rng, n, 0.2, upper);
            index = std::max(index, detail::nilpotency_of_core(core, nil));
            mats.push_back(conjugate(s, core));
            sims.push_back(std::move(s));
            cores.push_back(std::move(core));
            nils.push_back(nil);
        }
        Element a = from_blocks(alg, mats);
        out.push_back({std::to_string(c) + ":" + alg->label(), alg, std::move(a), std::move(sims),
                       std::move(cores), std::move(nils), index});
    }
    return out;
}

}  // namespace specalg

#endif  // SPECALG_GALLERY_HPP
