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

#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"

using namespace specalg;
using oracle::lit;

namespace {

AlgebraPtr matrices(std::size_t n) {
    static std::map<std::size_t, AlgebraPtr> cache;
    auto& a = cache[n];
    if (!a) a = full_matrix(n);
    return a;
}

Element m2(const DenseMatrix& m) { return from_blocks(matrices(m.rows()), {m}); }

Element random_element(SplitMix64& rng, const AlgebraPtr& alg) {
    std::vector<Complex> c(alg->dim());
    for (auto& z : c) z = rng.complex();
    return {alg, c};
}

}  // namespace

TEST(MakeAlgebra, ScalarField) {
    auto c = make_algebra({1.0}, {1.0}, "C");
    EXPECT_EQ(c->dim(), 1u);
    EXPECT_EQ(c->label(), "C");
}

TEST(MakeAlgebra, MatrixUnitsOfM2) {
    std::vector<Complex> st(64);
    // E_ij E_kl = delta_jk E_il, index 2i + j
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t l = 0; l < 2; ++l) st[((2 * i + j) * 4 + (2 * j + l)) * 4 + (2 * i + l)] = 1.0;
    auto a = make_algebra(st, {1.0, 0.0, 0.0, 1.0}, "M2");
    EXPECT_EQ(a->dim(), 4u);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(a->constant(i, j, k), full_matrix(2)->constant(i, j, k));
}

TEST(MakeAlgebra, PerturbedC2Rejected) {
    std::vector<Complex> st(8);
    st[0] = 1.0 + 1e-3;
    st[(1 * 2 + 1) * 2 + 1] = 1.0;
    EXPECT_THROW(make_algebra(st, {1.0, 1.0}, "C2"), ValidationError);
}

TEST(MakeAlgebra, NonAssociativeRejected) {
    // e0 e0 = e0, e0 e1 = e1 e0 = e1, e1 e1 = e0 + e1 is associative; break one entry.
    std::vector<Complex> st(8);
    st[0] = 1.0;
    st[(0 * 2 + 1) * 2 + 1] = 1.0;
    st[(1 * 2 + 0) * 2 + 1] = 1.0;
    st[(1 * 2 + 1) * 2 + 0] = 1.0;
    EXPECT_NO_THROW(make_algebra(st, {1.0, 0.0}, "ok"));
    st[(1 * 2 + 1) * 2 + 1] = 0.5;
    EXPECT_NO_THROW(make_algebra(st, {1.0, 0.0}, "still commutative"));
    std::vector<Complex> bad(8);
    bad[0] = 1.0;
    bad[(0 * 2 + 1) * 2 + 1] = 1.0;
    bad[(1 * 2 + 0) * 2 + 0] = 1.0;
    EXPECT_THROW(make_algebra(bad, {1.0, 0.0}, "bad"), ValidationError);
}

TEST(MakeAlgebra, ShapeErrors) {
    EXPECT_THROW(make_algebra({}, {}, "empty"), ValidationError);
    EXPECT_THROW(make_algebra({1.0, 0.0}, {1.0}, "short"), ValidationError);
    EXPECT_THROW(make_algebra({std::nan("")}, {1.0}, "nan"), ValidationError);
}

TEST(BuiltinModels, Dimensions) {
    EXPECT_EQ(full_matrix(2)->dim(), 4u);
    EXPECT_EQ(upper_triangular(3)->dim(), 6u);
    EXPECT_EQ(diagonal(5)->dim(), 5u);
    auto s = direct_sum(full_matrix(2), full_matrix(2));
    EXPECT_EQ(s->dim(), 8u);
    const auto blocks = to_blocks(Element::unit(s));
    ASSERT_EQ(blocks.size(), 2u);
    for (const auto& b : blocks) EXPECT_LT((b - DenseMatrix::identity(2)).frobenius(), 1e-15);
    EXPECT_THROW(full_matrix(0), ValidationError);
}

TEST(BuiltinModels, SpecDispatch) {
    ModelSpec ut{ModelSpec::Kind::upper_triangular, 4, {}};
    ModelSpec sum{ModelSpec::Kind::direct_sum, 1, {ut, {ModelSpec::Kind::diagonal, 2, {}}}};
    EXPECT_EQ(builtin_model(sum)->dim(), 12u);
    EXPECT_THROW(builtin_model({ModelSpec::Kind::direct_sum, 1, {ut}}), ValidationError);
}

TEST(BuiltinModels, UpperTriangularProductsMatchMatrices) {
    SplitMix64 rng(21);
    auto ut = upper_triangular(4);
    for (int t = 0; t < 10; ++t) {
        oracle::Mat x = oracle::zeros(4, 4), y = oracle::zeros(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i; j < 4; ++j) {
                x[i][j] = rng.complex();
                y[i][j] = rng.complex();
            }
        const Element p = oracle::element_of(ut, {x}) * oracle::element_of(ut, {y});
        EXPECT_LT(oracle::diff(oracle::blocks_of(p)[0], oracle::mul(x, y)), 1e-13);
    }
}

TEST(Multiply, UnitAndMatrixUnits) {
    SplitMix64 rng(22);
    auto alg = direct_sum(full_matrix(3), upper_triangular(2));
    const Element a = random_element(rng, alg);
    EXPECT_LT(distance(Element::unit(alg) * a, a), 1e-14);
    EXPECT_LT(distance(a * Element::unit(alg), a), 1e-14);
    const Element e12 = m2(lit({{0, 1}, {0, 0}}));
    const Element e21(e12.algebra(), {0.0, 0.0, 1.0, 0.0});
    const Element p = e12 * e21;
    EXPECT_EQ(p[0], Complex(1.0));
    EXPECT_EQ(p.norm(), 1.0);
}

TEST(Multiply, Bilinearity) {
    SplitMix64 rng(23);
    auto alg = full_matrix(3);
    for (int t = 0; t < 20; ++t) {
        const Element a = random_element(rng, alg), b = random_element(rng, alg), c = random_element(rng, alg);
        const double s = 1.0 + a.norm() * c.norm() + b.norm() * c.norm();
        EXPECT_LT(distance((a + b) * c, a * c + b * c), 1e-9 * s);
        EXPECT_LT(distance(c * (a - b), c * a - c * b), 1e-9 * s);
        EXPECT_LT(distance(scale(2.5, a) * c, 2.5 * (a * c)), 1e-9 * s);
    }
}

TEST(Multiply, AlgebraMismatch) {
    auto a = Element::unit(full_matrix(2));
    auto b = Element::unit(full_matrix(2));
    EXPECT_THROW(a * b, AlgebraMismatch);
    EXPECT_THROW(add(a, b), AlgebraMismatch);
}

TEST(Regular, UnitIsIdentity) {
    auto alg = upper_triangular(3);
    EXPECT_LT((left_regular(Element::unit(alg)) - DenseMatrix::identity(6)).frobenius(), 1e-15);
    EXPECT_LT((right_regular(Element::unit(alg)) - DenseMatrix::identity(6)).frobenius(), 1e-15);
}

TEST(Regular, MatchesMultiplication) {
    SplitMix64 rng(24);
    auto alg = direct_sum(full_matrix(2), full_matrix(3));
    for (int t = 0; t < 10; ++t) {
        const Element a = random_element(rng, alg), b = random_element(rng, alg);
        EXPECT_LT(distance(left_regular(a).apply(b.coeffs()), (a * b).coeffs()), 1e-12);
        EXPECT_LT(distance(right_regular(a).apply(b.coeffs()), (b * a).coeffs()), 1e-12);
    }
}

TEST(Regular, MatrixAlgebraIsKroneckerProduct) {
    SplitMix64 rng(25);
    const DenseMatrix m = random_matrix(rng, 3, 3, 1.0);
    const auto l = oracle::from(left_regular(m2(m)));
    EXPECT_LT(oracle::diff(l, oracle::kron_identity(oracle::from(m))), 1e-14);
}

TEST(Regular, DiagonalAlgebraIsCoordinatewise) {
    auto c2 = diagonal(2);
    const Element a(c2, {Complex(2.0, 1.0), -3.0});
    const auto l = left_regular(a);
    EXPECT_EQ(l(0, 0), Complex(2.0, 1.0));
    EXPECT_EQ(l(1, 1), Complex(-3.0));
    EXPECT_EQ(l(0, 1), Complex{});
    EXPECT_EQ(l(1, 0), Complex{});
}

TEST(Invert, Examples) {
    auto alg = full_matrix(2);
    EXPECT_LT(distance(invert(Element::unit(alg)), Element::unit(alg)), 1e-15);
    const Element d = m2(lit({{2, 0}, {0, 4}}));
    EXPECT_LT(oracle::diff(oracle::blocks_of(invert(d))[0], oracle::from(lit({{0.5, 0}, {0, 0.25}}))), 1e-15);
    EXPECT_THROW(invert(m2(lit({{0, 1}, {0, 0}}))), NotInvertible);
    EXPECT_FALSE(is_invertible(m2(lit({{0, 1}, {0, 0}}))));
}

TEST(Invert, RandomAgainstGaussJordan) {
    SplitMix64 rng(26);
    for (int t = 0; t < 10; ++t) {
        const DenseMatrix m = random_matrix(rng, 4, 4, 1.0) + 3.0 * DenseMatrix::identity(4);
        const auto want = oracle::inverse(oracle::from(m));
        ASSERT_TRUE(want);
        EXPECT_LT(oracle::diff(oracle::blocks_of(invert(m2(m)))[0], *want), 1e-12);
    }
}

TEST(Idempotent, Examples) {
    EXPECT_TRUE(is_idempotent(Element::unit(full_matrix(2))));
    EXPECT_TRUE(is_idempotent(m2(lit({{1, 0}, {0, 0}}))));
    EXPECT_TRUE(is_idempotent(m2(lit({{1, 1}, {0, 0}}))));
    const auto r = is_idempotent(m2(lit({{2, 0}, {0, 0}})));
    EXPECT_FALSE(r);
    EXPECT_NEAR(r.residual, 2.0, 1e-15);
}

TEST(Pierce, Examples) {
    SplitMix64 rng(27);
    auto alg = matrices(2);
    const Element a = random_element(rng, alg);
    const auto one = pierce(a, Element::unit(alg));
    EXPECT_LT(distance(one.pap, a), 1e-14);
    EXPECT_LT(one.pap_c.norm() + one.p_c_ap.norm() + one.p_c_ap_c.norm(), 1e-14);
    const auto zero = pierce(a, Element::zero(alg));
    EXPECT_LT(distance(zero.p_c_ap_c, a), 1e-14);
    EXPECT_LT(zero.pap.norm() + zero.pap_c.norm() + zero.p_c_ap.norm(), 1e-14);

    const Element e12 = m2(lit({{0, 1}, {0, 0}}));
    const auto pd = pierce(e12, m2(lit({{1, 0}, {0, 0}})));
    EXPECT_LT(pd.pap.norm(), 1e-15);
    EXPECT_LT(distance(pd.pap_c, e12), 1e-15);
    EXPECT_LT(pd.p_c_ap.norm() + pd.p_c_ap_c.norm(), 1e-15);
    EXPECT_LT(distance(pd.sum(), e12), 1e-15);
    EXPECT_THROW(pierce(e12, e12), NotIdempotent);
}

TEST(Pierce, SumReproducesRandomElement) {
    SplitMix64 rng(28);
    auto alg = matrices(3);
    for (int t = 0; t < 10; ++t) {
        const Element a = random_element(rng, alg);
        // oblique idempotent S diag(1,1,0) S^{-1}
        const DenseMatrix s = random_similarity(rng, 3, 0.5);
        const Element p = m2(conjugate(s, oracle::diag({1.0, 1.0, 0.0})));
        EXPECT_LT(distance(pierce(a, p).sum(), a), 1e-12 * (1.0 + a.norm()));
    }
}

TEST(Corner, Examples) {
    auto m2a = matrices(2);
    EXPECT_EQ(corner_algebra(m2a, Element::unit(m2a)).algebra->dim(), 4u);
    const auto c = corner_algebra(m2a, m2(lit({{1, 0}, {0, 0}})));
    EXPECT_EQ(c.algebra->dim(), 1u);
    EXPECT_LT(distance(Element::unit(c.algebra), Element(c.algebra, {1.0})), 1e-14);

    auto m3 = full_matrix(3);
    const Element p = from_blocks(m3, {oracle::diag({1.0, 1.0, 0.0})});
    const auto c3 = corner_algebra(m3, p);
    EXPECT_EQ(c3.algebra->dim(), 4u);
    EXPECT_LT(distance(c3.embed(Element::unit(c3.algebra)), p), 1e-14);

    EXPECT_THROW(corner_algebra(m2a, m2(lit({{0, 1}, {0, 0}}))), NotIdempotent);
    EXPECT_THROW(corner_algebra(m2a, Element::zero(m2a)), ZeroIdempotent);
}

TEST(Corner, CompressIsHomomorphicOnCorner) {
    SplitMix64 rng(29);
    auto m3 = full_matrix(3);
    const DenseMatrix s = random_similarity(rng, 3, 0.4);
    const Element p = from_blocks(m3, {conjugate(s, oracle::diag({1.0, 1.0, 0.0}))});
    const auto c = corner_algebra(m3, p);
    const Element x = random_element(rng, m3), y = random_element(rng, m3);
    const Element pxp = p * x * p, pyp = p * y * p;
    EXPECT_LT(distance(c.embed(c.compress(x) * c.compress(y)), pxp * pyp), 1e-10);
}

TEST(Rebase, PreservesProducts) {
    SplitMix64 rng(30);
    auto alg = upper_triangular(3);
    const DenseMatrix s = random_similarity(rng, 6, 0.5);
    const BasisChange bc = rebase(alg, s);
    const Element a = random_element(rng, alg), b = random_element(rng, alg);
    EXPECT_LT(distance(bc.to_old(bc.to_new(a) * bc.to_new(b)), a * b), 1e-11);
    EXPECT_LT(distance(bc.to_old(Element::unit(bc.algebra)), Element::unit(alg)), 1e-12);
    EXPECT_THROW(rebase(alg, DenseMatrix(6, 6)), ValidationError);
}

TEST(Blocks, RejectsEntriesOutsidePattern) {
    EXPECT_THROW(from_blocks(upper_triangular(2), {lit({{1, 0}, {1, 1}})}), ValidationError);
    EXPECT_THROW(from_blocks(diagonal(2), {lit({{1, 1}, {0, 1}})}), ValidationError);
    EXPECT_THROW(from_blocks(full_matrix(2), {lit({{1}})}), ValidationError);
}

TEST(Power, MatchesRepeatedProduct) {
    const Element j = m2(jordan_matrix({{0.0, 2}}));
    EXPECT_LT(power(j, 2).norm(), 1e-15);
    EXPECT_LT(distance(power(j, 0), Element::unit(j.algebra())), 1e-15);
}
