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

#include <specalg/serialize.hpp>

#include "oracles.hpp"

using namespace specalg;
using io::Json;
using oracle::lit;

TEST(ScalarJson, ComplexRoundTrip) {
    const Complex z(1.25, -3.5);
    EXPECT_EQ(io::complex_from_json(io::to_json(z)), z);
    EXPECT_EQ(io::complex_from_json(Json(2.0)), Complex(2.0));
    EXPECT_THROW(io::complex_from_json(Json("x")), ValidationError);
    EXPECT_THROW(io::complex_from_json(Json::array({1, 2, 3})), ValidationError);
}

TEST(ScalarJson, MatrixRoundTrip) {
    const DenseMatrix m = lit({{1, Complex(0, 2)}, {-3, 4.5}});
    const DenseMatrix back = io::matrix_from_json(io::to_json(m));
    EXPECT_EQ((back - m).frobenius(), 0.0);
    EXPECT_THROW(io::matrix_from_json(Json::parse("[[1,2],[3]]")), ValidationError);
}

TEST(AlgebraJson, BuiltinModels) {
    const Json j = Json::parse(R"({"builtin": {"kind": "direct_sum", "parts": [
        {"kind": "full_matrix", "n": 2}, {"kind": "upper_triangular", "n": 3}]}})");
    EXPECT_EQ(io::algebra_from_json(j)->dim(), 10u);
    EXPECT_THROW(io::algebra_from_json(Json::parse(R"({"builtin": {"kind": "full_matrix", "n": 0}})")),
                 ValidationError);
    EXPECT_THROW(io::algebra_from_json(Json::parse(R"({"builtin": {"kind": "octonions", "n": 2}})")),
                 ValidationError);
}

TEST(AlgebraJson, ExplicitRoundTripPreservesStructure) {
    for (const AlgebraPtr& a : {upper_triangular(3), direct_sum(full_matrix(2), diagonal(2))}) {
        const AlgebraPtr b = io::algebra_from_json(io::to_json(*a));
        ASSERT_EQ(b->dim(), a->dim());
        EXPECT_EQ(b->label(), a->label());
        for (std::size_t i = 0; i < a->dim(); ++i)
            for (std::size_t j = 0; j < a->dim(); ++j)
                for (std::size_t k = 0; k < a->dim(); ++k) EXPECT_EQ(b->constant(i, j, k), a->constant(i, j, k));
        EXPECT_EQ(b->metadata().basis_labels, a->metadata().basis_labels);
    }
}

TEST(AlgebraJson, ExplicitNonAssociativeRejected) {
    const Json j = Json::parse(R"({"dim": 2, "unit": [1, 0],
        "structure": [[[1, 0], [0, 1]], [[1, 0], [0, 0]]]})");
    EXPECT_THROW(io::algebra_from_json(j), ValidationError);
    EXPECT_THROW(io::algebra_from_json(Json::parse(R"({"dim": 2, "unit": [1, 0]})")), ValidationError);
}

TEST(ElementJson, CoeffsAndBlocks) {
    auto alg = direct_sum(full_matrix(2), full_matrix(1));
    const Element a = io::element_from_json(alg, Json::parse(R"({"blocks": [[[1, 2], [3, 4]], [[[0, 5]]]]})"));
    EXPECT_EQ(a[1], Complex(2.0));
    EXPECT_EQ(a[4], Complex(0.0, 5.0));
    const Element b = io::element_from_json(alg, io::to_json(a));
    EXPECT_EQ(distance(a, b), 0.0);
    EXPECT_THROW(io::element_from_json(alg, Json::parse(R"({"coeffs": [1, 2]})")), ValidationError);
    EXPECT_THROW(io::element_from_json(alg, Json::parse(R"({"other": 1})")), ValidationError);
}

TEST(IdealJson, BuiltinAndExplicit) {
    auto ut = upper_triangular(3);
    EXPECT_EQ(io::ideal_from_json(ut, Json::parse(R"({"builtin": "radical"})")).dim(), 3u);
    auto bp = direct_sum(full_matrix(2), full_matrix(2));
    EXPECT_EQ(io::ideal_from_json(bp, Json::parse(R"({"builtin": "summand"})")).dim(), 4u);
    EXPECT_EQ(io::ideal_from_json(bp, Json::parse(R"({"builtin": "summand", "index": 0})")).dim(), 4u);
    const IdealBasis r = io::ideal_from_json(ut, Json::parse(R"({"builtin": "radical"})"));
    EXPECT_EQ(io::ideal_from_json(ut, io::to_json(r)).dim(), 3u);
    auto m2 = full_matrix(2);
    EXPECT_THROW(io::ideal_from_json(m2, Json::parse(R"({"basis": [{"coeffs": [1, 0, 0, 0]}]})")),
                 NotClosedUnderMultiplication);
}

TEST(HomomorphismJson, RoundTrip) {
    auto ut = upper_triangular(3);
    const QuotientResult q = quotient(ut, strictly_upper_ideal(ut));
    const Homomorphism t = io::homomorphism_from_json(io::to_json(q.projection));
    EXPECT_TRUE(t.surjective);
    EXPECT_LT((t.matrix - q.projection.matrix).frobenius(), 1e-15);
    const Element a(t.source, {1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
    EXPECT_LT(distance(t(a), Element(t.target, {1.0, 2.0, 3.0})), 1e-14);
}

TEST(ReportJson, CertificateShape) {
    auto alg = direct_sum(full_matrix(3), full_matrix(2));
    const QuotientResult q = quotient(alg, summand_ideal(alg, 1));
    const Element a = from_blocks(alg, {jordan_matrix({{0.0, 2}, {5.0, 1}}), lit({{1, 2}, {0, -1}})});
    const Json j = io::to_json(extract_certificate(q.projection, a, 0.0));
    EXPECT_EQ(j["verdict"]["kind"], "pole");
    EXPECT_EQ(j["verdict"]["order"], 2);
    EXPECT_EQ(j["corner_class"]["kind"], "nilpotent");
    EXPECT_EQ(j["corner_class"]["k"], 2);
    EXPECT_FALSE(j["best_effort"].get<bool>());
    EXPECT_TRUE(j["residuals"].contains("q_match"));
}

TEST(ReportJson, DrazinAndSpectrumShape) {
    auto m3 = full_matrix(3);
    const Element a = from_blocks(m3, {jordan_matrix({{0.0, 2}, {2.0, 1}})});
    const Json d = io::to_json(drazin(a));
    EXPECT_EQ(d["kind"], "drazin");
    EXPECT_EQ(d["index"], 2);
    EXPECT_EQ(d["residuals"].size(), 3u);
    const Json s = io::to_json(spectrum(a));
    EXPECT_EQ(s["points"].size(), 2u);
    const Json l = io::to_json(laurent(a, 0.0));
    EXPECT_EQ(l["pole_order"], 2);
    EXPECT_EQ(l["principal_part"].size(), 2u);
}

TEST(ReportJson, ErrorObject) {
    const Json e = io::error_json(NotIsolated("lambda is not in sigma(T(a))"));
    EXPECT_EQ(e["error"], "NotIsolated");
    EXPECT_EQ(e["detail"], "lambda is not in sigma(T(a))");
}

TEST(ReportJson, DumpIsDeterministic) {
    auto ut = upper_triangular(4);
    const QuotientResult q = quotient(ut, strictly_upper_ideal(ut));
    const Element a(ut, {0.0, 0.0, 1.0, 2.0, 1.0, 0.5, 0.0, -2.0, 0.0, 1.0});
    const std::string first = io::to_json(extract_certificate(q.projection, a, 0.0)).dump(2);
    const std::string second = io::to_json(extract_certificate(q.projection, a, 0.0)).dump(2);
    EXPECT_EQ(first, second);
}
