// Copyright 2026 The qdwork Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "qdwork/quiver.hpp"

using namespace qdwork;

namespace {

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::internal;  // sentinel: nothing thrown
}

}  // namespace

TEST(DimensionVector, Examples) {
    EXPECT_EQ(dimension_vector(2, 1), (std::vector<std::uint32_t>{1}));
    EXPECT_EQ(dimension_vector(5, 2), (std::vector<std::uint32_t>{1, 2, 2, 1}));
    EXPECT_EQ(dimension_vector(6, 3), (std::vector<std::uint32_t>{1, 2, 3, 2, 1}));
    EXPECT_EQ(dimension_vector(4, 2), (std::vector<std::uint32_t>{1, 2, 1}));
}

TEST(Validate, Accepts) {
    const auto a = validate(3, 2, 1, 1, 2, 3);
    EXPECT_EQ(a.l, 1u);
    const auto b = validate(7, 4, 2, 1, 3, 2);
    EXPECT_EQ(b.l, 2u);
    EXPECT_EQ(b.w, (std::vector<std::uint32_t>{0, 2, 0}));
    EXPECT_EQ(validate(5, 3, 1, 1, 2, 1).w, (std::vector<std::uint32_t>{1, 1}));
}

TEST(Validate, RejectsEachHypothesis) {
    EXPECT_EQ(code_of([] { validate(9, 2, 1, 1, 2, 1); }), Errc::not_prime);
    EXPECT_EQ(code_of([] { validate(2, 2, 1, 1, 2, 1); }), Errc::not_prime);
    EXPECT_EQ(code_of([] { validate(5, 2, 1, 1, 3, 1); }), Errc::modulus_mismatch);
    EXPECT_EQ(code_of([] { validate(5, 3, 2, 1, 2, 1); }), Errc::rank_too_small);
    EXPECT_EQ(code_of([] { validate(5, 2, 0, 1, 2, 1); }), Errc::rank_too_small);
    EXPECT_EQ(code_of([] { validate(5, 2, 1, 2, 4, 1); }), Errc::omega_not_reduced);
    EXPECT_EQ(code_of([] { validate(7, 2, 1, 2, 3, 1); }), Errc::omega_out_of_range);
    EXPECT_EQ(code_of([] { validate(7, 2, 1, 0, 3, 1); }), Errc::omega_out_of_range);
}

TEST(Validate, ExitStatusForInvalidInput) {
    EXPECT_EQ(exit_status(Errc::rank_too_small), 2);
    EXPECT_EQ(exit_status(Errc::budget_exceeded), 3);
    EXPECT_EQ(exit_status(Errc::io_error), 4);
}

TEST(ParseOmega, Forms) {
    EXPECT_EQ(parse_omega("1/2"), (Omega{1, 2}));
    EXPECT_EQ(parse_omega("1/3").str(), "1/3");
    EXPECT_THROW(parse_omega("0.5"), Error);
    EXPECT_THROW(parse_omega("1/"), Error);
    EXPECT_THROW(parse_omega("1/0"), Error);
    EXPECT_THROW(parse_omega("a/2"), Error);
}

TEST(TargetMonomial, Examples) {
    const auto t1 = target_monomial(validate(3, 2, 1, 1, 2, 1), 1);
    EXPECT_EQ(t1[0], 2u);
    EXPECT_EQ(t1.size(), 3u);
    const auto t2 = target_monomial(validate(3, 4, 2, 1, 2, 1), 1);
    EXPECT_EQ((ExponentVec{t2.begin(), t2.begin() + 4}), (ExponentVec{2, 2, 5, 2}));
    EXPECT_EQ(t2[4], kUnbounded);
    EXPECT_EQ(target_monomial(validate(5, 2, 1, 1, 2, 2), 2)[0], 24u);
}

TEST(DegreeBounds, Examples) {
    EXPECT_EQ(degree_bounds(validate(3, 2, 1, 1, 2, 1), 1), (std::vector<std::uint64_t>{5}));
    const auto b = degree_bounds(validate(3, 4, 2, 1, 2, 1), 1);
    EXPECT_EQ(b, (std::vector<std::uint64_t>{5, 8, 8, 5}));
}

TEST(ThetaParity, Examples) {
    for (unsigned s = 0; s <= 3; ++s) EXPECT_EQ(theta_parity(validate(5, 2, 1, 1, 2, 3), s), 0);
    EXPECT_EQ(theta_parity(validate(3, 4, 2, 1, 2, 2), 1), 0);
    EXPECT_EQ(theta_parity(validate(5, 4, 2, 1, 4, 1), 1), 1);
    EXPECT_EQ(theta_parity(validate(5, 4, 2, 1, 4, 1), 0), 0);
}

TEST(ExponentRanges, Integral) {
    const auto qp = validate(7, 4, 2, 1, 3, 2);
    const auto r = qp.ranges(1);
    EXPECT_EQ(r.prefactor, 4u);
    EXPECT_EQ(r.intra, 1u);
    EXPECT_EQ(r.arrow, 2u);
}

TEST(VariableSystem, Layout) {
    const auto qp = validate(3, 4, 2, 1, 2, 1);
    VariableSystem vars(qp);
    EXPECT_EQ(vars.x_count(), 4u);
    EXPECT_EQ(vars.x(2, 2), 2u);
    EXPECT_EQ(vars.z(), 4u);
    EXPECT_EQ(vars.q(), 5u);
    EXPECT_EQ(vars.ring()->name(2), "x2_2");
}

TEST(ParamsJson, RoundTrip) {
    const auto qp = validate(7, 4, 2, 1, 3, 2);
    EXPECT_EQ(to_json(qp).dump(), R"({"p":7,"n":4,"k":2,"omega":"1/3"})");
    EXPECT_EQ(params_from_json(nlohmann::json::parse(to_json(qp).dump()), 2), qp);
    EXPECT_EQ(qp.key(), "p7_n4_k2_w1-3");
}
