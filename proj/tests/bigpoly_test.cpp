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

#include <random>
#include <vector>

#include "support.hpp"

using namespace qdwork;
using oracle::bipoly;

namespace {

RingPtr xz() { return make_ring({"x", "z"}); }

MPoly from_terms(const RingPtr& r, std::initializer_list<std::pair<ExponentVec, long>> ts) {
    MPoly f(r);
    for (const auto& [e, c] : ts) f.add_term(e, c);
    return f;
}

}  // namespace

TEST(MulCapped, SquareTruncated) {
    auto r = make_ring({"x"});
    const MPoly a = from_terms(r, {{{0}, 1}, {{1}, 1}});
    const std::vector<std::uint32_t> cap{1};
    EXPECT_EQ(mul_capped(a, a, cap), from_terms(r, {{{0}, 1}, {{1}, 2}}));
    EXPECT_EQ(mul_capped(a, a), from_terms(r, {{{0}, 1}, {{1}, 2}, {{2}, 1}}));
}

TEST(MulCapped, FramingPair) {
    auto r = xz();
    const MPoly zx = from_terms(r, {{{0, 1}, 1}, {{1, 0}, -1}});
    const MPoly ox = from_terms(r, {{{0, 0}, 1}, {{1, 0}, -1}});
    const std::vector<std::uint32_t> cap{2, kUnbounded};
    EXPECT_EQ(mul_capped(zx, ox, cap), from_terms(r, {{{0, 1}, 1}, {{1, 0}, -1}, {{1, 1}, -1}, {{2, 0}, 1}}));
}

TEST(MulCapped, RingMismatchThrows) {
    const MPoly a = MPoly::constant(xz(), 1), b = MPoly::constant(make_ring({"y"}), 1);
    try {
        (void)(a * b);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ring_mismatch);
    }
}

TEST(MulCapped, CapsAgreeWithTruncatedFullProduct) {
    std::mt19937_64 rng(20261016);
    auto r = make_ring({"a", "b", "c"});
    std::uniform_int_distribution<std::uint32_t> de(0, 5);
    std::uniform_int_distribution<long> dc(-9, 9);
    for (int trial = 0; trial < 40; ++trial) {
        MPoly f(r), g(r);
        for (int i = 0; i < 12; ++i) f.add_term({de(rng), de(rng), de(rng)}, dc(rng));
        for (int i = 0; i < 12; ++i) g.add_term({de(rng), de(rng), de(rng)}, dc(rng));
        const std::vector<std::uint32_t> cap{de(rng), kUnbounded, de(rng)};
        MPoly expect(r);
        const MPoly full = f * g;
        for (const auto& [e, c] : full.terms())
            if (e[0] <= cap[0] && e[2] <= cap[2]) expect.add_term(e, c);
        EXPECT_EQ(mul_capped(f, g, cap), expect);
    }
}

TEST(MPoly, AddTermCancelsToZero) {
    auto r = xz();
    MPoly f = MPoly::variable(r, 0);
    f.add_term({1, 0}, -1);
    EXPECT_TRUE(f.is_zero());
    EXPECT_EQ(f.degree_in(0), -1);
}

TEST(MPoly, PermutedSwapsVariables) {
    auto r = xz();
    const MPoly f = MPoly::variable(r, 0, 2) - MPoly::variable(r, 1);
    const std::vector<std::size_t> swap{1, 0};
    EXPECT_EQ(f.permuted(swap), MPoly::variable(r, 1, 2) - MPoly::variable(r, 0));
}

TEST(QNumber, Values) {
    EXPECT_EQ(q_number(1), BiPoly::constant(1));
    EXPECT_EQ(q_number(3), bipoly({{0, 0, 1}, {0, 1, 1}, {0, 2, 1}}));
    const BiPoly n9 = q_number(9);
    EXPECT_EQ(n9.term_count(), 9u);
    EXPECT_EQ(n9.q_degree(), 8);
    EXPECT_THROW(q_number(0), Error);
}

TEST(QPowerFactorization, SmallCases) {
    const auto f31 = q_power_factorization(3, 1);
    ASSERT_EQ(f31.size(), 1u);
    EXPECT_EQ(f31[0], q_number(3));
    const auto f32 = q_power_factorization(3, 2);
    ASSERT_EQ(f32.size(), 2u);
    EXPECT_EQ(f32[1], bipoly({{0, 0, 1}, {0, 3, 1}, {0, 6, 1}}));
    EXPECT_EQ(q_power_factorization(5, 1)[0], q_number(5));
}

TEST(QPowerFactorization, ProductIsQNumber) {
    for (std::uint64_t p : {3, 5, 7})
        for (unsigned s = 1; s <= 3; ++s) {
            BiPoly prod = BiPoly::constant(1);
            for (const auto& f : q_power_factorization(p, s)) prod = prod * f;
            EXPECT_EQ(prod, q_number(detail::checked_pow(p, s))) << p << "^" << s;
        }
}

TEST(SubstitutePowers, Examples) {
    EXPECT_EQ(substitute_powers(bipoly({{0, 0, 1}, {1, 1, 1}}), 3, 3), bipoly({{0, 0, 1}, {3, 3, 1}}));
    EXPECT_EQ(substitute_powers(bipoly({{0, 1, 1}, {2, 0, 1}}), 2, 1), bipoly({{0, 1, 1}, {4, 0, 1}}));
    EXPECT_EQ(substitute_powers(q_number(3), 1, 3), cyclotomic_prime_power(3, 3));
}

TEST(SubstitutePowers, IsRingMorphism) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 30; ++t) {
        const BiPoly f = oracle::random_bipoly(rng, 4, 6, 8), g = oracle::random_bipoly(rng, 4, 6, 8);
        EXPECT_EQ(substitute_powers(f * g, 3, 5), substitute_powers(f, 3, 5) * substitute_powers(g, 3, 5));
        EXPECT_EQ(substitute_powers(f + g, 2, 7), substitute_powers(f, 2, 7) + substitute_powers(g, 2, 7));
    }
}

TEST(DivremInQ, Examples) {
    const BiPoly g = q_number(3);
    auto d1 = divrem_in_q(bipoly({{0, 3, 1}, {0, 0, -1}}), g);
    EXPECT_EQ(d1.quotient, bipoly({{0, 1, 1}, {0, 0, -1}}));
    EXPECT_TRUE(d1.remainder.is_zero());
    auto d2 = divrem_in_q(bipoly({{0, 1, 1}}), g);
    EXPECT_TRUE(d2.quotient.is_zero());
    EXPECT_EQ(d2.remainder, bipoly({{0, 1, 1}}));
    auto d3 = divrem_in_q(bipoly({{1, 0, 1}, {1, 1, 1}, {1, 2, 1}}), g);
    EXPECT_EQ(d3.quotient, bipoly({{1, 0, 1}}));
    EXPECT_TRUE(d3.remainder.is_zero());
}

TEST(DivremInQ, RejectsNonMonic) {
    try {
        (void)divrem_in_q(q_number(4), bipoly({{0, 2, 2}, {0, 0, 1}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::not_monic);
    }
    EXPECT_THROW((void)divrem_in_q(q_number(4), bipoly({{1, 2, 1}, {0, 0, 1}})), Error);
}

TEST(DivremInQ, RandomRoundTrip) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        BiPoly g = oracle::random_bipoly(rng, 3, 4, 6, 5);
        BiPoly lead;  // force a monic leading term q^5
        for (const auto& [e, c] : g.terms()) lead.add_term(e.z, e.q, c);
        lead.add_term(0, 5, 1);
        const BiPoly f = oracle::random_bipoly(rng, 5, 14, 20);
        const auto [quo, rem] = divrem_in_q(f, lead);
        EXPECT_EQ(quo * lead + rem, f);
        EXPECT_LT(rem.q_degree(), 5);
    }
}

TEST(ReduceModCyclotomic, Examples) {
    EXPECT_EQ(reduce_mod_cyclotomic(bipoly({{0, 3, 1}}), 3, 1), BiPoly::constant(1));
    EXPECT_TRUE(reduce_mod_cyclotomic(q_number(3), 3, 1).is_zero());
    const BiPoly f = bipoly({{0, 4, 1}, {1, 0, 1}});
    EXPECT_EQ(reduce_mod_cyclotomic(f, 3, 2), f);
    EXPECT_EQ(divrem_in_q(f, cyclotomic_prime_power(3, 3)).remainder, f);
}

TEST(ReduceModCyclotomic, AgreesWithDivision) {
    std::mt19937_64 rng(3);
    for (std::uint64_t p : {3, 5, 7})
        for (unsigned l = 1; l <= 2; ++l)
            for (int t = 0; t < 15; ++t) {
                const BiPoly f = oracle::random_bipoly(rng, 3, 120, 25);
                const BiPoly phi = cyclotomic_prime_power(p, detail::checked_pow(p, l - 1));
                EXPECT_EQ(reduce_mod_cyclotomic(f, p, l), divrem_in_q(f, phi).remainder) << p << " " << l;
            }
}

TEST(ReduceModCyclotomic, MPolyMatchesBiPoly) {
    auto r = make_ring({"z", "q"});
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
        const BiPoly f = oracle::random_bipoly(rng, 4, 40, 15);
        MPoly m(r);
        for (const auto& [e, c] : f.terms()) m.add_term({e.z, e.q}, c);
        const BiPoly red = reduce_mod_cyclotomic(f, 3, 2);
        MPoly expect(r);
        for (const auto& [e, c] : red.terms()) expect.add_term({e.z, e.q}, c);
        EXPECT_EQ(reduce_mod_cyclotomic(m, 1, 3, 2), expect);
    }
}

TEST(EvalQOne, Examples) {
    const BiPoly t1 = bipoly({{0, 1, 1}, {1, 0, 1}, {1, 1, 2}, {1, 2, 1}, {2, 1, 1}});
    EXPECT_EQ(eval_q_one(t1), (UPoly{1, 4, 1}));
    EXPECT_EQ(eval_q_one(q_number(9)), (UPoly{9}));
    EXPECT_EQ(eval_q_one(bipoly({{0, 0, 1}, {1, 0, 1}})), (UPoly{1, 1}));
}

TEST(EvalQOne, IsRingMorphism) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 30; ++t) {
        const BiPoly f = oracle::random_bipoly(rng, 5, 9, 10), g = oracle::random_bipoly(rng, 5, 9, 10);
        EXPECT_EQ(eval_q_one(f * g), eval_q_one(f) * eval_q_one(g));
        EXPECT_EQ(eval_q_one(f - g), eval_q_one(f) - eval_q_one(g));
    }
}

TEST(UPoly, ComposePowerAndEvaluate) {
    const UPoly f{1, 2, 3};
    EXPECT_EQ(f.compose_power(3), (UPoly{1, 0, 0, 2, 0, 0, 3}));
    EXPECT_EQ(f.evaluate_mod(2, 100), Integer(17));
    EXPECT_EQ(f.evaluate_mod(-1, 7), Integer(2));
    EXPECT_TRUE((UPoly{0, 0}).is_zero());
}

TEST(Json, BiPolyRoundTripAndRejects) {
    std::mt19937_64 rng(17);
    const BiPoly f = oracle::random_bipoly(rng, 6, 6, 20, 1000000);
    EXPECT_EQ(bipoly_from_json(to_json(f)), f);
    EXPECT_EQ(to_json(bipoly({{1, 0, 1}, {0, 0, 1}})).dump(), R"([[0,0,"1"],[1,0,"1"]])");
    EXPECT_THROW(bipoly_from_json(nlohmann::json::parse(R"([[1,0,"1"],[0,0,"1"]])")), Error);
    EXPECT_THROW(bipoly_from_json(nlohmann::json::parse(R"([[0,0,"0"]])")), Error);
    EXPECT_THROW(bipoly_from_json(nlohmann::json::parse(R"([[0,0,"x1"]])")), Error);
}

TEST(Integer, Helpers) {
    EXPECT_EQ(mod_floor(-7, 3), Integer(2));
    EXPECT_EQ(binomial(4, 2), Integer(6));
    EXPECT_EQ(ipow(Integer(3), 40), Integer("12157665459056928801"));
    EXPECT_THROW(detail::checked_pow(3, 41), Error);
}
