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

#include <cstdint>
#include <string>

#include "support.hpp"

using namespace qdwork;
using oracle::bipoly;

TEST(TruncationQ, NormalizedExamples) {
    const auto r3 = truncation_q(validate(3, 2, 1, 1, 2, 1), 1);
    EXPECT_EQ(r3.poly, bipoly({{0, 0, 1}, {1, 0, 1}}));
    EXPECT_EQ(r3.sign, -1);
    const auto r5 = truncation_q(validate(5, 2, 1, 1, 2, 1), 1);
    EXPECT_EQ(r5.poly, bipoly({{0, 1, 1}, {1, 0, 1}, {1, 1, 2}, {1, 2, 1}, {2, 1, 1}}));
    EXPECT_EQ(r5.sign, 1);
    const auto r0 = truncation_q(validate(7, 4, 2, 1, 3, 1), 0);
    EXPECT_EQ(r0.poly, BiPoly::constant(1));
    EXPECT_EQ(r0.cache_key(), "p7_n4_k2_w1-3_s0");
}

// Term count, fingerprint and coefficient sum frozen from an independent
// straight-line prototype of the coefficient extraction.
struct Frozen {
    unsigned p, n, k, r, m, s;
    std::size_t terms;
    std::uint64_t fp;
    long sum;
};

class FrozenTruncation : public ::testing::TestWithParam<Frozen> {};

TEST_P(FrozenTruncation, Matches) {
    const Frozen f = GetParam();
    const auto rec = truncation_q(validate(f.p, f.n, f.k, f.r, f.m, f.s), f.s);
    EXPECT_EQ(rec.poly.term_count(), f.terms);
    EXPECT_EQ(oracle::fingerprint(rec.poly), f.fp);
    EXPECT_EQ(oracle::coeff_sum(rec.poly), Integer(f.sum));
}

INSTANTIATE_TEST_SUITE_P(
    Prototype, FrozenTruncation,
    ::testing::Values(Frozen{3, 2, 1, 1, 2, 1, 2, 8, 2}, Frozen{3, 3, 1, 1, 2, 1, 2, 2305843009213693945ULL, 0},
                      Frozen{3, 4, 2, 1, 2, 1, 3, 71, 5}, Frozen{5, 3, 1, 1, 2, 1, 6, 2305843009213682515ULL, -6},
                      Frozen{5, 4, 2, 1, 2, 1, 17, 2561555238ULL, 158},
                      Frozen{3, 4, 2, 1, 2, 2, 141, 1436523164720047209ULL, 389590},
                      Frozen{3, 3, 1, 1, 2, 2, 35, 238276795390135986ULL, 90}, Frozen{7, 2, 1, 1, 3, 1, 5, 1558, 6},
                      Frozen{7, 4, 2, 1, 3, 1, 17, 2354410377ULL, 113},
                      Frozen{5, 4, 1, 1, 2, 2, 1157, 1221891384757762982ULL, 1640651321764L}),
    [](const auto& info) {
        const auto& f = info.param;
        return "p" + std::to_string(f.p) + "n" + std::to_string(f.n) + "k" + std::to_string(f.k) + "w" +
               std::to_string(f.r) + "_" + std::to_string(f.m) + "s" + std::to_string(f.s);
    });

TEST(TruncationQ, ConstantTermIsSingleQPower) {
    for (auto [p, n, k, r, m, s] : std::vector<std::tuple<unsigned, unsigned, unsigned, unsigned, unsigned, unsigned>>{
             {3, 2, 1, 1, 2, 2}, {5, 4, 2, 1, 2, 2}, {7, 4, 2, 1, 3, 1}, {5, 4, 2, 1, 4, 1}, {3, 5, 2, 1, 2, 2}}) {
        const auto rec = truncation_q(validate(p, n, k, r, m, s), s);
        int count = 0;
        for (const auto& [e, c] : rec.poly.terms())
            if (e.z == 0) {
                ++count;
                EXPECT_EQ(c, 1);
            }
        EXPECT_EQ(count, 1);
        EXPECT_LE(rec.poly.z_degree(), static_cast<long>(k * rec.params.ranges(s).arrow));
    }
}

TEST(TruncationClassical, Examples) {
    EXPECT_EQ(truncation_classical(validate(3, 2, 1, 1, 2, 1), 1), (UPoly{1, 1}));
    EXPECT_EQ(truncation_classical(validate(3, 2, 1, 1, 2, 2), 2), (UPoly{1, 16, 36, 16, 1}));
    EXPECT_EQ(truncation_classical(validate(5, 2, 1, 1, 2, 1), 1), (UPoly{1, 4, 1}));
    EXPECT_EQ(truncation_classical(validate(5, 2, 1, 1, 2, 1), 0), (UPoly{1}));
}

TEST(TruncationClassical, OracleEquivalence) {
    for (unsigned p : {3u, 5u, 7u})
        for (unsigned s : {1u, 2u}) {
            const auto qp = validate(p, 2, 1, 1, 2, s);
            EXPECT_EQ(truncation_classical(qp, s), hypergeom_oracle(p, s)) << p << " " << s;
        }
}

TEST(TruncationClassical, BothRoutesAgree) {
    // q = 1 extraction versus evaluation of the deformed record, with the
    // theta-convention sign carried by theta
    for (auto [p, n, k, r, m, s] : std::vector<std::tuple<unsigned, unsigned, unsigned, unsigned, unsigned, unsigned>>{
             {3, 2, 1, 1, 2, 2}, {5, 4, 2, 1, 2, 1}, {7, 4, 2, 1, 3, 1}, {5, 4, 2, 1, 4, 1}, {13, 4, 2, 1, 4, 1}}) {
        const auto qp = validate(p, n, k, r, m, s);
        const auto rec = truncation_q(qp, s);
        const UPoly direct = truncation_classical(qp, s);
        EXPECT_EQ(truncation_classical(rec), direct);
        const UPoly signed_t = eval_q_one(rec.theta_convention());
        EXPECT_EQ(rec.theta ? signed_t * Integer(-1) : signed_t, direct);
    }
}

TEST(TruncationClassical, ThetaOddCaseCarriesSign) {
    const auto qp = validate(5, 4, 2, 1, 4, 1);
    const auto rec = truncation_q(qp, 1);
    EXPECT_EQ(rec.theta, 1);
    EXPECT_EQ(rec.theta_sign(), -rec.sign);
    EXPECT_EQ(eval_q_one(rec.theta_convention()).coeff(0), -1);
}

TEST(HypergeomOracle, Examples) {
    EXPECT_EQ(hypergeom_oracle(3, 1), (UPoly{1, 1}));
    EXPECT_EQ(hypergeom_oracle(5, 1), (UPoly{1, 4, 1}));
    EXPECT_EQ(hypergeom_oracle(3, 2), (UPoly{1, 16, 36, 16, 1}));
    EXPECT_THROW(hypergeom_oracle(4, 1), Error);
}

TEST(DworkSeries, ModPExamples) {
    EXPECT_EQ(dwork_series_truncation_mod_p(3), (std::vector<std::uint64_t>{1, 1, 0}));
    EXPECT_EQ(dwork_series_truncation_mod_p(5), (std::vector<std::uint64_t>{1, 4, 1, 0, 0}));
    const auto s7 = dwork_series_truncation_mod_p(7);
    ASSERT_EQ(s7.size(), 7u);
    EXPECT_EQ(s7[4] + s7[5] + s7[6], 0u);
}

TEST(DworkSeries, MatchesClassicalModP) {
    for (unsigned p : {3u, 5u, 7u, 11u}) {
        const UPoly t = truncation_classical(validate(p, 2, 1, 1, 2, 1), 1);
        const auto series = dwork_series_truncation_mod_p(p);
        for (std::size_t j = 0; j < series.size(); ++j)
            EXPECT_EQ(mod_floor(t.coeff(j), p), Integer(static_cast<unsigned long>(series[j]))) << p << " z^" << j;
    }
}
