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

// Test-only oracles. Nothing here calls into the extraction engine; the
// factor lists are rebuilt from the product formula with plain containers.

#ifndef QDWORK_TESTS_SUPPORT_HPP
#define QDWORK_TESTS_SUPPORT_HPP

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "qdwork/qdwork.hpp"

namespace oracle {

using qdwork::Integer;

// Exponents over (x..., z, q) as a plain vector.
struct Term {
    std::vector<long> e;
    long c;
};
using Factor = std::vector<Term>;

struct Problem {
    std::vector<Factor> factors;
    std::vector<long> target;  // x part only
    std::size_t nx = 0;
};

/// Delta * prefactor * intra * arrows * framings, straight from the formula.
/// `q_one` drops every q exponent.
inline Problem build(unsigned p, unsigned n, unsigned k, unsigned r, unsigned m, unsigned s, bool q_one = false) {
    std::vector<unsigned> v;
    for (unsigned i = 1; i < n; ++i) v.push_back(std::min({i, k, n - i}));
    long ps = 1;
    for (unsigned i = 0; i < s; ++i) ps *= p;
    const long big = ps - 1;
    const long pre = big * (m - r) / m, intra = big * (m - 2 * r) / (2 * m), arrow = big * r / m;
    std::map<std::pair<unsigned, unsigned>, std::size_t> idx;
    std::size_t nx = 0;
    for (unsigned i = 1; i < n; ++i)
        for (unsigned j = 1; j <= v[i - 1]; ++j) idx[{i, j}] = nx++;
    const std::size_t Z = nx, Q = nx + 1, N = nx + 2;
    auto mono = [&](std::initializer_list<std::pair<std::size_t, long>> parts) {
        std::vector<long> e(N, 0);
        for (auto [a, b] : parts) e[a] += q_one && a == Q ? 0 : b;
        return e;
    };
    Problem pr;
    pr.nx = nx;
    for (unsigned mm = 1; mm < n; ++mm)
        for (unsigned i = 1; i <= v[mm - 1]; ++i)
            for (unsigned j = i + 1; j <= v[mm - 1]; ++j)
                pr.factors.push_back({{mono({{idx[{mm, j}], 1}}), 1}, {mono({{idx[{mm, i}], 1}}), -1}});
    std::vector<long> pe(N, 0);
    for (std::size_t t = 0; t < nx; ++t) pe[t] = pre;
    pr.factors.push_back({{pe, 1}});
    for (unsigned mm = 1; mm < n; ++mm)
        for (unsigned i = 1; i <= v[mm - 1]; ++i)
            for (unsigned j = 1; j <= v[mm - 1]; ++j)
                if (i != j)
                    for (long rr = 0; rr < intra; ++rr)
                        pr.factors.push_back(
                            {{mono({{idx[{mm, i}], 1}}), 1}, {mono({{idx[{mm, j}], 1}, {Q, rr}}), -1}});
    for (unsigned i = 1; i + 1 < n; ++i)
        for (unsigned a = 1; a <= v[i - 1]; ++a)
            for (unsigned b = 1; b <= v[i]; ++b)
                for (long rr = 0; rr < arrow; ++rr)
                    pr.factors.push_back(
                        {{mono({{idx[{i, a}], 1}}), 1}, {mono({{idx[{i + 1, b}], 1}, {Q, rr}}), -1}});
    for (unsigned i = 1; i <= k; ++i)
        for (long rr = 0; rr < arrow; ++rr)
            pr.factors.push_back({{mono({}), 1}, {mono({{idx[{n - k, i}], 1}, {Q, rr}}), -1}});
    for (unsigned i = 1; i <= k; ++i)
        for (long rr = 0; rr < arrow; ++rr)
            pr.factors.push_back({{mono({{Z, 1}}), 1}, {mono({{idx[{k, i}], 1}, {Q, rr}}), -1}});
    for (unsigned i = 1; i < n; ++i)
        for (unsigned j = 1; j <= v[i - 1]; ++j) pr.target.push_back(static_cast<long>(j) * ps - 1);
    return pr;
}

/// Sum over every choice of one term per factor whose x-part hits the target.
inline qdwork::BiPoly brute_force(const Problem& pr) {
    qdwork::BiPoly out;
    const std::size_t N = pr.nx + 2;
    std::vector<long> acc(N, 0);
    // remaining maximum x-degree, for pruning only
    std::vector<std::vector<long>> tail(pr.factors.size() + 1, std::vector<long>(pr.nx, 0));
    for (std::size_t f = pr.factors.size(); f-- > 0;)
        for (std::size_t t = 0; t < pr.nx; ++t) {
            long mx = 0;
            for (const auto& term : pr.factors[f]) mx = std::max(mx, term.e[t]);
            tail[f][t] = tail[f + 1][t] + mx;
        }
    auto rec = [&](auto&& self, std::size_t f, long c) -> void {
        for (std::size_t t = 0; t < pr.nx; ++t)
            if (acc[t] > pr.target[t] || acc[t] + tail[f][t] < pr.target[t]) return;
        if (f == pr.factors.size()) {
            out.add_term(static_cast<std::uint32_t>(acc[pr.nx]), static_cast<std::uint32_t>(acc[pr.nx + 1]), c);
            return;
        }
        for (const auto& term : pr.factors[f]) {
            for (std::size_t t = 0; t < N; ++t) acc[t] += term.e[t];
            self(self, f + 1, c * term.c);
            for (std::size_t t = 0; t < N; ++t) acc[t] -= term.e[t];
        }
    };
    rec(rec, 0, 1);
    return out;
}

/// Fingerprint sum c * 7^z * 11^q mod 2^61 - 1, matching the frozen values.
inline std::uint64_t fingerprint(const qdwork::BiPoly& f) {
    const Integer M = (Integer(1) << 61) - 1;
    Integer acc = 0;
    for (const auto& [e, c] : f.terms()) {
        Integer a, b;
        mpz_powm_ui(a.get_mpz_t(), Integer(7).get_mpz_t(), e.z, M.get_mpz_t());
        mpz_powm_ui(b.get_mpz_t(), Integer(11).get_mpz_t(), e.q, M.get_mpz_t());
        acc += c * a * b;
    }
    return qdwork::mod_floor(acc, M).get_ui();
}

inline Integer coeff_sum(const qdwork::BiPoly& f) {
    Integer s = 0;
    for (const auto& [e, c] : f.terms()) s += c;
    return s;
}

inline qdwork::BiPoly random_bipoly(std::mt19937_64& rng, unsigned zmax, unsigned qmax, unsigned terms, long cmax = 50) {
    std::uniform_int_distribution<unsigned> dz(0, zmax), dq(0, qmax);
    std::uniform_int_distribution<long> dc(-cmax, cmax);
    qdwork::BiPoly f;
    for (unsigned i = 0; i < terms; ++i) f.add_term(dz(rng), dq(rng), dc(rng));
    return f;
}

inline qdwork::BiPoly bipoly(std::initializer_list<std::tuple<unsigned, unsigned, long>> terms) {
    qdwork::BiPoly f;
    for (auto [z, q, c] : terms) f.add_term(z, q, c);
    return f;
}

}  // namespace oracle

#endif  // QDWORK_TESTS_SUPPORT_HPP
