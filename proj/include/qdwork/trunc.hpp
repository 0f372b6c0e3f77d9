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

#ifndef QDWORK_TRUNC_HPP
#define QDWORK_TRUNC_HPP

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "qdwork/bigpoly.hpp"
#include "qdwork/error.hpp"
#include "qdwork/quiver.hpp"
#include "qdwork/superpot.hpp"

namespace qdwork {

/// A computed truncation T_s(z, q) with the data needed to reproduce it.
///
/// `poly` is normalized so that T_s(0, 1) = 1 and `sign` is the factor that
/// was applied to the raw coefficient. The convention in which the q = 1
/// value carries (-1)^{theta_s} relative to the classical truncation is
/// available through theta_convention(); both conventions satisfy the same
/// congruences because theta_{s+1} - theta_{s-1} is even.
struct TruncationRecord {
    QuiverParams params;
    unsigned s = 0;
    BiPoly poly;
    int sign = 1;
    int theta = 0;
    double seconds = 0.0;

    std::string cache_key() const { return params.key() + "_s" + std::to_string(s); }

    int theta_sign() const { return theta ? -sign : sign; }

    BiPoly theta_convention() const { return theta ? -poly : poly; }

    friend bool operator==(const TruncationRecord& a, const TruncationRecord& b) {
        return a.params == b.params && a.s == b.s && a.poly == b.poly && a.sign == b.sign && a.theta == b.theta &&
               a.seconds == b.seconds;
    }
};

namespace detail {

inline int unit_sign(const Integer& c) {
    if (c == 1) return 1;
    if (c == -1) return -1;
    throw Error(Errc::normalization_failed, "constant term at q = 1 is " + c.get_str() + ", not a unit");
}

}  // namespace detail

inline TruncationRecord truncation_q(const QuiverParams& qp, unsigned s, const ExtractOptions& opts = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    TruncationRecord rec;
    rec.params = qp;
    rec.s = s;
    rec.theta = theta_parity(qp, s);
    if (s == 0) {
        rec.poly = BiPoly::constant(1);
    } else {
        ExtractOptions o = opts;
        o.q_to_one = false;
        BiPoly raw = extract_raw_truncation(qp, s, o);
        Integer at_origin = 0;
        for (const auto& [e, c] : raw.terms())
            if (e.z == 0) at_origin += c;
        rec.sign = detail::unit_sign(at_origin);
        rec.poly = rec.sign > 0 ? std::move(raw) : -raw;
    }
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

/// Classical truncation T_s(z) from an already computed deformed record.
inline UPoly truncation_classical(const TruncationRecord& rec) { return eval_q_one(rec.poly); }

/// Classical truncation T_s(z) computed directly with q = 1 substituted in
/// every factor, normalized to constant term 1.
inline UPoly truncation_classical(const QuiverParams& qp, unsigned s, const ExtractOptions& opts = {}) {
    if (s == 0) return UPoly{1};
    ExtractOptions o = opts;
    o.q_to_one = true;
    UPoly t = eval_q_one(extract_raw_truncation(qp, s, o));
    const int sign = detail::unit_sign(t.coeff(0));
    return sign > 0 ? t : t * Integer(-1);
}

/// sum_{j=0}^{M} binom(M, j)^2 z^j with M = (p^s - 1)/2.
inline UPoly hypergeom_oracle(std::uint64_t p, unsigned s) {
    if (p < 3 || !is_prime(p)) throw Error(Errc::not_prime, "hypergeom_oracle needs an odd prime");
    const std::uint64_t big_m = (detail::checked_pow(p, s) - 1) / 2;
    std::vector<Integer> c;
    c.reserve(big_m + 1);
    for (std::uint64_t j = 0; j <= big_m; ++j) {
        const Integer b = binomial(big_m, j);
        c.push_back(b * b);
    }
    return UPoly(std::move(c));
}

/// Coefficients mod p of sum_{j<p} binom(-1/2, j)^2 z^j, computed from
/// binom(-1/2, j) = prod_{i=1}^{j} (1 - 2i) / (2i).
inline std::vector<std::uint64_t> dwork_series_truncation_mod_p(std::uint64_t p) {
    if (p < 3 || !is_prime(p)) throw Error(Errc::not_prime, "dwork_series_truncation_mod_p needs an odd prime");
    const Integer mod(static_cast<unsigned long>(p));
    std::vector<std::uint64_t> out;
    Integer num = 1, den = 1;
    for (std::uint64_t j = 0; j < p; ++j) {
        if (j > 0) {
            num = mod_floor(num * (1 - 2 * Integer(static_cast<unsigned long>(j))), mod);
            den = mod_floor(den * 2 * Integer(static_cast<unsigned long>(j)), mod);
        }
        Integer inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
        const Integer b = mod_floor(num * inv, mod);
        out.push_back(mod_floor(b * b, mod).get_ui());
    }
    return out;
}

}  // namespace qdwork

#endif  // QDWORK_TRUNC_HPP
