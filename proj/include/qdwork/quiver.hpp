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

// Parameters of the A_{n-1} quiver with one-dimensional framings at the
// vertices k and n-k, and the index bookkeeping derived from them.
//
// The weight omega = r/m. Its denominator is called m throughout because q
// is reserved for the deformation parameter.

#ifndef QDWORK_QUIVER_HPP
#define QDWORK_QUIVER_HPP

#include <charconv>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdwork/bigpoly.hpp"
#include "qdwork/error.hpp"

namespace qdwork {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

struct Omega {
    std::uint32_t r = 1;
    std::uint32_t m = 2;

    std::string str() const { return std::to_string(r) + "/" + std::to_string(m); }
    friend bool operator==(const Omega&, const Omega&) = default;
};

/// Parses "r/m" with positive integers r and m.
inline Omega parse_omega(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) throw Error(Errc::invalid_argument, "omega must be written r/m");
    Omega w{};
    auto parse = [&](std::string_view part, std::uint32_t& out) {
        const auto res = std::from_chars(part.data(), part.data() + part.size(), out);
        if (res.ec != std::errc{} || res.ptr != part.data() + part.size() || part.empty())
            throw Error(Errc::invalid_argument, "omega must be written r/m, got " + std::string(text));
    };
    parse(text.substr(0, slash), w.r);
    parse(text.substr(slash + 1), w.m);
    if (w.m == 0) throw Error(Errc::invalid_argument, "omega has zero denominator");
    return w;
}

/// (v_1, ..., v_{n-1}) with v_i = min(i, k, n - i).
inline std::vector<std::uint32_t> dimension_vector(std::uint32_t n, std::uint32_t k) {
    if (k < 1 || n < 2 * k) throw Error(Errc::rank_too_small, "need n >= 2k >= 2");
    std::vector<std::uint32_t> v;
    v.reserve(n - 1);
    for (std::uint32_t i = 1; i < n; ++i) {
        if (i < k)
            v.push_back(i);
        else if (i <= n - k)
            v.push_back(k);
        else
            v.push_back(n - i);
    }
    return v;
}

/// The three exponent ranges appearing in the deformed superpotential at
/// level s: the x prefactor, the same-vertex pair range and the
/// arrow/framing range.
struct ExponentRanges {
    std::uint64_t prefactor = 0;  // (p^s - 1)(1 - omega)
    std::uint64_t intra = 0;      // (p^s - 1)(1 - 2 omega) / 2
    std::uint64_t arrow = 0;      // (p^s - 1) omega
};

struct QuiverParams {
    std::uint32_t p = 3;
    std::uint32_t n = 2;
    std::uint32_t k = 1;
    Omega omega{};
    std::uint32_t l = 1;                  // p = l m + 1
    std::vector<std::uint32_t> v;         // dimension vector, v[i-1] = v_i
    std::vector<std::uint32_t> w;         // framing dimensions
    unsigned s_max = 0;                   // integrality checked through this level

    std::uint64_t p_pow(unsigned s) const { return detail::checked_pow(p, s); }

    std::size_t x_count() const { return std::accumulate(v.begin(), v.end(), std::size_t{0}); }

    ExponentRanges ranges(unsigned s) const {
        const std::uint64_t e = p_pow(s) - 1;
        const std::uint64_t r = omega.r, m = omega.m;
        return {e * (m - r) / m, e * (m - 2 * r) / (2 * m), e * r / m};
    }

    /// Identifies a parameter set independent of s_max.
    std::string key() const {
        return "p" + std::to_string(p) + "_n" + std::to_string(n) + "_k" + std::to_string(k) + "_w" +
               std::to_string(omega.r) + "-" + std::to_string(omega.m);
    }

    friend bool operator==(const QuiverParams& a, const QuiverParams& b) {
        return a.p == b.p && a.n == b.n && a.k == b.k && a.omega == b.omega;
    }
};

/// Checks every hypothesis on (p, n, k, omega) and the integrality of the
/// three exponent ranges for s = 0..s_max.
inline QuiverParams validate(std::uint32_t p, std::uint32_t n, std::uint32_t k, std::uint32_t r, std::uint32_t m,
                             unsigned s_max) {
    if (p < 3 || !is_prime(p)) throw Error(Errc::not_prime, "p = " + std::to_string(p) + " is not an odd prime");
    if (m == 0 || r == 0) throw Error(Errc::omega_out_of_range, "omega must be positive");
    if (std::gcd(r, m) != 1) throw Error(Errc::omega_not_reduced, "omega = " + std::to_string(r) + "/" + std::to_string(m) + " is not reduced");
    if (std::uint64_t{2} * r > m) throw Error(Errc::omega_out_of_range, "omega must be at most 1/2");
    if (p % m != 1 % m) throw Error(Errc::modulus_mismatch, "p = " + std::to_string(p) + " is not 1 mod " + std::to_string(m));
    if (k < 1 || n < 2 * k) throw Error(Errc::rank_too_small, "need n >= 2k >= 2");

    QuiverParams qp;
    qp.p = p;
    qp.n = n;
    qp.k = k;
    qp.omega = {r, m};
    qp.l = (p - 1) / m;
    qp.v = dimension_vector(n, k);
    qp.w.assign(n - 1, 0);
    qp.w[k - 1] += 1;
    qp.w[n - k - 1] += 1;
    qp.s_max = s_max;

    for (unsigned s = 0; s <= s_max; ++s) {
        const Integer e = ipow(Integer(p), s) - 1;
        const Integer mm(m), rr(r);
        if (mod_floor(e * (mm - rr), mm) != 0 || mod_floor(e * (mm - 2 * rr), 2 * mm) != 0 || mod_floor(e * rr, mm) != 0)
            throw Error(Errc::nonintegral_range, "exponent range not integral at s = " + std::to_string(s));
        (void)qp.p_pow(s);  // throws if p^s leaves 64 bits
    }
    return qp;
}

inline QuiverParams validate(std::uint32_t p, std::uint32_t n, std::uint32_t k, Omega omega, unsigned s_max) {
    return validate(p, n, k, omega.r, omega.m, s_max);
}

/// The ordered variable list x_{i,j} (row-major), z, q.
class VariableSystem {
   public:
    explicit VariableSystem(const QuiverParams& qp) {
        std::vector<std::string> names;
        for (std::uint32_t i = 1; i < qp.n; ++i) {
            row_start_.push_back(names.size());
            for (std::uint32_t j = 1; j <= qp.v[i - 1]; ++j)
                names.push_back("x" + std::to_string(i) + "_" + std::to_string(j));
        }
        x_count_ = names.size();
        names.emplace_back("z");
        names.emplace_back("q");
        ring_ = make_ring(std::move(names));
    }

    const RingPtr& ring() const noexcept { return ring_; }
    std::size_t x_count() const noexcept { return x_count_; }
    std::size_t size() const noexcept { return x_count_ + 2; }
    std::size_t z() const noexcept { return x_count_; }
    std::size_t q() const noexcept { return x_count_ + 1; }

    /// Index of x_{i,j}, 1-based vertex i and position j.
    std::size_t x(std::uint32_t i, std::uint32_t j) const { return row_start_.at(i - 1) + (j - 1); }

   private:
    RingPtr ring_;
    std::vector<std::size_t> row_start_;
    std::size_t x_count_ = 0;
};

/// Exponent vector of x^{d p^s - 1}: x_{i,j} gets j p^s - 1; z and q are
/// left unbounded.
inline ExponentVec target_monomial(const QuiverParams& qp, unsigned s) {
    const std::uint64_t ps = qp.p_pow(s);
    ExponentVec e;
    for (std::uint32_t i = 1; i < qp.n; ++i)
        for (std::uint32_t j = 1; j <= qp.v[i - 1]; ++j) e.push_back(static_cast<std::uint32_t>(j * ps - 1));
    e.push_back(kUnbounded);
    e.push_back(kUnbounded);
    return e;
}

/// Strict per-variable degree bound (v_i + 1) p^s - 1, in x order.
inline std::vector<std::uint64_t> degree_bounds(const QuiverParams& qp, unsigned s) {
    const std::uint64_t ps = qp.p_pow(s);
    std::vector<std::uint64_t> b;
    for (std::uint32_t i = 1; i < qp.n; ++i)
        for (std::uint32_t j = 1; j <= qp.v[i - 1]; ++j) b.push_back((qp.v[i - 1] + 1) * ps - 1);
    return b;
}

/// theta_s mod 2, theta_s = (sum_m v_m (v_m - 1) / 2) (p^s - 1)(1 - 2 omega) / 2.
inline int theta_parity(const QuiverParams& qp, unsigned s) {
    std::uint64_t pairs = 0;
    for (auto vm : qp.v) pairs += std::uint64_t{vm} * (vm - 1) / 2;
    return static_cast<int>(((pairs % 2) * (qp.ranges(s).intra % 2)) % 2);
}

inline nlohmann::ordered_json to_json(const QuiverParams& qp) {
    nlohmann::ordered_json j;
    j["p"] = qp.p;
    j["n"] = qp.n;
    j["k"] = qp.k;
    j["omega"] = qp.omega.str();
    return j;
}

/// Reads {p, n, k, omega: "r/m"} and validates through s_max.
inline QuiverParams params_from_json(const nlohmann::json& j, unsigned s_max) {
    try {
        const Omega w = parse_omega(j.at("omega").get<std::string>());
        return validate(j.at("p").get<std::uint32_t>(), j.at("n").get<std::uint32_t>(), j.at("k").get<std::uint32_t>(), w,
                        s_max);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::invalid_argument, std::string("bad parameter record: ") + e.what());
    }
}

}  // namespace qdwork

#endif  // QDWORK_QUIVER_HPP
