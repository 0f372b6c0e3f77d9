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

// Exact checks of the Dwork-type congruences between successive truncations.
//
// All congruences are checked in cross-multiplied form
//
//   D_s = T_{s+1}(z, q) T_{s-1}(z^p, q^p) - T_s(z, q) T_s(z^p, q^p),
//
// which keeps every computation inside Z[z, q].

#ifndef QDWORK_QCONG_HPP
#define QDWORK_QCONG_HPP

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdwork/bigpoly.hpp"
#include "qdwork/cache.hpp"
#include "qdwork/error.hpp"
#include "qdwork/padics.hpp"
#include "qdwork/quiver.hpp"
#include "qdwork/superpot.hpp"
#include "qdwork/trunc.hpp"

namespace qdwork {

enum class CheckMode { q_deformed, classical, root_of_unity, split_identity };

constexpr std::string_view mode_name(CheckMode m) noexcept {
    switch (m) {
        case CheckMode::q_deformed: return "qdeform";
        case CheckMode::classical: return "classical";
        case CheckMode::root_of_unity: return "roots";
        case CheckMode::split_identity: return "splits";
    }
    return "unknown";
}

using Witness = std::variant<BiPoly, UPoly, MPoly>;

inline bool witness_is_zero(const Witness& w) {
    return std::visit([](const auto& x) { return x.is_zero(); }, w);
}

struct CongruenceReport {
    QuiverParams params;
    unsigned s = 0;
    CheckMode mode = CheckMode::q_deformed;
    unsigned l = 0;         // root-of-unity order exponent (roots, splits)
    unsigned identity = 0;  // 1..4 for split identities
    bool holds = false;
    Witness witness;
    double seconds = 0.0;
};

inline CongruenceReport make_report(const QuiverParams& qp, unsigned s, CheckMode mode, unsigned l = 0,
                                    unsigned identity = 0) {
    CongruenceReport r;
    r.params = qp;
    r.s = s;
    r.mode = mode;
    r.l = l;
    r.identity = identity;
    return r;
}

// ---------------------------------------------------------------------------
// Deformed congruence
// ---------------------------------------------------------------------------

inline BiPoly dwork_difference(const BiPoly& t_next, const BiPoly& t_cur, const BiPoly& t_prev, std::uint32_t p) {
    return t_next * substitute_powers(t_prev, p, p) - t_cur * substitute_powers(t_cur, p, p);
}

namespace detail {

struct DegreeBound {
    std::uint64_t z = 0;
    std::uint64_t q = 0;
};

/// A priori bounds on the z- and q-degree of T_s from its factor list.
inline DegreeBound truncation_degree_bound(const QuiverParams& qp, unsigned s) {
    const ExponentRanges rg = qp.ranges(s);
    const std::uint64_t tri_intra = rg.intra ? rg.intra * (rg.intra - 1) / 2 : 0;
    const std::uint64_t tri_arrow = rg.arrow ? rg.arrow * (rg.arrow - 1) / 2 : 0;
    std::uint64_t pairs = 0, arrows = 0;
    for (auto vm : qp.v) pairs += std::uint64_t{vm} * (vm - 1);
    for (std::size_t i = 0; i + 1 < qp.v.size(); ++i) arrows += std::uint64_t{qp.v[i]} * qp.v[i + 1];
    return {std::uint64_t{qp.k} * rg.arrow, pairs * tri_intra + (arrows + 2 * qp.k) * tri_arrow};
}

inline void check_degrees(const BiPoly& d, const DegreeBound& b, std::string_view what) {
    if (d.z_degree() > static_cast<long>(b.z) || d.q_degree() > static_cast<long>(b.q))
        throw Error(Errc::internal, std::string(what) + " exceeds its a priori degree bound");
}

inline double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// Remainder of D modulo [p^s]_q.
inline BiPoly q_dwork_remainder(const BiPoly& d, std::uint32_t p, unsigned s) {
    return divrem_in_q(d, q_number(detail::checked_pow(p, s))).remainder;
}

/// D_s for the stored truncations, with its degrees checked against the
/// bounds implied by the factor lists. `perturb` adds 1 to T_{s+1}, which
/// must break every check (negative control).
inline BiPoly dwork_difference(TruncationStore& store, const QuiverParams& qp, unsigned s, bool perturb = false) {
    if (s == 0) throw Error(Errc::invalid_argument, "congruence level s must be at least 1");
    const auto& next = store.get(qp, s + 1);
    const auto& cur = store.get(qp, s);
    const auto& prev = store.get(qp, s - 1);
    const auto bn = detail::truncation_degree_bound(qp, s + 1);
    const auto bc = detail::truncation_degree_bound(qp, s);
    const auto bp = detail::truncation_degree_bound(qp, s - 1);
    detail::check_degrees(next.poly, bn, "T_{s+1}");
    detail::check_degrees(cur.poly, bc, "T_s");
    detail::check_degrees(prev.poly, bp, "T_{s-1}");
    const BiPoly d = dwork_difference(perturb ? next.poly + BiPoly::constant(1) : next.poly, cur.poly, prev.poly, qp.p);
    const detail::DegreeBound bd{std::max(bn.z + qp.p * bp.z, bc.z * (1 + qp.p)),
                                 std::max(bn.q + qp.p * bp.q, bc.q * (1 + qp.p))};
    detail::check_degrees(d, bd, "D_s");
    return d;
}

inline CongruenceReport q_dwork_verify(TruncationStore& store, const QuiverParams& qp, unsigned s,
                                       bool perturb = false) {
    const auto t0 = std::chrono::steady_clock::now();
    CongruenceReport r = make_report(qp, s, CheckMode::q_deformed);
    BiPoly rem = q_dwork_remainder(dwork_difference(store, qp, s, perturb), qp.p, s);
    r.holds = rem.is_zero();
    r.witness = std::move(rem);
    r.seconds = detail::since(t0);
    return r;
}

/// Residues mod p^s of the coefficients of a classical difference.
inline UPoly residues_mod(const UPoly& d, const Integer& modulus) {
    std::vector<Integer> c;
    for (const auto& v : d.coeffs()) c.push_back(mod_floor(v, modulus));
    return UPoly(std::move(c));
}

/// Classical congruence mod p^s, from the q = 1 truncations.
inline CongruenceReport classical_dwork_verify(TruncationStore& store, const QuiverParams& qp, unsigned s,
                                               bool perturb = false) {
    if (s == 0) throw Error(Errc::invalid_argument, "congruence level s must be at least 1");
    const auto t0 = std::chrono::steady_clock::now();
    CongruenceReport r = make_report(qp, s, CheckMode::classical);
    const UPoly& next = store.classical(qp, s + 1);
    const UPoly& cur = store.classical(qp, s);
    const UPoly& prev = store.classical(qp, s - 1);
    const UPoly d = (perturb ? next + UPoly{1} : next) * prev.compose_power(qp.p) - cur * cur.compose_power(qp.p);
    UPoly res = residues_mod(d, ipow(Integer(qp.p), s));
    r.holds = res.is_zero();
    r.witness = std::move(res);
    r.seconds = detail::since(t0);
    return r;
}

/// Image of D in Z[z][q]/Phi_{p^l}(q).
inline CongruenceReport root_of_unity_verify(TruncationStore& store, const QuiverParams& qp, unsigned s, unsigned l,
                                             bool perturb = false) {
    if (l == 0 || l > s) throw Error(Errc::invalid_argument, "root-of-unity check needs 1 <= l <= s");
    const auto t0 = std::chrono::steady_clock::now();
    CongruenceReport r = make_report(qp, s, CheckMode::root_of_unity, l);
    BiPoly res = reduce_mod_cyclotomic(dwork_difference(store, qp, s, perturb), qp.p, l);
    r.holds = res.is_zero();
    r.witness = std::move(res);
    r.seconds = detail::since(t0);
    return r;
}

// ---------------------------------------------------------------------------
// Factorization identities of PhiBar at roots of unity
// ---------------------------------------------------------------------------

struct SplitOptions {
    bool reduce = true;  // false leaves q symbolic (negative control)
    std::size_t max_terms = 2'000'000;
};

namespace detail {

inline MPoly expand_bar(const QuiverParams& qp, unsigned level, const VariableSystem& vars, Substitution sub,
                        const ExpandOptions& eo) {
    return expand(phi_bar_factors(qp, level, vars, sub), vars.q(), eo);
}

}  // namespace detail

/// One of the four identities expressing PhiBar at level s+1, s, s (at q^p)
/// and s-1 (at q^p) through a lower level times a q = 1 factor in p^l-th
/// powers, checked modulo phi_p(q^{p^{l-1}}):
///   1: PhiBar_{s+1}(x,z,q)     = PhiBar_l(x,z,q)         PhiBar_{s-l+1}(x^{p^l},     z^{p^l}, 1)
///   2: PhiBar_s(x,z^p,q^p)     = PhiBar_{l-1}(x,z^p,q^p) PhiBar_{s-l+1}(x^{p^{l-1}}, z^{p^l}, 1)
///   3: PhiBar_s(x,z,q)         = PhiBar_l(x,z,q)         PhiBar_{s-l}(x^{p^l},       z^{p^l}, 1)
///   4: PhiBar_{s-1}(x,z^p,q^p) = PhiBar_{l-1}(x,z^p,q^p) PhiBar_{s-l}(x^{p^{l-1}},   z^{p^l}, 1)
inline CongruenceReport split_identity_verify(const QuiverParams& qp, unsigned s, unsigned l, unsigned identity,
                                              const SplitOptions& so = {}) {
    if (l == 0 || l > s) throw Error(Errc::invalid_argument, "split identities need 1 <= l <= s");
    if (identity < 1 || identity > 4) throw Error(Errc::invalid_argument, "split identity index must be 1..4");
    const auto t0 = std::chrono::steady_clock::now();
    const VariableSystem vars(qp);
    ExpandOptions eo{so.max_terms, std::nullopt};
    if (so.reduce) eo.cyclotomic = std::make_pair(std::uint64_t{qp.p}, l);

    const auto p = qp.p;
    const auto pl = static_cast<std::uint32_t>(qp.p_pow(l));
    const auto pl1 = static_cast<std::uint32_t>(qp.p_pow(l - 1));
    const Substitution plain{1, 1, 1}, frob{1, p, p};
    const Substitution tail_l{pl, pl, 0}, tail_l1{pl1, pl, 0};

    unsigned lhs_level = 0, head_level = 0, tail_level = 0;
    Substitution lhs_sub, head_sub, tail_sub;
    switch (identity) {
        case 1: lhs_level = s + 1, lhs_sub = plain, head_level = l, head_sub = plain, tail_level = s - l + 1, tail_sub = tail_l; break;
        case 2: lhs_level = s, lhs_sub = frob, head_level = l - 1, head_sub = frob, tail_level = s - l + 1, tail_sub = tail_l1; break;
        case 3: lhs_level = s, lhs_sub = plain, head_level = l, head_sub = plain, tail_level = s - l, tail_sub = tail_l; break;
        default: lhs_level = s - 1, lhs_sub = frob, head_level = l - 1, head_sub = frob, tail_level = s - l, tail_sub = tail_l1; break;
    }
    const MPoly lhs = detail::expand_bar(qp, lhs_level, vars, lhs_sub, eo);
    MPoly rhs = detail::expand_bar(qp, head_level, vars, head_sub, eo) * detail::expand_bar(qp, tail_level, vars, tail_sub, eo);
    if (so.reduce) rhs = reduce_mod_cyclotomic(rhs, vars.q(), p, l);

    CongruenceReport r = make_report(qp, s, CheckMode::split_identity, l, identity);
    MPoly diff = lhs - rhs;
    r.holds = diff.is_zero();
    r.witness = std::move(diff);
    r.seconds = detail::since(t0);
    return r;
}

/// All four identities for every l = 1..s.
inline std::vector<CongruenceReport> split_identities_verify(const QuiverParams& qp, unsigned s,
                                                             const SplitOptions& so = {}) {
    std::vector<CongruenceReport> out;
    for (unsigned l = 1; l <= s; ++l)
        for (unsigned id = 1; id <= 4; ++id) out.push_back(split_identity_verify(qp, s, l, id, so));
    return out;
}

// ---------------------------------------------------------------------------
// Stabilization of the ratio T_{s+1}(z) / T_s(z^p)
// ---------------------------------------------------------------------------

struct RatioSequence {
    std::vector<PadicNumber> ratios;  // ratios[i] is r_{i+1} at precision p^{i+1}
    bool stable = true;               // r_{s+1} == r_s mod p^s for all s
};

/// r_s = (-1)^{(p-1)/2} T_{s+1}(z) / T_s(z^p) mod p^s at q = 1, s = 1..s_max.
inline RatioSequence ratio_stabilization(TruncationStore& store, const QuiverParams& qp, const Integer& z,
                                         unsigned s_max) {
    RatioSequence out;
    const bool negate = ((qp.p - 1) / 2) % 2 != 0;
    for (unsigned s = 1; s <= s_max; ++s) {
        const Integer mod = ipow(Integer(qp.p), s);
        const PadicNumber num(qp.p, s, store.classical(qp, s + 1).evaluate_mod(z, mod));
        const Integer zp = ipow(mod_floor(z, mod), qp.p);
        const PadicNumber den(qp.p, s, store.classical(qp, s).evaluate_mod(zp, mod));
        if (!den.is_unit())
            throw Error(Errc::non_unit, "T_" + std::to_string(s) + "(z^p) is divisible by p at z = " + z.get_str());
        const PadicNumber r = num / den;
        out.ratios.push_back(negate ? -r : r);
    }
    for (std::size_t i = 0; i + 1 < out.ratios.size(); ++i)
        if (out.ratios[i + 1].with_precision(static_cast<unsigned>(i + 1)) != out.ratios[i]) out.stable = false;
    return out;
}

// ---------------------------------------------------------------------------
// Reporting
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json witness_json(const Witness& w) {
    return std::visit(
        [](const auto& x) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, MPoly>) {
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                for (const auto& [e, c] : x.terms()) arr.push_back({e, c.get_str()});
                return arr;
            } else {
                return to_json(x);
            }
        },
        w);
}

/// Report as JSON; timings are left out so equal inputs give equal text.
inline nlohmann::ordered_json to_json(const CongruenceReport& r) {
    nlohmann::ordered_json j;
    j["params"] = to_json(r.params);
    j["s"] = r.s;
    j["mode"] = mode_name(r.mode);
    if (r.mode == CheckMode::root_of_unity || r.mode == CheckMode::split_identity) j["l"] = r.l;
    if (r.mode == CheckMode::split_identity) j["identity"] = r.identity;
    j["holds"] = r.holds;
    j["witness"] = witness_json(r.witness);
    return j;
}

}  // namespace qdwork

#endif  // QDWORK_QCONG_HPP
