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

// The deformed superpotential as an explicit list of integer polynomial
// factors, and extraction of the coefficient of x^{d p^s - 1} from their
// product.

#ifndef QDWORK_SUPERPOT_HPP
#define QDWORK_SUPERPOT_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <thread>
#include <vector>

#include "qdwork/bigpoly.hpp"
#include "qdwork/error.hpp"
#include "qdwork/quiver.hpp"

namespace qdwork {

enum class FactorOrigin { vandermonde, prefactor, intra_vertex, arrow, framing_one, framing_z };

constexpr std::string_view origin_name(FactorOrigin o) noexcept {
    switch (o) {
        case FactorOrigin::vandermonde: return "vandermonde";
        case FactorOrigin::prefactor: return "prefactor";
        case FactorOrigin::intra_vertex: return "intra_vertex";
        case FactorOrigin::arrow: return "arrow";
        case FactorOrigin::framing_one: return "framing_one";
        case FactorOrigin::framing_z: return "framing_z";
    }
    return "unknown";
}

struct Factor {
    FactorOrigin origin;
    MPoly poly;
};

struct FactorList {
    RingPtr ring;
    std::vector<Factor> factors;

    std::size_t count(FactorOrigin o) const {
        return static_cast<std::size_t>(
            std::count_if(factors.begin(), factors.end(), [o](const Factor& f) { return f.origin == o; }));
    }
};

/// Arguments substituted into the superpotential: x -> x^x_power,
/// z -> z^z_power, q -> q^q_power. q_power = 0 specializes q = 1.
struct Substitution {
    std::uint32_t x_power = 1;
    std::uint32_t z_power = 1;
    std::uint32_t q_power = 1;
};

inline MPoly vandermonde(const QuiverParams& qp, const VariableSystem& vars) {
    const RingPtr& ring = vars.ring();
    MPoly d = MPoly::constant(ring, 1);
    for (std::uint32_t m = 1; m < qp.n; ++m)
        for (std::uint32_t i = 1; i <= qp.v[m - 1]; ++i)
            for (std::uint32_t j = i + 1; j <= qp.v[m - 1]; ++j)
                d = d * (MPoly::variable(ring, vars.x(m, j)) - MPoly::variable(ring, vars.x(m, i)));
    return d;
}

inline MPoly vandermonde(const QuiverParams& qp) { return vandermonde(qp, VariableSystem(qp)); }

namespace detail {

inline std::uint32_t narrow_exponent(std::uint64_t e) {
    if (e >= kUnbounded) throw Error(Errc::budget_exceeded, "exponent exceeds 32 bits");
    return static_cast<std::uint32_t>(e);
}

/// a - q^e b for monomials given as (variable, power) lists.
inline MPoly binomial_factor(const RingPtr& ring, const ExponentVec& a, const ExponentVec& b) {
    MPoly f(ring);
    f.add_term(a, 1);
    f.add_term(b, -1);
    return f;
}

}  // namespace detail

/// Factors of the deformed superpotential without the Vandermonde, in the
/// order they are written: prefactor, same-vertex pairs (ordered i != j),
/// arrows, framings (1 - q^r x) and (z - q^r x).
inline FactorList phi_bar_factors(const QuiverParams& qp, unsigned s, const VariableSystem& vars,
                                  Substitution sub = {}) {
    if (s > qp.s_max) throw Error(Errc::nonintegral_range, "level s exceeds the validated s_max");
    const RingPtr& ring = vars.ring();
    const ExponentRanges rg = qp.ranges(s);
    const std::size_t nv = vars.size();
    FactorList out{ring, {}};

    auto mono = [&](std::initializer_list<std::pair<std::size_t, std::uint64_t>> parts) {
        ExponentVec e(nv, 0);
        for (auto [var, pw] : parts) e[var] = detail::narrow_exponent(e[var] + pw);
        return e;
    };
    const std::uint64_t xp = sub.x_power, zp = sub.z_power, qpow = sub.q_power;

    ExponentVec pre(nv, 0);
    for (std::size_t i = 0; i < vars.x_count(); ++i) pre[i] = detail::narrow_exponent(rg.prefactor * xp);
    out.factors.push_back({FactorOrigin::prefactor, MPoly::monomial(ring, pre)});

    for (std::uint32_t m = 1; m < qp.n; ++m)
        for (std::uint32_t i = 1; i <= qp.v[m - 1]; ++i)
            for (std::uint32_t j = 1; j <= qp.v[m - 1]; ++j) {
                if (i == j) continue;
                for (std::uint64_t r = 0; r < rg.intra; ++r)
                    out.factors.push_back({FactorOrigin::intra_vertex,
                                           detail::binomial_factor(ring, mono({{vars.x(m, i), xp}}),
                                                                   mono({{vars.x(m, j), xp}, {vars.q(), r * qpow}}))});
            }

    for (std::uint32_t i = 1; i + 1 < qp.n; ++i)
        for (std::uint32_t a = 1; a <= qp.v[i - 1]; ++a)
            for (std::uint32_t b = 1; b <= qp.v[i]; ++b)
                for (std::uint64_t r = 0; r < rg.arrow; ++r)
                    out.factors.push_back({FactorOrigin::arrow,
                                           detail::binomial_factor(ring, mono({{vars.x(i, a), xp}}),
                                                                   mono({{vars.x(i + 1, b), xp}, {vars.q(), r * qpow}}))});

    for (std::uint32_t i = 1; i <= qp.k; ++i)
        for (std::uint64_t r = 0; r < rg.arrow; ++r)
            out.factors.push_back({FactorOrigin::framing_one,
                                   detail::binomial_factor(ring, mono({}),
                                                           mono({{vars.x(qp.n - qp.k, i), xp}, {vars.q(), r * qpow}}))});

    for (std::uint32_t i = 1; i <= qp.k; ++i)
        for (std::uint64_t r = 0; r < rg.arrow; ++r)
            out.factors.push_back({FactorOrigin::framing_z,
                                   detail::binomial_factor(ring, mono({{vars.z(), zp}}),
                                                           mono({{vars.x(qp.k, i), xp}, {vars.q(), r * qpow}}))});
    return out;
}

namespace detail {

inline std::vector<std::size_t> x_support(const MPoly& f, std::size_t x_count) {
    std::vector<std::size_t> sup;
    for (std::size_t v = 0; v < x_count; ++v)
        if (f.degree_in(v) > 0) sup.push_back(v);
    return sup;
}

/// Reorders z-free linear factors so variables are completed early: the
/// variable with the fewest pending factors is chosen next and all of its
/// factors are emitted together.
inline std::vector<Factor> elimination_order(std::vector<Factor> linear, std::size_t x_count) {
    std::vector<std::vector<std::size_t>> support;
    std::vector<std::size_t> pending(x_count, 0);
    for (const auto& f : linear) {
        support.push_back(x_support(f.poly, x_count));
        for (auto v : support.back()) ++pending[v];
    }
    std::vector<bool> used(linear.size(), false);
    std::vector<Factor> out;
    out.reserve(linear.size());
    while (out.size() < linear.size()) {
        std::size_t best = x_count;
        for (std::size_t v = 0; v < x_count; ++v)
            if (pending[v] > 0 && (best == x_count || pending[v] < pending[best])) best = v;
        if (best == x_count) {
            for (std::size_t i = 0; i < linear.size(); ++i)
                if (!used[i]) out.push_back(std::move(linear[i]));
            break;
        }
        for (std::size_t i = 0; i < linear.size(); ++i) {
            if (used[i] || std::find(support[i].begin(), support[i].end(), best) == support[i].end()) continue;
            used[i] = true;
            for (auto v : support[i]) --pending[v];
            out.push_back(std::move(linear[i]));
        }
    }
    return out;
}

}  // namespace detail

/// Full factor list of Phi_s = Delta * PhiBar_s in extraction order: Delta,
/// the prefactor, z-free linear factors grouped by variable, then the
/// framing factors carrying z.
inline FactorList factor_list(const QuiverParams& qp, unsigned s, const VariableSystem& vars, Substitution sub = {}) {
    FactorList bar = phi_bar_factors(qp, s, vars, sub);
    FactorList out{bar.ring, {}};
    out.factors.push_back({FactorOrigin::vandermonde, vandermonde(qp, vars)});
    std::vector<Factor> z_free, with_z;
    for (auto& f : bar.factors) {
        if (f.origin == FactorOrigin::prefactor)
            out.factors.push_back(std::move(f));
        else if (f.origin == FactorOrigin::framing_z)
            with_z.push_back(std::move(f));
        else
            z_free.push_back(std::move(f));
    }
    for (auto& f : detail::elimination_order(std::move(z_free), vars.x_count())) out.factors.push_back(std::move(f));
    std::stable_sort(with_z.begin(), with_z.end(), [&](const Factor& a, const Factor& b) {
        return detail::x_support(a.poly, vars.x_count()) < detail::x_support(b.poly, vars.x_count());
    });
    for (auto& f : with_z) out.factors.push_back(std::move(f));
    return out;
}

inline FactorList factor_list(const QuiverParams& qp, unsigned s) { return factor_list(qp, s, VariableSystem(qp)); }

// ---------------------------------------------------------------------------
// Full expansion (small instances)
// ---------------------------------------------------------------------------

struct ExpandOptions {
    std::size_t max_terms = 2'000'000;
    /// Reduce q modulo phi_p(q^{p^{l-1}}) after every product when set.
    std::optional<std::pair<std::uint64_t, unsigned>> cyclotomic;
};

inline MPoly expand(const FactorList& fl, std::size_t q_var, const ExpandOptions& opts = {}) {
    MPoly acc = MPoly::constant(fl.ring, 1);
    for (const auto& f : fl.factors) {
        acc = acc * f.poly;
        if (opts.cyclotomic) acc = reduce_mod_cyclotomic(acc, q_var, opts.cyclotomic->first, opts.cyclotomic->second);
        if (acc.term_count() > opts.max_terms)
            throw Error(Errc::budget_exceeded, "full expansion exceeded " + std::to_string(opts.max_terms) + " terms");
    }
    return acc;
}

/// Classical Phi_s(x, z): (-1)^{theta_s} times the q = 1 specialization of
/// Delta * PhiBar_s(x, z, q).
inline MPoly phi_q_one(const QuiverParams& qp, unsigned s, std::size_t max_terms = 2'000'000) {
    VariableSystem vars(qp);
    Substitution at_one;
    at_one.q_power = 0;
    MPoly phi = expand(factor_list(qp, s, vars, at_one), vars.q(), ExpandOptions{max_terms, std::nullopt});
    return theta_parity(qp, s) ? -phi : phi;
}

/// Phi_s(x, z, q) fully expanded.
inline MPoly phi_deformed(const QuiverParams& qp, unsigned s, std::size_t max_terms = 2'000'000) {
    VariableSystem vars(qp);
    return expand(factor_list(qp, s, vars), vars.q(), ExpandOptions{max_terms, std::nullopt});
}

// ---------------------------------------------------------------------------
// Coefficient extraction
// ---------------------------------------------------------------------------

struct StepStat {
    std::size_t step = 0;
    FactorOrigin origin = FactorOrigin::prefactor;
    std::size_t terms = 0;
    double seconds = 0.0;
};

struct ExtractOptions {
    unsigned threads = 1;
    std::size_t max_terms = 20'000'000;
    /// Specialize q = 1 in every factor before multiplying.
    bool q_to_one = false;
    std::function<void(const StepStat&)> on_step;
};

namespace detail {

/// Exponent vectors packed into one integer key in mixed radix, most
/// significant digit first, so key order is lexicographic exponent order and
/// multiplying by a monomial adds a constant to the key.
class PackedLayout {
   public:
    explicit PackedLayout(std::vector<std::uint64_t> radix) : radix_(std::move(radix)), stride_(radix_.size(), 1) {
        constexpr std::uint64_t limit = std::uint64_t{1} << 62;
        std::uint64_t total = 1;
        for (std::size_t i = radix_.size(); i-- > 0;) {
            stride_[i] = total;
            if (radix_[i] == 0 || total > limit / radix_[i])
                throw Error(Errc::budget_exceeded, "monomial key space exceeds 62 bits");
            total *= radix_[i];
        }
    }

    std::uint64_t digit(std::uint64_t key, std::size_t var) const { return (key / stride_[var]) % radix_[var]; }

    std::uint64_t encode(const ExponentVec& e) const {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] >= radix_[i]) throw Error(Errc::internal, "exponent outside packed layout");
            key += e[i] * stride_[i];
        }
        return key;
    }

   private:
    std::vector<std::uint64_t> radix_;
    std::vector<std::uint64_t> stride_;
};

struct PackedTerm {
    std::uint64_t key;
    Integer coeff;
};

struct PackedFactorTerm {
    std::uint64_t shift = 0;
    Integer coeff;
    int unit = 0;                          // +1 / -1 when |coeff| = 1, else 0
    std::vector<std::uint32_t> sup_exp;    // exponents on the factor's x-support
};

struct PackedFactor {
    std::vector<std::size_t> support;
    std::vector<PackedFactorTerm> terms;
};

struct Window {
    const std::vector<std::uint32_t>* cap;
    const std::vector<std::int64_t>* floor;  // target minus remaining degree after this factor
};

inline void accumulate(Integer& acc, const Integer& c, const PackedFactorTerm& t) {
    if (t.unit > 0)
        acc += c;
    else if (t.unit < 0)
        acc -= c;
    else
        acc += c * t.coeff;
}

inline Integer product(const Integer& c, const PackedFactorTerm& t) {
    if (t.unit > 0) return c;
    if (t.unit < 0) return -c;
    return c * t.coeff;
}

/// Merges the shifted copies of `poly` (one per factor term) whose keys lie
/// in [lo, hi), keeping monomials inside the cap/floor window.
inline void merge_chunk(const std::vector<PackedTerm>& poly, const PackedFactor& f, const PackedLayout& layout,
                        const Window& win, std::uint64_t lo, std::uint64_t hi, std::vector<PackedTerm>& out) {
    const std::size_t nt = f.terms.size();
    std::vector<std::size_t> cur(nt), end(nt);
    auto first_at_least = [&](std::uint64_t bound, std::uint64_t shift) -> std::size_t {
        if (bound <= shift) return 0;
        const std::uint64_t k = bound - shift;
        return static_cast<std::size_t>(
            std::lower_bound(poly.begin(), poly.end(), k, [](const PackedTerm& t, std::uint64_t v) { return t.key < v; }) -
            poly.begin());
    };
    for (std::size_t i = 0; i < nt; ++i) {
        cur[i] = first_at_least(lo, f.terms[i].shift);
        end[i] = hi == std::numeric_limits<std::uint64_t>::max() ? poly.size() : first_at_least(hi, f.terms[i].shift);
    }
    auto accept = [&](std::size_t i, std::uint64_t key) {
        const auto& t = f.terms[i];
        for (std::size_t a = 0; a < f.support.size(); ++a) {
            const std::size_t v = f.support[a];
            const std::uint64_t d = layout.digit(key, v) + t.sup_exp[a];
            if (d > (*win.cap)[v] || static_cast<std::int64_t>(d) < (*win.floor)[v]) return false;
        }
        return true;
    };
    for (;;) {
        std::size_t best = nt;
        std::uint64_t best_key = 0;
        for (std::size_t i = 0; i < nt; ++i) {
            while (cur[i] < end[i] && !accept(i, poly[cur[i]].key)) ++cur[i];
            if (cur[i] == end[i]) continue;
            const std::uint64_t k = poly[cur[i]].key + f.terms[i].shift;
            if (best == nt || k < best_key) {
                best = i;
                best_key = k;
            }
        }
        if (best == nt) break;
        const Integer& c = poly[cur[best]].coeff;
        if (!out.empty() && out.back().key == best_key)
            accumulate(out.back().coeff, c, f.terms[best]);
        else
            out.push_back({best_key, product(c, f.terms[best])});
        ++cur[best];
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const PackedTerm& t) { return sgn(t.coeff) == 0; }), out.end());
}

inline std::vector<PackedTerm> multiply_step(const std::vector<PackedTerm>& poly, const PackedFactor& f,
                                             const PackedLayout& layout, const Window& win, unsigned threads) {
    constexpr std::size_t kMinChunk = 4096;
    std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(threads, poly.size() / kMinChunk));
    std::vector<std::uint64_t> bounds(chunks + 1);
    bounds.front() = 0;
    bounds.back() = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t base_shift = f.terms.front().shift;
    for (std::size_t t = 1; t < chunks; ++t) bounds[t] = poly[t * poly.size() / chunks].key + base_shift;

    std::vector<std::vector<PackedTerm>> parts(chunks);
    if (chunks == 1) {
        merge_chunk(poly, f, layout, win, bounds[0], bounds[1], parts[0]);
    } else {
        std::vector<std::exception_ptr> errors(chunks);
        {
            std::vector<std::jthread> pool;
            pool.reserve(chunks);
            for (std::size_t t = 0; t < chunks; ++t)
                pool.emplace_back([&, t] {
                    try {
                        merge_chunk(poly, f, layout, win, bounds[t], bounds[t + 1], parts[t]);
                    } catch (...) {
                        errors[t] = std::current_exception();
                    }
                });
        }
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    if (chunks == 1) return std::move(parts[0]);
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    std::vector<PackedTerm> out;
    out.reserve(total);
    for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
    return out;
}

}  // namespace detail

/// Coefficient of the x-monomial `target` (z and q free) in the product of
/// the factors, computed by sequential multiplication that keeps only
/// monomials which can still reach the target: exponents above the target
/// are dropped, and so are exponents too low to be completed by the
/// remaining factors. All factor exponents must be nonnegative.
inline BiPoly extract_coefficient(const FactorList& fl, std::size_t x_count, const ExponentVec& target,
                                  const ExtractOptions& opts = {}) {
    const std::size_t nv = fl.ring->size();
    if (target.size() != nv) throw Error(Errc::ring_mismatch, "target length mismatch");
    const std::size_t zv = x_count, qv = x_count + 1;

    std::vector<std::uint64_t> rem(nv, 0);
    std::vector<std::uint64_t> radix(nv, 1);
    for (const auto& f : fl.factors)
        for (std::size_t v = 0; v < nv; ++v) rem[v] += static_cast<std::uint64_t>(std::max<long>(0, f.poly.degree_in(v)));
    for (std::size_t v = 0; v < x_count; ++v) radix[v] = std::uint64_t{target[v]} + 1;
    radix[zv] = rem[zv] + 1;
    radix[qv] = rem[qv] + 1;
    detail::PackedLayout layout(radix);

    for (std::size_t v = 0; v < x_count; ++v)
        if (rem[v] < target[v]) return BiPoly{};  // target degree unreachable

    std::vector<std::uint32_t> cap(target.begin(), target.end());
    std::vector<std::int64_t> floor(nv, std::numeric_limits<std::int64_t>::min());

    std::vector<detail::PackedTerm> poly;
    poly.push_back({0, Integer(1)});
    std::size_t step = 0;
    for (const auto& f : fl.factors) {
        const auto t0 = std::chrono::steady_clock::now();
        detail::PackedFactor pf;
        pf.support = detail::x_support(f.poly, x_count);
        for (auto v : pf.support) rem[v] -= static_cast<std::uint64_t>(f.poly.degree_in(v));
        for (std::size_t v = 0; v < x_count; ++v) floor[v] = static_cast<std::int64_t>(target[v]) - static_cast<std::int64_t>(rem[v]);
        for (const auto& [e, c] : f.poly.terms()) {
            detail::PackedFactorTerm t;
            t.shift = layout.encode(e);
            t.coeff = c;
            t.unit = c == 1 ? 1 : (c == -1 ? -1 : 0);
            for (auto v : pf.support) t.sup_exp.push_back(e[v]);
            pf.terms.push_back(std::move(t));
        }
        const detail::Window win{&cap, &floor};
        poly = detail::multiply_step(poly, pf, layout, win, std::max(1u, opts.threads));
        if (poly.size() > opts.max_terms)
            throw Error(Errc::budget_exceeded,
                        "extraction exceeded " + std::to_string(opts.max_terms) + " intermediate terms");
        if (opts.on_step)
            opts.on_step({step, f.origin, poly.size(),
                          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()});
        ++step;
    }

    BiPoly out;
    for (const auto& t : poly) {
        for (std::size_t v = 0; v < x_count; ++v)
            if (layout.digit(t.key, v) != target[v]) throw Error(Errc::internal, "extraction left a non-target monomial");
        out.add_term(static_cast<std::uint32_t>(layout.digit(t.key, zv)), static_cast<std::uint32_t>(layout.digit(t.key, qv)),
                     t.coeff);
    }
    return out;
}

/// T'_s(z, q): the coefficient of x^{d p^s - 1} in Phi_s(x, z, q), unsigned.
inline BiPoly extract_raw_truncation(const QuiverParams& qp, unsigned s, const ExtractOptions& opts = {}) {
    VariableSystem vars(qp);
    Substitution sub;
    if (opts.q_to_one) sub.q_power = 0;
    const FactorList fl = factor_list(qp, s, vars, sub);
    BiPoly t = extract_coefficient(fl, vars.x_count(), target_monomial(qp, s), opts);
    if (t.is_zero())
        throw Error(Errc::zero_extraction, "target coefficient vanished for " + qp.key() + " s=" + std::to_string(s));
    if (static_cast<std::uint64_t>(t.z_degree()) > std::uint64_t{qp.k} * qp.ranges(s).arrow)
        throw Error(Errc::internal, "z-degree of the truncation exceeds k (p^s - 1) omega");
    return t;
}

}  // namespace qdwork

#endif  // QDWORK_SUPERPOT_HPP
