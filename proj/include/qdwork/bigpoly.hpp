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

// Exact polynomial arithmetic over arbitrary-precision integers.
//
//   MPoly  - sparse multivariate polynomial over a named variable list
//   BiPoly - sparse polynomial in (z, q)
//   UPoly  - dense univariate polynomial in z
//
// Coefficients are GMP integers. No stored coefficient is ever zero, so
// structural equality of the term maps is polynomial equality.

#ifndef QDWORK_BIGPOLY_HPP
#define QDWORK_BIGPOLY_HPP

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdwork/error.hpp"

namespace qdwork {

using Integer = mpz_class;

inline Integer ipow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

/// Least nonnegative residue of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// ---------------------------------------------------------------------------
// Ring context and multivariate polynomials
// ---------------------------------------------------------------------------

using ExponentVec = std::vector<std::uint32_t>;

/// Marks a variable as having no degree cap in mul_capped.
inline constexpr std::uint32_t kUnbounded = std::numeric_limits<std::uint32_t>::max();

class Ring {
   public:
    explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {}

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::size_t index_of(const std::string& name) const {
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) throw Error(Errc::invalid_argument, "unknown variable " + name);
        return static_cast<std::size_t>(it - names_.begin());
    }

    friend bool operator==(const Ring&, const Ring&) = default;

   private:
    std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names) {
    return std::make_shared<const Ring>(std::move(names));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    return a == b || (a && b && *a == *b);
}

class MPoly {
   public:
    using TermMap = std::map<ExponentVec, Integer>;

    explicit MPoly(RingPtr ring) : ring_(std::move(ring)) {
        if (!ring_) throw Error(Errc::ring_mismatch, "MPoly requires a ring context");
    }

    static MPoly constant(RingPtr ring, const Integer& c) {
        MPoly r(std::move(ring));
        r.add_term(ExponentVec(r.ring_->size(), 0), c);
        return r;
    }

    static MPoly monomial(RingPtr ring, ExponentVec e, const Integer& c = 1) {
        MPoly r(std::move(ring));
        r.add_term(std::move(e), c);
        return r;
    }

    /// The single variable `var` (index into the ring) raised to `e`.
    static MPoly variable(RingPtr ring, std::size_t var, std::uint32_t e = 1) {
        ExponentVec ev(ring->size(), 0);
        ev.at(var) = e;
        return monomial(std::move(ring), std::move(ev));
    }

    void add_term(ExponentVec e, const Integer& c) {
        if (e.size() != ring_->size()) throw Error(Errc::ring_mismatch, "exponent vector length mismatch");
        if (sgn(c) == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    const RingPtr& ring() const noexcept { return ring_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    Integer coeff(const ExponentVec& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    /// Degree in one variable; -1 for the zero polynomial.
    long degree_in(std::size_t var) const {
        long d = -1;
        for (const auto& [e, c] : terms_) d = std::max<long>(d, e.at(var));
        return d;
    }

    /// Renames variables: variable i of the result is variable perm[i] of *this.
    MPoly permuted(std::span<const std::size_t> perm) const {
        if (perm.size() != ring_->size()) throw Error(Errc::ring_mismatch, "permutation length mismatch");
        MPoly r(ring_);
        for (const auto& [e, c] : terms_) {
            ExponentVec f(e.size());
            for (std::size_t i = 0; i < perm.size(); ++i) f[perm[i]] = e[i];
            r.add_term(std::move(f), c);
        }
        return r;
    }

    MPoly operator-() const {
        MPoly r(*this);
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    MPoly& operator+=(const MPoly& o) {
        check_ring(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        check_ring(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);

    friend bool operator==(const MPoly& a, const MPoly& b) {
        return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
    }

    void check_ring(const MPoly& o) const {
        if (!same_ring(ring_, o.ring_)) throw Error(Errc::ring_mismatch, "polynomials live in different rings");
    }

   private:
    RingPtr ring_;
    TermMap terms_;
};

/// Product of a and b with every monomial whose exponent exceeds its cap
/// dropped. Caps are indexed like the ring; kUnbounded disables a cap. For
/// polynomials with nonnegative exponents the retained coefficients are
/// exactly those of the full product.
inline MPoly mul_capped(const MPoly& a, const MPoly& b, std::span<const std::uint32_t> caps) {
    a.check_ring(b);
    const std::size_t nv = a.ring()->size();
    if (!caps.empty() && caps.size() != nv) throw Error(Errc::ring_mismatch, "cap vector length mismatch");
    MPoly r(a.ring());
    ExponentVec e(nv);
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            bool keep = true;
            for (std::size_t i = 0; i < nv; ++i) {
                const std::uint64_t d = std::uint64_t{ea[i]} + eb[i];
                if (!caps.empty() && caps[i] != kUnbounded && d > caps[i]) {
                    keep = false;
                    break;
                }
                if (d > std::numeric_limits<std::uint32_t>::max() - 1)
                    throw Error(Errc::budget_exceeded, "exponent overflow");
                e[i] = static_cast<std::uint32_t>(d);
            }
            if (keep) r.add_term(e, ca * cb);
        }
    }
    return r;
}

inline MPoly mul_capped(const MPoly& a, const MPoly& b) { return mul_capped(a, b, std::span<const std::uint32_t>{}); }

inline MPoly operator*(const MPoly& a, const MPoly& b) { return mul_capped(a, b); }

// ---------------------------------------------------------------------------
// Polynomials in (z, q)
// ---------------------------------------------------------------------------

struct BiDegree {
    std::uint32_t z = 0;
    std::uint32_t q = 0;
    friend auto operator<=>(const BiDegree&, const BiDegree&) = default;
};

class UPoly;

class BiPoly {
   public:
    using TermMap = std::map<BiDegree, Integer>;

    BiPoly() = default;

    static BiPoly constant(const Integer& c) { return monomial(0, 0, c); }

    static BiPoly monomial(std::uint32_t z, std::uint32_t q, const Integer& c = 1) {
        BiPoly r;
        r.add_term(z, q, c);
        return r;
    }

    void add_term(std::uint32_t z, std::uint32_t q, const Integer& c) {
        if (sgn(c) == 0) return;
        auto [it, inserted] = terms_.try_emplace(BiDegree{z, q}, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    const TermMap& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    Integer coeff(std::uint32_t z, std::uint32_t q) const {
        auto it = terms_.find(BiDegree{z, q});
        return it == terms_.end() ? Integer(0) : it->second;
    }

    long z_degree() const noexcept { return terms_.empty() ? -1 : static_cast<long>(terms_.rbegin()->first.z); }

    long q_degree() const noexcept {
        long d = -1;
        for (const auto& [e, c] : terms_) d = std::max<long>(d, e.q);
        return d;
    }

    BiPoly operator-() const {
        BiPoly r(*this);
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    BiPoly& operator+=(const BiPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e.z, e.q, c);
        return *this;
    }
    BiPoly& operator-=(const BiPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e.z, e.q, -c);
        return *this;
    }
    BiPoly& operator*=(const Integer& k) {
        if (sgn(k) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= k;
        return *this;
    }

    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(BiPoly a, const Integer& k) { return a *= k; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea.z + eb.z, ea.q + eb.q, ca * cb);
        return r;
    }

    friend bool operator==(const BiPoly&, const BiPoly&) = default;

   private:
    TermMap terms_;
};

/// [n]_q = 1 + q + ... + q^{n-1}.
inline BiPoly q_number(std::uint64_t n) {
    if (n == 0) throw Error(Errc::invalid_argument, "q_number requires n >= 1");
    BiPoly r;
    for (std::uint64_t j = 0; j < n; ++j) r.add_term(0, static_cast<std::uint32_t>(j), 1);
    return r;
}

/// phi_p(q^stride) = 1 + q^stride + ... + q^{(p-1) stride}.
inline BiPoly cyclotomic_prime_power(std::uint64_t p, std::uint64_t stride) {
    BiPoly r;
    for (std::uint64_t i = 0; i < p; ++i) r.add_term(0, static_cast<std::uint32_t>(i * stride), 1);
    return r;
}

/// The factors phi_p(q^{p^j}), j = 0..s-1, whose product is [p^s]_q.
/// Entry j is the cyclotomic polynomial of order p^{j+1}.
inline std::vector<BiPoly> q_power_factorization(std::uint64_t p, unsigned s) {
    if (p < 3 || p % 2 == 0 || s == 0) throw Error(Errc::invalid_argument, "q_power_factorization needs odd p and s >= 1");
    std::vector<BiPoly> out;
    std::uint64_t stride = 1;
    for (unsigned j = 0; j < s; ++j) {
        out.push_back(cyclotomic_prime_power(p, stride));
        stride *= p;
    }
    return out;
}

/// z -> z^a, q -> q^b.
inline BiPoly substitute_powers(const BiPoly& f, std::uint32_t a, std::uint32_t b) {
    if (a == 0 || b == 0) throw Error(Errc::invalid_argument, "substitute_powers needs positive exponents");
    BiPoly r;
    for (const auto& [e, c] : f.terms()) r.add_term(e.z * a, e.q * b, c);
    return r;
}

struct DivRem {
    BiPoly quotient;
    BiPoly remainder;
};

/// Division in q over Z[z]. The divisor's leading q-coefficient must be the
/// constant 1, so the division is exact over the integers.
inline DivRem divrem_in_q(const BiPoly& f, const BiPoly& g) {
    if (g.is_zero()) throw Error(Errc::not_monic, "division by zero polynomial");
    const long dg = g.q_degree();
    std::vector<std::pair<BiDegree, Integer>> lower;  // g minus its leading term
    std::size_t lead_terms = 0;
    for (const auto& [e, c] : g.terms()) {
        if (static_cast<long>(e.q) != dg) {
            lower.emplace_back(e, c);
        } else if (e.z != 0 || c != 1) {
            throw Error(Errc::not_monic, "divisor is not monic in q");
        } else {
            ++lead_terms;
        }
    }
    if (lead_terms != 1) throw Error(Errc::not_monic, "divisor is not monic in q");

    // rows[qdeg][zdeg]
    std::map<std::uint32_t, std::map<std::uint32_t, Integer>> rows;
    for (const auto& [e, c] : f.terms()) rows[e.q][e.z] = c;

    DivRem out;
    while (!rows.empty()) {
        auto top = std::prev(rows.end());
        const long qd = top->first;
        if (qd < dg) break;
        const auto shift = static_cast<std::uint32_t>(qd - dg);
        for (const auto& [z, c] : top->second) {
            out.quotient.add_term(z, shift, c);
            for (const auto& [ge, gc] : lower) {
                auto& row = rows[shift + ge.q];
                Integer& cell = row[z + ge.z];
                cell -= c * gc;
                if (sgn(cell) == 0) row.erase(z + ge.z);
            }
        }
        rows.erase(top);
        for (auto it = rows.begin(); it != rows.end();) it = it->second.empty() ? rows.erase(it) : std::next(it);
    }
    for (const auto& [q, row] : rows)
        for (const auto& [z, c] : row) out.remainder.add_term(z, q, c);
    return out;
}

namespace detail {

/// Canonical representative of q^e modulo phi_p(q^{p^{l-1}}), emitted as
/// (exponent, sign) pairs through `emit`.
template <class Emit>
void reduce_q_power(std::uint64_t e, std::uint64_t p, std::uint64_t stride, Emit&& emit) {
    const std::uint64_t period = p * stride;  // q^{p^l} = 1 in the quotient
    e %= period;
    const std::uint64_t top = (p - 1) * stride;
    if (e < top) {
        emit(e, 1);
        return;
    }
    const std::uint64_t t = e - top;  // q^{top} = -(1 + q^stride + ... + q^{(p-2) stride})
    for (std::uint64_t i = 0; i + 1 < p; ++i) emit(i * stride + t, -1);
}

inline std::uint64_t checked_pow(std::uint64_t base, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / base) throw Error(Errc::invalid_argument, "integer power overflow");
        r *= base;
    }
    return r;
}

}  // namespace detail

/// Remainder of f modulo phi_p(q^{p^{l-1}}), i.e. the image of f in
/// Z[z][q]/Phi_{p^l}(q): its value at a primitive p^l-th root of unity.
inline BiPoly reduce_mod_cyclotomic(const BiPoly& f, std::uint64_t p, unsigned l) {
    if (p < 3 || p % 2 == 0 || l == 0) throw Error(Errc::invalid_argument, "reduce_mod_cyclotomic needs odd p and l >= 1");
    const std::uint64_t stride = detail::checked_pow(p, l - 1);
    BiPoly r;
    for (const auto& [e, c] : f.terms()) {
        detail::reduce_q_power(e.q, p, stride, [&](std::uint64_t qe, int sign) {
            r.add_term(e.z, static_cast<std::uint32_t>(qe), sign > 0 ? c : Integer(-c));
        });
    }
    return r;
}

/// Same reduction applied to the variable `q_var` of a multivariate polynomial.
inline MPoly reduce_mod_cyclotomic(const MPoly& f, std::size_t q_var, std::uint64_t p, unsigned l) {
    if (p < 3 || p % 2 == 0 || l == 0) throw Error(Errc::invalid_argument, "reduce_mod_cyclotomic needs odd p and l >= 1");
    const std::uint64_t stride = detail::checked_pow(p, l - 1);
    MPoly r(f.ring());
    for (const auto& [e, c] : f.terms()) {
        detail::reduce_q_power(e.at(q_var), p, stride, [&](std::uint64_t qe, int sign) {
            ExponentVec g = e;
            g[q_var] = static_cast<std::uint32_t>(qe);
            r.add_term(std::move(g), sign > 0 ? c : Integer(-c));
        });
    }
    return r;
}

// ---------------------------------------------------------------------------
// Univariate polynomials in z
// ---------------------------------------------------------------------------

class UPoly {
   public:
    UPoly() = default;
    explicit UPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }
    UPoly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<Integer>& coeffs() const noexcept { return c_; }

    Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }

    void add_term(std::size_t i, const Integer& v) {
        if (i >= c_.size()) c_.resize(i + 1);
        c_[i] += v;
        trim();
    }

    UPoly& operator+=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UPoly& operator-=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    UPoly& operator*=(const Integer& k) {
        for (auto& v : c_) v *= k;
        trim();
        return *this;
    }
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(UPoly a, const Integer& k) { return a *= k; }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Integer> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(r));
    }
    friend bool operator==(const UPoly&, const UPoly&) = default;

    /// z -> z^a.
    UPoly compose_power(std::size_t a) const {
        if (a == 0) throw Error(Errc::invalid_argument, "compose_power needs a >= 1");
        if (c_.empty()) return {};
        std::vector<Integer> r((c_.size() - 1) * a + 1);
        for (std::size_t i = 0; i < c_.size(); ++i) r[i * a] = c_[i];
        return UPoly(std::move(r));
    }

    /// f(z) mod `modulus`, as a least nonnegative residue.
    Integer evaluate_mod(const Integer& z, const Integer& modulus) const {
        Integer acc = 0;
        const Integer zr = mod_floor(z, modulus);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = mod_floor(acc * zr + *it, modulus);
        return acc;
    }

   private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<Integer> c_;
};

/// Specialization q = 1: sum_i (sum_j c_ij) z^i.
inline UPoly eval_q_one(const BiPoly& f) {
    UPoly r;
    for (const auto& [e, c] : f.terms()) r.add_term(e.z, c);
    return r;
}

// ---------------------------------------------------------------------------
// Canonical text form
// ---------------------------------------------------------------------------

/// [[z_deg, q_deg, "coeff"], ...] ascending in (z_deg, q_deg).
inline nlohmann::json to_json(const BiPoly& f) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : f.terms()) arr.push_back({e.z, e.q, c.get_str()});
    return arr;
}

inline BiPoly bipoly_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw Error(Errc::corrupt_data, "polynomial must be a JSON array");
    BiPoly r;
    bool have_prev = false;
    BiDegree prev{};
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_unsigned() || !t[1].is_number_unsigned() || !t[2].is_string())
            throw Error(Errc::corrupt_data, "polynomial term must be [z_deg, q_deg, \"coeff\"]");
        const BiDegree d{t[0].get<std::uint32_t>(), t[1].get<std::uint32_t>()};
        if (have_prev && !(prev < d)) throw Error(Errc::corrupt_data, "polynomial terms out of canonical order");
        Integer c;
        if (c.set_str(t[2].get<std::string>(), 10) != 0 || sgn(c) == 0)
            throw Error(Errc::corrupt_data, "bad coefficient " + t[2].get<std::string>());
        r.add_term(d.z, d.q, c);
        prev = d;
        have_prev = true;
    }
    return r;
}

/// [[z_deg, "coeff"], ...] over the nonzero coefficients.
inline nlohmann::json to_json(const UPoly& f) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < f.coeffs().size(); ++i)
        if (sgn(f.coeffs()[i]) != 0) arr.push_back({i, f.coeffs()[i].get_str()});
    return arr;
}

inline std::ostream& operator<<(std::ostream& os, const BiPoly& f) { return os << to_json(f).dump(); }
inline std::ostream& operator<<(std::ostream& os, const UPoly& f) { return os << to_json(f).dump(); }

inline std::ostream& operator<<(std::ostream& os, const MPoly& f) {
    if (f.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        os << (first ? "" : " + ") << c.get_str();
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) os << '*' << f.ring()->name(i) << '^' << e[i];
        first = false;
    }
    return os;
}

}  // namespace qdwork

#endif  // QDWORK_BIGPOLY_HPP
