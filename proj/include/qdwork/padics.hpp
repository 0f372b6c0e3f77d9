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

// Fixed-precision p-adic integers, point counts on y^2 = x(1-x)(1-zx) and
// the two routes to the unit root of its zeta function.

#ifndef QDWORK_PADICS_HPP
#define QDWORK_PADICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdwork/bigpoly.hpp"
#include "qdwork/cache.hpp"
#include "qdwork/error.hpp"
#include "qdwork/quiver.hpp"

namespace qdwork {

/// An element of Z/p^N Z viewed as a p-adic integer known to precision p^N.
class PadicNumber {
   public:
    PadicNumber(std::uint64_t p, unsigned precision, const Integer& value)
        : p_(p), n_(precision), modulus_(ipow(Integer(static_cast<unsigned long>(p)), precision)) {
        if (p < 2) throw Error(Errc::invalid_argument, "p-adic prime must be at least 2");
        residue_ = mod_floor(value, modulus_);
    }

    std::uint64_t prime() const noexcept { return p_; }
    unsigned precision() const noexcept { return n_; }
    const Integer& residue() const noexcept { return residue_; }
    const Integer& modulus() const noexcept { return modulus_; }

    bool is_unit() const { return n_ == 0 || mod_floor(residue_, Integer(static_cast<unsigned long>(p_))) != 0; }

    PadicNumber with_precision(unsigned precision) const {
        if (precision > n_) throw Error(Errc::invalid_argument, "cannot raise p-adic precision");
        return PadicNumber(p_, precision, residue_);
    }

    PadicNumber inverse() const {
        if (!is_unit()) throw Error(Errc::non_unit, "p-adic number " + residue_.get_str() + " is not a unit");
        Integer inv;
        mpz_invert(inv.get_mpz_t(), residue_.get_mpz_t(), modulus_.get_mpz_t());
        return PadicNumber(p_, n_, inv);
    }

    PadicNumber pow(unsigned long e) const {
        Integer r;
        mpz_powm_ui(r.get_mpz_t(), residue_.get_mpz_t(), e, modulus_.get_mpz_t());
        return PadicNumber(p_, n_, r);
    }

    /// Largest M <= min precision with this == other mod p^M.
    unsigned agreement(const PadicNumber& o) const {
        check(o);
        const unsigned top = std::min(n_, o.n_);
        const Integer pp(static_cast<unsigned long>(p_));
        Integer diff = residue_ - o.residue_;
        unsigned m = 0;
        Integer mod = pp;
        while (m < top && mod_floor(diff, mod) == 0) {
            ++m;
            mod *= pp;
        }
        return m;
    }

    PadicNumber operator-() const { return PadicNumber(p_, n_, -residue_); }
    friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
        a.check_same(b);
        return PadicNumber(a.p_, a.n_, a.residue_ + b.residue_);
    }
    friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) {
        a.check_same(b);
        return PadicNumber(a.p_, a.n_, a.residue_ - b.residue_);
    }
    friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
        a.check_same(b);
        return PadicNumber(a.p_, a.n_, a.residue_ * b.residue_);
    }
    friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) { return a * b.inverse(); }
    friend bool operator==(const PadicNumber& a, const PadicNumber& b) {
        return a.p_ == b.p_ && a.n_ == b.n_ && a.residue_ == b.residue_;
    }

   private:
    void check(const PadicNumber& o) const {
        if (p_ != o.p_) throw Error(Errc::invalid_argument, "p-adic numbers over different primes");
    }
    void check_same(const PadicNumber& o) const {
        check(o);
        if (n_ != o.n_) throw Error(Errc::invalid_argument, "p-adic precision mismatch");
    }

    std::uint64_t p_;
    unsigned n_;
    Integer modulus_;
    Integer residue_;
};

inline nlohmann::ordered_json to_json(const PadicNumber& x) {
    nlohmann::ordered_json j;
    j["p"] = x.prime();
    j["precision"] = x.precision();
    j["residue"] = x.residue().get_str();
    return j;
}

/// Teichmueller representative of z0 mod p^N: the (p-1)-th root of unity
/// congruent to z0, obtained as lim z0^{p^k}.
inline PadicNumber teichmuller(std::uint64_t p, const Integer& z0, unsigned precision) {
    PadicNumber t(p, precision, z0);
    if (!t.is_unit()) return PadicNumber(p, precision, 0);
    for (unsigned i = 0; i < precision; ++i) t = t.pow(p);
    return t;
}

struct CurveCount {
    std::uint64_t p = 0;
    std::uint64_t z0 = 0;
    std::uint64_t points = 0;  // including the point at infinity
    std::int64_t trace = 0;    // p + 1 - points
};

/// #E(F_p) for y^2 = x(1 - x)(1 - z0 x) by direct enumeration.
inline CurveCount legendre_point_count(std::uint64_t p, std::uint64_t z0) {
    if (p < 3 || !is_prime(p)) throw Error(Errc::not_prime, "point counting needs an odd prime");
    const std::uint64_t z = z0 % p;
    if (z == 0 || z == 1)
        throw Error(Errc::singular_curve, "z0 = " + std::to_string(z0) + " is 0 or 1 mod " + std::to_string(p));
    std::vector<std::uint64_t> roots(p, 0);  // roots[a] = #{y : y^2 = a}
    for (std::uint64_t y = 0; y < p; ++y) ++roots[(y * y) % p];
    std::uint64_t points = 1;
    for (std::uint64_t x = 0; x < p; ++x) {
        const std::uint64_t one_minus_x = (1 + p - x) % p;
        const std::uint64_t one_minus_zx = (1 + p - (z * x) % p) % p;
        points += roots[(x * one_minus_x % p) * one_minus_zx % p];
    }
    CurveCount cc{p, z0, points, static_cast<std::int64_t>(p + 1) - static_cast<std::int64_t>(points)};
    if (static_cast<double>(cc.trace) * cc.trace > 4.0 * static_cast<double>(p))
        throw Error(Errc::internal, "point count violates the Hasse bound");
    return cc;
}

/// Root of X^2 - a_p X + p congruent to a_p mod p, Hensel-lifted to p^N.
inline PadicNumber zeta_unit_root(std::uint64_t p, std::uint64_t z0, unsigned precision) {
    const CurveCount cc = legendre_point_count(p, z0);
    const Integer a(static_cast<long>(cc.trace));
    const Integer pp(static_cast<unsigned long>(p));
    if (mod_floor(a, pp) == 0)
        throw Error(Errc::supersingular, "a_p = " + std::to_string(cc.trace) + " is divisible by p; no unit root");
    if (precision == 0) return PadicNumber(p, 0, 0);
    PadicNumber x(p, precision, a);
    const PadicNumber ap(p, precision, a), pn(p, precision, pp), two(p, precision, 2);
    // Newton iteration doubles the number of correct digits; f'(x) = 2x - a is a unit.
    for (unsigned correct = 1; correct < precision; correct *= 2) x = x - (x * x - ap * x + pn) / (two * x - ap);
    if ((x * x - ap * x + pn).residue() != 0) throw Error(Errc::internal, "Hensel lift failed");
    return x;
}

enum class Lift { teichmuller, integer };

inline std::string_view lift_name(Lift l) { return l == Lift::teichmuller ? "teichmuller" : "integer"; }

/// (-1)^{(p-1)/2} T_{s+1}(z) / T_s(z^p) mod p^s for the n = 2 family, with z
/// the chosen lift of z0.
inline PadicNumber dwork_unit_root(TruncationStore& store, const QuiverParams& qp, std::uint64_t z0, unsigned s,
                                   Lift lift = Lift::teichmuller) {
    if (qp.n != 2 || qp.k != 1 || qp.omega != Omega{1, 2})
        throw Error(Errc::invalid_argument, "the unit-root limit is defined for n = 2, k = 1, omega = 1/2");
    if (s == 0) throw Error(Errc::invalid_argument, "dwork_unit_root needs s >= 1");
    const std::uint64_t p = qp.p;
    if (z0 % p == 0 || z0 % p == 1) throw Error(Errc::singular_curve, "z0 is 0 or 1 mod p");
    const Integer zi(static_cast<unsigned long>(z0));
    const PadicNumber z = lift == Lift::teichmuller ? teichmuller(p, zi, s) : PadicNumber(p, s, zi);
    const PadicNumber num(p, s, store.classical(qp, s + 1).evaluate_mod(z.residue(), z.modulus()));
    const PadicNumber den(p, s, store.classical(qp, s).evaluate_mod(z.pow(p).residue(), z.modulus()));
    if (!den.is_unit()) throw Error(Errc::non_unit, "T_s(z^p) is divisible by p; z0 is not an ordinary point");
    const PadicNumber ratio = num / den;
    return ((p - 1) / 2) % 2 ? -ratio : ratio;
}

struct UnitRootComparison {
    CurveCount curve;
    PadicNumber zeta_root;
    PadicNumber dwork_root;
    unsigned agreement = 0;
    Lift lift = Lift::teichmuller;
};

/// Computes both unit-root pipelines to precision p^s and the precision to
/// which they agree.
inline UnitRootComparison unit_root_compare(TruncationStore& store, std::uint64_t p, std::uint64_t z0, unsigned s,
                                            Lift lift = Lift::teichmuller) {
    if (p > std::numeric_limits<std::uint32_t>::max()) throw Error(Errc::invalid_argument, "p too large");
    const QuiverParams qp = validate(static_cast<std::uint32_t>(p), 2, 1, 1, 2, s + 1);
    const CurveCount cc = legendre_point_count(p, z0);
    PadicNumber zeta = zeta_unit_root(p, z0, s);
    PadicNumber dwork = dwork_unit_root(store, qp, z0, s, lift);
    const unsigned agree = zeta.agreement(dwork);
    return {cc, std::move(zeta), std::move(dwork), agree, lift};
}

inline nlohmann::ordered_json to_json(const UnitRootComparison& c) {
    nlohmann::ordered_json j;
    j["p"] = c.curve.p;
    j["z0"] = c.curve.z0;
    j["points"] = c.curve.points;
    j["trace"] = c.curve.trace;
    j["lift"] = lift_name(c.lift);
    j["zeta_unit_root"] = to_json(c.zeta_root);
    j["dwork_unit_root"] = to_json(c.dwork_root);
    j["agreement"] = c.agreement;
    return j;
}

}  // namespace qdwork

#endif  // QDWORK_PADICS_HPP
