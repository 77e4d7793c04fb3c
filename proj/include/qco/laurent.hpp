/**
 * @file laurent.hpp
 * @brief Exact integer Laurent polynomials in one variable t, plus the quantum
 *        integers and related special elements built from them.
 *
 * Everything here is exact arithmetic over Z (GMP mpz_class); there is no
 * floating point anywhere in the library.  The main types are:
 *
 * - LaurentPoly: sparse Laurent polynomial in Z[t, t^-1]
 * - HPoly:      dense ordinary polynomial in Z[h] (h = t - 1), used for
 *               expansions around t = 1
 *
 * Special elements follow the usual quantum-topology conventions with
 * s = t^2 and q = t^4:
 *
 * - quantum_int(k)        [k]   = (s^k - s^-k)/(s - s^-1)
 * - framed_quantum_int    (a,k] = t^{a(k^2-1)} [k]
 * - cabled_quantum_int    [k,c) = Chebyshev coefficients of [k] in powers of [2]
 * - gauss_polynomial      <k>   = (t^k - 1)/(t - 1)
 *
 * The valuation order(f) is the order of vanishing of f at t = 1, computed by
 * repeated exact division by (t - 1).
 */

#pragma once

#include <gmpxx.h>

#include <cassert>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qco {

using Int = mpz_class;

/// Binomial coefficient C(n, r) for n >= 0; zero when r < 0 or r > n.
inline Int binomial(long n, long r) {
    if (n < 0) throw std::invalid_argument("binomial: negative upper index");
    if (r < 0 || r > n) return Int(0);
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(r));
    return b;
}

/// Multiplicity of prime p in n (p-adic valuation); n must be nonzero.
inline long padic_valuation(const Int& n, long p) {
    if (n == 0) throw std::invalid_argument("padic_valuation: zero argument");
    Int rem = n, q, r;
    long v = 0;
    Int P(p);
    for (;;) {
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.get_mpz_t(), P.get_mpz_t());
        if (r != 0) return v;
        rem = q;
        ++v;
    }
}

/**
 * @brief Sparse Laurent polynomial in Z[t, t^-1].
 *
 * Invariant: the exponent -> coefficient map holds no zero coefficients,
 * so the zero polynomial is the empty map and equality is map equality.
 */
class LaurentPoly {
  public:
    LaurentPoly() = default;

    static LaurentPoly monomial(long exp, Int coeff = Int(1)) {
        LaurentPoly f;
        if (coeff != 0) f.c_[exp] = std::move(coeff);
        return f;
    }
    static LaurentPoly constant(Int c) { return monomial(0, std::move(c)); }
    static LaurentPoly t(long exp = 1) { return monomial(exp); }

    bool is_zero() const { return c_.empty(); }
    const std::map<long, Int>& terms() const { return c_; }

    Int coeff(long exp) const {
        auto it = c_.find(exp);
        return it == c_.end() ? Int(0) : it->second;
    }

    long min_exp() const {
        assert(!c_.empty());
        return c_.begin()->first;
    }
    long max_exp() const {
        assert(!c_.empty());
        return c_.rbegin()->first;
    }

    LaurentPoly& operator+=(const LaurentPoly& g) {
        for (const auto& [e, a] : g.c_) add_term(e, a);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& g) {
        for (const auto& [e, a] : g.c_) add_term(e, -a);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly f, const LaurentPoly& g) { return f += g; }
    friend LaurentPoly operator-(LaurentPoly f, const LaurentPoly& g) { return f -= g; }
    LaurentPoly operator-() const {
        LaurentPoly f;
        for (const auto& [e, a] : c_) f.c_[e] = -a;
        return f;
    }

    friend LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g) {
        LaurentPoly h;
        for (const auto& [e1, a1] : f.c_)
            for (const auto& [e2, a2] : g.c_) h.add_term(e1 + e2, a1 * a2);
        return h;
    }
    LaurentPoly& operator*=(const LaurentPoly& g) { return *this = *this * g; }

    friend LaurentPoly operator*(const Int& c, const LaurentPoly& f) {
        LaurentPoly h;
        if (c != 0)
            for (const auto& [e, a] : f.c_) h.c_[e] = c * a;
        return h;
    }

    /// Multiply by the monomial t^exp (cheap exponent shift).
    LaurentPoly shifted(long exp) const {
        LaurentPoly h;
        for (const auto& [e, a] : c_) h.c_[e + exp] = a;
        return h;
    }

    LaurentPoly pow(unsigned long k) const {
        LaurentPoly r = constant(1), b = *this;
        while (k) {
            if (k & 1) r *= b;
            b *= b;
            k >>= 1;
        }
        return r;
    }

    bool operator==(const LaurentPoly& g) const { return c_ == g.c_; }
    bool operator!=(const LaurentPoly& g) const { return c_ != g.c_; }

    /// Value at t = 1 (sum of coefficients).
    Int eval_one() const {
        Int s = 0;
        for (const auto& [e, a] : c_) s += a;
        return s;
    }

    /// Formal derivative d/dt.
    LaurentPoly derivative() const {
        LaurentPoly d;
        for (const auto& [e, a] : c_)
            if (e != 0) d.c_[e - 1] = Int(e) * a;
        return d;
    }

    /// Substitute t -> t^k (k may be negative but not zero).
    LaurentPoly substitute_power(long k) const {
        assert(k != 0);
        LaurentPoly h;
        for (const auto& [e, a] : c_) h.add_term(e * k, a);
        return h;
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            const auto& [e, a] = *it;
            if (!first) os << (a > 0 ? " + " : " - ");
            else if (a < 0) os << "-";
            Int abs_a = abs(a);
            if (abs_a != 1 || e == 0) os << abs_a.get_str();
            if (e != 0) {
                if (abs_a != 1) os << "*";
                os << "t";
                if (e != 1) os << "^" << e;
            }
            first = false;
        }
        return os.str();
    }

  private:
    void add_term(long e, Int a) {
        if (a == 0) return;
        auto [it, inserted] = c_.try_emplace(e, a);
        if (!inserted) {
            it->second += a;
            if (it->second == 0) c_.erase(it);
        }
    }

    std::map<long, Int> c_;
};

/**
 * @brief Dense polynomial in Z[h], coefficient of h^d at index d.
 *
 * Trailing zero coefficients are trimmed, so degree() is exact.
 */
class HPoly {
  public:
    HPoly() = default;
    explicit HPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Int>& coeffs() const { return c_; }
    Int coeff(long d) const {
        return (d >= 0 && d < static_cast<long>(c_.size())) ? c_[d] : Int(0);
    }

    HPoly& operator+=(const HPoly& g) {
        if (g.c_.size() > c_.size()) c_.resize(g.c_.size());
        for (size_t i = 0; i < g.c_.size(); ++i) c_[i] += g.c_[i];
        trim();
        return *this;
    }
    friend HPoly operator+(HPoly f, const HPoly& g) { return f += g; }

    friend HPoly operator*(const HPoly& f, const HPoly& g) {
        if (f.is_zero() || g.is_zero()) return HPoly();
        std::vector<Int> r(f.c_.size() + g.c_.size() - 1);
        for (size_t i = 0; i < f.c_.size(); ++i)
            for (size_t j = 0; j < g.c_.size(); ++j) r[i + j] += f.c_[i] * g.c_[j];
        return HPoly(std::move(r));
    }

    bool operator==(const HPoly& g) const { return c_ == g.c_; }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Int> c_;
};

/**
 * @brief Expand f around t = 1: returns g(h) = (t^shift * f)(1 + h) in Z[h],
 *        where shift = max(0, -min_exp(f)) clears negative exponents.
 *
 * Multiplying by the unit t^shift does not change the order of vanishing at
 * t = 1 or any divisibility statement mod p, so g is the canonical witness
 * for valuations of f in the h-adic sense.
 */
inline HPoly expand_at_one(const LaurentPoly& f) {
    if (f.is_zero()) return HPoly();
    long shift = f.min_exp() < 0 ? -f.min_exp() : 0;
    LaurentPoly g = f.shifted(shift);
    // Horner evaluation of g at t = 1 + h, descending exponents.
    std::vector<Int> r;  // current value, coefficients in h
    long prev_exp = g.max_exp();
    r.push_back(g.coeff(prev_exp));
    for (auto it = ++g.terms().rbegin(); it != g.terms().rend(); ++it) {
        long e = it->first;
        for (long step = 0; step < prev_exp - e; ++step) {
            // r *= (1 + h)
            r.push_back(0);
            for (size_t i = r.size() - 1; i > 0; --i) r[i] += r[i - 1];
        }
        r[0] += it->second;
        prev_exp = e;
    }
    for (long step = 0; step < prev_exp; ++step) {
        r.push_back(0);
        for (size_t i = r.size() - 1; i > 0; --i) r[i] += r[i - 1];
    }
    return HPoly(std::move(r));
}

/**
 * @brief Order of vanishing of f at t = 1 (the valuation written o(f)).
 * @return nullopt for the zero polynomial (order infinity).
 *
 * Computed by repeated exact division by (t - 1): f is divisible by (t - 1)
 * exactly when f(1) = 0, and the quotient is found by synthetic division
 * after shifting f into Z[t].
 */
inline std::optional<long> order(LaurentPoly f) {
    if (f.is_zero()) return std::nullopt;
    long ord = 0;
    while (f.eval_one() == 0) {
        // Shift into Z[t] and divide by (t - 1).
        long shift = f.min_exp() < 0 ? -f.min_exp() : 0;
        LaurentPoly g = f.shifted(shift);
        // Dense synthetic division: g(t) = (t - 1) q(t), q via running suffix sums.
        long deg = g.max_exp();
        std::vector<Int> a(deg + 1);
        for (const auto& [e, c] : g.terms()) a[e] = c;
        LaurentPoly q;
        Int run = 0;
        for (long e = deg; e >= 1; --e) {
            run += a[e];
            if (run != 0) q += LaurentPoly::monomial(e - 1, run);
        }
        f = q.shifted(-shift);
        ++ord;
        assert(!f.is_zero());
    }
    return ord;
}

/**
 * @brief Mod-p order: least d with h^d coefficient of expand_at_one(f)
 *        nonzero mod p; nullopt if every coefficient is divisible by p
 *        (i.e. f = 0 in (Z/p)[t, t^-1] expanded at t = 1).
 */
inline std::optional<long> mod_p_order(const LaurentPoly& f, long p) {
    HPoly g = expand_at_one(f);
    for (long d = 0; d <= g.degree(); ++d)
        if (g.coeff(d) % p != 0) return d;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Quantum integers and friends (s = t^2, q = t^4)
// ---------------------------------------------------------------------------

/// [k] = (s^k - s^-k)/(s - s^-1); odd in k, [0] = 0, [1] = 1, [2] = t^2 + t^-2.
inline LaurentPoly quantum_int(long k) {
    if (k < 0) return -quantum_int(-k);
    LaurentPoly f;
    for (long i = 0; i < k; ++i) f += LaurentPoly::t(2 * (k - 1 - 2 * i));
    return f;
}

/// (a,k] = t^{a(k^2-1)} [k]  — quantum integer with framing twist (framing a).
inline LaurentPoly framed_quantum_int(long a, long k) {
    return quantum_int(k).shifted(a * (k * k - 1));
}

/// <k> = (t^k - 1)/(t - 1) = 1 + t + ... + t^{k-1} for k >= 0 (Gauss polynomial).
inline LaurentPoly gauss_polynomial(long k) {
    if (k < 0) throw std::invalid_argument("gauss_polynomial: negative index");
    LaurentPoly f;
    for (long i = 0; i < k; ++i) f += LaurentPoly::t(i);
    return f;
}

/**
 * @brief Cabled coefficient [k,c): the coefficient polynomials in the
 *        expansion of the Chebyshev presentation of [k] against cables.
 *
 * For k, c >= 0:
 *   [k,c) = sum_j (-1)^j C(k-j-1, j) C(k-2j-1, c) [2]^{k-2j-1-c}
 * extended by [-k,c) = -[k,c); also [k,c) = 0 for c < 0 and [k,0) = [k].
 */
inline LaurentPoly cabled_quantum_int(long k, long c) {
    if (c < 0) return LaurentPoly();
    if (k < 0) return -cabled_quantum_int(-k, c);
    if (k == 0) return LaurentPoly();
    LaurentPoly two = quantum_int(2);
    LaurentPoly f;
    for (long j = 0; 2 * j <= k - 1; ++j) {
        Int b1 = binomial(k - j - 1, j);
        if (b1 == 0) continue;
        Int b2 = binomial(k - 2 * j - 1, c);
        if (b2 == 0) continue;
        long e = k - 2 * j - 1 - c;
        assert(e >= 0);
        Int coef = b1 * b2;
        if (j & 1) coef = -coef;
        f += coef * two.pow(static_cast<unsigned long>(e));
    }
    return f;
}

/// z = s - s^-1 = t^2 - t^-2.
inline LaurentPoly z_elem() {
    return LaurentPoly::t(2) - LaurentPoly::t(-2);
}

/// h = t - 1.
inline LaurentPoly h_elem() {
    return LaurentPoly::t(1) - LaurentPoly::constant(1);
}

/// Quantum factorial [k]! = [1][2]...[k].
inline LaurentPoly quantum_factorial(long k) {
    LaurentPoly f = LaurentPoly::constant(1);
    for (long i = 2; i <= k; ++i) f *= quantum_int(i);
    return f;
}

}  // namespace qco
