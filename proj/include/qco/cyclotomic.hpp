/**
 * @file cyclotomic.hpp
 * @brief Exact arithmetic in the cyclotomic quotient Λ_p = Z[t,t^-1]/(φ_p)
 *        for an odd prime p, in the h-basis (h = t - 1).
 *
 * An element is stored in *reduced form*: the unique integer polynomial
 * x_0 + x_1 h + ... + x_{p-2} h^{p-2} representing it modulo
 * φ_p(t) = 1 + t + ... + t^{p-1}.  In the h variable (binomial theorem)
 *
 *     φ_p = p + C(p,2) h + C(p,3) h^2 + ... + C(p,p-1) h^{p-2} + h^{p-1},
 *
 * which is monic of degree p-1, so top-down elimination of powers >= p-1
 * stays in integer arithmetic.
 *
 * The p-order valuation (exponent of the prime ideal (h), using p = unit * h^{p-1})
 * has a closed formula on reduced forms:
 *
 *     o_p(x) = min_d ( (p-1) * v_p(x_d) + d ),
 *
 * and the minimizing term is unique, which also drives the bottom-up
 * *normal form* whose leading coefficient is prime to p.
 *
 * On top of the ring live the special sums of the theory: Gauss sums G_a,
 * the p-sums (a|c), the unknot brackets b_a with their unit parts u_a, and
 * the auxiliary sums s_j and t_a.
 */

#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qco/laurent.hpp"

namespace qco {

/// Fixed odd prime p = 2n+3 with the derived constants n and m = n+1 = (p-1)/2.
struct PrimeLevel {
    long p, n, m;

    explicit PrimeLevel(long prime) : p(prime), n((prime - 3) / 2), m((prime - 1) / 2) {
        if (p < 3 || p % 2 == 0 || !is_prime(p))
            throw std::invalid_argument("PrimeLevel: p must be an odd prime >= 3");
    }

    bool operator==(const PrimeLevel& o) const { return p == o.p; }

    static bool is_prime(long v) {
        if (v < 2) return false;
        for (long d = 2; d * d <= v; ++d)
            if (v % d == 0) return false;
        return true;
    }
};

/// Legendre symbol (a|p) in {-1, 0, 1}.
inline int legendre(const Int& a, long p) {
    Int P(p);
    return mpz_legendre(a.get_mpz_t(), P.get_mpz_t());
}
inline int legendre(long a, long p) { return legendre(Int(a), p); }

/// Normal form of a nonzero cyclotomic integer: x = coeffs[0] h^k0 + ... with
/// coeffs[0] prime to p; k0 equals the p-order.
struct NormalForm {
    long k0 = 0;
    std::vector<Int> coeffs;  // length p-1, coefficients of h^{k0}..h^{k0+p-2}
};

/**
 * @brief Element of Λ_p in reduced form.
 */
class CycElem {
  public:
    explicit CycElem(PrimeLevel level)
        : level_(level), x_(static_cast<size_t>(level.p - 1), Int(0)) {}

    CycElem(PrimeLevel level, std::vector<Int> reduced)
        : level_(level), x_(std::move(reduced)) {
        if (x_.size() != static_cast<size_t>(level_.p - 1))
            throw std::invalid_argument("CycElem: reduced form must have length p-1");
    }

    /// Reduce a Laurent polynomial into Λ_p: fold exponents with t^p = 1,
    /// substitute t = 1 + h, eliminate degrees >= p-1 against φ_p top-down.
    static CycElem reduce(const LaurentPoly& f, PrimeLevel level) {
        long p = level.p;
        // Fold exponents mod p into an ordinary polynomial of degree < p.
        std::vector<Int> a(static_cast<size_t>(p), Int(0));
        for (const auto& [e, c] : f.terms()) a[((e % p) + p) % p] += c;
        // Substitute t = 1 + h (Horner, degree < p so this is small).
        std::vector<Int> g;  // h-coefficients
        g.reserve(static_cast<size_t>(p));
        for (long e = p - 1; e >= 0; --e) {
            // g *= (1 + h); g += a[e]
            g.push_back(0);
            for (size_t i = g.size() - 1; i > 0; --i) g[i] += g[i - 1];
            g[0] += a[static_cast<size_t>(e)];
        }
        reduce_h_inplace(g, level);
        g.resize(static_cast<size_t>(p - 1), Int(0));
        return CycElem(level, std::move(g));
    }

    static CycElem from_int(Int c, PrimeLevel level) {
        CycElem x(level);
        x.x_[0] = std::move(c);
        return x;
    }
    static CycElem one(PrimeLevel level) { return from_int(Int(1), level); }

    /// h^k as an element of Λ_p (k >= 0).
    static CycElem h_power(long k, PrimeLevel level) {
        std::vector<Int> g(static_cast<size_t>(k + 1), Int(0));
        g.back() = 1;
        reduce_h_inplace(g, level);
        g.resize(static_cast<size_t>(level.p - 1), Int(0));
        return CycElem(level, std::move(g));
    }

    const PrimeLevel& level() const { return level_; }
    const std::vector<Int>& reduced() const { return x_; }
    bool is_zero() const {
        return std::all_of(x_.begin(), x_.end(), [](const Int& c) { return c == 0; });
    }

    bool operator==(const CycElem& y) const {
        return level_ == y.level_ && x_ == y.x_;
    }
    bool operator!=(const CycElem& y) const { return !(*this == y); }

    CycElem& operator+=(const CycElem& y) {
        check_level(y);
        for (size_t i = 0; i < x_.size(); ++i) x_[i] += y.x_[i];
        return *this;
    }
    CycElem& operator-=(const CycElem& y) {
        check_level(y);
        for (size_t i = 0; i < x_.size(); ++i) x_[i] -= y.x_[i];
        return *this;
    }
    friend CycElem operator+(CycElem x, const CycElem& y) { return x += y; }
    friend CycElem operator-(CycElem x, const CycElem& y) { return x -= y; }
    CycElem operator-() const {
        CycElem r(level_);
        for (size_t i = 0; i < x_.size(); ++i) r.x_[i] = -x_[i];
        return r;
    }

    friend CycElem operator*(const CycElem& x, const CycElem& y) {
        x.check_level(y);
        std::vector<Int> g(2 * x.x_.size() - 1, Int(0));
        for (size_t i = 0; i < x.x_.size(); ++i) {
            if (x.x_[i] == 0) continue;
            for (size_t j = 0; j < y.x_.size(); ++j) g[i + j] += x.x_[i] * y.x_[j];
        }
        reduce_h_inplace(g, x.level_);
        g.resize(x.x_.size(), Int(0));
        return CycElem(x.level_, std::move(g));
    }
    CycElem& operator*=(const CycElem& y) { return *this = *this * y; }

    friend CycElem operator*(const Int& c, const CycElem& x) {
        CycElem r(x.level_);
        for (size_t i = 0; i < x.x_.size(); ++i) r.x_[i] = c * x.x_[i];
        return r;
    }

    CycElem pow(unsigned long k) const {
        CycElem r = one(level_), b = *this;
        while (k) {
            if (k & 1) r *= b;
            b *= b;
            k >>= 1;
        }
        return r;
    }

    /// p-order: o_p(x) = min_d ((p-1) v_p(x_d) + d); nullopt (infinity) for 0.
    std::optional<long> p_order() const {
        std::optional<long> best;
        for (size_t d = 0; d < x_.size(); ++d) {
            if (x_[d] == 0) continue;
            long v = (level_.p - 1) * padic_valuation(x_[d], level_.p) +
                     static_cast<long>(d);
            if (!best || v < *best) best = v;
        }
        return best;
    }

    /**
     * @brief Normal form: bottom-up, add h-multiples of φ_p to kill leading
     *        coefficients divisible by p, then re-window so exactly p-1
     *        coefficients starting at h^{k0} remain.
     * @throws std::domain_error on zero input (infinite order).
     */
    NormalForm normal_form() const {
        if (is_zero()) throw std::domain_error("normal_form: zero element has infinite order");
        long p = level_.p;
        std::vector<Int> phi = phi_h(level_);  // degree p-1, monic
        std::vector<Int> g = x_;
        // Bottom-up: while the lowest nonzero coefficient is divisible by p,
        // subtract (x_k/p) * h^k * (φ_p / p-part...)  — concretely φ_p has
        // constant term p, so x_k h^k - (x_k/p) h^k φ_p kills the h^k term.
        size_t k = 0;
        for (;;) {
            while (k < g.size() && g[k] == 0) ++k;
            if (k >= g.size())
                throw std::logic_error("normal_form: element reduced to zero unexpectedly");
            if (g[k] % p != 0) break;
            Int q = g[k] / p;
            if (g.size() < k + phi.size()) g.resize(k + phi.size(), Int(0));
            for (size_t j = 0; j < phi.size(); ++j) g[k + j] -= q * phi[j];
        }
        NormalForm nf;
        nf.k0 = static_cast<long>(k);
        // Window the p-1 coefficients h^{k0}..h^{k0+p-2}: eliminate any higher
        // terms with h^j φ_p for j >= k0 (top-down; monic, exact).
        size_t want = k + static_cast<size_t>(p - 1);
        for (size_t d = g.size(); d-- > want;) {
            if (g[d] == 0) continue;
            size_t j = d - static_cast<size_t>(p - 1);
            if (j < k) throw std::logic_error("normal_form: window elimination underflow");
            Int q = g[d];
            for (size_t i = 0; i < phi.size(); ++i) g[j + i] -= q * phi[i];
        }
        g.resize(want, Int(0));
        nf.coeffs.assign(g.begin() + static_cast<long>(k), g.end());
        if (nf.coeffs[0] % p == 0)
            throw std::logic_error("normal_form: leading coefficient not prime to p");
        return nf;
    }

    /// Galois conjugation t -> t^k for gcd(k, p) = 1 (a ring automorphism).
    CycElem galois_conjugate(long k) const {
        long p = level_.p;
        long kk = ((k % p) + p) % p;
        if (kk == 0) throw std::invalid_argument("galois_conjugate: k divisible by p");
        // Lift the reduced form to a Laurent polynomial via h = t - 1,
        // substitute t -> t^k, reduce again.
        LaurentPoly h = h_elem(), lift, hp = LaurentPoly::constant(1);
        for (size_t d = 0; d < x_.size(); ++d) {
            if (x_[d] != 0) lift += x_[d] * hp;
            hp *= h;
        }
        return reduce(lift.substitute_power(kk), level_);
    }

    /// Integer norm N(x) = prod of all Galois conjugates (an ordinary integer).
    Int norm() const {
        CycElem prod = *this;
        for (long k = 2; k <= level_.p - 1; ++k) prod *= galois_conjugate(k);
        // The product is Galois-invariant, hence a rational integer.
        for (size_t d = 1; d < prod.x_.size(); ++d)
            if (prod.x_[d] != 0)
                throw std::logic_error("norm: product of conjugates not an integer");
        return prod.x_[0];
    }

    /**
     * @brief Inverse of a unit: v = N(u)^{-1} * prod_{k=2}^{p-1} σ_k(u),
     *        valid exactly when the norm N(u) is ±1.
     * @throws std::domain_error when u is not a unit.
     */
    CycElem invert_unit() const {
        CycElem v = one(level_);
        for (long k = 2; k <= level_.p - 1; ++k) v *= galois_conjugate(k);
        CycElem check = *this * v;
        Int nu = check.x_[0];
        for (size_t d = 1; d < check.x_.size(); ++d)
            if (check.x_[d] != 0)
                throw std::logic_error("invert_unit: norm is not an integer");
        if (nu != 1 && nu != -1)
            throw std::domain_error("invert_unit: input is not a unit (norm != ±1)");
        if (nu == -1) v = -v;
        if (*this * v != one(level_))
            throw std::logic_error("invert_unit: verification failed");
        return v;
    }

    /**
     * @brief Exact division by h^k (pre: p_order >= k).
     *
     * Uses p = h^{p-1} * unit: multiplying by w = prod_{k=2}^{p-1}(t^k - 1)
     * gives h * w = p in Λ_p, so x / h^k = x * w^k / p^k, and the final
     * division by p^k must be coefficient-wise exact.
     */
    CycElem div_h_power(long k) const {
        if (k < 0) throw std::invalid_argument("div_h_power: negative power");
        if (k == 0) return *this;
        auto o = p_order();
        if (o && *o < k)
            throw std::domain_error("div_h_power: p_order smaller than divisor power");
        LaurentPoly w = LaurentPoly::constant(1);
        for (long j = 2; j <= level_.p - 1; ++j)
            w *= LaurentPoly::t(j) - LaurentPoly::constant(1);
        CycElem y = *this * reduce(w, level_).pow(static_cast<unsigned long>(k));
        Int pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(level_.p),
                      static_cast<unsigned long>(k));
        CycElem r(level_);
        for (size_t d = 0; d < y.x_.size(); ++d) {
            Int q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), y.x_[d].get_mpz_t(),
                        pk.get_mpz_t());
            if (rem != 0)
                throw std::logic_error("div_h_power: non-integral quotient (contract violation)");
            r.x_[d] = q;
        }
        return r;
    }

    /// Finite-type projection π^d: x_{d mod (p-1)} mod p^{1+floor(d/(p-1))}.
    /// Returns (value, modulus) with 0 <= value < modulus.
    std::pair<Int, Int> pi_d(long d) const {
        if (d < 0) throw std::invalid_argument("pi_d: negative degree");
        long p1 = level_.p - 1;
        long dbar = d % p1;
        unsigned long k = 1 + static_cast<unsigned long>(d / p1);
        Int mod;
        mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(level_.p), k);
        Int v = x_[static_cast<size_t>(dbar)] % mod;
        if (v < 0) v += mod;
        return {v, mod};
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "(";
        for (size_t d = 0; d < x_.size(); ++d) {
            if (d) os << ", ";
            os << x_[d].get_str();
        }
        os << ")";
        return os.str();
    }

    /// φ_p in the h variable: coefficient of h^j is C(p, j+1); degree p-1, monic.
    static std::vector<Int> phi_h(PrimeLevel level) {
        std::vector<Int> phi(static_cast<size_t>(level.p));
        for (long j = 0; j <= level.p - 1; ++j)
            phi[static_cast<size_t>(j)] = binomial(level.p, j + 1);
        return phi;
    }

  private:
    void check_level(const CycElem& y) const {
        if (!(level_ == y.level_))
            throw std::invalid_argument("CycElem: level mismatch");
    }

    /// Eliminate h-degrees >= p-1 against the monic φ_p, top-down, in place.
    static void reduce_h_inplace(std::vector<Int>& g, PrimeLevel level) {
        std::vector<Int> phi = phi_h(level);
        size_t deg_phi = phi.size() - 1;  // p-1
        for (size_t d = g.size(); d-- > deg_phi;) {
            if (g[d] == 0) continue;
            Int q = g[d];
            size_t base = d - deg_phi;
            for (size_t i = 0; i < phi.size(); ++i) g[base + i] -= q * phi[i];
        }
    }

    PrimeLevel level_;
    std::vector<Int> x_;
};

// ---------------------------------------------------------------------------
// Special elements and sums of the theory
// ---------------------------------------------------------------------------

/// Gauss sum G_a = Σ_{k=1}^{p} t^{a k²}; G_0 degenerates to the integer p.
inline CycElem gauss_sum(long a, PrimeLevel level) {
    LaurentPoly f;
    for (long k = 1; k <= level.p; ++k) f += LaurentPoly::t(a * k * k);
    return CycElem::reduce(f, level);
}

/// p-sum (a|c) = Σ_{k=1}^{(p-1)/2} (a,k] [k,c), reduced into Λ_p.
inline CycElem p_sum(long a, long c, PrimeLevel level) {
    LaurentPoly f;
    for (long k = 1; k <= level.m; ++k)
        f += framed_quantum_int(a, k) * cabled_quantum_int(k, c);
    return CycElem::reduce(f, level);
}

/// b_a = (a|0): the p-bracket of the a-framed unknot.
inline CycElem unknot_bracket_b(long a, PrimeLevel level) {
    return p_sum(a, 0, level);
}

/// Closed form b_o = (-1)^n [m]!² z^{2n}.
inline CycElem unknot_bracket_b_o_closed(PrimeLevel level) {
    LaurentPoly f = quantum_factorial(level.m);
    f = f * f * z_elem().pow(static_cast<unsigned long>(2 * level.n));
    if (level.n & 1) f = -f;
    return CycElem::reduce(f, level);
}

/// Unit part u_a of b_a = u_a h^{rn}, r = 1 for gcd(a,p)=1, r = 2 for p|a.
inline CycElem unknot_unit_u(long a, PrimeLevel level) {
    long r = (a % level.p == 0) ? 2 : 1;
    return unknot_bracket_b(a, level).div_h_power(r * level.n);
}

/// v_o = [m]! (z/h)^n, the square root of ±u_o.
inline CycElem unknot_unit_v_o(PrimeLevel level) {
    CycElem zz = CycElem::reduce(z_elem(), level);
    CycElem num = CycElem::reduce(quantum_factorial(level.m), level) *
                  zz.pow(static_cast<unsigned long>(level.n));
    return num.div_h_power(level.n);
}

/// s_j = Σ_{k=1}^{m} [jk][k]: equals ±b_o for j ≡ ±1 mod p, 0 otherwise.
inline CycElem sum_s(long j, PrimeLevel level) {
    LaurentPoly f;
    for (long k = 1; k <= level.m; ++k) f += quantum_int(j * k) * quantum_int(k);
    return CycElem::reduce(f, level);
}

/// t_a = Σ_{k=1}^{m} s^{a(k²-1)} [k²]  with s = t².
inline CycElem sum_t(long a, PrimeLevel level) {
    LaurentPoly f;
    for (long k = 1; k <= level.m; ++k)
        f += quantum_int(k * k).shifted(2 * a * (k * k - 1));
    return CycElem::reduce(f, level);
}

/// The constants u = m and v = m(m+1)/2 as elements of Λ_p.
inline CycElem sum_u_const(PrimeLevel level) {
    return CycElem::from_int(Int(level.m), level);
}
inline CycElem sum_v_const(PrimeLevel level) {
    return CycElem::from_int(Int(level.m) * Int(level.m + 1) / 2, level);
}

}  // namespace qco
