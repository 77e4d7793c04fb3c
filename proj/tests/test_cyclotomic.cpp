/**
 * @file test_cyclotomic.cpp
 * @brief Unit tests for Λ_p arithmetic: reduced/normal forms, the p-order
 *        valuation, Galois conjugation, unit inversion, Gauss sums and the
 *        special sums (a|c), b_a, s_j, t_a.
 */

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qco/cyclotomic.hpp"

using namespace qco;

namespace {

LaurentPoly T(long e) { return LaurentPoly::t(e); }
LaurentPoly C(long c) { return LaurentPoly::constant(c); }

std::vector<Int> vec(std::initializer_list<long> v) {
    std::vector<Int> r;
    for (long x : v) r.emplace_back(x);
    return r;
}

LaurentPoly random_poly(std::mt19937& rng, int terms, int span) {
    std::uniform_int_distribution<long> exp_d(-span, span);
    std::uniform_int_distribution<long> coef_d(-9, 9);
    LaurentPoly f;
    for (int i = 0; i < terms; ++i)
        f += LaurentPoly::monomial(exp_d(rng), Int(coef_d(rng)));
    return f;
}

long p_order_of(const LaurentPoly& f, PrimeLevel lv) {
    auto o = CycElem::reduce(f, lv).p_order();
    REQUIRE(o.has_value());
    return *o;
}

}  // namespace

TEST_CASE("PrimeLevel validation") {
    CHECK(PrimeLevel(3).n == 0);
    CHECK(PrimeLevel(7).n == 2);
    CHECK(PrimeLevel(7).m == 3);
    CHECK_THROWS(PrimeLevel(9));
    CHECK_THROWS(PrimeLevel(2));
    CHECK_THROWS(PrimeLevel(1));
}

TEST_CASE("reduce: worked examples") {
    // The ideal generator maps to zero.
    for (long p : {3L, 5L, 7L}) {
        PrimeLevel lv(p);
        LaurentPoly phi;
        for (long e = 0; e < p; ++e) phi += T(e);
        CHECK(CycElem::reduce(phi, lv).is_zero());
    }
    // p=3: t + 2t^-1 = t + 2t^2 = 3 + 5h + 2h^2 reduces to -3 - h
    // (equivalently: normal form 2h + h^2 minus phi_3 = 3 + 3h + h^2).
    // Cross-check in Z[zeta_3] with zeta^2 = -1 - zeta: zeta + 2zeta^2 = -3 - h.
    PrimeLevel l3(3);
    CHECK(CycElem::reduce(T(1) + Int(2) * T(-1), l3).reduced() == vec({-3, -1}));
    // p=5: b_o = 3 + t^4 + t^-4 has reduced form (0, -5, -4, -1).
    PrimeLevel l5(5);
    CHECK(CycElem::reduce(C(3) + T(4) + T(-4), l5).reduced() == vec({0, -5, -4, -1}));
}

TEST_CASE("normal form") {
    PrimeLevel l3(3);
    // p=3: t + 2t^-1 = 2h + h^2 in normal form, k0 = 1.
    NormalForm nf = CycElem::reduce(T(1) + Int(2) * T(-1), l3).normal_form();
    CHECK(nf.k0 == 1);
    CHECK(nf.coeffs == vec({2, 1}));
    // p=5: b_o = 6h^2 + 9h^3 + 5h^4 + h^5 in normal form, k0 = 2.
    PrimeLevel l5(5);
    NormalForm nb = CycElem::reduce(C(3) + T(4) + T(-4), l5).normal_form();
    CHECK(nb.k0 == 2);
    CHECK(nb.coeffs == vec({6, 9, 5, 1}));
    // Units keep k0 = 0.
    CHECK(CycElem::reduce(T(1), l5).normal_form().k0 == 0);
    CHECK_THROWS(CycElem(l5).normal_form());
}

TEST_CASE("normal form reassembles the element") {
    std::mt19937 rng(11);
    for (long p : {3L, 5L, 7L}) {
        PrimeLevel lv(p);
        for (int trial = 0; trial < 25; ++trial) {
            CycElem x = CycElem::reduce(random_poly(rng, 6, 2 * (int)p), lv);
            if (x.is_zero()) continue;
            NormalForm nf = x.normal_form();
            CHECK(nf.coeffs[0] % p != 0);
            CHECK(nf.k0 == x.p_order());
            CycElem back(lv);
            for (size_t d = 0; d < nf.coeffs.size(); ++d)
                back += nf.coeffs[d] *
                        CycElem::h_power(nf.k0 + static_cast<long>(d), lv);
            CHECK(back == x);
        }
    }
}

TEST_CASE("p_order closed formula") {
    PrimeLevel l3(3);
    CHECK(!CycElem(l3).p_order().has_value());
    CHECK(CycElem::reduce(T(1) + Int(2) * T(-1), l3).p_order() == 1);
    // o_p(p) = p - 1 for several levels.
    for (long p : {3L, 5L, 7L, 11L}) {
        PrimeLevel lv(p);
        CHECK(CycElem::from_int(Int(p), lv).p_order() == p - 1);
        CHECK(CycElem::one(lv).p_order() == 0);
        CHECK(CycElem::h_power(1, lv).p_order() == 1);
    }
}

TEST_CASE("p = <p-1>! h^{p-1} and p = [p-1]! z^{p-1}") {
    for (long p : {3L, 5L, 7L}) {
        PrimeLevel lv(p);
        CycElem P = CycElem::from_int(Int(p), lv);
        // Gauss-factorial form
        LaurentPoly gf = C(1);
        for (long k = 2; k <= p - 1; ++k) gf *= gauss_polynomial(k);
        CHECK(CycElem::reduce(gf, lv) * CycElem::h_power(p - 1, lv) == P);
        // quantum-factorial form
        LaurentPoly qf = quantum_factorial(p - 1) *
                         z_elem().pow(static_cast<unsigned long>(p - 1));
        CHECK(CycElem::reduce(qf, lv) == P);
        // and the division contract p / h^{p-1} = <p-1>!
        CHECK(P.div_h_power(p - 1) == CycElem::reduce(gf, lv));
    }
}

TEST_CASE("ring homomorphism: reduce commutes with ring operations") {
    std::mt19937 rng(5);
    for (long p : {3L, 5L, 7L, 11L}) {
        PrimeLevel lv(p);
        for (int trial = 0; trial < 15; ++trial) {
            LaurentPoly f = random_poly(rng, 6, 10), g = random_poly(rng, 6, 10);
            CHECK(CycElem::reduce(f + g, lv) ==
                  CycElem::reduce(f, lv) + CycElem::reduce(g, lv));
            CHECK(CycElem::reduce(f * g, lv) ==
                  CycElem::reduce(f, lv) * CycElem::reduce(g, lv));
            CHECK(CycElem::reduce(-f, lv) == -CycElem::reduce(f, lv));
        }
    }
}

TEST_CASE("p_order is a valuation") {
    std::mt19937 rng(99);
    for (long p : {3L, 5L, 7L, 11L}) {
        PrimeLevel lv(p);
        for (int trial = 0; trial < 20; ++trial) {
            CycElem x = CycElem::reduce(random_poly(rng, 5, 8), lv);
            CycElem y = CycElem::reduce(random_poly(rng, 5, 8), lv);
            if (x.is_zero() || y.is_zero()) continue;
            auto ox = x.p_order(), oy = y.p_order();
            CHECK(( x * y ).p_order() == *ox + *oy);
            if (!(x + y).is_zero())
                CHECK(*(x + y).p_order() >= std::min(*ox, *oy));
        }
    }
}

TEST_CASE("Galois conjugation") {
    PrimeLevel l7(7);
    CycElem t = CycElem::reduce(T(1), l7);
    CHECK(t.galois_conjugate(1) == t);
    CHECK(t.galois_conjugate(2) == CycElem::reduce(T(2), l7));
    CHECK_THROWS(t.galois_conjugate(7));
    // Automorphism property on a random element.
    std::mt19937 rng(3);
    CycElem x = CycElem::reduce(random_poly(rng, 5, 9), l7);
    CycElem y = CycElem::reduce(random_poly(rng, 5, 9), l7);
    CHECK((x * y).galois_conjugate(3) ==
          x.galois_conjugate(3) * y.galois_conjugate(3));
    // Norm of h is p (product over all conjugates of t-1).
    for (long p : {3L, 5L, 7L, 11L}) {
        PrimeLevel lv(p);
        CHECK(CycElem::reduce(h_elem(), lv).norm() == p);
    }
}

TEST_CASE("unit inversion") {
    for (long p : {3L, 5L, 7L}) {
        PrimeLevel lv(p);
        CHECK(CycElem::one(lv).invert_unit() == CycElem::one(lv));
        CHECK(CycElem::reduce(T(1), lv).invert_unit() ==
              CycElem::reduce(T(p - 1), lv));
        if (p > 3) {
            CycElem two = CycElem::reduce(quantum_int(2), lv);
            CHECK(two * two.invert_unit() == CycElem::one(lv));
        }
        // Non-units are rejected.
        CHECK_THROWS(CycElem::from_int(Int(p), lv).invert_unit());
        CHECK_THROWS(CycElem::h_power(1, lv).invert_unit());
    }
}

TEST_CASE("div_h_power") {
    PrimeLevel l5(5);
    CHECK(CycElem::h_power(2, l5).div_h_power(1) == CycElem::h_power(1, l5));
    CHECK_THROWS(CycElem::one(l5).div_h_power(1));
    // b_o / h^{2n} is a unit.
    for (long p : {5L, 7L}) {
        PrimeLevel lv(p);
        CycElem u_o = unknot_bracket_b(0, lv).div_h_power(2 * lv.n);
        CHECK(u_o.p_order() == 0);
        CHECK(u_o * CycElem::h_power(2 * lv.n, lv) == unknot_bracket_b(0, lv));
    }
}

TEST_CASE("pi_d projections") {
    PrimeLevel l5(5);
    CHECK(CycElem::one(l5).pi_d(0) == std::pair<Int, Int>(Int(1), Int(5)));
    CycElem b_o = unknot_bracket_b(0, l5);  // reduced (0, -5, -4, -1)
    CHECK(b_o.pi_d(0).first == 0);
    CHECK(b_o.pi_d(1).first == 0);   // -5 mod 5
    CHECK(b_o.pi_d(2).first == 1);   // -4 mod 5
    // modulus grows with d: d=4 wraps to coefficient 0 mod 25
    CHECK(b_o.pi_d(4).second == 25);
    // pi_d vanishes below the p-order.
    for (long d = 0; d < *b_o.p_order(); ++d) CHECK(b_o.pi_d(d).first == 0);
    // Linearity.
    std::mt19937 rng(8);
    CycElem x = CycElem::reduce(random_poly(rng, 5, 9), l5);
    CycElem y = CycElem::reduce(random_poly(rng, 5, 9), l5);
    for (long d = 0; d < 8; ++d) {
        auto [vx, mod] = x.pi_d(d);
        auto [vy, mod2] = y.pi_d(d);
        CHECK(mod == mod2);
        CHECK((x + y).pi_d(d).first == (vx + vy) % mod);
    }
}

TEST_CASE("Legendre symbol") {
    CHECK(legendre(1, 5) == 1);
    CHECK(legendre(0, 5) == 0);
    CHECK(legendre(2, 5) == -1);
    CHECK(legendre(2, 7) == 1);
    CHECK(legendre(10, 5) == 0);
}

TEST_CASE("Gauss sums") {
    PrimeLevel l5(5);
    CHECK(gauss_sum(1, l5) ==
          CycElem::reduce(C(1) + Int(2) * T(1) + Int(2) * T(4), l5));
    // Degenerate sum G_0 = p.
    for (long p : {5L, 7L, 11L}) {
        PrimeLevel lv(p);
        CHECK(gauss_sum(0, lv) == CycElem::from_int(Int(p), lv));
    }
    // Legendre closed form and the square identity.
    for (long p : {5L, 7L, 11L, 13L}) {
        PrimeLevel lv(p);
        CycElem base = CycElem::reduce(
            quantum_factorial(lv.m) *
                z_elem().pow(static_cast<unsigned long>(lv.m)),
            lv);
        if (lv.m & 1) base = -base;  // (-1)^m [m]! z^m
        CycElem target_sq =
            (lv.m & 1) ? CycElem::from_int(Int(-p), lv) : CycElem::from_int(Int(p), lv);
        for (long a = 1; a <= p - 1; ++a) {
            CycElem G = gauss_sum(a, lv);
            CHECK(G == Int(legendre(a, p)) * base);
            CHECK(G * G == target_sq);
        }
    }
}

TEST_CASE("p-sums (a|c)") {
    // p=3: (a|0) = 1 for every a.
    PrimeLevel l3(3);
    for (long a = -2; a <= 4; ++a)
        CHECK(p_sum(a, 0, l3) == CycElem::one(l3));
    // c < 0 gives zero.
    PrimeLevel l5(5);
    CHECK(p_sum(1, -1, l5).is_zero());
    // (0|0) = b_o with the frozen reduced form.
    CHECK(p_sum(0, 0, l5).reduced() == vec({0, -5, -4, -1}));
    // Depends on a only mod p.
    CHECK(p_sum(2, 1, l5) == p_sum(7, 1, l5));
}

TEST_CASE("order bounds for the p-sums (a|c)") {
    for (long p : {5L, 7L, 11L, 13L}) {
        PrimeLevel lv(p);
        for (long c = 0; c <= lv.n; ++c) {
            for (long a = 0; a <= p - 1; ++a) {
                auto o = p_sum(a, c, lv).p_order();
                long required = (a == 0) ? 2 * (lv.n - c) : lv.n - c;
                if (o) CHECK(*o >= required);
            }
        }
    }
}

TEST_CASE("unknot brackets b_a: orders and closed form") {
    // p=3: b_a = 1.
    PrimeLevel l3(3);
    for (long a = -3; a <= 3; ++a)
        CHECK(unknot_bracket_b(a, l3) == CycElem::one(l3));
    for (long p : {5L, 7L, 11L}) {
        PrimeLevel lv(p);
        for (long a = -3; a <= 3; ++a) {
            long r = (((a % p) + p) % p == 0) ? 2 : 1;
            CHECK(unknot_bracket_b(a, lv).p_order() == r * lv.n);
            // b_a = u_a h^{rn} with u_a a unit.
            CycElem u_a = unknot_unit_u(a, lv);
            CHECK(u_a.p_order() == 0);
            CHECK(u_a * CycElem::h_power(r * lv.n, lv) == unknot_bracket_b(a, lv));
        }
        // Closed form b_o = (-1)^n [m]!^2 z^{2n}.
        CHECK(unknot_bracket_b(0, lv) == unknot_bracket_b_o_closed(lv));
        // u_o = (-1)^n v_o^2.
        CycElem v_o = unknot_unit_v_o(lv);
        CycElem sq = v_o * v_o;
        if (lv.n & 1) sq = -sq;
        CHECK(unknot_unit_u(0, lv) == sq);
    }
}

TEST_CASE("sums s_j vanish except at j = +-1 mod p") {
    for (long p : {5L, 7L}) {
        PrimeLevel lv(p);
        CycElem b_o = unknot_bracket_b(0, lv);
        CHECK(sum_s(1, lv) == b_o);
        CHECK(sum_s(p - 1, lv) == -b_o);
        CHECK(sum_s(p + 1, lv) == b_o);
        for (long j = 0; j <= p - 1; ++j) {
            if (j == 1 || j == p - 1) continue;
            CHECK(sum_s(j, lv).is_zero());
        }
    }
}

TEST_CASE("sums t_a and their vanishing pattern") {
    for (long p : {5L, 7L, 11L}) {
        PrimeLevel lv(p);
        CHECK(sum_t(1, lv).p_order() == lv.n);
        CHECK(sum_t(-1, lv).p_order() == lv.n);
        CHECK(sum_t(1, lv) != sum_t(-1, lv));
        // 2 z s^a t_a = G_{2(a+1)} - G_{2(a-1)} for a = ±1.
        for (long a : {1L, -1L}) {
            CycElem lhs = CycElem::reduce(Int(2) * z_elem().shifted(2 * a), lv) *
                          sum_t(a, lv);
            CycElem rhs = gauss_sum(2 * (a + 1), lv) - gauss_sum(2 * (a - 1), lv);
            CHECK(lhs == rhs);
        }
    }
    // t_3 = 0 at p=7 (both 2 and 4 are quadratic residues mod 7).
    CHECK(sum_t(3, PrimeLevel(7)).is_zero());
}

TEST_CASE("evaluation constants u and v") {
    for (long p : {3L, 5L, 7L, 11L}) {
        PrimeLevel lv(p);
        CHECK(sum_u_const(lv) == CycElem::from_int(Int(lv.m), lv));
        CHECK(sum_u_const(lv).p_order() == 0);
        CHECK(sum_v_const(lv).p_order() == 0);
    }
}

TEST_CASE("valuation comparisons on random polynomials") {
    std::mt19937 rng(340);
    for (long p : {3L, 5L, 7L}) {
        PrimeLevel lv(p);
        for (int trial = 0; trial < 60; ++trial) {
            LaurentPoly f = random_poly(rng, 5, 6) *
                            (T(1) - C(1)).pow(static_cast<unsigned long>(trial % 3));
            if (trial % 5 == 0) f = Int(p) * f;
            if (f.is_zero()) continue;
            long o = *order(f);
            auto o_p = CycElem::reduce(f, lv).p_order();
            auto o_mod = mod_p_order(f, p);
            // (a) both dominate the order at t = 1.
            if (o_p) CHECK(*o_p >= o);
            if (o_mod) CHECK(*o_mod >= o);
            // (b) below o + p the two valuations agree threshold-by-threshold.
            for (long d = 0; d < o + p; ++d) {
                bool lhs = !o_p || *o_p >= d;
                bool rhs = !o_mod || *o_mod >= d;
                CHECK(lhs == rhs);
            }
            // (c) derivative drops the p-order by at most one (below o + p).
            long d = o_p ? std::min(*o_p, o + p - 1) : o + p - 1;
            LaurentPoly fp = f.derivative();
            if (!fp.is_zero() && d >= 1) {
                auto o_p_deriv = CycElem::reduce(fp, lv).p_order();
                if (o_p_deriv) CHECK(*o_p_deriv >= d - 1);
            }
        }
    }
}
