/**
 * @file verify.hpp
 * @brief The reproducibility suite: sixteen exact verification criteria
 *        covering the invariant pipeline end to end.  Shared by the
 *        acceptance test binary and the CLI `verify` subcommand.
 *
 * Every criterion performs exact algebraic checks; nothing is sampled
 * approximately.  Computations whose cabled diagrams would exceed the crossing
 * or sweep-width budgets are reported as skips, never silently dropped, and a
 * skip does not fail the suite.  Observations that are reported but not
 * asserted (sharpness tables, closed forms beyond the verified claims) go to
 * the `notes` field.
 */

#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qco/catalog.hpp"
#include "qco/cyclotomic.hpp"
#include "qco/invariant.hpp"
#include "qco/laurent.hpp"
#include "qco/link.hpp"
#include "qco/skein.hpp"

namespace qco {

struct VerifyOptions {
    /// Levels the caller asks for; each criterion intersects this with the
    /// primes it is defined at.
    std::vector<long> primes = {3, 5, 7};
    long max_crossings = 48;
    long max_width = 20;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = true;
    long checks = 0;                     // number of exact checks executed
    std::vector<std::string> failures;   // one entry per failed check
    std::vector<std::string> skips;      // budget / prime-filter skips
    std::vector<std::string> notes;      // reported, non-asserted observations
};

/**
 * @brief Whether p-bracket computation for this diagram fits the crossing
 *        budget at the given level: every crossing becomes up to (m-1)^2
 *        crossings in the largest cable and each unit of self-writhe costs a
 *        compensating twist region of comparable size.
 */
inline bool bracket_feasible(const LinkDiagram& L, PrimeLevel lv,
                             long max_crossings) {
    long width = lv.m - 1;
    if (width <= 0) return true;
    long base = static_cast<long>(L.crossings.size());
    for (long i = 0; i < L.components; ++i)
        base += std::abs(L.self_writhe(i));
    return base * width * width <= max_crossings;
}

namespace detail {

class Verifier {
  public:
    explicit Verifier(const VerifyOptions& opt)
        : opt_(opt), jc_(opt.max_width) {}

    std::vector<CriterionResult> run() {
        std::vector<CriterionResult> out;
        out.push_back(c1_integrality());
        out.push_back(c2_tau3());
        out.push_back(c3_unknot_brackets());
        out.push_back(c4_gauss_sums());
        out.push_back(c5_p_sum_orders());
        out.push_back(c6_order_n_manifolds());
        out.push_back(c7_cabled_closed_forms());
        out.push_back(c8_projection_separation());
        out.push_back(c9_trefoil_vanishing());
        out.push_back(c10_homology_bounds());
        out.push_back(c11_dual_path());
        out.push_back(c12_skein_identities());
        out.push_back(c13_phi_bounds());
        out.push_back(c14_valuation_comparisons());
        out.push_back(c15_casson_series());
        out.push_back(c16_lens_spaces());
        return out;
    }

  private:
    VerifyOptions opt_;
    JonesCache jc_;

    // -- plumbing ----------------------------------------------------------

    std::vector<long> primes_in(std::initializer_list<long> want,
                                CriterionResult& r) {
        std::vector<long> out;
        for (long p : want) {
            if (std::find(opt_.primes.begin(), opt_.primes.end(), p) !=
                opt_.primes.end())
                out.push_back(p);
            else
                r.skips.push_back("p=" + std::to_string(p) +
                                  " not requested");
        }
        return out;
    }

    static std::vector<std::string> manifold_names() {
        std::vector<std::string> names;
        for (const auto& [n, text] : catalog_files()) names.push_back(n);
        names.push_back("unknot_1");
        names.push_back("unknot_-1");
        names.push_back("unknot_5");
        return names;
    }

    bool feasible(const LinkDiagram& L, PrimeLevel lv) const {
        return bracket_feasible(L, lv, opt_.max_crossings);
    }

    void check(CriterionResult& r, bool ok, const std::string& what) {
        ++r.checks;
        if (!ok) {
            r.pass = false;
            r.failures.push_back(what);
        }
    }

    /// Run one budget-guarded unit of work; BudgetExceeded becomes a skip,
    /// any other exception a failure.
    void guarded(CriterionResult& r, const std::string& label,
                 const std::function<void()>& body) {
        try {
            body();
        } catch (const BudgetExceeded&) {
            r.skips.push_back(label + ": budget");
        } catch (const std::exception& e) {
            ++r.checks;
            r.pass = false;
            r.failures.push_back(label + ": " + e.what());
        }
    }

    static std::string at(const std::string& what, long p) {
        return what + " (p=" + std::to_string(p) + ")";
    }

    // -- criteria ----------------------------------------------------------

    /// 1. tau_p lies in the cyclotomic ring (p-order >= 0) for every catalog
    ///    manifold.
    CriterionResult c1_integrality() {
        CriterionResult r{1, "integrality"};
        for (long p : primes_in({3, 5, 7, 11}, r)) {
            PrimeLevel lv(p);
            for (const std::string& name : manifold_names()) {
                LinkDiagram L = catalog(name);
                if (!feasible(L, lv)) {
                    r.skips.push_back(at(name, p) + ": budget");
                    continue;
                }
                guarded(r, at(name, p), [&] {
                    // tau_p_value performs the exact division by |L| and
                    // throws if the quotient is not integral.
                    CycElem tau = tau_p_value(L, lv, &jc_);
                    auto o = tau.p_order();
                    check(r, !o || *o >= 0, at(name, p) + ": negative order");
                });
            }
        }
        return r;
    }

    /// 2. tau_3 is identically 1.
    CriterionResult c2_tau3() {
        CriterionResult r{2, "tau3_trivial"};
        for (long p : primes_in({3}, r)) {
            PrimeLevel lv(p);
            for (const std::string& name : manifold_names()) {
                guarded(r, at(name, p), [&] {
                    check(r, tau_p_value(catalog(name), lv, &jc_) ==
                                 CycElem::one(lv),
                          at(name, p) + ": tau_3 != 1");
                });
            }
        }
        return r;
    }

    /// 3. o_p(b_a) = n for a prime to p, 2n for p|a; closed form for b_o.
    CriterionResult c3_unknot_brackets() {
        CriterionResult r{3, "unknot_bracket_orders"};
        for (long p : primes_in({5, 7, 11, 13}, r)) {
            PrimeLevel lv(p);
            for (long a = -3; a <= 3; ++a) {
                auto o = unknot_bracket_b(a, lv).p_order();
                long want = (a % p == 0) ? 2 * lv.n : lv.n;
                check(r, o && *o == want,
                      at("o(b_" + std::to_string(a) + ")", p));
            }
            // b_o = (-1)^n [m]!^2 z^{2n}, assembled here from first
            // principles rather than through the library's closed form.
            LaurentPoly f = quantum_factorial(lv.m);
            f = f * f * z_elem().pow(static_cast<unsigned long>(2 * lv.n));
            if (lv.n & 1) f = -f;
            check(r, unknot_bracket_b(0, lv) == CycElem::reduce(f, lv),
                  at("b_o closed form", p));
            check(r, unknot_bracket_b(0, lv) == unknot_bracket_b_o_closed(lv),
                  at("b_o library closed form", p));
        }
        return r;
    }

    /// 4. Gauss sums: G_a = (a|p)(-1)^m [m]! z^m and G_a^2 = (-1)^m p.
    CriterionResult c4_gauss_sums() {
        CriterionResult r{4, "gauss_sums"};
        for (long p : primes_in({5, 7, 11, 13}, r)) {
            PrimeLevel lv(p);
            LaurentPoly core =
                quantum_factorial(lv.m) *
                z_elem().pow(static_cast<unsigned long>(lv.m));
            if (lv.m & 1) core = -core;
            CycElem core_r = CycElem::reduce(core, lv);
            Int sq = (lv.m & 1) ? Int(-p) : Int(p);
            CycElem sq_r = CycElem::from_int(sq, lv);
            for (long a = 1; a < p; ++a) {
                CycElem G = gauss_sum(a, lv);
                CycElem rhs = (legendre(a, p) >= 0) ? core_r
                                                    : CycElem::from_int(Int(-1), lv) * core_r;
                check(r, G == rhs, at("G_" + std::to_string(a), p));
                check(r, G * G == sq_r,
                      at("G_" + std::to_string(a) + "^2", p));
            }
        }
        return r;
    }

    /// 5. o_p(a|c) >= n-c, and >= 2(n-c) when p|a; sharpness reported.
    CriterionResult c5_p_sum_orders() {
        CriterionResult r{5, "p_sum_orders"};
        for (long p : primes_in({5, 7, 11, 13}, r)) {
            PrimeLevel lv(p);
            long sharp = 0, total = 0;
            for (long a = 0; a < p; ++a) {
                long mult = (a % p == 0) ? 2 : 1;
                for (long c = 0; c <= lv.n; ++c) {
                    auto o = p_sum(a, c, lv).p_order();
                    long req = mult * (lv.n - c);
                    check(r, !o || *o >= req,
                          at("(a|c) order, a=" + std::to_string(a) +
                                 " c=" + std::to_string(c),
                             p));
                    ++total;
                    if (o && *o == req) ++sharp;
                }
            }
            r.notes.push_back("p=" + std::to_string(p) + ": bound sharp in " +
                              std::to_string(sharp) + "/" +
                              std::to_string(total) + " (a|c) entries");
        }
        return r;
    }

    /// 6. The three order-n manifolds: S^1 x S^2, 0-surgery on the Whitehead
    ///    link and on the Borromean rings, plus the diagrammatic identities
    ///    <whitehead> = b_o t_1 and <borromean> = b_o^2 m.
    CriterionResult c6_order_n_manifolds() {
        CriterionResult r{6, "order_n_manifolds"};
        for (long p : primes_in({5, 7}, r)) {
            PrimeLevel lv(p);
            guarded(r, at("identities", p), [&] {
                CycElem b_o = unknot_bracket_b(0, lv);
                check(r,
                      p_bracket_direct(catalog("whitehead"), lv, &jc_) ==
                          b_o * sum_t(1, lv),
                      at("<whitehead> = b_o t_1", p));
                check(r,
                      p_bracket_direct(catalog("borromean"), lv, &jc_) ==
                          b_o * b_o * sum_u_const(lv),
                      at("<borromean> = b_o^2 m", p));
            });
            for (const char* name : {"unknot", "whitehead", "borromean"}) {
                guarded(r, at(name, p), [&] {
                    auto o = tau_p_value(catalog(name), lv, &jc_).p_order();
                    check(r, o && *o == lv.n,
                          at(std::string("order(") + name + ") = n", p));
                });
            }
        }
        for (long p : primes_in({11}, r)) {
            PrimeLevel lv(p);
            for (const char* name : {"unknot", "whitehead"}) {
                LinkDiagram L = catalog(name);
                if (!feasible(L, lv)) {
                    r.skips.push_back(at(name, p) + ": budget");
                    continue;
                }
                guarded(r, at(name, p), [&] {
                    auto o = tau_p_value(L, lv, &jc_).p_order();
                    check(r, o && *o == lv.n,
                          at(std::string("order(") + name + ") = n", p));
                });
            }
        }
        return r;
    }

    /// 7. (+-2)-cabled Borromean surgeries: bracket closed form and order n.
    CriterionResult c7_cabled_closed_forms() {
        CriterionResult r{7, "cabled_borromean_closed_form"};
        for (long p : primes_in({5, 7}, r)) {
            PrimeLevel lv(p);
            for (int sign : {+1, -1}) {
                std::string name =
                    sign > 0 ? "borromean_cable_2" : "borromean_cable_-2";
                guarded(r, at(name, p), [&] {
                    LinkDiagram L = catalog(name);
                    LaurentPoly s;
                    for (long j = 1; j <= lv.m; ++j)
                        for (long k = j; k <= lv.m; ++k)
                            s += LaurentPoly::t(-sign * 8 * j * (j - 1));
                    CycElem b_o = unknot_bracket_b(0, lv);
                    check(r,
                          p_bracket_direct(L, lv, &jc_) ==
                              b_o * b_o * CycElem::reduce(s, lv),
                          at("<" + name + "> closed form", p));
                    auto o = tau_p_value(L, lv, &jc_).p_order();
                    check(r, o && *o == lv.n, at("order(" + name + ") = n", p));
                });
            }
        }
        return r;
    }

    /// 8. The cabled pair agrees through depth n and separates at depth n+1;
    ///    0-surgeries on the Whitehead link and its mirror are distinct.
    CriterionResult c8_projection_separation() {
        CriterionResult r{8, "projection_separation"};
        for (long p : primes_in({5, 7}, r)) {
            PrimeLevel lv(p);
            guarded(r, at("cable pair", p), [&] {
                CycElem tp = tau_p_value(catalog("borromean_cable_2"), lv, &jc_);
                CycElem tm =
                    tau_p_value(catalog("borromean_cable_-2"), lv, &jc_);
                check(r, tp.pi_d(lv.n) == tm.pi_d(lv.n),
                      at("pi^n agreement", p));
                check(r, tp.pi_d(lv.n + 1) != tm.pi_d(lv.n + 1),
                      at("pi^{n+1} separation", p));
            });
            guarded(r, at("whitehead mirror", p), [&] {
                check(r,
                      !(tau_p_value(catalog("whitehead"), lv, &jc_) ==
                        tau_p_value(mirror(catalog("whitehead")), lv, &jc_)),
                      at("tau(whitehead) != tau(mirror)", p));
            });
            // Reported, not asserted: the sum of the h-linear coefficients
            // -+8j(j-1) over 1<=j<=k<=m evaluates to -+2(m-1)m(m+1)(m+2)/3.
            long direct = 0;
            for (long j = 1; j <= lv.m; ++j)
                for (long k = j; k <= lv.m; ++k) direct += 8 * j * (j - 1);
            long closed =
                2 * (lv.m - 1) * lv.m * (lv.m + 1) * (lv.m + 2) / 3;
            r.notes.push_back(
                "p=" + std::to_string(p) + ": sum of linear coefficients 8j(j-1) = " +
                std::to_string(direct) + (direct == closed
                                              ? " = 2(m-1)m(m+1)(m+2)/3"
                                              : " (closed form mismatch)"));
        }
        return r;
    }

    /// 9. tau_7 of 0-surgery on the right trefoil vanishes; the identity
    ///    <L> = b_o t_{(p-1)/2} holds for the (1,0)-framed mirror Whitehead
    ///    presentation of that surgery, which blows down to the 0-framed
    ///    trefoil at the cost of the unit b_1.
    CriterionResult c9_trefoil_vanishing() {
        CriterionResult r{9, "trefoil_vanishing"};
        for (long p : primes_in({5, 7}, r)) {
            PrimeLevel lv(p);
            guarded(r, at("presentation", p), [&] {
                LinkDiagram wh = mirror(catalog("whitehead"));
                wh.framings = {1, 0};
                CycElem br_wh = p_bracket_direct(wh, lv, &jc_);
                CycElem br_tre =
                    p_bracket_direct(catalog("trefoil_right"), lv, &jc_);
                check(r,
                      br_wh == unknot_bracket_b(0, lv) * sum_t(lv.m, lv),
                      at("<wh(1,0)> = b_o t_{(p-1)/2}", p));
                check(r, br_wh == unknot_bracket_b(1, lv) * br_tre,
                      at("blow-down unit relation", p));
                if (p == 7) {
                    check(r, br_tre.is_zero(), "trefoil bracket zero (p=7)");
                    check(r,
                          !tau_p_value(catalog("trefoil_right"), lv, &jc_)
                               .p_order()
                               .has_value(),
                          "tau_7(trefoil_0) = 0");
                }
            });
        }
        return r;
    }

    /// 10. Homology order bounds o_p(M) >= b_p n/3 and >= n when b_p > 0 on
    ///     catalog manifolds and their pairwise connected sums.
    CriterionResult c10_homology_bounds() {
        CriterionResult r{10, "homology_order_bounds"};
        for (long p : primes_in({5, 7}, r)) {
            PrimeLevel lv(p);
            std::vector<std::pair<std::optional<long>, long>> data;  // (o, b_p)
            std::vector<std::string> names;
            for (const std::string& name : manifold_names()) {
                LinkDiagram L = catalog(name);
                if (!feasible(L, lv)) {
                    r.skips.push_back(at(name, p) + ": budget");
                    continue;
                }
                guarded(r, at(name, p), [&] {
                    auto o = tau_p_value(L, lv, &jc_).p_order();
                    long bp = homology(linking_matrix(L), p).b_p;
                    data.emplace_back(o, bp);
                    names.push_back(name);
                    // Reported, not asserted: the order of the two-clasp
                    // chain surgery, for comparison with the conjectured
                    // ceil(3n/2) for its bordism class.
                    if (name == "fig3b")
                        r.notes.push_back(
                            "p=" + std::to_string(p) + ": observed o_p(fig3b) = " +
                            order_str(o) + ", ceil(3n/2) = " +
                            std::to_string((3 * lv.n + 1) / 2));
                });
            }
            auto bound_ok = [&](const std::optional<long>& o, long bp) {
                if (!o) return true;  // tau = 0: infinite order
                if (3 * *o < bp * lv.n) return false;
                if (bp > 0 && *o < lv.n) return false;
                return true;
            };
            for (size_t i = 0; i < data.size(); ++i) {
                check(r, bound_ok(data[i].first, data[i].second),
                      at(names[i] + " bound", p));
                // Connected sums: orders and b_p add (multiplicativity).
                for (size_t j = i; j < data.size(); ++j) {
                    std::optional<long> o;
                    if (data[i].first && data[j].first)
                        o = *data[i].first + *data[j].first;
                    check(r, bound_ok(o, data[i].second + data[j].second),
                          at(names[i] + " # " + names[j] + " bound", p));
                }
            }
        }
        return r;
    }

    /// 11. The two independent p-bracket paths agree on all catalog links.
    CriterionResult c11_dual_path() {
        CriterionResult r{11, "dual_path_bracket"};
        for (long p : primes_in({3, 5, 7}, r)) {
            PrimeLevel lv(p);
            for (const std::string& name : manifold_names()) {
                LinkDiagram L = catalog(name);
                if (!feasible(L, lv)) {
                    r.skips.push_back(at(name, p) + ": budget");
                    continue;
                }
                guarded(r, at(name, p), [&] {
                    check(r,
                          p_bracket_direct(L, lv, &jc_) ==
                              p_bracket_via_phi(L, lv, &jc_),
                          at(name + " dual path", p));
                });
            }
        }
        return r;
    }

    /// 12. Skein-layer identities: normalization, colored values, sublink
    ///     reconstruction, projection/involution algebra, kink and
    ///     orientation invariance.
    CriterionResult c12_skein_identities() {
        CriterionResult r{12, "skein_identities"};
        guarded(r, "skein identities", [&] {
            LinkDiagram unknot(1, {}, {0});
            check(r, jc_.jones(unknot) == quantum_int(2), "J(unknot) = [2]");
            for (long c = 2; c <= 4; ++c) {
                LinkDiagram unlink(c, {}, std::vector<long>(
                                              static_cast<size_t>(c), 0));
                check(r,
                      jc_.jones(unlink) ==
                          quantum_int(2).pow(static_cast<unsigned long>(c)),
                      "J(unlink_" + std::to_string(c) + ") = [2]^c");
            }
            for (long k = 1; k <= 6; ++k)
                check(r, colored_jones(unknot, {k}, &jc_) == quantum_int(k),
                      "J(unknot," + std::to_string(k) + ") = [k]");
            LinkDiagram hopf = braid_closure(2, {1, 1}, {0, 0}, "hopf");
            for (long j = 1; j <= 3; ++j)
                for (long k = 1; k <= 3; ++k)
                    check(r,
                          colored_jones(hopf, {j, k}, &jc_) ==
                              quantum_int(j * k),
                          "J(hopf," + std::to_string(j) + "," +
                              std::to_string(k) + ") = [jk]");
            // Sublink reconstruction J_L = sum [2]^{l-s} phi_S.
            for (const char* name :
                 {"unknot", "hopf", "trefoil_right", "whitehead"}) {
                LinkDiagram L = catalog(name);
                check(r, jones_from_phi(L, &jc_) == jc_.jones(L),
                      std::string("J reconstruction: ") + name);
            }
            // Projection algebra: pi kills the unknot, hence phi vanishes on
            // any link with a split unknotted component.
            check(r, ohtsuki_phi(unknot, &jc_).is_zero(), "phi(unknot) = 0");
            check(r, jones_of_combo(pi_projection(unknot), &jc_).is_zero(),
                  "J(pi(unknot)) = 0");
            check(r,
                  ohtsuki_phi(distant_union(hopf, unknot), &jc_).is_zero(),
                  "phi(hopf u unknot) = 0");
            // Involution: applying delta twice telescopes back to J_L.
            for (const char* name : {"hopf", "whitehead"}) {
                LinkDiagram L = catalog(name);
                LaurentPoly total;
                for (auto& [S, cs] : sublinks(L))
                    for (auto& [T, ct] : sublinks(S))
                        total += Int((cs + ct) % 2 == 0 ? 1 : -1) * jc_.jones(T);
                check(r, total == jc_.jones(L),
                      std::string("delta involution: ") + name);
            }
            // Kink invariance.
            check(r, jones_J(LinkDiagram(1, {{{1, 1, 2, 2}}}, {0}),
                             opt_.max_width) == quantum_int(2),
                  "positive kink");
            check(r, jones_J(LinkDiagram(1, {{{1, 2, 2, 1}}}, {0}),
                             opt_.max_width) == quantum_int(2),
                  "negative kink");
            check(r,
                  jc_.jones(braid_closure(2, {1, 1, 1, 1, -1}, {0})) ==
                      jc_.jones(braid_closure(2, {1, 1, 1}, {0})),
                  "cancelling crossing pair");
            // Orientation invariance.
            for (const char* name : {"whitehead", "borromean"}) {
                LinkDiagram L = catalog(name);
                for (long i = 0; i < L.components; ++i)
                    check(r,
                          jc_.jones(reverse_component(L, i)) == jc_.jones(L),
                          std::string("orientation: ") + name + " #" +
                              std::to_string(i));
            }
        });
        return r;
    }

    /// 13. Order lower bounds for the Ohtsuki polynomial.
    CriterionResult c13_phi_bounds() {
        CriterionResult r{13, "phi_order_bounds"};
        guarded(r, "phi bounds", [&] {
            auto phi_ord = [&](const LinkDiagram& L) {
                return order(ohtsuki_phi(L, &jc_));
            };
            auto at_least = [](const std::optional<long>& o, long k) {
                return !o || *o >= k;
            };
            check(r, at_least(phi_ord(catalog("hopf")), 2), "hopf >= 2");
            check(r, at_least(phi_ord(catalog("whitehead")), 3),
                  "whitehead >= 3");
            check(r, at_least(phi_ord(catalog("borromean")), 4),
                  "borromean >= 4");
            LinkDiagram unlink2(2, {}, {0, 0});
            check(r, at_least(phi_ord(unlink2), 4), "unlink_2 >= 4");
            LinkDiagram tre = catalog("trefoil_right");
            check(r, at_least(phi_ord(distant_union(tre, tre)), 4),
                  "split trefoil pair >= 4");
        });
        return r;
    }

    /// 14. Valuation comparisons on random Laurent polynomials: the
    ///     cyclotomic p-order and the mod-p order both dominate the order at
    ///     t = 1, agree with it threshold-by-threshold below o + p, and the
    ///     derivative drops the p-order by at most one in that range.
    CriterionResult c14_valuation_comparisons() {
        CriterionResult r{14, "valuation_comparisons"};
        std::mt19937 rng(340);
        std::uniform_int_distribution<long> exp_d(-6, 6);
        std::uniform_int_distribution<long> coef_d(-9, 9);
        for (long p : primes_in({3, 5, 7}, r)) {
            PrimeLevel lv(p);
            for (int trial = 0; trial < 1000; ++trial) {
                LaurentPoly f;
                for (int i = 0; i < 5; ++i)
                    f += LaurentPoly::monomial(exp_d(rng), Int(coef_d(rng)));
                f = f * (LaurentPoly::t(1) - LaurentPoly::constant(1))
                            .pow(static_cast<unsigned long>(trial % 3));
                if (trial % 5 == 0) f = Int(p) * f;
                if (f.is_zero()) continue;
                long o = *order(f);
                auto o_p = CycElem::reduce(f, lv).p_order();
                auto o_mod = mod_p_order(f, p);
                std::string tag = "p=" + std::to_string(p) + " trial " +
                                  std::to_string(trial);
                bool ok = (!o_p || *o_p >= o) && (!o_mod || *o_mod >= o);
                for (long d = 0; ok && d < o + p; ++d)
                    ok = (!o_p || *o_p >= d) == (!o_mod || *o_mod >= d);
                LaurentPoly fp = f.derivative();
                long cap = o_p ? std::min(*o_p, o + p - 1) : o + p - 1;
                if (ok && !fp.is_zero() && cap >= 1) {
                    auto o_d = CycElem::reduce(fp, lv).p_order();
                    ok = !o_d || *o_d >= cap - 1;
                }
                check(r, ok, tag);
            }
        }
        return r;
    }

    /// 15. Casson series: tau_p(+1-surgery on the trefoil) = 1 + 6l(q-1) +
    ///     O(h^2) with a single l = +1 across levels.  Since q - 1 = 4h +
    ///     O(h^2), the h-linear reduced coefficient is 24l mod p; the h^0
    ///     coefficient is 1 mod p.
    CriterionResult c15_casson_series() {
        CriterionResult r{15, "casson_series"};
        std::optional<int> lam;
        for (long p : primes_in({5, 7, 11}, r)) {
            PrimeLevel lv(p);
            LinkDiagram tre = catalog("trefoil_right");
            tre.framings = {1};
            if (!feasible(tre, lv)) {
                r.skips.push_back(at("trefoil", p) + ": budget");
                continue;
            }
            guarded(r, at("trefoil", p), [&] {
                CycElem tau = tau_p_value(tre, lv, &jc_);
                const std::vector<Int>& x = tau.reduced();
                check(r, (x[0] - 1) % p == 0, at("h^0 coefficient = 1", p));
                Int c1 = x[1] % p;
                std::optional<int> l;
                if ((c1 - 24) % p == 0) l = +1;
                if ((c1 + 24) % p == 0) l = -1;
                check(r, l.has_value(), at("h^1 coefficient = +-24", p));
                if (l) {
                    if (!lam) lam = *l;
                    check(r, *l == *lam, at("lambda consistency", p));
                }
            });
        }
        if (lam) check(r, *lam == 1, "lambda = +1 (Casson oracle)");
        return r;
    }

    /// 16. Lens spaces L(k,1): o_p = 0 exactly when gcd(k,p) = 1.
    CriterionResult c16_lens_spaces() {
        CriterionResult r{16, "lens_spaces"};
        for (long p : primes_in({5, 7}, r)) {
            PrimeLevel lv(p);
            for (long k = 1; k <= 10; ++k) {
                guarded(r, at("L(" + std::to_string(k) + ",1)", p), [&] {
                    LinkDiagram L(1, {}, {k});
                    auto o = tau_p_value(L, lv, &jc_).p_order();
                    bool coprime = (k % p != 0);
                    check(r, o.has_value() && ((*o == 0) == coprime),
                          at("L(" + std::to_string(k) + ",1) order", p));
                });
            }
        }
        return r;
    }
};

}  // namespace detail

/// Run the full verification suite under the given options.
inline std::vector<CriterionResult> run_verification(const VerifyOptions& opt) {
    return detail::Verifier(opt).run();
}

}  // namespace qco
