/**
 * @file invariant.hpp
 * @brief The p-bracket of framed links (two independent computation paths),
 *        the p-norm, the quantum SO(3) invariant tau_p, quantum p-orders,
 *        the finite-type projections tau_p^d, and the bound-verification
 *        suite.
 */

#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "qco/cyclotomic.hpp"
#include "qco/laurent.hpp"
#include "qco/link.hpp"
#include "qco/skein.hpp"

namespace qco {

/**
 * @brief The p-bracket as a Laurent polynomial, before reduction:
 *        <L> = sum over colorings k in {1..(p-1)/2}^ell of
 *        prod_i (a_i, k_i] * J_{L,k}.
 */
inline LaurentPoly p_bracket_poly(const LinkDiagram& L, PrimeLevel level,
                                  JonesCache* cache = nullptr) {
    JonesCache local(64);
    JonesCache& jc = cache ? *cache : local;
    long l = L.components;
    std::vector<long> k(static_cast<size_t>(l), 1);
    LaurentPoly total;
    for (;;) {
        LaurentPoly w = LaurentPoly::constant(1);
        for (long i = 0; i < l; ++i)
            w *= framed_quantum_int(L.framings[static_cast<size_t>(i)],
                                    k[static_cast<size_t>(i)]);
        total += w * colored_jones(L, k, &jc);
        long i = 0;
        for (; i < l; ++i) {
            if (k[static_cast<size_t>(i)] < level.m) {
                ++k[static_cast<size_t>(i)];
                break;
            }
            k[static_cast<size_t>(i)] = 1;
        }
        if (i == l) break;
    }
    return total;
}

/// p-bracket reduced into Λ_p.
inline CycElem p_bracket_direct(const LinkDiagram& L, PrimeLevel level,
                                JonesCache* cache = nullptr) {
    return CycElem::reduce(p_bracket_poly(L, level, cache), level);
}

/**
 * @brief Independent p-bracket path, via the sublink transform:
 *        <L> = sum over cablings c in {0..n}^ell of
 *        prod_i (a_i | c_i) * phi_{L^c}.
 *        A zero cabling index deletes the component (its parallel is empty).
 */
inline CycElem p_bracket_via_phi(const LinkDiagram& L, PrimeLevel level,
                                 JonesCache* cache = nullptr) {
    JonesCache local(64);
    JonesCache& jc = cache ? *cache : local;
    long l = L.components;
    std::vector<long> c(static_cast<size_t>(l), 0);
    CycElem total = CycElem::reduce(LaurentPoly(), level);
    for (;;) {
        CycElem coef = CycElem::one(level);
        for (long i = 0; i < l; ++i)
            coef = coef * p_sum(L.framings[static_cast<size_t>(i)],
                                c[static_cast<size_t>(i)], level);
        if (!coef.is_zero()) {
            LaurentPoly phi = ohtsuki_phi(cable(L, c), &jc);
            total = total + coef * CycElem::reduce(phi, level);
        }
        long i = 0;
        for (; i < l; ++i) {
            if (c[static_cast<size_t>(i)] < level.n) {
                ++c[static_cast<size_t>(i)];
                break;
            }
            c[static_cast<size_t>(i)] = 0;
        }
        if (i == l) break;
    }
    return total;
}

/// p-norm |L| = b_1^{l+} b_{-1}^{l-} (b_o/h^n)^{l0}, which always equals
/// u h^{n*ell} for a unit u; the factor b_o/h^n is computed as u_o h^n.
inline CycElem p_norm(const LinkDiagram& L, PrimeLevel level) {
    SignatureTriple s = signature_triple(linking_matrix(L));
    CycElem r = unknot_bracket_b(1, level).pow(static_cast<unsigned long>(s.pos));
    r = r * unknot_bracket_b(-1, level).pow(static_cast<unsigned long>(s.neg));
    CycElem b_o_over_hn =
        unknot_unit_u(0, level) * CycElem::h_power(level.n, level);
    r = r * b_o_over_hn.pow(static_cast<unsigned long>(s.nul));
    auto o = r.p_order();
    if (!o || *o != level.n * L.components)
        throw std::logic_error("p_norm: p-order is not n*ell");
    return r;
}

/// Unit part u = u_1^{l+} u_{-1}^{l-} u_o^{l0} of |L| = u h^{n*ell}.
inline CycElem p_norm_unit(const LinkDiagram& L, PrimeLevel level) {
    SignatureTriple s = signature_triple(linking_matrix(L));
    CycElem u = unknot_unit_u(1, level).pow(static_cast<unsigned long>(s.pos));
    u = u * unknot_unit_u(-1, level).pow(static_cast<unsigned long>(s.neg));
    u = u * unknot_unit_u(0, level).pow(static_cast<unsigned long>(s.nul));
    return u;
}

/**
 * @brief tau_p(M) = <L>/|L|, computed by exact unit inversion:
 *        tau = <L> * u^{-1} / h^{n*ell} with |L| = u h^{n*ell}.
 *        The p-order relation o_p(M) = o_p<L> - n*ell is checked
 *        independently; integrality is implied by the exact division
 *        succeeding.
 */
inline CycElem tau_p_value(const LinkDiagram& L, PrimeLevel level,
                           JonesCache* cache = nullptr) {
    CycElem br = p_bracket_direct(L, level, cache);
    CycElem u = p_norm_unit(L, level);
    long shift = level.n * L.components;
    CycElem tau = (br * u.invert_unit()).div_h_power(shift);
    auto o_br = br.p_order();
    auto o_tau = tau.p_order();
    if (o_br.has_value() != o_tau.has_value() ||
        (o_br && *o_tau != *o_br - shift))
        throw std::logic_error("tau_p: order relation cross-check failed");
    return tau;
}

/// Finite-type projection tau_p^d = pi^d(tau_p) in Z_{p^k};
/// returns (value, modulus).
inline std::pair<Int, Int> tau_p_d(const LinkDiagram& L, PrimeLevel level,
                                   long d, JonesCache* cache = nullptr) {
    return tau_p_value(L, level, cache).pi_d(d);
}

// ---------------------------------------------------------------------------
// Bound verification and the full report
// ---------------------------------------------------------------------------

/// One verified inequality: required <= observed (values as decimal/rational
/// strings; "inf" for infinite orders).
struct BoundCheck {
    std::string name;
    std::string required;
    std::string observed;
    bool pass = false;
    bool skipped = false;
    std::string note;
};

namespace detail {

inline std::string order_str(const std::optional<long>& o) {
    return o ? std::to_string(*o) : std::string("inf");
}

/// observed >= num/den, treating nullopt as +infinity.
inline BoundCheck make_bound(std::string name, const Int& num, const Int& den,
                             const std::optional<long>& observed) {
    BoundCheck b;
    b.name = std::move(name);
    mpq_class req(num, den);
    req.canonicalize();
    std::ostringstream os;
    os << req;
    b.required = os.str();
    b.observed = order_str(observed);
    b.pass = !observed || mpq_class(*observed) >= req;
    return b;
}

inline BoundCheck skip_bound(std::string name, std::string note) {
    BoundCheck b;
    b.name = std::move(name);
    b.skipped = true;
    b.pass = true;
    b.note = std::move(note);
    return b;
}

}  // namespace detail

/**
 * @brief Evaluate the order bounds applicable to a surgery presentation:
 *        for the p-bracket, the manifold order, the Ohtsuki polynomial
 *        and the H_1-bordism class (the latter only when the caller flags
 *        the input).  Bounds whose metadata (Milnor degree,
 *        maximum cabling index) is absent are reported as skipped.
 */
inline std::vector<BoundCheck> verify_bounds(
    const LinkDiagram& L, PrimeLevel level, JonesCache* cache = nullptr,
    std::optional<long> h1_bordant_betti = std::nullopt) {
    JonesCache local(64);
    JonesCache& jc = cache ? *cache : local;
    std::vector<BoundCheck> out;

    const long l = L.components;
    const long n = level.n;
    HomologyData hom = homology(linking_matrix(L), level.p);

    CycElem br = p_bracket_direct(L, level, &jc);
    std::optional<long> o_br = br.p_order();
    std::optional<long> o_m;
    if (o_br) o_m = *o_br - n * l;  // order relation for tau_p

    // Bracket bound: o_p<L> >= (l + b(d-1)/(d+1)) n over the Milnor degree
    // d, with b = number of framings divisible by p.
    long b_framings = 0;
    for (long a : L.framings)
        if (a % level.p == 0) ++b_framings;
    if (L.milnor_degree) {
        long d = *L.milnor_degree;
        Int num, den;
        if (d == LinkDiagram::kInfiniteDegree) {
            num = Int(l + b_framings) * n;
            den = 1;
        } else {
            num = (Int(l) * (d + 1) + Int(b_framings) * (d - 1)) * n;
            den = d + 1;
        }
        out.push_back(detail::make_bound("bracket_order", num, den, o_br));
        bool diagonal =
            d >= 2;  // kInfiniteDegree compares >= 2 as well (it is LONG_MAX)
        if (diagonal && b_framings > 0)
            out.push_back(detail::make_bound("bracket_order_diagonal", Int(l + 1) * n,
                                             Int(1), o_br));
    } else {
        out.push_back(detail::skip_bound("bracket_order",
                                         "Milnor degree metadata absent"));
    }

    // Homology bound: o_p(M) >= b_p n / 3, and >= n when b_p > 0.
    out.push_back(
        detail::make_bound("homology_order", Int(hom.b_p) * n, Int(3), o_m));
    if (hom.b_p > 0)
        out.push_back(
            detail::make_bound("homology_order_positive", Int(n), Int(1), o_m));

    // Ohtsuki polynomial: order(phi_L) >= 2 l d/(d+1); >= l + m for diagonal
    // links of maximum cabling index m.
    std::optional<long> o_phi = order(ohtsuki_phi(L, &jc));
    if (L.milnor_degree) {
        long d = *L.milnor_degree;
        Int num, den;
        if (d == LinkDiagram::kInfiniteDegree) {
            num = 2 * l;
            den = 1;
        } else {
            num = Int(2 * l) * d;
            den = d + 1;
        }
        out.push_back(detail::make_bound("phi_order", num, den, o_phi));
        if (d >= 2 && L.max_cabling_index)
            out.push_back(detail::make_bound(
                "phi_order_cabling", Int(l + *L.max_cabling_index), Int(1), o_phi));
    } else {
        out.push_back(
            detail::skip_bound("phi_order", "Milnor degree metadata absent"));
    }

    // Bordism bound: o_p(M) >= b n / 2 for manifolds H_1-bordant to
    // #^b S^1 x S^2.
    if (h1_bordant_betti)
        out.push_back(detail::make_bound(
            "bordism_order", Int(*h1_bordant_betti) * n, Int(2), o_m));

    return out;
}

/// Full invariant report: tau_p, orders, projections and the bound suite.
struct InvariantReport {
    long p = 0;
    CycElem tau;
    std::optional<long> order;  // o_p(M); nullopt when tau = 0
    long b = 0;
    long b_p = 0;
    std::optional<Int> torsion_order;  // |H_1| when b = 0
    std::vector<std::tuple<long, Int, Int>> projections;  // (d, value, mod)
    std::vector<BoundCheck> bounds;

    InvariantReport() : tau(CycElem::reduce(LaurentPoly(), PrimeLevel(3))) {}
};

inline InvariantReport tau_p(const LinkDiagram& L, PrimeLevel level,
                             long depth = 0, JonesCache* cache = nullptr,
                             std::optional<long> h1_bordant_betti = std::nullopt) {
    JonesCache local(64);
    JonesCache& jc = cache ? *cache : local;
    InvariantReport rep;
    rep.p = level.p;
    rep.tau = tau_p_value(L, level, &jc);
    rep.order = rep.tau.p_order();
    if (rep.order && *rep.order < 0)
        throw std::logic_error("tau_p: negative p-order");
    HomologyData hom = homology(linking_matrix(L), level.p);
    rep.b = hom.b;
    rep.b_p = hom.b_p;
    rep.torsion_order = hom.torsion_order;
    for (long d = 0; d <= depth; ++d) {
        auto [v, mod] = rep.tau.pi_d(d);
        rep.projections.emplace_back(d, v, mod);
    }
    rep.bounds = verify_bounds(L, level, &jc, h1_bordant_betti);
    return rep;
}

// ---------------------------------------------------------------------------
// JSON rendering (canonical: sorted keys, decimal-string integers)
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const CycElem& x) {
    nlohmann::json j;
    j["p"] = x.level().p;
    std::vector<std::string> coeffs;
    for (const Int& c : x.reduced()) coeffs.push_back(c.get_str());
    j["reduced"] = coeffs;
    return j;
}

inline nlohmann::json to_json(const BoundCheck& b) {
    nlohmann::json j;
    j["name"] = b.name;
    j["required"] = b.required;
    j["observed"] = b.observed;
    j["pass"] = b.pass;
    if (b.skipped) {
        j["skipped"] = true;
        j["note"] = b.note;
    }
    return j;
}

inline nlohmann::json to_json(const InvariantReport& r) {
    nlohmann::json j;
    j["p"] = r.p;
    j["tau"] = to_json(r.tau);
    j["order"] = r.order ? nlohmann::json(*r.order) : nlohmann::json("inf");
    j["b"] = r.b;
    j["b_p"] = r.b_p;
    j["torsion"] = r.torsion_order ? nlohmann::json(r.torsion_order->get_str())
                                   : nlohmann::json("inf");
    nlohmann::json proj = nlohmann::json::array();
    for (const auto& [d, v, mod] : r.projections)
        proj.push_back({d, v.get_str(), mod.get_str()});
    j["projections"] = proj;
    nlohmann::json bounds = nlohmann::json::array();
    for (const BoundCheck& b : r.bounds) bounds.push_back(to_json(b));
    j["bounds"] = bounds;
    return j;
}

}  // namespace qco
