/**
 * @file link.hpp
 * @brief Oriented framed-link diagrams: planar-diagram codes, orientation
 *        reconstruction, linking data, mirror/reverse/union, zero-framed
 *        cabling, sublinks, and exact linear algebra on linking matrices
 *        (inertia and Smith normal form).
 *
 * Diagram encoding (the "pd" convention used by files and the catalog):
 * each crossing is a 4-tuple [e0, e1, e2, e3] of edge labels listed
 * counterclockwise starting from the *incoming under-strand* edge e0.  The
 * under-strand runs e0 -> e2.  The over-strand occupies slots 1 and 3; its
 * direction is not stored but is reconstructed by orientation propagation
 * (every edge must have exactly one start and one end).  With the incoming
 * under-strand drawn pointing north, slot 1 is the east edge and slot 3 the
 * west edge; the crossing is positive exactly when the over-strand enters
 * at slot 3 (west, pointing east).
 *
 * Components are indexed canonically: components that own crossings come
 * first, ordered by their minimal edge label; crossingless ("free loop")
 * components come last.  framings[i] is the surgery framing of component i
 * in this order.  Framing is data, not writhe: the same pd serves every
 * framing, and the skein layer applies writhe corrections itself.
 */

#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qco/laurent.hpp"

namespace qco {

struct Crossing {
    std::array<long, 4> e;
    long operator[](int i) const { return e[static_cast<size_t>(i)]; }
};

class LinkDiagram {
  public:
    /// Marker for infinite Milnor degree in metadata.
    static constexpr long kInfiniteDegree = std::numeric_limits<long>::max();

    std::string name;
    long components = 0;  // total component count, including free loops
    std::vector<Crossing> crossings;
    std::vector<long> framings;                 // per component, canonical order
    std::optional<long> milnor_degree;          // kInfiniteDegree for infinity
    std::optional<long> max_cabling_index;

    // ---- derived data, filled by validate() ----
    std::vector<int> sign;           // per crossing, +1 or -1
    std::vector<int> over_in_slot;   // per crossing, 1 or 3
    std::map<long, long> edge_component;  // edge label -> component index
    long cycle_components = 0;       // components that own crossings
    long free_loops = 0;             // crossingless components

    LinkDiagram() = default;

    LinkDiagram(long comps, std::vector<Crossing> xs, std::vector<long> frs,
                std::string nm = "")
        : name(std::move(nm)), components(comps), crossings(std::move(xs)),
          framings(std::move(frs)) {
        validate();
    }

    long num_components() const { return components; }

    /**
     * @brief Check structural consistency and reconstruct orientations,
     *        crossing signs and component assignment.
     * @throws std::invalid_argument on malformed input.
     */
    void validate() {
        // Occurrences: each edge label must appear exactly twice over all slots.
        std::map<long, std::vector<std::pair<size_t, int>>> occ;
        for (size_t x = 0; x < crossings.size(); ++x)
            for (int s = 0; s < 4; ++s) occ[crossings[x][s]].push_back({x, s});
        for (const auto& [label, where] : occ)
            if (where.size() != 2)
                throw std::invalid_argument(
                    "LinkDiagram: edge label " + std::to_string(label) +
                    " appears " + std::to_string(where.size()) + " times (need 2)");

        // Orientation propagation.  incoming[(x,s)] = edge arrives at that slot.
        // Under slots are fixed: slot 0 incoming, slot 2 outgoing.  The two over
        // slots of one crossing are linked: exactly one of them is incoming.
        std::map<std::pair<size_t, int>, int> dir;  // +1 incoming, -1 outgoing, 0 unknown
        for (size_t x = 0; x < crossings.size(); ++x)
            for (int s = 0; s < 4; ++s) dir[{x, s}] = 0;

        std::deque<std::pair<size_t, int>> queue;
        auto assign = [&](size_t x, int s, int d) {
            int& cur = dir[{x, s}];
            if (cur == d) return;
            if (cur != 0 && cur != d)
                throw std::invalid_argument("LinkDiagram: inconsistent orientation");
            cur = d;
            queue.push_back({x, s});
        };
        for (size_t x = 0; x < crossings.size(); ++x) {
            assign(x, 0, +1);
            assign(x, 2, -1);
        }
        auto drain = [&]() {
            while (!queue.empty()) {
                auto [x, s] = queue.front();
                queue.pop_front();
                int d = dir[{x, s}];
                // The other occurrence of the same label has the opposite role.
                for (auto [x2, s2] : occ[crossings[x][s]])
                    if (!(x2 == x && s2 == s)) assign(x2, s2, -d);
                // The paired over slot has the opposite role too.
                if (s == 1 || s == 3) assign(x, 4 - s, -d);
            }
        };
        drain();
        // Components lying entirely over everything may remain free: fix an
        // arbitrary orientation (harmless: such components are split off).
        for (size_t x = 0; x < crossings.size(); ++x)
            if (dir[{x, 3}] == 0) {
                assign(x, 3, +1);
                drain();
            }

        over_in_slot.assign(crossings.size(), 0);
        sign.assign(crossings.size(), 0);
        for (size_t x = 0; x < crossings.size(); ++x) {
            over_in_slot[x] = dir[{x, 3}] == +1 ? 3 : 1;
            sign[x] = over_in_slot[x] == 3 ? +1 : -1;
        }

        // Trace components: from the incoming occurrence of an edge, the strand
        // continues on the crossing's outgoing edge of the same strand.
        std::map<long, long> next_edge;
        for (size_t x = 0; x < crossings.size(); ++x) {
            next_edge[crossings[x][0]] = crossings[x][2];
            int in = over_in_slot[x];
            next_edge[crossings[x][in]] = crossings[x][4 - in];
        }
        edge_component.clear();
        long comp = 0;
        for (const auto& [label, where] : occ) {
            if (edge_component.count(label)) continue;
            long e = label;
            while (!edge_component.count(e)) {
                edge_component[e] = comp;
                e = next_edge.at(e);
            }
            if (e != label && edge_component.at(e) != comp)
                throw std::invalid_argument("LinkDiagram: component trace error");
            ++comp;
        }
        cycle_components = comp;
        free_loops = components - comp;
        if (free_loops < 0)
            throw std::invalid_argument(
                "LinkDiagram: component count smaller than traced components");
        if (static_cast<long>(framings.size()) != components)
            throw std::invalid_argument("LinkDiagram: framing count mismatch");
    }

    long component_of_under(size_t x) const {
        return edge_component.at(crossings[x][0]);
    }
    long component_of_over(size_t x) const {
        return edge_component.at(crossings[x][1]);
    }

    /// Signed self-crossing count of component i (its diagram self-writhe).
    long self_writhe(long i) const {
        long w = 0;
        for (size_t x = 0; x < crossings.size(); ++x)
            if (component_of_under(x) == i && component_of_over(x) == i)
                w += sign[x];
        return w;
    }
};

// ---------------------------------------------------------------------------
// Linking matrix and exact linear algebra
// ---------------------------------------------------------------------------

struct LinkingMatrix {
    std::vector<std::vector<long>> a;  // symmetric, diagonal = framings
    long size() const { return static_cast<long>(a.size()); }

    /// λ_L = sum of pairwise linking numbers (above the diagonal).
    long lambda() const {
        long s = 0;
        for (long i = 0; i < size(); ++i)
            for (long j = i + 1; j < size(); ++j) s += a[i][j];
        return s;
    }
};

inline LinkingMatrix linking_matrix(const LinkDiagram& L) {
    long n = L.components;
    LinkingMatrix M;
    M.a.assign(n, std::vector<long>(n, 0));
    for (size_t x = 0; x < L.crossings.size(); ++x) {
        long i = L.component_of_under(x), j = L.component_of_over(x);
        if (i != j) {
            M.a[i][j] += L.sign[x];
            M.a[j][i] += L.sign[x];
        }
    }
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            if (i != j) {
                if (M.a[i][j] % 2 != 0)
                    throw std::logic_error("linking_matrix: odd signed crossing sum");
                M.a[i][j] /= 2;
            }
    for (long i = 0; i < n; ++i) M.a[i][i] = L.framings[i];
    return M;
}

/// Exact inertia (l+, l-, l0) of a symmetric integer matrix, by congruence
/// diagonalization over the rationals with explicit hyperbolic-pair handling.
struct SignatureTriple {
    long pos = 0, neg = 0, nul = 0;
    bool operator==(const SignatureTriple& o) const {
        return pos == o.pos && neg == o.neg && nul == o.nul;
    }
};

inline SignatureTriple signature_triple(const LinkingMatrix& M) {
    long n = M.size();
    std::vector<std::vector<mpq_class>> A(n, std::vector<mpq_class>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) A[i][j] = M.a[i][j];
    std::vector<long> live(n);
    std::iota(live.begin(), live.end(), 0);
    SignatureTriple sig;

    while (!live.empty()) {
        // Prefer a nonzero diagonal pivot.
        long pi = -1;
        for (long i : live)
            if (A[i][i] != 0) { pi = i; break; }
        if (pi >= 0) {
            mpq_class d = A[pi][pi];
            if (d > 0) ++sig.pos; else ++sig.neg;
            for (long j : live) {
                if (j == pi || A[j][pi] == 0) continue;
                mpq_class f = A[j][pi] / d;
                for (long k : live) A[j][k] -= f * A[pi][k];
            }
            for (long j : live) {
                if (j == pi) continue;
                mpq_class f = A[pi][j] / d;
                for (long k : live) A[k][j] -= f * A[k][pi];
            }
            live.erase(std::find(live.begin(), live.end(), pi));
            continue;
        }
        // All diagonal entries are zero: find an off-diagonal pivot.
        long hi = -1, hj = -1;
        for (size_t a = 0; a < live.size() && hi < 0; ++a)
            for (size_t b = a + 1; b < live.size(); ++b)
                if (A[live[a]][live[b]] != 0) { hi = live[a]; hj = live[b]; break; }
        if (hi < 0) {  // zero matrix remains
            sig.nul += static_cast<long>(live.size());
            break;
        }
        // Hyperbolic pair (0 c / c 0) contributes one positive and one negative
        // eigenvalue; clear its couplings to the rest, then remove both.
        mpq_class c = A[hi][hj];
        ++sig.pos;
        ++sig.neg;
        for (long k : live) {
            if (k == hi || k == hj) continue;
            mpq_class fi = A[k][hj] / c;  // kill A[k][hi]-coupling via row hi? (see below)
            mpq_class fj = A[k][hi] / c;
            // Row/column operations: r_k -= fi * r_hi + fj * r_hj, symmetric.
            for (long l : live) {
                A[k][l] -= fi * A[hi][l] + fj * A[hj][l];
            }
            for (long l : live) {
                A[l][k] -= fi * A[l][hi] + fj * A[l][hj];
            }
        }
        live.erase(std::find(live.begin(), live.end(), hj));
        live.erase(std::find(live.begin(), live.end(), hi));
    }
    return sig;
}

/// Homology data of the surgered manifold: b = rational nullity of the linking
/// matrix, b_p = nullity mod p, torsion order = |H_1| when finite.
struct HomologyData {
    long b = 0;
    long b_p = 0;
    std::optional<Int> torsion_order;  // nullopt when H_1 is infinite (b > 0)
};

/// Diagonal of the Smith normal form (no divisibility normalization needed
/// for rank/nullity data; entries beyond the rank are zero).
inline std::vector<Int> smith_diagonal(std::vector<std::vector<Int>> A) {
    size_t n = A.size();
    std::vector<Int> diag;
    size_t top = 0;
    while (top < n) {
        // Find the smallest-magnitude nonzero entry in the remaining block.
        size_t pi = n, pj = n;
        for (size_t i = top; i < n; ++i)
            for (size_t j = top; j < n; ++j)
                if (A[i][j] != 0 &&
                    (pi == n || abs(A[i][j]) < abs(A[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == n) break;  // all zero
        std::swap(A[top], A[pi]);
        for (size_t i = 0; i < n; ++i) std::swap(A[i][top], A[i][pj]);
        bool clean = true;
        for (size_t i = top + 1; i < n; ++i) {
            if (A[i][top] == 0) continue;
            Int q = A[i][top] / A[top][top];
            for (size_t j = top; j < n; ++j) A[i][j] -= q * A[top][j];
            if (A[i][top] != 0) clean = false;
        }
        for (size_t j = top + 1; j < n; ++j) {
            if (A[top][j] == 0) continue;
            Int q = A[top][j] / A[top][top];
            for (size_t i = top; i < n; ++i) A[i][j] -= q * A[i][top];
            if (A[top][j] != 0) clean = false;
        }
        if (!clean) continue;  // remainders left; pick a new, smaller pivot
        diag.push_back(abs(A[top][top]));
        ++top;
    }
    diag.resize(n, Int(0));
    return diag;
}

inline HomologyData homology(const LinkingMatrix& M, long p) {
    size_t n = static_cast<size_t>(M.size());
    std::vector<std::vector<Int>> A(n, std::vector<Int>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) A[i][j] = M.a[i][j];
    std::vector<Int> d = smith_diagonal(std::move(A));
    HomologyData hd;
    Int tor = 1;
    for (const Int& e : d) {
        if (e == 0) ++hd.b;
        else {
            tor *= e;
            if (e % p == 0) ++hd.b_p;
        }
    }
    hd.b_p += hd.b;
    if (hd.b == 0) hd.torsion_order = tor;
    return hd;
}

// ---------------------------------------------------------------------------
// Diagram surgery: mirror, reverse, union, sublinks, cabling
// ---------------------------------------------------------------------------

/// Mirror image: every crossing switches over/under strands, framings negate.
inline LinkDiagram mirror(const LinkDiagram& L) {
    std::vector<Crossing> xs;
    xs.reserve(L.crossings.size());
    for (size_t x = 0; x < L.crossings.size(); ++x) {
        const auto& e = L.crossings[x].e;
        // Rotate so the old over-in slot becomes the new under-in slot.
        if (L.over_in_slot[x] == 3)
            xs.push_back({{e[3], e[0], e[1], e[2]}});
        else
            xs.push_back({{e[1], e[2], e[3], e[0]}});
    }
    std::vector<long> fr;
    for (long f : L.framings) fr.push_back(-f);
    LinkDiagram R(L.components, std::move(xs), std::move(fr),
                  L.name.empty() ? "" : L.name + "_mirror");
    R.milnor_degree = L.milnor_degree;
    R.max_cabling_index = L.max_cabling_index;
    return R;
}

/// Reverse the orientation of component i (framings unchanged).
inline LinkDiagram reverse_component(const LinkDiagram& L, long i) {
    if (i < 0 || i >= L.components)
        throw std::invalid_argument("reverse_component: bad index");
    std::vector<Crossing> xs;
    xs.reserve(L.crossings.size());
    for (size_t x = 0; x < L.crossings.size(); ++x) {
        const auto& e = L.crossings[x].e;
        // Where i runs under, the under in/out swap: rotate the tuple by two.
        if (L.component_of_under(x) == i)
            xs.push_back({{e[2], e[3], e[0], e[1]}});
        else
            xs.push_back({{e[0], e[1], e[2], e[3]}});
    }
    LinkDiagram R(L.components, std::move(xs), L.framings, L.name);
    R.milnor_degree = L.milnor_degree;
    R.max_cabling_index = L.max_cabling_index;
    return R;
}

namespace detail {

/// Map each component index to the framing it carries, and remember which
/// original component each new canonical slot corresponds to.
inline std::vector<long> framings_for_order(
    const LinkDiagram& built_shape,  // validated, framings possibly placeholder
    const std::map<long, long>& new_edge_to_old_comp,
    const std::vector<long>& old_framings_by_comp,
    const std::vector<long>& free_loop_framings) {
    // For each traced (cycle) component of the new diagram, find its source.
    std::vector<long> fr(static_cast<size_t>(built_shape.components), 0);
    std::vector<bool> seen(static_cast<size_t>(built_shape.cycle_components), false);
    for (const auto& [edge, comp] : built_shape.edge_component) {
        if (seen[static_cast<size_t>(comp)]) continue;
        seen[static_cast<size_t>(comp)] = true;
        fr[static_cast<size_t>(comp)] =
            old_framings_by_comp[static_cast<size_t>(new_edge_to_old_comp.at(edge))];
    }
    for (size_t k = 0; k < free_loop_framings.size(); ++k)
        fr[static_cast<size_t>(built_shape.cycle_components) + k] =
            free_loop_framings[k];
    return fr;
}

}  // namespace detail

/// Disjoint (distant) union: relabel the second diagram's edges out of the way
/// and concatenate.  Framings follow their components.
inline LinkDiagram distant_union(const LinkDiagram& L1, const LinkDiagram& L2) {
    long offset = 1;
    for (const auto& x : L1.crossings)
        for (long e : x.e) offset = std::max(offset, e + 1);
    std::vector<Crossing> xs = L1.crossings;
    for (const auto& x : L2.crossings)
        xs.push_back({{x.e[0] + offset, x.e[1] + offset, x.e[2] + offset,
                       x.e[3] + offset}});

    // Source map for framings.
    std::map<long, long> src;  // new edge -> index into combined framing table
    std::vector<long> table;
    for (const auto& [e, c] : L1.edge_component) src[e] = c;
    for (long c = 0; c < L1.cycle_components; ++c) table.push_back(L1.framings[c]);
    long base = L1.cycle_components;
    for (const auto& [e, c] : L2.edge_component) src[e + offset] = base + c;
    for (long c = 0; c < L2.cycle_components; ++c) table.push_back(L2.framings[c]);
    std::vector<long> free_fr;
    for (long c = L1.cycle_components; c < L1.components; ++c)
        free_fr.push_back(L1.framings[c]);
    for (long c = L2.cycle_components; c < L2.components; ++c)
        free_fr.push_back(L2.framings[c]);

    LinkDiagram R(L1.components + L2.components, std::move(xs),
                  std::vector<long>(static_cast<size_t>(L1.components + L2.components), 0));
    R.framings = detail::framings_for_order(R, src, table, free_fr);
    return R;
}

/**
 * @brief Delete every component not in `keep`; strands of deleted components
 *        vanish and the edges of surviving strands passing through their
 *        crossings are merged.
 */
inline LinkDiagram select_components(const LinkDiagram& L,
                                     const std::set<long>& keep) {
    // Union-find over edge labels for merges.
    std::map<long, long> parent;
    std::function<long(long)> find = [&](long e) -> long {
        auto it = parent.find(e);
        if (it == parent.end() || it->second == e) return e;
        return it->second = find(it->second);
    };
    auto unite = [&](long a, long b) {
        long ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    };

    std::vector<size_t> kept_crossings;
    for (size_t x = 0; x < L.crossings.size(); ++x) {
        bool under_kept = keep.count(L.component_of_under(x)) > 0;
        bool over_kept = keep.count(L.component_of_over(x)) > 0;
        if (under_kept && over_kept) kept_crossings.push_back(x);
        else if (under_kept) unite(L.crossings[x][0], L.crossings[x][2]);
        else if (over_kept) unite(L.crossings[x][1], L.crossings[x][3]);
    }
    std::vector<Crossing> xs;
    for (size_t x : kept_crossings) {
        const auto& e = L.crossings[x].e;
        xs.push_back({{find(e[0]), find(e[1]), find(e[2]), find(e[3])}});
    }

    // Components that survive with no crossings become free loops.
    std::set<long> comps_with_crossings;
    for (const auto& x : xs)
        for (long e : x.e) comps_with_crossings.insert(L.edge_component.at(e));
    long free_count = 0;
    std::vector<long> free_fr;
    for (long c = 0; c < L.components; ++c)
        if (keep.count(c) && !comps_with_crossings.count(c)) {
            ++free_count;
            free_fr.push_back(L.framings[static_cast<size_t>(c)]);
        }

    std::map<long, long> src;
    for (const auto& x : xs)
        for (long e : x.e) src[e] = L.edge_component.at(e);

    long total = static_cast<long>(comps_with_crossings.size()) + free_count;
    LinkDiagram R(total, std::move(xs),
                  std::vector<long>(static_cast<size_t>(total), 0));
    R.framings = detail::framings_for_order(R, src, L.framings, free_fr);
    return R;
}

/// All 2^l sublinks (S, s = component count of S), empty link included.
inline std::vector<std::pair<LinkDiagram, long>> sublinks(const LinkDiagram& L) {
    long l = L.components;
    std::vector<std::pair<LinkDiagram, long>> out;
    for (unsigned long mask = 0; mask < (1ul << l); ++mask) {
        std::set<long> keep;
        for (long i = 0; i < l; ++i)
            if (mask & (1ul << i)) keep.insert(i);
        out.push_back({select_components(L, keep), static_cast<long>(keep.size())});
    }
    return out;
}

/**
 * @brief Zero-framed cabling: replace component i with c_i blackboard-parallel
 *        copies and insert -w_i full twists (w_i = self-writhe of component i)
 *        so all pairwise linking numbers among the copies vanish.
 *        Components with c_i = 0 are deleted.  Resulting framings are zero.
 */
inline LinkDiagram cable(const LinkDiagram& L0, const std::vector<long>& c0) {
    if (static_cast<long>(c0.size()) != L0.components)
        throw std::invalid_argument("cable: index count mismatch");
    for (long ci : c0)
        if (ci < 0) throw std::invalid_argument("cable: negative index");

    // Delete zero-index components first.
    std::set<long> keep;
    for (long i = 0; i < L0.components; ++i)
        if (c0[static_cast<size_t>(i)] > 0) keep.insert(i);
    if (keep.empty()) return LinkDiagram(0, {}, {});
    LinkDiagram L = L0;
    std::vector<long> c = c0;
    if (static_cast<long>(keep.size()) != L0.components) {
        // Map old component order to the order of the selected diagram.
        LinkDiagram S = select_components(L0, keep);
        std::vector<long> cs(static_cast<size_t>(S.components), 0);
        std::vector<bool> seen(static_cast<size_t>(S.cycle_components), false);
        // Cycle components: recover source via shared edge labels.
        for (const auto& [e, comp] : S.edge_component) {
            if (seen[static_cast<size_t>(comp)]) continue;
            seen[static_cast<size_t>(comp)] = true;
            cs[static_cast<size_t>(comp)] =
                c0[static_cast<size_t>(L0.edge_component.at(e))];
        }
        // Free loops of S: kept components without crossings, in original order.
        std::set<long> with_crossings;
        for (const auto& [e, comp] : S.edge_component)
            with_crossings.insert(L0.edge_component.at(e));
        long slot = S.cycle_components;
        for (long i = 0; i < L0.components; ++i) {
            if (!keep.count(i)) continue;
            bool has = false;
            for (const auto& [e, comp] : L0.edge_component)
                if (comp == i) { has = true; break; }
            if (has && with_crossings.count(i)) continue;
            cs[static_cast<size_t>(slot++)] = c0[static_cast<size_t>(i)];
        }
        L = S;
        c = cs;
    }

    long next = 1;
    auto fresh = [&]() { return next++; };

    // Per original edge end we keep the ordered list of cable stubs.
    // Ports are keyed by (crossing, slot); stub order is left-to-right with
    // respect to the strand direction.
    std::map<std::pair<size_t, int>, std::vector<long>> port;
    std::vector<Crossing> xs;

    for (size_t x = 0; x < L.crossings.size(); ++x) {
        long uc = L.component_of_under(x), oc = L.component_of_over(x);
        long cu = c[static_cast<size_t>(uc)], co = c[static_cast<size_t>(oc)];
        int s = L.sign[x];
        // Vertical segments v[k][t]: copy k of the under strand after crossing
        // t over-copies (t = 0 south stub, t = co north stub).  Horizontal
        // segments h[l][t] likewise for the over strand.
        std::vector<std::vector<long>> v(static_cast<size_t>(cu + 1)),
            hh(static_cast<size_t>(co + 1));
        for (long k = 1; k <= cu; ++k) {
            v[static_cast<size_t>(k)].assign(static_cast<size_t>(co + 1), 0);
            for (long t = 0; t <= co; ++t) v[static_cast<size_t>(k)][static_cast<size_t>(t)] = fresh();
        }
        for (long l = 1; l <= co; ++l) {
            hh[static_cast<size_t>(l)].assign(static_cast<size_t>(cu + 1), 0);
            for (long t = 0; t <= cu; ++t) hh[static_cast<size_t>(l)][static_cast<size_t>(t)] = fresh();
        }
        for (long k = 1; k <= cu; ++k)
            for (long l = 1; l <= co; ++l) {
                if (s > 0) {
                    // over runs west->east; copy u_k meets o_co first.
                    xs.push_back({{v[k][co - l], hh[l][k], v[k][co - l + 1],
                                   hh[l][k - 1]}});
                } else {
                    // over runs east->west; copy u_k meets o_1 first.
                    xs.push_back({{v[k][l - 1], hh[l][cu - k], v[k][l],
                                   hh[l][cu - k + 1]}});
                }
            }
        // Ports.  Under-in (slot 0): south stubs, k ascending = left-to-right.
        std::vector<long> p_in, p_out, q_in, q_out;
        for (long k = 1; k <= cu; ++k) {
            p_in.push_back(v[k][0]);
            p_out.push_back(v[k][co]);
        }
        for (long l = 1; l <= co; ++l) {
            q_in.push_back(hh[l][0]);
            q_out.push_back(hh[l][cu]);
        }
        port[{x, 0}] = p_in;
        port[{x, 2}] = p_out;
        int over_in = L.over_in_slot[x];
        port[{x, over_in}] = q_in;
        port[{x, 4 - over_in}] = q_out;
    }

    // One designated twist edge per component that needs compensating twists.
    std::map<long, long> twist_edge;  // component -> minimal edge label
    for (long i = 0; i < L.cycle_components; ++i) {
        if (c[static_cast<size_t>(i)] < 2) continue;
        long w = L.self_writhe(i);
        if (w == 0) continue;
        long best = std::numeric_limits<long>::max();
        for (const auto& [e, comp] : L.edge_component)
            if (comp == i) best = std::min(best, e);
        twist_edge[i] = best;
    }

    // Join ribbons along each original edge, inserting twists where designated.
    std::map<long, std::pair<std::pair<size_t, int>, std::pair<size_t, int>>> ends;
    for (size_t x = 0; x < L.crossings.size(); ++x) {
        // Incoming slots are heads; outgoing slots are tails.
        int over_in = L.over_in_slot[x];
        for (int s : {0, over_in}) ends[L.crossings[x][s]].first = {x, s};   // head
        for (int s : {2, 4 - over_in}) ends[L.crossings[x][s]].second = {x, s};  // tail
    }
    // Union-find to identify stub labels.
    std::map<long, long> parent;
    std::function<long(long)> find = [&](long e) -> long {
        auto it = parent.find(e);
        if (it == parent.end() || it->second == e) return e;
        return it->second = find(it->second);
    };
    auto unite = [&](long a, long b) {
        long ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    };

    for (const auto& [edge, hp] : ends) {
        auto head = hp.first;   // (crossing, slot) where the edge arrives
        auto tail = hp.second;  // where it departs
        long comp = L.edge_component.at(edge);
        long ci = c[static_cast<size_t>(comp)];
        std::vector<long> from = port.at(tail);  // out-stubs of the tail crossing
        std::vector<long> to = port.at(head);    // in-stubs of the head crossing
        auto te = twist_edge.find(comp);
        if (te != twist_edge.end() && te->second == edge) {
            long w = L.self_writhe(comp);
            int braid_sign = w > 0 ? -1 : +1;  // -w full twists
            std::vector<long> cur = from;
            for (long rep = 0; rep < std::labs(w); ++rep) {
                for (long full = 0; full < ci; ++full) {
                    for (long j = 0; j + 1 < ci; ++j) {
                        long a = cur[static_cast<size_t>(j)];
                        long b = cur[static_cast<size_t>(j + 1)];
                        long xo = fresh(), yo = fresh();
                        if (braid_sign > 0) {
                            // left strand over: tuple (b, a_out, b_out, a)
                            xs.push_back({{b, yo, xo, a}});
                        } else {
                            // right strand over: tuple (a, b, a_out, b_out)
                            xs.push_back({{a, b, yo, xo}});
                        }
                        cur[static_cast<size_t>(j)] = xo;     // continuation of b
                        cur[static_cast<size_t>(j + 1)] = yo; // continuation of a
                    }
                }
            }
            for (long k = 0; k < ci; ++k)
                unite(cur[static_cast<size_t>(k)], to[static_cast<size_t>(k)]);
        } else {
            for (long k = 0; k < ci; ++k)
                unite(from[static_cast<size_t>(k)], to[static_cast<size_t>(k)]);
        }
    }

    for (auto& x : xs)
        x = {{find(x.e[0]), find(x.e[1]), find(x.e[2]), find(x.e[3])}};

    long total = 0;
    for (long i = 0; i < L.components; ++i) total += c[static_cast<size_t>(i)];
    LinkDiagram R(total, std::move(xs),
                  std::vector<long>(static_cast<size_t>(total), 0));
    return R;
}

// ---------------------------------------------------------------------------
// JSON serialization (link file format)
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const LinkDiagram& L) {
    nlohmann::json j;
    j["name"] = L.name;
    j["components"] = L.components;
    nlohmann::json pd = nlohmann::json::array();
    for (const auto& x : L.crossings)
        pd.push_back({x.e[0], x.e[1], x.e[2], x.e[3]});
    j["pd"] = pd;
    j["framings"] = L.framings;
    if (!L.milnor_degree)
        j["milnor_degree"] = nullptr;
    else if (*L.milnor_degree == LinkDiagram::kInfiniteDegree)
        j["milnor_degree"] = "inf";
    else
        j["milnor_degree"] = *L.milnor_degree;
    if (L.max_cabling_index)
        j["max_cabling_index"] = *L.max_cabling_index;
    else
        j["max_cabling_index"] = nullptr;
    return j;
}

inline LinkDiagram link_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("components") || !j.contains("pd") ||
        !j.contains("framings"))
        throw std::invalid_argument("link JSON: missing required fields");
    std::vector<Crossing> xs;
    for (const auto& t : j.at("pd")) {
        if (!t.is_array() || t.size() != 4)
            throw std::invalid_argument("link JSON: pd entries must be 4-tuples");
        xs.push_back({{t[0].get<long>(), t[1].get<long>(), t[2].get<long>(),
                       t[3].get<long>()}});
    }
    LinkDiagram L(j.at("components").get<long>(), std::move(xs),
                  j.at("framings").get<std::vector<long>>(),
                  j.value("name", std::string()));
    if (j.contains("milnor_degree") && !j.at("milnor_degree").is_null()) {
        if (j.at("milnor_degree").is_string()) {
            if (j.at("milnor_degree").get<std::string>() != "inf")
                throw std::invalid_argument("link JSON: bad milnor_degree");
            L.milnor_degree = LinkDiagram::kInfiniteDegree;
        } else {
            L.milnor_degree = j.at("milnor_degree").get<long>();
        }
    }
    if (j.contains("max_cabling_index") && !j.at("max_cabling_index").is_null())
        L.max_cabling_index = j.at("max_cabling_index").get<long>();
    return L;
}

/// Parse the canonical link file format.
inline LinkDiagram parse_link(const std::string& text) {
    return link_from_json(nlohmann::json::parse(text));
}

/// Deterministic serialization key used by memoization tables.
inline std::string diagram_key(const LinkDiagram& L) {
    std::ostringstream os;
    os << L.components << ";";
    for (const auto& x : L.crossings)
        os << x.e[0] << "," << x.e[1] << "," << x.e[2] << "," << x.e[3] << ";";
    return os.str();
}

// ---------------------------------------------------------------------------
// Braid closures (used to build the catalog diagrams)
// ---------------------------------------------------------------------------

/**
 * @brief Closure of a braid on `strands` strands.  The word lists generators:
 *        +j for σ_j (left strand passes over), -j for σ_j^{-1}.
 */
inline LinkDiagram braid_closure(long strands, const std::vector<long>& word,
                                 std::vector<long> framings = {},
                                 std::string name = "") {
    long next = strands + 1;
    std::vector<long> pos(static_cast<size_t>(strands));
    std::iota(pos.begin(), pos.end(), 1);  // initial edge labels 1..strands
    std::vector<Crossing> xs;
    for (long g : word) {
        long j = std::labs(g);
        if (j < 1 || j >= strands)
            throw std::invalid_argument("braid_closure: generator out of range");
        long a = pos[static_cast<size_t>(j - 1)];  // left strand in
        long b = pos[static_cast<size_t>(j)];      // right strand in
        long xo = next++, yo = next++;             // b-out (left), a-out (right)
        if (g > 0)
            xs.push_back({{b, yo, xo, a}});  // positive: left strand over
        else
            xs.push_back({{a, b, yo, xo}});  // negative: right strand over
        pos[static_cast<size_t>(j - 1)] = xo;
        pos[static_cast<size_t>(j)] = yo;
    }
    // Close up: final label at position i is the same edge as initial label i+1.
    std::map<long, long> rename;
    long loops = 0;
    for (long i = 0; i < strands; ++i) {
        long fin = pos[static_cast<size_t>(i)];
        if (fin == i + 1) ++loops;  // untouched strand: crossingless loop
        else rename[fin] = i + 1;
    }
    // Renames can chain only one level (final labels are distinct from the
    // initial ones unless untouched), so a single pass suffices.
    for (auto& x : xs)
        for (auto& e : x.e) {
            auto it = rename.find(e);
            if (it != rename.end()) e = it->second;
        }
    // Count components (probe with the maximal possible count, then correct).
    LinkDiagram probe(strands, xs,
                      std::vector<long>(static_cast<size_t>(strands), 0));
    long comps = probe.cycle_components + loops;
    if (framings.empty()) framings.assign(static_cast<size_t>(comps), 0);
    return LinkDiagram(comps, std::move(xs), std::move(framings), std::move(name));
}

}  // namespace qco
