/**
 * @file catalog.hpp
 * @brief Built-in link diagrams, shipped as embedded link files (the JSON
 *        format of link_from_json) with trusted metadata.
 *
 * Provenance of the diagrams (all produced with braid_closure and mirror):
 * - hopf:          closure of σ1² (positive Hopf link).
 * - trefoil_left:  closure of σ1³.  With the calibrated skein variable its
 *                  Jones polynomial carries positive powers of t, so this is
 *                  the left-handed trefoil; trefoil_right is its mirror.
 * - whitehead:     closure of σ1 σ2⁻¹ σ1 σ2⁻¹ σ1, oriented so that its
 *                  zero-framed p-bracket is b_o·t_1 (not b_o·t_{-1}).
 * - borromean:     closure of (σ1 σ2⁻¹)³.
 * - borromean_cable_±2: the Borromean rings with one component replaced by
 *                  its (±2,1)-cable: the corresponding braid strand is
 *                  doubled (block cabling of the word) and the two copies
 *                  are joined by a single splice crossing; the splice sign
 *                  is calibrated so that the zero-framed p-bracket equals
 *                  b_o²·Σ_{1≤j≤k≤m} q^{∓2j(j-1)}.
 * - fig3b:         a three-component chain of two Whitehead clasps (the
 *                  middle component forms a Whitehead clasp with each outer
 *                  one); all linking numbers vanish and the link is a
 *                  candidate presentation for a manifold H_1-bordant to
 *                  #³(S¹×S²).  No Milnor-degree metadata is asserted.
 *
 * Chirality and splice-sign calibration are locked by the acceptance tests.
 */

#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "qco/link.hpp"

namespace qco {

namespace detail {

inline const std::vector<std::pair<std::string, const char*>>& catalog_files() {
    static const std::vector<std::pair<std::string, const char*>> files = {
        {"unknot",
         R"({"components":1,"framings":[0],"max_cabling_index":1,"milnor_degree":"inf","name":"unknot","pd":[]})"},
        {"hopf",
         R"({"components":2,"framings":[0,0],"max_cabling_index":1,"milnor_degree":1,"name":"hopf","pd":[[2,4,3,1],[4,2,1,3]]})"},
        {"trefoil_left",
         R"({"components":1,"framings":[0],"max_cabling_index":1,"milnor_degree":"inf","name":"trefoil_left","pd":[[2,4,3,1],[4,6,5,3],[6,2,1,5]]})"},
        {"trefoil_right",
         R"({"components":1,"framings":[0],"max_cabling_index":1,"milnor_degree":"inf","name":"trefoil_right","pd":[[1,2,4,3],[3,4,6,5],[5,6,2,1]]})"},
        {"whitehead",
         R"({"components":2,"framings":[0,0],"max_cabling_index":1,"milnor_degree":3,"name":"whitehead","pd":[[2,5,4,1],[5,3,7,6],[6,9,8,4],[9,7,3,10],[10,2,1,8]]})"},
        {"borromean",
         R"({"components":3,"framings":[0,0,0],"max_cabling_index":1,"milnor_degree":2,"name":"borromean","pd":[[2,5,4,1],[5,3,7,6],[6,9,8,4],[9,7,11,10],[10,13,1,8],[13,11,3,2]]})"},
        {"borromean_cable_2",
         R"({"components":3,"framings":[0,0,0],"max_cabling_index":null,"milnor_degree":2,"name":"borromean_cable_2","pd":[[2,6,5,1],[6,3,8,7],[8,4,10,9],[7,12,11,5],[9,14,13,12],[14,10,16,15],[15,18,17,13],[17,20,1,11],[18,16,22,21],[20,21,24,2],[24,22,4,3]]})"},
        {"borromean_cable_-2",
         R"({"components":3,"framings":[0,0,0],"max_cabling_index":null,"milnor_degree":2,"name":"borromean_cable_-2","pd":[[2,6,5,1],[6,3,8,7],[8,4,10,9],[7,12,11,5],[9,14,13,12],[14,10,16,15],[15,18,17,13],[17,20,1,11],[18,16,22,21],[20,21,24,2],[22,4,3,24]]})"},
        {"fig3b",
         R"({"components":3,"framings":[0,0,0],"max_cabling_index":null,"milnor_degree":null,"name":"fig3b","pd":[[2,7,6,1],[7,3,9,8],[8,11,10,6],[11,9,13,12],[12,2,1,10],[4,17,16,13],[17,5,19,18],[18,21,20,16],[21,19,5,22],[22,4,3,20]]})"},
    };
    return files;
}

}  // namespace detail

inline std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& [name, text] : detail::catalog_files()) names.push_back(name);
    names.push_back("unknot_<a>");
    return names;
}

/// The raw embedded link file for a fixed catalog entry.
inline std::string catalog_file(const std::string& name) {
    for (const auto& [n, text] : detail::catalog_files())
        if (n == name) return text;
    throw std::invalid_argument("catalog: unknown link '" + name + "'");
}

/**
 * @brief Look up a catalog diagram by name.  Fixed entries are parsed from
 *        the embedded files; "unknot_<a>" (any integer a) yields the
 *        a-framed unknot.
 */
inline LinkDiagram catalog(const std::string& name) {
    if (name.rfind("unknot_", 0) == 0 && name.size() > 7) {
        const std::string num = name.substr(7);
        char* end = nullptr;
        long a = std::strtol(num.c_str(), &end, 10);
        if (end && *end == '\0' && !num.empty()) {
            LinkDiagram L(1, {}, {a}, name);
            L.milnor_degree = LinkDiagram::kInfiniteDegree;
            L.max_cabling_index = 1;
            return L;
        }
    }
    return parse_link(catalog_file(name));
}

}  // namespace qco
