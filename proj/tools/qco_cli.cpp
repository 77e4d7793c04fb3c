/**
 * @file qco_cli.cpp
 * @brief Command-line front end: catalog listing, p-bracket and invariant
 *        computation, special-sum tables, and the verification suite.
 *
 * All output is canonical JSON (sorted keys, arbitrary-precision integers as
 * decimal strings), written to stdout or --out.  Exit status: 0 = success,
 * 1 = verification failure, 2 = usage or parse error.
 */

#include <CLI11.hpp>

#include <exception>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qco/catalog.hpp"
#include "qco/cyclotomic.hpp"
#include "qco/invariant.hpp"
#include "qco/link.hpp"
#include "qco/skein.hpp"
#include "qco/verify.hpp"

namespace {

using nlohmann::json;
using namespace qco;

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Shared flags for the computing subcommands.
struct RunConfig {
    std::vector<long> primes;
    std::string link_source;
    long depth = 0;
    long max_crossings = 48;
    long max_width = 20;
    std::string out_path;
    long jobs = 1;
};

std::vector<PrimeLevel> parse_levels(const std::vector<long>& primes) {
    if (primes.empty()) throw UsageError("at least one --prime is required");
    std::vector<PrimeLevel> levels;
    for (long p : primes) {
        try {
            levels.emplace_back(p);
        } catch (const std::invalid_argument&) {
            throw UsageError("p must be an odd prime (got " +
                             std::to_string(p) + ")");
        }
    }
    return levels;
}

LinkDiagram load_link(const std::string& source) {
    if (source.empty()) throw UsageError("--link is required");
    std::ifstream in(source);
    if (in) {
        std::ostringstream text;
        text << in.rdbuf();
        try {
            return parse_link(text.str());
        } catch (const std::exception& e) {
            throw UsageError("cannot parse link file '" + source +
                             "': " + e.what());
        }
    }
    try {
        return catalog(source);
    } catch (const std::exception& e) {
        throw UsageError(std::string(e.what()));
    }
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot open output file '" + out_path + "'");
    out << j.dump(2) << "\n";
}

json coeff_strings(const CycElem& x) {
    json a = json::array();
    for (const Int& c : x.reduced()) a.push_back(c.get_str());
    return a;
}

json order_json(const std::optional<long>& o) {
    return o ? json(*o) : json("inf");
}

/// Run one job per requested level, in parallel when jobs > 1, and assemble
/// the reports in request order.
json per_level(const std::vector<PrimeLevel>& levels, long jobs,
               const std::function<json(PrimeLevel)>& job) {
    json results = json::array();
    if (jobs <= 1) {
        for (PrimeLevel lv : levels) results.push_back(job(lv));
        return results;
    }
    std::vector<std::future<json>> futs;
    for (PrimeLevel lv : levels)
        futs.push_back(std::async(std::launch::async, job, lv));
    for (auto& f : futs) results.push_back(f.get());
    return results;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_catalog(const std::string& out_path) {
    json entries = json::array();
    for (const std::string& name : catalog_names()) {
        if (name == "unknot_<a>") continue;
        LinkDiagram L = catalog(name);
        json e = to_json(L);
        e["crossings"] = L.crossings.size();
        entries.push_back(e);
    }
    json j;
    j["links"] = entries;
    j["dynamic"] = "unknot_<a>: the a-framed unknot, for any integer a";
    emit(j, out_path);
    return 0;
}

int cmd_bracket(const RunConfig& cfg) {
    LinkDiagram L = load_link(cfg.link_source);
    std::vector<PrimeLevel> levels = parse_levels(cfg.primes);
    json results = per_level(levels, cfg.jobs, [&](PrimeLevel lv) {
        json r;
        r["p"] = lv.p;
        if (!bracket_feasible(L, lv, cfg.max_crossings)) {
            r["skipped"] = "budget";
            return r;
        }
        JonesCache jc(cfg.max_width);
        try {
            CycElem direct = p_bracket_direct(L, lv, &jc);
            CycElem via_phi = p_bracket_via_phi(L, lv, &jc);
            r["reduced"] = coeff_strings(direct);
            r["order"] = order_json(direct.p_order());
            if (direct.is_zero()) {
                r["normal"] = nullptr;
            } else {
                NormalForm nf = direct.normal_form();
                json coeffs = json::array();
                for (const Int& c : nf.coeffs) coeffs.push_back(c.get_str());
                r["normal"] = {{"shift", nf.k0}, {"coeffs", coeffs}};
            }
            r["paths"] = {{"direct", coeff_strings(direct)},
                          {"via_phi", coeff_strings(via_phi)},
                          {"agree", direct == via_phi}};
        } catch (const BudgetExceeded&) {
            r["skipped"] = "budget";
        }
        return r;
    });
    json j;
    j["link"] = L.name;
    j["results"] = results;
    emit(j, cfg.out_path);
    return 0;
}

int cmd_invariant(const RunConfig& cfg) {
    LinkDiagram L = load_link(cfg.link_source);
    std::vector<PrimeLevel> levels = parse_levels(cfg.primes);
    json results = per_level(levels, cfg.jobs, [&](PrimeLevel lv) {
        if (!bracket_feasible(L, lv, cfg.max_crossings))
            return json{{"p", lv.p}, {"skipped", "budget"}};
        JonesCache jc(cfg.max_width);
        try {
            return to_json(tau_p(L, lv, cfg.depth, &jc));
        } catch (const BudgetExceeded&) {
            return json{{"p", lv.p}, {"skipped", "budget"}};
        }
    });
    json j;
    j["link"] = L.name;
    j["results"] = results;
    emit(j, cfg.out_path);
    return 0;
}

int cmd_sums(const RunConfig& cfg) {
    std::vector<PrimeLevel> levels = parse_levels(cfg.primes);
    json results = per_level(levels, cfg.jobs, [&](PrimeLevel lv) {
        json r;
        r["p"] = lv.p;
        r["n"] = lv.n;
        r["m"] = lv.m;

        // (a|c) p-orders with the lower bound r(n-c) and sharpness flags.
        json psums = json::array();
        for (long a = 0; a < lv.p; ++a) {
            long mult = (a % lv.p == 0) ? 2 : 1;
            for (long c = 0; c <= lv.n; ++c) {
                auto o = p_sum(a, c, lv).p_order();
                long req = mult * (lv.n - c);
                psums.push_back({{"a", a},
                                 {"c", c},
                                 {"order", order_json(o)},
                                 {"required", req},
                                 {"meets_bound", !o || *o >= req},
                                 {"sharp", o.has_value() && *o == req}});
            }
        }
        r["p_sums"] = psums;

        // Gauss sums vs the closed form (a|p)(-1)^m [m]! z^m.
        LaurentPoly core = quantum_factorial(lv.m) *
                           z_elem().pow(static_cast<unsigned long>(lv.m));
        if (lv.m & 1) core = -core;
        CycElem core_r = CycElem::reduce(core, lv);
        CycElem minus_core = CycElem::from_int(Int(-1), lv) * core_r;
        CycElem signed_p =
            CycElem::from_int((lv.m & 1) ? Int(-lv.p) : Int(lv.p), lv);
        json gauss = json::array();
        for (long a = 1; a < lv.p; ++a) {
            CycElem G = gauss_sum(a, lv);
            CycElem expect = legendre(a, lv.p) < 0 ? minus_core : core_r;
            gauss.push_back({{"a", a},
                             {"legendre", legendre(a, lv.p)},
                             {"matches_closed_form", G == expect},
                             {"square_is_signed_p", G * G == signed_p}});
        }
        r["gauss"] = gauss;

        // Unknot brackets b_a with expected p-orders and the b_o closed form.
        json bs = json::array();
        for (long a = -3; a <= 3; ++a) {
            auto o = unknot_bracket_b(a, lv).p_order();
            long expect = (a % lv.p == 0) ? 2 * lv.n : lv.n;
            bs.push_back({{"a", a},
                          {"order", order_json(o)},
                          {"expected_order", expect}});
        }
        r["b"] = bs;
        r["b_o_matches_closed_form"] =
            unknot_bracket_b(0, lv) == unknot_bracket_b_o_closed(lv);

        // s_j = sum [jk][k]: +-b_o when j = +-1 mod p, zero otherwise.
        CycElem b_o = unknot_bracket_b(0, lv);
        CycElem minus_b_o = CycElem::from_int(Int(-1), lv) * b_o;
        json ss = json::array();
        for (long j = 0; j <= lv.p; ++j) {
            CycElem s = sum_s(j, lv);
            std::string cls = "other";
            if (s.is_zero()) cls = "zero";
            else if (s == b_o) cls = "+b_o";
            else if (s == minus_b_o) cls = "-b_o";
            ss.push_back({{"j", j},
                          {"order", order_json(s.p_order())},
                          {"class", cls}});
        }
        r["s"] = ss;

        // t_a = sum s^{a(k^2-1)} [k^2]; zero entries (e.g. t_3 at p=7)
        // flagged explicitly.
        json ts = json::array();
        for (long a = 0; a < lv.p; ++a) {
            CycElem t = sum_t(a, lv);
            ts.push_back({{"a", a},
                          {"order", order_json(t.p_order())},
                          {"zero", t.is_zero()}});
        }
        r["t"] = ts;
        return r;
    });
    json j;
    j["results"] = results;
    emit(j, cfg.out_path);
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    VerifyOptions opt;
    // Validate the requested levels the same way the other commands do.
    opt.primes.clear();
    for (PrimeLevel lv : parse_levels(cfg.primes)) opt.primes.push_back(lv.p);
    opt.max_crossings = cfg.max_crossings;
    opt.max_width = cfg.max_width;

    bool all_pass = true;
    json criteria = json::array();
    for (const CriterionResult& r : run_verification(opt)) {
        criteria.push_back({{"id", r.id},
                            {"name", r.name},
                            {"pass", r.pass},
                            {"checks", r.checks},
                            {"failures", r.failures},
                            {"skips", r.skips},
                            {"notes", r.notes}});
        if (!r.pass) all_pass = false;
    }
    json j;
    j["criteria"] = criteria;
    j["pass"] = all_pass;
    emit(j, cfg.out_path);
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact quantum SO(3) invariants of 3-manifolds from framed links"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&](CLI::App* sub, bool needs_link) {
        sub->add_option("-p,--prime", cfg.primes,
                        "odd prime level(s), e.g. -p 5,7")
            ->delimiter(',');
        if (needs_link)
            sub->add_option("--link", cfg.link_source,
                            "catalog name or path to a link JSON file");
        sub->add_option("--max-crossings", cfg.max_crossings,
                        "crossing budget for cabled diagrams")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-width", cfg.max_width,
                        "sweep width budget (boundary points)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", cfg.out_path, "write JSON to this file");
        sub->add_option("--jobs", cfg.jobs, "parallel (link, prime) jobs")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* c_catalog = app.add_subcommand("catalog", "list built-in links");
    c_catalog->add_option("--out", cfg.out_path, "write JSON to this file");

    CLI::App* c_bracket =
        app.add_subcommand("bracket", "p-bracket of a framed link");
    add_common(c_bracket, true);

    CLI::App* c_invariant = app.add_subcommand(
        "invariant", "tau_p invariant report for a surgery presentation");
    add_common(c_invariant, true);
    c_invariant->add_option("--depth", cfg.depth,
                            "report projections pi^d for d = 0..D")
        ->check(CLI::NonNegativeNumber);

    CLI::App* c_sums =
        app.add_subcommand("sums", "special-sum tables at a level");
    add_common(c_sums, false);

    CLI::App* c_verify =
        app.add_subcommand("verify", "run the verification suite");
    add_common(c_verify, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_catalog->parsed()) return cmd_catalog(cfg.out_path);
        if (cfg.primes.empty()) cfg.primes = {3, 5, 7};
        if (c_bracket->parsed()) return cmd_bracket(cfg);
        if (c_invariant->parsed()) return cmd_invariant(cfg);
        if (c_sums->parsed()) return cmd_sums(cfg);
        if (c_verify->parsed()) return cmd_verify(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
