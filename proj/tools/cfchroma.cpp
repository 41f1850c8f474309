// Command-line front end: generate instances, solve and optimize, run the
// constructive colorers, verify/refute colorings, export CNF, and benchmark.
//
// Exit codes: 0 success/feasible, 1 infeasible or algorithmic failure,
// 2 usage or malformed input, 3 unknown (a resource limit fired).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cfchroma/cnf.hpp"
#include "cfchroma/colorers.hpp"
#include "cfchroma/generators.hpp"
#include "cfchroma/json_io.hpp"
#include "cfchroma/set_system.hpp"
#include "cfchroma/solver.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kUnknown = 3;

void emit_json(const nlohmann::json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << cfc::dump_canonical(j);
    else
        cfc::save_json_file(out_path, j);
}

// Loads an instance file; malformed input is a usage error by contract.
bool load_instance(const std::string& path, cfc::SetSystem& s,
                   std::optional<cfc::PartialColoring>& fixed) {
    try {
        cfc::instance_from_json(cfc::load_json_file(path), s, fixed);
        return true;
    } catch (const std::exception& e) {
        std::cerr << "error: " << path << ": " << e.what() << "\n";
        return false;
    }
}

// Summary printed by every generator: counts plus the almost-disjointness
// parameter recorded in meta, re-verified on the emitted edges.
int finish_gen(const cfc::SetSystem& s,
               const std::optional<cfc::PartialColoring>& fixed,
               const std::string& out_path, const std::string& extra = "") {
    std::ostringstream line;
    line << "vertices=" << s.ground_size << " edges=" << s.edges.size();
    if (s.meta.contains("mu")) {
        cfc::ADParams ad;
        ad.mu = s.meta["mu"].get<int>();
        bool ok = cfc::is_almost_disjoint(s, ad).ok;
        line << " mu=" << ad.mu << " ad=" << (ok ? "ok" : "FAIL");
        if (!ok) {
            std::cerr << line.str() << "\n";
            std::cerr << "error: generated system violates its own "
                         "almost-disjointness parameter\n";
            return kFail;
        }
    }
    if (!extra.empty()) line << " " << extra;
    std::cerr << line.str() << "\n";
    emit_json(cfc::instance_to_json(s, fixed ? &*fixed : nullptr), out_path);
    return kOk;
}

struct GenArgs {
    int m = 4;
    cfc::ProductParams product;
    int q = 3;
    int rows = 4, cols = 6;
    std::string base_path;
    int t = 1;
    long long transversal_cap = 1000000;
    bool sample = false;
    long long sample_count = 100000;
    uint64_t seed = 0;
    std::vector<std::string> parts;
    std::string out;
};

int run_gen_quad(const GenArgs& a) {
    return finish_gen(cfc::gen_quad(a.m), std::nullopt, a.out);
}

int run_gen_product(const GenArgs& a) {
    return finish_gen(cfc::gen_product_gadget(a.product), std::nullopt, a.out);
}

int run_gen_affine(const GenArgs& a) {
    return finish_gen(cfc::gen_affine_lines(a.q), std::nullopt, a.out);
}

int run_gen_grid(const GenArgs& a) {
    cfc::GridGadget g = cfc::gen_grid_gadget(a.rows, a.cols);
    cfc::GridCheck chk = cfc::check_grid_gadget(g.system, g.fixed);
    if (!chk.ok) {
        std::cerr << "error: grid self-check failed: " << chk.failure << "\n";
        return kFail;
    }
    return finish_gen(g.system, g.fixed, a.out, "check=ok");
}

int run_gen_lift0(const GenArgs& a) {
    cfc::SetSystem base;
    std::optional<cfc::PartialColoring> fixed;
    if (!load_instance(a.base_path, base, fixed)) return kUsage;
    if (fixed)
        std::cerr << "note: fixed coloring of the base instance is ignored\n";
    cfc::LiftOptions opts;
    opts.transversal_cap = a.transversal_cap;
    opts.sample = a.sample;
    opts.sample_count = a.sample_count;
    opts.seed = a.seed;
    return finish_gen(cfc::gen_lift0(base, a.t, opts), std::nullopt, a.out);
}

int run_gen_union(const GenArgs& a) {
    std::vector<cfc::SetSystem> parts;
    for (const auto& path : a.parts) {
        cfc::SetSystem s;
        std::optional<cfc::PartialColoring> fixed;
        if (!load_instance(path, s, fixed)) return kUsage;
        if (fixed)
            std::cerr << "note: fixed coloring of part " << path
                      << " is ignored\n";
        parts.push_back(std::move(s));
    }
    return finish_gen(cfc::gen_union(parts), std::nullopt, a.out);
}

struct SolveArgs {
    std::string instance;
    std::string mode = "strict";
    std::optional<int> palette;
    bool optimize = false;
    bool oracle = false;
    std::string order = "degree";
    long long node_limit = cfc::default_node_limit();
    std::optional<int> spill;
    int threads = 1;
    std::string out;
};

int run_solve(const SolveArgs& a) {
    if (a.threads != 1)
        std::cerr << "note: this build searches single-threaded; verdicts "
                     "are identical, continuing with 1 thread\n";
    cfc::SetSystem s;
    std::optional<cfc::PartialColoring> fixed;
    if (!load_instance(a.instance, s, fixed)) return kUsage;

    cfc::Mode mode = cfc::mode_from_name(a.mode);
    cfc::SolveOptions opts;
    opts.node_limit = a.node_limit;
    opts.order = a.order == "interleave" ? cfc::OrderPolicy::copy_interleave
                                         : cfc::OrderPolicy::degree_desc;

    if (a.optimize == a.palette.has_value()) {
        std::cerr << "error: pick exactly one of --palette and --optimize\n";
        return kUsage;
    }

    if (a.optimize) {
        if (a.oracle) {
            std::cerr << "error: --oracle needs --palette\n";
            return kUsage;
        }
        if (fixed) {
            std::cerr << "error: optimization works on the bare system; "
                         "this instance carries a fixed coloring\n";
            return kUsage;
        }
        cfc::OptResult r;
        std::string metric;
        switch (mode) {
            case cfc::Mode::proper: r = cfc::chi(s, opts); metric = "chi"; break;
            case cfc::Mode::strict_cf:
                r = cfc::chi_cf(s, opts);
                metric = "chi_cf";
                break;
            case cfc::Mode::weak_cf:
                r = cfc::wchi_cf(s, opts);
                metric = "wchi_cf";
                break;
        }
        emit_json(cfc::opt_result_to_json(r, metric), a.out);
        return r.exact ? kOk : kUnknown;
    }

    cfc::ExtensionProblem p;
    p.system = std::move(s);
    p.palette = *a.palette;
    p.mode = mode;
    p.spill_bound = a.spill;
    if (fixed) {
        if (fixed->palette != p.palette) {
            std::cerr << "error: instance fixes a coloring with palette "
                      << fixed->palette << ", but --palette is " << p.palette
                      << "\n";
            return kUsage;
        }
        p.fixed = *fixed;
    } else {
        p.fixed.palette = p.palette;
    }

    cfc::SolveResult r;
    if (a.oracle) {
        try {
            r = cfc::brute_oracle(p);
        } catch (const std::runtime_error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kUnknown;
        }
    } else {
        r = cfc::feasible_cf(p, opts);
    }
    emit_json(cfc::solve_result_to_json(r), a.out);
    switch (r.verdict) {
        case cfc::Verdict::feasible: return kOk;
        case cfc::Verdict::infeasible: return kFail;
        case cfc::Verdict::unknown: return kUnknown;
    }
    return kUnknown;
}

struct ColorArgs {
    std::string instance;
    std::string algorithm;
    std::optional<int> palette;
    std::optional<int> tau;
    std::optional<int> d;
    std::optional<int> k;
    std::optional<int> spill;
    std::string avoid_path;
    std::string out;
};

nlohmann::json coloring_json(const cfc::PartialColoring& f) {
    return cfc::coloring_to_json(f);
}

int need(const std::optional<int>& v, const char* flag) {
    if (!v) {
        std::cerr << "error: this algorithm needs " << flag << "\n";
        return 0;
    }
    return 1;
}

int run_color(const ColorArgs& a) {
    cfc::SetSystem s;
    std::optional<cfc::PartialColoring> fixed;
    if (!load_instance(a.instance, s, fixed)) return kUsage;

    nlohmann::json j;
    j["schema"] = 1;
    j["algorithm"] = a.algorithm;

    if (a.algorithm == "greedy-max") {
        if (!need(a.palette, "--palette")) return kUsage;
        cfc::AvoidMap avoid;
        if (!a.avoid_path.empty()) {
            auto aj = cfc::load_json_file(a.avoid_path);
            for (const auto& row : aj)
                avoid.forbidden.emplace_back(row.begin(), row.end());
        }
        auto r = cfc::greedy_max_color(s, avoid, *a.palette);
        j["ok"] = r.ok;
        if (!r.ok) {
            j["blocking_vertex"] = r.blocking_vertex;
            emit_json(j, a.out);
            return kFail;
        }
        if (!cfc::is_cf(s, r.coloring).ok) {
            std::cerr << "error: verification rejected the coloring\n";
            return kFail;
        }
        j["coloring"] = coloring_json(r.coloring);
        j["witness_color"] = r.witness_color;
        emit_json(j, a.out);
        return kOk;
    }

    if (a.algorithm == "disjointify") {
        if (!need(a.palette, "--palette")) return kUsage;
        auto r = cfc::disjointify_color(s, *a.palette);
        // contract: per-edge deficiency stays within overlap + shortfall
        for (size_t e = 0; e < s.edges.size(); ++e) {
            int cap = r.overlap[e] +
                      std::max(0, *a.palette - r.fresh_size[e]);
            if (r.deficiency[e] > cap) {
                std::cerr << "error: deficiency bound broken on edge " << e
                          << "\n";
                return kFail;
            }
        }
        j["ok"] = true;
        j["coloring"] = coloring_json(r.coloring);
        j["deficiency"] = r.deficiency;
        j["overlap"] = r.overlap;
        j["fresh_size"] = r.fresh_size;
        emit_json(j, a.out);
        return kOk;
    }

    if (a.algorithm == "ind0") {
        if (!need(a.palette, "--palette") || !need(a.d, "--d")) return kUsage;
        cfc::ExtensionProblem p;
        p.system = s;
        p.palette = *a.palette;
        p.mode = cfc::Mode::weak_cf;
        p.spill_bound = a.spill;
        if (fixed) {
            if (fixed->palette != p.palette) {
                std::cerr << "error: fixed palette mismatch\n";
                return kUsage;
            }
            p.fixed = *fixed;
        } else {
            p.fixed.palette = p.palette;
        }
        auto r = cfc::extend_ind0(p, *a.d);
        j["ok"] = r.ok;
        if (!r.ok) {
            j["failed_edge"] = r.failed_edge;
            j["failure"] = r.failure;
            emit_json(j, a.out);
            return kFail;
        }
        if (!cfc::is_weak_cf(s, r.coloring).ok) {
            std::cerr << "error: verification rejected the coloring\n";
            return kFail;
        }
        j["coloring"] = coloring_json(r.coloring);
        j["max_new_on_edge"] = r.max_new_on_edge;
        nlohmann::json steps = nlohmann::json::array();
        for (const auto& st : r.steps)
            steps.push_back({{"edge", st.edge},
                             {"kept", st.kept},
                             {"witness_color", st.witness_color},
                             {"vertex", st.vertex}});
        j["steps"] = steps;
        emit_json(j, a.out);
        return kOk;
    }

    if (a.algorithm == "layered") {
        if (!need(a.palette, "--palette") || !need(a.d, "--d") ||
            !need(a.k, "--k"))
            return kUsage;
        int spill = a.spill.value_or(*a.k + *a.d - 1);
        auto lay = cfc::find_layering(s, *a.d, spill);
        if (!lay.ok) {
            j["ok"] = false;
            j["stage"] = "layering";
            j["failure"] = lay.failure;
            emit_json(j, a.out);
            return kFail;
        }
        auto r = cfc::layered_extend(s, lay.certificate, *a.palette, *a.d,
                                     *a.k, fixed ? &*fixed : nullptr);
        j["ok"] = r.ok;
        j["certificate"] = {{"blocks", lay.certificate.blocks},
                           {"edge_block", lay.certificate.edge_block},
                           {"spill", lay.certificate.spill}};
        if (!r.ok) {
            j["stage"] = "extend";
            j["failed_block"] = r.failed_block;
            j["failure"] = r.failure;
            emit_json(j, a.out);
            return kFail;
        }
        if (!cfc::is_weak_cf(s, r.coloring).ok) {
            std::cerr << "error: verification rejected the coloring\n";
            return kFail;
        }
        j["coloring"] = coloring_json(r.coloring);
        emit_json(j, a.out);
        return kOk;
    }

    if (a.algorithm == "witness-reduce") {
        if (!need(a.tau, "--tau")) return kUsage;
        auto r = cfc::reduce_via_witness(s, *a.tau);
        j["ok"] = r.ok;
        if (!r.ok) {
            j["failure"] = r.failure;
            emit_json(j, a.out);
            return kFail;
        }
        if (!cfc::is_witness(s, r.witness_set, *a.tau)) {
            std::cerr << "error: witness re-verification failed\n";
            return kFail;
        }
        j["witness_set"] = r.witness_set;
        j["coloring"] = coloring_json(r.coloring);
        nlohmann::json contracts = nlohmann::json::array();
        for (const auto& ct : r.contracts)
            contracts.push_back({{"missing", ct.missing},
                                 {"allowed", ct.allowed},
                                 {"pass", ct.pass}});
        j["contracts"] = contracts;
        emit_json(j, a.out);
        return kOk;
    }

    std::cerr << "error: unknown algorithm " << a.algorithm << "\n";
    return kUsage;
}

int run_verify(const std::string& instance, const std::string& coloring_path,
               const std::string& mode, const std::string& out) {
    cfc::SetSystem s;
    std::optional<cfc::PartialColoring> fixed;
    if (!load_instance(instance, s, fixed)) return kUsage;
    cfc::PartialColoring f =
        cfc::coloring_from_json(cfc::load_json_file(coloring_path));
    cfc::CFReport rep = mode == "weak" ? cfc::is_weak_cf(s, f)
                                       : cfc::is_cf(s, f);
    emit_json(cfc::cf_report_to_json(rep), out);
    return rep.ok ? kOk : kFail;
}

int run_refute(const std::string& instance, const std::string& coloring_path,
               const std::string& out) {
    cfc::SetSystem s;
    std::optional<cfc::PartialColoring> fixed;
    if (!load_instance(instance, s, fixed)) return kUsage;
    cfc::PartialColoring f =
        cfc::coloring_from_json(cfc::load_json_file(coloring_path));
    cfc::ProductRefutation r = cfc::refute_product_coloring(s, f);
    nlohmann::json j;
    j["schema"] = 1;
    j["found"] = r.found;
    if (r.found) {
        j["homogeneous_set"] = r.homogeneous_set;
        j["edge_index"] = r.edge_index;
        nlohmann::json mult = nlohmann::json::object();
        for (const auto& [c, n] : r.multiplicity)
            mult[std::to_string(c)] = n;
        j["multiplicity"] = mult;
    }
    emit_json(j, out);
    return r.found ? kOk : kFail;
}

struct CnfArgs {
    std::string instance;
    std::string mode = "strict";
    int palette = 0;
    std::string out;
    std::string decode_path;
    bool no_comments = false;
};

cfc::ExtensionProblem cnf_problem(const CnfArgs& a, cfc::SetSystem s,
                                  std::optional<cfc::PartialColoring> fixed) {
    cfc::ExtensionProblem p;
    p.system = std::move(s);
    p.palette = a.palette;
    p.mode = cfc::mode_from_name(a.mode);
    if (fixed) {
        if (fixed->palette != a.palette)
            throw std::invalid_argument("fixed palette mismatch");
        p.fixed = *fixed;
    } else {
        p.fixed.palette = a.palette;
    }
    return p;
}

// Accepts typical SAT-solver output: "c"/"s" lines skipped, "v" prefixes
// dropped, then signed literals with an optional trailing 0.
std::vector<int> parse_model(const std::string& path, int num_vars) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::vector<int> literals;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && (line[0] == 'c' || line[0] == 's')) continue;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            if (tok == "v" || tok == "V") continue;
            long long lit = std::stoll(tok);
            if (lit == 0) continue;
            if (lit > num_vars || lit < -num_vars)
                throw std::runtime_error("literal " + tok +
                                         " is outside the formula");
            literals.push_back(static_cast<int>(lit));
        }
    }
    return literals;
}

int run_cnf(const CnfArgs& a) {
    cfc::SetSystem s;
    std::optional<cfc::PartialColoring> fixed;
    if (!load_instance(a.instance, s, fixed)) return kUsage;
    cfc::ExtensionProblem p = cnf_problem(a, std::move(s), std::move(fixed));
    cfc::CnfDocument doc = cfc::export_cnf(p);

    if (!a.decode_path.empty()) {
        std::vector<int> literals = parse_model(a.decode_path, doc.num_vars);
        std::vector<bool> values(doc.num_vars + 1, false);
        for (int lit : literals)
            values[lit > 0 ? lit : -lit] = lit > 0;
        if (!cfc::evaluate_cnf(doc, values)) {
            std::cerr << "error: assignment does not satisfy the formula\n";
            return kFail;
        }
        cfc::PartialColoring f;
        try {
            f = cfc::decode_model(p, literals);
        } catch (const std::runtime_error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kFail;
        }
        cfc::CFReport rep = p.mode == cfc::Mode::weak_cf
                                ? cfc::is_weak_cf(p.system, f)
                                : cfc::is_cf(p.system, f);
        if (!rep.ok) {
            std::cerr << "error: decoded coloring fails verification on edge "
                      << rep.first_violated.value_or(-1) << "\n";
            return kFail;
        }
        emit_json(cfc::coloring_to_json(f), a.out);
        return kOk;
    }

    std::string dimacs = cfc::to_dimacs(doc, !a.no_comments);
    if (a.out.empty()) {
        std::cout << dimacs;
    } else {
        std::ofstream out(a.out);
        if (!out) {
            std::cerr << "error: cannot write " << a.out << "\n";
            return kUsage;
        }
        out << dimacs;
    }
    return kOk;
}

struct BenchArgs {
    std::string suite = "all";
    int max_m = 8;
    long long node_limit = cfc::default_node_limit();
};

void bench_row(const std::string& family, const std::string& param,
               const cfc::SetSystem& s, const std::string& metric,
               const std::string& value, const std::string& bound,
               long long nodes) {
    std::cout << family << "," << param << "," << s.ground_size << ","
              << s.edges.size() << "," << metric << "," << value << ","
              << bound << "," << nodes << "\n";
}

void bench_opt(const std::string& family, const std::string& param,
               const cfc::SetSystem& s, const std::string& metric,
               const cfc::SolveOptions& opts) {
    try {
        cfc::OptResult r;
        if (metric == "chi_cf") r = cfc::chi_cf(s, opts);
        else if (metric == "wchi_cf") r = cfc::wchi_cf(s, opts);
        else r = cfc::chi(s, opts);
        if (r.exact)
            bench_row(family, param, s, metric, std::to_string(r.value),
                      "exact", r.nodes);
        else
            bench_row(family, param, s, metric,
                      std::to_string(r.lower_bound), "lower", r.nodes);
    } catch (const std::exception& e) {
        std::cerr << "bench error (" << family << "," << param
                  << "): " << e.what() << "\n";
        bench_row(family, param, s, metric, "error", "error", 0);
    }
}

int run_bench(const BenchArgs& a) {
    cfc::SolveOptions opts;
    opts.node_limit = a.node_limit;
    std::cout << "family,param,vertices,edges,metric,value,bound,nodes\n";

    if (a.suite == "quad" || a.suite == "all") {
        for (int m = 4; m <= a.max_m; ++m) {
            cfc::SetSystem s = cfc::gen_quad(m);
            bench_opt("quad", "m=" + std::to_string(m), s, "chi_cf", opts);
        }
    }

    if (a.suite == "affine" || a.suite == "all") {
        for (int q : {2, 3, 5}) {
            cfc::SetSystem s = cfc::gen_affine_lines(q);
            bench_opt("affine", "q=" + std::to_string(q), s, "chi_cf", opts);
            bench_opt("affine", "q=" + std::to_string(q), s, "wchi_cf", opts);
        }
    }

    if (a.suite == "lift" || a.suite == "all") {
        cfc::SetSystem base = cfc::gen_affine_lines(3);
        bench_opt("lift", "depth=0", base, "wchi_cf", opts);
        try {
            cfc::SetSystem lifted = cfc::gen_lift0(base, 2);
            // full optimization is out of reach here; climb a proven lower
            // bound by refuting small palettes instead
            long long nodes = 0;
            int lb = 1;
            for (int palette = 2; palette <= 3; ++palette) {
                cfc::ExtensionProblem p;
                p.system = lifted;
                p.palette = palette;
                p.mode = cfc::Mode::weak_cf;
                p.fixed.palette = palette;
                cfc::SolveOptions o = opts;
                // interleaving copies is what makes palette 3 finish
                if (palette >= 3)
                    o.order = cfc::OrderPolicy::copy_interleave;
                cfc::SolveResult r = cfc::feasible_cf(p, o);
                nodes += r.stats.nodes;
                if (r.verdict == cfc::Verdict::infeasible)
                    lb = palette + 1;
                else
                    break;
            }
            bench_row("lift", "depth=1", lifted, "wchi_cf",
                      std::to_string(lb), "lower", nodes);
        } catch (const std::exception& e) {
            std::cerr << "bench error (lift,depth=1): " << e.what() << "\n";
        }
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conflict-free chromatic numbers of finite set systems"};
    app.require_subcommand(1);

    GenArgs ga;
    CLI::App* gen = app.add_subcommand("gen", "generate an instance file");
    gen->require_subcommand(1);
    CLI::App* g_quad = gen->add_subcommand(
        "quad", "4-sets pairing even pairs with odd pairs");
    g_quad->add_option("--m", ga.m, "ground-set size (>= 4)")->required();
    CLI::App* g_product = gen->add_subcommand(
        "product", "subset-product gadget with per-index repeat profile");
    g_product->add_option("--lambda", ga.product.lambda)->required();
    g_product->add_option("--n", ga.product.n)->required();
    g_product->add_option("--k", ga.product.k)->required();
    g_product->add_option("--t", ga.product.t)->required();
    CLI::App* g_affine = gen->add_subcommand(
        "affine", "all lines of the affine plane over F_q");
    g_affine->add_option("--q", ga.q, "prime order")->required();
    CLI::App* g_grid = gen->add_subcommand(
        "grid", "lattice-box lines with pinned outside points");
    g_grid->add_option("--rows", ga.rows);
    g_grid->add_option("--cols", ga.cols);
    CLI::App* g_lift = gen->add_subcommand(
        "lift0", "disjoint copies plus transversal edges");
    g_lift->add_option("--base", ga.base_path, "base instance file")
        ->required()
        ->check(CLI::ExistingFile);
    g_lift->add_option("--t", ga.t, "half the copy count")->required();
    g_lift->add_option("--transversal-cap", ga.transversal_cap);
    g_lift->add_flag("--sample", ga.sample,
                     "sample transversals instead of enumerating");
    g_lift->add_option("--sample-count", ga.sample_count);
    g_lift->add_option("--seed", ga.seed);
    CLI::App* g_union = gen->add_subcommand(
        "union", "disjoint union of instance files");
    g_union->add_option("--part", ga.parts, "instance file (repeatable)")
        ->required();
    gen->add_option("--out", ga.out, "write the instance here (else stdout)");
    for (CLI::App* sub :
         {g_quad, g_product, g_affine, g_grid, g_lift, g_union})
        sub->add_option("--out", ga.out,
                        "write the instance here (else stdout)");

    SolveArgs sa;
    CLI::App* solve =
        app.add_subcommand("solve", "decide feasibility or optimize");
    solve->add_option("instance", sa.instance)->required();
    solve->add_option("--mode", sa.mode)
        ->check(CLI::IsMember({"strict", "weak", "proper"}));
    solve->add_option("--palette", sa.palette, "decide this palette size");
    solve->add_flag("--optimize", sa.optimize,
                    "find the smallest feasible palette for --mode");
    solve->add_flag("--oracle", sa.oracle,
                    "decide by plain enumeration instead of search");
    solve->add_option("--order", sa.order)
        ->check(CLI::IsMember({"degree", "interleave"}));
    solve->add_option("--node-limit", sa.node_limit);
    solve->add_option("--spill", sa.spill,
                      "declared bound on |edge intersect fixed domain|");
    solve->add_option("--threads", sa.threads);
    solve->add_option("--out", sa.out, "write the report here (else stdout)");

    ColorArgs ca;
    CLI::App* color =
        app.add_subcommand("color", "run a constructive coloring procedure");
    color->add_option("instance", ca.instance)->required();
    color->add_option("--algorithm", ca.algorithm)
        ->required()
        ->check(CLI::IsMember({"greedy-max", "disjointify", "ind0", "layered",
                               "witness-reduce"}));
    color->add_option("--palette", ca.palette);
    color->add_option("--tau", ca.tau);
    color->add_option("--d", ca.d);
    color->add_option("--k", ca.k);
    color->add_option("--spill", ca.spill);
    color->add_option("--avoid", ca.avoid_path,
                      "JSON file: per-edge forbidden witness colors");
    color->add_option("--out", ca.out);

    std::string v_instance, v_coloring, v_mode = "strict", v_out;
    CLI::App* verify =
        app.add_subcommand("verify", "check a coloring against an instance");
    verify->add_option("instance", v_instance)->required();
    verify->add_option("--coloring", v_coloring)->required();
    verify->add_option("--mode", v_mode)
        ->check(CLI::IsMember({"strict", "weak"}));
    verify->add_option("--out", v_out);

    std::string r_instance, r_coloring, r_out;
    CLI::App* refute = app.add_subcommand(
        "refute", "find a homogeneous witness against a product coloring");
    refute->add_option("instance", r_instance)->required();
    refute->add_option("--coloring", r_coloring)->required();
    refute->add_option("--out", r_out);

    CnfArgs na;
    CLI::App* cnf =
        app.add_subcommand("cnf", "export DIMACS or decode a model");
    cnf->add_option("instance", na.instance)->required();
    cnf->add_option("--mode", na.mode)
        ->check(CLI::IsMember({"strict", "weak"}));
    cnf->add_option("--palette", na.palette)->required();
    cnf->add_option("--out", na.out);
    cnf->add_option("--decode", na.decode_path,
                    "model file from a SAT solver; emits the coloring");
    cnf->add_flag("--no-comments", na.no_comments);

    BenchArgs ba;
    CLI::App* bench = app.add_subcommand("bench", "parameter sweeps as CSV");
    bench->add_option("--suite", ba.suite)
        ->check(CLI::IsMember({"quad", "affine", "lift", "all"}));
    bench->add_option("--max-m", ba.max_m);
    bench->add_option("--node-limit", ba.node_limit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (gen->parsed()) {
            if (g_quad->parsed()) return run_gen_quad(ga);
            if (g_product->parsed()) return run_gen_product(ga);
            if (g_affine->parsed()) return run_gen_affine(ga);
            if (g_grid->parsed()) return run_gen_grid(ga);
            if (g_lift->parsed()) return run_gen_lift0(ga);
            if (g_union->parsed()) return run_gen_union(ga);
        }
        if (solve->parsed()) return run_solve(sa);
        if (color->parsed()) return run_color(ca);
        if (verify->parsed())
            return run_verify(v_instance, v_coloring, v_mode, v_out);
        if (refute->parsed()) return run_refute(r_instance, r_coloring, r_out);
        if (cnf->parsed()) return run_cnf(na);
        if (bench->parsed()) return run_bench(ba);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
