#include "cfchroma/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace cfc {

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::strict_cf: return "strict";
        case Mode::weak_cf: return "weak";
        case Mode::proper: return "proper";
    }
    return "?";
}

Mode mode_from_name(const std::string& name) {
    if (name == "strict") return Mode::strict_cf;
    if (name == "weak") return Mode::weak_cf;
    if (name == "proper") return Mode::proper;
    throw std::invalid_argument("unknown mode: " + name);
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::feasible: return "feasible";
        case Verdict::infeasible: return "infeasible";
        case Verdict::unknown: return "unknown";
    }
    return "?";
}

long long default_node_limit() {
    if (const char* env = std::getenv("CFCHROMA_NODE_LIMIT")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return 50000000;
}

void validate_problem(const ExtensionProblem& p) {
    validate_system(p.system);
    if (p.palette <= 0) throw std::invalid_argument("palette must be positive");
    if (p.fixed.palette != p.palette)
        throw std::invalid_argument("fixed coloring palette (" +
                                    std::to_string(p.fixed.palette) +
                                    ") differs from problem palette (" +
                                    std::to_string(p.palette) + ")");
    validate_coloring(p.system, p.fixed);
    if (p.spill_bound) {
        for (size_t i = 0; i < p.system.edges.size(); ++i) {
            int hit = 0;
            for (int v : p.system.edges[i])
                if (p.fixed.has(v)) ++hit;
            if (hit > *p.spill_bound)
                throw std::invalid_argument(
                    "edge " + std::to_string(i) + " meets dom(fixed) in " +
                    std::to_string(hit) + " vertices, above declared bound " +
                    std::to_string(*p.spill_bound));
        }
    }
}

namespace {

// Backtracking engine.  One instance per solve; all state rolls back on
// unplace so the search needs no copying.
class Engine {
  public:
    Engine(const ExtensionProblem& p, const SolveOptions& opts)
        : sys_(p.system),
          x_(p.palette),
          mode_(p.mode),
          limit_(opts.node_limit) {
        const int n = sys_.ground_size;
        const int m = static_cast<int>(sys_.edges.size());
        assign_.assign(n, kFree);
        incident_.assign(n, {});
        esize_.resize(m);
        edecided_.assign(m, 0);
        uniq_.assign(m, 0);
        sat2_.assign(m, 0);
        cnt_.assign(m, std::vector<int>(x_, 0));
        for (int e = 0; e < m; ++e) {
            esize_[e] = static_cast<int>(sys_.edges[e].size());
            for (int v : sys_.edges[e]) incident_[v].push_back(e);
        }
        values_per_vertex_ = (mode_ == Mode::weak_cf) ? x_ + 1 : x_;

        // Seed the fixed part before ordering the free vertices.
        seed_ok_ = true;
        for (const auto& [v, c] : p.fixed.assignment) {
            seeded_.push_back(v);
            if (!place(v, c)) seed_ok_ = false;
            // keep placing: deadness of the fixed part alone is already a
            // complete infeasibility proof, no rollback needed mid-seed
        }

        build_order(p, opts);
    }

    SolveResult run() {
        SolveResult res;
        if (!seed_ok_) {
            res.verdict = Verdict::infeasible;
            res.stats.nodes = nodes_;
            res.stats.complete = true;
            return res;
        }
        Outcome out = dfs(0);
        res.stats.nodes = nodes_;
        if (out == Outcome::found) {
            res.verdict = Verdict::feasible;
            res.stats.complete = true;
            res.witness = harvest();
        } else if (out == Outcome::exhausted) {
            res.verdict = Verdict::infeasible;
            res.stats.complete = true;
        } else {
            res.verdict = Verdict::unknown;
            res.stats.complete = false;
        }
        return res;
    }

  private:
    static constexpr int kFree = -1;
    enum class Outcome { found, exhausted, aborted };

    // blank is modeled as an extra value x_ that touches no multiplicity;
    // only weak mode iterates over it (last, after the real colors).
    bool is_blank(int val) const { return val == x_; }

    bool edge_dead(int e, int placed_val) const {
        if (mode_ == Mode::proper)
            return !is_blank(placed_val) && placed_val >= 0 &&
                   cnt_[e][placed_val] == esize_[e];
        // CF modes: once every color is used twice nothing can become
        // unique again; a fully decided edge must already show a unique.
        if (sat2_[e] == x_) return true;
        return edecided_[e] == esize_[e] && uniq_[e] == 0;
    }

    bool place(int v, int val) {
        ++nodes_;
        assign_[v] = val;
        bool alive = true;
        // Apply every per-edge update before reporting deadness; an early
        // return here would leave counters half-updated and the symmetric
        // unplace would then corrupt the search state.
        for (int e : incident_[v]) {
            ++edecided_[e];
            if (!is_blank(val)) {
                int c = ++cnt_[e][val];
                if (c == 1) ++uniq_[e];
                else if (c == 2) { --uniq_[e]; ++sat2_[e]; }
            }
            if (edge_dead(e, val)) alive = false;
        }
        return alive;
    }

    void unplace(int v) {
        int val = assign_[v];
        for (int e : incident_[v]) {
            --edecided_[e];
            if (!is_blank(val)) {
                int c = cnt_[e][val]--;
                if (c == 1) --uniq_[e];
                else if (c == 2) { ++uniq_[e]; --sat2_[e]; }
            }
        }
        assign_[v] = kFree;
    }

    Outcome dfs(size_t pos) {
        if (pos == order_.size()) return Outcome::found;
        if (nodes_ >= limit_) return Outcome::aborted;
        int v = order_[pos];
        for (int val = 0; val < values_per_vertex_; ++val) {
            bool alive = place(v, val);
            if (alive) {
                Outcome out = dfs(pos + 1);
                if (out != Outcome::exhausted) {
                    if (out == Outcome::aborted) unplace(v);
                    return out;  // keep assignment on found for harvest()
                }
            }
            unplace(v);
            if (nodes_ >= limit_) return Outcome::aborted;
        }
        return Outcome::exhausted;
    }

    void build_order(const ExtensionProblem& p, const SolveOptions& opts) {
        const int n = sys_.ground_size;
        std::vector<char> fixed(n, 0);
        for (const auto& [v, c] : p.fixed.assignment) fixed[v] = 1;
        std::vector<int> free_vs;
        for (int v = 0; v < n; ++v)
            if (!fixed[v]) free_vs.push_back(v);

        if (opts.order == OrderPolicy::copy_interleave) {
            if (!sys_.meta.contains("copies") ||
                !sys_.meta.contains("base_ground"))
                throw std::invalid_argument(
                    "copy_interleave order needs meta.copies and "
                    "meta.base_ground (stacked-copy instances)");
            int base = sys_.meta.at("base_ground").get<int>();
            if (base <= 0 || base > n)
                throw std::invalid_argument("bad meta.base_ground");
            std::stable_sort(free_vs.begin(), free_vs.end(),
                             [base](int a, int b) {
                                 int pa = a % base, pb = b % base;
                                 if (pa != pb) return pa < pb;
                                 return a / base < b / base;
                             });
        } else {
            std::vector<int> deg(n, 0);
            for (const auto& e : sys_.edges)
                for (int v : e) ++deg[v];
            std::stable_sort(free_vs.begin(), free_vs.end(),
                             [&deg](int a, int b) {
                                 if (deg[a] != deg[b]) return deg[a] > deg[b];
                                 return a < b;
                             });
        }
        order_ = std::move(free_vs);
    }

    PartialColoring harvest() const {
        PartialColoring f;
        f.palette = x_;
        for (int v = 0; v < sys_.ground_size; ++v)
            if (assign_[v] != kFree && !is_blank(assign_[v]))
                f.assignment[v] = assign_[v];
        return f;
    }

    const SetSystem& sys_;
    int x_;
    Mode mode_;
    long long limit_;
    long long nodes_ = 0;
    bool seed_ok_ = true;
    int values_per_vertex_ = 0;
    std::vector<int> assign_, esize_, edecided_, uniq_, sat2_, order_, seeded_;
    std::vector<std::vector<int>> incident_, cnt_;
};

// Largest clique a greedy sweep finds among the size-2 edges; a clique of
// size w forces w colors in any proper (hence any CF) coloring.
int greedy_pair_clique(const SetSystem& s) {
    std::vector<std::set<int>> adj(s.ground_size);
    for (const auto& e : s.edges)
        if (e.size() == 2) {
            adj[e[0]].insert(e[1]);
            adj[e[1]].insert(e[0]);
        }
    std::vector<int> verts(s.ground_size);
    std::iota(verts.begin(), verts.end(), 0);
    std::stable_sort(verts.begin(), verts.end(), [&adj](int a, int b) {
        if (adj[a].size() != adj[b].size())
            return adj[a].size() > adj[b].size();
        return a < b;
    });
    std::vector<int> clique;
    for (int v : verts) {
        bool ok = true;
        for (int u : clique)
            if (!adj[v].count(u)) { ok = false; break; }
        if (ok) clique.push_back(v);
    }
    return static_cast<int>(clique.size());
}

OptResult ascend(const SetSystem& s, Mode mode, const SolveOptions& opts) {
    validate_system(s);
    OptResult r;
    if (s.edges.empty()) {
        // no edge, no constraint: one color (the smallest legal palette)
        r.exact = true;
        r.value = 1;
        r.lower_bound = 1;
        return r;
    }
    int lb = 1;
    if (mode != Mode::weak_cf) lb = std::max(2, greedy_pair_clique(s));
    r.lower_bound = lb;
    for (int x = lb; x <= std::max(1, s.ground_size); ++x) {
        ExtensionProblem p;
        p.system = s;
        p.palette = x;
        p.fixed.palette = x;
        p.mode = mode;
        SolveResult sr = feasible_cf(p, opts);
        r.nodes += sr.stats.nodes;
        if (sr.verdict == Verdict::feasible) {
            r.exact = true;
            r.value = x;
            r.lower_bound = x;
            return r;
        }
        if (sr.verdict == Verdict::unknown) {
            r.exact = false;
            r.lower_bound = x;  // everything below x was refuted completely
            return r;
        }
        r.lower_bound = x + 1;
    }
    // unreachable: an injective total coloring is CF/weak-CF/proper once the
    // palette matches the ground size
    throw std::logic_error("palette climb passed the ground size");
}

}  // namespace

SolveResult feasible_cf(const ExtensionProblem& p, const SolveOptions& opts) {
    validate_problem(p);
    Engine eng(p, opts);
    SolveResult res = eng.run();
    if (res.verdict == Verdict::feasible) {
        // Never hand out an unchecked witness.
        const PartialColoring& w = *res.witness;
        for (const auto& [v, c] : p.fixed.assignment)
            if (!w.has(v) || w.at(v) != c)
                throw std::logic_error("witness does not extend fixed part");
        if (p.mode == Mode::weak_cf) {
            // fixed blanks stay blank is vacuous here: dom(fixed) is all we
            // pinned.  Check the coloring itself.
            if (!is_weak_cf(p.system, w).ok)
                throw std::logic_error("weak witness failed verification");
        } else if (p.mode == Mode::strict_cf) {
            if (!is_cf(p.system, w).ok)
                throw std::logic_error("strict witness failed verification");
        } else {
            if (!w.total_on(p.system.ground_size))
                throw std::logic_error("proper witness not total");
            for (const auto& e : p.system.edges) {
                bool mono = true;
                for (size_t i = 1; i < e.size(); ++i)
                    if (w.at(e[i]) != w.at(e[0])) { mono = false; break; }
                if (mono)
                    throw std::logic_error("proper witness monochromatic");
            }
        }
    }
    return res;
}

OptResult chi(const SetSystem& s, const SolveOptions& opts) {
    return ascend(s, Mode::proper, opts);
}

OptResult chi_cf(const SetSystem& s, const SolveOptions& opts) {
    return ascend(s, Mode::strict_cf, opts);
}

OptResult wchi_cf(const SetSystem& s, const SolveOptions& opts) {
    return ascend(s, Mode::weak_cf, opts);
}

SolveResult brute_oracle(const ExtensionProblem& p,
                         const OracleOptions& opts) {
    validate_problem(p);
    const int n = p.system.ground_size;
    const int base = (p.mode == Mode::weak_cf) ? p.palette + 1 : p.palette;

    std::vector<int> free_vs;
    for (int v = 0; v < n; ++v)
        if (!p.fixed.has(v)) free_vs.push_back(v);

    long long count = 1;
    for (size_t i = 0; i < free_vs.size(); ++i) {
        count *= base;
        if (count > opts.enumeration_cap)
            throw std::runtime_error(
                "oracle cap exceeded: " + std::to_string(base) + "^" +
                std::to_string(free_vs.size()) + " > " +
                std::to_string(opts.enumeration_cap));
    }

    // Flat assignment array; value `palette` encodes blank in weak mode.
    std::vector<int> val(n, -1);
    for (const auto& [v, c] : p.fixed.assignment) val[v] = c;
    std::vector<int> digits(free_vs.size(), 0);
    for (size_t i = 0; i < free_vs.size(); ++i) val[free_vs[i]] = 0;

    SolveResult res;
    auto satisfied = [&]() {
        if (p.mode == Mode::proper) {
            for (const auto& e : p.system.edges) {
                bool mono = true;
                for (size_t i = 1; i < e.size(); ++i)
                    if (val[e[i]] != val[e[0]]) { mono = false; break; }
                if (mono) return false;
            }
            return true;
        }
        std::vector<int> cnt(p.palette, 0);
        for (const auto& e : p.system.edges) {
            std::fill(cnt.begin(), cnt.end(), 0);
            for (int v : e)
                if (val[v] < p.palette) ++cnt[val[v]];
            bool uniq = false;
            for (int c = 0; c < p.palette; ++c)
                if (cnt[c] == 1) { uniq = true; break; }
            if (!uniq) return false;
        }
        return true;
    };

    while (true) {
        ++res.stats.nodes;
        if (satisfied()) {
            res.verdict = Verdict::feasible;
            res.stats.complete = true;
            PartialColoring w;
            w.palette = p.palette;
            for (int v = 0; v < n; ++v)
                if (val[v] >= 0 && val[v] < p.palette) w.assignment[v] = val[v];
            res.witness = w;
            return res;
        }
        // odometer step, least significant digit last for lexicographic order
        int i = static_cast<int>(free_vs.size()) - 1;
        while (i >= 0 && digits[i] == base - 1) {
            digits[i] = 0;
            val[free_vs[i]] = 0;
            --i;
        }
        if (i < 0) break;
        ++digits[i];
        val[free_vs[i]] = digits[i];
    }
    res.verdict = Verdict::infeasible;
    res.stats.complete = true;
    return res;
}

NormalizeResult normalize_extension_witness(const ExtensionProblem& p) {
    validate_problem(p);
    if (p.mode != Mode::weak_cf)
        throw std::invalid_argument("normalization applies to weak problems");
    if (!p.spill_bound)
        throw std::invalid_argument("normalization needs a declared spill bound");
    const int k = *p.spill_bound;
    const int n = p.system.ground_size;
    const int m = static_cast<int>(p.system.edges.size());

    // Which edges contain each fixed vertex, in edge order.
    std::map<int, std::vector<int>> fixed_edges;
    for (const auto& [v, c] : p.fixed.assignment) fixed_edges[v] = {};
    for (int e = 0; e < m; ++e)
        for (int v : p.system.edges[e])
            if (p.fixed.has(v)) fixed_edges[v].push_back(e);

    NormalizeResult out;
    out.problem.palette = p.palette;
    out.problem.mode = Mode::weak_cf;
    out.problem.spill_bound = k;
    out.problem.fixed.palette = p.palette;

    SetSystem& ns = out.problem.system;
    ns.edges = p.system.edges;
    ns.meta = p.system.meta;

    int next_id = n;
    // rep[{v,e}] = vertex standing in for fixed v inside edge e
    std::map<std::pair<int, int>, int> rep;
    for (const auto& [v, es] : fixed_edges) {
        for (size_t i = 0; i < es.size(); ++i) {
            if (i == 0) {
                rep[{v, es[i]}] = v;  // first incident edge keeps the original
            } else {
                rep[{v, es[i]}] = next_id;
                out.copy_of[next_id] = v;
                ++next_id;
            }
        }
    }
    for (int e = 0; e < m; ++e) {
        for (int& v : ns.edges[e]) {
            auto it = rep.find({v, e});
            if (it != rep.end()) v = it->second;
        }
        std::sort(ns.edges[e].begin(), ns.edges[e].end());
    }

    // Colors: copies inherit their source's color, originals keep theirs.
    for (const auto& [v, c] : p.fixed.assignment)
        out.problem.fixed.assignment[v] = c;
    for (const auto& [nv, src] : out.copy_of)
        out.problem.fixed.assignment[nv] = p.fixed.at(src);

    // Fixed vertices lying in no edge are padding material; leftovers get
    // their own blocks below so the blocks still partition dom(fixed).
    std::vector<int> orphan_pool;
    for (const auto& [v, es] : fixed_edges)
        if (es.empty()) orphan_pool.push_back(v);
    size_t orphan_next = 0;

    auto pad_slot = [&]() {
        if (orphan_next < orphan_pool.size()) return orphan_pool[orphan_next++];
        int id = next_id++;
        out.copy_of[id] = -1;  // brand-new padding vertex
        out.problem.fixed.assignment[id] = 0;
        return id;
    };

    if (k > 0) {
        for (int e = 0; e < m; ++e) {
            std::vector<int> block;
            for (int v : ns.edges[e])
                if (out.problem.fixed.has(v)) block.push_back(v);
            while (static_cast<int>(block.size()) < k) block.push_back(pad_slot());
            std::sort(block.begin(), block.end());
            out.blocks.push_back(std::move(block));
        }
        while (orphan_next < orphan_pool.size()) {
            std::vector<int> block;
            while (static_cast<int>(block.size()) < k) block.push_back(pad_slot());
            std::sort(block.begin(), block.end());
            out.blocks.push_back(std::move(block));
        }
    } else {
        // degenerate bound: no edge meets the fixed part, and zero-size
        // blocks cannot host edge-free fixed vertices, so drop those
        for (int v : orphan_pool) out.problem.fixed.assignment.erase(v);
    }

    ns.ground_size = next_id;
    nlohmann::json blocks_json = nlohmann::json::array();
    for (const auto& b : out.blocks) blocks_json.push_back(b);
    ns.meta["normalized"] = {{"k", k}, {"blocks", blocks_json}};

    validate_problem(out.problem);
    return out;
}

nlohmann::json solve_result_to_json(const SolveResult& r) {
    nlohmann::json j;
    j["schema"] = 1;
    j["verdict"] = verdict_name(r.verdict);
    j["stats"] = {{"nodes", r.stats.nodes}, {"complete", r.stats.complete}};
    if (r.witness) {
        nlohmann::json w;
        w["palette"] = r.witness->palette;
        nlohmann::json a = nlohmann::json::object();
        for (const auto& [v, c] : r.witness->assignment)
            a[std::to_string(v)] = c;
        w["assignment"] = a;
        j["witness"] = w;
    }
    return j;
}

nlohmann::json opt_result_to_json(const OptResult& r,
                                  const std::string& metric) {
    nlohmann::json j;
    j["schema"] = 1;
    j["metric"] = metric;
    j["exact"] = r.exact;
    if (r.exact) j["value"] = r.value;
    j["lower_bound"] = r.lower_bound;
    j["nodes"] = r.nodes;
    return j;
}

}  // namespace cfc
