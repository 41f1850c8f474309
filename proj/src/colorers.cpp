#include "cfchroma/colorers.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cfc {

GreedyMaxResult greedy_max_color(const SetSystem& s, const AvoidMap& avoid,
                                 int palette) {
    validate_system(s);
    if (palette <= 0) throw std::invalid_argument("palette must be positive");
    if (!avoid.forbidden.empty() &&
        avoid.forbidden.size() != s.edges.size())
        throw std::invalid_argument("avoid map size mismatch");
    for (const auto& g : avoid.forbidden)
        for (int c : g)
            if (c < 0 || c >= palette)
                throw std::invalid_argument("avoid color out of palette");

    // banned-at-vertex = union of avoid sets of edges peaking there
    std::vector<std::set<int>> banned(s.ground_size);
    if (!avoid.forbidden.empty())
        for (size_t e = 0; e < s.edges.size(); ++e) {
            int mx = s.edges[e].back();
            banned[mx].insert(avoid.forbidden[e].begin(),
                              avoid.forbidden[e].end());
        }

    GreedyMaxResult out;
    out.coloring.palette = palette;
    std::set<int> used;
    for (int v = 0; v < s.ground_size; ++v) {
        int pick = -1;
        for (int c = 0; c < palette; ++c)
            if (!used.count(c) && !banned[v].count(c)) { pick = c; break; }
        if (pick < 0) {
            out.ok = false;
            out.blocking_vertex = v;
            return out;
        }
        used.insert(pick);
        out.coloring.assignment[v] = pick;
    }

    out.ok = true;
    for (size_t e = 0; e < s.edges.size(); ++e) {
        int mx = s.edges[e].back();
        int wc = out.coloring.at(mx);
        // injectivity makes wc unique on the edge; it was also never banned
        auto uniq = unique_color_set(s, out.coloring, static_cast<int>(e));
        if (!uniq.count(wc) ||
            (!avoid.forbidden.empty() && avoid.forbidden[e].count(wc)))
            throw std::logic_error("greedy witness check failed");
        out.witness_color.push_back(wc);
    }
    if (!is_cf(s, out.coloring).ok)
        throw std::logic_error("greedy coloring is not conflict-free");
    return out;
}

DisjointifyResult disjointify_color(const SetSystem& s, int palette) {
    validate_system(s);
    if (palette <= 0) throw std::invalid_argument("palette must be positive");
    DisjointifyResult out;
    out.coloring.palette = palette;
    std::set<int> claimed;
    for (const auto& edge : s.edges) {
        std::vector<int> fresh;
        int overlap = 0;
        for (int v : edge) {
            if (claimed.count(v)) ++overlap;
            else fresh.push_back(v);
        }
        for (size_t i = 0; i < fresh.size() && i < static_cast<size_t>(palette);
             ++i)
            out.coloring.assignment[fresh[i]] = static_cast<int>(i);
        // deeper fresh vertices stay blank: wrapping colors would wreck the
        // injectivity that drives the deficiency bound
        claimed.insert(edge.begin(), edge.end());
        out.overlap.push_back(overlap);
        out.fresh_size.push_back(static_cast<int>(fresh.size()));
    }
    for (size_t e = 0; e < s.edges.size(); ++e) {
        auto uniq = unique_color_set(s, out.coloring, static_cast<int>(e));
        int missing = 0;
        for (int c = 0; c < palette; ++c)
            if (!uniq.count(c)) ++missing;
        out.deficiency.push_back(missing);
    }
    return out;
}

EDResult ed_decompose(const SetSystem& s) {
    validate_system(s);
    EDResult out;
    out.decomposition.removed.resize(s.edges.size());
    std::set<int> claimed;  // vertices owned by earlier remainders
    for (size_t e = 0; e < s.edges.size(); ++e) {
        std::vector<int> removal, remainder;
        for (int v : s.edges[e])
            (claimed.count(v) ? removal : remainder).push_back(v);
        if (remainder.empty()) {
            out.ok = false;
            out.failed_edge = static_cast<int>(e);
            return out;
        }
        claimed.insert(remainder.begin(), remainder.end());
        out.decomposition.removed[e] = std::move(removal);
    }
    out.ok = true;
    return out;
}

namespace {

// Complete include-first backtracking for an exact-tau hitting set.
class WitnessSearch {
  public:
    WitnessSearch(const SetSystem& s, int tau) : s_(s), tau_(tau) {
        hits_.assign(s.edges.size(), 0);
        // how many vertices of each edge are still undecided
        left_.resize(s.edges.size());
        for (size_t e = 0; e < s.edges.size(); ++e)
            left_[e] = static_cast<int>(s.edges[e].size());
        incident_.assign(s.ground_size, {});
        for (size_t e = 0; e < s.edges.size(); ++e)
            for (int v : s.edges[e])
                incident_[v].push_back(static_cast<int>(e));
    }

    std::optional<std::vector<int>> run() {
        if (dfs(0)) return chosen_;
        return std::nullopt;
    }

  private:
    bool feasible_here() const {
        for (size_t e = 0; e < s_.edges.size(); ++e) {
            if (hits_[e] > tau_) return false;
            if (hits_[e] + left_[e] < tau_) return false;
        }
        return true;
    }

    bool dfs(int v) {
        if (v == s_.ground_size) {
            for (size_t e = 0; e < s_.edges.size(); ++e)
                if (hits_[e] != tau_) return false;
            return true;
        }
        // include v
        chosen_.push_back(v);
        bool ok = true;
        for (int e : incident_[v]) {
            ++hits_[e];
            --left_[e];
            if (hits_[e] > tau_) ok = false;
        }
        if (ok && feasible_here() && dfs(v + 1)) return true;
        for (int e : incident_[v]) {
            --hits_[e];
            ++left_[e];
        }
        chosen_.pop_back();
        // exclude v
        for (int e : incident_[v]) --left_[e];
        bool res = feasible_here() && dfs(v + 1);
        if (!res)
            for (int e : incident_[v]) ++left_[e];
        return res;
    }

    const SetSystem& s_;
    int tau_;
    std::vector<int> hits_, left_, chosen_;
    std::vector<std::vector<int>> incident_;
};

}  // namespace

WitnessReduceResult reduce_via_witness(const SetSystem& s, int tau) {
    validate_system(s);
    if (tau < 2)
        throw std::invalid_argument("witness reduction needs tau >= 2");
    WitnessReduceResult out;

    auto witness = WitnessSearch(s, tau).run();
    if (!witness) {
        out.failure = "no witness: no vertex set meets every edge in exactly " +
                      std::to_string(tau) + " points";
        return out;
    }
    out.witness_set = *witness;
    std::set<int> X(witness->begin(), witness->end());

    // Traces, deduplicated but remembering which original edges share one.
    std::vector<std::vector<int>> traces;          // unique traces, in order
    std::vector<int> trace_of(s.edges.size());     // edge -> unique trace id
    {
        std::map<std::vector<int>, int> seen;
        for (size_t e = 0; e < s.edges.size(); ++e) {
            std::vector<int> tr;
            for (int v : s.edges[e])
                if (X.count(v)) tr.push_back(v);
            auto [it, fresh] =
                seen.emplace(tr, static_cast<int>(traces.size()));
            if (fresh) traces.push_back(tr);
            trace_of[e] = it->second;
        }
    }

    // ED sweep over the traces (same greedy order as ed_decompose).
    std::vector<std::vector<int>> removal(traces.size()),
        remainder(traces.size());
    {
        std::set<int> claimed;
        for (size_t i = 0; i < traces.size(); ++i) {
            for (int v : traces[i])
                (claimed.count(v) ? removal[i] : remainder[i]).push_back(v);
            if (remainder[i].empty()) {
                out.failure =
                    "ed failed: trace " + std::to_string(i) +
                    " has an empty remainder under the greedy order";
                return out;
            }
            claimed.insert(remainder[i].begin(), remainder[i].end());
        }
    }

    // Color remainders in order; each one first covers the colors absent
    // from its removal set, which is what makes the per-edge contract hold.
    out.coloring.palette = tau;
    for (int v = 0; v < s.ground_size; ++v) out.coloring.assignment[v] = 0;
    for (size_t i = 0; i < traces.size(); ++i) {
        std::set<int> on_removal;
        for (int v : removal[i]) on_removal.insert(out.coloring.at(v));
        std::vector<int> order;  // colors not on F first, then the rest
        for (int c = 0; c < tau; ++c)
            if (!on_removal.count(c)) order.push_back(c);
        for (int c = 0; c < tau; ++c)
            if (on_removal.count(c)) order.push_back(c);
        for (size_t j = 0; j < remainder[i].size(); ++j)
            out.coloring.assignment[remainder[i][j]] = order[j];
    }

    for (size_t e = 0; e < s.edges.size(); ++e) {
        WitnessReduceResult::EdgeContract ct;
        auto uniq = unique_color_set(s, out.coloring, static_cast<int>(e));
        for (int c = 0; c < tau; ++c)
            if (!uniq.count(c)) ct.missing.insert(c);
        ct.allowed.insert(0);
        for (int v : removal[trace_of[e]])
            ct.allowed.insert(out.coloring.at(v));
        ct.pass = std::includes(ct.allowed.begin(), ct.allowed.end(),
                                ct.missing.begin(), ct.missing.end());
        out.contracts.push_back(std::move(ct));
    }
    out.ok = std::all_of(out.contracts.begin(), out.contracts.end(),
                         [](const auto& ct) { return ct.pass; });
    if (!out.ok) out.failure = "contract violated";  // should not happen
    return out;
}

Ind0Result extend_ind0(const ExtensionProblem& p, int d,
                       const std::vector<int>* allowed_vertices) {
    validate_problem(p);
    if (p.mode != Mode::weak_cf)
        throw std::invalid_argument("extend_ind0 works on weak problems");
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    {
        ADParams ad;
        ad.mu = d;
        auto rep = is_almost_disjoint(p.system, ad);
        if (!rep.ok)
            throw std::invalid_argument(
                "system is not d-almost disjoint: edges " +
                std::to_string(rep.violating_edges[0]) + "," +
                std::to_string(rep.violating_edges[1]) + " share " +
                std::to_string(rep.common_vertices.size()) + " vertices");
    }
    int k = 0;
    for (const auto& edge : p.system.edges) {
        int hit = 0;
        for (int v : edge)
            if (p.fixed.has(v)) ++hit;
        k = std::max(k, hit);
    }
    if (p.spill_bound) {
        if (k > *p.spill_bound)
            throw std::invalid_argument("declared spill bound violated");
        k = *p.spill_bound;
    }
    const int x = p.palette;
    if (k + d > 2 * x - 1)
        throw std::invalid_argument(
            "palette too small: k + d = " + std::to_string(k + d) +
            " exceeds 2x - 1 = " + std::to_string(2 * x - 1));

    std::optional<std::set<int>> allowed;
    if (allowed_vertices)
        allowed.emplace(allowed_vertices->begin(), allowed_vertices->end());

    Ind0Result out;
    out.coloring = p.fixed;
    std::vector<int> new_on(p.system.edges.size(), 0);
    std::vector<std::vector<int>> incident(p.system.ground_size);
    for (size_t e = 0; e < p.system.edges.size(); ++e)
        for (int v : p.system.edges[e])
            incident[v].push_back(static_cast<int>(e));
    std::set<int> in_earlier;  // vertices of already-processed edges

    for (size_t e = 0; e < p.system.edges.size(); ++e) {
        const auto& edge = p.system.edges[e];
        std::map<int, int> mult;
        for (int v : edge) {
            auto it = out.coloring.assignment.find(v);
            if (it != out.coloring.assignment.end()) mult[it->second]++;
        }
        int unique_color = -1;
        for (const auto& [c, cnt] : mult)
            if (cnt == 1) { unique_color = c; break; }

        Ind0Step step;
        step.edge = static_cast<int>(e);
        if (unique_color >= 0) {
            step.kept = true;
            step.witness_color = unique_color;
        } else {
            // a color with zero multiplicity exists: at most k + d < 2x
            // vertices are colored and none is unique, so at most
            // (k + d) / 2 < x distinct colors are in play
            int zero_color = -1;
            for (int c = 0; c < x; ++c)
                if (!mult.count(c)) { zero_color = c; break; }
            if (zero_color < 0) {
                out.failed_edge = static_cast<int>(e);
                out.failure = "no zero-multiplicity color on edge " +
                              std::to_string(e);
                return out;
            }
            int pick = -1;
            for (int v : edge) {
                if (out.coloring.has(v)) continue;
                if (in_earlier.count(v)) continue;
                if (allowed && !allowed->count(v)) continue;
                bool room = true;
                for (int e2 : incident[v])
                    if (new_on[e2] >= d) { room = false; break; }
                if (room) { pick = v; break; }
            }
            if (pick < 0) {
                out.failed_edge = static_cast<int>(e);
                out.failure = "no admissible vertex left on edge " +
                              std::to_string(e);
                return out;
            }
            out.coloring.assignment[pick] = zero_color;
            for (int e2 : incident[pick]) ++new_on[e2];
            step.kept = false;
            step.vertex = pick;
            step.witness_color = zero_color;
        }
        out.steps.push_back(step);
        in_earlier.insert(edge.begin(), edge.end());
    }

    // recount the budget invariant from scratch
    for (size_t e = 0; e < p.system.edges.size(); ++e) {
        int cnt = 0;
        for (int v : p.system.edges[e])
            if (out.coloring.has(v) && !p.fixed.has(v)) ++cnt;
        out.max_new_on_edge = std::max(out.max_new_on_edge, cnt);
    }
    if (out.max_new_on_edge > d)
        throw std::logic_error("new-domain budget violated");
    if (!is_weak_cf(p.system, out.coloring).ok)
        throw std::logic_error("extension is not weakly conflict-free");
    out.ok = true;
    return out;
}

bool validate_layering(const SetSystem& s, const LayeringCertificate& cert,
                       std::string* why) {
    auto bad = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    std::vector<int> block_of(s.ground_size, -1);
    for (size_t b = 0; b < cert.blocks.size(); ++b)
        for (int v : cert.blocks[b]) {
            if (v < 0 || v >= s.ground_size) return bad("vertex out of range");
            if (block_of[v] != -1) return bad("blocks overlap");
            block_of[v] = static_cast<int>(b);
        }
    for (int v = 0; v < s.ground_size; ++v)
        if (block_of[v] == -1) return bad("blocks do not cover the ground set");
    if (cert.edge_block.size() != s.edges.size())
        return bad("edge assignment size mismatch");
    for (size_t e = 0; e < s.edges.size(); ++e) {
        int b = cert.edge_block[e];
        if (b < 0 || b >= static_cast<int>(cert.blocks.size()))
            return bad("edge assigned to a missing block");
        int earlier = 0;
        for (int v : s.edges[e]) {
            if (block_of[v] > b)
                return bad("edge " + std::to_string(e) +
                           " reaches into a later block");
            if (block_of[v] < b) ++earlier;
        }
        if (earlier > cert.spill)
            return bad("edge " + std::to_string(e) +
                       " exceeds the spill budget");
    }
    return true;
}

LayeringResult find_layering(const SetSystem& s, int d, int spill) {
    validate_system(s);
    (void)d;  // recorded by callers; the construction itself needs only spill
    LayeringResult out;
    out.certificate.spill = spill;
    out.certificate.edge_block.assign(s.edges.size(), -1);

    std::set<int> earlier;          // vertices of earlier blocks
    std::vector<char> placed(s.edges.size(), 0);
    size_t placed_count = 0;

    while (placed_count < s.edges.size()) {
        // seed: first unplaced edge within the budget
        int seed = -1;
        for (size_t e = 0; e < s.edges.size(); ++e) {
            if (placed[e]) continue;
            int before = 0;
            for (int v : s.edges[e])
                if (earlier.count(v)) ++before;
            if (before <= spill) { seed = static_cast<int>(e); break; }
        }
        if (seed < 0) {
            out.failure = "no seed edge fits the spill budget";
            return out;
        }

        const int b = static_cast<int>(out.certificate.blocks.size());
        std::set<int> block_verts;
        std::vector<int> queue = {seed};
        placed[seed] = 1;
        ++placed_count;
        out.certificate.edge_block[seed] = b;
        for (int v : s.edges[seed])
            if (!earlier.count(v)) block_verts.insert(v);

        while (!queue.empty()) {
            queue.pop_back();
            // absorb every unplaced edge touching the block being built
            bool grew = true;
            while (grew) {
                grew = false;
                for (size_t e = 0; e < s.edges.size(); ++e) {
                    if (placed[e]) continue;
                    bool touches = false;
                    for (int v : s.edges[e])
                        if (block_verts.count(v)) { touches = true; break; }
                    if (!touches) continue;
                    int before = 0;
                    for (int v : s.edges[e])
                        if (earlier.count(v)) ++before;
                    if (before > spill) {
                        out.failure =
                            "edge " + std::to_string(e) +
                            " touches the current block but already has " +
                            std::to_string(before) +
                            " vertices in earlier blocks (budget " +
                            std::to_string(spill) + ")";
                        return out;
                    }
                    placed[e] = 1;
                    ++placed_count;
                    out.certificate.edge_block[e] = b;
                    for (int v : s.edges[e])
                        if (!earlier.count(v)) block_verts.insert(v);
                    grew = true;
                }
            }
        }

        out.certificate.blocks.emplace_back(block_verts.begin(),
                                            block_verts.end());
        earlier.insert(block_verts.begin(), block_verts.end());
    }

    // vertices in no edge close the certificate
    std::vector<int> rest;
    for (int v = 0; v < s.ground_size; ++v)
        if (!earlier.count(v)) rest.push_back(v);
    if (!rest.empty()) out.certificate.blocks.push_back(std::move(rest));

    std::string why;
    if (!validate_layering(s, out.certificate, &why))
        throw std::logic_error("constructed layering invalid: " + why);
    out.ok = true;
    return out;
}

LayeredExtendResult layered_extend(const SetSystem& s,
                                   const LayeringCertificate& cert, int x,
                                   int d, int k,
                                   const PartialColoring* fixed) {
    validate_system(s);
    std::string why;
    if (!validate_layering(s, cert, &why))
        throw std::invalid_argument("invalid layering: " + why);

    const int budget = k + d - 1;
    if (cert.spill > budget)
        throw std::invalid_argument(
            "layering spill " + std::to_string(cert.spill) +
            " exceeds the usable budget k + d - 1 = " +
            std::to_string(budget));

    LayeredExtendResult out;
    PartialColoring global;
    global.palette = x;
    if (fixed) {
        if (fixed->palette != x)
            throw std::invalid_argument("fixed palette mismatch");
        global = *fixed;
    }
    for (size_t b = 0; b < cert.blocks.size(); ++b) {
        std::vector<int> block_edges;
        for (size_t e = 0; e < s.edges.size(); ++e)
            if (cert.edge_block[e] == static_cast<int>(b))
                block_edges.push_back(static_cast<int>(e));
        if (block_edges.empty()) continue;

        ExtensionProblem sub;
        sub.system.ground_size = s.ground_size;
        for (int e : block_edges) sub.system.edges.push_back(s.edges[e]);
        sub.system.meta = {{"family", "layer-block"}, {"block", b}};
        sub.palette = x;
        sub.mode = Mode::weak_cf;
        sub.fixed.palette = x;
        // everything already decided on this block's edges is pinned
        for (int e : block_edges)
            for (int v : s.edges[e])
                if (global.has(v)) sub.fixed.assignment[v] = global.at(v);
        sub.spill_bound = budget;

        Ind0Result r;
        try {
            r = extend_ind0(sub, d, &cert.blocks[b]);
        } catch (const std::invalid_argument& err) {
            out.failed_block = static_cast<int>(b);
            out.failure = err.what();
            return out;
        }
        if (!r.ok) {
            out.failed_block = static_cast<int>(b);
            out.failure = r.failure;
            return out;
        }
        for (const auto& [v, c] : r.coloring.assignment)
            global.assignment[v] = c;
    }

    if (!is_weak_cf(s, global).ok)
        throw std::logic_error("concatenation is not weakly conflict-free");
    out.ok = true;
    out.coloring = std::move(global);
    return out;
}

}  // namespace cfc
