#include "cfchroma/set_system.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfc {

namespace {

// |a cap b| for sorted vectors.
int intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
    int n = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else { ++n; ++ia; ++ib; }
    }
    return n;
}

std::vector<int> intersection(const std::vector<int>& a,
                              const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
}

}  // namespace

int normalize_edges(std::vector<std::vector<int>>& edges) {
    for (auto& e : edges) {
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
    }
    int dropped = 0;
    std::vector<std::vector<int>> kept;
    std::set<std::vector<int>> seen;
    for (auto& e : edges) {
        if (e.size() < 2) { ++dropped; continue; }
        if (seen.insert(e).second) kept.push_back(std::move(e));
    }
    edges = std::move(kept);
    return dropped;
}

void validate_system(const SetSystem& s) {
    if (s.ground_size < 0)
        throw std::invalid_argument("ground_size must be nonnegative");
    std::set<std::vector<int>> seen;
    for (size_t i = 0; i < s.edges.size(); ++i) {
        const auto& e = s.edges[i];
        if (e.size() < 2)
            throw std::invalid_argument("edge " + std::to_string(i) +
                                        " has fewer than 2 vertices");
        for (size_t j = 0; j < e.size(); ++j) {
            if (e[j] < 0 || e[j] >= s.ground_size)
                throw std::invalid_argument("edge " + std::to_string(i) +
                                            " references vertex out of range");
            if (j > 0 && e[j - 1] >= e[j])
                throw std::invalid_argument("edge " + std::to_string(i) +
                                            " is not strictly increasing");
        }
        if (!seen.insert(e).second)
            throw std::invalid_argument("duplicate edge at index " +
                                        std::to_string(i));
    }
}

void validate_coloring(const SetSystem& s, const PartialColoring& f) {
    if (f.palette <= 0)
        throw std::invalid_argument("palette must be positive");
    for (const auto& [v, c] : f.assignment) {
        if (v < 0 || v >= s.ground_size)
            throw std::invalid_argument("colored vertex out of range");
        if (c < 0 || c >= f.palette)
            throw std::invalid_argument("color out of palette range");
    }
}

std::set<int> unique_color_set(const SetSystem& s, const PartialColoring& f,
                               int edge_index) {
    if (edge_index < 0 || edge_index >= static_cast<int>(s.edges.size()))
        throw std::invalid_argument("edge index out of range");
    std::map<int, int> mult;
    for (int v : s.edges[edge_index]) {
        auto it = f.assignment.find(v);
        if (it != f.assignment.end()) mult[it->second]++;
    }
    std::set<int> uniq;
    for (const auto& [c, n] : mult)
        if (n == 1) uniq.insert(c);
    return uniq;
}

namespace {

CFReport cf_report(const SetSystem& s, const PartialColoring& f) {
    CFReport rep;
    rep.ok = true;
    rep.edges.reserve(s.edges.size());
    for (size_t i = 0; i < s.edges.size(); ++i) {
        EdgeReport er;
        er.edge_index = static_cast<int>(i);
        for (int v : s.edges[i]) {
            auto it = f.assignment.find(v);
            if (it != f.assignment.end()) er.multiplicity[it->second]++;
        }
        for (const auto& [c, n] : er.multiplicity)
            if (n == 1) er.unique_set.insert(c);
        er.satisfied = !er.unique_set.empty();
        if (!er.satisfied && rep.ok) {
            rep.ok = false;
            rep.first_violated = er.edge_index;
        }
        rep.edges.push_back(std::move(er));
    }
    return rep;
}

}  // namespace

CFReport is_cf(const SetSystem& s, const PartialColoring& f) {
    validate_coloring(s, f);
    if (!f.total_on(s.ground_size))
        throw std::invalid_argument("is_cf requires a total coloring; got " +
                                    std::to_string(f.assignment.size()) +
                                    " of " + std::to_string(s.ground_size) +
                                    " vertices (use is_weak_cf for partial)");
    return cf_report(s, f);
}

CFReport is_weak_cf(const SetSystem& s, const PartialColoring& f) {
    validate_coloring(s, f);
    return cf_report(s, f);
}

ADReport is_almost_disjoint(const SetSystem& s, const ADParams& params) {
    if (params.mu < 1) throw std::invalid_argument("mu must be >= 1");
    int nu = params.nu.value_or(2);
    if (nu < 2) throw std::invalid_argument("nu must be >= 2");
    const int m = static_cast<int>(s.edges.size());

    ADReport rep;
    rep.ok = true;
    if (nu == 2) {
        for (int i = 0; i < m && rep.ok; ++i)
            for (int j = i + 1; j < m; ++j)
                if (intersection_size(s.edges[i], s.edges[j]) >= params.mu) {
                    rep.ok = false;
                    rep.violating_edges = {i, j};
                    rep.common_vertices =
                        intersection(s.edges[i], s.edges[j]);
                    break;
                }
        return rep;
    }

    // nu-wise: walk all nu-subsets of the edge list.  Cost is C(m, nu), so
    // refuse outright when that exceeds the cap instead of quietly sampling.
    if (nu > m) return rep;  // vacuous
    long long tuples = 1;
    for (int i = 0; i < nu; ++i) {
        tuples = tuples * (m - i) / (i + 1);
        if (tuples > params.tuple_cap)
            throw std::runtime_error(
                "bound-check too large: C(" + std::to_string(m) + "," +
                std::to_string(nu) + ") exceeds tuple cap " +
                std::to_string(params.tuple_cap));
    }

    std::vector<int> idx(nu);
    for (int i = 0; i < nu; ++i) idx[i] = i;
    while (true) {
        std::vector<int> common = s.edges[idx[0]];
        for (int i = 1; i < nu && !common.empty(); ++i)
            common = intersection(common, s.edges[idx[i]]);
        if (static_cast<int>(common.size()) >= params.mu) {
            rep.ok = false;
            rep.violating_edges = idx;
            rep.common_vertices = common;
            return rep;
        }
        // next nu-subset in lexicographic order
        int i = nu - 1;
        while (i >= 0 && idx[i] == m - nu + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < nu; ++j) idx[j] = idx[j - 1] + 1;
    }
    return rep;
}

bool is_transversal(const SetSystem& s, const std::vector<int>& X, int tau) {
    if (X.empty()) return false;
    std::vector<int> xs = X;
    std::sort(xs.begin(), xs.end());
    for (int v : xs)
        if (v < 0 || v >= s.ground_size)
            throw std::invalid_argument("transversal vertex out of range");
    for (const auto& e : s.edges) {
        int n = intersection_size(e, xs);
        if (n <= 0 || n >= tau) return false;
    }
    return true;
}

bool is_witness(const SetSystem& s, const std::vector<int>& X, int tau) {
    std::vector<int> xs = X;
    std::sort(xs.begin(), xs.end());
    for (int v : xs)
        if (v < 0 || v >= s.ground_size)
            throw std::invalid_argument("witness vertex out of range");
    for (const auto& e : s.edges)
        if (intersection_size(e, xs) != tau) return false;
    return true;
}

EDReport verify_ed(const SetSystem& s, const EDDecomposition& ed) {
    if (ed.removed.size() != s.edges.size())
        throw std::invalid_argument("decomposition size mismatch");
    std::vector<std::vector<int>> remainders(s.edges.size());
    for (size_t i = 0; i < s.edges.size(); ++i) {
        std::vector<int> rem = ed.removed[i];
        std::sort(rem.begin(), rem.end());
        // F(A) must live inside A
        if (!std::includes(s.edges[i].begin(), s.edges[i].end(),
                           rem.begin(), rem.end()))
            throw std::invalid_argument(
                "removal set of edge " + std::to_string(i) +
                " is not a subset of the edge");
        std::set_difference(s.edges[i].begin(), s.edges[i].end(),
                            rem.begin(), rem.end(),
                            std::back_inserter(remainders[i]));
    }
    EDReport rep;
    rep.ok = true;
    std::map<int, int> owner;  // vertex -> first remainder claiming it
    for (size_t i = 0; i < remainders.size(); ++i)
        for (int v : remainders[i]) {
            auto [it, fresh] = owner.emplace(v, static_cast<int>(i));
            if (!fresh) {
                rep.ok = false;
                rep.edge_a = it->second;
                rep.edge_b = static_cast<int>(i);
                rep.overlap_vertex = v;
                return rep;
            }
        }
    return rep;
}

SetSystem restrict_system(const SetSystem& s, const std::vector<int>& X,
                          int* dropped_edges) {
    if (X.empty()) throw std::invalid_argument("restriction set is empty");
    std::vector<int> xs = X;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::map<int, int> reindex;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < 0 || xs[i] >= s.ground_size)
            throw std::invalid_argument("restriction vertex out of range");
        reindex[xs[i]] = static_cast<int>(i);
    }

    SetSystem out;
    out.ground_size = static_cast<int>(xs.size());
    int dropped = 0;
    for (const auto& e : s.edges) {
        std::vector<int> trace;
        for (int v : e) {
            auto it = reindex.find(v);
            if (it != reindex.end()) trace.push_back(it->second);
        }
        if (trace.size() < 2) { ++dropped; continue; }
        out.edges.push_back(std::move(trace));
    }
    // identical traces can arise; keep the first of each
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> dedup;
    for (auto& e : out.edges)
        if (seen.insert(e).second) dedup.push_back(std::move(e));
    out.edges = std::move(dedup);

    out.meta = s.meta;
    out.meta["restricted_to"] = xs;
    out.meta["dropped_small_edges"] = dropped;
    if (dropped_edges) *dropped_edges = dropped;
    return out;
}

}  // namespace cfc
