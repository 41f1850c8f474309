#ifndef CFCHROMA_SET_SYSTEM_HPP
#define CFCHROMA_SET_SYSTEM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace cfc {

// A finite set system: N vertices (0..N-1) and a list of edges, each a
// strictly increasing list of vertex indices.  meta carries provenance
// (generator family, parameters) and is never interpreted by algorithms.
struct SetSystem {
    int ground_size = 0;
    std::vector<std::vector<int>> edges;
    nlohmann::json meta = nlohmann::json::object();
};

// Bring an edge list into canonical shape: sort each edge, drop duplicate
// vertices inside an edge, drop edges of size < 2, dedupe edges keeping the
// first occurrence.  Returns how many edges were dropped for being small.
int normalize_edges(std::vector<std::vector<int>>& edges);

// Throws std::invalid_argument when an edge index is out of range, an edge
// has size < 2, an edge is not strictly increasing, or edges repeat.
void validate_system(const SetSystem& s);

// Partial vertex coloring with colors 0..palette-1.  Vertices missing from
// `assignment` are blank.  The map keeps deterministic (ascending) order.
struct PartialColoring {
    int palette = 0;
    std::map<int, int> assignment;

    bool has(int v) const { return assignment.count(v) != 0; }
    int at(int v) const { return assignment.at(v); }
    bool total_on(int ground_size) const {
        return static_cast<int>(assignment.size()) == ground_size;
    }
};

void validate_coloring(const SetSystem& s, const PartialColoring& f);

// Per-edge certificate: color multiplicities over the assigned vertices of
// the edge, the colors hit exactly once, and whether that set is nonempty.
struct EdgeReport {
    int edge_index = 0;
    std::map<int, int> multiplicity;   // color -> count (assigned vertices only)
    std::set<int> unique_set;          // colors with count exactly 1
    bool satisfied = false;            // unique_set nonempty
};

struct CFReport {
    bool ok = false;                   // every edge satisfied
    std::vector<EdgeReport> edges;
    std::optional<int> first_violated; // edge index, when !ok
};

// Almost-disjointness parameters: every pairwise (or nu-wise, when nu is
// given) intersection must have size strictly below mu.
struct ADParams {
    int mu = 1;
    std::optional<int> nu;             // subfamily size for nu-wise checks
    long long tuple_cap = 1000000;     // refuse nu-wise checks beyond this
};

struct ADReport {
    bool ok = false;
    std::vector<int> violating_edges;  // indices of the offending tuple
    std::vector<int> common_vertices;  // their intersection
};

// Removal sets F(A) per edge; remainders A \ F(A) must be pairwise disjoint.
struct EDDecomposition {
    std::vector<std::vector<int>> removed;  // removed[i] subset of edges[i]
};

struct EDReport {
    bool ok = false;
    int edge_a = -1, edge_b = -1;      // first overlapping remainder pair
    int overlap_vertex = -1;
};

// Colors assigned to exactly one vertex of edge `edge_index` (blank vertices
// never contribute).
std::set<int> unique_color_set(const SetSystem& s, const PartialColoring& f,
                               int edge_index);

// Strict conflict-free check: f must be total on the ground set, and every
// edge must see some color exactly once.
CFReport is_cf(const SetSystem& s, const PartialColoring& f);

// Weak variant: f may be partial; unassigned vertices are ignored when
// counting multiplicities.
CFReport is_weak_cf(const SetSystem& s, const PartialColoring& f);

ADReport is_almost_disjoint(const SetSystem& s, const ADParams& params);

// X meets every edge in a nonempty set of size < tau.
bool is_transversal(const SetSystem& s, const std::vector<int>& X, int tau);
// X meets every edge in exactly tau vertices.
bool is_witness(const SetSystem& s, const std::vector<int>& X, int tau);

EDReport verify_ed(const SetSystem& s, const EDDecomposition& ed);

// Trace system {A cap X}: vertices re-indexed by ascending position in X,
// edges that shrink below 2 vertices are dropped (count recorded in meta and
// returned through dropped_edges when non-null).
SetSystem restrict_system(const SetSystem& s, const std::vector<int>& X,
                          int* dropped_edges = nullptr);

}  // namespace cfc

#endif
