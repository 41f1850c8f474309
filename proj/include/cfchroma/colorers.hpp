#ifndef CFCHROMA_COLORERS_HPP
#define CFCHROMA_COLORERS_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cfchroma/solver.hpp"

namespace cfc {

// Per-edge forbidden witness colors; empty vector means "nothing forbidden".
struct AvoidMap {
    std::vector<std::set<int>> forbidden;  // size 0 or |edges|
};

// Walks vertices in ascending order and gives each a color unused so far and
// outside every avoid-set attached to edges whose maximum vertex is being
// colored.  The result is injective, so on every edge the color of max(A) is
// unique and permitted: that color is the edge's recorded witness.
struct GreedyMaxResult {
    bool ok = false;
    int blocking_vertex = -1;            // palette ran out here
    PartialColoring coloring;            // total when ok
    std::vector<int> witness_color;      // per edge, f(max A)
};
GreedyMaxResult greedy_max_color(const SetSystem& s, const AvoidMap& avoid,
                                 int palette);

// Colors each edge's fresh part (vertices in no earlier edge) injectively
// with colors 0,1,... up to the palette size, leaving deeper vertices blank.
// Reports, per edge, how many palette colors fail to be unique there; that
// deficiency never exceeds (overlap with earlier edges) + max(0, palette -
// fresh size).
struct DisjointifyResult {
    PartialColoring coloring;
    std::vector<int> deficiency;   // |palette \ unique_color_set(edge)|
    std::vector<int> overlap;      // |A cap union of earlier edges|
    std::vector<int> fresh_size;   // |fresh part|
};
DisjointifyResult disjointify_color(const SetSystem& s, int palette);

// Greedy sweep: F(A_n) = A_n cap (vertices claimed by earlier remainders).
// Fails on the first edge whose remainder would be empty; that is a property
// of this edge order, not a proof that no decomposition exists.
struct EDResult {
    bool ok = false;
    int failed_edge = -1;
    EDDecomposition decomposition;
};
EDResult ed_decompose(const SetSystem& s);

// Pipeline: find a tau-witness X (complete backtracking over vertices,
// include-first, so the result is deterministic), take the trace on X,
// ED-decompose it, then color each remainder injectively using, first, the
// colors that do not appear on its removal set.  Off-X vertices get color 0.
// Guarantees, per edge A: every color missing from unique_color_set(A) lies
// in {0} + colors of F(A cap X).
struct WitnessReduceResult {
    bool ok = false;
    std::string failure;                  // "no witness" / "ed failed: ..."
    std::vector<int> witness_set;
    PartialColoring coloring;             // total on the ground set when ok
    struct EdgeContract {
        std::set<int> missing;            // palette \ unique_color_set
        std::set<int> allowed;            // {0} + colors on F(A cap X)
        bool pass = false;
    };
    std::vector<EdgeContract> contracts;  // per edge when ok
};
WitnessReduceResult reduce_via_witness(const SetSystem& s, int tau);

// One pass over the edges of a weak extension problem with d-almost-disjoint
// edges and per-edge fixed part of size at most k, where k + d <= 2x - 1.
// An edge that already sees a unique color is kept; otherwise a color of
// multiplicity zero exists (pigeonhole) and is placed on a vertex that is
// free, outside every earlier edge, and whose every containing edge still
// has room under the new-domain budget d.  The budget is checked for the
// current edge too, so |A cap (domain - fixed domain)| <= d holds for every
// edge after every step.
struct Ind0Step {
    int edge = -1;
    bool kept = false;
    int witness_color = -1;  // the unique color (kept) or the placed color
    int vertex = -1;         // placed vertex, -1 when kept
};
struct Ind0Result {
    bool ok = false;
    int failed_edge = -1;
    std::string failure;
    PartialColoring coloring;     // fixed plus the new points
    std::vector<Ind0Step> steps;
    int max_new_on_edge = 0;      // recounted after the run; <= d when ok
};
Ind0Result extend_ind0(const ExtensionProblem& p, int d,
                       const std::vector<int>* allowed_vertices = nullptr);

// Ordered disjoint vertex blocks covering the ground set, one block index
// per edge; every edge lies inside its block plus earlier blocks and meets
// the earlier ones in at most `spill` vertices.
struct LayeringCertificate {
    std::vector<std::vector<int>> blocks;
    std::vector<int> edge_block;
    int spill = 0;
};
bool validate_layering(const SetSystem& s, const LayeringCertificate& cert,
                       std::string* why = nullptr);

// Greedy block construction: seed with the first unplaced edge within the
// spill budget, absorb every edge that touches the growing block (an edge
// touching the block but over budget can never be placed later, so that is
// an immediate failure), repeat.  Vertices in no edge form a final block.
struct LayeringResult {
    bool ok = false;
    std::string failure;
    LayeringCertificate certificate;
};
LayeringResult find_layering(const SetSystem& s, int d, int spill);

// Runs extend_ind0 block by block: each block solves its own edges with
// budget k + d - 1 (original fixed colors plus what earlier blocks wrote on
// its edges), picking new vertices only inside the block.
struct LayeredExtendResult {
    bool ok = false;
    int failed_block = -1;
    std::string failure;
    PartialColoring coloring;
};
LayeredExtendResult layered_extend(const SetSystem& s,
                                   const LayeringCertificate& cert, int x,
                                   int d, int k,
                                   const PartialColoring* fixed = nullptr);

}  // namespace cfc

#endif
