#ifndef CFCHROMA_SOLVER_HPP
#define CFCHROMA_SOLVER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cfchroma/set_system.hpp"

namespace cfc {

// strict_cf: total colorings, every edge sees some color exactly once.
// weak_cf:  partial colorings; a vertex may stay blank and blanks never
//           count toward multiplicities.
// proper:   total colorings, no edge monochromatic (drives chi()).
enum class Mode { strict_cf, weak_cf, proper };

const char* mode_name(Mode m);
Mode mode_from_name(const std::string& name);

// degree_desc: vertices by descending edge-degree, ties by index (default).
// copy_interleave: for instances built from stacked copies (meta carries
//   "copies" and "base_ground"): visit copy-position p of every copy before
//   position p+1.  Cross-copy edges then bite early; on transversal-lift
//   instances this turns an astronomically slow refutation into a fast one.
//   The verdict is order-independent; only the node count changes.
enum class OrderPolicy { degree_desc, copy_interleave };

struct ExtensionProblem {
    SetSystem system;
    PartialColoring fixed;            // fixed.palette must equal palette
    int palette = 0;
    std::optional<int> spill_bound;   // declared max |edge cap dom(fixed)|
    Mode mode = Mode::strict_cf;
};

// Throws std::invalid_argument when palettes disagree, the fixed coloring is
// out of range, or a declared spill bound is violated.
void validate_problem(const ExtensionProblem& p);

enum class Verdict { feasible, infeasible, unknown };
const char* verdict_name(Verdict v);

struct SolveStats {
    long long nodes = 0;
    bool complete = false;  // exhaustive search finished (or witness found)
};

struct SolveResult {
    Verdict verdict = Verdict::unknown;
    std::optional<PartialColoring> witness;
    SolveStats stats;
};

long long default_node_limit();  // env CFCHROMA_NODE_LIMIT, else 50M

struct SolveOptions {
    long long node_limit = default_node_limit();
    OrderPolicy order = OrderPolicy::degree_desc;
};

// Complete backtracking search.  Feasible results carry a witness that
// re-verifies through is_cf/is_weak_cf and agrees with `fixed` on its
// domain.  Infeasible results are exhaustive (stats.complete) unless the
// node limit fired, in which case the verdict is unknown.
SolveResult feasible_cf(const ExtensionProblem& p,
                        const SolveOptions& opts = {});

// Smallest-palette searches.  `exact` is false only when a node limit
// interrupted the climb; lower_bound is always a proven bound.
struct OptResult {
    bool exact = false;
    int value = -1;       // meaningful when exact
    int lower_bound = 1;
    long long nodes = 0;
};

OptResult chi(const SetSystem& s, const SolveOptions& opts = {});
OptResult chi_cf(const SetSystem& s, const SolveOptions& opts = {});
OptResult wchi_cf(const SetSystem& s, const SolveOptions& opts = {});

// Plain enumeration with no pruning, used to cross-check the search engine.
// Refuses instances whose enumeration count exceeds the cap.
struct OracleOptions {
    long long enumeration_cap = 100000000;  // value count, mode-adjusted base
};
SolveResult brute_oracle(const ExtensionProblem& p,
                         const OracleOptions& opts = {});

// Rewrites a weak extension problem so that dom(fixed) splits into pairwise
// disjoint blocks of size exactly spill_bound, one per edge: fixed vertices
// shared between edges are duplicated per incident edge (each copy keeps the
// original color) and short blocks are padded with fresh fixed vertices that
// lie in no edge.  Fixed vertices outside every edge serve as padding first.
// Feasibility is preserved in both directions: the free vertices are shared
// and each edge sees the same color multiset either way.
struct NormalizeResult {
    ExtensionProblem problem;
    std::vector<std::vector<int>> blocks;  // partition of dom(fixed')
    std::map<int, int> copy_of;            // appended vertex -> source (-1 pad)
};
NormalizeResult normalize_extension_witness(const ExtensionProblem& p);

nlohmann::json solve_result_to_json(const SolveResult& r);
nlohmann::json opt_result_to_json(const OptResult& r,
                                  const std::string& metric);

}  // namespace cfc

#endif
