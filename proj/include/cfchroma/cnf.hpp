#ifndef CFCHROMA_CNF_HPP
#define CFCHROMA_CNF_HPP

#include <string>
#include <vector>

#include "cfchroma/solver.hpp"

namespace cfc {

// Propositional encoding of an extension problem.
//
// Variables (1-based, DIMACS style):
//   x(v,c) = v*palette + c + 1          vertex v gets color c
//   u(e,c) = N*palette + e*palette + c + 1   color c hits edge e exactly once
//
// Clauses: per-vertex exactly-one over colors (at-most-one only in weak
// mode, where an all-false vertex row means blank); per (edge, color):
// u -> some vertex of the edge has the color, plus pairwise exclusions
// u -> not both; per edge: some u true; fixed assignments as units.
struct CnfDocument {
    int num_vars = 0;
    int palette = 0;
    int ground_size = 0;
    std::vector<std::vector<int>> clauses;
};

CnfDocument export_cnf(const ExtensionProblem& p);

// DIMACS text ("p cnf V C" header); comments describe the variable layout.
std::string to_dimacs(const CnfDocument& doc, bool with_comments = true);

// Rebuild a coloring from solver output: positive literals set variables
// true.  Throws when a vertex row has two colors, or (strict mode) none.
// The caller still verifies the result through is_cf/is_weak_cf.
PartialColoring decode_model(const ExtensionProblem& p,
                             const std::vector<int>& literals);

// True when `values` (indexed by variable, values[0] unused) satisfies every
// clause; used by tests and the round-trip check.
bool evaluate_cnf(const CnfDocument& doc, const std::vector<bool>& values);

// Assemble a satisfying assignment from a known witness (test/round-trip
// helper): vertex rows from the coloring, u-rows from exact multiplicity.
std::vector<bool> model_from_witness(const ExtensionProblem& p,
                                     const CnfDocument& doc,
                                     const PartialColoring& witness);

}  // namespace cfc

#endif
