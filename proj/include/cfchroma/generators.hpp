#ifndef CFCHROMA_GENERATORS_HPP
#define CFCHROMA_GENERATORS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cfchroma/set_system.hpp"

namespace cfc {

// All generators are deterministic: identical parameters give bit-identical
// instances.  Each output records family/parameters in meta, including the
// almost-disjointness bound ("mu") the instance is guaranteed to satisfy.

// Ground [0,m); one edge per 4-set holding exactly two even and two odd
// vertices.
SetSystem gen_quad(int m);

// Product construction: vertices are pairs (S, i) with S an (n-1)-subset of
// [lambda] (colex-ranked) and i < k; one edge per n-subset Y, of size t,
// filled so that for every i the count |{S in [Y]^(n-1) : (S,i) in edge}|
// is never exactly 1.  Requires n >= 2, 0 < k < t <= n*k, t even when n = 2.
struct ProductParams {
    int lambda = 0;
    int n = 0;
    int k = 0;
    int t = 0;
};
SetSystem gen_product_gadget(const ProductParams& params);

// For a total coloring f, view each subset-rank r as the k-tuple
// g(r) = (f(r*k+0), ..., f(r*k+k-1)) and look for an n-set Y all of whose
// (n-1)-subsets share one g-value.  Such a Y makes every color on the edge
// of Y repeat, so the edge has no uniquely-colored vertex.  `found = false`
// means no homogeneous Y exists (says nothing about f being conflict-free).
struct ProductRefutation {
    bool found = false;
    std::vector<int> homogeneous_set;     // the n elements of Y
    int edge_index = -1;
    std::map<int, int> multiplicity;      // recount on that edge: all >= 2
};
ProductRefutation refute_product_coloring(const SetSystem& gadget,
                                          const PartialColoring& f);

// All q^2+q lines of the affine plane over F_q (q prime); point (x,y) has
// index x*q + y.
SetSystem gen_affine_lines(int q);

// The rows x cols lattice, every line through >= 2 of its points, and per
// line four extra collinear lattice points ("C-points") outside the box,
// chosen pairwise distinct across lines and off every other line.  The
// returned partial coloring pins only C-points: vertical lines get colors
// {0,0,1,1}, horizontals {1,1,2,2}, all slanted lines {0,0,2,2}.
struct GridGadget {
    SetSystem system;
    PartialColoring fixed;
};
GridGadget gen_grid_gadget(int rows = 4, int cols = 6);

// Recomputes the whole geometry from meta.coords and re-checks every
// structural promise of the gadget, independent of generator internals:
// line completeness, C-block disjointness, 4 C-points per line off the box
// and off other lines, and the three color patterns.
struct GridCheck {
    bool ok = false;
    std::string failure;  // first broken property, empty when ok
};
GridCheck check_grid_gadget(const SetSystem& s, const PartialColoring& fixed);

// 2t vertex-disjoint copies of `base` (copy n occupies
// [n*N, (n+1)*N)) plus one size-2t edge per transversal that picks one
// vertex from every copy.  Full enumeration has N^(2t) transversals and is
// refused beyond `transversal_cap` unless sampling is enabled, which draws
// `sample_count` distinct transversals from the seeded generator instead.
// Requires the base to be 2t-almost disjoint.
struct LiftOptions {
    long long transversal_cap = 1000000;
    bool sample = false;
    long long sample_count = 100000;
    uint64_t seed = 0;
};
SetSystem gen_lift0(const SetSystem& base, int t,
                    const LiftOptions& opts = {});

// Disjoint union with vertex offsets, parts in the given order.
SetSystem gen_union(const std::vector<SetSystem>& parts);

// Subset ranking shared by the product generator and refuter: colex rank of
// a strictly increasing subset (rank(S) = sum C(S[j], j+1)).
long long colex_rank(const std::vector<int>& subset);

}  // namespace cfc

#endif
