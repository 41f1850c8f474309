#include "cfchroma/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "cfchroma/rng.hpp"

namespace cfc {

namespace {

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// next k-subset of [0,n) in lexicographic order; false when done
bool next_subset(std::vector<int>& s, int n) {
    int k = static_cast<int>(s.size());
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) return false;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
    return true;
}

bool is_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

}  // namespace

long long colex_rank(const std::vector<int>& subset) {
    long long r = 0;
    for (size_t j = 0; j < subset.size(); ++j)
        r += binom(subset[j], static_cast<int>(j) + 1);
    return r;
}

SetSystem gen_quad(int m) {
    if (m < 4) throw std::invalid_argument("quad family needs m >= 4");
    std::vector<int> evens, odds;
    for (int v = 0; v < m; ++v) (v % 2 == 0 ? evens : odds).push_back(v);

    SetSystem s;
    s.ground_size = m;
    for (size_t a = 0; a < evens.size(); ++a)
        for (size_t b = a + 1; b < evens.size(); ++b)
            for (size_t c = 0; c < odds.size(); ++c)
                for (size_t d = c + 1; d < odds.size(); ++d) {
                    std::vector<int> e = {evens[a], evens[b], odds[c], odds[d]};
                    std::sort(e.begin(), e.end());
                    s.edges.push_back(std::move(e));
                }
    s.meta = {{"family", "quad"}, {"m", m}, {"mu", 4}};
    validate_system(s);
    return s;
}

SetSystem gen_product_gadget(const ProductParams& p) {
    if (p.n < 2) throw std::invalid_argument("product: n >= 2 required");
    if (!(0 < p.k && p.k < p.t && p.t <= p.n * p.k))
        throw std::invalid_argument("product: need 0 < k < t <= n*k");
    if (p.n == 2 && p.t % 2 != 0)
        throw std::invalid_argument("product: t must be even when n = 2");
    if (p.lambda < p.n)
        throw std::invalid_argument("product: lambda >= n required");

    // Per-coordinate counts: split t into at most k parts, each 0 or in
    // [2, n].  Greedy with a look-ahead so no remainder of 1 is left over.
    std::vector<int> profile(p.k, 0);
    int rem = p.t;
    for (int i = 0; i < p.k && rem > 0; ++i) {
        int c = std::min(p.n, rem);
        if (rem - c == 1) --c;
        profile[i] = c;
        rem -= c;
    }
    if (rem != 0)
        throw std::logic_error("product fill failed to place all points");
    for (int c : profile)
        if (c == 1 || c > p.n)
            throw std::logic_error("product fill produced a bad count");

    SetSystem s;
    s.ground_size = static_cast<int>(binom(p.lambda, p.n - 1)) * p.k;

    // One edge per n-subset Y, in lexicographic order.  Inside Y, the
    // (n-1)-subsets are taken in colex order, which is "drop the largest
    // element first".
    std::vector<int> Y(p.n);
    std::iota(Y.begin(), Y.end(), 0);
    do {
        std::vector<std::vector<int>> subs;  // [Y]^(n-1) in colex order
        for (int drop = p.n - 1; drop >= 0; --drop) {
            std::vector<int> b;
            for (int j = 0; j < p.n; ++j)
                if (j != drop) b.push_back(Y[j]);
            subs.push_back(std::move(b));
        }
        std::vector<int> edge;
        for (int i = 0; i < p.k; ++i)
            for (int c = 0; c < profile[i]; ++c)
                edge.push_back(
                    static_cast<int>(colex_rank(subs[c])) * p.k + i);
        std::sort(edge.begin(), edge.end());
        s.edges.push_back(std::move(edge));
    } while (next_subset(Y, p.lambda));

    s.meta = {{"family", "product"},
              {"lambda", p.lambda},
              {"n", p.n},
              {"k", p.k},
              {"t", p.t},
              {"profile", profile},
              {"mu", p.k + 1}};
    validate_system(s);
    return s;
}

ProductRefutation refute_product_coloring(const SetSystem& gadget,
                                          const PartialColoring& f) {
    if (gadget.meta.value("family", std::string()) != "product")
        throw std::invalid_argument("refuter expects a product instance");
    ProductParams p;
    p.lambda = gadget.meta.at("lambda").get<int>();
    p.n = gadget.meta.at("n").get<int>();
    p.k = gadget.meta.at("k").get<int>();
    p.t = gadget.meta.at("t").get<int>();
    if (!f.total_on(gadget.ground_size))
        throw std::invalid_argument("refuter needs a total coloring");

    // g(S) = color tuple of the k slots of subset-rank(S)
    auto gtuple = [&](const std::vector<int>& sub) {
        std::vector<int> tup(p.k);
        long long r = colex_rank(sub);
        for (int i = 0; i < p.k; ++i)
            tup[i] = f.at(static_cast<int>(r) * p.k + i);
        return tup;
    };

    ProductRefutation out;
    std::vector<int> Y(p.n);
    std::iota(Y.begin(), Y.end(), 0);
    int edge_idx = 0;
    do {
        bool homog = true;
        std::vector<int> first;
        for (int drop = 0; drop < p.n && homog; ++drop) {
            std::vector<int> b;
            for (int j = 0; j < p.n; ++j)
                if (j != drop) b.push_back(Y[j]);
            auto tup = gtuple(b);
            if (drop == 0) first = tup;
            else if (tup != first) homog = false;
        }
        if (homog) {
            out.found = true;
            out.homogeneous_set = Y;
            out.edge_index = edge_idx;
            for (int v : gadget.edges[edge_idx])
                out.multiplicity[f.at(v)] = 0;
            for (int v : gadget.edges[edge_idx])
                out.multiplicity[f.at(v)]++;
            return out;
        }
        ++edge_idx;
    } while (next_subset(Y, p.lambda));
    return out;
}

SetSystem gen_affine_lines(int q) {
    if (!is_prime(q))
        throw std::invalid_argument("affine plane needs a prime q");
    SetSystem s;
    s.ground_size = q * q;
    for (int slope = 0; slope < q; ++slope)
        for (int b = 0; b < q; ++b) {
            std::vector<int> e;
            for (int x = 0; x < q; ++x)
                e.push_back(x * q + (slope * x + b) % q);
            std::sort(e.begin(), e.end());
            s.edges.push_back(std::move(e));
        }
    for (int a = 0; a < q; ++a) {
        std::vector<int> e;
        for (int y = 0; y < q; ++y) e.push_back(a * q + y);
        s.edges.push_back(std::move(e));
    }
    s.meta = {{"family", "affine"}, {"q", q}, {"mu", 2}};
    validate_system(s);
    return s;
}

namespace {

struct Pt {
    long long x, y;
    bool operator<(const Pt& o) const {
        return x != o.x ? x < o.x : y < o.y;
    }
    bool operator==(const Pt& o) const { return x == o.x && y == o.y; }
};

// line through two lattice points as a*x + b*y = c with primitive (a,b),
// sign-normalized
struct LineKey {
    long long a, b, c;
    bool operator<(const LineKey& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
    bool operator==(const LineKey& o) const {
        return a == o.a && b == o.b && c == o.c;
    }
    bool contains(const Pt& p) const { return a * p.x + b * p.y == c; }
};

LineKey key_through(const Pt& p, const Pt& q) {
    long long dx = q.x - p.x, dy = q.y - p.y;
    long long g = std::gcd(dx < 0 ? -dx : dx, dy < 0 ? -dy : dy);
    dx /= g;
    dy /= g;
    if (dx < 0 || (dx == 0 && dy < 0)) { dx = -dx; dy = -dy; }
    return LineKey{-dy, dx, -dy * p.x + dx * p.y};
}

}  // namespace

GridGadget gen_grid_gadget(int rows, int cols) {
    if (rows < 2 || cols < 2)
        throw std::invalid_argument("grid gadget needs rows, cols >= 2");

    std::vector<Pt> grid;
    for (int x = 0; x < rows; ++x)
        for (int y = 0; y < cols; ++y) grid.push_back({x, y});
    auto grid_id = [&](const Pt& p) {
        return static_cast<int>(p.x) * cols + static_cast<int>(p.y);
    };
    auto in_box = [&](const Pt& p) {
        return 0 <= p.x && p.x < rows && 0 <= p.y && p.y < cols;
    };

    // collect every line through at least two grid points
    std::map<LineKey, std::set<Pt>> lines;
    for (size_t i = 0; i < grid.size(); ++i)
        for (size_t j = i + 1; j < grid.size(); ++j) {
            LineKey k = key_through(grid[i], grid[j]);
            lines[k].insert(grid[i]);
            lines[k].insert(grid[j]);
        }

    GridGadget out;
    SetSystem& s = out.system;
    s.ground_size = rows * cols;
    out.fixed.palette = 3;

    std::vector<std::vector<long long>> coords;
    for (const Pt& p : grid) coords.push_back({p.x, p.y});

    std::set<Pt> claimed;  // C-points already taken by some line
    nlohmann::json blocks = nlohmann::json::array();

    for (const auto& [key, pts] : lines) {
        // direction vector (primitive) recovered from the key
        Pt dir{key.b, -key.a};
        std::vector<Pt> trace(pts.begin(), pts.end());
        const Pt base = trace.front();
        auto param = [&](const Pt& p) {
            return dir.x != 0 ? (p.x - base.x) / dir.x
                              : (p.y - base.y) / dir.y;
        };
        long long lo = 0, hi = 0;
        for (const Pt& p : trace) {
            lo = std::min(lo, param(p));
            hi = std::max(hi, param(p));
        }

        // Walk outward from both ends of the trace, starting on the high
        // side, and keep the first four lattice points that are outside the
        // box, unclaimed, and on no other grid line.
        std::vector<Pt> cpts;
        for (long long step = 1; static_cast<int>(cpts.size()) < 4; ++step) {
            for (long long tpar : {hi + step, lo - step}) {
                if (static_cast<int>(cpts.size()) == 4) break;
                Pt cand{base.x + tpar * dir.x, base.y + tpar * dir.y};
                if (in_box(cand) || claimed.count(cand)) continue;
                bool on_other = false;
                for (const auto& [okey, opts_] : lines) {
                    (void)opts_;
                    if (okey == key) continue;
                    if (okey.contains(cand)) { on_other = true; break; }
                }
                if (on_other) continue;
                cpts.push_back(cand);
            }
            if (step > 1000000)
                throw std::runtime_error("C-point walk did not terminate");
        }

        std::vector<int> edge;
        for (const Pt& p : trace) edge.push_back(grid_id(p));
        std::vector<int> block;
        bool vertical = (dir.x == 0);
        bool horizontal = (dir.y == 0);
        const int pattern[4] = {vertical ? 0 : (horizontal ? 1 : 0),
                                vertical ? 0 : (horizontal ? 1 : 0),
                                vertical ? 1 : 2,
                                vertical ? 1 : 2};
        for (int i = 0; i < 4; ++i) {
            const Pt& p = cpts[i];
            int id = s.ground_size++;
            claimed.insert(p);
            coords.push_back({p.x, p.y});
            edge.push_back(id);
            block.push_back(id);
            out.fixed.assignment[id] = pattern[i];
        }
        std::sort(edge.begin(), edge.end());
        s.edges.push_back(std::move(edge));
        blocks.push_back(block);
    }

    s.meta = {{"family", "grid"},
              {"rows", rows},
              {"cols", cols},
              {"lines", s.edges.size()},
              {"coords", coords},
              {"c_blocks", blocks},
              {"mu", 2}};
    validate_system(s);
    validate_coloring(s, out.fixed);
    return out;
}

GridCheck check_grid_gadget(const SetSystem& s, const PartialColoring& fixed) {
    GridCheck res;
    auto fail = [&](const std::string& why) {
        res.ok = false;
        res.failure = why;
        return res;
    };

    if (!s.meta.contains("coords") || !s.meta.contains("rows") ||
        !s.meta.contains("cols"))
        return fail("meta lacks coords/rows/cols");
    int rows = s.meta.at("rows").get<int>();
    int cols = s.meta.at("cols").get<int>();
    auto coords = s.meta.at("coords")
                      .get<std::vector<std::vector<long long>>>();
    if (static_cast<int>(coords.size()) != s.ground_size)
        return fail("coords size mismatch");
    std::vector<Pt> at(s.ground_size);
    for (int v = 0; v < s.ground_size; ++v) at[v] = {coords[v][0], coords[v][1]};

    auto in_box = [&](const Pt& p) {
        return 0 <= p.x && p.x < rows && 0 <= p.y && p.y < cols;
    };

    // vertices 0..rows*cols-1 must be the box, row-major
    for (int x = 0; x < rows; ++x)
        for (int y = 0; y < cols; ++y) {
            Pt expect{x, y};
            if (!(at[x * cols + y] == expect))
                return fail("grid ids are not the box in row-major order");
        }
    const int ngrid = rows * cols;
    std::set<Pt> seen_pts;
    for (int v = 0; v < s.ground_size; ++v) {
        if (!seen_pts.insert(at[v]).second)
            return fail("two vertices share a lattice point");
        if (v >= ngrid && in_box(at[v]))
            return fail("extra vertex sits inside the box");
    }

    // each edge: collinear; its box part determines a line; exactly 4
    // outside points, all off every other edge's line
    std::vector<LineKey> keys;
    std::vector<std::vector<int>> cparts(s.edges.size());
    for (size_t e = 0; e < s.edges.size(); ++e) {
        const auto& edge = s.edges[e];
        if (edge.size() < 2) return fail("degenerate edge");
        LineKey k = key_through(at[edge[0]], at[edge[1]]);
        int inside = 0;
        for (int v : edge) {
            if (!k.contains(at[v]))
                return fail("edge " + std::to_string(e) + " is not collinear");
            if (in_box(at[v])) ++inside;
            else cparts[e].push_back(v);
        }
        if (cparts[e].size() != 4)
            return fail("edge " + std::to_string(e) +
                        " does not carry exactly 4 outside points");
        if (inside < 2)
            return fail("edge " + std::to_string(e) +
                        " has fewer than 2 box points");
        keys.push_back(k);
    }
    for (size_t a = 0; a < keys.size(); ++a)
        for (size_t b = a + 1; b < keys.size(); ++b)
            if (keys[a] == keys[b]) return fail("duplicate line");

    // completeness: every line through >= 2 box points occurs
    std::set<LineKey> have(keys.begin(), keys.end());
    for (int x1 = 0; x1 < rows; ++x1)
        for (int y1 = 0; y1 < cols; ++y1)
            for (int x2 = 0; x2 < rows; ++x2)
                for (int y2 = 0; y2 < cols; ++y2) {
                    if (x1 == x2 && y1 == y2) continue;
                    if (!have.count(key_through({x1, y1}, {x2, y2})))
                        return fail("a box line is missing from the edges");
                }

    // every edge must contain ALL box points of its line
    for (size_t e = 0; e < s.edges.size(); ++e) {
        std::set<int> edge_set(s.edges[e].begin(), s.edges[e].end());
        for (int v = 0; v < ngrid; ++v)
            if (keys[e].contains(at[v]) && !edge_set.count(v))
                return fail("edge " + std::to_string(e) +
                            " misses a box point of its line");
    }

    // outside points: off all other lines, blocks pairwise disjoint
    for (size_t e = 0; e < s.edges.size(); ++e)
        for (int v : cparts[e])
            for (size_t o = 0; o < keys.size(); ++o)
                if (o != e && keys[o].contains(at[v]))
                    return fail("an outside point of edge " +
                                std::to_string(e) + " lies on another line");
    std::set<int> all_c;
    for (const auto& cp : cparts)
        for (int v : cp)
            if (!all_c.insert(v).second)
                return fail("outside blocks are not pairwise disjoint");

    // the pinned coloring: exactly the outside points, fixed patterns
    if (fixed.palette != 3) return fail("palette must be 3");
    if (fixed.assignment.size() != all_c.size())
        return fail("fixed coloring must pin exactly the outside points");
    for (const auto& [v, c] : fixed.assignment) {
        (void)c;
        if (!all_c.count(v))
            return fail("fixed coloring touches a box vertex");
    }
    for (size_t e = 0; e < s.edges.size(); ++e) {
        std::multiset<int> got;
        for (int v : cparts[e]) got.insert(fixed.at(v));
        // direction is (b, -a): vertical means x constant, so b == 0
        bool vertical = (keys[e].b == 0);
        bool horizontal = (keys[e].a == 0);
        std::multiset<int> want;
        if (vertical) want = {0, 0, 1, 1};
        else if (horizontal) want = {1, 1, 2, 2};
        else want = {0, 0, 2, 2};
        if (got != want)
            return fail("edge " + std::to_string(e) +
                        " carries the wrong color pattern");
    }

    res.ok = true;
    return res;
}

SetSystem gen_lift0(const SetSystem& base, int t, const LiftOptions& opts) {
    validate_system(base);
    if (t < 1) throw std::invalid_argument("lift0 needs t >= 1");
    const int copies = 2 * t;
    const int n0 = base.ground_size;
    if (n0 < 1) throw std::invalid_argument("lift0 needs a nonempty base");

    ADParams ad;
    ad.mu = copies;
    if (!is_almost_disjoint(base, ad).ok)
        throw std::invalid_argument(
            "lift0 base must be 2t-almost disjoint (two edges meet in " +
            std::to_string(copies) + " or more vertices)");

    long long total = 1;
    bool overflow = false;
    for (int i = 0; i < copies; ++i) {
        if (total > (1LL << 62) / std::max(1, n0)) { overflow = true; break; }
        total *= n0;
    }
    const bool too_many = overflow || total > opts.transversal_cap;
    if (too_many && !opts.sample)
        throw std::runtime_error(
            "lift0: " + std::to_string(n0) + "^" + std::to_string(copies) +
            " transversals exceed the cap " +
            std::to_string(opts.transversal_cap) +
            " (pass the sampling option to subsample)");

    SetSystem s;
    s.ground_size = copies * n0;
    for (int c = 0; c < copies; ++c)
        for (const auto& e : base.edges) {
            std::vector<int> shifted;
            for (int v : e) shifted.push_back(c * n0 + v);
            s.edges.push_back(std::move(shifted));
        }

    if (!too_many) {
        // lexicographic odometer over one pick per copy
        std::vector<int> pick(copies, 0);
        while (true) {
            std::vector<int> e;
            for (int c = 0; c < copies; ++c) e.push_back(c * n0 + pick[c]);
            s.edges.push_back(std::move(e));
            int i = copies - 1;
            while (i >= 0 && pick[i] == n0 - 1) pick[i--] = 0;
            if (i < 0) break;
            ++pick[i];
        }
    } else {
        Rng rng(opts.seed);
        std::set<std::vector<int>> chosen;
        long long want = std::min<long long>(opts.sample_count,
                                             opts.transversal_cap);
        while (static_cast<long long>(chosen.size()) < want) {
            std::vector<int> pick(copies);
            for (int c = 0; c < copies; ++c)
                pick[c] = static_cast<int>(rng.below(n0));
            chosen.insert(std::move(pick));
        }
        for (const auto& pick : chosen) {
            std::vector<int> e;
            for (int c = 0; c < copies; ++c) e.push_back(c * n0 + pick[c]);
            s.edges.push_back(std::move(e));
        }
    }

    s.meta = {{"family", "lift0"},
              {"t", t},
              {"copies", copies},
              {"base_ground", n0},
              {"base_edges", base.edges.size()},
              {"base_family", base.meta.value("family", std::string("?"))},
              {"sampled", too_many},
              {"mu", copies}};
    validate_system(s);
    return s;
}

SetSystem gen_union(const std::vector<SetSystem>& parts) {
    if (parts.empty())
        throw std::invalid_argument("union of zero instances");
    SetSystem s;
    nlohmann::json meta_parts = nlohmann::json::array();
    int offset = 0;
    for (const auto& part : parts) {
        validate_system(part);
        for (const auto& e : part.edges) {
            std::vector<int> shifted;
            for (int v : e) shifted.push_back(offset + v);
            s.edges.push_back(std::move(shifted));
        }
        meta_parts.push_back({{"family",
                               part.meta.value("family", std::string("?"))},
                              {"ground_size", part.ground_size},
                              {"edges", part.edges.size()},
                              {"offset", offset}});
        offset += part.ground_size;
    }
    s.ground_size = offset;
    s.meta = {{"family", "union"}, {"parts", meta_parts}};
    validate_system(s);
    return s;
}

}  // namespace cfc
