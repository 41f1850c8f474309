#include "cfchroma/cnf.hpp"

#include <sstream>
#include <stdexcept>

namespace cfc {

namespace {

int xvar(int v, int c, int palette) { return v * palette + c + 1; }

int uvar(int e, int c, int n, int palette) {
    return n * palette + e * palette + c + 1;
}

}  // namespace

CnfDocument export_cnf(const ExtensionProblem& p) {
    validate_problem(p);
    if (p.mode == Mode::proper)
        throw std::invalid_argument("cnf export covers strict and weak modes");
    const int n = p.system.ground_size;
    const int x = p.palette;
    const int m = static_cast<int>(p.system.edges.size());

    CnfDocument doc;
    doc.palette = x;
    doc.ground_size = n;
    doc.num_vars = n * x + m * x;

    // vertex rows
    for (int v = 0; v < n; ++v) {
        if (p.mode == Mode::strict_cf) {
            std::vector<int> atleast;
            for (int c = 0; c < x; ++c) atleast.push_back(xvar(v, c, x));
            doc.clauses.push_back(std::move(atleast));
        }
        for (int a = 0; a < x; ++a)
            for (int b = a + 1; b < x; ++b)
                doc.clauses.push_back({-xvar(v, a, x), -xvar(v, b, x)});
    }

    // uniqueness indicators
    for (int e = 0; e < m; ++e) {
        const auto& edge = p.system.edges[e];
        for (int c = 0; c < x; ++c) {
            const int u = uvar(e, c, n, x);
            std::vector<int> some = {-u};
            for (int v : edge) some.push_back(xvar(v, c, x));
            doc.clauses.push_back(std::move(some));
            for (size_t i = 0; i < edge.size(); ++i)
                for (size_t j = i + 1; j < edge.size(); ++j)
                    doc.clauses.push_back(
                        {-u, -xvar(edge[i], c, x), -xvar(edge[j], c, x)});
        }
        std::vector<int> cover;
        for (int c = 0; c < x; ++c) cover.push_back(uvar(e, c, n, x));
        doc.clauses.push_back(std::move(cover));
    }

    // pinned part
    for (const auto& [v, c] : p.fixed.assignment)
        doc.clauses.push_back({xvar(v, c, x)});

    return doc;
}

std::string to_dimacs(const CnfDocument& doc, bool with_comments) {
    std::ostringstream out;
    if (with_comments) {
        out << "c vertex-color variable x(v,c) = v*" << doc.palette
            << " + c + 1, v < " << doc.ground_size << "\n";
        out << "c unique-color variable u(e,c) = " << doc.ground_size << "*"
            << doc.palette << " + e*" << doc.palette << " + c + 1\n";
    }
    out << "p cnf " << doc.num_vars << " " << doc.clauses.size() << "\n";
    for (const auto& cl : doc.clauses) {
        for (int lit : cl) out << lit << " ";
        out << "0\n";
    }
    return out.str();
}

PartialColoring decode_model(const ExtensionProblem& p,
                             const std::vector<int>& literals) {
    const int n = p.system.ground_size;
    const int x = p.palette;
    std::vector<bool> truth(static_cast<size_t>(n) * x + 1, false);
    for (int lit : literals) {
        if (lit > 0 && lit <= n * x) truth[lit] = true;
    }
    PartialColoring f;
    f.palette = x;
    for (int v = 0; v < n; ++v) {
        int chosen = -1;
        for (int c = 0; c < x; ++c) {
            if (truth[xvar(v, c, x)]) {
                if (chosen >= 0)
                    throw std::runtime_error(
                        "model assigns two colors to vertex " +
                        std::to_string(v));
                chosen = c;
            }
        }
        if (chosen >= 0) f.assignment[v] = chosen;
        else if (p.mode == Mode::strict_cf)
            throw std::runtime_error("model leaves vertex " +
                                     std::to_string(v) +
                                     " uncolored in strict mode");
    }
    return f;
}

bool evaluate_cnf(const CnfDocument& doc, const std::vector<bool>& values) {
    for (const auto& cl : doc.clauses) {
        bool sat = false;
        for (int lit : cl) {
            int v = lit > 0 ? lit : -lit;
            bool val = values[v];
            if ((lit > 0) == val) { sat = true; break; }
        }
        if (!sat) return false;
    }
    return true;
}

std::vector<bool> model_from_witness(const ExtensionProblem& p,
                                     const CnfDocument& doc,
                                     const PartialColoring& witness) {
    const int n = p.system.ground_size;
    const int x = p.palette;
    std::vector<bool> values(doc.num_vars + 1, false);
    for (const auto& [v, c] : witness.assignment) values[xvar(v, c, x)] = true;
    for (size_t e = 0; e < p.system.edges.size(); ++e) {
        auto uniq = unique_color_set(p.system, witness, static_cast<int>(e));
        for (int c : uniq) values[uvar(static_cast<int>(e), c, n, x)] = true;
    }
    return values;
}

}  // namespace cfc
