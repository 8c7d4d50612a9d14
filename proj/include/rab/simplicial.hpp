#pragma once
#include "rab/error.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rab {

// Finite abstract simplicial complex on vertices 0..n-1. Simplices are sorted
// nonempty vertex lists; the set is downward closed.
struct SimplicialComplex {
    int n = 0;
    std::set<std::vector<int>> simplices;

    bool has(std::vector<int> s) const {
        std::sort(s.begin(), s.end());
        return simplices.count(s) > 0;
    }
    bool has_vertex(int v) const { return simplices.count({v}) > 0; }
    bool adjacent(int u, int v) const {
        if (u == v) return false;
        return has({u, v});
    }
    int dim() const {
        int d = -1;
        for (const auto& s : simplices) d = std::max(d, static_cast<int>(s.size()) - 1);
        return d;
    }
    std::vector<int> vertices() const {
        std::vector<int> out;
        for (const auto& s : simplices)
            if (s.size() == 1) out.push_back(s[0]);
        return out;
    }
    size_t count_dim(int d) const {
        size_t c = 0;
        for (const auto& s : simplices) c += static_cast<int>(s.size()) == d + 1;
        return c;
    }
};

inline SimplicialComplex simplicial_from_facets(int n, std::vector<std::vector<int>> facets) {
    SimplicialComplex c;
    c.n = n;
    for (auto f : facets) {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
        for (int v : f)
            if (v < 0 || v >= n) fail("ConfigError", "facet vertex out of range");
        if (f.empty()) continue;
        if (f.size() > 20) fail("BallTooLarge", "facet too large to close downward");
        const size_t m = f.size();
        for (size_t mask = 1; mask < (size_t{1} << m); ++mask) {
            std::vector<int> s;
            for (size_t j = 0; j < m; ++j)
                if (mask & (size_t{1} << j)) s.push_back(f[j]);
            c.simplices.insert(std::move(s));
        }
    }
    return c;
}

// Join: vertices of b are shifted by a.n; simplices are unions s ∪ t with
// s a simplex of a or empty, t likewise, not both empty.
inline SimplicialComplex simplicial_join(const SimplicialComplex& a,
                                         const SimplicialComplex& b) {
    SimplicialComplex j;
    j.n = a.n + b.n;
    std::vector<std::vector<int>> as(a.simplices.begin(), a.simplices.end());
    std::vector<std::vector<int>> bs;
    for (auto s : b.simplices) {
        for (int& v : s) v += a.n;
        bs.push_back(std::move(s));
    }
    for (const auto& s : as) j.simplices.insert(s);
    for (const auto& t : bs) j.simplices.insert(t);
    for (const auto& s : as)
        for (const auto& t : bs) {
            std::vector<int> u = s;
            u.insert(u.end(), t.begin(), t.end());
            j.simplices.insert(std::move(u));
        }
    return j;
}

// Flag test. Returns the lexicographically least minimal clique of the
// 1-skeleton that spans no simplex, or nullopt when the complex is flag.
inline std::optional<std::vector<int>> flag_witness(const SimplicialComplex& c) {
    std::vector<int> verts = c.vertices();
    const int m = static_cast<int>(verts.size());
    // Minimality: search failing cliques by increasing size; the first hit at
    // the smallest size has all proper faces spanned (smaller sizes passed).
    for (int k = 3; k <= m; ++k) {
        std::vector<int> pick;
        std::optional<std::vector<int>> found;
        auto rec = [&](auto&& self, int start) -> void {
            if (found) return;
            if (static_cast<int>(pick.size()) == k) {
                if (!c.simplices.count(pick)) found = pick;
                return;
            }
            for (int i = start; i < m; ++i) {
                int v = verts[i];
                bool ok = true;
                for (int u : pick) ok = ok && c.adjacent(u, v);
                if (!ok) continue;
                pick.push_back(v);
                self(self, i + 1);
                pick.pop_back();
                if (found) return;
            }
        };
        rec(rec, 0);
        if (found) return found;
    }
    return std::nullopt;
}

inline bool is_flag(const SimplicialComplex& c) { return !flag_witness(c).has_value(); }

// Tests whether the complex is a join of nonempty discrete vertex sets
// (every choice of at most one vertex per factor spans a simplex, and nothing
// else does). The empty complex counts with zero factors.
struct OctahedronReport {
    bool ok = false;
    std::vector<std::vector<int>> factors;
    std::string reason;
};

inline OctahedronReport is_thickened_octahedron(const SimplicialComplex& c) {
    OctahedronReport rep;
    std::vector<int> verts = c.vertices();
    const int m = static_cast<int>(verts.size());
    if (m == 0) {
        rep.ok = true;
        return rep;
    }
    // Factors must be the components of the non-adjacency graph.
    std::map<int, int> comp;
    for (int v : verts) comp[v] = -1;
    int nc = 0;
    for (int v : verts) {
        if (comp[v] >= 0) continue;
        std::vector<int> stack{v};
        comp[v] = nc;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int u : verts)
                if (u != x && !c.adjacent(u, x) && comp[u] < 0) {
                    comp[u] = nc;
                    stack.push_back(u);
                }
        }
        ++nc;
    }
    std::vector<std::vector<int>> factors(nc);
    for (int v : verts) factors[comp[v]].push_back(v);
    for (const auto& f : factors)
        for (size_t i = 0; i < f.size(); ++i)
            for (size_t j = i + 1; j < f.size(); ++j)
                if (c.adjacent(f[i], f[j])) {
                    rep.reason = "factor contains an edge";
                    return rep;
                }
    // Expected simplex family: nonempty partial transversals.
    std::set<std::vector<int>> expect;
    std::vector<std::vector<int>> acc{{}};
    for (const auto& f : factors) {
        std::vector<std::vector<int>> next;
        for (const auto& s : acc) {
            next.push_back(s);
            for (int v : f) {
                auto t = s;
                t.push_back(v);
                next.push_back(std::move(t));
            }
        }
        acc = std::move(next);
    }
    for (auto s : acc) {
        if (s.empty()) continue;
        std::sort(s.begin(), s.end());
        expect.insert(std::move(s));
    }
    if (expect != c.simplices) {
        rep.reason = "simplices are not exactly the partial transversals";
        return rep;
    }
    rep.ok = true;
    rep.factors = std::move(factors);
    return rep;
}

} // namespace rab
