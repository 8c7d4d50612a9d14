#pragma once
#include "rab/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rab {

// Side of a polygon: an edge id with a direction relative to the edge's
// stored orientation.
struct OrientedEdge {
    int e = 0;
    int dir = 1; // +1 along the stored orientation, -1 against it
    friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
    friend auto operator<=>(const OrientedEdge&, const OrientedEdge&) = default;
};

inline OrientedEdge rev(OrientedEdge a) { return {a.e, -a.dir}; }

// Polygons glued to a multigraph along based boundary cycles. Loops and
// parallel edges are allowed; each polygon stores one cycle, head to tail.
struct PolygonalComplex {
    int n_vertices = 0;
    std::vector<std::pair<int, int>> edges; // (tail, head) in thestored orientation
    std::vector<std::vector<OrientedEdge>> polygons;

    int n_edges() const { return static_cast<int>(edges.size()); }
    int n_polygons() const { return static_cast<int>(polygons.size()); }
    int tail(OrientedEdge a) const { return a.dir > 0 ? edges[a.e].first : edges[a.e].second; }
    int head(OrientedEdge a) const { return a.dir > 0 ? edges[a.e].second : edges[a.e].first; }
    int sides(int poly) const { return static_cast<int>(polygons[poly].size()); }
    // Code of an oriented edge, for dense tables.
    int code(OrientedEdge a) const { return 2 * a.e + (a.dir < 0 ? 1 : 0); }
    OrientedEdge of_code(int c) const { return {c / 2, c % 2 ? -1 : 1}; }
};

inline PolygonalComplex make_polygonal(int n_vertices,
                                       std::vector<std::pair<int, int>> edges,
                                       std::vector<std::vector<OrientedEdge>> polygons) {
    PolygonalComplex x;
    x.n_vertices = n_vertices;
    x.edges = std::move(edges);
    x.polygons = std::move(polygons);
    for (const auto& [a, b] : x.edges)
        if (a < 0 || a >= n_vertices || b < 0 || b >= n_vertices)
            fail("ConfigError", "edge endpoint out of range");
    for (const auto& cyc : x.polygons) {
        if (cyc.size() < 2) fail("ConfigError", "polygon needs at least two sides");
        for (const auto& s : cyc) {
            if (s.e < 0 || s.e >= x.n_edges()) fail("ConfigError", "polygon side out of range");
            if (s.dir != 1 && s.dir != -1) fail("ConfigError", "side direction must be +-1");
        }
        for (size_t t = 0; t < cyc.size(); ++t)
            if (x.head(cyc[t]) != x.tail(cyc[(t + 1) % cyc.size()]))
                fail("ConfigError", "polygon cycle is not head to tail");
    }
    return x;
}

// Link at a vertex: one node per oriented edge leaving the vertex, one arc
// per polygon corner, weighted by the polygon's side count.
struct LinkGraph {
    std::vector<OrientedEdge> verts;
    std::map<int, int> vid; // oriented-edge code -> link vertex
    struct Corner {
        int a = 0, b = 0; // link vertices (possibly equal)
        int poly = 0;
        int pos = 0; // position of the incoming side
        int k = 0;   // side count of the polygon
    };
    std::vector<Corner> corners;
    std::vector<std::vector<int>> incident; // link vertex -> corner ids
};

inline LinkGraph build_link(const PolygonalComplex& x, int v) {
    LinkGraph L;
    for (int e = 0; e < x.n_edges(); ++e)
        for (int dir : {1, -1}) {
            OrientedEdge a{e, dir};
            if (x.tail(a) != v) continue;
            L.vid[x.code(a)] = static_cast<int>(L.verts.size());
            L.verts.push_back(a);
        }
    L.incident.assign(L.verts.size(), {});
    for (int pi = 0; pi < x.n_polygons(); ++pi) {
        const auto& cyc = x.polygons[pi];
        const int k = static_cast<int>(cyc.size());
        for (int t = 0; t < k; ++t) {
            OrientedEdge in = cyc[t];
            OrientedEdge out = cyc[(t + 1) % k];
            if (x.head(in) != v) continue;
            LinkGraph::Corner c;
            c.a = L.vid.at(x.code(rev(in)));
            c.b = L.vid.at(x.code(out));
            c.poly = pi;
            c.pos = t;
            c.k = k;
            L.incident[c.a].push_back(static_cast<int>(L.corners.size()));
            if (c.b != c.a) L.incident[c.b].push_back(static_cast<int>(L.corners.size()));
            L.corners.push_back(c);
        }
    }
    return L;
}

// Exact fractions on int64 with wide intermediates; combined values stay far
// from the overflow guard.
struct Fraction {
    long long num = 0;
    long long den = 1;

    static Fraction of_wide(__int128 n, __int128 d) {
        if (d == 0) fail("ConfigError", "zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 an = n < 0 ? -n : n;
        __int128 g = d;
        while (an) {
            __int128 t = g % an;
            g = an;
            an = t;
        }
        if (g == 0) g = 1;
        n /= g;
        d /= g;
        constexpr __int128 lim = 0x7fffffffffffffffLL;
        if (n > lim || n < -lim || d > lim) fail("ConfigError", "fraction overflow");
        return Fraction{static_cast<long long>(n), static_cast<long long>(d)};
    }
    static Fraction of(long long n, long long d) { return of_wide(n, d); }
    Fraction operator+(const Fraction& o) const {
        return of_wide(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den,
                       static_cast<__int128>(den) * o.den);
    }
    Fraction operator-(const Fraction& o) const {
        return of_wide(static_cast<__int128>(num) * o.den - static_cast<__int128>(o.num) * den,
                       static_cast<__int128>(den) * o.den);
    }
    friend bool operator==(const Fraction&, const Fraction&) = default;
    bool operator<(const Fraction& o) const {
        return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
    }
    bool operator<=(const Fraction& o) const {
        return static_cast<__int128>(num) * o.den <= static_cast<__int128>(o.num) * den;
    }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

enum class CurvatureKind { Q, C, C2, C4 };

struct CycleWitness {
    int vertex = -1;
    std::vector<int> corners; // corner ids in the vertex link
    Fraction value;
};

struct CurvatureReport {
    bool satisfied = true;
    bool strictly = true;
    bool verified = true; // false when caps kept long cycles unchecked
    size_t cycles_checked = 0;
    std::optional<CycleWitness> witness;
};

namespace detail {

// Corner weight for a condition; nullopt when the corner alone disproves the
// condition for any cycle through it.
inline std::optional<Fraction> corner_term(CurvatureKind kind, int k) {
    switch (kind) {
        case CurvatureKind::Q:
            return Fraction::of(1, 1); // length is what matters; weight unused
        case CurvatureKind::C:
            return Fraction::of(1, 2) - Fraction::of(1, k);
        case CurvatureKind::C2: {
            int t = k / 2;
            if (t == 0) return std::nullopt;
            return Fraction::of(1, 2) - Fraction::of(1, 2 * t);
        }
        case CurvatureKind::C4: {
            int f = k / 4;
            if (f == 0) return std::nullopt;
            return Fraction::of(1, 2) - Fraction::of(1, 4 * f);
        }
    }
    fail("ConfigError", "unknown curvature condition");
}

template <typename Fn>
void for_each_simple_cycle(const LinkGraph& L, int max_len, Fn&& visit) {
    const int n = static_cast<int>(L.verts.size());
    std::vector<char> used(n, 0);
    std::vector<int> cycle;
    for (int s = 0; s < n; ++s) {
        // Cycles whose least vertex is s; reversal deduped by requiring the
        // first corner id to stay below the last.
        auto dfs = [&](auto&& self, int u) -> void {
            for (int ci : L.incident[u]) {
                const auto& c = L.corners[ci];
                int w = c.a == u ? c.b : c.a;
                if (c.a == c.b) w = u; // loop corner
                if (!cycle.empty() && ci == cycle.back()) {
                    // A corner is one arc; do not bounce straight back on it.
                    // Parallel corners remain usable.
                    continue;
                }
                if (w == s) {
                    cycle.push_back(ci);
                    if (cycle.size() == 1 || cycle.front() < cycle.back()) visit(cycle);
                    cycle.pop_back();
                    continue;
                }
                if (w < s || used[w]) continue;
                if (static_cast<int>(cycle.size()) + 1 >= max_len) continue;
                used[w] = 1;
                cycle.push_back(ci);
                self(self, w);
                cycle.pop_back();
                used[w] = 0;
            }
        };
        used[s] = 1;
        dfs(dfs, s);
        used[s] = 0;
    }
}

} // namespace detail

// Checks a curvature condition over every simple link cycle of bounded
// length and degree. Failures found within the caps are definitive; a clean
// sweep is only conclusive when long cycles pass automatically.
inline CurvatureReport check_condition(const PolygonalComplex& x, CurvatureKind kind,
                                       int max_degree = 16, int max_len = 12) {
    CurvatureReport rep;
    if (kind == CurvatureKind::Q) {
        for (int pi = 0; pi < x.n_polygons(); ++pi)
            if (x.sides(pi) < 4) {
                rep.satisfied = rep.strictly = false;
                rep.witness = CycleWitness{-1, {}, Fraction::of(x.sides(pi), 1)};
                return rep;
            }
    }
    Fraction one = Fraction::of(1, 1);
    std::optional<Fraction> min_term;
    bool bad_corner_exists = false;
    for (int v = 0; v < x.n_vertices; ++v) {
        LinkGraph L = build_link(x, v);
        for (const auto& inc : L.incident)
            if (static_cast<int>(inc.size()) > max_degree) rep.verified = false;
        for (const auto& c : L.corners) {
            auto t = detail::corner_term(kind, c.k);
            if (!t) bad_corner_exists = true;
            else if (!min_term || *t < *min_term)
                min_term = *t;
        }
        detail::for_each_simple_cycle(L, max_len, [&](const std::vector<int>& cyc) {
            ++rep.cycles_checked;
            bool fails = false, boundary = false;
            Fraction sum = Fraction::of(0, 1);
            if (kind == CurvatureKind::Q) {
                sum = Fraction::of(static_cast<long long>(cyc.size()), 1);
                fails = cyc.size() < 4;
                boundary = cyc.size() == 4;
            } else {
                bool dead = false;
                for (int ci : cyc) {
                    auto t = detail::corner_term(kind, L.corners[ci].k);
                    if (!t) dead = true;
                    else
                        sum = sum + *t;
                }
                fails = dead || sum < one;
                boundary = !dead && sum == one;
            }
            if (fails || boundary) {
                rep.strictly = false;
                if (fails) rep.satisfied = false;
                if (!rep.witness || (fails && !(rep.witness->value < one)))
                    rep.witness = CycleWitness{v, cyc, sum};
            }
        });
    }
    if (!rep.satisfied) {
        rep.verified = true; // a concrete failing cycle settles it
        return rep;
    }
    if (kind != CurvatureKind::Q) {
        // Cycles above the length cap pass automatically only when corner
        // terms are bounded away from zero.
        bool no_corners = !min_term.has_value() && !bad_corner_exists;
        bool longs_pass = !bad_corner_exists && min_term.has_value() &&
                          Fraction::of(0, 1) < *min_term &&
                          one < Fraction::of((max_len + 1) * min_term->num, min_term->den);
        if (!no_corners && !longs_pass) rep.verified = false;
    }
    return rep;
}

// Position of the side paired with occurrence t by the diameter pairing.
inline int wall_partner_pos(const PolygonalComplex& x, int poly, int t) {
    int k = x.sides(poly);
    if (k == 3) fail("TrianglePresent", "walls need polygons with at least four sides");
    if (k < 3) fail("PolygonTooSmall", "walls need polygons with at least four sides");
    return (t + k / 2) % k;
}

// Position paired with occurrence t by the quarter pairing.
inline int ewall_partner_pos(const PolygonalComplex& x, int poly, int t) {
    int k = x.sides(poly);
    if (k == 3) fail("TrianglePresent", "walls need polygons with at least four sides");
    if (k < 4) fail("PolygonTooSmall", "quarter pairing needs at least four sides");
    return (t + 2 * (k / 4)) % k;
}

inline OrientedEdge wall_partner(const PolygonalComplex& x, int poly, int t) {
    return rev(x.polygons[poly][wall_partner_pos(x, poly, t)]);
}

inline OrientedEdge ewall_partner(const PolygonalComplex& x, int poly, int t) {
    return rev(x.polygons[poly][ewall_partner_pos(x, poly, t)]);
}

// Classes of oriented edges under the chosen pairing, with the dual segments
// each class traces through the polygons.
struct WallDecomposition {
    bool quarter = false;
    std::vector<int> class_of; // per oriented-edge code
    int n_classes = 0;
    struct Diameter {
        int poly = 0;
        int t_in = 0;
        int t_out = 0;
    };
    std::vector<std::vector<Diameter>> diameters; // per class

    int class_of_edge(const PolygonalComplex& x, OrientedEdge a) const {
        return class_of[x.code(a)];
    }
};

inline WallDecomposition compute_walls(const PolygonalComplex& x, bool quarter = false) {
    WallDecomposition W;
    W.quarter = quarter;
    std::vector<int> uf(2 * x.n_edges());
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int a) {
        while (uf[a] != a) a = uf[a] = uf[uf[a]];
        return a;
    };
    for (int pi = 0; pi < x.n_polygons(); ++pi)
        for (int t = 0; t < x.sides(pi); ++t) {
            OrientedEdge from = x.polygons[pi][t];
            OrientedEdge to = quarter ? ewall_partner(x, pi, t) : wall_partner(x, pi, t);
            uf[find(x.code(from))] = find(x.code(to));
        }
    std::map<int, int> rename;
    W.class_of.assign(2 * x.n_edges(), -1);
    for (int c = 0; c < 2 * x.n_edges(); ++c) {
        int r = find(c);
        auto it = rename.find(r);
        if (it == rename.end()) it = rename.emplace(r, static_cast<int>(rename.size())).first;
        W.class_of[c] = it->second;
    }
    W.n_classes = static_cast<int>(rename.size());
    W.diameters.assign(W.n_classes, {});
    for (int pi = 0; pi < x.n_polygons(); ++pi)
        for (int t = 0; t < x.sides(pi); ++t) {
            int t2 = quarter ? ewall_partner_pos(x, pi, t) : wall_partner_pos(x, pi, t);
            int cls = W.class_of[x.code(x.polygons[pi][t])];
            W.diameters[cls].push_back({pi, t, t2});
        }
    return W;
}

// A wall separates a polygon exactly when one of its dual segments crosses
// it.
inline bool wall_separates(const PolygonalComplex& x, const WallDecomposition& W, int cls,
                           int poly) {
    for (const auto& d : W.diameters[cls])
        if (d.poly == poly) return true;
    (void)x;
    return false;
}

// Vertices of the ambient complex touching an edge dual to the wall.
inline std::set<int> wall_vertex_set(const PolygonalComplex& x, const WallDecomposition& W,
                                     int cls) {
    std::set<int> out;
    for (int c = 0; c < 2 * x.n_edges(); ++c)
        if (W.class_of[c] == cls) {
            out.insert(x.edges[c / 2].first);
            out.insert(x.edges[c / 2].second);
        }
    return out;
}

// Tree shape of the dual segment graph of one wall, optionally restricted to
// a polygon subset (interior polygons of a ball, say).
struct WallTreeReport {
    bool tree = true;          // connected and acyclic
    bool acyclic = true;
    bool one_diameter_per_polygon = true;
    bool no_opposite_pairs = true;
    bool self_crossing = false; // some polygon side pair lies on one edge twice
    size_t segments = 0;
    std::vector<int> polygons_crossed;
};

inline WallTreeReport wall_tree_report(const PolygonalComplex& x, const WallDecomposition& W,
                                       int cls,
                                       const std::set<int>* polygon_filter = nullptr) {
    WallTreeReport rep;
    for (int c = 0; c < 2 * x.n_edges(); ++c)
        if (W.class_of[c] == cls && W.class_of[x.code(rev(x.of_code(c)))] == cls)
            rep.no_opposite_pairs = false;

    std::map<int, int> node; // graph nodes: edge midpoints (2e) and polygon centers (2p+1)
    std::vector<int> uf;
    auto nid = [&](int key) {
        auto it = node.find(key);
        if (it == node.end()) {
            it = node.emplace(key, static_cast<int>(uf.size())).first;
            uf.push_back(static_cast<int>(uf.size()));
        }
        return it->second;
    };
    auto find = [&](int a) {
        while (uf[a] != a) a = uf[a] = uf[uf[a]];
        return a;
    };
    std::map<int, int> per_poly;
    size_t graph_edges = 0;
    for (const auto& d : W.diameters[cls]) {
        if (polygon_filter && !polygon_filter->count(d.poly)) continue;
        ++rep.segments;
        per_poly[d.poly] += 1;
        int e_in = x.polygons[d.poly][d.t_in].e;
        int e_out = x.polygons[d.poly][d.t_out].e;
        if (e_in == e_out) rep.self_crossing = true;
        for (int ekey : {2 * e_in, 2 * e_out}) {
            int a = nid(ekey), b = nid(2 * d.poly + 1);
            ++graph_edges;
            int ra = find(a), rb = find(b);
            if (ra == rb) rep.acyclic = false;
            else
                uf[ra] = rb;
        }
    }
    for (const auto& [poly, cnt] : per_poly) {
        rep.polygons_crossed.push_back(poly);
        if (cnt > 1) rep.one_diameter_per_polygon = false;
    }
    std::set<int> roots;
    for (size_t a = 0; a < uf.size(); ++a) roots.insert(find(static_cast<int>(a)));
    rep.tree = rep.acyclic && roots.size() <= 1;
    (void)graph_edges;
    return rep;
}

// Cell map of the complex to itself: permutations of vertices, edges and
// polygons, with a sign telling whether each edge flips its orientation.
struct DeckAction {
    std::vector<int> v_perm;
    std::vector<int> e_perm;
    std::vector<int> e_sign; // +-1
    std::vector<int> p_perm;
    // Filled by validate_deck: how each polygon cycle lands on its image.
    std::vector<int> p_rot;
    std::vector<int> p_sign; // +1 rotation, -1 reflection

    OrientedEdge act(const PolygonalComplex& x, OrientedEdge a) const {
        (void)x;
        return {e_perm[a.e], a.dir * e_sign[a.e]};
    }
};

inline void validate_deck(const PolygonalComplex& x, DeckAction& d) {
    if (static_cast<int>(d.v_perm.size()) != x.n_vertices ||
        static_cast<int>(d.e_perm.size()) != x.n_edges() ||
        static_cast<int>(d.e_sign.size()) != x.n_edges() ||
        static_cast<int>(d.p_perm.size()) != x.n_polygons())
        fail("ConfigError", "deck action size mismatch");
    auto check_perm = [](const std::vector<int>& p) {
        std::vector<char> hit(p.size(), 0);
        for (int v : p) {
            if (v < 0 || v >= static_cast<int>(p.size()) || hit[v])
                fail("ConfigError", "deck component is not a permutation");
            hit[v] = 1;
        }
    };
    check_perm(d.v_perm);
    check_perm(d.e_perm);
    check_perm(d.p_perm);
    for (int e = 0; e < x.n_edges(); ++e) {
        if (d.e_sign[e] != 1 && d.e_sign[e] != -1) fail("ConfigError", "edge sign must be +-1");
        OrientedEdge img = d.act(x, {e, 1});
        if (x.tail(img) != d.v_perm[x.tail({e, 1})] || x.head(img) != d.v_perm[x.head({e, 1})])
            fail("ConfigError", "deck action breaks edge incidence");
    }
    d.p_rot.assign(x.n_polygons(), 0);
    d.p_sign.assign(x.n_polygons(), 1);
    for (int pi = 0; pi < x.n_polygons(); ++pi) {
        const auto& cyc = x.polygons[pi];
        const auto& img_cyc = x.polygons[d.p_perm[pi]];
        const int k = static_cast<int>(cyc.size());
        if (static_cast<int>(img_cyc.size()) != k)
            fail("ConfigError", "deck action changes a polygon's side count");
        std::vector<OrientedEdge> mapped(k);
        for (int t = 0; t < k; ++t) mapped[t] = d.act(x, cyc[t]);
        bool matched = false;
        for (int r = 0; r < k && !matched; ++r) {
            bool alleq = true;
            for (int t = 0; t < k; ++t) alleq = alleq && mapped[t] == img_cyc[(t + r) % k];
            if (alleq) {
                d.p_rot[pi] = r;
                d.p_sign[pi] = 1;
                matched = true;
            }
        }
        // Reflection: reversed traversal uses the reversed sides.
        for (int r = 0; r < k && !matched; ++r) {
            bool alleq = true;
            for (int t = 0; t < k; ++t)
                alleq = alleq && mapped[t] == rev(img_cyc[((r - t - 1) % k + k) % k]);
            if (alleq) {
                d.p_rot[pi] = r;
                d.p_sign[pi] = -1;
                matched = true;
            }
        }
        if (!matched) fail("ConfigError", "deck action breaks a polygon cycle");
    }
}

inline DeckAction make_deck(const PolygonalComplex& x, std::vector<int> v_perm,
                            std::vector<int> e_perm, std::vector<int> e_sign,
                            std::vector<int> p_perm) {
    DeckAction d;
    d.v_perm = std::move(v_perm);
    d.e_perm = std::move(e_perm);
    d.e_sign = std::move(e_sign);
    d.p_perm = std::move(p_perm);
    validate_deck(x, d);
    return d;
}

inline DeckAction identity_deck(const PolygonalComplex& x) {
    DeckAction d;
    d.v_perm.resize(x.n_vertices);
    std::iota(d.v_perm.begin(), d.v_perm.end(), 0);
    d.e_perm.resize(x.n_edges());
    std::iota(d.e_perm.begin(), d.e_perm.end(), 0);
    d.e_sign.assign(x.n_edges(), 1);
    d.p_perm.resize(x.n_polygons());
    std::iota(d.p_perm.begin(), d.p_perm.end(), 0);
    validate_deck(x, d);
    return d;
}

inline DeckAction compose_deck(const PolygonalComplex& x, const DeckAction& f,
                               const DeckAction& g) {
    DeckAction d;
    d.v_perm.resize(x.n_vertices);
    for (int v = 0; v < x.n_vertices; ++v) d.v_perm[v] = f.v_perm[g.v_perm[v]];
    d.e_perm.resize(x.n_edges());
    d.e_sign.resize(x.n_edges());
    for (int e = 0; e < x.n_edges(); ++e) {
        d.e_perm[e] = f.e_perm[g.e_perm[e]];
        d.e_sign[e] = f.e_sign[g.e_perm[e]] * g.e_sign[e];
    }
    d.p_perm.resize(x.n_polygons());
    for (int p = 0; p < x.n_polygons(); ++p) d.p_perm[p] = f.p_perm[g.p_perm[p]];
    validate_deck(x, d);
    return d;
}

inline DeckAction invert_deck(const PolygonalComplex& x, const DeckAction& f) {
    DeckAction d;
    d.v_perm.assign(x.n_vertices, 0);
    for (int v = 0; v < x.n_vertices; ++v) d.v_perm[f.v_perm[v]] = v;
    d.e_perm.assign(x.n_edges(), 0);
    d.e_sign.assign(x.n_edges(), 1);
    for (int e = 0; e < x.n_edges(); ++e) {
        d.e_perm[f.e_perm[e]] = e;
        d.e_sign[f.e_perm[e]] = f.e_sign[e];
    }
    d.p_perm.assign(x.n_polygons(), 0);
    for (int p = 0; p < x.n_polygons(); ++p) d.p_perm[f.p_perm[p]] = p;
    validate_deck(x, d);
    return d;
}

inline bool deck_equal(const DeckAction& a, const DeckAction& b) {
    return a.v_perm == b.v_perm && a.e_perm == b.e_perm && a.e_sign == b.e_sign &&
           a.p_perm == b.p_perm;
}

// Graph distance in the 1-skeleton.
inline std::vector<int> vertex_distances(const PolygonalComplex& x, int v0) {
    std::vector<int> dist(x.n_vertices, -1);
    dist[v0] = 0;
    std::vector<int> frontier{v0};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int v : frontier)
            for (int e = 0; e < x.n_edges(); ++e) {
                for (int u : {x.edges[e].first, x.edges[e].second}) {
                    if ((x.edges[e].first == v || x.edges[e].second == v) && dist[u] < 0) {
                        dist[u] = dist[v] + 1;
                        next.push_back(u);
                    }
                }
            }
        frontier = std::move(next);
    }
    return dist;
}

// Deck elements whose translate of the wall is distinct yet nearby: within
// the largest polygon size of it in the 1-skeleton.
inline std::vector<size_t> close_translates(const PolygonalComplex& x,
                                            const WallDecomposition& W, int cls,
                                            const std::vector<DeckAction>& group) {
    int n = 0;
    for (int pi = 0; pi < x.n_polygons(); ++pi) n = std::max(n, x.sides(pi));
    std::set<int> V = wall_vertex_set(x, W, cls);
    std::vector<std::vector<int>> dists;
    for (int v : V) dists.push_back(vertex_distances(x, v));
    std::vector<size_t> out;
    for (size_t gi = 0; gi < group.size(); ++gi) {
        const DeckAction& g = group[gi];
        // Image class: act on any member edge.
        int img_cls = -1;
        bool same = true;
        for (int c = 0; c < 2 * x.n_edges(); ++c)
            if (W.class_of[c] == cls) {
                OrientedEdge a = g.act(x, x.of_code(c));
                int ic = W.class_of[x.code(a)];
                if (img_cls < 0) img_cls = ic;
                same = same && ic == cls;
            }
        if (same) continue;
        bool close = false;
        for (int v : V) {
            int gv = g.v_perm[v];
            for (const auto& dd : dists) close = close || (dd[gv] >= 0 && dd[gv] <= n);
        }
        if (close) out.push_back(gi);
    }
    return out;
}

} // namespace rab
