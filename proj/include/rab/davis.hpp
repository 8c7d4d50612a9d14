#pragma once
#include "rab/error.hpp"
#include "rab/polygonal.hpp"
#include "rab/simplicial.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rab {

// Involutive generators with pairwise orders; 0 stands for infinite order.
struct CoxeterSystem {
    int n = 0;
    std::vector<std::vector<int>> m;

    bool finite_pair(int i, int j) const { return i != j && m[i][j] != 0; }
};

inline CoxeterSystem make_coxeter(int n, const std::vector<std::array<int, 3>>& edges) {
    CoxeterSystem c;
    c.n = n;
    c.m.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) c.m[i][i] = 1;
    for (const auto& [i, j, mij] : edges) {
        if (i < 0 || i >= n || j < 0 || j >= n || i == j)
            fail("ConfigError", "bad generator pair");
        if (mij < 2) fail("ConfigError", "pair order must be at least two");
        c.m[i][j] = c.m[j][i] = mij;
    }
    return c;
}

using CoxWord = std::vector<int>;

// Shortlex-least words via letter cancellation and alternating-run swaps;
// results are cached per queried word.
struct CoxeterCanon {
    CoxeterSystem cox;
    size_t cap = 20;
    mutable std::map<CoxWord, CoxWord> memo;

    explicit CoxeterCanon(CoxeterSystem c, size_t word_cap = 20)
        : cox(std::move(c)), cap(word_cap) {}

    CoxWord canon(const CoxWord& input) const {
        if (input.size() > cap) fail("WordTooLong", "word exceeds the canonical-form cap");
        auto it = memo.find(input);
        if (it != memo.end()) return it->second;
        CoxWord w = input;
        for (int g : w)
            if (g < 0 || g >= cox.n) fail("ConfigError", "letter out of range");
        for (;;) {
            // Swap-closure of w; all members share its length.
            std::set<CoxWord> seen{w};
            std::vector<CoxWord> queue{w};
            std::optional<CoxWord> shorter;
            for (size_t qi = 0; qi < queue.size() && !shorter; ++qi) {
                CoxWord cur = queue[qi];
                for (size_t p = 0; p + 1 < cur.size() && !shorter; ++p)
                    if (cur[p] == cur[p + 1]) {
                        CoxWord next(cur.begin(), cur.begin() + p);
                        next.insert(next.end(), cur.begin() + p + 2, cur.end());
                        shorter = next;
                    }
                if (shorter) break;
                for (size_t p = 0; p + 1 < cur.size(); ++p) {
                    int a = cur[p], b = cur[p + 1];
                    if (a == b || !cox.finite_pair(a, b)) continue;
                    int mm = cox.m[a][b];
                    if (p + mm > cur.size()) continue;
                    bool run = true;
                    for (int t = 0; t < mm; ++t) run = run && cur[p + t] == (t % 2 ? b : a);
                    if (!run) continue;
                    CoxWord next = cur;
                    for (int t = 0; t < mm; ++t) next[p + t] = (t % 2 ? a : b);
                    if (seen.insert(next).second) queue.push_back(next);
                }
            }
            if (shorter) {
                w = *shorter;
                continue;
            }
            CoxWord best = *std::min_element(queue.begin(), queue.end());
            memo[input] = best;
            return best;
        }
    }

    CoxWord mul(const CoxWord& a, const CoxWord& b) const {
        CoxWord w = a;
        w.insert(w.end(), b.begin(), b.end());
        return canon(w);
    }
    CoxWord inv(const CoxWord& a) const {
        CoxWord w(a.rbegin(), a.rend());
        return canon(w);
    }
    CoxWord gen(int i) const { return canon({i}); }
    static bool shortlex_less(const CoxWord& a, const CoxWord& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

// Elements of the finite pair subgroup on {i, j}, as canonical words.
inline std::vector<CoxWord> pair_subgroup(const CoxeterCanon& C, int i, int j) {
    if (!C.cox.finite_pair(i, j)) fail("ResidueInfinite", "pair subgroup is infinite");
    int mm = C.cox.m[i][j];
    std::set<CoxWord> out{{}};
    for (int len = 1; len <= mm; ++len)
        for (int start : {i, j}) {
            CoxWord w;
            for (int t = 0; t < len; ++t) w.push_back(t % 2 ? (start == i ? j : i) : start);
            out.insert(C.canon(w));
        }
    return {out.begin(), out.end()};
}

inline CoxWord coset_rep(const CoxeterCanon& C, const CoxWord& w, const std::vector<int>& J) {
    std::vector<CoxWord> sub;
    if (J.empty()) sub = {{}};
    else if (J.size() == 1)
        sub = {{}, {J[0]}};
    else if (J.size() == 2)
        sub = pair_subgroup(C, J[0], J[1]);
    else
        fail("ConfigError", "coset types have rank at most two");
    std::optional<CoxWord> best;
    for (const auto& u : sub) {
        CoxWord cand = C.mul(w, u);
        if (!best || CoxeterCanon::shortlex_less(cand, *best)) best = cand;
    }
    return *best;
}

inline std::vector<CoxWord> coxeter_ball(const CoxeterCanon& C, int radius,
                                         size_t cap = 1000000) {
    std::set<CoxWord> seen{{}};
    std::vector<CoxWord> frontier{{}};
    for (int r = 0; r < radius; ++r) {
        std::vector<CoxWord> next;
        for (const auto& w : frontier)
            for (int i = 0; i < C.cox.n; ++i) {
                CoxWord u = C.mul(w, {i});
                if (u.size() == w.size() + 1 && seen.insert(u).second) next.push_back(u);
            }
        if (seen.size() > cap) fail("BallTooLarge", "group ball exceeds the cap");
        frontier = std::move(next);
    }
    std::vector<CoxWord> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), CoxeterCanon::shortlex_less);
    return out;
}

struct TripleWitness {
    int i = 0, j = 0, k = 0;
};

// True when no rank-three standard subgroup is finite: every generator
// triple has an infinite pair order or angle sum at most one.
inline std::optional<TripleWitness> two_dimensional_witness(const CoxeterSystem& c) {
    for (int i = 0; i < c.n; ++i)
        for (int j = i + 1; j < c.n; ++j)
            for (int k = j + 1; k < c.n; ++k) {
                if (c.m[i][j] == 0 || c.m[i][k] == 0 || c.m[j][k] == 0) continue;
                Fraction sum = Fraction::of(1, c.m[i][j]) + Fraction::of(1, c.m[i][k]) +
                               Fraction::of(1, c.m[j][k]);
                if (Fraction::of(1, 1) < sum) return TripleWitness{i, j, k};
            }
    return std::nullopt;
}

inline bool is_two_dimensional(const CoxeterSystem& c) {
    return !two_dimensional_witness(c).has_value();
}

// Triangulated ball: one block per group element, vertices for cosets of
// rank zero, one and two, two triangles per block per finite pair.
struct DavisBall {
    CoxeterSystem cox;
    CoxeterCanon canon;
    int radius = 0;
    bool closed = true;

    std::vector<CoxWord> blocks; // shortlex sorted
    std::map<CoxWord, int> block_index;
    std::vector<char> core; // length within the radius (not added by closure)

    struct DVertex {
        std::vector<int> types; // sorted, size 0..2
        CoxWord rep;
    };
    std::vector<DVertex> verts;
    std::map<std::pair<std::vector<int>, CoxWord>, int> vert_index;
    std::vector<std::vector<int>> block_vertex; // block -> vertex ids (dense per key order)
    SimplicialComplex cx;
    std::vector<char> interior; // per vertex: every surrounding cell present

    int vertex_id(const std::vector<int>& types, const CoxWord& rep) const {
        auto it = vert_index.find({types, rep});
        if (it == vert_index.end()) fail("UnknownVertex", "no such coset vertex");
        return it->second;
    }
    bool has_block(const CoxWord& w) const { return block_index.count(w) > 0; }
};

inline DavisBall build_davis_ball(const CoxeterSystem& cox, int radius,
                                  bool close_polygons = true) {
    DavisBall B{cox, CoxeterCanon(cox), radius, close_polygons};
    std::set<CoxWord> blocks;
    for (const auto& w : coxeter_ball(B.canon, radius)) blocks.insert(w);
    if (close_polygons) {
        // Complete every finite-pair coset that meets the ball, so polygons
        // near the boundary close up.
        std::set<CoxWord> extra;
        for (const auto& w : blocks)
            for (int i = 0; i < cox.n; ++i)
                for (int j = i + 1; j < cox.n; ++j) {
                    if (!cox.finite_pair(i, j)) continue;
                    for (const auto& u : pair_subgroup(B.canon, i, j))
                        extra.insert(B.canon.mul(w, u));
                }
        blocks.insert(extra.begin(), extra.end());
    }
    B.blocks.assign(blocks.begin(), blocks.end());
    std::sort(B.blocks.begin(), B.blocks.end(), CoxeterCanon::shortlex_less);
    for (size_t b = 0; b < B.blocks.size(); ++b) {
        B.block_index[B.blocks[b]] = static_cast<int>(b);
        B.core.push_back(static_cast<int>(B.blocks[b].size()) <= radius);
    }

    auto vid = [&](std::vector<int> types, const CoxWord& rep) {
        auto key = std::make_pair(types, rep);
        auto it = B.vert_index.find(key);
        if (it == B.vert_index.end()) {
            it = B.vert_index.emplace(key, static_cast<int>(B.verts.size())).first;
            B.verts.push_back({types, rep});
        }
        return it->second;
    };

    std::vector<std::vector<int>> facets;
    B.block_vertex.resize(B.blocks.size());
    for (size_t b = 0; b < B.blocks.size(); ++b) {
        const CoxWord& w = B.blocks[b];
        int v0 = vid({}, w);
        B.block_vertex[b].push_back(v0);
        std::vector<int> rank1(cox.n);
        for (int i = 0; i < cox.n; ++i) {
            rank1[i] = vid({i}, coset_rep(B.canon, w, {i}));
            B.block_vertex[b].push_back(rank1[i]);
        }
        for (int i = 0; i < cox.n; ++i) {
            bool partnered = false;
            for (int j = 0; j < cox.n; ++j) {
                if (j <= i || !cox.finite_pair(i, j)) continue;
                partnered = true;
                int v2 = vid({i, j}, coset_rep(B.canon, w, {i, j}));
                B.block_vertex[b].push_back(v2);
                facets.push_back({v0, rank1[i], v2});
                facets.push_back({v0, rank1[j], v2});
            }
            for (int j = 0; j < i; ++j) partnered = partnered || cox.finite_pair(i, j);
            if (!partnered) facets.push_back({v0, rank1[i]});
        }
    }
    B.cx = simplicial_from_facets(static_cast<int>(B.verts.size()), facets);

    // Interior: every cell that would surround the vertex in the full
    // complex is already present.
    B.interior.assign(B.verts.size(), 0);
    auto coset_complete = [&](const CoxWord& w, int i, int j) {
        for (const auto& u : pair_subgroup(B.canon, i, j))
            if (!B.has_block(B.canon.mul(w, u))) return false;
        return true;
    };
    for (size_t v = 0; v < B.verts.size(); ++v) {
        const auto& dv = B.verts[v];
        bool ok = true;
        if (dv.types.empty()) {
            for (int i = 0; i < cox.n && ok; ++i)
                ok = B.has_block(B.canon.mul(dv.rep, {i}));
            for (int i = 0; i < cox.n && ok; ++i)
                for (int j = i + 1; j < cox.n && ok; ++j)
                    if (cox.finite_pair(i, j)) ok = coset_complete(dv.rep, i, j);
        } else if (dv.types.size() == 1) {
            int i = dv.types[0];
            ok = B.has_block(dv.rep) && B.has_block(B.canon.mul(dv.rep, {i}));
            for (int j = 0; j < cox.n && ok; ++j)
                if (cox.finite_pair(i, j)) ok = coset_complete(dv.rep, i, j);
        } else {
            ok = coset_complete(dv.rep, dv.types[0], dv.types[1]);
        }
        B.interior[v] = ok;
    }
    return B;
}

// Both blocks of a rank-one vertex, when present.
inline std::vector<int> rank1_blocks(const DavisBall& B, int v) {
    const auto& dv = B.verts[v];
    if (dv.types.size() != 1) fail("ConfigError", "vertex is not rank one");
    std::vector<int> out;
    for (const CoxWord& w : {dv.rep, B.canon.mul(dv.rep, {dv.types[0]})}) {
        auto it = B.block_index.find(w);
        if (it != B.block_index.end()) out.push_back(it->second);
    }
    return out;
}

struct DavisLinkReport {
    bool ok = true;
    int checked = 0;
    std::string reason;
};

namespace detail {

inline std::map<int, std::set<int>> link_edges(const SimplicialComplex& cx, int v) {
    std::map<int, std::set<int>> adj;
    for (const auto& s : cx.simplices) {
        if (s.size() != 3) continue;
        if (std::find(s.begin(), s.end(), v) == s.end()) continue;
        std::vector<int> rest;
        for (int u : s)
            if (u != v) rest.push_back(u);
        adj[rest[0]].insert(rest[1]);
        adj[rest[1]].insert(rest[0]);
    }
    return adj;
}

} // namespace detail

// Interior links must look like the model: a rank-two vertex sees one cycle
// of length four times the pair order, lower ranks see the right degrees.
inline DavisLinkReport check_davis_links(const DavisBall& B) {
    DavisLinkReport rep;
    auto fail_with = [&](const std::string& why) {
        rep.ok = false;
        if (rep.reason.empty()) rep.reason = why;
    };
    for (size_t v = 0; v < B.verts.size() && rep.ok; ++v) {
        if (!B.interior[v]) continue;
        ++rep.checked;
        const auto& dv = B.verts[v];
        auto adj = detail::link_edges(B.cx, static_cast<int>(v));
        if (dv.types.size() == 2) {
            int mm = B.cox.m[dv.types[0]][dv.types[1]];
            if (static_cast<int>(adj.size()) != 4 * mm) {
                fail_with("rank-two link has the wrong size");
                break;
            }
            std::map<size_t, int> by_rank;
            for (const auto& [u, nb] : adj) {
                if (nb.size() != 2) {
                    fail_with("rank-two link is not a cycle");
                    break;
                }
                by_rank[B.verts[u].types.size()]++;
            }
            if (!rep.ok) break;
            if (by_rank[0] != 2 * mm || by_rank[1] != 2 * mm)
                fail_with("rank-two link has the wrong type counts");
            // single cycle: walk it
            int start = adj.begin()->first, prev = -1, cur = start;
            size_t steps = 0;
            do {
                auto& nb = adj[cur];
                int nxt = -1;
                for (int cand : nb)
                    if (cand != prev) nxt = cand;
                if (nb.size() == 1) nxt = *nb.begin();
                prev = cur;
                cur = nxt;
                ++steps;
            } while (cur != start && steps <= adj.size());
            if (steps != adj.size()) fail_with("rank-two link is disconnected");
        } else if (dv.types.size() == 1) {
            int i = dv.types[0];
            int partners = 0;
            for (int j = 0; j < B.cox.n; ++j)
                if (B.cox.finite_pair(i, j)) ++partners;
            int rank0 = 0, rank2 = 0;
            for (const auto& [u, nb] : adj) {
                if (B.verts[u].types.empty()) {
                    rank0++;
                    if (static_cast<int>(nb.size()) != partners)
                        fail_with("block end of a rank-one link has the wrong degree");
                } else {
                    rank2++;
                    if (nb.size() != 2) fail_with("pair vertex in a rank-one link must join both blocks");
                }
            }
            // both blocks share one polygon coset per partner
            if (rep.ok && (rank0 != 2 || rank2 != partners))
                fail_with("rank-one link has the wrong shape");
        } else {
            // block centre: the defining graph, subdivided
            for (const auto& [u, nb] : adj) {
                if (B.verts[u].types.size() == 2) {
                    if (nb.size() != 2) fail_with("pair vertex must subdivide one edge");
                } else {
                    int i = B.verts[u].types[0];
                    int partners = 0;
                    for (int j = 0; j < B.cox.n; ++j)
                        if (B.cox.finite_pair(i, j)) ++partners;
                    if (static_cast<int>(nb.size()) != partners)
                        fail_with("generator vertex has the wrong degree");
                }
            }
        }
    }
    return rep;
}

// The polygonal carrier: blocks become vertices, rank-one cosets edges,
// complete rank-two cosets polygons.
struct DavisX {
    PolygonalComplex x;
    std::vector<int> vertex_block;             // X vertex -> block
    std::vector<int> edge_vertex;              // X edge -> rank-one vertex id
    std::map<int, int> vertex_of_block;        // block -> X vertex
    std::map<int, int> edge_of_rank1;          // rank-one vertex id -> X edge
    struct Poly {
        int vertex = -1; // rank-two vertex id
        std::vector<int> block_cycle;
        bool interior = false;
    };
    std::vector<Poly> polys;
};

inline DavisX extract_carrier(const DavisBall& B) {
    DavisX D;
    for (size_t b = 0; b < B.blocks.size(); ++b) {
        D.vertex_of_block[static_cast<int>(b)] = static_cast<int>(D.vertex_block.size());
        D.vertex_block.push_back(static_cast<int>(b));
    }
    D.x.n_vertices = static_cast<int>(D.vertex_block.size());
    for (size_t v = 0; v < B.verts.size(); ++v) {
        if (B.verts[v].types.size() != 1) continue;
        auto bs = rank1_blocks(B, static_cast<int>(v));
        if (bs.size() != 2) continue;
        // stored orientation: away from the shortlex-smaller block
        int a = std::min(bs[0], bs[1]), b = std::max(bs[0], bs[1]);
        D.edge_of_rank1[static_cast<int>(v)] = D.x.n_edges();
        D.edge_vertex.push_back(static_cast<int>(v));
        D.x.edges.push_back({D.vertex_of_block.at(a), D.vertex_of_block.at(b)});
    }
    for (size_t v = 0; v < B.verts.size(); ++v) {
        const auto& dv = B.verts[v];
        if (dv.types.size() != 2) continue;
        int i = dv.types[0], j = dv.types[1];
        int mm = B.cox.m[i][j];
        // walk the coset boundary from the canonical representative,
        // starting with the smaller generator
        std::vector<int> cyc_blocks;
        CoxWord cur = dv.rep;
        bool complete = true;
        int step = i;
        for (int t = 0; t < 2 * mm; ++t) {
            auto it = B.block_index.find(cur);
            if (it == B.block_index.end()) {
                complete = false;
                break;
            }
            cyc_blocks.push_back(it->second);
            cur = B.canon.mul(cur, {step});
            step = (step == i) ? j : i;
        }
        if (!complete || B.canon.canon(cur) != dv.rep) continue;
        DavisX::Poly poly;
        poly.vertex = static_cast<int>(v);
        poly.block_cycle = cyc_blocks;
        // interior: the coset reaches strictly inside the ball, so the wall
        // structure around it is free of boundary artefacts
        poly.interior = false;
        for (int b : cyc_blocks)
            poly.interior =
                poly.interior || static_cast<int>(B.blocks[b].size()) <= B.radius - 1;
        std::vector<OrientedEdge> cyc;
        int stype = i;
        for (int t = 0; t < 2 * mm; ++t) {
            const CoxWord& wa = B.blocks[cyc_blocks[t]];
            int r1 = B.vertex_id({stype}, coset_rep(B.canon, wa, {stype}));
            int e = D.edge_of_rank1.at(r1);
            int tail_block = cyc_blocks[t];
            int dir = D.x.edges[e].first == D.vertex_of_block.at(tail_block) ? 1 : -1;
            cyc.push_back({e, dir});
            stype = (stype == i) ? j : i;
        }
        D.x.polygons.push_back(cyc);
        D.polys.push_back(poly);
    }
    D.x = make_polygonal(D.x.n_vertices, D.x.edges, D.x.polygons);
    return D;
}

// Conjugate of a generator by a ball element, located by search.
struct ReflectionData {
    CoxWord element;
    CoxWord conjugator;
    int generator = -1;
    std::vector<int> fixed_vertices;  // ball vertex ids with r . coset = coset
    std::vector<int> flipped_edges;   // X edges whose blocks the reflection swaps
    std::set<int> geometric_walls;    // wall classes met, as {cls, rev cls} least ids
    bool single_wall = false;
};

inline ReflectionData reflection_wall(const DavisBall& B, const DavisX& D,
                                      const WallDecomposition& W, const CoxWord& r) {
    ReflectionData out;
    out.element = B.canon.canon(r);
    bool found = false;
    for (const auto& w : B.blocks) {
        for (int i = 0; i < B.cox.n && !found; ++i) {
            CoxWord cand = B.canon.mul(B.canon.mul(w, {i}), B.canon.inv(w));
            if (cand == out.element) {
                out.conjugator = w;
                out.generator = i;
                found = true;
            }
        }
        if (found) break;
    }
    if (!found) fail("NotAReflection", "element is not a conjugated generator in the ball");

    for (size_t v = 0; v < B.verts.size(); ++v) {
        const auto& dv = B.verts[v];
        if (!B.has_block(dv.rep)) continue;
        CoxWord moved = B.canon.mul(out.element, dv.rep);
        if (coset_rep(B.canon, moved, dv.types) == coset_rep(B.canon, dv.rep, dv.types))
            out.fixed_vertices.push_back(static_cast<int>(v));
    }
    for (int e = 0; e < D.x.n_edges(); ++e) {
        int rv = D.edge_vertex[e];
        const auto& dv = B.verts[rv];
        CoxWord moved = B.canon.mul(out.element, dv.rep);
        bool fixes_coset =
            coset_rep(B.canon, moved, dv.types) == coset_rep(B.canon, dv.rep, dv.types);
        if (fixes_coset && moved != dv.rep) out.flipped_edges.push_back(e);
    }
    for (int e : out.flipped_edges) {
        // only count edges that an interior polygon actually crosses
        bool interior_use = false;
        for (size_t p = 0; p < D.polys.size(); ++p) {
            if (!D.polys[p].interior) continue;
            for (const auto& s : D.x.polygons[p]) interior_use = interior_use || s.e == e;
        }
        if (!interior_use) continue;
        int c1 = W.class_of[D.x.code({e, 1})];
        int c2 = W.class_of[D.x.code({e, -1})];
        out.geometric_walls.insert(std::min(c1, c2));
    }
    out.single_wall = out.geometric_walls.size() == 1;
    return out;
}

} // namespace rab
