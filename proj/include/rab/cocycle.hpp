#pragma once
#include "rab/groups.hpp"
#include "rab/polygonal.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rab {

// 1-cochains live on edges (value on the stored orientation), 2-cochains on
// polygons (value on the stored cycle). Coefficients in a finite abelian
// group.
using Cochain1 = std::vector<FiniteAbelian::Elem>;
using Cochain2 = std::vector<FiniteAbelian::Elem>;

inline Cochain1 zero_cochain1(const PolygonalComplex& x, const FiniteAbelian& A) {
    return Cochain1(x.n_edges(), A.zero());
}

inline Cochain2 zero_cochain2(const PolygonalComplex& x, const FiniteAbelian& A) {
    return Cochain2(x.n_polygons(), A.zero());
}

inline Cochain2 coboundary(const PolygonalComplex& x, const FiniteAbelian& A,
                           const Cochain1& u) {
    Cochain2 out = zero_cochain2(x, A);
    for (int pi = 0; pi < x.n_polygons(); ++pi)
        for (const auto& s : x.polygons[pi])
            out[pi] = A.add(out[pi], A.scale(s.dir, u[s.e]));
    return out;
}

inline Cochain1 add1(const FiniteAbelian& A, Cochain1 a, const Cochain1& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] = A.add(a[i], b[i]);
    return a;
}

inline Cochain2 add2(const FiniteAbelian& A, Cochain2 a, const Cochain2& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] = A.add(a[i], b[i]);
    return a;
}

inline bool is_zero2(const FiniteAbelian& A, const Cochain2& c) {
    for (const auto& v : c)
        if (!A.is_zero(v)) return false;
    return true;
}

// Pushforward of cochains along a cell map: values move with the cells,
// signed by the orientation behaviour.
inline Cochain1 deck_push1(const PolygonalComplex& x, const FiniteAbelian& A,
                           const DeckAction& d, const Cochain1& u) {
    Cochain1 out = zero_cochain1(x, A);
    for (int e = 0; e < x.n_edges(); ++e)
        out[d.e_perm[e]] = A.scale(d.e_sign[e], u[e]);
    return out;
}

inline Cochain2 deck_push2(const PolygonalComplex& x, const FiniteAbelian& A,
                           const DeckAction& d, const Cochain2& c) {
    Cochain2 out = zero_cochain2(x, A);
    for (int p = 0; p < x.n_polygons(); ++p)
        out[d.p_perm[p]] = A.scale(d.p_sign[p], c[p]);
    return out;
}

namespace detail {

struct WallShape {
    std::set<int> support;  // unoriented edges carrying the field
    std::set<int> crossed;  // polygons the wall passes through
    bool clean = true;      // tree, once per polygon, no reversals, no double edges
    WallTreeReport tree;
};

inline WallShape wall_shape(const PolygonalComplex& x, const WallDecomposition& W, int cls) {
    WallShape s;
    s.tree = wall_tree_report(x, W, cls);
    s.clean = s.tree.tree && s.tree.one_diameter_per_polygon && s.tree.no_opposite_pairs &&
              !s.tree.self_crossing;
    for (const auto& d : W.diameters[cls]) {
        s.crossed.insert(d.poly);
        s.support.insert(x.polygons[d.poly][d.t_in].e);
        s.support.insert(x.polygons[d.poly][d.t_out].e);
    }
    return s;
}

} // namespace detail

// Field on the edges dual to one wall, propagated from a seed so that the
// wall's polygons absorb the cochain: eta u(e) + eta' u(e') + c(pi) = 0 at
// every crossing.
inline Cochain1 solve_wall_field(const PolygonalComplex& x, const WallDecomposition& W,
                                 int cls, const FiniteAbelian& A, const Cochain2& c,
                                 int seed_edge, const FiniteAbelian::Elem& seed_val) {
    auto shape = detail::wall_shape(x, W, cls);
    if (!shape.clean) fail("WallNotTree", "wall field needs a clean tree wall");
    if (!shape.support.count(seed_edge))
        fail("ConfigError", "seed edge is not dual to the wall");
    Cochain1 u = zero_cochain1(x, A);
    std::map<int, bool> known;
    u[seed_edge] = A.reduce(seed_val);
    known[seed_edge] = true;
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& d : W.diameters[cls]) {
            const auto& in = x.polygons[d.poly][d.t_in];
            const auto& out = x.polygons[d.poly][d.t_out];
            for (auto [a, b] : {std::pair{in, out}, std::pair{out, in}}) {
                if (!known.count(a.e) || known.count(b.e)) continue;
                // eta u(a) + eta' u(b) = -c  =>  u(b) = -eta'(c + eta u(a))
                auto rhs = A.add(c[d.poly], A.scale(a.dir, u[a.e]));
                u[b.e] = A.scale(-b.dir, rhs);
                known[b.e] = true;
                progress = true;
            }
        }
    }
    for (int e : shape.support)
        if (!known.count(e)) fail("WallNotTree", "wall support is disconnected");
    return u;
}

struct WallKillReport {
    Cochain1 field;
    Cochain2 after;
    std::set<int> separated; // polygons the wall crosses
};

// Adds the coboundary of a wall field, clearing the cochain on the polygons
// the wall separates and touching nothing else.
inline WallKillReport kill_along_wall(const PolygonalComplex& x, const WallDecomposition& W,
                                      int cls, const FiniteAbelian& A, const Cochain2& c) {
    auto shape = detail::wall_shape(x, W, cls);
    int seed = *shape.support.begin();
    WallKillReport rep;
    rep.field = solve_wall_field(x, W, cls, A, c, seed, A.zero());
    rep.after = add2(A, c, coboundary(x, A, rep.field));
    rep.separated = shape.crossed;
    for (int pi = 0; pi < x.n_polygons(); ++pi) {
        if (rep.separated.count(pi)) {
            if (!A.is_zero(rep.after[pi]))
                fail("InternalError", "wall kill left a crossed polygon nonzero");
        } else if (rep.after[pi] != c[pi]) {
            fail("InternalError", "wall kill disturbed an uncrossed polygon");
        }
    }
    return rep;
}

// Finite regular cover: a complex with a free action of a finite group,
// labelled through a surjection onto the quotient group actually used.
struct CoverData {
    PolygonalComplex total;
    std::vector<DeckAction> deck; // indexed like dgroup elements
    FiniteGroup dgroup;
    std::vector<int> psi; // dgroup element -> qgroup element
    FiniteGroup qgroup;
};

struct QuotientComplex {
    PolygonalComplex complex;
    std::vector<int> vertex_orbit, edge_orbit, poly_orbit; // total cell -> quotient cell
    std::vector<int> edge_sign, poly_sign;                 // total cell vs its orbit rep
    std::vector<int> rep_vertex, rep_edge, rep_poly;       // quotient cell -> total rep
};

inline void validate_cover(const CoverData& cd) {
    if (cd.deck.size() != static_cast<size_t>(cd.dgroup.order) ||
        cd.psi.size() != static_cast<size_t>(cd.dgroup.order))
        fail("ConfigError", "cover tables must match the deck group order");
    for (int i = 0; i < cd.dgroup.order; ++i)
        for (int j = 0; j < cd.dgroup.order; ++j) {
            if (!deck_equal(cd.deck[cd.dgroup.mul(i, j)],
                            compose_deck(cd.total, cd.deck[i], cd.deck[j])))
                fail("ConfigError", "deck table does not realize the group");
            if (cd.psi[cd.dgroup.mul(i, j)] != cd.qgroup.mul(cd.psi[i], cd.psi[j]))
                fail("ConfigError", "cover labelling is not a homomorphism");
        }
    if (!deck_equal(cd.deck[cd.dgroup.identity], identity_deck(cd.total)))
        fail("ConfigError", "identity must act trivially");
    std::set<int> image(cd.psi.begin(), cd.psi.end());
    if (static_cast<int>(image.size()) != cd.qgroup.order)
        fail("ConfigError", "cover labelling must be onto");
    for (int i = 0; i < cd.dgroup.order; ++i) {
        if (i == cd.dgroup.identity) continue;
        const DeckAction& d = cd.deck[i];
        for (int v = 0; v < cd.total.n_vertices; ++v)
            if (d.v_perm[v] == v) fail("NotFree", "deck element fixes a vertex");
        for (int e = 0; e < cd.total.n_edges(); ++e)
            if (d.e_perm[e] == e) fail("NotFree", "deck element fixes an edge");
        for (int p = 0; p < cd.total.n_polygons(); ++p)
            if (d.p_perm[p] == p) fail("NotFree", "deck element fixes a polygon");
    }
}

// Quotient by a freely acting subgroup given as deck indices (must contain
// the identity and be closed).
inline QuotientComplex quotient_complex(const PolygonalComplex& x,
                                        const std::vector<DeckAction>& actions) {
    QuotientComplex q;
    auto orbits = [&](int n, auto&& image) {
        std::vector<int> uf(n);
        std::iota(uf.begin(), uf.end(), 0);
        auto find = [&](int a) {
            while (uf[a] != a) a = uf[a] = uf[uf[a]];
            return a;
        };
        for (const auto& d : actions)
            for (int c = 0; c < n; ++c) {
                int a = find(c), b = find(image(d, c));
                if (a != b) uf[std::max(a, b)] = std::min(a, b);
            }
        std::vector<int> label(n);
        std::map<int, int> rename;
        for (int c = 0; c < n; ++c) {
            int r = find(c);
            auto it = rename.find(r);
            if (it == rename.end()) it = rename.emplace(r, static_cast<int>(rename.size())).first;
            label[c] = it->second;
        }
        return label;
    };
    q.vertex_orbit = orbits(x.n_vertices, [](const DeckAction& d, int v) { return d.v_perm[v]; });
    q.edge_orbit = orbits(x.n_edges(), [](const DeckAction& d, int e) { return d.e_perm[e]; });
    q.poly_orbit =
        orbits(x.n_polygons(), [](const DeckAction& d, int p) { return d.p_perm[p]; });

    auto reps = [](const std::vector<int>& label) {
        int m = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
        std::vector<int> rep(m, -1);
        for (int c = 0; c < static_cast<int>(label.size()); ++c)
            if (rep[label[c]] < 0) rep[label[c]] = c;
        return rep;
    };
    q.rep_vertex = reps(q.vertex_orbit);
    q.rep_edge = reps(q.edge_orbit);
    q.rep_poly = reps(q.poly_orbit);

    // Freeness gives a unique transporter from each rep; record its signs.
    q.edge_sign.assign(x.n_edges(), 0);
    q.poly_sign.assign(x.n_polygons(), 0);
    for (const auto& d : actions) {
        for (int o = 0; o < static_cast<int>(q.rep_edge.size()); ++o) {
            int r = q.rep_edge[o];
            int img = d.e_perm[r];
            if (q.edge_sign[img] == 0) q.edge_sign[img] = d.e_sign[r];
            else if (q.edge_sign[img] != d.e_sign[r])
                fail("NotFree", "edge orbit has inconsistent orientation");
        }
        for (int o = 0; o < static_cast<int>(q.rep_poly.size()); ++o) {
            int r = q.rep_poly[o];
            int img = d.p_perm[r];
            if (q.poly_sign[img] == 0) q.poly_sign[img] = d.p_sign[r];
            else if (q.poly_sign[img] != d.p_sign[r])
                fail("NotFree", "polygon orbit has inconsistent orientation");
        }
    }

    q.complex.n_vertices = static_cast<int>(q.rep_vertex.size());
    for (int o = 0; o < static_cast<int>(q.rep_edge.size()); ++o) {
        int r = q.rep_edge[o];
        q.complex.edges.push_back(
            {q.vertex_orbit[x.edges[r].first], q.vertex_orbit[x.edges[r].second]});
    }
    for (int o = 0; o < static_cast<int>(q.rep_poly.size()); ++o) {
        int r = q.rep_poly[o];
        std::vector<OrientedEdge> cyc;
        for (const auto& s : x.polygons[r])
            cyc.push_back({q.edge_orbit[s.e], s.dir * q.edge_sign[s.e]});
        q.complex.polygons.push_back(cyc);
    }
    q.complex = make_polygonal(q.complex.n_vertices, q.complex.edges, q.complex.polygons);
    return q;
}

// Pullback of a 2-cochain along the quotient map.
inline Cochain2 lift_cochain2(const QuotientComplex& q, const FiniteAbelian& A,
                              const Cochain2& base, const PolygonalComplex& total) {
    Cochain2 out(total.n_polygons(), A.zero());
    for (int p = 0; p < total.n_polygons(); ++p)
        out[p] = A.scale(q.poly_sign[p], base[q.poly_orbit[p]]);
    return out;
}

struct CoverKillReport {
    QuotientComplex base; // total modulo the whole deck group
    QuotientComplex mid;  // total modulo the labelling kernel
    Cochain2 lifted;      // pullback of the input to the mid level
    Cochain1 field;       // found certificate on the mid level
    bool solved = false;
    bool used_linear_fallback = false;
    std::vector<int> walls_killed;
    std::vector<std::string> obstructions;
};

namespace detail {

// Induced action of a deck element on a quotient by a normal subgroup of the
// deck group.
inline DeckAction induced_deck(const PolygonalComplex& total, const QuotientComplex& q,
                               const DeckAction& d) {
    DeckAction out;
    out.v_perm.resize(q.rep_vertex.size());
    for (size_t o = 0; o < q.rep_vertex.size(); ++o)
        out.v_perm[o] = q.vertex_orbit[d.v_perm[q.rep_vertex[o]]];
    out.e_perm.resize(q.rep_edge.size());
    out.e_sign.resize(q.rep_edge.size());
    for (size_t o = 0; o < q.rep_edge.size(); ++o) {
        int img = d.e_perm[q.rep_edge[o]];
        out.e_perm[o] = q.edge_orbit[img];
        out.e_sign[o] = d.e_sign[q.rep_edge[o]] * q.edge_sign[img];
    }
    out.p_perm.resize(q.rep_poly.size());
    for (size_t o = 0; o < q.rep_poly.size(); ++o)
        out.p_perm[o] = q.poly_orbit[d.p_perm[q.rep_poly[o]]];
    validate_deck(q.complex, out);
    return out;
}

} // namespace detail

// Clears a cochain pulled back to the cover labelled by the quotient group:
// first wall by wall over group orbits of clean tree walls, then, if
// anything survives, by solving the full coboundary system directly. The
// final certificate is checked exactly either way.
inline CoverKillReport kill_in_cover(const CoverData& cd, const FiniteAbelian& A,
                                     const Cochain2& c_base) {
    validate_cover(cd);
    CoverKillReport rep;
    rep.base = quotient_complex(cd.total, cd.deck);
    if (static_cast<int>(c_base.size()) != rep.base.complex.n_polygons())
        fail("ConfigError", "cochain size must match the base complex");
    std::vector<DeckAction> kernel;
    for (int i = 0; i < cd.dgroup.order; ++i)
        if (cd.psi[i] == cd.qgroup.identity) kernel.push_back(cd.deck[i]);
    rep.mid = quotient_complex(cd.total, kernel);
    const PolygonalComplex& mx = rep.mid.complex;

    // Lift through the mid level: a mid polygon sits over the base orbit of
    // its representative.
    rep.lifted = Cochain2(mx.n_polygons(), A.zero());
    for (int p = 0; p < mx.n_polygons(); ++p) {
        int r = rep.mid.rep_poly[p];
        rep.lifted[p] = A.scale(rep.base.poly_sign[r], c_base[rep.base.poly_orbit[r]]);
    }

    // Residual action of the labelling group on the mid level.
    std::vector<DeckAction> qact;
    std::vector<int> q_of;
    for (int qe = 0; qe < cd.qgroup.order; ++qe) {
        for (int i = 0; i < cd.dgroup.order; ++i)
            if (cd.psi[i] == qe) {
                qact.push_back(detail::induced_deck(cd.total, rep.mid, cd.deck[i]));
                q_of.push_back(qe);
                break;
            }
    }

    for (const auto& qa : qact)
        if (deck_push2(mx, A, qa, rep.lifted) != rep.lifted)
            fail("InternalError", "pullback is not invariant under the residual action");

    Cochain2 current = rep.lifted;
    rep.field = zero_cochain1(mx, A);
    bool small_polygon = false;
    for (int p = 0; p < mx.n_polygons(); ++p) small_polygon = small_polygon || mx.sides(p) < 4;
    if (!small_polygon && !is_zero2(A, current)) {
        WallDecomposition W = compute_walls(mx);
        std::vector<char> done(W.n_classes, 0);
        for (int cls = 0; cls < W.n_classes; ++cls) {
            if (done[cls] || W.diameters[cls].empty()) continue;
            // Group orbit of the wall.
            std::map<int, size_t> orbit; // class -> acting element index
            bool stab_ok = true;
            for (size_t gi = 0; gi < qact.size(); ++gi) {
                int member = -1;
                for (int code = 0; code < 2 * mx.n_edges() && member < 0; ++code)
                    if (W.class_of[code] == cls)
                        member = W.class_of[mx.code(qact[gi].act(mx, mx.of_code(code)))];
                if (member < 0) continue;
                auto it = orbit.find(member);
                if (it == orbit.end()) orbit[member] = gi;
                else if (q_of[gi] != q_of[it->second])
                    stab_ok = false; // a nontrivial stabilizer would need invariance
            }
            for (const auto& [m, gi] : orbit) done[m] = 1;
            if (!stab_ok) {
                rep.obstructions.push_back("wall has a nontrivial stabilizer");
                continue;
            }
            auto shape0 = detail::wall_shape(mx, W, cls);
            if (!shape0.clean) {
                rep.obstructions.push_back("wall is not a clean tree");
                continue;
            }
            // Translates must not share polygons.
            bool disjoint = true;
            std::set<int> seen_polys;
            std::vector<std::pair<int, size_t>> members(orbit.begin(), orbit.end());
            for (const auto& [m, gi] : members) {
                auto sh = detail::wall_shape(mx, W, m);
                for (int p : sh.crossed) disjoint = disjoint && seen_polys.insert(p).second;
            }
            if (!disjoint) {
                rep.obstructions.push_back("wall translates intersect");
                continue;
            }
            // Kill the representative, push the field around the orbit.
            auto kr = kill_along_wall(mx, W, cls, A, current);
            Cochain1 total_field = zero_cochain1(mx, A);
            for (const auto& [m, gi] : members)
                total_field = add1(A, total_field, deck_push1(mx, A, qact[gi], kr.field));
            current = add2(A, current, coboundary(mx, A, total_field));
            rep.field = add1(A, rep.field, total_field);
            for (const auto& [m, gi] : members) rep.walls_killed.push_back(m);
            bool cleared = true;
            for (const auto& [m, gi] : members) {
                auto sh = detail::wall_shape(mx, W, m);
                for (int p : sh.crossed) cleared = cleared && A.is_zero(current[p]);
            }
            if (!cleared) fail("InternalError", "orbit transport failed to clear the orbit");
        }
    }

    if (!is_zero2(A, current)) {
        // Direct solve of delta u = -current, one torsion component at a
        // time; doubles as the correctness oracle for the wall route.
        rep.used_linear_fallback = true;
        std::vector<std::vector<long long>> M(mx.n_polygons(),
                                              std::vector<long long>(mx.n_edges(), 0));
        for (int p = 0; p < mx.n_polygons(); ++p)
            for (const auto& s : mx.polygons[p]) M[p][s.e] += s.dir;
        Cochain1 extra = zero_cochain1(mx, A);
        bool all_ok = true;
        for (size_t t = 0; t < A.rank(); ++t) {
            std::vector<long long> b(mx.n_polygons());
            for (int p = 0; p < mx.n_polygons(); ++p)
                b[p] = (A.torsion[t] - current[p][t]) % A.torsion[t];
            auto sol = solve_linear_mod(A.torsion[t], M, b);
            if (!sol) {
                all_ok = false;
                rep.obstructions.push_back("coboundary system inconsistent");
                break;
            }
            for (int e = 0; e < mx.n_edges(); ++e) extra[e][t] = (*sol)[e];
        }
        if (all_ok) {
            rep.field = add1(A, rep.field, extra);
            current = add2(A, current, coboundary(mx, A, extra));
        }
    }

    rep.solved = is_zero2(A, current);
    if (rep.solved) {
        Cochain2 check = add2(A, rep.lifted, coboundary(mx, A, rep.field));
        if (!is_zero2(A, check)) fail("InternalError", "certificate fails verification");
    }
    return rep;
}

struct ExtensionReport {
    int index = 0; // label-group order of the first cover that clears it
    bool solved = false;
    std::vector<CoverKillReport> attempts;
};

// Covers must share the same total complex and deck group so that their
// computed base complexes coincide; entries are tried in the given order.
inline ExtensionReport extension_report(const std::vector<CoverData>& covers,
                                        const FiniteAbelian& A, const Cochain2& c_base) {
    ExtensionReport rep;
    for (const auto& cd : covers) {
        rep.attempts.push_back(kill_in_cover(cd, A, c_base));
        if (rep.attempts.back().solved) {
            rep.solved = true;
            rep.index = cd.qgroup.order;
            return rep;
        }
    }
    return rep;
}

} // namespace rab
