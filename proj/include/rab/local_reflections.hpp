#pragma once
#include "rab/davis.hpp"
#include "rab/groups.hpp"

#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace rab {

// Label-preserving permutations of the generator set.
using DiagramAut = std::vector<int>;

inline std::vector<DiagramAut> diagram_automorphisms(const CoxeterSystem& cox) {
    if (cox.n > 8) fail("ConfigError", "diagram too large for automorphism search");
    std::vector<DiagramAut> out;
    DiagramAut p = identity_perm(cox.n);
    do {
        bool ok = true;
        for (int i = 0; i < cox.n && ok; ++i)
            for (int j = 0; j < cox.n && ok; ++j) ok = cox.m[p[i]][p[j]] == cox.m[i][j];
        if (ok) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Automorphisms fixing a generator together with all its finite partners.
// These are the values a chart twist may take across an edge of that type.
inline std::vector<DiagramAut> star_fixer(const CoxeterSystem& cox,
                                          const std::vector<DiagramAut>& auts, int i) {
    std::vector<DiagramAut> out;
    for (const auto& a : auts) {
        bool ok = a[i] == i;
        for (int j = 0; j < cox.n && ok; ++j)
            if (cox.finite_pair(i, j)) ok = a[j] == j;
        if (ok) out.push_back(a);
    }
    return out;
}

// Carrier plus the chart bookkeeping shared by every structure on it.
struct ChartContext {
    const DavisBall* B = nullptr;
    const DavisX* D = nullptr;
    std::vector<DiagramAut> auts;
    std::vector<std::vector<DiagramAut>> fixer; // per generator
    std::vector<int> edge_type;                 // per X edge
    std::map<int, int> poly_of_vertex;          // rank-two vertex id -> poly index

    const CoxWord& word(int block) const { return B->blocks[block]; }
};

inline ChartContext make_charts(const DavisBall& B, const DavisX& D) {
    ChartContext ctx;
    ctx.B = &B;
    ctx.D = &D;
    ctx.auts = diagram_automorphisms(B.cox);
    for (int i = 0; i < B.cox.n; ++i) ctx.fixer.push_back(star_fixer(B.cox, ctx.auts, i));
    for (int e = 0; e < D.x.n_edges(); ++e)
        ctx.edge_type.push_back(B.verts[D.edge_vertex[e]].types[0]);
    for (size_t p = 0; p < D.polys.size(); ++p)
        ctx.poly_of_vertex[D.polys[p].vertex] = static_cast<int>(p);
    return ctx;
}

// One diagram automorphism per X edge, read as the chart change when
// crossing from the tail block; the reverse crossing applies the inverse.
struct ChartStructure {
    std::vector<DiagramAut> at;
};

inline ChartStructure standard_structure(const ChartContext& ctx) {
    ChartStructure s;
    s.at.assign(ctx.D->x.n_edges(), identity_perm(ctx.B->cox.n));
    return s;
}

inline ChartStructure random_structure(const ChartContext& ctx, std::mt19937& rng) {
    ChartStructure s = standard_structure(ctx);
    for (int e = 0; e < ctx.D->x.n_edges(); ++e) {
        const auto& fix = ctx.fixer[ctx.edge_type[e]];
        s.at[e] = fix[rng() % fix.size()];
    }
    return s;
}

// A based flag: a block and an ordered finite pair read from it.
struct Flag {
    int block = 0;
    int i = 0;
    int j = 0;
};

struct FlagWalk {
    std::vector<int> blocks; // b_0 .. b_{2m-1}
    std::vector<int> xedge;  // per step
    std::vector<int> side;   // 0 when crossed from the tail block
    std::vector<DiagramAut> prefix; // prefix[k] = accumulated twist after k steps
    DiagramAut holonomy;
};

// Walk once around the polygon read off the flag, carrying the frame: the
// step direction is the current frame image of the alternating letter.
inline FlagWalk walk_flag(const ChartContext& ctx, const ChartStructure& sig,
                          const Flag& flag) {
    const DavisBall& B = *ctx.B;
    const DavisX& D = *ctx.D;
    if (!B.cox.finite_pair(flag.i, flag.j)) fail("ResidueInfinite", "flag pair is infinite");
    int mm = B.cox.m[flag.i][flag.j];
    FlagWalk wk;
    wk.prefix.push_back(identity_perm(B.cox.n));
    int cur = flag.block;
    for (int k = 0; k < 2 * mm; ++k) {
        wk.blocks.push_back(cur);
        int letter = (k % 2 == 0) ? flag.i : flag.j;
        int d = wk.prefix.back()[letter];
        const CoxWord& w = B.blocks[cur];
        CoxWord next_w = B.canon.mul(w, {d});
        auto bit = B.block_index.find(next_w);
        if (bit == B.block_index.end()) fail("ChamberMissing", "walk leaves the ball");
        int rv = B.vertex_id({d}, coset_rep(B.canon, w, {d}));
        auto eit = D.edge_of_rank1.find(rv);
        if (eit == D.edge_of_rank1.end()) fail("ChamberMissing", "walk edge is not in the carrier");
        int e = eit->second;
        int tail_block = D.vertex_block[D.x.edges[e].first];
        int s = (tail_block == cur) ? 0 : 1;
        DiagramAut c = (s == 0) ? sig.at[e] : invert_perm(sig.at[e]);
        wk.xedge.push_back(e);
        wk.side.push_back(s);
        wk.prefix.push_back(compose_perm(c, wk.prefix.back()));
        cur = bit->second;
    }
    if (cur != flag.block) fail("InternalError", "flag walk did not close");
    wk.holonomy = wk.prefix.back();
    return wk;
}

inline DiagramAut holonomy(const ChartContext& ctx, const ChartStructure& sig,
                           const Flag& flag) {
    return walk_flag(ctx, sig, flag).holonomy;
}

// A symmetric twist field: one star-fixing value per X edge, stored on the
// tail side; the head side sees the conjugated inverse.
struct RankOneField {
    std::vector<DiagramAut> at;
};

inline RankOneField identity_field(const ChartContext& ctx) {
    RankOneField f;
    f.at.assign(ctx.D->x.n_edges(), identity_perm(ctx.B->cox.n));
    return f;
}

inline RankOneField random_field(const ChartContext& ctx, std::mt19937& rng) {
    RankOneField f = identity_field(ctx);
    for (int e = 0; e < ctx.D->x.n_edges(); ++e) {
        const auto& fix = ctx.fixer[ctx.edge_type[e]];
        f.at[e] = fix[rng() % fix.size()];
    }
    return f;
}

inline DiagramAut field_seen(const ChartContext& ctx, const ChartStructure& sig,
                             const RankOneField& f, int e, int side) {
    if (side == 0) return f.at[e];
    const DiagramAut& a = sig.at[e];
    return compose_perm(a, compose_perm(invert_perm(f.at[e]), invert_perm(a)));
}

inline ChartStructure twist(const ChartContext& ctx, const ChartStructure& sig,
                            const RankOneField& f) {
    ChartStructure out = sig;
    for (int e = 0; e < ctx.D->x.n_edges(); ++e)
        out.at[e] = compose_perm(sig.at[e], f.at[e]);
    return out;
}

// Holonomy of the twisted structure recovered from the untwisted walk: each
// crossed field value, conjugated back through the walk prefix, lands in the
// fixer of the flag letter of its step.
inline DiagramAut holonomy_product(const ChartContext& ctx, const ChartStructure& sig,
                                   const RankOneField& f, const Flag& flag) {
    FlagWalk wk = walk_flag(ctx, sig, flag);
    DiagramAut res = wk.holonomy;
    for (int k = static_cast<int>(wk.xedge.size()) - 1; k >= 0; --k) {
        DiagramAut seen = field_seen(ctx, sig, f, wk.xedge[k], wk.side[k]);
        DiagramAut g = compose_perm(invert_perm(wk.prefix[k]),
                                    compose_perm(seen, wk.prefix[k]));
        res = compose_perm(res, g);
    }
    return res;
}

// h = neg^{-1} . pos with pos fixing the star of the first letter and neg
// the star of the second; the search order makes the result deterministic.
inline std::optional<std::pair<DiagramAut, DiagramAut>> decompose_holonomy(
    const ChartContext& ctx, int i, int j, const DiagramAut& h) {
    for (const auto& pos : ctx.fixer[i])
        for (const auto& neg : ctx.fixer[j])
            if (compose_perm(invert_perm(neg), pos) == h) return std::make_pair(pos, neg);
    return std::nullopt;
}

// Per-polygon decomposition state, anchored at the stored polygon cycle.
struct PolyState {
    Flag flag;
    DiagramAut pos;
    DiagramAut neg;
};

inline Flag canonical_flag(const ChartContext& ctx, int p) {
    const auto& poly = ctx.D->polys[p];
    const auto& dv = ctx.B->verts[poly.vertex];
    return Flag{poly.block_cycle[0], dv.types[0], dv.types[1]};
}

inline std::vector<PolyState> decompose_all(const ChartContext& ctx,
                                            const ChartStructure& sig) {
    std::vector<PolyState> out;
    for (size_t p = 0; p < ctx.D->polys.size(); ++p) {
        Flag flag = canonical_flag(ctx, static_cast<int>(p));
        DiagramAut h = holonomy(ctx, sig, flag);
        auto dec = decompose_holonomy(ctx, flag.i, flag.j, h);
        if (!dec) fail("Undecomposable", "holonomy has no star-fixing splitting");
        out.push_back({flag, dec->first, dec->second});
    }
    return out;
}

// Group polygons by pair type and the image of their coset under a finite
// abelian quotient of the group; translates by kernel elements share a key.
inline std::vector<int> transversal_orbits(const ChartContext& ctx, const FiniteAbelian& A,
                                           const std::vector<FiniteAbelian::Elem>& gen_image) {
    const DavisBall& B = *ctx.B;
    if (static_cast<int>(gen_image.size()) != B.cox.n)
        fail("ConfigError", "one image per generator required");
    auto image = [&](const CoxWord& w) {
        auto v = A.zero();
        for (int g : w) v = A.add(v, gen_image[g]);
        return v;
    };
    std::map<std::vector<std::vector<long long>>, int> ids;
    std::vector<int> out;
    for (const auto& poly : ctx.D->polys) {
        const auto& dv = B.verts[poly.vertex];
        std::set<FiniteAbelian::Elem> span{A.zero()};
        for (bool grew = true; grew;) {
            grew = false;
            for (auto s : std::set<FiniteAbelian::Elem>(span))
                for (int g : {dv.types[0], dv.types[1]}) {
                    auto t = A.add(s, gen_image[g]);
                    grew = span.insert(t).second || grew;
                }
        }
        std::set<FiniteAbelian::Elem> coset;
        for (const auto& s : span) coset.insert(A.add(image(dv.rep), s));
        std::vector<std::vector<long long>> key{{dv.types[0], dv.types[1]}};
        key.insert(key.end(), coset.begin(), coset.end());
        auto it = ids.find(key);
        if (it == ids.end()) it = ids.emplace(key, static_cast<int>(ids.size())).first;
        out.push_back(it->second);
    }
    return out;
}

namespace detail {

inline bool fixer_member(const std::vector<DiagramAut>& fix, const DiagramAut& a) {
    for (const auto& b : fix)
        if (b == a) return true;
    return false;
}

} // namespace detail

// Build a field supported on one wall that clears the wall-type component
// of every polygon the wall crosses, by propagation over the dual tree.
// The value on the least wall edge is a free seed; each star-fixing seed
// gives a distinct valid solution.
inline RankOneField kill_half_holonomy(const ChartContext& ctx, const ChartStructure& sig,
                                       const std::vector<PolyState>& state,
                                       const WallDecomposition& W, int cls,
                                       const DiagramAut* seed = nullptr) {
    const DavisX& D = *ctx.D;
    auto gate = wall_tree_report(D.x, W, cls);
    if (!(gate.tree && gate.one_diameter_per_polygon && gate.no_opposite_pairs &&
          !gate.self_crossing))
        fail("WallNotTree", "wall does not support propagation");
    if (W.diameters[cls].empty()) fail("ConfigError", "wall crosses no polygon");

    std::set<int> wall_edges;
    for (const auto& d : W.diameters[cls]) {
        wall_edges.insert(D.x.polygons[d.poly][d.t_in].e);
        wall_edges.insert(D.x.polygons[d.poly][d.t_out].e);
    }
    int t_wall = ctx.edge_type[*wall_edges.begin()];
    for (int e : wall_edges)
        if (ctx.edge_type[e] != t_wall) fail("ConfigError", "wall mixes edge types");

    RankOneField f = identity_field(ctx);
    if (seed) {
        if (!detail::fixer_member(ctx.fixer[t_wall], *seed))
            fail("ConfigError", "seed must fix the star of the wall type");
        f.at[*wall_edges.begin()] = *seed;
    }
    std::set<int> assigned{*wall_edges.begin()};
    std::vector<char> used(W.diameters[cls].size(), 0);
    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t di = 0; di < W.diameters[cls].size(); ++di) {
            if (used[di]) continue;
            const auto& d = W.diameters[cls][di];
            int ea = D.x.polygons[d.poly][d.t_in].e;
            int eb = D.x.polygons[d.poly][d.t_out].e;
            bool ka = assigned.count(ea) > 0, kb = assigned.count(eb) > 0;
            if (ka == kb) continue;
            int e_known = ka ? ea : eb;
            int e_new = ka ? eb : ea;

            const PolyState& ps = state[d.poly];
            Flag tau = ps.flag;
            DiagramAut target;
            if (ps.flag.i == t_wall) target = invert_perm(ps.pos);
            else if (ps.flag.j == t_wall) {
                tau = Flag{ps.flag.block, ps.flag.j, ps.flag.i};
                target = invert_perm(ps.neg);
            } else
                fail("InternalError", "wall type is not a letter of the crossed polygon");

            FlagWalk wk = walk_flag(ctx, sig, tau);
            std::vector<int> hits;
            for (size_t k = 0; k < wk.xedge.size(); ++k)
                if (wk.xedge[k] == ea || wk.xedge[k] == eb) hits.push_back(static_cast<int>(k));
            if (hits.size() != 2) fail("InternalError", "wall crossings not found on the walk");
            int k1 = hits[0], k2 = hits[1];

            auto g_at = [&](int k) {
                DiagramAut seen = field_seen(ctx, sig, f, wk.xedge[k], wk.side[k]);
                return compose_perm(invert_perm(wk.prefix[k]),
                                    compose_perm(seen, wk.prefix[k]));
            };
            int k_known = (wk.xedge[k1] == e_known) ? k1 : k2;
            int k_new = (k_known == k1) ? k2 : k1;
            DiagramAut g_known = g_at(k_known);
            DiagramAut g_new = (k_new > k_known)
                                   ? compose_perm(target, invert_perm(g_known))
                                   : compose_perm(invert_perm(g_known), target);
            DiagramAut seen_new = compose_perm(
                wk.prefix[k_new], compose_perm(g_new, invert_perm(wk.prefix[k_new])));
            if (wk.side[k_new] == 0) f.at[e_new] = seen_new;
            else {
                const DiagramAut& a = sig.at[e_new];
                f.at[e_new] =
                    compose_perm(invert_perm(a), compose_perm(invert_perm(seen_new), a));
            }
            if (!detail::fixer_member(ctx.fixer[t_wall], f.at[e_new]))
                fail("InternalError", "propagated value leaves the star fixer");
            assigned.insert(e_new);
            used[di] = 1;
            progress = true;
        }
    }
    if (assigned.size() != wall_edges.size())
        fail("InternalError", "wall propagation did not reach every edge");
    for (char u : used)
        if (!u) fail("InternalError", "a crossed polygon was never balanced");
    return f;
}

struct KillReport {
    ChartStructure structure;
    int kills = 0;
    std::vector<int> walls_used;
};

// Clear every polygon holonomy by repeated wall kills: pick a polygon with a
// surviving component, kill along the matching wall, update the tracked
// decomposition, and re-check the walks against it.
inline KillReport kill_all_holonomy(const ChartContext& ctx, const ChartStructure& start) {
    const DavisX& D = *ctx.D;
    KillReport rep{start, 0, {}};
    auto W = compute_walls(D.x, true);
    std::vector<PolyState> state = decompose_all(ctx, rep.structure);
    int cap = 2 * static_cast<int>(D.polys.size()) + 4;
    DiagramAut id = identity_perm(ctx.B->cox.n);
    for (int round = 0; round <= cap; ++round) {
        int pick = -1;
        int t_wall = -1;
        for (size_t p = 0; p < state.size() && pick < 0; ++p) {
            if (state[p].pos != id) {
                pick = static_cast<int>(p);
                t_wall = state[p].flag.i;
            } else if (state[p].neg != id) {
                pick = static_cast<int>(p);
                t_wall = state[p].flag.j;
            }
        }
        if (pick < 0) return rep;
        if (round == cap) break;

        int cls = -1;
        for (int t = 0; t < D.x.sides(pick) && cls < 0; ++t) {
            int e = D.x.polygons[pick][t].e;
            if (ctx.edge_type[e] == t_wall) cls = W.class_of[D.x.code(D.x.polygons[pick][t])];
        }
        if (cls < 0) fail("InternalError", "no wall of the required type");

        RankOneField f = kill_half_holonomy(ctx, rep.structure, state, W, cls);
        rep.structure = twist(ctx, rep.structure, f);
        ++rep.kills;
        rep.walls_used.push_back(cls);
        for (const auto& d : W.diameters[cls]) {
            if (state[d.poly].flag.i == t_wall) state[d.poly].pos = id;
            else
                state[d.poly].neg = id;
        }
        for (size_t p = 0; p < state.size(); ++p) {
            DiagramAut h = holonomy(ctx, rep.structure, state[p].flag);
            if (compose_perm(invert_perm(state[p].neg), state[p].pos) != h)
                fail("InternalError", "tracked decomposition drifted from the walks");
        }
    }
    fail("InternalError", "holonomy killing did not terminate");
}

// All killing fields for one wall, one per seed value; restriction to the
// least wall edge is a bijection onto the star fixer.
inline std::vector<RankOneField> wall_field_solutions(const ChartContext& ctx,
                                                      const ChartStructure& sig,
                                                      const std::vector<PolyState>& state,
                                                      const WallDecomposition& W, int cls) {
    const DavisX& D = *ctx.D;
    if (W.diameters[cls].empty()) fail("ConfigError", "wall crosses no polygon");
    std::set<int> wall_edges;
    for (const auto& d : W.diameters[cls]) {
        wall_edges.insert(D.x.polygons[d.poly][d.t_in].e);
        wall_edges.insert(D.x.polygons[d.poly][d.t_out].e);
    }
    int t_wall = ctx.edge_type[*wall_edges.begin()];
    std::vector<RankOneField> out;
    for (const auto& s : ctx.fixer[t_wall])
        out.push_back(kill_half_holonomy(ctx, sig, state, W, cls, &s));
    return out;
}

struct OrbitKill {
    ChartStructure structure;
    std::vector<PolyState> state;
};

// Kill along a family of pairwise non-crossing walls in one pass.
inline OrbitKill kill_wall_orbit(const ChartContext& ctx, const ChartStructure& sig,
                                 std::vector<PolyState> state, const WallDecomposition& W,
                                 const std::vector<int>& classes,
                                 const std::vector<DiagramAut>* seeds = nullptr) {
    const DavisX& D = *ctx.D;
    if (seeds && seeds->size() != classes.size())
        fail("ConfigError", "one seed per wall is required");
    std::set<int> touched;
    for (int cls : classes)
        for (const auto& d : W.diameters[cls])
            if (!touched.insert(d.poly).second)
                fail("NotClean", "walls of the family cross a common polygon");

    DiagramAut id = identity_perm(ctx.B->cox.n);
    OrbitKill out{sig, std::move(state)};
    for (size_t idx = 0; idx < classes.size(); ++idx) {
        int cls = classes[idx];
        RankOneField f = kill_half_holonomy(ctx, out.structure, out.state, W, cls,
                                            seeds ? &(*seeds)[idx] : nullptr);
        out.structure = twist(ctx, out.structure, f);
        int e0 = D.x.polygons[W.diameters[cls][0].poly][W.diameters[cls][0].t_in].e;
        int t_wall = ctx.edge_type[e0];
        for (const auto& d : W.diameters[cls]) {
            if (out.state[d.poly].flag.i == t_wall) out.state[d.poly].pos = id;
            else
                out.state[d.poly].neg = id;
        }
    }
    for (size_t p = 0; p < out.state.size(); ++p) {
        DiagramAut h = holonomy(ctx, out.structure, out.state[p].flag);
        if (compose_perm(invert_perm(out.state[p].neg), out.state[p].pos) != h)
            fail("InternalError", "tracked decomposition drifted from the walks");
    }
    return out;
}

struct GermTransport {
    std::vector<int> image_vertex;   // per X vertex, -1 where the germ never reached
    std::vector<DiagramAut> chart;   // frame map per reached X vertex
    int reached = 0;
    int certified_edges = 0;
};

// Extend a frame germ between two holonomy-free structures by transport along
// galleries: crossing an edge conjugates the frame by the two chart changes.
// Certifies independence of the gallery on every closed polygon loop.
inline GermTransport extend_system_germ(const ChartContext& ctx, const ChartStructure& siga,
                                        const ChartStructure& sigb, int base_block,
                                        int image_block, const DiagramAut& f0) {
    const DavisBall& B = *ctx.B;
    const DavisX& D = *ctx.D;
    DiagramAut id = identity_perm(B.cox.n);
    for (size_t p = 0; p < D.polys.size(); ++p) {
        Flag fl = canonical_flag(ctx, static_cast<int>(p));
        if (holonomy(ctx, siga, fl) != id || holonomy(ctx, sigb, fl) != id)
            fail("HolonomyPresent", "germs only extend over holonomy-free structures");
    }

    int nv = D.x.n_vertices;
    std::vector<std::map<int, int>> inc(nv);
    for (int e = 0; e < D.x.n_edges(); ++e) {
        inc[D.x.edges[e].first][ctx.edge_type[e]] = e;
        inc[D.x.edges[e].second][ctx.edge_type[e]] = e;
    }
    std::vector<char> in_poly(D.x.n_edges(), 0);
    for (size_t p = 0; p < D.polys.size(); ++p)
        for (const auto& oe : D.x.polygons[static_cast<int>(p)]) in_poly[oe.e] = 1;

    GermTransport out;
    out.image_vertex.assign(nv, -1);
    out.chart.assign(nv, DiagramAut{});
    int v0 = D.vertex_of_block.at(base_block);
    out.image_vertex[v0] = D.vertex_of_block.at(image_block);
    out.chart[v0] = f0;
    out.reached = 1;

    auto cross = [&](const ChartStructure& sig, int e, int from) {
        return (D.x.edges[e].first == from) ? sig.at[e] : invert_perm(sig.at[e]);
    };
    std::vector<int> queue{v0};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        for (const auto& [t, e] : inc[v]) {
            if (!in_poly[e]) continue;
            int v2 = (D.x.edges[e].first == v) ? D.x.edges[e].second : D.x.edges[e].first;
            if (out.image_vertex[v2] >= 0) continue;
            auto it = inc[out.image_vertex[v]].find(out.chart[v][t]);
            if (it == inc[out.image_vertex[v]].end()) continue;
            int e2 = it->second;
            int u = out.image_vertex[v];
            int u2 = (D.x.edges[e2].first == u) ? D.x.edges[e2].second : D.x.edges[e2].first;
            out.image_vertex[v2] = u2;
            out.chart[v2] = compose_perm(cross(sigb, e2, u),
                                         compose_perm(out.chart[v], invert_perm(cross(siga, e, v))));
            ++out.reached;
            queue.push_back(v2);
        }
    }

    for (int e = 0; e < D.x.n_edges(); ++e) {
        if (!in_poly[e]) continue;
        int v = D.x.edges[e].first, v2 = D.x.edges[e].second;
        if (out.image_vertex[v] < 0 || out.image_vertex[v2] < 0) continue;
        auto it = inc[out.image_vertex[v]].find(out.chart[v][ctx.edge_type[e]]);
        if (it == inc[out.image_vertex[v]].end())
            fail("ConsistencyFailure", "germ image leaves the carrier");
        int e2 = it->second;
        int u = out.image_vertex[v];
        int u2 = (D.x.edges[e2].first == u) ? D.x.edges[e2].second : D.x.edges[e2].first;
        if (out.image_vertex[v2] != u2)
            fail("ConsistencyFailure", "germ transport disagrees around a closed gallery");
        DiagramAut want = compose_perm(cross(sigb, e2, u),
                                       compose_perm(out.chart[v], invert_perm(cross(siga, e, v))));
        if (out.chart[v2] != want)
            fail("ConsistencyFailure", "germ transport disagrees around a closed gallery");
        ++out.certified_edges;
    }
    return out;
}

} // namespace rab
