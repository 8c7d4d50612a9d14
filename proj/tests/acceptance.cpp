// End-to-end acceptance gate: one timed pass/fail line per criterion.
#include "rab/building.hpp"
#include "rab/cocycle.hpp"
#include "rab/cubical.hpp"
#include "rab/holonomy.hpp"
#include "rab/local_reflections.hpp"
#include "rab/polygonal.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace rab;

namespace {

void req(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error(what);
}

SimplicialComplex cycle_complex(int n) {
    std::vector<std::vector<int>> facets;
    for (int i = 0; i < n; ++i) facets.push_back({i, (i + 1) % n});
    return simplicial_from_facets(n, facets);
}

size_t interval_count(const SimplicialComplex& nerve, int d) {
    auto choose = [](int n, int k) {
        if (k < 0 || k > n) return size_t{0};
        size_t r = 1;
        for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
        return r;
    };
    size_t total = choose(0, d);
    for (const auto& s : nerve.simplices) total += choose(static_cast<int>(s.size()), d);
    return total;
}

ProductPresentation hexagon_z2() {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 6; ++i) e.push_back({i, (i + 1) % 6});
    return make_presentation({"p", "q", "r", "s", "t", "u"}, e,
                             std::vector<FiniteGroup>(6, cyclic_group(2)));
}

ProductPresentation edge_z2_z3() {
    return make_presentation({"a", "b"}, {{0, 1}}, {cyclic_group(2), cyclic_group(3)});
}

ProductPresentation edge_z2_z2() {
    return make_presentation({"a", "b"}, {{0, 1}}, {cyclic_group(2), cyclic_group(2)});
}

ProductPresentation free_z2_z3() {
    return make_presentation({"a", "b"}, {}, {cyclic_group(2), cyclic_group(3)});
}

ProductPresentation free_z2_z2() {
    return make_presentation({"a", "b"}, {}, {cyclic_group(2), cyclic_group(2)});
}

GPSubgroup kernel_subgroup(const ProductPresentation& p) {
    auto gh = gamma0_hom(p);
    int e = gh.hom.target.identity;
    return make_gp_subgroup(std::move(gh), {e});
}

GPSubgroup full_subgroup(const ProductPresentation& p) {
    auto gh = gamma0_hom(p);
    std::vector<int> all(gh.hom.target.order);
    for (size_t k = 0; k < all.size(); ++k) all[k] = static_cast<int>(k);
    return make_gp_subgroup(std::move(gh), std::move(all));
}

GPSubgroup parity_subgroup(const ProductPresentation& p) {
    auto gh = make_graph_hom(p, cyclic_group(2), {1, 1});
    return make_gp_subgroup(std::move(gh), {0});
}

PolygonalComplex torus() {
    return make_polygonal(1, {{0, 0}, {0, 0}}, {{{0, 1}, {1, 1}, {0, -1}, {1, -1}}});
}

PolygonalComplex hexagon_disc() {
    std::vector<std::pair<int, int>> edges;
    std::vector<OrientedEdge> cyc;
    for (int i = 0; i < 6; ++i) {
        edges.push_back({i, (i + 1) % 6});
        cyc.push_back({i, 1});
    }
    return make_polygonal(6, edges, {cyc});
}

PolygonalComplex corner3(std::array<int, 3> ks) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 3; ++i) edges.push_back({0, i + 1});
    int nv = 4;
    std::vector<std::vector<OrientedEdge>> polys;
    for (int i = 0; i < 3; ++i) {
        int k = ks[i];
        req(k >= 4, "corner fixture needs sides >= 4");
        std::vector<OrientedEdge> cyc;
        cyc.push_back({i, 1});
        int cur = i + 1;
        int target = (i + 1) % 3 + 1;
        for (int step = 0; step < k - 2; ++step) {
            int nxt = (step == k - 3) ? target : nv++;
            edges.push_back({cur, nxt});
            cyc.push_back({static_cast<int>(edges.size()) - 1, 1});
            cur = nxt;
        }
        cyc.push_back({(i + 1) % 3, -1});
        polys.push_back(cyc);
    }
    return make_polygonal(nv, edges, polys);
}

PolygonalComplex two_squares() {
    return make_polygonal(6, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {1, 4}, {4, 5}, {5, 2}},
                          {{{0, 1}, {1, 1}, {2, 1}, {3, 1}}, {{4, 1}, {5, 1}, {6, 1}, {1, -1}}});
}

PolygonalComplex cube_surface() {
    std::vector<std::pair<int, int>> edges;
    std::map<std::pair<int, int>, int> eid;
    for (int v = 0; v < 8; ++v)
        for (int b = 0; b < 3; ++b) {
            int u = v ^ (1 << b);
            if (v < u) {
                eid[{v, u}] = static_cast<int>(edges.size());
                edges.push_back({v, u});
            }
        }
    auto oe = [&](int u, int v) -> OrientedEdge {
        if (u < v) return {eid.at({u, v}), 1};
        return {eid.at({v, u}), -1};
    };
    std::vector<std::vector<OrientedEdge>> polys;
    for (int axis = 0; axis < 3; ++axis)
        for (int side = 0; side < 2; ++side) {
            int b1 = (axis + 1) % 3, b2 = (axis + 2) % 3;
            int base = side << axis;
            std::array<int, 4> vs = {base, base | (1 << b1), base | (1 << b1) | (1 << b2),
                                     base | (1 << b2)};
            std::vector<OrientedEdge> cyc;
            for (int t = 0; t < 4; ++t) cyc.push_back(oe(vs[t], vs[(t + 1) % 4]));
            polys.push_back(cyc);
        }
    return make_polygonal(8, edges, polys);
}

PolygonalComplex genus2() {
    return make_polygonal(
        1, {{0, 0}, {0, 0}, {0, 0}, {0, 0}},
        {{{0, 1}, {1, 1}, {0, -1}, {1, -1}, {2, 1}, {3, 1}, {2, -1}, {3, -1}}});
}

PolygonalComplex torus_cover2() {
    return make_polygonal(2, {{0, 0}, {1, 1}, {0, 1}, {1, 0}},
                          {{{0, 1}, {2, 1}, {1, -1}, {2, -1}},
                           {{1, 1}, {3, 1}, {0, -1}, {3, -1}}});
}

PolygonalComplex path3() {
    std::vector<std::pair<int, int>> E;
    for (int i = 0; i < 4; ++i) E.push_back({i, 4 + i});
    for (int i = 0; i < 3; ++i) E.push_back({4 + i, 5 + i});
    for (int i = 0; i < 3; ++i) E.push_back({i, i + 1});
    std::vector<std::vector<OrientedEdge>> P;
    for (int i = 0; i < 3; ++i)
        P.push_back({{i, 1}, {4 + i, 1}, {i + 1, -1}, {7 + i, -1}});
    return make_polygonal(8, E, P);
}

CoverData cover_of_torus(int q_order) {
    CoverData cd;
    cd.total = torus_cover2();
    cd.dgroup = cyclic_group(2);
    cd.deck = {identity_deck(cd.total),
               make_deck(cd.total, {1, 0}, {1, 0, 3, 2}, {1, 1, 1, 1}, {1, 0})};
    cd.qgroup = cyclic_group(q_order);
    cd.psi = q_order == 1 ? std::vector<int>{0, 0} : std::vector<int>{0, 1};
    return cd;
}

FiniteAbelian::Elem el(long long v) { return {v}; }

CoxeterSystem square_diagram(int m) {
    return make_coxeter(4, {{{0, 1, m}, {1, 2, m}, {2, 3, m}, {3, 0, m}}});
}

CoxeterSystem star_diagram() { return make_coxeter(4, {{{0, 1, 2}, {0, 2, 2}, {0, 3, 2}}}); }

CoxeterSystem path_centers() { return make_coxeter(5, {{{0, 1, 2}, {1, 2, 2}}}); }

struct LFix {
    DavisBall ball;
    DavisX D;
    ChartContext ctx;
    LFix(const CoxeterSystem& c, int r)
        : ball(build_davis_ball(c, r, true)), D(extract_carrier(ball)), ctx(make_charts(ball, D)) {}
};

void criterion1() {
    auto point = simplicial_from_facets(1, {{0}});
    auto edge = simplicial_from_facets(2, {{0, 1}});
    auto four = cycle_complex(4);
    auto six = cycle_complex(6);
    auto tri_face = simplicial_from_facets(3, {{0, 1, 2}});
    struct Row {
        const SimplicialComplex* n;
        size_t v, e, sq, cb;
    };
    std::vector<Row> rows{{&point, 2, 1, 0, 0},
                          {&edge, 4, 4, 1, 0},
                          {&four, 9, 12, 4, 0},
                          {&six, 13, 18, 6, 0},
                          {&tri_face, 8, 12, 6, 1}};
    for (const auto& r : rows) {
        auto cone = cubical_cone(*r.n);
        req(static_cast<size_t>(cone.complex.n_vertices()) == r.n->simplices.size() + 1,
            "cone vertex count is not the simplex count plus one");
        req(static_cast<size_t>(cone.complex.n_vertices()) == r.v, "cone vertex count");
        req(cone.complex.count_dim(1) == r.e, "cone edge count");
        req(cone.complex.count_dim(2) == r.sq, "cone square count");
        req(cone.complex.count_dim(3) == r.cb, "cone cube count");
        for (int d = 0; d <= 3; ++d)
            req(cone.complex.count_dim(d) == interval_count(*r.n, d),
                "cone cell count disagrees with the interval oracle");
        check_type_intervals(cone.complex);
    }
}

void criterion2() {
    auto point = simplicial_from_facets(1, {{0}});
    auto edge = simplicial_from_facets(2, {{0, 1}});
    auto two = simplicial_from_facets(2, {{0}, {1}});
    std::vector<const SimplicialComplex*> pool{&point, &edge, &two};
    for (auto* a : pool)
        for (auto* b : pool) {
            auto iso = cone_product_iso(*a, *b);
            req(!iso.empty(), "empty cone product isomorphism");
        }
    auto prod = product_complex(cubical_cone(edge).complex, cubical_cone(point).complex, 2);
    req(prod.n_vertices() == 8 && prod.count_dim(3) == 1,
        "square times segment is not the solid cube");
}

void criterion3() {
    auto p = hexagon_z2();
    BuildingBall B = build_ball(p, 2);
    req(B.chambers.size() == 31, "chamber count of the radius-two ball");
    BallLinkReport rep = check_interior_links(B);
    req(rep.ok, "interior link check failed: " + rep.reason);
    req(rep.checked > 0, "no interior vertices were checked");
    int v = B.vertex_of_key.at(VertexKey{{0, 1}, NormalForm{}});
    req(B.interior[v] == 1, "rank-two base vertex should be interior");
    LowerLinkReport low = lower_link(B, v);
    req(low.oct.ok && low.oct.factors.size() == 2,
        "descending link of a rank-two vertex is not a join of two sets");
}

void criterion4() {
    for (const auto& p : {free_z2_z3(), edge_z2_z2()}) {
        auto ball = enumerate_ball(p, 3);
        size_t n = ball.size();
        std::vector<std::vector<int>> adj(n);
        std::vector<std::vector<int>> want(n, std::vector<int>(n, 0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                NormalForm d = multiply(p, inverse(p, ball[i]), ball[j]);
                want[i][j] = static_cast<int>(d.length());
                if (d.length() == 1) adj[i].push_back(static_cast<int>(j));
            }
        for (size_t s = 0; s < n; ++s) {
            std::vector<int> dist(n, -1);
            std::vector<int> queue{static_cast<int>(s)};
            dist[s] = 0;
            for (size_t qi = 0; qi < queue.size(); ++qi)
                for (int t : adj[queue[qi]])
                    if (dist[t] < 0) {
                        dist[t] = dist[queue[qi]] + 1;
                        queue.push_back(t);
                    }
            for (size_t t = 0; t < n; ++t)
                req(dist[t] == want[s][t], "gallery distance differs from syllable length");
        }
    }
}

void criterion5() {
    for (const auto& p : {hexagon_z2(), edge_z2_z3()}) {
        GPSubgroup ker = kernel_subgroup(p);
        for (int i = 0; i < p.n(); ++i) {
            auto orbits = holonomy_orbits(p, ker, i);
            req(!orbits.empty(), "no residue orbits found");
            for (const auto& o : orbits)
                req(o.holonomy.trivial(), "kernel subgroup shows holonomy");
        }
        GPSubgroup full = full_subgroup(p);
        for (int i = 0; i < p.n(); ++i) {
            auto orbits = holonomy_orbits(p, full, i);
            req(orbits.size() == 1, "full group should have one residue orbit");
            req(orbits[0].holonomy.image.size() == static_cast<size_t>(p.groups[i].order),
                "full group holonomy is not the whole vertex group");
        }
    }
}

void criterion6() {
    for (const auto& p : {hexagon_z2(), edge_z2_z3()}) {
        for (int i = 0; i < p.n(); ++i) {
            ResidueProductReport rep = residue_product_check(p, i, 2);
            req(rep.ok, "residue product check failed: " + rep.mismatch);
            req(rep.product_cubes == rep.spanned_cubes,
                "product cell count differs from the spanned subcomplex");
        }
    }
}

void criterion7() {
    for (const auto& p : {hexagon_z2(), edge_z2_z3()}) {
        BuildingBall B = build_ball(p, 3);
        AtlasFamily F = standard_atlas_family(p);
        GermExtension ext = extend_germ(B, F, F, NormalForm{}, NormalForm{});
        req(ext.consistent, "identity germ failed to certify");
        for (size_t c = 0; c < B.chambers.size(); ++c)
            req(ext.image[c] == B.chambers[c], "identity germ moved a chamber");
    }
    auto p = hexagon_z2();
    BuildingBall B2 = build_ball(p, 2);
    GPSubgroup ker = kernel_subgroup(p);
    AtlasFamily lam;
    for (int i = 0; i < p.n(); ++i)
        lam.per_type.push_back(atlas_from_holonomy_free(p, ker, i, B2.chambers));
    GermExtension ext = extend_germ(B2, lam, standard_atlas_family(p), NormalForm{},
                                    NormalForm{});
    req(ext.consistent, "kernel chart germ failed to certify");
    req(ext.squares_certified > 0, "no elementary squares were certified");
    req(ext.edges_checked > 0, "no edges were certified");

    auto t = free_z2_z2();
    GPSubgroup par = parity_subgroup(t);
    BuildingBall Bt = build_ball(t, 2);
    AtlasFamily tlam;
    for (int i = 0; i < 2; ++i)
        tlam.per_type.push_back(atlas_from_holonomy_free(t, par, i, Bt.chambers));
    req(tlam.per_type[0].sigma_at(t, NormalForm{}) == std::vector<int>{0, 1},
        "base chart should be untwisted");
    req(tlam.per_type[0].sigma_at(t, from_syllable(t, 1, 1)) == std::vector<int>{1, 0},
        "chart one step out should be twisted");
    GermExtension ext2 = extend_germ(Bt, tlam, standard_atlas_family(t), NormalForm{},
                                     NormalForm{});
    req(ext2.consistent && ext2.edges_checked > 0, "twisted-seed germ failed to certify");
}

void criterion8() {
    auto cube = edge_z2_z2();
    WitnessReport w1 = commensuration_witness(cube, kernel_subgroup(cube), 2);
    req(w1.certified, "witness for the finite building is not certified");
    req(w1.table.size() == 4, "witness table should cover all four chambers");
    for (const auto& [c, img] : w1.table)
        req(c == img, "kernel witness should fix every chamber");
    req(w1.all_recognized, "a conjugated generator was not recognized");

    auto tree = free_z2_z2();
    WitnessReport w2 = commensuration_witness(tree, parity_subgroup(tree), 3);
    req(w2.certified, "tree witness is not certified");
    req(w2.table.size() == 7, "tree witness table should cover the radius-three ball");
    req(!w2.generators.empty(), "no generators were conjugated");
    req(w2.all_recognized, "a conjugated tree generator was not recognized");
    for (const auto& rec : w2.generators)
        req(rec.recognized && rec.chambers_checked > 0, "generator record incomplete");
}

void criterion9() {
    std::vector<PolygonalComplex> corpus;
    corpus.push_back(torus());
    corpus.push_back(hexagon_disc());
    corpus.push_back(corner3({4, 4, 4}));
    corpus.push_back(corner3({4, 8, 8}));
    corpus.push_back(corner3({8, 8, 8}));
    corpus.push_back(corner3({6, 6, 6}));
    corpus.push_back(two_squares());
    corpus.push_back(cube_surface());
    corpus.push_back(genus2());
    corpus.push_back(torus_cover2());
    req(corpus.size() == 10, "corpus size");
    for (const auto& x : corpus) {
        auto q = check_condition(x, CurvatureKind::Q);
        auto c4 = check_condition(x, CurvatureKind::C4);
        auto c2 = check_condition(x, CurvatureKind::C2);
        auto c = check_condition(x, CurvatureKind::C);
        req(q.verified && c4.verified && c2.verified && c.verified,
            "a condition was left unverified by the caps");
        if (q.satisfied) req(c4.satisfied, "Q held but C4 failed");
        if (c4.satisfied) req(c2.satisfied, "C4 held but C2 failed");
        if (c2.satisfied) req(c.satisfied, "C2 held but C failed");
    }
    auto bad = check_condition(corner3({4, 4, 4}), CurvatureKind::C);
    req(!bad.satisfied, "three squares at an apex should fail");
    req(bad.witness.has_value() && bad.witness->value == Fraction::of(3, 4),
        "failing cycle should sum to 3/4");
    auto bdry = check_condition(corner3({4, 8, 8}), CurvatureKind::C);
    req(bdry.satisfied && !bdry.strictly, "mixed corner should sit on the boundary");
    req(bdry.witness.has_value() && bdry.witness->value == Fraction::of(1, 1),
        "boundary cycle should sum to 1");
    auto strict = check_condition(corner3({8, 8, 8}), CurvatureKind::C);
    req(strict.satisfied && strict.strictly, "three octagons should pass strictly");
    LinkGraph L = build_link(corner3({8, 8, 8}), 0);
    Fraction sum = Fraction::of(0, 1);
    for (const auto& corner : L.corners) sum = sum + (Fraction::of(1, 2) - Fraction::of(1, corner.k));
    req(sum == Fraction::of(9, 8), "octagon corner cycle should sum to 9/8");
}

void criterion10() {
    auto ball = build_davis_ball(square_diagram(4), 2, true);
    auto D = extract_carrier(ball);
    std::set<int> interior;
    for (size_t p = 0; p < D.polys.size(); ++p)
        if (D.polys[p].interior) interior.insert(static_cast<int>(p));
    req(!interior.empty(), "no interior polygons in the radius-two block ball");
    for (bool quarter : {false, true}) {
        auto W = compute_walls(D.x, quarter);
        int restricted = 0;
        for (int cls = 0; cls < W.n_classes; ++cls) {
            if (W.diameters[cls].empty()) continue;
            auto rep = wall_tree_report(D.x, W, cls, &interior);
            req(rep.acyclic, "interior wall has a cycle");
            req(rep.one_diameter_per_polygon, "a polygon is crossed twice by one wall");
            req(rep.no_opposite_pairs, "wall meets a polygon in opposite orientations");
            req(!rep.self_crossing, "wall crosses itself");
            if (rep.segments > 0) ++restricted;
        }
        req(restricted > 0, "no wall meets the interior at all");
    }
}

void criterion11() {
    auto x = path3();
    auto W = compute_walls(x);
    int cls = W.class_of[x.code({0, 1})];
    for (int e = 0; e < 4; ++e)
        req(W.class_of[x.code({e, 1})] == cls, "the four uprights should share one wall");
    for (long long mod : {2LL, 3LL}) {
        FiniteAbelian A{{mod}};
        Cochain2 c{el(1 % mod), el(0), el(1 % mod)};
        std::vector<Cochain1> fields;
        for (long long s = 0; s < mod; ++s) {
            auto u = solve_wall_field(x, W, cls, A, c, 0, el(s));
            req(is_zero2(A, add2(A, c, coboundary(x, A, u))), "field does not kill the class");
            for (const auto& prev : fields) req(prev != u, "two seeds gave the same field");
            fields.push_back(u);
        }
        for (int e = 0; e < 4; ++e) {
            std::set<long long> hit;
            for (const auto& u : fields) hit.insert(u[e][0]);
            req(hit.size() == static_cast<size_t>(mod),
                "restriction to a wall edge is not onto");
        }
    }
    FiniteAbelian Z2{{2}};
    Cochain2 c{el(1), el(0), el(1)};
    auto kr = kill_along_wall(x, W, cls, Z2, c);
    req(kr.separated == std::set<int>{0, 1, 2}, "long wall should separate all three squares");
    req(is_zero2(Z2, kr.after), "cochain should vanish after the long-wall kill");
    int mid = W.class_of[x.code({5, 1})];
    Cochain2 c2{el(0), el(1), el(0)};
    auto kr2 = kill_along_wall(x, W, mid, Z2, c2);
    req(kr2.separated == std::set<int>{1}, "short wall should separate the middle square");
    req(is_zero2(Z2, kr2.after), "cochain should vanish after the short-wall kill");
    req(kr2.field[5] == el(0) && kr2.field[8] == el(1), "hand-computed field values");
}

void criterion12() {
    FiniteAbelian Z2{{2}};
    Cochain2 c{el(1)};
    auto base_attempt = kill_in_cover(cover_of_torus(1), Z2, c);
    req(!base_attempt.solved, "the torus class should survive in the base");
    auto cover_attempt = kill_in_cover(cover_of_torus(2), Z2, c);
    req(cover_attempt.solved, "the torus class should die in the double cover");
    req(cover_attempt.lifted == (Cochain2{el(1), el(1)}), "lifted cochain should be the pullback");
    req(is_zero2(Z2, add2(Z2, cover_attempt.lifted,
                          coboundary(cover_attempt.mid.complex, Z2, cover_attempt.field))),
        "certificate does not verify");
    auto ext = extension_report({cover_of_torus(1), cover_of_torus(2)}, Z2, c);
    req(ext.solved && ext.index == 2, "extension report should settle at index two");
    auto trivial = extension_report({cover_of_torus(1), cover_of_torus(2)}, Z2, {el(0)});
    req(trivial.solved && trivial.index == 1, "zero class should die at index one");
}

void criterion13() {
    {
        LFix Q(square_diagram(4), 2);
        DiagramAut id4 = identity_perm(4);
        auto sigq = standard_structure(Q.ctx);
        for (size_t p = 0; p < Q.D.polys.size(); ++p) {
            Flag fl = canonical_flag(Q.ctx, static_cast<int>(p));
            req(holonomy(Q.ctx, sigq, fl) == id4, "untwisted holonomy is not the identity");
            req(holonomy(Q.ctx, sigq, Flag{fl.block, fl.j, fl.i}) == id4,
                "untwisted reverse holonomy is not the identity");
        }
        std::mt19937 rng0(3);
        req(random_structure(Q.ctx, rng0).at == sigq.at,
            "rigid diagram admitted a twisted structure");
        auto repq = kill_all_holonomy(Q.ctx, sigq);
        req(repq.kills == 0, "nothing to kill on the rigid complex");
    }

    std::mt19937 rng(2026);
    LFix S(star_diagram(), 2);
    LFix P(path_centers(), 3);

    for (int trial = 0; trial < 100; ++trial) {
        LFix& F = (trial % 2 == 0) ? S : P;
        auto sig = random_structure(F.ctx, rng);
        auto f = random_field(F.ctx, rng);
        auto twisted = twist(F.ctx, sig, f);
        for (size_t p = 0; p < F.D.polys.size(); ++p) {
            Flag fl = canonical_flag(F.ctx, static_cast<int>(p));
            for (Flag g : {fl, Flag{fl.block, fl.j, fl.i}})
                req(holonomy_product(F.ctx, sig, f, g) == holonomy(F.ctx, twisted, g),
                    "holonomy composition formula failed");
        }
    }

    for (LFix* F : {&S, &P})
        for (int trial = 0; trial < 15; ++trial) {
            auto sig = random_structure(F->ctx, rng);
            auto st = decompose_all(F->ctx, sig);
            for (size_t p = 0; p < st.size(); ++p)
                req(compose_perm(invert_perm(st[p].neg), st[p].pos) ==
                        holonomy(F->ctx, sig, st[p].flag),
                    "decomposition does not reproduce the holonomy");
        }

    for (LFix* F : {&S, &P}) {
        DiagramAut id = identity_perm(F->ball.cox.n);
        for (int trial = 0; trial < 3; ++trial) {
            auto sig = random_structure(F->ctx, rng);
            auto rep = kill_all_holonomy(F->ctx, sig);
            for (size_t p = 0; p < F->D.polys.size(); ++p) {
                Flag fl = canonical_flag(F->ctx, static_cast<int>(p));
                req(holonomy(F->ctx, rep.structure, fl) == id,
                    "holonomy survived the kill iteration");
                req(holonomy(F->ctx, rep.structure, Flag{fl.block, fl.j, fl.i}) == id,
                    "reverse holonomy survived the kill iteration");
            }
        }
        auto sig = standard_structure(F->ctx);
        bool planted = false;
        for (int e = 0; e < F->D.x.n_edges() && !planted; ++e) {
            const auto& fix = F->ctx.fixer[F->ctx.edge_type[e]];
            bool in_poly = false;
            for (const auto& cyc : F->D.x.polygons)
                for (const auto& oe : cyc) in_poly = in_poly || oe.e == e;
            if (fix.size() > 1 && in_poly) {
                sig.at[e] = fix[1];
                planted = true;
            }
        }
        req(planted, "could not plant a twist");
        auto rep = kill_all_holonomy(F->ctx, sig);
        req(rep.kills > 0, "planted twist should force a kill");
        for (size_t p = 0; p < F->D.polys.size(); ++p)
            req(holonomy(F->ctx, rep.structure, canonical_flag(F->ctx, static_cast<int>(p))) ==
                    id,
                "planted twist was not cleared");
    }
}

} // namespace

int main() {
    struct Criterion {
        int num;
        const char* label;
        double limit;
        std::function<void()> body;
    };
    std::vector<Criterion> list = {
        {1, "cubical cones over small nerves", 1.0, criterion1},
        {2, "cone of a join is a product of cones", 1.0, criterion2},
        {3, "interior links of the hexagon building ball", 30.0, criterion3},
        {4, "gallery distance equals syllable length", 10.0, criterion4},
        {5, "kernel subgroup has no holonomy, full group has all of it", 5.0, criterion5},
        {6, "panel residues split as products", 10.0, criterion6},
        {7, "germ extension and chart certification", 30.0, criterion7},
        {8, "commensuration witnesses", 10.0, criterion8},
        {9, "curvature condition chain and exact corner sums", 1.0, criterion9},
        {10, "interior walls of the order-four block ball are trees", 30.0, criterion10},
        {11, "wall field solver over two coefficient groups", 1.0, criterion11},
        {12, "torus class dies exactly in the double cover", 1.0, criterion12},
        {13, "local reflection holonomy calculus and killing", 60.0, criterion13},
    };
    int passed = 0;
    for (const auto& c : list) {
        auto t0 = std::chrono::steady_clock::now();
        std::string note;
        bool ok = true;
        try {
            c.body();
        } catch (const std::exception& e) {
            ok = false;
            note = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (ok && secs > c.limit) {
            ok = false;
            note = "time limit exceeded";
        }
        std::printf("criterion %2d: %s (%.2fs) %s%s%s\n", c.num, ok ? "PASS" : "FAIL", secs,
                    c.label, note.empty() ? "" : " -- ", note.c_str());
        std::fflush(stdout);
        if (ok) ++passed;
    }
    std::printf("%d/13 criteria passed\n", passed);
    return passed == 13 ? 0 : 1;
}
