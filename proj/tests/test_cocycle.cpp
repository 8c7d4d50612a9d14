#include "rab/cocycle.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

using namespace rab;

namespace {

PolygonalComplex torus() {
    return make_polygonal(1, {{0, 0}, {0, 0}}, {{{0, 1}, {1, 1}, {0, -1}, {1, -1}}});
}

PolygonalComplex torus_cover2() {
    return make_polygonal(2, {{0, 0}, {1, 1}, {0, 1}, {1, 0}},
                          {{{0, 1}, {2, 1}, {1, -1}, {2, -1}},
                           {{1, 1}, {3, 1}, {0, -1}, {3, -1}}});
}

// Three squares in a row; edges 0..3 are the uprights the long wall crosses.
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

PolygonalComplex disjoint_double(const PolygonalComplex& x) {
    auto E = x.edges;
    for (auto [a, b] : x.edges) E.push_back({a + x.n_vertices, b + x.n_vertices});
    auto P = x.polygons;
    for (auto cyc : x.polygons) {
        for (auto& s : cyc) s.e += x.n_edges();
        P.push_back(cyc);
    }
    return make_polygonal(2 * x.n_vertices, E, P);
}

DeckAction copy_swap(const PolygonalComplex& dbl, int nv, int ne, int np) {
    std::vector<int> v(2 * nv), e(2 * ne), s(2 * ne, 1), p(2 * np);
    for (int i = 0; i < 2 * nv; ++i) v[i] = (i + nv) % (2 * nv);
    for (int i = 0; i < 2 * ne; ++i) e[i] = (i + ne) % (2 * ne);
    for (int i = 0; i < 2 * np; ++i) p[i] = (i + np) % (2 * np);
    return make_deck(dbl, v, e, s, p);
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

} // namespace

TEST_CASE("coboundary of any field on the torus vanishes") {
    auto x = torus();
    FiniteAbelian A{{6}};
    for (long long a = 0; a < 6; ++a)
        for (long long b = 0; b < 6; ++b) {
            Cochain1 u{el(a), el(b)};
            REQUIRE(is_zero2(A, coboundary(x, A, u)));
        }
}

TEST_CASE("pushforward commutes with the coboundary") {
    std::mt19937 rng(2026);
    auto x = torus_cover2();
    auto s = make_deck(x, {1, 0}, {1, 0, 3, 2}, {1, 1, 1, 1}, {1, 0});
    FiniteAbelian A{{4, 3}};
    for (int trial = 0; trial < 25; ++trial) {
        Cochain1 u = zero_cochain1(x, A);
        for (auto& v : u)
            v = {static_cast<long long>(rng() % 4), static_cast<long long>(rng() % 3)};
        REQUIRE(coboundary(x, A, deck_push1(x, A, s, u)) ==
                deck_push2(x, A, s, coboundary(x, A, u)));
    }
    // and with a reflection, where edge signs act
    std::vector<std::pair<int, int>> he;
    std::vector<OrientedEdge> hc;
    for (int i = 0; i < 6; ++i) {
        he.push_back({i, (i + 1) % 6});
        hc.push_back({i, 1});
    }
    auto hx = make_polygonal(6, he, {hc});
    std::vector<int> vm(6), em(6), esm(6, -1);
    for (int i = 0; i < 6; ++i) {
        vm[i] = (6 - i) % 6;
        em[i] = 5 - i;
    }
    auto refl = make_deck(hx, vm, em, esm, {0});
    for (int trial = 0; trial < 25; ++trial) {
        Cochain1 u = zero_cochain1(hx, A);
        for (auto& v : u)
            v = {static_cast<long long>(rng() % 4), static_cast<long long>(rng() % 3)};
        REQUIRE(coboundary(hx, A, deck_push1(hx, A, refl, u)) ==
                deck_push2(hx, A, refl, coboundary(hx, A, u)));
    }
}

TEST_CASE("wall field propagates the hand-computed values") {
    auto x = path3();
    auto W = compute_walls(x);
    int cls = W.class_of[x.code({0, 1})];
    // all four uprights lie on one wall, positively oriented
    for (int e = 0; e < 4; ++e) REQUIRE(W.class_of[x.code({e, 1})] == cls);
    FiniteAbelian Z2{{2}};
    Cochain2 c{el(1), el(0), el(1)};
    auto u = solve_wall_field(x, W, cls, Z2, c, 0, el(0));
    REQUIRE(u[0] == el(0));
    REQUIRE(u[1] == el(1));
    REQUIRE(u[2] == el(1));
    REQUIRE(u[3] == el(0));
    for (int e = 4; e < 10; ++e) REQUIRE(u[e] == el(0));
    auto after = add2(Z2, c, coboundary(x, Z2, u));
    REQUIRE(is_zero2(Z2, after));
}

TEST_CASE("every seed gives a distinct valid field and restriction is onto") {
    auto x = path3();
    auto W = compute_walls(x);
    int cls = W.class_of[x.code({0, 1})];
    for (long long mod : {2LL, 3LL}) {
        FiniteAbelian A{{mod}};
        Cochain2 c{el(1 % mod), el(0), el(1 % mod)};
        std::vector<Cochain1> fields;
        for (long long s = 0; s < mod; ++s) {
            auto u = solve_wall_field(x, W, cls, A, c, 0, el(s));
            // valid: the crossed polygons absorb c, others untouched
            auto after = add2(A, c, coboundary(x, A, u));
            REQUIRE(is_zero2(A, after));
            for (const auto& prev : fields) REQUIRE(prev != u);
            fields.push_back(u);
        }
        // restriction to each support edge hits every coefficient once
        for (int e = 0; e < 4; ++e) {
            std::set<long long> hit;
            for (const auto& u : fields) hit.insert(u[e][0]);
            REQUIRE(hit.size() == static_cast<size_t>(mod));
        }
    }
}

TEST_CASE("seeds must sit on the wall and circles are rejected") {
    auto x = path3();
    auto W = compute_walls(x);
    int cls = W.class_of[x.code({0, 1})];
    FiniteAbelian Z2{{2}};
    Cochain2 c = zero_cochain2(x, Z2);
    try {
        solve_wall_field(x, W, cls, Z2, c, 5, el(0));
        FAIL("expected ConfigError");
    } catch (const Error& e) {
        REQUIRE(e.kind == "ConfigError");
    }
    auto t = torus();
    auto Wt = compute_walls(t);
    Cochain2 ct{el(1)};
    try {
        solve_wall_field(t, Wt, Wt.class_of[t.code({0, 1})], Z2, ct, 0, el(0));
        FAIL("expected WallNotTree");
    } catch (const Error& e) {
        REQUIRE(e.kind == "WallNotTree");
    }
}

TEST_CASE("killing along a wall clears exactly the crossed polygons") {
    auto x = path3();
    auto W = compute_walls(x);
    FiniteAbelian Z2{{2}};
    int long_wall = W.class_of[x.code({0, 1})];
    Cochain2 c{el(1), el(0), el(1)};
    auto kr = kill_along_wall(x, W, long_wall, Z2, c);
    REQUIRE(kr.separated == std::set<int>{0, 1, 2});
    REQUIRE(is_zero2(Z2, kr.after));

    // a short wall through the middle square only
    int mid_wall = W.class_of[x.code({5, 1})];
    Cochain2 c2{el(0), el(1), el(0)};
    auto kr2 = kill_along_wall(x, W, mid_wall, Z2, c2);
    REQUIRE(kr2.separated == std::set<int>{1});
    REQUIRE(is_zero2(Z2, kr2.after));
    REQUIRE(kr2.field[5] == el(0));
    REQUIRE(kr2.field[8] == el(1));
}

TEST_CASE("quotient of the double cover returns the torus") {
    auto x = torus_cover2();
    auto s = make_deck(x, {1, 0}, {1, 0, 3, 2}, {1, 1, 1, 1}, {1, 0});
    auto q = quotient_complex(x, {identity_deck(x), s});
    REQUIRE(q.complex.n_vertices == 1);
    REQUIRE(q.complex.n_edges() == 2);
    REQUIRE(q.complex.n_polygons() == 1);
    auto t = torus();
    REQUIRE(q.complex.edges == t.edges);
    REQUIRE(q.complex.polygons == t.polygons);
    REQUIRE(q.poly_orbit == std::vector<int>{0, 0});
    REQUIRE(q.poly_sign == std::vector<int>{1, 1});
}

TEST_CASE("cover validation enforces freeness and group structure") {
    // rotating a lone hexagon by three fixes the polygon
    std::vector<std::pair<int, int>> he;
    std::vector<OrientedEdge> hc;
    for (int i = 0; i < 6; ++i) {
        he.push_back({i, (i + 1) % 6});
        hc.push_back({i, 1});
    }
    auto hx = make_polygonal(6, he, {hc});
    std::vector<int> vr(6), er(6), es(6, 1);
    for (int i = 0; i < 6; ++i) {
        vr[i] = (i + 3) % 6;
        er[i] = (i + 3) % 6;
    }
    CoverData cd;
    cd.total = hx;
    cd.dgroup = cyclic_group(2);
    cd.deck = {identity_deck(hx), make_deck(hx, vr, er, es, {0})};
    cd.qgroup = cyclic_group(2);
    cd.psi = {0, 1};
    try {
        validate_cover(cd);
        FAIL("expected NotFree");
    } catch (const Error& e) {
        REQUIRE(e.kind == "NotFree");
    }
    auto good = cover_of_torus(2);
    REQUIRE_NOTHROW(validate_cover(good));
    auto bad = good;
    bad.psi = {0, 0}; // not onto Z/2
    REQUIRE_THROWS_AS(validate_cover(bad), Error);
}

TEST_CASE("the torus class dies only in the double cover") {
    FiniteAbelian Z2{{2}};
    Cochain2 c{el(1)};

    auto base_attempt = kill_in_cover(cover_of_torus(1), Z2, c);
    REQUIRE(base_attempt.base.complex.n_polygons() == 1);
    REQUIRE(base_attempt.mid.complex.n_polygons() == 1);
    REQUIRE_FALSE(base_attempt.solved);
    REQUIRE(base_attempt.used_linear_fallback);
    bool inconsistent = false;
    for (const auto& o : base_attempt.obstructions)
        inconsistent = inconsistent || o == "coboundary system inconsistent";
    REQUIRE(inconsistent);

    auto cover_attempt = kill_in_cover(cover_of_torus(2), Z2, c);
    REQUIRE(cover_attempt.mid.complex.n_polygons() == 2);
    REQUIRE(cover_attempt.solved);
    REQUIRE(cover_attempt.used_linear_fallback); // its walls are circles
    REQUIRE(cover_attempt.lifted == Cochain2{el(1), el(1)});
    auto check = add2(Z2, cover_attempt.lifted,
                      coboundary(cover_attempt.mid.complex, Z2, cover_attempt.field));
    REQUIRE(is_zero2(Z2, check));
    // both flavours of wall obstruction appear along the way
    std::set<std::string> obs(cover_attempt.obstructions.begin(),
                              cover_attempt.obstructions.end());
    REQUIRE(obs.count("wall has a nontrivial stabilizer"));
    REQUIRE(obs.count("wall is not a clean tree"));

    auto ext = extension_report({cover_of_torus(1), cover_of_torus(2)}, Z2, c);
    REQUIRE(ext.solved);
    REQUIRE(ext.index == 2);
    REQUIRE(ext.attempts.size() == 2);

    auto trivial = extension_report({cover_of_torus(1), cover_of_torus(2)}, Z2, {el(0)});
    REQUIRE(trivial.solved);
    REQUIRE(trivial.index == 1);
}

TEST_CASE("orbit transport kills the whole cochain without the fallback") {
    auto base = path3();
    auto dbl = disjoint_double(base);
    CoverData cd;
    cd.total = dbl;
    cd.dgroup = cyclic_group(2);
    cd.deck = {identity_deck(dbl), copy_swap(dbl, 8, 10, 3)};
    cd.qgroup = cyclic_group(2);
    cd.psi = {0, 1};
    FiniteAbelian Z2{{2}};
    Cochain2 c{el(1), el(0), el(1)};
    auto rep = kill_in_cover(cd, Z2, c);
    REQUIRE(rep.base.complex.n_polygons() == 3);
    REQUIRE(rep.base.complex.edges == base.edges);
    REQUIRE(rep.mid.complex.n_polygons() == 6);
    REQUIRE(rep.solved);
    REQUIRE_FALSE(rep.used_linear_fallback);
    REQUIRE(rep.obstructions.empty());
    REQUIRE(rep.walls_killed.size() >= 2);
    auto check =
        add2(Z2, rep.lifted, coboundary(rep.mid.complex, Z2, rep.field));
    REQUIRE(is_zero2(Z2, check));
    // the transported field mirrors the representative's
    for (int e = 0; e < 4; ++e) REQUIRE(rep.field[e] == rep.field[e + 10]);

    // same story over Z/3
    FiniteAbelian Z3{{3}};
    Cochain2 c3{el(1), el(2), el(1)};
    auto rep3 = kill_in_cover(cd, Z3, c3);
    REQUIRE(rep3.solved);
    REQUIRE_FALSE(rep3.used_linear_fallback);
}
