#pragma once
#include "rab/error.hpp"
#include "rab/simplicial.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rab {

// A d-cube listed by coordinate position: verts[mask] is the corner whose
// coordinate along direction j is bit j of mask. verts.size() == 2^dim.
struct Cube {
    int dim = 0;
    std::vector<int> verts;

    std::vector<int> sorted_verts() const {
        auto s = verts;
        std::sort(s.begin(), s.end());
        return s;
    }
    // Face fixing direction j to side b, with the induced coordinate order.
    Cube face(int j, int b) const {
        Cube f;
        f.dim = dim - 1;
        f.verts.resize(size_t{1} << f.dim);
        for (size_t m = 0; m < f.verts.size(); ++m) {
            size_t low = m & ((size_t{1} << j) - 1);
            size_t high = (m >> j) << (j + 1);
            f.verts[m] = verts[high | (size_t(b) << j) | low];
        }
        return f;
    }
};

// Cube complex with a type (a sorted set of cone directions) on each vertex.
// In every cube the vertex types form the interval between the types of the
// cube's minimal and maximal corner.
struct TypedCubeComplex {
    std::vector<std::vector<int>> vtype;
    std::vector<std::string> vname;
    std::vector<Cube> cubes; // face-closed, deduped by sorted vertex set
    std::map<std::vector<int>, int> cube_index;
    int center = -1; // marked cone point, -1 when absent

    int n_vertices() const { return static_cast<int>(vtype.size()); }
    size_t count_dim(int d) const {
        size_t c = 0;
        for (const auto& q : cubes) c += q.dim == d;
        return c;
    }
    int max_dim() const {
        int d = 0;
        for (const auto& q : cubes) d = std::max(d, q.dim);
        return d;
    }
    bool has_cube(const std::vector<int>& sorted) const { return cube_index.count(sorted) > 0; }

    void add_cube_closed(const Cube& q) {
        auto key = q.sorted_verts();
        if (cube_index.count(key)) return;
        cube_index[key] = static_cast<int>(cubes.size());
        cubes.push_back(q);
        for (int j = 0; j < q.dim; ++j)
            for (int b = 0; b < 2; ++b) add_cube_closed(q.face(j, b));
    }
    void finalize() {
        // Canonical order: by dimension, then sorted vertex set.
        std::sort(cubes.begin(), cubes.end(), [](const Cube& a, const Cube& b) {
            if (a.dim != b.dim) return a.dim < b.dim;
            return a.sorted_verts() < b.sorted_verts();
        });
        cube_index.clear();
        for (size_t i = 0; i < cubes.size(); ++i)
            cube_index[cubes[i].sorted_verts()] = static_cast<int>(i);
    }
};

// Checks the interval invariant: within each cube the types are exactly the
// interval [type(min corner), type(max corner)] matched by coordinates.
inline void check_type_intervals(const TypedCubeComplex& x) {
    for (const auto& q : x.cubes) {
        const auto& lo = x.vtype[q.verts[0]];
        const auto& hi = x.vtype[q.verts[q.verts.size() - 1]];
        if (!std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()))
            fail("ConfigError", "cube corner types are not nested");
        std::vector<int> dirs;
        std::set_difference(hi.begin(), hi.end(), lo.begin(), lo.end(),
                            std::back_inserter(dirs));
        if (static_cast<int>(dirs.size()) != q.dim)
            fail("ConfigError", "cube dimension does not match its type interval");
        for (size_t m = 0; m < q.verts.size(); ++m) {
            std::vector<int> expect = lo;
            for (size_t j = 0; j < dirs.size(); ++j)
                if (m & (size_t{1} << j)) expect.push_back(dirs[j]);
            std::sort(expect.begin(), expect.end());
            if (x.vtype[q.verts[m]] != expect)
                fail("ConfigError", "cube corner type off its interval position");
        }
    }
}

// Cubical cone of a simplicial complex: one vertex per simplex plus a center
// for the empty set; one cube per nested pair of (possibly empty) simplices.
struct CubicalCone {
    TypedCubeComplex complex;
    std::map<std::vector<int>, int> vertex_of; // simplex (or {}) -> vertex id
    std::vector<char> on_boundary;             // cube flag: does not contain the center
};

inline CubicalCone cubical_cone(const SimplicialComplex& nerve) {
    CubicalCone c;
    auto& x = c.complex;
    std::vector<std::vector<int>> elems{{}};
    for (const auto& s : nerve.simplices) elems.push_back(s);
    std::sort(elems.begin(), elems.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    for (const auto& s : elems) {
        c.vertex_of[s] = static_cast<int>(x.vtype.size());
        x.vtype.push_back(s);
        std::string nm = "{";
        for (size_t i = 0; i < s.size(); ++i) nm += (i ? "," : "") + std::to_string(s[i]);
        x.vname.push_back(nm + "}");
    }
    x.center = c.vertex_of[{}];
    for (const auto& top : elems) {
        const size_t k = top.size();
        for (size_t lomask = 0; lomask < (size_t{1} << k); ++lomask) {
            std::vector<int> lo, dirs;
            for (size_t j = 0; j < k; ++j)
                (lomask & (size_t{1} << j) ? lo : dirs).push_back(top[j]);
            Cube q;
            q.dim = static_cast<int>(dirs.size());
            q.verts.resize(size_t{1} << q.dim);
            for (size_t m = 0; m < q.verts.size(); ++m) {
                std::vector<int> s = lo;
                for (size_t j = 0; j < dirs.size(); ++j)
                    if (m & (size_t{1} << j)) s.push_back(dirs[j]);
                std::sort(s.begin(), s.end());
                q.verts[m] = c.vertex_of.at(s);
            }
            auto key = q.sorted_verts();
            if (!x.cube_index.count(key)) {
                x.cube_index[key] = static_cast<int>(x.cubes.size());
                x.cubes.push_back(q);
            }
        }
    }
    x.finalize();
    check_type_intervals(x);
    c.on_boundary.assign(x.cubes.size(), 0);
    for (size_t i = 0; i < x.cubes.size(); ++i) {
        bool has_center = false;
        for (int v : x.cubes[i].verts) has_center = has_center || v == x.center;
        c.on_boundary[i] = !has_center;
    }
    return c;
}

// Direct product of typed cube complexes; the second factor's cone directions
// are shifted so the two type alphabets stay disjoint.
inline TypedCubeComplex product_complex(const TypedCubeComplex& a, const TypedCubeComplex& b,
                                        int type_shift) {
    TypedCubeComplex p;
    const int nb = b.n_vertices();
    auto vid = [&](int va, int vb) { return va * nb + vb; };
    for (int va = 0; va < a.n_vertices(); ++va)
        for (int vb = 0; vb < nb; ++vb) {
            std::vector<int> t = a.vtype[va];
            for (int d : b.vtype[vb]) t.push_back(d + type_shift);
            std::sort(t.begin(), t.end());
            p.vtype.push_back(std::move(t));
            p.vname.push_back(a.vname.empty() || b.vname.empty()
                                  ? ""
                                  : "(" + a.vname[va] + "," + b.vname[vb] + ")");
        }
    for (const auto& qa : a.cubes)
        for (const auto& qb : b.cubes) {
            Cube q;
            q.dim = qa.dim + qb.dim;
            q.verts.resize(size_t{1} << q.dim);
            for (size_t m = 0; m < q.verts.size(); ++m) {
                size_t ma = m & ((size_t{1} << qa.dim) - 1);
                size_t mb = m >> qa.dim;
                q.verts[m] = vid(qa.verts[ma], qb.verts[mb]);
            }
            auto key = q.sorted_verts();
            if (!p.cube_index.count(key)) {
                p.cube_index[key] = static_cast<int>(p.cubes.size());
                p.cubes.push_back(q);
            }
        }
    p.finalize();
    return p;
}

// The unique type-preserving isomorphism C(N1) x C(N2) -> C(N1 * N2):
// vertex types determine it completely. Returns the vertex map after
// verifying it is a bijection carrying cubes onto cubes.
inline std::vector<int> cone_product_iso(const SimplicialComplex& n1,
                                         const SimplicialComplex& n2) {
    CubicalCone c1 = cubical_cone(n1);
    CubicalCone c2 = cubical_cone(n2);
    SimplicialComplex j = simplicial_join(n1, n2);
    CubicalCone cj = cubical_cone(j);
    TypedCubeComplex prod = product_complex(c1.complex, c2.complex, n1.n);

    std::vector<int> vmap(prod.n_vertices(), -1);
    std::vector<char> hit(cj.complex.n_vertices(), 0);
    for (int v = 0; v < prod.n_vertices(); ++v) {
        auto it = cj.vertex_of.find(prod.vtype[v]);
        if (it == cj.vertex_of.end())
            fail("IsomorphismFailure", "product vertex type missing in the cone of the join");
        vmap[v] = it->second;
        if (hit[it->second]++) fail("IsomorphismFailure", "vertex map not injective");
    }
    for (char h : hit)
        if (!h) fail("IsomorphismFailure", "vertex map not surjective");
    if (prod.cubes.size() != cj.complex.cubes.size())
        fail("IsomorphismFailure", "cube counts differ");
    for (const auto& q : prod.cubes) {
        std::vector<int> img;
        img.reserve(q.verts.size());
        for (int v : q.verts) img.push_back(vmap[v]);
        std::sort(img.begin(), img.end());
        if (!cj.complex.has_cube(img))
            fail("IsomorphismFailure", "image of a product cube is not a cube");
    }
    return vmap;
}

// Link of a vertex: one link vertex per edge at v, one (k-1)-simplex per
// k-cube at v. Two cubes inducing the same simplex mean the complex is not
// simple at v.
struct VertexLink {
    std::vector<int> partner; // link vertex -> far endpoint of its edge
    SimplicialComplex cx;     // on link vertex indices
};

inline VertexLink link_of_vertex(const TypedCubeComplex& x, int v) {
    VertexLink link;
    std::map<int, int> link_id; // partner vertex -> link vertex id
    for (const auto& q : x.cubes) {
        if (q.dim != 1) continue;
        int a = q.verts[0], b = q.verts[1];
        if (a != v && b != v) continue;
        int u = a == v ? b : a;
        if (u == v) fail("NotSimple", "loop edge at vertex " + std::to_string(v));
        if (link_id.count(u)) fail("NotSimple", "double edge at vertex " + std::to_string(v));
        link_id[u] = static_cast<int>(link.partner.size());
        link.partner.push_back(u);
    }
    link.cx.n = static_cast<int>(link.partner.size());
    std::map<std::vector<int>, std::vector<int>> simplex_source;
    for (const auto& q : x.cubes) {
        if (q.dim == 0) continue;
        size_t pos = q.verts.size();
        for (size_t m = 0; m < q.verts.size(); ++m)
            if (q.verts[m] == v) { pos = m; break; }
        if (pos == q.verts.size()) continue;
        std::vector<int> s;
        for (int jdir = 0; jdir < q.dim; ++jdir) {
            int u = q.verts[pos ^ (size_t{1} << jdir)];
            auto it = link_id.find(u);
            if (it == link_id.end()) fail("NotSimple", "edge of a cube missing at the vertex");
            s.push_back(it->second);
        }
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            fail("NotSimple", "cube with repeated direction at vertex " + std::to_string(v));
        auto key = q.sorted_verts();
        auto [it, fresh] = simplex_source.emplace(s, key);
        if (!fresh && it->second != key)
            fail("NotSimple", "two cubes share their corner at vertex " + std::to_string(v));
        link.cx.simplices.insert(std::move(s));
    }
    return link;
}

// Local CAT(0) test: every vertex link must be simple and flag.
struct LocalCat0Report {
    bool ok = true;
    int witness_vertex = -1;
    std::vector<int> witness_clique; // in link-partner vertex ids
    std::string reason;
};

inline LocalCat0Report is_locally_cat0(const TypedCubeComplex& x) {
    LocalCat0Report rep;
    for (int v = 0; v < x.n_vertices(); ++v) {
        VertexLink link;
        try {
            link = link_of_vertex(x, v);
        } catch (const Error& e) {
            rep.ok = false;
            rep.witness_vertex = v;
            rep.reason = e.kind;
            return rep;
        }
        if (auto w = flag_witness(link.cx)) {
            rep.ok = false;
            rep.witness_vertex = v;
            for (int u : *w) rep.witness_clique.push_back(link.partner[u]);
            rep.reason = "link not flag";
            return rep;
        }
    }
    return rep;
}

} // namespace rab
