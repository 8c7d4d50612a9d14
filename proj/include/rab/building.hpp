#pragma once
#include "rab/cubical.hpp"
#include "rab/graph_product.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rab {

// Vertex of the chamber complex: a clique type J together with the canonical
// representative of a coset of the J-subgroup.
using VertexKey = std::pair<std::vector<int>, NormalForm>;

struct BuildingBall {
    ProductPresentation pres;
    int radius = 0;
    std::vector<NormalForm> chambers; // canonically sorted
    std::map<NormalForm, int> chamber_index;
    TypedCubeComplex cx;
    std::vector<VertexKey> vkey;
    std::map<VertexKey, int> vertex_of_key;
    std::vector<char> interior;          // per vertex: its whole coset is present
    std::vector<int> center_of_chamber;  // rank-0 vertex of each chamber

    bool has_chamber(const NormalForm& w) const { return chamber_index.count(w) > 0; }
    int chamber_id(const NormalForm& w) const {
        auto it = chamber_index.find(w);
        return it == chamber_index.end() ? -1 : it->second;
    }
};

// Gallery-metric ball: one cubical cone per chamber, glued along shared
// coset vertices.
inline BuildingBall build_ball(const ProductPresentation& p, int radius,
                               size_t cap = 1000000) {
    BuildingBall B;
    B.pres = p;
    B.radius = radius;
    B.chambers = enumerate_ball(p, radius, cap);
    for (size_t i = 0; i < B.chambers.size(); ++i)
        B.chamber_index[B.chambers[i]] = static_cast<int>(i);

    CubicalCone cone = cubical_cone(p.nerve());
    std::vector<std::vector<int>> simplex_of(cone.complex.n_vertices());
    for (const auto& [s, vid] : cone.vertex_of) simplex_of[vid] = s;

    B.center_of_chamber.assign(B.chambers.size(), -1);
    for (size_t ci = 0; ci < B.chambers.size(); ++ci) {
        const NormalForm& g = B.chambers[ci];
        std::vector<int> glob(cone.complex.n_vertices());
        for (int lv = 0; lv < cone.complex.n_vertices(); ++lv) {
            VertexKey key{simplex_of[lv], coset_rep(p, g, simplex_of[lv])};
            auto it = B.vertex_of_key.find(key);
            if (it == B.vertex_of_key.end()) {
                int vid = static_cast<int>(B.vkey.size());
                it = B.vertex_of_key.emplace(key, vid).first;
                B.vkey.push_back(key);
                B.cx.vtype.push_back(key.first);
                std::string nm = "J{";
                for (size_t k = 0; k < key.first.size(); ++k)
                    nm += (k ? "," : "") + p.vnames[key.first[k]];
                B.cx.vname.push_back(nm + "}@" + to_string(p, key.second));
            }
            glob[lv] = it->second;
        }
        B.center_of_chamber[ci] = glob[cone.complex.center];
        for (const auto& q : cone.complex.cubes) {
            Cube gq;
            gq.dim = q.dim;
            gq.verts.reserve(q.verts.size());
            for (int lv : q.verts) gq.verts.push_back(glob[lv]);
            auto key = gq.sorted_verts();
            if (!B.cx.cube_index.count(key)) {
                B.cx.cube_index[key] = static_cast<int>(B.cx.cubes.size());
                B.cx.cubes.push_back(gq);
            }
        }
    }
    B.cx.finalize();
    check_type_intervals(B.cx);

    B.interior.assign(B.vkey.size(), 0);
    for (size_t v = 0; v < B.vkey.size(); ++v) {
        bool all = true;
        for (const auto& h : clique_subgroup_elements(p, B.vkey[v].first))
            all = all && B.has_chamber(multiply(p, B.vkey[v].second, h));
        B.interior[v] = all;
    }
    return B;
}

// The panel type joining two chambers, when they are adjacent.
inline std::optional<Syllable> adjacency_syllable(const ProductPresentation& p,
                                                  const NormalForm& a, const NormalForm& b) {
    NormalForm d = multiply(p, inverse(p, a), b);
    if (d.length() != 1) return std::nullopt;
    return d.syl[0];
}

// Chambers of the J-residue through a base chamber, restricted to the ball.
inline std::vector<int> residue_chambers(const BuildingBall& B, const std::vector<int>& J,
                                         int base) {
    std::set<int> js(J.begin(), J.end());
    for (int j : J)
        if (j < 0 || j >= B.pres.n()) fail("UnknownVertex", "residue type vertex");
    std::set<int> seen{base};
    std::vector<int> stack{base};
    while (!stack.empty()) {
        int c = stack.back();
        stack.pop_back();
        for (int j : js)
            for (int g = 0; g < B.pres.groups[j].order; ++g) {
                if (g == B.pres.groups[j].identity) continue;
                int d = B.chamber_id(multiply(B.pres, B.chambers[c], from_syllable(B.pres, j, g)));
                if (d >= 0 && seen.insert(d).second) stack.push_back(d);
            }
    }
    return {seen.begin(), seen.end()};
}

// Components of the i-boundary of the residue of type (i and its neighbors)
// at a base chamber. Two residue chambers share a component exactly when
// they differ by an element not using i; the component is labelled by the
// i-part of the chamber relative to the base.
struct BoundaryComponentsReport {
    std::vector<int> residue;   // chamber ids in the residue, ascending
    std::vector<int> label;     // element of the vertex group at i, per residue entry
    std::vector<int> component; // connectivity class under moves avoiding i
    bool labels_match_components = false;
    std::set<int> labels_present;
};

inline BoundaryComponentsReport i_boundary_components(const BuildingBall& B, int base, int i) {
    BoundaryComponentsReport rep;
    rep.residue = residue_chambers(B, B.pres.perp_eq(i), base);
    std::map<int, int> pos;
    for (size_t k = 0; k < rep.residue.size(); ++k) pos[rep.residue[k]] = static_cast<int>(k);

    const NormalForm& g0 = B.chambers[base];
    NormalForm g0inv = inverse(B.pres, g0);
    rep.label.resize(rep.residue.size());
    for (size_t k = 0; k < rep.residue.size(); ++k) {
        NormalForm d = retract(B.pres, multiply(B.pres, g0inv, B.chambers[rep.residue[k]]), {i});
        rep.label[k] = d.is_identity() ? B.pres.groups[i].identity : d.syl[0].g;
        rep.labels_present.insert(rep.label[k]);
    }

    rep.component.assign(rep.residue.size(), -1);
    auto perp = B.pres.perp(i);
    int comps = 0;
    for (size_t k = 0; k < rep.residue.size(); ++k) {
        if (rep.component[k] >= 0) continue;
        rep.component[k] = comps;
        std::vector<int> stack{rep.residue[k]};
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (int j : perp)
                for (int g = 0; g < B.pres.groups[j].order; ++g) {
                    if (g == B.pres.groups[j].identity) continue;
                    int d = B.chamber_id(
                        multiply(B.pres, B.chambers[c], from_syllable(B.pres, j, g)));
                    auto it = d >= 0 ? pos.find(d) : pos.end();
                    if (it != pos.end() && rep.component[it->second] < 0) {
                        rep.component[it->second] = comps;
                        stack.push_back(d);
                    }
                }
        }
        ++comps;
    }
    // Partitions coincide: same label <=> same component.
    rep.labels_match_components = true;
    for (size_t a = 0; a < rep.residue.size(); ++a)
        for (size_t b = a + 1; b < rep.residue.size(); ++b)
            if ((rep.label[a] == rep.label[b]) != (rep.component[a] == rep.component[b]))
                rep.labels_match_components = false;
    return rep;
}

// Descending link of a vertex: one link vertex per corank-1 corner below it,
// one simplex per cube having it as the top corner.
struct LowerLinkReport {
    std::vector<int> neighbor; // global vertex ids of rank one less
    SimplicialComplex cx;
    OctahedronReport oct;
};

inline LowerLinkReport lower_link(const BuildingBall& B, int v) {
    LowerLinkReport rep;
    std::map<int, int> lid;
    for (const auto& q : B.cx.cubes) {
        if (q.dim == 0) continue;
        if (q.verts[q.verts.size() - 1] != v) continue;
        std::vector<int> s;
        for (int j = 0; j < q.dim; ++j) {
            int u = q.verts[(q.verts.size() - 1) ^ (size_t{1} << j)];
            auto it = lid.find(u);
            if (it == lid.end()) {
                it = lid.emplace(u, static_cast<int>(rep.neighbor.size())).first;
                rep.neighbor.push_back(u);
            }
            s.push_back(it->second);
        }
        std::sort(s.begin(), s.end());
        rep.cx.simplices.insert(std::move(s));
    }
    rep.cx.n = static_cast<int>(rep.neighbor.size());
    rep.oct = is_thickened_octahedron(rep.cx);
    return rep;
}

// Interior local structure: links simple and flag everywhere, and each
// positive-rank interior vertex has a descending link that is a join of
// discrete sets sized by the vertex groups of its type.
struct BallLinkReport {
    bool ok = true;
    int checked = 0;
    int witness_vertex = -1;
    std::string reason;
};

inline BallLinkReport check_interior_links(const BuildingBall& B) {
    BallLinkReport rep;
    for (int v = 0; v < B.cx.n_vertices(); ++v) {
        if (!B.interior[v]) continue;
        ++rep.checked;
        try {
            VertexLink link = link_of_vertex(B.cx, v);
            if (auto w = flag_witness(link.cx)) {
                rep.ok = false;
                rep.witness_vertex = v;
                rep.reason = "link not flag";
                return rep;
            }
        } catch (const Error& e) {
            rep.ok = false;
            rep.witness_vertex = v;
            rep.reason = e.kind;
            return rep;
        }
        const auto& J = B.vkey[v].first;
        if (J.empty()) continue;
        LowerLinkReport low = lower_link(B, v);
        std::vector<size_t> expect;
        for (int j : J) expect.push_back(static_cast<size_t>(B.pres.groups[j].order));
        std::sort(expect.begin(), expect.end());
        std::vector<size_t> got;
        for (const auto& f : low.oct.factors) got.push_back(f.size());
        std::sort(got.begin(), got.end());
        if (!low.oct.ok || got != expect) {
            rep.ok = false;
            rep.witness_vertex = v;
            rep.reason = low.oct.ok ? "descending link factors off" : low.oct.reason;
            return rep;
        }
    }
    return rep;
}

// Certificate moves for contracting a closed gallery word. A Shuffle is the
// elementary square: the two commuting steps bound an embedded 4-cycle at the
// recorded prefix chamber. Merge and Drop retract along a single panel.
struct GalleryMove {
    enum class Kind { Merge, Drop, Shuffle } kind;
    size_t pos = 0;
    Syllable left{}, right{};
    NormalForm prefix_chamber;
};

struct GalleryReduction {
    std::vector<GalleryMove> moves;
    size_t shuffle_count = 0;
};

inline GalleryReduction reduce_closed_gallery(const ProductPresentation& p,
                                              std::vector<Syllable> w,
                                              const NormalForm& base = NormalForm{}) {
    for (const auto& s : w) {
        if (s.v < 0 || s.v >= p.n()) fail("UnknownVertex", "gallery step vertex");
        if (s.g <= 0 || s.g >= p.groups[s.v].order || s.g == p.groups[s.v].identity)
            fail("ElementOutOfRange", "gallery step must be a nontrivial element");
    }
    GalleryReduction out;
    auto prefix_at = [&](size_t pos) {
        NormalForm c = base;
        for (size_t k = 0; k < pos; ++k) c = multiply(p, c, from_syllable(p, w[k].v, w[k].g));
        return c;
    };
    for (;;) {
        bool moved = false;
        for (size_t q = 0; q + 1 < w.size(); ++q) {
            if (w[q].v != w[q + 1].v) continue;
            NormalForm pre = prefix_at(q);
            out.moves.push_back({GalleryMove::Kind::Merge, q, w[q], w[q + 1], pre});
            w[q].g = p.groups[w[q].v].mul(w[q].g, w[q + 1].g);
            w.erase(w.begin() + q + 1);
            if (w[q].g == p.groups[w[q].v].identity) {
                out.moves.push_back({GalleryMove::Kind::Drop, q, w[q], Syllable{}, pre});
                w.erase(w.begin() + q);
            }
            moved = true;
            break;
        }
        if (moved) continue;
        size_t bp = SIZE_MAX, bq = SIZE_MAX;
        for (size_t q = 0; q < w.size() && bp == SIZE_MAX; ++q)
            for (size_t pi = q; pi-- > 0;) {
                if (w[pi].v == w[q].v) {
                    bp = pi;
                    bq = q;
                    break;
                }
                if (!p.adjacent(w[pi].v, w[q].v)) break;
            }
        if (bp == SIZE_MAX) break;
        while (bq > bp + 1) {
            size_t s = bq - 1;
            out.moves.push_back({GalleryMove::Kind::Shuffle, s, w[s], w[s + 1], prefix_at(s)});
            std::swap(w[s], w[s + 1]);
            ++out.shuffle_count;
            --bq;
        }
    }
    if (!w.empty()) fail("NotClosed", "gallery word does not contract to a point");
    return out;
}

// Induced presentation on a vertex subset, with the renaming back to the
// parent.
struct SubPresentation {
    ProductPresentation pres;
    std::vector<int> to_parent;
};

inline SubPresentation induced_presentation(const ProductPresentation& p,
                                            std::vector<int> verts) {
    std::sort(verts.begin(), verts.end());
    for (int v : verts)
        if (v < 0 || v >= p.n()) fail("UnknownVertex", "induced subgraph vertex");
    SubPresentation s;
    s.to_parent = verts;
    std::vector<std::string> names;
    std::vector<FiniteGroup> gs;
    std::vector<std::pair<int, int>> edges;
    for (size_t a = 0; a < verts.size(); ++a) {
        names.push_back(p.vnames[verts[a]]);
        gs.push_back(p.groups[verts[a]]);
        for (size_t b = a + 1; b < verts.size(); ++b)
            if (p.adjacent(verts[a], verts[b]))
                edges.push_back({static_cast<int>(a), static_cast<int>(b)});
    }
    s.pres = make_presentation(std::move(names), std::move(edges), std::move(gs));
    return s;
}

inline NormalForm lift_to_parent(const ProductPresentation& parent, const SubPresentation& s,
                                 const NormalForm& w) {
    std::vector<Syllable> raw;
    raw.reserve(w.syl.size());
    for (const auto& sy : w.syl) raw.push_back({s.to_parent[sy.v], sy.g});
    return normalize(parent, raw);
}

// The residue of type (i and its neighbors) splits as the product of the
// i-panel star with the ball of the presentation induced on the neighbors.
// Verified by a type-preserving cell bijection onto the spanned subcomplex
// of the one-larger ball.
struct ResidueProductReport {
    bool ok = true;
    std::string mismatch;
    size_t product_cubes = 0;
    size_t spanned_cubes = 0;
    std::vector<size_t> cubes_by_dim;
};

inline ResidueProductReport residue_product_check(const ProductPresentation& p, int i,
                                                  int radius) {
    ResidueProductReport rep;
    SubPresentation star = induced_presentation(p, {i});
    SubPresentation perp = induced_presentation(p, p.perp(i));
    BuildingBall A = build_ball(star.pres, 1);
    BuildingBall Bp = build_ball(perp.pres, radius);
    BuildingBall big = build_ball(p, radius + 1);

    // Chamber set of the spanned subcomplex.
    std::set<int> S;
    std::vector<std::pair<NormalForm, NormalForm>> factor_pairs;
    for (const auto& ga : A.chambers)
        for (const auto& wb : Bp.chambers) {
            NormalForm gl = lift_to_parent(p, star, ga);
            NormalForm wl = lift_to_parent(p, perp, wb);
            NormalForm ch = multiply(p, gl, wl);
            int id = big.chamber_id(ch);
            if (id < 0) {
                rep.ok = false;
                rep.mismatch = "residue chamber missing from the ball";
                return rep;
            }
            S.insert(id);
            factor_pairs.push_back({gl, wl});
        }

    // Cubes of the sub-building: types inside the panel-star type set, bottom
    // coset meeting the chamber set.
    std::vector<int> perp_eq = p.perp_eq(i);
    std::set<int> allowed(perp_eq.begin(), perp_eq.end());
    std::set<int> spanned;
    std::set<int> spanned_verts;
    for (size_t qi = 0; qi < big.cx.cubes.size(); ++qi) {
        const Cube& q = big.cx.cubes[qi];
        bool types_ok = true;
        for (int t : big.cx.vtype[q.verts[q.verts.size() - 1]])
            types_ok = types_ok && allowed.count(t) > 0;
        if (!types_ok) continue;
        int bottom = q.verts[0];
        const auto& key = big.vkey[bottom];
        bool meets = false;
        for (const auto& h : clique_subgroup_elements(p, key.first)) {
            int c = big.chamber_id(multiply(p, key.second, h));
            if (c >= 0 && S.count(c)) meets = true;
        }
        if (meets) {
            spanned.insert(static_cast<int>(qi));
            for (int v : q.verts) spanned_verts.insert(v);
        }
    }
    rep.spanned_cubes = spanned.size();

    TypedCubeComplex prod = product_complex(A.cx, Bp.cx, p.n());
    rep.product_cubes = prod.cubes.size();
    rep.cubes_by_dim.assign(static_cast<size_t>(prod.max_dim()) + 1, 0);
    for (const auto& q : prod.cubes) rep.cubes_by_dim[q.dim] += 1;

    // Vertex map determined by the keys of the two factors.
    const int nb = Bp.cx.n_vertices();
    std::vector<int> vmap(static_cast<size_t>(A.cx.n_vertices()) * nb, -1);
    std::set<int> image;
    for (int va = 0; va < A.cx.n_vertices(); ++va)
        for (int vb = 0; vb < nb; ++vb) {
            std::vector<int> J;
            for (int t : A.vkey[va].first) J.push_back(star.to_parent[t]);
            for (int t : Bp.vkey[vb].first) J.push_back(perp.to_parent[t]);
            std::sort(J.begin(), J.end());
            NormalForm ch = multiply(p, lift_to_parent(p, star, A.vkey[va].second),
                                     lift_to_parent(p, perp, Bp.vkey[vb].second));
            VertexKey key{J, coset_rep(p, ch, J)};
            auto it = big.vertex_of_key.find(key);
            if (it == big.vertex_of_key.end()) {
                rep.ok = false;
                rep.mismatch = "product vertex has no counterpart";
                return rep;
            }
            vmap[static_cast<size_t>(va) * nb + vb] = it->second;
            if (!image.insert(it->second).second) {
                rep.ok = false;
                rep.mismatch = "vertex map not injective";
                return rep;
            }
        }
    if (image != spanned_verts) {
        rep.ok = false;
        rep.mismatch = "vertex image differs from the spanned subcomplex";
        return rep;
    }
    if (rep.product_cubes != rep.spanned_cubes) {
        rep.ok = false;
        rep.mismatch = "cube counts differ";
        return rep;
    }
    for (const auto& q : prod.cubes) {
        std::vector<int> img;
        img.reserve(q.verts.size());
        for (int v : q.verts) img.push_back(vmap[v]);
        std::sort(img.begin(), img.end());
        auto it = big.cx.cube_index.find(img);
        if (it == big.cx.cube_index.end() || !spanned.count(it->second)) {
            rep.ok = false;
            rep.mismatch = "image of a product cube is not a spanned cube";
            return rep;
        }
    }
    return rep;
}

} // namespace rab
