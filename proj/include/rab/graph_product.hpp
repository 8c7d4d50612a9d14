#pragma once
#include "rab/error.hpp"
#include "rab/groups.hpp"
#include "rab/simplicial.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace rab {

// Graph product data: a finite simple graph with one finite group per vertex.
// Generators from adjacent vertices commute; each vertex group embeds as-is.
struct ProductPresentation {
    std::vector<std::string> vnames;
    std::vector<std::vector<char>> adj;
    std::vector<FiniteGroup> groups;

    int n() const { return static_cast<int>(groups.size()); }
    bool adjacent(int i, int j) const { return i != j && adj[i][j]; }
    std::vector<int> perp(int i) const {
        std::vector<int> out;
        for (int j = 0; j < n(); ++j)
            if (adjacent(i, j)) out.push_back(j);
        return out;
    }
    std::vector<int> perp_eq(int i) const {
        auto out = perp(i);
        out.push_back(i);
        std::sort(out.begin(), out.end());
        return out;
    }
    bool is_clique(const std::vector<int>& J) const {
        for (size_t a = 0; a < J.size(); ++a)
            for (size_t b = a + 1; b < J.size(); ++b)
                if (!adjacent(J[a], J[b])) return false;
        return true;
    }
    long long clique_order(const std::vector<int>& J) const {
        long long m = 1;
        for (int j : J) m *= groups[j].order;
        return m;
    }
    // Nerve: the flag complex of the graph (nonempty cliques).
    SimplicialComplex nerve() const {
        SimplicialComplex c;
        c.n = n();
        std::vector<std::vector<int>> cliques;
        for (int v = 0; v < n(); ++v) cliques.push_back({v});
        size_t head = 0;
        while (head < cliques.size()) {
            auto k = cliques[head++];
            c.simplices.insert(k);
            for (int v = k.back() + 1; v < n(); ++v) {
                bool ok = true;
                for (int u : k) ok = ok && adjacent(u, v);
                if (ok) {
                    auto k2 = k;
                    k2.push_back(v);
                    cliques.push_back(std::move(k2));
                }
            }
        }
        return c;
    }
};

inline ProductPresentation make_presentation(std::vector<std::string> vnames,
                                             std::vector<std::pair<int, int>> edges,
                                             std::vector<FiniteGroup> groups) {
    const int n = static_cast<int>(groups.size());
    if (static_cast<int>(vnames.size()) != n) fail("ConfigError", "vertex name count mismatch");
    ProductPresentation p;
    p.vnames = std::move(vnames);
    p.groups = std::move(groups);
    p.adj.assign(n, std::vector<char>(n, 0));
    for (auto [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n) fail("UnknownVertex", "edge endpoint out of range");
        if (a == b) fail("ConfigError", "loop edge in presentation graph");
        p.adj[a][b] = p.adj[b][a] = 1;
    }
    for (const auto& g : p.groups)
        if (g.order < 2) fail("ConfigError", "vertex group must be nontrivial");
    return p;
}

// One syllable: a nontrivial element g of the group at vertex v.
struct Syllable {
    int v = 0;
    int g = 0;
    friend bool operator==(const Syllable&, const Syllable&) = default;
    friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

// Canonical reduced word: shuffle-least among the reduced words of the
// element (least movable vertex extracted first).
struct NormalForm {
    std::vector<Syllable> syl;

    size_t length() const { return syl.size(); }
    bool is_identity() const { return syl.empty(); }
    friend bool operator==(const NormalForm&, const NormalForm&) = default;
    friend bool operator<(const NormalForm& a, const NormalForm& b) {
        if (a.syl.size() != b.syl.size()) return a.syl.size() < b.syl.size();
        return a.syl < b.syl;
    }
};

inline std::string to_string(const ProductPresentation& p, const NormalForm& w) {
    if (w.syl.empty()) return "1";
    std::string s;
    for (const auto& sy : w.syl) {
        if (!s.empty()) s += ".";
        s += p.vnames[sy.v] + ":" + p.groups[sy.v].labels[sy.g];
    }
    return s;
}

namespace detail {

// Reduce in place: drop identities, merge same-vertex syllables separated only
// by commuting ones. Terminates since each merge shortens the word.
inline void reduce_word(const ProductPresentation& p, std::vector<Syllable>& w) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t q = 0; q < w.size() && !changed; ++q) {
            if (w[q].g == p.groups[w[q].v].identity) {
                w.erase(w.begin() + q);
                changed = true;
                break;
            }
            for (size_t pi = q; pi-- > 0;) {
                if (w[pi].v == w[q].v) {
                    w[pi].g = p.groups[w[q].v].mul(w[pi].g, w[q].g);
                    w.erase(w.begin() + q);
                    if (w[pi].g == p.groups[w[pi].v].identity) w.erase(w.begin() + pi);
                    changed = true;
                    break;
                }
                if (!p.adjacent(w[pi].v, w[q].v)) break;
            }
        }
    }
}

} // namespace detail

// Full normalization of a raw syllable word.
inline NormalForm normalize(const ProductPresentation& p, std::vector<Syllable> w) {
    for (const auto& s : w) {
        if (s.v < 0 || s.v >= p.n()) fail("UnknownVertex", "syllable vertex " + std::to_string(s.v));
        if (s.g < 0 || s.g >= p.groups[s.v].order)
            fail("ElementOutOfRange", "element " + std::to_string(s.g) + " at vertex " +
                                          std::to_string(s.v));
    }
    detail::reduce_word(p, w);
    NormalForm nf;
    nf.syl.reserve(w.size());
    while (!w.empty()) {
        // Least vertex whose syllable commutes past everything before it.
        size_t best = w.size();
        for (size_t q = 0; q < w.size(); ++q) {
            bool movable = true;
            for (size_t pi = 0; pi < q && movable; ++pi)
                movable = p.adjacent(w[pi].v, w[q].v);
            if (movable && (best == w.size() || w[q].v < w[best].v)) best = q;
        }
        nf.syl.push_back(w[best]);
        w.erase(w.begin() + best);
    }
    return nf;
}

inline NormalForm multiply(const ProductPresentation& p, const NormalForm& a,
                           const NormalForm& b) {
    std::vector<Syllable> w = a.syl;
    w.insert(w.end(), b.syl.begin(), b.syl.end());
    return normalize(p, w);
}

inline NormalForm inverse(const ProductPresentation& p, const NormalForm& a) {
    std::vector<Syllable> w;
    w.reserve(a.syl.size());
    for (auto it = a.syl.rbegin(); it != a.syl.rend(); ++it)
        w.push_back({it->v, p.groups[it->v].inv(it->g)});
    return normalize(p, w);
}

inline NormalForm from_syllable(const ProductPresentation& p, int v, int g) {
    return normalize(p, {Syllable{v, g}});
}

// Kills every syllable outside J; a homomorphism onto the J-subproduct.
inline NormalForm retract(const ProductPresentation& p, const NormalForm& a,
                          const std::vector<int>& J) {
    for (int j : J)
        if (j < 0 || j >= p.n()) fail("UnknownVertex", "retract target vertex");
    std::set<int> js(J.begin(), J.end());
    std::vector<Syllable> w;
    for (const auto& s : a.syl)
        if (js.count(s.v)) w.push_back(s);
    return normalize(p, w);
}

inline size_t syllable_length(const NormalForm& a) { return a.syl.size(); }

// All elements of syllable length <= radius, canonically sorted.
inline std::vector<NormalForm> enumerate_ball(const ProductPresentation& p, int radius,
                                              size_t cap = 1000000) {
    std::set<NormalForm> seen{NormalForm{}};
    std::vector<NormalForm> frontier{NormalForm{}};
    for (int step = 0; step < radius; ++step) {
        std::vector<NormalForm> next;
        for (const auto& w : frontier) {
            for (int i = 0; i < p.n(); ++i)
                for (int g = 0; g < p.groups[i].order; ++g) {
                    if (g == p.groups[i].identity) continue;
                    NormalForm u = multiply(p, w, from_syllable(p, i, g));
                    if (seen.insert(u).second) {
                        if (seen.size() > cap) fail("BallTooLarge", "ball exceeds cap");
                        next.push_back(std::move(u));
                    }
                }
        }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

// Elements of the finite clique subgroup as canonical forms (syllables sorted
// by vertex since everything commutes).
inline std::vector<NormalForm> clique_subgroup_elements(const ProductPresentation& p,
                                                        std::vector<int> J) {
    std::sort(J.begin(), J.end());
    for (int j : J)
        if (j < 0 || j >= p.n()) fail("UnknownVertex", "clique subgroup vertex");
    if (std::adjacent_find(J.begin(), J.end()) != J.end())
        fail("ConfigError", "repeated vertex in clique");
    if (!p.is_clique(J)) fail("ResidueInfinite", "subset is not a clique");
    std::vector<NormalForm> out{NormalForm{}};
    for (int j : J) {
        std::vector<NormalForm> next;
        for (const auto& w : out)
            for (int g = 0; g < p.groups[j].order; ++g) {
                NormalForm u = w;
                if (g != p.groups[j].identity) u.syl.push_back({j, g});
                next.push_back(std::move(u));
            }
        out = std::move(next);
    }
    return out;
}

// Canonical representative of the coset w * G_J (J a clique): the least
// member in the (length, lex) order.
inline NormalForm coset_rep(const ProductPresentation& p, const NormalForm& w,
                            const std::vector<int>& J) {
    NormalForm best;
    bool first = true;
    for (const auto& h : clique_subgroup_elements(p, J)) {
        NormalForm u = multiply(p, w, h);
        if (first || u < best) {
            best = std::move(u);
            first = false;
        }
    }
    return best;
}

// Homomorphism out of the graph product, determined by one target element per
// nontrivial vertex-group element.
struct GraphProductHom {
    GroupHom hom;
    std::vector<int> gen_offset; // generator index of (v,g) = gen_offset[v] + g - shift
    std::vector<int> id_of_vertex;

    int gen_index(int v, int g) const {
        // Nontrivial elements of vertex v are numbered consecutively skipping
        // the identity.
        int idx = gen_offset[v];
        for (int x = 0; x < g; ++x)
            if (x != id_of_vertex[v]) ++idx;
        return idx;
    }
    int eval(const NormalForm& w) const {
        int x = hom.target.identity;
        for (const auto& s : w.syl) x = hom.target.mul(x, hom.images[gen_index(s.v, s.g)]);
        return x;
    }
    // Image of the full group: closure of all generator images.
    std::vector<int> image_subgroup() const {
        return subgroup_closure(hom.target, hom.images);
    }
    int gen_count(int v) const {
        int next = v + 1 < static_cast<int>(gen_offset.size())
                       ? gen_offset[v + 1]
                       : static_cast<int>(hom.images.size());
        return next - gen_offset[v];
    }
    // Image of the subproduct generated by the vertices in J.
    std::vector<int> image_of_vertices(const std::vector<int>& J) const {
        std::vector<int> gens;
        for (int v : J)
            for (int k = 0; k < gen_count(v); ++k) gens.push_back(hom.images[gen_offset[v] + k]);
        return subgroup_closure(hom.target, gens);
    }
};

// Presents the graph product: vertex-group tables plus cross-edge commutators.
inline PresentedSource graph_product_source(const ProductPresentation& p,
                                            std::vector<int>& gen_offset,
                                            std::vector<int>& id_of_vertex) {
    PresentedSource src;
    gen_offset.clear();
    id_of_vertex.clear();
    std::vector<std::vector<int>> gid(p.n());
    for (int v = 0; v < p.n(); ++v) {
        gen_offset.push_back(static_cast<int>(src.generator_names.size()));
        id_of_vertex.push_back(p.groups[v].identity);
        gid[v].assign(p.groups[v].order, -1);
        for (int g = 0; g < p.groups[v].order; ++g) {
            if (g == p.groups[v].identity) continue;
            gid[v][g] = static_cast<int>(src.generator_names.size());
            src.generator_names.push_back(p.vnames[v] + ":" + p.groups[v].labels[g]);
        }
    }
    for (int v = 0; v < p.n(); ++v) {
        const auto& G = p.groups[v];
        for (int a = 0; a < G.order; ++a) {
            if (a == G.identity) continue;
            for (int b = 0; b < G.order; ++b) {
                if (b == G.identity) continue;
                int c = G.mul(a, b);
                std::vector<int> w{gid[v][a], gid[v][b]};
                if (c != G.identity) w.push_back(gid[v][G.inv(c)]);
                src.relations.push_back(std::move(w));
                src.relation_names.push_back(p.vnames[v] + ":" + G.labels[a] + "*" + G.labels[b]);
            }
        }
    }
    for (int u = 0; u < p.n(); ++u)
        for (int v = u + 1; v < p.n(); ++v) {
            if (!p.adjacent(u, v)) continue;
            for (int a = 0; a < p.groups[u].order; ++a) {
                if (a == p.groups[u].identity) continue;
                for (int b = 0; b < p.groups[v].order; ++b) {
                    if (b == p.groups[v].identity) continue;
                    src.relations.push_back({gid[u][a], gid[v][b], gid[u][p.groups[u].inv(a)],
                                             gid[v][p.groups[v].inv(b)]});
                    src.relation_names.push_back("[" + p.vnames[u] + ":" + p.groups[u].labels[a] +
                                                 "," + p.vnames[v] + ":" + p.groups[v].labels[b] +
                                                 "]");
                }
            }
        }
    return src;
}

inline GraphProductHom make_graph_hom(const ProductPresentation& p, FiniteGroup target,
                                      std::vector<int> images) {
    GraphProductHom gh;
    PresentedSource src = graph_product_source(p, gh.gen_offset, gh.id_of_vertex);
    gh.hom = hom_check(GroupHom{std::move(src), std::move(target), std::move(images)});
    return gh;
}

// The canonical map onto the direct product of the vertex groups. Its kernel
// acts on the building with trivial holonomy everywhere.
inline GraphProductHom gamma0_hom(const ProductPresentation& p, long long order_cap = 100000) {
    long long order = 1;
    for (const auto& g : p.groups) {
        order *= g.order;
        if (order > order_cap) fail("BallTooLarge", "direct product exceeds order cap");
    }
    // Mixed-radix index: coordinate of vertex v varies fastest for larger v.
    std::vector<long long> stride(p.n(), 1);
    for (int v = p.n() - 2; v >= 0; --v) stride[v] = stride[v + 1] * p.groups[v + 1].order;
    const int N = static_cast<int>(order);
    std::vector<std::vector<int>> table(N, std::vector<int>(N));
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
            long long z = 0;
            for (int v = 0; v < p.n(); ++v) {
                int xv = static_cast<int>(x / stride[v]) % p.groups[v].order;
                int yv = static_cast<int>(y / stride[v]) % p.groups[v].order;
                z += stride[v] * p.groups[v].mul(xv, yv);
            }
            table[x][y] = static_cast<int>(z);
        }
    FiniteGroup target = validate_group(std::move(table));
    std::vector<int> images;
    for (int v = 0; v < p.n(); ++v)
        for (int g = 0; g < p.groups[v].order; ++g) {
            if (g == p.groups[v].identity) continue;
            images.push_back(static_cast<int>(stride[v] * g));
        }
    return make_graph_hom(p, std::move(target), std::move(images));
}

// Finite-index subgroup of the graph product: preimage of a subgroup of the
// finite target.
struct GPSubgroup {
    GraphProductHom hom;
    std::vector<int> image; // sorted subgroup of the target

    bool contains(const NormalForm& w) const {
        return std::binary_search(image.begin(), image.end(), hom.eval(w));
    }
};

inline GPSubgroup make_gp_subgroup(GraphProductHom hom, std::vector<int> image) {
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (!is_subgroup(hom.hom.target, image)) fail("NotASubgroup", "image set not a subgroup");
    return GPSubgroup{std::move(hom), std::move(image)};
}

} // namespace rab
