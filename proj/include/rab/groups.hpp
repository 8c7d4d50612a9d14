#pragma once
#include "rab/error.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace rab {

// Finite group given by an explicit multiplication table.
// Elements are indices 0..order-1; table[a][b] = a*b.
struct FiniteGroup {
    int order = 0;
    std::vector<std::vector<int>> table;
    int identity = 0;
    std::vector<int> inverse;
    std::vector<std::string> labels;

    int mul(int a, int b) const { return table[a][b]; }
    int inv(int a) const { return inverse[a]; }
    const std::string& label(int a) const { return labels[a]; }
    bool is_abelian() const {
        for (int a = 0; a < order; ++a)
            for (int b = a + 1; b < order; ++b)
                if (table[a][b] != table[b][a]) return false;
        return true;
    }
};

// Validates a table as a group: Latin square, identity, associativity
// (exhaustive for order <= 64, seeded sampling above), then derives inverses.
inline FiniteGroup validate_group(std::vector<std::vector<int>> table,
                                  std::vector<std::string> labels = {}) {
    const int n = static_cast<int>(table.size());
    if (n == 0) fail("NotLatinSquare", "empty table");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n)
            fail("NotLatinSquare", "table is not square");
        for (int v : row)
            if (v < 0 || v >= n) fail("NotLatinSquare", "entry out of range");
    }
    for (int a = 0; a < n; ++a) {
        std::vector<char> seen_row(n, 0), seen_col(n, 0);
        for (int b = 0; b < n; ++b) {
            if (seen_row[table[a][b]]++)
                fail("NotLatinSquare", "row " + std::to_string(a) + " repeats an entry");
            if (seen_col[table[b][a]]++)
                fail("NotLatinSquare", "column " + std::to_string(a) + " repeats an entry");
        }
    }
    int identity = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            ok = table[e][x] == x && table[x][e] == x;
        if (ok) { identity = e; break; }
    }
    if (identity < 0) fail("NoIdentity", "no two-sided identity element");
    auto assoc = [&](int a, int b, int c) {
        return table[table[a][b]][c] == table[a][table[b][c]];
    };
    if (n <= 64) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (!assoc(a, b, c))
                        fail("NonAssociative",
                             "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                 std::to_string(c) + ")");
    } else {
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL); // fixed sampling seed
        std::uniform_int_distribution<int> d(0, n - 1);
        for (int t = 0; t < 200000; ++t) {
            int a = d(rng), b = d(rng), c = d(rng);
            if (!assoc(a, b, c))
                fail("NonAssociative",
                     "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                         std::to_string(c) + ")");
        }
    }
    FiniteGroup g;
    g.order = n;
    g.table = std::move(table);
    g.identity = identity;
    g.inverse.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.table[a][b] == identity) { g.inverse[a] = b; break; }
    for (int a = 0; a < n; ++a)
        if (g.inverse[a] < 0 || g.table[g.inverse[a]][a] != identity)
            fail("NonAssociative", "element " + std::to_string(a) + " lacks a two-sided inverse");
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
        fail("NotLatinSquare", "label count does not match order");
    if (labels.empty()) {
        labels.reserve(n);
        for (int a = 0; a < n; ++a) labels.push_back("g" + std::to_string(a));
    }
    g.labels = std::move(labels);
    return g;
}

inline FiniteGroup cyclic_group(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> lab(n);
    for (int a = 0; a < n; ++a) {
        lab[a] = std::to_string(a);
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    }
    return validate_group(std::move(t), std::move(lab));
}

inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const int n = a.order * b.order;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> lab(n);
    auto idx = [&](int x, int y) { return x * b.order + y; };
    for (int x = 0; x < a.order; ++x)
        for (int y = 0; y < b.order; ++y) {
            lab[idx(x, y)] = "(" + a.labels[x] + "," + b.labels[y] + ")";
            for (int u = 0; u < a.order; ++u)
                for (int v = 0; v < b.order; ++v)
                    t[idx(x, y)][idx(u, v)] = idx(a.mul(x, u), b.mul(y, v));
        }
    return validate_group(std::move(t), std::move(lab));
}

// Symmetric group on m letters via one-line permutation composition.
inline FiniteGroup symmetric_group(int m) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    do { perms.push_back(p); } while (std::next_permutation(p.begin(), p.end()));
    std::sort(perms.begin(), perms.end());
    const int n = static_cast<int>(perms.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < n; ++i) index[perms[i]] = i;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> lab(n);
    for (int i = 0; i < n; ++i) {
        std::string s = "[";
        for (int k = 0; k < m; ++k) s += std::to_string(perms[i][k]);
        lab[i] = s + "]";
        for (int j = 0; j < n; ++j) {
            std::vector<int> c(m);
            for (int k = 0; k < m; ++k) c[k] = perms[i][perms[j][k]]; // i after j
            t[i][j] = index[c];
        }
    }
    return validate_group(std::move(t), std::move(lab));
}

inline std::vector<int> subgroup_closure(const FiniteGroup& g, std::vector<int> gens) {
    std::set<int> got{g.identity};
    std::vector<int> frontier{g.identity};
    for (int x : gens)
        if (got.insert(x).second) frontier.push_back(x);
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier) {
            for (int s : gens) {
                if (got.insert(g.mul(x, s)).second) next.push_back(g.mul(x, s));
                if (got.insert(g.mul(x, g.inv(s))).second) next.push_back(g.mul(x, g.inv(s)));
            }
        }
        frontier = std::move(next);
    }
    return {got.begin(), got.end()};
}

inline bool is_subgroup(const FiniteGroup& g, const std::vector<int>& subset) {
    std::set<int> s(subset.begin(), subset.end());
    if (!s.count(g.identity)) return false;
    for (int a : s)
        for (int b : s)
            if (!s.count(g.mul(a, b))) return false;
    for (int a : s)
        if (!s.count(g.inv(a))) return false;
    return true;
}

// Representatives of H\G/K, each the least element index of its double coset,
// listed ascending.
inline std::vector<int> double_coset_reps(const FiniteGroup& g, const std::vector<int>& H,
                                          const std::vector<int>& K) {
    if (!is_subgroup(g, H)) fail("NotASubgroup", "left factor is not a subgroup");
    if (!is_subgroup(g, K)) fail("NotASubgroup", "right factor is not a subgroup");
    std::vector<char> seen(g.order, 0);
    std::vector<int> reps;
    for (int a = 0; a < g.order; ++a) {
        if (seen[a]) continue;
        reps.push_back(a);
        for (int h : H)
            for (int k : K) seen[g.mul(g.mul(h, a), k)] = 1;
    }
    return reps;
}

/// Abstract presented source of a homomorphism: named generators plus relator
// words (products that must map to the identity).
struct PresentedSource {
    std::vector<std::string> generator_names;
    std::vector<std::vector<int>> relations;
    std::vector<std::string> relation_names;
};

struct GroupHom {
    PresentedSource source;
    FiniteGroup target;
    std::vector<int> images; // one target element per source generator

    int eval_word(const std::vector<int>& word) const {
        int x = target.identity;
        for (int gi : word) x = target.mul(x, images[gi]);
        return x;
    }
};

// Verifies every relator maps to the identity; returns the hom unchanged.
inline GroupHom hom_check(GroupHom h) {
    if (h.images.size() != h.source.generator_names.size())
        fail("RelationViolated", "image count does not match generator count");
    for (int v : h.images)
        if (v < 0 || v >= h.target.order) fail("RelationViolated", "image out of range");
    for (size_t r = 0; r < h.source.relations.size(); ++r) {
        if (h.eval_word(h.source.relations[r]) != h.target.identity)
            fail("RelationViolated", h.source.relation_names[r]);
    }
    return h;
}

// Presents a finite group by its full multiplication table.
inline PresentedSource finite_source(const FiniteGroup& g) {
    PresentedSource s;
    for (int a = 0; a < g.order; ++a) s.generator_names.push_back(g.labels[a]);
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b) {
            int c = g.mul(a, b);
            std::vector<int> w{a, b};
            if (c != g.identity) w.push_back(g.inv(c));
            s.relations.push_back(std::move(w));
            s.relation_names.push_back(g.labels[a] + "*" + g.labels[b]);
        }
    return s;
}

// A finite-index subgroup presented as the preimage of image_subgroup under hom.
struct SubgroupData {
    GroupHom hom;
    std::vector<int> image_subgroup; // sorted subset of hom.target

    bool image_contains(int q) const {
        return std::binary_search(image_subgroup.begin(), image_subgroup.end(), q);
    }
};

inline SubgroupData make_subgroup(GroupHom hom, std::vector<int> image_subgroup) {
    std::sort(image_subgroup.begin(), image_subgroup.end());
    image_subgroup.erase(std::unique(image_subgroup.begin(), image_subgroup.end()),
                         image_subgroup.end());
    if (!is_subgroup(hom.target, image_subgroup))
        fail("NotASubgroup", "image set is not a subgroup of the target");
    return SubgroupData{std::move(hom), std::move(image_subgroup)};
}

// Finite abelian group as a direct sum of cyclic factors Z/n_i.
struct FiniteAbelian {
    std::vector<long long> torsion;
    using Elem = std::vector<long long>;

    size_t rank() const { return torsion.size(); }
    Elem zero() const { return Elem(torsion.size(), 0); }
    Elem reduce(Elem a) const {
        for (size_t i = 0; i < torsion.size(); ++i) {
            a[i] %= torsion[i];
            if (a[i] < 0) a[i] += torsion[i];
        }
        return a;
    }
    Elem add(const Elem& a, const Elem& b) const {
        Elem c(torsion.size());
        for (size_t i = 0; i < torsion.size(); ++i) c[i] = (a[i] + b[i]) % torsion[i];
        return c;
    }
    Elem neg(const Elem& a) const {
        Elem c(torsion.size());
        for (size_t i = 0; i < torsion.size(); ++i) c[i] = (torsion[i] - a[i]) % torsion[i];
        return c;
    }
    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
    Elem scale(long long k, const Elem& a) const {
        Elem c(torsion.size());
        for (size_t i = 0; i < torsion.size(); ++i) {
            long long v = (k % torsion[i]) * (a[i] % torsion[i]) % torsion[i];
            c[i] = v < 0 ? v + torsion[i] : v;
        }
        return c;
    }
    bool is_zero(const Elem& a) const {
        for (long long v : a)
            if (v != 0) return false;
        return true;
    }
    long long order() const {
        long long n = 1;
        for (long long t : torsion) n *= t;
        return n;
    }
    std::vector<Elem> elements() const {
        std::vector<Elem> out{zero()};
        for (size_t i = 0; i < torsion.size(); ++i) {
            std::vector<Elem> next;
            next.reserve(out.size() * torsion[i]);
            for (const Elem& e : out)
                for (long long v = 0; v < torsion[i]; ++v) {
                    Elem f = e;
                    f[i] = v;
                    next.push_back(std::move(f));
                }
            out = std::move(next);
        }
        return out;
    }
};

namespace detail {
inline long long ext_gcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) { x = 1; y = 0; return a; }
    long long x1, y1;
    long long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}
inline long long mod_norm(long long a, long long n) {
    a %= n;
    return a < 0 ? a + n : a;
}
} // namespace detail

// Solves A x = b over Z/n for arbitrary n by diagonalizing A with unimodular
// row and column operations mod n; the diagonal system decouples completely.
inline std::optional<std::vector<long long>> solve_linear_mod(
    long long n, std::vector<std::vector<long long>> A, std::vector<long long> b) {
    using detail::ext_gcd;
    using detail::mod_norm;
    const size_t rows = A.size();
    const size_t cols = rows ? A[0].size() : 0;
    if (cols == 0) {
        for (long long v : b)
            if (mod_norm(v, n) != 0) return std::nullopt;
        return std::vector<long long>{};
    }
    for (auto& row : A)
        for (auto& v : row) v = mod_norm(v, n);
    for (auto& v : b) v = mod_norm(v, n);
    // V accumulates column operations; solution x = V y.
    std::vector<std::vector<long long>> V(cols, std::vector<long long>(cols, 0));
    for (size_t i = 0; i < cols; ++i) V[i][i] = 1;

    auto row_combine = [&](size_t r, size_t i, size_t c) {
        // Unimodular on rows r,i making A[i][c] = 0. When the pivot divides
        // the entry, plain elimination leaves row r untouched; otherwise the
        // gcd combine strictly shrinks the pivot, so the outer loop terminates.
        long long u = A[r][c], v = A[i][c], x, y;
        if (v == 0) return;
        if (u == 0) { std::swap(A[r], A[i]); std::swap(b[r], b[i]); return; }
        if (v % u == 0) {
            long long q = v / u;
            for (size_t k = 0; k < cols; ++k) A[i][k] = mod_norm(A[i][k] - q * A[r][k], n);
            b[i] = mod_norm(b[i] - q * b[r], n);
            return;
        }
        long long g = ext_gcd(u, v, x, y);
        std::vector<long long> nr(cols), ni(cols);
        for (size_t k = 0; k < cols; ++k) {
            nr[k] = mod_norm(x * A[r][k] + y * A[i][k], n);
            ni[k] = mod_norm(-(v / g) * A[r][k] + (u / g) * A[i][k], n);
        }
        A[r] = std::move(nr);
        A[i] = std::move(ni);
        long long nbr = mod_norm(x * b[r] + y * b[i], n);
        long long nbi = mod_norm(-(v / g) * b[r] + (u / g) * b[i], n);
        b[r] = nbr;
        b[i] = nbi;
    };
    auto col_combine = [&](size_t r, size_t c, size_t j) {
        // Column mirror of row_combine; every operation is applied to V too.
        long long u = A[r][c], v = A[r][j], x, y;
        if (v == 0) return;
        if (u == 0) {
            for (size_t k = 0; k < rows; ++k) std::swap(A[k][c], A[k][j]);
            for (size_t k = 0; k < cols; ++k) std::swap(V[k][c], V[k][j]);
            return;
        }
        if (v % u == 0) {
            long long q = v / u;
            for (size_t k = 0; k < rows; ++k) A[k][j] = mod_norm(A[k][j] - q * A[k][c], n);
            for (size_t k = 0; k < cols; ++k) V[k][j] = mod_norm(V[k][j] - q * V[k][c], n);
            return;
        }
        long long g = ext_gcd(u, v, x, y);
        for (size_t k = 0; k < rows; ++k) {
            long long nc = mod_norm(x * A[k][c] + y * A[k][j], n);
            long long nj = mod_norm(-(v / g) * A[k][c] + (u / g) * A[k][j], n);
            A[k][c] = nc;
            A[k][j] = nj;
        }
        for (size_t k = 0; k < cols; ++k) {
            long long nc = mod_norm(x * V[k][c] + y * V[k][j], n);
            long long nj = mod_norm(-(v / g) * V[k][c] + (u / g) * V[k][j], n);
            V[k][c] = nc;
            V[k][j] = nj;
        }
    };

    const size_t t_max = std::min(rows, cols);
    for (size_t t = 0; t < t_max; ++t) {
        // Bring a nonzero entry (if any) into (t,t).
        size_t pr = rows, pc = cols;
        for (size_t i = t; i < rows && pr == rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (A[i][j] != 0) { pr = i; pc = j; break; }
        if (pr == rows) break;
        std::swap(A[t], A[pr]);
        std::swap(b[t], b[pr]);
        if (pc != t) {
            for (size_t k = 0; k < rows; ++k) std::swap(A[k][t], A[k][pc]);
            for (size_t k = 0; k < cols; ++k) std::swap(V[k][t], V[k][pc]);
        }
        // Alternate clearing row and column t until both are clear.
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (size_t i = t + 1; i < rows; ++i)
                if (A[i][t] != 0) { row_combine(t, i, t); dirty = true; }
            for (size_t j = t + 1; j < cols; ++j)
                if (A[t][j] != 0) { col_combine(t, t, j); dirty = true; }
        }
    }
    std::vector<long long> y(cols, 0);
    for (size_t i = 0; i < rows; ++i) {
        long long d = i < cols ? A[i][i] : 0;
        if (d == 0) {
            if (b[i] != 0) return std::nullopt;
            continue;
        }
        long long u, v;
        long long g = ext_gcd(d, n, u, v);
        if (b[i] % g != 0) return std::nullopt;
        y[i] = mod_norm((b[i] / g) * u, n);
    }
    std::vector<long long> x(cols, 0);
    for (size_t i = 0; i < cols; ++i)
        for (size_t j = 0; j < cols; ++j) x[i] = mod_norm(x[i] + V[i][j] * y[j], n);
    return x;
}

// Permutation helpers (one-line form, p[i] = image of i).
inline std::vector<int> compose_perm(const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(p.size()); // (p∘q)(i) = p[q[i]]
    for (size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
}
inline std::vector<int> invert_perm(const std::vector<int>& p) {
    std::vector<int> r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
    return r;
}
inline std::vector<int> identity_perm(int n) {
    std::vector<int> r(n);
    std::iota(r.begin(), r.end(), 0);
    return r;
}

} // namespace rab
