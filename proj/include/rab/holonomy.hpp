#pragma once
#include "rab/building.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rab {

// Gate of the residue of type J through w: the unique chamber of the residue
// closest to the base chamber, reached without ever lengthening.
inline NormalForm residue_rep(const ProductPresentation& p, const NormalForm& w,
                              const std::vector<int>& J) {
    std::set<NormalForm> seen{w};
    std::vector<NormalForm> stack{w};
    NormalForm best = w;
    while (!stack.empty()) {
        NormalForm c = stack.back();
        stack.pop_back();
        if (c < best) best = c;
        for (int j : J)
            for (int g = 0; g < p.groups[j].order; ++g) {
                if (g == p.groups[j].identity) continue;
                NormalForm d = multiply(p, c, from_syllable(p, j, g));
                if (d.length() <= w.length() && seen.insert(d).second) stack.push_back(d);
            }
    }
    return best;
}

// Component label of a chamber in the panel-star residue gated at g0: the
// i-part of the position relative to the gate.
inline int component_label(const ProductPresentation& p, int i, const NormalForm& g0,
                           const NormalForm& c) {
    NormalForm d = retract(p, multiply(p, inverse(p, g0), c), {i});
    return d.is_identity() ? p.groups[i].identity : d.syl[0].g;
}

// Elements of the vertex group at i whose left translation on component
// labels is realized by a subgroup element stabilizing the residue.
struct HolonomyReport {
    int i = 0;
    std::vector<int> image; // subgroup of the vertex group, ascending
    bool trivial() const { return image.size() == 1; }
};

inline HolonomyReport holonomy_at(const ProductPresentation& p, const GPSubgroup& sub,
                                  int i, const NormalForm& gamma) {
    const FiniteGroup& Q = sub.hom.hom.target;
    const FiniteGroup& Gi = p.groups[i];
    int qg = sub.hom.eval(gamma);
    std::vector<int> T = sub.hom.image_of_vertices(p.perp(i));
    HolonomyReport rep;
    rep.i = i;
    for (int g = 0; g < Gi.order; ++g) {
        int qig = g == Gi.identity ? Q.identity : sub.hom.hom.images[sub.hom.gen_index(i, g)];
        bool hit = false;
        for (int t : T) {
            int x = Q.mul(Q.mul(Q.mul(qg, qig), t), Q.inv(qg));
            if (std::binary_search(sub.image.begin(), sub.image.end(), x)) hit = true;
        }
        if (hit) rep.image.push_back(g);
    }
    if (!is_subgroup(Gi, rep.image)) fail("InternalError", "holonomy image is not a subgroup");
    return rep;
}

namespace detail {

// Shortest words of the J-subproduct realizing each image value, up to the
// expected image size. Image sets grow every round until complete, so this
// terminates.
inline std::map<int, NormalForm> image_realizations(const ProductPresentation& p,
                                                    const GraphProductHom& hom,
                                                    const std::vector<int>& J, size_t want) {
    std::map<int, NormalForm> out;
    out.emplace(hom.hom.target.identity, NormalForm{});
    std::set<NormalForm> seen{NormalForm{}};
    std::vector<NormalForm> frontier{NormalForm{}};
    while (out.size() < want && !frontier.empty()) {
        std::vector<NormalForm> next;
        for (const auto& w : frontier)
            for (int v : J)
                for (int g = 0; g < p.groups[v].order; ++g) {
                    if (g == p.groups[v].identity) continue;
                    NormalForm u = multiply(p, w, from_syllable(p, v, g));
                    if (seen.insert(u).second) {
                        out.emplace(hom.eval(u), u);
                        next.push_back(std::move(u));
                    }
                }
        frontier = std::move(next);
    }
    if (out.size() < want) fail("InternalError", "image not fully realized");
    return out;
}

// Double coset classes H\Q0/K of the image subgroup Q0, each as the set of
// its members inside Q0.
inline std::vector<std::set<int>> double_coset_classes(const FiniteGroup& Q,
                                                       const std::vector<int>& Q0,
                                                       const std::vector<int>& H,
                                                       const std::vector<int>& K) {
    std::set<int> carrier(Q0.begin(), Q0.end());
    std::set<int> left = carrier;
    std::vector<std::set<int>> classes;
    while (!left.empty()) {
        int a = *left.begin();
        std::set<int> cls;
        for (int h : H)
            for (int k : K) {
                int x = Q.mul(Q.mul(h, a), k);
                if (carrier.count(x)) cls.insert(x);
            }
        for (int x : cls) left.erase(x);
        classes.push_back(std::move(cls));
    }
    return classes;
}

} // namespace detail

// One subgroup orbit of panel-star residues: a double coset of the finite
// images, a shortest realizing chamber, and the holonomy there.
struct HolonomyOrbit {
    int i = 0;
    int coset_class = 0; // representative element of the finite quotient
    NormalForm gate;
    HolonomyReport holonomy;
};

inline std::vector<HolonomyOrbit> holonomy_orbits(const ProductPresentation& p,
                                                  const GPSubgroup& sub, int i) {
    const FiniteGroup& Q = sub.hom.hom.target;
    std::vector<int> Q0 = sub.hom.image_subgroup();
    std::vector<int> K = sub.hom.image_of_vertices(p.perp_eq(i));
    std::vector<int> all(p.n());
    for (int v = 0; v < p.n(); ++v) all[v] = v;
    std::map<int, NormalForm> realize = detail::image_realizations(p, sub.hom, all, Q0.size());
    std::vector<HolonomyOrbit> out;
    for (const auto& cls : detail::double_coset_classes(Q, Q0, sub.image, K)) {
        HolonomyOrbit orb;
        orb.i = i;
        orb.coset_class = *cls.begin();
        NormalForm g;
        bool first = true;
        for (int q : cls) {
            const NormalForm& cand = realize.at(q);
            if (first || cand < g) {
                g = cand;
                first = false;
            }
        }
        orb.gate = residue_rep(p, g, p.perp_eq(i));
        orb.holonomy = holonomy_at(p, sub, i, orb.gate);
        out.push_back(std::move(orb));
    }
    return out;
}

// Chart family for one panel type: a labelling permutation per residue. The
// standard family uses one fixed right translation everywhere; tabulated
// families store a permutation per residue gate.
struct Atlas {
    int i = 0;
    bool standard = true;
    int twist = 0; // standard chart: g -> g * twist^{-1}
    std::vector<NormalForm> gates;
    std::map<NormalForm, int> residue_of_gate;
    std::vector<std::vector<int>> chart;

    std::vector<int> sigma_at(const ProductPresentation& p, const NormalForm& gate) const {
        const FiniteGroup& Gi = p.groups[i];
        if (standard) {
            std::vector<int> s(Gi.order);
            for (int g = 0; g < Gi.order; ++g) s[g] = Gi.mul(g, Gi.inv(twist));
            return s;
        }
        auto it = residue_of_gate.find(gate);
        if (it == residue_of_gate.end()) fail("UnknownResidue", "no chart at this residue");
        return chart[it->second];
    }
};

inline Atlas standard_atlas(const ProductPresentation& p, int i, int twist = -1) {
    Atlas a;
    a.i = i;
    a.standard = true;
    a.twist = twist < 0 ? p.groups[i].identity : twist;
    if (a.twist >= p.groups[i].order) fail("ElementOutOfRange", "atlas twist");
    return a;
}

struct AtlasFamily {
    std::vector<Atlas> per_type;
};

inline AtlasFamily standard_atlas_family(const ProductPresentation& p) {
    AtlasFamily f;
    for (int i = 0; i < p.n(); ++i) f.per_type.push_back(standard_atlas(p, i));
    return f;
}

// Equivariant chart family for a subgroup without holonomy: transport the
// base chart of each residue orbit by a subgroup element; the induced left
// translation of labels conjugates the chart. Trivial holonomy makes the
// choice of transporter immaterial.
inline Atlas atlas_from_holonomy_free(const ProductPresentation& p, const GPSubgroup& sub,
                                      int i, const std::vector<NormalForm>& scope) {
    const FiniteGroup& Q = sub.hom.hom.target;
    const FiniteGroup& Gi = p.groups[i];
    auto perp_eq = p.perp_eq(i);
    std::vector<int> K = sub.hom.image_of_vertices(perp_eq);
    std::map<int, NormalForm> star_words =
        detail::image_realizations(p, sub.hom, perp_eq, K.size());

    Atlas a;
    a.i = i;
    a.standard = false;

    std::vector<HolonomyOrbit> orbits = holonomy_orbits(p, sub, i);
    std::vector<std::set<int>> class_of;
    for (const auto& orb : orbits) {
        if (!orb.holonomy.trivial())
            fail("HolonomyObstruction", "nontrivial holonomy at a residue orbit");
        std::set<int> cls;
        int qa = sub.hom.eval(orb.gate);
        for (int h : sub.image)
            for (int k : K) cls.insert(Q.mul(Q.mul(h, qa), k));
        class_of.push_back(std::move(cls));
    }

    for (const NormalForm& c : scope) {
        NormalForm gate = residue_rep(p, c, perp_eq);
        if (a.residue_of_gate.count(gate)) continue;
        int which = -1;
        for (size_t d = 0; d < orbits.size() && which < 0; ++d)
            if (class_of[d].count(sub.hom.eval(gate))) which = static_cast<int>(d);
        if (which < 0) fail("InternalError", "residue misses every orbit class");
        const NormalForm& base_gate = orbits[which].gate;

        int qg = sub.hom.eval(gate);
        int qb_inv = Q.inv(sub.hom.eval(base_gate));
        std::optional<NormalForm> h;
        for (int t : K) {
            if (std::binary_search(sub.image.begin(), sub.image.end(),
                                   Q.mul(Q.mul(qg, t), qb_inv))) {
                h = star_words.at(t);
                break;
            }
        }
        if (!h) fail("InternalError", "transporter not found in the panel-star subgroup");
        NormalForm lambda = multiply(p, multiply(p, gate, *h), inverse(p, base_gate));
        if (!sub.contains(lambda)) fail("InternalError", "transporter left the subgroup");
        // Left translation of labels induced by the transporter.
        int beta = component_label(p, i, gate, multiply(p, lambda, base_gate));
        std::vector<int> sigma(Gi.order);
        for (int g = 0; g < Gi.order; ++g) sigma[g] = Gi.mul(beta, g);
        a.residue_of_gate[gate] = static_cast<int>(a.gates.size());
        a.gates.push_back(gate);
        a.chart.push_back(std::move(sigma));
    }
    return a;
}

// Letter of a single gallery step under an atlas: solves the chart equation
// for the move between the two component labels.
inline Syllable letter_of_step(const ProductPresentation& p, const Atlas& A,
                               const NormalForm& c, const NormalForm& cnext, int i) {
    const FiniteGroup& Gi = p.groups[i];
    NormalForm gate = residue_rep(p, c, p.perp_eq(i));
    std::vector<int> sigma = A.sigma_at(p, gate);
    std::vector<int> sigma_inv = invert_perm(sigma);
    int x = component_label(p, i, gate, c);
    int y = component_label(p, i, gate, cnext);
    int g = Gi.mul(Gi.inv(sigma_inv[y]), sigma_inv[x]);
    return Syllable{i, g};
}

// Applies a letter to a chamber under an atlas: move within the panel star to
// the component the chart dictates.
inline NormalForm apply_letter(const ProductPresentation& p, const Atlas& A,
                               const NormalForm& c, const Syllable& letter) {
    const FiniteGroup& Gi = p.groups[letter.v];
    if (letter.g < 0 || letter.g >= Gi.order) fail("ElementOutOfRange", "letter element");
    NormalForm gate = residue_rep(p, c, p.perp_eq(letter.v));
    std::vector<int> sigma = A.sigma_at(p, gate);
    std::vector<int> sigma_inv = invert_perm(sigma);
    int x = component_label(p, letter.v, gate, c);
    int y = sigma[Gi.mul(sigma_inv[x], Gi.inv(letter.g))];
    int h = Gi.mul(Gi.inv(x), y);
    if (h == Gi.identity) return c;
    return multiply(p, c, from_syllable(p, letter.v, h));
}

inline std::vector<Syllable> word_of_gallery(const ProductPresentation& p,
                                             const AtlasFamily& F,
                                             const std::vector<NormalForm>& gallery) {
    std::vector<Syllable> word;
    for (size_t k = 0; k + 1 < gallery.size(); ++k) {
        auto s = adjacency_syllable(p, gallery[k], gallery[k + 1]);
        if (!s) fail("NotAdjacent", "gallery chambers are not adjacent");
        word.push_back(letter_of_step(p, F.per_type[s->v], gallery[k], gallery[k + 1], s->v));
    }
    return word;
}

inline std::vector<NormalForm> gallery_of_word(const ProductPresentation& p,
                                               const AtlasFamily& F, const NormalForm& base,
                                               const std::vector<Syllable>& word) {
    std::vector<NormalForm> gallery{base};
    for (const auto& letter : word)
        gallery.push_back(apply_letter(p, F.per_type[letter.v], gallery.back(), letter));
    return gallery;
}

// Extension of a one-chamber germ over the ball: read each step with the
// source family, replay it with the target family. Certified afterwards by
// transporting every ball adjacency and closing every elementary square.
struct GermExtension {
    std::vector<NormalForm> image; // per ball chamber
    bool consistent = true;
    size_t edges_checked = 0;
    size_t squares_certified = 0;
    std::string witness;
};

inline GermExtension extend_germ(const BuildingBall& B, const AtlasFamily& src,
                                 const AtlasFamily& tgt, const NormalForm& src_base,
                                 const NormalForm& tgt_base) {
    const ProductPresentation& p = B.pres;
    int base = B.chamber_id(src_base);
    if (base < 0) fail("UnknownChamber", "germ base chamber is outside the ball");
    GermExtension ext;
    ext.image.assign(B.chambers.size(), NormalForm{});
    std::vector<char> done(B.chambers.size(), 0);
    ext.image[base] = tgt_base;
    done[base] = 1;
    std::vector<int> frontier{base};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int c : frontier)
            for (int v = 0; v < p.n(); ++v)
                for (int g = 0; g < p.groups[v].order; ++g) {
                    if (g == p.groups[v].identity) continue;
                    NormalForm cn = multiply(p, B.chambers[c], from_syllable(p, v, g));
                    int d = B.chamber_id(cn);
                    if (d < 0 || done[d]) continue;
                    Syllable letter = letter_of_step(p, src.per_type[v], B.chambers[c], cn, v);
                    ext.image[d] = apply_letter(p, tgt.per_type[v], ext.image[c], letter);
                    done[d] = 1;
                    next.push_back(d);
                }
        frontier = std::move(next);
    }
    for (char f : done)
        if (!f) fail("InternalError", "ball is not gallery-connected");

    for (size_t c = 0; c < B.chambers.size(); ++c)
        for (int v = 0; v < p.n(); ++v)
            for (int g = 0; g < p.groups[v].order; ++g) {
                if (g == p.groups[v].identity) continue;
                NormalForm cn = multiply(p, B.chambers[c], from_syllable(p, v, g));
                int d = B.chamber_id(cn);
                if (d < 0) continue;
                Syllable letter = letter_of_step(p, src.per_type[v], B.chambers[c], cn, v);
                NormalForm img = apply_letter(p, tgt.per_type[v], ext.image[c], letter);
                ++ext.edges_checked;
                if (!(img == ext.image[d])) {
                    ext.consistent = false;
                    if (ext.witness.empty())
                        ext.witness = to_string(p, B.chambers[c]) + " -> " + to_string(p, cn);
                }
            }

    for (size_t c = 0; c < B.chambers.size(); ++c)
        for (int v = 0; v < p.n(); ++v)
            for (int u = v + 1; u < p.n(); ++u) {
                if (!p.adjacent(v, u)) continue;
                for (int g = 0; g < p.groups[v].order; ++g) {
                    if (g == p.groups[v].identity) continue;
                    for (int h = 0; h < p.groups[u].order; ++h) {
                        if (h == p.groups[u].identity) continue;
                        NormalForm c0 = B.chambers[c];
                        NormalForm c1 = multiply(p, c0, from_syllable(p, v, g));
                        NormalForm c2 = multiply(p, c1, from_syllable(p, u, h));
                        NormalForm c3 = multiply(p, c0, from_syllable(p, u, h));
                        if (B.chamber_id(c1) < 0 || B.chamber_id(c2) < 0 ||
                            B.chamber_id(c3) < 0)
                            continue;
                        std::vector<NormalForm> loop{c0, c1, c2, c3, c0};
                        std::vector<Syllable> word = word_of_gallery(p, src, loop);
                        std::vector<NormalForm> replay =
                            gallery_of_word(p, tgt, ext.image[c], word);
                        ++ext.squares_certified;
                        if (!(replay.back() == ext.image[c])) {
                            ext.consistent = false;
                            if (ext.witness.empty())
                                ext.witness = "square at " + to_string(p, c0);
                        }
                    }
                }
            }
    return ext;
}

// Refines a subgroup by an extra finite quotient: the product map with the
// product subgroup.
inline GPSubgroup refine_subgroup(const ProductPresentation& p, const GPSubgroup& sub,
                                  const GraphProductHom& extra,
                                  const std::vector<int>& extra_image) {
    const FiniteGroup& Qb = extra.hom.target;
    FiniteGroup Qp = direct_product(sub.hom.hom.target, Qb);
    std::vector<int> images;
    for (size_t k = 0; k < sub.hom.hom.images.size(); ++k)
        images.push_back(sub.hom.hom.images[k] * Qb.order + extra.hom.images[k]);
    GraphProductHom gh = make_graph_hom(p, std::move(Qp), std::move(images));
    std::vector<int> S;
    for (int x : sub.image)
        for (int y : extra_image) S.push_back(x * Qb.order + y);
    return make_gp_subgroup(std::move(gh), std::move(S));
}

// Kills holonomy obstructions by refining with extra quotients (by default
// the coordinatewise one, whose kernel never has holonomy).
struct KillHolonomyReport {
    GPSubgroup refined;
    std::vector<HolonomyOrbit> orbits; // all types, post-refinement
    bool trivial_everywhere = true;
};

inline KillHolonomyReport kill_holonomy(const ProductPresentation& p, const GPSubgroup& sub,
                                        std::vector<GraphProductHom> seps = {}) {
    if (seps.empty()) seps.push_back(gamma0_hom(p));
    GPSubgroup cur = sub;
    for (auto& extra : seps)
        cur = refine_subgroup(p, cur, extra, {extra.hom.target.identity});
    KillHolonomyReport rep{std::move(cur), {}, true};
    for (int i = 0; i < p.n(); ++i)
        for (auto& orb : holonomy_orbits(p, rep.refined, i)) {
            rep.trivial_everywhere = rep.trivial_everywhere && orb.holonomy.trivial();
            rep.orbits.push_back(std::move(orb));
        }
    return rep;
}

// Commensuration witness: the identity germ extended between the subgroup's
// chart family and the standard one, with every short subgroup element
// recognized as a left translation on the ball.
struct WitnessReport {
    std::vector<std::pair<NormalForm, NormalForm>> table; // chamber -> image
    struct Recognized {
        NormalForm lambda;
        NormalForm mu;
        bool recognized = false;
        size_t chambers_checked = 0;
    };
    std::vector<Recognized> generators;
    bool certified = false;
    bool all_recognized = true;
};

inline WitnessReport commensuration_witness(const ProductPresentation& p,
                                            const GPSubgroup& sub, int radius,
                                            int gen_length = 4) {
    BuildingBall B = build_ball(p, radius);
    AtlasFamily lam, std_fam = standard_atlas_family(p);
    for (int i = 0; i < p.n(); ++i)
        lam.per_type.push_back(atlas_from_holonomy_free(p, sub, i, B.chambers));
    GermExtension ext = extend_germ(B, lam, std_fam, NormalForm{}, NormalForm{});
    WitnessReport rep;
    rep.certified = ext.consistent;
    for (size_t c = 0; c < B.chambers.size(); ++c)
        rep.table.push_back({B.chambers[c], ext.image[c]});

    std::vector<NormalForm> lambdas;
    for (const auto& w : enumerate_ball(p, gen_length))
        if (!w.is_identity() && sub.contains(w)) lambdas.push_back(w);
    for (const auto& lam_el : lambdas) {
        WitnessReport::Recognized rec;
        rec.lambda = lam_el;
        std::optional<NormalForm> mu;
        bool ok = true;
        for (size_t c = 0; c < B.chambers.size(); ++c) {
            NormalForm moved = multiply(p, lam_el, B.chambers[c]);
            int d = B.chamber_id(moved);
            if (d < 0) continue;
            if (!mu) {
                mu = multiply(p, ext.image[d], inverse(p, ext.image[c]));
                rec.mu = *mu;
            }
            ++rec.chambers_checked;
            if (!(ext.image[d] == multiply(p, *mu, ext.image[c]))) ok = false;
        }
        rec.recognized = mu.has_value() && ok;
        rep.all_recognized = rep.all_recognized && rec.recognized;
        rep.generators.push_back(std::move(rec));
    }
    return rep;
}

} // namespace rab
