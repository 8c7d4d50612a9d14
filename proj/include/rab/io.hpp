#pragma once
#include "rab/davis.hpp"
#include "rab/graph_product.hpp"
#include "rab/polygonal.hpp"

#include <json.hpp>

#include <fstream>
#include <string>
#include <vector>

namespace rab {

using Json = nlohmann::json;

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("ConfigError", "cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail("ConfigError", std::string("bad JSON in ") + path + ": " + e.what());
    }
    return j;
}

inline std::string json_kind(const Json& j) {
    if (!j.contains("kind") || !j["kind"].is_string())
        fail("ConfigError", "input needs a string 'kind' field");
    return j["kind"].get<std::string>();
}

inline PolygonalComplex parse_polygonal(const Json& j) {
    if (json_kind(j) != "polygonal") fail("ConfigError", "expected kind 'polygonal'");
    int n = j.at("vertices").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    std::vector<std::vector<OrientedEdge>> polys;
    for (const auto& p : j.at("polygons")) {
        std::vector<OrientedEdge> cyc;
        for (const auto& s : p) cyc.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
        polys.push_back(cyc);
    }
    return make_polygonal(n, edges, polys);
}

inline Json polygonal_to_json(const PolygonalComplex& x) {
    Json j;
    j["kind"] = "polygonal";
    j["vertices"] = x.n_vertices;
    j["edges"] = Json::array();
    for (const auto& [t, h] : x.edges) j["edges"].push_back({t, h});
    j["polygons"] = Json::array();
    for (const auto& p : x.polygons) {
        Json cyc = Json::array();
        for (const auto& s : p) cyc.push_back({s.e, s.dir});
        j["polygons"].push_back(cyc);
    }
    return j;
}

// Vertex groups are given by their orders and taken cyclic.
inline ProductPresentation parse_graph_product(const Json& j) {
    if (json_kind(j) != "graph_product") fail("ConfigError", "expected kind 'graph_product'");
    std::vector<FiniteGroup> groups;
    std::vector<std::string> names;
    for (const auto& o : j.at("orders")) groups.push_back(cyclic_group(o.get<int>()));
    if (j.contains("names"))
        for (const auto& s : j["names"]) names.push_back(s.get<std::string>());
    else
        for (size_t i = 0; i < groups.size(); ++i) names.push_back("g" + std::to_string(i));
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return make_presentation(names, edges, groups);
}

inline Json graph_product_to_json(const ProductPresentation& p) {
    Json j;
    j["kind"] = "graph_product";
    j["names"] = p.vnames;
    j["orders"] = Json::array();
    for (const auto& g : p.groups) j["orders"].push_back(g.order);
    j["edges"] = Json::array();
    for (int a = 0; a < p.n(); ++a)
        for (int b = a + 1; b < p.n(); ++b)
            if (p.adjacent(a, b)) j["edges"].push_back({a, b});
    return j;
}

inline CoxeterSystem parse_coxeter(const Json& j) {
    if (json_kind(j) != "coxeter") fail("ConfigError", "expected kind 'coxeter'");
    int n = j.at("generators").get<int>();
    std::vector<std::array<int, 3>> edges;
    for (const auto& e : j.at("edges"))
        edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
    return make_coxeter(n, edges);
}

inline Json coxeter_to_json(const CoxeterSystem& c) {
    Json j;
    j["kind"] = "coxeter";
    j["generators"] = c.n;
    j["edges"] = Json::array();
    for (int a = 0; a < c.n; ++a)
        for (int b = a + 1; b < c.n; ++b)
            if (c.m[a][b] != 0) j["edges"].push_back({a, b, c.m[a][b]});
    return j;
}

inline Json curvature_to_json(const CurvatureReport& rep) {
    Json j;
    j["satisfied"] = rep.satisfied;
    j["strictly"] = rep.strictly;
    j["verified"] = rep.verified;
    j["cycles_checked"] = rep.cycles_checked;
    if (rep.witness) {
        j["witness"]["vertex"] = rep.witness->vertex;
        j["witness"]["corners"] = rep.witness->corners.size();
        j["witness"]["value"] = rep.witness->value.str();
    }
    return j;
}

inline Json walls_to_json(const PolygonalComplex& x, const WallDecomposition& W) {
    Json j;
    j["quarter"] = W.quarter;
    j["classes"] = Json::array();
    for (int cls = 0; cls < W.n_classes; ++cls) {
        Json c;
        c["id"] = cls;
        std::set<int> edges;
        for (int code = 0; code < 2 * x.n_edges(); ++code)
            if (W.class_of[code] == cls) edges.insert(code / 2);
        c["edges"] = edges;
        c["crossings"] = W.diameters[cls].size();
        if (!W.diameters[cls].empty()) {
            auto rep = wall_tree_report(x, W, cls);
            c["tree"] = rep.tree;
            c["acyclic"] = rep.acyclic;
            c["one_diameter_per_polygon"] = rep.one_diameter_per_polygon;
            c["no_opposite_pairs"] = rep.no_opposite_pairs;
            c["self_crossing"] = rep.self_crossing;
            c["segments"] = rep.segments;
        }
        j["classes"].push_back(c);
    }
    return j;
}

} // namespace rab
