#include "rab/building.hpp"
#include "rab/io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

using namespace rab;

namespace {

int run_curvature(const std::string& path, const std::string& cond, bool strict,
                  int max_degree, int max_len) {
    auto x = parse_polygonal(load_json(path));
    std::map<std::string, CurvatureKind> kinds{{"Q", CurvatureKind::Q},
                                               {"C", CurvatureKind::C},
                                               {"C2", CurvatureKind::C2},
                                               {"C4", CurvatureKind::C4}};
    auto it = kinds.find(cond);
    if (it == kinds.end()) fail("ConfigError", "condition must be one of Q, C, C2, C4");
    auto rep = check_condition(x, it->second, max_degree, max_len);
    Json j = curvature_to_json(rep);
    j["condition"] = cond;
    bool pass = strict ? (rep.satisfied && rep.strictly) : rep.satisfied;
    j["pass"] = pass;
    std::cout << j.dump(2) << "\n";
    return pass ? 0 : 1;
}

int run_walls(const std::string& path, bool quarter) {
    auto x = parse_polygonal(load_json(path));
    auto W = compute_walls(x, quarter);
    std::cout << walls_to_json(x, W).dump(2) << "\n";
    return 0;
}

int run_ball(const std::string& path, int radius) {
    Json in = load_json(path);
    Json out;
    std::map<size_t, size_t> by_len;
    if (json_kind(in) == "graph_product") {
        auto p = parse_graph_product(in);
        for (const auto& w : enumerate_ball(p, radius)) by_len[w.length()]++;
    } else if (json_kind(in) == "coxeter") {
        CoxeterCanon C(parse_coxeter(in));
        for (const auto& w : coxeter_ball(C, radius)) by_len[w.size()]++;
    } else
        fail("ConfigError", "ball needs a graph_product or coxeter input");
    size_t total = 0;
    for (auto [len, cnt] : by_len) {
        out["by_length"][std::to_string(len)] = cnt;
        total += cnt;
    }
    out["radius"] = radius;
    out["total"] = total;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_building(const std::string& path, int radius) {
    auto p = parse_graph_product(load_json(path));
    auto B = build_ball(p, radius);
    auto rep = check_interior_links(B);
    Json out;
    out["chambers"] = B.chambers.size();
    out["vertices"] = B.cx.n_vertices();
    int interior = 0;
    for (char c : B.interior) interior += c;
    out["interior_vertices"] = interior;
    out["links_ok"] = rep.ok;
    out["links_checked"] = rep.checked;
    std::cout << out.dump(2) << "\n";
    return rep.ok ? 0 : 1;
}

int run_carrier(const std::string& path, int radius) {
    auto cox = parse_coxeter(load_json(path));
    auto ball = build_davis_ball(cox, radius, true);
    auto links = check_davis_links(ball);
    auto D = extract_carrier(ball);
    Json out;
    out["blocks"] = ball.blocks.size();
    out["links_ok"] = links.ok;
    out["links_checked"] = links.checked;
    out["polygons"] = D.polys.size();
    int interior = 0;
    for (const auto& poly : D.polys) interior += poly.interior;
    out["interior_polygons"] = interior;
    out["carrier"] = polygonal_to_json(D.x);
    std::cout << out.dump(2) << "\n";
    return links.ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometry of graph products, buildings and polygonal complexes"};
    app.require_subcommand(1);

    std::string file, cond = "C";
    bool strict = false, quarter = false;
    int radius = 2, max_degree = 16, max_len = 12;

    auto* curvature = app.add_subcommand("curvature", "check a link curvature condition");
    curvature->add_option("file", file)->required();
    curvature->add_option("--condition", cond, "one of Q, C, C2, C4");
    curvature->add_flag("--strict", strict);
    curvature->add_option("--max-degree", max_degree);
    curvature->add_option("--max-len", max_len);

    auto* walls = app.add_subcommand("walls", "wall classes and their tree shape");
    walls->add_option("file", file)->required();
    walls->add_flag("--quarter", quarter, "use the quarter pairing");

    auto* ball = app.add_subcommand("ball", "group ball sizes by word length");
    ball->add_option("file", file)->required();
    ball->add_option("--radius", radius);

    auto* building = app.add_subcommand("building", "chamber complex ball of a graph product");
    building->add_option("file", file)->required();
    building->add_option("--radius", radius);

    auto* carrier = app.add_subcommand("carrier", "polygonal carrier of a reflection system");
    carrier->add_option("file", file)->required();
    carrier->add_option("--radius", radius);

    CLI11_PARSE(app, argc, argv);

    try {
        if (curvature->parsed()) return run_curvature(file, cond, strict, max_degree, max_len);
        if (walls->parsed()) return run_walls(file, quarter);
        if (ball->parsed()) return run_ball(file, radius);
        if (building->parsed()) return run_building(file, radius);
        if (carrier->parsed()) return run_carrier(file, radius);
    } catch (const Error& e) {
        std::cerr << e.kind << ": " << e.what() << "\n";
        return 2;
    }
    return 0;
}
