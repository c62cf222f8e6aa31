#include "branched/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace branched {

namespace {

using nlohmann::json;

Direction parse_direction(const std::string& s) {
    if (s == "+x") return Direction::PlusX;
    if (s == "+y") return Direction::PlusY;
    throw ConfigError("crossing direction must be \"+x\" or \"+y\", got \"" + s + "\"");
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
    RunConfig cfg;
    try {
        const json j = json::parse(json_text);

        const json& grid = j.at("grid");
        cfg.grid = TorusGrid(grid.at("W").get<int>(), grid.at("H").get<int>());

        const json& cover = j.at("cover");
        cfg.sheets = cover.at("n").get<int>();
        if (cfg.sheets < 1) throw ConfigError("cover.n must be at least 1");
        for (const json& c : cover.value("crossings", json::array())) {
            CutCrossing crossing;
            const json& cell = c.at("cell");
            if (!cell.is_array() || cell.size() != 2) {
                throw ConfigError("crossing cell must be a pair [i, j]");
            }
            crossing.cell = {cell.at(0).get<int>(), cell.at(1).get<int>()};
            crossing.direction = parse_direction(c.at("direction").get<std::string>());
            crossing.sigma = c.at("permutation").get<std::vector<int>>();
            cfg.crossings.push_back(std::move(crossing));
        }

        if (j.contains("spline")) {
            const json& spline = j.at("spline");
            cfg.spline.kind = spline.at("kind").get<std::string>();
            if (cfg.spline.kind == "bspline") {
                cfg.spline.degree = spline.value("degree", 2);
                if (cfg.spline.degree != 1 && cfg.spline.degree != 2) {
                    throw ConfigError("spline.degree must be 1 or 2");
                }
            } else if (cfg.spline.kind != "fvs") {
                throw ConfigError("spline.kind must be \"bspline\" or \"fvs\"");
            }
        }

        if (j.contains("embedding")) {
            const json& emb = j.at("embedding");
            cfg.embedding.major_radius = emb.value("R", cfg.embedding.major_radius);
            cfg.embedding.minor_radius = emb.value("r_minor", cfg.embedding.minor_radius);
            if (emb.contains("offsets")) {
                cfg.embedding.offsets = emb.at("offsets").get<std::vector<double>>();
            }
            cfg.embedding.blend_radius = emb.value("rho", cfg.embedding.blend_radius);
            cfg.embedding.density = emb.value("k", cfg.embedding.density);
        }

        cfg.output = j.value("output", std::string());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("could not open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str());
}

}  // namespace branched
