#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "domefold/banding.hpp"
#include "domefold/experiments.hpp"
#include "domefold/trees.hpp"
#include "domefold/unfold.hpp"

namespace domefold {

using json = nlohmann::ordered_json;

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

// Sidecar describing which unit each face belongs to and its role within it.
inline json labeling_json(const UnitLabeling& lab) {
    json faces = json::array();
    for (std::size_t f = 0; f < lab.unit_of_face.size(); ++f) {
        int q = lab.quad_index[f];
        faces.push_back({{"face", f},
                         {"unit", lab.unit_of_face[f]},
                         {"role", q < 0 ? "hexagon" : "band_quad"},
                         {"quad", q}});
    }
    json units = json::array();
    for (std::size_t u = 0; u < lab.units.size(); ++u) {
        const BandedUnit& un = lab.units[u];
        json e = json::array(), uu = json::array(), r = json::array(), fs = json::array();
        for (int i = 0; i < 6; ++i) {
            e.push_back(un.e[i]);
            uu.push_back(un.u[i]);
            r.push_back(un.r[i]);
        }
        for (int f : un.faces) fs.push_back(f);
        units.push_back({{"unit", u},
                         {"faces", fs},
                         {"hexagon_edges", e},
                         {"spokes", uu},
                         {"rim_edges", r}});
    }
    return json{{"unit_count", lab.unit_count()}, {"faces", faces}, {"units", units}};
}

inline json tree_json(const CutTree& t) {
    return json{{"kind", "cut_tree"}, {"edges", t.edges}};
}

inline json tree_json(const ConnectionTree& t) {
    return json{{"kind", "connection_tree"}, {"edges", t.edges}};
}

template <class Tree>
inline Tree tree_from_json(const json& j) {
    Tree t;
    t.edges = j.at("edges").get<std::vector<int>>();
    return t;
}

inline json layout_json(const PlanarLayout& layout) {
    json faces = json::array();
    for (std::size_t k = 0; k < layout.face_ids.size(); ++k) {
        json pts = json::array();
        for (const Vec2& p : layout.polygons[k]) pts.push_back({p.x, p.y});
        faces.push_back({{"face", layout.face_ids[k]}, {"points", pts}});
    }
    return json{{"root", layout.root}, {"faces", faces}};
}

struct RunConfig {
    int level = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    Sampler sampler = Sampler::Wilson;
    BandParams params;
};

inline const char* sampler_name(Sampler s) {
    return s == Sampler::Wilson ? "wilson" : "mst";
}

inline json stats_json(const RunConfig& cfg, const TrialStats& st) {
    return json{{"level", cfg.level},
                {"trials", st.trials},
                {"seed", cfg.seed},
                {"sampler", sampler_name(cfg.sampler)},
                {"t", cfg.params.t},
                {"mu", cfg.params.mu},
                {"f_overlap", st.f_overlap()},
                {"f_band_unit", st.f_band_unit()},
                {"f_local_given_unit", st.f_local_given_unit()},
                {"n_nonoverlap", st.non_overlapping_seeds.size()},
                {"non_overlapping_seeds", st.non_overlapping_seeds}};
}

inline std::string stats_csv(const RunConfig& cfg, const TrialStats& st) {
    char line[512];
    std::snprintf(line, sizeof line, "%d,%llu,%llu,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%llu\n",
                  cfg.level, (unsigned long long)st.trials, (unsigned long long)cfg.seed,
                  sampler_name(cfg.sampler), cfg.params.t, cfg.params.mu, st.f_overlap(),
                  st.f_band_unit(), st.f_local_given_unit(),
                  (unsigned long long)st.non_overlapping_seeds.size());
    return std::string("level,trials,seed,sampler,t,mu,f_overlap,f_band_unit,"
                       "f_local_given_unit,n_nonoverlap\n") +
           line;
}

inline json bounds_json(const BoundsReport& rep) {
    return json{{"level", rep.level},
                {"hexagons", rep.hexagons},
                {"rho_lower", rep.rho_decimal},
                {"rho_lower_approx", rep.rho_approx},
                {"global_nonoverlap_upper", rep.global_decimal},
                {"one_minus_global_approx", rep.one_minus_global},
                {"fixed_tree_fraction", rep.fixed_decimal},
                {"fixed_tree_fraction_approx", rep.fixed_approx},
                {"heuristic_overlap", rep.heuristic_overlap}};
}

inline json counts_json(const CountsReport& rep) {
    return json{{"level", rep.level},
                {"faces", rep.faces},
                {"edges", rep.edges},
                {"vertices", rep.vertices},
                {"hexagons", rep.hexagons},
                {"faces_expected", rep.faces_expected},
                {"edges_expected", rep.edges_expected},
                {"vertices_expected", rep.vertices_expected},
                {"hexagons_expected", rep.hexagons_expected},
                {"ok", rep.ok},
                {"note", rep.note}};
}

}  // namespace domefold
