#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "domefold/banding.hpp"
#include "domefold/geometry.hpp"
#include "domefold/mesh.hpp"
#include "domefold/trees.hpp"

namespace domefold {

struct PlanarLayout {
    int root = -1;
    double mesh_diameter = 0;
    std::vector<int> face_ids;                  // depth-first placement order
    std::vector<std::vector<Vec2>> polygons;    // parallel to face_ids, loop order as in the mesh
    std::vector<int> dual_arcs;                 // mesh edge ids crossed by the layout tree

    int index_of(int face) const {
        auto it = index_.find(face);
        return it == index_.end() ? -1 : it->second;
    }
    void append(int face, std::vector<Vec2> poly) {
        index_[face] = int(face_ids.size());
        face_ids.push_back(face);
        polygons.push_back(std::move(poly));
    }

  private:
    std::unordered_map<int, int> index_;
};

// Unfold the faces touched by the given dual arcs, starting at root: the root
// face keeps its flattened pose (first vertex at the origin, first edge on +x),
// every other face is rotated about the shared edge into the plane. Arcs must
// form a tree on the touched faces.
inline PlanarLayout unfold_subset(const PolyMesh& mesh, std::span<const int> arcs, int root) {
    std::unordered_map<int, std::vector<std::pair<int, int>>> adj;  // face -> (face, edge)
    for (int e : arcs) {
        const Edge& ed = mesh.edges[e];
        adj[ed.f0].push_back({ed.f1, e});
        adj[ed.f1].push_back({ed.f0, e});
    }
    adj[root];
    if (adj.size() != arcs.size() + 1) throw InvalidTree("dual arcs do not form a tree");
    for (auto& [f, nb] : adj) std::sort(nb.begin(), nb.end());

    PlanarLayout out;
    out.root = root;
    out.mesh_diameter = mesh.diameter();
    out.dual_arcs.assign(arcs.begin(), arcs.end());
    std::sort(out.dual_arcs.begin(), out.dual_arcs.end());

    auto position_in = [&](int face, int vertex) {
        const auto& loop = mesh.faces[face];
        for (std::size_t k = 0; k < loop.size(); ++k)
            if (loop[k] == vertex) return int(k);
        throw InvalidTree("shared edge vertex missing from face loop");
    };

    std::vector<std::pair<int, int>> stack{{root, -1}};  // (face, incoming edge)
    std::unordered_map<int, char> seen{{root, 1}};
    while (!stack.empty()) {
        auto [f, via] = stack.back();
        stack.pop_back();
        std::vector<Vec2> local = flatten_loop(mesh.vertices, mesh.faces[f]);
        if (via >= 0) {
            const Edge& ed = mesh.edges[via];
            int parent = ed.other_face(f);
            const auto& ppoly = out.polygons[std::size_t(out.index_of(parent))];
            Vec2 p0 = ppoly[position_in(parent, ed.v0)];
            Vec2 p1 = ppoly[position_in(parent, ed.v1)];
            Rigid2 m = align_segment(local[position_in(f, ed.v0)], local[position_in(f, ed.v1)], p0, p1);
            for (Vec2& p : local) p = m.apply(p);
        }
        out.append(f, std::move(local));
        auto it = adj.find(f);
        for (auto rit = it->second.rbegin(); rit != it->second.rend(); ++rit)
            if (seen.emplace(rit->first, 1).second) stack.push_back({rit->first, rit->second});
    }
    if (out.face_ids.size() != adj.size()) throw InvalidTree("dual arcs are not connected to the root");
    return out;
}

inline PlanarLayout unfold(const PolyMesh& mesh, const ConnectionTree& conn, int root = 0) {
    detail::require_spanning(conn.edges, mesh, true);
    return unfold_subset(mesh, conn.edges, root);
}

struct OverlapPair {
    int f = -1, g = -1;
    double area = 0;
    bool unit_local = false;
};

struct OverlapReport {
    bool overlapping = false;
    std::vector<OverlapPair> pairs;
};

// Positive-area interior intersections between placed faces. Touching along
// shared edges stays under the area threshold and does not count.
inline OverlapReport detect_overlap(const PlanarLayout& layout, const UnitLabeling* lab = nullptr,
                                    bool early_exit = false) {
    OverlapReport rep;
    const double eps = 1e-10 * layout.mesh_diameter * layout.mesh_diameter;
    const std::size_t n = layout.polygons.size();
    std::vector<Box2> boxes(n);
    for (std::size_t k = 0; k < n; ++k) boxes[k] = bounding_box(layout.polygons[k]);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (boxes[i].disjoint(boxes[j])) continue;
            double area = convex_intersection_area(layout.polygons[i], layout.polygons[j]);
            if (area <= eps) continue;
            OverlapPair pair{layout.face_ids[i], layout.face_ids[j], area, false};
            if (lab) pair.unit_local = lab->unit_of_face[pair.f] == lab->unit_of_face[pair.g];
            rep.pairs.push_back(pair);
            rep.overlapping = true;
            if (early_exit) return rep;
        }
    }
    return rep;
}

namespace detail {

// Arcs of the 7-face unit subtree for pattern (i, j): the hexagon hangs off
// quad i across e_i, and the quads form a path broken at spoke j.
inline std::array<int, 6> pattern_arcs(const BandedUnit& unit, int i, int j) {
    std::array<int, 6> arcs;
    std::size_t k = 0;
    arcs[k++] = unit.e[i];
    for (int m = 0; m < 6; ++m)
        if (m != j) arcs[k++] = unit.u[m];
    return arcs;
}

}  // namespace detail

inline std::array<bool, 36> verify_hexagon_overlap_property(const PolyMesh& mesh,
                                                            const UnitLabeling& lab, int unit) {
    std::array<bool, 36> out{};
    const BandedUnit& un = lab.units[unit];
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            auto arcs = detail::pattern_arcs(un, i, j);
            PlanarLayout layout = unfold_subset(mesh, arcs, un.faces[0]);
            out[6 * i + j] = detect_overlap(layout, &lab, true).overlapping;
        }
    return out;
}

inline void render_svg(const PlanarLayout& layout, const OverlapReport& report,
                       const std::string& path, const UnitLabeling* lab = nullptr) {
    if (layout.polygons.empty()) throw std::invalid_argument("cannot render an empty layout");
    Box2 view;
    for (const auto& poly : layout.polygons)
        for (const Vec2& p : poly) view.add(p);
    double w = view.xmax - view.xmin, h = view.ymax - view.ymin;
    double margin = 0.02 * std::max(w, h);
    char buf[256];
    std::string svg;
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.6f %.6f %.6f %.6f\">\n",
                  view.xmin - margin, view.ymin - margin, w + 2 * margin, h + 2 * margin);
    svg += buf;
    std::snprintf(buf, sizeof buf, "<g stroke=\"#333333\" stroke-width=\"%.6f\">\n",
                  0.002 * std::max(w, h));
    svg += buf;
    for (std::size_t k = 0; k < layout.polygons.size(); ++k) {
        int hue = 210;
        if (lab) hue = int(lab->unit_of_face[layout.face_ids[k]] * 137) % 360;
        svg += "<polygon points=\"";
        for (const Vec2& p : layout.polygons[k]) {
            std::snprintf(buf, sizeof buf, "%.6f,%.6f ", p.x, p.y);
            svg += buf;
        }
        std::snprintf(buf, sizeof buf, "\" fill=\"hsl(%d,60%%,75%%)\" fill-opacity=\"0.8\"/>\n", hue);
        svg += buf;
    }
    svg += "</g>\n";
    for (const OverlapPair& pair : report.pairs) {
        Vec2 c{};
        int n = 0;
        for (int f : {pair.f, pair.g}) {
            const auto& poly = layout.polygons[std::size_t(layout.index_of(f))];
            for (const Vec2& p : poly) {
                c = c + p;
                ++n;
            }
        }
        c = c * (1.0 / n);
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.6f\" cy=\"%.6f\" r=\"%.6f\" fill=\"none\" stroke=\"red\" "
                      "stroke-width=\"%.6f\"/>\n",
                      c.x, c.y, 0.02 * std::max(w, h), 0.004 * std::max(w, h));
        svg += buf;
    }
    svg += "</svg>\n";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << svg;
}

// Grid search for the default band parameters: smallest (t, mu) pair, t-major,
// where the banded domes at levels 0..2 pass every geometric check and all 36
// hexagon patterns overlap on every unit of the level-0 dome.
inline BandParams tune_band_params() {
    std::vector<double> mus(8);
    for (int k = 0; k < 8; ++k) mus[k] = 0.002 * std::pow(0.03 / 0.002, k / 7.0);
    for (double t : {0.05, 0.10, 0.15, 0.20, 0.25, 0.30}) {
        for (double mu : mus) {
            BandParams params{t, mu};
            bool valid = true;
            for (int level = 0; level <= 2 && valid; ++level) {
                auto [mesh, lab] = banded_dome(level, params, false);
                valid = check_banding(mesh, lab).ok();
            }
            if (!valid) continue;
            auto [mesh, lab] = banded_dome(0, params, false);
            bool all36 = true;
            for (int u = 0; u < lab.unit_count() && all36; ++u)
                for (bool b : verify_hexagon_overlap_property(mesh, lab, u))
                    all36 = all36 && b;
            if (all36) return params;
        }
    }
    throw MeshError("no band parameters satisfy the tuning gates");
}

}  // namespace domefold
