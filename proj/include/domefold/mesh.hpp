#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "domefold/geometry.hpp"

namespace domefold {

struct MeshError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ResourceBound : MeshError {
    using MeshError::MeshError;
};
struct BadBase : MeshError {
    using MeshError::MeshError;
};
struct NonConvexResult : MeshError {
    using MeshError::MeshError;
};
struct InvalidTree : MeshError {
    using MeshError::MeshError;
};
struct PatchNotFound : MeshError {
    using MeshError::MeshError;
};

struct Edge {
    int v0 = -1, v1 = -1;  // v0 < v1
    int f0 = -1, f1 = -1;  // incident faces
    int other_face(int f) const { return f == f0 ? f1 : f0; }
};

// Location of a subdivided face inside its root triangle. Up triangles sit at
// lattice cell (u,v) with corners (u,v),(u+1,v),(u,v+1); down triangles fill the
// cell between them.
struct FaceProv {
    int root = -1;
    int u = 0, v = 0;
    bool up = true;
};

struct ValidityReport {
    bool closed_manifold = false;
    bool oriented = false;
    bool euler = false;
    bool faces_planar = false;
    bool faces_convex = false;
    bool convex = false;
    double max_planarity_dev = 0;   // absolute, relative to diameter checked by caller
    double worst_convexity = 0;     // max signed distance of a non-face vertex, want < -eps
    bool all() const {
        return closed_manifold && oriented && euler && faces_planar && faces_convex && convex;
    }
};

struct PolyMesh {
    std::vector<Vec3> vertices;
    std::vector<std::vector<int>> faces;       // CCW from outside
    std::vector<FaceProv> provenance;          // per face; empty unless subdivided

    // derived by finalize()
    std::vector<Edge> edges;
    std::vector<std::vector<int>> face_edges;  // edge id of loop[k] -> loop[k+1]
    std::vector<std::vector<std::pair<int, int>>> vertex_adj;  // (neighbor, edge id)

    int vertex_count() const { return int(vertices.size()); }
    int face_count() const { return int(faces.size()); }
    int edge_count() const { return int(edges.size()); }

    int edge_id(int a, int b) const {
        auto it = edge_map_.find(edge_key(a, b));
        return it == edge_map_.end() ? -1 : it->second;
    }

    double diameter() const { return diameter_; }

    void finalize() {
        edges.clear();
        edge_map_.clear();
        face_edges.assign(faces.size(), {});
        std::unordered_map<std::uint64_t, int> directed;
        for (int f = 0; f < face_count(); ++f) {
            const auto& loop = faces[f];
            if (loop.size() < 3) throw BadBase("face with fewer than 3 vertices");
            for (std::size_t k = 0; k < loop.size(); ++k) {
                int a = loop[k], b = loop[(k + 1) % loop.size()];
                if (a == b) throw BadBase("degenerate edge");
                auto key = edge_key(a, b);
                auto [it, fresh] = edge_map_.try_emplace(key, int(edges.size()));
                if (fresh) edges.push_back({std::min(a, b), std::max(a, b), f, -1});
                else {
                    Edge& e = edges[it->second];
                    if (e.f1 != -1) throw BadBase("edge incident to more than two faces");
                    e.f1 = f;
                }
                face_edges[f].push_back(it->second);
                auto dkey = (std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b);
                if (!directed.emplace(dkey, f).second) throw BadBase("inconsistent face orientation");
            }
        }
        for (const Edge& e : edges)
            if (e.f1 == -1) throw BadBase("open boundary edge");
        vertex_adj.assign(vertices.size(), {});
        for (int i = 0; i < edge_count(); ++i) {
            vertex_adj[edges[i].v0].push_back({edges[i].v1, i});
            vertex_adj[edges[i].v1].push_back({edges[i].v0, i});
        }
        for (auto& nb : vertex_adj) std::sort(nb.begin(), nb.end());
        Vec3 lo = vertices.at(0), hi = vertices.at(0);
        for (const Vec3& p : vertices) {
            lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
            hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
        }
        diameter_ = norm(hi - lo);
    }

    static std::uint64_t edge_key(int a, int b) {
        auto lo = std::uint32_t(std::min(a, b)), hi = std::uint32_t(std::max(a, b));
        return (std::uint64_t(lo) << 32) | hi;
    }

  private:
    std::unordered_map<std::uint64_t, int> edge_map_;
    double diameter_ = 0;
};

inline PolyMesh build_icosahedron() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    PolyMesh m;
    for (auto [a, b] : std::array<std::pair<double, double>, 4>{{{1, phi}, {-1, phi}, {1, -phi}, {-1, -phi}}}) {
        m.vertices.push_back(normalized({0, a, b}));
        m.vertices.push_back(normalized({a, b, 0}));
        m.vertices.push_back(normalized({b, 0, a}));
    }
    // faces = triples of mutually nearest vertices, oriented outward
    const int n = 12;
    double emin = std::numeric_limits<double>::max();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) emin = std::min(emin, norm(m.vertices[i] - m.vertices[j]));
    auto adj = [&](int i, int j) { return std::abs(norm(m.vertices[i] - m.vertices[j]) - emin) < 1e-6; };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!adj(i, j)) continue;
            for (int k = j + 1; k < n; ++k) {
                if (!adj(i, k) || !adj(j, k)) continue;
                Vec3 nrm = cross(m.vertices[j] - m.vertices[i], m.vertices[k] - m.vertices[i]);
                Vec3 c = (m.vertices[i] + m.vertices[j] + m.vertices[k]) / 3.0;
                if (dot(nrm, c) > 0) m.faces.push_back({i, j, k});
                else m.faces.push_back({i, k, j});
            }
        }
    m.provenance.resize(m.faces.size());
    for (int f = 0; f < m.face_count(); ++f) m.provenance[f] = {f, 0, 0, true};
    m.finalize();
    return m;
}

inline PolyMesh build_tetrahedron() {
    PolyMesh m;
    for (Vec3 p : {Vec3{1, 1, 1}, Vec3{1, -1, -1}, Vec3{-1, 1, -1}, Vec3{-1, -1, 1}})
        m.vertices.push_back(normalized(p));
    for (auto [i, j, k] : std::array<std::array<int, 3>, 4>{{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}}) {
        Vec3 nrm = cross(m.vertices[j] - m.vertices[i], m.vertices[k] - m.vertices[i]);
        Vec3 c = (m.vertices[i] + m.vertices[j] + m.vertices[k]) / 3.0;
        if (dot(nrm, c) > 0) m.faces.push_back({i, j, k});
        else m.faces.push_back({i, k, j});
    }
    m.finalize();
    return m;
}

// One 4-way midpoint split, midpoints projected to the unit sphere.
inline PolyMesh subdivide(const PolyMesh& base) {
    PolyMesh out;
    out.vertices = base.vertices;
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int i, int j) {
        auto key = std::minmax(i, j);
        auto it = mid.find(key);
        if (it != mid.end()) return it->second;
        int id = int(out.vertices.size());
        out.vertices.push_back(normalized((out.vertices[i] + out.vertices[j]) / 2.0));
        mid.emplace(key, id);
        return id;
    };
    bool has_prov = base.provenance.size() == base.faces.size();
    for (int f = 0; f < base.face_count(); ++f) {
        const auto& tri = base.faces[f];
        if (tri.size() != 3) throw BadBase("subdivide requires a triangulated mesh");
        int i = tri[0], j = tri[1], k = tri[2];
        int a = midpoint(i, j), b = midpoint(j, k), c = midpoint(k, i);
        out.faces.push_back({i, a, c});
        out.faces.push_back({a, j, b});
        out.faces.push_back({c, b, k});
        out.faces.push_back({a, b, c});
        if (has_prov) {
            FaceProv p = base.provenance[f];
            if (p.up) {
                out.provenance.push_back({p.root, 2 * p.u, 2 * p.v, true});
                out.provenance.push_back({p.root, 2 * p.u + 1, 2 * p.v, true});
                out.provenance.push_back({p.root, 2 * p.u, 2 * p.v + 1, true});
                out.provenance.push_back({p.root, 2 * p.u, 2 * p.v, false});
            } else {
                out.provenance.push_back({p.root, 2 * p.u + 1, 2 * p.v, false});
                out.provenance.push_back({p.root, 2 * p.u + 1, 2 * p.v + 1, false});
                out.provenance.push_back({p.root, 2 * p.u, 2 * p.v + 1, false});
                out.provenance.push_back({p.root, 2 * p.u + 1, 2 * p.v + 1, true});
            }
        }
    }
    out.finalize();
    return out;
}

inline PolyMesh geodesic_dome(int level, int max_level = 6) {
    if (level < 0) throw std::invalid_argument("negative subdivision level");
    if (level > max_level) throw ResourceBound("subdivision level above configured maximum");
    PolyMesh m = build_icosahedron();
    for (int l = 0; l < level; ++l) m = subdivide(m);
    return m;
}

inline ValidityReport validate(const PolyMesh& mesh, double eps_convex_rel = 1e-9,
                               double planar_tol_rel = 1e-7) {
    ValidityReport r;
    std::unordered_map<std::uint64_t, int> undirected, directed;
    for (const auto& loop : mesh.faces)
        for (std::size_t k = 0; k < loop.size(); ++k) {
            int a = loop[k], b = loop[(k + 1) % loop.size()];
            ++undirected[PolyMesh::edge_key(a, b)];
            ++directed[(std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b)];
        }
    r.closed_manifold = !undirected.empty();
    for (auto& [k, c] : undirected)
        if (c != 2) r.closed_manifold = false;
    r.oriented = r.closed_manifold;
    for (auto& [k, c] : directed)
        if (c != 1) r.oriented = false;
    r.euler = mesh.vertex_count() - int(undirected.size()) + mesh.face_count() == 2;
    const double diam = mesh.diameter();
    const double eps = eps_convex_rel * diam;
    r.faces_planar = true;
    r.faces_convex = true;
    r.convex = true;
    r.worst_convexity = std::numeric_limits<double>::lowest();
    std::vector<char> in_face(mesh.vertices.size(), 0);
    for (int f = 0; f < mesh.face_count(); ++f) {
        const auto& loop = mesh.faces[f];
        Plane pl = fit_plane(mesh.vertices, loop);
        for (int v : loop) {
            in_face[v] = 1;
            r.max_planarity_dev = std::max(r.max_planarity_dev, std::abs(pl.signed_distance(mesh.vertices[v])));
        }
        for (int v = 0; v < mesh.vertex_count(); ++v) {
            if (in_face[v]) continue;
            double sd = pl.signed_distance(mesh.vertices[v]);
            r.worst_convexity = std::max(r.worst_convexity, sd);
        }
        for (int v : loop) in_face[v] = 0;
        auto flat = flatten_loop(mesh.vertices, loop);
        for (std::size_t i = 0; i < flat.size(); ++i) {
            Vec2 e0 = flat[(i + 1) % flat.size()] - flat[i];
            Vec2 e1 = flat[(i + 2) % flat.size()] - flat[(i + 1) % flat.size()];
            if (cross2(e0, e1) < -1e-12 * diam * diam) r.faces_convex = false;
        }
    }
    if (r.max_planarity_dev >= planar_tol_rel * diam) r.faces_planar = false;
    if (r.worst_convexity >= -eps) r.convex = false;
    return r;
}

inline void write_off(const PolyMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "OFF\n" << mesh.vertex_count() << " " << mesh.face_count() << " " << mesh.edge_count() << "\n";
    char buf[96];
    for (const Vec3& p : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", p.x, p.y, p.z);
        out << buf;
    }
    for (const auto& loop : mesh.faces) {
        out << loop.size();
        for (int v : loop) out << " " << v;
        out << "\n";
    }
}

}  // namespace domefold
