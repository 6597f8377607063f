#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <vector>

#include "domefold/mesh.hpp"

namespace domefold {

struct BandParams {
    double t = 0.15;    // inset of hexagon vertices toward the triangle centroid
    double mu = 0.002;  // lift, as a fraction of the local base edge length
};

enum class FaceRole : std::uint8_t { Hexagon, BandQuad };

// One banded hexagon: inner hexagon a0..a5 over rim b0..b5. Odd b are base
// triangle corners, even b are base edge midpoints. Quad i spans hexagon edge
// e_i, spokes u_i and u_{i+1}, and rim edge r_i.
struct BandedUnit {
    std::array<int, 6> a{}, b{};
    std::array<int, 7> faces{};  // faces[0] hexagon, faces[1+i] quad i
    std::array<int, 6> e{}, u{}, r{};
};

struct UnitLabeling {
    std::vector<int> unit_of_face;
    std::vector<std::int8_t> quad_index;  // -1 for the hexagon face
    std::vector<BandedUnit> units;
    std::vector<FaceProv> unit_prov;      // of the base triangle; empty if the base had none

    int unit_count() const { return int(units.size()); }
    FaceRole role(int face) const {
        return quad_index[face] < 0 ? FaceRole::Hexagon : FaceRole::BandQuad;
    }
};

namespace detail {

inline bool solve3(const std::array<Vec3, 3>& rows, const Vec3& rhs, Vec3& out) {
    double det = dot(rows[0], cross(rows[1], rows[2]));
    if (std::abs(det) < 1e-9) return false;
    // inverse columns are the scaled cross products of the rows
    out = (cross(rows[1], rows[2]) * rhs.x + cross(rows[2], rows[0]) * rhs.y +
           cross(rows[0], rows[1]) * rhs.z) / det;
    return true;
}

}  // namespace detail

// Replace every triangle of a closed convex triangulated base by a banded
// hexagon. Hexagon corners a_i are inset by t toward the centroid and lifted
// by mu times the local mean edge length along the face normal; even a_i are
// then re-solved so the hexagon and both adjacent quads are exactly planar.
// Rim midpoints get a radial lift of mu/2 times their edge length so the band
// quads clear the base edges.
inline std::pair<PolyMesh, UnitLabeling> band_mesh(const PolyMesh& base, const BandParams& params,
                                                   bool check = true) {
    for (const auto& loop : base.faces)
        if (loop.size() != 3) throw BadBase("band_mesh requires a triangulated base");
    // mu == 0 is the degenerate flat construction; it never validates but the
    // overlap verifier accepts it and reports no overlaps.
    if (params.t <= 0 || params.t >= 1 || params.mu < 0)
        throw BadBase("band parameters out of range");

    PolyMesh mesh;
    mesh.vertices = base.vertices;
    UnitLabeling lab;
    lab.unit_prov = base.provenance;

    std::map<std::pair<int, int>, int> midv;
    auto rim_midpoint = [&](int i, int j) {
        auto key = std::minmax(i, j);
        auto it = midv.find(key);
        if (it != midv.end()) return it->second;
        Vec3 m = (mesh.vertices[i] + mesh.vertices[j]) / 2.0;
        double el = norm(mesh.vertices[i] - mesh.vertices[j]);
        m += normalized(m) * (0.5 * params.mu * el);
        int id = int(mesh.vertices.size());
        mesh.vertices.push_back(m);
        midv.emplace(key, id);
        return id;
    };

    for (int f = 0; f < base.face_count(); ++f) {
        int p = base.faces[f][0], q = base.faces[f][1], r = base.faces[f][2];
        const Vec3 vp = base.vertices[p], vq = base.vertices[q], vr = base.vertices[r];
        Vec3 c = (vp + vq + vr) / 3.0;
        Vec3 nhat = normalized(cross(vq - vp, vr - vp));
        double el = (norm(vp - vq) + norm(vq - vr) + norm(vr - vp)) / 3.0;
        double lift = params.mu * el;

        std::array<int, 6> b = {rim_midpoint(r, p), p, rim_midpoint(p, q), q, rim_midpoint(q, r), r};
        std::array<Vec3, 6> a;
        for (int i : {1, 3, 5}) a[i] = mesh.vertices[b[i]] * (1 - params.t) + c * params.t + nhat * lift;

        Vec3 hn = normalized(cross(a[3] - a[1], a[5] - a[1]));
        double hd = dot(hn, a[1]);
        for (int i : {0, 2, 4}) {
            int il = (i + 5) % 6, ir = (i + 1) % 6;
            Vec3 bm = mesh.vertices[b[i]];
            std::array<Vec3, 3> rows = {hn, {}, {}};
            Vec3 rhs = {hd, 0, 0};
            Vec3 n2 = normalized(cross(mesh.vertices[b[il]] - a[il], bm - a[il]));
            rows[1] = n2;
            rhs.y = dot(n2, a[il]);
            Vec3 n3 = normalized(cross(mesh.vertices[b[ir]] - a[ir], bm - a[ir]));
            rows[2] = n3;
            rhs.z = dot(n3, a[ir]);
            if (!detail::solve3(rows, rhs, a[i]))
                a[i] = bm * (1 - params.t) + c * params.t + nhat * lift;
        }

        BandedUnit unit;
        unit.b = b;
        for (int i = 0; i < 6; ++i) {
            unit.a[i] = int(mesh.vertices.size());
            mesh.vertices.push_back(a[i]);
        }
        unit.faces[0] = int(mesh.faces.size());
        mesh.faces.push_back({unit.a[0], unit.a[1], unit.a[2], unit.a[3], unit.a[4], unit.a[5]});
        lab.unit_of_face.push_back(f);
        lab.quad_index.push_back(-1);
        for (int i = 0; i < 6; ++i) {
            int j = (i + 1) % 6;
            unit.faces[1 + i] = int(mesh.faces.size());
            mesh.faces.push_back({unit.a[j], unit.a[i], unit.b[i], unit.b[j]});
            lab.unit_of_face.push_back(f);
            lab.quad_index.push_back(std::int8_t(i));
        }
        lab.units.push_back(unit);
    }

    mesh.finalize();
    for (BandedUnit& unit : lab.units)
        for (int i = 0; i < 6; ++i) {
            int j = (i + 1) % 6;
            unit.e[i] = mesh.edge_id(unit.a[i], unit.a[j]);
            unit.u[i] = mesh.edge_id(unit.a[i], unit.b[i]);
            unit.r[i] = mesh.edge_id(unit.b[i], unit.b[j]);
        }

    if (check) {
        ValidityReport rep = validate(mesh);
        if (!rep.convex) throw NonConvexResult("band parameters produce a non-convex mesh");
        if (!rep.all()) throw MeshError("banded mesh failed validation");
    }
    return {std::move(mesh), std::move(lab)};
}

inline std::pair<PolyMesh, UnitLabeling> banded_dome(int level, const BandParams& params = {},
                                                     bool check = true) {
    return band_mesh(geodesic_dome(level), params, check);
}

inline std::pair<PolyMesh, UnitLabeling> banded_tetrahedron(const BandParams& params = {},
                                                            bool check = true) {
    return band_mesh(build_tetrahedron(), params, check);
}

struct BandReport {
    ValidityReport mesh;
    double max_even_pi_dev = 0;   // |pi - angle| at a0,a2,a4
    double max_odd_angle = 0;     // angle at a1,a3,a5
    bool odd_below_even = true;
    double min_a_curvature = 0, max_a_curvature = 0;
    double gauss_bonnet_dev = 0;  // |total curvature - 4pi|
    double curvature_cap, odd_angle_cap, even_pi_cap;

    bool ok() const {
        return mesh.all() && max_even_pi_dev <= even_pi_cap && max_odd_angle <= odd_angle_cap &&
               odd_below_even && min_a_curvature > 0 && max_a_curvature <= curvature_cap &&
               gauss_bonnet_dev <= 1e-6;
    }
};

inline double corner_angle(const Vec3& prev, const Vec3& at, const Vec3& next) {
    Vec3 u = prev - at, v = next - at;
    double c = dot(u, v) / (norm(u) * norm(v));
    return std::acos(std::clamp(c, -1.0, 1.0));
}

inline BandReport check_banding(const PolyMesh& mesh, const UnitLabeling& lab,
                                double curvature_cap = 0.2, double angle_cap = 0.2) {
    BandReport rep;
    rep.curvature_cap = curvature_cap;
    rep.odd_angle_cap = std::numbers::pi / 2 + angle_cap;
    rep.even_pi_cap = angle_cap;
    rep.mesh = validate(mesh);

    std::vector<double> angle_sum(mesh.vertices.size(), 0);
    for (const auto& loop : mesh.faces) {
        int k = int(loop.size());
        for (int i = 0; i < k; ++i)
            angle_sum[loop[i]] += corner_angle(mesh.vertices[loop[(i + k - 1) % k]],
                                               mesh.vertices[loop[i]],
                                               mesh.vertices[loop[(i + 1) % k]]);
    }
    double total = 0;
    for (double s : angle_sum) total += 2 * std::numbers::pi - s;
    rep.gauss_bonnet_dev = std::abs(total - 4 * std::numbers::pi);

    rep.min_a_curvature = std::numeric_limits<double>::max();
    rep.max_a_curvature = std::numeric_limits<double>::lowest();
    for (const BandedUnit& unit : lab.units) {
        double min_even = std::numeric_limits<double>::max(), max_odd = 0;
        for (int i = 0; i < 6; ++i) {
            double ang = corner_angle(mesh.vertices[unit.a[(i + 5) % 6]], mesh.vertices[unit.a[i]],
                                      mesh.vertices[unit.a[(i + 1) % 6]]);
            if (i % 2 == 0) {
                rep.max_even_pi_dev = std::max(rep.max_even_pi_dev, std::abs(std::numbers::pi - ang));
                min_even = std::min(min_even, ang);
            } else {
                rep.max_odd_angle = std::max(rep.max_odd_angle, ang);
                max_odd = std::max(max_odd, ang);
            }
            double curv = 2 * std::numbers::pi - angle_sum[unit.a[i]];
            rep.min_a_curvature = std::min(rep.min_a_curvature, curv);
            rep.max_a_curvature = std::max(rep.max_a_curvature, curv);
        }
        if (max_odd >= min_even) rep.odd_below_even = false;
    }
    return rep;
}

struct ClusterGraph {
    std::vector<int> unit_ids;             // 16 units of one side-4 block
    std::vector<int> node_faces;           // their 112 faces
    std::vector<int> internal_dual_edges;  // mesh edge ids with both faces inside
    std::vector<int> boundary_crossings;   // mesh edge ids with one face inside
};

namespace detail {

struct BlockId {
    int root, bu, bv;
    bool up_block;
    bool operator==(const BlockId&) const = default;
};

// Side-4 sub-triangles tile the subdivided root triangle; up blocks take the
// lattice cells with (u%4)+(v%4) small, down blocks the inverted remainder.
inline BlockId block_of(const FaceProv& p) {
    int s = p.u % 4, t = p.v % 4;
    bool up_block = p.up ? (s + t <= 3) : (s + t <= 2);
    return {p.root, p.u / 4, p.v / 4, up_block};
}

}  // namespace detail

inline ClusterGraph build_cluster_graph(const UnitLabeling& lab, const PolyMesh& mesh,
                                        int anchor_unit) {
    if (lab.unit_prov.size() != lab.units.size())
        throw PatchNotFound("mesh carries no subdivision coordinates");
    detail::BlockId want = detail::block_of(lab.unit_prov[anchor_unit]);
    ClusterGraph cg;
    std::vector<char> in_cluster(mesh.face_count(), 0);
    for (int u = 0; u < lab.unit_count(); ++u) {
        if (!(detail::block_of(lab.unit_prov[u]) == want)) continue;
        cg.unit_ids.push_back(u);
        for (int f : lab.units[u].faces) {
            cg.node_faces.push_back(f);
            in_cluster[f] = 1;
        }
    }
    if (cg.unit_ids.size() != 16) throw PatchNotFound("no complete 16-unit block at this anchor");
    for (int e = 0; e < mesh.edge_count(); ++e) {
        int inside = in_cluster[mesh.edges[e].f0] + in_cluster[mesh.edges[e].f1];
        if (inside == 2) cg.internal_dual_edges.push_back(e);
        else if (inside == 1) cg.boundary_crossings.push_back(e);
    }
    return cg;
}

}  // namespace domefold
