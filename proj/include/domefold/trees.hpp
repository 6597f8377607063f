#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "domefold/banding.hpp"
#include "domefold/mesh.hpp"

namespace domefold {

// SplitMix64. Own implementation so streams are identical across platforms.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    std::uint32_t below(std::uint32_t n) {
        std::uint64_t lim = ~0ULL - ~0ULL % n;
        std::uint64_t v = next();
        while (v >= lim) v = next();
        return std::uint32_t(v % n);
    }
};

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    Rng r(master ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    r.next();
    return r.next();
}

struct CutTree {
    std::vector<int> edges;  // sorted mesh edge ids, |edges| = V - 1
};

struct ConnectionTree {
    std::vector<int> edges;  // sorted mesh edge ids of the uncut set, |edges| = F - 1
};

enum class Sampler { Wilson, Mst };

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

// Wilson's loop-erased random walk; uniform over spanning trees.
inline std::vector<int> wilson_tree(const std::vector<std::vector<std::pair<int, int>>>& adj,
                                    Rng& rng) {
    int n = int(adj.size());
    std::vector<char> in_tree(n, 0);
    std::vector<int> next_v(n, -1), next_e(n, -1);
    in_tree[0] = 1;
    std::vector<int> out;
    out.reserve(n - 1);
    for (int i = 0; i < n; ++i) {
        int v = i;
        while (!in_tree[v]) {
            auto [w, e] = adj[v][rng.below(std::uint32_t(adj[v].size()))];
            next_v[v] = w;
            next_e[v] = e;
            v = w;
        }
        v = i;
        while (!in_tree[v]) {
            in_tree[v] = 1;
            out.push_back(next_e[v]);
            v = next_v[v];
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<int> mst_tree(int n_vertices, const std::vector<Edge>& edges,
                                 const std::vector<double>& weights) {
    std::vector<int> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return weights[a] != weights[b] ? weights[a] < weights[b] : a < b;
    });
    UnionFind uf(n_vertices);
    std::vector<int> out;
    out.reserve(n_vertices - 1);
    for (int e : order)
        if (uf.unite(edges[e].v0, edges[e].v1)) out.push_back(e);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

inline CutTree sample_cut_tree(const PolyMesh& mesh, std::uint64_t seed,
                               Sampler sampler = Sampler::Wilson) {
    Rng rng(seed);
    if (sampler == Sampler::Wilson) return {detail::wilson_tree(mesh.vertex_adj, rng)};
    std::vector<double> w(mesh.edge_count());
    for (double& x : w) x = rng.uniform();
    return {detail::mst_tree(mesh.vertex_count(), mesh.edges, w)};
}

// Random-weight minimum spanning tree with pinned weights on selected edges.
inline CutTree mst_cut_tree(const PolyMesh& mesh, std::uint64_t seed,
                            const std::vector<std::pair<int, double>>& overrides) {
    Rng rng(seed);
    std::vector<double> w(mesh.edge_count());
    for (double& x : w) x = rng.uniform();
    for (auto [e, wt] : overrides) w[e] = wt;
    return {detail::mst_tree(mesh.vertex_count(), mesh.edges, w)};
}

namespace detail {

inline void require_spanning(const std::vector<int>& tree_edges, const PolyMesh& mesh, bool dual) {
    int n = dual ? mesh.face_count() : mesh.vertex_count();
    if (int(tree_edges.size()) != n - 1) throw InvalidTree("wrong edge count for a spanning tree");
    UnionFind uf(n);
    for (int e : tree_edges) {
        if (e < 0 || e >= mesh.edge_count()) throw InvalidTree("edge id out of range");
        const Edge& ed = mesh.edges[e];
        bool fresh = dual ? uf.unite(ed.f0, ed.f1) : uf.unite(ed.v0, ed.v1);
        if (!fresh) throw InvalidTree("cycle in spanning tree");
    }
}

}  // namespace detail

inline ConnectionTree to_connection_tree(const CutTree& cut, const PolyMesh& mesh) {
    detail::require_spanning(cut.edges, mesh, false);
    ConnectionTree out;
    out.edges.reserve(mesh.edge_count() - cut.edges.size());
    std::size_t k = 0;
    for (int e = 0; e < mesh.edge_count(); ++e) {
        if (k < cut.edges.size() && cut.edges[k] == e) ++k;
        else out.edges.push_back(e);
    }
    return out;
}

inline CutTree to_cut_tree(const ConnectionTree& conn, const PolyMesh& mesh) {
    detail::require_spanning(conn.edges, mesh, true);
    CutTree out;
    out.edges.reserve(mesh.edge_count() - conn.edges.size());
    std::size_t k = 0;
    for (int e = 0; e < mesh.edge_count(); ++e) {
        if (k < conn.edges.size() && conn.edges[k] == e) ++k;
        else out.edges.push_back(e);
    }
    return out;
}

struct OverlapPattern {
    int unit = -1;
    int i = -1;  // the single uncut hexagon edge e_i
    int j = -1;  // the single cut spoke u_j
    bool operator==(const OverlapPattern&) const = default;
};

inline bool tree_contains(const std::vector<int>& sorted_edges, int edge) {
    return std::binary_search(sorted_edges.begin(), sorted_edges.end(), edge);
}

inline std::optional<OverlapPattern> detect_overlap_pattern(const ConnectionTree& conn,
                                                            const UnitLabeling& lab, int unit) {
    const BandedUnit& un = lab.units[unit];
    int uncut_e = -1, n_uncut_e = 0, cut_u = -1, n_cut_u = 0;
    for (int i = 0; i < 6; ++i) {
        if (tree_contains(conn.edges, un.e[i])) {
            uncut_e = i;
            ++n_uncut_e;
        }
        if (!tree_contains(conn.edges, un.u[i])) {
            cut_u = i;
            ++n_cut_u;
        }
    }
    if (n_uncut_e != 1 || n_cut_u != 1) return std::nullopt;
    return OverlapPattern{unit, uncut_e, cut_u};
}

inline bool detect_band_unit(const ConnectionTree& conn, const UnitLabeling& lab, int unit) {
    const BandedUnit& un = lab.units[unit];
    detail::UnionFind uf(7);  // node 0 hexagon, 1+i quad i
    int components = 7;
    for (int i = 0; i < 6; ++i) {
        if (tree_contains(conn.edges, un.e[i]) && uf.unite(0, 1 + i)) --components;
        if (tree_contains(conn.edges, un.u[i]) && uf.unite(1 + (i + 5) % 6, 1 + i)) --components;
    }
    return components == 1;
}

inline std::vector<OverlapPattern> enumerate_unit_patterns(int unit) {
    std::vector<OverlapPattern> out;
    out.reserve(36);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) out.push_back({unit, i, j});
    return out;
}

// Cut tree realizing pattern (i, j) on one unit: e_i stays uncut, the other
// hexagon edges are cut, u_j is cut, the other spokes stay uncut. The rest of
// the tree is a random-weight MST completion.
inline CutTree plant_pattern(const PolyMesh& mesh, const UnitLabeling& lab,
                             const OverlapPattern& pat, std::uint64_t seed) {
    const BandedUnit& un = lab.units[pat.unit];
    std::vector<std::pair<int, double>> overrides;
    for (int k = 0; k < 6; ++k) {
        overrides.push_back({un.e[k], k == pat.i ? 2.0 : -1.0});
        overrides.push_back({un.u[k], k == pat.j ? -1.0 : 2.0});
    }
    return mst_cut_tree(mesh, seed, overrides);
}

}  // namespace domefold
