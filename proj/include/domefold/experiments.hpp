#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "domefold/banding.hpp"
#include "domefold/trees.hpp"
#include "domefold/unfold.hpp"

namespace domefold {

struct TrialStats {
    std::uint64_t trials = 0;
    std::uint64_t overlapping = 0;
    std::uint64_t band_unit_events = 0;     // per unit per trial
    std::uint64_t local_overlap_events = 0; // unit-local overlap given a band-unit event
    std::uint64_t n_units = 0;
    std::vector<std::uint64_t> non_overlapping_seeds;

    double f_overlap() const { return trials ? double(overlapping) / double(trials) : 0; }
    double f_band_unit() const {
        return trials && n_units ? double(band_unit_events) / double(trials * n_units) : 0;
    }
    double f_local_given_unit() const {
        return band_unit_events ? double(local_overlap_events) / double(band_unit_events) : 0;
    }

    void merge(const TrialStats& o) {
        trials += o.trials;
        overlapping += o.overlapping;
        band_unit_events += o.band_unit_events;
        local_overlap_events += o.local_overlap_events;
        n_units = o.n_units;
        non_overlapping_seeds.insert(non_overlapping_seeds.end(), o.non_overlapping_seeds.begin(),
                                     o.non_overlapping_seeds.end());
    }
};

namespace detail {

// Shared per-trial machinery. A unit is band-connected iff its induced dual
// edge count reaches 6 (any induced subgraph of the connection tree is a
// forest, so 6 edges on 7 faces force a spanning subtree). The relative pose
// of a connected unit's faces in the full unfolding depends only on that
// induced subtree, so its local-overlap verdict can be memoized by the 12-bit
// uncut pattern and reused without unfolding the whole mesh; any hit proves
// global overlap.
class TrialEngine {
  public:
    TrialEngine(const PolyMesh& mesh, const UnitLabeling& lab)
        : mesh_(mesh), lab_(lab), cut_(mesh.edge_count(), 0), memo_(lab.units.size()) {}

    struct Trial {
        bool overlap = false;
        std::uint32_t band_units = 0;
        std::uint32_t local_overlaps = 0;
    };

    Trial run(const std::vector<int>& cut_edges) {
        for (int e : cut_edges) cut_[e] = 1;
        Trial tr;
        for (std::size_t u = 0; u < lab_.units.size(); ++u) {
            const BandedUnit& un = lab_.units[u];
            std::uint16_t bits = 0;
            int count = 0;
            for (int i = 0; i < 6; ++i) {
                if (!cut_[un.e[i]]) {
                    bits |= std::uint16_t(1u << i);
                    ++count;
                }
                if (!cut_[un.u[i]]) {
                    bits |= std::uint16_t(1u << (6 + i));
                    ++count;
                }
            }
            if (count != 6) continue;
            ++tr.band_units;
            auto [it, fresh] = memo_[u].try_emplace(bits, false);
            if (fresh) it->second = local_overlap(un, bits);
            if (it->second) {
                ++tr.local_overlaps;
                tr.overlap = true;
            }
        }
        if (!tr.overlap) tr.overlap = full_overlap();
        for (int e : cut_edges) cut_[e] = 0;
        return tr;
    }

  private:
    bool local_overlap(const BandedUnit& un, std::uint16_t bits) {
        std::vector<int> arcs;
        arcs.reserve(6);
        for (int i = 0; i < 6; ++i) {
            if (bits & (1u << i)) arcs.push_back(un.e[i]);
            if (bits & (1u << (6 + i))) arcs.push_back(un.u[i]);
        }
        PlanarLayout layout = unfold_subset(mesh_, arcs, un.faces[0]);
        return detect_overlap(layout, &lab_, true).overlapping;
    }

    bool full_overlap() {
        std::vector<int> uncut;
        uncut.reserve(mesh_.edge_count() - mesh_.vertex_count() + 1);
        for (int e = 0; e < mesh_.edge_count(); ++e)
            if (!cut_[e]) uncut.push_back(e);
        PlanarLayout layout = unfold_subset(mesh_, uncut, 0);
        return detect_overlap(layout, &lab_, true).overlapping;
    }

    const PolyMesh& mesh_;
    const UnitLabeling& lab_;
    std::vector<char> cut_;
    std::vector<std::unordered_map<std::uint16_t, bool>> memo_;
};

}  // namespace detail

// Independent trials with per-trial seeds derived from the master seed, so a
// run can be split at any trial boundary and merged back together.
inline TrialStats monte_carlo(const PolyMesh& mesh, const UnitLabeling& lab,
                              std::uint64_t n_trials, std::uint64_t master_seed,
                              Sampler sampler = Sampler::Wilson, std::uint64_t first_trial = 0) {
    detail::TrialEngine engine(mesh, lab);
    TrialStats stats;
    stats.n_units = lab.units.size();
    for (std::uint64_t k = 0; k < n_trials; ++k) {
        std::uint64_t seed = derive_seed(master_seed, first_trial + k);
        CutTree cut = sample_cut_tree(mesh, seed, sampler);
        auto tr = engine.run(cut.edges);
        ++stats.trials;
        stats.overlapping += tr.overlap ? 1 : 0;
        stats.band_unit_events += tr.band_units;
        stats.local_overlap_events += tr.local_overlaps;
        if (!tr.overlap) stats.non_overlapping_seeds.push_back(seed);
    }
    return stats;
}

enum class SearchStrategy { Random, BandAware };

// Look for a cut tree whose unfolding has no overlap. The band-aware strategy
// pins two random spokes per unit into the cut tree; layouts that avoid
// overlap tend to cut several spokes around each hexagon.
inline std::optional<ConnectionTree> search_nonoverlapping(const PolyMesh& mesh,
                                                           const UnitLabeling& lab,
                                                           std::uint64_t budget,
                                                           std::uint64_t master_seed,
                                                           SearchStrategy strategy) {
    detail::TrialEngine engine(mesh, lab);
    for (std::uint64_t k = 0; k < budget; ++k) {
        std::uint64_t seed = derive_seed(master_seed, k);
        CutTree cut;
        if (strategy == SearchStrategy::Random) {
            cut = sample_cut_tree(mesh, seed, Sampler::Wilson);
        } else {
            Rng rng(seed);
            std::vector<std::pair<int, double>> overrides;
            overrides.reserve(2 * lab.units.size());
            for (const BandedUnit& un : lab.units) {
                int first = int(rng.below(6));
                int second = (first + 1 + int(rng.below(5))) % 6;
                overrides.push_back({un.u[first], -rng.uniform()});
                overrides.push_back({un.u[second], -rng.uniform()});
            }
            cut = mst_cut_tree(mesh, seed, overrides);
        }
        if (!engine.run(cut.edges).overlap) return to_connection_tree(cut, mesh);
    }
    return std::nullopt;
}

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_100;

struct BoundsReport {
    int level = 0;
    std::uint64_t hexagons = 0;
    BigRational rho_lower;       // 36 / 2^228
    BigRational global_bound;    // (1 - rho)^(H/16)
    BigRational fixed_fraction;  // 3 / 2^17
    double heuristic_overlap;    // 1 - (1 - p_unit p_loc)^H
    double rho_approx, one_minus_global, fixed_approx;
    std::string rho_decimal, global_decimal, fixed_decimal;
};

namespace detail {

inline double to_double(const BigRational& q) {
    return (BigFloat(boost::multiprecision::numerator(q)) /
            BigFloat(boost::multiprecision::denominator(q)))
        .convert_to<double>();
}

inline std::string to_decimal(const BigRational& q, int digits = 20) {
    return (BigFloat(boost::multiprecision::numerator(q)) /
            BigFloat(boost::multiprecision::denominator(q)))
        .str(digits, std::ios_base::scientific);
}

}  // namespace detail

inline double heuristic_overlap(double p_unit, double p_loc, std::uint64_t hexagons) {
    return -std::expm1(double(hexagons) * std::log1p(-p_unit * p_loc));
}

inline BoundsReport compute_bounds(int level, double p_unit = 0.7, double p_loc = 0.5) {
    BoundsReport rep;
    rep.level = level;
    rep.hexagons = 20ull << (2 * level);
    rep.rho_lower = BigRational(36, BigInt(1) << 228);
    BigRational one_minus_rho = 1 - rep.rho_lower;
    unsigned long exp = static_cast<unsigned long>(rep.hexagons / 16);
    rep.global_bound = BigRational(
        boost::multiprecision::pow(boost::multiprecision::numerator(one_minus_rho), exp),
        boost::multiprecision::pow(boost::multiprecision::denominator(one_minus_rho), exp));
    rep.fixed_fraction = BigRational(3, 1 << 17);
    rep.heuristic_overlap = heuristic_overlap(p_unit, p_loc, rep.hexagons);
    rep.rho_approx = detail::to_double(rep.rho_lower);
    rep.one_minus_global = detail::to_double(1 - rep.global_bound);
    rep.fixed_approx = detail::to_double(rep.fixed_fraction);
    rep.rho_decimal = detail::to_decimal(rep.rho_lower);
    rep.global_decimal = detail::to_decimal(rep.global_bound, 30);
    rep.fixed_decimal = detail::to_decimal(rep.fixed_fraction);
    return rep;
}

struct CountsReport {
    int level = 0;
    long long faces = 0, edges = 0, vertices = 0, hexagons = 0;
    long long faces_expected = 0, edges_expected = 0, vertices_expected = 0, hexagons_expected = 0;
    bool ok = false;
    std::string note;
};

inline CountsReport verify_counts(int level, const BandParams& params = {}) {
    CountsReport rep;
    rep.level = level;
    auto [mesh, lab] = banded_dome(level, params, false);
    long long scale = 1ll << (2 * level);
    rep.faces = mesh.face_count();
    rep.edges = mesh.edge_count();
    rep.vertices = mesh.vertex_count();
    rep.hexagons = lab.unit_count();
    rep.faces_expected = 140 * scale;
    rep.edges_expected = 300 * scale;
    rep.vertices_expected = 160 * scale + 2;
    rep.hexagons_expected = 20 * scale;
    rep.ok = rep.faces == rep.faces_expected && rep.edges == rep.edges_expected &&
             rep.vertices == rep.vertices_expected && rep.hexagons == rep.hexagons_expected;
    rep.note = "V = 160*4^L + 2: Euler's formula with F = 140*4^L and E = 300*4^L forces the +2 "
               "over the rounder 160*4^L closed form.";
    return rep;
}

}  // namespace domefold
