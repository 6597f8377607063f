// Command line front end: build banded domes, verify invariants, sample cut
// trees, search for non-overlapping unfoldings, and render layouts.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "domefold/domefold.hpp"

namespace {

using namespace domefold;

struct CommonOpts {
    int level = 0;
    std::uint64_t seed = 1;
    std::uint64_t trials = 1000;
    std::vector<double> params;
    std::string sampler = "wilson";
    std::string out;
    std::string format = "json";
};

BandParams band_params(const CommonOpts& o) {
    if (o.params.empty()) return {};
    return {o.params[0], o.params[1]};
}

Sampler sampler_of(const CommonOpts& o) {
    return o.sampler == "mst" ? Sampler::Mst : Sampler::Wilson;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty())
        std::cout << text;
    else
        write_text(out, text);
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_trials = false) {
    cmd->add_option("--level", o.level, "subdivision level")->check(CLI::Range(0, 6));
    cmd->add_option("--seed", o.seed, "master RNG seed");
    if (with_trials) cmd->add_option("--trials", o.trials, "number of trials");
    cmd->add_option("--params", o.params, "banding parameters t,mu")
        ->delimiter(',')
        ->expected(2);
    cmd->add_option("--sampler", o.sampler, "spanning tree sampler")
        ->check(CLI::IsMember({"wilson", "mst"}));
    cmd->add_option("--out", o.out, "output path (default stdout)");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

int cmd_build(const CommonOpts& o) {
    auto [mesh, lab] = banded_dome(o.level, band_params(o));
    if (o.out.empty()) {
        std::printf("level %d: V=%d E=%d F=%d units=%d (valid convex)\n", o.level,
                    mesh.vertex_count(), mesh.edge_count(), mesh.face_count(), lab.unit_count());
        return 0;
    }
    write_off(mesh, o.out);
    write_text(o.out + ".labels.json", labeling_json(lab).dump(2) + "\n");
    return 0;
}

int cmd_verify_counts(const CommonOpts& o) {
    CountsReport rep = verify_counts(o.level, band_params(o));
    emit(counts_json(rep).dump(2) + "\n", o.out);
    return rep.ok ? 0 : 1;
}

int cmd_verify_property(const CommonOpts& o, int unit) {
    auto [mesh, lab] = banded_dome(o.level, band_params(o));
    int lo = unit < 0 ? 0 : unit;
    int hi = unit < 0 ? lab.unit_count() : unit + 1;
    int bad = 0;
    for (int u = lo; u < hi; ++u) {
        auto res = verify_hexagon_overlap_property(mesh, lab, u);
        int hits = 0;
        for (bool b : res) hits += b;
        if (hits != 36) {
            ++bad;
            std::printf("unit %d: %d/36 patterns overlap\n", u, hits);
        }
    }
    std::printf("%d/%d units satisfy all 36 overlap patterns\n", hi - lo - bad, hi - lo);
    return bad == 0 ? 0 : 1;
}

int cmd_cluster_count(const CommonOpts& o, int unit) {
    auto [mesh, lab] = banded_dome(o.level, band_params(o));
    ClusterGraph cg = build_cluster_graph(lab, mesh, unit);
    json j{{"level", o.level},
           {"anchor_unit", unit},
           {"units", cg.unit_ids.size()},
           {"faces", cg.node_faces.size()},
           {"internal_dual_edges", cg.internal_dual_edges.size()},
           {"boundary_crossings", cg.boundary_crossings.size()}};
    emit(j.dump(2) + "\n", o.out);
    return 0;
}

int cmd_sample(const CommonOpts& o) {
    auto [mesh, lab] = banded_dome(o.level, band_params(o));
    TrialStats st = monte_carlo(mesh, lab, o.trials, o.seed, sampler_of(o));
    RunConfig cfg{o.level, o.trials, o.seed, sampler_of(o), band_params(o)};
    if (o.format == "csv")
        emit(stats_csv(cfg, st), o.out);
    else
        emit(stats_json(cfg, st).dump(2) + "\n", o.out);
    return 0;
}

int cmd_search(const CommonOpts& o, const std::string& strategy) {
    auto [mesh, lab] = banded_dome(o.level, band_params(o));
    SearchStrategy st =
        strategy == "random" ? SearchStrategy::Random : SearchStrategy::BandAware;
    auto found = search_nonoverlapping(mesh, lab, o.trials, o.seed, st);
    if (!found) {
        std::fprintf(stderr, "no non-overlapping unfolding found in %llu attempts\n",
                     (unsigned long long)o.trials);
        return 1;
    }
    emit(tree_json(*found).dump(2) + "\n", o.out);
    return 0;
}

int cmd_bounds(const CommonOpts& o) {
    BoundsReport rep = compute_bounds(o.level);
    emit(bounds_json(rep).dump(2) + "\n", o.out);
    return 0;
}

int cmd_render(const CommonOpts& o) {
    auto [mesh, lab] = banded_dome(o.level, band_params(o));
    CutTree cut = sample_cut_tree(mesh, o.seed, sampler_of(o));
    PlanarLayout layout = unfold(mesh, to_connection_tree(cut, mesh));
    OverlapReport rep = detect_overlap(layout, &lab);
    std::string path = o.out.empty() ? "layout.svg" : o.out;
    render_svg(layout, rep, path, &lab);
    std::printf("%s: %zu faces, %zu overlapping pairs\n", path.c_str(),
                layout.face_ids.size(), rep.pairs.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"banded geodesic domes: construction, unfolding, overlap analysis"};
    app.require_subcommand(1);

    CommonOpts o;
    int unit = -1;
    std::string strategy = "band-aware";

    auto* build = app.add_subcommand("build", "construct a banded dome, export OFF + labels");
    add_common(build, o);
    auto* counts = app.add_subcommand("verify-counts", "check face/edge/vertex/unit counts");
    add_common(counts, o);
    auto* prop = app.add_subcommand("verify-property",
                                    "check the 36 forced overlap patterns per unit");
    add_common(prop, o);
    prop->add_option("--unit", unit, "unit to check (default: all)");
    auto* cluster = app.add_subcommand("cluster-count", "count dual edges of a 16-unit cluster");
    add_common(cluster, o);
    cluster->add_option("--unit", unit, "anchor unit")->default_val(0);
    auto* sample = app.add_subcommand("sample", "Monte Carlo over random cut trees");
    add_common(sample, o, true);
    auto* search = app.add_subcommand("search", "look for a non-overlapping unfolding");
    add_common(search, o, true);
    search->add_option("--strategy", strategy, "search strategy")
        ->check(CLI::IsMember({"random", "band-aware"}));
    auto* bounds = app.add_subcommand("bounds", "exact probability bounds");
    add_common(bounds, o);
    auto* render = app.add_subcommand("render", "unfold one sample and write an SVG");
    add_common(render, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (build->parsed()) return cmd_build(o);
        if (counts->parsed()) return cmd_verify_counts(o);
        if (prop->parsed()) return cmd_verify_property(o, unit);
        if (cluster->parsed()) return cmd_cluster_count(o, unit < 0 ? 0 : unit);
        if (sample->parsed()) return cmd_sample(o);
        if (search->parsed()) return cmd_search(o, strategy);
        if (bounds->parsed()) return cmd_bounds(o);
        if (render->parsed()) return cmd_render(o);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
