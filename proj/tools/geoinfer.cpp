// geoinfer: command-line front end for the geometric-inference library.
// Subcommands: dist, medial, covering, boundary, curvature, stability,
// holder. Each run is driven by a JSON config (strictly validated; flags
// override), and every report embeds the tool version, the resolved
// config, and the seed, so a run can be reproduced byte for byte.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>

#include "geo/curvature.hpp"
#include "geo/distance.hpp"
#include "geo/io.hpp"
#include "geo/measure.hpp"
#include "geo/medial.hpp"
#include "geo/parallel.hpp"
#include "geo/scene.hpp"
#include "geo/stability.hpp"
#include "geo/transport.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace geo;

namespace {

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& context) {
    if (!obj.is_object()) throw InputError(context + ": expected a JSON object");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (allowed.find(key) == allowed.end())
            throw InputError(context + ": unknown key \"" + key + "\"");
    }
}

Point json_to_point(const json& arr, const std::string& context) {
    if (!arr.is_array() || arr.size() < kMinDim || arr.size() > kMaxDim)
        throw InputError(context + ": expected an array of 2..8 numbers");
    Point p(static_cast<int>(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) throw InputError(context + ": expected numbers");
        p[static_cast<int>(i)] = arr[i].get<double>();
    }
    return p;
}

Box json_to_box(const json& obj, const std::string& context) {
    require_keys(obj, {"min", "max"}, context);
    if (!obj.contains("min") || !obj.contains("max"))
        throw InputError(context + ": needs \"min\" and \"max\"");
    return Box(json_to_point(obj["min"], context + ".min"),
               json_to_point(obj["max"], context + ".max"));
}

CompactShape parse_shape(const json& spec, const fs::path& base_dir,
                         const std::string& context) {
    if (!spec.is_object() || !spec.contains("type"))
        throw InputError(context + ": shape needs a \"type\"");
    const std::string type = spec["type"].get<std::string>();

    if (type == "cloud") {
        require_keys(spec, {"type", "file", "points"}, context);
        if (spec.contains("file")) {
            const fs::path path = base_dir / spec["file"].get<std::string>();
            return CompactShape::cloud(PointCloud(load_points(path.string())));
        }
        if (spec.contains("points")) {
            std::vector<Point> pts;
            for (const json& row : spec["points"])
                pts.push_back(json_to_point(row, context + ".points"));
            return CompactShape::cloud(std::move(pts));
        }
        throw InputError(context + ": cloud needs \"file\" or \"points\"");
    }
    if (type == "ball") {
        require_keys(spec, {"type", "center", "radius"}, context);
        return CompactShape::ball(json_to_point(spec.at("center"), context + ".center"),
                                  spec.at("radius").get<double>());
    }
    if (type == "box") {
        require_keys(spec, {"type", "min", "max"}, context);
        return CompactShape::box(json_to_point(spec.at("min"), context + ".min"),
                                 json_to_point(spec.at("max"), context + ".max"));
    }
    if (type == "segments") {
        require_keys(spec, {"type", "segments"}, context);
        std::vector<Segment> segs;
        for (const json& row : spec.at("segments")) {
            if (!row.is_array() || row.size() != 2)
                throw InputError(context + ": each segment is [[...],[...]]");
            segs.push_back({json_to_point(row[0], context), json_to_point(row[1], context)});
        }
        return CompactShape::segments(std::move(segs));
    }
    if (type == "union") {
        require_keys(spec, {"type", "members"}, context);
        std::vector<CompactShape> members;
        for (const json& member : spec.at("members"))
            members.push_back(parse_shape(member, base_dir, context + ".member"));
        return CompactShape::union_of(std::move(members));
    }
    if (type == "two_point") {
        require_keys(spec, {"type", "dim", "spread"}, context);
        const int dim = spec.value("dim", 2);
        const double spread = spec.value("spread", 1.0);
        return make_two_point_cloud(dim, spread);
    }
    if (type == "comb") {
        require_keys(spec, {"type", "teeth", "per_tooth"}, context);
        return CompactShape::cloud(
            make_comb_cloud(spec.value("teeth", 8), spec.value("per_tooth", 101)));
    }
    if (type == "circle") {
        require_keys(spec, {"type", "n", "radius"}, context);
        return CompactShape::cloud(make_circle_cloud(spec.value("n", 64), spec.value("radius", 1.0)));
    }
    throw InputError(context + ": unknown shape type \"" + type + "\"");
}

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    bool seed_set = false;
    std::uint64_t seed = 0;
    bool samples_set = false;
    std::uint64_t samples = 0;
    int workers = 0;
};

struct RunContext {
    json config;
    fs::path base_dir;  // directory of the config file, for relative paths
    fs::path out_dir;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::string command;

    CompactShape shape(const char* key = "shape") const {
        if (!config.contains(key))
            throw InputError(std::string("config needs \"") + key + "\"");
        return parse_shape(config.at(key), base_dir, key);
    }

    json report_header() const {
        json r;
        r["tool"] = "geoinfer";
        r["version"] = kVersion;
        r["command"] = command;
        r["seed"] = seed;
        r["config"] = config;
        return r;
    }

    std::vector<std::string> csv_comments() const {
        return {"geoinfer " + command + " version=" + kVersion +
                    " seed=" + std::to_string(seed),
                "config=" + config.dump()};
    }

    void write_report(const std::string& name, const json& body) const {
        write_file((out_dir / name).string(), body.dump(2) + "\n");
    }
};

RunContext make_context(const CommonArgs& args, const std::string& command,
                        const std::set<std::string>& allowed_keys) {
    RunContext ctx;
    ctx.command = command;
    if (args.config_path.empty()) throw InputError("--config is required");
    json cfg;
    try {
        cfg = json::parse(read_file(args.config_path));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("config parse error: ") + e.what());
    }
    std::set<std::string> allowed = allowed_keys;
    allowed.insert({"seed", "out", "workers", "samples", "command", "shape"});
    require_keys(cfg, allowed, "config");
    if (cfg.contains("command") && cfg["command"].get<std::string>() != command)
        throw InputError("config \"command\" does not match the subcommand");

    // flags win over config values
    if (args.seed_set) cfg["seed"] = args.seed;
    if (args.samples_set) cfg["samples"] = args.samples;
    if (!args.out_dir.empty()) cfg["out"] = args.out_dir;
    if (args.workers > 0) cfg["workers"] = args.workers;

    ctx.seed = cfg.value("seed", std::uint64_t{0});
    ctx.samples = cfg.value("samples", std::size_t{100000});
    ctx.base_dir = fs::path(args.config_path).parent_path();
    ctx.out_dir = cfg.value("out", std::string("."));
    fs::create_directories(ctx.out_dir);

    SceneConfig scene;
    scene.seed = ctx.seed;
    scene.samples = ctx.samples;
    scene.validate();

    const int workers = cfg.value("workers", 0);
    set_worker_count(workers > 0 ? workers : hardware_workers());

    ctx.config = std::move(cfg);
    return ctx;
}

// ---- dist ----

int cmd_dist(const CommonArgs& args) {
    RunContext ctx = make_context(args, "dist", {"queries"});
    const CompactShape shape = ctx.shape();

    std::vector<Point> queries;
    if (!ctx.config.contains("queries")) throw InputError("config needs \"queries\"");
    const json& q = ctx.config["queries"];
    require_keys(q, {"file", "grid"}, "queries");
    if (q.contains("file")) {
        queries = load_points((ctx.base_dir / q["file"].get<std::string>()).string());
    } else if (q.contains("grid")) {
        const json& g = q["grid"];
        require_keys(g, {"min", "max", "counts"}, "queries.grid");
        const Point lo = json_to_point(g.at("min"), "grid.min");
        const Point hi = json_to_point(g.at("max"), "grid.max");
        std::vector<std::size_t> counts;
        for (const json& c : g.at("counts")) counts.push_back(c.get<std::size_t>());
        if (static_cast<int>(counts.size()) != lo.dim())
            throw InputError("queries.grid: counts length must match dimension");
        std::size_t total = 1;
        for (std::size_t c : counts) {
            if (c < 1) throw InputError("queries.grid: counts must be >= 1");
            total *= c;
        }
        for (std::size_t idx = 0; idx < total; ++idx) {
            Point p(lo.dim());
            std::size_t rest = idx;
            for (int i = 0; i < lo.dim(); ++i) {
                const std::size_t gi = rest % counts[i];
                rest /= counts[i];
                p[i] = counts[i] == 1
                           ? 0.5 * (lo[i] + hi[i])
                           : lo[i] + (hi[i] - lo[i]) * static_cast<double>(gi) /
                                         static_cast<double>(counts[i] - 1);
            }
            queries.push_back(p);
        }
    } else {
        throw InputError("queries: needs \"file\" or \"grid\"");
    }

    CsvRow header;
    for (int i = 0; i < shape.dim(); ++i) header.push_back("x" + std::to_string(i + 1));
    header.push_back("dist");
    header.push_back("mu");
    std::vector<CsvRow> rows;
    for (const Point& x : queries) {
        CsvRow row;
        for (int i = 0; i < shape.dim(); ++i) row.push_back(format_double(x[i]));
        const double d = distance(shape, x);
        row.push_back(format_double(d));
        double mu = std::numeric_limits<double>::quiet_NaN();  // undefined on K
        if (d > 0.0) mu = gradient(shape, x).mu;
        row.push_back(format_double(mu));
        rows.push_back(std::move(row));
    }
    write_csv((ctx.out_dir / "dist.csv").string(), ctx.csv_comments(), header, rows);
    return 0;
}

// ---- medial ----

int cmd_medial(const CommonArgs& args) {
    RunContext ctx = make_context(args, "medial", {"mu", "eps", "rays"});
    const CompactShape shape = ctx.shape();
    const double mu = ctx.config.value("mu", 0.5);
    const double eps = ctx.config.value("eps", 0.1);
    const std::size_t rays = ctx.config.value("rays", ctx.samples);

    const MedialSample sample = sample_mu_medial(shape, mu, eps, rays, ctx.seed);
    if (sample.points.empty())
        std::cerr << "warning: zero retained medial samples\n";

    CsvRow header;
    for (int i = 0; i < shape.dim(); ++i) header.push_back("m" + std::to_string(i + 1));
    header.push_back("dist");
    header.push_back("mu");
    header.push_back("witnesses");
    std::vector<CsvRow> rows;
    for (const MedialPoint& mp : sample.points) {
        CsvRow row;
        for (int i = 0; i < shape.dim(); ++i) row.push_back(format_double(mp.m[i]));
        row.push_back(format_double(mp.dist));
        row.push_back(format_double(mp.mu));
        row.push_back(std::to_string(mp.witnesses.size()));
        rows.push_back(std::move(row));
    }
    write_csv((ctx.out_dir / "medial_points.csv").string(), ctx.csv_comments(), header, rows);

    json report = ctx.report_header();
    report["rays_cast"] = sample.rays_cast;
    report["rays_retained"] = sample.rays_retained;
    ctx.write_report("medial_report.json", report);
    return 0;
}

// ---- covering ----

int cmd_covering(const CommonArgs& args) {
    RunContext ctx = make_context(args, "covering", {"mu", "eps", "eta_list", "rays"});
    const CompactShape shape = ctx.shape();
    const double mu = ctx.config.value("mu", 0.3);
    const double eps = ctx.config.value("eps", 0.1);
    const std::size_t rays = ctx.config.value("rays", ctx.samples);
    if (!ctx.config.contains("eta_list")) throw InputError("config needs \"eta_list\"");
    std::vector<double> etas;
    for (const json& e : ctx.config["eta_list"]) etas.push_back(e.get<double>());

    const CoveringScaling scaling =
        covering_scaling_experiment(shape, mu, eps, etas, rays, ctx.seed);
    if (!scaling.all_stabilized)
        std::cerr << "warning: covering counts not stabilized at this ray budget\n";

    std::vector<CsvRow> rows;
    for (const CoveringRow& r : scaling.rows)
        rows.push_back({format_double(r.eta), std::to_string(r.count),
                        std::to_string(r.count_half_budget),
                        r.stabilized ? "1" : "0"});
    write_csv((ctx.out_dir / "covering.csv").string(), ctx.csv_comments(),
              {"eta", "count", "count_half_budget", "stabilized"}, rows);

    json report = ctx.report_header();
    report["slope"] = scaling.slope;
    report["all_stabilized"] = scaling.all_stabilized;
    report["retained_samples"] = scaling.retained;
    report["rays"] = scaling.rays;
    ctx.write_report("covering_report.json", report);
    return 0;
}

// ---- boundary ----

int cmd_boundary(const CommonArgs& args) {
    RunContext ctx = make_context(args, "boundary", {"region"});
    const CompactShape shape = ctx.shape();
    if (!ctx.config.contains("region")) throw InputError("config needs \"region\"");
    const json& reg = ctx.config["region"];
    require_keys(reg, {"box", "offset"}, "region");
    Region region;
    if (reg.contains("box"))
        region = Region::box_region(json_to_box(reg["box"], "region.box"));
    else if (reg.contains("offset"))
        region = Region::offset_region(reg["offset"].get<double>());
    else
        throw InputError("region: needs \"box\" or \"offset\"");

    const DiscreteMeasure m = boundary_measure(shape, region, ctx.samples, ctx.seed);
    write_measure_csv((ctx.out_dir / "measure.csv").string(), m, ctx.seed);

    json report = ctx.report_header();
    report["total_mass"] = m.total();
    report["atoms"] = m.atoms.size();
    ctx.write_report("boundary_report.json", report);
    return 0;
}

// ---- curvature ----

int cmd_curvature(const CommonArgs& args) {
    RunContext ctx = make_context(args, "curvature", {"r_grid", "grid_points", "regions"});
    const CompactShape shape = ctx.shape();

    RegionScheme scheme{RegionScheme::Kind::Global};
    const std::string regions = ctx.config.value("regions", std::string("global"));
    if (regions == "global")
        scheme.kind = RegionScheme::Kind::Global;
    else if (regions == "cloud_points")
        scheme.kind = RegionScheme::Kind::CloudPoints;
    else if (regions == "box_strata")
        scheme.kind = RegionScheme::Kind::BoxStrata;
    else
        throw InputError("regions: expected global | cloud_points | box_strata");

    std::vector<double> grid;
    if (ctx.config.contains("r_grid")) {
        for (const json& r : ctx.config["r_grid"]) grid.push_back(r.get<double>());
    } else {
        grid = default_r_grid(shape, ctx.config.value("grid_points", std::size_t{0}));
    }

    const CurvatureFit fit = steiner_fit(shape, scheme, grid, ctx.samples, ctx.seed);

    json report = ctx.report_header();
    report["reach_used"] = is_infinite(fit.reach_used) ? json("inf") : json(fit.reach_used);
    report["r_grid"] = fit.r_grid;
    report["samples_per_r"] = fit.samples_per_r;
    report["normalization"] =
        "phi[i] = c[i] / omega_{d-i}, omega_k = volume of the unit ball in R^k; "
        "raw coefficients c are reported unscaled";
    json regions_out = json::array();
    for (std::size_t reg = 0; reg < fit.region_names.size(); ++reg) {
        json r;
        r["name"] = fit.region_names[reg];
        r["coefficients"] = fit.coeffs[reg];
        r["phi"] = fit.phi[reg];
        r["residual_rms"] = fit.residual_rms[reg];
        r["masses"] = fit.masses[reg];
        regions_out.push_back(std::move(r));
    }
    report["regions"] = std::move(regions_out);
    ctx.write_report("curvature.json", report);
    return 0;
}

// ---- stability ----

int cmd_stability(const CommonArgs& args) {
    RunContext ctx = make_context(
        args, "stability",
        {"shape2", "L", "R", "region", "medial_budget", "mu_points", "eps_points", "rays"});
    const CompactShape k = ctx.shape();
    const CompactShape kp = ctx.shape("shape2");

    const double diam = bounding_diameter(k);
    Box region(Point(k.dim()), Point(k.dim()));
    if (ctx.config.contains("region")) {
        region = json_to_box(ctx.config["region"], "region");
    } else {
        Box b = k.bounding_box();
        const Box b2 = kp.bounding_box();
        b.expand_to(b2.lo);
        b.expand_to(b2.hi);
        region = b.inflated(0.5 * diam);
    }

    const double L = ctx.config.value("L", 0.25 * diam);
    double R = ctx.config.value("R", -1.0);
    if (R <= 0.0) {
        // upper bound of sup over the region of the distance to K
        Point center(k.dim());
        for (int i = 0; i < k.dim(); ++i) center[i] = 0.5 * (region.lo[i] + region.hi[i]);
        R = distance(k, center) + 0.5 * region.diameter();
    }
    const std::size_t medial_budget = ctx.config.value("medial_budget", std::size_t{40000});

    const double delta = hausdorff(k, kp);
    const McEstimate l1 = l1_projection_distance(k, kp, region, ctx.samples, ctx.seed);
    const DeltaLResult dl = delta_L_measure(k, kp, L, region, ctx.samples, ctx.seed);
    if (l1.ties_discarded > ctx.samples / 100 || dl.tie_fraction > 0.01)
        std::cerr << "warning: tie fraction above 1%, degenerate configuration\n";

    json report = ctx.report_header();
    report["delta_hausdorff"] = delta;
    report["L"] = L;
    report["R"] = R;
    report["l1_projection"] = l1.value;
    report["l1_stderr"] = l1.stderr_;
    report["l1_accepted"] = l1.accepted;
    report["delta_L_measure"] = dl.measure.value;
    report["delta_L_stderr"] = dl.measure.stderr_;
    report["delta_L_witnesses"] = dl.witnesses.size();
    report["tie_fraction"] = dl.tie_fraction;

    const InclusionCheck inc =
        check_delta_inclusion(k, kp, L, R, dl.witnesses, medial_budget, ctx.seed + 1);
    json inc_j;
    inc_j["mu_lemma"] = inc.mu_lemma;
    inc_j["mu_used"] = inc.mu_used;
    inc_j["mu_exceeds_one"] = inc.mu_exceeds_one;
    inc_j["tolerance"] = inc.tolerance;
    inc_j["net_resolution"] = inc.resolution;
    inc_j["checked"] = inc.checked;
    inc_j["violations"] = inc.violations;
    inc_j["medial_samples"] = inc.medial_samples;
    report["delta_inclusion"] = std::move(inc_j);

    const double mu_pts = ctx.config.value("mu_points", 0.8);
    const double eps_pts = ctx.config.value("eps_points", 0.05 * diam);
    const std::size_t rays = ctx.config.value("rays", std::size_t{4000});
    const MedialSample pts = sample_mu_medial(k, mu_pts, eps_pts, rays, ctx.seed + 2);
    const CriticalStabilityCheck crit =
        check_critical_stability(k, kp, pts.points, medial_budget, ctx.seed + 3);
    json crit_j;
    crit_j["eps_hausdorff"] = crit.eps;
    crit_j["checked"] = crit.checked;
    crit_j["violations"] = crit.violations;
    crit_j["net_resolution"] = crit.resolution;
    crit_j["mu_slack"] = crit.mu_slack;
    crit_j["medial_samples"] = crit.medial_samples;
    report["critical_stability"] = std::move(crit_j);

    ctx.write_report("stability_report.json", report);

    // witness samples for plotting
    CsvRow header;
    for (int i = 0; i < k.dim(); ++i) header.push_back("x" + std::to_string(i + 1));
    std::vector<CsvRow> rows;
    for (const Point& w : dl.witnesses) {
        CsvRow row;
        for (int i = 0; i < k.dim(); ++i) row.push_back(format_double(w[i]));
        rows.push_back(std::move(row));
    }
    write_csv((ctx.out_dir / "delta_witnesses.csv").string(), ctx.csv_comments(), header, rows);
    return 0;
}

// ---- holder ----

int cmd_holder(const CommonArgs& args) {
    RunContext ctx = make_context(args, "holder", {"delta_list", "trials", "region"});
    const CompactShape shape = ctx.shape();
    if (!shape.is_cloud()) throw InputError("holder: shape must be a cloud");
    const PointCloud& cloud = shape.as_cloud().cloud;

    std::vector<double> deltas;
    if (ctx.config.contains("delta_list"))
        for (const json& d : ctx.config["delta_list"]) deltas.push_back(d.get<double>());
    else
        deltas = {0.1, 0.03, 0.01, 0.003};
    const std::size_t trials = ctx.config.value("trials", std::size_t{3});

    Box region(Point(shape.dim()), Point(shape.dim()));
    if (ctx.config.contains("region"))
        region = json_to_box(ctx.config["region"], "region");
    else
        region = shape.bounding_box().inflated(0.5 * (1.0 + bounding_diameter(shape)));

    const HolderCurve curve =
        holder_experiment(cloud, region, deltas, trials, ctx.samples, ctx.seed);
    if (!curve.monotone) std::cerr << "warning: curve not monotone beyond noise\n";

    std::vector<CsvRow> rows;
    for (const HolderPoint& p : curve.points)
        rows.push_back({format_double(p.delta_nominal), format_double(p.delta_exact),
                        format_double(p.l1), format_double(p.stderr_)});
    write_csv((ctx.out_dir / "holder_curve.csv").string(), ctx.csv_comments(),
              {"delta_nominal", "delta_exact", "l1", "stderr"}, rows);

    json report = ctx.report_header();
    report["h_emp"] = curve.h_emp;
    report["h_ref"] = curve.h_ref;
    report["monotone"] = curve.monotone;
    ctx.write_report("holder.json", report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometric-inference experiments: distance fields, medial axes, "
                 "boundary and curvature measures, stability checks"};
    app.require_subcommand(1);

    CommonArgs args;
    int (*run)(const CommonArgs&) = nullptr;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", args.config_path, "JSON config file")->required();
        sub->add_option("--out", args.out_dir, "output directory (overrides config)");
        sub->add_option("--seed", args.seed, "RNG seed (overrides config)")
            ->each([&args](const std::string&) { args.seed_set = true; });
        sub->add_option("--samples", args.samples, "sample budget (overrides config)")
            ->each([&args](const std::string&) { args.samples_set = true; });
        sub->add_option("--workers", args.workers, "worker threads (0 = all cores)");
    };

    struct SubSpec {
        const char* name;
        const char* help;
        int (*fn)(const CommonArgs&);
    };
    const SubSpec subs[] = {
        {"dist", "distance and criticality over a query grid or file", cmd_dist},
        {"medial", "sample the mu-medial axis", cmd_medial},
        {"covering", "covering-number scaling of the sampled mu-medial axis", cmd_covering},
        {"boundary", "Monte Carlo boundary measure", cmd_boundary},
        {"curvature", "tube-formula polynomial fit and curvature masses", cmd_curvature},
        {"stability", "projection stability checks for a pair of clouds", cmd_stability},
        {"holder", "projection L1 distance under shrinking perturbations", cmd_holder},
    };
    for (const SubSpec& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        add_common(sub);
        sub->callback([&run, &s]() { run = s.fn; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        return run(args);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
