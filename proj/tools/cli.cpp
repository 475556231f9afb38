#include "cli.hpp"

#include "tdaboot/bootstrap.hpp"
#include "tdaboot/complex.hpp"
#include "tdaboot/errors.hpp"
#include "tdaboot/parallel.hpp"
#include "tdaboot/simulation.hpp"
#include "tdaboot/statistics.hpp"
#include "tdaboot/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace tdaboot::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StatArgs {
    std::string stat = "pbn";
    std::string complex = "vr";
    int q = 1;
    std::vector<std::string> pairs;
    std::string grid;
    double bound = -1.0;
    int k = 1;
    bool undirected = false;
    bool no_scale = false;
    std::string convention = "radius";
};

void add_stat_options(CLI::App* app, StatArgs& a) {
    app->add_option("--stat", a.stat, "pbn | betti | euler | truncated-euler | bounded-pbn | knn")
        ->capture_default_str();
    app->add_option("--complex", a.complex, "vr | cech")->capture_default_str();
    app->add_option("--q", a.q, "homological dimension")->capture_default_str();
    app->add_option("--pairs", a.pairs, "query levels r:s, comma separated or repeated")->delimiter(',');
    app->add_option("--grid", a.grid, "single levels lo:hi:count (linear, inclusive)");
    app->add_option("--bound", a.bound, "diameter bound B for bounded-pbn");
    app->add_option("--k", a.k, "neighbour count for knn")->capture_default_str();
    app->add_flag("--undirected", a.undirected, "undirected kNN graph");
    app->add_flag("--no-scale", a.no_scale, "skip the n^(1/d) rescaling");
    app->add_option("--convention", a.convention,
                    "radius: levels are ball radii; diameter: levels are edge lengths (halved internally)")
        ->capture_default_str();
}

double parse_number(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw UsageError("bad number '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw UsageError("bad number '" + s + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

std::vector<std::pair<double, double>> parse_pairs(const std::vector<std::string>& items) {
    std::vector<std::pair<double, double>> out;
    for (const auto& item : items) {
        const auto parts = split(item, ':');
        if (parts.size() != 2) throw UsageError("pair '" + item + "' is not of the form r:s");
        out.emplace_back(parse_number(parts[0]), parse_number(parts[1]));
    }
    return out;
}

std::vector<double> parse_grid(const std::string& g) {
    const auto parts = split(g, ':');
    if (parts.size() != 3) throw UsageError("grid '" + g + "' is not of the form lo:hi:count");
    const double lo = parse_number(parts[0]), hi = parse_number(parts[1]);
    const double cnt = parse_number(parts[2]);
    if (cnt < 1 || cnt != std::floor(cnt) || hi < lo) throw UsageError("grid needs lo <= hi and a positive count");
    const auto count = static_cast<std::size_t>(cnt);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return out;
}

/// The spec plus the query levels as the user wrote them.
struct ParsedStat {
    StatisticSpec spec;
    std::vector<std::pair<double, double>> user_levels;
};

ParsedStat make_spec(const StatArgs& a) {
    ParsedStat p;
    auto& spec = p.spec;
    try {
        spec.family = parse_family(a.stat == "truncated-euler" ? "truncated_euler" : a.stat);
        spec.complex = parse_complex_kind(a.complex);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    if (a.convention != "radius" && a.convention != "diameter")
        throw UsageError("--convention must be radius or diameter");
    spec.q = a.q;
    spec.scale_by_n = !a.no_scale;
    if (spec.family == Family::knn_length) {
        if (!a.pairs.empty() || !a.grid.empty()) throw UsageError("knn takes no --pairs or --grid");
        spec.k = a.k;
        spec.directed = !a.undirected;
    } else {
        if (!a.pairs.empty() && !a.grid.empty()) throw UsageError("give either --pairs or --grid, not both");
        if (!a.grid.empty()) {
            p.user_levels = StatisticSpec::level_grid(parse_grid(a.grid));
        } else {
            p.user_levels = parse_pairs(a.pairs);
        }
        if (p.user_levels.empty())
            throw UsageError("--" + std::string(spec.family == Family::persistent_betti ||
                                                        spec.family == Family::bounded_persistent_betti
                                                    ? "pairs"
                                                    : "grid") +
                             " is required for " + a.stat);
        const double f = a.convention == "diameter" ? 0.5 : 1.0;
        for (auto [r, s] : p.user_levels) spec.pairs.emplace_back(f * r, f * s);
        if (spec.family == Family::bounded_persistent_betti) {
            if (a.bound < 0.0) throw UsageError("--bound is required for bounded-pbn");
            spec.bound = a.bound;
        } else if (a.bound >= 0.0) {
            throw UsageError("--bound only applies to bounded-pbn");
        }
    }
    try {
        spec.validate();
    } catch (const InvalidSpec& e) {
        throw UsageError(e.what());
    }
    return p;
}

json spec_json(const ParsedStat& p, const StatArgs& a) {
    const auto& s = p.spec;
    json j;
    j["family"] = to_string(s.family);
    j["complex"] = to_string(s.complex);
    j["q"] = s.q;
    json levels = json::array();
    for (auto [r, t] : p.user_levels) levels.push_back({r, t});
    j["pairs"] = levels;
    j["convention"] = a.convention;
    if (s.bound) j["bound"] = *s.bound;
    if (s.family == Family::knn_length) {
        j["k"] = s.k;
        j["directed"] = s.directed;
    }
    j["scale_by_n"] = s.scale_by_n;
    return j;
}

std::string spec_tag(const ParsedStat& p) {
    std::string tag = p.spec.label();
    for (std::size_t i = 0; i < p.user_levels.size(); ++i) {
        std::ostringstream o;
        o.precision(15);
        o << (i == 0 ? "@" : ";") << p.user_levels[i].first << ':' << p.user_levels[i].second;
        tag += o.str();
    }
    return tag;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
}

json manifest(const std::string& command, const std::vector<std::string>& argv, json parameters, std::uint64_t seed,
              double seconds, const std::vector<std::string>& outputs) {
    json m;
    m["command"] = command;
    m["argv"] = argv;
    m["parameters"] = std::move(parameters);
    m["seed"] = seed;
    m["version"] = kVersion;
    m["wall_clock_seconds"] = seconds;
    m["outputs"] = outputs;
    return m;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream o;
    o.precision(17);
    o << v;
    return o.str();
}

struct AnalyzeArgs {
    std::string input;
    std::string out = ".";
    double level = 0.95;
    std::size_t replicates = 500;
    std::size_t resample = 0;
    std::string bandwidth = "silverman";
    std::string method = "smoothed";
    std::string band = "both";
    std::string interval = "basic";
    std::uint64_t seed = 0;
};

int cmd_analyze(const AnalyzeArgs& a, const StatArgs& sa, const std::vector<std::string>& argv, std::ostream& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto parsed = make_spec(sa);
    BootstrapConfig cfg;
    try {
        cfg.replicates = a.replicates;
        if (a.resample > 0) cfg.resample_size = a.resample;
        cfg.method = parse_method(a.method);
        cfg.bandwidth = parse_bandwidth(a.bandwidth);
        cfg.band = parse_band_kind(a.band);
        cfg.interval = parse_interval(a.interval);
        cfg.level = a.level;
        cfg.seed = a.seed;
        cfg.validate();
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }

    const auto cloud = load_csv(a.input);
    const auto dist = run_bootstrap(cloud, as_statistic(parsed.spec), cfg);
    const std::size_t n = cloud.size();
    const bool want_pw = cfg.band != BandKind::simultaneous;
    const bool want_sim = cfg.band != BandKind::pointwise;
    const auto pw = confidence_band(dist, n, cfg.level, BandKind::pointwise, cfg.interval);
    std::optional<ConfidenceBand> sim;
    if (want_sim) sim = confidence_band(dist, n, cfg.level, BandKind::simultaneous, cfg.interval);

    json res;
    res["spec"] = spec_json(parsed, sa);
    json c;
    c["replicates"] = cfg.replicates;
    c["resample_size"] = dist.m;
    c["method"] = to_string(cfg.method);
    c["bandwidth"] = to_string(cfg.bandwidth);
    c["level"] = cfg.level;
    c["band"] = to_string(cfg.band);
    c["interval"] = to_string(cfg.interval);
    c["n"] = n;
    c["dim"] = cloud.dim();
    res["config"] = c;
    res["point_estimate"] = dist.point_estimate;
    json quant;
    const double alpha = 1.0 - cfg.level;
    for (double p : {alpha / 2.0, 0.5, 1.0 - alpha / 2.0}) {
        std::vector<double> qs;
        for (std::size_t j = 0; j < dist.dimension(); ++j) qs.push_back(quantile(dist.column(j), p));
        quant[fmt(p)] = qs;
    }
    res["replicate_quantiles"] = quant;
    auto band_json = [](const ConfidenceBand& b) {
        json arr = json::array();
        for (std::size_t j = 0; j < b.lower.size(); ++j) arr.push_back({{"lower", b.lower[j]}, {"upper", b.upper[j]}});
        return arr;
    };
    json bands;
    bands["pointwise"] = want_pw ? band_json(pw) : json::array();
    bands["simultaneous"] = sim ? band_json(*sim) : json::array();
    if (sim && sim->multiplier) bands["simultaneous_multiplier"] = *sim->multiplier;
    res["bands"] = bands;
    res["seed"] = cfg.seed;

    std::ostringstream curve;
    curve.precision(17);
    curve << "r,estimate,pw_lo,pw_hi,sim_lo,sim_hi\n";
    for (std::size_t j = 0; j < dist.dimension(); ++j) {
        const double r = parsed.user_levels.empty() ? 0.0 : parsed.user_levels[j].first;
        curve << r << ',' << dist.point_estimate[j] << ',';
        if (want_pw)
            curve << pw.lower[j] << ',' << pw.upper[j];
        else
            curve << ',';
        curve << ',';
        if (sim)
            curve << sim->lower[j] << ',' << sim->upper[j];
        else
            curve << ',';
        curve << '\n';
    }

    const std::filesystem::path dir(a.out);
    const auto result_path = (dir / "result.json").string();
    const auto curve_path = (dir / "curve.csv").string();
    write_file(result_path, res.dump(2) + "\n");
    write_file(curve_path, curve.str());
    json params = {{"input", a.input}, {"spec", res["spec"]}, {"config", res["config"]}};
    write_file(dir / "manifest.json",
               manifest("analyze", argv, params, cfg.seed, elapsed(t0), {result_path, curve_path}).dump(2) + "\n");
    out << "wrote " << result_path << " and " << curve_path << "\n";
    return kOk;
}

struct SimulateArgs {
    std::string dist;
    std::size_t n = 200;
    std::size_t reps = 150;
    std::size_t boot = 200;
    std::uint64_t seed = 0;
    double level = 0.95;
    std::string bandwidth = "silverman";
    std::string method = "smoothed";
    std::size_t truth_samples = 2000;
    std::string out;
};

int cmd_simulate(const SimulateArgs& a, const StatArgs& sa, const std::vector<std::string>& argv, std::ostream& out) {
    const auto t0 = std::chrono::steady_clock::now();
    if (a.reps < 1) throw UsageError("--reps must be at least 1");
    if (a.boot < 2) throw UsageError("--boot must be at least 2");
    if (a.n < 2) throw UsageError("--n must be at least 2");
    if (a.truth_samples < 100) throw UsageError("--truth-samples must be at least 100");
    DistributionId id;
    try {
        id = parse_distribution(a.dist);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    const auto parsed = make_spec(sa);
    BootstrapConfig cfg;
    try {
        cfg.replicates = a.boot;
        cfg.level = a.level;
        cfg.bandwidth = parse_bandwidth(a.bandwidth);
        cfg.method = parse_method(a.method);
        cfg.validate();
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    Rng root(a.seed);
    const std::uint64_t truth_seed = root.next_seed();
    cfg.seed = root.next_seed();

    const auto truth = true_mean_estimate(id, a.n, parsed.spec, a.truth_samples, truth_seed);
    auto res = coverage_experiment(id, parsed.spec, a.n, a.reps, cfg, truth.mean);
    res.spec = spec_tag(parsed);
    res.seed = a.seed;

    std::ostringstream csv;
    write_coverage_header(csv);
    write_coverage_row(csv, res);
    if (a.out.empty()) {
        out << csv.str();
    } else {
        write_file(a.out, csv.str());
        json params = {{"dist", a.dist},       {"spec", spec_json(parsed, sa)},
                       {"n", a.n},             {"reps", a.reps},
                       {"boot", a.boot},       {"level", a.level},
                       {"bandwidth", a.bandwidth}, {"method", a.method},
                       {"truth_samples", a.truth_samples}, {"truth_mean", truth.mean},
                       {"truth_se", truth.standard_error}};
        write_file(a.out + ".manifest.json",
                   manifest("simulate", argv, params, a.seed, elapsed(t0), {a.out}).dump(2) + "\n");
        out << "wrote " << a.out << "\n";
    }
    return kOk;
}

struct DiagnoseArgs {
    std::string check;
    std::size_t n = 0;
    std::size_t trials = 200;
    std::size_t resamples = 50;
    std::string dist = "F3";
    std::uint64_t seed = 1;
    double r = 0.5;
    std::size_t clouds = 20;
    std::size_t points = 12;
    std::string out;
};

json witness_json(const ConditionCheck& c) {
    json j;
    j["passed"] = c.passed;
    j["checks"] = c.checks;
    if (c.witness) {
        j["witness"] = {{"cloud", c.witness->cloud_index},
                        {"point", c.witness->point_index},
                        {"simplex", c.witness->simplex},
                        {"r", c.witness->r},
                        {"detail", c.witness->detail}};
    }
    return j;
}

int cmd_diagnose(const DiagnoseArgs& a, StatArgs sa, const std::vector<std::string>& argv, std::ostream& out) {
    const auto t0 = std::chrono::steady_clock::now();
    json rep;
    rep["check"] = a.check;
    if (a.check == "unique-fraction") {
        const std::size_t n = a.n ? a.n : 10000;
        Rng rng(a.seed);
        const auto base = generate(DistributionId::F3, n, rng);
        double total = 0.0;
        std::vector<double> fractions;
        for (std::size_t b = 0; b < a.resamples; ++b) {
            Rng rb = Rng::stream(a.seed, b);
            std::vector<std::size_t> idx;
            standard_resample(base, rb, &idx);
            std::sort(idx.begin(), idx.end());
            const auto distinct = std::unique(idx.begin(), idx.end()) - idx.begin();
            fractions.push_back(static_cast<double>(distinct) / static_cast<double>(n));
            total += fractions.back();
        }
        rep["n"] = n;
        rep["resamples"] = a.resamples;
        rep["mean_unique_fraction"] = total / static_cast<double>(a.resamples);
        rep["expected"] = 1.0 - std::pow(1.0 - 1.0 / static_cast<double>(n), static_cast<double>(n));
        rep["limit"] = 1.0 - std::exp(-1.0);
        rep["fractions"] = fractions;
    } else if (a.check == "radii") {
        if (sa.stat == "pbn") sa.stat = "bounded-pbn";
        const bool bounded = sa.stat == "bounded-pbn";
        if (!bounded && sa.stat != "truncated-euler") throw UsageError("radii check supports bounded-pbn or truncated-euler");
        if (bounded && sa.bound < 0.0) sa.bound = 1.0;
        if (sa.pairs.empty() && sa.grid.empty()) {
            if (bounded)
                sa.pairs = {fmt(0.4 * sa.bound) + ":" + fmt(0.6 * sa.bound)};
            else
                sa.pairs = {fmt(a.r) + ":" + fmt(a.r)};
        }
        sa.no_scale = true;
        const auto parsed = make_spec(sa);
        DistributionId id;
        try {
            id = parse_distribution(a.dist);
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
        const double constant = bounded ? 2.0 * *parsed.spec.bound : 2.0 * parsed.spec.pairs.front().first;
        std::vector<double> L;
        for (int i = 0; i <= 12; ++i) L.push_back(constant * 1.5 * i / 12.0);
        const std::size_t n = a.n ? a.n : 40;
        const auto tail = stabilization_tail(parsed.spec, sampler_for(id), n, L, a.trials, a.seed);
        const double worst = *std::max_element(tail.radii.begin(), tail.radii.end());
        const auto violations = std::count_if(tail.radii.begin(), tail.radii.end(),
                                               [&](double r) { return r > constant; });
        rep["spec"] = spec_json(parsed, sa);
        rep["dist"] = a.dist;
        rep["n"] = n;
        rep["trials"] = a.trials;
        rep["constant"] = constant;
        rep["max_radius"] = worst;
        rep["violations"] = violations;
        rep["all_within"] = violations == 0;
        rep["L"] = tail.L;
        rep["tail"] = tail.tail;
    } else if (a.check == "conditions") {
        ComplexKind kind;
        try {
            kind = parse_complex_kind(sa.complex);
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
        if (a.clouds < 1 || a.points < 2) throw UsageError("need at least one cloud of two points");
        std::vector<PointCloud> clouds;
        for (std::size_t c = 0; c < a.clouds; ++c) {
            Rng rng = Rng::stream(a.seed, c);
            PointCloud pc(2);
            for (std::size_t i = 0; i < a.points; ++i) pc.add_point(std::vector<double>{rng.uniform(), rng.uniform()});
            clouds.push_back(std::move(pc));
        }
        const std::vector<double> grid{0.05, 0.1, 0.2, 0.3, 0.5};
        ComplexBuilder builder = [kind](const PointCloud& pc, double r_max, int q_max) {
            return kind == ComplexKind::vr ? build_vr(pc, r_max, q_max) : build_cech(pc, r_max, q_max);
        };
        const auto report = verify_complex_conditions(builder, clouds, grid, 1);
        rep["complex"] = sa.complex;
        rep["clouds"] = a.clouds;
        rep["points"] = a.points;
        rep["r_grid"] = grid;
        rep["K1"] = witness_json(report.k1);
        rep["K2"] = witness_json(report.k2);
        rep["D1"] = witness_json(report.d1);
        rep["D2"] = witness_json(report.d2);
        rep["all_passed"] = report.all_passed();
    } else {
        throw UsageError("--check must be radii, conditions or unique-fraction");
    }
    rep["seed"] = a.seed;
    const std::string text = rep.dump(2) + "\n";
    if (a.out.empty()) {
        out << text;
    } else {
        write_file(a.out, text);
        write_file(a.out + ".manifest.json",
                   manifest("diagnose", argv, rep, a.seed, elapsed(t0), {a.out}).dump(2) + "\n");
        out << "wrote " << a.out << "\n";
    }
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bootstrap confidence intervals for stabilizing statistics of point clouds", "tdaboot"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    std::size_t threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = all cores; TDABOOT_THREADS overrides)");

    StatArgs sa_an, sa_sim, sa_diag;
    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "bootstrap a statistic of an input cloud");
    analyze->add_option("--input", an.input, "CSV point cloud")->required()->check(CLI::ExistingFile);
    add_stat_options(analyze, sa_an);
    analyze->add_option("--out", an.out, "output directory")->capture_default_str();
    analyze->add_option("--level", an.level, "coverage level")->capture_default_str();
    analyze->add_option("--replicates", an.replicates, "bootstrap replicates")->capture_default_str();
    analyze->add_option("--resample-size", an.resample, "resample size m (default n)");
    analyze->add_option("--bandwidth", an.bandwidth, "silverman | adaptive")->capture_default_str();
    analyze->add_option("--method", an.method, "smoothed | standard")->capture_default_str();
    analyze->add_option("--band", an.band, "pointwise | simultaneous | both")->capture_default_str();
    analyze->add_option("--interval", an.interval, "basic | percentile")->capture_default_str();
    analyze->add_option("--seed", an.seed, "RNG seed")->capture_default_str();
    analyze->add_option("--threads", threads, "worker threads");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "coverage experiment on a reference distribution");
    simulate->add_option("--dist", sim.dist, "F1 .. F7")->required();
    add_stat_options(simulate, sa_sim);
    simulate->add_option("--n", sim.n, "base sample size")->capture_default_str();
    simulate->add_option("--reps", sim.reps, "base samples N")->capture_default_str();
    simulate->add_option("--boot", sim.boot, "bootstrap replicates B")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "RNG seed")->required();
    simulate->add_option("--level", sim.level, "coverage level")->capture_default_str();
    simulate->add_option("--bandwidth", sim.bandwidth, "silverman | adaptive")->capture_default_str();
    simulate->add_option("--method", sim.method, "smoothed | standard")->capture_default_str();
    simulate->add_option("--truth-samples", sim.truth_samples, "samples for the true mean")->capture_default_str();
    simulate->add_option("--out", sim.out, "coverage CSV path (default stdout)");
    simulate->add_option("--threads", threads, "worker threads");

    DiagnoseArgs dg;
    auto* diagnose = app.add_subcommand("diagnose", "stabilization, complex-condition and resampling diagnostics");
    diagnose->add_option("--check", dg.check, "radii | conditions | unique-fraction")->required();
    add_stat_options(diagnose, sa_diag);
    diagnose->add_option("--n", dg.n, "sample size");
    diagnose->add_option("--trials", dg.trials, "Monte Carlo trials (radii)")->capture_default_str();
    diagnose->add_option("--resamples", dg.resamples, "resamples (unique-fraction)")->capture_default_str();
    diagnose->add_option("--dist", dg.dist, "sampling distribution (radii)")->capture_default_str();
    diagnose->add_option("--r", dg.r, "level for truncated-euler radii")->capture_default_str();
    diagnose->add_option("--clouds", dg.clouds, "trial clouds (conditions)")->capture_default_str();
    diagnose->add_option("--points", dg.points, "points per trial cloud (conditions)")->capture_default_str();
    diagnose->add_option("--seed", dg.seed, "RNG seed")->capture_default_str();
    diagnose->add_option("--out", dg.out, "output JSON path (default stdout)");
    diagnose->add_option("--threads", threads, "worker threads");

    std::string manifest_path;
    auto* replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
    replay->add_option("--manifest", manifest_path, "manifest JSON")->required()->check(CLI::ExistingFile);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kOk;
    } catch (const CLI::Success&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        set_thread_count(threads);
        if (*analyze) return cmd_analyze(an, sa_an, args, out);
        if (*simulate) return cmd_simulate(sim, sa_sim, args, out);
        if (*diagnose) return cmd_diagnose(dg, sa_diag, args, out);
        std::ifstream f(manifest_path);
        const auto m = json::parse(f);
        if (!m.contains("argv") || !m["argv"].is_array()) throw Error("manifest has no argv");
        const auto recorded = m["argv"].get<std::vector<std::string>>();
        if (!recorded.empty() && recorded.front() == "replay") throw UsageError("manifest records a replay");
        return run(recorded, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
}

} // namespace tdaboot::cli
