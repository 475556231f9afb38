// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers as
// arguments to run a subset.

#include "cli.hpp"
#include "oracles.hpp"

#include "tdaboot/bootstrap.hpp"
#include "tdaboot/bounded_homology.hpp"
#include "tdaboot/complex.hpp"
#include "tdaboot/density.hpp"
#include "tdaboot/parallel.hpp"
#include "tdaboot/persistence.hpp"
#include "tdaboot/simulation.hpp"
#include "tdaboot/statistics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

using namespace tdaboot;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

std::string str(double x) {
    std::ostringstream s;
    s.precision(4);
    s << x;
    return s.str();
}

PointCloud uniform_cloud(Rng& rng, std::size_t n, std::size_t d, double side) {
    PointCloud c(d);
    std::vector<double> p(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& x : p) x = side * rng.uniform();
        c.add_point(p);
    }
    return c;
}

// Reference levels are edge lengths; the library's r is half the edge length.
StatisticSpec table2_loops(double r, double s) {
    StatisticSpec spec;
    spec.q = 1;
    spec.pairs = {{r / 2.0, s / 2.0}};
    spec.scale_by_n = true;
    return spec;
}

// Corpus shared by criteria 1 and 2: complete filtrations of small clouds.
std::vector<PointCloud> small_corpus() {
    std::mt19937_64 gen(20240601);
    std::vector<PointCloud> out;
    for (int t = 0; t < 300; ++t) out.push_back(oracle::random_cloud(gen, 3 + t % 6, 2 + t % 2));
    return out;
}

const std::vector<double> kGrid{0.0, 0.1, 0.2, 0.35, 0.5};

Outcome criterion1() {
    std::size_t checks = 0, mismatches = 0;
    for (const auto& cloud : small_corpus()) {
        const auto c = build_vr(cloud, 0.5, std::max<int>(2, static_cast<int>(cloud.size()) - 2));
        const auto d = compute_diagram(c);
        const auto ref = oracle::vr(cloud, 0.5, 3);
        for (int q = 0; q <= 2; ++q)
            for (double r : kGrid)
                for (double s : kGrid) {
                    if (r > s) continue;
                    const auto a = persistent_betti(d, q, r, s);
                    ++checks;
                    if (a != persistent_betti_direct(c, q, r, s) || a != oracle::persistent_betti(ref, q, r, s))
                        ++mismatches;
                }
    }
    return {mismatches == 0, std::to_string(checks) + " queries on 300 clouds, " + std::to_string(mismatches) +
                                 " mismatches"};
}

Outcome criterion2() {
    std::size_t checks = 0, failures = 0;
    for (const auto& cloud : small_corpus()) {
        const auto c = build_vr(cloud, 0.5, std::max<int>(2, static_cast<int>(cloud.size()) - 2));
        const auto d = compute_diagram(c);
        for (double r : kGrid) {
            long long alt = 0;
            for (int k = 0; k <= c.max_dim(); ++k)
                alt += (k % 2 ? -1 : 1) * static_cast<long long>(persistent_betti(d, k, r, r));
            ++checks;
            failures += euler_characteristic(c, r) != alt;
        }
    }
    return {failures == 0, std::to_string(checks) + " levels, " + std::to_string(failures) + " failures"};
}

Outcome criterion3() {
    Rng rng(303);
    std::size_t checks = 0, violations = 0;
    for (int t = 0; t < 100; ++t) {
        const auto S = uniform_cloud(rng, 10, 2, 1.0);
        const auto z = uniform_cloud(rng, 1, 2, 1.0);
        const auto J = build_vr(S, 0.4, 1);
        const auto K = build_vr(S.with_point(z.point(0)), 0.4, 1);
        for (int q = 0; q <= 1; ++q)
            for (auto [r, s] : {std::pair{0.1, 0.2}, std::pair{0.2, 0.3}, std::pair{0.25, 0.4}}) {
                checks += 2;
                violations += !geometric_lemma_check(J, K, q, r, s).passed;
                violations += !bounded_geometric_lemma_check(J, K, q, 0.5, r, s).passed;
            }
    }
    return {violations == 0, "100 pairs, " + std::to_string(checks) + " checks, " + std::to_string(violations) +
                                 " violations"};
}

Outcome criterion4() {
    std::mt19937_64 gen(404);
    const std::vector<double> bounds{0.0, 0.2, 0.35, 0.5, 0.7, 1.5};
    std::size_t checks = 0, mismatches = 0;
    for (int t = 0; t < 100; ++t) {
        const auto cloud = oracle::random_cloud(gen, 4 + t % 4, 2);
        const auto c = build_vr(cloud, 0.45, 1);
        for (double B : bounds) {
            const auto want = oracle::bounded_exhaustive(cloud, 1, B, 0.35, 0.45);
            ++checks;
            mismatches += bounded_cycle_space(c, 1, B, 0.35).dimension() != want.cycles ||
                          bounded_boundary_space(c, 1, B, 0.45).dimension() != want.boundaries ||
                          bounded_persistent_betti(c, 1, B, 0.35, 0.45) != want.betti;
        }
    }
    return {mismatches == 0, std::to_string(checks) + " (cloud, B) cases, " + std::to_string(mismatches) +
                                 " mismatches"};
}

Outcome criterion5() {
    StatisticSpec bounded;
    bounded.family = Family::bounded_persistent_betti;
    bounded.q = 1;
    bounded.bound = 0.5;
    bounded.pairs = {{0.08, 0.09}};
    StatisticSpec trunc;
    trunc.family = Family::truncated_euler;
    trunc.q = 1;
    trunc.pairs = {{0.3, 0.3}};
    Rng rng(505);
    std::size_t violations = 0, moved = 0;
    double worst_b = 0.0, worst_t = 0.0;
    for (int t = 0; t < 200; ++t) {
        const auto S = uniform_cloud(rng, 60, 2, 0.8);
        const auto zc = uniform_cloud(rng, 1, 2, 0.8);
        const std::vector<double> z(zc.point(0).begin(), zc.point(0).end());
        const double rb = empirical_stabilization_radius(bounded, S, z, breakpoint_grid(S, z));
        // A sparser cloud keeps the level-0.3 complexes small.
        const auto S2 = uniform_cloud(rng, 30, 2, 2.5);
        const auto z2c = uniform_cloud(rng, 1, 2, 2.5);
        const std::vector<double> z2(z2c.point(0).begin(), z2c.point(0).end());
        const double rt = empirical_stabilization_radius(trunc, S2, z2, breakpoint_grid(S2, z2));
        violations += (rb > 2.0 * 0.5) + (rt > 2.0 * 0.3);
        moved += rb > 0.0;
        worst_b = std::max(worst_b, rb);
        worst_t = std::max(worst_t, rt);
    }
    return {violations == 0, "200 trials each; max radius " + str(worst_b) + " (bound 1, " + std::to_string(moved) +
                                 " trials with a nonzero radius), " + str(worst_t) + " (bound 0.6); " +
                                 std::to_string(violations) + " violations"};
}

Outcome criterion6() {
    Rng rng(606);
    const auto base = generate(DistributionId::F3, 10000, rng);
    double mean = 0.0;
    for (int b = 0; b < 50; ++b) {
        auto rb = Rng::stream(606, b);
        mean += unique_fraction(standard_resample(base, rb), base) / 50.0;
    }
    StatisticSpec loops;
    loops.q = 1;
    loops.pairs = {{0.1, 0.15}, {0.15, 0.25}};
    const auto small = generate(DistributionId::F3, 80, rng);
    std::size_t same = 0;
    for (int t = 0; t < 50; ++t) {
        auto rt = Rng::stream(607, t);
        const auto rs = standard_resample(small, rt);
        same += evaluate(loops, rs) == evaluate(loops, deduplicate(rs));
    }
    const bool ok = std::abs(mean - 0.6321) <= 0.01 && same == 50;
    return {ok, "mean unique fraction " + str(mean) + "; duplicate invariance " + std::to_string(same) + "/50"};
}

Outcome coverage(DistributionId id, double r, double s, double target) {
    const auto spec = table2_loops(r, s);
    Rng root(7);
    const auto truth_seed = root.next_seed();
    BootstrapConfig cfg;
    cfg.replicates = 200;
    cfg.level = 0.95;
    cfg.seed = root.next_seed();
    const auto truth = true_mean_estimate(id, 200, spec, 2000, truth_seed);
    const auto res = coverage_experiment(id, spec, 200, 150, cfg, truth.mean);
    return {std::abs(res.coverage - target) <= 0.08,
            to_string(id) + " coverage " + str(res.coverage) + " (reference " + str(target) + ")"};
}

Outcome criterion7() {
    const auto f3 = coverage(DistributionId::F3, 3.03, 3.28, 0.903);
    const auto f2 = coverage(DistributionId::F2, 5.20, 5.60, 0.954);
    return {f3.passed && f2.passed, f3.detail + "; " + f2.detail};
}

// Centered, 1/sqrt(n)-scaled Monte Carlo law of the statistic.
std::vector<double> truth_law(std::size_t n, const StatisticSpec& spec, std::uint64_t seed) {
    const std::size_t N = 2000;
    std::vector<double> v(N);
    parallel_for(N, [&](std::size_t i) {
        Rng rng = Rng::stream(seed, i);
        v[i] = evaluate(spec, generate(DistributionId::F3, n, rng))[0];
    });
    double mean = 0.0;
    for (double x : v) mean += x / static_cast<double>(N);
    for (auto& x : v) x = (x - mean) / std::sqrt(static_cast<double>(n));
    return v;
}

struct GapRun {
    std::vector<double> smoothed400, standard400, smoothed100;
};

const GapRun& gap_run() {
    static const GapRun run = [] {
        GapRun g;
        const auto spec = table2_loops(3.03, 3.28);
        const auto law400 = truth_law(400, spec, 801);
        const auto law100 = truth_law(100, spec, 802);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            BootstrapConfig cfg;
            cfg.replicates = 200;
            cfg.seed = 9000 + seed;
            auto r400 = Rng::stream(803, seed), r100 = Rng::stream(804, seed);
            const auto x400 = generate(DistributionId::F3, 400, r400);
            const auto x100 = generate(DistributionId::F3, 100, r100);
            g.smoothed400.push_back(w2_empirical(smoothed_bootstrap(x400, spec, cfg).column(0), law400));
            g.standard400.push_back(w2_empirical(standard_bootstrap(x400, spec, cfg).column(0), law400));
            g.smoothed100.push_back(w2_empirical(smoothed_bootstrap(x100, spec, cfg).column(0), law100));
        }
        return g;
    }();
    return run;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x / static_cast<double>(v.size());
    return s;
}

Outcome criterion8() {
    const auto& g = gap_run();
    std::size_t wins = 0;
    for (std::size_t i = 0; i < 20; ++i) wins += g.smoothed400[i] < g.standard400[i];
    return {wins >= 16, "smoothed closer in " + std::to_string(wins) + "/20 seeds; mean W2 smoothed " +
                            str(mean_of(g.smoothed400)) + ", standard " + str(mean_of(g.standard400))};
}

Outcome criterion9() {
    const auto& g = gap_run();
    std::size_t wins = 0;
    for (std::size_t i = 0; i < 20; ++i) wins += g.smoothed400[i] < g.smoothed100[i];
    return {wins >= 14, "n=400 gap below n=100 gap in " + std::to_string(wins) + "/20 seeds; mean W2 " +
                            str(mean_of(g.smoothed400)) + " vs " + str(mean_of(g.smoothed100))};
}

Outcome criterion10() {
    const Density truth = [](std::span<const double> x) {
        return std::exp(-0.5 * x[0] * x[0]) / std::sqrt(2.0 * std::numbers::pi);
    };
    const QuadratureGrid grid{{-7.0}, {7.0}, 512};
    std::vector<double> medians;
    for (std::size_t n : {100, 400, 1600}) {
        std::vector<double> errs;
        for (std::uint64_t rep = 0; rep < 20; ++rep) {
            Rng rng = Rng::stream(1010 + n, rep);
            PointCloud c(1);
            for (std::size_t i = 0; i < n; ++i) c.add_point(std::vector<double>{rng.normal()});
            errs.push_back(lp_error(fit_silverman(c), truth, 2.0, grid));
        }
        std::sort(errs.begin(), errs.end());
        medians.push_back(0.5 * (errs[9] + errs[10]));
    }
    return {medians[0] > medians[1] && medians[1] > medians[2],
            "median L2 errors " + str(medians[0]) + ", " + str(medians[1]) + ", " + str(medians[2])};
}

Outcome criterion11() {
    unsetenv("TDABOOT_THREADS");
    const auto dir = std::filesystem::temp_directory_path() / "tdaboot_acceptance";
    std::filesystem::create_directories(dir);
    auto simulate = [&](const std::string& threads) {
        const auto path = (dir / ("coverage_" + threads + ".csv")).string();
        std::ostringstream out, err;
        const int code = cli::run({"simulate", "--dist", "F3", "--stat", "pbn", "--q", "1", "--pairs", "3.03:3.28",
                                   "--convention", "diameter", "--n", "100", "--reps", "20", "--boot", "50",
                                   "--truth-samples", "200", "--seed", "11", "--threads", threads, "--out", path},
                                  out, err);
        std::ifstream in(path, std::ios::binary);
        return std::pair{code, std::string(std::istreambuf_iterator<char>(in), {})};
    };
    const auto one = simulate("1");
    const auto eight = simulate("8");
    const bool ok = one.first == 0 && eight.first == 0 && !one.second.empty() && one.second == eight.second;
    return {ok, ok ? "identical " + std::to_string(one.second.size()) + "-byte CSVs" : "outputs differ"};
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                         criterion5, criterion6, criterion7, criterion8,
                                                         criterion9, criterion10, criterion11};
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!wanted.empty() && !wanted.count(id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "criterion " << id << ": " << (o.passed ? "PASS" : "FAIL") << " - " << o.detail << " ["
                  << str(secs) << "s]" << std::endl;
        all = all && o.passed;
    }
    return all ? 0 : 1;
}
