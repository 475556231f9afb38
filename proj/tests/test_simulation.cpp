#include "tdaboot/errors.hpp"
#include "tdaboot/simulation.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace tdaboot;

namespace {

double norm(std::span<const double> p, std::size_t k) {
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += p[j] * p[j];
    return std::sqrt(s);
}

// Ring loops at the F3 levels, taken as edge lengths.
StatisticSpec ring_loops() {
    StatisticSpec spec;
    spec.q = 1;
    spec.pairs = {{1.515, 1.64}};
    spec.scale_by_n = true;
    return spec;
}

// Centered, 1/sqrt(n)-scaled statistic values over fresh samples.
std::vector<double> truth_law(const Sampler& sampler, std::size_t n, const StatisticSpec& spec, std::size_t N,
                              std::uint64_t seed) {
    std::vector<double> v(N);
    double mean = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        Rng rng = Rng::stream(seed, i);
        v[i] = evaluate(spec, sampler(n, rng))[0];
        mean += v[i] / static_cast<double>(N);
    }
    for (auto& x : v) x = (x - mean) / std::sqrt(static_cast<double>(n));
    return v;
}

} // namespace

TEST_CASE("distribution names and dimensions") {
    const std::size_t dims[] = {2, 2, 2, 3, 3, 5, 10};
    for (int i = 1; i <= 7; ++i) {
        const auto id = parse_distribution("F" + std::to_string(i));
        CHECK(to_string(id) == "F" + std::to_string(i));
        CHECK(distribution_dim(id) == dims[i - 1]);
        Rng rng(i);
        CHECK(generate(id, 5, rng).dim() == dims[i - 1]);
    }
    CHECK_THROWS_AS(parse_distribution("F8"), InvalidArgument);
    Rng rng(0);
    CHECK_THROWS_AS(generate(DistributionId::F1, 0, rng), InvalidArgument);
}

TEST_CASE("generators are deterministic") {
    for (int i = 1; i <= 7; ++i) {
        Rng a(42), b(42);
        const auto id = static_cast<DistributionId>(i);
        const auto x = generate(id, 50, a), y = generate(id, 50, b);
        for (std::size_t p = 0; p < 50; ++p) CHECK(std::ranges::equal(x.point(p), y.point(p)));
    }
}

TEST_CASE("ring radius") {
    Rng rng(1);
    const auto c = generate(DistributionId::F3, 10000, rng);
    double mean = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) mean += norm(c.point(i), 2) / 10000.0;
    CHECK(mean >= 0.9);
    CHECK(mean <= 1.1);
}

TEST_CASE("heavy-centre radii") {
    Rng rng(2);
    const auto f1 = generate(DistributionId::F1, 10000, rng);
    std::size_t outside = 0;
    for (std::size_t i = 0; i < f1.size(); ++i) outside += norm(f1.point(i), 2) > 1.0;
    CHECK(std::abs(outside / 10000.0 - 0.5) < 0.02);

    // Below radius 1 the radius is R^p, so P(|X| < t) = t^{1/p} / 2 and the
    // planar density behaves like |x|^{1/p - 2}. The larger power (F1) gives
    // the sharper spike at the origin.
    Rng r1(3), r2(3);
    const std::size_t n = 1000000;
    const auto a = generate(DistributionId::F1, n, r1);
    const auto b = generate(DistributionId::F2, n, r2);
    std::size_t near1 = 0, near2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        near1 += norm(a.point(i), 2) < 0.01;
        near2 += norm(b.point(i), 2) < 0.01;
    }
    for (auto [count, power] : {std::pair{near1, 0.9}, std::pair{near2, 0.55}}) {
        const double p = 0.5 * std::pow(0.01, 1.0 / power);
        CHECK(std::abs(count - n * p) < 4.0 * std::sqrt(n * p * (1.0 - p)));
    }
    CHECK(near1 > near2);
}

TEST_CASE("ball, clusters, sphere and figure eight") {
    Rng rng(4);
    const auto ball = generate(DistributionId::F4, 5000, rng);
    std::size_t inside = 0;
    for (std::size_t i = 0; i < ball.size(); ++i) inside += norm(ball.point(i), 3) < 1.3;
    CHECK(inside > 4900);

    CHECK(kClusterCenters[0][0] == 0.38741799);
    CHECK(kClusterCenters[0][1] == 0.24263535);
    CHECK(kClusterCenters[0][2] == 0.09535272);
    const auto cl = generate(DistributionId::F5, 5000, rng);
    std::vector<std::size_t> hits(5, 0);
    double excess = 0.0;
    for (std::size_t i = 0; i < cl.size(); ++i) {
        // Noise is nonnegative, so the owning centre is below in every coordinate.
        std::size_t best = 5;
        double gap = 1e9;
        for (std::size_t c = 0; c < 5; ++c) {
            bool below = true;
            double g = 0.0;
            for (std::size_t j = 0; j < 3; ++j) {
                const double e = cl.point(i)[j] - kClusterCenters[c][j];
                below = below && e >= 0.0;
                g += e;
            }
            if (below && g < gap) {
                gap = g;
                best = c;
            }
        }
        REQUIRE(best < 5);
        ++hits[best];
        excess += gap / (3.0 * cl.size());
    }
    for (auto h : hits) CHECK(h > 800);
    CHECK(excess == doctest::Approx(0.04).epsilon(0.1));

    const auto sph = generate(DistributionId::F6, 5000, rng);
    std::vector<double> dev;
    for (std::size_t i = 0; i < sph.size(); ++i) dev.push_back(std::abs(norm(sph.point(i), 3) - 1.0));
    std::nth_element(dev.begin(), dev.begin() + 2500, dev.end());
    CHECK(dev[2500] < 0.25);

    const auto eight = generate(DistributionId::F7, 5000, rng);
    std::size_t left = 0;
    for (std::size_t i = 0; i < eight.size(); ++i) left += eight.point(i)[0] < 0.0;
    CHECK(std::abs(left / 5000.0 - 0.5) < 0.03);
}

TEST_CASE("truth estimates") {
    const Statistic constant = [](const PointCloud&) { return StatisticValue{7.0, -2.0}; };
    const auto c = true_mean_estimate(DistributionId::F3, 10, constant, 100, 1);
    CHECK(c.mean == StatisticValue{7.0, -2.0});
    CHECK(c.standard_error == StatisticValue{0.0, 0.0});
    CHECK_THROWS_AS(true_mean_estimate(DistributionId::F3, 10, constant, 99, 1), InvalidArgument);

    const Statistic first = [](const PointCloud& p) { return StatisticValue{p.point(0)[0]}; };
    const auto small = true_mean_estimate(DistributionId::F3, 5, first, 1000, 2);
    const auto large = true_mean_estimate(DistributionId::F3, 5, first, 4000, 3);
    CHECK(small.standard_error[0] / large.standard_error[0] == doctest::Approx(2.0).epsilon(0.2));

    const auto a = true_mean_estimate(DistributionId::F3, 200, ring_loops(), 200, 11);
    const auto b = true_mean_estimate(DistributionId::F3, 200, ring_loops(), 200, 12);
    const double se = std::hypot(a.standard_error[0], b.standard_error[0]);
    CHECK(std::abs(a.mean[0] - b.mean[0]) <= 3.0 * se);
}

TEST_CASE("coverage responds to level and to a shifted truth") {
    StatisticSpec spec;
    spec.family = Family::knn_length;
    spec.k = 1;
    spec.scale_by_n = true;
    const auto truth = true_mean_estimate(DistributionId::F3, 50, spec, 400, 5);
    BootstrapConfig cfg;
    cfg.replicates = 60;
    cfg.seed = 21;
    cfg.level = 0.5;
    const auto low = coverage_experiment(DistributionId::F3, spec, 50, 40, cfg, truth.mean);
    cfg.level = 0.99;
    const auto high = coverage_experiment(DistributionId::F3, spec, 50, 40, cfg, truth.mean);
    CHECK(low.coverage <= high.coverage);
    CHECK(low.coverage < 1.0);
    CHECK(high.coverage == doctest::Approx(static_cast<double>(high.covered) / 40));

    const double spread = truth.standard_error[0] * std::sqrt(400.0);
    const auto off = coverage_experiment(DistributionId::F3, spec, 50, 40, cfg,
                                         StatisticValue{truth.mean[0] + 10.0 * spread});
    CHECK(off.coverage < 0.05);

    const auto again = coverage_experiment(DistributionId::F3, spec, 50, 40, cfg, truth.mean);
    CHECK(again.covered == high.covered);
}

TEST_CASE("coverage CSV") {
    CoverageResult r;
    r.distribution = "F3";
    r.spec = "persistent_betti/vr/q1@1.515:1.64";
    r.n = 200;
    r.N = 150;
    r.B = 200;
    r.selector = "silverman";
    r.level = 0.95;
    r.covered = 129;
    r.coverage = 0.86;
    r.seed = 7;
    std::ostringstream out;
    write_coverage_header(out);
    write_coverage_row(out, r);
    CHECK(out.str() ==
          "dist,spec,n,N,B,selector,level,coverage,seed\n"
          "F3,persistent_betti/vr/q1@1.515:1.64,200,150,200,silverman,0.95,0.86,7\n");
}

TEST_CASE("bootstrap law is closer to its own truth than to a wrong model") {
    const Sampler square = [](std::size_t n, Rng& rng) {
        PointCloud c(2);
        for (std::size_t i = 0; i < n; ++i)
            c.add_point(std::vector<double>{2.4 * rng.uniform() - 1.2, 2.4 * rng.uniform() - 1.2});
        return c;
    };
    const std::size_t n = 200;
    Rng rng(31);
    const auto cloud = generate(DistributionId::F3, n, rng);
    BootstrapConfig cfg;
    cfg.seed = 32;
    const auto a = smoothed_bootstrap(cloud, ring_loops(), cfg).column(0);
    cfg.seed = 33;
    const auto b = smoothed_bootstrap(cloud, ring_loops(), cfg).column(0);
    const auto wrong = truth_law(square, n, ring_loops(), 500, 34);
    CHECK(w2_empirical(a, b) < w2_empirical(a, wrong));
}
