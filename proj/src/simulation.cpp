#include "tdaboot/simulation.hpp"

#include "tdaboot/errors.hpp"
#include "tdaboot/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace tdaboot {

std::string to_string(DistributionId id) { return "F" + std::to_string(static_cast<int>(id)); }

DistributionId parse_distribution(const std::string& name) {
    if (name.size() == 2 && (name[0] == 'F' || name[0] == 'f') && name[1] >= '1' && name[1] <= '7')
        return static_cast<DistributionId>(name[1] - '0');
    throw InvalidArgument("unknown distribution '" + name + "'");
}

std::size_t distribution_dim(DistributionId id) {
    switch (id) {
    case DistributionId::F1:
    case DistributionId::F2:
    case DistributionId::F3: return 2;
    case DistributionId::F4:
    case DistributionId::F5: return 3;
    case DistributionId::F6: return 5;
    case DistributionId::F7: return 10;
    }
    throw InvalidArgument("unknown distribution");
}

namespace {

void unit_direction(Rng& rng, double* out, std::size_t d) {
    double norm = 0.0;
    do {
        norm = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            out[j] = rng.normal();
            norm += out[j] * out[j];
        }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (std::size_t j = 0; j < d; ++j) out[j] /= norm;
}

void draw(DistributionId id, Rng& rng, std::vector<double>& p) {
    std::fill(p.begin(), p.end(), 0.0);
    switch (id) {
    case DistributionId::F1:
    case DistributionId::F2: {
        const double power = id == DistributionId::F1 ? 0.9 : 0.55;
        unit_direction(rng, p.data(), 2);
        const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        const double R = 1.0 - rng.uniform();  // (0, 1]
        const double rad = std::pow(R, power * sign);
        p[0] *= rad;
        p[1] *= rad;
        break;
    }
    case DistributionId::F3:
        unit_direction(rng, p.data(), 2);
        for (auto& x : p) x += 0.2 * rng.normal();
        break;
    case DistributionId::F4: {
        unit_direction(rng, p.data(), 3);
        const double rad = std::cbrt(rng.uniform());
        for (auto& x : p) x = x * rad + 0.1 * rng.normal();
        break;
    }
    case DistributionId::F5: {
        const auto& c = kClusterCenters[rng.index(kClusterCenters.size())];
        std::exponential_distribution<double> expo(25.0);
        for (std::size_t j = 0; j < 3; ++j) p[j] = c[j] + expo(rng);
        break;
    }
    case DistributionId::F6:
        unit_direction(rng, p.data(), 3);
        for (auto& x : p) x += 0.1 * std::tan(std::numbers::pi * (rng.uniform() - 0.5));
        break;
    case DistributionId::F7: {
        unit_direction(rng, p.data(), 2);
        p[0] += rng.uniform() < 0.5 ? -1.0 : 1.0;
        for (auto& x : p) x += 0.2 * rng.normal();
        break;
    }
    }
}

} // namespace

PointCloud generate(DistributionId id, std::size_t n, Rng& rng) {
    if (n < 1) throw InvalidArgument("sample size must be at least 1");
    const auto d = distribution_dim(id);
    PointCloud out(d);
    out.reserve(n);
    std::vector<double> p(d);
    for (std::size_t i = 0; i < n; ++i) {
        draw(id, rng, p);
        out.add_point(p);
    }
    return out;
}

Sampler sampler_for(DistributionId id) {
    return [id](std::size_t n, Rng& rng) { return generate(id, n, rng); };
}

MeanEstimate true_mean_estimate(DistributionId id, std::size_t n, const Statistic& stat, std::size_t N_truth,
                                std::uint64_t seed) {
    if (N_truth < 100) throw InvalidArgument("truth estimate needs at least 100 samples");
    std::vector<StatisticValue> vals(N_truth);
    parallel_for(N_truth, [&](std::size_t i) {
        Rng rng = Rng::stream(seed, i);
        vals[i] = stat(generate(id, n, rng));
    });
    const std::size_t k = vals.front().size();
    MeanEstimate out;
    out.samples = N_truth;
    out.mean.assign(k, 0.0);
    out.standard_error.assign(k, 0.0);
    for (const auto& v : vals)
        for (std::size_t j = 0; j < k; ++j) out.mean[j] += v[j];
    for (auto& m : out.mean) m /= static_cast<double>(N_truth);
    for (const auto& v : vals)
        for (std::size_t j = 0; j < k; ++j) out.standard_error[j] += (v[j] - out.mean[j]) * (v[j] - out.mean[j]);
    for (auto& s : out.standard_error)
        s = std::sqrt(s / static_cast<double>(N_truth - 1)) / std::sqrt(static_cast<double>(N_truth));
    return out;
}

MeanEstimate true_mean_estimate(DistributionId id, std::size_t n, const StatisticSpec& spec, std::size_t N_truth,
                                std::uint64_t seed) {
    return true_mean_estimate(id, n, as_statistic(spec), N_truth, seed);
}

CoverageResult coverage_experiment(DistributionId id, const StatisticSpec& spec, std::size_t n, std::size_t N,
                                   const BootstrapConfig& config, const StatisticValue& truth) {
    if (N < 1) throw InvalidArgument("coverage experiment needs at least one replication");
    config.validate();
    if (truth.size() != spec.dimension()) throw InvalidArgument("truth has the wrong dimension");
    const auto stat = as_statistic(spec);
    std::vector<char> hit(N, 0);
    parallel_for(N, [&](std::size_t i) {
        Rng rng = Rng::stream(config.seed, i);
        const auto base = generate(id, n, rng);
        BootstrapConfig local = config;
        local.seed = rng.next_seed();
        const auto dist = run_bootstrap(base, stat, local);
        const auto band = confidence_band(dist, n, config.level, BandKind::pointwise, config.interval);
        hit[i] = band.contains(truth) ? 1 : 0;
    });
    CoverageResult r;
    r.distribution = to_string(id);
    r.spec = spec.label();
    r.n = n;
    r.N = N;
    r.B = config.replicates;
    r.selector = config.method == Method::smoothed ? to_string(config.bandwidth) : "standard";
    r.level = config.level;
    r.covered = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
    r.coverage = static_cast<double>(r.covered) / static_cast<double>(N);
    r.seed = config.seed;
    return r;
}

void write_coverage_header(std::ostream& out) { out << "dist,spec,n,N,B,selector,level,coverage,seed\n"; }

void write_coverage_row(std::ostream& out, const CoverageResult& r) {
    const auto old = out.precision(15);
    out << r.distribution << ',' << r.spec << ',' << r.n << ',' << r.N << ',' << r.B << ',' << r.selector << ','
        << r.level << ',' << r.coverage << ',' << r.seed << '\n';
    out.precision(old);
}

} // namespace tdaboot
