#pragma once

#include "tdaboot/bootstrap.hpp"
#include "tdaboot/pointcloud.hpp"
#include "tdaboot/random.hpp"
#include "tdaboot/statistics.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace tdaboot {

enum class DistributionId { F1 = 1, F2, F3, F4, F5, F6, F7 };

std::string to_string(DistributionId id);
DistributionId parse_distribution(const std::string& name);
std::size_t distribution_dim(DistributionId id);

/// Centers of the five F5 clusters.
inline constexpr std::array<std::array<double, 3>, 5> kClusterCenters{{
    {0.38741799, 0.24263535, 0.09535272},
    {0.25147839, 0.63824409, 0.62425101},
    {0.73988542, 0.80749034, 0.84972394},
    {0.26811913, 0.35911205, 0.08316547},
    {0.65954757, 0.04704809, 0.02113341},
}};

/// n iid draws. F1/F2: theta * R^{pS} with p = .9/.55; F3: circle + N(0,.04);
/// F4: unit ball + N(0,.01); F5: clusters + Exp(rate 25); F6: S^2 in R^5 +
/// Cauchy(.1); F7: figure-8 in R^10 + N(0,.04). Variances, not deviations.
PointCloud generate(DistributionId id, std::size_t n, Rng& rng);

Sampler sampler_for(DistributionId id);

struct MeanEstimate {
    StatisticValue mean;
    StatisticValue standard_error;
    std::size_t samples = 0;
};

/// Average of the statistic over N_truth fresh samples of size n; sample i
/// uses stream (seed, i).
MeanEstimate true_mean_estimate(DistributionId id, std::size_t n, const Statistic& stat, std::size_t N_truth,
                                std::uint64_t seed);
MeanEstimate true_mean_estimate(DistributionId id, std::size_t n, const StatisticSpec& spec, std::size_t N_truth,
                                std::uint64_t seed);

struct CoverageResult {
    std::string distribution;
    std::string spec;
    std::size_t n = 0;
    std::size_t N = 0;
    std::size_t B = 0;
    std::string selector;
    double level = 0.0;
    std::size_t covered = 0;
    double coverage = 0.0;
    std::uint64_t seed = 0;
};

/// For each of N base samples (stream (config.seed, i)), bootstraps with seed
/// derived from (config.seed, i), forms the pointwise band at config.level and
/// records whether it holds `truth` in every coordinate.
CoverageResult coverage_experiment(DistributionId id, const StatisticSpec& spec, std::size_t n, std::size_t N,
                                   const BootstrapConfig& config, const StatisticValue& truth);

void write_coverage_header(std::ostream& out);
void write_coverage_row(std::ostream& out, const CoverageResult& r);

} // namespace tdaboot
