#pragma once

#include "tdaboot/persistence.hpp"
#include "tdaboot/pointcloud.hpp"
#include "tdaboot/statistics.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tdaboot {

enum class Method { smoothed, standard };
enum class BandwidthRule { silverman, adaptive };
enum class BandKind { pointwise, simultaneous, both };
enum class IntervalType { basic, percentile };

std::string to_string(Method m);
std::string to_string(BandwidthRule b);
std::string to_string(BandKind k);
std::string to_string(IntervalType t);
Method parse_method(const std::string& s);
BandwidthRule parse_bandwidth(const std::string& s);
BandKind parse_band_kind(const std::string& s);
IntervalType parse_interval(const std::string& s);

struct BootstrapConfig {
    std::size_t replicates = 200;
    std::optional<std::size_t> resample_size;  ///< defaults to n
    Method method = Method::smoothed;
    BandwidthRule bandwidth = BandwidthRule::silverman;
    double level = 0.95;
    BandKind band = BandKind::both;
    IntervalType interval = IntervalType::basic;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Any statistic of a cloud; it is responsible for its own rescaling.
using Statistic = std::function<StatisticValue(const PointCloud&)>;

Statistic as_statistic(const StatisticSpec& spec);

struct BootstrapDistribution {
    /// values[b][j] = (psi_j(X*_b) - replicate_means[j]) / sqrt(m).
    std::vector<std::vector<double>> values;
    StatisticValue replicate_means;
    StatisticValue point_estimate;
    std::size_t n = 0;
    std::size_t m = 0;
    /// Distinct base points per replicate over n (standard bootstrap only).
    std::vector<double> unique_fractions;

    std::size_t replicates() const noexcept { return values.size(); }
    std::size_t dimension() const noexcept { return point_estimate.size(); }
    std::vector<double> column(std::size_t j) const;
};

BootstrapDistribution smoothed_bootstrap(const PointCloud& cloud, const Statistic& stat, const BootstrapConfig& config);
BootstrapDistribution smoothed_bootstrap(const PointCloud& cloud, const StatisticSpec& spec,
                                         const BootstrapConfig& config);
BootstrapDistribution standard_bootstrap(const PointCloud& cloud, const Statistic& stat, const BootstrapConfig& config);
BootstrapDistribution standard_bootstrap(const PointCloud& cloud, const StatisticSpec& spec,
                                         const BootstrapConfig& config);
/// Dispatches on config.method.
BootstrapDistribution run_bootstrap(const PointCloud& cloud, const Statistic& stat, const BootstrapConfig& config);

/// Resample of `base` with replacement; `indices` receives the chosen rows.
PointCloud standard_resample(const PointCloud& base, Rng& rng, std::vector<std::size_t>* indices = nullptr);

/// Distinct rows of `base` present in `resample`, over the size of `base`.
double unique_fraction(const PointCloud& resample, const PointCloud& base);

/// Drops repeated rows, keeping first occurrences.
PointCloud deduplicate(const PointCloud& cloud);

struct ConfidenceBand {
    BandKind kind = BandKind::pointwise;
    std::vector<double> lower;
    std::vector<double> upper;
    std::optional<double> multiplier;  ///< simultaneous critical value

    bool contains(std::span<const double> x) const;
};

/// Type-7 sample quantile of unsorted data.
double quantile(std::vector<double> data, double p);

/// Band for E psi at base size n. Replicate columns estimate the law of
/// (psi - E psi)/sqrt(n), so deviations are scaled back up by sqrt(n).
/// Pointwise: basic interval per coordinate. Simultaneous: studentized
/// max-statistic band, widened to contain the pointwise band.
ConfidenceBand confidence_band(const BootstrapDistribution& dist, std::size_t n, double level, BandKind kind,
                               IntervalType interval = IntervalType::basic);

/// Univariate 2-Wasserstein distance between empirical measures.
double w2_empirical(std::span<const double> u, std::span<const double> v);

/// (1 - e^{-1})^{1/d}: rescaling that matches a standard-bootstrap resample's
/// effective sample size.
double standard_bootstrap_correction(std::size_t dim);

/// Multiplies every birth and death by `factor`.
PersistenceDiagram rescale_diagram(const PersistenceDiagram& diagram, double factor);

} // namespace tdaboot
