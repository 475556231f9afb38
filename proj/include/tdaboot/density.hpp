#pragma once

#include "tdaboot/pointcloud.hpp"
#include "tdaboot/random.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace tdaboot {

/// Gaussian product-kernel density estimate with per-dimension bandwidths h_j
/// and per-center factors lambda_i; center i uses widths lambda_i * h_j.
class KernelDensityEstimate {
public:
    KernelDensityEstimate(PointCloud centers, std::vector<double> bandwidth,
                          std::vector<double> local_factors = {});

    const PointCloud& centers() const noexcept { return centers_; }
    const std::vector<double>& bandwidth() const noexcept { return bandwidth_; }
    const std::vector<double>& local_factors() const noexcept { return factors_; }
    std::size_t dim() const noexcept { return centers_.dim(); }

    double evaluate(std::span<const double> x) const;

    /// Draw i picks a center uniformly and adds kernel noise, all from stream
    /// (seed, i), so output does not depend on the thread count.
    PointCloud sample(std::size_t m, std::uint64_t seed) const;
    PointCloud sample(std::size_t m, Rng& rng) const { return sample(m, rng.next_seed()); }

private:
    PointCloud centers_;
    std::vector<double> bandwidth_;
    std::vector<double> factors_;
};

/// Normal-reference rule h_j = (4/(d+2))^{1/(d+4)} n^{-1/(d+4)} sd_j.
std::vector<double> silverman_bandwidth(const PointCloud& cloud);

/// Square-root law lambda_i = (g / pilot(X_i))^{1/2}, g the geometric mean of
/// the pilot values at the centers.
std::vector<double> adaptive_bandwidth(const PointCloud& cloud, const KernelDensityEstimate& pilot);

KernelDensityEstimate fit_silverman(const PointCloud& cloud);
/// Adaptive estimate with a Silverman pilot.
KernelDensityEstimate fit_adaptive(const PointCloud& cloud);

double kde_evaluate(const KernelDensityEstimate& kde, std::span<const double> x);
PointCloud kde_sample(const KernelDensityEstimate& kde, std::size_t m, Rng& rng);

/// Tensor grid for trapezoid quadrature: `points` nodes per axis on [lo_j, hi_j].
struct QuadratureGrid {
    std::vector<double> lo;
    std::vector<double> hi;
    std::size_t points = 256;
};

using Density = std::function<double(std::span<const double>)>;

/// (integral |f_hat - f|^p)^{1/p} by the trapezoid rule, d <= 3, p >= 2.
double lp_error(const KernelDensityEstimate& kde, const Density& truth, double p, const QuadratureGrid& grid);

} // namespace tdaboot
