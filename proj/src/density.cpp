#include "tdaboot/density.hpp"

#include "tdaboot/errors.hpp"

#include <cmath>
#include <numbers>

namespace tdaboot {

KernelDensityEstimate::KernelDensityEstimate(PointCloud centers, std::vector<double> bandwidth,
                                             std::vector<double> local_factors)
    : centers_(std::move(centers)), bandwidth_(std::move(bandwidth)), factors_(std::move(local_factors)) {
    if (centers_.empty()) throw EmptyInput("density estimate needs at least one center");
    if (bandwidth_.size() != centers_.dim()) throw InvalidArgument("one bandwidth per dimension required");
    for (double h : bandwidth_)
        if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("bandwidths must be positive");
    if (factors_.empty()) factors_.assign(centers_.size(), 1.0);
    if (factors_.size() != centers_.size()) throw InvalidArgument("one local factor per center required");
    for (double l : factors_)
        if (!(l > 0.0) || !std::isfinite(l)) throw InvalidArgument("local factors must be positive");
}

double KernelDensityEstimate::evaluate(std::span<const double> x) const {
    if (x.size() != dim()) throw InvalidArgument("evaluation point has the wrong dimension");
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    double total = 0.0;
    for (std::size_t i = 0; i < centers_.size(); ++i) {
        const auto c = centers_.point(i);
        double log_k = 0.0, scale = 1.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double w = factors_[i] * bandwidth_[j];
            const double u = (x[j] - c[j]) / w;
            log_k -= 0.5 * u * u;
            scale *= norm / w;
        }
        total += scale * std::exp(log_k);
    }
    return total / static_cast<double>(centers_.size());
}

PointCloud KernelDensityEstimate::sample(std::size_t m, std::uint64_t seed) const {
    if (m < 1) throw InvalidArgument("sample size must be at least 1");
    PointCloud out(dim());
    out.reserve(m);
    std::vector<double> p(dim());
    for (std::size_t i = 0; i < m; ++i) {
        Rng rng = Rng::stream(seed, i);
        const auto c = rng.index(centers_.size());
        const auto center = centers_.point(c);
        for (std::size_t j = 0; j < p.size(); ++j) p[j] = center[j] + factors_[c] * bandwidth_[j] * rng.normal();
        out.add_point(p);
    }
    return out;
}

std::vector<double> silverman_bandwidth(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    if (n < 2) throw InsufficientData("Silverman bandwidth needs at least two points");
    const auto d = static_cast<double>(cloud.dim());
    const double factor = std::pow(4.0 / (d + 2.0), 1.0 / (d + 4.0)) * std::pow(static_cast<double>(n), -1.0 / (d + 4.0));
    std::vector<double> h(cloud.dim());
    for (std::size_t j = 0; j < cloud.dim(); ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += cloud.point(i)[j];
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) ss += (cloud.point(i)[j] - mean) * (cloud.point(i)[j] - mean);
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        if (!(sd > 0.0)) throw DegenerateData("coordinate " + std::to_string(j) + " has zero variance");
        h[j] = factor * sd;
    }
    return h;
}

std::vector<double> adaptive_bandwidth(const PointCloud& cloud, const KernelDensityEstimate& pilot) {
    if (cloud.empty()) throw EmptyInput("adaptive bandwidth needs points");
    std::vector<double> logf(cloud.size());
    double mean_log = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const double f = pilot.evaluate(cloud.point(i));
        if (!(f > 0.0)) throw DegeneratePilot("pilot density vanishes at center " + std::to_string(i));
        logf[i] = std::log(f);
        mean_log += logf[i];
    }
    mean_log /= static_cast<double>(cloud.size());
    std::vector<double> lambda(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) lambda[i] = std::exp(0.5 * (mean_log - logf[i]));
    return lambda;
}

KernelDensityEstimate fit_silverman(const PointCloud& cloud) {
    return KernelDensityEstimate(cloud, silverman_bandwidth(cloud));
}

KernelDensityEstimate fit_adaptive(const PointCloud& cloud) {
    const auto pilot = fit_silverman(cloud);
    return KernelDensityEstimate(cloud, pilot.bandwidth(), adaptive_bandwidth(cloud, pilot));
}

double kde_evaluate(const KernelDensityEstimate& kde, std::span<const double> x) { return kde.evaluate(x); }

PointCloud kde_sample(const KernelDensityEstimate& kde, std::size_t m, Rng& rng) { return kde.sample(m, rng); }

double lp_error(const KernelDensityEstimate& kde, const Density& truth, double p, const QuadratureGrid& grid) {
    if (!(p >= 2.0)) throw InvalidArgument("Lp error is defined here for p >= 2");
    const std::size_t d = grid.lo.size();
    if (d == 0 || d > 3 || grid.hi.size() != d) throw InvalidArgument("quadrature grid must have 1 to 3 axes");
    if (d != kde.dim()) throw InvalidArgument("quadrature grid dimension mismatch");
    if (grid.points < 2) throw InvalidArgument("quadrature needs at least two nodes per axis");
    std::vector<double> step(d);
    for (std::size_t j = 0; j < d; ++j) {
        if (!(grid.hi[j] > grid.lo[j])) throw InvalidArgument("quadrature axis has zero length");
        step[j] = (grid.hi[j] - grid.lo[j]) / static_cast<double>(grid.points - 1);
    }
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> x(d);
    double total = 0.0;
    for (;;) {
        double weight = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            x[j] = grid.lo[j] + step[j] * static_cast<double>(idx[j]);
            weight *= step[j] * ((idx[j] == 0 || idx[j] == grid.points - 1) ? 0.5 : 1.0);
        }
        total += weight * std::pow(std::abs(kde.evaluate(x) - truth(x)), p);
        std::size_t j = 0;
        while (j < d && ++idx[j] == grid.points) idx[j++] = 0;
        if (j == d) break;
    }
    return std::pow(total, 1.0 / p);
}

} // namespace tdaboot
