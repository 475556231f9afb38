#include "tdaboot/bootstrap.hpp"

#include "tdaboot/density.hpp"
#include "tdaboot/errors.hpp"
#include "tdaboot/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

namespace tdaboot {

std::string to_string(Method m) { return m == Method::smoothed ? "smoothed" : "standard"; }
std::string to_string(BandwidthRule b) { return b == BandwidthRule::silverman ? "silverman" : "adaptive"; }
std::string to_string(BandKind k) {
    switch (k) {
    case BandKind::pointwise: return "pointwise";
    case BandKind::simultaneous: return "simultaneous";
    case BandKind::both: return "both";
    }
    return "both";
}
std::string to_string(IntervalType t) { return t == IntervalType::basic ? "basic" : "percentile"; }

Method parse_method(const std::string& s) {
    if (s == "smoothed") return Method::smoothed;
    if (s == "standard") return Method::standard;
    throw InvalidArgument("unknown bootstrap method '" + s + "'");
}
BandwidthRule parse_bandwidth(const std::string& s) {
    if (s == "silverman") return BandwidthRule::silverman;
    if (s == "adaptive") return BandwidthRule::adaptive;
    throw InvalidArgument("unknown bandwidth rule '" + s + "'");
}
BandKind parse_band_kind(const std::string& s) {
    if (s == "pointwise") return BandKind::pointwise;
    if (s == "simultaneous") return BandKind::simultaneous;
    if (s == "both") return BandKind::both;
    throw InvalidArgument("unknown band kind '" + s + "'");
}
IntervalType parse_interval(const std::string& s) {
    if (s == "basic") return IntervalType::basic;
    if (s == "percentile") return IntervalType::percentile;
    throw InvalidArgument("unknown interval type '" + s + "'");
}

void BootstrapConfig::validate() const {
    if (replicates < 2) throw InvalidArgument("bootstrap needs at least two replicates");
    if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("level must lie in (0, 1)");
    if (resample_size && *resample_size < 1) throw InvalidArgument("resample size must be at least 1");
}

Statistic as_statistic(const StatisticSpec& spec) {
    spec.validate();
    return [spec](const PointCloud& c) { return evaluate(spec, c); };
}

std::vector<double> BootstrapDistribution::column(std::size_t j) const {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& row : values) out.push_back(row[j]);
    return out;
}

namespace {

using Draw = std::function<PointCloud(std::size_t b, std::size_t m, std::vector<std::size_t>* idx)>;

BootstrapDistribution assemble(const PointCloud& cloud, const Statistic& stat, const BootstrapConfig& config,
                               const Draw& draw, bool track_unique) {
    config.validate();
    if (cloud.empty()) throw EmptyInput("bootstrap needs a nonempty sample");
    BootstrapDistribution out;
    out.n = cloud.size();
    out.m = config.resample_size.value_or(cloud.size());
    out.point_estimate = stat(cloud);
    const std::size_t k = out.point_estimate.size();
    const std::size_t B = config.replicates;

    std::vector<StatisticValue> raw(B);
    std::vector<double> uniq(track_unique ? B : 0);
    parallel_for(B, [&](std::size_t b) {
        std::vector<std::size_t> idx;
        const auto sample = draw(b, out.m, track_unique ? &idx : nullptr);
        raw[b] = stat(sample);
        if (raw[b].size() != k) throw ReplicateError(b, "statistic changed dimension");
        for (double v : raw[b])
            if (!std::isfinite(v)) throw ReplicateError(b, "non-finite statistic value");
        if (track_unique) {
            std::sort(idx.begin(), idx.end());
            const auto distinct = std::unique(idx.begin(), idx.end()) - idx.begin();
            uniq[b] = static_cast<double>(distinct) / static_cast<double>(cloud.size());
        }
    });

    out.replicate_means.assign(k, 0.0);
    for (const auto& row : raw)
        for (std::size_t j = 0; j < k; ++j) out.replicate_means[j] += row[j];
    for (auto& v : out.replicate_means) v /= static_cast<double>(B);
    const double root_m = std::sqrt(static_cast<double>(out.m));
    out.values.assign(B, std::vector<double>(k));
    for (std::size_t b = 0; b < B; ++b)
        for (std::size_t j = 0; j < k; ++j) out.values[b][j] = (raw[b][j] - out.replicate_means[j]) / root_m;
    out.unique_fractions = std::move(uniq);
    return out;
}

} // namespace

BootstrapDistribution smoothed_bootstrap(const PointCloud& cloud, const Statistic& stat,
                                         const BootstrapConfig& config) {
    const auto kde = config.bandwidth == BandwidthRule::silverman ? fit_silverman(cloud) : fit_adaptive(cloud);
    return assemble(
        cloud, stat, config,
        [&](std::size_t b, std::size_t m, std::vector<std::size_t>*) {
            Rng rng = Rng::stream(config.seed, b);
            return kde.sample(m, rng);
        },
        false);
}

BootstrapDistribution smoothed_bootstrap(const PointCloud& cloud, const StatisticSpec& spec,
                                         const BootstrapConfig& config) {
    return smoothed_bootstrap(cloud, as_statistic(spec), config);
}

PointCloud standard_resample(const PointCloud& base, Rng& rng, std::vector<std::size_t>* indices) {
    if (base.empty()) throw EmptyInput("cannot resample an empty cloud");
    std::vector<std::size_t> idx(base.size());
    for (auto& i : idx) i = rng.index(base.size());
    auto out = base.subset(idx);
    if (indices) *indices = std::move(idx);
    return out;
}

BootstrapDistribution standard_bootstrap(const PointCloud& cloud, const Statistic& stat,
                                         const BootstrapConfig& config) {
    return assemble(
        cloud, stat, config,
        [&](std::size_t b, std::size_t m, std::vector<std::size_t>* idx) {
            Rng rng = Rng::stream(config.seed, b);
            std::vector<std::size_t> pick(m);
            for (auto& i : pick) i = rng.index(cloud.size());
            auto sample = cloud.subset(pick);
            if (idx) *idx = std::move(pick);
            return sample;
        },
        true);
}

BootstrapDistribution standard_bootstrap(const PointCloud& cloud, const StatisticSpec& spec,
                                         const BootstrapConfig& config) {
    return standard_bootstrap(cloud, as_statistic(spec), config);
}

BootstrapDistribution run_bootstrap(const PointCloud& cloud, const Statistic& stat, const BootstrapConfig& config) {
    return config.method == Method::smoothed ? smoothed_bootstrap(cloud, stat, config)
                                             : standard_bootstrap(cloud, stat, config);
}

double unique_fraction(const PointCloud& resample, const PointCloud& base) {
    if (base.empty()) throw EmptyInput("base cloud is empty");
    if (resample.dim() != base.dim()) throw InvalidArgument("dimension mismatch");
    // Rows are matched by exact coordinates; duplicate rows in the base count
    // once per distinct value, as a resample cannot tell them apart.
    std::map<std::vector<double>, std::size_t> rows;
    for (std::size_t i = 0; i < base.size(); ++i) {
        auto p = base.point(i);
        rows.emplace(std::vector<double>(p.begin(), p.end()), i);
    }
    std::unordered_set<std::size_t> seen;
    for (std::size_t i = 0; i < resample.size(); ++i) {
        auto p = resample.point(i);
        auto it = rows.find(std::vector<double>(p.begin(), p.end()));
        if (it == rows.end()) throw InvalidArgument("resample contains a point not in the base cloud");
        seen.insert(it->second);
    }
    return static_cast<double>(seen.size()) / static_cast<double>(base.size());
}

PointCloud deduplicate(const PointCloud& cloud) {
    std::map<std::vector<double>, std::size_t> rows;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        if (rows.emplace(std::vector<double>(p.begin(), p.end()), i).second) keep.push_back(i);
    }
    return cloud.subset(keep);
}

bool ConfidenceBand::contains(std::span<const double> x) const {
    if (x.size() != lower.size()) throw InvalidArgument("band dimension mismatch");
    for (std::size_t j = 0; j < x.size(); ++j)
        if (x[j] < lower[j] || x[j] > upper[j]) return false;
    return true;
}

double quantile(std::vector<double> data, double p) {
    if (data.empty()) throw EmptyInput("quantile of empty data");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("quantile probability outside [0, 1]");
    std::sort(data.begin(), data.end());
    const double h = (static_cast<double>(data.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, data.size() - 1);
    return data[lo] + (h - static_cast<double>(lo)) * (data[hi] - data[lo]);
}

namespace {

ConfidenceBand pointwise_band(const BootstrapDistribution& dist, double scale, double level, IntervalType interval) {
    const double alpha = 1.0 - level;
    ConfidenceBand band;
    band.kind = BandKind::pointwise;
    for (std::size_t j = 0; j < dist.dimension(); ++j) {
        const auto col = dist.column(j);
        const double q_lo = quantile(col, alpha / 2.0);
        const double q_hi = quantile(col, 1.0 - alpha / 2.0);
        if (interval == IntervalType::basic) {
            band.lower.push_back(dist.point_estimate[j] - scale * q_hi);
            band.upper.push_back(dist.point_estimate[j] - scale * q_lo);
        } else {
            band.lower.push_back(dist.replicate_means[j] + scale * q_lo);
            band.upper.push_back(dist.replicate_means[j] + scale * q_hi);
        }
    }
    return band;
}

} // namespace

ConfidenceBand confidence_band(const BootstrapDistribution& dist, std::size_t n, double level, BandKind kind,
                               IntervalType interval) {
    if (dist.replicates() == 0 || dist.dimension() == 0) throw EmptyInput("empty bootstrap distribution");
    if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("level must lie in (0, 1)");
    if (n == 0) throw InvalidArgument("base sample size must be positive");
    if (kind == BandKind::both) throw InvalidArgument("request pointwise or simultaneous bands separately");
    const double scale = std::sqrt(static_cast<double>(n));
    auto pw = pointwise_band(dist, scale, level, interval);
    if (kind == BandKind::pointwise) return pw;

    if (dist.replicates() < 20) throw InsufficientReplicates("simultaneous bands need at least 20 replicates");
    const std::size_t k = dist.dimension();
    std::vector<double> sd(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        double ss = 0.0;
        for (const auto& row : dist.values) ss += row[j] * row[j];  // columns are centered
        sd[j] = std::sqrt(ss / static_cast<double>(dist.replicates() - 1));
    }
    std::vector<double> maxima;
    maxima.reserve(dist.replicates());
    for (const auto& row : dist.values) {
        double m = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            if (sd[j] > 0.0) m = std::max(m, std::abs(row[j]) / sd[j]);
        maxima.push_back(m);
    }
    const double c = quantile(maxima, level);
    ConfidenceBand band;
    band.kind = BandKind::simultaneous;
    band.multiplier = c;
    for (std::size_t j = 0; j < k; ++j) {
        const double centre = dist.point_estimate[j];
        band.lower.push_back(std::min(pw.lower[j], centre - c * sd[j] * scale));
        band.upper.push_back(std::max(pw.upper[j], centre + c * sd[j] * scale));
    }
    return band;
}

double w2_empirical(std::span<const double> u, std::span<const double> v) {
    if (u.empty() || v.empty()) throw EmptyInput("Wasserstein distance of an empty sample");
    std::vector<double> a(u.begin(), u.end()), b(v.begin(), v.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double total = 0.0;
    if (a.size() == b.size()) {
        for (std::size_t i = 0; i < a.size(); ++i) total += (a[i] - b[i]) * (a[i] - b[i]);
        return std::sqrt(total / static_cast<double>(a.size()));
    }
    // Integrate the squared gap between the two step quantile functions.
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double t = 0.0;
    while (i < a.size() && j < b.size()) {
        const double next = std::min(static_cast<double>(i + 1) / na, static_cast<double>(j + 1) / nb);
        total += (next - t) * (a[i] - b[j]) * (a[i] - b[j]);
        t = next;
        if (static_cast<double>(i + 1) / na <= t) ++i;
        if (static_cast<double>(j + 1) / nb <= t) ++j;
    }
    return std::sqrt(total);
}

double standard_bootstrap_correction(std::size_t dim) {
    if (dim == 0) throw InvalidArgument("dimension must be positive");
    return std::pow(1.0 - std::exp(-1.0), 1.0 / static_cast<double>(dim));
}

PersistenceDiagram rescale_diagram(const PersistenceDiagram& diagram, double factor) {
    if (!(factor > 0.0)) throw InvalidArgument("rescaling factor must be positive");
    auto pts = diagram.points();
    for (auto& p : pts) {
        p.birth *= factor;
        p.death *= factor;
    }
    return PersistenceDiagram(std::move(pts));
}

} // namespace tdaboot
