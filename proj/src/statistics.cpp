#include "tdaboot/statistics.hpp"

#include "tdaboot/bounded_homology.hpp"
#include "tdaboot/complex.hpp"
#include "tdaboot/errors.hpp"
#include "tdaboot/parallel.hpp"
#include "tdaboot/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace tdaboot {

std::string to_string(Family f) {
    switch (f) {
    case Family::persistent_betti: return "persistent_betti";
    case Family::betti: return "betti";
    case Family::euler: return "euler";
    case Family::truncated_euler: return "truncated_euler";
    case Family::bounded_persistent_betti: return "bounded_persistent_betti";
    case Family::knn_length: return "knn_length";
    }
    return "unknown";
}

std::string to_string(ComplexKind k) { return k == ComplexKind::vr ? "vr" : "cech"; }

Family parse_family(const std::string& name) {
    if (name == "persistent_betti" || name == "pbn") return Family::persistent_betti;
    if (name == "betti") return Family::betti;
    if (name == "euler") return Family::euler;
    if (name == "truncated_euler") return Family::truncated_euler;
    if (name == "bounded_persistent_betti" || name == "bounded-pbn") return Family::bounded_persistent_betti;
    if (name == "knn_length" || name == "knn") return Family::knn_length;
    throw InvalidSpec("unknown statistic family '" + name + "'");
}

ComplexKind parse_complex_kind(const std::string& name) {
    if (name == "vr") return ComplexKind::vr;
    if (name == "cech") return ComplexKind::cech;
    throw InvalidSpec("unknown complex kind '" + name + "'");
}

void StatisticSpec::validate() const {
    const bool knn = family == Family::knn_length;
    const bool bounded = family == Family::bounded_persistent_betti;
    if (knn) {
        if (k < 1) throw InvalidSpec("knn_length needs k >= 1");
        if (!pairs.empty()) throw InvalidSpec("knn_length takes no query levels");
        if (bound) throw InvalidSpec("knn_length takes no diameter bound");
        return;
    }
    if (k != 0) throw InvalidSpec("neighbour count only applies to knn_length");
    if (bounded && !bound) throw InvalidSpec("bounded_persistent_betti needs a diameter bound");
    if (!bounded && bound) throw InvalidSpec("diameter bound only applies to bounded_persistent_betti");
    if (bound && !(*bound >= 0.0)) throw InvalidSpec("diameter bound must be nonnegative");
    if (q < 0) throw InvalidSpec("homological dimension must be nonnegative");
    if (pairs.empty()) throw InvalidSpec("at least one query level is required");
    const bool single = family == Family::betti || family == Family::euler || family == Family::truncated_euler;
    for (auto [r, s] : pairs) {
        if (!std::isfinite(r) || !std::isfinite(s) || r < 0.0) throw InvalidSpec("query levels must be finite and >= 0");
        if (r > s) throw InvalidSpec("query pair needs r <= s");
        if (single && r != s) throw InvalidSpec(to_string(family) + " takes single levels (r == s)");
    }
}

std::size_t StatisticSpec::dimension() const { return family == Family::knn_length ? 1 : pairs.size(); }

std::string StatisticSpec::label() const {
    if (family == Family::knn_length)
        return "knn_length/k" + std::to_string(k) + (directed ? "/directed" : "/undirected");
    std::string out = to_string(family) + "/" + to_string(complex) + "/q" + std::to_string(q);
    if (bound) out += "/B" + std::to_string(*bound);
    return out;
}

std::vector<std::pair<double, double>> StatisticSpec::level_grid(std::span<const double> levels) {
    std::vector<std::pair<double, double>> out;
    for (double r : levels) out.emplace_back(r, r);
    return out;
}

double knn_total_length(const PointCloud& cloud, int k, bool directed) {
    const std::size_t n = cloud.size();
    if (k < 1) throw InvalidArgument("k must be at least 1");
    if (static_cast<std::size_t>(k) >= n) throw InvalidArgument("kNN length needs more than k points");
    const DistanceMatrix dist(cloud);
    std::vector<std::size_t> order(n - 1);
    std::set<std::pair<std::size_t, std::size_t>> edges;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t a = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) order[a++] = j;
        std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](std::size_t x, std::size_t y) {
            return dist(i, x) < dist(i, y) || (dist(i, x) == dist(i, y) && x < y);
        });
        for (int j = 0; j < k; ++j) {
            const auto nb = order[static_cast<std::size_t>(j)];
            if (directed)
                total += dist(i, nb);
            else
                edges.emplace(std::min(i, nb), std::max(i, nb));
        }
    }
    if (!directed)
        for (auto [a, b] : edges) total += dist(a, b);
    return total;
}

namespace {

FilteredComplex build(const StatisticSpec& spec, const PointCloud& cloud, double r_max, int q_max) {
    return spec.complex == ComplexKind::vr ? build_vr(cloud, r_max, q_max) : build_cech(cloud, r_max, q_max);
}

} // namespace

StatisticValue evaluate(const StatisticSpec& spec, const PointCloud& input) {
    spec.validate();
    const PointCloud scaled = (spec.scale_by_n && !input.empty())
                                  ? scale(input, sample_scale_factor(input.size(), input.dim()))
                                  : PointCloud();
    const PointCloud& cloud = (spec.scale_by_n && !input.empty()) ? scaled : input;

    if (spec.family == Family::knn_length) return {knn_total_length(cloud, spec.k, spec.directed)};

    StatisticValue out(spec.pairs.size(), 0.0);
    if (cloud.empty()) return out;
    double r_max = 0.0;
    for (auto [r, s] : spec.pairs) r_max = std::max(r_max, s);
    const auto complex = build(spec, cloud, r_max, spec.q);

    switch (spec.family) {
    case Family::persistent_betti:
    case Family::betti: {
        const auto diagram = compute_diagram(complex);
        for (std::size_t j = 0; j < spec.pairs.size(); ++j)
            out[j] = static_cast<double>(persistent_betti(diagram, spec.q, spec.pairs[j].first, spec.pairs[j].second));
        break;
    }
    case Family::euler:
        for (std::size_t j = 0; j < spec.pairs.size(); ++j)
            out[j] = static_cast<double>(euler_characteristic(complex, spec.pairs[j].first));
        break;
    case Family::truncated_euler:
        for (std::size_t j = 0; j < spec.pairs.size(); ++j)
            out[j] = static_cast<double>(truncated_euler(complex, spec.q, spec.pairs[j].first));
        break;
    case Family::bounded_persistent_betti:
        for (std::size_t j = 0; j < spec.pairs.size(); ++j)
            out[j] = static_cast<double>(
                bounded_persistent_betti(complex, spec.q, *spec.bound, spec.pairs[j].first, spec.pairs[j].second));
        break;
    case Family::knn_length:
        break;
    }
    return out;
}

StatisticValue add_one_cost(const StatisticSpec& spec, const PointCloud& S, std::span<const double> z) {
    if (spec.scale_by_n) throw InvalidSpec("add-one costs are taken on already rescaled clouds");
    auto with = evaluate(spec, S.with_point(z));
    const auto without = evaluate(spec, S);
    for (std::size_t j = 0; j < with.size(); ++j) with[j] -= without[j];
    return with;
}

double empirical_stabilization_radius(const StatisticSpec& spec, const PointCloud& S, std::span<const double> z,
                                      std::span<const double> l_grid) {
    if (l_grid.empty()) throw InvalidArgument("empty radius grid");
    if (!std::is_sorted(l_grid.begin(), l_grid.end())) throw InvalidArgument("radius grid must be ascending");
    const auto full = add_one_cost(spec, S, z);
    // Walk down from the largest radius while the cost still agrees.
    std::size_t i = l_grid.size();
    std::size_t last_size = S.size() + 1;
    bool last_agrees = true;
    while (i > 0) {
        const double l = l_grid[i - 1];
        const auto local = restrict_to_ball(S, z, l);
        bool agrees;
        if (local.size() == last_size)
            agrees = last_agrees;  // same subset as the next larger radius
        else
            agrees = add_one_cost(spec, local, z) == full;
        if (!agrees) break;
        last_size = local.size();
        last_agrees = agrees;
        --i;
    }
    if (i == l_grid.size()) return std::numeric_limits<double>::infinity();
    return l_grid[i];
}

std::vector<double> breakpoint_grid(const PointCloud& S, std::span<const double> z) {
    std::vector<double> out{0.0};
    for (std::size_t i = 0; i < S.size(); ++i) out.push_back(euclidean_distance(S.point(i), z));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi >= lo) || count < 2) throw InvalidArgument("log grid needs 0 < lo <= hi and count >= 2");
    std::vector<double> out(count);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

TailEstimate stabilization_tail(const StatisticSpec& spec, const Sampler& sampler, std::size_t n,
                                std::span<const double> L_grid, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw InvalidArgument("stabilization tail needs at least one trial");
    if (n == 0) throw InvalidArgument("sample size must be positive");
    StatisticSpec local = spec;
    local.scale_by_n = false;
    local.validate();
    TailEstimate out;
    out.L.assign(L_grid.begin(), L_grid.end());
    out.radii.assign(trials, 0.0);
    parallel_for(trials, [&](std::size_t t) {
        Rng rng = Rng::stream(seed, t);
        PointCloud Y = sampler(n, rng);
        PointCloud Yp = sampler(1, rng);
        const double f = sample_scale_factor(n, Y.dim());
        Y = scale(Y, f);
        Yp = scale(Yp, f);
        const auto grid = breakpoint_grid(Y, Yp.point(0));
        out.radii[t] = empirical_stabilization_radius(local, Y, Yp.point(0), grid);
    });
    for (double L : out.L) {
        const auto above = std::count_if(out.radii.begin(), out.radii.end(), [&](double r) { return r > L; });
        out.tail.push_back(static_cast<double>(above) / static_cast<double>(trials));
    }
    return out;
}

PointCloud sample_homogeneous_poisson(const Box& window, double intensity, Rng& rng) {
    if (!(intensity > 0.0)) throw InvalidArgument("intensity must be positive");
    if (window.lo.empty() || window.lo.size() != window.hi.size()) throw InvalidArgument("malformed window");
    double volume = 1.0;
    for (std::size_t j = 0; j < window.lo.size(); ++j) {
        if (!(window.hi[j] > window.lo[j])) throw InvalidArgument("window has zero volume");
        volume *= window.hi[j] - window.lo[j];
    }
    const auto count = std::poisson_distribution<std::size_t>(intensity * volume)(rng);
    PointCloud out(window.lo.size());
    out.reserve(count);
    std::vector<double> p(window.lo.size());
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) p[j] = window.lo[j] + (window.hi[j] - window.lo[j]) * rng.uniform();
        out.add_point(p);
    }
    return out;
}

} // namespace tdaboot
