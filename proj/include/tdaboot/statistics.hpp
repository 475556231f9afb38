#pragma once

#include "tdaboot/pointcloud.hpp"
#include "tdaboot/random.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tdaboot {

enum class Family { persistent_betti, betti, euler, truncated_euler, bounded_persistent_betti, knn_length };
enum class ComplexKind { vr, cech };

std::string to_string(Family f);
std::string to_string(ComplexKind k);
Family parse_family(const std::string& name);
ComplexKind parse_complex_kind(const std::string& name);

using StatisticValue = std::vector<double>;

/// A vector-valued statistic of a point cloud.
///
/// `pairs` holds (r, s) query levels. The single-level families (betti, euler,
/// truncated_euler) take pairs with r == s; see level_grid().
struct StatisticSpec {
    Family family = Family::persistent_betti;
    ComplexKind complex = ComplexKind::vr;
    int q = 0;
    std::vector<std::pair<double, double>> pairs;
    std::optional<double> bound;
    int k = 0;
    bool directed = true;
    bool scale_by_n = false;

    /// Throws InvalidSpec when parameters do not fit the family.
    void validate() const;
    /// Number of components of evaluate().
    std::size_t dimension() const;
    /// Compact label such as "persistent_betti/vr/q1".
    std::string label() const;

    static std::vector<std::pair<double, double>> level_grid(std::span<const double> levels);
};

/// Statistic at every query coordinate, after the optional n^{1/d} rescaling.
/// An empty cloud gives zeros for the topological families.
StatisticValue evaluate(const StatisticSpec& spec, const PointCloud& cloud);

/// Sum of distances to the k nearest other points (ties by index). The
/// undirected form counts each edge of the kNN graph once.
double knn_total_length(const PointCloud& cloud, int k, bool directed);

/// evaluate(S ∪ {z}) - evaluate(S). Rescaling must be disabled.
StatisticValue add_one_cost(const StatisticSpec& spec, const PointCloud& S, std::span<const double> z);

/// Smallest grid radius l* such that the add-one cost of z to S ∩ B_z(l) equals
/// the full-set cost for every grid l >= l*. +inf if the last grid value does
/// not already agree with the full set.
double empirical_stabilization_radius(const StatisticSpec& spec, const PointCloud& S, std::span<const double> z,
                                      std::span<const double> l_grid);

/// {0} together with the distinct distances from z to points of S, ascending.
/// On this grid the empirical radius is the exact minimal one.
std::vector<double> breakpoint_grid(const PointCloud& S, std::span<const double> z);

/// `count` log-spaced values from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t count = 40);

using Sampler = std::function<PointCloud(std::size_t n, Rng& rng)>;

struct TailEstimate {
    std::vector<double> L;
    std::vector<double> tail;      ///< fraction of trials with radius > L
    std::vector<double> radii;     ///< per-trial empirical radius
};

/// Monte Carlo estimate of P(rho > L): Y_n and an independent center Y' are
/// drawn from the sampler and rescaled by n^{1/d}; rho is the empirical radius
/// on the breakpoint grid. Trial t uses stream (seed, t).
TailEstimate stabilization_tail(const StatisticSpec& spec, const Sampler& sampler, std::size_t n,
                                std::span<const double> L_grid, std::size_t trials, std::uint64_t seed);

struct Box {
    std::vector<double> lo;
    std::vector<double> hi;
};

PointCloud sample_homogeneous_poisson(const Box& window, double intensity, Rng& rng);

} // namespace tdaboot
