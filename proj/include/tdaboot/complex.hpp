#pragma once

#include "tdaboot/pointcloud.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tdaboot {

using Vertex = std::uint32_t;

class ComplexAssembler;

struct Simplex {
    std::vector<Vertex> vertices; ///< strictly increasing
    double filtration = 0.0;

    int dim() const noexcept { return static_cast<int>(vertices.size()) - 1; }
};

/// Simplices with filtration values, kept in the total order
/// (filtration, dimension, lexicographic vertices).
class FilteredComplex {
public:
    FilteredComplex() = default;

    /// Sorts `simplices` into the total order and checks closure; throws
    /// MalformedComplex if a facet is missing or enters after its coface.
    static FilteredComplex from_simplices(std::size_t vertex_count, std::vector<Simplex> simplices,
                                          double r_max, int q_max,
                                          std::shared_ptr<const PointCloud> cloud = nullptr);

    std::size_t size() const noexcept { return filtration_.size(); }
    std::size_t vertex_count() const noexcept { return vertex_count_; }
    double r_max() const noexcept { return r_max_; }
    /// Highest homological dimension the complex was built for.
    int q_max() const noexcept { return q_max_; }
    /// Highest simplex dimension that may be present (q_max + 1).
    int max_dim() const noexcept { return q_max_ + 1; }
    const std::shared_ptr<const PointCloud>& cloud() const noexcept { return cloud_; }

    std::span<const Vertex> vertices(std::size_t i) const {
        return {pool_.data() + offset_[i], static_cast<std::size_t>(dim_[i]) + 1};
    }
    double filtration(std::size_t i) const noexcept { return filtration_[i]; }
    int dim(std::size_t i) const noexcept { return dim_[i]; }
    Simplex simplex(std::size_t i) const;

    /// Position in the total order of the simplex with these vertices.
    std::optional<std::size_t> find(std::span<const Vertex> vertices) const;
    /// Positions of the facets of simplex i, ascending. Throws MalformedComplex
    /// when a facet is absent.
    void facets(std::size_t i, std::vector<std::size_t>& out) const;

    /// Positions of the k-simplices, in the total order.
    std::span<const std::uint32_t> of_dim(int k) const;
    /// Number of k-simplices with filtration <= r.
    std::size_t count(int k, double r) const;

    /// One simplex per line, "filtration;v0,v1,...", in the total order.
    void dump(std::ostream& out) const;
    std::string dump() const;

private:
    friend class ComplexAssembler;

    std::size_t vertex_count_ = 0;
    double r_max_ = 0.0;
    int q_max_ = 0;
    std::shared_ptr<const PointCloud> cloud_;
    std::vector<double> filtration_;
    std::vector<std::uint8_t> dim_;
    std::vector<std::uint32_t> offset_;
    std::vector<Vertex> pool_;
    std::vector<std::vector<std::uint32_t>> by_dim_;  // total order within a dimension
    std::vector<std::vector<std::uint32_t>> lex_;     // lexicographic within a dimension
};

/// Vietoris-Rips filtration: a simplex enters at half its vertex-set diameter.
/// Simplices up to dimension q_max + 1 with filtration <= r_max are emitted.
FilteredComplex build_vr(const PointCloud& cloud, double r_max, int q_max = 2);

/// Čech filtration: a simplex enters at the radius of its minimal enclosing ball.
FilteredComplex build_cech(const PointCloud& cloud, double r_max, int q_max = 2);

using ComplexBuilder = std::function<FilteredComplex(const PointCloud&, double r_max, int q_max)>;

struct Ball {
    std::vector<double> center;
    double radius = 0.0;
};

/// Smallest closed ball containing the given points (Welzl, move-to-front).
Ball minimal_enclosing_ball(const PointCloud& cloud, std::span<const Vertex> subset);

/// Diameter of a vertex set under the cloud's Euclidean metric.
double vertex_set_diameter(const PointCloud& cloud, std::span<const Vertex> vertices);

struct ConditionWitness {
    std::size_t cloud_index = 0;
    std::size_t point_index = 0;   ///< the added or tested point
    std::vector<Vertex> simplex;   ///< in the full cloud's indexing
    double r = 0.0;
    std::string detail;
};

struct ConditionCheck {
    bool passed = true;
    std::size_t checks = 0;
    std::optional<ConditionWitness> witness;
};

/// Empirical check of the complex conditions used by the stabilization
/// results: K1 (adding a point only adds simplices, all containing it),
/// K2 (translation invariance), D1 (simplex diameter <= 2r) and
/// D2 (changes from adding z lie in the ball of radius 2r around z).
struct ConditionReport {
    ConditionCheck k1, k2, d1, d2;
    bool all_passed() const noexcept { return k1.passed && k2.passed && d1.passed && d2.passed; }
};

ConditionReport verify_complex_conditions(const ComplexBuilder& builder,
                                          std::span<const PointCloud> trial_clouds,
                                          std::span<const double> r_grid, int q_max = 2);

} // namespace tdaboot
