#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace tdaboot {

/// Ordered multiset of points in R^d, stored row-major.
///
/// Duplicates are kept and insertion order is preserved, so index i always
/// refers to the i-th inserted point.
class PointCloud {
public:
    explicit PointCloud(std::size_t dim = 1);
    PointCloud(std::size_t dim, std::vector<double> coords);
    static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    std::size_t dim() const noexcept { return dim_; }
    bool empty() const noexcept { return coords_.empty(); }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }
    std::span<const double> coords() const noexcept { return coords_; }

    void add_point(std::span<const double> p);
    void reserve(std::size_t n) { coords_.reserve(n * dim_); }

    /// Points with the given indices, in the given order.
    PointCloud subset(std::span<const std::size_t> indices) const;
    /// Copy with `p` appended as the last point.
    PointCloud with_point(std::span<const double> p) const;

    friend bool operator==(const PointCloud&, const PointCloud&) = default;

private:
    std::size_t dim_;
    std::vector<double> coords_;
};

/// Symmetric matrix of pairwise Euclidean distances.
class DistanceMatrix {
public:
    explicit DistanceMatrix(const PointCloud& cloud);

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }
    /// Largest entry; 0 for a single point.
    double diameter() const noexcept;

private:
    std::size_t n_;
    std::vector<double> d_;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Reads one point per row. A first row with any non-numeric cell is a header.
PointCloud load_csv(const std::filesystem::path& path);
PointCloud parse_csv(const std::string& text);
void write_csv(const std::filesystem::path& path, const PointCloud& cloud);

/// Multiplies every coordinate by `factor` (> 0).
PointCloud scale(const PointCloud& cloud, double factor);
PointCloud translate(const PointCloud& cloud, std::span<const double> offset);

/// The n^{1/d} factor that maps a sample of size n onto unit intensity scale.
double sample_scale_factor(std::size_t n, std::size_t dim);

DistanceMatrix distance_matrix(const PointCloud& cloud);

/// Points of `cloud` in the closed ball of radius `radius` around `center`.
PointCloud restrict_to_ball(const PointCloud& cloud, std::span<const double> center, double radius);

} // namespace tdaboot
