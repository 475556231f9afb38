#include "tdaboot/pointcloud.hpp"

#include "tdaboot/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

namespace tdaboot {

PointCloud::PointCloud(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw InvalidArgument("point dimension must be positive");
}

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
    if (dim == 0) throw InvalidArgument("point dimension must be positive");
    if (coords_.size() % dim_ != 0) throw InvalidArgument("coordinate count is not a multiple of dim");
    for (double c : coords_)
        if (!std::isfinite(c)) throw InvalidArgument("non-finite coordinate");
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw EmptyInput("no points");
    PointCloud cloud(rows.front().size());
    cloud.reserve(rows.size());
    for (const auto& r : rows) cloud.add_point(r);
    return cloud;
}

void PointCloud::add_point(std::span<const double> p) {
    if (p.size() != dim_) throw InvalidArgument("point has wrong dimension");
    for (double c : p)
        if (!std::isfinite(c)) throw InvalidArgument("non-finite coordinate");
    coords_.insert(coords_.end(), p.begin(), p.end());
}

PointCloud PointCloud::subset(std::span<const std::size_t> indices) const {
    PointCloud out(dim_);
    out.coords_.reserve(indices.size() * dim_);
    for (std::size_t i : indices) {
        auto p = point(i);
        out.coords_.insert(out.coords_.end(), p.begin(), p.end());
    }
    return out;
}

PointCloud PointCloud::with_point(std::span<const double> p) const {
    PointCloud out = *this;
    out.add_point(p);
    return out;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double t = a[k] - b[k];
        acc += t * t;
    }
    return std::sqrt(acc);
}

DistanceMatrix::DistanceMatrix(const PointCloud& cloud) : n_(cloud.size()), d_(n_ * n_, 0.0) {
    if (n_ == 0) throw EmptyInput("distance matrix of an empty cloud");
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) {
            const double v = euclidean_distance(cloud.point(i), cloud.point(j));
            d_[i * n_ + j] = v;
            d_[j * n_ + i] = v;
        }
}

double DistanceMatrix::diameter() const noexcept {
    return d_.empty() ? 0.0 : *std::max_element(d_.begin(), d_.end());
}

DistanceMatrix distance_matrix(const PointCloud& cloud) { return DistanceMatrix(cloud); }

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_cells(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return cells;
}

bool parse_number(std::string_view cell, double& out) {
    if (cell.empty()) return false;
    if (cell.front() == '+') cell.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc() && ptr == cell.data() + cell.size() && std::isfinite(out);
}

} // namespace

PointCloud parse_csv(const std::string& text) {
    std::vector<std::string_view> lines;
    std::string_view rest(text);
    while (!rest.empty()) {
        const auto nl = rest.find('\n');
        auto line = rest.substr(0, nl);
        if (!trim(line).empty()) lines.push_back(line);
        if (nl == std::string_view::npos) break;
        rest.remove_prefix(nl + 1);
    }
    if (!lines.empty() && lines.front().starts_with("\xEF\xBB\xBF")) lines.front().remove_prefix(3);
    if (lines.empty()) throw EmptyInput("CSV input has no rows");

    std::size_t first = 0;
    {
        double tmp;
        for (auto cell : split_cells(lines.front()))
            if (!parse_number(cell, tmp)) {
                first = 1;
                break;
            }
    }
    if (first == lines.size()) throw EmptyInput("CSV input has a header but no data rows");

    const std::size_t dim = split_cells(lines[first]).size();
    std::vector<double> coords;
    coords.reserve((lines.size() - first) * dim);
    for (std::size_t li = first; li < lines.size(); ++li) {
        const std::size_t row = li - first;
        const auto cells = split_cells(lines[li]);
        if (cells.size() != dim)
            throw ParseError(row, "expected " + std::to_string(dim) + " columns, found " +
                                      std::to_string(cells.size()));
        for (auto cell : cells) {
            double v;
            if (!parse_number(cell, v)) throw ParseError(row, "non-numeric cell '" + std::string(cell) + "'");
            coords.push_back(v);
        }
    }
    return PointCloud(dim, std::move(coords));
}

PointCloud load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

void write_csv(const std::filesystem::path& path, const PointCloud& cloud) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    out.precision(17);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        for (std::size_t k = 0; k < p.size(); ++k) out << (k ? "," : "") << p[k];
        out << '\n';
    }
}

PointCloud scale(const PointCloud& cloud, double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw InvalidArgument("scale factor must be positive");
    std::vector<double> c(cloud.coords().begin(), cloud.coords().end());
    for (double& v : c) v *= factor;
    return PointCloud(cloud.dim(), std::move(c));
}

PointCloud translate(const PointCloud& cloud, std::span<const double> offset) {
    if (offset.size() != cloud.dim()) throw InvalidArgument("offset has wrong dimension");
    std::vector<double> c(cloud.coords().begin(), cloud.coords().end());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += offset[i % cloud.dim()];
    return PointCloud(cloud.dim(), std::move(c));
}

double sample_scale_factor(std::size_t n, std::size_t dim) {
    if (n == 0 || dim == 0) throw InvalidArgument("scale factor needs n >= 1 and d >= 1");
    const auto x = static_cast<double>(n);
    if (dim == 1) return x;
    if (dim == 2) return std::sqrt(x);
    if (dim == 3) return std::cbrt(x);
    return std::pow(x, 1.0 / static_cast<double>(dim));
}

PointCloud restrict_to_ball(const PointCloud& cloud, std::span<const double> center, double radius) {
    PointCloud out(cloud.dim());
    for (std::size_t i = 0; i < cloud.size(); ++i)
        if (euclidean_distance(cloud.point(i), center) <= radius) out.add_point(cloud.point(i));
    return out;
}

} // namespace tdaboot
