#include "tdaboot/complex.hpp"

#include "tdaboot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace tdaboot {

namespace {

bool lex_less(std::span<const Vertex> a, std::span<const Vertex> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Flat simplex storage used while building.
struct RawSimplices {
    std::vector<Vertex> pool;
    std::vector<std::uint32_t> offset;
    std::vector<std::uint8_t> dim;
    std::vector<double> filtration;

    void emit(std::span<const Vertex> verts, double f) {
        offset.push_back(static_cast<std::uint32_t>(pool.size()));
        pool.insert(pool.end(), verts.begin(), verts.end());
        dim.push_back(static_cast<std::uint8_t>(verts.size() - 1));
        filtration.push_back(f);
    }
    std::size_t size() const { return filtration.size(); }
    std::span<const Vertex> vertices(std::size_t i) const { return {pool.data() + offset[i], dim[i] + 1u}; }
};

} // namespace

class ComplexAssembler {
public:
    static FilteredComplex assemble(std::size_t vertex_count, const RawSimplices& raw, double r_max,
                                    int q_max, std::shared_ptr<const PointCloud> cloud, bool check) {
        const std::size_t m = raw.size();
        std::vector<std::uint32_t> order(m);
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (raw.filtration[a] != raw.filtration[b]) return raw.filtration[a] < raw.filtration[b];
            if (raw.dim[a] != raw.dim[b]) return raw.dim[a] < raw.dim[b];
            return lex_less(raw.vertices(a), raw.vertices(b));
        });

        FilteredComplex c;
        c.vertex_count_ = vertex_count;
        c.r_max_ = r_max;
        c.q_max_ = q_max;
        c.cloud_ = std::move(cloud);
        c.filtration_.resize(m);
        c.dim_.resize(m);
        c.offset_.resize(m);
        c.pool_.reserve(raw.pool.size());
        c.by_dim_.assign(static_cast<std::size_t>(q_max) + 2, {});
        for (std::size_t i = 0; i < m; ++i) {
            const auto src = order[i];
            c.filtration_[i] = raw.filtration[src];
            c.dim_[i] = raw.dim[src];
            c.offset_[i] = static_cast<std::uint32_t>(c.pool_.size());
            auto v = raw.vertices(src);
            c.pool_.insert(c.pool_.end(), v.begin(), v.end());
            c.by_dim_[raw.dim[src]].push_back(static_cast<std::uint32_t>(i));
        }
        c.lex_ = c.by_dim_;
        for (auto& idx : c.lex_)
            std::sort(idx.begin(), idx.end(),
                      [&](std::uint32_t a, std::uint32_t b) { return lex_less(c.vertices(a), c.vertices(b)); });

        if (check) {
            for (auto& idx : c.lex_)
                for (std::size_t k = 1; k < idx.size(); ++k)
                    if (!lex_less(c.vertices(idx[k - 1]), c.vertices(idx[k])))
                        throw MalformedComplex("duplicate simplex");
            std::vector<std::size_t> f;
            for (std::size_t i = 0; i < m; ++i) {
                if (c.dim_[i] == 0) continue;
                c.facets(i, f);
                for (auto j : f)
                    if (j >= i || c.filtration_[j] > c.filtration_[i] + 1e-12)
                        throw MalformedComplex("facet enters after its coface");
            }
        }
        return c;
    }
};

FilteredComplex FilteredComplex::from_simplices(std::size_t vertex_count, std::vector<Simplex> simplices,
                                                double r_max, int q_max,
                                                std::shared_ptr<const PointCloud> cloud) {
    if (q_max < 0) throw InvalidArgument("q_max must be nonnegative");
    RawSimplices raw;
    for (const auto& s : simplices) {
        if (s.vertices.empty()) throw MalformedComplex("empty simplex");
        if (s.dim() > q_max + 1) throw MalformedComplex("simplex dimension exceeds q_max + 1");
        if (!std::isfinite(s.filtration)) throw MalformedComplex("non-finite filtration");
        for (std::size_t k = 0; k < s.vertices.size(); ++k) {
            if (s.vertices[k] >= vertex_count) throw MalformedComplex("vertex index out of range");
            if (k && s.vertices[k] <= s.vertices[k - 1]) throw MalformedComplex("vertices not increasing");
        }
        raw.emit(s.vertices, s.filtration);
    }
    return ComplexAssembler::assemble(vertex_count, raw, r_max, q_max, std::move(cloud), true);
}

Simplex FilteredComplex::simplex(std::size_t i) const {
    auto v = vertices(i);
    return {std::vector<Vertex>(v.begin(), v.end()), filtration_[i]};
}

std::optional<std::size_t> FilteredComplex::find(std::span<const Vertex> verts) const {
    if (verts.empty()) return std::nullopt;
    const std::size_t k = verts.size() - 1;
    if (k >= lex_.size()) return std::nullopt;
    const auto& idx = lex_[k];
    auto it = std::lower_bound(idx.begin(), idx.end(), verts, [&](std::uint32_t a, std::span<const Vertex> key) {
        return lex_less(vertices(a), key);
    });
    if (it == idx.end()) return std::nullopt;
    auto v = vertices(*it);
    if (!std::equal(v.begin(), v.end(), verts.begin(), verts.end())) return std::nullopt;
    return *it;
}

void FilteredComplex::facets(std::size_t i, std::vector<std::size_t>& out) const {
    out.clear();
    auto v = vertices(i);
    if (v.size() < 2) return;
    Vertex buf[64];
    std::vector<Vertex> big;
    Vertex* face = buf;
    if (v.size() > 64) {
        big.resize(v.size());
        face = big.data();
    }
    for (std::size_t skip = 0; skip < v.size(); ++skip) {
        std::size_t w = 0;
        for (std::size_t k = 0; k < v.size(); ++k)
            if (k != skip) face[w++] = v[k];
        auto pos = find({face, w});
        if (!pos) throw MalformedComplex("missing facet");
        out.push_back(*pos);
    }
    std::sort(out.begin(), out.end());
}

std::span<const std::uint32_t> FilteredComplex::of_dim(int k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= by_dim_.size()) return {};
    return by_dim_[static_cast<std::size_t>(k)];
}

std::size_t FilteredComplex::count(int k, double r) const {
    auto idx = of_dim(k);
    return static_cast<std::size_t>(
        std::upper_bound(idx.begin(), idx.end(), r,
                         [&](double value, std::uint32_t a) { return value < filtration_[a]; }) -
        idx.begin());
}

void FilteredComplex::dump(std::ostream& out) const {
    char buf[64];
    for (std::size_t i = 0; i < size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g;", filtration_[i]);
        out << buf;
        auto v = vertices(i);
        for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << v[k];
        out << '\n';
    }
}

std::string FilteredComplex::dump() const {
    std::ostringstream ss;
    dump(ss);
    return ss.str();
}

namespace {

struct Neighbor {
    Vertex v;
    double length;
};

struct Candidate {
    Vertex v;
    double max_length; // longest edge from v to the current simplex
};

/// Upper neighbor lists of the graph with edges of length <= 2 r_max.
std::vector<std::vector<Neighbor>> threshold_graph(const PointCloud& cloud, double r_max) {
    const std::size_t n = cloud.size();
    std::vector<std::vector<Neighbor>> upper(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = euclidean_distance(cloud.point(i), cloud.point(j));
            if (0.5 * d <= r_max) upper[i].push_back({static_cast<Vertex>(j), d});
        }
    return upper;
}

/// Enumerates cliques of the threshold graph in vertex order. `accept`
/// returns the filtration of a new simplex or nullopt to prune it.
template <class Accept>
void expand(const std::vector<std::vector<Neighbor>>& upper, std::vector<Vertex>& verts, double filt,
            const std::vector<Candidate>& cands, int top_dim, RawSimplices& out, Accept& accept) {
    out.emit(verts, filt);
    if (static_cast<int>(verts.size()) - 1 >= top_dim) return;
    std::vector<Candidate> next;
    for (std::size_t a = 0; a < cands.size(); ++a) {
        const Vertex u = cands[a].v;
        verts.push_back(u);
        const auto f = accept(verts, std::max(filt, 0.5 * cands[a].max_length));
        if (!f) {
            verts.pop_back();
            continue;
        }
        next.clear();
        if (static_cast<int>(verts.size()) - 1 < top_dim) {
            const auto& nu = upper[u];
            std::size_t p = 0;
            for (std::size_t b = a + 1; b < cands.size(); ++b) {
                while (p < nu.size() && nu[p].v < cands[b].v) ++p;
                if (p == nu.size()) break;
                if (nu[p].v == cands[b].v)
                    next.push_back({cands[b].v, std::max(cands[b].max_length, nu[p].length)});
            }
        }
        expand(upper, verts, *f, next, top_dim, out, accept);
        verts.pop_back();
    }
}

template <class Accept>
RawSimplices clique_complex(const PointCloud& cloud, double r_max, int q_max, Accept accept) {
    const auto upper = threshold_graph(cloud, r_max);
    RawSimplices raw;
    std::vector<Vertex> verts;
    std::vector<Candidate> cands;
    for (std::size_t v = 0; v < cloud.size(); ++v) {
        cands.clear();
        for (const auto& nb : upper[v]) cands.push_back({nb.v, nb.length});
        verts.assign(1, static_cast<Vertex>(v));
        expand(upper, verts, 0.0, cands, q_max + 1, raw, accept);
    }
    return raw;
}

void check_build_args(const PointCloud& cloud, double r_max, int q_max) {
    if (cloud.empty()) throw EmptyInput("cannot build a complex on an empty cloud");
    if (!(r_max >= 0.0)) throw InvalidArgument("r_max must be nonnegative");
    if (q_max < 0) throw InvalidArgument("q_max must be nonnegative");
}

} // namespace

FilteredComplex build_vr(const PointCloud& cloud, double r_max, int q_max) {
    check_build_args(cloud, r_max, q_max);
    auto raw = clique_complex(cloud, r_max, q_max,
                              [](const std::vector<Vertex>&, double f) { return std::optional<double>(f); });
    return ComplexAssembler::assemble(cloud.size(), raw, r_max, q_max, std::make_shared<PointCloud>(cloud),
                                      false);
}

FilteredComplex build_cech(const PointCloud& cloud, double r_max, int q_max) {
    check_build_args(cloud, r_max, q_max);
    auto accept = [&](const std::vector<Vertex>& verts, double vr_filt) -> std::optional<double> {
        if (verts.size() <= 2) return vr_filt;
        const double rad = std::max(vr_filt, minimal_enclosing_ball(cloud, verts).radius);
        if (rad > r_max) return std::nullopt;
        return rad;
    };
    auto raw = clique_complex(cloud, r_max, q_max, accept);

    // Enforce monotonicity against rounding: a simplex never enters before any facet.
    std::vector<std::size_t> order(raw.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (raw.dim[a] != raw.dim[b]) return raw.dim[a] < raw.dim[b];
        return lex_less(raw.vertices(a), raw.vertices(b));
    });
    std::map<std::vector<Vertex>, double> filt;
    std::vector<Simplex> simplices;
    simplices.reserve(raw.size());
    for (auto i : order) {
        auto v = raw.vertices(i);
        std::vector<Vertex> key(v.begin(), v.end());
        double f = raw.filtration[i];
        if (key.size() > 2) {
            std::vector<Vertex> face(key.size() - 1);
            for (std::size_t skip = 0; skip < key.size(); ++skip) {
                std::size_t w = 0;
                for (std::size_t k = 0; k < key.size(); ++k)
                    if (k != skip) face[w++] = key[k];
                f = std::max(f, filt.at(face));
            }
        }
        if (f > r_max) continue;
        filt.emplace(key, f);
        simplices.push_back({std::move(key), f});
    }
    RawSimplices fixed;
    for (const auto& s : simplices) fixed.emit(s.vertices, s.filtration);
    return ComplexAssembler::assemble(cloud.size(), fixed, r_max, q_max, std::make_shared<PointCloud>(cloud),
                                      false);
}

double vertex_set_diameter(const PointCloud& cloud, std::span<const Vertex> vertices) {
    double d = 0.0;
    for (std::size_t a = 0; a < vertices.size(); ++a)
        for (std::size_t b = a + 1; b < vertices.size(); ++b)
            d = std::max(d, euclidean_distance(cloud.point(vertices[a]), cloud.point(vertices[b])));
    return d;
}

namespace {

/// Smallest ball with all of `support` on its boundary, centered in their affine hull.
Ball circumball(const PointCloud& cloud, const std::vector<Vertex>& support) {
    const std::size_t d = cloud.dim();
    Ball ball;
    if (support.empty()) {
        ball.center.assign(d, 0.0);
        ball.radius = -1.0;
        return ball;
    }
    auto p0 = cloud.point(support[0]);
    ball.center.assign(p0.begin(), p0.end());
    const std::size_t k = support.size() - 1;
    if (k > 0) {
        std::vector<std::vector<double>> diff(k, std::vector<double>(d));
        for (std::size_t i = 0; i < k; ++i) {
            auto p = cloud.point(support[i + 1]);
            for (std::size_t c = 0; c < d; ++c) diff[i][c] = p[c] - p0[c];
        }
        // Solve G lambda = b with G_ij = <diff_i, diff_j>, b_i = |diff_i|^2 / 2.
        std::vector<std::vector<double>> a(k, std::vector<double>(k + 1));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j)
                a[i][j] = std::inner_product(diff[i].begin(), diff[i].end(), diff[j].begin(), 0.0);
            a[i][k] = 0.5 * a[i][i];
        }
        double scale = 0.0;
        for (std::size_t i = 0; i < k; ++i) scale = std::max(scale, a[i][i]);
        const double tiny = 1e-12 * std::max(scale, 1e-300);
        std::vector<int> pivot_col_of_row(k, -1);
        std::size_t row = 0;
        for (std::size_t col = 0; col < k && row < k; ++col) {
            std::size_t best = row;
            for (std::size_t i = row + 1; i < k; ++i)
                if (std::abs(a[i][col]) > std::abs(a[best][col])) best = i;
            if (std::abs(a[best][col]) <= tiny) continue; // dependent direction
            std::swap(a[row], a[best]);
            for (std::size_t i = 0; i < k; ++i) {
                if (i == row) continue;
                const double factor = a[i][col] / a[row][col];
                if (factor == 0.0) continue;
                for (std::size_t j = col; j <= k; ++j) a[i][j] -= factor * a[row][j];
            }
            pivot_col_of_row[row] = static_cast<int>(col);
            ++row;
        }
        std::vector<double> lambda(k, 0.0);
        for (std::size_t i = 0; i < row; ++i) {
            const auto col = static_cast<std::size_t>(pivot_col_of_row[i]);
            lambda[col] = a[i][k] / a[i][col];
        }
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t c = 0; c < d; ++c) ball.center[c] += lambda[i] * diff[i][c];
    }
    ball.radius = 0.0;
    for (auto v : support) ball.radius = std::max(ball.radius, euclidean_distance(cloud.point(v), ball.center));
    return ball;
}

bool inside(const Ball& ball, std::span<const double> p) {
    if (ball.radius < 0.0) return false;
    return euclidean_distance(p, ball.center) <= ball.radius + 1e-10 * std::max(1.0, ball.radius);
}

void welzl_mtf(const PointCloud& cloud, std::vector<Vertex>& pts, std::size_t end, std::vector<Vertex>& support,
               Ball& ball) {
    ball = circumball(cloud, support);
    if (support.size() == cloud.dim() + 1) return;
    for (std::size_t i = 0; i < end; ++i) {
        if (inside(ball, cloud.point(pts[i]))) continue;
        support.push_back(pts[i]);
        welzl_mtf(cloud, pts, i, support, ball);
        support.pop_back();
        std::rotate(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(i),
                    pts.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
}

} // namespace

Ball minimal_enclosing_ball(const PointCloud& cloud, std::span<const Vertex> subset) {
    if (subset.empty()) throw EmptyInput("enclosing ball of an empty set");
    if (subset.size() == 2) {
        auto a = cloud.point(subset[0]);
        auto b = cloud.point(subset[1]);
        Ball ball;
        ball.center.resize(cloud.dim());
        for (std::size_t c = 0; c < cloud.dim(); ++c) ball.center[c] = 0.5 * (a[c] + b[c]);
        ball.radius = 0.5 * euclidean_distance(a, b);
        return ball;
    }
    std::vector<Vertex> pts(subset.begin(), subset.end());
    std::vector<Vertex> support;
    Ball ball;
    welzl_mtf(cloud, pts, pts.size(), support, ball);
    return ball;
}

namespace {

using SimplexMap = std::map<std::vector<Vertex>, double>;

/// Simplices of `c`, relabelled through `label` (S-index -> full-cloud index).
SimplexMap relabel(const FilteredComplex& c, const std::vector<Vertex>& label) {
    SimplexMap out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto v = c.vertices(i);
        std::vector<Vertex> key;
        key.reserve(v.size());
        for (auto x : v) key.push_back(label[x]);
        std::sort(key.begin(), key.end());
        out.emplace(std::move(key), c.filtration(i));
    }
    return out;
}

void fail(ConditionCheck& check, ConditionWitness w) {
    if (check.passed) check.witness = std::move(w);
    check.passed = false;
}

} // namespace

ConditionReport verify_complex_conditions(const ComplexBuilder& builder, std::span<const PointCloud> trial_clouds,
                                          std::span<const double> r_grid, int q_max) {
    ConditionReport report;
    for (std::size_t ci = 0; ci < trial_clouds.size(); ++ci) {
        const PointCloud& cloud = trial_clouds[ci];
        const std::size_t n = cloud.size();
        if (n == 0) continue;
        std::vector<Vertex> identity(n);
        std::iota(identity.begin(), identity.end(), Vertex{0});

        std::vector<double> offset(cloud.dim());
        for (std::size_t k = 0; k < offset.size(); ++k) offset[k] = 3.7 - 1.9 * static_cast<double>(k);
        const PointCloud moved = translate(cloud, offset);

        for (double r : r_grid) {
            const SimplexMap full = relabel(builder(cloud, r, q_max), identity);
            const double phi = 2.0 * r;
            const double tol = 1e-9 * std::max(1.0, phi);

            for (const auto& [simplex, f] : full) {
                ++report.d1.checks;
                if (vertex_set_diameter(cloud, simplex) > phi + tol)
                    fail(report.d1, {ci, simplex.front(), simplex, r, "simplex diameter exceeds 2r"});
            }

            ++report.k2.checks;
            const SimplexMap shifted = relabel(builder(moved, r, q_max), identity);
            if (shifted.size() != full.size()) {
                fail(report.k2, {ci, 0, {}, r, "translated cloud has a different simplex count"});
            } else {
                for (const auto& [simplex, f] : full) {
                    auto it = shifted.find(simplex);
                    if (it == shifted.end() || std::abs(it->second - f) > 1e-9 * std::max(1.0, std::abs(f))) {
                        fail(report.k2, {ci, simplex.front(), simplex, r, "simplex changed under translation"});
                        break;
                    }
                }
            }

            if (n < 2) continue;
            for (std::size_t z = 0; z < n; ++z) {
                std::vector<std::size_t> keep;
                std::vector<Vertex> label;
                for (std::size_t i = 0; i < n; ++i)
                    if (i != z) {
                        keep.push_back(i);
                        label.push_back(static_cast<Vertex>(i));
                    }
                const SimplexMap without = relabel(builder(cloud.subset(keep), r, q_max), label);
                const auto zv = static_cast<Vertex>(z);
                auto within_phi = [&](const std::vector<Vertex>& s) {
                    for (auto v : s)
                        if (euclidean_distance(cloud.point(v), cloud.point(z)) > phi + tol) return false;
                    return true;
                };
                for (const auto& [simplex, f] : without) {
                    ++report.k1.checks;
                    if (!full.contains(simplex)) {
                        fail(report.k1, {ci, z, simplex, r, "simplex lost when the point was added"});
                        ++report.d2.checks;
                        if (!within_phi(simplex))
                            fail(report.d2, {ci, z, simplex, r, "removed simplex outside B_z(2r)"});
                    }
                }
                for (const auto& [simplex, f] : full) {
                    if (without.contains(simplex)) continue;
                    ++report.k1.checks;
                    ++report.d2.checks;
                    if (!std::binary_search(simplex.begin(), simplex.end(), zv))
                        fail(report.k1, {ci, z, simplex, r, "new simplex does not contain the added point"});
                    if (!within_phi(simplex))
                        fail(report.d2, {ci, z, simplex, r, "new simplex outside B_z(2r)"});
                }
            }
        }
    }
    return report;
}

} // namespace tdaboot
