#include "tdaboot/persistence.hpp"

#include "tdaboot/errors.hpp"
#include "tdaboot/gf2.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>

namespace tdaboot {

PersistenceDiagram::PersistenceDiagram(std::vector<DiagramPoint> all_points) {
    for (auto& p : all_points) {
        if (p.birth > p.death) throw InvalidArgument("diagram point with birth after death");
        if (p.birth == p.death)
            ++zero_persistence_;
        else
            points_.push_back(p);
    }
}

std::vector<DiagramPoint> PersistenceDiagram::points(int q) const {
    std::vector<DiagramPoint> out;
    for (const auto& p : points_)
        if (p.q == q) out.push_back(p);
    return out;
}

void PersistenceDiagram::write_csv(std::ostream& out) const {
    out << "q,birth,death\n";
    const auto old = out.precision(17);
    for (const auto& p : points_) {
        out << p.q << ',' << p.birth << ',';
        if (std::isinf(p.death))
            out << "inf";
        else
            out << p.death;
        out << '\n';
    }
    out.precision(old);
}

namespace {

void symmetric_difference(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                          std::vector<std::uint32_t>& out) {
    out.clear();
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            out.push_back(a[i++]);
        else if (b[j] < a[i])
            out.push_back(b[j++]);
        else {
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
}

} // namespace

std::vector<PersistencePair> persistence_pairs(const FilteredComplex& complex) {
    const std::size_t m = complex.size();
    constexpr std::uint32_t none = UINT32_MAX;
    std::vector<std::uint32_t> owner(m, none);   // row -> column whose pivot it is
    std::vector<char> negative(m, 0);
    std::vector<char> cleared(m, 0);
    std::vector<std::vector<std::uint32_t>> reduced(m);
    std::vector<std::uint32_t> col, scratch;
    std::vector<std::size_t> faces;
    std::vector<PersistencePair> pairs;

    for (int k = complex.max_dim(); k >= 1; --k) {
        for (auto j : complex.of_dim(k)) {
            if (cleared[j]) continue;
            complex.facets(j, faces);
            col.assign(faces.begin(), faces.end());
            while (!col.empty()) {
                const auto o = owner[col.back()];
                if (o == none) break;
                symmetric_difference(col, reduced[o], scratch);
                col.swap(scratch);
            }
            if (col.empty()) continue;
            const auto low = col.back();
            if (complex.filtration(low) > complex.filtration(j))
                throw MalformedComplex("boundary pivot enters after its simplex");
            owner[low] = j;
            negative[j] = 1;
            cleared[low] = 1;
            pairs.push_back({low, j, k - 1});
            reduced[j] = col;
        }
        // Columns of this dimension are never needed again.
        for (auto j : complex.of_dim(k)) std::vector<std::uint32_t>().swap(reduced[j]);
    }
    for (std::size_t i = 0; i < m; ++i)
        if (!negative[i] && owner[i] == none && complex.dim(i) <= complex.q_max())
            pairs.push_back({i, std::nullopt, complex.dim(i)});
    std::sort(pairs.begin(), pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
        return a.birth < b.birth;
    });
    return pairs;
}

PersistenceDiagram compute_diagram(const FilteredComplex& complex) {
    std::vector<DiagramPoint> pts;
    for (const auto& p : persistence_pairs(complex))
        pts.push_back({complex.filtration(p.birth), p.death ? complex.filtration(*p.death) : kInfinity, p.q});
    return PersistenceDiagram(std::move(pts));
}

std::size_t persistent_betti(const PersistenceDiagram& diagram, int q, double r, double s) {
    if (r > s) throw InvalidArgument("persistent Betti query needs r <= s");
    std::size_t n = 0;
    for (const auto& p : diagram.points())
        if (p.q == q && p.birth <= r && p.death > s) ++n;
    return n;
}

std::size_t persistent_betti_direct(const FilteredComplex& complex, int q, double r, double s) {
    if (r > s) throw InvalidArgument("persistent Betti query needs r <= s");
    if (q < 0) throw InvalidArgument("negative homological dimension");
    if (s > complex.r_max()) throw OutOfRange("s exceeds the complex's r_max");
    if (q > complex.q_max()) throw OutOfRange("q exceeds the complex's q_max");

    // Position of each simplex within its dimension's total order; level-r
    // simplices of a dimension form a prefix of that order.
    std::vector<std::size_t> rank_in_dim(complex.size());
    for (int k = 0; k <= complex.max_dim(); ++k) {
        auto idx = complex.of_dim(k);
        for (std::size_t a = 0; a < idx.size(); ++a) rank_in_dim[idx[a]] = a;
    }
    auto boundary_columns = [&](int k, std::size_t count, std::size_t rows) {
        std::vector<gf2::BitVector> cols;
        std::vector<std::size_t> faces;
        auto idx = complex.of_dim(k);
        for (std::size_t a = 0; a < count; ++a) {
            gf2::BitVector v(rows);
            complex.facets(idx[a], faces);
            for (auto f : faces) v.set(rank_in_dim[f]);
            cols.push_back(std::move(v));
        }
        return cols;
    };

    const std::size_t nq_r = complex.count(q, r);
    const std::size_t nq_s = complex.count(q, s);

    std::vector<gf2::BitVector> cycles;
    if (q == 0) {
        for (std::size_t a = 0; a < nq_r; ++a) {
            gf2::BitVector v(nq_s);
            v.set(a);
            cycles.push_back(std::move(v));
        }
    } else {
        const auto cols = boundary_columns(q, nq_r, complex.count(q - 1, r));
        for (auto& z : gf2::kernel(cols, complex.count(q - 1, r))) {
            gf2::BitVector v(nq_s);
            for (auto i : z.ones()) v.set(i);
            cycles.push_back(std::move(v));
        }
    }
    const auto boundaries = boundary_columns(q + 1, complex.count(q + 1, s), nq_s);

    const std::size_t dim_z = gf2::rank(cycles, nq_s);
    const std::size_t dim_b = gf2::rank(boundaries, nq_s);
    const std::size_t dim_sum = gf2::sum(cycles, boundaries, nq_s).size();
    return dim_z - (dim_z + dim_b - dim_sum);
}

std::vector<std::size_t> betti_curve(const PersistenceDiagram& diagram, int q, std::span<const double> grid) {
    if (!std::is_sorted(grid.begin(), grid.end())) throw InvalidArgument("Betti curve grid must be ascending");
    std::vector<std::size_t> out;
    out.reserve(grid.size());
    for (double r : grid) out.push_back(persistent_betti(diagram, q, r, r));
    return out;
}

long long truncated_euler(const FilteredComplex& complex, int q, double r) {
    if (r > complex.r_max()) throw OutOfRange("r exceeds the complex's r_max");
    if (q < 0 || q > complex.max_dim()) throw OutOfRange("q exceeds the built dimension");
    long long chi = 0;
    for (int k = 0; k <= q; ++k) {
        const auto c = static_cast<long long>(complex.count(k, r));
        chi += (k % 2 == 0) ? c : -c;
    }
    return chi;
}

long long euler_characteristic(const FilteredComplex& complex, double r) {
    return truncated_euler(complex, complex.max_dim(), r);
}

void require_nested(const FilteredComplex& J, const FilteredComplex& K) {
    for (std::size_t i = 0; i < J.size(); ++i) {
        auto pos = K.find(J.vertices(i));
        if (!pos || K.filtration(*pos) > J.filtration(i) + 1e-12)
            throw NotNested("simplex of J is not in K at the same level");
    }
}

BoundReport geometric_lemma_check(const FilteredComplex& J, const FilteredComplex& K, int q, double r, double s) {
    if (r > s) throw InvalidArgument("lemma check needs r <= s");
    if (s > J.r_max() || s > K.r_max()) throw OutOfRange("s exceeds r_max");
    if (q > J.q_max() || q > K.q_max()) throw OutOfRange("q exceeds q_max");
    require_nested(J, K);
    const auto bk = static_cast<double>(persistent_betti(compute_diagram(K), q, r, s));
    const auto bj = static_cast<double>(persistent_betti(compute_diagram(J), q, r, s));
    BoundReport rep;
    rep.lhs = std::abs(bk - bj);
    rep.rhs = static_cast<double>(K.count(q, r) - J.count(q, r)) +
              static_cast<double>(K.count(q + 1, s) - J.count(q + 1, s));
    rep.passed = rep.lhs <= rep.rhs;
    return rep;
}

} // namespace tdaboot
