#pragma once

#include "tdaboot/complex.hpp"

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace tdaboot {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct DiagramPoint {
    double birth = 0.0;
    double death = kInfinity; ///< kInfinity for essential classes
    int q = 0;

    friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

/// Persistence diagram over the two-element field. Pairs with birth == death
/// are counted but not listed.
class PersistenceDiagram {
public:
    PersistenceDiagram() = default;
    /// Takes every pair, including zero-persistence ones.
    explicit PersistenceDiagram(std::vector<DiagramPoint> all_points);

    const std::vector<DiagramPoint>& points() const noexcept { return points_; }
    std::vector<DiagramPoint> points(int q) const;
    std::size_t zero_persistence_count() const noexcept { return zero_persistence_; }

    /// CSV "q,birth,death" with "inf" for essential classes.
    void write_csv(std::ostream& out) const;

private:
    std::vector<DiagramPoint> points_;
    std::size_t zero_persistence_ = 0;
};

/// Birth/death simplex positions in the complex's total order.
struct PersistencePair {
    std::size_t birth = 0;
    std::optional<std::size_t> death; ///< empty for essential classes
    int q = 0;
};

/// Column reduction of the boundary matrix with clearing. Essential classes are
/// reported for dimensions <= q_max only.
std::vector<PersistencePair> persistence_pairs(const FilteredComplex& complex);

PersistenceDiagram compute_diagram(const FilteredComplex& complex);

/// #{(b, d, q) in the diagram : b <= r, d > s}.
std::size_t persistent_betti(const PersistenceDiagram& diagram, int q, double r, double s);

/// dim Z_q(K^r) - dim(B_q(K^s) ∩ Z_q(K^r)) by rank computations, independent of
/// the reduction. Requires r <= s <= r_max and q <= q_max.
std::size_t persistent_betti_direct(const FilteredComplex& complex, int q, double r, double s);

/// beta_q^{r,r} at each (ascending) grid value.
std::vector<std::size_t> betti_curve(const PersistenceDiagram& diagram, int q, std::span<const double> grid);

/// Alternating simplex count of K^r over all built dimensions.
long long euler_characteristic(const FilteredComplex& complex, double r);

/// Alternating simplex count of K^r over dimensions 0..q.
long long truncated_euler(const FilteredComplex& complex, int q, double r);

/// Both sides of an inequality check.
struct BoundReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool passed = true;
};

/// |beta_q^{r,s}(K) - beta_q^{r,s}(J)| <= #(K_q^r \ J_q^r) + #(K_{q+1}^s \ J_{q+1}^s)
/// for nested filtrations J^r ⊆ K^r (same vertex labels). Throws NotNested.
BoundReport geometric_lemma_check(const FilteredComplex& J, const FilteredComplex& K, int q, double r, double s);

/// Throws NotNested unless every simplex of J is in K and enters K no later.
void require_nested(const FilteredComplex& J, const FilteredComplex& K);

} // namespace tdaboot
