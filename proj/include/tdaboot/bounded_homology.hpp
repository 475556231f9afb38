#pragma once

// Cycle and boundary spaces spanned by chains of bounded vertex diameter.

#include "tdaboot/complex.hpp"
#include "tdaboot/gf2.hpp"
#include "tdaboot/persistence.hpp"

#include <cstddef>
#include <vector>

namespace tdaboot {

/// Basis of a subspace of the q-chains at one level. Bit i of every vector
/// refers to ambient[i], a simplex index of the source complex.
struct ChainBasis {
    int q = 0;
    double level = 0.0;
    std::vector<std::size_t> ambient;
    std::vector<gf2::BitVector> vectors;

    std::size_t dimension() const noexcept { return vectors.size(); }
};

/// Maximal cliques of the graph joining vertices at distance <= B, each sorted,
/// in lexicographic order. Isolated vertices form singleton cliques.
std::vector<std::vector<Vertex>> maximal_cliques(const DistanceMatrix& dist, double B);

/// span{z in Z_q(K^r) : diam(z) <= B}. Requires the complex to carry its cloud.
ChainBasis bounded_cycle_space(const FilteredComplex& complex, int q, double B, double r);

/// span{b in B_q(K^s) : diam(b) <= B}.
ChainBasis bounded_boundary_space(const FilteredComplex& complex, int q, double B, double s);

/// dim Z_{q,B}(K^r) - dim(Z_{q,B}(K^r) ∩ B_{q,B}(K^s)).
std::size_t bounded_persistent_betti(const FilteredComplex& complex, int q, double B, double r, double s);

/// |beta_{q,B}^{r,s}(K) - beta_{q,B}^{r,s}(J)| against the quotient dimensions
/// dim Z_{q,B}(K^r)/Z_{q,B}(J^r) + dim B_{q,B}(K^s)/B_{q,B}(J^s).
BoundReport bounded_geometric_lemma_check(const FilteredComplex& J, const FilteredComplex& K, int q, double B,
                                          double r, double s);

} // namespace tdaboot
