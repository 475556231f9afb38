#include "tdaboot/bounded_homology.hpp"

#include "tdaboot/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tdaboot {

namespace {

using VSet = std::vector<Vertex>;

VSet intersect(const VSet& a, const std::vector<Vertex>& nbrs) {
    VSet out;
    std::set_intersection(a.begin(), a.end(), nbrs.begin(), nbrs.end(), std::back_inserter(out));
    return out;
}

void bron_kerbosch(VSet& R, VSet P, VSet X, const std::vector<VSet>& adj, std::vector<VSet>& out) {
    if (P.empty()) {
        if (X.empty()) out.push_back(R);
        return;
    }
    // Pivot on the vertex of P ∪ X with most neighbours in P.
    Vertex pivot = P.front();
    std::size_t best = 0;
    for (const VSet* set : {&P, &X})
        for (auto u : *set) {
            const auto c = intersect(P, adj[u]).size();
            if (c >= best) {
                best = c;
                pivot = u;
            }
        }
    VSet candidates;
    std::set_difference(P.begin(), P.end(), adj[pivot].begin(), adj[pivot].end(), std::back_inserter(candidates));
    for (auto v : candidates) {
        R.push_back(v);
        bron_kerbosch(R, intersect(P, adj[v]), intersect(X, adj[v]), adj, out);
        R.pop_back();
        P.erase(std::lower_bound(P.begin(), P.end(), v));
        X.insert(std::lower_bound(X.begin(), X.end(), v), v);
    }
}

const PointCloud& require_cloud(const FilteredComplex& complex) {
    if (!complex.cloud()) throw InvalidArgument("bounded homology needs the complex's point cloud");
    return *complex.cloud();
}

void check_args(const FilteredComplex& complex, int q, double B, double level) {
    require_cloud(complex);
    if (!(B >= 0.0)) throw InvalidArgument("diameter bound must be nonnegative");
    if (q < 0) throw InvalidArgument("negative homological dimension");
    if (q > complex.q_max()) throw OutOfRange("q exceeds the complex's q_max");
    if (level > complex.r_max()) throw OutOfRange("level exceeds the complex's r_max");
}

std::vector<std::size_t> rank_in_dim(const FilteredComplex& complex) {
    std::vector<std::size_t> rank(complex.size());
    for (int k = 0; k <= complex.max_dim(); ++k) {
        auto idx = complex.of_dim(k);
        for (std::size_t a = 0; a < idx.size(); ++a) rank[idx[a]] = a;
    }
    return rank;
}

std::vector<std::vector<Vertex>> cliques_of(const FilteredComplex& complex, double B) {
    const auto& cloud = require_cloud(complex);
    if (cloud.empty()) return {};
    return maximal_cliques(DistanceMatrix(cloud), B);
}

bool inside(std::span<const Vertex> verts, const std::vector<char>& member) {
    return std::all_of(verts.begin(), verts.end(), [&](Vertex v) { return member[v] != 0; });
}

ChainBasis ambient_basis(const FilteredComplex& complex, int q, double level) {
    ChainBasis out;
    out.q = q;
    out.level = level;
    auto idx = complex.of_dim(q);
    out.ambient.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(complex.count(q, level)));
    return out;
}

/// Re-expresses basis vectors over a longer prefix ambient of the same dimension.
std::vector<gf2::BitVector> widen(const std::vector<gf2::BitVector>& vs, std::size_t nbits) {
    std::vector<gf2::BitVector> out;
    for (const auto& v : vs) {
        gf2::BitVector w(nbits);
        for (auto i : v.ones()) w.set(i);
        out.push_back(std::move(w));
    }
    return out;
}

} // namespace

std::vector<std::vector<Vertex>> maximal_cliques(const DistanceMatrix& dist, double B) {
    const std::size_t n = dist.size();
    std::vector<VSet> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && dist(i, j) <= B) adj[i].push_back(static_cast<Vertex>(j));
    std::vector<VSet> out;
    VSet R, P(n);
    for (std::size_t i = 0; i < n; ++i) P[i] = static_cast<Vertex>(i);
    bron_kerbosch(R, P, {}, adj, out);
    for (auto& c : out) std::sort(c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
}

ChainBasis bounded_cycle_space(const FilteredComplex& complex, int q, double B, double r) {
    check_args(complex, q, B, r);
    ChainBasis out = ambient_basis(complex, q, r);
    const std::size_t nq = out.ambient.size();
    if (q == 0) {
        // Single vertices have diameter zero.
        for (std::size_t a = 0; a < nq; ++a) {
            gf2::BitVector v(nq);
            v.set(a);
            out.vectors.push_back(std::move(v));
        }
        return out;
    }
    const auto rank = rank_in_dim(complex);
    const std::size_t nface = complex.count(q - 1, r);
    gf2::EchelonBasis basis(nq);
    std::vector<char> member(complex.vertex_count(), 0);
    std::vector<std::size_t> faces;
    for (const auto& clique : cliques_of(complex, B)) {
        if (clique.size() < static_cast<std::size_t>(q) + 1) continue;
        for (auto v : clique) member[v] = 1;
        std::vector<std::size_t> local;
        std::vector<gf2::BitVector> cols;
        for (std::size_t a = 0; a < nq; ++a) {
            if (!inside(complex.vertices(out.ambient[a]), member)) continue;
            gf2::BitVector col(nface);
            complex.facets(out.ambient[a], faces);
            for (auto f : faces) col.set(rank[f]);
            local.push_back(a);
            cols.push_back(std::move(col));
        }
        for (auto v : clique) member[v] = 0;
        for (const auto& z : gf2::kernel(cols, nface)) {
            gf2::BitVector v(nq);
            for (auto i : z.ones()) v.set(local[i]);
            basis.insert(std::move(v));
        }
    }
    out.vectors = basis.rows();
    return out;
}

ChainBasis bounded_boundary_space(const FilteredComplex& complex, int q, double B, double s) {
    check_args(complex, q, B, s);
    ChainBasis out = ambient_basis(complex, q, s);
    const std::size_t nq = out.ambient.size();
    if (q + 1 > complex.max_dim()) return out;
    const auto rank = rank_in_dim(complex);
    std::vector<std::size_t> faces;
    std::vector<gf2::BitVector> boundaries;
    auto cofaces = complex.of_dim(q + 1);
    const std::size_t ncof = complex.count(q + 1, s);
    for (std::size_t a = 0; a < ncof; ++a) {
        gf2::BitVector col(nq);
        complex.facets(cofaces[a], faces);
        for (auto f : faces) col.set(rank[f]);
        boundaries.push_back(std::move(col));
    }
    if (boundaries.empty()) return out;

    gf2::EchelonBasis total(nq);
    std::vector<char> member(complex.vertex_count(), 0);
    std::vector<std::size_t> perm(nq);
    for (const auto& clique : cliques_of(complex, B)) {
        if (clique.size() < static_cast<std::size_t>(q) + 1) continue;
        for (auto v : clique) member[v] = 1;
        // Order coordinates outside the clique first. In an echelon basis keyed
        // by lowest set bit, rows pivoting past the outside block are exactly a
        // basis of the boundaries supported inside the clique.
        std::size_t n_out = 0;
        std::vector<std::size_t> in_idx;
        for (std::size_t a = 0; a < nq; ++a) {
            if (inside(complex.vertices(out.ambient[a]), member))
                in_idx.push_back(a);
            else
                perm[a] = n_out++;
        }
        for (auto v : clique) member[v] = 0;
        if (in_idx.empty()) continue;
        for (std::size_t b = 0; b < in_idx.size(); ++b) perm[in_idx[b]] = n_out + b;
        gf2::EchelonBasis local(nq);
        for (const auto& col : boundaries) {
            gf2::BitVector p(nq);
            for (auto i : col.ones()) p.set(perm[i]);
            local.insert(std::move(p));
        }
        for (const auto& row : local.rows()) {
            if (*row.first() < n_out) continue;
            gf2::BitVector v(nq);
            for (auto i : row.ones()) v.set(in_idx[i - n_out]);
            total.insert(std::move(v));
        }
    }
    out.vectors = total.rows();
    return out;
}

std::size_t bounded_persistent_betti(const FilteredComplex& complex, int q, double B, double r, double s) {
    if (r > s) throw InvalidArgument("bounded persistent Betti query needs r <= s");
    const auto z = bounded_cycle_space(complex, q, B, r);
    const auto b = bounded_boundary_space(complex, q, B, s);
    const std::size_t nbits = b.ambient.size();
    const auto zw = widen(z.vectors, nbits);
    return gf2::extension_count(zw, b.vectors, nbits);
}

namespace {

/// Maps a basis of J's chains into K's ambient through vertex labels.
std::vector<gf2::BitVector> transport(const ChainBasis& from, const FilteredComplex& J, const ChainBasis& to,
                                      const FilteredComplex& K) {
    std::vector<std::size_t> where(from.ambient.size());
    for (std::size_t a = 0; a < from.ambient.size(); ++a) {
        auto pos = K.find(J.vertices(from.ambient[a]));
        if (!pos) throw NotNested("chain simplex of J missing from K");
        auto it = std::find(to.ambient.begin(), to.ambient.end(), *pos);
        if (it == to.ambient.end()) throw NotNested("chain simplex of J enters K too late");
        where[a] = static_cast<std::size_t>(it - to.ambient.begin());
    }
    std::vector<gf2::BitVector> out;
    for (const auto& v : from.vectors) {
        gf2::BitVector w(to.ambient.size());
        for (auto i : v.ones()) w.set(where[i]);
        out.push_back(std::move(w));
    }
    return out;
}

} // namespace

BoundReport bounded_geometric_lemma_check(const FilteredComplex& J, const FilteredComplex& K, int q, double B,
                                          double r, double s) {
    if (r > s) throw InvalidArgument("lemma check needs r <= s");
    require_nested(J, K);
    const auto zk = bounded_cycle_space(K, q, B, r);
    const auto zj = bounded_cycle_space(J, q, B, r);
    const auto bk = bounded_boundary_space(K, q, B, s);
    const auto bj = bounded_boundary_space(J, q, B, s);
    const auto zj_in_k = transport(zj, J, zk, K);
    const auto bj_in_k = transport(bj, J, bk, K);

    const auto beta_k = static_cast<double>(bounded_persistent_betti(K, q, B, r, s));
    const auto beta_j = static_cast<double>(bounded_persistent_betti(J, q, B, r, s));
    BoundReport rep;
    rep.lhs = std::abs(beta_k - beta_j);
    rep.rhs = static_cast<double>(gf2::extension_count(zk.vectors, zj_in_k, zk.ambient.size()) +
                                  gf2::extension_count(bk.vectors, bj_in_k, bk.ambient.size()));
    rep.passed = rep.lhs <= rep.rhs;
    return rep;
}

} // namespace tdaboot
