#include "oracles.hpp"

#include "tdaboot/complex.hpp"
#include "tdaboot/errors.hpp"
#include "tdaboot/persistence.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace tdaboot;

namespace {

const auto kTriangle = PointCloud::from_rows({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}});
const auto kSquare = PointCloud::from_rows({{0, 0}, {1, 0}, {1, 1}, {0, 1}});

FilteredComplex full_simplex(std::size_t n) {
    std::vector<Simplex> s;
    for (auto m : oracle::subsets(n, n)) {
        auto v = oracle::members(m);
        s.push_back({std::vector<Vertex>(v.begin(), v.end()), 0.0});
    }
    return FilteredComplex::from_simplices(n, std::move(s), 0.0, static_cast<int>(n) - 2);
}

std::vector<double> level_grid(double r_max) {
    std::vector<double> g;
    for (int i = 0; i < 5; ++i) g.push_back(r_max * i / 4.0);
    return g;
}

} // namespace

TEST_CASE("triangle VR diagram") {
    const auto d = compute_diagram(build_vr(kTriangle, 1.0, 1));
    auto h0 = d.points(0);
    REQUIRE(h0.size() == 3);
    std::sort(h0.begin(), h0.end(), [](auto& a, auto& b) { return a.death < b.death; });
    CHECK(h0[0].birth == 0.0);
    CHECK(h0[0].death == doctest::Approx(0.5));
    CHECK(h0[1].death == doctest::Approx(0.5));
    CHECK(std::isinf(h0[2].death));
    CHECK(d.points(1).empty());
    CHECK(d.zero_persistence_count() == 1);
}

TEST_CASE("triangle Cech has a short loop") {
    const auto h1 = compute_diagram(build_cech(kTriangle, 1.0, 1)).points(1);
    REQUIRE(h1.size() == 1);
    CHECK(h1[0].birth == doctest::Approx(0.5));
    CHECK(h1[0].death == doctest::Approx(1.0 / std::sqrt(3.0)));
}

TEST_CASE("square VR loop") {
    const auto c = build_vr(kSquare, 1.0, 1);
    const auto h1 = compute_diagram(c).points(1);
    REQUIRE(h1.size() == 1);
    CHECK(h1[0].birth == doctest::Approx(0.5));
    CHECK(h1[0].death == doctest::Approx(std::sqrt(2.0) / 2.0));
    // Cross-check both levels against the rank oracle.
    const auto ref = oracle::vr(kSquare, 1.0, 2);
    CHECK(oracle::persistent_betti(ref, 1, 0.5, 0.5) == 1);
    CHECK(oracle::persistent_betti(ref, 1, 0.75, 0.75) == 0);
}

TEST_CASE("persistent Betti counting") {
    const PersistenceDiagram d({{0.2, 0.9, 1}, {0.5, 0.7, 1}});
    CHECK(persistent_betti(d, 1, 0.5, 0.8) == 1);
    CHECK(persistent_betti(PersistenceDiagram(), 1, 0.1, 0.2) == 0);
    CHECK_THROWS_AS(persistent_betti(d, 1, 0.8, 0.5), InvalidArgument);
}

TEST_CASE("r = s gives ordinary Betti numbers") {
    const auto c = build_vr(kSquare, 1.0, 1);
    const auto d = compute_diagram(c);
    CHECK(persistent_betti(d, 0, 0.3, 0.3) == 4);
    CHECK(persistent_betti(d, 0, 0.5, 0.5) == 1);
    CHECK(persistent_betti(d, 1, 0.6, 0.6) == 1);
}

TEST_CASE("direct rank route examples") {
    const auto one = build_vr(PointCloud::from_rows({{0.0, 0.0}}), 1.0, 1);
    CHECK(persistent_betti_direct(one, 0, 0.0, 0.0) == 1);
    CHECK(persistent_betti_direct(one, 0, 0.3, 0.9) == 1);
    const auto two = build_vr(PointCloud::from_rows({{0.0}, {1.0}}), 1.0, 1);
    CHECK(persistent_betti_direct(two, 0, 0.2, 0.6) == 1);
    CHECK(persistent_betti_direct(two, 0, 0.2, 0.4) == 2);
    CHECK_THROWS_AS(persistent_betti_direct(two, 0, 0.2, 1.5), OutOfRange);
    CHECK_THROWS_AS(persistent_betti_direct(two, 2, 0.2, 0.5), OutOfRange);
    CHECK_THROWS_AS(persistent_betti_direct(two, 0, 0.5, 0.2), InvalidArgument);
}

TEST_CASE("Betti curves") {
    const auto tri = compute_diagram(build_vr(kTriangle, 1.0, 1));
    const std::vector<double> g{0.25, 0.75};
    CHECK(betti_curve(tri, 0, g) == std::vector<std::size_t>{3, 1});
    CHECK(betti_curve(tri, 5, g) == std::vector<std::size_t>{0, 0});
    const std::vector<double> bad{0.75, 0.25};
    CHECK_THROWS_AS(betti_curve(tri, 0, bad), InvalidArgument);
    const std::vector<double> g6{0.6};
    CHECK(betti_curve(compute_diagram(build_cech(kSquare, 1.0, 1)), 1, g6) == std::vector<std::size_t>{1});
}

TEST_CASE("Euler characteristics") {
    std::mt19937_64 gen(1);
    const auto spread = scale(oracle::random_cloud(gen, 4, 2), 100.0);
    CHECK(euler_characteristic(build_vr(spread, 0.001, 1), 0.0) == 4);
    const auto tet = full_simplex(4);
    CHECK(euler_characteristic(tet, 0.0) == 1);
    CHECK(truncated_euler(tet, 1, 0.0) == -2);
    CHECK(truncated_euler(tet, 0, 0.0) == 4);
    CHECK(truncated_euler(tet, 3, 0.0) == euler_characteristic(tet, 0.0));
    CHECK_THROWS_AS(truncated_euler(tet, 4, 0.0), OutOfRange);
    CHECK(euler_characteristic(build_vr(kTriangle, 1.0, 1), 0.5 + 1e-12) == 1);
    CHECK_THROWS_AS(euler_characteristic(build_vr(kTriangle, 1.0, 1), 2.0), OutOfRange);
}

TEST_CASE("diagram route agrees with both rank routes") {
    std::mt19937_64 gen(101);
    for (int t = 0; t < 200; ++t) {
        const auto cloud = oracle::random_cloud(gen, 8, 2 + t % 2);
        const double r_max = 0.6;
        const auto c = build_vr(cloud, r_max, 2);
        const auto d = compute_diagram(c);
        const auto ref = oracle::vr(cloud, r_max, 3);
        const auto grid = level_grid(r_max);
        for (int q = 0; q <= 2; ++q)
            for (double r : grid)
                for (double s : grid) {
                    if (r > s) continue;
                    const auto want = oracle::persistent_betti(ref, q, r, s);
                    REQUIRE(persistent_betti(d, q, r, s) == want);
                    REQUIRE(persistent_betti_direct(c, q, r, s) == want);
                }
    }
}

TEST_CASE("Cech diagram agrees with the direct route") {
    std::mt19937_64 gen(103);
    for (int t = 0; t < 40; ++t) {
        const auto cloud = oracle::random_cloud(gen, 7, 2);
        const auto c = build_cech(cloud, 0.5, 1);
        const auto d = compute_diagram(c);
        for (int q = 0; q <= 1; ++q)
            for (double r : level_grid(0.5))
                for (double s : level_grid(0.5))
                    if (r <= s) REQUIRE(persistent_betti(d, q, r, s) == persistent_betti_direct(c, q, r, s));
    }
}

TEST_CASE("Euler-Poincare on complete filtrations") {
    std::mt19937_64 gen(107);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 3 + t % 6;
        const auto cloud = oracle::random_cloud(gen, n, 2 + t % 2);
        const auto c = build_vr(cloud, 2.0, static_cast<int>(n) - 2);
        const auto d = compute_diagram(c);
        for (double r : {0.0, 0.1, 0.2, 0.3, 0.5, 0.8}) {
            long long alt = 0;
            for (int k = 0; k <= c.max_dim(); ++k) {
                const auto b = static_cast<long long>(persistent_betti(d, k, r, r));
                alt += (k % 2 == 0) ? b : -b;
            }
            REQUIRE(euler_characteristic(c, r) == alt);
        }
    }
}

TEST_CASE("persistent Betti monotonicity") {
    std::mt19937_64 gen(109);
    for (int t = 0; t < 30; ++t) {
        const auto d = compute_diagram(build_vr(oracle::random_cloud(gen, 12, 2), 0.5, 1));
        const auto grid = level_grid(0.5);
        for (int q = 0; q <= 1; ++q)
            for (std::size_t i = 0; i + 1 < grid.size(); ++i)
                for (double x : grid) {
                    if (x >= grid[i + 1]) CHECK(persistent_betti(d, q, grid[i], x) <= persistent_betti(d, q, grid[i + 1], x));
                    if (x <= grid[i]) CHECK(persistent_betti(d, q, x, grid[i]) >= persistent_betti(d, q, x, grid[i + 1]));
                }
    }
}

TEST_CASE("diagram depends only on the ordered simplex list") {
    std::mt19937_64 gen(113);
    const auto c = build_vr(oracle::random_cloud(gen, 10, 2), 0.5, 1);
    std::vector<Simplex> s;
    for (std::size_t i = 0; i < c.size(); ++i) s.push_back(c.simplex(i));
    std::shuffle(s.begin(), s.end(), gen);
    const auto again = FilteredComplex::from_simplices(c.vertex_count(), s, c.r_max(), c.q_max());
    CHECK(again.dump() == c.dump());
    CHECK(compute_diagram(again).points() == compute_diagram(c).points());
    std::ostringstream a, b;
    compute_diagram(c).write_csv(a);
    compute_diagram(again).write_csv(b);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("q,birth,death\n", 0) == 0);
    CHECK(a.str().find("inf") != std::string::npos);
}

TEST_CASE("geometric lemma on point additions") {
    std::mt19937_64 gen(127);
    std::size_t checks = 0;
    for (int t = 0; t < 100; ++t) {
        const auto S = oracle::random_cloud(gen, 5 + t % 4, 2);
        const auto z = oracle::random_cloud(gen, 1, 2);
        const auto J = build_vr(S, 0.6, 1);
        const auto K = build_vr(S.with_point(z.point(0)), 0.6, 1);
        for (int q = 0; q <= 1; ++q)
            for (double r : level_grid(0.6))
                for (double s : level_grid(0.6)) {
                    if (r > s) continue;
                    const auto rep = geometric_lemma_check(J, K, q, r, s);
                    REQUIRE(rep.passed);
                    ++checks;
                }
    }
    CHECK(checks == 100 * 2 * 15);
}

TEST_CASE("geometric lemma edge cases") {
    const auto K = build_vr(kSquare, 1.0, 1);
    const auto same = geometric_lemma_check(K, K, 1, 0.5, 0.6);
    CHECK(same.lhs == 0.0);
    CHECK(same.rhs == 0.0);
    const auto empty = FilteredComplex::from_simplices(0, {}, 1.0, 1);
    const auto point = build_vr(PointCloud::from_rows({{0.0, 0.0}}), 1.0, 1);
    const auto rep = geometric_lemma_check(empty, point, 0, 0.3, 0.3);
    CHECK(rep.lhs == 1.0);
    CHECK(rep.rhs == 1.0);
    CHECK(rep.passed);
    CHECK_THROWS_AS(geometric_lemma_check(point, empty, 0, 0.3, 0.3), NotNested);
}
