#include "oracles.hpp"

#include "tdaboot/errors.hpp"
#include "tdaboot/pointcloud.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace tdaboot;

TEST_CASE("csv parsing keeps rows and column order") {
    const auto c = parse_csv("0,0\n1,0\n0,1\n");
    CHECK(c.size() == 3);
    CHECK(c.dim() == 2);
    CHECK(c.point(1)[0] == 1.0);
    CHECK(c.point(2)[1] == 1.0);
}

TEST_CASE("csv header row is skipped") {
    const auto c = parse_csv("x,y\n1.5,2\n3,4\n");
    CHECK(c.size() == 2);
    CHECK(c.point(0)[0] == 1.5);
}

TEST_CASE("csv errors carry the data row") {
    try {
        parse_csv("0,0\n1,a\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.row() == 1);
    }
    try {
        parse_csv("0,0\n1,2,3\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.row() == 1);
    }
    CHECK_THROWS_AS(parse_csv(""), EmptyInput);
    CHECK_THROWS_AS(parse_csv("0,0\n0,nan\n"), ParseError);
    CHECK_THROWS_AS(parse_csv("0,0\n1e999,0\n"), ParseError);
}

TEST_CASE("csv file round trip") {
    const auto path = std::filesystem::temp_directory_path() / "tdaboot_roundtrip.csv";
    const auto c = PointCloud::from_rows({{0.1, -2.0}, {1e-17, 3.25}, {0.1, -2.0}});
    write_csv(path, c);
    const auto back = load_csv(path);
    CHECK(back == c);
    std::filesystem::remove(path);
}

TEST_CASE("scale multiplies coordinates") {
    const auto c = PointCloud::from_rows({{1, 2}});
    CHECK(scale(c, 2.0).point(0)[1] == 4.0);
    CHECK(scale(c, 1.0) == c);
    CHECK_THROWS_AS(scale(c, 0.0), InvalidArgument);
    CHECK_THROWS_AS(scale(c, -1.0), InvalidArgument);
}

TEST_CASE("n^(1/d) factor") {
    CHECK(sample_scale_factor(8, 3) == 2.0);
    CHECK(sample_scale_factor(100, 2) == 10.0);
    std::mt19937_64 gen(3);
    const auto c = oracle::random_cloud(gen, 8, 3);
    const auto s = scale(c, sample_scale_factor(c.size(), c.dim()));
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(s.point(i)[j] == 2.0 * c.point(i)[j]);
}

TEST_CASE("distance matrix examples") {
    const auto sq = PointCloud::from_rows({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const DistanceMatrix d(sq);
    std::vector<double> off;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) off.push_back(d(i, j));
    std::sort(off.begin(), off.end());
    CHECK(off[0] == 1.0);
    CHECK(off[3] == 1.0);
    CHECK(off[4] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    const auto tri = PointCloud::from_rows({{0, 0}, {3, 0}, {0, 4}});
    const DistanceMatrix t(tri);
    CHECK(t(0, 1) == 3.0);
    CHECK(t(0, 2) == 4.0);
    CHECK(t(1, 2) == 5.0);
    CHECK(DistanceMatrix(PointCloud::from_rows({{1, 1}, {1, 1}}))(0, 1) == 0.0);
    CHECK_THROWS_AS(distance_matrix(PointCloud(2)), EmptyInput);
}

TEST_CASE("scaling properties on random clouds") {
    std::mt19937_64 gen(11);
    for (int t = 0; t < 20; ++t) {
        const auto c = oracle::random_cloud(gen, 10, 3, 5.0);
        const auto ab = scale(scale(c, 1.7), 0.3);
        const auto direct = scale(c, 1.7 * 0.3);
        for (std::size_t i = 0; i < c.coords().size(); ++i)
            CHECK(ab.coords()[i] == doctest::Approx(direct.coords()[i]).epsilon(1e-12));
        const DistanceMatrix d(c), ds(scale(c, 2.5));
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < c.size(); ++j) {
                CHECK(ds(i, j) == doctest::Approx(2.5 * d(i, j)).epsilon(1e-9));
                CHECK(d(i, j) == d(j, i));
                for (std::size_t k = 0; k < c.size(); ++k) CHECK(d(i, k) <= d(i, j) + d(j, k) + 1e-9);
            }
    }
}
