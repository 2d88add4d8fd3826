#include <doctest.h>

#include <random>

#include "constructions.hpp"
#include "error.hpp"
#include "grid_format.hpp"
#include "pointset.hpp"
#include "verifier.hpp"

using namespace linefree;

TEST_CASE("layers of a box")
{
    auto h = hypercube(5, 3);
    CHECK(layer(h, 4).empty());
    CHECK(layer(h, 0) == hypercube(5, 2));
    CHECK(layer(h, 0).size() == 16);
    CHECK_THROWS_AS(layer(h, 5), Error);
    CHECK_THROWS_AS(layer(hypercube(5, 1), 0), Error);

    std::vector<PointSet> parts;
    for (int j = 0; j < 5; ++j)
        parts.push_back(layer(h, j));
    CHECK(assemble_layers(parts) == h);
}

TEST_CASE("products")
{
    CHECK(product(hypercube(5, 2), hypercube(5, 1)) == hypercube(5, 3));
    CHECK(product(hypercube(5, 2), hypercube(5, 1)).size() == 64);
    CHECK(product(hypercube(5, 2), PointSet(SpaceSpec(5, 1))).empty());
    CHECK_THROWS_AS(product(hypercube(5, 2), hypercube(7, 1)), Error);

    // a occupies the leading coordinates.
    SpaceSpec s1(5, 1);
    auto a = PointSet::from_indices(s1, {1});
    auto b = PointSet::from_indices(s1, {3});
    auto ab = product(a, b);
    CHECK(ab.size() == 1);
    CHECK(ab.contains(Point{{1, 3}}));
}

TEST_CASE("affine maps")
{
    auto s = sqrt_construction(5);
    CHECK(apply_affine(s, Matrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, Point{{0, 0, 0}}) == s);
    CHECK_THROWS_AS(apply_affine(s, Matrix{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}, Point{{0, 0, 0}}), Error);
    CHECK(determinant_mod(Matrix{{2, 1}, {1, 1}}, 5) == 1);
    CHECK(determinant_mod(Matrix{{1, 2}, {2, 4}}, 5) == 0);

    auto t = apply_affine(s, Matrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, Point{{1, 2, 3}});
    CHECK(t.size() == s.size());
    CHECK(t.contains(Point{{1, 2, 3}}) == s.contains(Point{{0, 0, 0}}));
}

TEST_CASE("coordinate permutation")
{
    SpaceSpec sp(5, 3);
    auto s = PointSet::from_indices(sp, {point_index(Point{{1, 2, 3}}, sp)});
    auto t = permute_coordinates(s, {2, 0, 1});
    CHECK(t.contains(Point{{3, 1, 2}}));
    CHECK_THROWS_AS(permute_coordinates(s, {0, 0, 1}), Error);
}

TEST_CASE("grid rendering and parsing")
{
    auto g = render_grid(hypercube(3, 2), 3);
    CHECK(g == "linefree-grid v1\np=3 n=2 k=3\nlayer -\nXX.\nXX.\n...\n");
    CHECK(parse_grid(g).set == hypercube(3, 2));
    CHECK(parse_grid(g).k == 3);
    CHECK(parse_grid("linefree-grid v1\np=5 n=2 k=5\n").set.empty());

    auto doc = parse_grid("linefree-grid v1\r\n# note\r\np=3 n=1 k=3\r\nlayer -\r\nX.X\r\n");
    CHECK(doc.set.size() == 2);

    CHECK_THROWS_AS(parse_grid("p=3 n=2 k=3\n"), Error);
    CHECK_THROWS_AS(parse_grid("linefree-grid v1\np=4 n=2 k=3\n"), Error);
    CHECK_THROWS_AS(parse_grid("linefree-grid v1\np=3 n=2 k=3\nlayer -\nXX\nXX.\n...\n"), Error);
    CHECK_THROWS_AS(parse_grid("linefree-grid v1\np=3 n=2 k=3\nlayer -\nXQ.\nXX.\n...\n"), Error);
    try {
        parse_grid("linefree-grid v1\np=3 n=2 k=3\nlayer -\nXX.\nXZ.\n...\n");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Parse);
        CHECK(std::string(e.what()).find("line 5") != std::string::npos);
    }
}

TEST_CASE("grid round trip on random sets")
{
    std::mt19937 rng(7);
    for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {3, 2}, {5, 2}, {5, 3}, {7, 3}, {3, 4}, {5, 4}}) {
        SpaceSpec sp(p, n);
        for (int trial = 0; trial < 10; ++trial) {
            std::bernoulli_distribution coin(0.3 + 0.05 * trial);
            PointSet s(sp);
            for (PointIndex i = 0; i < sp.point_count(); ++i)
                if (coin(rng))
                    s.insert(i);
            auto doc = parse_grid(render_grid(s, p));
            CHECK(doc.set == s);
            CHECK(render_grid(doc.set, doc.k) == render_grid(s, p));
        }
    }
}

TEST_CASE("grid file io")
{
    auto path = std::string("grid_io_test.grid");
    auto s = load_reference_set("fig70");
    write_grid_file(path, s, 5);
    auto doc = read_grid_file(path);
    CHECK(doc.set == s);
    CHECK(doc.k == 5);
    std::remove(path.c_str());
    try {
        read_grid_file("/nonexistent/dir/x.grid");
        FAIL("expected an io error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Io);
    }
}
