#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "error.hpp"
#include "geometry.hpp"

using namespace linefree;

namespace {

// Lines as sorted point-index sets, found by closing every pair of points
// under coordinatewise arithmetic.
std::set<std::vector<PointIndex>> pair_closure_lines(int p, int n)
{
    long long size = 1;
    for (int i = 0; i < n; ++i)
        size *= p;
    auto coords = [&](long long idx) {
        std::vector<int> c(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            c[static_cast<std::size_t>(i)] = static_cast<int>(idx % p);
            idx /= p;
        }
        return c;
    };
    auto index = [&](const std::vector<int>& c) {
        long long idx = 0;
        for (int i = n - 1; i >= 0; --i)
            idx = idx * p + c[static_cast<std::size_t>(i)];
        return static_cast<PointIndex>(idx);
    };
    std::set<std::vector<PointIndex>> lines;
    for (long long a = 0; a < size; ++a)
        for (long long b = a + 1; b < size; ++b) {
            auto ca = coords(a), cb = coords(b);
            std::vector<PointIndex> line;
            for (int t = 0; t < p; ++t) {
                std::vector<int> c(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i) {
                    auto ii = static_cast<std::size_t>(i);
                    c[ii] = ((ca[ii] + t * (cb[ii] - ca[ii])) % p + p) % p;
                }
                line.push_back(index(c));
            }
            std::sort(line.begin(), line.end());
            lines.insert(line);
        }
    return lines;
}

std::vector<PointIndex> sorted_points(const Line& l)
{
    auto v = l.points;
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("point_index uses radix p with coordinate 0 least significant")
{
    SpaceSpec sp(5, 3);
    CHECK(point_index(Point{{0, 0, 0}}, sp) == 0);
    CHECK(point_index(Point{{1, 0, 0}}, sp) == 1);
    CHECK(point_index(Point{{0, 1, 0}}, sp) == 5);
    CHECK(point_index(Point{{4, 4, 4}}, sp) == 124);
    for (PointIndex i = 0; i < sp.point_count(); ++i)
        CHECK(point_index(index_point(i, sp), sp) == i);
    CHECK_THROWS_AS(point_index(Point{{5, 0, 0}}, sp), Error);
    CHECK_THROWS_AS(point_index(Point{{0, 0}}, sp), Error);
}

TEST_CASE("space validation")
{
    CHECK_THROWS_AS(SpaceSpec(4, 2), Error);
    CHECK_THROWS_AS(SpaceSpec(2, 2), Error);
    CHECK_THROWS_AS(SpaceSpec(5, 0), Error);
    CHECK_THROWS_AS(SpaceSpec(3, 40), Error);
}

TEST_CASE("canonical_direction")
{
    SpaceSpec s5(5, 3), s7(7, 3);
    const int a[] = {2, 4, 0}, b[] = {1, 3, 3}, c[] = {0, 0, 4}, z[] = {0, 0, 0};
    CHECK(canonical_direction(a, s5).coords == std::vector<int>{1, 2, 0});
    CHECK(canonical_direction(b, s7).coords == std::vector<int>{1, 3, 3});
    CHECK(canonical_direction(c, s5).coords == std::vector<int>{0, 0, 1});
    CHECK_THROWS_AS(canonical_direction(z, s5), Error);

    // Invariant under nonzero scaling and idempotent.
    for (PointIndex v = 1; v < s7.point_count(); ++v) {
        auto cv = s7.coords_of(v);
        auto d = canonical_direction(cv, s7);
        CHECK(canonical_direction(d.coords, s7) == d);
        for (int mu = 2; mu < 7; ++mu) {
            std::vector<int> w(cv.size());
            for (std::size_t i = 0; i < cv.size(); ++i)
                w[i] = cv[i] * mu % 7;
            CHECK(canonical_direction(w, s7) == d);
        }
    }
}

TEST_CASE("line counts match pair closure")
{
    for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}, {5, 3}, {7, 2}, {11, 2}}) {
        SpaceSpec sp(p, n);
        auto lines = enumerate_lines(sp);
        auto oracle = pair_closure_lines(p, n);
        CHECK(lines.size() == oracle.size());
        CHECK(lines.size() == sp.line_count());
        std::set<std::vector<PointIndex>> got;
        for (const auto& l : lines)
            got.insert(sorted_points(l));
        CHECK(got == oracle);
    }
    CHECK(enumerate_lines(SpaceSpec(7, 2)).size() == 56);
    CHECK(enumerate_lines(SpaceSpec(5, 3)).size() == 775);
    CHECK(enumerate_lines(SpaceSpec(3, 2)).size() == 12);
}

TEST_CASE("lines are sorted by direction then base and start at the base")
{
    SpaceSpec sp(5, 3);
    auto lines = enumerate_lines(sp);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& l = lines[i];
        CHECK(l.points.front() == point_index(l.base, sp));
        for (int t = 0; t < 5; ++t)
            CHECK(l.points[static_cast<std::size_t>(t)] ==
                  sp.add_scaled(point_index(l.base, sp), point_index(Point{l.dir.coords}, sp), t));
        for (const auto& q : l.points)
            CHECK(!(index_point(q, sp) < l.base));
        if (i > 0) {
            const auto& prev = lines[i - 1];
            CHECK((prev.dir < l.dir || (prev.dir == l.dir && prev.base < l.base)));
        }
    }
}

TEST_CASE("parallel classes partition the space")
{
    CHECK_THROWS_AS(parallel_classes(SpaceSpec(5, 1)), Error);
    for (auto [p, n, expected] : std::vector<std::tuple<int, int, std::size_t>>{{5, 3, 31}, {7, 3, 57}, {5, 2, 6}}) {
        SpaceSpec sp(p, n);
        auto classes = parallel_classes(sp);
        CHECK(classes.size() == expected);
        for (const auto& c : classes) {
            CHECK(c.planes.size() == static_cast<std::size_t>(p));
            std::vector<int> hits(sp.point_count(), 0);
            for (const auto& h : c.planes)
                for (auto q : hyperplane_points(h, sp))
                    ++hits[q];
            CHECK(std::all_of(hits.begin(), hits.end(), [](int v) { return v == 1; }));
        }
    }
}

TEST_CASE("planes of a line")
{
    for (int p : {5, 7}) {
        SpaceSpec sp(p, 3);
        auto lines = enumerate_lines(sp);
        for (std::size_t i = 0; i < lines.size(); i += 17) {
            auto planes = planes_of_line(lines[i], sp);
            CHECK(planes.size() == static_cast<std::size_t>(p + 1));
            for (const auto& h : planes)
                for (auto q : lines[i].points)
                    CHECK(h.contains(sp.coords_of(q), p));
            // Direct count: planes containing both of two points are exactly these.
            std::size_t direct = 0;
            for (const auto& c : parallel_classes(sp))
                for (const auto& h : c.planes)
                    if (h.contains(sp.coords_of(lines[i].points[0]), p) && h.contains(sp.coords_of(lines[i].points[1]), p))
                        ++direct;
            CHECK(direct == static_cast<std::size_t>(p + 1));
        }
    }
    SpaceSpec sp(5, 3);
    Line axis;
    for (const auto& l : enumerate_lines(sp))
        if (l.dir.coords == std::vector<int>{1, 0, 0} && l.base.coords == std::vector<int>{0, 0, 0})
            axis = l;
    auto planes = planes_of_line(axis, sp);
    std::set<std::vector<int>> normals;
    for (const auto& h : planes) {
        CHECK(h.constant == 0);
        normals.insert(h.normal.coords);
    }
    std::set<std::vector<int>> expected{{0, 1, 0}, {0, 0, 1}, {0, 1, 1}, {0, 1, 2}, {0, 1, 3}, {0, 1, 4}};
    CHECK(normals == expected);
    CHECK_THROWS_AS(planes_of_line(enumerate_lines(SpaceSpec(5, 2))[0], SpaceSpec(5, 2)), Error);
}

TEST_CASE("incidence index")
{
    for (auto [p, n, through] : std::vector<std::tuple<int, int, std::size_t>>{{5, 3, 31}, {3, 2, 4}, {5, 1, 1}}) {
        SpaceSpec sp(p, n);
        auto idx = build_incidence_index(sp);
        std::vector<std::size_t> scan(sp.point_count(), 0);
        for (const auto& l : enumerate_lines(sp))
            for (auto q : l.points)
                ++scan[q];
        for (PointIndex q = 0; q < sp.point_count(); ++q) {
            CHECK(idx.lines_through(q).size() == through);
            CHECK(scan[q] == through);
        }
        for (PointIndex a = 0; a < sp.point_count(); ++a)
            for (PointIndex b = a + 1; b < sp.point_count(); ++b) {
                const auto& l = idx.lines()[idx.pair_line(a, b)];
                CHECK(std::count(l.points.begin(), l.points.end(), a) == 1);
                CHECK(std::count(l.points.begin(), l.points.end(), b) == 1);
            }
    }
    auto one = enumerate_lines(SpaceSpec(5, 1));
    REQUIRE(one.size() == 1);
    CHECK(one[0].points.size() == 5);

    SpaceSpec s3(5, 3);
    auto idx = build_incidence_index(s3);
    std::vector<int> per_point(s3.point_count(), 0);
    for (const auto& h : idx.planes())
        for (auto q : hyperplane_points(h, s3))
            ++per_point[q];
    CHECK(idx.planes().size() == 5u * 31u);
    CHECK(std::all_of(per_point.begin(), per_point.end(), [](int v) { return v == 31; }));
    for (std::uint32_t l = 0; l < idx.lines().size(); ++l)
        CHECK(idx.planes_of_line(l).size() == 6);

    CHECK_THROWS_AS(build_incidence_index(s3, 1024), Error);
    try {
        build_incidence_index(s3, 1024);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Resource);
    }
}
