#include <doctest.h>

#include <random>

#include "constructions.hpp"
#include "grid_format.hpp"
#include "verifier.hpp"

using namespace linefree;

namespace {

const std::vector<std::pair<int, int>> kMatrix{{5, 2}, {7, 2}, {5, 3}, {5, 4}, {7, 3}, {7, 4}, {11, 3}, {13, 3}};

Matrix random_invertible(int n, int p, std::mt19937& rng)
{
    std::uniform_int_distribution<int> d(0, p - 1);
    for (;;) {
        Matrix m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
        for (auto& row : m)
            for (auto& x : row)
                x = d(rng);
        if (determinant_mod(m, p) != 0)
            return m;
    }
}

}  // namespace

TEST_CASE("double-counting identities on random sets")
{
    std::mt19937 rng(2024);
    for (auto [p, n] : kMatrix) {
        SpaceSpec sp(p, n);
        for (int trial = 0; trial < 100; ++trial) {
            std::bernoulli_distribution coin((trial % 10 + 0.5) / 10.0);
            PointSet s(sp);
            for (PointIndex i = 0; i < sp.point_count(); ++i)
                if (coin(rng))
                    s.insert(i);
            auto r = identity_check(s);
            CHECK(r.holds());
            const auto m = static_cast<long long>(s.size());
            CHECK(r.incidences == m * static_cast<long long>(sp.direction_count()));
            CHECK(r.pairs == m * (m - 1) / 2);
        }
    }
}

TEST_CASE("freeness is affine invariant")
{
    std::mt19937 rng(99);
    std::vector<std::pair<PointSet, int>> sets{{load_reference_set("fig70"), 5}, {sqrt_construction(5), 5},
                                               {qr_construction(7), 7}, {layered(5, 4), 5}};
    for (int trial = 0; trial < 50; ++trial) {
        const auto& [s, k] = sets[static_cast<std::size_t>(trial) % sets.size()];
        const int p = s.space().p(), n = s.space().n();
        auto m = random_invertible(n, p, rng);
        std::uniform_int_distribution<int> d(0, p - 1);
        Point v{std::vector<int>(static_cast<std::size_t>(n))};
        for (auto& x : v.coords)
            x = d(rng);
        auto img = apply_affine(s, m, v);
        CHECK(img.size() == s.size());
        CHECK(!find_progression(img, k));
        // A set with a progression keeps one.
        auto withline = s;
        const auto lines = enumerate_lines(s.space());
        for (const auto& q : lines[static_cast<std::size_t>(trial)].points)
            withline.insert(q);
        CHECK(find_progression(apply_affine(withline, m, v), k).has_value());
    }
}

TEST_CASE("products of free sets are free")
{
    std::vector<PointSet> pieces{hypercube(5, 1), hypercube(5, 2), layered(5, 3), sqrt_construction(5), load_reference_set("fig70")};
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = 0; j < pieces.size(); ++j) {
            if (pieces[i].space().n() + pieces[j].space().n() > 5)
                continue;
            auto s = product(pieces[i], pieces[j]);
            CHECK(s.size() == pieces[i].size() * pieces[j].size());
            CHECK(!find_progression(s, 5, 4));
        }
    auto q = product(hypercube(7, 1), qr_construction(7));
    CHECK(q.size() == 6 * 225);
    CHECK(!find_progression(q, 7, 4));
}

TEST_CASE("grid round trip on bundled and generated sets")
{
    std::vector<std::pair<PointSet, int>> sets{
        {load_reference_set("fig70"), 5}, {hypercube(3, 2), 3}, {hypercube(5, 1), 5}, {layered(5, 3), 5},
        {layered(5, 4), 5}, {layered(7, 4), 7}, {sqrt_construction(11), 11}, {qr_construction(7), 7},
        {qr_construction(31), 31}, {PointSet(SpaceSpec(5, 3)), 5}, {PointSet::full(SpaceSpec(3, 4)), 3}};
    for (const auto& [s, k] : sets) {
        auto text = render_grid(s, k);
        auto doc = parse_grid(text);
        CHECK(doc.set == s);
        CHECK(doc.k == k);
        CHECK(render_grid(doc.set, doc.k) == text);
    }
    CHECK(parse_grid(std::string(reference_set_text("fig70"))).set == load_reference_set("fig70"));
}

TEST_CASE("verdicts do not depend on the thread count")
{
    std::mt19937 rng(5);
    std::vector<PointSet> sets{load_reference_set("fig70"), layered(7, 4), qr_construction(7), sqrt_construction(13)};
    for (int i = 0; i < 6; ++i) {
        auto s = layered(5, 4);
        std::uniform_int_distribution<PointIndex> d(0, static_cast<PointIndex>(s.space().point_count() - 1));
        for (int j = 0; j < 5 + 10 * i; ++j)
            s.insert(d(rng));
        sets.push_back(s);
    }
    for (const auto& s : sets) {
        const int p = s.space().p();
        for (int k : {3, p - 1, p}) {
            auto base = find_progression(s, k, 1);
            auto prof = line_profile(s, 1);
            for (int t : {2, 4, 7}) {
                auto w = find_progression(s, k, t);
                REQUIRE(w.has_value() == base.has_value());
                if (w) {
                    CHECK(w->points == base->points);
                    CHECK(w->step == base->step);
                }
                CHECK(line_profile(s, t).x == prof.x);
            }
        }
    }
}
