#include "verifier.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <mutex>
#include <string>

#include "error.hpp"
#include "parallel.hpp"

namespace linefree {

namespace {

std::optional<ProgressionWitness> make_witness(const SpaceSpec& sp, PointIndex base, PointIndex step, int k)
{
    ProgressionWitness w;
    w.base = index_point(base, sp);
    w.step = index_point(step, sp);
    w.dir = Direction{sp.coords_of(canonical_direction_index(step, sp))};
    w.k = k;
    for (int i = 0; i < k; ++i)
        w.points.push_back(sp.add_scaled(base, step, i));
    return w;
}

}  // namespace

std::optional<ProgressionWitness> find_progression(const PointSet& s, int k, int threads)
{
    const auto& sp = s.space();
    const int p = sp.p();
    require(k >= 3 && k <= p, "k must be in [3, p], got " + std::to_string(k));
    const int t = resolve_threads(threads);
    using Key = std::pair<PointIndex, PointIndex>;  // (base, step)
    constexpr Key none{std::numeric_limits<PointIndex>::max(), std::numeric_limits<PointIndex>::max()};

    if (k == p) {
        const auto dirs = canonical_direction_indices(sp);
        std::vector<Key> best(static_cast<std::size_t>(t), none);
        parallel_blocks(dirs.size(), t, [&](std::size_t w, std::size_t b, std::size_t e) {
            std::vector<std::uint8_t> seen;
            for (std::size_t di = b; di < e; ++di) {
                // Bases come in increasing order, so the first full line is
                // this direction's least candidate.
                bool found = false;
                for_each_line_in_direction(sp, dirs[di], seen, [&](std::span<const PointIndex> pts) {
                    if (found)
                        return;
                    for (auto x : pts)
                        if (!s.contains(x))
                            return;
                    found = true;
                    best[w] = std::min(best[w], Key{pts[0], dirs[di]});
                });
            }
        });
        auto m = *std::min_element(best.begin(), best.end());
        if (m == none)
            return std::nullopt;
        return make_witness(sp, m.first, m.second, k);
    }

    const auto members = s.indices();
    std::vector<Key> best(static_cast<std::size_t>(t), none);
    parallel_blocks(members.size(), t, [&](std::size_t w, std::size_t b, std::size_t e) {
        for (std::size_t ai = b; ai < e; ++ai) {
            const PointIndex a = members[ai];
            for (PointIndex step = 1; step < sp.point_count(); ++step) {
                bool ok = true;
                for (int i = 1; i < k && ok; ++i)
                    ok = s.contains(sp.add_scaled(a, step, i));
                if (ok) {
                    best[w] = Key{a, step};
                    return;
                }
            }
        }
    });
    auto m = *std::min_element(best.begin(), best.end());
    if (m == none)
        return std::nullopt;
    return make_witness(sp, m.first, m.second, k);
}

LineProfile line_profile(const PointSet& s, int threads)
{
    const auto& sp = s.space();
    const auto p = static_cast<std::size_t>(sp.p());
    const auto dirs = canonical_direction_indices(sp);
    const int t = resolve_threads(threads);
    std::vector<std::vector<long long>> parts(static_cast<std::size_t>(t), std::vector<long long>(p + 1, 0));
    parallel_blocks(dirs.size(), t, [&](std::size_t w, std::size_t b, std::size_t e) {
        std::vector<std::uint8_t> seen;
        for (std::size_t di = b; di < e; ++di)
            for_each_line_in_direction(sp, dirs[di], seen, [&](std::span<const PointIndex> pts) {
                std::size_t c = 0;
                for (auto x : pts)
                    c += s.contains(x) ? 1 : 0;
                ++parts[w][c];
            });
    });
    LineProfile out{std::vector<long long>(p + 1, 0)};
    for (const auto& part : parts)
        for (std::size_t i = 0; i <= p; ++i)
            out.x[i] += part[i];
    return out;
}

PlaneProfile plane_profile(const PointSet& s)
{
    const auto& sp = s.space();
    if (sp.n() != 3)
        fail(ErrorKind::Unsupported, "plane profile is defined for n = 3 only");
    const int p = sp.p();
    PlaneProfile out;
    const auto members = s.indices();
    std::vector<std::vector<int>> coords;
    coords.reserve(members.size());
    for (auto m : members)
        coords.push_back(sp.coords_of(m));
    for (auto d : canonical_direction_indices(sp)) {
        auto nrm = sp.coords_of(d);
        std::vector<long long> cnt(static_cast<std::size_t>(p), 0);
        for (const auto& c : coords)
            ++cnt[static_cast<std::size_t>((nrm[0] * c[0] + nrm[1] * c[1] + nrm[2] * c[2]) % p)];
        std::sort(cnt.begin(), cnt.end());
        out.normals.push_back(Direction{std::move(nrm)});
        out.sizes.push_back(std::move(cnt));
    }
    return out;
}

LineBounds lp_line_bounds(int p, long long m)
{
    require(is_prime(p) && p >= 3, "p must be an odd prime");
    require(m >= 0 && m <= static_cast<long long>(p) * p, "m must be in [0, p^2]");
    // Rows: line total, incidences, pairs. Columns i = 0..p-1.
    const Rational rhs[3] = {Rational(p) * (p + 1), Rational(p + 1) * m, Rational(m) * (m - 1) / 2};
    auto col = [](int i) {
        return std::array<Rational, 3>{Rational(1), Rational(i), Rational(i) * (i - 1) / 2};
    };
    auto det3 = [](const std::array<std::array<Rational, 3>, 3>& a) {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    LineBounds out;
    const int target = p - 1;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            for (int k = j + 1; k < p; ++k) {
                const int idx[3] = {i, j, k};
                std::array<std::array<Rational, 3>, 3> a{};
                for (int c = 0; c < 3; ++c) {
                    auto v = col(idx[c]);
                    for (int r = 0; r < 3; ++r)
                        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v[static_cast<std::size_t>(r)];
                }
                const Rational d = det3(a);
                if (d == 0)
                    continue;
                Rational x[3];
                bool feasible = true;
                for (int c = 0; c < 3; ++c) {
                    auto b = a;
                    for (int r = 0; r < 3; ++r)
                        b[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = rhs[r];
                    x[c] = det3(b) / d;
                    if (x[c] < 0)
                        feasible = false;
                }
                if (!feasible)
                    continue;
                Rational obj = 0;
                for (int c = 0; c < 3; ++c)
                    if (idx[c] == target)
                        obj = x[c];
                if (!out.feasible) {
                    out.feasible = true;
                    out.min = out.max = obj;
                } else {
                    out.min = std::min(out.min, obj);
                    out.max = std::max(out.max, obj);
                }
            }
    if (out.feasible) {
        out.min_count = ceil_of(out.min).convert_to<long long>();
        out.max_count = floor_of(out.max).convert_to<long long>();
    }
    return out;
}

DegreeBound degree_line_bound(int p, long long m)
{
    require(p >= 3, "p must be at least 3");
    require(m >= 0 && m <= static_cast<long long>(p) * p, "m must be in [0, p^2]");
    if (m == 0)
        return {0, !(p == 5 && (m == 14 || m == 15))};
    const long long per_point = std::min<long long>((m - 1) / (p - 2), p + 1);
    return {m * per_point / (p - 1), !(p == 5 && (m == 14 || m == 15))};
}

long long pair_combination_cap(int p, long long m)
{
    require(p >= 5, "the pair combination needs p >= 5");
    require(m >= 0 && m <= static_cast<long long>(p) * p, "m must be in [0, p^2]");
    const long long num = 3LL * p * (p + 1) - 2LL * (p + 1) * m + m * (m - 1) / 2;
    const long long den = static_cast<long long>(p - 3) * (p - 4) / 2;
    return num < 0 ? -1 : num / den;
}

IdentityReport identity_check(const PointSet& s)
{
    const auto& sp = s.space();
    IdentityReport r;
    r.profile = line_profile(s);
    const long long size = static_cast<long long>(s.size());
    for (std::size_t i = 0; i < r.profile.x.size(); ++i) {
        const auto ii = static_cast<long long>(i);
        r.line_total += r.profile.x[i];
        r.incidences += ii * r.profile.x[i];
        r.pairs += ii * (ii - 1) / 2 * r.profile.x[i];
    }
    r.line_total_expected = static_cast<long long>(sp.line_count());
    r.incidences_expected = size * static_cast<long long>(sp.direction_count());
    r.pairs_expected = size * (size - 1) / 2;
    if (!r.holds())
        fail(ErrorKind::Internal, "counting identity violated");
    return r;
}

}  // namespace linefree
