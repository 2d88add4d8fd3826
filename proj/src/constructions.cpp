#include "constructions.hpp"

#include <algorithm>
#include <string>

#include "error.hpp"
#include "grid_format.hpp"

namespace linefree {

namespace {

bool all_in(const std::vector<int>& c, std::size_t from, std::size_t to, int lo, int hi)
{
    for (std::size_t i = from; i < to; ++i)
        if (c[i] < lo || c[i] > hi)
            return false;
    return true;
}

long long ipow_ll(long long b, int e)
{
    long long r = 1;
    for (int i = 0; i < e; ++i)
        r *= b;
    return r;
}

}  // namespace

PointSet hypercube(int p, int n)
{
    SpaceSpec sp(p, n);
    return PointSet::from_predicate(sp, [p](const std::vector<int>& c) { return all_in(c, 0, c.size(), 0, p - 2); });
}

LayeredParams layered_params(int p, int n)
{
    require(n >= 3, "layered needs n >= 3; use hypercube for n <= 2");
    SpaceSpec plane(p, 2);
    SpaceSpec pos(p, n - 2);
    const int h = (p - 3) / 2;
    auto a = PointSet::from_predicate(plane, [p](const std::vector<int>& c) { return c[0] <= p - 2 && c[1] <= p - 2; });
    auto b = PointSet::from_predicate(plane, [p, h](const std::vector<int>& c) {
        if (c[0] == c[1])
            return false;
        if (c[0] == p - 1 && c[1] <= h)
            return false;
        if (c[1] == p - 1 && c[0] <= h)
            return false;
        return true;
    });
    auto cc = PointSet::from_predicate(plane, [h](const std::vector<int>& c) { return c[0] == c[1] && c[0] <= h; });
    auto pa = PointSet::from_predicate(pos, [p](const std::vector<int>& c) { return all_in(c, 0, c.size(), 0, p - 3); });
    auto pb = PointSet::from_predicate(pos, [p](const std::vector<int>& c) {
        return all_in(c, 0, c.size(), 0, p - 2) && !all_in(c, 0, c.size(), 0, p - 3);
    });
    auto pc = PointSet::from_predicate(pos, [p](const std::vector<int>& c) {
        int top = 0;
        for (int x : c) {
            if (x == p - 1)
                ++top;
            else if (x > p - 3)
                return false;
        }
        return top == 1;
    });
    return LayeredParams{std::move(a), std::move(b), std::move(cc), std::move(pa), std::move(pb), std::move(pc)};
}

PointSet layered(int p, int n)
{
    auto lp = layered_params(p, n);
    SpaceSpec sp(p, n);
    const auto pos_count = static_cast<PointIndex>(lp.pos_a.space().point_count());
    PointSet out(sp);
    // Position coordinates come first, so index = pos + pos_count * plane.
    for (PointIndex pos = 0; pos < pos_count; ++pos) {
        const PointSet* content = nullptr;
        if (lp.pos_a.contains(pos))
            content = &lp.a;
        else if (lp.pos_b.contains(pos))
            content = &lp.b;
        else if (lp.pos_c.contains(pos))
            content = &lp.c;
        if (!content)
            continue;
        for (auto q : content->indices())
            out.insert(pos + pos_count * q);
    }
    return out;
}

SqrtParams sqrt_params(int p)
{
    require(p >= 5 && is_prime(p), "sqrt construction needs a prime p >= 5");
    int k = 1;
    while ((k + 1) * (k + 1) <= p)
        ++k;
    const int t = p / k;
    SqrtParams sp{k, t, {}, {}};
    for (int i = 0; i < k; ++i)
        sp.kset.push_back(i);
    for (int j = 1; j <= t; ++j)
        sp.tset.push_back(j * k - 1);
    return sp;
}

PointSet sqrt_construction(int p)
{
    auto prm = sqrt_params(p);
    auto in = [](const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); };
    return PointSet::from_predicate(SpaceSpec(p, 3), [&](const std::vector<int>& c) {
        if (c[0] <= p - 3)
            return c[1] <= p - 2 && c[2] <= p - 2;
        if (c[0] == p - 2) {
            if (c[1] == c[2])
                return false;
            const bool row = c[1] == p - 1 || in(prm.kset, c[1]);
            const bool col = c[2] == p - 1 || in(prm.tset, c[2]);
            return !(row && col);
        }
        return in(prm.kset, c[1]) && in(prm.tset, c[2]);
    });
}

std::set<int> quadratic_residues(int p)
{
    require(p >= 3 && is_prime(p), "quadratic residues need an odd prime");
    std::set<int> out;
    for (int a = 1; a < p; ++a)
        out.insert(a * a % p);
    return out;
}

QrParams qr_params(int p)
{
    require(is_prime(p) && p % 24 == 7, "qr construction needs a prime p with p = 7 (mod 24), got " + std::to_string(p));
    QrParams q{quadratic_residues(p), {}};
    for (int a = 1; a < p; ++a)
        if (!q.residues.count(a))
            q.nonresidues.insert(a);
    return q;
}

PointSet qr_construction(int p)
{
    auto q = qr_params(p);
    SpaceSpec sp(p, 3);
    auto idx = [&](long long x, long long y, long long z) {
        const int c[3] = {sp.reduce(x), sp.reduce(y), sp.reduce(z)};
        return sp.index_of(c);
    };
    const long long half = sp.inverse(2);
    const long long third = sp.inverse(3);
    auto s = PointSet::from_predicate(sp, [](const std::vector<int>& c) { return c[0] >= 1 && c[1] >= 1 && c[2] >= 1; });
    for (long long a : q.residues) {
        s.insert(idx(a, 0, a));
        s.insert(idx(0, a, a));
    }
    for (long long a : q.residues) {
        s.erase(idx(a, a, a));
        s.erase(idx(a * half, a * half, a));
    }
    for (long long b : q.nonresidues) {
        s.insert(idx(3 * b * half, 0, b));
        s.insert(idx(0, 3 * b * half, b));
        s.insert(idx(3 * b, 0, b));
        s.insert(idx(0, 3 * b, b));
    }
    for (long long b : q.nonresidues) {
        s.erase(idx(b, b, b));
        s.erase(idx(3 * b * half, 3 * b * half, b));
        s.erase(idx(b * third, b * third, b));
    }
    for (long long b : q.nonresidues) {
        s.erase(idx(3 * b, -3 * b * half, b));
        s.erase(idx(-3 * b * half, 3 * b, b));
    }
    for (long long b : q.nonresidues)
        s.insert(idx(b, b, 0));
    for (long long a : q.residues) {
        s.insert(idx(2 * a, -a, 0));
        s.insert(idx(-a, 2 * a, 0));
    }
    // (x, y, z) -> (z, x, y)
    return permute_coordinates(s, {2, 0, 1});
}

PointSet load_reference_set(std::string_view name) { return parse_grid(reference_set_text(name)).set; }

long long layered_size_formula(int p, int n)
{
    require(n >= 3, "layered size needs n >= 3");
    return ipow_ll(p - 1, n) + (n - 2) * (p - 1) * ipow_ll(p - 2, n - 3) / 2;
}

long long sqrt_size_formula(int p)
{
    auto prm = sqrt_params(p);
    const long long q = p;
    return (q - 2) * (q - 1) * (q - 1) + q * q - q + 1 - prm.k - prm.t;
}

long long qr_size_formula(int p)
{
    qr_params(p);
    // When 3/2 = 1/3 mod p (only p = 7) each of the (p-1)/2 layers indexed by
    // nonresidues keeps its last point as well.
    const long long extra = (9 - 2) % p == 0 ? (p - 1) / 2 : 0;
    return ipow_ll(p - 1, 3) + (p - 1) + extra;
}

}  // namespace linefree
