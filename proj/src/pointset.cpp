#include "pointset.hpp"

#include <string>

#include "error.hpp"

namespace linefree {

PointSet PointSet::full(const SpaceSpec& space)
{
    PointSet s(space);
    for (PointIndex i = 0; i < space.point_count(); ++i)
        s.insert(i);
    return s;
}

PointSet PointSet::from_indices(const SpaceSpec& space, const std::vector<PointIndex>& indices)
{
    PointSet s(space);
    for (auto i : indices) {
        require(i < space.point_count(), "point index " + std::to_string(i) + " out of range");
        s.insert(i);
    }
    return s;
}

PointSet PointSet::from_predicate(const SpaceSpec& space, const std::function<bool(const std::vector<int>&)>& pred)
{
    PointSet s(space);
    for (PointIndex i = 0; i < space.point_count(); ++i)
        if (pred(space.coords_of(i)))
            s.insert(i);
    return s;
}

void PointSet::insert(PointIndex i)
{
    if (!bits_.test(i)) {
        bits_.set(i);
        ++size_;
    }
}

void PointSet::erase(PointIndex i)
{
    if (bits_.test(i)) {
        bits_.reset(i);
        --size_;
    }
}

std::vector<PointIndex> PointSet::indices() const
{
    std::vector<PointIndex> out;
    out.reserve(size_);
    bits_.for_each([&](std::size_t i) { out.push_back(static_cast<PointIndex>(i)); });
    return out;
}

PointSet layer(const PointSet& s, int value)
{
    const auto& sp = s.space();
    require(sp.n() >= 2, "layer needs n >= 2");
    require(value >= 0 && value < sp.p(), "layer value out of range");
    SpaceSpec sub(sp.p(), sp.n() - 1);
    PointSet out(sub);
    const auto p = static_cast<PointIndex>(sp.p());
    for (PointIndex r = 0; r < sub.point_count(); ++r)
        if (s.contains(static_cast<PointIndex>(value) + p * r))
            out.insert(r);
    return out;
}

PointSet assemble_layers(const std::vector<PointSet>& layers)
{
    require(!layers.empty(), "no layers given");
    const auto& sub = layers.front().space();
    require(layers.size() == static_cast<std::size_t>(sub.p()), "need exactly p layers");
    SpaceSpec sp(sub.p(), sub.n() + 1);
    PointSet out(sp);
    const auto p = static_cast<PointIndex>(sp.p());
    for (std::size_t j = 0; j < layers.size(); ++j) {
        require(layers[j].space() == sub, "layers live in different spaces");
        for (auto r : layers[j].indices())
            out.insert(static_cast<PointIndex>(j) + p * r);
    }
    return out;
}

PointSet product(const PointSet& a, const PointSet& b)
{
    require(a.space().p() == b.space().p(), "product needs the same p on both sides");
    SpaceSpec sp(a.space().p(), a.space().n() + b.space().n());
    PointSet out(sp);
    const auto shift = static_cast<PointIndex>(a.space().point_count());
    const auto ia = a.indices();
    for (auto y : b.indices())
        for (auto x : ia)
            out.insert(x + shift * y);
    return out;
}

int determinant_mod(const Matrix& m, int p)
{
    const std::size_t n = m.size();
    std::vector<std::vector<long long>> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        require(m[i].size() == n, "matrix is not square");
        for (int v : m[i])
            a[i].push_back(((v % p) + p) % p);
    }
    auto inv = [p](long long x) {
        long long r = 1, b = x, e = p - 2;
        while (e > 0) {
            if (e & 1)
                r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    long long det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0)
            ++piv;
        if (piv == n)
            return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = (p - det) % p;
        }
        det = det * a[c][c] % p;
        const long long iv = inv(a[c][c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const long long f = a[r][c] * iv % p;
            for (std::size_t k = c; k < n; ++k)
                a[r][k] = ((a[r][k] - f * a[c][k]) % p + p) % p;
        }
    }
    return static_cast<int>(det);
}

PointSet apply_affine(const PointSet& s, const Matrix& m, const Point& v)
{
    const auto& sp = s.space();
    const auto n = static_cast<std::size_t>(sp.n());
    require(m.size() == n, "matrix dimension does not match the space");
    require(v.coords.size() == n, "translation has the wrong number of coordinates");
    require(determinant_mod(m, sp.p()) != 0, "affine map is singular mod p");
    PointSet out(sp);
    std::vector<int> y(n);
    for (auto i : s.indices()) {
        auto x = sp.coords_of(i);
        for (std::size_t r = 0; r < n; ++r) {
            long long acc = v.coords[r];
            for (std::size_t c = 0; c < n; ++c)
                acc += static_cast<long long>(m[r][c]) * x[c];
            y[r] = sp.reduce(acc);
        }
        out.insert(sp.index_of(y));
    }
    return out;
}

PointSet permute_coordinates(const PointSet& s, const std::vector<int>& perm)
{
    const auto& sp = s.space();
    const auto n = static_cast<std::size_t>(sp.n());
    require(perm.size() == n, "permutation has the wrong length");
    std::vector<bool> seen(n, false);
    for (int q : perm) {
        require(q >= 0 && static_cast<std::size_t>(q) < n && !seen[static_cast<std::size_t>(q)], "not a permutation");
        seen[static_cast<std::size_t>(q)] = true;
    }
    PointSet out(sp);
    std::vector<int> y(n);
    for (auto i : s.indices()) {
        auto x = sp.coords_of(i);
        for (std::size_t r = 0; r < n; ++r)
            y[r] = x[static_cast<std::size_t>(perm[r])];
        out.insert(sp.index_of(y));
    }
    return out;
}

}  // namespace linefree
