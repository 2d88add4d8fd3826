#include "geometry.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

#include "error.hpp"

namespace linefree {

bool is_prime(long long v)
{
    if (v < 2)
        return false;
    for (long long d = 2; d * d <= v; ++d)
        if (v % d == 0)
            return false;
    return true;
}

SpaceSpec::SpaceSpec(int p, int n) : p_(p), n_(n), size_(1)
{
    require(p >= 3, "p must be at least 3, got " + std::to_string(p));
    require(is_prime(p), "p must be prime, got " + std::to_string(p));
    require(n >= 1, "n must be at least 1, got " + std::to_string(n));
    strides_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        strides_[static_cast<std::size_t>(i)] = size_;
        if (size_ > kMaxPoints / static_cast<std::size_t>(p))
            fail(ErrorKind::Input, "p^n exceeds 2^31 points (p=" + std::to_string(p) + ", n=" + std::to_string(n) + ")");
        size_ *= static_cast<std::size_t>(p);
    }
    auto inv = std::make_shared<std::vector<int>>(static_cast<std::size_t>(p), 0);
    for (int a = 1; a < p; ++a)
        for (int b = 1; b < p; ++b)
            if ((a * b) % p == 1)
                (*inv)[static_cast<std::size_t>(a)] = b;
    inverses_ = std::move(inv);
}

int SpaceSpec::inverse(int a) const
{
    int r = reduce(a);
    require(r != 0, "zero has no inverse");
    return (*inverses_)[static_cast<std::size_t>(r)];
}

PointIndex SpaceSpec::index_of(std::span<const int> coords) const
{
    require(coords.size() == static_cast<std::size_t>(n_),
            "point has " + std::to_string(coords.size()) + " coordinates, expected " + std::to_string(n_));
    std::size_t idx = 0;
    for (int i = 0; i < n_; ++i) {
        int c = coords[static_cast<std::size_t>(i)];
        require(c >= 0 && c < p_, "coordinate " + std::to_string(c) + " out of range [0," + std::to_string(p_ - 1) + "]");
        idx += static_cast<std::size_t>(c) * strides_[static_cast<std::size_t>(i)];
    }
    return static_cast<PointIndex>(idx);
}

std::vector<int> SpaceSpec::coords_of(PointIndex index) const
{
    require(index < size_, "point index " + std::to_string(index) + " out of range");
    std::vector<int> c(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        c[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<unsigned>(p_));
        index /= static_cast<unsigned>(p_);
    }
    return c;
}

PointIndex SpaceSpec::add_scaled(PointIndex a, PointIndex d, int s) const noexcept
{
    std::size_t out = 0;
    const auto up = static_cast<std::size_t>(p_);
    std::size_t x = a, y = d;
    const auto sm = static_cast<std::size_t>(reduce(s));
    for (int i = 0; i < n_; ++i) {
        out += ((x % up + sm * (y % up)) % up) * strides_[static_cast<std::size_t>(i)];
        x /= up;
        y /= up;
    }
    return static_cast<PointIndex>(out);
}

PointIndex point_index(const Point& pt, const SpaceSpec& space) { return space.index_of(pt.coords); }

Point index_point(PointIndex index, const SpaceSpec& space) { return Point{space.coords_of(index)}; }

Direction canonical_direction(std::span<const int> v, const SpaceSpec& space)
{
    require(v.size() == static_cast<std::size_t>(space.n()), "direction has the wrong number of coordinates");
    std::vector<int> c(v.begin(), v.end());
    for (auto& x : c)
        x = space.reduce(x);
    auto lead = std::find_if(c.begin(), c.end(), [](int x) { return x != 0; });
    require(lead != c.end(), "zero vector has no direction");
    const int lambda = space.inverse(*lead);
    for (auto& x : c)
        x = (x * lambda) % space.p();
    return Direction{std::move(c)};
}

PointIndex canonical_direction_index(PointIndex v, const SpaceSpec& space)
{
    require(v != 0 && v < space.point_count(), "zero vector has no direction");
    int axis = 0;
    while (space.coordinate(v, axis) == 0)
        ++axis;
    return space.add_scaled(0, v, space.inverse(space.coordinate(v, axis)));
}

std::vector<PointIndex> canonical_direction_indices(const SpaceSpec& space)
{
    std::vector<PointIndex> out;
    out.reserve(space.direction_count());
    // The first nonzero coordinate is the lowest axis with a nonzero digit.
    for (PointIndex v = 1; v < space.point_count(); ++v) {
        int axis = 0;
        while (space.coordinate(v, axis) == 0)
            ++axis;
        if (space.coordinate(v, axis) == 1)
            out.push_back(v);
    }
    return out;
}

bool operator==(const Line& a, const Line& b)
{
    auto x = a.points, y = b.points;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
}

std::vector<Line> enumerate_lines(const SpaceSpec& space)
{
    const auto dirs = canonical_direction_indices(space);
    std::vector<Line> out;
    out.reserve(space.line_count());
    for_each_line(space, [&](std::size_t di, std::span<const PointIndex> pts) {
        // Rotate so the walk starts at the lexicographically least point.
        std::size_t best = 0;
        std::vector<Point> coords;
        coords.reserve(pts.size());
        for (auto x : pts)
            coords.push_back(index_point(x, space));
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (coords[i] < coords[best])
                best = i;
        std::vector<PointIndex> rot(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i)
            rot[i] = pts[(best + i) % pts.size()];
        out.push_back(Line{std::move(coords[best]), Direction{space.coords_of(dirs[di])}, std::move(rot)});
    });
    std::stable_sort(out.begin(), out.end(), [](const Line& a, const Line& b) {
        if (a.dir != b.dir)
            return a.dir < b.dir;
        return a.base < b.base;
    });
    return out;
}

bool Hyperplane::contains(std::span<const int> coords, int p) const
{
    long long s = 0;
    for (std::size_t i = 0; i < coords.size(); ++i)
        s += static_cast<long long>(normal.coords[i]) * coords[i];
    return s % p == constant;
}

std::vector<ParallelClass> parallel_classes(const SpaceSpec& space)
{
    require(space.n() >= 2, "parallel classes need n >= 2");
    std::vector<ParallelClass> out;
    for (auto d : canonical_direction_indices(space)) {
        ParallelClass cls{Direction{space.coords_of(d)}, {}};
        for (int c = 0; c < space.p(); ++c)
            cls.planes.push_back(Hyperplane{cls.normal, c});
        out.push_back(std::move(cls));
    }
    return out;
}

std::vector<PointIndex> hyperplane_points(const Hyperplane& h, const SpaceSpec& space)
{
    std::vector<PointIndex> out;
    for (PointIndex i = 0; i < space.point_count(); ++i)
        if (h.contains(space.coords_of(i), space.p()))
            out.push_back(i);
    return out;
}

std::vector<Hyperplane> planes_of_line(const Line& line, const SpaceSpec& space)
{
    if (space.n() != 3)
        fail(ErrorKind::Unsupported, "planes_of_line is defined for n = 3 only");
    std::vector<Hyperplane> out;
    const int p = space.p();
    for (auto d : canonical_direction_indices(space)) {
        auto nrm = space.coords_of(d);
        long long dot = 0;
        for (int i = 0; i < 3; ++i)
            dot += static_cast<long long>(nrm[static_cast<std::size_t>(i)]) * line.dir.coords[static_cast<std::size_t>(i)];
        if (dot % p != 0)
            continue;
        long long c = 0;
        for (int i = 0; i < 3; ++i)
            c += static_cast<long long>(nrm[static_cast<std::size_t>(i)]) * line.base.coords[static_cast<std::size_t>(i)];
        out.push_back(Hyperplane{Direction{std::move(nrm)}, static_cast<int>(c % p)});
    }
    return out;
}

std::size_t IncidenceIndex::estimate_bytes(const SpaceSpec& space)
{
    const std::size_t lines = space.line_count();
    const std::size_t pts = space.point_count();
    const auto p = static_cast<std::size_t>(space.p());
    const auto n = static_cast<std::size_t>(space.n());
    std::size_t bytes = lines * (p * 4 + 2 * n * sizeof(int) + sizeof(Line));
    bytes += pts * space.direction_count() * 4 + pts * 4;
    bytes += pts * (pts - 1) / 2 * 4;
    if (space.n() == 3)
        bytes += lines * (p + 1) * 4;
    return bytes;
}

IncidenceIndex::IncidenceIndex(const SpaceSpec& space, std::size_t budget_bytes) : space_(space)
{
    const std::size_t need = estimate_bytes(space);
    if (need > budget_bytes)
        fail(ErrorKind::Resource, "incidence index for p=" + std::to_string(space.p()) + " n=" + std::to_string(space.n()) +
                                      " needs about " + std::to_string(need >> 20) + " MiB, limit is " +
                                      std::to_string(budget_bytes >> 20) + " MiB");
    lines_ = enumerate_lines(space);
    const std::size_t pts = space.point_count();
    const std::size_t per_point = space.direction_count();
    through_offsets_.resize(pts + 1);
    for (std::size_t i = 0; i <= pts; ++i)
        through_offsets_[i] = static_cast<std::uint32_t>(i * per_point);
    through_ids_.assign(pts * per_point, 0);
    std::vector<std::uint32_t> fill(pts, 0);
    pair_line_.assign(pts * (pts - 1) / 2, 0);
    auto tri = [pts](std::size_t a, std::size_t b) { return a * (2 * pts - a - 1) / 2 + (b - a - 1); };
    for (std::uint32_t id = 0; id < lines_.size(); ++id) {
        const auto& pl = lines_[id].points;
        for (auto x : pl)
            through_ids_[x * per_point + fill[x]++] = id;
        for (std::size_t i = 0; i < pl.size(); ++i)
            for (std::size_t j = i + 1; j < pl.size(); ++j) {
                auto a = std::min(pl[i], pl[j]), b = std::max(pl[i], pl[j]);
                pair_line_[tri(a, b)] = id;
            }
    }
    for (std::size_t x = 0; x < pts; ++x)
        if (fill[x] != per_point)
            fail(ErrorKind::Internal, "incidence index: point on wrong number of lines");

    if (space.n() == 3) {
        for (const auto& cls : parallel_classes(space))
            for (const auto& h : cls.planes)
                planes_.push_back(h);
        const auto p = static_cast<std::size_t>(space.p());
        line_planes_.reserve(lines_.size() * (p + 1));
        for (const auto& l : lines_) {
            auto hs = linefree::planes_of_line(l, space);
            if (hs.size() != p + 1)
                fail(ErrorKind::Internal, "incidence index: line in wrong number of planes");
            for (const auto& h : hs) {
                // planes_ is ordered by (normal index, constant) with p planes per class.
                auto it = std::lower_bound(planes_.begin(), planes_.end(), h, [&](const Hyperplane& a, const Hyperplane& b) {
                    auto ia = space.index_of(a.normal.coords), ib = space.index_of(b.normal.coords);
                    return ia != ib ? ia < ib : a.constant < b.constant;
                });
                line_planes_.push_back(static_cast<std::uint32_t>(it - planes_.begin()));
            }
        }
    }
}

std::span<const std::uint32_t> IncidenceIndex::lines_through(PointIndex point) const
{
    require(point < space_.point_count(), "point index out of range");
    return {through_ids_.data() + through_offsets_[point], through_offsets_[point + 1] - through_offsets_[point]};
}

std::span<const std::uint32_t> IncidenceIndex::planes_of_line(std::uint32_t line_id) const
{
    if (space_.n() != 3)
        fail(ErrorKind::Unsupported, "planes_of_line is defined for n = 3 only");
    require(line_id < lines_.size(), "line id out of range");
    const auto w = static_cast<std::size_t>(space_.p() + 1);
    return {line_planes_.data() + line_id * w, w};
}

std::uint32_t IncidenceIndex::pair_line(PointIndex a, PointIndex b) const
{
    const std::size_t pts = space_.point_count();
    require(a != b && a < pts && b < pts, "pair_line needs two distinct points");
    if (a > b)
        std::swap(a, b);
    return pair_line_[static_cast<std::size_t>(a) * (2 * pts - a - 1) / 2 + (b - a - 1)];
}

IncidenceIndex build_incidence_index(const SpaceSpec& space, std::size_t budget_bytes)
{
    return IncidenceIndex(space, budget_bytes);
}

std::shared_ptr<const IncidenceIndex> incidence_index(const SpaceSpec& space)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const IncidenceIndex>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(space.p(), space.n());
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    auto idx = std::make_shared<const IncidenceIndex>(space, kDefaultIncidenceBudget);
    cache.emplace(key, idx);
    return idx;
}

}  // namespace linefree
