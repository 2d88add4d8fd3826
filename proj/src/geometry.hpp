#pragma once

#include <compare>
#include <cstddef>
#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace linefree {

using PointIndex = std::uint32_t;

inline constexpr std::size_t kMaxPoints = std::size_t{1} << 31;

// The ambient space F_p^n. Points are indexed in radix p with coordinate 0
// least significant.
class SpaceSpec {
public:
    SpaceSpec(int p, int n);

    int p() const noexcept { return p_; }
    int n() const noexcept { return n_; }
    std::size_t point_count() const noexcept { return size_; }
    std::size_t direction_count() const noexcept { return (size_ - 1) / static_cast<std::size_t>(p_ - 1); }
    std::size_t line_count() const noexcept { return direction_count() * (size_ / static_cast<std::size_t>(p_)); }
    std::size_t stride(int axis) const noexcept { return strides_[static_cast<std::size_t>(axis)]; }

    int reduce(long long v) const noexcept
    {
        long long r = v % p_;
        return static_cast<int>(r < 0 ? r + p_ : r);
    }
    // Multiplicative inverse of a nonzero residue, from a table of size p.
    int inverse(int a) const;

    PointIndex index_of(std::span<const int> coords) const;
    std::vector<int> coords_of(PointIndex index) const;
    int coordinate(PointIndex index, int axis) const noexcept
    {
        return static_cast<int>((index / strides_[static_cast<std::size_t>(axis)]) % static_cast<std::size_t>(p_));
    }
    // a + s*d, coordinatewise mod p.
    PointIndex add_scaled(PointIndex a, PointIndex d, int s) const noexcept;

    friend bool operator==(const SpaceSpec& a, const SpaceSpec& b) noexcept { return a.p_ == b.p_ && a.n_ == b.n_; }

private:
    int p_;
    int n_;
    std::size_t size_;
    std::vector<std::size_t> strides_;
    std::shared_ptr<const std::vector<int>> inverses_;
};

bool is_prime(long long v);

struct Point {
    std::vector<int> coords;
    friend auto operator<=>(const Point&, const Point&) = default;
};

// Nonzero vector whose first nonzero coordinate is 1.
struct Direction {
    std::vector<int> coords;
    friend auto operator<=>(const Direction&, const Direction&) = default;
};

PointIndex point_index(const Point& pt, const SpaceSpec& space);
Point index_point(PointIndex index, const SpaceSpec& space);

Direction canonical_direction(std::span<const int> v, const SpaceSpec& space);
PointIndex canonical_direction_index(PointIndex v, const SpaceSpec& space);

// All canonical directions in increasing index order.
std::vector<PointIndex> canonical_direction_indices(const SpaceSpec& space);

struct Line {
    Point base;
    Direction dir;
    std::vector<PointIndex> points;  // points[i] = base + i*dir

    friend bool operator==(const Line& a, const Line& b);
};

// Visits every line exactly once, grouped by canonical direction (increasing
// index) and, within a direction, by increasing least point. The callback gets
// the direction's position in canonical_direction_indices() and the p points
// starting from the least one.
template <class F>
void for_each_line(const SpaceSpec& space, F&& f);

std::vector<Line> enumerate_lines(const SpaceSpec& space);

struct Hyperplane {
    Direction normal;
    int constant = 0;

    bool contains(std::span<const int> coords, int p) const;
    friend auto operator<=>(const Hyperplane&, const Hyperplane&) = default;
};

struct ParallelClass {
    Direction normal;
    std::vector<Hyperplane> planes;  // constants 0..p-1
};

std::vector<ParallelClass> parallel_classes(const SpaceSpec& space);
std::vector<PointIndex> hyperplane_points(const Hyperplane& h, const SpaceSpec& space);

// The p+1 planes of F_p^3 that contain the line, ordered by normal index.
std::vector<Hyperplane> planes_of_line(const Line& line, const SpaceSpec& space);

class IncidenceIndex {
public:
    IncidenceIndex(const SpaceSpec& space, std::size_t budget_bytes);

    const SpaceSpec& space() const noexcept { return space_; }
    const std::vector<Line>& lines() const noexcept { return lines_; }
    std::span<const std::uint32_t> lines_through(PointIndex point) const;
    // n = 3 only; ids index into planes().
    std::span<const std::uint32_t> planes_of_line(std::uint32_t line_id) const;
    const std::vector<Hyperplane>& planes() const noexcept { return planes_; }
    std::uint32_t pair_line(PointIndex a, PointIndex b) const;

    static std::size_t estimate_bytes(const SpaceSpec& space);

private:
    SpaceSpec space_;
    std::vector<Line> lines_;
    std::vector<std::uint32_t> through_offsets_;
    std::vector<std::uint32_t> through_ids_;
    std::vector<Hyperplane> planes_;
    std::vector<std::uint32_t> line_planes_;  // (p+1) per line when n = 3
    std::vector<std::uint32_t> pair_line_;    // strict upper triangle
};

inline constexpr std::size_t kDefaultIncidenceBudget = std::size_t{256} << 20;

IncidenceIndex build_incidence_index(const SpaceSpec& space, std::size_t budget_bytes = kDefaultIncidenceBudget);

// Lazily built and cached per space; shared between callers.
std::shared_ptr<const IncidenceIndex> incidence_index(const SpaceSpec& space);

// ---------------------------------------------------------------------------

template <class F>
void for_each_line_in_direction(const SpaceSpec& space, PointIndex dir, std::vector<std::uint8_t>& seen, F&& f)
{
    const int p = space.p();
    const int n = space.n();
    std::vector<PointIndex> pts(static_cast<std::size_t>(p));
    std::vector<int> step(static_cast<std::size_t>(n));
    std::vector<int> cur(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
        step[static_cast<std::size_t>(a)] = space.coordinate(dir, a);
    seen.assign(space.point_count(), 0);
    for (PointIndex start = 0; start < space.point_count(); ++start) {
        if (seen[start])
            continue;
        for (int a = 0; a < n; ++a)
            cur[static_cast<std::size_t>(a)] = space.coordinate(start, a);
        for (int i = 0; i < p; ++i) {
            std::size_t idx = 0;
            for (int a = 0; a < n; ++a)
                idx += static_cast<std::size_t>(cur[static_cast<std::size_t>(a)]) * space.stride(a);
            pts[static_cast<std::size_t>(i)] = static_cast<PointIndex>(idx);
            seen[idx] = 1;
            for (int a = 0; a < n; ++a) {
                int& c = cur[static_cast<std::size_t>(a)];
                c += step[static_cast<std::size_t>(a)];
                if (c >= p)
                    c -= p;
            }
        }
        f(std::span<const PointIndex>(pts));
    }
}

template <class F>
void for_each_line(const SpaceSpec& space, F&& f)
{
    const auto dirs = canonical_direction_indices(space);
    std::vector<std::uint8_t> seen;
    for (std::size_t di = 0; di < dirs.size(); ++di)
        for_each_line_in_direction(space, dirs[di], seen, [&](std::span<const PointIndex> pts) { f(di, pts); });
}

}  // namespace linefree
