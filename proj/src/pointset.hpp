#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "bitset.hpp"
#include "geometry.hpp"

namespace linefree {

class PointSet {
public:
    explicit PointSet(const SpaceSpec& space) : space_(space), bits_(space.point_count()) {}

    static PointSet full(const SpaceSpec& space);
    static PointSet from_indices(const SpaceSpec& space, const std::vector<PointIndex>& indices);
    // Members are the points whose coordinates satisfy pred.
    static PointSet from_predicate(const SpaceSpec& space, const std::function<bool(const std::vector<int>&)>& pred);

    const SpaceSpec& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    bool contains(PointIndex i) const noexcept { return bits_.test(i); }
    bool contains(const Point& pt) const { return bits_.test(point_index(pt, space_)); }

    void insert(PointIndex i);
    void insert(const Point& pt) { insert(point_index(pt, space_)); }
    void erase(PointIndex i);

    std::vector<PointIndex> indices() const;
    const BitVector& bits() const noexcept { return bits_; }

    friend bool operator==(const PointSet& a, const PointSet& b) { return a.space_ == b.space_ && a.bits_ == b.bits_; }

private:
    SpaceSpec space_;
    BitVector bits_;
    std::size_t size_ = 0;
};

// Slice at first coordinate == value, with that coordinate dropped.
PointSet layer(const PointSet& s, int value);
// Inverse of layer(): layers[j] becomes the slice at first coordinate j.
PointSet assemble_layers(const std::vector<PointSet>& layers);

// (x, y) with x in a occupying the leading coordinates.
PointSet product(const PointSet& a, const PointSet& b);

using Matrix = std::vector<std::vector<int>>;

int determinant_mod(const Matrix& m, int p);
// {M x + v : x in s}.
PointSet apply_affine(const PointSet& s, const Matrix& m, const Point& v);
// Coordinate i of the image is coordinate perm[i] of the source point.
PointSet permute_coordinates(const PointSet& s, const std::vector<int>& perm);

}  // namespace linefree
