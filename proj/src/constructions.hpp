#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pointset.hpp"

namespace linefree {

struct LayeredParams {
    PointSet a, b, c;                   // 2-dimensional layer contents
    PointSet pos_a, pos_b, pos_c;       // layer positions in F_p^(n-2)
};

struct SqrtParams {
    int k, t;
    std::vector<int> kset;  // [0, k-1]
    std::vector<int> tset;  // {jk - 1 : j in [1, t]}
};

struct QrParams {
    std::set<int> residues;
    std::set<int> nonresidues;
};

PointSet hypercube(int p, int n);

LayeredParams layered_params(int p, int n);
PointSet layered(int p, int n);

SqrtParams sqrt_params(int p);
PointSet sqrt_construction(int p);

std::set<int> quadratic_residues(int p);
QrParams qr_params(int p);
// Built with the third coordinate as layer axis, then rotated so that it
// becomes the first coordinate.
PointSet qr_construction(int p);

std::vector<std::string> reference_set_names();
std::string_view reference_set_text(std::string_view name);
PointSet load_reference_set(std::string_view name);

// Closed-form sizes used as cross-checks against the constructed sets.
long long layered_size_formula(int p, int n);
long long sqrt_size_formula(int p);
long long qr_size_formula(int p);

}  // namespace linefree
