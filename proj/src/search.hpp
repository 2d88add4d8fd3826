#pragma once

#include <optional>

#include "pointset.hpp"

namespace linefree {

enum class PointOrder {
    Natural,       // branch on the first unhit progression
    GreedyDegree,  // branch on the unhit progression with fewest free points
};

enum class BoundKind {
    Cardinality,   // only dead ends prune
    LineCapacity,  // per-direction line demand and disjoint packing
};

// Optional root fixes on the excluded points. Translation assumes the origin
// is excluded; Affine3 additionally assumes e_1 and e_2 are (n >= 2).
enum class SymmetryFix { None, Translation, Affine3 };

struct SearchConfig {
    PointOrder order = PointOrder::GreedyDegree;
    BoundKind bound = BoundKind::LineCapacity;
    SymmetryFix symmetry = SymmetryFix::None;
    std::optional<PointSet> warm_start;
    double time_budget_seconds = 0;  // 0 means unlimited
    long long node_budget = 0;       // 0 means unlimited
    int threads = 1;
};

struct SearchResult {
    PointSet best;
    std::size_t best_size = 0;
    bool optimal = false;
    long long nodes = 0;
    double seconds = 0;
};

inline constexpr std::size_t kMaxSearchPoints = 512;

SearchResult max_free_exact(int p, int n, int k, const SearchConfig& cfg = {});

// Same engine, seeded with cfg.warm_start (or the hypercube [0,k-2]^n) and
// expected to stop on its budget.
SearchResult heuristic_lower(int p, int n, int k, const SearchConfig& cfg);

// Exhaustive scan over all subsets; p^n <= 20.
long long brute_force_oracle(int p, int n, int k);

}  // namespace linefree
