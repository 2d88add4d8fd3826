#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exact.hpp"

namespace linefree {

std::pair<BigInt, BigInt> upper_simple(int p, int n);  // (ap, sziklai)

// Smaller root (A - sqrt(R)) / D of the quadratic bounding r_k(F_p^(n+1))
// given r = r_k(F_p^n).
struct RecursiveBound {
    BigInt a;          // 2(p^(n+1)-1) r + p^n
    BigInt radicand;   // 4(p^(n+1)-1) r (p^n - r) + p^(2n)
    BigInt d;          // 2 p^n
    Interval value;
    BigInt floor;
    BigInt pair_count;  // s = (p^n-1)/(p-1) * C(floor, 2)
};

RecursiveBound upper_recursive(int p, int n, int k, const BigInt& r);

struct CubicBound {
    RecursiveBound exact;
    Interval simplified;  // p^3 - 2p^2 - (sqrt 2 - 1) p + 2
    bool exact_le_simplified = false;
};

CubicBound upper_cubic(int p);

struct Rate {
    std::string decimal;  // 3 places, rounded down
    std::string provenance;
    std::string note;
};

Rate alpha_from_set(const BigInt& size, int n);
Rate alpha_fgr(int p);
// The FGR base rounded to nearest instead of down, for comparison with
// published tables.
std::string alpha_fgr_nearest(int p);

struct BoundEntry {
    std::string name;
    BigInt value;
    std::string source;  // construction, formula, search, certificate, reference
    std::string note;
    std::optional<Interval> real;
};

// Entries for hypercube, layered, sqrt, qr, reference-set, product-derived
// (as applicable); omitted entries are listed in `omitted` with a reason.
struct LowerForms {
    std::vector<BoundEntry> entries;
    std::vector<std::pair<std::string, std::string>> omitted;
};

LowerForms lower_closed_forms(int p, int n);

struct BoundsReport {
    int p = 0, n = 0, k = 0;
    std::vector<BoundEntry> lower;
    std::vector<BoundEntry> upper;
    std::vector<std::pair<std::string, Rate>> rates;
    std::vector<std::string> notes;

    BigInt best_lower() const;
    BigInt best_upper() const;
};

BoundsReport bounds_report(int p, int n, int k, int threads = 1);

struct Table1Cell {
    int p = 0, n = 0;
    BigInt size;
    std::string rate;  // truncated to 3 decimals
    bool dominated = false;
};

struct Table1 {
    std::vector<int> primes;
    std::vector<int> dims;
    std::vector<Table1Cell> cells;  // row-major by n, then p
    std::vector<std::string> fgr_down;
    std::vector<std::string> fgr_nearest;
};

Table1 table1(const std::vector<int>& primes = {5, 7, 11, 13, 17}, const std::vector<int>& dims = {3, 4, 5, 6, 7});

}  // namespace linefree
