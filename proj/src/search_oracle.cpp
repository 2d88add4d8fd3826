#include <bit>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "search.hpp"

namespace linefree {

// Deliberately shares nothing with the geometry code: points are coordinate
// vectors, progressions are generated from every (start, nonzero step) pair.
long long brute_force_oracle(int p, int n, int k)
{
    require(p >= 3 && n >= 1 && k >= 3 && k <= p, "invalid oracle parameters");
    long long total = 1;
    for (int i = 0; i < n; ++i)
        total *= p;
    require(total <= 20, "brute-force oracle needs p^n <= 20");
    for (int d = 2; d < p; ++d)
        require(p % d != 0, "p must be prime");

    const int size = static_cast<int>(total);
    std::vector<std::vector<int>> pts(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) {
        int r = i;
        for (int j = 0; j < n; ++j) {
            pts[static_cast<std::size_t>(i)].push_back(r % p);
            r /= p;
        }
    }
    auto encode = [&](const std::vector<int>& c) {
        int v = 0;
        for (int j = n - 1; j >= 0; --j)
            v = v * p + c[static_cast<std::size_t>(j)];
        return v;
    };
    std::set<std::uint32_t> aps;
    for (int a = 0; a < size; ++a)
        for (int s = 1; s < size; ++s) {
            std::uint32_t mask = 0;
            std::vector<int> c = pts[static_cast<std::size_t>(a)];
            for (int i = 0; i < k; ++i) {
                mask |= std::uint32_t{1} << encode(c);
                for (int j = 0; j < n; ++j)
                    c[static_cast<std::size_t>(j)] = (c[static_cast<std::size_t>(j)] + pts[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)]) % p;
            }
            aps.insert(mask);
        }
    const std::vector<std::uint32_t> list(aps.begin(), aps.end());
    long long best = 0;
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << size); ++m) {
        const int c = std::popcount(m);
        if (c <= best)
            continue;
        bool ok = true;
        for (auto ap : list)
            if ((m & ap) == ap) {
                ok = false;
                break;
            }
        if (ok)
            best = c;
    }
    return best;
}

}  // namespace linefree
