#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace linefree {

inline int resolve_threads(int requested)
{
    if (requested > 0)
        return requested;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs f(worker, begin, end) on contiguous blocks of [0, count). The first
// exception thrown by any worker is rethrown after all workers finish.
template <class F>
void parallel_blocks(std::size_t count, int threads, F&& f)
{
    const auto t = static_cast<std::size_t>(std::max(1, std::min<int>(threads, static_cast<int>(std::max<std::size_t>(count, 1)))));
    if (t == 1) {
        f(std::size_t{0}, std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(t);
    for (std::size_t w = 0; w < t; ++w) {
        const std::size_t b = count * w / t, e = count * (w + 1) / t;
        pool.emplace_back([&, w, b, e] {
            try {
                f(w, b, e);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& ex : errors)
        if (ex)
            std::rethrow_exception(ex);
}

}  // namespace linefree
