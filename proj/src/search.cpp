#include "search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <set>
#include <string>
#include <thread>

#include "error.hpp"
#include "parallel.hpp"
#include "verifier.hpp"

namespace linefree {

namespace {

using Clock = std::chrono::steady_clock;

template <std::size_t W>
struct Bits {
    std::array<std::uint64_t, W> w{};

    void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1U; }
    bool intersects(const Bits& o) const
    {
        for (std::size_t i = 0; i < W; ++i)
            if (w[i] & o.w[i])
                return true;
        return false;
    }
    bool any() const
    {
        for (auto x : w)
            if (x)
                return true;
        return false;
    }
    int count() const
    {
        int c = 0;
        for (auto x : w)
            c += std::popcount(x);
        return c;
    }
    int count_and(const Bits& o) const
    {
        int c = 0;
        for (std::size_t i = 0; i < W; ++i)
            c += std::popcount(w[i] & o.w[i]);
        return c;
    }
    Bits and_not(const Bits& o) const
    {
        Bits r;
        for (std::size_t i = 0; i < W; ++i)
            r.w[i] = w[i] & ~o.w[i];
        return r;
    }
    Bits& operator|=(const Bits& o)
    {
        for (std::size_t i = 0; i < W; ++i)
            w[i] |= o.w[i];
        return *this;
    }
    template <class F>
    void for_each(F&& f) const
    {
        for (std::size_t i = 0; i < W; ++i) {
            auto x = w[i];
            while (x) {
                f(i * 64 + static_cast<std::size_t>(std::countr_zero(x)));
                x &= x - 1;
            }
        }
    }
    friend auto operator<=>(const Bits&, const Bits&) = default;
};

struct Shared {
    std::atomic<std::uint64_t> key;
    std::atomic<bool> stop{false};
    std::atomic<long long> nodes{0};
    std::mutex mu;
    std::uint64_t stored_key;
    Clock::time_point start;
};

inline std::uint64_t pack(std::uint64_t value, std::uint64_t order) { return (value << 32) | order; }

template <std::size_t W>
class Engine {
public:
    Engine(const SpaceSpec& sp, int k, int line_need, const SearchConfig& cfg) : sp_(sp), k_(k), need_(line_need), cfg_(cfg)
    {
        build_edges();
    }

    // Returns (excluded set, optimal).
    std::pair<Bits<W>, bool> run(const Bits<W>& warm_excl, int warm_count, long long& nodes_out)
    {
        Shared sh;
        sh.start = Clock::now();
        sh.key = pack(static_cast<std::uint64_t>(warm_count), 0);
        sh.stored_key = sh.key;
        best_ = warm_excl;

        Bits<W> excl, ins;
        int ne = 0;
        auto fix = [&](std::size_t i) {
            if (!excl.test(i)) {
                excl.set(i);
                ++ne;
            }
        };
        if (cfg_.symmetry != SymmetryFix::None)
            fix(0);
        if (cfg_.symmetry == SymmetryFix::Affine3) {
            require(sp_.n() >= 2, "the affine3 symmetry fix needs n >= 2");
            fix(1);
            fix(static_cast<std::size_t>(sp_.p()));
        }

        // Fixed frontier, independent of the thread count.
        std::vector<Task> tasks;
        for (int depth = 0; depth <= 10; ++depth) {
            tasks.clear();
            long long frontier_nodes = 0;
            expand(excl, ins, ne, depth, tasks, sh, frontier_nodes);
            if (depth == 10 || tasks.size() >= 256 || tasks.empty()) {
                sh.nodes += frontier_nodes;
                break;
            }
        }

        std::atomic<std::size_t> next{0};
        const int t = resolve_threads(cfg_.threads);
        auto worker = [&] {
            Scratch scratch;
            long long local = 0;
            while (!sh.stop.load(std::memory_order_relaxed)) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size())
                    break;
                const auto& tk = tasks[i];
                rec(tk.excl, tk.ins, tk.ne, static_cast<std::uint64_t>(i + 1), sh, scratch, local);
            }
            sh.nodes += local;
        };
        if (t <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int i = 0; i < t; ++i)
                pool.emplace_back(worker);
            for (auto& th : pool)
                th.join();
        }
        nodes_out = sh.nodes.load();
        return {best_, !sh.stop.load()};
    }

private:
    struct Task {
        Bits<W> excl, ins;
        int ne;
    };
    struct Scratch {
        std::vector<std::pair<int, std::size_t>> order;
        std::vector<Bits<W>> cand;
        std::vector<int> demand;
    };

    void build_edges()
    {
        const auto dirs = canonical_direction_indices(sp_);
        std::set<Bits<W>> seen;
        std::vector<std::uint8_t> buf;
        ncls_ = static_cast<int>(dirs.size());
        for (std::size_t di = 0; di < dirs.size(); ++di) {
            for_each_line_in_direction(sp_, dirs[di], buf, [&](std::span<const PointIndex> pts) {
                Bits<W> line;
                for (auto x : pts)
                    line.set(x);
                lines_.push_back(line);
                line_cls_.push_back(static_cast<int>(di));
                const int p = sp_.p();
                // APs along this line: start at pts[a], step mu positions.
                for (int a = 0; a < p; ++a)
                    for (int mu = 1; mu < (k_ == p ? 2 : p); ++mu) {
                        Bits<W> e;
                        for (int i = 0; i < k_; ++i)
                            e.set(pts[static_cast<std::size_t>((a + i * mu) % p)]);
                        if (seen.insert(e).second)
                            edges_.push_back(e);
                    }
            });
        }
    }

    int lower_bound(const Bits<W>& excl, const Bits<W>& ins, Scratch& s) const
    {
        if (cfg_.bound == BoundKind::Cardinality)
            return 0;
        s.demand.assign(static_cast<std::size_t>(ncls_), 0);
        for (std::size_t i = 0; i < lines_.size(); ++i) {
            const int d = need_ - lines_[i].count_and(excl);
            if (d > 0)
                s.demand[static_cast<std::size_t>(line_cls_[i])] += d;
        }
        int best = *std::max_element(s.demand.begin(), s.demand.end());
        s.order.clear();
        s.cand.clear();
        for (std::size_t i = 0; i < edges_.size(); ++i)
            if (!edges_[i].intersects(excl)) {
                s.cand.push_back(edges_[i].and_not(ins));
                s.order.emplace_back(s.cand.back().count(), s.cand.size() - 1);
            }
        std::sort(s.order.begin(), s.order.end());
        Bits<W> used;
        int packed = 0;
        for (const auto& [c, j] : s.order)
            if (!s.cand[j].intersects(used)) {
                used |= s.cand[j];
                ++packed;
            }
        return std::max(best, packed);
    }

    // Index of the branching progression, -1 at a leaf, -2 at a dead end.
    long pick(const Bits<W>& excl, const Bits<W>& ins) const
    {
        long bi = -1;
        int bc = 1 << 30;
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            if (edges_[i].intersects(excl))
                continue;
            const int c = edges_[i].and_not(ins).count();
            if (c == 0)
                return -2;
            if (cfg_.order == PointOrder::Natural)
                return static_cast<long>(i);
            if (c < bc) {
                bc = c;
                bi = static_cast<long>(i);
            }
        }
        return bi;
    }

    void offer(const Bits<W>& excl, int ne, std::uint64_t order, Shared& sh)
    {
        const std::uint64_t k = pack(static_cast<std::uint64_t>(ne), order);
        std::uint64_t cur = sh.key.load();
        while (k < cur && !sh.key.compare_exchange_weak(cur, k)) {
        }
        std::lock_guard<std::mutex> lock(sh.mu);
        if (k < sh.stored_key) {
            sh.stored_key = k;
            best_ = excl;
        }
    }

    bool out_of_budget(Shared& sh, long long local) const
    {
        if (cfg_.node_budget > 0 && sh.nodes.load(std::memory_order_relaxed) + local > cfg_.node_budget)
            return true;
        if (cfg_.time_budget_seconds > 0 &&
            std::chrono::duration<double>(Clock::now() - sh.start).count() > cfg_.time_budget_seconds)
            return true;
        return false;
    }

    void rec(const Bits<W>& excl, Bits<W> ins, int ne, std::uint64_t order, Shared& sh, Scratch& s, long long& local)
    {
        if (sh.stop.load(std::memory_order_relaxed))
            return;
        if ((++local & 1023) == 0 && out_of_budget(sh, local)) {
            sh.stop = true;
            return;
        }
        const int lb = lower_bound(excl, ins, s);
        if (pack(static_cast<std::uint64_t>(ne + lb), order) >= sh.key.load(std::memory_order_relaxed))
            return;
        const long bi = pick(excl, ins);
        if (bi == -2)
            return;
        if (bi == -1) {
            offer(excl, ne, order, sh);
            return;
        }
        const auto cand = edges_[static_cast<std::size_t>(bi)].and_not(ins);
        cand.for_each([&](std::size_t b) {
            Bits<W> e = excl;
            e.set(b);
            rec(e, ins, ne + 1, order, sh, s, local);
            ins.set(b);
        });
    }

    void expand(const Bits<W>& excl, Bits<W> ins, int ne, int depth, std::vector<Task>& out, Shared& sh, long long& nodes)
    {
        ++nodes;
        Scratch s;
        const int lb = lower_bound(excl, ins, s);
        if (pack(static_cast<std::uint64_t>(ne + lb), 1) >= sh.key.load())
            return;
        const long bi = pick(excl, ins);
        if (bi == -2)
            return;
        if (bi == -1 || depth == 0) {
            out.push_back(Task{excl, ins, ne});
            return;
        }
        const auto cand = edges_[static_cast<std::size_t>(bi)].and_not(ins);
        cand.for_each([&](std::size_t b) {
            Bits<W> e = excl;
            e.set(b);
            expand(e, ins, ne + 1, depth - 1, out, sh, nodes);
            ins.set(b);
        });
    }

    SpaceSpec sp_;
    int k_;
    int need_;
    SearchConfig cfg_;
    int ncls_ = 0;
    std::vector<Bits<W>> edges_;
    std::vector<Bits<W>> lines_;
    std::vector<int> line_cls_;
    Bits<W> best_;
};

template <std::size_t W>
PointSet run_engine(const SpaceSpec& sp, int k, int need, const SearchConfig& cfg, const PointSet& warm, bool& optimal,
                    long long& nodes)
{
    Engine<W> eng(sp, k, need, cfg);
    Bits<W> warm_excl;
    int warm_count = 0;
    for (PointIndex i = 0; i < sp.point_count(); ++i)
        if (!warm.contains(i)) {
            warm_excl.set(i);
            ++warm_count;
        }
    auto [excl, opt] = eng.run(warm_excl, warm_count, nodes);
    optimal = opt;
    PointSet out(sp);
    for (PointIndex i = 0; i < sp.point_count(); ++i)
        if (!excl.test(i))
            out.insert(i);
    return out;
}

PointSet default_warm(const SpaceSpec& sp, int k)
{
    return PointSet::from_predicate(sp, [k](const std::vector<int>& c) {
        for (int x : c)
            if (x > k - 2)
                return false;
        return true;
    });
}

PointSet dispatch(const SpaceSpec& sp, int k, int need, const SearchConfig& cfg, const PointSet& warm, bool& optimal,
                  long long& nodes)
{
    const std::size_t words = (sp.point_count() + 63) / 64;
    if (words <= 1)
        return run_engine<1>(sp, k, need, cfg, warm, optimal, nodes);
    if (words <= 2)
        return run_engine<2>(sp, k, need, cfg, warm, optimal, nodes);
    if (words <= 4)
        return run_engine<4>(sp, k, need, cfg, warm, optimal, nodes);
    return run_engine<8>(sp, k, need, cfg, warm, optimal, nodes);
}

}  // namespace

SearchResult max_free_exact(int p, int n, int k, const SearchConfig& cfg)
{
    SpaceSpec sp(p, n);
    require(k >= 3 && k <= p, "k must be in [3, p], got " + std::to_string(k));
    if (sp.point_count() > kMaxSearchPoints)
        fail(ErrorKind::Resource, "search supports at most " + std::to_string(kMaxSearchPoints) + " points, F_" +
                                      std::to_string(p) + "^" + std::to_string(n) + " has " +
                                      std::to_string(sp.point_count()));
    require(cfg.time_budget_seconds >= 0 && cfg.node_budget >= 0, "search budgets must be nonnegative");
    const auto start = Clock::now();

    PointSet warm = cfg.warm_start ? *cfg.warm_start : default_warm(sp, k);
    require(warm.space() == sp, "warm start lives in a different space");
    if (find_progression(warm, k))
        fail(ErrorKind::Input, "warm start contains a " + std::to_string(k) + "-progression");

    // Each line holds at most r_k(Z_p) members, so it needs p - r_k(Z_p)
    // excluded points.
    int need = 1;
    if (n >= 2) {
        SearchConfig one;
        one.order = PointOrder::GreedyDegree;
        one.bound = BoundKind::LineCapacity;
        auto r1 = max_free_exact(p, 1, k, one);
        need = p - static_cast<int>(r1.best_size);
    }

    SearchResult res{PointSet(sp), 0, false, 0, 0};
    res.best = dispatch(sp, k, need, cfg, warm, res.optimal, res.nodes);
    res.best_size = res.best.size();
    res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (find_progression(res.best, k))
        fail(ErrorKind::Internal, "search produced a set containing a progression");
    return res;
}

SearchResult heuristic_lower(int p, int n, int k, const SearchConfig& cfg)
{
    require(cfg.time_budget_seconds > 0 || cfg.node_budget > 0, "heuristic search needs a time or node budget");
    return max_free_exact(p, n, k, cfg);
}

}  // namespace linefree
