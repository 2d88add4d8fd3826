#include "bounds.hpp"

#include <algorithm>
#include <string>

#include "certify.hpp"
#include "constructions.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "search.hpp"

namespace linefree {

namespace {

constexpr std::size_t kConstructLimit = std::size_t{1} << 22;

BigInt bpow(long long b, int e) { return ipow(BigInt(b), static_cast<unsigned>(e)); }

bool constructible(int p, int n)
{
    std::size_t sz = 1;
    for (int i = 0; i < n; ++i) {
        sz *= static_cast<std::size_t>(p);
        if (sz > kConstructLimit)
            return false;
    }
    return true;
}

void require_prime(int p)
{
    require(p >= 3 && is_prime(p), "p must be an odd prime, got " + std::to_string(p));
}

}  // namespace

std::pair<BigInt, BigInt> upper_simple(int p, int n)
{
    require_prime(p);
    require(n >= 1, "n must be at least 1");
    const BigInt pn = bpow(p, n);
    return {pn - (pn - 1) / (p - 1), pn - 2 * bpow(p, n - 1) + 1};
}

RecursiveBound upper_recursive(int p, int n, int k, const BigInt& r)
{
    require_prime(p);
    require(n >= 1, "n must be at least 1");
    require(k >= 3 && k <= p, "k must be in [3, p]");
    const BigInt q = bpow(p, n);
    const BigInt big = bpow(p, n + 1);
    require(r >= 0 && r <= q, "r must be in [0, p^n]");
    RecursiveBound b;
    b.a = 2 * (big - 1) * r + q;
    b.radicand = 4 * (big - 1) * r * (q - r) + q * q;
    b.d = 2 * q;
    if (b.radicand < 0)
        fail(ErrorKind::Internal, "negative radicand in the recursive bound");
    const Interval s = sqrt_interval(b.radicand);
    b.value = Interval{(Rational(b.a) - s.hi) / Rational(b.d), (Rational(b.a) - s.lo) / Rational(b.d)};
    b.floor = floor_div(b.a - isqrt_ceil(b.radicand), b.d);
    if (b.floor > p * r)
        fail(ErrorKind::Internal, "recursive bound exceeds p * r");
    b.pair_count = (q - 1) / (p - 1) * binom2(b.floor);
    return b;
}

CubicBound upper_cubic(int p)
{
    require_prime(p);
    CubicBound c;
    c.exact = upper_recursive(p, 2, p, BigInt(p - 1) * (p - 1));
    const BigInt base = bpow(p, 3) - 2 * bpow(p, 2) + p + 2;
    const Interval root2p = sqrt_interval(2 * bpow(p, 2));  // sqrt(2) * p
    c.simplified = Interval{Rational(base) - root2p.hi, Rational(base) - root2p.lo};
    c.exact_le_simplified = c.exact.value.hi <= c.simplified.lo;
    return c;
}

Rate alpha_from_set(const BigInt& size, int n)
{
    require(size >= 1, "set size must be at least 1");
    require(n >= 1, "n must be at least 1");
    return Rate{root_decimal(size, static_cast<unsigned>(n), 3, Rounding::Down), "set of size " + size.str() + " in dimension " + std::to_string(n), ""};
}

namespace {

BigInt fgr_power(int p) { return BigInt(p) * bpow(p - 1, 2 * p - 1); }

}  // namespace

Rate alpha_fgr(int p)
{
    require_prime(p);
    return Rate{root_decimal(fgr_power(p), static_cast<unsigned>(2 * p), 3, Rounding::Down),
                "p^(1/2p) (p-1)^((2p-1)/2p)", "valid for dimensions n >= " + std::to_string(2 * p)};
}

std::string alpha_fgr_nearest(int p)
{
    require_prime(p);
    return root_decimal(fgr_power(p), static_cast<unsigned>(2 * p), 3, Rounding::Nearest);
}

LowerForms lower_closed_forms(int p, int n)
{
    require_prime(p);
    require(n >= 1, "n must be at least 1");
    LowerForms out;
    const bool build = constructible(p, n);
    auto add = [&](std::string name, BigInt value, std::string source, std::string note = {}) {
        out.entries.push_back(BoundEntry{std::move(name), std::move(value), std::move(source), std::move(note), std::nullopt});
    };

    if (build)
        add("hypercube", BigInt(hypercube(p, n).size()), "construction");
    else
        add("hypercube", bpow(p - 1, n), "formula", "space too large to materialize");

    if (n >= 3) {
        const BigInt f = bpow(p - 1, n) + BigInt(n - 2) * (p - 1) * bpow(p - 2, n - 3) / 2;
        if (build) {
            const auto s = layered(p, n).size();
            if (BigInt(s) != f)
                fail(ErrorKind::Internal, "layered construction size differs from its formula");
            add("layered", BigInt(s), "construction");
        } else {
            add("layered", f, "formula", "space too large to materialize");
        }
    } else {
        out.omitted.emplace_back("layered", "needs n >= 3");
    }

    if (n == 3 && p >= 5) {
        add("sqrt", BigInt(sqrt_construction(p).size()), "construction");
        const Interval rp = sqrt_interval(BigInt(4) * p);  // 2 sqrt(p)
        out.entries.back().real = Interval{Rational(bpow(p - 1, 3) + p) - rp.hi, Rational(bpow(p - 1, 3) + p) - rp.lo};
        out.entries.back().note = "formula (p-1)^3 + p - 2 sqrt(p)";
    } else {
        out.omitted.emplace_back("sqrt", n != 3 ? "needs n = 3" : "needs p >= 5");
    }

    if (n == 3 && p % 24 == 7)
        add("qr", BigInt(qr_construction(p).size()), "construction", "formula (p-1)^3 + (p-1), plus (p-1)/2 at p = 7: " + std::to_string(qr_size_formula(p)));
    else
        out.omitted.emplace_back("qr", n != 3 ? "needs n = 3" : "needs p = 7 (mod 24)");

    if (n == 3 && p == 5)
        add("reference-set", BigInt(load_reference_set("fig70").size()), "reference", "bundled set fig70");
    else
        out.omitted.emplace_back("reference-set", "only bundled for p = 5, n = 3");

    if (n >= 4) {
        const auto three = lower_closed_forms(p, 3);
        BigInt best3 = 0;
        std::string from;
        for (const auto& e : three.entries)
            if (e.value > best3) {
                best3 = e.value;
                from = e.name;
            }
        BigInt best = 0;
        int copies = 0;
        for (int a = 1; 3 * a <= n; ++a) {
            BigInt v = ipow(best3, static_cast<unsigned>(a)) * bpow(p - 1, n - 3 * a);
            if (v > best) {
                best = v;
                copies = a;
            }
        }
        add("product-derived", best, "product",
            std::to_string(copies) + " copies of the best 3-dimensional set (" + from + ", " + best3.str() +
                ") times a hypercube of dimension " + std::to_string(n - 3 * copies));
    } else {
        out.omitted.emplace_back("product-derived", "needs n >= 4");
    }
    return out;
}

BigInt BoundsReport::best_lower() const
{
    BigInt b = 0;
    for (const auto& e : lower)
        b = std::max(b, e.value);
    return b;
}

BigInt BoundsReport::best_upper() const
{
    require(!upper.empty(), "no upper bounds");
    BigInt b = upper.front().value;
    for (const auto& e : upper)
        b = std::min(b, e.value);
    return b;
}

namespace {

// Certified bound for F_p^3 with k = p, if the engine refutes floor(cubic).
std::optional<std::pair<BigInt, std::string>> certified_cubic(int p, int threads)
{
    if (p != 5 && p != 7)
        return std::nullopt;
    const BigInt t = upper_cubic(p).exact.floor;
    CertifyOptions opt;
    opt.threads = threads;
    const auto c = prove_infeasible(p, t.convert_to<long long>(), opt);
    if (c.verdict != Verdict::Infeasible)
        return std::nullopt;
    return std::make_pair(BigInt(t - 1), "certify(p=" + std::to_string(p) + ", T=" + t.str() + ") is INFEASIBLE");
}

}  // namespace

BoundsReport bounds_report(int p, int n, int k, int threads)
{
    require_prime(p);
    require(n >= 1, "n must be at least 1");
    require(k >= 3 && k <= p, "k must be in [3, p]");
    BoundsReport r;
    r.p = p;
    r.n = n;
    r.k = k;

    if (k == p) {
        auto forms = lower_closed_forms(p, n);
        r.lower = std::move(forms.entries);
        for (const auto& [name, why] : forms.omitted)
            r.notes.push_back("lower." + name + " omitted: " + why);
    } else {
        const BigInt v = constructible(p, n) ? BigInt(PointSet::from_predicate(SpaceSpec(p, n), [k](const std::vector<int>& c) {
                                                          return std::all_of(c.begin(), c.end(), [k](int x) { return x <= k - 2; });
                                                      }).size())
                                             : bpow(k - 1, n);
        r.lower.push_back(BoundEntry{"hypercube", v, constructible(p, n) ? "construction" : "formula", "[0,k-2]^n", std::nullopt});
    }

    // Upper bounds valid in every dimension d, used to seed the recursion.
    std::optional<std::pair<BigInt, std::string>> cert3;
    if (k == p && n >= 3)
        cert3 = certified_cubic(p, threads);

    BigInt cur;
    std::string cur_from;
    if (k == p) {
        cur = p - 1;
        cur_from = "r_p(F_p^1) = p-1";
    } else {
        SearchConfig cfg;
        cfg.threads = 1;
        cur = BigInt(max_free_exact(p, 1, k, cfg).best_size);
        cur_from = "r_k(F_p^1) = " + cur.str() + " (search)";
    }
    std::optional<RecursiveBound> last;
    BigInt last_r;
    for (int d = 1; d < n; ++d) {
        last_r = cur;
        auto rb = upper_recursive(p, d, k, cur);
        last = rb;
        auto [ap, sz] = upper_simple(p, d + 1);
        BigInt next = std::min({rb.floor, ap, sz});
        std::string why = "recursive";
        if (k == p && d + 1 == 2 && next > BigInt(p - 1) * (p - 1)) {
            next = BigInt(p - 1) * (p - 1);
            why = "r_p(F_p^2) = (p-1)^2";
        }
        if (d + 1 == 3 && cert3 && cert3->first < next) {
            next = cert3->first;
            why = "certified";
        }
        if (d + 1 < n)
            r.notes.push_back("chain: dimension " + std::to_string(d + 1) + " upper " + next.str() + " (" + why + ")");
        cur = next;
    }

    auto [ap, sz] = upper_simple(p, n);
    r.upper.push_back(BoundEntry{"ap", ap, "formula", "p^n - (p^n-1)/(p-1)", std::nullopt});
    r.upper.push_back(BoundEntry{"sziklai", sz, "formula", "p^n - 2p^(n-1) + 1", std::nullopt});
    if (last) {
        r.upper.push_back(BoundEntry{"recursive", last->floor, "formula",
                                     "from dimension " + std::to_string(n - 1) + " with r = " +
                                         last_r.str(),
                                     last->value});
        r.notes.push_back("recursive: A = " + last->a.str() + ", R = " + last->radicand.str() + ", D = " + last->d.str() +
                          ", bound (A - sqrt R)/D in [" + format_decimal(last->value.lo, 3, Rounding::Down) + ", " +
                          format_decimal(last->value.hi, 3, Rounding::Up) + "]");
        r.notes.push_back("recursive: incidence count s = " + last->pair_count.str() + " point pairs over hyperplanes at r = " +
                          last->floor.str());
        r.notes.push_back("recursive: seeded with " + cur_from);
    } else {
        r.notes.push_back("upper.recursive omitted: needs n >= 2");
    }
    if (n == 3 && k == p) {
        auto cb = upper_cubic(p);
        r.upper.push_back(BoundEntry{"cubic", cb.exact.floor, "formula",
                                     "simplified p^3-2p^2-(sqrt2-1)p+2 <= " + format_decimal(cb.simplified.hi, 3, Rounding::Up),
                                     cb.exact.value});
        if (!cb.exact_le_simplified)
            fail(ErrorKind::Internal, "cubic bound exceeds its simplified form");
    } else {
        r.notes.push_back("upper.cubic omitted: needs n = 3 and k = p");
    }
    if (n == 3 && cert3)
        r.upper.push_back(BoundEntry{"certified", cert3->first, "certificate", cert3->second, std::nullopt});
    else
        r.notes.push_back("upper.certified omitted: needs n = 3, k = p and p in {5, 7}");

    for (const auto& e : r.lower)
        r.rates.emplace_back(e.name, alpha_from_set(e.value, n));
    if (k == p)
        r.rates.emplace_back("fgr", alpha_fgr(p));

    if (r.best_lower() > r.best_upper())
        fail(ErrorKind::Internal, "lower bound exceeds upper bound");
    return r;
}

Table1 table1(const std::vector<int>& primes, const std::vector<int>& dims)
{
    Table1 t;
    t.primes = primes;
    t.dims = dims;
    for (int n : dims)
        for (int p : primes) {
            Table1Cell c;
            c.p = p;
            c.n = n;
            c.size = BigInt(layered_size_formula(p, n));
            c.rate = root_decimal(c.size, static_cast<unsigned>(n), 3, Rounding::Down);
            for (int m : dims)
                if (m < n) {
                    const BigInt sm = BigInt(layered_size_formula(p, m));
                    // size_n^(1/n) < size_m^(1/m)
                    if (ipow(c.size, static_cast<unsigned>(m)) < ipow(sm, static_cast<unsigned>(n)))
                        c.dominated = true;
                }
            t.cells.push_back(c);
        }
    for (int p : primes) {
        t.fgr_down.push_back(alpha_fgr(p).decimal);
        t.fgr_nearest.push_back(alpha_fgr_nearest(p));
    }
    return t;
}

}  // namespace linefree
