// Acceptance gate: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "certify.hpp"
#include "constructions.hpp"
#include "grid_format.hpp"
#include "search.hpp"
#include "verifier.hpp"

using namespace linefree;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    std::vector<std::string> failures;

    void check(bool ok, const std::string& what)
    {
        if (!ok)
            failures.push_back(what);
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

template <class F>
double timed(F&& f)
{
    auto t0 = Clock::now();
    f();
    return seconds_since(t0);
}

int threads() { return 0; }

bool report(int number, const std::string& title, const std::function<void(Criterion&)>& body, double limit)
{
    Criterion c;
    auto t0 = Clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double t = seconds_since(t0);
    if (limit > 0 && t > limit)
        c.failures.push_back("took " + std::to_string(t) + " s, limit " + std::to_string(limit) + " s");
    std::ostringstream line;
    line << "criterion " << number << ": " << (c.failures.empty() ? "PASS" : "FAIL") << "  " << title;
    char buf[32];
    std::snprintf(buf, sizeof buf, " [%.2f s]", t);
    line << buf;
    for (const auto& f : c.failures)
        line << " | " << f;
    std::cout << line.str() << std::endl;
    return c.failures.empty();
}

std::string str(long long v) { return std::to_string(v); }

void constructions(Criterion& c)
{
    const std::vector<std::pair<int, int>> matrix{{5, 3}, {5, 4}, {7, 3}, {7, 4}, {11, 3}, {13, 3}};
    auto free_and_sized = [&](const std::string& name, const PointSet& s, long long expected) {
        c.check(!find_progression(s, s.space().p(), threads()), name + " contains a progression");
        c.check(static_cast<long long>(s.size()) == expected,
                name + " has " + str(static_cast<long long>(s.size())) + " points, expected " + str(expected));
    };
    for (auto [p, n] : matrix) {
        const std::string at = "(" + str(p) + "," + str(n) + ")";
        long long cube = 1;
        for (int i = 0; i < n; ++i)
            cube *= p - 1;
        free_and_sized("hypercube" + at, hypercube(p, n), cube);
        free_and_sized("layered" + at, layered(p, n), layered_size_formula(p, n));
        if (n == 3)
            free_and_sized("sqrt" + at, sqrt_construction(p), sqrt_size_formula(p));
        if (n == 3 && p % 24 == 7)
            free_and_sized("qr" + at, qr_construction(p), qr_size_formula(p));
    }
    free_and_sized("qr(31)", qr_construction(31), qr_size_formula(31));
    c.check(layered(5, 3).size() == 66, "layered(5,3) != 66");
    c.check(layered(5, 4).size() == 268, "layered(5,4) != 268");
    c.check(sqrt_construction(11).size() == 1005, "sqrt(11) != 1005");
    c.check(qr_construction(7).size() == 225, "qr(7) != 225");
    c.check(qr_construction(31).size() == 27030, "qr(31) != 27030");
}

void fig70(Criterion& c)
{
    auto s = load_reference_set("fig70");
    c.check(s.size() == 70, "size " + str(static_cast<long long>(s.size())));
    c.check(!find_progression(s, 5), "not 5-progression-free");
    std::vector<std::size_t> sizes;
    for (int j = 0; j < 5; ++j)
        sizes.push_back(layer(s, j).size());
    c.check(sizes == std::vector<std::size_t>{6, 16, 16, 16, 16}, "layer sizes differ");
    auto r = bounds_report(5, 3, 5);
    c.check(r.best_lower() == 70, "best lower " + r.best_lower().str());
    c.check(r.best_upper() == 73, "best upper " + r.best_upper().str());
}

void planar(Criterion& c)
{
    struct Case {
        int p, k;
        std::size_t value;
        double limit;
    };
    for (auto cs : std::vector<Case>{{5, 5, 16, 300}, {5, 4, 11, 300}, {7, 7, 36, 7200}, {7, 6, 29, 7200}}) {
        SearchConfig cfg;
        cfg.symmetry = SymmetryFix::Affine3;
        cfg.threads = threads();
        std::optional<SearchResult> res;
        const double t = timed([&] { res = max_free_exact(cs.p, 2, cs.k, cfg); });
        const auto& r = *res;
        const std::string at = "r_" + str(cs.k) + "(F_" + str(cs.p) + "^2)";
        c.check(r.optimal && r.best_size == cs.value,
                at + " = " + str(static_cast<long long>(r.best_size)) + (r.optimal ? "" : " (not proven)"));
        c.check(t <= cs.limit, at + " took " + std::to_string(t) + " s");
        c.check(!find_progression(r.best, cs.k), at + " witness set is not free");
    }
    for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 1}, {7, 1}, {11, 1}, {13, 1}, {17, 1}, {19, 1}})
        for (int k = 3; k <= p; ++k) {
            auto truth = brute_force_oracle(p, n, k);
            auto r = max_free_exact(p, n, k);
            c.check(r.optimal && static_cast<long long>(r.best_size) == truth,
                    "oracle disagreement at (" + str(p) + "," + str(n) + "," + str(k) + ")");
        }
}

void certificates(Criterion& c)
{
    CertifyOptions opt;
    opt.threads = threads();
    Certificate c5;
    const double t5 = timed([&] { c5 = prove_infeasible(5, 74, opt); });
    c.check(c5.verdict == Verdict::Infeasible, "certify(5,74) not INFEASIBLE");
    c.check(t5 < 60, "certify(5,74) took " + std::to_string(t5) + " s");
    const std::vector<std::vector<long long>> dists{
        {10, 16, 16, 16, 16}, {11, 15, 16, 16, 16}, {14, 14, 14, 16, 16}, {14, 14, 15, 15, 16}, {14, 15, 15, 15, 15}};
    c.check(c5.distributions == dists, "distributions for (5,74) differ");
    c.check(c5.pairs.coefficients == std::vector<long long>{525, 520, 513, 512, 511} && c5.pairs.rhs == 16206,
            "pair equation for (5,74) differs");
    c.check(c5.weights.weights == std::vector<long long>{1, -2, -5}, "weights for (5,74) differ");

    Certificate c7;
    const double t7 = timed([&] { c7 = prove_infeasible(7, 243, opt); });
    c.check(c7.verdict == Verdict::Infeasible, "certify(7,243) not INFEASIBLE");
    c.check(t7 < 1800, "certify(7,243) took " + std::to_string(t7) + " s");
    c.check(c7.instance.allowed_sizes == std::vector<long long>{27, 28, 29, 33, 34, 35, 36},
            "allowed sizes for (7,243) differ");
    const std::vector<std::vector<long long>> multisets{{33, 36, 36, 36, 36, 36, 36, 36},
                                                        {34, 35, 36, 36, 36, 36, 36, 36},
                                                        {35, 35, 35, 36, 36, 36, 36, 36}};
    c.check(c7.multisets == multisets, "line-plane multisets for (7,243) differ");
    c.check(c7.weights.weights == std::vector<long long>{3, -5, -13, -21}, "weights for (7,243) differ");

    c.check(prove_infeasible(5, 70, opt).verdict == Verdict::Unknown, "certify(5,70) not UNKNOWN");

    for (const auto* cert : {&c5, &c7}) {
        auto j = certificate_json(*cert);
        auto r = replay_certificate(nlohmann::ordered_json::parse(j.dump()));
        c.check(r.ok, "replay failed: " + r.message);
        c.check(certificate_json(prove_infeasible(cert->instance.p, cert->instance.target, opt)).dump() == j.dump(),
                "certificate not reproducible bit-exactly");
    }
}

void formulas(Criterion& c)
{
    c.check(upper_recursive(5, 2, 5, BigInt(16)).floor == 74, "upper_recursive(5,2,5,16)");
    c.check(upper_recursive(7, 2, 7, BigInt(36)).floor == 243, "upper_recursive(7,2,7,36)");
    c.check(upper_recursive(3, 2, 3, BigInt(4)).floor == 9, "upper_recursive(3,2,3,4)");
    auto [ap, sz] = upper_simple(5, 3);
    c.check(ap == 94 && sz == 76, "upper_simple(5,3)");
    c.check(alpha_from_set(BigInt(70), 3).decimal == "4.121", "alpha(70,3)");
    c.check(alpha_from_set(BigInt(225), 3).decimal == "6.082", "alpha(225,3)");

    const std::vector<int> primes{5, 7, 11, 13, 17};
    // The printed row mixes truncation (p=17) and rounding (p=13); an entry
    // matches when it is one of the two 3-decimal renderings.
    const std::vector<std::string> fgr{"4.090", "6.066", "10.043", "12.037", "16.028"};
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const auto down = alpha_fgr(primes[i]).decimal;
        const auto nearest = alpha_fgr_nearest(primes[i]);
        c.check(down == fgr[i] || nearest == fgr[i],
                "fgr rate at p=" + str(primes[i]) + " is " + down + " (down) / " + nearest + " (nearest)");
    }

    const std::vector<std::vector<std::string>> printed{
        {"4.041", "6.027", "10.016", "12.013", "16.010"}, {"4.046", "6.034", "10.022", "12.019", "16.014"},
        {"4.041", "6.034", "10.024", "12.020", "16.016"}, {"4.034", "6.031", "10.024", "12.021", "16.017"},
        {"4.027", "6.028", "10.023", "12.020", "16.017"}};
    auto t = table1(primes, {3, 4, 5, 6, 7});
    int matched = 0;
    for (const auto& cell : t.cells) {
        const auto row = static_cast<std::size_t>(cell.n - 3);
        const auto col = static_cast<std::size_t>(std::find(primes.begin(), primes.end(), cell.p) - primes.begin());
        if (cell.rate == printed[row][col])
            ++matched;
        else
            c.check(false, "table entry (" + str(cell.p) + "," + str(cell.n) + ") = " + cell.rate);
    }
    c.check(matched == 25, str(matched) + "/25 table entries");
}

void claim_bounds(Criterion& c)
{
    c.check(lp_line_bounds(5, 16).min_count == 12, "lp(5,16).min = " + str(lp_line_bounds(5, 16).min_count));
    c.check(lp_line_bounds(7, 36).min_count == 18, "lp(7,36).min = " + str(lp_line_bounds(7, 36).min_count));
    const long long expected[] = {33, 30, 28};
    const long long ms[] = {35, 34, 33};
    for (int i = 0; i < 3; ++i) {
        auto b = lp_line_bounds(7, ms[i]);
        c.check(b.max_count == expected[i], "lp(7," + str(ms[i]) + ").max = " + str(b.max_count) + " (exact " +
                                                format_rational(b.max) + "), expected " + str(expected[i]));
    }
    c.check(degree_line_bound(5, 14).value == 14, "degree(5,14)");
    c.check(degree_line_bound(5, 15).value == 15, "degree(5,15)");
}

PointSet random_set(const SpaceSpec& sp, double density, std::mt19937& rng)
{
    std::bernoulli_distribution coin(density);
    PointSet s(sp);
    for (PointIndex i = 0; i < sp.point_count(); ++i)
        if (coin(rng))
            s.insert(i);
    return s;
}

void properties(Criterion& c)
{
    std::mt19937 rng(20240601);
    const std::vector<std::pair<int, int>> matrix{{5, 2}, {7, 2}, {5, 3}, {5, 4}, {7, 3}, {7, 4}, {11, 3}, {13, 3}};
    for (auto [p, n] : matrix) {
        SpaceSpec sp(p, n);
        for (int i = 0; i < 100; ++i) {
            auto s = random_set(sp, (i % 10 + 0.5) / 10.0, rng);
            auto r = identity_check(s);
            c.check(r.holds(), "identity failed at (" + str(p) + "," + str(n) + ")");
        }
    }

    std::vector<std::pair<PointSet, int>> free_sets{
        {load_reference_set("fig70"), 5}, {sqrt_construction(5), 5}, {qr_construction(7), 7}, {layered(5, 4), 5}};
    for (int i = 0; i < 50; ++i) {
        const auto& [s, k] = free_sets[static_cast<std::size_t>(i) % free_sets.size()];
        const int p = s.space().p(), n = s.space().n();
        std::uniform_int_distribution<int> d(0, p - 1);
        Matrix m;
        do {
            m.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
            for (auto& row : m)
                for (auto& x : row)
                    x = d(rng);
        } while (determinant_mod(m, p) == 0);
        Point v{std::vector<int>(static_cast<std::size_t>(n))};
        for (auto& x : v.coords)
            x = d(rng);
        c.check(!find_progression(apply_affine(s, m, v), k), "affine image gained a progression");
    }

    std::vector<PointSet> pieces{hypercube(5, 1), hypercube(5, 2), layered(5, 3), sqrt_construction(5),
                                 load_reference_set("fig70")};
    for (const auto& a : pieces)
        for (const auto& b : pieces)
            if (a.space().n() + b.space().n() <= 5)
                c.check(!find_progression(product(a, b), 5, threads()), "product gained a progression");

    std::vector<std::pair<PointSet, int>> grids{{load_reference_set("fig70"), 5}, {layered(7, 4), 7},
                                                {sqrt_construction(11), 11}, {qr_construction(31), 31},
                                                {hypercube(3, 2), 3}};
    for (const auto& [s, k] : grids) {
        auto doc = parse_grid(render_grid(s, k));
        c.check(doc.set == s && doc.k == k, "grid round trip failed");
    }

    for (const auto& [s, k] : free_sets)
        for (int t : {1, 2, 4, 8})
            c.check(find_progression(s, k, t).has_value() == false, "verdict changed with threads");
    auto noisy = random_set(SpaceSpec(5, 4), 0.4, rng);
    auto w1 = find_progression(noisy, 4, 1);
    for (int t : {2, 4, 8}) {
        auto w = find_progression(noisy, 4, t);
        c.check(w.has_value() == w1.has_value() && (!w || w->points == w1->points), "witness changed with threads");
    }
    for (auto [p, k] : std::vector<std::pair<int, int>>{{5, 5}, {5, 4}, {7, 7}}) {
        std::size_t base = 0;
        for (int t : {1, 4}) {
            SearchConfig cfg;
            cfg.symmetry = SymmetryFix::Affine3;
            cfg.threads = t;
            auto r = max_free_exact(p, 2, k, cfg);
            if (t == 1)
                base = r.best_size;
            c.check(r.best_size == base, "optimum changed with threads");
        }
    }
    CertifyOptions a, b;
    a.threads = 1;
    b.threads = 4;
    c.check(certificate_json(prove_infeasible(5, 74, a)).dump() == certificate_json(prove_infeasible(5, 74, b)).dump(),
            "certificate changed with threads");
}

}  // namespace

int main()
{
    bool ok = true;
    ok &= report(1, "construction correctness", constructions, 10);
    ok &= report(2, "fig70 reference set", fig70, 1);
    ok &= report(3, "exact 2D values and oracle agreement", planar, 0);
    ok &= report(4, "certificates", certificates, 0);
    ok &= report(5, "bound formulas", formulas, 0);
    ok &= report(6, "claim bounds", claim_bounds, 0);
    ok &= report(7, "property suites", properties, 300);
    std::cout << (ok ? "acceptance: all criteria PASS" : "acceptance: some criteria FAIL") << std::endl;
    return ok ? 0 : 1;
}
