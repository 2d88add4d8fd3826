#include "certify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "error.hpp"
#include "exact.hpp"
#include "geometry.hpp"
#include "linefree_version.hpp"
#include "parallel.hpp"
#include "search.hpp"
#include "verifier.hpp"

namespace linefree {

namespace {

struct PlaneValues {
    long long max_plane;
    long long sub_plane;
};

std::optional<PlaneValues> table_values(int p)
{
    if (p == 5)
        return PlaneValues{16, 11};
    if (p == 7)
        return PlaneValues{36, 29};
    return std::nullopt;
}

long long c2(long long m) { return m * (m - 1) / 2; }

long long count_of(const std::vector<long long>& v, long long s) { return std::count(v.begin(), v.end(), s); }

// All ascending multisets of `len` values from `sizes` (ascending) with the
// given sum, in lexicographic order.
std::vector<std::vector<long long>> multisets_with_sum(const std::vector<long long>& sizes, int len, long long sum)
{
    std::vector<std::vector<long long>> out;
    std::vector<long long> cur;
    std::function<void(std::size_t, int, long long)> rec = [&](std::size_t from, int left, long long rem) {
        if (left == 0) {
            if (rem == 0)
                out.push_back(cur);
            return;
        }
        for (std::size_t i = from; i < sizes.size(); ++i) {
            const long long s = sizes[i];
            if (s * left > rem)
                break;
            if (sizes.back() * left < rem)
                continue;
            cur.push_back(s);
            rec(i, left - 1, rem - s);
            cur.pop_back();
        }
    };
    if (!sizes.empty())
        rec(0, len, sum);
    return out;
}

std::vector<long long> primitive(std::vector<Rational> v)
{
    BigInt l = 1;
    for (const auto& x : v)
        l = boost::multiprecision::lcm(l, denominator(x));
    std::vector<BigInt> ints;
    BigInt g = 0;
    for (const auto& x : v) {
        ints.push_back(numerator(x) * (l / denominator(x)));
        g = boost::multiprecision::gcd(g, ints.back());
    }
    std::vector<long long> out;
    bool flip = false;
    for (const auto& x : ints)
        if (x != 0) {
            flip = x < 0;
            break;
        }
    for (const auto& x : ints) {
        BigInt y = g == 0 ? x : x / g;
        out.push_back((flip ? -y : y).convert_to<long long>());
    }
    return out;
}

std::vector<SizeBound> size_bounds(const ExclusionInstance& inst, const std::vector<long long>& sizes, bool faithful)
{
    const int p = inst.p;
    std::vector<SizeBound> out;
    for (long long s : sizes) {
        SizeBound b;
        b.size = s;
        const auto lp = lp_line_bounds(p, s);
        if (faithful) {
            if (s == inst.max_plane) {
                b.lo = std::max<long long>(0, lp.min_count);
                b.lo_source = "lp";
                b.hi_source = "none";
            } else {
                b.lo = 0;
                b.lo_source = "trivial";
                if (p == 5) {
                    b.hi = degree_line_bound(p, s).value;
                    b.hi_source = "degree";
                } else {
                    b.hi = pair_combination_cap(p, s);
                    b.hi_source = "combination";
                }
            }
            b.impossible = !lp.feasible;
            out.push_back(b);
            continue;
        }
        if (!lp.feasible) {
            b.impossible = true;
            b.lo_source = "lp";
            b.hi = 0;
            b.hi_source = "lp";
            out.push_back(b);
            continue;
        }
        b.lo = std::max<long long>(0, lp.min_count);
        b.lo_source = "lp";
        b.hi = lp.max_count;
        b.hi_source = "lp";
        const auto deg = degree_line_bound(p, s).value;
        if (deg < *b.hi) {
            b.hi = deg;
            b.hi_source = "degree";
        }
        if (p >= 5) {
            const auto comb = pair_combination_cap(p, s);
            if (comb < *b.hi) {
                b.hi = comb;
                b.hi_source = "combination";
            }
        }
        out.push_back(b);
    }
    return out;
}

// Evaluates one class-count vector; fills planes/min/max/refuted_by.
void evaluate(const Certificate& c, SweepEntry& e)
{
    const auto& ws = c.weights.sizes;
    e.planes.assign(ws.size(), 0);
    long long above = 0;
    for (std::size_t j = 0; j < ws.size(); ++j) {
        for (std::size_t d = 0; d < c.distributions.size(); ++d)
            e.planes[j] += e.counts[d] * count_of(c.distributions[d], ws[j]);
        if (ws[j] > c.instance.sub_plane)
            above += e.planes[j];
    }
    for (std::size_t j = 0; j < ws.size(); ++j)
        if (c.bounds[j].impossible && e.planes[j] > 0) {
            e.refuted_by = "impossible size " + std::to_string(ws[j]);
            return;
        }
    if (c.multisets.empty()) {
        if (above > 0)
            e.refuted_by = "no line-plane multiset";
        return;
    }
    std::optional<long long> mn = 0, mx = 0;
    for (std::size_t j = 0; j < ws.size(); ++j) {
        const long long w = c.weights.weights[j];
        const long long n = e.planes[j];
        if (w == 0 || n == 0)
            continue;
        const auto& b = c.bounds[j];
        if (w > 0) {
            if (mn)
                *mn += w * b.lo * n;
            if (mx) {
                if (b.hi)
                    *mx += w * *b.hi * n;
                else
                    mx.reset();
            }
        } else {
            if (mn) {
                if (b.hi)
                    *mn += w * *b.hi * n;
                else
                    mn.reset();
            }
            if (mx)
                *mx += w * b.lo * n;
        }
    }
    e.min = mn;
    e.max = mx;
    if (mn && *mn > 0)
        e.refuted_by = "min > 0";
    else if (mx && *mx < 0)
        e.refuted_by = "max < 0";
}

// Calls f(counts) for every nonnegative vector with sum `total` and
// sum(counts * deficit) == excess, in colex order. Stops when f returns false.
void for_each_count_vector(const std::vector<long long>& deficit, long long total, long long excess,
                           const std::function<bool(const std::vector<long long>&)>& f)
{
    const std::size_t m = deficit.size();
    if (m == 0 || excess < 0)
        return;
    std::vector<long long> c(m, 0);
    // Largest deficit among indices below i, to prune infeasible branches.
    std::vector<long long> min_def(m), max_def(m);
    for (std::size_t i = 0; i < m; ++i) {
        min_def[i] = i == 0 ? deficit[0] : std::min(min_def[i - 1], deficit[i]);
        max_def[i] = i == 0 ? deficit[0] : std::max(max_def[i - 1], deficit[i]);
    }
    bool go = true;
    std::function<void(std::size_t, long long, long long)> rec = [&](std::size_t i, long long rem_n, long long rem_e) {
        if (!go)
            return;
        if (i == 0) {
            if (deficit[0] * rem_n == rem_e) {
                c[0] = rem_n;
                go = f(c);
                c[0] = 0;
            }
            return;
        }
        for (long long v = 0; v <= rem_n; ++v) {
            const long long e = rem_e - v * deficit[i];
            if (e < 0)
                break;
            const long long left = rem_n - v;
            if (e < min_def[i - 1] * left || e > max_def[i - 1] * left)
                continue;
            c[i] = v;
            rec(i - 1, left, e);
            c[i] = 0;
            if (!go)
                return;
        }
    };
    rec(m - 1, total, excess);
}

}  // namespace

ExclusionInstance make_instance(int p, long long target, const CertifyOptions& opt)
{
    require(p >= 3 && is_prime(p), "p must be an odd prime");
    const long long cube = static_cast<long long>(p) * p * p;
    require(target >= 1 && target <= cube, "target must be in [1, p^3]");
    ExclusionInstance inst;
    inst.p = p;
    inst.target = target;
    if (opt.max_plane_override && opt.sub_plane_override) {
        inst.max_plane = *opt.max_plane_override;
        inst.sub_plane = *opt.sub_plane_override;
        inst.plane_value_source = "supplied";
    } else if (opt.plane_values_from_search) {
        SearchConfig cfg;
        cfg.symmetry = SymmetryFix::Affine3;
        cfg.threads = opt.threads;
        cfg.time_budget_seconds = opt.search_budget_seconds;
        auto full = max_free_exact(p, 2, p, cfg);
        auto sub = max_free_exact(p, 2, p - 1, cfg);
        if (!full.optimal || !sub.optimal)
            fail(ErrorKind::Resource, "plane values not proven optimal within the search budget");
        inst.max_plane = static_cast<long long>(full.best_size);
        inst.sub_plane = static_cast<long long>(sub.best_size);
        inst.plane_value_source = "search";
    } else if (auto t = table_values(p)) {
        inst.max_plane = t->max_plane;
        inst.sub_plane = t->sub_plane;
        inst.plane_value_source = "table";
    } else {
        fail(ErrorKind::Unsupported, "no tabulated plane values for p=" + std::to_string(p) +
                                         "; request them from search");
    }
    inst.line_plane_sum = (target - (p - 1)) + static_cast<long long>(p + 1) * (p - 1);
    inst.min_line_plane = inst.line_plane_sum - p * inst.max_plane;
    inst.num_classes = (cube - 1) / (p - 1);
    inst.planes_per_pair = p + 1;
    inst.allowed_sizes = allowed_plane_sizes(inst);
    return inst;
}

std::vector<long long> allowed_plane_sizes(const ExclusionInstance& inst)
{
    std::vector<long long> out;
    const long long lo = std::max<long long>(0, inst.target - static_cast<long long>(inst.p - 1) * inst.max_plane);
    for (long long s = lo; s <= inst.max_plane; ++s)
        if (!(inst.sub_plane < s && s < inst.min_line_plane))
            out.push_back(s);
    return out;
}

std::vector<std::vector<long long>> class_distributions(const ExclusionInstance& inst)
{
    return multisets_with_sum(inst.allowed_sizes, inst.p, inst.target);
}

PairEquation pair_equation(const ExclusionInstance& inst, const std::vector<std::vector<long long>>& dists)
{
    require(!dists.empty(), "pair equation needs at least one distribution");
    PairEquation eq;
    for (const auto& d : dists) {
        long long s = 0;
        for (auto x : d)
            s += c2(x);
        eq.coefficients.push_back(s);
    }
    eq.rhs = inst.planes_per_pair * c2(inst.target);
    eq.class_count = inst.num_classes;
    return eq;
}

std::vector<std::vector<long long>> line_plane_multisets(const ExclusionInstance& inst)
{
    std::vector<long long> sizes;
    for (auto s : inst.allowed_sizes)
        if (s >= inst.min_line_plane)
            sizes.push_back(s);
    return multisets_with_sum(sizes, inst.p + 1, inst.line_plane_sum);
}

NullWeights null_weights(const std::vector<std::vector<long long>>& multisets, const std::vector<long long>& sizes)
{
    NullWeights out;
    out.sizes = sizes;
    std::sort(out.sizes.begin(), out.sizes.end(), std::greater<>());
    const std::size_t cols = out.sizes.size();
    std::vector<std::vector<Rational>> a;
    for (const auto& d : multisets) {
        std::vector<Rational> row;
        for (auto s : out.sizes)
            row.emplace_back(count_of(d, s));
        a.push_back(std::move(row));
    }
    // Reduced row echelon form.
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t piv = r;
        while (piv < a.size() && a[piv][c] == 0)
            ++piv;
        if (piv == a.size())
            continue;
        std::swap(a[piv], a[r]);
        const Rational lead = a[r][c];
        for (auto& x : a[r])
            x /= lead;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (i != r && a[i][c] != 0) {
                const Rational f = a[i][c];
                for (std::size_t j = 0; j < cols; ++j)
                    a[i][j] -= f * a[r][j];
            }
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end())
            continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -a[i][free];
        out.basis.push_back(primitive(std::move(v)));
    }
    out.dimension = static_cast<int>(out.basis.size());
    if (out.dimension == 1)
        out.weights = out.basis[0];
    return out;
}

Certificate prove_infeasible(int p, long long target, const CertifyOptions& opt)
{
    if (opt.paper_faithful)
        require(p == 5 || p == 7, "paper-faithful caps are defined for p = 5 and p = 7 only");
    Certificate c;
    c.paper_faithful = opt.paper_faithful;
    c.instance = make_instance(p, target, opt);
    const auto& inst = c.instance;

    if (target > static_cast<long long>(p) * inst.max_plane) {
        c.shortcut = "pigeonhole";
        c.verdict = Verdict::Infeasible;
        c.sweep_complete = true;
        c.reason = "T > p*M: some plane of a parallel class would exceed M points";
        return c;
    }
    c.distributions = class_distributions(inst);
    if (c.distributions.empty()) {
        c.shortcut = "no-distributions";
        c.verdict = Verdict::Infeasible;
        c.sweep_complete = true;
        c.reason = "no multiset of p allowed plane sizes sums to T";
        return c;
    }
    c.pairs = pair_equation(inst, c.distributions);
    c.multisets = line_plane_multisets(inst);

    std::vector<long long> weighted;
    for (auto s : inst.allowed_sizes)
        if (s >= inst.min_line_plane)
            weighted.push_back(s);
    c.weights = null_weights(c.multisets, weighted);
    if (c.multisets.empty()) {
        c.weights.weights.assign(c.weights.sizes.size(), 0);
    } else if (c.weights.dimension != 1) {
        c.verdict = Verdict::Unknown;
        c.reason = "null space of the line-plane multisets has dimension " + std::to_string(c.weights.dimension);
        return c;
    }
    c.bounds = size_bounds(inst, c.weights.sizes, opt.paper_faithful);

    const long long maxpairs = *std::max_element(c.pairs.coefficients.begin(), c.pairs.coefficients.end());
    std::vector<long long> deficit;
    for (auto x : c.pairs.coefficients)
        deficit.push_back(maxpairs - x);
    const long long excess = c.pairs.class_count * maxpairs - c.pairs.rhs;

    const int threads = resolve_threads(opt.threads);
    constexpr std::size_t kBatch = 8192;
    std::vector<SweepEntry> batch;
    bool stopped = false;
    auto flush = [&]() {
        parallel_blocks(batch.size(), threads, [&](std::size_t, std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i)
                evaluate(c, batch[i]);
        });
        for (auto& e : batch) {
            ++c.vectors_checked;
            const bool refuted = !e.refuted_by.empty();
            c.sweep.push_back(std::move(e));
            if (!refuted) {
                stopped = true;
                break;
            }
            if (opt.max_vectors > 0 && c.vectors_checked >= opt.max_vectors) {
                stopped = true;
                break;
            }
        }
        batch.clear();
    };
    for_each_count_vector(deficit, c.pairs.class_count, excess, [&](const std::vector<long long>& counts) {
        batch.push_back(SweepEntry{counts, {}, std::nullopt, std::nullopt, {}});
        if (batch.size() == kBatch)
            flush();
        return !stopped;
    });
    if (!stopped && !batch.empty())
        flush();

    const bool all_refuted = !c.sweep.empty() ? !c.sweep.back().refuted_by.empty() : true;
    c.sweep_complete = !stopped;
    if (c.sweep_complete && all_refuted) {
        c.verdict = Verdict::Infeasible;
        c.reason = c.sweep.empty() ? "the count and pair equations have no nonnegative integer solution"
                                   : "every class-count vector violates the weighted line identity";
    } else {
        c.verdict = Verdict::Unknown;
        if (!c.sweep.back().refuted_by.empty())
            c.reason = "stopped after " + std::to_string(c.vectors_checked) + " vectors (budget)";
        else
            c.reason = "class-count vector " + std::to_string(c.vectors_checked) + " is not refuted";
    }
    return c;
}

const char* verdict_name(Verdict v) { return v == Verdict::Infeasible ? "INFEASIBLE" : "UNKNOWN"; }

nlohmann::ordered_json certificate_json(const Certificate& c)
{
    using J = nlohmann::ordered_json;
    const auto& in = c.instance;
    J j;
    j["schema"] = kJsonSchema;
    j["version"] = kVersion;
    j["kind"] = "certificate";
    j["instance"] = {{"p", in.p},
                     {"target", in.target},
                     {"max_plane", in.max_plane},
                     {"sub_plane", in.sub_plane},
                     {"plane_value_source", in.plane_value_source},
                     {"line_plane_sum", in.line_plane_sum},
                     {"min_line_plane", in.min_line_plane},
                     {"allowed_sizes", in.allowed_sizes},
                     {"num_classes", in.num_classes},
                     {"planes_per_pair", in.planes_per_pair}};
    j["mode"] = c.paper_faithful ? "paper-faithful" : "derived";
    j["shortcut"] = c.shortcut.empty() ? J(nullptr) : J(c.shortcut);
    j["distributions"] = c.distributions;
    j["pair_equation"] = {{"coefficients", c.pairs.coefficients},
                          {"rhs", c.pairs.rhs},
                          {"class_count", c.pairs.class_count}};
    j["line_plane_multisets"] = c.multisets;
    j["weights"] = {{"sizes", c.weights.sizes},
                    {"null_dimension", c.weights.dimension},
                    {"basis", c.weights.basis},
                    {"values", c.weights.weights}};
    J bounds = J::array();
    for (const auto& b : c.bounds) {
        J e = {{"size", b.size}, {"lo", b.lo}, {"lo_source", b.lo_source}};
        e["hi"] = b.hi ? J(*b.hi) : J(nullptr);
        e["hi_source"] = b.hi_source;
        e["impossible"] = b.impossible;
        bounds.push_back(e);
    }
    j["size_bounds"] = bounds;
    J log = J::array();
    for (const auto& e : c.sweep) {
        J x = {{"counts", e.counts}, {"planes", e.planes}};
        x["min"] = e.min ? J(*e.min) : J(nullptr);
        x["max"] = e.max ? J(*e.max) : J(nullptr);
        x["refuted_by"] = e.refuted_by.empty() ? J(nullptr) : J(e.refuted_by);
        log.push_back(x);
    }
    j["sweep"] = {{"vectors_checked", c.vectors_checked}, {"complete", c.sweep_complete}, {"log", log}};
    j["verdict"] = verdict_name(c.verdict);
    j["reason"] = c.reason;
    return j;
}

namespace {

std::string multiset_text(const std::vector<long long>& d)
{
    std::ostringstream o;
    o << "{";
    for (std::size_t i = 0; i < d.size();) {
        std::size_t j = i;
        while (j < d.size() && d[j] == d[i])
            ++j;
        o << (i ? "," : "") << d[i];
        if (j - i > 1)
            o << "^" << (j - i);
        i = j;
    }
    o << "}";
    return o.str();
}

std::string opt_text(const std::optional<long long>& v, const char* inf)
{
    return v ? std::to_string(*v) : std::string(inf);
}

}  // namespace

std::string certificate_text(const Certificate& c, std::size_t max_log_lines)
{
    const auto& in = c.instance;
    std::ostringstream o;
    o << "certificate (linefree " << kVersion << ")\n";
    o << "claim: no " << in.p << "-progression-free subset of F_" << in.p << "^3 has " << in.target << " points\n";
    o << "mode: " << (c.paper_faithful ? "paper-faithful" : "derived") << "\n";
    o << "M = " << in.max_plane << ", r_sub = " << in.sub_plane << " (" << in.plane_value_source << ")\n";
    o << "L = " << in.min_line_plane << ", planes through a (p-1)-line sum to " << in.line_plane_sum << "\n";
    o << "allowed plane sizes:";
    for (auto s : in.allowed_sizes)
        o << " " << s;
    o << "\n";
    if (!c.shortcut.empty()) {
        o << "shortcut: " << c.shortcut << "\n";
    } else {
        o << "distributions (" << c.distributions.size() << "):\n";
        for (std::size_t i = 0; i < c.distributions.size(); ++i)
            o << "  D" << i + 1 << " " << multiset_text(c.distributions[i]) << "  pairs " << c.pairs.coefficients[i] << "\n";
        o << "count equation: sum of D-counts = " << c.pairs.class_count << "\n";
        o << "pair equation: sum of pairs*count = " << c.pairs.rhs << "\n";
        o << "line-plane multisets:";
        for (const auto& m : c.multisets)
            o << " " << multiset_text(m);
        o << "\n";
        o << "weights over sizes (";
        for (std::size_t i = 0; i < c.weights.sizes.size(); ++i)
            o << (i ? "," : "") << c.weights.sizes[i];
        o << "): (";
        for (std::size_t i = 0; i < c.weights.weights.size(); ++i)
            o << (i ? "," : "") << c.weights.weights[i];
        o << ")\n";
        for (const auto& b : c.bounds)
            o << "  size " << b.size << ": " << b.lo << " (" << b.lo_source << ") <= (p-1)-lines <= "
              << opt_text(b.hi, "inf") << " (" << b.hi_source << ")" << (b.impossible ? " impossible" : "") << "\n";
        o << "sweep: " << c.vectors_checked << " vectors" << (c.sweep_complete ? " (complete)" : " (stopped)") << "\n";
        for (std::size_t i = 0; i < c.sweep.size() && i < max_log_lines; ++i) {
            const auto& e = c.sweep[i];
            o << "  (";
            for (std::size_t k = 0; k < e.counts.size(); ++k)
                o << (k ? "," : "") << e.counts[k];
            o << ") min " << opt_text(e.min, "-inf") << " max " << opt_text(e.max, "inf") << "  "
              << (e.refuted_by.empty() ? "not refuted" : e.refuted_by) << "\n";
        }
        if (c.sweep.size() > max_log_lines)
            o << "  ... " << c.sweep.size() - max_log_lines << " more (full log in --json)\n";
    }
    o << "verdict: " << verdict_name(c.verdict) << "\n";
    o << "reason: " << c.reason << "\n";
    return o.str();
}

ReplayResult replay_certificate(const nlohmann::ordered_json& cert)
{
    try {
        if (cert.value("kind", "") != "certificate")
            return {false, "not a certificate"};
        const auto& in = cert.at("instance");
        const int p = in.at("p").get<int>();
        const long long target = in.at("target").get<long long>();
        CertifyOptions opt;
        opt.paper_faithful = cert.at("mode").get<std::string>() == "paper-faithful";
        opt.max_plane_override = in.at("max_plane").get<long long>();
        opt.sub_plane_override = in.at("sub_plane").get<long long>();
        if (auto t = table_values(p)) {
            if (t->max_plane != *opt.max_plane_override || t->sub_plane != *opt.sub_plane_override)
                return {false, "plane values disagree with the known values for p=" + std::to_string(p)};
        }
        if (*opt.max_plane_override != static_cast<long long>(p - 1) * (p - 1))
            return {false, "max plane size must be (p-1)^2"};
        const long long checked = cert.at("sweep").at("vectors_checked").get<long long>();
        if (!cert.at("sweep").at("complete").get<bool>())
            opt.max_vectors = checked;

        // Every logged inequality, from the logged data alone.
        Certificate c;
        c.instance.sub_plane = *opt.sub_plane_override;
        c.distributions = cert.at("distributions").get<std::vector<std::vector<long long>>>();
        c.multisets = cert.at("line_plane_multisets").get<std::vector<std::vector<long long>>>();
        c.weights.sizes = cert.at("weights").at("sizes").get<std::vector<long long>>();
        c.weights.weights = cert.at("weights").at("values").get<std::vector<long long>>();
        for (const auto& b : cert.at("size_bounds")) {
            SizeBound sb;
            sb.size = b.at("size").get<long long>();
            sb.lo = b.at("lo").get<long long>();
            if (!b.at("hi").is_null())
                sb.hi = b.at("hi").get<long long>();
            sb.impossible = b.at("impossible").get<bool>();
            c.bounds.push_back(sb);
        }
        const auto coeffs = cert.at("pair_equation").at("coefficients").get<std::vector<long long>>();
        const long long rhs = cert.at("pair_equation").at("rhs").get<long long>();
        const long long classes = cert.at("pair_equation").at("class_count").get<long long>();
        std::size_t idx = 0;
        for (const auto& x : cert.at("sweep").at("log")) {
            SweepEntry e;
            e.counts = x.at("counts").get<std::vector<long long>>();
            if (e.counts.size() != c.distributions.size())
                return {false, "log entry " + std::to_string(idx) + " has the wrong length"};
            long long n = 0, pr = 0;
            for (std::size_t d = 0; d < e.counts.size(); ++d) {
                if (e.counts[d] < 0)
                    return {false, "log entry " + std::to_string(idx) + " has a negative count"};
                n += e.counts[d];
                pr += e.counts[d] * coeffs[d];
            }
            if (n != classes || pr != rhs)
                return {false, "log entry " + std::to_string(idx) + " violates the count or pair equation"};
            evaluate(c, e);
            const std::string logged = x.at("refuted_by").is_null() ? "" : x.at("refuted_by").get<std::string>();
            if (e.refuted_by != logged)
                return {false, "log entry " + std::to_string(idx) + " does not re-evaluate as logged"};
            ++idx;
        }

        // Full re-derivation, compared byte for byte.
        const auto again = certificate_json(prove_infeasible(p, target, opt));
        // The plane values were supplied to the replay, so their recorded
        // source is the only field that may legitimately differ.
        auto strip = [](nlohmann::ordered_json j) {
            j.erase("version");
            j["instance"].erase("plane_value_source");
            return j.dump();
        };
        if (strip(again) != strip(cert))
            return {false, "re-derived certificate differs from the supplied one"};
        return {true, "replay ok: " + std::to_string(idx) + " logged vectors re-checked, verdict " +
                          again.at("verdict").get<std::string>()};
    } catch (const nlohmann::json::exception& e) {
        return {false, std::string("malformed certificate: ") + e.what()};
    }
}

}  // namespace linefree
