#include "selftest.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "bounds.hpp"
#include "certify.hpp"
#include "constructions.hpp"
#include "error.hpp"
#include "grid_format.hpp"
#include "search.hpp"
#include "verifier.hpp"

namespace linefree {

namespace {

using Check = std::function<bool()>;

struct Entry {
    const char* module;
    const char* name;
    Check check;
};

template <class F>
bool throws_kind(F&& f, ErrorKind kind)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

std::vector<Entry> entries()
{
    std::vector<Entry> out;

    out.push_back({"core_geometry", "point_index (0,0,0) p=5 is 0",
                   [] { return point_index(Point{{0, 0, 0}}, SpaceSpec(5, 3)) == 0; }});
    out.push_back({"core_geometry", "point_index (1,0,0) p=5 is 1",
                   [] { return point_index(Point{{1, 0, 0}}, SpaceSpec(5, 3)) == 1; }});
    out.push_back({"core_geometry", "point_index (0,1,0) p=5 is 5",
                   [] { return point_index(Point{{0, 1, 0}}, SpaceSpec(5, 3)) == 5; }});
    out.push_back({"core_geometry", "canonical_direction (2,4,0) p=5",
                   [] {
                       const int v[] = {2, 4, 0};
                       return canonical_direction(v, SpaceSpec(5, 3)).coords == std::vector<int>{1, 2, 0};
                   }});
    out.push_back({"core_geometry", "canonical_direction (1,3,3) p=7",
                   [] {
                       const int v[] = {1, 3, 3};
                       return canonical_direction(v, SpaceSpec(7, 3)).coords == std::vector<int>{1, 3, 3};
                   }});
    out.push_back({"core_geometry", "canonical_direction (0,0,4) p=5",
                   [] {
                       const int v[] = {0, 0, 4};
                       return canonical_direction(v, SpaceSpec(5, 3)).coords == std::vector<int>{0, 0, 1};
                   }});
    out.push_back({"core_geometry", "F_5^1 has one line of 5 points",
                   [] {
                       auto lines = enumerate_lines(SpaceSpec(5, 1));
                       return lines.size() == 1 && lines[0].points.size() == 5;
                   }});

    out.push_back({"pointset", "hypercube(5,3) layer 4 is empty",
                   [] { return layer(hypercube(5, 3), 4).empty(); }});
    out.push_back({"pointset", "hypercube(5,3) layer 0 is hypercube(5,2)",
                   [] {
                       auto l = layer(hypercube(5, 3), 0);
                       return l == hypercube(5, 2) && l.size() == 16;
                   }});
    out.push_back({"pointset", "hypercube(5,2) x hypercube(5,1) is hypercube(5,3)",
                   [] {
                       auto s = product(hypercube(5, 2), hypercube(5, 1));
                       return s == hypercube(5, 3) && s.size() == 64;
                   }});
    out.push_back({"pointset", "S x empty is empty",
                   [] { return product(hypercube(5, 2), PointSet(SpaceSpec(5, 1))).empty(); }});
    out.push_back({"pointset", "identity affine map fixes S",
                   [] {
                       auto s = hypercube(5, 2);
                       return apply_affine(s, Matrix{{1, 0}, {0, 1}}, Point{{0, 0}}) == s;
                   }});
    out.push_back({"pointset", "render hypercube(3,2)",
                   [] {
                       std::string g = render_grid(hypercube(3, 2), 3);
                       return g.find("XX.\nXX.\n...\n") != std::string::npos;
                   }});
    out.push_back({"pointset", "parse empty grid",
                   [] { return parse_grid("linefree-grid v1\np=5 n=2 k=5\n").set.empty(); }});

    out.push_back({"constructions", "hypercube(5,3) has 64 points", [] { return hypercube(5, 3).size() == 64; }});
    out.push_back({"constructions", "hypercube(3,2) is 3-free",
                   [] {
                       auto s = hypercube(3, 2);
                       return s.size() == 4 && !find_progression(s, 3);
                   }});
    out.push_back({"constructions", "qr(5) is rejected",
                   [] { return throws_kind([] { qr_construction(5); }, ErrorKind::Input); }});

    out.push_back({"verifier", "full F_5^3 has a 5-progression",
                   [] { return find_progression(PointSet::full(SpaceSpec(5, 3)), 5).has_value(); }});
    out.push_back({"verifier", "full plane F_5^2 profile",
                   [] {
                       auto x = line_profile(PointSet::full(SpaceSpec(5, 2))).x;
                       for (std::size_t i = 0; i < 5; ++i)
                           if (x[i] != 0)
                               return false;
                       return x[5] == 30;
                   }});
    out.push_back({"verifier", "full F_5^3 plane classes",
                   [] {
                       auto pp = plane_profile(PointSet::full(SpaceSpec(5, 3)));
                       for (const auto& c : pp.sizes)
                           if (c != std::vector<long long>(5, 25))
                               return false;
                       return pp.sizes.size() == 31;
                   }});
    out.push_back({"verifier", "hypercube(5,3) axis class",
                   [] {
                       auto pp = plane_profile(hypercube(5, 3));
                       for (std::size_t i = 0; i < pp.normals.size(); ++i)
                           if (pp.normals[i].coords == std::vector<int>{1, 0, 0})
                               return pp.sizes[i] == std::vector<long long>{0, 16, 16, 16, 16};
                       return false;
                   }});
    out.push_back({"verifier", "fig70 classes sum to 70",
                   [] {
                       auto pp = plane_profile(load_reference_set("fig70"));
                       for (const auto& c : pp.sizes) {
                           long long t = 0;
                           for (auto v : c)
                               t += v;
                           if (t != 70)
                               return false;
                       }
                       return true;
                   }});
    out.push_back({"verifier", "full plane F_7^2 incidences",
                   [] {
                       auto r = identity_check(PointSet::full(SpaceSpec(7, 2)));
                       return r.incidences == 392 && r.profile.x[7] == 56;
                   }});
    out.push_back({"verifier", "empty plane identities",
                   [] {
                       auto r = identity_check(PointSet(SpaceSpec(7, 2)));
                       return r.incidences == 0 && r.pairs == 0;
                   }});

    out.push_back({"bounds", "upper_simple(3,1)",
                   [] {
                       auto [ap, sz] = upper_simple(3, 1);
                       return ap == 2 && sz == 2;
                   }});
    out.push_back({"bounds", "alpha_from_set(64,3) is 4.000",
                   [] { return alpha_from_set(BigInt(64), 3).decimal == "4.000"; }});

    out.push_back({"certify", "p=5 T=80 forces {16^5} before the gap",
                   [] {
                       auto inst = make_instance(5, 80);
                       inst.allowed_sizes = {16};
                       auto d = class_distributions(inst);
                       return d.size() == 1 && d[0] == std::vector<long long>(5, 16);
                   }});
    out.push_back({"certify", "p=5 T=80 gap removes 16",
                   [] { return allowed_plane_sizes(make_instance(5, 80)).empty(); }});

    out.push_back({"search", "oracle (3,1,3) is 2", [] { return brute_force_oracle(3, 1, 3) == 2; }});
    out.push_back({"search", "oracle (5,1,4) is 3", [] { return brute_force_oracle(5, 1, 4) == 3; }});
    out.push_back({"search", "exact (3,1,3) is 2",
                   [] {
                       auto r = max_free_exact(3, 1, 3);
                       return r.optimal && r.best_size == 2;
                   }});
    out.push_back({"search", "exact (5,1,4) is 3",
                   [] {
                       auto r = max_free_exact(5, 1, 4);
                       return r.optimal && r.best_size == 3;
                   }});

    out.push_back({"cli", "full F_5^3 grid round-trips and fails verification",
                   [] {
                       auto s = PointSet::full(SpaceSpec(5, 3));
                       auto doc = parse_grid(render_grid(s, 5));
                       return doc.set == s && find_progression(doc.set, doc.k).has_value();
                   }});
    out.push_back({"cli", "render hypercube(3,2) is a 3x3 grid",
                   [] {
                       auto doc = parse_grid(render_grid(hypercube(3, 2), 3));
                       return doc.set == hypercube(3, 2);
                   }});
    return out;
}

}  // namespace

std::vector<std::string> selftest_modules()
{
    return {"core_geometry", "pointset", "constructions", "verifier", "bounds", "certify", "search", "cli"};
}

std::vector<SelftestCase> run_selftest(std::string_view module)
{
    const bool all = module.empty() || module == "all";
    if (!all) {
        auto mods = selftest_modules();
        require(std::find(mods.begin(), mods.end(), module) != mods.end(),
                "unknown selftest module '" + std::string(module) + "'");
    }
    std::vector<SelftestCase> out;
    for (auto& e : entries()) {
        if (!all && module != e.module)
            continue;
        SelftestCase c{e.module, e.name, false, {}};
        try {
            c.passed = e.check();
        } catch (const std::exception& ex) {
            c.detail = ex.what();
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::string selftest_text(const std::vector<SelftestCase>& cases)
{
    std::ostringstream os;
    std::size_t passed = 0;
    for (const auto& c : cases) {
        passed += c.passed ? 1 : 0;
        os << (c.passed ? "PASS " : "FAIL ") << c.module << ": " << c.name;
        if (!c.detail.empty())
            os << " (" << c.detail << ")";
        os << '\n';
    }
    os << passed << "/" << cases.size() << " selftests passed\n";
    return os.str();
}

}  // namespace linefree
