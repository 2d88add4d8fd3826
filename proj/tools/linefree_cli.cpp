#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include <linefree/linefree.h>

namespace {

enum Exit { kOk = 0, kProgression = 1, kUsage = 2, kUnknown = 3, kBudget = 4 };

// Library failures other than bad input are reported with exit 2 as well,
// since the exit contract reserves 1, 3 and 4 for verdicts.
struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(lf_status st)
{
    if (st != LF_OK)
        throw Failure(lf_last_error());
}

struct Str {
    char* p = nullptr;
    ~Str() { lf_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

struct SetDeleter {
    void operator()(lf_pointset* s) const { lf_pointset_free(s); }
};
using SetPtr = std::unique_ptr<lf_pointset, SetDeleter>;

SetPtr read_set(const std::string& path, int* k)
{
    lf_pointset* s = nullptr;
    check(lf_pointset_read(path.c_str(), &s, k));
    return SetPtr(s);
}

double parse_duration(const std::string& text)
{
    if (text.empty())
        throw UsageError("empty duration");
    double scale = 1;
    std::string num = text;
    switch (text.back()) {
    case 's': num.pop_back(); break;
    case 'm': scale = 60; num.pop_back(); break;
    case 'h': scale = 3600; num.pop_back(); break;
    default: break;
    }
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(num, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != num.size() || v < 0)
        throw UsageError("invalid duration '" + text + "' (use e.g. 90, 60s, 5m, 2h)");
    return v * scale;
}

struct Globals {
    bool json = false;
    bool timing = false;
    int threads = 0;
};

int run_selftest(const char* module)
{
    Str report;
    lf_status st = lf_selftest(module, &report.p);
    std::cout << report.str();
    if (st != LF_OK && !report.p)
        std::cerr << "error: " << lf_last_error() << "\n";
    return st == LF_OK ? kOk : kUsage;
}

void emit(const std::string& text, const std::optional<std::string>& path)
{
    if (!path) {
        std::cout << text;
        return;
    }
    FILE* f = std::fopen(path->c_str(), "wb");
    if (!f)
        throw Failure("cannot write '" + *path + "'");
    bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
    ok = std::fclose(f) == 0 && ok;
    if (!ok)
        throw Failure("cannot write '" + *path + "'");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Progression-free subsets of F_p^n: constructions, verification, bounds, certificates and search",
                 "linefree"};
    app.require_subcommand(0, 1);
    app.fallthrough();
    app.set_version_flag("--version", std::string("linefree ") + lf_version());

    Globals g;
    bool top_selftest = false;
    app.add_flag("--json", g.json, "Emit JSON instead of aligned text");
    app.add_flag("--timing", g.timing, "Include wall-clock timings in the output");
    app.add_option("--threads", g.threads, "Worker threads (0 = available parallelism)")->check(CLI::NonNegativeNumber);
    app.add_flag("--selftest", top_selftest, "Run every module's built-in examples");

    // construct
    auto* construct = app.add_subcommand("construct", "Build a progression-free set from a named family");
    std::string family;
    int c_p = 0, c_n = 3;
    std::optional<std::string> c_out;
    bool c_tikz = false, c_self = false;
    construct->add_option("--family", family, "hypercube, layered, sqrt, qr or fig70")
        ->check(CLI::IsMember({"hypercube", "layered", "sqrt", "qr", "fig70"}));
    construct->add_option("-p", c_p, "Prime p");
    construct->add_option("-n", c_n, "Dimension (default 3)");
    construct->add_option("-o,--output", c_out, "Write the grid to FILE");
    construct->add_flag("--tikz", c_tikz, "Also emit TikZ layer pictures");
    construct->add_flag("--selftest", c_self, "Run this module's built-in examples");

    // verify
    auto* verify = app.add_subcommand("verify", "Check that a grid file holds no k-progression");
    std::optional<int> v_k;
    std::string v_file;
    bool v_self = false;
    verify->add_option("-k", v_k, "Progression length (default: the file's k)");
    verify->add_option("file", v_file, "Grid file");
    verify->add_flag("--selftest", v_self, "Run this module's built-in examples");

    // search
    auto* search = app.add_subcommand("search", "Exact branch and bound for r_k(F_p^n)");
    int s_p = 0, s_n = 0;
    std::optional<int> s_k;
    std::optional<std::string> s_budget, s_warm, s_out;
    long long s_nodes = 0;
    std::string s_sym = "none", s_order = "greedy", s_bound = "lines";
    bool s_self = false;
    search->add_option("-p", s_p, "Prime p");
    search->add_option("-n", s_n, "Dimension");
    search->add_option("-k", s_k, "Progression length (default p)");
    search->add_option("--budget", s_budget, "Time budget, e.g. 60s, 5m, 2h");
    search->add_option("--nodes", s_nodes, "Node budget (0 = unlimited)")->check(CLI::NonNegativeNumber);
    search->add_option("--warm", s_warm, "Grid file seeding the incumbent");
    search->add_option("--symmetry", s_sym, "Root symmetry fix: none, translation or affine3")
        ->check(CLI::IsMember({"none", "translation", "affine3"}));
    search->add_option("--order", s_order, "Branching order: greedy or natural")
        ->check(CLI::IsMember({"greedy", "natural"}));
    search->add_option("--bound", s_bound, "Pruning bound: lines or cardinality")
        ->check(CLI::IsMember({"lines", "cardinality"}));
    search->add_option("-o,--output", s_out, "Write the best set as a grid to FILE");
    search->add_flag("--selftest", s_self, "Run this module's built-in examples");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Lower and upper bounds on r_k(F_p^n)");
    int b_p = 0, b_n = 0;
    std::optional<int> b_k;
    bool b_self = false;
    bounds->add_option("-p", b_p, "Prime p");
    bounds->add_option("-n", b_n, "Dimension");
    bounds->add_option("-k", b_k, "Progression length (default p)");
    bounds->add_flag("--selftest", b_self, "Run this module's built-in examples");

    // certify
    auto* certify = app.add_subcommand("certify", "Prove that no p-progression-free subset of F_p^3 has T points");
    int t_p = 0;
    long long t_target = -1, t_max_vectors = 0;
    std::size_t t_log = 40;
    bool t_faithful = false, t_search = false, t_self = false;
    std::optional<std::string> t_out, t_replay;
    certify->add_option("-p", t_p, "Prime p");
    certify->add_option("--target", t_target, "Set size T to exclude");
    certify->add_flag("--paper-faithful", t_faithful, "Use only the published per-size line bounds");
    certify->add_flag("--plane-values-from-search", t_search, "Compute r_p(F_p^2), r_(p-1)(F_p^2) by search");
    certify->add_option("--max-vectors", t_max_vectors, "Stop after this many class-count vectors (0 = all)")
        ->check(CLI::NonNegativeNumber);
    certify->add_option("--log-lines", t_log, "Sweep entries shown in text output");
    certify->add_option("-o,--output", t_out, "Write the JSON certificate to FILE");
    certify->add_option("--replay", t_replay, "Re-check a JSON certificate instead of deriving one");
    certify->add_flag("--selftest", t_self, "Run this module's built-in examples");

    // rate
    auto* rate = app.add_subcommand("rate", "Growth-rate lower bounds");
    std::optional<std::string> r_size;
    std::optional<int> r_dim, r_p;
    bool r_fgr = false, r_table = false, r_self = false;
    rate->add_option("--size", r_size, "Set size");
    rate->add_option("--dim", r_dim, "Dimension of the set");
    rate->add_flag("--fgr", r_fgr, "Rate from the product-construction formula for p");
    rate->add_option("-p", r_p, "Prime p (with --fgr)");
    rate->add_flag("--table1", r_table, "Print the rate table for p in {5,7,11,13,17}, n in 3..7");
    rate->add_flag("--selftest", r_self, "Run this module's built-in examples");

    // product
    auto* prod = app.add_subcommand("product", "Cartesian product of two grid files");
    std::string pa, pb;
    std::optional<std::string> p_out;
    bool p_self = false;
    prod->add_option("a", pa, "First grid (leading coordinates)");
    prod->add_option("b", pb, "Second grid");
    prod->add_option("-o,--output", p_out, "Write the product grid to FILE");
    prod->add_flag("--selftest", p_self, "Run this module's built-in examples");

    // render
    auto* render = app.add_subcommand("render", "Print a grid file as grid text or TikZ");
    std::string rd_file;
    bool rd_tikz = false, rd_self = false;
    render->add_option("file", rd_file, "Grid file");
    render->add_flag("--tikz", rd_tikz, "Emit a standalone TikZ document");
    render->add_flag("--selftest", rd_self, "Run this module's built-in examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    auto usage = [](CLI::App* sub, const std::string& msg) -> int {
        std::cerr << "error: " << msg << "\n\n" << sub->help();
        return kUsage;
    };

    try {
        if (top_selftest)
            return run_selftest("all");

        if (construct->parsed()) {
            if (c_self)
                return run_selftest("constructions");
            if (family.empty())
                return usage(construct, "--family is required");
            if (family == "fig70") {
                if (c_p == 0)
                    c_p = 5;
            } else if (c_p == 0) {
                return usage(construct, "-p is required");
            }
            lf_pointset* raw = nullptr;
            check(lf_pointset_construct(family.c_str(), c_p, c_n, &raw));
            SetPtr s(raw);
            if (c_out)
                check(lf_pointset_write(s.get(), c_p, c_out->c_str()));
            Str text;
            if (g.json)
                check(lf_pointset_json(s.get(), c_p, &text.p));
            else if (c_tikz)
                check(lf_pointset_render(s.get(), c_p, 1, &text.p));
            else if (!c_out)
                check(lf_pointset_render(s.get(), c_p, 0, &text.p));
            std::cout << text.str();
            if (c_out && g.json == false && !c_tikz) {
                std::size_t size = 0;
                check(lf_pointset_info(s.get(), nullptr, nullptr, &size));
                std::cout << "linefree " << lf_version() << "\nwrote " << *c_out << " (" << size << " points)\n";
            }
            return kOk;
        }

        if (verify->parsed()) {
            if (v_self)
                return run_selftest("verifier");
            if (v_file.empty())
                return usage(verify, "a grid file is required");
            int file_k = 0;
            SetPtr s = read_set(v_file, &file_k);
            int k = v_k.value_or(file_k);
            int is_free = 0;
            Str out;
            check(lf_verify(s.get(), k, g.threads, &is_free, g.json ? &out.p : nullptr, g.json ? nullptr : &out.p));
            std::cout << out.str();
            return is_free ? kOk : kProgression;
        }

        if (search->parsed()) {
            if (s_self)
                return run_selftest("search");
            if (s_p == 0 || s_n == 0)
                return usage(search, "-p and -n are required");
            int k = s_k.value_or(s_p);
            lf_search_options opt;
            lf_search_options_init(&opt);
            opt.order = s_order == "natural" ? LF_ORDER_NATURAL : LF_ORDER_GREEDY_DEGREE;
            opt.bound = s_bound == "cardinality" ? LF_BOUND_CARDINALITY : LF_BOUND_LINE_CAPACITY;
            opt.symmetry = s_sym == "affine3" ? LF_SYMMETRY_AFFINE3
                           : s_sym == "translation" ? LF_SYMMETRY_TRANSLATION
                                                    : LF_SYMMETRY_NONE;
            opt.threads = g.threads;
            opt.node_budget = s_nodes;
            if (s_budget)
                opt.time_budget_seconds = parse_duration(*s_budget);
            SetPtr warm;
            if (s_warm) {
                warm = read_set(*s_warm, nullptr);
                opt.warm_start = warm.get();
            }
            lf_search_result* raw = nullptr;
            check(lf_search(s_p, s_n, k, &opt, &raw));
            std::unique_ptr<lf_search_result, void (*)(lf_search_result*)> r(raw, lf_search_result_free);
            if (s_out) {
                lf_pointset* best = nullptr;
                check(lf_search_best_set(r.get(), &best));
                SetPtr b(best);
                check(lf_pointset_write(b.get(), k, s_out->c_str()));
            }
            Str out;
            check(lf_search_report(r.get(), k, g.timing ? 1 : 0, g.json ? &out.p : nullptr,
                                   g.json ? nullptr : &out.p));
            std::cout << out.str();
            return lf_search_optimal(r.get()) ? kOk : kBudget;
        }

        if (bounds->parsed()) {
            if (b_self)
                return run_selftest("bounds");
            if (b_p == 0 || b_n == 0)
                return usage(bounds, "-p and -n are required");
            Str out;
            check(lf_bounds_report(b_p, b_n, b_k.value_or(b_p), g.threads, g.json ? &out.p : nullptr,
                                   g.json ? nullptr : &out.p));
            std::cout << out.str();
            return kOk;
        }

        if (certify->parsed()) {
            if (t_self)
                return run_selftest("certify");
            if (t_replay) {
                std::ifstream in(*t_replay, std::ios::binary);
                if (!in)
                    throw Failure("cannot read '" + *t_replay + "'");
                std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
                int ok = 0;
                Str msg;
                check(lf_certificate_replay(text.c_str(), &ok, &msg.p));
                std::cout << "linefree " << lf_version() << "\n" << (ok ? "" : "replay failed: ") << msg.str() << "\n";
                return ok ? kOk : kUnknown;
            }
            if (t_p == 0 || t_target < 0)
                return usage(certify, "-p and --target are required");
            lf_certify_options opt;
            lf_certify_options_init(&opt);
            opt.paper_faithful = t_faithful ? 1 : 0;
            opt.threads = g.threads;
            opt.plane_values_from_search = t_search ? 1 : 0;
            opt.max_vectors = t_max_vectors;
            lf_certificate* raw = nullptr;
            check(lf_certify(t_p, t_target, &opt, &raw));
            std::unique_ptr<lf_certificate, void (*)(lf_certificate*)> c(raw, lf_certificate_free);
            Str json, text;
            if (g.json || t_out)
                check(lf_certificate_json(c.get(), &json.p));
            if (t_out)
                emit(json.str(), t_out);
            if (g.json) {
                std::cout << json.str();
            } else {
                check(lf_certificate_text(c.get(), t_log, &text.p));
                std::cout << text.str();
            }
            return lf_certificate_infeasible(c.get()) ? kOk : kUnknown;
        }

        if (rate->parsed()) {
            if (r_self)
                return run_selftest("bounds");
            if (r_table) {
                Str out;
                check(lf_table1(g.json ? &out.p : nullptr, g.json ? nullptr : &out.p));
                std::cout << out.str();
                return kOk;
            }
            Str out;
            if (r_fgr) {
                if (!r_p)
                    return usage(rate, "--fgr needs -p");
                check(lf_rate_fgr(*r_p, &out.p));
            } else {
                if (!r_size || !r_dim)
                    return usage(rate, "give --size and --dim, or --fgr -p P");
                check(lf_rate_from_size(r_size->c_str(), *r_dim, &out.p));
            }
            if (g.json) {
                std::cout << "{\n  \"version\": \"" << lf_version() << "\",\n  \"rate\": \"" << out.str() << "\"\n}\n";
            } else {
                std::cout << out.str() << "\n";
            }
            return kOk;
        }

        if (prod->parsed()) {
            if (p_self)
                return run_selftest("pointset");
            if (pa.empty() || pb.empty())
                return usage(prod, "two grid files are required");
            int ka = 0, kb = 0;
            SetPtr a = read_set(pa, &ka);
            SetPtr b = read_set(pb, &kb);
            if (ka != kb)
                throw UsageError("grid files declare different k (" + std::to_string(ka) + " and " +
                                 std::to_string(kb) + ")");
            lf_pointset* raw = nullptr;
            check(lf_pointset_product(a.get(), b.get(), &raw));
            SetPtr c(raw);
            if (p_out) {
                check(lf_pointset_write(c.get(), ka, p_out->c_str()));
                std::size_t size = 0;
                check(lf_pointset_info(c.get(), nullptr, nullptr, &size));
                std::cout << "linefree " << lf_version() << "\nwrote " << *p_out << " (" << size << " points)\n";
            } else {
                Str out;
                check(g.json ? lf_pointset_json(c.get(), ka, &out.p) : lf_pointset_render(c.get(), ka, 0, &out.p));
                std::cout << out.str();
            }
            return kOk;
        }

        if (render->parsed()) {
            if (rd_self)
                return run_selftest("pointset");
            if (rd_file.empty())
                return usage(render, "a grid file is required");
            int k = 0;
            SetPtr s = read_set(rd_file, &k);
            Str out;
            if (g.json)
                check(lf_pointset_json(s.get(), k, &out.p));
            else
                check(lf_pointset_render(s.get(), k, rd_tikz ? 1 : 0, &out.p));
            std::cout << out.str();
            return kOk;
        }

        std::cerr << app.help();
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
