#include <linefree/linefree.h>

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "bounds.hpp"
#include "certify.hpp"
#include "constructions.hpp"
#include "error.hpp"
#include "grid_format.hpp"
#include "linefree_version.hpp"
#include "report.hpp"
#include "search.hpp"
#include "selftest.hpp"
#include "verifier.hpp"

struct lf_pointset {
    linefree::PointSet set;
};

struct lf_certificate {
    linefree::Certificate cert;
};

struct lf_search_result {
    linefree::SearchResult result;
};

namespace {

thread_local std::string last_error;

lf_status status_of(linefree::ErrorKind kind)
{
    switch (kind) {
    case linefree::ErrorKind::Input: return LF_E_INPUT;
    case linefree::ErrorKind::Parse: return LF_E_PARSE;
    case linefree::ErrorKind::Unsupported: return LF_E_UNSUPPORTED;
    case linefree::ErrorKind::Resource: return LF_E_RESOURCE;
    case linefree::ErrorKind::Io: return LF_E_IO;
    case linefree::ErrorKind::Internal: return LF_E_INTERNAL;
    }
    return LF_E_INTERNAL;
}

template <class F>
lf_status guard(F&& f)
{
    try {
        f();
        last_error.clear();
        return LF_OK;
    } catch (const linefree::Error& e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const nlohmann::json::exception& e) {
        last_error = e.what();
        return LF_E_PARSE;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return LF_E_RESOURCE;
    } catch (const std::exception& e) {
        last_error = e.what();
        return LF_E_INTERNAL;
    }
}

char* dup(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void need(const void* ptr, const char* what)
{
    if (!ptr)
        linefree::fail(linefree::ErrorKind::Input, std::string(what) + " must not be null");
}

linefree::PointSet construct(const std::string& family, int p, int n)
{
    using namespace linefree;
    if (family == "hypercube")
        return hypercube(p, n);
    if (family == "layered")
        return layered(p, n);
    if (family == "sqrt") {
        require(n == 3, "sqrt construction is 3-dimensional");
        return sqrt_construction(p);
    }
    if (family == "qr") {
        require(n == 3, "qr construction is 3-dimensional");
        return qr_construction(p);
    }
    if (family == "fig70") {
        require(p == 5 && n == 3, "fig70 lives in F_5^3");
        return load_reference_set("fig70");
    }
    fail(ErrorKind::Input, "unknown family '" + family + "'");
}

}  // namespace

extern "C" {

const char* lf_version(void) { return linefree::kVersion; }

const char* lf_last_error(void) { return last_error.c_str(); }

void lf_string_free(char* s) { std::free(s); }

lf_status lf_pointset_construct(const char* family, int p, int n, lf_pointset** out)
{
    return guard([&] {
        need(family, "family");
        need(out, "out");
        *out = new lf_pointset{construct(family, p, n)};
    });
}

lf_status lf_pointset_from_indices(int p, int n, const uint32_t* indices, size_t count, lf_pointset** out)
{
    return guard([&] {
        need(out, "out");
        if (count)
            need(indices, "indices");
        linefree::SpaceSpec space(p, n);
        std::vector<linefree::PointIndex> idx(indices, indices + count);
        for (auto i : idx)
            linefree::require(i < space.point_count(), "point index out of range");
        *out = new lf_pointset{linefree::PointSet::from_indices(space, idx)};
    });
}

lf_status lf_pointset_parse(const char* text, lf_pointset** out, int* k_out)
{
    return guard([&] {
        need(text, "text");
        need(out, "out");
        auto doc = linefree::parse_grid(text);
        if (k_out)
            *k_out = doc.k;
        *out = new lf_pointset{std::move(doc.set)};
    });
}

lf_status lf_pointset_read(const char* path, lf_pointset** out, int* k_out)
{
    return guard([&] {
        need(path, "path");
        need(out, "out");
        auto doc = linefree::read_grid_file(path);
        if (k_out)
            *k_out = doc.k;
        *out = new lf_pointset{std::move(doc.set)};
    });
}

lf_status lf_pointset_render(const lf_pointset* s, int k, int tikz, char** out)
{
    return guard([&] {
        need(s, "set");
        need(out, "out");
        *out = dup(tikz ? linefree::render_tikz(s->set) : linefree::render_grid(s->set, k));
    });
}

lf_status lf_pointset_write(const lf_pointset* s, int k, const char* path)
{
    return guard([&] {
        need(s, "set");
        need(path, "path");
        linefree::write_grid_file(path, s->set, k);
    });
}

lf_status lf_pointset_json(const lf_pointset* s, int k, char** out)
{
    return guard([&] {
        need(s, "set");
        need(out, "out");
        *out = dup(linefree::pointset_json(s->set, k).dump(2) + "\n");
    });
}

lf_status lf_pointset_product(const lf_pointset* a, const lf_pointset* b, lf_pointset** out)
{
    return guard([&] {
        need(a, "a");
        need(b, "b");
        need(out, "out");
        *out = new lf_pointset{linefree::product(a->set, b->set)};
    });
}

lf_status lf_pointset_layer(const lf_pointset* s, int value, lf_pointset** out)
{
    return guard([&] {
        need(s, "set");
        need(out, "out");
        *out = new lf_pointset{linefree::layer(s->set, value)};
    });
}

lf_status lf_pointset_info(const lf_pointset* s, int* p, int* n, size_t* size)
{
    return guard([&] {
        need(s, "set");
        if (p)
            *p = s->set.space().p();
        if (n)
            *n = s->set.space().n();
        if (size)
            *size = s->set.size();
    });
}

lf_status lf_pointset_contains(const lf_pointset* s, uint32_t index, int* out)
{
    return guard([&] {
        need(s, "set");
        need(out, "out");
        linefree::require(index < s->set.space().point_count(), "point index out of range");
        *out = s->set.contains(index) ? 1 : 0;
    });
}

void lf_pointset_free(lf_pointset* s) { delete s; }

lf_status lf_verify(const lf_pointset* s, int k, int threads, int* is_free, char** json, char** text)
{
    return guard([&] {
        need(s, "set");
        auto w = linefree::find_progression(s->set, k, threads);
        auto profile = linefree::line_profile(s->set, threads);
        std::string j, t;
        if (json)
            j = linefree::verification_json(s->set, k, w, profile).dump(2) + "\n";
        if (text)
            t = linefree::verification_text(s->set, k, w, profile);
        if (is_free)
            *is_free = w ? 0 : 1;
        if (json)
            *json = dup(j);
        if (text)
            *text = dup(t);
    });
}

lf_status lf_bounds_report(int p, int n, int k, int threads, char** json, char** text)
{
    return guard([&] {
        auto r = linefree::bounds_report(p, n, k, threads);
        if (json)
            *json = dup(linefree::bounds_json(r).dump(2) + "\n");
        if (text)
            *text = dup(linefree::bounds_text(r));
    });
}

lf_status lf_table1(char** json, char** text)
{
    return guard([&] {
        auto t = linefree::table1();
        if (json)
            *json = dup(linefree::table1_json(t).dump(2) + "\n");
        if (text)
            *text = dup(linefree::table1_text(t));
    });
}

lf_status lf_rate_from_size(const char* size, int n, char** out)
{
    return guard([&] {
        need(size, "size");
        need(out, "out");
        std::string s(size);
        linefree::require(!s.empty() && s.find_first_not_of("0123456789") == std::string::npos,
                          "size must be a nonnegative decimal integer");
        *out = dup(linefree::alpha_from_set(linefree::BigInt(s), n).decimal);
    });
}

lf_status lf_rate_fgr(int p, char** out)
{
    return guard([&] {
        need(out, "out");
        *out = dup(linefree::alpha_fgr(p).decimal);
    });
}

void lf_certify_options_init(lf_certify_options* opt)
{
    if (!opt)
        return;
    linefree::CertifyOptions d;
    opt->paper_faithful = d.paper_faithful ? 1 : 0;
    opt->threads = d.threads;
    opt->plane_values_from_search = d.plane_values_from_search ? 1 : 0;
    opt->search_budget_seconds = d.search_budget_seconds;
    opt->max_vectors = d.max_vectors;
}

lf_status lf_certify(int p, long long target, const lf_certify_options* opt, lf_certificate** out)
{
    return guard([&] {
        need(out, "out");
        linefree::CertifyOptions o;
        if (opt) {
            o.paper_faithful = opt->paper_faithful != 0;
            o.threads = opt->threads;
            o.plane_values_from_search = opt->plane_values_from_search != 0;
            o.search_budget_seconds = opt->search_budget_seconds;
            o.max_vectors = opt->max_vectors;
        }
        *out = new lf_certificate{linefree::prove_infeasible(p, target, o)};
    });
}

int lf_certificate_infeasible(const lf_certificate* c)
{
    return c && c->cert.verdict == linefree::Verdict::Infeasible ? 1 : 0;
}

lf_status lf_certificate_json(const lf_certificate* c, char** out)
{
    return guard([&] {
        need(c, "certificate");
        need(out, "out");
        *out = dup(linefree::certificate_json(c->cert).dump(2) + "\n");
    });
}

lf_status lf_certificate_text(const lf_certificate* c, size_t max_log_lines, char** out)
{
    return guard([&] {
        need(c, "certificate");
        need(out, "out");
        *out = dup(linefree::certificate_text(c->cert, max_log_lines));
    });
}

void lf_certificate_free(lf_certificate* c) { delete c; }

lf_status lf_certificate_replay(const char* json, int* ok, char** message)
{
    return guard([&] {
        need(json, "json");
        auto r = linefree::replay_certificate(nlohmann::ordered_json::parse(json));
        if (ok)
            *ok = r.ok ? 1 : 0;
        if (message)
            *message = dup(r.message);
    });
}

void lf_search_options_init(lf_search_options* opt)
{
    if (!opt)
        return;
    opt->order = LF_ORDER_GREEDY_DEGREE;
    opt->bound = LF_BOUND_LINE_CAPACITY;
    opt->symmetry = LF_SYMMETRY_NONE;
    opt->time_budget_seconds = 0;
    opt->node_budget = 0;
    opt->threads = 1;
    opt->warm_start = nullptr;
}

lf_status lf_search(int p, int n, int k, const lf_search_options* opt, lf_search_result** out)
{
    return guard([&] {
        need(out, "out");
        lf_search_options o;
        lf_search_options_init(&o);
        if (opt)
            o = *opt;
        linefree::SearchConfig cfg;
        linefree::require(o.order == LF_ORDER_NATURAL || o.order == LF_ORDER_GREEDY_DEGREE, "unknown order");
        linefree::require(o.bound == LF_BOUND_CARDINALITY || o.bound == LF_BOUND_LINE_CAPACITY, "unknown bound");
        cfg.order = o.order == LF_ORDER_NATURAL ? linefree::PointOrder::Natural : linefree::PointOrder::GreedyDegree;
        cfg.bound = o.bound == LF_BOUND_CARDINALITY ? linefree::BoundKind::Cardinality : linefree::BoundKind::LineCapacity;
        switch (o.symmetry) {
        case LF_SYMMETRY_NONE: cfg.symmetry = linefree::SymmetryFix::None; break;
        case LF_SYMMETRY_TRANSLATION: cfg.symmetry = linefree::SymmetryFix::Translation; break;
        case LF_SYMMETRY_AFFINE3: cfg.symmetry = linefree::SymmetryFix::Affine3; break;
        default: linefree::fail(linefree::ErrorKind::Input, "unknown symmetry fix");
        }
        cfg.time_budget_seconds = o.time_budget_seconds;
        cfg.node_budget = o.node_budget;
        cfg.threads = o.threads;
        if (o.warm_start)
            cfg.warm_start = o.warm_start->set;
        *out = new lf_search_result{linefree::max_free_exact(p, n, k, cfg)};
    });
}

size_t lf_search_best_size(const lf_search_result* r) { return r ? r->result.best_size : 0; }

int lf_search_optimal(const lf_search_result* r) { return r && r->result.optimal ? 1 : 0; }

long long lf_search_nodes(const lf_search_result* r) { return r ? r->result.nodes : 0; }

double lf_search_seconds(const lf_search_result* r) { return r ? r->result.seconds : 0; }

lf_status lf_search_best_set(const lf_search_result* r, lf_pointset** out)
{
    return guard([&] {
        need(r, "result");
        need(out, "out");
        *out = new lf_pointset{r->result.best};
    });
}

lf_status lf_search_report(const lf_search_result* r, int k, int timing, char** json, char** text)
{
    return guard([&] {
        need(r, "result");
        if (json)
            *json = dup(linefree::search_json(r->result, k, timing != 0).dump(2) + "\n");
        if (text)
            *text = dup(linefree::search_text(r->result, k, timing != 0));
    });
}

void lf_search_result_free(lf_search_result* r) { delete r; }

lf_status lf_brute_force_oracle(int p, int n, int k, long long* out)
{
    return guard([&] {
        need(out, "out");
        *out = linefree::brute_force_oracle(p, n, k);
    });
}

lf_status lf_selftest(const char* module, char** report)
{
    std::vector<linefree::SelftestCase> cases;
    lf_status st = guard([&] {
        cases = linefree::run_selftest(module ? module : "all");
        if (report)
            *report = dup(linefree::selftest_text(cases));
    });
    if (st != LF_OK)
        return st;
    for (const auto& c : cases)
        if (!c.passed) {
            last_error = "selftest failed: " + c.module + ": " + c.name;
            return LF_E_INTERNAL;
        }
    return LF_OK;
}

}  // extern "C"
