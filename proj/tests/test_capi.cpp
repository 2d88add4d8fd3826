#include <doctest.h>

#include <cstdio>
#include <string>

#include <linefree/linefree.h>

namespace {

std::string take(char* s)
{
    std::string out = s ? s : "";
    lf_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("version and errors")
{
    CHECK(std::string(lf_version()).size() > 0);
    lf_pointset* s = nullptr;
    CHECK(lf_pointset_construct("qr", 5, 3, &s) == LF_E_INPUT);
    CHECK(s == nullptr);
    CHECK(std::string(lf_last_error()).find("24") != std::string::npos);
    CHECK(lf_pointset_construct("nope", 5, 3, &s) == LF_E_INPUT);
    CHECK(lf_pointset_construct(nullptr, 5, 3, &s) == LF_E_INPUT);
    CHECK(lf_pointset_parse("garbage", &s, nullptr) == LF_E_PARSE);
    CHECK(lf_pointset_read("/nonexistent/x.grid", &s, nullptr) == LF_E_IO);
    CHECK(lf_search(5, 4, 5, nullptr, nullptr) == LF_E_INPUT);
    lf_search_result* r = nullptr;
    CHECK(lf_search(5, 4, 5, nullptr, &r) == LF_E_RESOURCE);
    char* txt = nullptr;
    CHECK(lf_bounds_report(4, 3, 4, 1, nullptr, &txt) == LF_E_INPUT);
    CHECK(lf_certificate_replay("{not json", nullptr, nullptr) == LF_E_PARSE);
}

TEST_CASE("construct, verify and render")
{
    lf_pointset* s = nullptr;
    REQUIRE(lf_pointset_construct("qr", 7, 3, &s) == LF_OK);
    int p = 0, n = 0;
    size_t size = 0;
    CHECK(lf_pointset_info(s, &p, &n, &size) == LF_OK);
    CHECK(p == 7);
    CHECK(n == 3);
    CHECK(size == 225);
    int is_free = -1;
    char* json = nullptr;
    CHECK(lf_verify(s, 7, 2, &is_free, &json, nullptr) == LF_OK);
    CHECK(is_free == 1);
    CHECK(take(json).find("\"free\": true") != std::string::npos);

    char* grid = nullptr;
    CHECK(lf_pointset_render(s, 7, 0, &grid) == LF_OK);
    std::string g = take(grid);
    lf_pointset* back = nullptr;
    int k = 0;
    CHECK(lf_pointset_parse(g.c_str(), &back, &k) == LF_OK);
    CHECK(k == 7);
    size_t back_size = 0;
    lf_pointset_info(back, nullptr, nullptr, &back_size);
    CHECK(back_size == 225);

    char* tikz = nullptr;
    CHECK(lf_pointset_render(s, 7, 1, &tikz) == LF_OK);
    CHECK(take(tikz).find("tikzpicture") != std::string::npos);

    lf_pointset* l = nullptr;
    CHECK(lf_pointset_layer(s, 0, &l) == LF_OK);
    lf_pointset* prod = nullptr;
    CHECK(lf_pointset_product(l, s, &prod) == LF_OK);
    size_t ps = 0, ls = 0;
    lf_pointset_info(l, nullptr, nullptr, &ls);
    lf_pointset_info(prod, nullptr, nullptr, &ps);
    CHECK(ps == ls * 225);

    int in = -1;
    CHECK(lf_pointset_contains(s, 0, &in) == LF_OK);
    CHECK(lf_pointset_contains(s, 343, &in) == LF_E_INPUT);

    lf_pointset_free(prod);
    lf_pointset_free(l);
    lf_pointset_free(back);
    lf_pointset_free(s);

    uint32_t idx[] = {0, 1, 2, 3, 4};
    lf_pointset* line = nullptr;
    REQUIRE(lf_pointset_from_indices(5, 1, idx, 5, &line) == LF_OK);
    CHECK(lf_verify(line, 5, 1, &is_free, nullptr, nullptr) == LF_OK);
    CHECK(is_free == 0);
    lf_pointset_free(line);
}

TEST_CASE("file round trip")
{
    lf_pointset* s = nullptr;
    REQUIRE(lf_pointset_construct("fig70", 5, 3, &s) == LF_OK);
    const char* path = "capi_fig70.grid";
    CHECK(lf_pointset_write(s, 5, path) == LF_OK);
    lf_pointset* t = nullptr;
    int k = 0;
    CHECK(lf_pointset_read(path, &t, &k) == LF_OK);
    char *a = nullptr, *b = nullptr;
    lf_pointset_render(s, 5, 0, &a);
    lf_pointset_render(t, k, 0, &b);
    CHECK(take(a) == take(b));
    std::remove(path);
    lf_pointset_free(s);
    lf_pointset_free(t);
}

TEST_CASE("bounds and rates")
{
    char* json = nullptr;
    REQUIRE(lf_bounds_report(5, 3, 5, 1, &json, nullptr) == LF_OK);
    std::string j = take(json);
    CHECK(j.find("\"reference-set\": 70") != std::string::npos);
    CHECK(j.find("\"certified\": 73") != std::string::npos);
    char* r = nullptr;
    CHECK(lf_rate_from_size("70", 3, &r) == LF_OK);
    CHECK(take(r) == "4.121");
    CHECK(lf_rate_from_size("7x", 3, &r) == LF_E_INPUT);
    CHECK(lf_rate_fgr(7, &r) == LF_OK);
    CHECK(take(r) == "6.066");
    char* t = nullptr;
    CHECK(lf_table1(nullptr, &t) == LF_OK);
    CHECK(take(t).find("10.024") != std::string::npos);
}

TEST_CASE("certificates")
{
    lf_certify_options opt;
    lf_certify_options_init(&opt);
    lf_certificate* c = nullptr;
    REQUIRE(lf_certify(5, 74, &opt, &c) == LF_OK);
    CHECK(lf_certificate_infeasible(c) == 1);
    char* json = nullptr;
    CHECK(lf_certificate_json(c, &json) == LF_OK);
    std::string j = take(json);
    int ok = 0;
    char* msg = nullptr;
    CHECK(lf_certificate_replay(j.c_str(), &ok, &msg) == LF_OK);
    CHECK(ok == 1);
    take(msg);
    char* text = nullptr;
    CHECK(lf_certificate_text(c, 5, &text) == LF_OK);
    CHECK(take(text).find("INFEASIBLE") != std::string::npos);
    lf_certificate_free(c);

    REQUIRE(lf_certify(5, 70, &opt, &c) == LF_OK);
    CHECK(lf_certificate_infeasible(c) == 0);
    lf_certificate_free(c);
}

TEST_CASE("search")
{
    lf_search_options opt;
    lf_search_options_init(&opt);
    opt.threads = 2;
    lf_search_result* r = nullptr;
    REQUIRE(lf_search(5, 2, 4, &opt, &r) == LF_OK);
    CHECK(lf_search_best_size(r) == 11);
    CHECK(lf_search_optimal(r) == 1);
    CHECK(lf_search_nodes(r) > 0);
    lf_pointset* best = nullptr;
    CHECK(lf_search_best_set(r, &best) == LF_OK);
    int is_free = 0;
    lf_verify(best, 4, 1, &is_free, nullptr, nullptr);
    CHECK(is_free == 1);
    char* json = nullptr;
    CHECK(lf_search_report(r, 4, 0, &json, nullptr) == LF_OK);
    std::string j = take(json);
    CHECK(j.find("\"optimal\": true") != std::string::npos);
    CHECK(j.find("seconds") == std::string::npos);
    lf_pointset_free(best);
    lf_search_result_free(r);

    opt.symmetry = 17;
    CHECK(lf_search(5, 2, 4, &opt, &r) == LF_E_INPUT);

    long long v = 0;
    CHECK(lf_brute_force_oracle(3, 2, 3, &v) == LF_OK);
    CHECK(v == 4);
}

TEST_CASE("selftest")
{
    char* report = nullptr;
    CHECK(lf_selftest(nullptr, &report) == LF_OK);
    CHECK(take(report).find("FAIL") == std::string::npos);
    CHECK(lf_selftest("verifier", &report) == LF_OK);
    take(report);
    CHECK(lf_selftest("bogus", &report) == LF_E_INPUT);
}
