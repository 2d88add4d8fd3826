#include "report.hpp"

#include <iomanip>
#include <limits>
#include <sstream>

#include "linefree_version.hpp"

namespace linefree {

namespace {

Json header(const char* kind)
{
    Json j;
    j["schema"] = kJsonSchema;
    j["version"] = kVersion;
    j["kind"] = kind;
    return j;
}

std::string coords_text(const std::vector<int>& c)
{
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i)
        s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
}

// Pads every column to its widest cell.
std::string table(const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> w;
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (w.size() <= i)
                w.push_back(0);
            w[i] = std::max(w[i], r[i].size());
        }
    std::ostringstream o;
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
            line += r[i];
            if (i + 1 < r.size())
                line += std::string(w[i] - r[i].size() + 2, ' ');
        }
        while (!line.empty() && line.back() == ' ')
            line.pop_back();
        o << line << "\n";
    }
    return o.str();
}

}  // namespace

Json big_json(const BigInt& v)
{
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return Json(v.convert_to<long long>());
    return Json(v.str());
}

Json witness_json(const ProgressionWitness& w)
{
    return Json{{"base", w.base.coords}, {"dir", w.dir.coords}, {"step", w.step.coords}, {"k", w.k}, {"points", w.points}};
}

Json verification_json(const PointSet& s, int k, const std::optional<ProgressionWitness>& w, const LineProfile& profile)
{
    Json j = header("verification");
    j["p"] = s.space().p();
    j["n"] = s.space().n();
    j["k"] = k;
    j["size"] = s.size();
    j["free"] = !w.has_value();
    if (w)
        j["witness"] = witness_json(*w);
    j["profile"] = profile.x;
    return j;
}

std::string verification_text(const PointSet& s, int k, const std::optional<ProgressionWitness>& w, const LineProfile& profile)
{
    std::ostringstream o;
    o << "linefree " << kVersion << "\n";
    o << "space F_" << s.space().p() << "^" << s.space().n() << ", k = " << k << ", size " << s.size() << "\n";
    if (w) {
        o << "progression found: base " << coords_text(w->base.coords) << " step " << coords_text(w->step.coords)
          << " dir " << coords_text(w->dir.coords) << "\n";
    } else {
        o << k << "-progression-free\n";
    }
    std::vector<std::vector<std::string>> rows{{"i", "lines"}};
    for (std::size_t i = 0; i < profile.x.size(); ++i)
        rows.push_back({std::to_string(i), std::to_string(profile.x[i])});
    o << table(rows);
    return o.str();
}

Json bounds_json(const BoundsReport& r)
{
    Json j = header("bounds");
    j["p"] = r.p;
    j["n"] = r.n;
    j["k"] = r.k;
    Json lower = Json::object(), upper = Json::object(), rates = Json::object();
    Json detail = Json::array();
    auto entry = [](const char* side, const BoundEntry& e) {
        Json d{{"side", side}, {"name", e.name}, {"value", big_json(e.value)}, {"source", e.source}, {"note", e.note}};
        if (e.real)
            d["real"] = {{"lo", format_decimal(e.real->lo, 3, Rounding::Down)}, {"hi", format_decimal(e.real->hi, 3, Rounding::Up)}};
        return d;
    };
    for (const auto& e : r.lower) {
        lower[e.name] = big_json(e.value);
        detail.push_back(entry("lower", e));
    }
    for (const auto& e : r.upper) {
        upper[e.name] = big_json(e.value);
        detail.push_back(entry("upper", e));
    }
    for (const auto& [name, rate] : r.rates)
        rates[name] = rate.decimal;
    j["lower"] = lower;
    j["upper"] = upper;
    j["best"] = {{"lower", big_json(r.best_lower())}, {"upper", big_json(r.best_upper())}};
    j["rates"] = rates;
    j["detail"] = detail;
    j["notes"] = r.notes;
    return j;
}

std::string bounds_text(const BoundsReport& r)
{
    std::ostringstream o;
    o << "linefree " << kVersion << "\n";
    o << "bounds for r_" << r.k << "(F_" << r.p << "^" << r.n << ") in [" << r.best_lower().str() << ", " << r.best_upper().str()
      << "]\n\n";
    std::vector<std::vector<std::string>> rows{{"side", "name", "value", "source", "note"}};
    for (const auto& e : r.lower)
        rows.push_back({"lower", e.name, e.value.str(), e.source, e.note});
    for (const auto& e : r.upper)
        rows.push_back({"upper", e.name, e.value.str(), e.source, e.note});
    o << table(rows) << "\n";
    std::vector<std::vector<std::string>> rrows{{"rate", "base", "note"}};
    for (const auto& [name, rate] : r.rates)
        rrows.push_back({name, rate.decimal, rate.note});
    o << table(rrows);
    if (!r.notes.empty()) {
        o << "\n";
        for (const auto& n : r.notes)
            o << "note: " << n << "\n";
    }
    return o.str();
}

Json pointset_json(const PointSet& s, int k)
{
    Json j = header("pointset");
    j["p"] = s.space().p();
    j["n"] = s.space().n();
    j["k"] = k;
    j["size"] = s.size();
    if (s.space().n() >= 2) {
        std::vector<std::size_t> layers;
        for (int v = 0; v < s.space().p(); ++v)
            layers.push_back(layer(s, v).size());
        j["layer_sizes"] = layers;
    }
    j["points"] = s.indices();
    return j;
}

Json search_json(const SearchResult& r, int k, bool timing)
{
    Json j = header("search");
    j["p"] = r.best.space().p();
    j["n"] = r.best.space().n();
    j["k"] = k;
    j["best_size"] = r.best_size;
    j["optimal"] = r.optimal;
    j["best"] = r.best.indices();
    if (timing) {
        j["nodes"] = r.nodes;
        j["seconds"] = r.seconds;
    }
    return j;
}

std::string search_text(const SearchResult& r, int k, bool timing)
{
    std::ostringstream o;
    o << "linefree " << kVersion << "\n";
    o << "r_" << k << "(F_" << r.best.space().p() << "^" << r.best.space().n() << ") "
      << (r.optimal ? "= " : ">= ") << r.best_size << (r.optimal ? " (optimal)" : " (budget reached)") << "\n";
    if (timing)
        o << "nodes " << r.nodes << ", " << std::fixed << std::setprecision(3) << r.seconds << " s\n";
    return o.str();
}

Json table1_json(const Table1& t)
{
    Json j = header("table1");
    Json cells = Json::array();
    for (const auto& c : t.cells)
        cells.push_back({{"p", c.p}, {"n", c.n}, {"size", big_json(c.size)}, {"rate", c.rate}, {"dominated", c.dominated}});
    j["cells"] = cells;
    Json fgr = Json::array();
    for (std::size_t i = 0; i < t.primes.size(); ++i)
        fgr.push_back({{"p", t.primes[i]}, {"rate", t.fgr_down[i]}, {"rate_nearest", t.fgr_nearest[i]}});
    j["fgr"] = fgr;
    return j;
}

std::string table1_text(const Table1& t)
{
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{"n \\ p"};
    for (int p : t.primes)
        head.push_back(std::to_string(p));
    rows.push_back(head);
    for (std::size_t i = 0; i < t.dims.size(); ++i) {
        std::vector<std::string> row{std::to_string(t.dims[i])};
        for (std::size_t j = 0; j < t.primes.size(); ++j) {
            const auto& c = t.cells[i * t.primes.size() + j];
            row.push_back(c.rate + (c.dominated ? "*" : ""));
        }
        rows.push_back(row);
    }
    std::vector<std::string> fgr{"2p"};
    for (const auto& v : t.fgr_down)
        fgr.push_back(v);
    rows.push_back(fgr);
    return table(rows) + "* dominated by a smaller dimension\n";
}

std::string render_tikz(const PointSet& s)
{
    const auto& sp = s.space();
    const int p = sp.p();
    const int n = sp.n();
    std::ostringstream o;
    o << "% linefree " << kVersion << "\n";
    o << "\\documentclass[tikz]{standalone}\n\\begin{document}\n";
    const int kw = n >= 2 ? n - 2 : 0;
    std::size_t keys = 1;
    for (int i = 0; i < kw; ++i)
        keys *= static_cast<std::size_t>(p);
    const int rows = n >= 2 ? p : 1;
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    for (std::size_t kk = 0; kk < keys; ++kk) {
        std::size_t rest = kk;
        for (int i = kw - 1; i >= 0; --i) {
            c[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(p));
            rest /= static_cast<std::size_t>(p);
        }
        std::ostringstream body;
        bool any = false;
        for (int r = 0; r < rows; ++r)
            for (int col = 0; col < p; ++col) {
                if (n >= 2) {
                    c[static_cast<std::size_t>(n - 2)] = r;
                    c[static_cast<std::size_t>(n - 1)] = col;
                } else {
                    c[0] = col;
                }
                if (s.contains(sp.index_of(c))) {
                    any = true;
                    body << "\\fill (" << col << "," << rows - 1 - r << ") circle (0.25);\n";
                }
            }
        if (!any)
            continue;
        o << "\\begin{tikzpicture}[scale=0.35]\n";
        if (kw > 0) {
            o << "% layer ";
            for (int i = 0; i < kw; ++i)
                o << (i ? "," : "") << c[static_cast<std::size_t>(i)];
            o << "\n";
        }
        o << "\\draw[step=1.0,black,thin,xshift=-0.5cm,yshift=-0.5cm] (0,0) grid (" << p << "," << rows << ");\n";
        o << body.str();
        o << "\\end{tikzpicture}\n";
    }
    o << "\\end{document}\n";
    return o.str();
}

}  // namespace linefree
