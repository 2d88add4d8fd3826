#include "grid_format.hpp"

#include <charconv>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <vector>

#include "error.hpp"
#include "linefree_version.hpp"

namespace linefree {

namespace {

// Number of leading coordinates that form the layer key.
int key_width(int n) { return n >= 2 ? n - 2 : 0; }

int row_count(const SpaceSpec& sp) { return sp.n() >= 2 ? sp.p() : 1; }

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg)
{
    fail(ErrorKind::Parse, "line " + std::to_string(line) + ": " + msg);
}

int parse_int(std::string_view s, std::size_t line)
{
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        parse_fail(line, "expected an integer, got '" + std::string(s) + "'");
    return v;
}

}  // namespace

std::string render_grid(const PointSet& s, int k)
{
    const auto& sp = s.space();
    const int p = sp.p();
    const int n = sp.n();
    const int kw = key_width(n);
    std::ostringstream out;
    out << kGridFormat << "\n" << "p=" << p << " n=" << n << " k=" << k << "\n";

    // Keys in lexicographic order: c_1 is the most significant.
    std::size_t key_count = 1;
    for (int i = 0; i < kw; ++i)
        key_count *= static_cast<std::size_t>(p);
    std::vector<int> key(static_cast<std::size_t>(kw), 0);
    std::vector<int> coords(static_cast<std::size_t>(n), 0);
    bool first = true;
    for (std::size_t kk = 0; kk < key_count; ++kk) {
        std::size_t rest = kk;
        for (int i = kw - 1; i >= 0; --i) {
            key[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(p));
            rest /= static_cast<std::size_t>(p);
        }
        for (int i = 0; i < kw; ++i)
            coords[static_cast<std::size_t>(i)] = key[static_cast<std::size_t>(i)];

        std::string block;
        bool any = false;
        for (int r = 0; r < row_count(sp); ++r) {
            for (int c = 0; c < p; ++c) {
                if (n >= 2) {
                    coords[static_cast<std::size_t>(n - 2)] = r;
                    coords[static_cast<std::size_t>(n - 1)] = c;
                } else {
                    coords[0] = c;
                }
                bool in = s.contains(sp.index_of(coords));
                any = any || in;
                block += in ? 'X' : '.';
            }
            block += '\n';
        }
        if (!any)
            continue;
        if (!first)
            out << "\n";
        first = false;
        out << "layer ";
        if (kw == 0) {
            out << "-";
        } else {
            for (int i = 0; i < kw; ++i)
                out << (i ? "," : "") << key[static_cast<std::size_t>(i)];
        }
        out << "\n" << block;
    }
    return out.str();
}

GridDocument parse_grid(std::string_view text)
{
    std::vector<std::string> lines;
    {
        std::size_t start = 0;
        while (start < text.size()) {
            auto end = text.find('\n', start);
            if (end == std::string_view::npos)
                end = text.size();
            std::string ln(text.substr(start, end - start));
            if (!ln.empty() && ln.back() == '\r')
                ln.pop_back();
            lines.push_back(std::move(ln));
            start = end + 1;
        }
    }
    std::size_t i = 0;
    auto skip_comments = [&] {
        while (i < lines.size() && !lines[i].empty() && lines[i][0] == '#')
            ++i;
    };

    skip_comments();
    if (i >= lines.size() || lines[i] != kGridFormat)
        parse_fail(i + 1, std::string("expected '") + kGridFormat + "'");
    ++i;
    skip_comments();
    static const std::regex header(R"(p=(\d+) n=(\d+) k=(\d+))");
    std::smatch m;
    if (i >= lines.size() || !std::regex_match(lines[i], m, header))
        parse_fail(i + 1, "expected header 'p=<p> n=<n> k=<k>'");
    const std::size_t header_line = i + 1;
    const int p = parse_int(m[1].str(), header_line);
    const int n = parse_int(m[2].str(), header_line);
    const int k = parse_int(m[3].str(), header_line);
    ++i;

    SpaceSpec sp = [&] {
        try {
            return SpaceSpec(p, n);
        } catch (const Error& e) {
            parse_fail(header_line, e.what());
        }
    }();
    if (k < 3 || k > p)
        parse_fail(header_line, "k must be in [3, p]");

    PointSet s(sp);
    const int kw = key_width(n);
    std::set<std::vector<int>> seen;
    std::vector<int> coords(static_cast<std::size_t>(n), 0);
    while (true) {
        while (i < lines.size() && (lines[i].empty() || lines[i][0] == '#'))
            ++i;
        if (i >= lines.size())
            break;
        const std::string& ln = lines[i];
        if (ln.rfind("layer ", 0) != 0)
            parse_fail(i + 1, "expected 'layer <key>'");
        std::string keytext = ln.substr(6);
        std::vector<int> key;
        if (kw == 0) {
            if (keytext != "-")
                parse_fail(i + 1, "layer key must be '-' when n <= 2");
        } else {
            std::size_t pos = 0;
            while (true) {
                auto comma = keytext.find(',', pos);
                auto part = keytext.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
                int v = parse_int(part, i + 1);
                if (v < 0 || v >= p)
                    parse_fail(i + 1, "layer coordinate " + std::to_string(v) + " out of range");
                key.push_back(v);
                if (comma == std::string::npos)
                    break;
                pos = comma + 1;
            }
            if (static_cast<int>(key.size()) != kw)
                parse_fail(i + 1, "layer key needs " + std::to_string(kw) + " coordinates");
        }
        if (!seen.insert(key).second)
            parse_fail(i + 1, "duplicate layer " + keytext);
        ++i;
        for (int i2 = 0; i2 < kw; ++i2)
            coords[static_cast<std::size_t>(i2)] = key[static_cast<std::size_t>(i2)];
        for (int r = 0; r < row_count(sp); ++r, ++i) {
            if (i >= lines.size())
                parse_fail(i + 1, "layer ended after " + std::to_string(r) + " rows, expected " + std::to_string(row_count(sp)));
            const std::string& row = lines[i];
            if (row.size() != static_cast<std::size_t>(p))
                parse_fail(i + 1, "row has " + std::to_string(row.size()) + " columns, expected " + std::to_string(p));
            for (int c = 0; c < p; ++c) {
                char ch = row[static_cast<std::size_t>(c)];
                if (ch != 'X' && ch != '.')
                    parse_fail(i + 1, std::string("illegal character '") + ch + "'");
                if (ch == 'X') {
                    if (n >= 2) {
                        coords[static_cast<std::size_t>(n - 2)] = r;
                        coords[static_cast<std::size_t>(n - 1)] = c;
                    } else {
                        coords[0] = c;
                    }
                    s.insert(sp.index_of(coords));
                }
            }
        }
        if (i < lines.size() && !lines[i].empty() && lines[i][0] != '#')
            parse_fail(i + 1, "expected a blank line after the layer block");
    }
    return GridDocument{std::move(s), k};
}

GridDocument read_grid_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::Io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_grid(buf.str());
}

void write_grid_file(const std::string& path, const PointSet& s, int k)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorKind::Io, "cannot write " + path);
    out << render_grid(s, k);
    if (!out)
        fail(ErrorKind::Io, "write failed for " + path);
}

}  // namespace linefree
