#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "bounds.hpp"
#include "pointset.hpp"
#include "search.hpp"
#include "verifier.hpp"

namespace linefree {

using Json = nlohmann::ordered_json;

Json big_json(const BigInt& v);
Json witness_json(const ProgressionWitness& w);

Json verification_json(const PointSet& s, int k, const std::optional<ProgressionWitness>& w, const LineProfile& profile);
std::string verification_text(const PointSet& s, int k, const std::optional<ProgressionWitness>& w, const LineProfile& profile);

Json bounds_json(const BoundsReport& r);
std::string bounds_text(const BoundsReport& r);

Json search_json(const SearchResult& r, int k, bool timing);
std::string search_text(const SearchResult& r, int k, bool timing);

Json table1_json(const Table1& t);
std::string table1_text(const Table1& t);

Json pointset_json(const PointSet& s, int k);

// One tikzpicture per nonempty layer inside a standalone document.
std::string render_tikz(const PointSet& s);

}  // namespace linefree
