#pragma once

// JSON forms of posets, presheaves and reports.

#include "poscoh/builders.hpp"
#include "poscoh/cellular.hpp"
#include "poscoh/poset.hpp"
#include "poscoh/presheaf.hpp"
#include "poscoh/singular.hpp"

#include <json.hpp>

#include <string>

namespace poscoh::io {

using Json = nlohmann::ordered_json;

/// {"elements": [...], "covers": [[x, y], ...], "rank": {id: int}}; "rank" is
/// written for graded posets and optional on input.
Json poset_to_json(const Poset& p);
Poset poset_from_json(const Json& j);

/// {"dims": {id: int}, "maps": {"x<y": [[...], ...]}}; maps touching a zero
/// value are omitted on output and optional on input.
Json presheaf_to_json(const Presheaf& f);
Presheaf presheaf_from_json(const Json& j, const Poset& p);

/// {"facets": [["v1", ...], ...]}
Facets facets_from_json(const Json& j);

/// {"rank": int, "torsion": [...]}; torsion entries are numbers when they fit
/// in 64 bits and decimal strings otherwise.
Json invariants_to_json(const AbelianInvariants& a);
Json cohomology_to_json(const CohomologyReport& r);
Json cellularity_to_json(const CellularityVerdict& v, const Poset& p);
Json comparison_to_json(const ComparisonReport& r, const Poset& p);
Json signs_to_json(const SignTable& s, const Poset& p);

/// Throws InputError when the file is missing or not valid JSON.
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace poscoh::io
