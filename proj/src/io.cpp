#include "poscoh/io.hpp"

#include "poscoh/errors.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace poscoh::io {

namespace {

template <class T>
T field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string(what) + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string(what) + ": \"" + key + "\" has the wrong type");
  }
}

Json integer_to_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

Integer integer_from_json(const Json& v) {
  if (v.is_number_integer()) return Integer(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return Integer(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw InputError("presheaf: matrix entries must be integers");
}

}  // namespace

Json poset_to_json(const Poset& p) {
  Json j;
  j["elements"] = p.elements();
  Json covers = Json::array();
  for (auto [x, y] : p.covers()) covers.push_back(Json::array({p.id(x), p.id(y)}));
  j["covers"] = covers;
  if (p.is_graded()) {
    Json ranks = Json::object();
    for (std::size_t x = 0; x < p.size(); ++x) ranks[p.id(x)] = p.rank(x);
    j["rank"] = ranks;
  }
  return j;
}

Poset poset_from_json(const Json& j) {
  auto elements = field<std::vector<std::string>>(j, "elements", "poset");
  auto pairs = field<std::vector<std::vector<std::string>>>(j, "covers", "poset");
  CoverList covers;
  for (const auto& c : pairs) {
    if (c.size() != 2) throw InputError("poset: every cover must be a pair [x, y]");
    covers.emplace_back(c[0], c[1]);
  }
  std::optional<std::map<std::string, int>> ranks;
  if (j.contains("rank")) ranks = field<std::map<std::string, int>>(j, "rank", "poset");
  return Poset::from_covers(std::move(elements), covers, ranks);
}

Json presheaf_to_json(const Presheaf& f) {
  const Poset& p = f.base();
  Json j;
  Json dims = Json::object();
  for (std::size_t x = 0; x < p.size(); ++x) dims[p.id(x)] = f.dim(x);
  j["dims"] = dims;
  Json maps = Json::object();
  for (auto [x, y] : p.covers()) {
    if (f.dim(x) == 0 || f.dim(y) == 0) continue;
    const IntMatrix& m = f.cover_map(x, y);
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_to_json(m.at(r, c)));
      rows.push_back(row);
    }
    maps[p.id(x) + "<" + p.id(y)] = rows;
  }
  j["maps"] = maps;
  return j;
}

Presheaf presheaf_from_json(const Json& j, const Poset& p) {
  auto dim_map = field<std::map<std::string, long long>>(j, "dims", "presheaf");
  std::vector<std::size_t> dims(p.size(), 0);
  std::vector<bool> given(p.size(), false);
  for (const auto& [id, d] : dim_map) {
    if (!p.contains(id)) throw InputError("presheaf: unknown element '" + id + "' in \"dims\"");
    if (d < 0) throw InputError("presheaf: negative dimension at '" + id + "'");
    dims[p.index(id)] = static_cast<std::size_t>(d);
    given[p.index(id)] = true;
  }
  for (std::size_t x = 0; x < p.size(); ++x)
    if (!given[x]) throw InputError("presheaf: no dimension for '" + p.id(x) + "'");

  Presheaf::CoverMaps maps;
  if (j.contains("maps")) {
    const Json& m = j.at("maps");
    if (!m.is_object()) throw InputError("presheaf: \"maps\" must be an object");
    for (const auto& [key, rows] : m.items()) {
      std::optional<std::pair<std::size_t, std::size_t>> pair;
      for (std::size_t at = key.find('<'); at != std::string::npos; at = key.find('<', at + 1)) {
        const std::string a = key.substr(0, at);
        const std::string b = key.substr(at + 1);
        if (p.contains(a) && p.contains(b)) {
          pair = std::make_pair(p.index(a), p.index(b));
          break;
        }
      }
      if (!pair) throw InputError("presheaf: map key '" + key + "' does not name two elements as \"x<y\"");
      const std::size_t r = dims[pair->first];
      const std::size_t c = dims[pair->second];
      if (!rows.is_array() || rows.size() != r)
        throw InputError("presheaf: map '" + key + "' must have " + std::to_string(r) + " rows");
      IntMatrix mat(r, c);
      for (std::size_t i = 0; i < r; ++i) {
        if (!rows[i].is_array() || rows[i].size() != c)
          throw InputError("presheaf: map '" + key + "' must have " + std::to_string(c) + " columns");
        for (std::size_t k = 0; k < c; ++k) mat.set(i, k, integer_from_json(rows[i][k]));
      }
      maps.emplace(*pair, std::move(mat));
    }
  }
  return Presheaf::from_cover_maps(p, std::move(dims), std::move(maps));
}

Facets facets_from_json(const Json& j) {
  return field<Facets>(j, "facets", "simplicial complex");
}

Json invariants_to_json(const AbelianInvariants& a) {
  Json torsion = Json::array();
  for (const auto& t : a.torsion) torsion.push_back(integer_to_json(t));
  return Json{{"rank", a.rank}, {"torsion", torsion}};
}

Json cohomology_to_json(const CohomologyReport& r) {
  Json degrees = Json::array();
  for (int n = r.min_degree; n <= r.max_degree(); ++n) {
    Json d{{"n", n}};
    d.update(invariants_to_json(r.at(n)));
    degrees.push_back(d);
  }
  return Json{{"degrees", degrees}};
}

Json cellularity_to_json(const CellularityVerdict& v, const Poset& p) {
  Json w = nullptr;
  if (v.witness) w = Json{{"element", p.id(v.witness->first)}, {"degree", v.witness->second}};
  return Json{{"cellular", v.cellular}, {"witness", w}};
}

Json comparison_to_json(const ComparisonReport& r, const Poset& p) {
  Json j = cellularity_to_json(r.cellularity, p);
  Json degrees = Json::array();
  for (const auto& d : r.degrees)
    degrees.push_back(
        Json{{"n", d.n}, {"hs", invariants_to_json(d.hs)}, {"hc", invariants_to_json(d.hc)}, {"isomorphic", d.isomorphic}});
  j["degrees"] = degrees;
  j["theorem_holds"] = r.theorem_holds;
  return j;
}

Json signs_to_json(const SignTable& s, const Poset& p) {
  Json rows = Json::array();
  for (const auto& [cover, sign] : s) rows.push_back(Json{{"x", p.id(cover.first)}, {"y", p.id(cover.second)}, {"sign", sign}});
  const DiamondTally t = check_sign_rule(p, s);
  return Json{{"signs", rows}, {"diamonds", t.diamonds}, {"satisfied", t.satisfied}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << dump(j);
  if (!out) throw InputError("failed writing '" + path + "'");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace poscoh::io
