#include "dpa/json_io.hpp"

#include <fstream>

namespace dpa {

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw ParseError("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out.good()) throw Error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

void check_format(const Json& j, const std::string& what) {
  if (!j.is_object()) throw ParseError(what + ": expected a JSON object");
  if (!j.contains("format") || !j["format"].is_number_integer() ||
      j["format"].get<int>() != kFormatVersion)
    throw ParseError(what + ": unsupported format version");
}

Json quiver_to_json(const Quiver& q) {
  Json j;
  j["format"] = kFormatVersion;
  j["vertices"] = q.vertices();
  Json arrows = Json::array();
  for (const Arrow& a : q.arrows())
    arrows.push_back(Json{{"id", a.id}, {"tail", a.tail}, {"head", a.head}});
  j["arrows"] = std::move(arrows);
  return j;
}

Quiver quiver_from_json(const Json& j) {
  check_format(j, "quiver");
  if (!j.contains("vertices") || !j["vertices"].is_number_integer())
    throw ParseError("quiver: missing vertex count");
  int n = j["vertices"].get<int>();
  std::vector<Arrow> arrows;
  if (!j.contains("arrows") || !j["arrows"].is_array())
    throw ParseError("quiver: missing arrow list");
  for (const Json& a : j["arrows"]) {
    if (!a.is_object() || !a.contains("id") || !a.contains("tail") || !a.contains("head"))
      throw ParseError("quiver: arrow needs id, tail, head");
    arrows.push_back(Arrow{a["id"].get<std::string>(), a["tail"].get<int>(),
                           a["head"].get<int>()});
  }
  return Quiver(n, std::move(arrows));
}

Json extquiver_to_json(const ExtQuiverData& eq) {
  Json j;
  j["format"] = kFormatVersion;
  j["labels"] = eq.labels;
  if (!eq.roots.empty()) {
    Json roots = Json::array();
    for (const IntVec& r : eq.roots) roots.push_back(r);
    j["roots"] = std::move(roots);
  }
  Json m = Json::array();
  for (const auto& row : eq.m) m.push_back(row);
  j["m"] = std::move(m);
  return j;
}

ExtQuiverData extquiver_from_json(const Json& j) {
  check_format(j, "ext-quiver");
  ExtQuiverData eq;
  if (!j.contains("labels") || !j["labels"].is_array())
    throw ParseError("ext-quiver: missing labels");
  bool roots_in_labels = false;
  for (const Json& l : j["labels"]) {
    if (l.is_string()) {
      eq.labels.push_back(l.get<std::string>());
    } else if (l.is_array()) {
      IntVec r = l.get<IntVec>();
      eq.labels.push_back(vec_to_string(r));
      eq.roots.push_back(std::move(r));
      roots_in_labels = true;
    } else {
      throw ParseError("ext-quiver: labels must be strings or integer vectors");
    }
  }
  if (j.contains("roots")) {
    if (roots_in_labels) throw ParseError("ext-quiver: roots given twice");
    for (const Json& r : j["roots"]) eq.roots.push_back(r.get<IntVec>());
  }
  if (!eq.roots.empty() && eq.roots.size() != eq.labels.size())
    throw ParseError("ext-quiver: one root per label required");
  const std::size_t k = eq.labels.size();
  if (!j.contains("m") || !j["m"].is_array() || j["m"].size() != k)
    throw ParseError("ext-quiver: m must be a " + std::to_string(k) + "-square matrix");
  for (const Json& row : j["m"]) {
    if (!row.is_array() || row.size() != k)
      throw ParseError("ext-quiver: m must be a " + std::to_string(k) + "-square matrix");
    eq.m.push_back(row.get<std::vector<int>>());
  }
  for (std::size_t a = 0; a < k; ++a) {
    if (eq.m[a][a] != 0) throw ParseError("ext-quiver: loop at '" + eq.labels[a] + "'");
    for (std::size_t b = 0; b < k; ++b) {
      if (eq.m[a][b] < 0) throw ParseError("ext-quiver: negative arrow count");
      if (eq.m[a][b] != eq.m[b][a]) throw ParseError("ext-quiver: m is not symmetric");
    }
  }
  return eq;
}

std::variant<Rationals, PrimeField> field_from_name(const std::string& name) {
  if (name == "Q") return Rationals{};
  if (name.rfind("Fp:", 0) == 0) {
    const std::string digits = name.substr(3);
    if (digits.empty() || digits.size() > 9 ||
        digits.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad field name '" + name + "'");
    unsigned long long p = std::stoull(digits);
    return PrimeField(static_cast<std::uint32_t>(p));
  }
  throw ParseError("unknown field '" + name + "' (expected Q or Fp:<prime>)");
}

AnyRep rep_from_json(const Json& j, bool validate_relations) {
  check_format(j, "representation");
  if (!j.contains("field") || !j["field"].is_string())
    throw ParseError("representation: missing field name");
  auto fv = field_from_name(j["field"].get<std::string>());
  if (std::holds_alternative<Rationals>(fv))
    return AnyRep{rep_from_json_as(std::get<Rationals>(fv), j, validate_relations)};
  return AnyRep{rep_from_json_as(std::get<PrimeField>(fv), j, validate_relations)};
}

}  // namespace dpa
