#pragma once

#include <json.hpp>

#include <string>
#include <variant>

#include "dpa/coxeter.hpp"
#include "dpa/rep.hpp"

namespace dpa {

using Json = nlohmann::json;

// File formats are versioned; every writer stamps "format": 1 and every
// reader rejects other versions.
inline constexpr int kFormatVersion = 1;

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);
void check_format(const Json& j, const std::string& what);

Json quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const Json& j);

Json extquiver_to_json(const ExtQuiverData& eq);
ExtQuiverData extquiver_from_json(const Json& j);

// "Q" or "Fp:<prime>".
std::variant<Rationals, PrimeField> field_from_name(const std::string& name);

template <FieldType F>
Json element_to_json(const F& f, const typename F::Element& e) {
  if constexpr (std::is_same_v<F, Rationals>) {
    return Json(f.to_string(e));
  } else {
    (void)f;
    return Json(static_cast<std::uint64_t>(e));
  }
}

template <FieldType F>
typename F::Element element_from_json(const F& f, const Json& j) {
  if (j.is_string()) return f.parse(j.get<std::string>());
  if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
  throw ParseError("expected a field element, got " + j.dump());
}

template <FieldType F>
Json matrix_to_json(const Matrix<F>& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(element_to_json(m.field(), m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <FieldType F>
Matrix<F> matrix_from_json(const F& f, const Json& j, std::size_t rows, std::size_t cols,
                           const std::string& what) {
  if (!j.is_array() || j.size() != rows)
    throw ParseError(what + ": expected " + std::to_string(rows) + " rows");
  Matrix<F> m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != cols)
      throw ParseError(what + ": row " + std::to_string(r) + " must have " +
                       std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = element_from_json(f, row[c]);
  }
  return m;
}

template <FieldType F>
Weight<F> weight_from_json(const F& f, const Json& j, int vertices) {
  if (!j.is_array() || static_cast<int>(j.size()) != vertices)
    throw ParseError("lambda must list one entry per vertex");
  std::vector<typename F::Element> coords;
  for (const Json& e : j) coords.push_back(element_from_json(f, e));
  return make_weight(f, std::move(coords));
}

template <FieldType F>
Json weight_to_json(const Weight<F>& w) {
  Json out = Json::array();
  for (const auto& e : w.coords) out.push_back(element_to_json(w.field, e));
  return out;
}

template <FieldType F>
Json rep_to_json(const Representation<F>& r) {
  Json j;
  j["format"] = kFormatVersion;
  j["field"] = r.lambda.field.name();
  j["quiver"] = quiver_to_json(r.dq.base());
  j["lambda"] = weight_to_json(r.lambda);
  j["dims"] = r.dims;
  Json maps = Json::object();
  for (std::size_t k = 0; k < r.dq.arrows().size(); ++k)
    maps[r.dq.arrow(k).id] = matrix_to_json(r.maps[k]);
  j["maps"] = std::move(maps);
  return j;
}

template <FieldType F>
Representation<F> rep_from_json_as(const F& f, const Json& j, bool validate_relations = true) {
  check_format(j, "representation");
  if (!j.contains("field") || j["field"].get<std::string>() != f.name())
    throw FieldMismatch("representation file is not over " + f.name());
  DoubleQuiver dq(quiver_from_json(j.at("quiver")));
  Weight<F> lambda = weight_from_json(f, j.at("lambda"), dq.vertices());
  if (!j.contains("dims") || !j["dims"].is_array() ||
      static_cast<int>(j["dims"].size()) != dq.vertices())
    throw ParseError("dims must list one entry per vertex");
  IntVec dims = j["dims"].get<IntVec>();
  for (std::int64_t d : dims)
    if (d < 0) throw ParseError("negative dimension");
  const Json& maps_j = j.at("maps");
  std::vector<Matrix<F>> maps;
  for (const DoubleArrow& a : dq.arrows()) {
    if (!maps_j.contains(a.id)) throw ParseError("missing map for arrow '" + a.id + "'");
    maps.push_back(matrix_from_json(f, maps_j.at(a.id), static_cast<std::size_t>(dims[a.head]),
                                    static_cast<std::size_t>(dims[a.tail]),
                                    "map '" + a.id + "'"));
  }
  Representation<F> rep = make_representation(std::move(dq), std::move(lambda), std::move(dims),
                                              std::move(maps));
  if (validate_relations) {
    std::vector<Matrix<F>> res = check_relations(rep);
    std::string bad;
    for (std::size_t i = 0; i < res.size(); ++i)
      if (!res[i].is_zero())
        bad += " vertex " + std::to_string(i) + ": residual " + res[i].to_string();
    if (!bad.empty())
      throw InvalidRepresentation("relation check failed:" + bad);
  }
  return rep;
}

// Field-dispatched loading for files whose field is read from the payload.
struct AnyRep {
  std::variant<Representation<Rationals>, Representation<PrimeField>> value;

  template <typename Fn>
  decltype(auto) visit(Fn&& fn) const {
    return std::visit(std::forward<Fn>(fn), value);
  }
};

AnyRep rep_from_json(const Json& j, bool validate_relations = true);

}  // namespace dpa
