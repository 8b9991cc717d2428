#pragma once

#include <fstream>
#include <variant>

#include "json.hpp"

#include "grpbase/basepair.hpp"

namespace grpbase {

using json = nlohmann::json;

// Field elements travel as coefficient lists [c0..c_{a-1}]; a bare integer is
// accepted on input for prime fields.
inline json felem_to_json(const Field& F, FElem x) {
  json out = json::array();
  for (auto c : F.coeffs(x)) out.push_back(c);
  return out;
}

inline FElem felem_from_json(const Field& F, const json& j) {
  if (j.is_number_integer()) {
    long long v = j.get<long long>();
    if (F.a != 1) throw InputError("field element: bare integer only allowed for prime fields");
    return F.from_int(v);
  }
  if (!j.is_array() || j.size() != F.a)
    throw InputError("field element: expected a coefficient list of length a");
  std::vector<std::uint32_t> c;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw InputError("field element: coefficients must be integers");
    long long v = e.get<long long>();
    v %= static_cast<long long>(F.p);
    if (v < 0) v += F.p;
    c.push_back(static_cast<std::uint32_t>(v));
  }
  return F.from_coeffs(c);
}

inline json vec_to_json(const Vec& v) {
  json out = json::array();
  for (auto x : v.v) out.push_back(felem_to_json(*v.F, x));
  return out;
}

inline Vec vec_from_json(const FieldPtr& F, const json& j) {
  if (!j.is_array()) throw InputError("vector: expected an array");
  std::vector<FElem> entries;
  for (const auto& e : j) entries.push_back(felem_from_json(*F, e));
  return Vec(F, entries);
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::uint32_t i = 0; i < m.n; ++i) {
    json row = json::array();
    for (std::uint32_t j = 0; j < m.n; ++j) row.push_back(felem_to_json(*m.F, m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const FieldPtr& F, std::uint32_t dim, const json& j) {
  if (!j.is_array() || j.size() != dim) throw InputError("matrix: expected dim rows");
  Matrix m(F, dim);
  for (std::uint32_t i = 0; i < dim; ++i) {
    if (!j[i].is_array() || j[i].size() != dim) throw InputError("matrix: expected dim columns");
    for (std::uint32_t c = 0; c < dim; ++c) m.at(i, c) = felem_from_json(*F, j[i][c]);
  }
  return m;
}

using GroupVariant = std::variant<PermGroup, MatGroup>;

inline GroupVariant group_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InputError("group: missing kind");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "perm") {
    std::uint32_t n = j.at("degree").get<std::uint32_t>();
    std::vector<Perm> gens;
    for (const auto& gj : j.at("generators")) {
      Perm p;
      for (const auto& e : gj) p.push_back(e.get<std::uint32_t>());
      if (p.size() != n) throw InputError("group: generator length != degree");
      gens.push_back(std::move(p));
    }
    return perm_group(n, gens);
  }
  if (kind == "matrix") {
    std::uint32_t p = j.at("p").get<std::uint32_t>();
    std::uint32_t a = j.value("a", 1u);
    std::uint32_t dim = j.at("dim").get<std::uint32_t>();
    FieldPtr F = Field::make(p, a);
    std::vector<Matrix> gens;
    for (const auto& gj : j.at("generators")) gens.push_back(matrix_from_json(F, dim, gj));
    return mat_group(F, dim, std::move(gens));
  }
  throw InputError("group: kind must be \"perm\" or \"matrix\"");
}

inline GroupVariant load_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw InputError(std::string("JSON parse error: ") + ex.what());
  }
  return group_from_json(j);
}

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw InputError(std::string("JSON parse error: ") + ex.what());
  }
  return j;
}

// Partitions are emitted with points as coordinate lists plus the space shape
// so they can be round-tripped through `verify`.
inline json partition_to_json(const AffineSpace& sp, const SetPartition& part) {
  json parts = json::array();
  for (const auto& pp : part.parts) {
    json pj = json::array();
    for (auto pt : pp) {
      json cj = json::array();
      for (auto c : sp.coords(pt)) cj.push_back(c);
      pj.push_back(std::move(cj));
    }
    parts.push_back(std::move(pj));
  }
  return json{{"n", sp.n}, {"parts", parts}, {"q", sp.q}};
}

inline json partition_to_json(const MixedSpace& ms, const SetPartition& part) {
  json comps = json::array();
  for (const auto& s : ms.spaces) comps.push_back(json{{"n", s.n}, {"q", s.q}});
  json parts = json::array();
  for (const auto& pp : part.parts) {
    json pj = json::array();
    for (auto pt : pp) {
      json cj = json::array();
      auto comp = ms.components(pt);
      for (std::size_t i = 0; i < ms.spaces.size(); ++i)
        for (auto c : ms.spaces[i].coords(comp[i])) cj.push_back(c);
      pj.push_back(std::move(cj));
    }
    parts.push_back(std::move(pj));
  }
  return json{{"components", comps}, {"parts", parts}};
}

// Reads back either flavour; returns point indices over the stated space.
inline SetPartition partition_from_json(const json& j) {
  if (!j.is_object() || !j.contains("parts")) throw InputError("partition: missing parts");
  SetPartition out;
  if (j.contains("components")) {
    std::vector<AffineSpace> sps;
    for (const auto& c : j.at("components"))
      sps.emplace_back(c.at("q").get<std::uint32_t>(), c.at("n").get<std::uint32_t>());
    MixedSpace ms(std::move(sps));
    out.n = ms.size();
    for (const auto& pj : j.at("parts")) {
      std::vector<std::uint32_t> part;
      for (const auto& cj : pj) {
        std::vector<std::uint32_t> comp;
        std::size_t pos = 0;
        for (const auto& s : ms.spaces) {
          std::vector<std::uint32_t> digits;
          for (std::uint32_t d = 0; d < s.n; ++d) digits.push_back(cj.at(pos++).get<std::uint32_t>());
          comp.push_back(s.index(digits));
        }
        part.push_back(ms.index(comp));
      }
      out.parts.push_back(std::move(part));
    }
    return out;
  }
  AffineSpace sp(j.at("q").get<std::uint32_t>(), j.at("n").get<std::uint32_t>());
  out.n = sp.size();
  for (const auto& pj : j.at("parts")) {
    std::vector<std::uint32_t> part;
    for (const auto& cj : pj) {
      std::vector<std::uint32_t> digits;
      for (const auto& d : cj) digits.push_back(d.get<std::uint32_t>() % sp.q);
      if (digits.size() != sp.n) throw InputError("partition: point has wrong arity");
      part.push_back(sp.index(digits));
    }
    out.parts.push_back(std::move(part));
  }
  return out;
}

inline json base_pair_to_json(MatGroup& g, const BasePair& bp) {
  enumerate_mat(g);
  std::uint64_t cert = 0;
  for (const auto& m : g.elements)
    if (mat_vec(m, bp.x) == bp.x && mat_vec(m, bp.y) == bp.y) ++cert;
  return json{{"certificate_order", cert},
              {"path", bp.path},
              {"x", vec_to_json(bp.x)},
              {"y", vec_to_json(bp.y)}};
}

}  // namespace grpbase
