#pragma once

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

#include "grpbase/serialize.hpp"

namespace grpbase {

namespace detail {

inline json parse_inline_json(const std::string& s) {
  try {
    return json::parse(s);
  } catch (const std::exception& ex) {
    throw InputError(std::string("inline JSON parse error: ") + ex.what());
  }
}

inline void emit(const json& j) { std::cout << j.dump() << "\n"; }

}  // namespace detail

inline int cmd_partition(std::uint32_t q, std::uint32_t n, const std::string& group_file) {
  AffineSpace sp(q, n);
  AffinePartitionResult res;
  if (!group_file.empty()) {
    auto gv = load_group(group_file);
    auto* pg = std::get_if<PermGroup>(&gv);
    if (!pg) throw InputError("partition: --group must be a permutation group");
    enumerate(*pg);
    res = affine_partition(sp, pg);
  } else {
    res = affine_partition(sp);
  }
  json out = partition_to_json(sp, res.part);
  out["case"] = res.case_id;
  detail::emit(out);
  return 0;
}

inline int cmd_mixedpartition(const std::string& spec_file) {
  json spec = load_json(spec_file);
  if (!spec.contains("components")) throw InputError("mixedpartition: spec needs components");
  std::vector<AffineSpace> sps;
  for (const auto& c : spec.at("components"))
    sps.emplace_back(c.at("q").get<std::uint32_t>(), c.at("n").get<std::uint32_t>());
  MixedSpace ms(std::move(sps));
  SetPartition part = mixed_char_partition(ms);
  detail::emit(partition_to_json(ms, part));
  return 0;
}

inline int cmd_color(const std::string& group_file, std::uint32_t p) {
  auto gv = load_group(group_file);
  auto* pg = std::get_if<PermGroup>(&gv);
  if (!pg) throw InputError("color: --group must be a permutation group");
  enumerate(*pg);
  Coloring col = regular_coloring(*pg, p);
  json cj = json::array();
  for (auto c : col.colors) cj.push_back(c);
  detail::emit(json{{"colors", cj}});
  return 0;
}

inline int cmd_base2(const std::string& group_file, bool fallback_only) {
  auto gv = load_group(group_file);
  auto* mg = std::get_if<MatGroup>(&gv);
  if (!mg) throw InputError("base2: --group must be a matrix group");
  BasePair bp = fallback_only ? fallback_base(*mg) : find_base(*mg);
  json out = base_pair_to_json(*mg, bp);
  detail::emit(out);
  return out.at("certificate_order").get<std::uint64_t>() == 1 ? 0 : 1;
}

inline int cmd_verify(const std::string& group_file, const std::string& partition_file,
                      const std::string& x_str, const std::string& y_str) {
  auto gv = load_group(group_file);
  if (!partition_file.empty()) {
    auto* pg = std::get_if<PermGroup>(&gv);
    if (!pg) throw InputError("verify: partitions are checked against permutation groups");
    enumerate(*pg);
    SetPartition part = partition_from_json(load_json(partition_file));
    if (part.n != pg->n) throw InputError("verify: partition domain does not match group degree");
    check_partition(part);
    auto rep = is_regular_partition(*pg, part);
    if (rep.regular) {
      detail::emit(json{{"regular", true}});
      return 0;
    }
    json wj = json::array();
    for (auto v : *rep.witness) wj.push_back(v);
    detail::emit(json{{"regular", false}, {"witness", wj}});
    return 1;
  }
  if (!x_str.empty() || !y_str.empty()) {
    auto* mg = std::get_if<MatGroup>(&gv);
    if (!mg) throw InputError("verify: bases are checked against matrix groups");
    if (x_str.empty() || y_str.empty()) throw InputError("verify: need both --x and --y");
    Vec x = vec_from_json(mg->F, detail::parse_inline_json(x_str));
    Vec y = vec_from_json(mg->F, detail::parse_inline_json(y_str));
    if (x.dim() != mg->dim || y.dim() != mg->dim)
      throw InputError("verify: vector arity does not match group dimension");
    enumerate_mat(*mg);
    for (const auto& m : mg->elements) {
      if (mat_is_identity(m)) continue;
      if (mat_vec(m, x) == x && mat_vec(m, y) == y) {
        detail::emit(json{{"base", false}, {"witness", matrix_to_json(m)}});
        return 1;
      }
    }
    detail::emit(json{{"base", true}});
    return 0;
  }
  throw InputError("verify: supply --partition or --x/--y");
}

inline int cmd_orbit(const std::string& group_file, std::int64_t point, const std::string& x_str) {
  auto gv = load_group(group_file);
  if (auto* pg = std::get_if<PermGroup>(&gv)) {
    if (point < 0) throw InputError("orbit: permutation groups need --point");
    if (point >= static_cast<std::int64_t>(pg->n)) throw InputError("orbit: point out of range");
    enumerate(*pg);
    auto orbs = orbits_of(*pg);
    for (const auto& o : orbs)
      if (std::find(o.begin(), o.end(), static_cast<std::uint32_t>(point)) != o.end()) {
        json oj = json::array();
        for (auto v : o) oj.push_back(v);
        detail::emit(json{{"orbit", oj}, {"size", o.size()}});
        return 0;
      }
    throw Error("orbit: point not found");  // cannot happen
  }
  auto& mg = std::get<MatGroup>(gv);
  if (x_str.empty()) throw InputError("orbit: matrix groups need --x");
  Vec x = vec_from_json(mg.F, detail::parse_inline_json(x_str));
  if (x.dim() != mg.dim) throw InputError("orbit: vector arity does not match group dimension");
  enumerate_mat(mg);
  auto orb = vector_orbit(mg, x);
  json oj = json::array();
  for (const auto& v : orb) oj.push_back(vec_to_json(v));
  detail::emit(json{{"orbit", oj}, {"size", orb.size()}});
  return 0;
}

inline int run_cli(int argc, char** argv) {
  CLI::App app{"regular partitions and two-element bases for coprime solvable groups"};
  app.require_subcommand(1);
  std::uint64_t cap = 0;
  app.add_option("--cap", cap, "enumeration cap (overrides GRPBASE_CAP)");

  auto* p_part = app.add_subcommand("partition", "affine partition of GF(q)^n");
  std::uint32_t q = 0, n = 0, pr = 0;
  std::string group_file, partition_file, spec_file, x_str, y_str;
  bool fallback_only = false;
  std::int64_t point = -1;
  p_part->add_option("--q", q, "field size")->required();
  p_part->add_option("--n", n, "dimension")->required();
  p_part->add_option("--group", group_file, "permutation group file (cases 7-9)");

  auto* p_mixed = app.add_subcommand("mixedpartition", "mixed-characteristic partition");
  p_mixed->add_option("--spec", spec_file, "component spec file")->required();

  auto* p_color = app.add_subcommand("color", "regular coloring of a permutation group");
  p_color->add_option("--group", group_file, "group file")->required();
  p_color->add_option("--p", pr, "odd prime not dividing the group order")->required();

  auto* p_base = app.add_subcommand("base2", "two-element base of a matrix group");
  p_base->add_option("--group", group_file, "matrix group file")->required();
  p_base->add_flag("--fallback-only", fallback_only, "skip the constructions, search exhaustively");
  p_base->add_flag("--json", "emit JSON (always on)");

  auto* p_verify = app.add_subcommand("verify", "re-check a partition or base");
  p_verify->add_option("--group", group_file, "group file")->required();
  p_verify->add_option("--partition", partition_file, "partition file");
  p_verify->add_option("--x", x_str, "first vector (JSON)");
  p_verify->add_option("--y", y_str, "second vector (JSON)");

  auto* p_orbit = app.add_subcommand("orbit", "orbit of a point or vector");
  p_orbit->add_option("--group", group_file, "group file")->required();
  p_orbit->add_option("--point", point, "point (permutation groups)");
  p_orbit->add_option("--x", x_str, "vector (matrix groups, JSON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cap) {
      setenv("GRPBASE_CAP", std::to_string(cap).c_str(), 1);
    }
    if (p_part->parsed()) return cmd_partition(q, n, group_file);
    if (p_mixed->parsed()) return cmd_mixedpartition(spec_file);
    if (p_color->parsed()) return cmd_color(group_file, pr);
    if (p_base->parsed()) return cmd_base2(group_file, fallback_only);
    if (p_verify->parsed()) return cmd_verify(group_file, partition_file, x_str, y_str);
    if (p_orbit->parsed()) return cmd_orbit(group_file, point, x_str);
  } catch (const InputError& ex) {
    std::cerr << "input error: " << ex.what() << "\n";
    return 2;
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace grpbase
