#pragma once

#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <unordered_set>

#include "grpbase/common.hpp"

namespace grpbase {

// A permutation of {0..n-1} stored as its image list.
using Perm = std::vector<std::uint32_t>;

inline Perm perm_identity(std::uint32_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool perm_is_identity(const Perm& p) {
  for (std::uint32_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

// (a then b): x -> b[a[x]].
inline Perm perm_compose(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (std::uint32_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

inline Perm perm_inverse(const Perm& a) {
  Perm r(a.size());
  for (std::uint32_t i = 0; i < a.size(); ++i) r[a[i]] = i;
  return r;
}

inline std::uint64_t perm_order(const Perm& a) {
  Perm x = a;
  std::uint64_t o = 1;
  while (!perm_is_identity(x)) { x = perm_compose(x, a); ++o; }
  return o;
}

struct PermVecHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : p) { h ^= v; h *= 1099511628211ull; }
    return h;
  }
};

inline std::uint64_t default_enum_cap() {
  if (const char* e = std::getenv("GRPBASE_CAP")) {
    long long v = std::atoll(e);
    if (v > 0) return static_cast<std::uint64_t>(v);
  }
  return 2000000;
}

struct PermGroup {
  std::uint32_t n = 0;
  std::vector<Perm> gens;
  std::vector<Perm> elements;  // sorted lex once enumerated
  bool enumerated = false;

  std::uint64_t order() const {
    if (!enumerated) throw Error("perm group not enumerated");
    return elements.size();
  }
};

inline PermGroup perm_group(std::uint32_t n, std::vector<Perm> gens) {
  PermGroup g;
  g.n = n;
  for (const auto& p : gens)
    if (p.size() != n) throw InputError("perm group: generator degree mismatch");
  g.gens = std::move(gens);
  return g;
}

// Breadth-first closure under the generators; deterministic (sorted) element list.
inline void enumerate(PermGroup& g, std::uint64_t cap = default_enum_cap()) {
  if (g.enumerated) return;
  std::unordered_set<Perm, PermVecHash> seen;
  std::vector<Perm> queue;
  Perm id = perm_identity(g.n);
  seen.insert(id);
  queue.push_back(id);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Perm cur = queue[head];
    for (const auto& s : g.gens) {
      Perm nxt = perm_compose(cur, s);
      if (seen.insert(nxt).second) {
        if (seen.size() > cap) throw CapExceeded("perm enumeration exceeds cap");
        queue.push_back(std::move(nxt));
      }
    }
  }
  g.elements.assign(seen.begin(), seen.end());
  std::sort(g.elements.begin(), g.elements.end());
  g.enumerated = true;
}

inline PermGroup subgroup_from_elements(std::uint32_t n, std::vector<Perm> elems) {
  PermGroup s;
  s.n = n;
  std::sort(elems.begin(), elems.end());
  s.gens = elems;
  s.elements = std::move(elems);
  s.enumerated = true;
  return s;
}

inline bool group_contains(const PermGroup& g, const Perm& p) {
  return std::binary_search(g.elements.begin(), g.elements.end(), p);
}

// Subgroup generated by `seed` inside an ambient enumerated group (closure).
inline std::vector<Perm> closure_perms(std::uint32_t n, const std::vector<Perm>& seed) {
  std::unordered_set<Perm, PermVecHash> seen;
  std::vector<Perm> queue;
  Perm id = perm_identity(n);
  seen.insert(id);
  queue.push_back(id);
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (const auto& s : seed) {
      Perm nxt = perm_compose(queue[head], s);
      if (seen.insert(nxt).second) queue.push_back(std::move(nxt));
    }
  std::vector<Perm> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<std::uint32_t>> orbits_of(const PermGroup& g) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<bool> done(g.n, false);
  for (std::uint32_t s = 0; s < g.n; ++s) {
    if (done[s]) continue;
    std::vector<std::uint32_t> orb{s};
    done[s] = true;
    for (std::size_t head = 0; head < orb.size(); ++head)
      for (const auto& p : g.gens) {
        std::uint32_t im = p[orb[head]];
        if (!done[im]) { done[im] = true; orb.push_back(im); }
      }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

inline bool is_transitive(const PermGroup& g) {
  return g.n == 0 || orbits_of(g).size() == 1;
}

// Elements fixing the point set X setwise.  Requires enumeration.
inline PermGroup setwise_stabilizer(const PermGroup& g, const std::vector<std::uint32_t>& X) {
  std::vector<bool> in(g.n, false);
  for (auto x : X) {
    if (x >= g.n) throw InputError("setwise_stabilizer: point out of range");
    in[x] = true;
  }
  std::vector<Perm> keep;
  for (const auto& p : g.elements) {
    bool ok = true;
    for (auto x : X)
      if (!in[p[x]]) { ok = false; break; }
    if (ok) keep.push_back(p);
  }
  return subgroup_from_elements(g.n, std::move(keep));
}

struct SetPartition {
  std::uint32_t n = 0;
  std::vector<std::vector<std::uint32_t>> parts;
};

inline void check_partition(const SetPartition& part) {
  std::vector<bool> seen(part.n, false);
  std::size_t total = 0;
  for (const auto& p : part.parts) {
    for (auto x : p) {
      if (x >= part.n || seen[x]) throw InputError("partition: not a partition of the domain");
      seen[x] = true;
    }
    total += p.size();
  }
  if (total != part.n) throw InputError("partition: does not cover the domain");
}

struct RegularityReport {
  bool regular = false;
  std::optional<Perm> witness;  // a nonidentity element fixing every part setwise
};

// G-regular partition: the intersection of the setwise stabilizers of the
// parts is trivial.  Checked by scanning the full element list.
inline RegularityReport is_regular_partition(const PermGroup& g, const SetPartition& part) {
  check_partition(part);
  if (part.n != g.n) throw InputError("partition: domain mismatch");
  std::vector<std::uint32_t> part_of(g.n, 0);
  for (std::uint32_t pi = 0; pi < part.parts.size(); ++pi)
    for (auto x : part.parts[pi]) part_of[x] = pi;
  for (const auto& p : g.elements) {
    if (perm_is_identity(p)) continue;
    bool fixes = true;
    for (std::uint32_t x = 0; x < g.n; ++x)
      if (part_of[p[x]] != part_of[x]) { fixes = false; break; }
    if (fixes) return {false, p};
  }
  return {true, std::nullopt};
}

// Minimal block system of a transitive group: union-find closure over the
// orbit of a pair seed (0, beta), minimized over seeds in deterministic
// order.  Returns the singleton partition when primitive.
inline SetPartition minimal_blocks(const PermGroup& g) {
  if (!is_transitive(g)) throw InputError("minimal_blocks: group not transitive");
  std::uint32_t n = g.n;
  auto blocks_for_seed = [&](std::uint32_t beta) {
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
      while (parent[x] != x) { parent[x] = parent[parent[x]]; x = parent[x]; }
      return x;
    };
    std::vector<std::pair<std::uint32_t, std::uint32_t>> queue;
    parent[find(beta)] = find(0);
    queue.emplace_back(0, beta);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto [a, b] = queue[head];
      for (const auto& s : g.gens) {
        std::uint32_t ra = find(s[a]), rb = find(s[b]);
        if (ra != rb) { parent[rb] = ra; queue.emplace_back(ra, rb); }
      }
    }
    std::map<std::uint32_t, std::vector<std::uint32_t>> cls;
    for (std::uint32_t x = 0; x < n; ++x) cls[find(x)].push_back(x);
    SetPartition out;
    out.n = n;
    for (auto& [root, pts] : cls) out.parts.push_back(std::move(pts));
    return out;
  };

  std::optional<SetPartition> best;
  std::size_t best_size = n;  // block size
  for (std::uint32_t beta = 1; beta < n; ++beta) {
    SetPartition cand = blocks_for_seed(beta);
    std::size_t bs = cand.parts[0].size();
    if (bs < n && bs < best_size) {
      best_size = bs;
      best = std::move(cand);
    }
  }
  if (!best) {  // primitive
    SetPartition out;
    out.n = n;
    for (std::uint32_t x = 0; x < n; ++x) out.parts.push_back({x});
    return out;
  }
  return *best;
}

struct BlockAction {
  PermGroup image;   // action on block indices (enumerated)
  PermGroup kernel;  // elements fixing every block setwise
};

inline BlockAction action_on_blocks(const PermGroup& g, const SetPartition& blocks,
                                    std::uint64_t cap = default_enum_cap()) {
  check_partition(blocks);
  std::vector<std::uint32_t> block_of(g.n);
  for (std::uint32_t bi = 0; bi < blocks.parts.size(); ++bi)
    for (auto x : blocks.parts[bi]) block_of[x] = bi;
  std::uint32_t k = static_cast<std::uint32_t>(blocks.parts.size());
  auto induced = [&](const Perm& p) {
    Perm q(k, k);
    for (std::uint32_t bi = 0; bi < k; ++bi) {
      std::uint32_t target = block_of[p[blocks.parts[bi][0]]];
      for (auto x : blocks.parts[bi])
        if (block_of[p[x]] != target)
          throw InputError("action_on_blocks: partition is not a block system");
      q[bi] = target;
    }
    return q;
  };
  std::vector<Perm> igens;
  for (const auto& s : g.gens) igens.push_back(induced(s));
  BlockAction out;
  out.image = perm_group(k, std::move(igens));
  enumerate(out.image, cap);
  std::vector<Perm> ker;
  for (const auto& p : g.elements)
    if (perm_is_identity(induced(p))) ker.push_back(p);
  out.kernel = subgroup_from_elements(g.n, std::move(ker));
  if (out.image.order() * out.kernel.order() != g.order())
    throw Error("action_on_blocks: order bookkeeping failed");  // cannot happen
  return out;
}

// Least point of X fixed by every element of the setwise stabilizer of X.
inline std::optional<std::uint32_t> fixed_point_of_stabilizer(const PermGroup& g,
                                                              const std::vector<std::uint32_t>& X) {
  PermGroup stab = setwise_stabilizer(g, X);
  for (auto x : X) {
    bool fixed = true;
    for (const auto& p : stab.elements)
      if (p[x] != x) { fixed = false; break; }
    if (fixed) return x;
  }
  return std::nullopt;
}

// Closure of `seed` under multiplication and conjugation by the generators
// of the ambient group: the normal closure as a sorted element list.
inline std::vector<Perm> normal_closure_perms(const PermGroup& g, std::vector<Perm> seed) {
  // Conjugation orbit of the seed under the generators gives the full set of
  // G-conjugates; the subgroup they generate is the normal closure.
  std::unordered_set<Perm, PermVecHash> conj(seed.begin(), seed.end());
  std::vector<Perm> queue(seed.begin(), seed.end());
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (const auto& s : g.gens) {
      Perm c = perm_compose(perm_compose(perm_inverse(s), queue[head]), s);
      if (conj.insert(c).second) queue.push_back(std::move(c));
    }
  return closure_perms(g.n, queue);
}

// Derived subgroup: normal closure of the pairwise generator commutators.
inline PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Perm> seed;
  for (const auto& s : g.gens)
    for (const auto& t : g.gens) {
      Perm c = perm_compose(perm_compose(perm_inverse(s), perm_inverse(t)), perm_compose(s, t));
      if (!perm_is_identity(c)) seed.push_back(c);
    }
  if (seed.empty()) return subgroup_from_elements(g.n, {perm_identity(g.n)});
  std::sort(seed.begin(), seed.end());
  seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
  return subgroup_from_elements(g.n, normal_closure_perms(g, std::move(seed)));
}

inline bool is_solvable(const PermGroup& g);

inline bool is_solvable(const PermGroup& g) {
  PermGroup cur = g;
  while (cur.order() > 1) {
    PermGroup next = derived_subgroup(cur);
    if (next.order() == cur.order()) return false;
    cur = std::move(next);
  }
  return true;
}

}  // namespace grpbase
