#pragma once

#include <set>
#include <unordered_set>

#include "grpbase/linalg.hpp"
#include "grpbase/perm.hpp"

namespace grpbase {

struct MatVecHash {
  std::size_t operator()(const std::vector<FElem>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) { h ^= x; h *= 1099511628211ull; }
    return h;
  }
};

struct MatGroup {
  FieldPtr F;
  std::uint32_t dim = 0;
  std::vector<Matrix> gens;
  std::vector<Matrix> elements;  // sorted once enumerated
  bool enumerated = false;

  std::uint64_t order() const {
    if (!enumerated) throw Error("matrix group not enumerated");
    return elements.size();
  }
};

inline MatGroup mat_group(FieldPtr F, std::uint32_t dim, std::vector<Matrix> gens) {
  MatGroup g;
  g.F = std::move(F);
  g.dim = dim;
  for (const auto& m : gens) {
    if (m.n != dim) throw InputError("matrix group: generator dimension mismatch");
    if (!mat_inv(m)) throw InputError("matrix group: generator is singular");
  }
  g.gens = std::move(gens);
  return g;
}

inline void enumerate_mat(MatGroup& g, std::uint64_t cap = default_enum_cap()) {
  if (g.enumerated) return;
  std::unordered_set<std::vector<FElem>, MatVecHash> seen;
  std::vector<Matrix> queue;
  Matrix id = mat_identity(g.F, g.dim);
  seen.insert(id.a);
  queue.push_back(id);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Matrix cur = queue[head];
    for (const auto& s : g.gens) {
      Matrix nxt = mat_mul(cur, s);
      if (seen.insert(nxt.a).second) {
        if (seen.size() > cap) throw CapExceeded("matrix enumeration exceeds cap");
        queue.push_back(std::move(nxt));
      }
    }
  }
  g.elements = std::move(queue);
  std::sort(g.elements.begin(), g.elements.end());
  g.enumerated = true;
}

inline std::vector<Matrix> closure_mats(const FieldPtr& F, std::uint32_t dim,
                                        const std::vector<Matrix>& seed,
                                        std::uint64_t cap);

inline MatGroup mat_subgroup_from_elements(const FieldPtr& F, std::uint32_t dim,
                                           std::vector<Matrix> elems) {
  MatGroup s;
  s.F = F;
  s.dim = dim;
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  // Keep the generating set small: adjoin only elements outside the closure
  // built so far, so later per-generator loops stay cheap.
  std::vector<Matrix> closed{mat_identity(F, dim)};
  for (const auto& e : elems)
    if (!std::binary_search(closed.begin(), closed.end(), e)) {
      s.gens.push_back(e);
      closed = closure_mats(F, dim, s.gens, elems.size() + 1);
    }
  s.elements = std::move(elems);
  s.enumerated = true;
  return s;
}

inline bool mat_group_contains(const MatGroup& g, const Matrix& m) {
  return std::binary_search(g.elements.begin(), g.elements.end(), m);
}

inline std::vector<Matrix> closure_mats(const FieldPtr& F, std::uint32_t dim,
                                        const std::vector<Matrix>& seed,
                                        std::uint64_t cap = default_enum_cap()) {
  std::unordered_set<std::vector<FElem>, MatVecHash> seen;
  std::vector<Matrix> queue;
  Matrix id = mat_identity(F, dim);
  seen.insert(id.a);
  queue.push_back(id);
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (const auto& s : seed) {
      Matrix nxt = mat_mul(queue[head], s);
      if (seen.insert(nxt.a).second) {
        if (seen.size() > cap) throw CapExceeded("matrix closure exceeds cap");
        queue.push_back(std::move(nxt));
      }
    }
  std::sort(queue.begin(), queue.end());
  return queue;
}

// Elements of g fixing the vector x.
inline MatGroup vector_stabilizer(const MatGroup& g, const Vec& x) {
  std::vector<Matrix> keep;
  for (const auto& m : g.elements)
    if (mat_vec(m, x) == x) keep.push_back(m);
  return mat_subgroup_from_elements(g.F, g.dim, std::move(keep));
}

inline MatGroup mat_centralizer(const MatGroup& g, const std::vector<Matrix>& set) {
  std::vector<Matrix> keep;
  for (const auto& m : g.elements) {
    bool ok = true;
    for (const auto& s : set)
      if (mat_mul(m, s) != mat_mul(s, m)) { ok = false; break; }
    if (ok) keep.push_back(m);
  }
  return mat_subgroup_from_elements(g.F, g.dim, std::move(keep));
}

inline std::vector<Matrix> mat_normal_closure(const MatGroup& g, std::vector<Matrix> seed,
                                              std::uint64_t cap = default_enum_cap()) {
  std::unordered_set<std::vector<FElem>, MatVecHash> conj;
  std::vector<Matrix> queue;
  for (auto& s : seed)
    if (conj.insert(s.a).second) queue.push_back(std::move(s));
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (const auto& s : g.gens) {
      Matrix c = mat_mul(mat_mul(*mat_inv(s), queue[head]), s);
      if (conj.insert(c.a).second) queue.push_back(std::move(c));
    }
  return closure_mats(g.F, g.dim, queue, cap);
}

// Largest normal q-subgroup O_q(g): an element lies in it exactly when its
// normal closure is a q-group.  Brute force with memoization of confirmed
// members.
inline std::vector<Matrix> mat_q_core(const MatGroup& g, std::uint64_t qprime) {
  std::unordered_set<std::vector<FElem>, MatVecHash> confirmed;
  confirmed.insert(mat_identity(g.F, g.dim).a);
  auto order_is_power = [&](const Matrix& m) {
    std::uint64_t o = mat_order(m);
    while (o % qprime == 0) o /= qprime;
    return o == 1;
  };
  for (const auto& x : g.elements) {
    if (confirmed.count(x.a)) continue;
    if (!order_is_power(x)) continue;
    bool good = true;
    std::unordered_set<std::vector<FElem>, MatVecHash> cl;
    std::vector<Matrix> queue{x};
    cl.insert(x.a);
    // normal closure with early abort on non-q elements
    for (std::size_t head = 0; head < queue.size() && good; ++head) {
      for (const auto& s : g.gens) {
        Matrix c = mat_mul(mat_mul(*mat_inv(s), queue[head]), s);
        if (cl.insert(c.a).second) {
          if (!order_is_power(c)) { good = false; break; }
          queue.push_back(std::move(c));
        }
      }
    }
    if (good) {
      auto closure = closure_mats(g.F, g.dim, queue);
      for (const auto& m : closure)
        if (!order_is_power(m)) { good = false; break; }
      if (good)
        for (const auto& m : closure) confirmed.insert(m.a);
    }
  }
  std::vector<Matrix> out;
  for (const auto& m : g.elements)
    if (confirmed.count(m.a)) out.push_back(m);
  return out;
}

// Fitting subgroup: the product of the q-cores over the primes dividing |g|.
inline MatGroup fitting_subgroup(const MatGroup& g) {
  std::vector<Matrix> seed;
  for (auto qp : prime_factors(g.order())) {
    auto core = mat_q_core(g, qp);
    seed.insert(seed.end(), core.begin(), core.end());
  }
  if (seed.empty()) seed.push_back(mat_identity(g.F, g.dim));
  return mat_subgroup_from_elements(g.F, g.dim, closure_mats(g.F, g.dim, seed));
}

inline std::vector<Matrix> scalar_elements(const MatGroup& g) {
  std::vector<Matrix> out;
  for (const auto& m : g.elements)
    if (is_scalar_matrix(m)) out.push_back(m);
  return out;
}

// A maximal abelian normal subgroup, grown greedily from the center by
// adjoining abelian normal closures in deterministic order.
inline MatGroup max_abelian_normal(const MatGroup& g) {
  std::vector<Matrix> cur;  // element list of the abelian normal subgroup so far
  {
    MatGroup z = mat_centralizer(g, g.elements);
    cur = z.elements;
  }
  auto commutes_with_all = [](const Matrix& m, const std::vector<Matrix>& set) {
    for (const auto& s : set)
      if (mat_mul(m, s) != mat_mul(s, m)) return false;
    return true;
  };
  // The subgroup generated by cur and the conjugates of x is abelian and
  // normal exactly when those generators pairwise commute, so candidates are
  // screened on their conjugate set with early abort before any closure.
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& x : g.elements) {
      if (std::binary_search(cur.begin(), cur.end(), x)) continue;
      if (!commutes_with_all(x, cur)) continue;
      std::vector<Matrix> conjs{x};
      std::set<Matrix> seen{x};
      bool ok = true;
      for (std::size_t head = 0; head < conjs.size() && ok; ++head)
        for (const auto& s : g.gens) {
          Matrix c = mat_mul(mat_mul(*mat_inv(s), conjs[head]), s);
          if (!seen.insert(c).second) continue;
          if (!commutes_with_all(c, conjs) || !commutes_with_all(c, cur)) {
            ok = false;
            break;
          }
          conjs.push_back(std::move(c));
        }
      if (ok) {
        conjs.insert(conjs.end(), cur.begin(), cur.end());
        cur = closure_mats(g.F, g.dim, conjs);
        grew = true;
        break;
      }
    }
  }
  return mat_subgroup_from_elements(g.F, g.dim, std::move(cur));
}

inline std::vector<Vec> vector_orbit(const MatGroup& g, const Vec& x) {
  std::vector<Vec> orb;
  for (const auto& m : g.elements) orb.push_back(mat_vec(m, x));
  std::sort(orb.begin(), orb.end());
  orb.erase(std::unique(orb.begin(), orb.end()), orb.end());
  return orb;
}

inline std::vector<Matrix> mat_derived_seed(const MatGroup& g) {
  std::vector<Matrix> seed;
  for (const auto& s : g.gens)
    for (const auto& t : g.gens) {
      Matrix c = mat_mul(mat_mul(mat_mul(*mat_inv(s), *mat_inv(t)), s), t);
      if (!mat_is_identity(c)) seed.push_back(c);
    }
  std::sort(seed.begin(), seed.end());
  seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
  return seed;
}

inline bool mat_is_solvable(const MatGroup& g) {
  MatGroup cur = g;
  while (cur.order() > 1) {
    auto seed = mat_derived_seed(cur);
    if (seed.empty()) return true;
    MatGroup next =
        mat_subgroup_from_elements(g.F, g.dim, mat_normal_closure(cur, std::move(seed)));
    if (next.order() == cur.order()) return false;
    cur = std::move(next);
  }
  return true;
}

// Spin up the smallest g-invariant subspace containing v.
inline Subspace cyclic_module(const MatGroup& g, const Vec& v) {
  Subspace s(g.F, g.dim);
  std::vector<Vec> queue{v};
  s.insert(v);
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (const auto& m : g.gens) {
      Vec w = mat_vec(m, queue[head]);
      if (s.insert(w)) queue.push_back(std::move(w));
    }
  return s;
}

// All vectors of a subspace, in deterministic order of the coefficient scan.
inline std::vector<Vec> subspace_vectors(const Subspace& s) {
  const Field& F = *s.F;
  std::vector<Vec> out;
  std::uint64_t total = ipow(F.q, s.dim());
  for (std::uint64_t v = 0; v < total; ++v) {
    Vec x(s.F, s.n);
    std::uint64_t rem = v;
    for (std::uint32_t i = 0; i < s.dim(); ++i) {
      FElem c = static_cast<FElem>(rem % F.q);
      rem /= F.q;
      if (c) x = vec_add(x, vec_scale(c, Vec(s.F, s.rows[i])));
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace grpbase
