#pragma once

#include "grpbase/affine.hpp"
#include "grpbase/coloring.hpp"
#include "grpbase/structure.hpp"

namespace grpbase {

struct BasePair {
  Vec x;
  Vec y;
  std::string path;
};

inline BasePair find_base(MatGroup& g);

// (x, y) is a base when only the identity fixes both vectors.
inline bool is_base(MatGroup& g, const Vec& x, const Vec& y) {
  enumerate_mat(g);
  for (const auto& m : g.elements) {
    if (mat_is_identity(m)) continue;
    if (mat_vec(m, x) == x && mat_vec(m, y) == y) return false;
  }
  return true;
}

namespace detail {

inline Vec basis_combo(const FieldPtr& F, const std::vector<Vec>& basis,
                       const std::vector<FElem>& coef) {
  Vec out(F, basis[0].dim());
  for (std::size_t i = 0; i < coef.size(); ++i)
    if (coef[i] != 0) out = vec_add(out, vec_scale(coef[i], basis[i]));
  return out;
}

// Matrix of h restricted to the invariant subspace W, in the rref basis of W.
inline Matrix restrict_matrix(const Subspace& W, const Matrix& h) {
  const std::uint32_t d = W.dim();
  Matrix R(h.F, d);
  for (std::uint32_t j = 0; j < d; ++j) {
    Vec img = mat_vec(h, Vec(h.F, W.rows[j]));
    if (!W.contains(img)) throw StructureError("restriction: subspace not invariant");
    for (std::uint32_t i = 0; i < d; ++i) R.at(i, j) = img.v[W.pivots[i]];
  }
  return R;
}

inline Vec lift_from(const FieldPtr& F, const Subspace& W, const std::vector<FElem>& c) {
  Vec out(F, W.n);
  for (std::uint32_t j = 0; j < W.dim(); ++j)
    out = vec_add(out, vec_scale(c[j], Vec(F, W.rows[j])));
  return out;
}

inline MatGroup restrict_group(const MatGroup& g, const Subspace& W) {
  std::vector<Matrix> gens;
  for (const auto& h : g.gens) gens.push_back(restrict_matrix(W, h));
  return mat_group(g.F, W.dim(), std::move(gens));
}

}  // namespace detail

struct GammaShiftResult {
  Matrix gamma;
  std::uint64_t bad_count = 0;
  std::uint64_t field_size = 0;
  BasePair pair;
};

// Given a base (x, y) of c = C_G(A), shift y by gamma x with gamma running
// over the field spanned by A; all but a bounded number of shifts give a
// base of G.
inline GammaShiftResult gamma_shift(MatGroup& g, MatGroup& c, const Vec& x, const Vec& y) {
  enumerate_mat(g);
  enumerate_mat(c);
  const FieldPtr& K = g.F;
  const std::uint32_t n = g.dim;
  if (!is_base(c, x, y)) throw InputError("gamma shift: (x, y) is not a base of the centralizer");
  if (c.order() == g.order()) {
    GammaShiftResult out;
    out.gamma = Matrix(K, n);
    out.field_size = 1;
    out.pair = BasePair{x, y, "lemma-gamma-shift"};
    return out;
  }
  std::vector<Matrix> A_elems = max_abelian_normal(g).elements;
  // additive span of A
  std::vector<Matrix> E{Matrix(K, n)};
  for (const auto& a : A_elems) E.push_back(a);
  std::sort(E.begin(), E.end());
  E.erase(std::unique(E.begin(), E.end()), E.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::size_t sz = E.size();
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = i; j < sz; ++j) {
        Matrix s = mat_add(E[i], E[j]);
        auto it = std::lower_bound(E.begin(), E.end(), s);
        if (it == E.end() || *it != s) {
          E.insert(it, s);
          grew = true;
        }
      }
    if (E.size() > 100000) throw CapExceeded("gamma shift: additive span too large");
  }
  if (!is_power_of(E.size(), K->p))
    throw StructureError("gamma shift: additive span is not a field");
  for (const auto& m : E)
    if (m.a != Matrix(K, n).a && !mat_inv(m))
      throw StructureError("gamma shift: additive span has a singular nonzero element");

  GammaShiftResult out;
  out.field_size = E.size();
  bool found = false;
  for (const auto& gamma : E) {
    Vec y2 = vec_add(y, mat_vec(gamma, x));
    bool ok = true;
    for (const auto& m : g.elements) {
      if (mat_is_identity(m)) continue;
      if (mat_vec(m, x) == x && mat_vec(m, y2) == y2) { ok = false; break; }
    }
    if (ok && !found) {
      found = true;
      out.gamma = gamma;
      out.pair = BasePair{x, y2, "lemma-gamma-shift"};
    }
    if (!ok) ++out.bad_count;
  }
  if (!found) throw StructureError("gamma shift: no shift yields a base");
  return out;
}

namespace detail {

// Candidate coefficient pairs (in the distinguished basis) for the dimension
// four monomial case, keyed by the field.
inline std::vector<std::pair<std::vector<FElem>, std::vector<FElem>>> e4_candidates(
    const FieldPtr& K) {
  FElem neg1 = K->neg(1);
  if (K->p == 3)
    return {{{0, 1, 1, 1}, {1, 0, 0, 0}},
            {{1, 1, 0, 1}, {1, 0, 1, 0}},
            {{1, 1, 0, neg1}, {1, 0, 1, 0}}};
  if (K->q == 5) return {{{1, 1, 2, 0}, {0, 1, 1, 2}}};
  FElem al = K->alpha;
  return {{{0, 1, al, K->inv(al)}, {1, 0, 0, 0}}};
}

inline const char* e4_tag(const FieldPtr& K) {
  if (K->p == 3) return "thm-mon-e4-3k";
  if (K->q == 5) return "thm-mon-e4-gf5";
  return "thm-mon-e4-general";
}

// Try the candidate list over every index relabeling of the given basis.
inline std::optional<std::pair<Vec, Vec>> try_e4(
    MatGroup& g, const std::vector<Vec>& basis,
    const std::vector<std::pair<std::vector<FElem>, std::vector<FElem>>>& cands) {
  std::vector<std::uint32_t> perm{0, 1, 2, 3};
  for (const auto& [cx, cy] : cands) {
    std::vector<std::uint32_t> pr = perm;
    do {
      std::vector<Vec> b{basis[pr[0]], basis[pr[1]], basis[pr[2]], basis[pr[3]]};
      Vec x = basis_combo(g.F, b, cx);
      Vec y = basis_combo(g.F, b, cy);
      if (is_base(g, x, y)) return std::make_pair(x, y);
    } while (std::next_permutation(pr.begin(), pr.end()));
  }
  return std::nullopt;
}

}  // namespace detail

// Monomial case, e not a power of two: x = u1, y built from a regular
// partition of the basis index space.
inline std::optional<BasePair> base_mon_general(MatGroup& g, const FittingStructure& fs) {
  const FieldPtr& K = g.F;
  const std::uint32_t e = fs.e;
  Vec x = fs.basis[0];
  FElem al = K->alpha ? K->alpha : 2;  // alpha is the stored primitive element
  std::vector<FElem> coef(e, 0);

  if (e == 3) {
    coef[1] = al;
    coef[2] = 1;
  } else if (fs.prime_shape.size() == 1) {
    const auto [r, m] = fs.prime_shape[0];
    AffineSpace sp(r, m);
    auto res = affine_partition(sp);
    // part -> coefficient, looked up through the index mapping of the space
    std::vector<FElem> per_part;
    if (r == 3)
      per_part = {0, al, 0, 1};
    else
      per_part = {0, 0, 1};
    if (res.part.parts.size() != per_part.size()) return std::nullopt;
    std::vector<FElem> by_point(sp.size(), 0);
    for (std::size_t pi = 0; pi < res.part.parts.size(); ++pi)
      for (auto pt : res.part.parts[pi]) by_point[pt] = per_part[pi];
    for (std::uint32_t k = 0; k < e; ++k) {
      std::uint32_t rem = k;
      std::vector<std::uint32_t> digits(m);
      for (std::uint32_t i = 0; i < m; ++i) {
        digits[i] = rem % r;
        rem /= r;
      }
      coef[k] = by_point[sp.index(digits)];
    }
  } else {
    std::vector<AffineSpace> sps;
    for (auto [r, m] : fs.prime_shape) sps.emplace_back(r, m);
    MixedSpace ms(std::move(sps));
    SetPartition part = mixed_char_partition(ms);
    std::vector<FElem> per_part = {0, 0, 1};
    if (part.parts.size() != 3) return std::nullopt;
    std::vector<FElem> by_point(ms.size(), 0);
    for (std::size_t pi = 0; pi < part.parts.size(); ++pi)
      for (auto pt : part.parts[pi]) by_point[pt] = per_part[pi];
    for (std::uint32_t k = 0; k < e; ++k) {
      std::uint32_t rem = k;
      std::vector<std::uint32_t> comp(fs.prime_shape.size());
      for (std::size_t i = 0; i < fs.prime_shape.size(); ++i) {
        const auto [r, m] = fs.prime_shape[i];
        std::vector<std::uint32_t> digits(m);
        for (std::uint32_t d = 0; d < m; ++d) {
          digits[d] = rem % r;
          rem /= r;
        }
        comp[i] = ms.spaces[i].index(digits);
      }
      coef[k] = by_point[ms.index(comp)];
    }
  }
  Vec y = detail::basis_combo(K, fs.basis, coef);
  if (is_base(g, x, y)) return BasePair{x, y, "thm-mon-general"};
  return std::nullopt;
}

// Monomial case, e = 2^k with k >= 3: solve the four-dimensional problem on
// the span of the first four basis vectors, then perturb with the tail.
inline std::optional<BasePair> base_mon_2power(MatGroup& g, const FittingStructure& fs) {
  const FieldPtr& K = g.F;
  const std::uint32_t e = fs.e;
  Subspace W(K, e);
  for (std::uint32_t j = 0; j < 4; ++j) W.insert(fs.basis[j]);
  if (W.dim() != 4) return std::nullopt;
  std::vector<Matrix> stab;
  for (const auto& h : g.elements) {
    bool inv = true;
    for (std::uint32_t j = 0; j < 4 && inv; ++j)
      if (!W.contains(mat_vec(h, fs.basis[j]))) inv = false;
    if (inv) stab.push_back(h);
  }
  std::vector<Matrix> rgens;
  for (const auto& h : stab) rgens.push_back(detail::restrict_matrix(W, h));
  MatGroup H = mat_subgroup_from_elements(K, 4, rgens);
  // the restricted basis in W coordinates
  std::vector<Vec> rbasis;
  for (std::uint32_t j = 0; j < 4; ++j) {
    std::vector<FElem> c(4);
    for (std::uint32_t i = 0; i < 4; ++i) c[i] = fs.basis[j].v[W.pivots[i]];
    rbasis.emplace_back(K, c);
  }
  auto inner = detail::try_e4(H, rbasis, detail::e4_candidates(K));
  if (!inner) return std::nullopt;
  Vec x = detail::lift_from(K, W, inner->first.v);
  Vec y0 = detail::lift_from(K, W, inner->second.v);
  // tail over basis ranks >= 4
  Vec v(K, e);
  for (std::uint32_t j = 4; j < e; ++j) {
    FElem c = 1;
    if (e == 16) {
      if (j == 4) c = 0;
      if (j == 8) c = K->neg(1);
    }
    if (c != 0) v = vec_add(v, vec_scale(c, fs.basis[j]));
  }
  Vec y = vec_add(y0, v);
  if (is_base(g, x, y)) return BasePair{x, y, "thm-mon-2power"};
  return std::nullopt;
}

inline std::optional<BasePair> base_from_structure(MatGroup& g, const FittingStructure& fs) {
  const FieldPtr& K = g.F;
  const std::uint32_t e = fs.e;
  if (fs.monomial) {
    if (e == 2) {
      Vec x = fs.basis[0], y = fs.basis[1];
      if (is_base(g, x, y)) return BasePair{x, y, "thm-mon-e2"};
      return std::nullopt;
    }
    if (e == 4) {
      auto r = detail::try_e4(g, fs.basis, detail::e4_candidates(K));
      if (r) return BasePair{r->first, r->second, detail::e4_tag(K)};
      return std::nullopt;
    }
    if ((e & (e - 1)) == 0) return base_mon_2power(g, fs);
    return base_mon_general(g, fs);
  }
  // quaternion type: solve the restriction to the u-span V1, then place v1
  // on the x or y side depending on the shape of e/2
  const std::uint32_t half = e / 2;
  Subspace V1(K, e);
  for (const auto& u : fs.basis) V1.insert(u);
  if (V1.dim() != half) return std::nullopt;
  std::vector<Matrix> rgens;
  for (const auto& h : g.elements) {
    bool inv = true;
    for (const auto& u : fs.basis)
      if (!V1.contains(mat_vec(h, u))) { inv = false; break; }
    if (inv) rgens.push_back(detail::restrict_matrix(V1, h));
  }
  MatGroup G1 = mat_subgroup_from_elements(K, half, rgens);
  BasePair inner = find_base(G1);
  Vec x1 = detail::lift_from(K, V1, inner.x.v);
  Vec y1 = detail::lift_from(K, V1, inner.y.v);
  const Vec& v1 = fs.vbasis[0];
  bool two_power = half >= 4 && (half & (half - 1)) == 0;
  Vec x = two_power ? vec_add(v1, x1) : x1;
  Vec y = two_power ? y1 : vec_add(v1, y1);
  if (is_base(g, x, y)) return BasePair{x, y, "thm-nonmon"};
  return std::nullopt;
}

// Imprimitive case: base of the block-one stabilizer spread over the blocks,
// perturbed by a regular coloring of the block action.
inline std::optional<BasePair> combine_imprimitive(MatGroup& g,
                                                   const std::vector<Subspace>& blocks) {
  const FieldPtr& K = g.F;
  const std::uint32_t p = K->p;
  const std::size_t k = blocks.size();

  auto block_index = [&](const Subspace& img) -> std::size_t {
    for (std::size_t i = 0; i < k; ++i)
      if (blocks[i] == img) return i;
    throw StructureError("imprimitive: image is not a block");
  };
  auto image_of = [&](const Matrix& h, std::size_t bi) {
    Subspace img(K, g.dim);
    for (const auto& row : blocks[bi].rows) img.insert(mat_vec(h, Vec(K, row)));
    return img;
  };

  // restriction of the setwise stabilizer of block 0
  std::vector<Matrix> rgens;
  std::vector<Matrix> reps(k);
  std::vector<bool> have_rep(k, false);
  reps[0] = mat_identity(K, g.dim);
  have_rep[0] = true;
  for (const auto& h : g.elements) {
    std::size_t bi = block_index(image_of(h, 0));
    if (bi == 0) rgens.push_back(detail::restrict_matrix(blocks[0], h));
    if (!have_rep[bi]) {
      reps[bi] = h;
      have_rep[bi] = true;
    }
  }
  for (std::size_t i = 0; i < k; ++i)
    if (!have_rep[i]) return std::nullopt;  // block action not transitive

  MatGroup H = mat_subgroup_from_elements(K, blocks[0].dim(), rgens);
  BasePair inner = find_base(H);

  std::vector<Perm> pgens;
  for (const auto& h : g.gens) {
    Perm pr(k);
    for (std::size_t i = 0; i < k; ++i) pr[i] = static_cast<std::uint32_t>(block_index(image_of(h, i)));
    pgens.push_back(std::move(pr));
  }
  PermGroup pg = perm_group(static_cast<std::uint32_t>(k), pgens);
  enumerate(pg);
  Coloring col = regular_coloring(pg, p);

  Vec x1 = detail::lift_from(K, blocks[0], inner.x.v);
  Vec y1 = detail::lift_from(K, blocks[0], inner.y.v);
  Vec x(K, g.dim), y(K, g.dim);
  for (std::size_t i = 0; i < k; ++i) {
    Vec xi = mat_vec(reps[i], x1);
    x = vec_add(x, xi);
    y = vec_add(y, vec_add(mat_vec(reps[i], y1), vec_scale(K->from_int(col.colors[i]), xi)));
  }
  if (is_base(g, x, y)) return BasePair{x, y, "thm-imprimitive"};
  return std::nullopt;
}

// Exhaustive search, vectors ordered by support size then index.
inline BasePair fallback_base(MatGroup& g) {
  enumerate_mat(g);
  const FieldPtr& K = g.F;
  const std::uint32_t n = g.dim;
  std::uint64_t total = ipow(K->q, n);
  if (total > (1u << 20)) throw CapExceeded("fallback: vector space too large to scan");
  std::vector<std::uint32_t> order(total);
  for (std::uint32_t i = 0; i < total; ++i) order[i] = i;
  auto weight = [&](std::uint32_t idx) {
    std::uint32_t w = 0;
    for (std::uint32_t d = 0; d < n; ++d) {
      if (idx % K->q) ++w;
      idx /= K->q;
    }
    return w;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return weight(a) < weight(b); });
  auto vec_of = [&](std::uint32_t idx) {
    Vec v(K, n);
    for (std::uint32_t d = 0; d < n; ++d) {
      v.v[d] = idx % K->q;
      idx /= K->q;
    }
    return v;
  };
  for (auto xi : order) {
    Vec x = vec_of(xi);
    std::vector<const Matrix*> sx;
    for (const auto& m : g.elements) {
      if (mat_is_identity(m)) continue;
      if (mat_vec(m, x) == x) sx.push_back(&m);
    }
    if (sx.size() + 1 == g.order() && g.order() > 1) continue;  // x fixed by everything
    for (auto yi : order) {
      Vec y = vec_of(yi);
      bool ok = true;
      for (auto* m : sx)
        if (mat_vec(*m, y) == y) { ok = false; break; }
      if (ok) return BasePair{x, y, "fallback"};
    }
  }
  throw StructureError("fallback: no base exists");
}

namespace detail {

// First proper invariant subspace, preferring small dimension.
inline std::optional<Subspace> proper_submodule(MatGroup& g) {
  const FieldPtr& K = g.F;
  const std::uint32_t n = g.dim;
  std::vector<Vec> seeds;
  if (ipow(K->q, n) <= 50000) {
    Subspace full(K, n);
    for (std::uint32_t i = 0; i < n; ++i) {
      std::vector<FElem> r(n, 0);
      r[i] = 1;
      full.insert(Vec(K, r));
    }
    seeds = subspace_vectors(full);
  } else {
    for (std::uint32_t i = 0; i < n; ++i) {
      Vec v(K, n);
      v.v[i] = 1;
      seeds.push_back(v);
    }
  }
  std::optional<Subspace> best;
  for (const auto& v : seeds) {
    if (v.is_zero()) continue;
    Subspace M = cyclic_module(g, v);
    if (M.dim() < n && (!best || M.dim() < best->dim())) {
      best = M;
      if (best->dim() == 1) break;
    }
  }
  return best;
}

// Invariant complement of W via the averaged projection.
inline Subspace maschke_complement(MatGroup& g, const Subspace& W) {
  const FieldPtr& K = g.F;
  const std::uint32_t n = g.dim;
  const std::uint32_t d = W.dim();
  // coordinate complement of the pivot columns
  Matrix B(K, n);
  for (std::uint32_t j = 0; j < d; ++j)
    for (std::uint32_t i = 0; i < n; ++i) B.at(i, j) = W.rows[j][i];
  std::vector<bool> is_piv(n, false);
  for (auto pv : W.pivots) is_piv[pv] = true;
  std::uint32_t col = d;
  for (std::uint32_t i = 0; i < n; ++i)
    if (!is_piv[i]) B.at(i, col++) = 1;
  auto Binv = mat_inv(B);
  if (!Binv) throw Error("maschke: basis assembly failed");
  // projection with image W in those coordinates
  Matrix P0(K, n);
  for (std::uint32_t i = 0; i < d; ++i) P0.at(i, i) = 1;
  P0 = mat_mul(mat_mul(B, P0), *Binv);
  Matrix acc(K, n);
  for (const auto& h : g.elements) {
    auto hinv = mat_inv(h);
    acc = mat_add(acc, mat_mul(mat_mul(h, P0), *hinv));
  }
  FElem scale = K->inv(K->from_int(static_cast<std::uint32_t>(g.order() % K->p)));
  Matrix P = mat_scale(scale, acc);
  Subspace comp = span_of(K, n, kernel_basis(P));
  if (comp.dim() != n - d) throw Error("maschke: complement has wrong dimension");
  return comp;
}

}  // namespace detail

inline BasePair find_base(MatGroup& g) {
  enumerate_mat(g);
  const FieldPtr& K = g.F;
  const std::uint32_t n = g.dim;
  if (g.order() % K->p == 0)
    throw InputError("find_base: group order divisible by the characteristic");
  if (g.order() == 1) return BasePair{Vec(K, n), Vec(K, n), "trivial"};
  if (n == 1) {
    Vec x(K, 1);
    x.v[0] = 1;
    return BasePair{x, Vec(K, 1), "trivial"};
  }

  if (auto W = detail::proper_submodule(g)) {
    Subspace C = detail::maschke_complement(g, *W);
    MatGroup g1 = detail::restrict_group(g, *W);
    MatGroup g2 = detail::restrict_group(g, C);
    BasePair b1 = find_base(g1);
    BasePair b2 = find_base(g2);
    Vec x = vec_add(detail::lift_from(K, *W, b1.x.v), detail::lift_from(K, C, b2.x.v));
    Vec y = vec_add(detail::lift_from(K, *W, b1.y.v), detail::lift_from(K, C, b2.y.v));
    if (!is_base(g, x, y)) throw ConstructionBug("find_base: direct sum combination failed");
    return BasePair{x, y, "lemma-direct-sum"};
  }

  MatGroup A = max_abelian_normal(g);
  MatGroup C = mat_centralizer(g, A.elements);
  if (C.elements.size() < g.order()) {
    try {
      MatGroup Cg = C;
      BasePair inner = find_base(Cg);
      auto gs = gamma_shift(g, C, inner.x, inner.y);
      return gs.pair;
    } catch (const StructureError&) {
    } catch (const CapExceeded&) {
    }
  }

  try {
    FittingStructure fs = detect_structure(g);
    if (auto bp = base_from_structure(g, fs)) return *bp;
  } catch (const StructureError&) {
  }

  try {
    if (auto blocks = find_linear_blocks(g)) {
      if (auto bp = combine_imprimitive(g, *blocks)) return *bp;
    }
  } catch (const StructureError&) {
  } catch (const InputError&) {
  }

  return fallback_base(g);
}

}  // namespace grpbase
