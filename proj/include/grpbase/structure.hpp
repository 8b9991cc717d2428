#pragma once

#include <cmath>
#include <functional>

#include "grpbase/matgroup.hpp"

namespace grpbase {

// Number of d-dimensional subspaces of GF(q)^n, clamped at `cap`.
inline std::uint64_t gaussian_binomial_clamped(std::uint32_t n, std::uint32_t d, std::uint32_t q,
                                               std::uint64_t cap) {
  long double r = 1.0L;
  for (std::uint32_t i = 0; i < d; ++i) {
    r *= (powl(q, n - i) - 1) / (powl(q, d - i) - 1);
    if (r > static_cast<long double>(cap) * 2) return cap + 1;
  }
  return static_cast<std::uint64_t>(r + 0.5L);
}

// Enumerate all d-dimensional subspaces in canonical rref order.
inline std::vector<Subspace> enumerate_subspaces(const FieldPtr& F, std::uint32_t n,
                                                 std::uint32_t d, std::uint64_t cap) {
  std::vector<Subspace> out;
  std::vector<std::uint32_t> pivots(d);
  // iterate pivot column combinations
  std::function<void(std::uint32_t, std::uint32_t)> choose = [&](std::uint32_t i, std::uint32_t from) {
    if (out.size() > cap) return;
    if (i == d) {
      // free positions: (row r, col c) with c > pivots[r], c not a pivot
      std::vector<std::pair<std::uint32_t, std::uint32_t>> free_pos;
      std::vector<bool> is_piv(n, false);
      for (auto p : pivots) is_piv[p] = true;
      for (std::uint32_t r = 0; r < d; ++r)
        for (std::uint32_t c = pivots[r] + 1; c < n; ++c)
          if (!is_piv[c]) free_pos.emplace_back(r, c);
      std::vector<FElem> vals(free_pos.size(), 0);
      while (true) {
        Subspace s(F, n);
        std::vector<std::vector<FElem>> rows(d, std::vector<FElem>(n, 0));
        for (std::uint32_t r = 0; r < d; ++r) rows[r][pivots[r]] = 1;
        for (std::size_t k = 0; k < free_pos.size(); ++k)
          rows[free_pos[k].first][free_pos[k].second] = vals[k];
        for (auto& r : rows) s.insert(Vec(F, r));
        out.push_back(std::move(s));
        if (out.size() > cap) return;
        std::size_t k = 0;
        while (k < vals.size() && ++vals[k] == F->q) vals[k++] = 0;
        if (k == vals.size()) break;
        if (free_pos.empty()) break;
      }
      return;
    }
    for (std::uint32_t c = from; c + (d - i) <= n; ++c) {
      pivots[i] = c;
      choose(i + 1, c + 1);
    }
  };
  choose(0, 0);
  return out;
}

// Search for a nonrefinable invariant direct-sum decomposition (system of
// imprimitivity for the linear action).  Dimensions whose subspace count
// exceeds `guard` are skipped; desk-scale instances stay well below it.
inline std::optional<std::vector<Subspace>> find_linear_blocks(const MatGroup& g,
                                                               std::uint64_t guard = 200000) {
  const std::uint32_t n = g.dim;
  for (std::uint32_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    if (gaussian_binomial_clamped(n, d, g.F->q, guard) > guard) continue;
    const std::uint32_t k = n / d;
    for (auto& U : enumerate_subspaces(g.F, n, d, guard)) {
      // orbit of U under the generators
      std::vector<Subspace> orbit{U};
      bool ok = true;
      for (std::size_t head = 0; head < orbit.size() && ok; ++head)
        for (const auto& m : g.gens) {
          Subspace img(g.F, n);
          for (const auto& row : orbit[head].rows) img.insert(mat_vec(m, Vec(g.F, row)));
          if (std::find(orbit.begin(), orbit.end(), img) == orbit.end()) {
            orbit.push_back(std::move(img));
            if (orbit.size() > k) { ok = false; break; }
          }
        }
      if (!ok || orbit.size() != k || k < 2) continue;
      // direct sum check
      Subspace total(g.F, n);
      std::uint32_t dims = 0;
      for (const auto& B : orbit) {
        for (const auto& row : B.rows) total.insert(Vec(g.F, row));
        dims += B.dim();
      }
      if (dims == n && total.dim() == n) {
        std::sort(orbit.begin(), orbit.end());
        return orbit;
      }
    }
  }
  return std::nullopt;
}

struct FittingStructure {
  FieldPtr field;
  std::uint32_t e = 0;
  MatGroup fit;                    // F = Fit(g)
  std::vector<Matrix> A;           // scalar subgroup of F (all p^a - 1 scalars)
  bool monomial = true;
  std::vector<Matrix> D_elements;  // maximal abelian diagonalizable, A <= D
  std::vector<Matrix> D0;          // C_D(u1)
  std::vector<Matrix> S_elements;  // complement, rank order (S_elements[0] = I)
  std::vector<Matrix> Q;           // quaternion pair (nonmonomial only)
  MatGroup F1;                     // C_F(Q) (nonmonomial only)
  std::vector<Vec> basis;          // u_1..u_e (monomial) or u_1..u_{e/2}
  std::vector<Vec> vbasis;         // v_i (nonmonomial)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> prime_shape;  // e = prod p_i^{e_i}
  Matrix basis_mat;                // columns u_i (monomial)
  Matrix basis_inv;
};

namespace detail {

inline bool commutes_with_all(const Matrix& m, const std::vector<Matrix>& set) {
  for (const auto& s : set)
    if (mat_mul(m, s) != mat_mul(s, m)) return false;
  return true;
}

// Refine the full space into common eigenspace components of the given
// commuting diagonalizable matrices.
inline std::vector<Subspace> common_components(const FieldPtr& F, std::uint32_t n,
                                               const std::vector<Matrix>& mats) {
  std::vector<Subspace> comps;
  {
    Subspace full(F, n);
    for (std::uint32_t i = 0; i < n; ++i) {
      std::vector<FElem> row(n, 0);
      row[i] = 1;
      full.insert(Vec(F, row));
    }
    comps.push_back(full);
  }
  for (const auto& m : mats) {
    std::vector<Subspace> next;
    for (const auto& comp : comps) {
      for (FElem lam : eigenvalues_in_field(m)) {
        Subspace eig = span_of(F, n, eigenspace(m, lam));
        Subspace inter = subspace_intersection(comp, eig);
        if (inter.dim() > 0) next.push_back(std::move(inter));
      }
    }
    comps = std::move(next);
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

// DFS for an abelian subgroup of `amb` that contains `base`, consists of
// diagonalizable matrices, has order `target`, and whose common eigenspace
// components all have dimension `comp_dim`.  Returns (elements, components).
struct AbelianDiagResult {
  std::vector<Matrix> elements;
  std::vector<Subspace> components;
};

inline std::optional<AbelianDiagResult> find_abelian_diagonalizable(
    const MatGroup& amb, const std::vector<Matrix>& base, std::uint64_t target,
    std::uint32_t comp_dim,
    const std::function<bool(const AbelianDiagResult&)>& accept =
        [](const AbelianDiagResult&) { return true; }) {
  std::vector<Matrix> candidates;
  for (const auto& m : amb.elements)
    if (is_diagonalizable(m)) candidates.push_back(m);

  std::vector<Matrix> start = closure_mats(amb.F, amb.dim, base);
  if (start.size() > target || target % start.size() != 0) return std::nullopt;

  std::optional<AbelianDiagResult> result;
  std::uint64_t nodes = 0;
  std::function<bool(const std::vector<Matrix>&, std::size_t)> dfs =
      [&](const std::vector<Matrix>& cur, std::size_t from) -> bool {
    if (++nodes > 2000000) throw StructureError("structure: abelian search exhausted node budget");
    if (cur.size() == target) {
      auto comps = common_components(amb.F, amb.dim, cur);
      for (const auto& c : comps)
        if (c.dim() != comp_dim) return false;
      if (comps.size() * comp_dim != amb.dim) return false;
      AbelianDiagResult cand{cur, std::move(comps)};
      if (!accept(cand)) return false;
      result = std::move(cand);
      return true;
    }
    for (std::size_t i = from; i < candidates.size(); ++i) {
      const Matrix& f = candidates[i];
      if (std::binary_search(cur.begin(), cur.end(), f)) continue;
      if (!commutes_with_all(f, cur)) continue;
      std::vector<Matrix> seed = cur;
      seed.push_back(f);
      auto ext = closure_mats(amb.F, amb.dim, seed);
      if (ext.size() > target || target % ext.size() != 0) continue;
      bool all_diag = true;
      for (const auto& m : ext)
        if (!std::binary_search(candidates.begin(), candidates.end(), m)) { all_diag = false; break; }
      if (!all_diag) continue;
      if (dfs(ext, i + 1)) return true;
    }
    return false;
  };
  std::sort(candidates.begin(), candidates.end());
  dfs(start, 0);
  return result;
}

// Which component contains the image of the first basis row of comp under m?
inline std::optional<std::size_t> component_image(const std::vector<Subspace>& comps,
                                                  const Matrix& m, std::size_t ci) {
  Vec img = mat_vec(m, Vec(comps[ci].F, comps[ci].rows[0]));
  for (std::size_t j = 0; j < comps.size(); ++j)
    if (comps[j].contains(img)) return j;
  return std::nullopt;
}

// DFS for an abelian complement S of D inside F: |S| = target, S meets D
// trivially, and S permutes the components regularly.
inline std::optional<std::vector<Matrix>> find_complement(
    const MatGroup& F, const std::vector<Matrix>& D, const std::vector<Subspace>& comps,
    std::uint64_t target) {
  std::optional<std::vector<Matrix>> result;
  std::uint64_t nodes = 0;
  std::function<bool(const std::vector<Matrix>&, std::size_t)> dfs =
      [&](const std::vector<Matrix>& cur, std::size_t from) -> bool {
    if (++nodes > 2000000) throw StructureError("structure: complement search exhausted node budget");
    if (cur.size() == target) {
      // regular on components: orbit of component 0 covers everything
      std::vector<bool> hit(comps.size(), false);
      for (const auto& s : cur) {
        auto j = component_image(comps, s, 0);
        if (!j) return false;
        hit[*j] = true;
      }
      if (std::count(hit.begin(), hit.end(), true) != static_cast<long>(comps.size())) return false;
      result = cur;
      return true;
    }
    for (std::size_t i = from; i < F.elements.size(); ++i) {
      const Matrix& f = F.elements[i];
      if (mat_is_identity(f)) continue;
      if (std::binary_search(cur.begin(), cur.end(), f)) continue;
      if (!commutes_with_all(f, cur)) continue;
      std::vector<Matrix> seed = cur;
      seed.push_back(f);
      auto ext = closure_mats(F.F, F.dim, seed);
      if (ext.size() > target || target % ext.size() != 0) continue;
      bool trivial_meet = true;
      for (const auto& m : ext)
        if (!mat_is_identity(m) && std::binary_search(D.begin(), D.end(), m)) {
          trivial_meet = false;
          break;
        }
      if (!trivial_meet) continue;
      if (dfs(ext, i + 1)) return true;
    }
    return false;
  };
  dfs({mat_identity(F.F, F.dim)}, 0);
  return result;
}

// Rank-order the elements of the abelian group S: independent generators per
// prime (primes ascending), mixed-radix coordinates with the first generator
// fastest.  Returns S_elements with S_elements[rank].
inline std::vector<Matrix> rank_order_abelian(const FieldPtr& F, std::uint32_t dim,
                                              const std::vector<Matrix>& S) {
  std::vector<Matrix> gens;
  std::vector<std::uint32_t> gen_orders;
  for (auto [pr, ex] : factorize(S.size())) {
    // Sylow part: elements of p-power order
    std::vector<Matrix> sylow;
    for (const auto& s : S) {
      std::uint64_t o = mat_order(s);
      bool pw = true;
      while (o % pr == 0) o /= pr;
      if (o != 1) pw = false;
      if (pw) sylow.push_back(s);
    }
    std::sort(sylow.begin(), sylow.end());
    std::vector<Matrix> span{mat_identity(F, dim)};
    for (const auto& s : sylow) {
      if (std::binary_search(span.begin(), span.end(), s)) continue;
      std::vector<Matrix> seed = span;
      seed.push_back(s);
      gens.push_back(s);
      gen_orders.push_back(static_cast<std::uint32_t>(pr));
      span = closure_mats(F, dim, seed);
      if (span.size() == ipow(pr, ex) * 1ull) break;
    }
  }
  std::uint64_t total = 1;
  for (auto o : gen_orders) total *= o;
  if (total != S.size()) throw StructureError("structure: complement is not of the expected shape");
  std::vector<Matrix> ordered;
  for (std::uint64_t rank = 0; rank < total; ++rank) {
    Matrix m = mat_identity(F, dim);
    std::uint64_t rem = rank;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::uint32_t c = static_cast<std::uint32_t>(rem % gen_orders[i]);
      rem /= gen_orders[i];
      for (std::uint32_t k = 0; k < c; ++k) m = mat_mul(m, gens[i]);
    }
    ordered.push_back(std::move(m));
  }
  return ordered;
}

}  // namespace detail

// Recognize the Fitting shape: F = Fit(g) extraspecial-type over the full
// scalar group A, with |F| = |A| e^2.  Decides monomial vs quaternion-type
// and produces the distinguished basis.
inline FittingStructure detect_structure(MatGroup& g) {
  enumerate_mat(g);
  const FieldPtr& K = g.F;
  const std::uint32_t e = g.dim;
  if (e < 2) throw StructureError("structure: dimension must be >= 2");

  FittingStructure fs;
  fs.field = K;
  fs.e = e;
  fs.fit = fitting_subgroup(g);
  fs.A = scalar_elements(fs.fit);
  if (fs.A.size() != K->q - 1)
    throw StructureError("structure: Fitting subgroup lacks the full scalar group");
  if (fs.fit.order() != static_cast<std::uint64_t>(fs.A.size()) * e * e)
    throw StructureError("structure: |F| != |A| e^2");

  // irreducibility of F (hence of g)
  {
    Vec e1(K, e);
    e1.v[0] = 1;
    if (cyclic_module(fs.fit, e1).dim() != e)
      throw StructureError("structure: Fitting subgroup not irreducible");
  }
  for (auto [pr, ex] : factorize(e))
    fs.prime_shape.emplace_back(static_cast<std::uint32_t>(pr), ex);

  const std::uint64_t A_ord = fs.A.size();

  // A complete monomial structure is assembled inside the acceptance check so
  // that an unusable diagonal subgroup candidate resumes the search.
  auto mono_accept = [&](const detail::AbelianDiagResult& cand) -> bool {
    auto S = detail::find_complement(fs.fit, cand.elements, cand.components, e);
    if (!S) return false;
    std::vector<Vec> lines;
    for (const auto& c : cand.components) lines.push_back(vec_normalize(Vec(K, c.rows[0])));
    std::sort(lines.begin(), lines.end());
    Vec u1 = lines[0];
    std::vector<Matrix> S_ordered;
    try {
      S_ordered = detail::rank_order_abelian(K, e, *S);
    } catch (const StructureError&) {
      return false;
    }
    std::vector<Vec> basis;
    for (const auto& s : S_ordered) basis.push_back(mat_vec(s, u1));
    Matrix B(K, e);
    for (std::uint32_t j = 0; j < e; ++j)
      for (std::uint32_t i = 0; i < e; ++i) B.at(i, j) = basis[j].v[i];
    auto Binv = mat_inv(B);
    if (!Binv) return false;
    fs.D_elements = cand.elements;
    fs.S_elements = std::move(S_ordered);
    fs.basis = std::move(basis);
    fs.basis_mat = B;
    fs.basis_inv = *Binv;
    fs.D0.clear();
    for (const auto& d : fs.D_elements)
      if (mat_vec(d, u1) == u1) fs.D0.push_back(d);
    return fs.D0.size() == e;
  };
  auto mono = detail::find_abelian_diagonalizable(fs.fit, fs.A, A_ord * e, 1, mono_accept);
  if (mono) {
    fs.monomial = true;
    return fs;
  }

  // quaternion-type: only possible without a 4th root of unity
  if (K->q % 4 == 1)
    throw StructureError("structure: no monomial structure despite a 4th root of unity");
  if (e % 2 != 0) throw StructureError("structure: odd dimension but no monomial structure");

  Matrix negI = mat_scalar(K, e, K->neg(1));
  std::optional<std::pair<Matrix, Matrix>> quat;
  for (const auto& x : fs.fit.elements) {
    if (mat_mul(x, x) != negI) continue;
    for (const auto& y : fs.fit.elements) {
      if (mat_mul(y, y) != negI) continue;
      if (x == y || mat_mul(x, y) == mat_identity(K, e)) continue;
      Matrix xy = mat_mul(x, y);
      if (mat_mul(xy, xy) != negI) continue;  // anticommuting pair
      if (closure_mats(K, e, {x, y}).size() != 8) continue;
      quat = {x, y};
      break;
    }
    if (quat) break;
  }
  if (!quat) throw StructureError("structure: no quaternion pair found");
  fs.monomial = false;
  fs.Q = {quat->first, quat->second};
  fs.F1 = mat_centralizer(fs.fit, fs.Q);

  std::vector<Matrix> S_found;
  auto homog_accept = [&](const detail::AbelianDiagResult& cand) -> bool {
    auto S = detail::find_complement(fs.F1, cand.elements, cand.components, e / 2);
    if (!S) return false;
    S_found = *S;
    return true;
  };
  auto homog = detail::find_abelian_diagonalizable(fs.F1, fs.A, A_ord * (e / 2), 2, homog_accept);
  if (!homog) throw StructureError("structure: no homogeneous decomposition for F1");
  fs.D_elements = homog->elements;
  std::vector<Subspace> comps = homog->components;  // sorted
  Vec u1 = vec_normalize(Vec(K, comps[0].rows[0]));
  Vec v1 = mat_vec(fs.Q[0], u1);
  fs.S_elements = detail::rank_order_abelian(K, e, S_found);
  fs.basis.clear();
  fs.vbasis.clear();
  for (const auto& s : fs.S_elements) {
    fs.basis.push_back(mat_vec(s, u1));
    fs.vbasis.push_back(mat_vec(s, v1));
  }
  {
    // the pairs must form a basis of the whole space
    Subspace all(K, e);
    for (const auto& u : fs.basis) all.insert(u);
    for (const auto& v : fs.vbasis) all.insert(v);
    if (all.dim() != e) throw StructureError("structure: quaternion pairs do not span");
  }
  for (const auto& d : fs.D_elements)
    if (mat_vec(d, u1) == u1) fs.D0.push_back(d);
  return fs;
}

inline const std::vector<Vec>& monomial_basis(const FittingStructure& fs) {
  if (!fs.monomial) throw InputError("monomial_basis: structure is not monomial");
  return fs.basis;
}

inline std::pair<const std::vector<Vec>*, const std::vector<Vec>*> nonmonomial_basis(
    const FittingStructure& fs) {
  if (fs.monomial) throw InputError("nonmonomial_basis: structure is monomial");
  return {&fs.basis, &fs.vbasis};
}

struct MonomialParts {
  Matrix delta;                    // diagonal part, basis coordinates
  Matrix pi;                       // permutation part, basis coordinates
  std::vector<std::uint32_t> sigma;  // basis index i -> sigma(i)
  std::vector<FElem> diag;           // diagonal entries of delta
};

// Split g = delta * pi with respect to the monomial basis.  Errors when g is
// not monomial in that basis.
inline MonomialParts monomial_decompose(const FittingStructure& fs, const Matrix& g) {
  Matrix M = mat_mul(mat_mul(fs.basis_inv, g), fs.basis_mat);
  const std::uint32_t e = fs.e;
  MonomialParts out;
  out.sigma.assign(e, e);
  std::vector<bool> row_used(e, false);
  for (std::uint32_t j = 0; j < e; ++j) {
    std::uint32_t nz = e;
    for (std::uint32_t i = 0; i < e; ++i) {
      if (M.at(i, j) != 0) {
        if (nz != e) throw InputError("monomial_decompose: element is not monomial");
        nz = i;
      }
    }
    if (nz == e || row_used[nz]) throw InputError("monomial_decompose: element is not monomial");
    row_used[nz] = true;
    out.sigma[j] = nz;
  }
  out.pi = Matrix(fs.field, e);
  out.delta = Matrix(fs.field, e);
  out.diag.assign(e, 1);
  for (std::uint32_t j = 0; j < e; ++j) {
    out.pi.at(out.sigma[j], j) = 1;
    out.diag[out.sigma[j]] = M.at(out.sigma[j], j);
  }
  for (std::uint32_t i = 0; i < e; ++i) out.delta.at(i, i) = out.diag[i];
  if (mat_mul(out.delta, out.pi) != M) throw Error("monomial_decompose: split failed");
  return out;
}

}  // namespace grpbase
