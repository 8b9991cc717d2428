#pragma once

#include <map>

#include "grpbase/matgroup.hpp"

namespace grpbase {

namespace detail {

// Try to extend gen -> img to a homomorphism on <gens[0..k)>.  Returns the
// full element-to-image map when consistent, nullopt on a conflict.
inline std::optional<std::map<Matrix, Matrix>> hom_closure(const FieldPtr& F, std::uint32_t n,
                                                           const std::vector<Matrix>& gens,
                                                           const std::vector<Matrix>& imgs) {
  std::map<Matrix, Matrix> map;
  Matrix id = mat_identity(F, n);
  map[id] = id;
  std::vector<Matrix> queue{id};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Matrix x = queue[head];
    const Matrix& fx = map.at(x);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Matrix y = mat_mul(x, gens[i]);
      Matrix fy = mat_mul(fx, imgs[i]);
      auto it = map.find(y);
      if (it == map.end()) {
        map.emplace(std::move(y), std::move(fy));
        queue.push_back(mat_mul(x, gens[i]));
      } else if (it->second != fy) {
        return std::nullopt;
      }
    }
  }
  return map;
}

}  // namespace detail

// Solve T g = phi(g) T over the generators; returns the (up to scalar unique)
// invertible intertwiner, or nullopt when none exists.
inline std::optional<Matrix> intertwiner(const FieldPtr& F, std::uint32_t n,
                                         const std::vector<Matrix>& gens,
                                         const std::vector<Matrix>& imgs) {
  const std::uint32_t nn = n * n;
  std::optional<Subspace> sol;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    const Matrix& g = gens[gi];
    const Matrix& h = imgs[gi];
    Matrix sys(F, nn);  // unknowns T_{ab} at index a*n+b; equation (i,j) at i*n+j
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        for (std::uint32_t k = 0; k < n; ++k) {
          auto& c1 = sys.a[std::size_t(i * n + j) * nn + (i * n + k)];
          c1 = F->add(c1, g.a[std::size_t(k) * n + j]);
          auto& c2 = sys.a[std::size_t(i * n + j) * nn + (k * n + j)];
          c2 = F->sub(c2, h.a[std::size_t(i) * n + k]);
        }
    Subspace ker = span_of(F, nn, kernel_basis(sys));
    sol = sol ? subspace_intersection(*sol, ker) : ker;
    if (sol->dim() == 0) return std::nullopt;
  }
  if (!sol) return std::nullopt;
  for (const auto& row : sol->rows) {
    Matrix T(F, n);
    T.a = row;
    if (mat_inv(T)) return T;
  }
  return std::nullopt;
}

// All automorphisms of the (enumerated) group F that fix every scalar matrix,
// reported as image tuples for F.gens.
inline std::vector<std::vector<Matrix>> scalar_fixing_automorphisms(MatGroup& F) {
  enumerate_mat(F);
  const std::uint32_t n = F.dim;
  std::vector<std::vector<Matrix>> cands(F.gens.size());
  for (std::size_t i = 0; i < F.gens.size(); ++i) {
    std::uint64_t o = mat_order(F.gens[i]);
    if (is_scalar_matrix(F.gens[i])) {
      cands[i] = {F.gens[i]};  // scalars must map to themselves
      continue;
    }
    for (const auto& m : F.elements)
      if (mat_order(m) == o) cands[i].push_back(m);
  }
  std::vector<std::vector<Matrix>> out;
  std::vector<Matrix> imgs;
  std::function<void(std::size_t)> dfs = [&](std::size_t k) {
    if (k == F.gens.size()) {
      auto map = detail::hom_closure(F.F, n, F.gens, imgs);
      if (!map || map->size() != F.order()) return;
      std::vector<Matrix> image;
      for (const auto& [a, b] : *map) image.push_back(b);
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      if (image.size() != F.order()) return;
      // scalar-fixing check over the whole scalar subgroup
      for (const auto& [a, b] : *map)
        if (is_scalar_matrix(a) && a != b) return;
      out.push_back(imgs);
      return;
    }
    for (const auto& c : cands[k]) {
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) {
        if (mat_order(mat_mul(imgs[j], c)) != mat_order(mat_mul(F.gens[j], F.gens[k]))) ok = false;
      }
      if (!ok) continue;
      imgs.push_back(c);
      std::vector<Matrix> pg(F.gens.begin(), F.gens.begin() + k + 1);
      if (detail::hom_closure(F.F, n, pg, imgs)) dfs(k + 1);
      imgs.pop_back();
    }
  };
  dfs(0);
  return out;
}

// N_{GL(n,q)}(F) for an (absolutely) irreducible F: every realizable
// scalar-fixing automorphism contributes the scalar multiples of its
// intertwiner.
inline std::vector<Matrix> normalizer_in_gl(MatGroup& F) {
  enumerate_mat(F);
  std::vector<Matrix> out;
  for (const auto& imgs : scalar_fixing_automorphisms(F)) {
    auto T = intertwiner(F.F, F.dim, F.gens, imgs);
    if (!T) continue;
    for (FElem lam = 1; lam < F.F->q; ++lam) out.push_back(mat_scale(lam, *T));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace grpbase
