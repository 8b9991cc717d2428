#pragma once

#include <optional>

#include "grpbase/field.hpp"

namespace grpbase {

struct Vec {
  FieldPtr F;
  std::vector<FElem> v;

  Vec() = default;
  Vec(FieldPtr f, std::size_t n) : F(std::move(f)), v(n, 0) {}
  Vec(FieldPtr f, std::vector<FElem> entries) : F(std::move(f)), v(std::move(entries)) {}

  std::size_t dim() const { return v.size(); }
  bool is_zero() const {
    return std::all_of(v.begin(), v.end(), [](FElem x) { return x == 0; });
  }
  bool operator==(const Vec& o) const { return v == o.v; }
  bool operator!=(const Vec& o) const { return v != o.v; }
  bool operator<(const Vec& o) const { return v < o.v; }
};

inline Vec vec_add(const Vec& x, const Vec& y) {
  Vec r = x;
  for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] = x.F->add(x.v[i], y.v[i]);
  return r;
}

inline Vec vec_sub(const Vec& x, const Vec& y) {
  Vec r = x;
  for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] = x.F->sub(x.v[i], y.v[i]);
  return r;
}

inline Vec vec_scale(FElem c, const Vec& x) {
  Vec r = x;
  for (auto& e : r.v) e = x.F->mul(c, e);
  return r;
}

// Scale so the first nonzero entry is 1; canonical line representative.
inline Vec vec_normalize(const Vec& x) {
  for (FElem e : x.v)
    if (e != 0) return vec_scale(x.F->inv(e), x);
  return x;
}

struct Matrix {
  FieldPtr F;
  std::uint32_t n = 0;
  std::vector<FElem> a;  // row-major

  Matrix() = default;
  Matrix(FieldPtr f, std::uint32_t dim) : F(std::move(f)), n(dim), a(std::size_t(dim) * dim, 0) {}

  FElem& at(std::uint32_t i, std::uint32_t j) { return a[std::size_t(i) * n + j]; }
  FElem at(std::uint32_t i, std::uint32_t j) const { return a[std::size_t(i) * n + j]; }

  bool operator==(const Matrix& o) const { return a == o.a; }
  bool operator!=(const Matrix& o) const { return a != o.a; }
  bool operator<(const Matrix& o) const { return a < o.a; }
};

inline Matrix mat_identity(const FieldPtr& F, std::uint32_t n) {
  Matrix m(F, n);
  for (std::uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

inline Matrix mat_scalar(const FieldPtr& F, std::uint32_t n, FElem c) {
  Matrix m(F, n);
  for (std::uint32_t i = 0; i < n; ++i) m.at(i, i) = c;
  return m;
}

inline bool mat_is_identity(const Matrix& m) {
  for (std::uint32_t i = 0; i < m.n; ++i)
    for (std::uint32_t j = 0; j < m.n; ++j)
      if (m.at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

inline Matrix mat_mul(const Matrix& x, const Matrix& y) {
  const Field& F = *x.F;
  Matrix r(x.F, x.n);
  for (std::uint32_t i = 0; i < x.n; ++i)
    for (std::uint32_t k = 0; k < x.n; ++k) {
      FElem c = x.at(i, k);
      if (c == 0) continue;
      for (std::uint32_t j = 0; j < x.n; ++j)
        r.at(i, j) = F.add(r.at(i, j), F.mul(c, y.at(k, j)));
    }
  return r;
}

inline Vec mat_vec(const Matrix& m, const Vec& x) {
  const Field& F = *m.F;
  Vec r(x.F, x.v.size());
  for (std::uint32_t i = 0; i < m.n; ++i) {
    FElem s = 0;
    for (std::uint32_t j = 0; j < m.n; ++j) s = F.add(s, F.mul(m.at(i, j), x.v[j]));
    r.v[i] = s;
  }
  return r;
}

inline Matrix mat_add(const Matrix& x, const Matrix& y) {
  Matrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.F->add(x.a[i], y.a[i]);
  return r;
}

inline Matrix mat_scale(FElem c, const Matrix& x) {
  Matrix r = x;
  for (auto& e : r.a) e = x.F->mul(c, e);
  return r;
}

inline std::optional<Matrix> mat_inv(const Matrix& m) {
  const Field& F = *m.F;
  std::uint32_t n = m.n;
  Matrix w = m, r = mat_identity(m.F, n);
  for (std::uint32_t col = 0; col < n; ++col) {
    std::uint32_t piv = col;
    while (piv < n && w.at(piv, col) == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col) {
      for (std::uint32_t j = 0; j < n; ++j) {
        std::swap(w.a[std::size_t(piv) * n + j], w.a[std::size_t(col) * n + j]);
        std::swap(r.a[std::size_t(piv) * n + j], r.a[std::size_t(col) * n + j]);
      }
    }
    FElem d = F.inv(w.at(col, col));
    for (std::uint32_t j = 0; j < n; ++j) {
      w.at(col, j) = F.mul(d, w.at(col, j));
      r.at(col, j) = F.mul(d, r.at(col, j));
    }
    for (std::uint32_t i = 0; i < n; ++i) {
      if (i == col) continue;
      FElem c = w.at(i, col);
      if (c == 0) continue;
      for (std::uint32_t j = 0; j < n; ++j) {
        w.at(i, j) = F.sub(w.at(i, j), F.mul(c, w.at(col, j)));
        r.at(i, j) = F.sub(r.at(i, j), F.mul(c, r.at(col, j)));
      }
    }
  }
  return r;
}

inline std::uint32_t mat_rank(Matrix w) {
  const Field& F = *w.F;
  std::uint32_t n = w.n, rank = 0;
  for (std::uint32_t col = 0; col < n && rank < n; ++col) {
    std::uint32_t piv = rank;
    while (piv < n && w.at(piv, col) == 0) ++piv;
    if (piv == n) continue;
    if (piv != rank)
      for (std::uint32_t j = 0; j < n; ++j)
        std::swap(w.a[std::size_t(piv) * n + j], w.a[std::size_t(rank) * n + j]);
    FElem d = F.inv(w.at(rank, col));
    for (std::uint32_t j = 0; j < n; ++j) w.at(rank, j) = F.mul(d, w.at(rank, j));
    for (std::uint32_t i = 0; i < n; ++i) {
      if (i == rank) continue;
      FElem c = w.at(i, col);
      if (c == 0) continue;
      for (std::uint32_t j = 0; j < n; ++j)
        w.at(i, j) = F.sub(w.at(i, j), F.mul(c, w.at(rank, j)));
    }
    ++rank;
  }
  return rank;
}

inline std::uint32_t mat_order(const Matrix& m) {
  Matrix x = m;
  std::uint32_t o = 1;
  while (!mat_is_identity(x)) {
    x = mat_mul(x, m);
    ++o;
    if (o > (1u << 24)) throw Error("mat_order: runaway order");
  }
  return o;
}

// Row-echelon subspace with incremental insertion; rows kept in reduced form.
struct Subspace {
  FieldPtr F;
  std::uint32_t n = 0;
  std::vector<std::vector<FElem>> rows;  // rref rows
  std::vector<std::uint32_t> pivots;

  Subspace() = default;
  Subspace(FieldPtr f, std::uint32_t dim) : F(std::move(f)), n(dim) {}

  std::uint32_t dim() const { return static_cast<std::uint32_t>(rows.size()); }

  // Reduce v by the current rows; returns the residue.
  std::vector<FElem> reduce(std::vector<FElem> v) const {
    const Field& Fl = *F;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      FElem c = v[pivots[r]];
      if (c == 0) continue;
      for (std::uint32_t j = 0; j < n; ++j) v[j] = Fl.sub(v[j], Fl.mul(c, rows[r][j]));
    }
    return v;
  }

  bool contains(const Vec& x) const {
    auto res = reduce(x.v);
    return std::all_of(res.begin(), res.end(), [](FElem e) { return e == 0; });
  }

  // Insert a vector; returns true if the dimension grew.
  bool insert(const Vec& x) {
    const Field& Fl = *F;
    auto v = reduce(x.v);
    std::uint32_t piv = n;
    for (std::uint32_t j = 0; j < n; ++j)
      if (v[j] != 0) { piv = j; break; }
    if (piv == n) return false;
    FElem d = Fl.inv(v[piv]);
    for (auto& e : v) e = Fl.mul(d, e);
    // keep existing rows reduced against the new row
    for (std::size_t r = 0; r < rows.size(); ++r) {
      FElem c = rows[r][piv];
      if (c == 0) continue;
      for (std::uint32_t j = 0; j < n; ++j)
        rows[r][j] = Fl.sub(rows[r][j], Fl.mul(c, v[j]));
    }
    // insertion position: keep pivots ascending for a canonical basis
    std::size_t pos = 0;
    while (pos < pivots.size() && pivots[pos] < piv) ++pos;
    rows.insert(rows.begin() + pos, v);
    pivots.insert(pivots.begin() + pos, piv);
    return true;
  }

  std::vector<Vec> basis() const {
    std::vector<Vec> out;
    for (const auto& r : rows) out.emplace_back(F, r);
    return out;
  }

  bool operator==(const Subspace& o) const { return rows == o.rows; }
  bool operator<(const Subspace& o) const { return rows < o.rows; }
};

inline Subspace span_of(const FieldPtr& F, std::uint32_t n, const std::vector<Vec>& vs) {
  Subspace s(F, n);
  for (const auto& v : vs) s.insert(v);
  return s;
}

// Basis of the kernel of m (solutions of m x = 0), canonical rref form.
inline std::vector<Vec> kernel_basis(const Matrix& m) {
  const Field& F = *m.F;
  std::uint32_t n = m.n;
  Matrix w = m;
  std::vector<std::uint32_t> pivot_col;
  std::uint32_t rank = 0;
  for (std::uint32_t col = 0; col < n && rank < n; ++col) {
    std::uint32_t piv = rank;
    while (piv < n && w.at(piv, col) == 0) ++piv;
    if (piv == n) continue;
    if (piv != rank)
      for (std::uint32_t j = 0; j < n; ++j)
        std::swap(w.a[std::size_t(piv) * n + j], w.a[std::size_t(rank) * n + j]);
    FElem d = F.inv(w.at(rank, col));
    for (std::uint32_t j = 0; j < n; ++j) w.at(rank, j) = F.mul(d, w.at(rank, j));
    for (std::uint32_t i = 0; i < n; ++i) {
      if (i == rank) continue;
      FElem c = w.at(i, col);
      if (c == 0) continue;
      for (std::uint32_t j = 0; j < n; ++j)
        w.at(i, j) = F.sub(w.at(i, j), F.mul(c, w.at(rank, j)));
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<Vec> out;
  for (std::uint32_t fc = 0; fc < n; ++fc) {
    if (is_pivot[fc]) continue;
    Vec v(m.F, n);
    v.v[fc] = 1;
    for (std::uint32_t r = 0; r < rank; ++r)
      v.v[pivot_col[r]] = F.neg(w.at(r, fc));
    out.push_back(v);
  }
  return out;
}

// Eigenspace of m for eigenvalue lambda (kernel of m - lambda I).
inline std::vector<Vec> eigenspace(const Matrix& m, FElem lambda) {
  Matrix w = m;
  for (std::uint32_t i = 0; i < m.n; ++i) w.at(i, i) = m.F->sub(w.at(i, i), lambda);
  return kernel_basis(w);
}

// Exhaustive eigenvalue scan over the whole field.
inline bool has_eigenvalue(const Matrix& m) {
  for (FElem lam = 0; lam < m.F->q; ++lam) {
    Matrix w = m;
    for (std::uint32_t i = 0; i < m.n; ++i) w.at(i, i) = m.F->sub(w.at(i, i), lam);
    if (mat_rank(w) < m.n) return true;
  }
  return false;
}

// All eigenvalues in the field, ascending.
inline std::vector<FElem> eigenvalues_in_field(const Matrix& m) {
  std::vector<FElem> out;
  for (FElem lam = 0; lam < m.F->q; ++lam) {
    Matrix w = m;
    for (std::uint32_t i = 0; i < m.n; ++i) w.at(i, i) = m.F->sub(w.at(i, i), lam);
    if (mat_rank(w) < m.n) out.push_back(lam);
  }
  return out;
}

// Diagonalizable over the base field: eigenspace dimensions sum to n.
inline bool is_diagonalizable(const Matrix& m) {
  std::uint32_t total = 0;
  for (FElem lam : eigenvalues_in_field(m)) total += static_cast<std::uint32_t>(eigenspace(m, lam).size());
  return total == m.n;
}

inline bool is_scalar_matrix(const Matrix& m) {
  FElem c = m.at(0, 0);
  for (std::uint32_t i = 0; i < m.n; ++i)
    for (std::uint32_t j = 0; j < m.n; ++j)
      if (m.at(i, j) != (i == j ? c : 0u)) return false;
  return true;
}

// Intersection of two subspaces.
inline Subspace subspace_intersection(const Subspace& U, const Subspace& W) {
  // Solve sum a_i u_i = sum b_j w_j: kernel of [U^T | -W^T] stacked as a
  // homogeneous system in (a, b).
  const Field& F = *U.F;
  std::uint32_t n = U.n;
  std::uint32_t du = U.dim(), dw = W.dim();
  std::uint32_t cols = du + dw;
  std::uint32_t sz = std::max(n, cols);
  Matrix sys(U.F, sz);  // padded square matrix: rows = coordinate equations
  for (std::uint32_t r = 0; r < n; ++r) {
    for (std::uint32_t i = 0; i < du; ++i) sys.at(r, i) = U.rows[i][r];
    for (std::uint32_t j = 0; j < dw; ++j) sys.at(r, du + j) = F.neg(W.rows[j][r]);
  }
  Subspace out(U.F, n);
  for (const auto& k : kernel_basis(sys)) {
    bool genuine = false;  // padded free columns beyond `cols` give junk vectors
    for (std::uint32_t i = 0; i < cols; ++i)
      if (k.v[i] != 0) genuine = true;
    bool padded = false;
    for (std::uint32_t i = cols; i < sz; ++i)
      if (k.v[i] != 0) padded = true;
    if (!genuine || padded) continue;
    Vec x(U.F, n);
    for (std::uint32_t i = 0; i < du; ++i)
      if (k.v[i] != 0) x = vec_add(x, vec_scale(k.v[i], Vec(U.F, U.rows[i])));
    out.insert(x);
  }
  return out;
}

}  // namespace grpbase
