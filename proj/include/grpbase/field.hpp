#pragma once

#include <cassert>
#include <memory>
#include <numeric>

#include "grpbase/common.hpp"

namespace grpbase {

// A field element is an index 0..q-1 encoding its coefficient vector
// (c0,...,c_{a-1}) in the polynomial model as sum c_i * p^i.
using FElem = std::uint32_t;

// Deterministic model of GF(p^a): the modulus is the first monic irreducible
// of degree a in coefficient order, alpha is the first element of full
// multiplicative order in coefficient order.  Multiplication runs off
// exp/log tables built from alpha.
class Field {
 public:
  std::uint32_t p = 0;
  std::uint32_t a = 0;
  std::uint32_t q = 0;                  // p^a
  std::vector<std::uint32_t> modulus;   // c0..c_{a-1} of t^a + sum c_i t^i; empty when a == 1
  FElem alpha = 0;

  static constexpr std::uint32_t kMaxOrder = 1u << 20;

  static std::shared_ptr<const Field> make(std::uint32_t p, std::uint32_t a) {
    auto f = std::shared_ptr<Field>(new Field());
    f->init(p, a);
    return f;
  }

  FElem zero() const { return 0; }
  FElem one() const { return 1; }

  // Embed an integer through the prime subfield.
  FElem from_int(long long v) const {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<FElem>(r);
  }

  std::vector<std::uint32_t> coeffs(FElem x) const {
    std::vector<std::uint32_t> c(a);
    for (std::uint32_t i = 0; i < a; ++i) { c[i] = x % p; x /= p; }
    return c;
  }

  FElem from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (c.size() != a) throw InputError("field: coefficient vector has wrong length");
    FElem x = 0;
    for (std::uint32_t i = a; i-- > 0;) {
      if (c[i] >= p) throw InputError("field: coefficient out of range");
      x = x * p + c[i];
    }
    return x;
  }

  FElem add(FElem x, FElem y) const {
    FElem r = 0, m = 1;
    for (std::uint32_t i = 0; i < a; ++i) {
      r += ((x % p + y % p) % p) * m;
      x /= p; y /= p; m *= p;
    }
    return r;
  }

  FElem neg(FElem x) const {
    FElem r = 0, m = 1;
    for (std::uint32_t i = 0; i < a; ++i) {
      r += ((p - x % p) % p) * m;
      x /= p; m *= p;
    }
    return r;
  }

  FElem sub(FElem x, FElem y) const { return add(x, neg(y)); }

  FElem mul(FElem x, FElem y) const {
    if (x == 0 || y == 0) return 0;
    return exp_[(static_cast<std::uint64_t>(log_[x]) + log_[y]) % (q - 1)];
  }

  FElem inv(FElem x) const {
    if (x == 0) throw InputError("field: inverse of zero");
    return exp_[(q - 1 - log_[x]) % (q - 1)];
  }

  FElem pow(FElem x, long long e) const {
    if (x == 0) {
      if (e <= 0) throw InputError("field: 0 raised to non-positive power");
      return 0;
    }
    long long m = q - 1;
    long long k = (static_cast<long long>(log_[x]) * (e % m)) % m;
    if (k < 0) k += m;
    return exp_[k];
  }

  // x^(p^d): the d-th power of the Frobenius automorphism.
  FElem frobenius(FElem x, std::uint32_t d) const {
    if (x == 0) return 0;
    std::uint64_t e = 1;
    for (std::uint32_t i = 0; i < d % a; ++i) e = (e * p) % (q - 1);
    return exp_[(static_cast<std::uint64_t>(log_[x]) * e) % (q - 1)];
  }

  // Elements fixed by frobenius(-, d), sorted: the subfield GF(p^gcd(a,d)).
  std::vector<FElem> fixed_subfield(std::uint32_t d) const {
    std::vector<FElem> out;
    for (FElem x = 0; x < q; ++x)
      if (frobenius(x, d) == x) out.push_back(x);
    return out;
  }

  std::uint32_t mul_order(FElem x) const {
    if (x == 0) throw InputError("field: order of zero");
    return (q - 1) / static_cast<std::uint32_t>(std::gcd<std::uint64_t>(log_[x], q - 1));
  }

 private:
  std::vector<FElem> exp_;       // exp_[k] = alpha^k, size q-1
  std::vector<std::uint32_t> log_;

  Field() = default;

  using Poly = std::vector<std::uint32_t>;  // coefficients c0.. over GF(p), trailing zeros allowed

  static std::uint32_t pdeg(const Poly& f) {
    for (std::uint32_t i = static_cast<std::uint32_t>(f.size()); i-- > 0;)
      if (f[i] != 0) return i;
    return 0;
  }

  static bool pzero(const Poly& f) {
    return std::all_of(f.begin(), f.end(), [](std::uint32_t c) { return c == 0; });
  }

  // Remainder of f modulo monic g, both over GF(p).
  static Poly prem(Poly f, const Poly& g, std::uint32_t p) {
    std::uint32_t dg = pdeg(g);
    while (!pzero(f) && pdeg(f) >= dg) {
      std::uint32_t df = pdeg(f);
      std::uint32_t c = f[df];  // g monic
      for (std::uint32_t i = 0; i <= dg; ++i) {
        std::uint32_t j = df - dg + i;
        f[j] = (f[j] + p * p - (c * g[i]) % p) % p;
      }
    }
    return f;
  }

  static bool irreducible(const Poly& f, std::uint32_t p, std::uint32_t deg) {
    // Trial division by every monic polynomial of degree 1..deg/2,
    // enumerated in coefficient order.
    for (std::uint32_t d = 1; d <= deg / 2; ++d) {
      std::uint64_t count = ipow(p, d);
      for (std::uint64_t v = 0; v < count; ++v) {
        Poly g(d + 1, 0);
        std::uint64_t t = v;
        for (std::uint32_t i = 0; i < d; ++i) { g[i] = t % p; t /= p; }
        g[d] = 1;
        if (pzero(prem(f, g, p))) return false;
      }
    }
    return true;
  }

  Poly to_poly(FElem x) const {
    Poly c(a);
    for (std::uint32_t i = 0; i < a; ++i) { c[i] = x % p; x /= p; }
    return c;
  }

  FElem from_poly(const Poly& c) const {
    FElem x = 0;
    for (std::uint32_t i = a; i-- > 0;) x = x * p + (i < c.size() ? c[i] : 0);
    return x;
  }

  // Table-free polynomial multiplication modulo the field modulus;
  // used only while bootstrapping the exp/log tables.
  FElem raw_mul(FElem x, FElem y) const {
    Poly fx = to_poly(x), fy = to_poly(y);
    Poly prod(2 * a, 0);
    for (std::uint32_t i = 0; i < a; ++i) {
      if (fx[i] == 0) continue;
      for (std::uint32_t j = 0; j < a; ++j)
        prod[i + j] = (prod[i + j] + fx[i] * fy[j]) % p;
    }
    Poly m(a + 1, 0);
    for (std::uint32_t i = 0; i < modulus.size(); ++i) m[i] = modulus[i];
    m[a] = 1;
    return from_poly(prem(prod, m, p));
  }

  FElem raw_pow(FElem x, std::uint64_t e) const {
    FElem r = 1;
    while (e) {
      if (e & 1) r = raw_mul(r, x);
      x = raw_mul(x, x);
      e >>= 1;
    }
    return r;
  }

  void init(std::uint32_t p_, std::uint32_t a_) {
    if (!is_prime(p_)) throw InputError("field: p is not prime");
    if (a_ < 1) throw InputError("field: a must be >= 1");
    p = p_; a = a_;
    std::uint64_t q64 = ipow(p, a);
    if (q64 > kMaxOrder) throw InputError("field: p^a exceeds 2^20");
    q = static_cast<std::uint32_t>(q64);

    if (a >= 2) {
      // First monic irreducible of degree a in coefficient order
      // (c0 varies fastest, i.e. (c0,...,c_{a-1}) ordered as base-p digits).
      bool found = false;
      for (std::uint32_t v = 0; v < q && !found; ++v) {
        Poly f(a + 1, 0);
        std::uint32_t t = v;
        for (std::uint32_t i = 0; i < a; ++i) { f[i] = t % p; t /= p; }
        f[a] = 1;
        if (irreducible(f, p, a)) {
          modulus.assign(f.begin(), f.begin() + a);
          found = true;
        }
      }
      if (!found) throw Error("field: no irreducible modulus found");  // cannot happen
    }

    // Least element of full multiplicative order, in coefficient lex order
    // (compare c0 first).  Enumerate coefficient tuples lexicographically.
    auto factors = prime_factors(q - 1);
    std::vector<std::uint32_t> c(a, 0);
    bool found_alpha = false;
    while (true) {
      // next tuple in lex order: increment from the last coordinate
      std::uint32_t i = a;
      while (i-- > 0) {
        if (++c[i] < p) break;
        c[i] = 0;
        if (i == 0) { i = a + 1; break; }
      }
      if (i == a + 1) break;  // wrapped: exhausted
      FElem x = 0;
      for (std::uint32_t j = a; j-- > 0;) x = x * p + c[j];
      if (x == 0) continue;
      bool full = raw_pow(x, q - 1) == 1;
      for (auto r : factors)
        if (full && raw_pow(x, (q - 1) / r) == 1) full = false;
      if (full) { alpha = x; found_alpha = true; break; }
    }
    if (!found_alpha) throw Error("field: no primitive element found");  // cannot happen

    exp_.resize(q - 1);
    log_.assign(q, 0);
    FElem cur = 1;
    for (std::uint32_t k = 0; k < q - 1; ++k) {
      exp_[k] = cur;
      log_[cur] = k;
      cur = raw_mul(cur, alpha);
    }
    if (cur != 1) throw Error("field: alpha order inconsistent");  // cannot happen
  }
};

using FieldPtr = std::shared_ptr<const Field>;

// A field automorphism x -> x^(p^d).
struct FieldAut {
  std::uint32_t d = 0;
  FElem apply(const Field& f, FElem x) const { return f.frobenius(x, d); }
};

}  // namespace grpbase
