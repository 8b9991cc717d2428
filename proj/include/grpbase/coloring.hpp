#pragma once

#include "grpbase/affine.hpp"

namespace grpbase {

struct Coloring {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> colors;
};

// Is the coloring stabilizer trivial?  Returns a nonidentity witness when not.
inline std::optional<Perm> coloring_stabilizer_witness(const PermGroup& g,
                                                       const std::vector<std::uint32_t>& colors) {
  for (const auto& p : g.elements) {
    if (perm_is_identity(p)) continue;
    bool fixes = true;
    for (std::uint32_t x = 0; x < g.n; ++x)
      if (colors[p[x]] != colors[x]) { fixes = false; break; }
    if (fixes) return p;
  }
  return std::nullopt;
}

struct AffineRealization {
  AffineSpace space;
  std::vector<std::uint32_t> point_to_space;  // bijection domain -> space index
  PermGroup image;                            // the group relabeled onto the space
};

// Realize a transitive group with a regular elementary abelian normal
// subgroup as a subgroup of AGL(d,q): locate the translation subgroup by
// normal-closure search, coordinatize its elements, and relabel.
inline std::optional<AffineRealization> realize_affine(const PermGroup& g) {
  const std::uint32_t n = g.n;
  if (n == 0) return std::nullopt;
  const auto nfac = factorize(n);
  if (nfac.size() != 1) return std::nullopt;  // |domain| must be a prime power
  const std::uint32_t r = static_cast<std::uint32_t>(nfac[0].first);
  const std::uint32_t d = nfac[0].second;

  std::vector<Perm> T;
  for (const auto& x : g.elements) {
    if (perm_is_identity(x)) continue;
    if (perm_order(x) != r) continue;
    auto cl = normal_closure_perms(g, {x});
    if (cl.size() != n) continue;
    bool elem_ab = true;
    for (const auto& a : cl) {
      if (!perm_is_identity(a) && !perm_is_identity([&] {
            Perm p = a;
            for (std::uint32_t k = 1; k < r; ++k) p = perm_compose(p, a);
            return p;
          }()))
        { elem_ab = false; break; }
    }
    for (std::size_t i = 0; i < cl.size() && elem_ab; ++i)
      for (std::size_t j = i + 1; j < cl.size() && elem_ab; ++j)
        if (perm_compose(cl[i], cl[j]) != perm_compose(cl[j], cl[i])) elem_ab = false;
    if (!elem_ab) continue;
    // regular: transitive (orbit of 0 has size n) and fixed-point-free
    std::vector<bool> hit(n, false);
    bool semireg = true;
    for (const auto& a : cl) {
      hit[a[0]] = true;
      if (!perm_is_identity(a))
        for (std::uint32_t x = 0; x < n; ++x)
          if (a[x] == x) { semireg = false; break; }
      if (!semireg) break;
    }
    if (!semireg || std::count(hit.begin(), hit.end(), true) != static_cast<long>(n)) continue;
    T = cl;
    break;
  }
  if (T.empty()) return std::nullopt;

  // independent generators of T as a GF(r)-space
  std::vector<Perm> basis;
  {
    std::vector<Perm> span{perm_identity(n)};
    for (const auto& t : T) {
      if (std::find(span.begin(), span.end(), t) != span.end()) continue;
      basis.push_back(t);
      span = closure_perms(n, basis);
    }
  }
  if (ipow(r, static_cast<std::uint32_t>(basis.size())) != n)
    return std::nullopt;  // cannot happen

  AffineSpace space(r, d);
  std::vector<std::uint32_t> point_to_space(n);
  for (std::uint32_t idx = 0; idx < n; ++idx) {
    Perm t = perm_identity(n);
    std::uint32_t rem = idx;
    for (std::uint32_t i = 0; i < d; ++i) {
      std::uint32_t c = rem % r;
      rem /= r;
      for (std::uint32_t k = 0; k < c; ++k) t = perm_compose(t, basis[i]);
    }
    point_to_space[t[0]] = idx;
  }

  std::vector<Perm> igens;
  std::vector<std::uint32_t> space_to_point(n);
  for (std::uint32_t x = 0; x < n; ++x) space_to_point[point_to_space[x]] = x;
  for (const auto& s : g.gens) {
    Perm q(n);
    for (std::uint32_t v = 0; v < n; ++v) q[v] = point_to_space[s[space_to_point[v]]];
    igens.push_back(std::move(q));
  }
  AffineRealization out{space, point_to_space, perm_group(n, std::move(igens))};
  enumerate(out.image);
  return out;
}

namespace detail {

// Coloring of one block: the primitive group on the block decides between a
// plain bijection (trivial partition) and anchoring the unique-size part of
// the affine partition to the block's color.
inline void color_block(const PermGroup& ambient, const std::vector<std::uint32_t>& delta,
                        std::uint32_t a_i, std::uint32_t p, std::vector<std::uint32_t>& colors) {
  // restriction of the setwise stabilizer to the block
  PermGroup stab = setwise_stabilizer(ambient, delta);
  std::uint32_t m = static_cast<std::uint32_t>(delta.size());
  std::vector<std::uint32_t> local_of(ambient.n, 0);
  for (std::uint32_t i = 0; i < m; ++i) local_of[delta[i]] = i;
  std::vector<Perm> restricted;
  for (const auto& s : stab.elements) {
    Perm q(m);
    for (std::uint32_t i = 0; i < m; ++i) q[i] = local_of[s[delta[i]]];
    restricted.push_back(std::move(q));
  }
  std::sort(restricted.begin(), restricted.end());
  restricted.erase(std::unique(restricted.begin(), restricted.end()), restricted.end());
  PermGroup P = subgroup_from_elements(m, std::move(restricted));

  auto rel = realize_affine(P);
  if (!rel) throw Error("regular_coloring: block group is not affine");
  AffinePartitionResult ap = affine_partition(rel->space, &rel->image);

  if (ap.part.parts.size() == m) {
    // trivial partition: any bijection onto {0..m-1} + a_i works and the
    // shifted multiset still determines a_i
    if (m > p - 1) throw Error("regular_coloring: block too large for bijection route");
    for (std::uint32_t i = 0; i < m; ++i) colors[delta[i]] = (i + a_i) % p;
    return;
  }
  if (ap.part.parts.size() > p) throw Error("regular_coloring: too many parts for p");

  // unique-size part (smallest unique size) anchored to a_i; remaining parts
  // get the smallest unused residues in partition order
  std::map<std::size_t, std::size_t> size_count;
  for (const auto& part : ap.part.parts) size_count[part.size()]++;
  std::size_t anchor = ap.part.parts.size();
  std::size_t best_size = 0;
  for (std::size_t i = 0; i < ap.part.parts.size(); ++i) {
    std::size_t sz = ap.part.parts[i].size();
    if (size_count[sz] == 1 && (anchor == ap.part.parts.size() || sz < best_size)) {
      anchor = i;
      best_size = sz;
    }
  }
  if (anchor == ap.part.parts.size())
    throw Error("regular_coloring: no unique-size part to anchor");
  std::vector<std::uint32_t> part_color(ap.part.parts.size());
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < ap.part.parts.size(); ++i) {
    if (i == anchor) { part_color[i] = a_i; continue; }
    while (next == a_i) ++next;
    part_color[i] = next++;
  }
  // map back through the realization: space index -> local point -> domain
  std::vector<std::uint32_t> space_to_local(m);
  for (std::uint32_t x = 0; x < m; ++x) space_to_local[rel->point_to_space[x]] = x;
  for (std::size_t i = 0; i < ap.part.parts.size(); ++i)
    for (auto v : ap.part.parts[i]) colors[delta[space_to_local[v]]] = part_color[i];
}

}  // namespace detail

// A coloring of the domain with residues mod p whose stabilizer in g is
// trivial.  Requires p odd and coprime to |g|; g solvable.
inline Coloring regular_coloring(const PermGroup& g, std::uint32_t p) {
  if (!is_prime(p) || p == 2) throw InputError("regular_coloring: p must be an odd prime");
  if (!g.enumerated) throw InputError("regular_coloring: group not enumerated");
  if (g.order() % p == 0) throw InputError("regular_coloring: p divides the group order");

  Coloring out;
  out.n = g.n;
  out.colors.assign(g.n, 0);
  if (g.order() == 1) return out;

  auto orbs = orbits_of(g);
  if (orbs.size() > 1) {
    // Color each orbit through the orbit image; any element fixing the total
    // coloring maps into every orbit-image coloring stabilizer, all trivial.
    for (const auto& orb : orbs) {
      std::uint32_t m = static_cast<std::uint32_t>(orb.size());
      std::vector<std::uint32_t> local_of(g.n, 0);
      for (std::uint32_t i = 0; i < m; ++i) local_of[orb[i]] = i;
      std::vector<Perm> igens;
      for (const auto& s : g.gens) {
        Perm q(m);
        for (std::uint32_t i = 0; i < m; ++i) q[i] = local_of[s[orb[i]]];
        igens.push_back(std::move(q));
      }
      PermGroup img = perm_group(m, std::move(igens));
      enumerate(img);
      Coloring sub = regular_coloring(img, p);
      for (std::uint32_t i = 0; i < m; ++i) out.colors[orb[i]] = sub.colors[i];
    }
    if (coloring_stabilizer_witness(g, out.colors))
      throw Error("regular_coloring: intransitive combination failed");  // cannot happen
    return out;
  }

  if (g.n == 1) return out;

  SetPartition blocks = minimal_blocks(g);
  if (blocks.parts.size() == g.n) {
    // primitive: affine partition, parts colored injectively
    auto rel = realize_affine(g);
    if (!rel) throw Error("regular_coloring: primitive group is not affine");
    AffinePartitionResult ap = affine_partition(rel->space, &rel->image);
    if (ap.part.parts.size() > p) throw Error("regular_coloring: too many parts for p");
    std::vector<std::uint32_t> space_to_point(g.n);
    for (std::uint32_t x = 0; x < g.n; ++x) space_to_point[rel->point_to_space[x]] = x;
    for (std::size_t i = 0; i < ap.part.parts.size(); ++i)
      for (auto v : ap.part.parts[i])
        out.colors[space_to_point[v]] = static_cast<std::uint32_t>(i);
  } else {
    BlockAction act = action_on_blocks(g, blocks);
    Coloring block_colors = regular_coloring(act.image, p);
    for (std::size_t bi = 0; bi < blocks.parts.size(); ++bi)
      detail::color_block(g, blocks.parts[bi], block_colors.colors[bi], p, out.colors);
  }

  if (auto w = coloring_stabilizer_witness(g, out.colors))
    throw Error("regular_coloring: coloring stabilizer not trivial");
  return out;
}

}  // namespace grpbase
