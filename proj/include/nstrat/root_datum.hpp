#pragma once

// Root data of Res GL_n, Res GSp_n and Res GU_n over an unramified extension of
// degree d, realized inside the ambient lattice Z^{d x n} with coordinates e_{tau,i}.
//
// Ambient index of (tau, i) is tau * n + i, with 0-based i. For the symplectic and
// unitary kinds the cocharacter lattice is cut out by the requirement that
// lambda_a + lambda_{partner(a)} takes the same value c(lambda) for every index a.

#include "exact_linalg.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nstrat {

enum class GroupKind { RES_GL, RES_GSP, RES_GU };

using Cochar = std::vector<long long>;   // integral ambient vector
using RatCochar = std::vector<Rational>;  // rational ambient vector
using Weight = std::vector<Rational>;     // ambient representative of a functional
using Mask = std::uint64_t;               // subset of simple roots by position

inline bool mask_has(Mask m, int k) { return (m >> k) & 1u; }
inline int mask_size(Mask m) { return __builtin_popcountll(m); }

struct Root {
  int a = 0, b = 0;  // the functional e_a - e_b
  bool operator==(const Root&) const = default;
};

// Finite Weyl group element, stored as the permutation of ambient indices it induces:
// (w lambda)[perm[a]] = lambda[a].
struct WeylElt {
  std::vector<int> perm;
  bool operator==(const WeylElt&) const = default;
  bool operator<(const WeylElt& o) const { return perm < o.perm; }
};

// Full list of Weyl group elements, enumerated lazily (see weyl.hpp).
struct WeylCache {
  std::once_flag once;
  std::vector<WeylElt> elements;
};

struct GroupDatum {
  GroupKind kind = GroupKind::RES_GL;
  int n = 0, d = 0, N = 0;

  std::vector<int> gamma, gamma_inv;  // Galois generator on ambient indices
  std::vector<int> partner;           // empty for RES_GL
  std::vector<Cochar> constraints;    // integral functionals vanishing on the lattice

  std::vector<Root> roots;            // canonical ambient representatives, all roots
  std::vector<int> root_lookup;       // (a * N + b) -> root index, for either representative
  std::vector<bool> root_positive;
  std::vector<int> positive_roots;
  std::vector<int> root_negative;     // index of -alpha
  std::vector<Cochar> root_coroots;
  std::vector<std::vector<long long>> root_expansion;  // coefficients on simple roots

  std::vector<int> simple;            // root indices of simple roots
  std::vector<int> simple_slot;
  std::vector<int> simple_pos;        // root index -> simple position or -1
  std::vector<WeylElt> simple_reflections;
  std::vector<Cochar> simple_coroots;
  std::vector<std::vector<long long>> cartan;  // cartan[i][j] = <alpha_i, alpha_j^vee>
  std::vector<int> galois_simple;     // permutation of simple positions induced by gamma
  std::vector<std::vector<int>> orbits;  // Galois orbits of simple positions
  std::vector<int> orbit_of;

  std::vector<Weight> fund_weights;
  std::vector<Weight> orbit_weights;
  Weight rho;

  std::vector<Mask> components;       // connected components of the Dynkin diagram
  std::vector<int> highest_roots;     // one per component

  std::vector<Cochar> lattice_basis;  // integral basis of the cocharacter lattice
  IntMatrix lattice_coord_rows;       // coords = rows * lambda for lambda in the lattice

  AbelianPresentation pi1;            // X_* / coroot lattice
  AbelianPresentation pi1_gamma;      // its Galois coinvariants

  // Offset in the affine length formula for roots made negative by w^{-1}:
  // |<alpha, lambda> + length_offset|. Fixed by the anti-dominant base alcove.
  int length_offset = 1;

  std::shared_ptr<WeylCache> weyl_cache;

  int num_simple() const { return static_cast<int>(simple.size()); }
  Mask all_simple() const { return simple.empty() ? 0 : ((Mask(1) << simple.size()) - 1); }
  int slot(int a) const { return a / n; }
  int index_in_slot(int a) const { return a % n; }
  bool is_pel() const { return kind != GroupKind::RES_GL; }

  int root_index(int a, int b) const {
    int r = root_lookup[static_cast<std::size_t>(a) * N + b];
    if (r < 0) throw std::logic_error("not a root");
    return r;
  }

  std::string name() const {
    const char* k = kind == GroupKind::RES_GL ? "gl" : kind == GroupKind::RES_GSP ? "gsp" : "gu";
    return std::string(k) + "(n=" + std::to_string(n) + ",d=" + std::to_string(d) + ")";
  }
};

inline std::vector<int> compose(const std::vector<int>& u, const std::vector<int>& v) {
  std::vector<int> r(v.size());
  for (std::size_t a = 0; a < v.size(); ++a) r[a] = u[v[a]];
  return r;
}

inline std::vector<int> invert_perm(const std::vector<int>& u) {
  std::vector<int> r(u.size());
  for (std::size_t a = 0; a < u.size(); ++a) r[u[a]] = static_cast<int>(a);
  return r;
}

template <class T>
std::vector<T> permute(const std::vector<int>& perm, const std::vector<T>& v) {
  std::vector<T> r(v.size());
  for (std::size_t a = 0; a < v.size(); ++a) r[perm[a]] = v[a];
  return r;
}

inline RatCochar to_rat(const Cochar& v) {
  RatCochar r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(static_cast<long>(v[i]));
  return r;
}

inline std::vector<Integer> to_integer(const Cochar& v) {
  std::vector<Integer> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Integer(static_cast<long>(v[i]));
  return r;
}

inline Cochar to_cochar(const std::vector<Integer>& v) {
  Cochar r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = to_ll(v[i]);
  return r;
}

inline Cochar add_checked(const Cochar& x, const Cochar& y) {
  Cochar r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (__builtin_add_overflow(x[i], y[i], &r[i])) throw std::overflow_error("cocharacter overflow");
  return r;
}

inline Cochar negated(const Cochar& x) {
  Cochar r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = -x[i];
  return r;
}

// ---------------------------------------------------------------------------
// pairings and lattice membership

inline void check_length(const GroupDatum& G, std::size_t len) {
  if (static_cast<int>(len) != G.N)
    throw std::invalid_argument("vector length " + std::to_string(len) + " does not match " + G.name());
}

inline Rational pair(const GroupDatum& G, const Weight& chi, const RatCochar& lam) {
  check_length(G, chi.size());
  check_length(G, lam.size());
  Rational s = 0;
  for (int a = 0; a < G.N; ++a)
    if (chi[a] != 0) s += chi[a] * lam[a];
  return s;
}

inline Rational pair(const GroupDatum& G, const Weight& chi, const Cochar& lam) {
  check_length(G, chi.size());
  check_length(G, lam.size());
  Rational s = 0;
  for (int a = 0; a < G.N; ++a)
    if (chi[a] != 0 && lam[a] != 0) s += chi[a] * Rational(static_cast<long>(lam[a]));
  return s;
}

inline long long root_pair(const GroupDatum& G, int root, const Cochar& lam) {
  const Root& r = G.roots[root];
  return lam[r.a] - lam[r.b];
}

inline Rational root_pair(const GroupDatum& G, int root, const RatCochar& lam) {
  const Root& r = G.roots[root];
  return lam[r.a] - lam[r.b];
}

template <class V>
bool satisfies_constraints(const GroupDatum& G, const V& lam) {
  if (static_cast<int>(lam.size()) != G.N) return false;
  for (auto& c : G.constraints) {
    typename V::value_type s = 0;
    for (int a = 0; a < G.N; ++a)
      if (c[a] != 0) s += static_cast<long>(c[a]) * lam[a];
    if (s != 0) return false;
  }
  return true;
}

// c(lambda) for the PEL kinds, cross-checked on every index pair.
template <class V>
typename V::value_type similitude_value(const GroupDatum& G, const V& lam) {
  if (!G.is_pel()) throw std::logic_error("similitude value only defined for gsp/gu");
  typename V::value_type c = lam[0] + lam[G.partner[0]];
  for (int a = 0; a < G.N; ++a)
    if (lam[a] + lam[G.partner[a]] != c) throw std::invalid_argument("vector violates the similitude constraint");
  return c;
}

template <class V>
bool is_dominant(const GroupDatum& G, const V& lam) {
  for (int k = 0; k < G.num_simple(); ++k)
    if (root_pair(G, G.simple[k], lam) < 0) return false;
  return true;
}

inline std::vector<Integer> lattice_coords(const GroupDatum& G, const Cochar& lam) {
  if (!satisfies_constraints(G, lam)) throw std::invalid_argument("cocharacter violates the lattice constraints");
  return G.lattice_coord_rows * to_integer(lam);
}

inline std::vector<Integer> kappa(const GroupDatum& G, const Cochar& lam) {
  return G.pi1_gamma.project(lattice_coords(G, lam));
}

// Two weights agree as functionals on the cocharacter lattice.
inline bool weights_equal(const GroupDatum& G, const Weight& x, const Weight& y) {
  for (auto& b : G.lattice_basis)
    if (pair(G, x, b) != pair(G, y, b)) return false;
  return true;
}

inline Weight ambient_root(const GroupDatum& G, int root) {
  Weight w(G.N, Rational(0));
  w[G.roots[root].a] += 1;
  w[G.roots[root].b] -= 1;
  return w;
}

// ---------------------------------------------------------------------------
// reflections

inline std::vector<int> reflection_perm(const GroupDatum& G, int root) {
  std::vector<int> p(G.N);
  std::iota(p.begin(), p.end(), 0);
  int a = G.roots[root].a, b = G.roots[root].b;
  std::swap(p[a], p[b]);
  if (G.is_pel() && G.partner[a] != b) std::swap(p[G.partner[a]], p[G.partner[b]]);
  return p;
}

inline WeylElt weyl_identity(const GroupDatum& G) {
  WeylElt w;
  w.perm.resize(G.N);
  std::iota(w.perm.begin(), w.perm.end(), 0);
  return w;
}

inline const WeylElt& simple_reflection(const GroupDatum& G, int k) { return G.simple_reflections[k]; }

inline WeylElt operator*(const WeylElt& u, const WeylElt& v) { return WeylElt{compose(u.perm, v.perm)}; }

inline WeylElt inverse(const WeylElt& u) { return WeylElt{invert_perm(u.perm)}; }

template <class T>
std::vector<T> act(const WeylElt& w, const std::vector<T>& lam) {
  return permute(w.perm, lam);
}

// Image of a root under w, as a root index.
inline int act_root(const GroupDatum& G, const WeylElt& w, int root) {
  return G.root_index(w.perm[G.roots[root].a], w.perm[G.roots[root].b]);
}

inline int gamma_root(const GroupDatum& G, int root) {
  return G.root_index(G.gamma[G.roots[root].a], G.gamma[G.roots[root].b]);
}

template <class V>
std::pair<V, WeylElt> dominantize(const GroupDatum& G, V lam) {
  check_length(G, lam.size());
  WeylElt w = weyl_identity(G);
  for (bool changed = true; changed;) {
    changed = false;
    for (int k = 0; k < G.num_simple(); ++k) {
      if (root_pair(G, G.simple[k], lam) < 0) {
        WeylElt s = simple_reflection(G, k);
        lam = act(s, lam);
        w = s * w;
        changed = true;
      }
    }
  }
  return {lam, w};
}

// Subset of simple positions whose reflections fix a dominant cocharacter.
template <class V>
Mask stabilizer_simples(const GroupDatum& G, const V& mu) {
  if (!is_dominant(G, mu)) throw std::invalid_argument("stabilizer_simples requires a dominant cocharacter");
  Mask m = 0;
  for (int k = 0; k < G.num_simple(); ++k)
    if (root_pair(G, G.simple[k], mu) == 0) m |= Mask(1) << k;
  return m;
}

// ---------------------------------------------------------------------------
// Levi data and dominance order

inline RatCochar gamma_average(const GroupDatum& G, const RatCochar& lam) {
  RatCochar acc(G.N, Rational(0)), cur = lam;
  for (int t = 0; t < G.d; ++t) {
    for (int a = 0; a < G.N; ++a) acc[a] += cur[a];
    cur = permute(G.gamma, cur);
  }
  for (auto& x : acc) x /= G.d;
  return acc;
}

// Average over W_J: subtract the unique J-coroot combination making the result
// orthogonal to the roots in J.
inline RatCochar weyl_levi_average(const GroupDatum& G, Mask J, const RatCochar& lam) {
  std::vector<int> js;
  for (int k = 0; k < G.num_simple(); ++k)
    if (mask_has(J, k)) js.push_back(k);
  if (js.empty()) return lam;
  RatMatrix A(js.size(), js.size());
  std::vector<Rational> rhs(js.size());
  for (std::size_t i = 0; i < js.size(); ++i) {
    for (std::size_t j = 0; j < js.size(); ++j) A(i, j) = Rational(static_cast<long>(G.cartan[js[i]][js[j]]));
    rhs[i] = root_pair(G, G.simple[js[i]], lam);
  }
  auto sol = solve_rational(A, rhs);
  if (!sol) throw std::logic_error("Levi Cartan system is singular");
  RatCochar out = lam;
  for (std::size_t j = 0; j < js.size(); ++j)
    for (int a = 0; a < G.N; ++a)
      out[a] -= sol->particular[j] * Rational(static_cast<long>(G.simple_coroots[js[j]][a]));
  return out;
}

// Average over W_J x Gamma, for Gamma-stable J.
inline RatCochar levi_average(const GroupDatum& G, Mask J, const RatCochar& lam) {
  return gamma_average(G, weyl_levi_average(G, J, lam));
}

inline bool is_gamma_stable(const GroupDatum& G, Mask J) {
  for (int k = 0; k < G.num_simple(); ++k)
    if (mask_has(J, k) && !mask_has(J, G.galois_simple[k])) return false;
  return true;
}

inline std::vector<Mask> gamma_stable_subsets(const GroupDatum& G) {
  std::vector<Mask> out;
  const std::size_t l = G.orbits.size();
  for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << l); ++bits) {
    Mask J = 0;
    for (std::size_t o = 0; o < l; ++o)
      if ((bits >> o) & 1u)
        for (int k : G.orbits[o]) J |= Mask(1) << k;
    out.push_back(J);
  }
  return out;
}

// Coefficients of lam - lam_low on the simple coroots in J; nullopt if not in their span.
inline std::optional<std::vector<Rational>> coroot_coefficients(const GroupDatum& G, Mask J, const RatCochar& diff) {
  std::vector<int> js;
  for (int k = 0; k < G.num_simple(); ++k)
    if (mask_has(J, k)) js.push_back(k);
  RatMatrix A(G.N, js.size());
  for (int a = 0; a < G.N; ++a)
    for (std::size_t j = 0; j < js.size(); ++j) A(a, j) = Rational(static_cast<long>(G.simple_coroots[js[j]][a]));
  auto sol = solve_rational(A, diff);
  if (!sol) return std::nullopt;
  return sol->particular;
}

// lam_low <= lam in the order spanned by the positive coroots of J.
inline bool leq_dominance_levi(const GroupDatum& G, Mask J, const RatCochar& lam_low, const RatCochar& lam) {
  check_length(G, lam_low.size());
  check_length(G, lam.size());
  RatCochar diff(G.N);
  for (int a = 0; a < G.N; ++a) diff[a] = lam[a] - lam_low[a];
  auto c = coroot_coefficients(G, J, diff);
  if (!c) return false;
  for (auto& x : *c)
    if (x < 0) return false;
  return true;
}

inline bool leq_dominance(const GroupDatum& G, const RatCochar& lam_low, const RatCochar& lam) {
  return leq_dominance_levi(G, G.all_simple(), lam_low, lam);
}

inline bool leq_dominance(const GroupDatum& G, const Cochar& lam_low, const Cochar& lam) {
  return leq_dominance(G, to_rat(lam_low), to_rat(lam));
}

inline std::vector<std::vector<Integer>> gamma_relations(const GroupDatum& G) {
  std::vector<std::vector<Integer>> rels;
  for (auto& b : G.lattice_basis) {
    Cochar gb = permute(G.gamma, b);
    Cochar diff(G.N);
    for (int a = 0; a < G.N; ++a) diff[a] = gb[a] - b[a];
    rels.push_back(lattice_coords(G, diff));
  }
  return rels;
}

// pi_1(M_J)_Gamma on lattice coordinates.
inline AbelianPresentation levi_pi1_gamma(const GroupDatum& G, Mask J) {
  std::vector<std::vector<Integer>> rels;
  for (int k = 0; k < G.num_simple(); ++k)
    if (mask_has(J, k)) rels.push_back(lattice_coords(G, G.simple_coroots[k]));
  for (auto& r : gamma_relations(G)) rels.push_back(r);
  return quotient_presentation(G.lattice_basis.size(), rels);
}

// ---------------------------------------------------------------------------
// construction

namespace detail {

inline Root canonical_root(const GroupDatum& G, int a, int b) {
  Root r{a, b};
  if (G.is_pel()) {
    Root alt{G.partner[b], G.partner[a]};
    if (std::make_pair(alt.a, alt.b) < std::make_pair(r.a, r.b)) r = alt;
  }
  return r;
}

inline void build_roots(GroupDatum& G) {
  std::map<std::pair<int, int>, int> index;
  G.root_lookup.assign(static_cast<std::size_t>(G.N) * G.N, -1);
  for (int a = 0; a < G.N; ++a)
    for (int b = 0; b < G.N; ++b) {
      if (a == b || G.slot(a) != G.slot(b)) continue;
      Root r = canonical_root(G, a, b);
      auto key = std::make_pair(r.a, r.b);
      auto it = index.find(key);
      int idx;
      if (it == index.end()) {
        idx = static_cast<int>(G.roots.size());
        index.emplace(key, idx);
        G.roots.push_back(r);
      } else {
        idx = it->second;
      }
      G.root_lookup[static_cast<std::size_t>(a) * G.N + b] = idx;
    }
  for (std::size_t r = 0; r < G.roots.size(); ++r) {
    const Root& rt = G.roots[r];
    bool pos = G.index_in_slot(rt.a) < G.index_in_slot(rt.b);
    G.root_positive.push_back(pos);
    if (pos) G.positive_roots.push_back(static_cast<int>(r));
    G.root_negative.push_back(G.root_index(rt.b, rt.a));
    Cochar co(G.N, 0);
    co[rt.a] += 1;
    co[rt.b] -= 1;
    if (G.is_pel() && G.partner[rt.a] != rt.b) {
      co[G.partner[rt.b]] += 1;
      co[G.partner[rt.a]] -= 1;
    }
    G.root_coroots.push_back(co);
  }
}

inline void build_simple(GroupDatum& G) {
  int reps = G.kind == GroupKind::RES_GU ? G.d / 2 : G.d;
  int per_slot = G.kind == GroupKind::RES_GSP ? G.n / 2 : G.n - 1;
  for (int t = 0; t < reps; ++t)
    for (int i = 0; i < per_slot; ++i) {
      int a = t * G.n + i;
      G.simple.push_back(G.root_index(a, a + 1));
      G.simple_slot.push_back(t);
    }
  const int r = G.num_simple();
  G.simple_pos.assign(G.roots.size(), -1);
  for (int k = 0; k < r; ++k) {
    G.simple_coroots.push_back(G.root_coroots[G.simple[k]]);
    G.simple_pos[G.simple[k]] = k;
    G.simple_reflections.push_back(WeylElt{reflection_perm(G, G.simple[k])});
  }
  G.cartan.assign(r, std::vector<long long>(r, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) G.cartan[i][j] = root_pair(G, G.simple[i], G.simple_coroots[j]);
  for (int i = 0; i < r; ++i)
    if (G.cartan[i][i] != 2) throw std::logic_error("simple root does not pair to 2 with its coroot");

  std::map<int, int> pos_of;
  for (int k = 0; k < r; ++k) pos_of[G.simple[k]] = k;
  for (int k = 0; k < r; ++k) {
    auto it = pos_of.find(gamma_root(G, G.simple[k]));
    if (it == pos_of.end()) throw std::logic_error("Galois action does not permute the simple roots");
    G.galois_simple.push_back(it->second);
  }
  G.orbit_of.assign(r, -1);
  for (int k = 0; k < r; ++k) {
    if (G.orbit_of[k] >= 0) continue;
    std::vector<int> orb;
    for (int j = k; G.orbit_of[j] < 0; j = G.galois_simple[j]) {
      G.orbit_of[j] = static_cast<int>(G.orbits.size());
      orb.push_back(j);
    }
    std::sort(orb.begin(), orb.end());
    G.orbits.push_back(orb);
  }
}

inline void build_weights(GroupDatum& G) {
  const int r = G.num_simple();
  G.rho.assign(G.N, Rational(0));
  for (int p : G.positive_roots) {
    G.rho[G.roots[p].a] += Rational(1, 2);
    G.rho[G.roots[p].b] -= Rational(1, 2);
  }
  if (r == 0) return;
  RatMatrix A(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) A(i, j) = Rational(static_cast<long>(G.cartan[i][j]));
  auto Ainv = inverse(A);
  if (!Ainv) throw std::logic_error("Cartan matrix is singular");
  for (int k = 0; k < r; ++k) {
    Weight w(G.N, Rational(0));
    for (int j = 0; j < r; ++j) {
      const Root& rt = G.roots[G.simple[j]];
      w[rt.a] += (*Ainv)(k, j);
      w[rt.b] -= (*Ainv)(k, j);
    }
    G.fund_weights.push_back(w);
  }
  for (auto& orb : G.orbits) {
    Weight w(G.N, Rational(0));
    for (int k : orb)
      for (int a = 0; a < G.N; ++a) w[a] += G.fund_weights[k][a];
    G.orbit_weights.push_back(w);
  }
}

inline void build_expansions(GroupDatum& G) {
  const int r = G.num_simple();
  // A root is determined by its pairings with the simple coroots: solve with the Cartan matrix.
  RatMatrix A(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) A(j, i) = Rational(static_cast<long>(G.cartan[i][j]));
  for (std::size_t x = 0; x < G.roots.size(); ++x) {
    std::vector<Rational> rhs(r);
    for (int j = 0; j < r; ++j) rhs[j] = Rational(static_cast<long>(root_pair(G, static_cast<int>(x), G.simple_coroots[j])));
    auto sol = solve_rational(A, rhs);
    if (!sol) throw std::logic_error("root outside the simple-root span");
    std::vector<long long> c(r);
    for (int i = 0; i < r; ++i) {
      if (!is_integral(sol->particular[i])) throw std::logic_error("non-integral root expansion");
      c[i] = to_ll(sol->particular[i].get_num());
    }
    G.root_expansion.push_back(c);
  }
  // Dynkin components and their highest roots.
  std::vector<int> comp(r, -1);
  for (int k = 0; k < r; ++k) {
    if (comp[k] >= 0) continue;
    Mask m = 0;
    std::vector<int> stack{k};
    comp[k] = static_cast<int>(G.components.size());
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      m |= Mask(1) << i;
      for (int j = 0; j < r; ++j)
        if (comp[j] < 0 && G.cartan[i][j] != 0) {
          comp[j] = comp[k];
          stack.push_back(j);
        }
    }
    G.components.push_back(m);
  }
  for (Mask m : G.components) {
    int best = -1;
    long long best_height = -1;
    for (int p : G.positive_roots) {
      long long h = 0;
      bool inside = true;
      for (int i = 0; i < r; ++i) {
        if (G.root_expansion[p][i] != 0 && !mask_has(m, i)) inside = false;
        h += G.root_expansion[p][i];
      }
      if (inside && h > best_height) {
        best_height = h;
        best = p;
      }
    }
    G.highest_roots.push_back(best);
  }
}

inline void build_lattice(GroupDatum& G) {
  if (G.constraints.empty()) {
    for (int a = 0; a < G.N; ++a) {
      Cochar e(G.N, 0);
      e[a] = 1;
      G.lattice_basis.push_back(e);
    }
    G.lattice_coord_rows = IntMatrix::identity(G.N);
  } else {
    std::vector<std::vector<Integer>> rows;
    for (auto& c : G.constraints) rows.push_back(to_integer(c));
    IntMatrix C = IntMatrix::from_rows(rows, G.N);
    SmithForm snf = smith_normal_form(C);
    IntMatrix Vinv = unimodular_inverse(snf.V);
    const std::size_t rank = snf.rank;
    G.lattice_coord_rows = IntMatrix(G.N - rank, G.N);
    for (std::size_t j = rank; j < static_cast<std::size_t>(G.N); ++j) {
      G.lattice_basis.push_back(to_cochar(snf.V.column(j)));
      for (int a = 0; a < G.N; ++a) G.lattice_coord_rows(j - rank, a) = Vinv(j, a);
    }
  }
  std::vector<std::vector<Integer>> rels;
  for (auto& co : G.simple_coroots) rels.push_back(lattice_coords(G, co));
  G.pi1 = quotient_presentation(G.lattice_basis.size(), rels);
  G.pi1_gamma = levi_pi1_gamma(G, G.all_simple());
}

inline void validate(const GroupDatum& G) {
  for (auto& co : G.simple_coroots)
    if (!satisfies_constraints(G, co)) throw std::logic_error("coroot violates lattice constraints");
  for (auto& b : G.lattice_basis)
    if (!satisfies_constraints(G, permute(G.gamma, b))) throw std::logic_error("Galois action does not preserve the lattice");
  for (int k = 0; k < G.num_simple(); ++k)
    if (pair(G, G.rho, G.simple_coroots[k]) != 1) throw std::logic_error("rho does not pair to 1 with a simple coroot");
}

}  // namespace detail

inline GroupDatum build_group(GroupKind kind, int n, int d) {
  if (n < 1 || d < 1) throw std::invalid_argument("n and d must be at least 1");
  if (kind == GroupKind::RES_GSP && n % 2 != 0) throw std::invalid_argument("gsp: n must be even");
  if (kind == GroupKind::RES_GU && d % 2 != 0) throw std::invalid_argument("gu: d must be even");
  if (static_cast<long long>(n) * d > 64) throw std::invalid_argument("ambient rank above 64 is not supported");
  GroupDatum G;
  G.kind = kind;
  G.n = n;
  G.d = d;
  G.N = n * d;
  G.gamma.resize(G.N);
  for (int a = 0; a < G.N; ++a) G.gamma[a] = ((G.slot(a) + 1) % d) * n + G.index_in_slot(a);
  G.gamma_inv = invert_perm(G.gamma);
  if (kind != GroupKind::RES_GL) {
    G.partner.resize(G.N);
    for (int a = 0; a < G.N; ++a) {
      int t = G.slot(a), i = G.index_in_slot(a);
      int t2 = kind == GroupKind::RES_GSP ? t : (t + d / 2) % d;
      G.partner[a] = t2 * n + (n - 1 - i);
    }
    for (int a = 1; a < G.N; ++a) {
      Cochar c(G.N, 0);
      c[a] += 1;
      c[G.partner[a]] += 1;
      c[0] -= 1;
      c[G.partner[0]] -= 1;
      bool zero = std::all_of(c.begin(), c.end(), [](long long x) { return x == 0; });
      if (!zero) G.constraints.push_back(c);
    }
  }
  detail::build_roots(G);
  detail::build_simple(G);
  detail::build_weights(G);
  detail::build_expansions(G);
  detail::build_lattice(G);
  detail::validate(G);
  G.weyl_cache = std::make_shared<WeylCache>();
  return G;
}

}  // namespace nstrat
