#pragma once

// sigma-conjugacy classes: classification by (Newton point, Kottwitz point),
// enumeration of B(G, mu), the partial order, defect and chain lengths.

#include "affine_weyl.hpp"

#include <map>

namespace nstrat {

struct SigmaClass {
  RatCochar nu;                  // dominant, Gamma-invariant
  std::vector<Integer> kappa;    // pi_1(G)_Gamma coordinates
  Mask levi_J = 0;               // simple roots orthogonal to nu
  std::vector<Integer> kappa_M;  // pi_1(M_J)_Gamma coordinates of the lift
  Cochar lift;                   // integral representative with Levi average nu

  bool operator==(const SigmaClass& o) const {
    return nu == o.nu && kappa == o.kappa && levi_J == o.levi_J && kappa_M == o.kappa_M;
  }
  bool operator<(const SigmaClass& o) const {
    return std::tie(nu, kappa, levi_J, kappa_M) < std::tie(o.nu, o.kappa, o.levi_J, o.kappa_M);
  }
};

inline Cochar from_lattice_coords(const GroupDatum& G, const std::vector<Integer>& coords) {
  std::vector<Integer> acc(G.N, Integer(0));
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0)
      for (int a = 0; a < G.N; ++a) acc[a] += coords[i] * Integer(static_cast<long>(G.lattice_basis[i][a]));
  return to_cochar(acc);
}

inline long long floor_div(long long a, long long b) {
  long long q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}
inline long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

inline Mask centralizer_simples(const GroupDatum& G, const RatCochar& nu) {
  Mask J = 0;
  for (int k = 0; k < G.num_simple(); ++k)
    if (root_pair(G, G.simple[k], nu) == 0) J |= Mask(1) << k;
  return J;
}

// pi_1(M_J)_Gamma together with lifts whose Levi averages form an echelon basis
// of the central directions of M_J.
struct LeviLattice {
  Mask J = 0;
  AbelianPresentation pres;
  std::vector<Cochar> torsion_lifts;
  std::vector<Cochar> free_lifts;
  std::vector<std::vector<long long>> echelon;  // denominator * Levi average of each free lift
  std::vector<std::size_t> pivots;
  long long denominator = 1;

  std::vector<Integer> kappa_M(const GroupDatum& G, const Cochar& lam) const {
    return pres.project(lattice_coords(G, lam));
  }
};

inline LeviLattice levi_lattice(const GroupDatum& G, Mask J) {
  if (!is_gamma_stable(G, J)) throw std::invalid_argument("Levi subset is not Galois stable");
  LeviLattice L;
  L.J = J;
  L.pres = levi_pi1_gamma(G, J);
  const std::size_t nt = L.pres.torsion_orders.size(), nf = L.pres.free_rank;
  for (std::size_t j = 0; j < nt; ++j) L.torsion_lifts.push_back(from_lattice_coords(G, L.pres.lift(j)));
  std::vector<Cochar> raw;
  std::vector<RatCochar> avg;
  Integer D = 1;
  for (std::size_t k = 0; k < nf; ++k) {
    raw.push_back(from_lattice_coords(G, L.pres.lift(nt + k)));
    avg.push_back(levi_average(G, J, to_rat(raw.back())));
    for (auto& x : avg.back()) D = lcm_of(D, x.get_den());
  }
  L.denominator = to_ll(D);
  IntMatrix V(nf, G.N);
  for (std::size_t k = 0; k < nf; ++k)
    for (int a = 0; a < G.N; ++a) {
      Rational s = avg[k][a] * Rational(D);
      V(k, a) = s.get_num();
    }
  HermiteForm h = hermite_normal_form(V);
  if (h.pivots.size() != nf) throw std::logic_error("central directions of the Levi are dependent");
  L.pivots = h.pivots;
  for (std::size_t k = 0; k < nf; ++k) {
    std::vector<Integer> acc(G.N, Integer(0));
    for (std::size_t j = 0; j < nf; ++j)
      if (h.T(k, j) != 0)
        for (int a = 0; a < G.N; ++a) acc[a] += h.T(k, j) * Integer(static_cast<long>(raw[j][a]));
    L.free_lifts.push_back(to_cochar(acc));
    std::vector<long long> row(G.N);
    for (int a = 0; a < G.N; ++a) row[a] = to_ll(h.H(k, a));
    L.echelon.push_back(row);
  }
  return L;
}

// Integral combination of the free lifts whose Levi average is nu, if any.
inline std::optional<std::vector<long long>> solve_free_part(const LeviLattice& L, const RatCochar& nu) {
  const std::size_t nf = L.free_lifts.size(), N = nu.size();
  std::vector<long long> target(N);
  for (std::size_t a = 0; a < N; ++a) {
    Rational s = nu[a] * Rational(static_cast<long>(L.denominator));
    if (!is_integral(s)) return std::nullopt;
    target[a] = to_ll(s.get_num());
  }
  std::vector<long long> y(nf), acc(N, 0);
  for (std::size_t k = 0; k < nf; ++k) {
    long long piv = L.echelon[k][L.pivots[k]];
    long long rem = target[L.pivots[k]] - acc[L.pivots[k]];
    if (rem % piv != 0) return std::nullopt;
    y[k] = rem / piv;
    for (std::size_t a = 0; a < N; ++a) acc[a] += y[k] * L.echelon[k][a];
  }
  if (acc != target) return std::nullopt;
  return y;
}

inline Cochar combine_lifts(const GroupDatum& G, const LeviLattice& L, const std::vector<long long>& torsion,
                            const std::vector<long long>& y) {
  Cochar lam(G.N, 0);
  for (std::size_t j = 0; j < torsion.size(); ++j)
    for (int a = 0; a < G.N; ++a) lam[a] += torsion[j] * L.torsion_lifts[j][a];
  for (std::size_t k = 0; k < y.size(); ++k)
    for (int a = 0; a < G.N; ++a) lam[a] += y[k] * L.free_lifts[k][a];
  return lam;
}

// Calls f on every torsion coordinate vector of pi_1(M_J)_Gamma; stops when f returns false.
template <class F>
void for_each_torsion(const LeviLattice& L, F&& f) {
  std::vector<long long> t(L.pres.torsion_orders.size(), 0);
  for (;;) {
    if (!f(t)) return;
    std::size_t j = 0;
    for (; j < t.size(); ++j) {
      if (++t[j] < to_ll(L.pres.torsion_orders[j])) break;
      t[j] = 0;
    }
    if (j == t.size()) return;
  }
}

// The basic class of M_J with Newton point nu mapping to the given Kottwitz point.
inline std::optional<SigmaClass> basic_levi_class(const GroupDatum& G, const LeviLattice& L, const RatCochar& nu,
                                                  const std::vector<Integer>& kappa_G) {
  auto y = solve_free_part(L, nu);
  if (!y) return std::nullopt;
  std::optional<SigmaClass> found;
  int matches = 0;
  for_each_torsion(L, [&](const std::vector<long long>& t) {
    Cochar lam = combine_lifts(G, L, t, *y);
    if (kappa(G, lam) == kappa_G) {
      ++matches;
      if (!found) found = SigmaClass{nu, kappa_G, L.J, L.kappa_M(G, lam), lam};
    }
    return true;
  });
  if (matches > 1) throw std::logic_error("Levi class over a sigma-conjugacy class is not unique");
  return found;
}

inline SigmaClass classify(const GroupDatum& G, const ExtAffElt& x) {
  RatCochar nu = newton_point(G, x);
  std::vector<Integer> kap = kottwitz_point(G, x);
  Mask J = centralizer_simples(G, nu);
  auto c = basic_levi_class(G, levi_lattice(G, J), nu, kap);
  if (!c) throw std::logic_error("no Levi representative for the Newton point of the element");
  return *c;
}

inline bool is_basic(const GroupDatum& G, const SigmaClass& c) { return c.levi_J == G.all_simple(); }

// Basic and not induced from a basic class of any proper Galois-stable Levi.
inline bool is_superbasic(const GroupDatum& G, const SigmaClass& c) {
  if (!is_basic(G, c)) return false;
  for (Mask J : gamma_stable_subsets(G)) {
    if (J == G.all_simple()) continue;
    if (basic_levi_class(G, levi_lattice(G, J), c.nu, c.kappa)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// B(G, mu)

inline RatCochar galois_mean(const GroupDatum& G, const Cochar& mu) { return gamma_average(G, to_rat(mu)); }

// Classes [b] with kappa(b) = kappa(mu) and nu(b) <= the Galois average of mu, found by
// enumerating, for each Galois-stable J, the basic classes of M_J with Newton point
// in the coordinate box spanned by mu widened by `slack`.
inline std::vector<SigmaClass> enumerate_BGmu(const GroupDatum& G, const Cochar& mu, int slack = 0) {
  if (!satisfies_constraints(G, mu)) throw std::invalid_argument("cocharacter violates the lattice constraints");
  if (!is_dominant(G, mu)) throw std::invalid_argument("cocharacter is not dominant");
  const RatCochar mubar = galois_mean(G, mu);
  const std::vector<Integer> kappa_mu = kappa(G, mu);
  Rational lo = *std::min_element(mubar.begin(), mubar.end());
  Rational hi = *std::max_element(mubar.begin(), mubar.end());
  const long long box_lo = to_ll(floor_of(lo)) - slack, box_hi = to_ll(ceil_of(hi)) + slack;

  std::vector<SigmaClass> out;
  for (Mask J : gamma_stable_subsets(G)) {
    LeviLattice L = levi_lattice(G, J);
    const std::size_t nf = L.free_lifts.size();
    const long long D = L.denominator, wlo = box_lo * D, whi = box_hi * D;
    std::vector<long long> y(nf), acc(G.N, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == nf) {
        for (long long v : acc)
          if (v < wlo || v > whi) return;
        for (int s = 0; s < G.num_simple(); ++s) {
          const Root& r = G.roots[G.simple[s]];
          long long p = acc[r.a] - acc[r.b];
          if (mask_has(J, s) ? p != 0 : p <= 0) return;
        }
        RatCochar nu(G.N);
        for (int a = 0; a < G.N; ++a) nu[a] = make_rational(static_cast<long>(acc[a]), static_cast<long>(D));
        for (auto& w : G.fund_weights)
          if (pair(G, w, mubar) < pair(G, w, nu)) return;
        if (!leq_dominance(G, nu, mubar)) return;
        for_each_torsion(L, [&](const std::vector<long long>& t) {
          Cochar lam = combine_lifts(G, L, t, y);
          if (kappa(G, lam) == kappa_mu) out.push_back(SigmaClass{nu, kappa_mu, J, L.kappa_M(G, lam), lam});
          return true;
        });
        return;
      }
      const std::size_t p = L.pivots[k];
      const long long h = L.echelon[k][p];
      const long long partial = acc[p];
      const long long ymin = ceil_div(wlo - partial, h), ymax = floor_div(whi - partial, h);
      for (long long v = ymin; v <= ymax; ++v) {
        y[k] = v;
        for (int a = 0; a < G.N; ++a) acc[a] += v * L.echelon[k][a];
        rec(k + 1);
        for (int a = 0; a < G.N; ++a) acc[a] -= v * L.echelon[k][a];
      }
      y[k] = 0;
    };
    rec(0);
  }
  // Most general first: decreasing <2rho, nu>, then lexicographic.
  std::sort(out.begin(), out.end(), [&](const SigmaClass& a, const SigmaClass& b) {
    Rational pa = pair(G, G.rho, a.nu), pb = pair(G, G.rho, b.nu);
    if (pa != pb) return pa > pb;
    return b < a;
  });
  for (std::size_t i = 1; i < out.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (out[i].levi_J == out[j].levi_J && out[i].kappa_M == out[j].kappa_M)
        throw std::logic_error("duplicate Levi data in B(G, mu)");
  return out;
}

// Enumerates with the default box and with the box widened by 2; throws if they differ.
inline std::vector<SigmaClass> enumerate_BGmu_checked(const GroupDatum& G, const Cochar& mu) {
  auto a = enumerate_BGmu(G, mu, 0);
  auto b = enumerate_BGmu(G, mu, 2);
  if (a != b) throw std::logic_error("B(G, mu) enumeration is not stable under enlarging the search box");
  return a;
}

// ---------------------------------------------------------------------------
// order, defect, chains

inline bool leq(const GroupDatum& G, const SigmaClass& lower, const SigmaClass& upper) {
  return lower.kappa == upper.kappa && leq_dominance(G, lower.nu, upper.nu);
}

// Edges (i, j) of the Hasse diagram with classes[i] < classes[j] covering.
inline std::vector<std::pair<int, int>> hasse_edges(const GroupDatum& G, const std::vector<SigmaClass>& cls) {
  const int m = static_cast<int>(cls.size());
  std::vector<std::vector<bool>> lt(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) lt[i][j] = i != j && leq(G, cls[i], cls[j]);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (!lt[i][j]) continue;
      bool covered = true;
      for (int k = 0; k < m && covered; ++k)
        if (lt[i][k] && lt[k][j]) covered = false;
      if (covered) edges.emplace_back(i, j);
    }
  return edges;
}

inline RatCochar difference(const RatCochar& x, const RatCochar& y) {
  RatCochar r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

// <orbit weight_O, lift - nu> for every Galois orbit O of simple roots.
inline std::vector<Rational> defect_pairings(const GroupDatum& G, const SigmaClass& c) {
  RatCochar diff = difference(to_rat(c.lift), c.nu);
  std::vector<Rational> out;
  for (auto& w : G.orbit_weights) out.push_back(pair(G, w, diff));
  return out;
}

inline long long defect(const GroupDatum& G, const SigmaClass& c) {
  Rational s = 0;
  for (auto& p : defect_pairings(G, c)) s += frac_of(p);
  s *= 2;
  if (!is_integral(s)) throw std::logic_error("defect is not an integer");
  return to_ll(s.get_num());
}

// Number of orbits minus the number of orbits with integral pairing.
inline long long defect_by_rank(const GroupDatum& G, const SigmaClass& c) {
  long long integral = 0;
  for (auto& p : defect_pairings(G, c))
    if (is_integral(p)) ++integral;
  return static_cast<long long>(G.orbits.size()) - integral;
}

// Rank of G minus the split rank of the sigma-centralizer, from the slope decomposition
// of the Newton point of a Weil restriction of GL_n.
inline long long defect_oracle_resgl(const GroupDatum& G, const SigmaClass& c) {
  if (G.kind != GroupKind::RES_GL) throw std::invalid_argument("slope oracle only applies to gl");
  std::map<Rational, long long> mult;
  for (int i = 0; i < G.n; ++i) ++mult[c.nu[i]];
  Rational rank_J = 0;
  for (auto& [slope, m] : mult) {
    Rational s = slope * G.d;
    rank_J += Rational(static_cast<long>(m)) / Rational(s.get_den());
  }
  if (!is_integral(rank_J)) throw std::logic_error("centralizer rank is not an integer");
  return G.n - to_ll(rank_J.get_num());
}

inline long long chain_length(const GroupDatum& G, const SigmaClass& lower, const SigmaClass& upper) {
  if (!leq(G, lower, upper)) throw std::invalid_argument("chain_length requires comparable classes");
  RatCochar diff = difference(upper.nu, lower.nu);
  Integer s = 0;
  for (auto& w : G.orbit_weights) s += ceil_of(pair(G, w, diff));
  return to_ll(s);
}

}  // namespace nstrat
