#pragma once

// Dimension formulas for Newton strata, Rapoport-Zink spaces and central leaves,
// their mutual identities, and the Levi-reduction quantities.

#include "newton.hpp"

#include <sstream>

namespace nstrat {

struct StratumReport {
  SigmaClass cls;
  long long defect = 0;
  Rational dim_newton, dim_rz;
  Integer dim_rz_floor;
  Rational dim_central_leaf;
  long long chain_to_mu = 0;
};

inline bool in_BGmu(const GroupDatum& G, const Cochar& mu, const SigmaClass& c) {
  return c.kappa == kappa(G, mu) && leq_dominance(G, c.nu, galois_mean(G, mu));
}

inline void require_in_BGmu(const GroupDatum& G, const Cochar& mu, const SigmaClass& c) {
  if (!in_BGmu(G, mu, c)) throw std::invalid_argument("class does not lie in B(G, mu)");
}

inline Rational half(long long v) { return make_rational(Integer(static_cast<long>(v)), 2); }

inline Rational dim_newton_stratum(const GroupDatum& G, const Cochar& mu, const SigmaClass& c) {
  require_in_BGmu(G, mu, c);
  return pair(G, G.rho, mu) + pair(G, G.rho, c.nu) - half(defect(G, c));
}

inline Rational dim_rz(const GroupDatum& G, const Cochar& mu, const SigmaClass& c) {
  require_in_BGmu(G, mu, c);
  return pair(G, G.rho, mu) - pair(G, G.rho, c.nu) - half(defect(G, c));
}

// Sum over Galois orbits of floor(<orbit weight, mu - nu>).
inline Integer dim_rz_floor(const GroupDatum& G, const Cochar& mu, const SigmaClass& c) {
  require_in_BGmu(G, mu, c);
  RatCochar diff = difference(to_rat(mu), c.nu);
  Integer s = 0;
  for (auto& w : G.orbit_weights) s += floor_of(pair(G, w, diff));
  return s;
}

inline Rational dim_central_leaf(const GroupDatum& G, const SigmaClass& c) { return 2 * pair(G, G.rho, c.nu); }

// Index of the class of p^mu inside an enumeration of B(G, mu).
inline std::size_t top_class_index(const GroupDatum& G, const Cochar& mu, const std::vector<SigmaClass>& cls) {
  RatCochar mubar = galois_mean(G, mu);
  for (std::size_t i = 0; i < cls.size(); ++i)
    if (cls[i].nu == mubar) return i;
  throw std::logic_error("B(G, mu) does not contain the class of p^mu");
}

inline StratumReport stratum_report(const GroupDatum& G, const Cochar& mu, const SigmaClass& c, const SigmaClass& top) {
  StratumReport r;
  r.cls = c;
  r.defect = defect(G, c);
  r.dim_newton = dim_newton_stratum(G, mu, c);
  r.dim_rz = dim_rz(G, mu, c);
  r.dim_rz_floor = dim_rz_floor(G, mu, c);
  r.dim_central_leaf = dim_central_leaf(G, c);
  r.chain_to_mu = chain_length(G, c, top);
  return r;
}

inline std::vector<StratumReport> stratum_reports(const GroupDatum& G, const Cochar& mu,
                                                  const std::vector<SigmaClass>& cls) {
  const SigmaClass& top = cls[top_class_index(G, mu, cls)];
  std::vector<StratumReport> out;
  for (auto& c : cls) out.push_back(stratum_report(G, mu, c, top));
  return out;
}

struct VerificationReport {
  std::size_t num_classes = 0;
  std::size_t num_checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Exhaustive longest chain lengths in the poset, by dynamic programming over
// classes sorted by <rho, nu>.
inline std::vector<std::vector<long long>> longest_chains(const GroupDatum& G, const std::vector<SigmaClass>& cls) {
  const std::size_t m = cls.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pair(G, G.rho, cls[a].nu) < pair(G, G.rho, cls[b].nu); });
  std::vector<std::vector<bool>> lt(m, std::vector<bool>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) lt[i][j] = i != j && leq(G, cls[i], cls[j]);
  std::vector<std::vector<long long>> best(m, std::vector<long long>(m, -1));
  for (std::size_t i = 0; i < m; ++i) {
    best[i][i] = 0;
    for (std::size_t pj : order)
      for (std::size_t pk : order)
        if (lt[pk][pj] && best[i][pk] >= 0) best[i][pj] = std::max(best[i][pj], best[i][pk] + 1);
  }
  return best;
}

inline VerificationReport verify_identities(const GroupDatum& G, const Cochar& mu) {
  VerificationReport rep;
  auto cls = enumerate_BGmu_checked(G, mu);
  auto reports = stratum_reports(G, mu, cls);
  rep.num_classes = cls.size();
  auto check = [&](bool cond, std::size_t i, const std::string& what) {
    ++rep.num_checks;
    if (!cond) rep.failures.push_back("class " + std::to_string(i) + ": " + what);
  };
  const Rational two_rho_mu = 2 * pair(G, G.rho, mu);
  const std::size_t top = top_class_index(G, mu, cls);
  check(reports[top].dim_newton == two_rho_mu, top, "top stratum has dimension <2rho, mu>");
  check(reports[top].dim_rz == 0, top, "top stratum has zero-dimensional RZ space");
  bool has_basic = false;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const auto& r = reports[i];
    has_basic = has_basic || is_basic(G, cls[i]);
    check(in_BGmu(G, mu, cls[i]), i, "Mazur inequality and Kottwitz point");
    check(is_integral(r.dim_newton) && is_integral(r.dim_rz) && is_integral(r.dim_central_leaf), i,
          "dimensions are integers");
    check(r.dim_rz == Rational(r.dim_rz_floor), i, "RZ dimension equals the floor sum");
    check(r.dim_newton == r.dim_rz + r.dim_central_leaf, i, "Newton stratum = RZ space + central leaf");
    check(r.dim_newton == two_rho_mu - Rational(static_cast<long>(r.chain_to_mu)), i,
          "Newton stratum dimension = <2rho, mu> - chain length");
    check(r.defect == defect_by_rank(G, cls[i]), i, "defect agrees with the rank count");
    if (G.kind == GroupKind::RES_GL) check(r.defect == defect_oracle_resgl(G, cls[i]), i, "defect agrees with slopes");
  }
  check(has_basic, 0, "B(G, mu) contains a basic class");
  auto chains = longest_chains(G, cls);
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (std::size_t j = 0; j < cls.size(); ++j) {
      if (i == j || !leq(G, cls[i], cls[j])) continue;
      check(reports[i].dim_newton < reports[j].dim_newton, i, "strict monotonicity towards class " + std::to_string(j));
      if (j == top)
        check(chain_length(G, cls[i], cls[j]) == chains[i][j], i, "chain length formula equals the longest chain to the top class");
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Levi data

struct LeviDatum {
  Mask J = 0;
  Weight rho_M;
  std::vector<Weight> fund_weights_M;                // indexed like the simple roots; zero outside J
  std::vector<std::vector<int>> orbits_M;            // Galois orbits contained in J
};

inline LeviDatum levi_datum(const GroupDatum& G, Mask J) {
  if (!is_gamma_stable(G, J)) throw std::invalid_argument("Levi subset is not Galois stable");
  LeviDatum L;
  L.J = J;
  L.rho_M.assign(G.N, Rational(0));
  for (int p : G.positive_roots)
    if (root_in_levi(G, p, J)) {
      L.rho_M[G.roots[p].a] += make_rational(1, 2);
      L.rho_M[G.roots[p].b] -= make_rational(1, 2);
    }
  std::vector<int> js;
  for (int k = 0; k < G.num_simple(); ++k)
    if (mask_has(J, k)) js.push_back(k);
  L.fund_weights_M.assign(G.num_simple(), Weight(G.N, Rational(0)));
  if (!js.empty()) {
    RatMatrix A(js.size(), js.size());
    for (std::size_t i = 0; i < js.size(); ++i)
      for (std::size_t j = 0; j < js.size(); ++j) A(i, j) = Rational(static_cast<long>(G.cartan[js[i]][js[j]]));
    auto Ainv = inverse(A);
    if (!Ainv) throw std::logic_error("Levi Cartan matrix is singular");
    for (std::size_t i = 0; i < js.size(); ++i)
      for (std::size_t j = 0; j < js.size(); ++j) {
        Weight alpha = ambient_root(G, G.simple[js[j]]);
        for (int a = 0; a < G.N; ++a) L.fund_weights_M[js[i]][a] += (*Ainv)(i, j) * alpha[a];
      }
  }
  for (auto& orb : G.orbits)
    if (mask_has(J, orb.front())) L.orbits_M.push_back(orb);
  return L;
}

template <class V>
bool is_levi_dominant(const GroupDatum& G, Mask J, const V& lam) {
  for (int k = 0; k < G.num_simple(); ++k)
    if (mask_has(J, k) && root_pair(G, G.simple[k], lam) < 0) return false;
  return true;
}

// Defect of a basic class of M_J, given an integral lift of its Levi Kottwitz point.
inline long long levi_defect(const GroupDatum& G, const LeviDatum& L, const Cochar& lift, const RatCochar& nu) {
  RatCochar diff = difference(to_rat(lift), nu);
  Rational s = 0;
  for (auto& orb : L.orbits_M) {
    Weight w(G.N, Rational(0));
    for (int k : orb)
      for (int a = 0; a < G.N; ++a) w[a] += L.fund_weights_M[k][a];
    s += frac_of(pair(G, w, diff));
  }
  s *= 2;
  if (!is_integral(s)) throw std::logic_error("Levi defect is not an integer");
  return to_ll(s.get_num());
}

struct SigmaMuSets {
  std::vector<Cochar> all;    // mu' with dominant representative <= mu
  std::vector<Cochar> m_dom;  // those dominant for M_J
  std::vector<Cochar> m_max;  // maximal among m_dom in the M_J-dominance order
};

// Dominant lattice vectors <= mu, by scanning per-slot non-increasing sequences
// with entries in the coordinate range of mu.
inline std::vector<Cochar> dominant_below(const GroupDatum& G, const Cochar& mu) {
  const long long lo = *std::min_element(mu.begin(), mu.end()), hi = *std::max_element(mu.begin(), mu.end());
  std::vector<Cochar> out;
  Cochar cur(G.N);
  std::function<void(int)> rec = [&](int a) {
    if (a == G.N) {
      if (satisfies_constraints(G, cur) && is_dominant(G, cur) && leq_dominance(G, cur, mu)) out.push_back(cur);
      return;
    }
    long long top = G.index_in_slot(a) == 0 ? hi : cur[a - 1];
    for (long long v = lo; v <= top; ++v) {
      cur[a] = v;
      rec(a + 1);
    }
  };
  rec(0);
  return out;
}

inline SigmaMuSets sigma_mu_sets(const GroupDatum& G, const Cochar& mu, Mask J) {
  if (!is_dominant(G, mu)) throw std::invalid_argument("cocharacter is not dominant");
  SigmaMuSets s;
  std::set<Cochar> all;
  for (auto& d : dominant_below(G, mu))
    for (auto& x : weyl_orbit(G, d)) all.insert(x);
  s.all.assign(all.begin(), all.end());
  for (auto& x : s.all)
    if (is_levi_dominant(G, J, x)) s.m_dom.push_back(x);
  for (auto& x : s.m_dom) {
    bool maximal = true;
    for (auto& y : s.m_dom)
      if (y != x && leq_dominance_levi(G, J, to_rat(x), to_rat(y))) {
        maximal = false;
        break;
      }
    if (maximal) s.m_max.push_back(x);
  }
  return s;
}

// mu_M in Sigma(mu)_{M-dom} with the Levi Kottwitz point of the given M-class.
inline std::vector<Cochar> I_mu_b_M(const GroupDatum& G, const Cochar& mu, const LeviLattice& L,
                                    const std::vector<Integer>& kappa_M) {
  std::vector<Cochar> out;
  for (auto& x : sigma_mu_sets(G, mu, L.J).m_dom)
    if (L.kappa_M(G, x) == kappa_M) out.push_back(x);
  return out;
}

inline Rational d_mu_muM(const GroupDatum& G, const Cochar& mu, const Cochar& mu_M, const LeviDatum& L) {
  return pair(G, G.rho, mu) + pair(G, G.rho, mu_M) - 2 * pair(G, L.rho_M, mu_M);
}

inline Rational fibre_dim(const GroupDatum& G, const Cochar& mu, const Cochar& mu_M, const SigmaClass& c,
                          const LeviDatum& L) {
  return pair(G, G.rho, mu) - pair(G, G.rho, c.nu) - pair(G, L.rho_M, mu_M);
}

// Sum of the negative values <alpha, nu> over the roots of the unipotent radical of P_J.
inline Rational negative_slope_sum(const GroupDatum& G, const RatCochar& nu, Mask J) {
  Rational s = 0;
  for (int p : G.positive_roots) {
    if (root_in_levi(G, p, J)) continue;
    Rational v = root_pair(G, p, nu);
    if (v < 0) s += v;
  }
  return s;
}

// Smallest proper Galois-stable Levi containing a basic representative of c, which is
// then superbasic in that Levi.
inline std::optional<std::pair<Mask, SigmaClass>> superbasic_levi(const GroupDatum& G, const SigmaClass& c) {
  std::optional<std::pair<Mask, SigmaClass>> best;
  for (Mask J : gamma_stable_subsets(G)) {
    if (J == G.all_simple() || (J & ~c.levi_J) != 0) continue;
    if (best && mask_size(J) >= mask_size(best->first)) continue;
    if (auto m = basic_levi_class(G, levi_lattice(G, J), c.nu, c.kappa)) best = std::make_pair(J, *m);
  }
  return best;
}

struct ReductionResult {
  Mask J = 0;
  Rational lhs;                   // RZ dimension of G
  Rational rhs;                   // max over I_{mu,b,M}
  std::vector<Cochar> candidates;
  std::vector<Rational> values;
  bool ok() const { return lhs == rhs; }
};

inline ReductionResult reduction_check(const GroupDatum& G, const Cochar& mu, const SigmaClass& c) {
  auto sb = superbasic_levi(G, c);
  if (!sb) throw std::invalid_argument("class admits no proper Levi in which it is superbasic");
  ReductionResult r;
  r.J = sb->first;
  const SigmaClass& cm = sb->second;
  LeviLattice lat = levi_lattice(G, r.J);
  LeviDatum L = levi_datum(G, r.J);
  r.lhs = dim_rz(G, mu, c);
  r.candidates = I_mu_b_M(G, mu, lat, cm.kappa_M);
  if (r.candidates.empty()) throw std::logic_error("no Levi Hodge point with the Kottwitz point of the class");
  const long long dM = levi_defect(G, L, cm.lift, c.nu);
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    const Cochar& muM = r.candidates[i];
    Rational rz_M = pair(G, L.rho_M, muM) - pair(G, L.rho_M, c.nu) - half(dM);
    r.values.push_back(rz_M + fibre_dim(G, mu, muM, c, L));
    if (i == 0 || r.values.back() > r.rhs) r.rhs = r.values.back();
  }
  return r;
}

}  // namespace nstrat
