#pragma once

// Extended affine Weyl group W_ext = X_* x| W. An element p^lambda w acts on the
// apartment by v -> lambda + w(v). The base alcove is the one in the anti-dominant
// chamber with the origin in its closure.

#include "weyl.hpp"

#include <functional>
#include <limits>
#include <optional>

namespace nstrat {

struct ExtAffElt {
  Cochar lam;  // translation part
  WeylElt w;   // finite part
  bool operator==(const ExtAffElt&) const = default;
  bool operator<(const ExtAffElt& o) const { return std::tie(lam, w) < std::tie(o.lam, o.w); }
};

inline ExtAffElt ext_identity(const GroupDatum& G) { return {Cochar(G.N, 0), weyl_identity(G)}; }
inline ExtAffElt translation(const GroupDatum& G, const Cochar& lam) {
  if (!satisfies_constraints(G, lam)) throw std::invalid_argument("translation violates the lattice constraints");
  return {lam, weyl_identity(G)};
}
inline ExtAffElt from_weyl(const GroupDatum& G, const WeylElt& w) { return {Cochar(G.N, 0), w}; }

inline ExtAffElt operator*(const ExtAffElt& x, const ExtAffElt& y) {
  return {add_checked(x.lam, act(x.w, y.lam)), x.w * y.w};
}

inline ExtAffElt inverse(const ExtAffElt& x) {
  WeylElt wi = inverse(x.w);
  return {negated(act(wi, x.lam)), wi};
}

inline ExtAffElt sigma(const GroupDatum& G, const ExtAffElt& x) {
  return {permute(G.gamma, x.lam), sigma(G, x.w)};
}

inline ExtAffElt sigma_inverse(const GroupDatum& G, const ExtAffElt& x) {
  return {permute(G.gamma_inv, x.lam), sigma_inverse(G, x.w)};
}

inline ExtAffElt sigma_power(const GroupDatum& G, ExtAffElt x, int k) {
  for (int i = 0; i < k; ++i) x = sigma(G, x);
  return x;
}

// g x sigma(g)^{-1}
inline ExtAffElt sigma_conjugate(const GroupDatum& G, const ExtAffElt& g, const ExtAffElt& x) {
  return g * x * inverse(sigma(G, g));
}

// Number of affine root hyperplanes separating the base alcove from its image.
inline long long length(const GroupDatum& G, const ExtAffElt& x) {
  WeylElt wi = inverse(x.w);
  long long l = 0;
  for (int p : G.positive_roots) {
    long long s = root_pair(G, p, x.lam);
    if (maps_to_positive(G, wi, p))
      l += s < 0 ? -s : s;
    else {
      long long t = s + G.length_offset;
      l += t < 0 ? -t : t;
    }
  }
  return l;
}

// Interior point of the base alcove: <alpha, v> in (-1, 0) for every positive root.
inline RatCochar base_alcove_point(const GroupDatum& G) {
  RatCochar v(G.N);
  for (int a = 0; a < G.N; ++a) v[a] = make_rational(G.index_in_slot(a) + 1, G.n + 1);
  return v;
}

inline RatCochar apply_affine(const ExtAffElt& x, const RatCochar& v) {
  RatCochar r = act(x.w, v);
  for (std::size_t a = 0; a < r.size(); ++a) r[a] += Rational(static_cast<long>(x.lam[a]));
  return r;
}

inline bool in_base_alcove(const GroupDatum& G, const RatCochar& v) {
  for (int p : G.positive_roots) {
    Rational s = root_pair(G, p, v);
    if (!(s > -1 && s < 0)) return false;
  }
  return true;
}

inline bool stabilizes_base_alcove(const GroupDatum& G, const ExtAffElt& x) {
  return in_base_alcove(G, apply_affine(x, base_alcove_point(G)));
}

// ---------------------------------------------------------------------------
// affine roots (alpha, k) <-> root subgroups U_alpha(p^k O). The Iwahori contains
// (alpha, k) for k >= 0 when alpha > 0 and for k >= 1 when alpha < 0.

inline int iwahori_min_level(const GroupDatum& G, int root) { return G.root_positive[root] ? 0 : 1; }

// x . (alpha, k) = (w alpha, k + <w alpha, lambda>)
inline std::pair<int, long long> act_affine_root(const GroupDatum& G, const ExtAffElt& x, int root, long long k) {
  int img = act_root(G, x.w, root);
  return {img, k + root_pair(G, img, x.lam)};
}

inline bool stabilizes_iwahori(const GroupDatum& G, const ExtAffElt& x) {
  for (std::size_t r = 0; r < G.roots.size(); ++r) {
    auto [img, k] = act_affine_root(G, x, static_cast<int>(r), iwahori_min_level(G, static_cast<int>(r)));
    if (k != iwahori_min_level(G, img)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// sigma-conjugacy invariants at the level of W_ext

inline RatCochar newton_point(const GroupDatum& G, const ExtAffElt& x) {
  // phi(mu) = w(gamma(mu)); average lambda over the cycles of phi, then dominantize.
  std::vector<int> phi = compose(x.w.perm, G.gamma);
  RatCochar nu(G.N);
  std::vector<bool> done(G.N, false);
  for (int a = 0; a < G.N; ++a) {
    if (done[a]) continue;
    std::vector<int> cyc;
    for (int b = a; !done[b]; b = phi[b]) {
      done[b] = true;
      cyc.push_back(b);
    }
    Rational s = 0;
    for (int b : cyc) s += Rational(static_cast<long>(x.lam[b]));
    s /= static_cast<long>(cyc.size());
    for (int b : cyc) nu[b] = s;
  }
  return dominantize(G, nu).first;
}

inline std::vector<Integer> kottwitz_point(const GroupDatum& G, const ExtAffElt& x) { return kappa(G, x.lam); }

inline bool is_sigma_straight(const GroupDatum& G, const ExtAffElt& x) {
  return Rational(static_cast<long>(length(G, x))) == 2 * pair(G, G.rho, newton_point(G, x));
}

// x sigma(x) ... sigma^m(x)
inline ExtAffElt sigma_product(const GroupDatum& G, const ExtAffElt& x, int m) {
  ExtAffElt acc = x, cur = x;
  for (int i = 1; i <= m; ++i) {
    cur = sigma(G, cur);
    acc = acc * cur;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// tau_mu: the shortest element of W p^mu W

struct TauMu {
  ExtAffElt tau;
  WeylElt x_mu;  // tau = x_mu p^mu
};

inline TauMu tau_mu(const GroupDatum& G, const Cochar& mu) {
  if (!is_dominant(G, mu)) throw std::invalid_argument("tau_mu requires a dominant cocharacter");
  if (!satisfies_constraints(G, mu)) throw std::invalid_argument("cocharacter violates the lattice constraints");
  long long best = std::numeric_limits<long long>::max();
  int count = 0;
  ExtAffElt arg;
  for (auto& lam : weyl_orbit(G, mu))
    for (auto& v : weyl_elements(G)) {
      ExtAffElt x{lam, v};
      long long l = length(G, x);
      if (l < best) {
        best = l;
        count = 1;
        arg = x;
      } else if (l == best) {
        ++count;
      }
    }
  if (count != 1) throw std::logic_error("shortest element of the double coset is not unique");
  if (act(arg.w, mu) != arg.lam) throw std::logic_error("tau_mu does not factor as x_mu p^mu");
  return {arg, arg.w};
}

// ---------------------------------------------------------------------------
// truncation invariant (w, mu) of an element of W_ext

struct ConjugationStep {
  ExtAffElt conjugator;  // g
  ExtAffElt result;      // g * previous * sigma(g)^{-1}
};

struct TruncationResult {
  WeylElt w;
  Cochar mu;
  int iterations = 0;
  std::vector<ConjugationStep> certificate;
  ExtAffElt tau;
  WeylElt x_mu;
  Mask levi_of_mu = 0;  // sigma^{-1}(S_mu): w is minimal in its left coset by this parabolic
};

inline TruncationResult eo_truncation(const GroupDatum& G, const ExtAffElt& b) {
  TruncationResult res;
  res.mu = dominantize(G, b.lam).first;
  TauMu tm = tau_mu(G, res.mu);
  res.tau = tm.tau;
  res.x_mu = tm.x_mu;
  const ExtAffElt& tau = tm.tau;
  const WeylElt& x_mu = tm.x_mu;

  // Step 1: b = w1 tau w2 with additive lengths, then conjugate by sigma^{-1}(w2).
  const long long lb = length(G, b), lt = length(G, tau);
  std::optional<std::pair<WeylElt, WeylElt>> split;
  ExtAffElt tau_inv = inverse(tau);
  for (auto& w1 : weyl_elements(G)) {
    ExtAffElt rest = tau_inv * from_weyl(G, inverse(w1)) * b;
    if (std::any_of(rest.lam.begin(), rest.lam.end(), [](long long c) { return c != 0; })) continue;
    if (length_finite(G, w1) + lt + length_finite(G, rest.w) != lb) continue;
    split = std::make_pair(w1, rest.w);
    break;
  }
  if (!split) throw std::logic_error("no length-additive factorization through tau_mu");
  ExtAffElt g0 = from_weyl(G, sigma_inverse(G, split->second));
  WeylElt b_cur = sigma_inverse(G, split->second) * split->first;
  ExtAffElt current = sigma_conjugate(G, g0, b);
  if (current != from_weyl(G, b_cur) * tau) throw std::logic_error("initial conjugation mismatch");
  res.certificate.push_back({g0, current});

  // Step 2: descending sequences of parabolics.
  const Mask S = G.all_simple();
  const Mask S_mu = stabilizer_simples(G, res.mu);
  const Mask J1 = sigma_inverse_mask(G, S_mu);
  res.levi_of_mu = J1;
  Mask J_prev = S, Jp_prev = S;
  WeylElt u = weyl_identity(G);
  const int cap = G.num_simple() + 2;
  for (int i = 1;; ++i) {
    if (i > cap) throw std::logic_error("truncation recursion exceeded its iteration bound");
    Mask J_i = conjugate_mask_into(G, u, Jp_prev, J1);
    Mask inner = conjugate_mask(G, u, J_i);
    if ((inner & ~J1) != 0) throw std::logic_error("conjugated parabolic leaves the Levi of mu");
    Mask Jp_i = conjugate_mask(G, x_mu, sigma_mask(G, inner));
    CosetDecomposition dec = min_coset_rep(G, b_cur, J_i, CosetSide::Double, Jp_i);
    const WeylElt& delta = dec.minimal;
    WeylElt g = u * dec.left * inverse(u);
    ExtAffElt gi = from_weyl(G, inverse(g));
    current = sigma_conjugate(G, gi, current);
    WeylElt b_next = dec.right * x_mu * sigma(G, g) * inverse(x_mu);
    u = u * delta;
    if (current != from_weyl(G, u * b_next) * tau) throw std::logic_error("conjugation chain mismatch");
    res.certificate.push_back({gi, current});
    b_cur = b_next;
    res.iterations = i;
    if (J_i == J_prev && Jp_i == Jp_prev) break;
    J_prev = J_i;
    Jp_prev = Jp_i;
  }
  res.w = u;
  return res;
}

// ---------------------------------------------------------------------------
// fundamental elements

struct ParabolicWitness {
  WeylElt v;  // P = v P_J v^{-1}
  Mask J = 0;
};

inline bool root_in_levi(const GroupDatum& G, int root, Mask J) {
  for (int k = 0; k < G.num_simple(); ++k)
    if (G.root_expansion[root][k] != 0 && !mask_has(J, k)) return false;
  return true;
}

inline bool is_fundamental_for(const GroupDatum& G, const ExtAffElt& x, const WeylElt& v, Mask J) {
  // 0: Levi, 1: unipotent radical, 2: opposite radical
  WeylElt vi = inverse(v);
  auto part = [&](int root) {
    int r = act_root(G, vi, root);
    if (root_in_levi(G, r, J)) return 0;
    return G.root_positive[r] ? 1 : 2;
  };
  for (std::size_t r = 0; r < G.roots.size(); ++r) {
    int root = static_cast<int>(r);
    int kind = part(root);
    auto [img, k] = act_affine_root(G, x, root, iwahori_min_level(G, root));
    img = gamma_root(G, img);
    if (part(img) != kind) return false;
    int target = iwahori_min_level(G, img);
    if (kind == 0 && k != target) return false;
    if (kind == 1 && k < target) return false;
    if (kind == 2 && k > target) return false;
  }
  return true;
}

inline std::optional<ParabolicWitness> is_fundamental(const GroupDatum& G, const ExtAffElt& x) {
  const Mask S = G.all_simple();
  for (Mask J = S;; J = (J - 1) & S) {
    for (auto& v : weyl_elements(G))
      if (is_fundamental_for(G, x, v, J)) return ParabolicWitness{v, J};
    if (J == 0) break;
  }
  return std::nullopt;
}

}  // namespace nstrat
