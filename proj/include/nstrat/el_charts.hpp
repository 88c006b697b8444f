#pragma once

// Superbasic EL combinatorics: small EL-charts in d copies of Z given by a cycle
// (b_0, eps), their Hodge points and V-sets, exhaustive enumeration, and the
// resulting Rapoport-Zink dimension.
//
// Position i of the cycle lies in copy i mod d. The shift map sends a in copy t to
// a + m_{t+1} in copy t+1, and b_{i+1} = shift(b_i) - h * eps_i. Dominance in this
// module is with respect to lower triangular matrices: a Hodge point is (0,...,0,1,...,1).

#include "newton.hpp"

#include <numeric>

namespace nstrat {

struct ELChartParams {
  int d = 1;
  int h = 1;
  std::vector<int> m_seq;  // m_t for t in Z/d
  int m() const { return std::accumulate(m_seq.begin(), m_seq.end(), 0); }
};

inline void check_params(const ELChartParams& p) {
  if (p.d < 1 || p.h < 1) throw std::invalid_argument("EL-chart parameters need d >= 1 and h >= 1");
  if (static_cast<int>(p.m_seq.size()) != p.d) throw std::invalid_argument("m_seq must have d entries");
  for (int v : p.m_seq)
    if (v < 0 || v > p.h) throw std::invalid_argument("m_seq entries must lie in [0, h] for a minuscule Hodge point");
  if (std::gcd(p.m(), p.h) != 1) throw std::invalid_argument("m and h must be coprime for a superbasic class");
}

struct ELElement {
  long long value;
  int copy;
  auto operator<=>(const ELElement&) const = default;
};

struct ELChart {
  ELChartParams params;
  long long b0 = 0;
  std::vector<int> eps;  // length d*h, entries 0 or 1

  // b_0, ..., b_{dh}; the last entry closes the cycle when the chart is valid.
  std::vector<long long> sequence() const {
    const int len = params.d * params.h;
    std::vector<long long> b(len + 1);
    b[0] = b0;
    for (int i = 0; i < len; ++i) b[i + 1] = b[i] + params.m_seq[(i + 1) % params.d] - params.h * eps[i];
    return b;
  }
  int copy_of(int i) const { return i % params.d; }
  bool in_B_minus(int i) const { return eps[i] == 1; }
};

inline long long mod_floor(long long a, long long h) { return ((a % h) + h) % h; }

// The elements of B in copy t, sorted.
inline std::vector<long long> B_copy(const ELChart& A, int t) {
  auto b = A.sequence();
  std::vector<long long> out;
  for (int i = 0; i < A.params.d * A.params.h; ++i)
    if (A.copy_of(i) == t) out.push_back(b[i]);
  std::sort(out.begin(), out.end());
  return out;
}

struct ValidationResult {
  bool valid = true;
  bool normalized = false;
  std::vector<std::string> diagnostics;
};

inline ValidationResult validate(const ELChart& A) {
  ValidationResult r;
  auto fail = [&](const std::string& s) {
    r.valid = false;
    r.diagnostics.push_back(s);
  };
  const ELChartParams& p = A.params;
  const int len = p.d * p.h;
  if (p.d < 1 || p.h < 1 || static_cast<int>(p.m_seq.size()) != p.d) {
    fail("params: malformed parameters");
    return r;
  }
  if (static_cast<int>(A.eps.size()) != len) {
    fail("eps: sequence must have length d*h");
    return r;
  }
  for (int e : A.eps)
    if (e != 0 && e != 1) fail("eps: entries must be 0 or 1");
  if (!r.valid) return r;
  auto b = A.sequence();
  if (b[len] != b[0]) fail("cycle: sequence does not close");
  std::set<std::pair<int, long long>> seen;
  for (int i = 0; i < len; ++i)
    if (!seen.insert({A.copy_of(i), b[i]}).second) fail("distinct: value repeated at position " + std::to_string(i));
  std::vector<std::vector<long long>> Bc(p.d);
  for (int t = 0; t < p.d; ++t) {
    Bc[t] = B_copy(A, t);
    if (static_cast<int>(Bc[t].size()) != p.h) fail("count: copy " + std::to_string(t) + " does not have h elements");
    std::set<long long> res;
    for (long long v : Bc[t]) res.insert(mod_floor(v, p.h));
    if (static_cast<int>(res.size()) != p.h) fail("residues: copy " + std::to_string(t) + " repeats a residue mod h");
  }
  if (!r.valid) return r;
  // A = B + h N; membership by the unique element of B in the residue class.
  auto in_A = [&](const ELElement& x) {
    for (long long v : Bc[x.copy])
      if (mod_floor(v, p.h) == mod_floor(x.value, p.h)) return v <= x.value;
    return false;
  };
  auto shift = [&](const ELElement& x) { return ELElement{x.value + p.m_seq[(x.copy + 1) % p.d], (x.copy + 1) % p.d}; };
  for (int t = 0; t < p.d; ++t)
    for (long long v : Bc[t]) {
      ELElement x{v, t};
      if (!in_A(shift(x))) fail("stable: shift leaves A");
      // x + h lies in shift(A) iff its preimage under the shift lies in A.
      int prev = (t + p.d - 1) % p.d;
      if (!in_A(ELElement{v + p.h - p.m_seq[t], prev})) fail("small: A + h is not contained in shift(A)");
    }
  long long s = std::accumulate(Bc[0].begin(), Bc[0].end(), 0LL);
  r.normalized = s == static_cast<long long>(p.h) * (p.h - 1) / 2;
  return r;
}

inline bool is_valid(const ELChart& A) { return validate(A).valid; }

// Hodge point in the lower triangular convention, one block per copy.
inline std::vector<std::vector<int>> hodge_point(const ELChart& A) {
  if (!is_valid(A)) throw std::invalid_argument("Hodge point of an invalid EL-chart");
  const ELChartParams& p = A.params;
  std::vector<int> minus(p.d, 0);
  for (int i = 0; i < p.d * p.h; ++i)
    if (A.in_B_minus(i)) ++minus[A.copy_of(i)];
  std::vector<std::vector<int>> mu(p.d);
  for (int t = 0; t < p.d; ++t) {
    int c = minus[(t + p.d - 1) % p.d];
    mu[t].assign(p.h - c, 0);
    mu[t].insert(mu[t].end(), c, 1);
  }
  return mu;
}

// Minuscule Hodge point with m_t ones in block t, lower triangular convention.
inline std::vector<std::vector<int>> minuscule_hodge_point(const ELChartParams& p) {
  std::vector<std::vector<int>> mu(p.d);
  for (int t = 0; t < p.d; ++t) {
    mu[t].assign(p.h - p.m_seq[t], 0);
    mu[t].insert(mu[t].end(), p.m_seq[t], 1);
  }
  return mu;
}

// Reverses each block, converting between lower and upper triangular dominance.
inline Cochar reverse_blocks(const std::vector<std::vector<int>>& mu) {
  Cochar out;
  for (auto& blk : mu)
    for (auto it = blk.rbegin(); it != blk.rend(); ++it) out.push_back(*it);
  return out;
}

inline std::vector<std::pair<int, int>> v_set(const ELChart& A) {
  if (!is_valid(A)) throw std::invalid_argument("V-set of an invalid EL-chart");
  auto b = A.sequence();
  const int len = A.params.d * A.params.h;
  std::vector<std::pair<int, int>> out;
  for (int j = 0; j < len; ++j) {
    if (!A.in_B_minus(j)) continue;
    for (int i = 0; i < len; ++i)
      if (!A.in_B_minus(i) && A.copy_of(i) == A.copy_of(j) && b[j] < b[i]) out.emplace_back(j, i);
  }
  return out;
}

inline std::size_t v_count(const ELChart& A) { return v_set(A).size(); }

// Rotates the cycle by a multiple of d so that b_0 is the minimum of B_(0),
// after translating so that the chart is normalized.
inline ELChart canonical_form(ELChart A) {
  const ELChartParams& p = A.params;
  auto b = A.sequence();
  const int len = p.d * p.h;
  long long s = 0;
  for (int i = 0; i < len; i += p.d) s += b[i];
  long long target = static_cast<long long>(p.h) * (p.h - 1) / 2;
  if ((target - s) % p.h != 0) throw std::logic_error("EL-chart cannot be normalized");
  long long shift = (target - s) / p.h;
  int start = 0;
  for (int i = 0; i < len; i += p.d)
    if (b[i] < b[start]) start = i;
  ELChart out;
  out.params = p;
  out.b0 = b[start] + shift;
  out.eps.resize(len);
  for (int i = 0; i < len; ++i) out.eps[i] = A.eps[(start + i) % len];
  return out;
}

// All normalized small EL-charts with the minuscule Hodge point determined by m_seq.
inline std::vector<ELChart> enumerate_charts(const ELChartParams& p) {
  check_params(p);
  const int len = p.d * p.h;
  // positions of copy t carry the ones counted by m_{t+1}
  std::vector<std::vector<int>> positions(p.d);
  for (int i = 0; i < len; ++i) positions[i % p.d].push_back(i);
  std::vector<std::vector<std::vector<int>>> choices(p.d);
  for (int t = 0; t < p.d; ++t) {
    int k = p.m_seq[(t + 1) % p.d];
    std::vector<int> sel(p.h, 0);
    std::fill(sel.end() - k, sel.end(), 1);
    do {
      choices[t].push_back(sel);
    } while (std::next_permutation(sel.begin(), sel.end()));
  }
  std::map<std::vector<ELElement>, ELChart> found;
  std::vector<std::size_t> idx(p.d, 0);
  for (;;) {
    ELChart A;
    A.params = p;
    A.eps.assign(len, 0);
    for (int t = 0; t < p.d; ++t)
      for (int k = 0; k < p.h; ++k) A.eps[positions[t][k]] = choices[t][idx[t]][k];
    if (is_valid(A)) {
      ELChart C = canonical_form(A);
      std::vector<ELElement> key;
      auto b = C.sequence();
      for (int i = 0; i < len; ++i) key.push_back({b[i], C.copy_of(i)});
      std::sort(key.begin(), key.end());
      found.emplace(key, C);
    }
    int t = 0;
    for (; t < p.d; ++t) {
      if (++idx[t] < choices[t].size()) break;
      idx[t] = 0;
    }
    if (t == p.d) break;
  }
  std::vector<ELChart> out;
  for (auto& [k, c] : found) out.push_back(c);
  return out;
}

inline std::vector<ELChart> enumerate_charts(const ELChartParams& p, const std::vector<std::vector<int>>& mu) {
  check_params(p);
  if (mu != minuscule_hodge_point(p))
    throw std::invalid_argument("Hodge point must be minuscule with m_t ones in block t");
  return enumerate_charts(p);
}

// Sum over i = 1..h-1 of floor(<omega_i, mu - nu>) with nu the constant slope m/(dh).
inline long long el_floor_formula(const ELChartParams& p) {
  check_params(p);
  long long s = 0;
  for (int i = 1; i < p.h; ++i) {
    Rational v = 0;
    for (int t = 0; t < p.d; ++t) v += std::min(i, p.m_seq[t]);
    v -= make_rational(static_cast<long>(i) * p.m(), p.h);
    s += to_ll(floor_of(v));
  }
  return s;
}

struct ELScan {
  std::size_t num_charts = 0;
  long long max_v = -1;
  long long floor_value = 0;
  bool agrees() const { return max_v == floor_value; }
};

inline ELScan scan_charts(const ELChartParams& p) {
  ELScan s;
  auto charts = enumerate_charts(p);
  s.num_charts = charts.size();
  for (auto& c : charts) s.max_v = std::max<long long>(s.max_v, static_cast<long long>(v_count(c)));
  s.floor_value = el_floor_formula(p);
  return s;
}

inline long long superbasic_rz_dim(const ELChartParams& p) {
  ELScan s = scan_charts(p);
  if (s.num_charts == 0) throw std::logic_error("no EL-chart with the given Hodge point");
  if (!s.agrees())
    throw std::logic_error("maximal V-set size " + std::to_string(s.max_v) + " differs from the floor formula " +
                           std::to_string(s.floor_value));
  return s.max_v;
}

// The superbasic element e_{t,i} -> e_{t,i+m_t} of Res GL_h as p^lambda w.
inline ExtAffElt superbasic_element(const GroupDatum& G, const ELChartParams& p) {
  if (G.kind != GroupKind::RES_GL || G.n != p.h || G.d != p.d) throw std::invalid_argument("group does not match EL parameters");
  ExtAffElt x = ext_identity(G);
  for (int t = 0; t < p.d; ++t)
    for (int i = 0; i < p.h; ++i) {
      int j = i + p.m_seq[t];
      x.w.perm[t * p.h + i] = t * p.h + j % p.h;
      if (j >= p.h) x.lam[t * p.h + j % p.h] = j / p.h;
    }
  return x;
}

}  // namespace nstrat
