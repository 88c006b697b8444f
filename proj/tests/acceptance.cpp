// Acceptance suite: one PASS/FAIL line per criterion, with limits pinned below.
//
// Exit status is nonzero when a criterion fails, except for criteria listed as
// known conflicts, which still print FAIL with their counts.

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace nstrat;

namespace {

// time limits in seconds; zero means unlimited
constexpr double kLimitSiegel = 1.0;
constexpr double kLimitCharts = 60.0;
constexpr double kLimitLength = 120.0;
constexpr double kLimitDefect = 30.0;
constexpr double kLimitReduction = 60.0;

constexpr int kChartMaxH = 6, kChartMaxD = 3;
constexpr int kCayleyRadius = 8;
constexpr int kTruncationSamples = 500;
constexpr int kStraightSamples = 300;
constexpr int kStraightPowers = 4;
constexpr int kEnumerationSlack = 2;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double limit;
  bool known_conflict;
  std::function<Outcome()> run;
};

std::vector<GroupDatum> desk_groups() {
  std::vector<GroupDatum> gs;
  for (int n = 1; n <= 5; ++n)
    for (int d = 1; d <= 2; ++d) gs.push_back(build_group(GroupKind::RES_GL, n, d));
  gs.push_back(build_group(GroupKind::RES_GSP, 4, 1));
  gs.push_back(build_group(GroupKind::RES_GSP, 6, 1));
  gs.push_back(build_group(GroupKind::RES_GSP, 4, 2));
  gs.push_back(build_group(GroupKind::RES_GU, 2, 2));
  gs.push_back(build_group(GroupKind::RES_GU, 3, 2));
  gs.push_back(build_group(GroupKind::RES_GU, 4, 2));
  return gs;
}

std::vector<GroupDatum> small_groups() {
  return {build_group(GroupKind::RES_GL, 2, 1), build_group(GroupKind::RES_GL, 3, 1),
          build_group(GroupKind::RES_GL, 4, 1), build_group(GroupKind::RES_GL, 2, 2),
          build_group(GroupKind::RES_GL, 3, 2), build_group(GroupKind::RES_GSP, 4, 1),
          build_group(GroupKind::RES_GU, 3, 2)};
}

template <class... Args>
std::string str(const Args&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

Outcome siegel() {
  auto G = build_group(GroupKind::RES_GSP, 4, 1);
  Cochar mu{1, 1, 0, 0};
  auto cls = enumerate_BGmu(G, mu);
  auto reps = stratum_reports(G, mu, cls);
  std::multiset<long> dims, rz;
  bool chain_ok = true;
  const Rational top = 2 * pair(G, G.rho, mu);
  for (auto& r : reps) {
    if (!is_integral(r.dim_newton) || !is_integral(r.dim_rz)) return {false, "non-integral dimension"};
    dims.insert(r.dim_newton.get_num().get_si());
    rz.insert(r.dim_rz.get_num().get_si());
    chain_ok &= r.dim_newton == top - Rational(static_cast<long>(r.chain_to_mu));
  }
  bool ok = cls.size() == 3 && dims == std::multiset<long>{1, 2, 3} && rz == std::multiset<long>{0, 0, 1} && chain_ok;
  return {ok, str(cls.size(), " classes, dims 3/2/1 ", dims == std::multiset<long>{1, 2, 3} ? "yes" : "no",
                  ", rz 0/0/1 ", rz == std::multiset<long>{0, 0, 1} ? "yes" : "no", ", dim = <2rho,mu> - chain ",
                  chain_ok ? "yes" : "no")};
}

Outcome charts() {
  long long cases = 0, charts_seen = 0, bad = 0;
  std::string first_bad;
  for (int d = 1; d <= kChartMaxD; ++d)
    for (int h = 1; h <= kChartMaxH; ++h) {
      std::vector<int> m(d, 0);
      for (;;) {
        ELChartParams p{d, h, m};
        if (std::gcd(p.m(), h) == 1) {
          ELScan s = scan_charts(p);
          ++cases;
          charts_seen += static_cast<long long>(s.num_charts);
          if (s.num_charts == 0 || !s.agrees()) {
            if (!bad++) first_bad = str("d=", d, " h=", h, " m=", p.m(), " max=", s.max_v, " floor=", s.floor_value);
          }
        }
        int t = 0;
        for (; t < d; ++t) {
          if (++m[t] <= h) break;
          m[t] = 0;
        }
        if (t == d) break;
      }
    }
  return {bad == 0, str(cases, " parameter sets, ", charts_seen, " charts, ", bad, " mismatches", bad ? ": " + first_bad : "")};
}

Outcome lengths() {
  std::vector<GroupDatum> gs;
  for (int n = 1; n <= 3; ++n)
    for (int d = 1; d <= 2; ++d) gs.push_back(build_group(GroupKind::RES_GL, n, d));
  gs.push_back(build_group(GroupKind::RES_GSP, 4, 1));
  long long checked = 0, bad = 0, taus = 0;
  std::string first_bad;
  for (auto& G : gs) {
    auto ball = oracle::cayley_ball(G, kCayleyRadius);
    auto omega = oracle::small_length_zero(G);
    for (auto& w : omega)
      if (length(G, w) != 0 && !bad++) first_bad = G.name() + " length-zero element " + format_element(G, w);
    for (auto& [y, dist] : ball)
      for (auto& w : omega) {
        ++checked;
        if (length(G, y * w) != dist && !bad++) first_bad = G.name() + " " + format_element(G, y * w);
      }
    for (auto& mu : oracle::minuscule_cochars(G)) {
      ++taus;
      if (length(G, tau_mu(G, mu).tau) != 0 && !bad++) first_bad = G.name() + " tau_mu for " + format_vector(G, mu);
    }
  }
  return {bad == 0, str(checked, " elements up to length ", kCayleyRadius, ", ", taus, " tau_mu, ", bad, " mismatches",
                        bad ? ": " + first_bad : "")};
}

Outcome defects() {
  long long checked = 0, bad = 0;
  for (int n = 1; n <= 5; ++n)
    for (int d = 1; d <= 2; ++d) {
      auto G = build_group(GroupKind::RES_GL, n, d);
      for (auto& mu : oracle::minuscule_cochars(G))
        for (auto& c : enumerate_BGmu(G, mu)) {
          ++checked;
          if (defect(G, c) != defect_oracle_resgl(G, c)) ++bad;
        }
    }
  return {bad == 0, str(checked, " classes, ", bad, " mismatches")};
}

Outcome chains() {
  long long pairs = 0, agree = 0, top_pairs = 0, top_agree = 0, above = 0, below_formula = 0;
  for (auto& G : desk_groups())
    for (auto& mu : oracle::minuscule_cochars(G)) {
      auto cls = enumerate_BGmu(G, mu);
      const int n = static_cast<int>(cls.size());
      const int top = static_cast<int>(top_class_index(G, mu, cls));
      std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) below[i][j] = i != j && leq(G, cls[i], cls[j]);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i != j && !below[i][j]) continue;
          long long f = chain_length(G, cls[i], cls[j]);
          long long o = i == j ? 0 : oracle::longest_chain(below, i, j);
          ++pairs;
          agree += f == o;
          above += f > o;
          below_formula += f < o;
          if (j == top) {
            ++top_pairs;
            top_agree += f == o;
          }
        }
    }
  return {agree == pairs, str(agree, "/", pairs, " comparable pairs agree (formula larger on ", above, ", smaller on ",
                              below_formula, "); pairs ending at the top class: ", top_agree, "/", top_pairs)};
}

Outcome truncations() {
  long long checked = 0, bad = 0;
  std::string first_bad;
  for (auto& G : small_groups()) {
    std::mt19937_64 rng(1000 + G.N);
    for (int t = 0; t < kTruncationSamples; ++t) {
      ExtAffElt b = oracle::random_element(G, rng, 2);
      ++checked;
      std::string why;
      try {
        TruncationResult r = eo_truncation(G, b);
        if (r.iterations > G.num_simple() + 2) why = "too many rounds";
        else if (!is_identity(reduce_left(G, r.w, r.levi_of_mu).first)) why = "w not minimal in its coset";
        else if (length(G, b) < length(G, from_weyl(G, r.w) * r.tau)) why = "length bound fails";
        else {
          TruncationResult again = eo_truncation(G, from_weyl(G, r.w) * r.tau);
          if (again.w != r.w || again.mu != r.mu) why = "not a fixed point";
        }
      } catch (const std::exception& e) {
        why = e.what();
      }
      if (!why.empty() && !bad++) first_bad = G.name() + " " + format_element(G, b) + ": " + why;
    }
  }
  return {bad == 0, str(checked, " elements, ", bad, " failures", bad ? ": " + first_bad : "")};
}

Outcome straightness() {
  long long fundamental = 0, straight = 0, bad = 0;
  std::string first_bad;
  for (auto& G : small_groups()) {
    std::mt19937_64 rng(2000 + G.N);
    for (int t = 0; t < kStraightSamples; ++t) {
      ExtAffElt x = oracle::random_element(G, rng, 1);
      bool s = is_sigma_straight(G, x);
      if (is_fundamental(G, x)) {
        ++fundamental;
        if (!s && !bad++) first_bad = G.name() + " fundamental but not straight: " + format_element(G, x);
      }
      if (!s) continue;
      ++straight;
      for (int m = 0; m <= kStraightPowers; ++m)
        if (length(G, sigma_product(G, x, m)) != (m + 1) * length(G, x) && !bad++)
          first_bad = G.name() + " power identity fails: " + format_element(G, x);
    }
  }
  return {bad == 0 && fundamental > 0, str(fundamental, " fundamental, ", straight, " straight, ", bad, " failures",
                                           bad ? ": " + first_bad : "")};
}

Outcome reductions() {
  long long checked = 0, bad = 0;
  for (int h = 1; h <= 4; ++h)
    for (int d = 1; d <= 2; ++d) {
      auto G = build_group(GroupKind::RES_GL, h, d);
      for (auto& mu : oracle::minuscule_cochars(G))
        for (auto& c : enumerate_BGmu(G, mu)) {
          if (!superbasic_levi(G, c)) continue;
          ++checked;
          if (!reduction_check(G, mu, c).ok()) ++bad;
        }
    }
  return {bad == 0 && checked > 0, str(checked, " classes with a proper superbasic Levi, ", bad, " mismatches")};
}

Outcome stability() {
  long long cases = 0, bad = 0;
  auto key = [](const std::vector<SigmaClass>& cls) {
    std::set<std::pair<RatCochar, std::vector<Integer>>> s;
    for (auto& c : cls) s.insert({c.nu, c.kappa});
    return s;
  };
  for (auto& G : desk_groups())
    for (auto& mu : oracle::minuscule_cochars(G)) {
      ++cases;
      if (key(enumerate_BGmu(G, mu)) != key(enumerate_BGmu(G, mu, kEnumerationSlack))) ++bad;
    }
  return {bad == 0, str(cases, " cases, ", bad, " changed")};
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "Siegel threefold strata", kLimitSiegel, false, siegel},
      {2, "superbasic EL-chart maximum equals the floor formula", kLimitCharts, false, charts},
      {3, "length function equals Cayley distance", kLimitLength, false, lengths},
      {4, "defect equals the slope-denominator rank", kLimitDefect, false, defects},
      {5, "chain formula equals the longest chain", 0, true, chains},
      {6, "truncation algorithm", 0, false, truncations},
      {7, "fundamental and straight elements", 0, false, straightness},
      {8, "Levi reduction", kLimitReduction, false, reductions},
      {9, "enumeration stability under a larger window", 0, false, stability},
  };
  int unexpected = 0;
  for (auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = c.limit == 0 || secs < c.limit;
    bool pass = o.pass && in_time;
    char timing[64];
    if (c.limit > 0)
      std::snprintf(timing, sizeof timing, "%.2fs, limit %.0fs", secs, c.limit);
    else
      std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.title << "  [" << o.detail
              << "; " << timing << (in_time ? "" : ", over limit") << "]"
              << (!pass && c.known_conflict ? "  (known conflict)" : "") << std::endl;
    if (!pass && !c.known_conflict) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
