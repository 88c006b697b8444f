#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace nstrat;

namespace {

const SigmaClass& class_with_nu(const std::vector<SigmaClass>& cls, const RatCochar& nu) {
  auto it = std::find_if(cls.begin(), cls.end(), [&](const SigmaClass& c) { return c.nu == nu; });
  if (it == cls.end()) throw std::runtime_error("no class with that Newton point");
  return *it;
}

RatCochar rats(std::initializer_list<std::pair<long, long>> xs) {
  RatCochar v;
  for (auto [p, q] : xs) v.push_back(make_rational(p, q));
  return v;
}

const SigmaClass& basic_class(const GroupDatum& G, const std::vector<SigmaClass>& cls) {
  for (auto& c : cls)
    if (is_basic(G, c)) return c;
  throw std::runtime_error("no basic class");
}

}  // namespace

TEST(Dimensions, SiegelThreefold) {
  auto G = build_group(GroupKind::RES_GSP, 4, 1);
  Cochar mu{1, 1, 0, 0};
  auto cls = enumerate_BGmu(G, mu);
  const auto& ord = class_with_nu(cls, RatCochar{1, 1, 0, 0});
  const auto& mid = class_with_nu(cls, rats({{1, 1}, {1, 2}, {1, 2}, {0, 1}}));
  const auto& bas = class_with_nu(cls, RatCochar(4, Rational(1, 2)));
  EXPECT_EQ(dim_newton_stratum(G, mu, ord), 3);
  EXPECT_EQ(dim_newton_stratum(G, mu, mid), 2);
  EXPECT_EQ(dim_newton_stratum(G, mu, bas), 1);
  EXPECT_EQ(dim_rz(G, mu, ord), 0);
  EXPECT_EQ(dim_rz(G, mu, mid), 0);
  EXPECT_EQ(dim_rz(G, mu, bas), 1);
  EXPECT_EQ(dim_central_leaf(G, mid), 2);
  EXPECT_EQ(dim_central_leaf(G, ord), 3);
  auto reps = stratum_reports(G, mu, cls);
  for (auto& r : reps) EXPECT_EQ(r.dim_newton, Rational(static_cast<long>(3 - r.chain_to_mu)));
}

TEST(Dimensions, RapoportZinkExamples) {
  auto G2 = build_group(GroupKind::RES_GL, 2, 1);
  auto c2 = enumerate_BGmu(G2, {1, 0});
  EXPECT_EQ(dim_rz(G2, {1, 0}, basic_class(G2, c2)), 0);
  EXPECT_EQ(dim_rz(G2, {1, 0}, class_with_nu(c2, RatCochar{1, 0})), 0);
  EXPECT_EQ(dim_central_leaf(G2, class_with_nu(c2, RatCochar{1, 0})), 1);
  EXPECT_EQ(dim_central_leaf(G2, basic_class(G2, c2)), 0);
  auto G5 = build_group(GroupKind::RES_GL, 5, 1);
  Cochar mu5{1, 1, 0, 0, 0};
  auto c5 = enumerate_BGmu(G5, mu5);
  EXPECT_EQ(dim_rz(G5, mu5, basic_class(G5, c5)), 1);
  EXPECT_EQ(dim_rz_floor(G5, mu5, basic_class(G5, c5)), 1);
}

TEST(Dimensions, RejectsClassesOutsideBGmu) {
  auto G = build_group(GroupKind::RES_GL, 2, 1);
  SigmaClass other = classify(G, translation(G, {2, 0}));
  EXPECT_THROW(dim_newton_stratum(G, {1, 0}, other), std::invalid_argument);
  EXPECT_THROW(dim_rz(G, {1, 0}, other), std::invalid_argument);
}

TEST(Dimensions, VerifyIdentitiesAcrossKinds) {
  std::vector<GroupDatum> gs{build_group(GroupKind::RES_GL, 2, 1), build_group(GroupKind::RES_GL, 4, 1),
                             build_group(GroupKind::RES_GL, 3, 2), build_group(GroupKind::RES_GSP, 4, 1),
                             build_group(GroupKind::RES_GSP, 6, 1), build_group(GroupKind::RES_GSP, 4, 2),
                             build_group(GroupKind::RES_GU, 3, 2),  build_group(GroupKind::RES_GU, 4, 2)};
  for (auto& G : gs)
    for (auto& mu : oracle::minuscule_cochars(G)) {
      SCOPED_TRACE(G.name() + " mu=" + format_vector(G, mu));
      auto rep = verify_identities(G, mu);
      EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front());
      EXPECT_GT(rep.num_checks, 0u);
    }
  auto G = build_group(GroupKind::RES_GL, 3, 1);
  auto zero = verify_identities(G, {0, 0, 0});
  EXPECT_TRUE(zero.ok());
  EXPECT_EQ(zero.num_classes, 1u);
}

TEST(Dimensions, ReportsAreIntegralAndAdditive) {
  auto G = build_group(GroupKind::RES_GL, 4, 2);
  Cochar mu{1, 1, 0, 0, 1, 0, 0, 0};
  auto cls = enumerate_BGmu(G, mu);
  auto reps = stratum_reports(G, mu, cls);
  for (auto& r : reps) {
    EXPECT_TRUE(is_integral(r.dim_newton));
    EXPECT_TRUE(is_integral(r.dim_rz));
    EXPECT_EQ(r.dim_rz, Rational(r.dim_rz_floor));
    EXPECT_EQ(r.dim_newton, r.dim_rz + r.dim_central_leaf);
  }
}

TEST(SigmaMu, Examples) {
  auto G = build_group(GroupKind::RES_GL, 2, 1);
  auto none = sigma_mu_sets(G, {1, 0}, 0);
  EXPECT_EQ(none.all, (std::vector<Cochar>{{0, 1}, {1, 0}}));
  EXPECT_EQ(none.m_dom, none.all);
  EXPECT_EQ(none.m_max, none.all);
  auto full = sigma_mu_sets(G, {1, 0}, G.all_simple());
  EXPECT_EQ(full.m_dom, (std::vector<Cochar>{{1, 0}}));
  EXPECT_EQ(full.m_max, (std::vector<Cochar>{{1, 0}}));
  auto G3 = build_group(GroupKind::RES_GL, 3, 1);
  auto s = sigma_mu_sets(G3, {2, 0, 0}, G3.all_simple());
  EXPECT_EQ(s.m_dom, (std::vector<Cochar>{{1, 1, 0}, {2, 0, 0}}));
  EXPECT_EQ(s.m_max, (std::vector<Cochar>{{2, 0, 0}}));
}

TEST(SigmaMu, FormulaHelpers) {
  auto G = build_group(GroupKind::RES_GL, 3, 1);
  Cochar mu{1, 0, 0};
  LeviDatum full = levi_datum(G, G.all_simple()), torus = levi_datum(G, 0);
  EXPECT_EQ(d_mu_muM(G, mu, mu, full), 0);
  for (auto& x : sigma_mu_sets(G, mu, 0).all) EXPECT_EQ(d_mu_muM(G, mu, x, torus), pair(G, G.rho, mu) + pair(G, G.rho, x));
  LeviDatum L = levi_datum(G, Mask(1));
  for (int k = 0; k < G.num_simple(); ++k)
    if (mask_has(L.J, k)) {
      EXPECT_EQ(pair(G, L.rho_M, G.simple_coroots[k]), 1);
    }
  SigmaClass c = classify(G, parse_element(G, "1,0,0|s1"));
  EXPECT_EQ(c.nu, rats({{1, 2}, {1, 2}, {0, 1}}));
  // 1 - 1/2 - 1/2 with rho = (1, 0, -1) and rho_M = (1/2, -1/2, 0)
  EXPECT_EQ(fibre_dim(G, mu, mu, c, L), 0);
  EXPECT_EQ(negative_slope_sum(G, c.nu, L.J), 0);
}

TEST(Reduction, Examples) {
  auto G3 = build_group(GroupKind::RES_GL, 3, 1);
  auto c3 = enumerate_BGmu(G3, {1, 1, 0});
  auto r3 = reduction_check(G3, {1, 1, 0}, class_with_nu(c3, rats({{1, 1}, {1, 2}, {1, 2}})));
  EXPECT_TRUE(r3.ok());
  auto G4 = build_group(GroupKind::RES_GL, 4, 1);
  auto c4 = enumerate_BGmu(G4, {1, 0, 0, 0});
  auto r4 = reduction_check(G4, {1, 0, 0, 0}, class_with_nu(c4, rats({{1, 3}, {1, 3}, {1, 3}, {0, 1}})));
  EXPECT_TRUE(r4.ok());
  // split class reduces to the torus
  auto r0 = reduction_check(G3, {1, 1, 0}, class_with_nu(c3, RatCochar{1, 1, 0}));
  EXPECT_EQ(r0.J, Mask(0));
  EXPECT_TRUE(r0.ok());
  EXPECT_EQ(r0.lhs, 0);
  // superbasic classes have no proper Levi
  auto G2 = build_group(GroupKind::RES_GL, 2, 1);
  EXPECT_THROW(reduction_check(G2, {1, 0}, basic_class(G2, enumerate_BGmu(G2, {1, 0}))), std::invalid_argument);
}

TEST(Reduction, AllSmallGLCases) {
  int checked = 0;
  for (int n = 1; n <= 4; ++n)
    for (int d = 1; d <= 2; ++d) {
      auto G = build_group(GroupKind::RES_GL, n, d);
      for (auto& mu : oracle::minuscule_cochars(G))
        for (auto& c : enumerate_BGmu(G, mu)) {
          if (!superbasic_levi(G, c)) continue;
          auto r = reduction_check(G, mu, c);
          EXPECT_TRUE(r.ok()) << G.name() << " mu=" << format_vector(G, mu);
          ++checked;
        }
    }
  EXPECT_GT(checked, 100);
}

TEST(Reduction, SuperbasicDimensionMatchesCharts) {
  // for superbasic basic classes the RZ formula agrees with the chart maximum
  for (int h = 1; h <= 5; ++h)
    for (int d = 1; d <= 2; ++d) {
      auto G = build_group(GroupKind::RES_GL, h, d);
      for (auto& mu : oracle::minuscule_cochars(G)) {
        ELChartParams p{d, h, {}};
        for (int t = 0; t < d; ++t) {
          int m = 0;
          for (int i = 0; i < h; ++i) m += static_cast<int>(mu[t * h + i]);
          p.m_seq.push_back(m);
        }
        if (std::gcd(p.m(), h) != 1) continue;
        auto cls = enumerate_BGmu(G, mu);
        const SigmaClass& b = basic_class(G, cls);
        ASSERT_TRUE(is_superbasic(G, b));
        EXPECT_EQ(dim_rz(G, mu, b), oracle::ratio(superbasic_rz_dim(p))) << G.name() << " mu=" << format_vector(G, mu);
      }
    }
}
