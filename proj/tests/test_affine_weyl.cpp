#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace nstrat;

namespace {

std::vector<GroupDatum> groups() {
  return {build_group(GroupKind::RES_GL, 2, 1), build_group(GroupKind::RES_GL, 3, 1),
          build_group(GroupKind::RES_GL, 2, 2), build_group(GroupKind::RES_GL, 3, 2),
          build_group(GroupKind::RES_GSP, 4, 1), build_group(GroupKind::RES_GSP, 2, 2),
          build_group(GroupKind::RES_GU, 2, 2),  build_group(GroupKind::RES_GU, 3, 2)};
}

ExtAffElt elt(const GroupDatum& G, const std::string& s) { return parse_element(G, s); }

}  // namespace

TEST(ExtendedAffine, ProductAndSigmaExamples) {
  auto G = build_group(GroupKind::RES_GL, 2, 1);
  ExtAffElt x = elt(G, "1,0|s1");
  EXPECT_EQ(x * x, translation(G, {1, 1}));
  EXPECT_EQ(x * inverse(x), ext_identity(G));
  auto G2 = build_group(GroupKind::RES_GL, 2, 2);
  EXPECT_EQ(sigma(G2, translation(G2, {1, 0, 0, 0})), translation(G2, {0, 0, 1, 0}));
}

TEST(ExtendedAffine, GroupLawOnRandomElements) {
  for (auto& G : groups()) {
    SCOPED_TRACE(G.name());
    std::mt19937_64 rng(1);
    for (int t = 0; t < 100; ++t) {
      ExtAffElt x = oracle::random_element(G, rng, 2), y = oracle::random_element(G, rng, 2),
                z = oracle::random_element(G, rng, 2);
      EXPECT_EQ((x * y) * z, x * (y * z));
      EXPECT_EQ(inverse(x) * x, ext_identity(G));
      EXPECT_EQ(sigma(G, x * y), sigma(G, x) * sigma(G, y));
      EXPECT_EQ(sigma_inverse(G, sigma(G, x)), x);
      RatCochar v = oracle::interior_point(G);
      EXPECT_EQ(apply_affine(x * y, v), apply_affine(x, apply_affine(y, v)));
    }
  }
}

TEST(Length, Examples) {
  auto G = build_group(GroupKind::RES_GL, 2, 1);
  EXPECT_EQ(length(G, ext_identity(G)), 0);
  EXPECT_EQ(length(G, translation(G, {1, 0})), 1);
  EXPECT_EQ(length(G, translation(G, {0, 1})), 1);
  // exactly one of the two candidates for the generator of length zero with kappa = 1
  long long a = length(G, elt(G, "1,0|s1")), b = length(G, elt(G, "0,1|s1"));
  EXPECT_EQ(std::min(a, b), 0);
  EXPECT_GT(std::max(a, b), 0);
  EXPECT_EQ(b, 0);
}

TEST(Length, MatchesSeparatingHyperplaneCount) {
  for (auto& G : groups()) {
    SCOPED_TRACE(G.name());
    std::mt19937_64 rng(2);
    for (int t = 0; t < 300; ++t) {
      ExtAffElt x = oracle::random_element(G, rng, 3);
      ASSERT_EQ(length(G, x), oracle::geometric_length(G, x)) << format_element(G, x);
    }
  }
}

TEST(Length, MatchesCayleyGraphDistance) {
  for (auto& G : {build_group(GroupKind::RES_GL, 2, 1), build_group(GroupKind::RES_GL, 3, 1),
                  build_group(GroupKind::RES_GL, 2, 2), build_group(GroupKind::RES_GSP, 4, 1)}) {
    SCOPED_TRACE(G.name());
    auto ball = oracle::cayley_ball(G, 5);
    auto omega = oracle::small_length_zero(G);
    ASSERT_FALSE(omega.empty());
    for (auto& w : omega) ASSERT_EQ(length(G, w), 0);
    for (auto& [y, dist] : ball)
      for (std::size_t k = 0; k < omega.size(); k += 3) ASSERT_EQ(length(G, y * omega[k]), dist);
  }
}

TEST(Length, DominantTranslationsAndTauMu) {
  for (auto& G : groups()) {
    SCOPED_TRACE(G.name());
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
      Cochar mu = dominantize(G, oracle::random_lattice_point(G, rng, 2)).first;
      EXPECT_EQ(oracle::ratio(length(G, translation(G, mu))), 2 * pair(G, G.rho, mu));
    }
    for (auto& mu : oracle::minuscule_cochars(G)) {
      TauMu tm = tau_mu(G, mu);
      EXPECT_EQ(length(G, tm.tau), 0);
      EXPECT_TRUE(stabilizes_base_alcove(G, tm.tau));
      EXPECT_TRUE(stabilizes_iwahori(G, tm.tau));
      EXPECT_EQ(tm.tau, from_weyl(G, tm.x_mu) * translation(G, mu));
    }
  }
}

TEST(TauMu, Examples) {
  auto G = build_group(GroupKind::RES_GL, 2, 1);
  EXPECT_EQ(tau_mu(G, {0, 0}).tau, ext_identity(G));
  TauMu t = tau_mu(G, {1, 0});
  EXPECT_EQ(length(G, t.tau), 0);
  EXPECT_EQ(kottwitz_point(G, t.tau), (std::vector<Integer>{1}));
  // for mu = (2, 0) the double coset has lengths at least 1, attained uniquely
  TauMu t2 = tau_mu(G, {2, 0});
  EXPECT_EQ(length(G, t2.tau), 1);
  EXPECT_THROW(tau_mu(G, {0, 1}), std::invalid_argument);
}

TEST(NewtonPoint, Examples) {
  auto G = build_group(GroupKind::RES_GL, 2, 1);
  RatCochar half{Rational(1, 2), Rational(1, 2)};
  EXPECT_EQ(newton_point(G, translation(G, {1, 0})), (RatCochar{1, 0}));
  EXPECT_EQ(newton_point(G, elt(G, "1,0|s1")), half);
  EXPECT_EQ(kottwitz_point(G, ext_identity(G)), (std::vector<Integer>{0}));
  EXPECT_EQ(kottwitz_point(G, translation(G, {1, 0})), (std::vector<Integer>{1}));
  EXPECT_EQ(kottwitz_point(G, translation(G, {1, 1})), (std::vector<Integer>{2}));
  auto G2 = build_group(GroupKind::RES_GL, 2, 2);
  ExtAffElt sb = superbasic_element(G2, {2, 2, {1, 0}});
  EXPECT_EQ(newton_point(G2, sb), RatCochar(4, Rational(1, 4)));
}

TEST(NewtonPoint, MatchesTranslationPowerOracle) {
  for (auto& G : groups()) {
    SCOPED_TRACE(G.name());
    std::mt19937_64 rng(4);
    for (int t = 0; t < 200; ++t) {
      ExtAffElt x = oracle::random_element(G, rng, 2);
      RatCochar nu = newton_point(G, x);
      ASSERT_EQ(nu, oracle::newton_by_powers(G, x)) << format_element(G, x);
      EXPECT_TRUE(is_dominant(G, nu));
      EXPECT_EQ(gamma_average(G, nu), nu);
    }
  }
}

TEST(NewtonPoint, InvariantUnderSigmaConjugation) {
  for (auto& G : groups()) {
    SCOPED_TRACE(G.name());
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
      ExtAffElt x = oracle::random_element(G, rng, 2);
      RatCochar nu = newton_point(G, x);
      auto k = kottwitz_point(G, x);
      for (int j = 0; j < 50; ++j) {
        ExtAffElt g = oracle::random_element(G, rng, 2);
        ExtAffElt y = sigma_conjugate(G, g, x);
        ASSERT_EQ(newton_point(G, y), nu);
        ASSERT_EQ(kottwitz_point(G, y), k);
      }
    }
  }
}

TEST(Straight, Examples) {
  auto G = build_group(GroupKind::RES_GL, 2, 1);
  EXPECT_TRUE(is_sigma_straight(G, translation(G, {1, 0})));
  EXPECT_TRUE(is_sigma_straight(G, elt(G, "0,1|s1")));
  EXPECT_TRUE(is_sigma_straight(G, translation(G, {0, 1})));
  EXPECT_FALSE(is_sigma_straight(G, elt(G, "0,0|s1")));
}

TEST(Straight, InequalityAndPowerIdentity) {
  for (auto& G : groups()) {
    SCOPED_TRACE(G.name());
    std::mt19937_64 rng(6);
    for (int t = 0; t < 300; ++t) {
      ExtAffElt x = oracle::random_element(G, rng, 2);
      Rational bound = 2 * pair(G, G.rho, newton_point(G, x));
      EXPECT_GE(oracle::ratio(length(G, x)), bound);
      if (!is_sigma_straight(G, x)) continue;
      for (int m = 0; m <= 4; ++m) EXPECT_EQ(length(G, sigma_product(G, x, m)), (m + 1) * length(G, x));
    }
  }
}

TEST(Fundamental, ExamplesAndStraightness) {
  auto G = build_group(GroupKind::RES_GL, 3, 1);
  auto id = is_fundamental(G, ext_identity(G));
  ASSERT_TRUE(id);
  EXPECT_EQ(id->J, G.all_simple());
  auto dom = is_fundamental(G, translation(G, {2, 1, 0}));
  ASSERT_TRUE(dom);
  EXPECT_TRUE(is_fundamental_for(G, translation(G, {2, 1, 0}), weyl_identity(G), 0));
  for (auto& H : groups()) {
    SCOPED_TRACE(H.name());
    std::mt19937_64 rng(7);
    int found = 0;
    for (int t = 0; t < 150; ++t) {
      ExtAffElt x = oracle::random_element(H, rng, 1);
      if (is_fundamental(H, x)) {
        ++found;
        EXPECT_TRUE(is_sigma_straight(H, x)) << format_element(H, x);
      }
    }
    EXPECT_GT(found, 0);
  }
}

TEST(Truncation, Examples) {
  auto G = build_group(GroupKind::RES_GL, 2, 1);
  TruncationResult r = eo_truncation(G, translation(G, {1, 0}));
  EXPECT_EQ(r.w, simple_reflection(G, 0));
  EXPECT_EQ(r.mu, (Cochar{1, 0}));
  EXPECT_EQ(length_finite(G, r.w), 1);
  TruncationResult e = eo_truncation(G, ext_identity(G));
  EXPECT_TRUE(is_identity(e.w));
  EXPECT_EQ(e.mu, (Cochar{0, 0}));
}

TEST(Truncation, CertificateBoundAndFixedPoint) {
  for (auto& G : groups()) {
    SCOPED_TRACE(G.name());
    std::mt19937_64 rng(8);
    for (int t = 0; t < 100; ++t) {
      ExtAffElt b = oracle::random_element(G, rng, 2);
      TruncationResult r = eo_truncation(G, b);
      ASSERT_LE(r.iterations, G.num_simple() + 2);
      // replay the chain of sigma-conjugations
      ExtAffElt cur = b;
      for (auto& step : r.certificate) {
        cur = sigma_conjugate(G, step.conjugator, cur);
        ASSERT_EQ(cur, step.result);
      }
      ExtAffElt rest = from_weyl(G, inverse(r.w)) * cur * inverse(r.tau);
      EXPECT_TRUE(std::all_of(rest.lam.begin(), rest.lam.end(), [](long long c) { return c == 0; }));
      // w is minimal in its left coset by the parabolic of sigma^{-1}(S_mu)
      EXPECT_TRUE(is_identity(reduce_left(G, r.w, r.levi_of_mu).first));
      EXPECT_GE(length(G, b), length(G, from_weyl(G, r.w) * r.tau));
      TruncationResult again = eo_truncation(G, from_weyl(G, r.w) * r.tau);
      EXPECT_EQ(again.w, r.w);
      EXPECT_EQ(again.mu, r.mu);
      // sigma-conjugation inside K = G(O) by finite Weyl elements keeps the invariant
      const auto& W = weyl_elements(G);
      ExtAffElt b2 = sigma_conjugate(G, from_weyl(G, W[rng() % W.size()]), b);
      EXPECT_EQ(eo_truncation(G, b2).mu, r.mu);
    }
  }
}
