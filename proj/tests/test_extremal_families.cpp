#include <gtest/gtest.h>

#include "seplab/extremal_families.hpp"
#include "support.hpp"

using namespace seplab;

namespace {

SetFamily random_family(testing_support::Rng& rng, int n, int a, int max_members) {
  auto universe = all_subsets(n, a);
  std::vector<Subset> members;
  int count = rng.uniform(0, max_members);
  for (int i = 0; i < count; ++i) members.push_back(universe[rng.uniform(0, static_cast<int>(universe.size()) - 1)]);
  return SetFamily(n, a, std::move(members));
}

std::vector<SetFamily> all_subfamilies(int n, int a) {
  auto universe = all_subsets(n, a);
  std::vector<SetFamily> out;
  for (std::uint32_t mask = 0; mask < (1u << universe.size()); ++mask) {
    std::vector<Subset> members;
    for (std::size_t i = 0; i < universe.size(); ++i)
      if (mask >> i & 1u) members.push_back(universe[i]);
    out.emplace_back(n, a, std::move(members));
  }
  return out;
}

}  // namespace

TEST(Shift, SetExamples) {
  EXPECT_EQ(shift_set({2, 3}, 1, 3), (Subset{1, 2}));
  EXPECT_EQ(shift_set({1, 3}, 1, 3), (Subset{1, 3}));
  EXPECT_EQ(shift_set({2, 4}, 1, 3), (Subset{2, 4}));
}

TEST(Shift, FamilyKeepsCollidingMembers) {
  SetFamily f(4, 2, {{1, 2}, {2, 3}});
  EXPECT_EQ(shift_family(f, 1, 3), f);
  SetFamily g(4, 2, {{2, 3}, {3, 4}});
  EXPECT_EQ(shift_family(g, 1, 3), SetFamily(4, 2, {{1, 2}, {1, 4}}));
}

TEST(Shift, PreservesSizesAndFarness) {
  testing_support::Rng rng(53);
  for (int trial = 0; trial < 3000; ++trial) {
    int n = rng.uniform(3, 7), a = rng.uniform(1, n - 1), t = rng.uniform(0, a - 1);
    auto f = random_family(rng, n, a, 6);
    SetFamily g = random_family(rng, n, a, 6);
    std::vector<Subset> kept;
    for (const auto& y : g.members)
      if (are_t_far(f, SetFamily(n, a, {y}), t)) kept.push_back(y);
    g = SetFamily(n, a, kept);
    int i = rng.uniform(1, n - 1), j = rng.uniform(i + 1, n);
    auto fs = shift_family(f, i, j), gs = shift_family(g, j, i);
    ASSERT_EQ(fs.size(), f.size());
    ASSERT_EQ(gs.size(), g.size());
    ASSERT_TRUE(are_t_far(fs, gs, t));
  }
}

TEST(Compress, EndsLeftCompressedWithFallingPotential) {
  testing_support::Rng rng(59);
  for (int trial = 0; trial < 500; ++trial) {
    int n = rng.uniform(3, 7), a = rng.uniform(1, n - 1), t = rng.uniform(0, a - 1);
    auto f = random_family(rng, n, a, 6);
    auto g = random_family(rng, n, a, 6);
    bool far = are_t_far(f, g, t);
    auto r = compress_pair(f, g);
    EXPECT_TRUE(is_left_compressed(r.f));
    EXPECT_EQ(r.f.size(), f.size());
    EXPECT_EQ(r.g.size(), g.size());
    EXPECT_EQ(r.potentials.size(), r.steps.size() + 1);
    for (std::size_t s = 1; s < r.potentials.size(); ++s) EXPECT_LT(r.potentials[s], r.potentials[s - 1]);
    if (far) EXPECT_TRUE(are_t_far(r.f, r.g, t));
  }
}

TEST(Leftof, IsPartialOrderExhaustively) {
  for (int n = 1; n <= 6; ++n)
    for (int a = 1; a <= n; ++a) {
      auto u = all_subsets(n, a);
      for (const auto& x : u) {
        EXPECT_TRUE(leftof(x, x));
        for (const auto& y : u) {
          if (leftof(x, y) && leftof(y, x)) EXPECT_EQ(x, y);
          if (!leftof(x, y)) continue;
          for (const auto& z : u)
            if (leftof(y, z)) EXPECT_TRUE(leftof(x, z));
        }
      }
    }
  EXPECT_THROW(leftof({1}, {1, 2}), std::invalid_argument);
}

TEST(Ideals, EnumerationMatchesFilteredSubfamilies) {
  for (auto [n, a] : {std::pair{3, 1}, {4, 2}, {5, 2}, {6, 2}, {5, 3}, {6, 1}}) {
    std::set<std::vector<Subset>> fast;
    for_each_ideal(n, a, [&](const SetFamily& f) {
      EXPECT_TRUE(is_ideal(f));
      EXPECT_TRUE(fast.insert(f.members).second);
    });
    std::set<std::vector<Subset>> slow;
    for (const auto& f : all_subfamilies(n, a))
      if (is_ideal(f)) slow.insert(f.members);
    EXPECT_EQ(fast, slow) << n << "," << a;
  }
}

TEST(Borders, Examples) {
  EXPECT_EQ(borders({2, 5, 7}, 1), (std::pair<Subset, Subset>{{2}, {7}}));
  EXPECT_EQ(borders({2, 5, 7}, 3).first, (Subset{2, 5, 7}));
  EXPECT_THROW(borders({2, 5}, 3), std::out_of_range);
}

TEST(FiCondition, ExamplesAndEquivalence) {
  EXPECT_TRUE(fi_condition(SetFamily(4, 2, {{1, 2}}), SetFamily(4, 2, {{3, 4}}), 0));
  EXPECT_FALSE(fi_condition(SetFamily(4, 2, {{1, 2}}), SetFamily(4, 2, {{1, 2}}), 0));
  EXPECT_THROW(fi_condition(SetFamily(4, 2), SetFamily(4, 2), 2), std::invalid_argument);
  for (int n = 2; n <= 5; ++n)
    for (int a = 1; a <= std::min(3, n); ++a) EXPECT_EQ(check_fi_equivalence(n, a).violations, 0u);
}

TEST(FiCondition, FailsForNonIdeals) {
  // {2,3} alone is not an ideal; {1,4} meets it in nothing yet fi_condition rejects it.
  SetFamily f(4, 2, {{2, 3}});
  SetFamily g(4, 2, {{1, 4}});
  EXPECT_TRUE(are_t_far(f, g, 0));
  EXPECT_FALSE(fi_condition(f, g, 0));
}

TEST(ProductBound, ClosedForm) {
  EXPECT_NEAR(theorem3_bound(6, 2, 0).convert_to<double>(), 57600 * std::exp(-0.025), 1e-6);
  EXPECT_NEAR(theorem3_bound(10, 4, 1).convert_to<double>() / 3.222e7, 1.0, 1e-3);
  for (int n = 3; n <= 12; ++n)
    for (int a = 1; a < n; ++a) {
      auto lower = theorem3_bound_lower(n, a, 0);
      // 50-digit evaluation against a 2^-256 rational enclosure
      EXPECT_LE(to_float(lower), theorem3_bound(n, a, 0) * (1 + Float("1e-40")));
      EXPECT_GT(to_float(lower), theorem3_bound(n, a, 0) * (1 - Float("1e-40")));
      for (int t = 1; t < a; ++t) EXPECT_GE(theorem3_bound(n, a, t), theorem3_bound(n, a, t - 1));
    }
  EXPECT_THROW(theorem3_bound(6, 2, 2), std::invalid_argument);
}

TEST(MaxProduct, MatchesNaiveOracle) {
  EXPECT_EQ(max_product_bruteforce(6, 2, 0).value, 9);
  EXPECT_EQ(max_product_bruteforce(4, 2, 0).value, 1);
  for (auto [n, a] : {std::pair{3, 1}, {4, 1}, {4, 2}, {5, 1}, {5, 2}})
    for (int t = 0; t < a; ++t) {
      auto families = all_subfamilies(n, a);
      std::uint64_t best = 0;
      for (const auto& f : families)
        for (const auto& g : families)
          if (f.size() * g.size() > best && are_t_far(f, g, t)) best = f.size() * g.size();
      auto m = max_product_bruteforce(n, a, t);
      EXPECT_EQ(m.value, best) << n << "," << a << "," << t;
      EXPECT_TRUE(are_t_far(m.f, m.g, t));
      EXPECT_EQ(BigInt(m.f.size() * m.g.size()), m.value);
    }
  Caps tight;
  tight.max_family_universe = 10;
  EXPECT_THROW(max_product_bruteforce(6, 2, 0, tight), CapExceeded);
}

TEST(Probability, MuProb) {
  EXPECT_EQ(mu_prob(SetFamily(4, 2, {{1, 2}}), Rational(1, 2)), Rational(1, 16));
  EXPECT_EQ(mu_prob(SetFamily(4, 2), Rational(1, 2)), 0);
  SetFamily full(5, 2, all_subsets(5, 2));
  EXPECT_EQ(mu_prob(full, Rational(2, 5)), Rational(10) * Rational(4, 25) * Rational(27, 125));
  EXPECT_THROW(mu_prob(full, Rational(3, 2)), std::domain_error);
}

TEST(Probability, BoundRhs) {
  EXPECT_NEAR(prob_bound_rhs(6, 2, 0).convert_to<double>(), 23.41, 0.01);
  EXPECT_EQ(prob_bound_rhs(7, 3, 2), 28);
  EXPECT_LE(to_float(prob_bound_rhs_lower(6, 2, 0)), prob_bound_rhs(6, 2, 0));
}

TEST(Probability, BoundAtSmallSizes) {
  for (int n = 2; n <= 6; ++n)
    for (int a = 1; a < n; ++a)
      for (int t = 0; t < a; ++t) EXPECT_EQ(check_prob_lemma(n, a, t).sweep.violations, 0u);
}

TEST(Probability, KlAndTopsoe) {
  auto same = kl_and_topsoe(Rational(1, 3), Rational(1, 3));
  EXPECT_LT(abs(same.kl), Float("1e-45"));
  auto r = kl_and_topsoe(Rational(1, 2), Rational(1, 4));
  double x = 0.5, y = 0.25;
  EXPECT_NEAR(r.kl.convert_to<double>(), x * std::log(x / y) + (1 - x) * std::log((1 - x) / (1 - y)), 1e-12);
  EXPECT_NEAR(r.topsoe_rhs.convert_to<double>(), 0.0625 / 1.5, 1e-12);
  auto edge = kl_and_topsoe(Rational(0), Rational(1, 2));
  EXPECT_NEAR(edge.kl.convert_to<double>(), std::log(2.0), 1e-12);
  EXPECT_THROW(kl_and_topsoe(Rational(1, 2), Rational(1)), std::domain_error);
  testing_support::Rng rng(61);
  for (int i = 0; i < 2000; ++i) {
    auto k = kl_and_topsoe(Rational(rng.uniform(0, 1000), 1000), Rational(rng.uniform(1, 999), 1000));
    EXPECT_GE(k.kl + Float("1e-40"), k.topsoe_rhs);
  }
}

TEST(Probability, ChernoffAgainstDirectTail) {
  for (int l : {1, 5, 12, 20})
    for (int p10 : {1, 3, 5, 9})
      for (int e20 : {0, 1, 4, 10}) {
        Rational p(p10, 10), eps(e20, 20);
        auto c = chernoff_two_sided(l, p, eps);
        double direct = 0, pd = p10 / 10.0, ed = e20 / 20.0;
        for (int j = 0; j <= l; ++j) {
          // exact comparisons with rationals; the tail itself in doubles
          if (Rational(j) < (p - eps) * l || Rational(j) > (p + eps) * l)
            direct += std::tgamma(l + 1) / (std::tgamma(j + 1) * std::tgamma(l - j + 1)) * std::pow(pd, j) * std::pow(1 - pd, l - j);
        }
        EXPECT_NEAR(to_float(c.exact).convert_to<double>(), direct, 1e-9);
        EXPECT_GE(to_float(c.bound_lower), to_float(c.exact));
        EXPECT_LE(to_float(c.bound_lower), c.bound * (1 + Float("1e-40")));
        EXPECT_NEAR(c.bound.convert_to<double>(), 2 * std::exp(-ed * ed * l / (4 * pd + 2 * ed)), 1e-12);
      }
}

TEST(Probability, BinomialLowerBound) {
  EXPECT_NEAR(binom_lower_bound(2, 1).convert_to<double>(), 2.0, 1e-12);
  EXPECT_NEAR(binom_lower_bound(10, 5).convert_to<double>(), 228.97, 0.01);
  for (int n = 2; n <= 60; ++n)
    for (int a = 1; a < n; ++a) EXPECT_LE(binom_lower_bound(n, a), Float(binomial(n, a)) * (1 + Float("1e-40")));
}

TEST(ShiftSuite, SeededRunIsCleanAndReproducible) {
  auto a = run_shift_suite(99, 2000), b = run_shift_suite(99, 2000);
  EXPECT_EQ(a.cases, 2000);
  EXPECT_EQ(a.far_violations + a.size_violations + a.compress_violations, 0);
  EXPECT_EQ(a.cases, b.cases);
}
