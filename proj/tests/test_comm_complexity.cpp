#include <gtest/gtest.h>

#include "seplab/comm_complexity.hpp"
#include "support.hpp"

using namespace seplab;

namespace {

std::vector<SetFamily> subfamilies(int n, int a) {
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

// Oracle: exact set cover over the maximal I-avoiding boxes, branching on
// the first uncovered D tuple.
int naive_min_cover(const DisjPrimeInstance& inst) {
  auto d = gen_D(inst), bad = gen_I(inst);
  auto fams = subfamilies(inst.n, inst.a());
  std::vector<Box> boxes;
  std::function<void(Box&)> build = [&](Box& b) {
    if (static_cast<int>(b.factors.size()) == inst.k) {
      if (std::none_of(bad.begin(), bad.end(), [&](const auto& y) { return b.contains(y); })) boxes.push_back(b);
      return;
    }
    for (const auto& f : fams) {
      b.factors.push_back(f);
      build(b);
      b.factors.pop_back();
    }
  };
  Box empty;
  build(empty);
  auto inside = [](const Box& x, const Box& y) {
    for (std::size_t i = 0; i < x.factors.size(); ++i)
      for (const auto& s : x.factors[i].members)
        if (!y.factors[i].contains(s)) return false;
    return true;
  };
  std::vector<Box> maximal;
  for (const auto& b : boxes)
    if (std::none_of(boxes.begin(), boxes.end(), [&](const Box& o) { return !inside(o, b) && inside(b, o); })) maximal.push_back(b);
  int best = static_cast<int>(d.size());
  std::vector<int> covered(d.size(), 0);
  std::function<void(int)> go = [&](int used) {
    if (used >= best) return;
    auto it = std::find(covered.begin(), covered.end(), 0);
    if (it == covered.end()) {
      best = used;
      return;
    }
    auto& target = d[it - covered.begin()];
    for (const auto& b : maximal) {
      if (!b.contains(target)) continue;
      for (std::size_t j = 0; j < d.size(); ++j) covered[j] += b.contains(d[j]);
      go(used + 1);
      for (std::size_t j = 0; j < d.size(); ++j) covered[j] -= b.contains(d[j]);
    }
  };
  go(0);
  return best;
}

// Oracle straight from the definition of A.
BigInt naive_A(int n, int a, int t, int k) {
  auto fams = subfamilies(n, a);
  const int universe = static_cast<int>(all_subsets(n, a).size());
  for (int bound = 1; bound <= universe + 1; ++bound) {
    std::vector<const SetFamily*> pick;
    std::function<bool(int)> all_good = [&](int i) -> bool {
      if (i == k) {
        for (const auto& x : pick[0]->members) {
          bool ok = true;
          for (int j = 1; j < k && ok; ++j)
            ok = std::any_of(pick[j]->members.begin(), pick[j]->members.end(),
                             [&](const Subset& y) { return intersection_size(x, y) >= t + 1; });
          if (ok) return true;
        }
        return false;
      }
      for (const auto& f : fams) {
        if (static_cast<int>(f.size()) < bound) continue;
        pick.push_back(&f);
        bool good = all_good(i + 1);
        pick.pop_back();
        if (!good) return false;
      }
      return true;
    };
    if (all_good(0)) return bound;
  }
  return universe + 1;
}

}  // namespace

TEST(Instance, Validation) {
  EXPECT_NO_THROW((DisjPrimeInstance{2, 2, Rational(1, 2)}.validate()));
  EXPECT_THROW((DisjPrimeInstance{3, 4, Rational(1, 2)}.validate()), std::invalid_argument);
  EXPECT_THROW((DisjPrimeInstance{4, 2, Rational(0)}.validate()), std::invalid_argument);
  EXPECT_EQ((DisjPrimeInstance{7, 3, Rational(1, 2)}.a()), 2);
}

TEST(DisjValue, Examples) {
  DisjPrimeInstance small{2, 2, Rational(1, 2)};
  EXPECT_EQ(disj_value(small, {{1}, {2}}), DisjValue::One);
  EXPECT_EQ(disj_value(small, {{1}, {1}}), DisjValue::Zero);
  DisjPrimeInstance six{6, 2, Rational(1, 2)};
  EXPECT_EQ(disj_value(six, {{1, 2, 3}, {3, 4, 5}}), DisjValue::Undefined);
  EXPECT_THROW(disj_value(six, {{1, 2}, {3, 4}}), std::invalid_argument);
  EXPECT_THROW(disj_value(six, {{1, 2, 3}}), std::invalid_argument);
}

TEST(Generators, CountsAgainstFormula) {
  for (int n = 2; n <= 8; ++n)
    for (int k = 2; k <= std::min(3, n); ++k) {
      DisjPrimeInstance inst{n, k, Rational(1, 2)};
      auto d = gen_D(inst);
      EXPECT_EQ(BigInt(d.size()), size_of_D(n, k));
      EXPECT_TRUE(std::is_sorted(d.begin(), d.end()));
      for (const auto& x : d) EXPECT_EQ(disj_value(inst, x), DisjValue::One);
      for (const auto& y : gen_I(inst)) EXPECT_NE(disj_value(inst, y), DisjValue::One);
    }
  EXPECT_EQ(size_of_D(4, 2), 6);
  auto i = gen_I({2, 2, Rational(1, 2)});
  EXPECT_EQ(i, (std::vector<std::vector<Subset>>{{{1}, {1}}, {{2}, {2}}}));
}

TEST(Generators, RefuseLargeInstances) {
  EXPECT_THROW(gen_D({40, 2, Rational(1, 2)}), CapExceeded);
}

TEST(Cover, CheckExamples) {
  DisjPrimeInstance inst{2, 2, Rational(1, 2)};
  CoverCertificate singletons{inst, {}};
  for (const auto& x : gen_D(inst)) {
    Box b;
    for (const auto& s : x) b.factors.emplace_back(2, 1, std::vector<Subset>{s});
    singletons.boxes.push_back(b);
  }
  EXPECT_TRUE(check_cover(singletons));
  SetFamily both(2, 1, {{1}, {2}});
  EXPECT_FALSE(check_cover({inst, {Box{{both, both}}}}));
  EXPECT_FALSE(check_cover({inst, {}}));
}

TEST(Cover, MinimumMatchesOracle) {
  EXPECT_EQ(min_cover_bruteforce({2, 2, Rational(1, 2)}).size, 2);
  for (auto inst : {DisjPrimeInstance{2, 2, Rational(1, 2)}, DisjPrimeInstance{3, 2, Rational(1, 2)},
                    DisjPrimeInstance{4, 2, Rational(2, 5)}, DisjPrimeInstance{4, 2, Rational(9, 10)},
                    DisjPrimeInstance{3, 3, Rational(1, 2)}}) {
    auto m = min_cover_bruteforce(inst);
    EXPECT_EQ(m.size, naive_min_cover(inst)) << inst.n << "," << inst.k;
    EXPECT_EQ(static_cast<int>(m.boxes.size()), m.size);
    EXPECT_TRUE(check_cover({inst, m.boxes}));
    EXPECT_LE(BigInt(m.size), size_of_D(inst.n, inst.k));
  }
}

TEST(Cover, RandomCertificatesNeverBeatTheMinimum) {
  DisjPrimeInstance inst{4, 2, Rational(2, 5)};
  auto d = gen_D(inst);
  int best = min_cover_bruteforce(inst).size;
  testing_support::Rng rng(67);
  for (int trial = 0; trial < 300; ++trial) {
    // Random partition of D into groups, each group as its hull.
    std::vector<std::vector<std::vector<Subset>>> groups(rng.uniform(1, static_cast<int>(d.size())));
    for (const auto& x : d) groups[rng.uniform(0, static_cast<int>(groups.size()) - 1)].push_back(x);
    CoverCertificate cert{inst, {}};
    for (const auto& g : groups) {
      if (g.empty()) continue;
      Box b;
      for (int c = 0; c < inst.k; ++c) {
        std::vector<Subset> members;
        for (const auto& x : g) members.push_back(x[c]);
        b.factors.emplace_back(inst.n, inst.a(), members);
      }
      cert.boxes.push_back(b);
    }
    if (check_cover(cert)) EXPECT_GE(static_cast<int>(cert.boxes.size()), best);
  }
}

TEST(Bounds, LowerBoundFormula) {
  auto v = thm4_lower_bound(BigInt(100000000), 10, Rational(1, 10));
  ASSERT_TRUE(v.has_value());
  EXPECT_NEAR(v->convert_to<double>(), 10 - 2 * std::log2(1e8), 1e-9);
  EXPECT_FALSE(thm4_lower_bound(BigInt(100), 10, Rational(1, 10)).has_value());
  EXPECT_FALSE(thm4_lower_bound(BigInt(100000000), 1, Rational(1, 10)).has_value());
  auto bigger = thm4_lower_bound(BigInt("1000000000"), 10, Rational(1, 10));
  EXPECT_GT(*bigger, *v);
}

TEST(Bounds, DoublingThreshold) {
  EXPECT_NEAR(lemma9_threshold(6, 2, 0, 2).convert_to<double>(), 16 * std::exp(-1.0 / 80) * 15 + 1, 1e-9);
  for (int k = 2; k < 6; ++k) {
    auto lo = lemma9_threshold(6, 2, 0, k), hi = lemma9_threshold(6, 2, 0, k + 1);
    EXPECT_LT(abs(hi - 2 * lo), Float("1e-40"));
  }
  EXPECT_EQ(a2_upper_bound(6, 2, 0), 238);
}

TEST(AValues, MatchDefinition) {
  EXPECT_EQ(A_bruteforce(3, 1, 0, 2), 2);
  EXPECT_EQ(A_bruteforce(3, 1, 0, 3), 3);
  EXPECT_EQ(A_bruteforce(4, 2, 0, 3), 2);
  for (auto [n, a, t, k] : {std::tuple{3, 1, 0, 2}, {3, 1, 0, 3}, {4, 1, 0, 2}, {4, 1, 0, 3}, {4, 2, 0, 2}, {4, 2, 1, 2}, {3, 2, 0, 2},
                            {3, 2, 1, 2}, {3, 2, 1, 3}})
    EXPECT_EQ(A_bruteforce(n, a, t, k), naive_A(n, a, t, k)) << n << "," << a << "," << t << "," << k;
}

TEST(AValues, MonotoneDoublingAndUpperBound) {
  for (auto [n, a, t] : {std::tuple{3, 1, 0}, {4, 1, 0}, {4, 2, 0}, {4, 2, 1}, {5, 1, 0}, {5, 2, 1}}) {
    BigInt prev = A_bruteforce(n, a, t, 2);
    EXPECT_LE(prev, a2_upper_bound(n, a, t));
    for (int k = 3; k <= 3; ++k) {
      BigInt next = A_bruteforce(n, a, t, k);
      EXPECT_LE(prev, next);
      EXPECT_LE(next, 2 * prev);
      prev = next;
    }
  }
  EXPECT_THROW(A_bruteforce(6, 3, 0, 3), CapExceeded);
  EXPECT_THROW(min_cover_bruteforce({5, 2, Rational(1, 2)}), CapExceeded);
}
