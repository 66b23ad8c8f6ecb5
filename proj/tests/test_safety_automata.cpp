#include <gtest/gtest.h>

#include <set>

#include "seplab/io.hpp"
#include "support.hpp"

using namespace seplab;

namespace {

// Oracle: every automaton with 1..q_max states, any start and accept, any
// table (accept made absorbing), pushed through canonicalize and deduped.
std::vector<int> key(const SafetyAutomaton& a) {
  std::vector<int> k{a.states(), a.start(), a.accept()};
  for (int q = 0; q < a.states(); ++q)
    for (int l = 0; l < a.alphabet_size(); ++l) k.push_back(a.step_index(q, l));
  return k;
}

std::set<std::vector<int>> raw_canonical(int n, int d, int q_max) {
  std::set<std::vector<int>> out;
  const int letters = n * d;
  for (int q = 1; q <= q_max; ++q)
    for (int start = 0; start < q; ++start)
      for (int accept = 0; accept < q; ++accept) {
        const int cells = q * letters;
        std::vector<int> table(cells, 0);
        for (;;) {
          SafetyAutomaton a(n, d, q, start, accept);
          for (int c = 0; c < cells; ++c) a.set_transition_index(c / letters, c % letters, table[c]);
          out.insert(key(canonicalize(make_absorbing(a))));
          int c = 0;
          while (c < cells && ++table[c] == q) table[c++] = 0;
          if (c == cells) break;
        }
      }
  return out;
}

}  // namespace

TEST(SafetyAutomaton, LetterIndexRoundTrip) {
  SafetyAutomaton a(3, 2, 2, 0, 1);
  for (int i = 0; i < a.alphabet_size(); ++i) EXPECT_EQ(a.letter_index(a.letter_at(i)), i);
  EXPECT_THROW(a.letter_index({4, 1}), std::out_of_range);
  EXPECT_THROW(a.letter_index({1, 3}), std::out_of_range);
}

TEST(SafetyAutomaton, MakeAbsorbing) {
  SafetyAutomaton a(1, 2, 2, 0, 1);
  a.set_transition(1, {1, 1}, 0);
  EXPECT_FALSE(a.is_absorbing());
  auto b = make_absorbing(a);
  EXPECT_TRUE(b.is_absorbing());
  EXPECT_EQ(b.step(1, {1, 1}), 1);
}

TEST(Counter, AcceptsExactlyAfterThresholdTwos) {
  testing_support::Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    int n = rng.uniform(1, 4), threshold = rng.uniform(0, 5);
    auto a = counter_automaton(n, threshold);
    auto w = testing_support::random_word(rng, n, 2, rng.uniform(0, 10));
    int twos = static_cast<int>(std::count_if(w.begin(), w.end(), [](Letter l) { return l.priority == 2; }));
    EXPECT_EQ(delta_star(a, a.start(), w) == a.accept(), twos >= threshold);
  }
  auto sep = counter_separator(2);
  EXPECT_EQ(sep.states(), 4);
  EXPECT_EQ(delta_star(sep, 0, {{1, 2}, {1, 2}, {1, 2}}), sep.accept());
  EXPECT_NE(delta_star(sep, 0, {{1, 2}, {1, 1}, {2, 2}}), sep.accept());
}

TEST(Product, LoopsAgainstCounter) {
  auto sep = counter_separator(2);
  auto odd = product_reach(sep, GameGraph::from_edges(1, 2, {{1, 1, 1}}));
  EXPECT_FALSE(odd.find(1, sep.accept()).has_value());
  auto even = product_reach(sep, GameGraph::from_edges(1, 2, {{1, 1, 2}}));
  auto hit = even.find(1, sep.accept());
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(even.depth[*hit], 3);
  EXPECT_EQ(even.word_to(*hit), (PriorityWord{{1, 2}, {1, 2}, {1, 2}}));
}

TEST(Product, RejectsWiderGraph) {
  EXPECT_THROW(product_reach(counter_separator(1), GameGraph::from_edges(2, 2, {{1, 2, 1}, {2, 1, 1}})), std::invalid_argument);
}

TEST(Canonicalize, IsIdempotentAndPreservesLanguage) {
  testing_support::Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    int q = rng.uniform(1, 4);
    SafetyAutomaton a(2, 2, q, rng.uniform(0, q - 1), rng.uniform(0, q - 1));
    for (int s = 0; s < q; ++s)
      for (int l = 0; l < 4; ++l) a.set_transition_index(s, l, rng.uniform(0, q - 1));
    a = make_absorbing(a);
    auto c = canonicalize(a);
    EXPECT_EQ(canonicalize(c), c);
    for (int k = 0; k < 20; ++k) {
      auto w = testing_support::random_word(rng, 2, 2, rng.uniform(0, 6));
      EXPECT_EQ(delta_star(a, a.start(), w) == a.accept(), delta_star(c, c.start(), w) == c.accept());
    }
  }
}

TEST(Enumerate, MatchesRawEnumerationAfterDedupe) {
  for (auto [n, d, q] : {std::tuple{1, 1, 2}, {1, 2, 2}, {2, 2, 2}, {1, 2, 3}, {2, 2, 3}}) {
    auto fast = enumerate_automata(n, d, q);
    std::set<std::vector<int>> mine;
    for (const auto& a : fast) {
      EXPECT_EQ(canonicalize(a), a);
      EXPECT_TRUE(a.is_absorbing());
      mine.insert(key(a));
    }
    EXPECT_EQ(mine.size(), fast.size()) << "duplicates";
    EXPECT_EQ(mine, raw_canonical(n, d, q)) << n << "," << d << "," << q;
  }
  EXPECT_EQ(enumerate_automata(1, 1, 2).size(), 3u);
  EXPECT_EQ(enumerate_automata(2, 2, 2).size(), 17u);
  EXPECT_EQ(enumerate_automata(2, 2, 3).size(), 5282u);
}

TEST(Enumerate, RefusesBeyondCaps) {
  EXPECT_THROW(enumerate_automata(2, 2, 4), CapExceeded);
  EXPECT_THROW(enumerate_automata(4, 2, 2), CapExceeded);
  Caps wide;
  wide.max_automaton_states = 4;
  EXPECT_NO_THROW(enumerate_automata(1, 1, 4, wide));
}
