#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "doctest.h"
#include "umach/rewriting.hpp"

using namespace umach;

namespace {

SemiThue swap_ab() { return {2, {{{1, 2}, {2, 1}}}}; }

std::vector<Configuration> configurations_up_to(const Machine& m,
                                                int max_len) {
  std::vector<Configuration> out;
  for (int len = 1; len <= max_len; ++len)
    for (int ll = 0; ll < len; ++ll)
      for (State q = 1; q <= m.num_states; ++q) {
        std::vector<Word> lefts{{}}, rights{{}};
        auto expand = [&](std::vector<Word>& words, int target) {
          while (static_cast<int>(words.front().size()) < target) {
            std::vector<Word> next;
            for (const Word& w : words)
              for (Symbol s = 1; s <= m.num_symbols; ++s) {
                Word e = w;
                e.push_back(s);
                next.push_back(std::move(e));
              }
            words = std::move(next);
          }
        };
        expand(lefts, ll);
        expand(rights, len - ll);
        for (const Word& l : lefts)
          for (const Word& r : rights) out.push_back({l, q, r});
      }
  return out;
}

std::set<Word> sts_closure(const SemiThue& s, const Word& from, int depth) {
  std::set<Word> seen{from};
  std::set<Word> frontier{from};
  for (int i = 0; i < depth; ++i) {
    std::set<Word> next;
    for (const Word& w : frontier)
      for (const Word& v : sts_step(s, w))
        if (seen.insert(v).second) next.insert(v);
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

TEST_CASE("single rewriting steps") {
  CHECK(sts_step(swap_ab(), {1, 2}) == std::set<Word>{{2, 1}});
  SemiThue dup{1, {{{1}, {1, 1}}}};
  CHECK(sts_step(dup, {1, 1}) == std::set<Word>{{1, 1, 1}});
  CHECK(sts_step(swap_ab(), {2, 1}).empty());
  CHECK_THROWS_AS(sts_step(swap_ab(), {3}), std::invalid_argument);
  SemiThue bad{1, {{{}, {1}}}};
  CHECK_THROWS_AS(sts_step(bad, {1}), std::invalid_argument);
}

TEST_CASE("bounded derivability is three-valued") {
  CHECK(derivable(swap_ab(), {1, 2}, {2, 1}, 1) == Derivability::Yes);
  CHECK(derivable(swap_ab(), {1, 2}, {1, 2}, 0) == Derivability::Yes);
  SemiThue empty_rules{2, {}};
  CHECK(derivable(empty_rules, {1}, {2}, 100) == Derivability::No);
  SemiThue chain{3, {{{1}, {2}}, {{2}, {3}}}};
  CHECK(derivable(chain, {1}, {3}, 2) == Derivability::Yes);
  CHECK(derivable(chain, {1}, {3}, 1) == Derivability::Unknown);
  SemiThue dup{1, {{{1}, {1, 1}}}};
  CHECK(derivable(dup, {1}, {1, 1, 1}, 1) == Derivability::Unknown);
  CHECK(derivable(dup, {1, 1}, {1}, 50) == Derivability::Unknown);
  CHECK(derivable(swap_ab(), {1, 2}, {2, 2}, 50) == Derivability::No);
}

TEST_CASE("machine steps embed to single rewrite steps, exhaustively") {
  std::vector<Machine> machines = corpus::deterministic_halters();
  for (const Machine& m : corpus::nondeterministic_machines())
    machines.push_back(m);
  for (const Machine& m : machines) {
    CAPTURE(m.name);
    TmToSts t = tm_to_sts(m);
    CHECK(t.sts.rules.size() == tm_to_sts_rule_count(m));
    for (const Configuration& c : configurations_up_to(m, 4)) {
      std::set<Word> expected;
      for (const Configuration& n : step(m, c))
        expected.insert(t.embedding.embed(n));
      CHECK(sts_step(t.sts, t.embedding.embed(c)) == expected);
    }
  }
}

TEST_CASE("the incremented word is derivable in two steps") {
  Machine m = corpus::increment();
  TmToSts t = tm_to_sts(m);
  Word from = t.embedding.embed({{}, 1, {1, 1}});
  Word to = t.embedding.embed({{}, 3, {2, 1}});
  CHECK(derivable(t.sts, from, to, 2) == Derivability::Yes);
  CHECK(derivable(t.sts, from, to, 1) != Derivability::Yes);
}

TEST_CASE("a rule-free machine yields a system that rewrites nothing") {
  Machine m = corpus::rule_free();
  TmToSts t = tm_to_sts(m);
  CHECK(t.sts.rules.empty());
  for (const Configuration& c : configurations_up_to(m, 3))
    CHECK(sts_step(t.sts, t.embedding.embed(c)).empty());
}

TEST_CASE("bounded derivability matches bounded machine reachability") {
  for (const Machine& m : {corpus::increment(), corpus::right_mover(),
                           corpus::ntm_write_choice()}) {
    CAPTURE(m.name);
    TmToSts t = tm_to_sts(m);
    for (const Word& w : corpus::words_up_to(m.num_symbols, 3)) {
      Configuration c0{{}, 1, w};
      std::vector<std::set<Word>> reached(5);
      for (int n = 0; n <= 4; ++n)
        for (const Configuration& c : run_n(m, c0, n))
          reached[n].insert(t.embedding.embed(c));
      std::set<Word> candidates;
      for (const auto& level : reached)
        candidates.insert(level.begin(), level.end());
      candidates.insert(t.embedding.embed({{}, m.num_states, {1, 1, 1, 1}}));
      for (int n = 0; n <= 4; ++n) {
        std::set<Word> within;
        for (int k = 0; k <= n; ++k)
          within.insert(reached[k].begin(), reached[k].end());
        for (const Word& cand : candidates) {
          bool member = within.count(cand) != 0;
          CHECK((derivable(t.sts, t.embedding.embed(c0), cand, n) ==
                 Derivability::Yes) == member);
        }
      }
    }
  }
}

TEST_CASE("configuration embedding is invertible and checked") {
  Machine m = corpus::parity_marker();
  TmToSts t = tm_to_sts(m);
  for (const Configuration& c : configurations_up_to(m, 3)) {
    Configuration back = t.embedding.extract(t.embedding.embed(c));
    CHECK(back.left == c.left);
    CHECK(back.state == c.state);
    CHECK(back.right == c.right);
  }
  CHECK_THROWS_AS(t.embedding.extract({1, 2, 3}), std::invalid_argument);
  Word two_states = t.embedding.embed({{}, 1, {1}});
  two_states.insert(two_states.begin() + 1, t.embedding.state_symbol(2));
  CHECK_THROWS_AS(t.embedding.extract(two_states), std::invalid_argument);
}

TEST_CASE("the rewriting machine reaches exactly the derivable words") {
  SemiThue s = swap_ab();
  StsToTm t = sts_to_tm(s);
  ExploreResult r =
      explore(t.machine, {{}, 1, t.embedding.embed({1, 2})}, 500'000);
  CHECK_FALSE(r.hit_fuel);
  std::set<Word> words;
  for (const Configuration& f : r.finals) {
    auto w = t.embedding.extract(tape_word(f));
    REQUIRE(w.has_value());
    words.insert(*w);
  }
  CHECK(words == std::set<Word>{{1, 2}, {2, 1}});
}

TEST_CASE("an empty rule set only derives the word itself") {
  SemiThue s{2, {}};
  StsToTm t = sts_to_tm(s);
  for (const Word& w : std::vector<Word>{{1}, {2, 1}, {1, 1, 2}}) {
    ExploreResult r = explore(t.machine, {{}, 1, t.embedding.embed(w)},
                              100'000);
    CHECK_FALSE(r.hit_fuel);
    std::set<Word> words;
    for (const Configuration& f : r.finals) {
      auto got = t.embedding.extract(tape_word(f));
      REQUIRE(got.has_value());
      words.insert(*got);
    }
    CHECK(words == std::set<Word>{w});
  }
}

TEST_CASE("two-way rules close into the full swap orbit") {
  SemiThue s{2, {{{1, 2}, {2, 1}}, {{2, 1}, {1, 2}}}};
  StsToTm t = sts_to_tm(s);
  Word w{1, 2, 1};
  ExploreResult r =
      explore(t.machine, {{}, 1, t.embedding.embed(w)}, 2'000'000);
  CHECK_FALSE(r.hit_fuel);
  std::set<Word> words;
  for (const Configuration& f : r.finals) {
    auto got = t.embedding.extract(tape_word(f));
    REQUIRE(got.has_value());
    words.insert(*got);
  }
  CHECK(words == sts_closure(s, w, 10));
}

TEST_CASE("a growing system is sandwiched by rewrite depths") {
  SemiThue s{1, {{{1}, {1, 1}}}};
  StsToTm t = sts_to_tm(s);
  ExploreResult r =
      explore(t.machine, {{}, 1, t.embedding.embed({1})}, 150'000);
  CHECK(r.hit_fuel);
  std::set<Word> words;
  for (const Configuration& f : r.finals) {
    auto got = t.embedding.extract(tape_word(f));
    REQUIRE(got.has_value());
    words.insert(*got);
  }
  std::size_t longest = 0;
  for (const Word& w : words) longest = std::max(longest, w.size());
  CHECK(longest >= 3);
  CHECK(words == sts_closure(s, {1}, static_cast<int>(longest) - 1));
}

TEST_CASE("shrinking rules recover the shorter word") {
  SemiThue s{2, {{{1, 2, 1}, {2}}}};
  StsToTm t = sts_to_tm(s);
  Word w{1, 2, 1, 2};
  ExploreResult r =
      explore(t.machine, {{}, 1, t.embedding.embed(w)}, 500'000);
  CHECK_FALSE(r.hit_fuel);
  std::set<Word> words;
  for (const Configuration& f : r.finals) {
    auto got = t.embedding.extract(tape_word(f));
    REQUIRE(got.has_value());
    words.insert(*got);
  }
  CHECK(words == sts_closure(s, w, 10));
  CHECK(words.count({2, 2}) == 1);
}

TEST_CASE("rules files round-trip") {
  SemiThue s = parse_sts("1 2 -> 2 1\n# comment\n2 2 ->\n");
  REQUIRE(s.rules.size() == 2);
  CHECK(s.num_symbols == 2);
  CHECK(s.rules[1].second.empty());
  CHECK(format_sts(s) == "1 2 -> 2 1\n2 2 ->\n");
  SemiThue back = parse_sts(format_sts(s));
  CHECK(back.rules == s.rules);

  CHECK_THROWS_AS(parse_sts("1 2 2 1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sts("-> 1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sts("1 x -> 1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sts("0 -> 1"), std::invalid_argument);
}

TEST_CASE("word embedding for the rewriting machine is invertible") {
  SemiThue s = swap_ab();
  StsToTm t = sts_to_tm(s);
  for (const Word& w :
       std::vector<Word>{{}, {1}, {2}, {1, 2, 2, 1}, {2, 2, 2}}) {
    auto back = t.embedding.extract(t.embedding.embed(w));
    REQUIRE(back.has_value());
    CHECK(*back == w);
  }
  CHECK_FALSE(t.embedding.extract({1, 1}).has_value());
  CHECK_FALSE(
      t.embedding.extract({t.embedding.left_marker(), 2}).has_value());
  Word gapped{t.embedding.left_marker(), t.embedding.gap_symbol(),
              t.embedding.right_marker()};
  CHECK_FALSE(t.embedding.extract(gapped).has_value());
}