#include <algorithm>
#include <set>
#include <stdexcept>

#include "corpus.hpp"
#include "doctest.h"
#include "umach/machine.hpp"

using namespace umach;

namespace {

Machine one_rule(Move mv) {
  return corpus::make("one-rule", 2, 1, {{1, 1, mv == Move::None ? 2 : 1, 1, mv}});
}

std::set<Configuration> step_set(const Machine& m, const Configuration& c) {
  auto v = step(m, c);
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("step applies the unique matching rule") {
  Machine m = one_rule(Move::None);
  Configuration c{{}, 1, {1}};
  CHECK(step_set(m, c) == std::set<Configuration>{{{}, 2, {1}}});
}

TEST_CASE("step from the final state yields nothing") {
  Machine m = one_rule(Move::None);
  CHECK(step(m, {{}, 2, {1}}).empty());
}

TEST_CASE("step right past the end appends a blank") {
  Machine m = one_rule(Move::Right);
  CHECK(step_set(m, {{}, 1, {1}}) == std::set<Configuration>{{{1}, 1, {1}}});
}

TEST_CASE("step left at the left end prepends a blank") {
  Machine m = corpus::left_bouncer();
  CHECK(step_set(m, {{}, 1, {1}}) == std::set<Configuration>{{{}, 2, {1, 1}}});
}

TEST_CASE("step rejects malformed configurations") {
  Machine m = corpus::identity();
  CHECK_THROWS_AS(step(m, {{}, 5, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(step(m, {{}, 1, {}}), std::invalid_argument);
  CHECK_THROWS_AS(step(m, {{9}, 1, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(step(m, {{}, 1, {9}}), std::invalid_argument);
}

TEST_CASE("run_n with n=0 is the identity") {
  for (const Machine& m : corpus::deterministic_halters()) {
    Configuration c{{2 % m.num_symbols + 1}, 1, {1}};
    auto got = run_n(m, c, 0);
    REQUIRE(got.size() == 1);
    CHECK(got.front() == c);
  }
}

TEST_CASE("run_n follows deterministic steps") {
  Machine m = one_rule(Move::None);
  auto got = run_n(m, {{}, 1, {1}}, 1);
  REQUIRE(got.size() == 1);
  CHECK(got.front() == Configuration{{}, 2, {1}});
}

TEST_CASE("run_n enumerates both branches of a choice") {
  Machine m = corpus::ntm_stop_or_drift();
  auto got = run_n(m, {{}, 1, {1}}, 1);
  std::set<Configuration> want{{{}, 2, {1}}, {{1}, 1, {1}}};
  CHECK(std::set<Configuration>(got.begin(), got.end()) == want);
}

TEST_CASE("run_n composes") {
  std::vector<Machine> ms{corpus::ntm_stop_or_drift(), corpus::picky2(),
                          corpus::left_bouncer(), corpus::ntm_write_choice()};
  for (const Machine& m : ms) {
    REQUIRE(m.num_states <= 3);
    for (const Word& w : corpus::words_up_to(m.num_symbols, 2)) {
      Configuration c0 = initial_configuration(m, w);
      for (std::uint64_t a = 0; a <= 3; ++a)
        for (std::uint64_t b = 0; b <= 3; ++b) {
          auto direct = run_n(m, c0, a + b);
          std::set<Configuration> stitched;
          for (const Configuration& d : run_n(m, c0, a))
            for (const Configuration& e : run_n(m, d, b)) stitched.insert(e);
          CHECK(std::set<Configuration>(direct.begin(), direct.end()) ==
                stitched);
        }
    }
  }
}

TEST_CASE("no configuration escapes the final state") {
  for (const Machine& m : corpus::deterministic_halters()) {
    CHECK(step(m, {{}, m.final_state(), {1}}).empty());
    CHECK(step(m, {{1}, m.final_state(), {m.num_symbols}}).empty());
  }
}

TEST_CASE("step results stay well-formed") {
  for (const Machine& m : corpus::deterministic_halters()) {
    for (const Word& w : corpus::words_up_to(m.num_symbols, 2)) {
      std::vector<Configuration> level{initial_configuration(m, w)};
      for (int i = 0; i < 6 && !level.empty(); ++i) {
        std::vector<Configuration> next;
        for (const Configuration& c : level)
          for (const Configuration& s : step(m, c)) {
            REQUIRE(!s.right.empty());
            REQUIRE(s.state >= 1);
            REQUIRE(s.state <= m.num_states);
            for (Symbol x : tape_word(s)) {
              REQUIRE(x >= 1);
              REQUIRE(x <= m.num_symbols);
            }
            next.push_back(s);
          }
        level = std::move(next);
      }
    }
  }
}

TEST_CASE("run_to_final reaches the increment result in two steps") {
  Machine m = corpus::increment();
  RunResult r = run_to_final(m, initial_configuration(m, {1, 1}), 10);
  REQUIRE(r.status == HaltStatus::Final);
  CHECK(r.steps == 2);
  CHECK(*r.config == Configuration{{}, 3, {2, 1}});
}

TEST_CASE("run_to_final reports halting outside the final state") {
  Machine m = corpus::rule_free();
  RunResult r = run_to_final(m, initial_configuration(m, {1}), 10);
  CHECK(r.status == HaltStatus::Stuck);
  CHECK(r.steps == 0);
}

TEST_CASE("run_to_final reports fuel exhaustion separately") {
  Machine m = corpus::shuttle();
  RunResult r = run_to_final(m, initial_configuration(m, {2}), 100);
  CHECK(r.status == HaltStatus::Timeout);
  CHECK(r.steps == 100);
}

TEST_CASE("run_to_final_nd finds the branch that stops") {
  Machine m = corpus::ntm_stop_or_drift();
  auto finals = run_to_final_nd(m, initial_configuration(m, {1}), 3);
  CHECK(std::count(finals.begin(), finals.end(), Configuration{{}, 2, {1}}) ==
        1);
}

TEST_CASE("computed_function on the identity machine") {
  CHECK(computed_function(corpus::identity(), {1, 2}) == Word{1, 2});
}

TEST_CASE("computed_function on the increment machine") {
  CHECK(computed_function(corpus::increment(), {1, 1}) == Word{2, 1});
}

TEST_CASE("computed_function is undefined without rules") {
  CHECK(!computed_function(corpus::rule_free(), {1}).has_value());
}

TEST_CASE("computed_function rejects bad arguments") {
  CHECK_THROWS_AS(computed_function(corpus::identity(), {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(computed_function(corpus::ntm_write_choice(), {1}),
                  std::invalid_argument);
}

TEST_CASE("reachable_finals enumerates both written symbols") {
  auto got = reachable_finals(corpus::ntm_write_choice(), {1}, 5);
  CHECK(got == std::vector<Word>{{1}, {2}});
}

TEST_CASE("reachable_finals with no fuel is empty") {
  CHECK(reachable_finals(corpus::ntm_write_choice(), {1}, 0).empty());
}

TEST_CASE("reachable_finals collapses to computed_function when deterministic") {
  for (const Machine& m : corpus::deterministic_halters()) {
    for (const Word& w : corpus::words_up_to(m.num_symbols, 3)) {
      auto f = computed_function(m, w, 10000);
      auto set = reachable_finals(m, w, 10000);
      if (f.has_value()) {
        CHECK(set == std::vector<Word>{*f});
      } else {
        CHECK(set.empty());
      }
    }
  }
}

TEST_CASE("canonical_rules orders by state then symbol") {
  Machine m = corpus::parity_marker();
  auto rs = canonical_rules(m);
  for (std::size_t i = 1; i < rs.size(); ++i)
    CHECK(std::pair{rs[i - 1].from, rs[i - 1].read} <
          std::pair{rs[i].from, rs[i].read});
}

TEST_CASE("machine_fingerprint ignores rule order but sees rule changes") {
  Machine a = corpus::parity_marker();
  Machine b = a;
  std::reverse(b.rules.begin(), b.rules.end());
  CHECK(machine_fingerprint(a) == machine_fingerprint(b));
  Machine c = a;
  c.rules.pop_back();
  CHECK(machine_fingerprint(a) != machine_fingerprint(c));
}

TEST_CASE("validate rejects malformed machines") {
  Machine dup = corpus::identity();
  dup.rules.push_back({1, 1, 2, 2, Move::None});
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

  Machine from_final = corpus::identity();
  from_final.rules.push_back({2, 1, 2, 1, Move::None});
  CHECK_THROWS_AS(from_final.validate(), std::invalid_argument);

  Machine bad_symbol = corpus::identity();
  bad_symbol.rules.push_back({1, 3, 2, 1, Move::None});
  CHECK_THROWS_AS(bad_symbol.validate(), std::invalid_argument);

  Machine bad_blank = corpus::identity();
  bad_blank.blank = 7;
  CHECK_THROWS_AS(bad_blank.validate(), std::invalid_argument);
}

TEST_CASE("TapeRunner matches run_to_final on the corpus") {
  for (const Machine& m : corpus::deterministic_halters()) {
    for (const Word& w : corpus::words_up_to(m.num_symbols, 4)) {
      RunResult ref = run_to_final(m, initial_configuration(m, w), 5000);
      TapeRunner runner(m, initial_configuration(m, w));
      TapeRunner::Outcome o = runner.run(5000);
      if (ref.status == HaltStatus::Final) {
        REQUIRE(o == TapeRunner::Outcome::Final);
        CHECK(runner.steps() == ref.steps);
        CHECK(tape_word(runner.configuration()) == tape_word(*ref.config));
        CHECK(runner.state() == m.final_state());
      } else if (ref.status == HaltStatus::Stuck) {
        REQUIRE(o == TapeRunner::Outcome::Stuck);
        CHECK(runner.steps() == ref.steps);
      } else {
        REQUIRE(o == TapeRunner::Outcome::OutOfFuel);
      }
    }
  }
}

TEST_CASE("TapeRunner tracks the visited extent") {
  Machine m = corpus::right_mover();
  TapeRunner runner(m, initial_configuration(m, {2, 2, 2}));
  CHECK(runner.peak_cells() == 3);
  REQUIRE(runner.run(100) == TapeRunner::Outcome::Final);
  CHECK(runner.peak_cells() == 4);

  Machine lb = corpus::left_bouncer();
  TapeRunner left(lb, initial_configuration(lb, {1}));
  REQUIRE(left.run(100) == TapeRunner::Outcome::Final);
  CHECK(left.peak_cells() == 2);
}

TEST_CASE("TapeRunner stops before exceeding the space limit") {
  Machine m = corpus::right_mover();
  TapeRunner runner(m, initial_configuration(m, {2, 2, 2}));
  runner.set_space_limit(3);
  CHECK(runner.run(100) == TapeRunner::Outcome::SpaceViolation);
  CHECK(runner.peak_cells() == 3);

  TapeRunner loose(m, initial_configuration(m, {2, 2, 2}));
  loose.set_space_limit(4);
  CHECK(loose.run(100) == TapeRunner::Outcome::Final);
}

TEST_CASE("TapeRunner pauses on the watch state and resumes") {
  Machine m = corpus::increment();
  TapeRunner runner(m, initial_configuration(m, {1, 1}));
  runner.set_watch_state(2);
  REQUIRE(runner.run(100) == TapeRunner::Outcome::Paused);
  CHECK(runner.state() == 2);
  CHECK(runner.steps() == 1);
  CHECK(runner.run(100) == TapeRunner::Outcome::Final);
  CHECK(runner.steps() == 2);
}

TEST_CASE("TapeRunner rule counts sum to the step count") {
  Machine m = corpus::copier();
  TapeRunner runner(m, initial_configuration(m, {2, 2}));
  runner.enable_rule_counts();
  REQUIRE(runner.run(10000) == TapeRunner::Outcome::Final);
  std::uint64_t total = 0;
  for (std::uint64_t c : runner.rule_counts()) total += c;
  CHECK(total == runner.steps());
  std::size_t fired = 0;
  for (std::uint64_t c : runner.rule_counts())
    if (c > 0) ++fired;
  CHECK(fired == m.rules.size());
}

TEST_CASE("copier duplicates its input block") {
  CHECK(computed_function(corpus::copier(), {2, 2}, 10000) ==
        Word{1, 2, 2, 1, 2, 2});
  CHECK(computed_function(corpus::copier(), {2}, 10000) == Word{1, 2, 1, 2});
}

TEST_CASE("explore agrees with run_to_final_nd") {
  auto machines = corpus::nondeterministic_machines();
  for (const Machine& m : corpus::deterministic_halters())
    machines.push_back(m);
  for (const Machine& m : machines) {
    for (const Word& w : corpus::words_up_to(m.num_symbols, 3)) {
      auto ref = run_to_final_nd(m, initial_configuration(m, w), 40);
      ExploreResult got = explore(m, initial_configuration(m, w), 40);
      CHECK(got.finals == ref);
    }
  }
}

TEST_CASE("explore reports space violations") {
  Machine m = corpus::right_mover();
  ExploreResult r = explore(m, initial_configuration(m, {2, 2, 2}), 100, 3);
  CHECK(r.hit_space);
  CHECK(r.finals.empty());
}
