#include <random>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "umach/transducer.hpp"

using namespace umach;

namespace {

TWord chars(const std::string& s) { return TWord(s.begin(), s.end()); }

Dfst identity_over_01() {
  Dfst t;
  t.num_states = 1;
  t.accepting = {1};
  t.input_alphabet = {'0', '1'};
  t.output_alphabet = {'0', '1'};
  t.transitions[{1, '0'}] = {1, chars("0")};
  t.transitions[{1, '1'}] = {1, chars("1")};
  t.validate();
  return t;
}

}  // namespace

TEST_CASE("identity transducer copies its input in linear steps") {
  auto r = transduce(identity_over_01(), chars("0110"));
  CHECK(r.output == chars("0110"));
  CHECK(r.steps == 4);
  CHECK(r.accepted);
  CHECK(!r.failure_pos.has_value());
}

TEST_CASE("doubling transducer emits each symbol twice") {
  Dfst t = symbolwise_dfst({{'0', chars("00")}, {'1', chars("11")}});
  auto r = transduce(t, chars("01"));
  CHECK(r.output == chars("0011"));
  CHECK(r.steps == 2);
  CHECK(r.accepted);
}

TEST_CASE("missing transition rejects with the failing position") {
  Dfst t = identity_over_01();
  t.transitions.erase({1, '1'});
  auto r = transduce(t, chars("1"));
  CHECK(!r.accepted);
  REQUIRE(r.failure_pos.has_value());
  CHECK(*r.failure_pos == 0);
  CHECK(r.steps == 0);

  auto later = transduce(t, chars("001"));
  REQUIRE(later.failure_pos.has_value());
  CHECK(*later.failure_pos == 2);
  CHECK(later.steps == 2);
  CHECK(later.output == chars("00"));
}

TEST_CASE("out-of-alphabet input is an error, not a rejection") {
  CHECK_THROWS_AS(transduce(identity_over_01(), chars("2")),
                  std::invalid_argument);
}

TEST_CASE("ending outside an accepting state rejects") {
  Dfst t = identity_over_01();
  t.num_states = 2;
  t.accepting = {2};
  t.transitions[{1, '0'}] = {2, chars("0")};
  t.transitions[{2, '0'}] = {1, chars("0")};
  t.validate();
  CHECK(transduce(t, chars("0")).accepted);
  CHECK(!transduce(t, chars("00")).accepted);
  CHECK(transduce(t, chars("00")).steps == 2);
}

TEST_CASE("symbolwise table extends homomorphically") {
  Dfst t = symbolwise_dfst({{1, chars("10")}, {2, chars("110")}});
  CHECK(transduce(t, {1, 2}).output == chars("10110"));
  Dfst one = symbolwise_dfst({{1, chars("1")}});
  CHECK(transduce(one, {1, 1, 1}).output == chars("111"));
}

TEST_CASE("symbolwise table rejects empty code words") {
  CHECK_THROWS_AS(symbolwise_dfst({{1, {}}}), std::invalid_argument);
  CHECK_THROWS_AS(symbolwise_dfst({}), std::invalid_argument);
}

TEST_CASE("symbolwise outputs concatenate over split inputs") {
  Dfst t = symbolwise_dfst(
      {{1, chars("0")}, {2, chars("101")}, {3, chars("11")}});
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> len(0, 8), sym(1, 3);
  for (int trial = 0; trial < 200; ++trial) {
    TWord u, v;
    for (int i = len(rng); i > 0; --i) u.push_back(sym(rng));
    for (int i = len(rng); i > 0; --i) v.push_back(sym(rng));
    TWord uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    TWord lhs = transduce(t, uv).output;
    TWord rhs = transduce(t, u).output;
    TWord tail = transduce(t, v).output;
    rhs.insert(rhs.end(), tail.begin(), tail.end());
    CHECK(lhs == rhs);
    CHECK(transduce(t, uv).steps == uv.size());
  }
}

TEST_CASE("transduction is deterministic") {
  Dfst t = symbolwise_dfst({{1, chars("10")}, {2, chars("0")}});
  TWord w{1, 2, 2, 1};
  auto a = transduce(t, w);
  auto b = transduce(t, w);
  CHECK(a.output == b.output);
  CHECK(a.steps == b.steps);
  CHECK(a.accepted == b.accepted);
}

TEST_CASE("validate rejects inconsistent transducers") {
  Dfst t = identity_over_01();
  t.transitions[{1, '0'}] = {5, chars("0")};
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);

  Dfst bad_out = identity_over_01();
  bad_out.transitions[{1, '0'}] = {1, chars("2")};
  CHECK_THROWS_AS(bad_out.validate(), std::invalid_argument);
}
