#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "umach/fa.hpp"

using namespace umach;

namespace {

const std::vector<char> kA{'a'};
const std::vector<char> kBits{'0', '1'};

Fa parity_fa() {
  Fa a;
  a.num_states = 2;
  a.alphabet = kBits;
  a.transitions = {1, 2, 2, 1};
  a.accepting = {1};
  a.validate();
  return a;
}

std::vector<std::string> words_up_to(const std::vector<char>& alphabet,
                                     int max_len) {
  std::vector<std::string> out{""};
  std::vector<std::string> level{""};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const std::string& w : level)
      for (char c : alphabet) next.push_back(w + c);
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("class sizes match the counting formula") {
  CHECK(k_class_size(1, 1) == 2);
  CHECK(k_class_size(1, 2) == 2);
  CHECK(k_class_size(2, 1) == 16);
  CHECK(k_class_size(2, 2) == 64);

  CHECK(enumerate_k_class(1, kA).size() == 2);
  CHECK(enumerate_k_class(1, kBits).size() == 2);
  CHECK(enumerate_k_class(2, kA).size() == 16);
  CHECK(enumerate_k_class(2, kBits).size() == 64);
}

TEST_CASE("enumeration refuses oversized classes and reserved symbols") {
  try {
    enumerate_k_class(4, kBits);
    FAIL("guard did not fire");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("1048576") != std::string::npos);
  }
  CHECK_THROWS_AS(enumerate_k_class(1, {'#'}), std::invalid_argument);
}

TEST_CASE("acceptance semantics") {
  std::vector<Fa> ones = enumerate_k_class(1, kA);
  REQUIRE(ones.size() == 2);
  for (const Fa& a : ones) {
    bool accepts = a.accepting.count(1) != 0;
    CHECK(run_fa(a, "") == accepts);
    CHECK(run_fa(a, "a") == accepts);
    CHECK(run_fa(a, "aaaa") == accepts);
  }

  Fa p = parity_fa();
  CHECK(run_fa(p, ""));
  CHECK_FALSE(run_fa(p, "1"));
  CHECK(run_fa(p, "11"));
  CHECK(run_fa(p, "0110"));
  CHECK_FALSE(run_fa(p, "0111"));
  CHECK_THROWS_AS(run_fa(p, "2"), std::invalid_argument);
}

TEST_CASE("fixed-width codes of the one-state class") {
  std::vector<Fa> ones = enumerate_k_class(1, kA);
  std::set<std::string> codes;
  for (const Fa& a : ones) codes.insert(encode_fa(a, 1));
  CHECK(codes == std::set<std::string>{"00", "01"});
}

TEST_CASE("codes are injective and prefix-disjoint over the class") {
  for (auto [k, alphabet] : {std::pair<int, std::vector<char>>{2, kBits},
                             {3, kBits},
                             {2, kA}}) {
    CAPTURE(k);
    std::vector<Fa> members = enumerate_k_class(k, alphabet);
    std::set<std::string> codes;
    std::size_t width =
        static_cast<std::size_t>(k) * alphabet.size() * fa_code_width(k) + k;
    for (const Fa& a : members) {
      std::string code = encode_fa(a, k);
      CHECK(code.size() == width);
      CHECK(codes.insert(code).second);
    }
    CHECK(codes.size() == members.size());
  }
}

TEST_CASE("the encoder is a transducer with one step per token") {
  for (int k : {1, 2, 3}) {
    CAPTURE(k);
    Dfst enc = fa_encoder_dfst(k);
    for (const Fa& a : enumerate_k_class(k, kBits)) {
      TWord stream = fa_to_stream(a);
      TransduceResult r = transduce(enc, stream);
      CHECK(r.accepted);
      CHECK(r.steps == stream.size());
      std::string out;
      for (TSym t : r.output) out.push_back(static_cast<char>(t));
      CHECK(out == encode_fa(a, k));
    }
  }
}

TEST_CASE("the one-state universal automaton on hand-checked words") {
  Fa u = build_universal_fa(1, kA);
  CHECK(u.num_states > 1);
  CHECK(run_fa(u, "01#"));
  CHECK(run_fa(u, "01#a"));
  CHECK(run_fa(u, "01#aa"));
  CHECK_FALSE(run_fa(u, "00#a"));
  CHECK_FALSE(run_fa(u, "00#"));
}

TEST_CASE("malformed code prefixes are rejected") {
  Fa u = build_universal_fa(1, kA);
  CHECK_FALSE(run_fa(u, "#"));
  CHECK_FALSE(run_fa(u, "0#"));
  CHECK_FALSE(run_fa(u, "011#"));
  CHECK_FALSE(run_fa(u, "11#"));
  CHECK_FALSE(run_fa(u, "01a#"));
  CHECK_FALSE(run_fa(u, "01"));
}

TEST_CASE("one-state members make acceptance independent of the payload") {
  Fa u = build_universal_fa(1, kBits);
  for (const Fa& a : enumerate_k_class(1, kBits)) {
    std::string code = encode_fa(a, 1);
    bool base = run_fa(u, code + "#");
    for (const std::string& w : words_up_to(kBits, 4))
      CHECK(run_fa(u, code + "#" + w) == base);
  }
}

TEST_CASE("exhaustive verification of the universal automata") {
  FaVerifyReport r1 = verify_universal_fa(1, kBits, 6);
  CHECK(r1.ok);
  CHECK(r1.class_size == 2);
  CHECK(r1.universal_states > 1);
  CHECK(r1.counterexample.empty());

  FaVerifyReport r2 = verify_universal_fa(2, kBits, 5);
  CHECK(r2.ok);
  CHECK(r2.class_size == 64);
  CHECK(r2.universal_states > 2);
}

TEST_CASE("a single redirected transition is caught with a counterexample") {
  std::vector<char> sigma = kBits;
  Fa u = build_universal_fa(2, sigma);
  std::vector<Fa> members = enumerate_k_class(2, sigma);
  std::vector<std::string> words = words_up_to(sigma, 4);

  auto differs_on_wellformed = [&](const Fa& bad) {
    for (const Fa& a : members) {
      std::string prefix = encode_fa(a, 2) + "#";
      for (const std::string& w : words)
        if (run_fa(bad, prefix + w) != run_fa(a, w)) return true;
    }
    return false;
  };

  int caught = 0;
  for (std::size_t i = 0; i < 24 && i < u.transitions.size(); ++i) {
    Fa bad = u;
    bad.transitions[i] = bad.transitions[i] % bad.num_states + 1;
    FaVerifyReport r = verify_universal_fa_with(bad, 2, sigma, 4);
    if (differs_on_wellformed(bad)) {
      CHECK_FALSE(r.ok);
      CHECK_FALSE(r.counterexample.empty());
      ++caught;
    } else {
      CHECK(r.ok);
    }
  }
  CHECK(caught > 0);
}

TEST_CASE("a universal candidate with too few states fails strictness") {
  Fa tiny;
  tiny.num_states = 1;
  tiny.alphabet = {'#', '0', '1', 'a'};
  tiny.transitions = {1, 1, 1, 1};
  tiny.accepting = {1};
  tiny.validate();
  FaVerifyReport r = verify_universal_fa_with(tiny, 1, kA, 0);
  CHECK_FALSE(r.ok);
  CHECK(r.counterexample.find("states") != std::string::npos);
}