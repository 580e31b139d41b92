#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "corpus.hpp"
#include "doctest.h"
#include "umach/codec.hpp"

using namespace umach;

namespace {

const Scheme kU22{SchemeKind::Unary, 2, 2};
const Scheme kB22{SchemeKind::Binary, 2, 2};
const Scheme kP22{SchemeKind::BinaryPacked, 2, 2};

std::vector<Scheme> schemes_for(int n, int m) {
  return {{SchemeKind::Unary, n, m},
          {SchemeKind::Binary, n, m},
          {SchemeKind::BinaryPacked, n, m}};
}

std::vector<Configuration> all_configs(int n, int m, int max_left,
                                       int max_right) {
  std::vector<Configuration> out;
  std::vector<Word> lefts{{}};
  for (const Word& w : corpus::words_up_to(n, max_left)) lefts.push_back(w);
  for (const Word& left : lefts)
    for (int q = 1; q <= m; ++q)
      for (const Word& right : corpus::words_up_to(n, max_right))
        out.push_back({left, q, right});
  return out;
}

std::vector<Machine> program_corpus() {
  return {corpus::identity(),     corpus::increment(),
          corpus::left_bouncer(), corpus::picky2(),
          corpus::rule_free(),    corpus::ntm_write_choice(),
          corpus::ntm_stop_or_drift()};
}

}  // namespace

TEST_CASE("unary configuration code matches the block pattern") {
  CHECK(encode_config(kU22, {{1}, 1, {2}}) == "10010110");
  CHECK(encode_config(kU22, {{}, 1, {1}}) == "01010");
}

TEST_CASE("binary configuration code uses fixed-width 0-based fields") {
  CHECK(encode_config(kB22, {{1}, 1, {2}}) == "0ac0c1a");
}

TEST_CASE("packed configuration code expands characters to bit pairs") {
  CHECK(encode_config(kP22, {{1}, 1, {2}}) == "00101100110110");
  CHECK(pack_pairs("0ac0c1a") == "00101100110110");
}

TEST_CASE("unary rule code lists the five fields with a double-zero end") {
  Machine m = corpus::make("one", 2, 1, {{1, 1, 2, 1, Move::None}});
  CHECK(encode_program(Scheme::for_machine(SchemeKind::Unary, m), m) ==
        "1010110101100");
}

TEST_CASE("empty programs encode to the empty word") {
  for (const Scheme& sch : schemes_for(1, 2))
    CHECK(encode_program(sch, corpus::rule_free()).empty());
}

TEST_CASE("program codes concatenate rule codes in canonical order") {
  Machine m = corpus::identity();
  for (const Scheme& sch : schemes_for(2, 2)) {
    Machine only_first = m, only_second = m;
    only_first.rules = {canonical_rules(m)[0]};
    only_second.rules = {canonical_rules(m)[1]};
    CHECK(encode_program(sch, m) ==
          encode_program(sch, only_first) + encode_program(sch, only_second));
    Machine reversed = m;
    std::reverse(reversed.rules.begin(), reversed.rules.end());
    CHECK(encode_program(sch, reversed) == encode_program(sch, m));
  }
}

TEST_CASE("space bounds match the closed formulas") {
  CHECK(space_bound(kU22, 3) == 15);
  CHECK(space_bound(kP22, 3) == 18);
  CHECK(space_bound({SchemeKind::Unary, 1, 2}, 1) == 8);
}

TEST_CASE("space bound dominates every encoded configuration") {
  for (auto [n, m] : {std::pair{1, 2}, {2, 2}, {2, 3}, {3, 4}})
    for (const Scheme& sch : schemes_for(n, m))
      for (const Configuration& c : all_configs(n, m, 2, 2)) {
        std::uint64_t w_len = c.left.size() + c.right.size();
        CHECK(encode_config(sch, c).size() <= space_bound(sch, w_len));
      }
}

TEST_CASE("configuration codes round-trip and never collide") {
  for (auto [n, m] : {std::pair{1, 2}, {2, 2}, {2, 3}}) {
    for (const Scheme& sch : schemes_for(n, m)) {
      std::set<UniversalWord> seen;
      for (const Configuration& c : all_configs(n, m, 2, 2)) {
        UniversalWord code = encode_config(sch, c);
        CHECK(decode_config(sch, code) == c);
        CHECK(seen.insert(code).second);
      }
    }
  }
}

TEST_CASE("program codes round-trip and never collide") {
  for (const Machine& m : program_corpus()) {
    for (const Scheme& sch : schemes_for(m.num_symbols, m.num_states)) {
      UniversalWord code = encode_program(sch, m);
      CHECK(decode_program(sch, code) == canonical_rules(m));
    }
  }
  std::set<UniversalWord> seen;
  Scheme sch{SchemeKind::Binary, 3, 6};
  for (const Machine& m : program_corpus())
    CHECK(seen.insert(encode_program(sch, m)).second);
}

TEST_CASE("decoding rejects malformed codes") {
  CHECK_THROWS_AS(decode_config(kU22, "111"), std::invalid_argument);
  CHECK_THROWS_AS(decode_config(kU22, "0110"), std::invalid_argument);
  CHECK_THROWS_AS(decode_config(kU22, "01010010"), std::invalid_argument);
  CHECK_THROWS_AS(decode_config(kU22, "1110010110"), std::invalid_argument);
  CHECK_THROWS_AS(decode_config(kU22, "010a0"), std::invalid_argument);
  CHECK_THROWS_AS(decode_config(kB22, "0a1a"), std::invalid_argument);
  CHECK_THROWS_AS(decode_config(kB22, "c0c"), std::invalid_argument);
  CHECK_THROWS_AS(decode_config(kB22, "c0c0ac1c"), std::invalid_argument);
  CHECK_THROWS_AS(decode_config(kP22, "001"), std::invalid_argument);
  CHECK_THROWS_AS(decode_program(kU22, "10101101011"), std::invalid_argument);
  CHECK_THROWS_AS(decode_program(kU22, "101011010111110"),
                  std::invalid_argument);
  CHECK_THROWS_AS(decode_program(kB22, "0a0a0a0a11c"), std::invalid_argument);
}

TEST_CASE("pair packing round-trips") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> len(0, 16), pick(0, 3);
  const char* alpha = "01ac";
  for (int trial = 0; trial < 200; ++trial) {
    UniversalWord w;
    for (int i = len(rng); i > 0; --i) w += alpha[pick(rng)];
    CHECK(unpack_pairs(pack_pairs(w)) == w);
  }
  CHECK_THROWS_AS(pack_pairs("x"), std::invalid_argument);
  CHECK_THROWS_AS(unpack_pairs("0"), std::invalid_argument);
  CHECK_THROWS_AS(unpack_pairs("0a"), std::invalid_argument);
}

TEST_CASE("encoding transducers agree with the direct encoders") {
  for (auto [n, m] : {std::pair{1, 2}, {2, 2}, {2, 3}}) {
    for (const Scheme& sch : schemes_for(n, m)) {
      Dfst enc = codec_as_dfst(sch, CodecDirection::Encode,
                               CodecTarget::Config);
      for (const Configuration& c : all_configs(n, m, 2, 2)) {
        TWord stream = config_to_stream(sch, c);
        auto r = transduce(enc, stream);
        REQUIRE(r.accepted);
        CHECK(r.steps == stream.size());
        CHECK(tword_to_uw(r.output) == encode_config(sch, c));
      }
    }
  }
  for (const Machine& m : program_corpus()) {
    for (const Scheme& sch : schemes_for(m.num_symbols, m.num_states)) {
      Dfst enc = codec_as_dfst(sch, CodecDirection::Encode,
                               CodecTarget::Program);
      TWord stream = program_to_stream(sch, m);
      auto r = transduce(enc, stream);
      REQUIRE(r.accepted);
      CHECK(r.steps == stream.size());
      CHECK(tword_to_uw(r.output) == encode_program(sch, m));
    }
  }
}

TEST_CASE("decoding transducers agree with the direct decoders") {
  for (auto [n, m] : {std::pair{1, 2}, {2, 2}, {2, 3}}) {
    for (const Scheme& sch : schemes_for(n, m)) {
      Dfst dec = codec_as_dfst(sch, CodecDirection::Decode,
                               CodecTarget::Config);
      for (const Configuration& c : all_configs(n, m, 2, 2)) {
        UniversalWord code = encode_config(sch, c);
        auto r = transduce(dec, uw_to_tword(code));
        REQUIRE(r.accepted);
        CHECK(r.steps == code.size());
        CHECK(stream_to_config(sch, r.output) == c);
      }
    }
  }
  for (const Machine& m : program_corpus()) {
    for (const Scheme& sch : schemes_for(m.num_symbols, m.num_states)) {
      Dfst dec = codec_as_dfst(sch, CodecDirection::Decode,
                               CodecTarget::Program);
      UniversalWord code = encode_program(sch, m);
      auto r = transduce(dec, uw_to_tword(code));
      REQUIRE(r.accepted);
      CHECK(r.steps == code.size());
      CHECK(stream_to_program(sch, r.output) == canonical_rules(m));
    }
  }
}

TEST_CASE("decoding transducers reject what the direct decoders reject") {
  Dfst dec = codec_as_dfst(kU22, CodecDirection::Decode, CodecTarget::Config);
  CHECK(!transduce(dec, uw_to_tword("111")).accepted);
  CHECK(!transduce(dec, uw_to_tword("0110")).accepted);
  CHECK(!transduce(dec, uw_to_tword("01010010")).accepted);
  CHECK(transduce(dec, uw_to_tword("1110010110")).failure_pos.has_value());

  Dfst pdec = codec_as_dfst(kP22, CodecDirection::Decode, CodecTarget::Config);
  CHECK(!transduce(pdec, uw_to_tword("001")).accepted);

  Dfst prog = codec_as_dfst(kU22, CodecDirection::Decode,
                            CodecTarget::Program);
  CHECK(!transduce(prog, uw_to_tword("10101101011")).accepted);
  CHECK(transduce(prog, uw_to_tword("101011010111110")).failure_pos.has_value());
}

TEST_CASE("token streams validate their shape") {
  CHECK_THROWS_AS(stream_to_config(kU22, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(stream_to_config(kU22, {3, 1, 3, 1}), std::invalid_argument);
  CHECK_THROWS_AS(stream_to_config(kU22, {3}), std::invalid_argument);
  CHECK_THROWS_AS(stream_to_config(kU22, {9, 3, 1}), std::invalid_argument);
  CHECK_THROWS_AS(stream_to_program(kU22, {3, 1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(stream_to_program(kU22, {1, 1, 3, 1, 5}),
                  std::invalid_argument);
}
