// Deterministic finite-state transducer engine. All encoders and decoders in
// this project are realized as these transducers; the step count is part of
// the contract (exactly one step per consumed input symbol) so callers can
// assert linear running time.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace umach {

// Transducer symbols are plain integers; character alphabets are represented
// by their character codes.
using TSym = int;
using TWord = std::vector<TSym>;

struct Dfst {
  int num_states = 1;
  int initial = 1;
  std::map<std::pair<int, TSym>, std::pair<int, TWord>> transitions;
  std::set<TSym> input_alphabet;
  std::set<TSym> output_alphabet;
  std::set<int> accepting;

  void validate() const;
};

struct TransduceResult {
  TWord output;
  std::uint64_t steps = 0;
  bool accepted = false;
  // Index of the input symbol with no outgoing transition, when rejected
  // mid-run; empty when the input was fully consumed.
  std::optional<std::size_t> failure_pos;
};

// Runs t on input, consuming one symbol per step. accepted is true exactly
// when all input was consumed and the run ended in an accepting state.
// Throws on symbols outside t.input_alphabet.
TransduceResult transduce(const Dfst& t, const TWord& input);

// Single-state transducer computing the homomorphic extension of table.
// Throws if table is empty or any output word is empty.
Dfst symbolwise_dfst(const std::map<TSym, TWord>& table);

}  // namespace umach
