// Complete deterministic finite automata over character alphabets, the
// enumeration of all k-state automata, their fixed-width binary encoding,
// and a universal automaton U_k that accepts enc(A)#w exactly when the
// k-state automaton A accepts w. U_k necessarily needs more than k states;
// verify_universal_fa checks both facts exhaustively at bounded length.
#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "umach/transducer.hpp"

namespace umach {

struct Fa {
  // States are 1..num_states with 1 initial; transitions are stored row per
  // state in alphabet order: transitions[(q-1)*|alphabet| + a] = target.
  int num_states = 1;
  std::vector<char> alphabet;
  std::vector<int> transitions;
  std::set<int> accepting;

  void validate() const;
  int next_state(int state, char symbol) const;
  bool operator==(const Fa&) const = default;
};

// Standard acceptance; throws std::invalid_argument on a symbol outside
// the alphabet.
bool run_fa(const Fa& a, std::string_view w);

// k^(k*|alphabet|) * 2^k, saturated at 2^63.
std::uint64_t k_class_size(int k, int alphabet_size);

// All complete DFAs with exactly k states over the alphabet, transition
// table major and accepting mask minor. Throws std::invalid_argument when
// the class size exceeds the 10^6 enumeration guard (the message carries
// the computed size).
std::vector<Fa> enumerate_k_class(int k, const std::vector<char>& alphabet);

// Field width of one encoded transition target.
int fa_code_width(int k);

// Fixed-width binary code: transition targets (0-based, fa_code_width(k)
// bits each) in (state, symbol) order, then one accepting bit per state.
// Injective on the k-class; realized by the symbolwise transducer below.
std::string encode_fa(const Fa& a, int k);

// Token stream and transducer realizing encode_fa: tokens 1..k are
// transition targets, k+1/k+2 are the accepting bits.
TWord fa_to_stream(const Fa& a);
Dfst fa_encoder_dfst(int k);

// The universal automaton for the k-class: a DFA over {'0','1','#'} plus
// the class alphabet accepting enc(A)#w exactly when A accepts w. States
// are the extendable code prefixes, one (A, state) pair per member reached
// after '#', and a dead sink.
Fa build_universal_fa(int k, const std::vector<char>& alphabet);

struct FaVerifyReport {
  bool ok = false;
  std::uint64_t class_size = 0;
  int universal_states = 0;
  // Empty when ok; otherwise the first failing "enc#w" in (member, length,
  // lexicographic) order.
  std::string counterexample;
};

// Exhaustive check of the acceptance biconditional for every class member
// and every word up to max_len, plus the strictness assertion
// universal_states > k.
FaVerifyReport verify_universal_fa(int k, const std::vector<char>& alphabet,
                                   int max_len);

// Same check against a caller-supplied universal candidate, for mutation
// tests.
FaVerifyReport verify_universal_fa_with(const Fa& u, int k,
                                        const std::vector<char>& alphabet,
                                        int max_len);

}  // namespace umach
