// Semi-Thue string rewriting: step sets, bounded reachability, and the two
// faithful translations. tm_to_sts turns a machine into a rewriting system
// whose single rewrite steps mirror single machine steps on embedded
// configurations; sts_to_tm turns a rewriting system into a
// nondeterministic machine whose final-reaching computations on an
// embedded word produce exactly the embedded derivable words.
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "umach/machine.hpp"

namespace umach {

struct SemiThue {
  // Symbols are 1..num_symbols.
  int num_symbols = 0;
  // lhs must be nonempty; rhs may be empty.
  std::vector<std::pair<Word, Word>> rules;

  void validate() const;
};

// All words reached from w by one rewrite anywhere, deduplicated. Throws
// std::invalid_argument when w leaves the alphabet.
std::set<Word> sts_step(const SemiThue& s, const Word& w);

enum class Derivability { Yes, No, Unknown };

// Breadth-first reachability from `from` to `to` in at most `fuel` rewrite
// steps. No means the whole derivation space was exhausted short of fuel;
// Unknown means the depth bound cut the search with live words remaining.
Derivability derivable(const SemiThue& s, const Word& from, const Word& to,
                       std::uint64_t fuel);

// Configuration embedding for tm_to_sts: tape symbols keep their index,
// state q becomes symbol n+q placed left of the head symbol, and the whole
// word is wrapped in end markers n+m+1 and n+m+2.
struct TmStsEmbedding {
  int num_symbols = 0;  // machine tape symbols n
  int num_states = 0;   // machine states m

  Symbol state_symbol(State q) const;
  Symbol left_marker() const;
  Symbol right_marker() const;
  Word embed(const Configuration& c) const;
  // Inverse of embed; throws std::invalid_argument on words that are not
  // embedded configurations.
  Configuration extract(const Word& w) const;
};

struct TmToSts {
  SemiThue sts;
  TmStsEmbedding embedding;
};

// One machine step is exactly one rewrite step on embedded configurations,
// in both directions. Rules per machine rule: 1 for a hold, n+1 for each
// move (n interior contexts plus one end-marker rule deciding the blank).
TmToSts tm_to_sts(const Machine& m);

// The exact rule count tm_to_sts produces for m.
std::size_t tm_to_sts_rule_count(const Machine& m);

// Word embedding for sts_to_tm: rewriting symbol i becomes tape symbol
// i+1 (1 stays the blank), wrapped in marker symbols.
struct StsTmEmbedding {
  int num_symbols = 0;  // rewriting alphabet size n

  Symbol left_marker() const;   // n+2
  Symbol right_marker() const;  // n+3
  Symbol gap_symbol() const;    // n+4
  Word embed(const Word& w) const;
  // Strips markers and trailing blanks; nullopt when the tape is not an
  // embedded word (foreign symbols, missing markers, leftover gaps).
  std::optional<Word> extract(const Word& tape) const;
};

struct StsToTm {
  Machine machine;
  StsTmEmbedding embedding;
};

// Builds a nondeterministic machine that, started on embed(w), can reach a
// final configuration with tape embed(w') exactly when w derives w'. Each
// rewrite is realized as: nondeterministically pick a position and rule
// while scanning right, overwrite the matched side in place, then either
// shift the tail left over gap markers (shrinking rules) or insert the
// overflow symbol by symbol (growing rules).
StsToTm sts_to_tm(const SemiThue& s);

// Rules text: one "lhs -> rhs" per line, each side space-separated symbol
// indices, rhs possibly empty; '#' starts a comment. The alphabet size is
// the largest symbol mentioned.
SemiThue parse_sts(const std::string& text);
std::string format_sts(const SemiThue& s);

}  // namespace umach
