#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "umach/machine.hpp"

namespace umach {

// Finite relational structure: a carrier of integer elements and a binary
// relation over it.
struct RelationSystem {
  std::set<int> carrier;
  std::set<std::pair<int, int>> relation;

  // Throws std::invalid_argument if the relation leaves the carrier.
  void validate() const;
};

template <class T>
using PairSet = std::set<std::pair<T, T>>;

// Relational composition: (x,z) with (x,y) in a and (y,z) in b for some y.
template <class T>
PairSet<T> compose(const PairSet<T>& a, const PairSet<T>& b) {
  std::map<T, std::vector<T>> right;
  for (const auto& [y, z] : b) right[y].push_back(z);
  PairSet<T> out;
  for (const auto& [x, y] : a) {
    auto it = right.find(y);
    if (it == right.end()) continue;
    for (const T& z : it->second) out.insert({x, z});
  }
  return out;
}

// n-fold composition of r with itself; n = 0 is the identity relation on
// the given carrier.
template <class T>
PairSet<T> relation_power(const PairSet<T>& r, std::uint64_t n,
                          const std::set<T>& carrier) {
  PairSet<T> out;
  for (const T& x : carrier) out.insert({x, x});
  for (std::uint64_t i = 0; i < n; ++i) out = compose(out, r);
  return out;
}

// A host universe of named elements together with the machinery that embeds
// a class of relation systems into it: a binary operation on the host, one
// code per relation, one element encoder per relation, a pairing map, and
// the host relation R that is meant to make the embeddings definable.
//
// The element side (union of the elem_encoders images) and the coding side
// (the rel_codes) must be disjoint, and every encoder must be injective;
// the check functions verify these preconditions instead of assuming them.
// op must be total on host x host for the op-form check; pairing must cover
// every pair of encoded elements of the same relation for the pairing-form
// check. A partial table is reported as a precondition violation by the
// check that needs it, so instances built only for one form may leave the
// other form's table empty.
struct EncodedSystem {
  using Elem = std::string;

  std::set<Elem> host;
  std::map<std::pair<Elem, Elem>, Elem> op;
  std::vector<Elem> rel_codes;
  std::vector<std::map<int, Elem>> elem_encoders;
  std::map<std::pair<Elem, Elem>, Elem> pairing;
  PairSet<Elem> R;
};

enum class CheckOutcome {
  Ok,
  FalseSoundness,
  FalseCompleteness,
  UnknownAtBound,
  PreconditionViolation,
};

const char* to_string(CheckOutcome o);

struct CheckCounterexample {
  std::size_t relation = 0;
  int x = 0;
  int y = 0;
};

struct CheckReport {
  CheckOutcome outcome = CheckOutcome::Ok;
  std::optional<CheckCounterexample> counterexample;
  std::string message;
};

// Both checks decide, for every relation r in cls and every pair (x,y) over
// its carrier, whether some chain of 1..n_max R-steps connects the encoded
// pair, and compare that against (x,y) in r. The op form encodes the pair
// as (op(code(r), f_r(x)), op(code(r), f_r(y))); the pairing form asks
// whether (code(r), pairing(f_r(x), f_r(y))) is reachable.
//
// Outcomes are three-valued so that verdicts are monotone in n_max: Ok and
// the two failure outcomes only ever report facts that stay true for every
// larger bound (a found chain, or a reachability search that saturated), and
// everything the bound left open is UnknownAtBound. The reported triple is
// the lexicographically first one (relation index, then x, then y) with a
// definite failure, or the first unresolved one when only unknowns remain.
CheckReport check_universal_op_form(const EncodedSystem& sys,
                                    const std::vector<RelationSystem>& cls,
                                    std::uint64_t n_max);
CheckReport check_universal_pairing_form(
    const EncodedSystem& sys, const std::vector<RelationSystem>& cls,
    std::uint64_t n_max);

// Finite restriction of machine simulation to an encoded-system instance.
// cls gets one relation system per corpus machine: the carrier enumerates
// every configuration whose tape holds at most depth symbols, and the
// relation is its one-step relation (pairs whose successor outgrows the
// carrier are dropped and noted in warnings). The host side encodes each
// machine by its program word, each configuration by its code word, and R
// collects (program, pairing(config, successor)) edges observed by actually
// running the universal machine from each embedded configuration to its
// next fetch checkpoint. Corpus machines must be deterministic. The
// pairing-form check is then runnable on the result; op is left empty.
struct TmInstance {
  EncodedSystem system;
  std::vector<RelationSystem> cls;
  std::vector<std::string> warnings;
};

TmInstance tm_instance(const std::vector<Machine>& corpus, int depth);

// Line-based instance description, suitable for files:
//   host ELEM...                 declares host elements
//   op A B -> C                  one operation entry
//   pair A B -> C                one pairing entry
//   R A B                        one pair of the host relation
//   relation                     starts the next relation system
//   carrier X...                 (in a relation block) carrier elements
//   member X Y                   (in a relation block) a pair of r
//   encode X -> ELEM             (in a relation block) element code f_r(X)
//   relcode ELEM                 (in a relation block) the relation's code
// Elements are whitespace-free tokens; carrier elements are integers; '#'
// starts a comment. Throws std::invalid_argument with a line number on
// malformed input.
struct ParsedInstance {
  EncodedSystem system;
  std::vector<RelationSystem> cls;
};

ParsedInstance parse_instance(const std::string& text);

}  // namespace umach
