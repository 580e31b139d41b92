#pragma once
// Turing machine data model: indexed states and symbols, rule tables,
// configurations with the head on the first symbol of the right part, and
// exact step semantics for deterministic and nondeterministic machines.
//
// Conventions: states and symbols are 1-based. State 1 is initial and the
// highest state is final; the final state has no outgoing rules, so final
// configurations are absorbing. A designated blank symbol (default s1) is
// appended when the head moves right past the end and prepended when it
// moves left at the left end, keeping the right part nonempty.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace umach {

using Symbol = int;
using State = int;
using Word = std::vector<Symbol>;

enum class Move { Left, None, Right };

char move_letter(Move m);
Move move_from_letter(char c);

struct Rule {
  State from = 0;
  Symbol read = 0;
  State to = 0;
  Symbol write = 0;
  Move move = Move::None;

  friend auto operator<=>(const Rule&, const Rule&) = default;
};

struct Machine {
  std::string name;
  int num_states = 0;
  int num_symbols = 0;
  Symbol blank = 1;
  bool deterministic = true;
  std::vector<Rule> rules;

  State initial_state() const { return 1; }
  State final_state() const { return num_states; }

  // Throws std::invalid_argument on out-of-range indices, rules leaving the
  // final state, a duplicate (from, read) pair under the deterministic flag,
  // or num_states < 2 / num_symbols < 1.
  void validate() const;

  friend bool operator==(const Machine&, const Machine&) = default;
};

struct Configuration {
  Word left;
  State state = 1;
  Word right;

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

// Rules sorted by (from, read), ties keeping the original order.
std::vector<Rule> canonical_rules(const Machine& m);

// Stable fingerprint of the rule table and sizes (FNV-1a).
std::uint64_t machine_fingerprint(const Machine& m);

Configuration initial_configuration(const Machine& m, const Word& input);

// Tape content of a configuration, left part then right part.
Word tape_word(const Configuration& c);

// All configurations reachable by exactly one rule application, deduplicated.
// Returns the empty vector when the state is final or no rule matches.
// Throws std::invalid_argument if c references out-of-range indices or has an
// empty right part.
std::vector<Configuration> step(const Machine& m, const Configuration& c);

// Configurations reachable in exactly n steps (n-fold composition of step).
std::vector<Configuration> run_n(const Machine& m, const Configuration& c,
                                 std::uint64_t n);

enum class HaltStatus { Final, Stuck, Timeout };

struct RunResult {
  HaltStatus status = HaltStatus::Timeout;
  std::optional<Configuration> config;  // set when status == Final
  std::uint64_t steps = 0;
};

// Deterministic run until the final state, a configuration with no
// applicable rule (Stuck), or fuel steps (Timeout).
RunResult run_to_final(const Machine& m, const Configuration& c0,
                       std::uint64_t fuel);

// Breadth-first search over the configuration graph with a visited set; all
// final-state configurations reachable within fuel steps, sorted.
std::vector<Configuration> run_to_final_nd(const Machine& m,
                                           const Configuration& c0,
                                           std::uint64_t fuel);

// The word function: runs a deterministic machine on initial configuration
// q1·w and returns left·right of the final configuration, or nullopt when
// the machine halts non-final or exceeds fuel. Throws on empty w or a
// nondeterministic machine.
std::optional<Word> computed_function(const Machine& m, const Word& w,
                                      std::uint64_t fuel = 1'000'000);

// All tape words of final configurations reachable from q1·w within fuel
// steps, deduplicated and sorted.
std::vector<Word> reachable_finals(const Machine& m, const Word& w,
                                   std::uint64_t fuel);

// Flat-tape runner for long deterministic stretches. Equivalent to iterating
// step() but O(1) per step; also meters tape cells and can pause on entry to
// a watched state (used for checkpoint extraction) or stop on a cell budget.
class TapeRunner {
 public:
  TapeRunner(const Machine& m, const Configuration& c0);

  // Pause after every step that enters this state (0 disables).
  void set_watch_state(State s) { watch_ = s; }
  // Stop instead of letting the tape extent exceed this many cells
  // (0 disables). The violating step is not applied.
  void set_space_limit(std::uint64_t cells) { space_limit_ = cells; }
  // Count rule firings, indexed by (from-1)*num_symbols+(read-1).
  void enable_rule_counts();

  enum class Outcome { Final, Stuck, Paused, OutOfFuel, SpaceViolation };

  // Runs at most fuel further steps. Resumable after Paused / OutOfFuel.
  Outcome run(std::uint64_t fuel);

  std::uint64_t steps() const { return steps_; }
  std::uint64_t peak_cells() const { return hi_ - lo_ + 1; }
  State state() const { return state_; }
  Configuration configuration() const;
  const std::vector<std::uint64_t>& rule_counts() const { return counts_; }

  // Current tape extent and the head offset within it.
  const Symbol* cells() const { return tape_.data() + lo_; }
  std::size_t cell_count() const { return hi_ - lo_ + 1; }
  std::size_t head_offset() const { return head_ - lo_; }

 private:
  void grow_left();

  int ns_ = 0;
  int nq_ = 0;
  Symbol blank_ = 1;
  State final_state_ = 0;
  std::vector<State> to_;
  std::vector<Symbol> wr_;
  std::vector<signed char> mv_;

  std::vector<Symbol> tape_;
  std::size_t lo_ = 0, hi_ = 0, head_ = 0;
  State state_ = 1;
  std::uint64_t steps_ = 0;
  State watch_ = 0;
  std::uint64_t space_limit_ = 0;
  bool count_rules_ = false;
  std::vector<std::uint64_t> counts_;
};

struct ExploreResult {
  std::vector<Configuration> finals;  // deduplicated, sorted
  bool hit_fuel = false;              // some path ran out of fuel
  bool hit_space = false;             // some path exceeded the space limit
  std::uint64_t paths = 0;
};

// Nondeterministic exploration tuned for machines that are deterministic at
// almost every (state, symbol) pair: deterministic stretches run on the flat
// tape, branching points fork into a worklist deduplicated by configuration.
// Yields exactly the final configurations reachable within fuel steps per
// path, like run_to_final_nd.
ExploreResult explore(const Machine& m, const Configuration& c0,
                      std::uint64_t fuel, std::uint64_t space_limit = 0);

}  // namespace umach
