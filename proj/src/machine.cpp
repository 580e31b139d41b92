#include "umach/machine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace umach {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_configuration(const Machine& m, const Configuration& c) {
  require(c.state >= 1 && c.state <= m.num_states,
          "configuration state out of range");
  require(!c.right.empty(), "configuration right part is empty");
  for (Symbol s : c.left)
    require(s >= 1 && s <= m.num_symbols, "configuration symbol out of range");
  for (Symbol s : c.right)
    require(s >= 1 && s <= m.num_symbols, "configuration symbol out of range");
}

Configuration apply_rule(const Machine& m, const Configuration& c,
                         const Rule& r) {
  Configuration n = c;
  n.state = r.to;
  n.right.front() = r.write;
  switch (r.move) {
    case Move::None:
      break;
    case Move::Right:
      n.left.push_back(n.right.front());
      n.right.erase(n.right.begin());
      if (n.right.empty()) n.right.push_back(m.blank);
      break;
    case Move::Left:
      if (n.left.empty()) {
        n.right.insert(n.right.begin(), m.blank);
      } else {
        n.right.insert(n.right.begin(), n.left.back());
        n.left.pop_back();
      }
      break;
  }
  return n;
}

}  // namespace

char move_letter(Move m) {
  switch (m) {
    case Move::Left: return 'L';
    case Move::None: return 'N';
    case Move::Right: return 'R';
  }
  return '?';
}

Move move_from_letter(char c) {
  switch (c) {
    case 'L': return Move::Left;
    case 'N': return Move::None;
    case 'R': return Move::Right;
  }
  throw std::invalid_argument(std::string("bad move letter: ") + c);
}

void Machine::validate() const {
  require(num_states >= 2, "machine needs at least two states");
  require(num_symbols >= 1, "machine needs at least one symbol");
  require(blank >= 1 && blank <= num_symbols, "blank symbol out of range");
  std::set<std::pair<State, Symbol>> seen;
  for (const Rule& r : rules) {
    require(r.from >= 1 && r.from <= num_states, "rule source state out of range");
    require(r.to >= 1 && r.to <= num_states, "rule target state out of range");
    require(r.read >= 1 && r.read <= num_symbols, "rule read symbol out of range");
    require(r.write >= 1 && r.write <= num_symbols, "rule write symbol out of range");
    require(r.from != final_state(), "rule leaves the final state");
    if (!seen.insert({r.from, r.read}).second)
      require(!deterministic, "duplicate (state, symbol) rule in deterministic machine");
  }
}

std::vector<Rule> canonical_rules(const Machine& m) {
  std::vector<Rule> out = m.rules;
  std::stable_sort(out.begin(), out.end(), [](const Rule& a, const Rule& b) {
    return std::pair{a.from, a.read} < std::pair{b.from, b.read};
  });
  return out;
}

std::uint64_t machine_fingerprint(const Machine& m) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint64_t>(m.num_states));
  mix(static_cast<std::uint64_t>(m.num_symbols));
  mix(static_cast<std::uint64_t>(m.blank));
  mix(m.deterministic ? 1 : 2);
  for (const Rule& r : canonical_rules(m)) {
    mix(static_cast<std::uint64_t>(r.from));
    mix(static_cast<std::uint64_t>(r.read));
    mix(static_cast<std::uint64_t>(r.to));
    mix(static_cast<std::uint64_t>(r.write));
    mix(static_cast<std::uint64_t>(move_letter(r.move)));
  }
  return h;
}

Configuration initial_configuration(const Machine& m, const Word& input) {
  require(!input.empty(), "input word is empty");
  Configuration c{{}, m.initial_state(), input};
  check_configuration(m, c);
  return c;
}

Word tape_word(const Configuration& c) {
  Word w = c.left;
  w.insert(w.end(), c.right.begin(), c.right.end());
  return w;
}

std::vector<Configuration> step(const Machine& m, const Configuration& c) {
  check_configuration(m, c);
  std::set<Configuration> out;
  if (c.state != m.final_state()) {
    for (const Rule& r : m.rules)
      if (r.from == c.state && r.read == c.right.front())
        out.insert(apply_rule(m, c, r));
  }
  return {out.begin(), out.end()};
}

std::vector<Configuration> run_n(const Machine& m, const Configuration& c,
                                 std::uint64_t n) {
  check_configuration(m, c);
  std::set<Configuration> level{c};
  for (std::uint64_t i = 0; i < n; ++i) {
    std::set<Configuration> next;
    for (const Configuration& x : level)
      for (Configuration& y : step(m, x)) next.insert(std::move(y));
    level = std::move(next);
    if (level.empty()) break;
  }
  return {level.begin(), level.end()};
}

RunResult run_to_final(const Machine& m, const Configuration& c0,
                       std::uint64_t fuel) {
  check_configuration(m, c0);
  Configuration c = c0;
  for (std::uint64_t n = 0;; ++n) {
    if (c.state == m.final_state()) return {HaltStatus::Final, c, n};
    if (n == fuel) return {HaltStatus::Timeout, std::nullopt, n};
    std::vector<Configuration> succ = step(m, c);
    if (succ.empty()) return {HaltStatus::Stuck, std::nullopt, n};
    require(succ.size() == 1, "run_to_final on branching configuration");
    c = std::move(succ.front());
  }
}

std::vector<Configuration> run_to_final_nd(const Machine& m,
                                           const Configuration& c0,
                                           std::uint64_t fuel) {
  check_configuration(m, c0);
  std::set<Configuration> visited{c0};
  std::set<Configuration> finals;
  std::vector<Configuration> frontier{c0};
  if (c0.state == m.final_state()) finals.insert(c0);
  for (std::uint64_t depth = 0; depth < fuel && !frontier.empty(); ++depth) {
    std::vector<Configuration> next;
    for (const Configuration& c : frontier)
      for (Configuration& s : step(m, c)) {
        if (!visited.insert(s).second) continue;
        if (s.state == m.final_state()) finals.insert(s);
        next.push_back(std::move(s));
      }
    frontier = std::move(next);
  }
  return {finals.begin(), finals.end()};
}

std::optional<Word> computed_function(const Machine& m, const Word& w,
                                      std::uint64_t fuel) {
  require(m.deterministic, "computed_function needs a deterministic machine");
  RunResult r = run_to_final(m, initial_configuration(m, w), fuel);
  if (r.status != HaltStatus::Final) return std::nullopt;
  return tape_word(*r.config);
}

std::vector<Word> reachable_finals(const Machine& m, const Word& w,
                                   std::uint64_t fuel) {
  std::set<Word> words;
  for (const Configuration& c :
       run_to_final_nd(m, initial_configuration(m, w), fuel))
    words.insert(tape_word(c));
  return {words.begin(), words.end()};
}

TapeRunner::TapeRunner(const Machine& m, const Configuration& c0) {
  require(m.deterministic, "TapeRunner needs a deterministic machine");
  m.validate();
  check_configuration(m, c0);
  ns_ = m.num_symbols;
  nq_ = m.num_states;
  blank_ = m.blank;
  final_state_ = m.final_state();
  std::size_t slots = static_cast<std::size_t>(ns_) * nq_;
  to_.assign(slots, 0);
  wr_.assign(slots, 0);
  mv_.assign(slots, 0);
  for (const Rule& r : m.rules) {
    std::size_t i = static_cast<std::size_t>(r.from - 1) * ns_ + (r.read - 1);
    to_[i] = r.to;
    wr_[i] = r.write;
    mv_[i] = r.move == Move::Left ? -1 : r.move == Move::Right ? 1 : 0;
  }
  tape_ = c0.left;
  tape_.insert(tape_.end(), c0.right.begin(), c0.right.end());
  lo_ = 0;
  hi_ = tape_.size() - 1;
  head_ = c0.left.size();
  state_ = c0.state;
}

void TapeRunner::enable_rule_counts() {
  count_rules_ = true;
  counts_.assign(to_.size(), 0);
}

void TapeRunner::grow_left() {
  constexpr std::size_t kChunk = 64;
  tape_.insert(tape_.begin(), kChunk, blank_);
  lo_ += kChunk;
  hi_ += kChunk;
  head_ += kChunk;
}

TapeRunner::Outcome TapeRunner::run(std::uint64_t fuel) {
  while (true) {
    if (state_ == final_state_) return Outcome::Final;
    if (fuel == 0) return Outcome::OutOfFuel;
    std::size_t slot =
        static_cast<std::size_t>(state_ - 1) * ns_ + (tape_[head_] - 1);
    State to = to_[slot];
    if (to == 0) return Outcome::Stuck;
    signed char mv = mv_[slot];
    if (space_limit_ != 0) {
      std::uint64_t extent = hi_ - lo_ + 1;
      bool grows = (mv > 0 && head_ == hi_) || (mv < 0 && head_ == lo_);
      if (extent + (grows ? 1 : 0) > space_limit_) return Outcome::SpaceViolation;
    }
    if (count_rules_) ++counts_[slot];
    tape_[head_] = wr_[slot];
    if (mv > 0) {
      if (head_ == hi_) {
        if (++hi_ >= tape_.size()) tape_.push_back(blank_);
        tape_[hi_] = blank_;
      }
      ++head_;
    } else if (mv < 0) {
      if (head_ == lo_) {
        if (lo_ == 0) grow_left();
        tape_[--lo_] = blank_;
      }
      --head_;
    }
    state_ = to;
    ++steps_;
    --fuel;
    if (state_ == watch_) return Outcome::Paused;
  }
}

Configuration TapeRunner::configuration() const {
  Configuration c;
  c.left.assign(tape_.begin() + lo_, tape_.begin() + head_);
  c.state = state_;
  c.right.assign(tape_.begin() + head_, tape_.begin() + hi_ + 1);
  return c;
}

ExploreResult explore(const Machine& m, const Configuration& c0,
                      std::uint64_t fuel, std::uint64_t space_limit) {
  m.validate();
  check_configuration(m, c0);

  // Rule groups per (state, symbol); stretches between multi-rule slots run
  // on the flat tape via a machine restricted to the single-rule slots.
  std::map<std::pair<State, Symbol>, std::vector<Rule>> groups;
  for (const Rule& r : m.rules) groups[{r.from, r.read}].push_back(r);
  Machine det = m;
  det.deterministic = true;
  det.rules.clear();
  std::set<std::pair<State, Symbol>> forks;
  for (const auto& [key, rs] : groups) {
    if (rs.size() == 1)
      det.rules.push_back(rs.front());
    else
      forks.insert(key);
  }

  ExploreResult out;
  std::set<Configuration> finals;
  // Worklist items carry steps already spent; a configuration is re-expanded
  // only when reached with strictly fewer steps.
  std::map<Configuration, std::uint64_t> best;
  std::deque<std::pair<Configuration, std::uint64_t>> work;
  work.emplace_back(c0, 0);
  best[c0] = 0;

  while (!work.empty()) {
    auto [c, used] = std::move(work.front());
    work.pop_front();
    ++out.paths;

    TapeRunner runner(det, c);
    if (space_limit != 0) runner.set_space_limit(space_limit);
    while (true) {
      // A fork pauses the stretch before the branching step.
      if (forks.count({runner.state(),
                       runner.cells()[runner.head_offset()]})) {
        Configuration at = runner.configuration();
        std::uint64_t now = used + runner.steps();
        if (now >= fuel) {
          out.hit_fuel = true;
          break;
        }
        for (const Rule& r :
             groups.at({at.state, at.right.front()})) {
          Configuration succ = apply_rule(m, at, r);
          auto it = best.find(succ);
          if (it != best.end() && it->second <= now + 1) continue;
          best[succ] = now + 1;
          work.emplace_back(std::move(succ), now + 1);
        }
        break;
      }
      TapeRunner::Outcome o = runner.run(fuel - used - runner.steps());
      if (o == TapeRunner::Outcome::Final) {
        finals.insert(runner.configuration());
        break;
      }
      if (o == TapeRunner::Outcome::Stuck) {
        // Either truly stuck or paused in front of a fork slot.
        Configuration at = runner.configuration();
        if (forks.count({at.state, at.right.front()})) continue;
        break;
      }
      if (o == TapeRunner::Outcome::OutOfFuel) {
        out.hit_fuel = true;
        break;
      }
      if (o == TapeRunner::Outcome::SpaceViolation) {
        out.hit_space = true;
        break;
      }
    }
  }
  out.finals.assign(finals.begin(), finals.end());
  return out;
}

}  // namespace umach
