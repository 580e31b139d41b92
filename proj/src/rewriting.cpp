#include "umach/rewriting.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace umach {
namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_word(const SemiThue& s, const Word& w, const char* what) {
  for (Symbol a : w)
    require(a >= 1 && a <= s.num_symbols,
            std::string(what) + " symbol " + std::to_string(a) +
                " outside the alphabet 1.." + std::to_string(s.num_symbols));
}

// Accumulates named nondeterministic rules; ids are assigned on finish()
// in order of first appearance, with the named initial state first and the
// final state forced to the highest number.
class NdBuilder {
 public:
  void rule(const std::string& from, Symbol read, const std::string& to,
            Symbol write, Move mv) {
    rules_.push_back({from, read, to, write, mv});
  }

  Machine finish(const std::string& name, int num_symbols,
                 const std::string& final_name) {
    std::map<std::string, State> ids;
    State next = 0;
    auto id_of = [&](const std::string& n) {
      auto [it, fresh] = ids.emplace(n, next + 1);
      if (fresh) ++next;
      return it->second;
    };
    for (const auto& r : rules_) {
      require(r.from != final_name, "rule out of the final state");
      id_of(r.from);
    }
    for (const auto& r : rules_) id_of(r.to);
    require(ids.count(final_name) == 1, "final state never referenced");
    State last = next;
    State old_final = ids[final_name];
    for (auto& [n, id] : ids) {
      if (id == old_final)
        id = last;
      else if (id == last)
        id = old_final;
    }

    Machine m;
    m.name = name;
    m.num_states = last;
    m.num_symbols = num_symbols;
    m.blank = 1;
    m.deterministic = false;
    for (const auto& r : rules_)
      m.rules.push_back({ids[r.from], r.read, ids[r.to], r.write, r.mv});
    m.validate();
    return m;
  }

 private:
  struct NamedRule {
    std::string from;
    Symbol read;
    std::string to;
    Symbol write;
    Move mv;
  };
  std::vector<NamedRule> rules_;
};

}  // namespace

void SemiThue::validate() const {
  require(num_symbols >= 0, "alphabet size must be non-negative");
  for (const auto& [lhs, rhs] : rules) {
    require(!lhs.empty(), "rewrite rule with empty left side");
    for (Symbol a : lhs)
      require(a >= 1 && a <= num_symbols, "left side symbol out of range");
    for (Symbol a : rhs)
      require(a >= 1 && a <= num_symbols, "right side symbol out of range");
  }
}

std::set<Word> sts_step(const SemiThue& s, const Word& w) {
  s.validate();
  check_word(s, w, "word");
  std::set<Word> out;
  for (const auto& [lhs, rhs] : s.rules) {
    if (lhs.size() > w.size()) continue;
    for (std::size_t i = 0; i + lhs.size() <= w.size(); ++i) {
      if (!std::equal(lhs.begin(), lhs.end(), w.begin() + i)) continue;
      Word next(w.begin(), w.begin() + i);
      next.insert(next.end(), rhs.begin(), rhs.end());
      next.insert(next.end(), w.begin() + i + lhs.size(), w.end());
      out.insert(std::move(next));
    }
  }
  return out;
}

Derivability derivable(const SemiThue& s, const Word& from, const Word& to,
                       std::uint64_t fuel) {
  s.validate();
  check_word(s, from, "word");
  check_word(s, to, "word");
  if (from == to) return Derivability::Yes;
  std::set<Word> seen{from};
  std::deque<Word> frontier{from};
  for (std::uint64_t depth = 0; depth < fuel && !frontier.empty(); ++depth) {
    std::deque<Word> next;
    for (const Word& w : frontier) {
      for (const Word& v : sts_step(s, w)) {
        if (v == to) return Derivability::Yes;
        if (seen.insert(v).second) next.push_back(v);
      }
    }
    frontier = std::move(next);
  }
  return frontier.empty() ? Derivability::No : Derivability::Unknown;
}

Symbol TmStsEmbedding::state_symbol(State q) const {
  return num_symbols + q;
}

Symbol TmStsEmbedding::left_marker() const {
  return num_symbols + num_states + 1;
}

Symbol TmStsEmbedding::right_marker() const {
  return num_symbols + num_states + 2;
}

Word TmStsEmbedding::embed(const Configuration& c) const {
  require(!c.right.empty(), "configuration needs a nonempty right part");
  Word w{left_marker()};
  w.insert(w.end(), c.left.begin(), c.left.end());
  w.push_back(state_symbol(c.state));
  w.insert(w.end(), c.right.begin(), c.right.end());
  w.push_back(right_marker());
  return w;
}

Configuration TmStsEmbedding::extract(const Word& w) const {
  require(w.size() >= 4, "embedded configuration too short");
  require(w.front() == left_marker() && w.back() == right_marker(),
          "embedded configuration must be wrapped in end markers");
  Configuration c;
  std::size_t state_at = 0;
  int states_seen = 0;
  for (std::size_t i = 1; i + 1 < w.size(); ++i) {
    Symbol a = w[i];
    if (a > num_symbols) {
      require(a <= num_symbols + num_states,
              "marker inside an embedded configuration");
      state_at = i;
      ++states_seen;
    }
  }
  require(states_seen == 1,
          "embedded configuration needs exactly one state symbol");
  require(state_at + 2 < w.size(),
          "state symbol needs a head symbol to its right");
  c.left.assign(w.begin() + 1, w.begin() + state_at);
  c.state = w[state_at] - num_symbols;
  c.right.assign(w.begin() + state_at + 1, w.end() - 1);
  return c;
}

TmToSts tm_to_sts(const Machine& m) {
  m.validate();
  TmToSts out;
  out.embedding.num_symbols = m.num_symbols;
  out.embedding.num_states = m.num_states;
  const TmStsEmbedding& e = out.embedding;
  SemiThue& s = out.sts;
  s.num_symbols = m.num_symbols + m.num_states + 2;

  for (const Rule& r : m.rules) {
    Symbol q = e.state_symbol(r.from);
    Symbol qn = e.state_symbol(r.to);
    switch (r.move) {
      case Move::None:
        s.rules.push_back({{q, r.read}, {qn, r.write}});
        break;
      case Move::Right:
        for (Symbol y = 1; y <= m.num_symbols; ++y)
          s.rules.push_back({{q, r.read, y}, {r.write, qn, y}});
        s.rules.push_back(
            {{q, r.read, e.right_marker()},
             {r.write, qn, m.blank, e.right_marker()}});
        break;
      case Move::Left:
        for (Symbol y = 1; y <= m.num_symbols; ++y)
          s.rules.push_back({{y, q, r.read}, {qn, y, r.write}});
        s.rules.push_back({{e.left_marker(), q, r.read},
                           {e.left_marker(), qn, m.blank, r.write}});
        break;
    }
  }
  s.validate();
  return out;
}

std::size_t tm_to_sts_rule_count(const Machine& m) {
  std::size_t count = 0;
  for (const Rule& r : m.rules)
    count += r.move == Move::None ? 1 : m.num_symbols + 1;
  return count;
}

Symbol StsTmEmbedding::left_marker() const {
  return num_symbols + 2;
}

Symbol StsTmEmbedding::right_marker() const {
  return num_symbols + 3;
}

Symbol StsTmEmbedding::gap_symbol() const {
  return num_symbols + 4;
}

Word StsTmEmbedding::embed(const Word& w) const {
  Word out{left_marker()};
  for (Symbol a : w) {
    require(a >= 1 && a <= num_symbols, "word symbol outside the alphabet");
    out.push_back(a + 1);
  }
  out.push_back(right_marker());
  return out;
}

std::optional<Word> StsTmEmbedding::extract(const Word& tape) const {
  std::size_t end = tape.size();
  while (end > 0 && tape[end - 1] == 1) --end;
  if (end < 2) return std::nullopt;
  if (tape[0] != left_marker() || tape[end - 1] != right_marker())
    return std::nullopt;
  Word out;
  for (std::size_t i = 1; i + 1 < end; ++i) {
    if (tape[i] < 2 || tape[i] > num_symbols + 1) return std::nullopt;
    out.push_back(tape[i] - 1);
  }
  return out;
}

StsToTm sts_to_tm(const SemiThue& s) {
  s.validate();
  StsToTm out;
  out.embedding.num_symbols = s.num_symbols;
  const StsTmEmbedding& e = out.embedding;
  const Symbol kGap = e.gap_symbol();
  const Symbol kLeft = e.left_marker();
  const Symbol kRight = e.right_marker();
  const Symbol kBlank = 1;
  auto enc = [](Symbol a) { return a + 1; };

  // Symbols that may stand right of the head inside the live word region.
  std::vector<Symbol> interior;
  for (Symbol a = 1; a <= s.num_symbols; ++a) interior.push_back(enc(a));
  std::vector<Symbol> tail = interior;
  tail.push_back(kRight);

  NdBuilder b;
  // Stop or start another rewrite.
  b.rule("root", kLeft, "fin", kLeft, Move::None);
  b.rule("root", kLeft, "scan", kLeft, Move::Right);
  for (Symbol a : interior) b.rule("scan", a, "scan", a, Move::Right);

  for (std::size_t ri = 0; ri < s.rules.size(); ++ri) {
    const Word& u = s.rules[ri].first;
    const Word& v = s.rules[ri].second;
    const std::string r = "r" + std::to_string(ri);
    const std::size_t p = u.size();
    const std::size_t q = v.size();

    // The state about to verify u_i; matching overwrites with the
    // replacement (or a gap) as it goes.
    auto match_state = [&](std::size_t i) { return r + "_m" + std::to_string(i); };
    std::string after_match;
    if (q == p)
      after_match = "ret";
    else if (q < p)
      after_match = "gfind";
    else
      after_match = r + "_i" + std::to_string(p + 1);

    for (std::size_t i = 1; i <= p; ++i) {
      std::string from = i == 1 ? "scan" : match_state(i);
      std::string to = i == p ? after_match : match_state(i + 1);
      Symbol write = i <= q ? enc(v[i - 1]) : kGap;
      b.rule(from, enc(u[i - 1]), to, write, Move::Right);
    }

    // Growing rules: insert v_{p+1}..v_q one symbol at a time. Each cycle
    // marks the insertion point with a gap, ripples the tail one cell
    // right, walks back to the gap, and deposits the new symbol.
    for (std::size_t j = p + 1; j <= q; ++j) {
      std::string ins = r + "_i" + std::to_string(j);
      std::string back = r + "_b" + std::to_string(j);
      auto carry = [&](Symbol x) {
        return r + "_c" + std::to_string(j) + "_" + std::to_string(x);
      };
      for (Symbol y : tail) b.rule(ins, y, carry(y), kGap, Move::Right);
      for (Symbol x : tail) {
        for (Symbol z : tail) b.rule(carry(x), z, carry(z), x, Move::Right);
        b.rule(carry(x), kBlank, back, x, Move::Left);
      }
      for (Symbol z : tail) b.rule(back, z, back, z, Move::Left);
      std::string next = j == q ? "ret" : r + "_i" + std::to_string(j + 1);
      b.rule(back, kGap, next, enc(v[j - 1]), Move::Right);
    }
  }

  // Shrinking rules leave a contiguous gap block; every tail symbol jumps
  // left over the whole block until the blanks are reached, then the block
  // is blanked out behind the end marker.
  b.rule("gfind", kGap, "bubble", kGap, Move::Right);
  for (Symbol z : tail) b.rule("gfind", z, "gfind", z, Move::Left);
  b.rule("bubble", kGap, "bubble", kGap, Move::Right);
  b.rule("bubble", kBlank, "wipe", kBlank, Move::Left);
  for (Symbol y : tail) {
    std::string place = "place_" + std::to_string(y);
    b.rule("bubble", y, place, kGap, Move::Left);
    b.rule(place, kGap, place, kGap, Move::Left);
    for (Symbol z : tail) b.rule(place, z, place + "_put", z, Move::Right);
    b.rule(place, kLeft, place + "_put", kLeft, Move::Right);
    b.rule(place + "_put", kGap, "bubble", y, Move::Right);
  }
  b.rule("wipe", kGap, "wipe", kBlank, Move::Left);
  b.rule("wipe", kRight, "ret", kRight, Move::Left);

  for (Symbol z : tail) b.rule("ret", z, "ret", z, Move::Left);
  b.rule("ret", kLeft, "root", kLeft, Move::None);

  out.machine = b.finish("sts", s.num_symbols + 4, "fin");
  return out;
}

SemiThue parse_sts(const std::string& text) {
  SemiThue s;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty()) continue;
    auto arrow = std::find(tok.begin(), tok.end(), "->");
    require(arrow != tok.end(), "line " + std::to_string(line) +
                                    ": rewrite rule needs '->'");
    require(arrow != tok.begin(), "line " + std::to_string(line) +
                                      ": rewrite rule needs a left side");
    auto to_word = [&](auto begin, auto end) {
      Word w;
      for (auto it = begin; it != end; ++it) {
        const std::string& x = *it;
        require(!x.empty() &&
                    x.find_first_not_of("0123456789") == std::string::npos,
                "line " + std::to_string(line) + ": symbol '" + x +
                    "' is not a positive integer");
        long long value = std::stoll(x);
        require(value >= 1 && value <= 1'000'000,
                "line " + std::to_string(line) + ": symbol out of range");
        w.push_back(static_cast<Symbol>(value));
        s.num_symbols = std::max(s.num_symbols, static_cast<int>(value));
      }
      return w;
    };
    Word lhs = to_word(tok.begin(), arrow);
    Word rhs = to_word(arrow + 1, tok.end());
    s.rules.push_back({std::move(lhs), std::move(rhs)});
  }
  s.validate();
  return s;
}

std::string format_sts(const SemiThue& s) {
  std::ostringstream out;
  for (const auto& [lhs, rhs] : s.rules) {
    for (std::size_t i = 0; i < lhs.size(); ++i) out << lhs[i] << ' ';
    out << "->";
    for (Symbol a : rhs) out << ' ' << a;
    out << "\n";
  }
  return out.str();
}

}  // namespace umach
