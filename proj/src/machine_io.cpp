#include "umach/machine_io.hpp"

#include <cctype>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace umach {
namespace {

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens_of(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

int parse_int(const std::string& t, int line, const std::string& what) {
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
    throw MachineParseError(line, what + " must be a positive integer, got '" +
                                      t + "'");
  long long v = 0;
  for (char c : t) {
    v = v * 10 + (c - '0');
    if (v > 1'000'000'000)
      throw MachineParseError(line, what + " out of range: '" + t + "'");
  }
  if (v < 1) throw MachineParseError(line, what + " must be at least 1");
  return static_cast<int>(v);
}

}  // namespace

Machine parse_machine(const std::string& text) {
  Machine m;
  m.name = "machine";
  m.blank = 1;
  m.deterministic = true;
  std::optional<int> states;
  std::optional<int> symbols;
  bool saw_blank = false;
  std::set<std::pair<State, Symbol>> keys;

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string s = strip(raw);
    if (s.empty()) continue;
    std::vector<std::string> tok = tokens_of(s);
    const std::string& kw = tok[0];

    if (kw == "machine") {
      if (tok.size() != 2)
        throw MachineParseError(line, "expected: machine <name>");
      m.name = tok[1];
    } else if (kw == "states") {
      if (tok.size() != 2)
        throw MachineParseError(line, "expected: states <count>");
      states = parse_int(tok[1], line, "state count");
      if (*states < 2)
        throw MachineParseError(line, "machine needs at least two states");
    } else if (kw == "symbols") {
      if (tok.size() != 2)
        throw MachineParseError(line, "expected: symbols <count>");
      symbols = parse_int(tok[1], line, "symbol count");
    } else if (kw == "blank") {
      if (tok.size() != 2)
        throw MachineParseError(line, "expected: blank <symbol>");
      m.blank = parse_int(tok[1], line, "blank symbol");
      saw_blank = true;
    } else if (kw == "nondet") {
      if (tok.size() != 1)
        throw MachineParseError(line, "'nondet' takes no arguments");
      m.deterministic = false;
    } else if (kw == "rule") {
      if (!states || !symbols)
        throw MachineParseError(
            line, "rule before the states/symbols header lines");
      if (tok.size() != 7 || tok[3] != "->")
        throw MachineParseError(
            line, "expected: rule <q> <s> -> <q'> <s'> <L|N|R>");
      Rule r;
      r.from = parse_int(tok[1], line, "source state");
      r.read = parse_int(tok[2], line, "read symbol");
      r.to = parse_int(tok[4], line, "target state");
      r.write = parse_int(tok[5], line, "write symbol");
      if (tok[6] == "L")
        r.move = Move::Left;
      else if (tok[6] == "N")
        r.move = Move::None;
      else if (tok[6] == "R")
        r.move = Move::Right;
      else
        throw MachineParseError(line, "move must be L, N, or R, got '" +
                                          tok[6] + "'");
      if (r.from > *states)
        throw MachineParseError(line, "source state " +
                                          std::to_string(r.from) +
                                          " exceeds states " +
                                          std::to_string(*states));
      if (r.to > *states)
        throw MachineParseError(line, "target state " + std::to_string(r.to) +
                                          " exceeds states " +
                                          std::to_string(*states));
      if (r.read > *symbols)
        throw MachineParseError(line, "read symbol " +
                                          std::to_string(r.read) +
                                          " exceeds symbols " +
                                          std::to_string(*symbols));
      if (r.write > *symbols)
        throw MachineParseError(line, "write symbol " +
                                          std::to_string(r.write) +
                                          " exceeds symbols " +
                                          std::to_string(*symbols));
      if (r.from == *states)
        throw MachineParseError(line, "rule leaves the final state " +
                                          std::to_string(r.from));
      if (!keys.insert({r.from, r.read}).second && m.deterministic)
        throw MachineParseError(
            line, "duplicate rule for (state " + std::to_string(r.from) +
                      ", symbol " + std::to_string(r.read) +
                      ") in a deterministic machine");
      m.rules.push_back(r);
    } else {
      throw MachineParseError(line, "unknown directive '" + kw + "'");
    }
  }

  if (!states) throw MachineParseError(line, "missing 'states' line");
  if (!symbols) throw MachineParseError(line, "missing 'symbols' line");
  m.num_states = *states;
  m.num_symbols = *symbols;
  if (saw_blank && m.blank > m.num_symbols)
    throw MachineParseError(line, "blank symbol " + std::to_string(m.blank) +
                                      " exceeds symbols " +
                                      std::to_string(m.num_symbols));
  m.validate();
  return m;
}

std::string format_machine(const Machine& m) {
  std::ostringstream out;
  out << "machine " << m.name << "\n";
  out << "states " << m.num_states << "\n";
  out << "symbols " << m.num_symbols << "\n";
  if (m.blank != 1) out << "blank " << m.blank << "\n";
  if (!m.deterministic) out << "nondet\n";
  for (const Rule& r : m.rules) {
    char mv = r.move == Move::Left ? 'L' : r.move == Move::Right ? 'R' : 'N';
    out << "rule " << r.from << " " << r.read << " -> " << r.to << " "
        << r.write << " " << mv << "\n";
  }
  return out.str();
}

Word parse_word(const std::string& text) {
  Word w;
  for (const std::string& t : tokens_of(text)) {
    if (t.find_first_not_of("0123456789") != std::string::npos || t.empty())
      throw std::invalid_argument("word symbol must be a positive integer, got '" +
                                  t + "'");
    long long v = std::stoll(t);
    if (v < 1 || v > 1'000'000'000)
      throw std::invalid_argument("word symbol out of range: '" + t + "'");
    w.push_back(static_cast<Symbol>(v));
  }
  return w;
}

Word parse_word(const std::string& text, const Machine& m) {
  Word w = parse_word(text);
  for (Symbol s : w)
    if (s > m.num_symbols)
      throw std::invalid_argument("word symbol " + std::to_string(s) +
                                  " exceeds machine symbols " +
                                  std::to_string(m.num_symbols));
  return w;
}

std::string format_word(const Word& w) {
  std::ostringstream out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out << ' ';
    out << w[i];
  }
  return out.str();
}

Configuration parse_configuration(const std::string& text, const Machine& m) {
  std::size_t a = text.find('|');
  std::size_t b = a == std::string::npos ? std::string::npos
                                         : text.find('|', a + 1);
  if (a == std::string::npos || b == std::string::npos)
    throw std::invalid_argument(
        "configuration must be left|state|right, got '" + text + "'");
  Configuration c;
  c.left = parse_word(text.substr(0, a), m);
  std::string qs = strip(text.substr(a + 1, b - a - 1));
  if (qs.empty() || qs.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("configuration state must be an integer, got '" +
                                qs + "'");
  c.state = static_cast<State>(std::stoll(qs));
  if (c.state < 1 || c.state > m.num_states)
    throw std::invalid_argument("configuration state " +
                                std::to_string(c.state) + " out of range");
  c.right = parse_word(text.substr(b + 1), m);
  if (c.right.empty())
    throw std::invalid_argument("configuration needs a nonempty right part");
  return c;
}

std::string format_configuration(const Configuration& c) {
  return format_word(c.left) + "|" + std::to_string(c.state) + "|" +
         format_word(c.right);
}

}  // namespace umach
