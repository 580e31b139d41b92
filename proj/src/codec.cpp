#include "umach/codec.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace umach {
namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

int width_for(int count) {
  int w = 1;
  while ((1 << w) < count) ++w;
  return w;
}

std::string bits(int value, int width) {
  std::string out(width, '0');
  for (int b = width - 1; b >= 0; --b, value >>= 1)
    out[b] = (value & 1) ? '1' : '0';
  return out;
}

int move_code(Move d) {
  switch (d) {
    case Move::Left: return 1;
    case Move::None: return 2;
    case Move::Right: return 3;
  }
  fail("bad move");
}

Move move_of_code(int d) {
  switch (d) {
    case 1: return Move::Left;
    case 2: return Move::None;
    case 3: return Move::Right;
  }
  fail("bad direction code");
}

void check_symbol(const Scheme& sch, int i) {
  if (i < 1 || i > sch.num_symbols) fail("symbol index out of scheme range");
}

void check_state(const Scheme& sch, int j) {
  if (j < 1 || j > sch.num_states) fail("state index out of scheme range");
}

std::string unary_block(int i) { return std::string(i, '1') + '0'; }

// A cursor over a code word with parsing primitives shared by the decoders.
struct Parser {
  const UniversalWord& w;
  std::size_t pos = 0;

  bool done() const { return pos == w.size(); }
  char peek() const { return w[pos]; }

  void expect(char c, const char* what) {
    if (pos >= w.size() || w[pos] != c)
      fail(std::string("expected '") + c + "' (" + what + ") at position " +
           std::to_string(pos));
    ++pos;
  }

  int run_of_ones(int max, const char* what) {
    int i = 0;
    while (pos < w.size() && w[pos] == '1') {
      ++pos;
      if (++i > max) fail(std::string(what) + " block too long");
    }
    if (i == 0) fail(std::string("empty ") + what + " block at position " +
                     std::to_string(pos));
    return i;
  }

  int fixed_bits(int width, const char* what) {
    int v = 0;
    for (int b = 0; b < width; ++b, ++pos) {
      if (pos >= w.size() || (w[pos] != '0' && w[pos] != '1'))
        fail(std::string("expected bit (") + what + ") at position " +
             std::to_string(pos));
      v = v * 2 + (w[pos] - '0');
    }
    return v;
  }
};

Configuration decode_config_unary(const Scheme& sch, const UniversalWord& w) {
  Parser p{w};
  Configuration c;
  bool seen_state = false;
  while (!p.done()) {
    if (p.peek() == '0') {
      if (seen_state) fail("duplicate state block at position " +
                           std::to_string(p.pos));
      ++p.pos;
      c.state = p.run_of_ones(sch.num_states, "state");
      p.expect('0', "state block end");
      seen_state = true;
    } else if (p.peek() == '1') {
      int i = p.run_of_ones(sch.num_symbols, "symbol");
      p.expect('0', "symbol block end");
      (seen_state ? c.right : c.left).push_back(i);
    } else {
      fail(std::string("unexpected character '") + p.peek() + "' at position " +
           std::to_string(p.pos));
    }
  }
  if (!seen_state) fail("missing state block");
  if (c.right.empty()) fail("no symbol after the state block");
  return c;
}

Configuration decode_config_binary(const Scheme& sch, const UniversalWord& w) {
  Parser p{w};
  Configuration c;
  bool seen_state = false;
  while (!p.done()) {
    char ch = p.peek();
    if (ch == 'c') {
      if (seen_state) fail("duplicate state block at position " +
                           std::to_string(p.pos));
      ++p.pos;
      c.state = p.fixed_bits(sch.state_width(), "state") + 1;
      check_state(sch, c.state);
      p.expect('c', "state block end");
      seen_state = true;
    } else if (ch == '0' || ch == '1') {
      int i = p.fixed_bits(sch.symbol_width(), "symbol") + 1;
      check_symbol(sch, i);
      p.expect('a', "symbol block end");
      (seen_state ? c.right : c.left).push_back(i);
    } else {
      fail(std::string("unexpected character '") + ch + "' at position " +
           std::to_string(p.pos));
    }
  }
  if (!seen_state) fail("missing state block");
  if (c.right.empty()) fail("no symbol after the state block");
  return c;
}

std::vector<Rule> decode_program_unary(const Scheme& sch,
                                       const UniversalWord& w) {
  Parser p{w};
  std::vector<Rule> rules;
  while (!p.done()) {
    Rule r;
    r.from = p.run_of_ones(sch.num_states, "state");
    p.expect('0', "field end");
    r.read = p.run_of_ones(sch.num_symbols, "symbol");
    p.expect('0', "field end");
    r.to = p.run_of_ones(sch.num_states, "state");
    p.expect('0', "field end");
    r.write = p.run_of_ones(sch.num_symbols, "symbol");
    p.expect('0', "field end");
    r.move = move_of_code(p.run_of_ones(3, "direction"));
    p.expect('0', "field end");
    p.expect('0', "rule terminator");
    rules.push_back(r);
  }
  return rules;
}

std::vector<Rule> decode_program_binary(const Scheme& sch,
                                        const UniversalWord& w) {
  Parser p{w};
  std::vector<Rule> rules;
  while (!p.done()) {
    Rule r;
    r.from = p.fixed_bits(sch.state_width(), "state") + 1;
    check_state(sch, r.from);
    p.expect('a', "field end");
    r.read = p.fixed_bits(sch.symbol_width(), "symbol") + 1;
    check_symbol(sch, r.read);
    p.expect('a', "field end");
    r.to = p.fixed_bits(sch.state_width(), "state") + 1;
    check_state(sch, r.to);
    p.expect('a', "field end");
    r.write = p.fixed_bits(sch.symbol_width(), "symbol") + 1;
    check_symbol(sch, r.write);
    p.expect('a', "field end");
    r.move = move_of_code(p.fixed_bits(2, "direction") + 1);
    p.expect('c', "rule terminator");
    rules.push_back(r);
  }
  return rules;
}

// Per-scheme code fragments shared by the direct encoders and the encoding
// transducers.
struct Fragments {
  Scheme sch;

  std::string config_symbol(int i) const {
    check_symbol(sch, i);
    if (sch.kind == SchemeKind::Unary) return unary_block(i);
    return bits(i - 1, sch.symbol_width()) + 'a';
  }
  std::string config_state(int j) const {
    check_state(sch, j);
    if (sch.kind == SchemeKind::Unary) return '0' + unary_block(j);
    return 'c' + bits(j - 1, sch.state_width()) + 'c';
  }
  std::string rule_state(int j) const {
    check_state(sch, j);
    if (sch.kind == SchemeKind::Unary) return unary_block(j);
    return bits(j - 1, sch.state_width()) + 'a';
  }
  std::string rule_symbol(int i) const {
    check_symbol(sch, i);
    if (sch.kind == SchemeKind::Unary) return unary_block(i);
    return bits(i - 1, sch.symbol_width()) + 'a';
  }
  std::string rule_dir(Move d) const {
    if (sch.kind == SchemeKind::Unary) return unary_block(move_code(d)) + '0';
    return bits(move_code(d) - 1, 2) + 'c';
  }
};

// State-name based construction of the codec transducers.
struct DfstBuilder {
  Dfst t;
  std::map<std::string, int> ids;

  int state(const std::string& name) {
    auto [it, fresh] = ids.try_emplace(name, static_cast<int>(ids.size()) + 1);
    if (fresh) t.num_states = static_cast<int>(ids.size());
    return it->second;
  }

  void arc(const std::string& from, TSym in, const std::string& to,
           const TWord& out) {
    int f = state(from), g = state(to);
    t.input_alphabet.insert(in);
    for (TSym s : out) t.output_alphabet.insert(s);
    t.transitions[{f, in}] = {g, out};
  }

  void arc(const std::string& from, char in, const std::string& to,
           const std::string& out) {
    arc(from, static_cast<TSym>(in), to, uw_to_tword(out));
  }

  Dfst finish(const std::string& initial,
              const std::vector<std::string>& accepting) {
    t.initial = state(initial);
    for (const std::string& a : accepting) t.accepting.insert(state(a));
    t.validate();
    return t;
  }
};

std::string nm(const char* tag, int a, int b = -1) {
  std::string s = tag;
  s += '_';
  s += std::to_string(a);
  if (b >= 0) {
    s += '_';
    s += std::to_string(b);
  }
  return s;
}

Dfst encode_config_dfst(const Scheme& sch) {
  Fragments frag{sch};
  DfstBuilder b;
  for (int i = 1; i <= sch.num_symbols; ++i) {
    b.arc("left", sym_token(sch, i), "left", uw_to_tword(frag.config_symbol(i)));
    b.arc("head", sym_token(sch, i), "tail", uw_to_tword(frag.config_symbol(i)));
    b.arc("tail", sym_token(sch, i), "tail", uw_to_tword(frag.config_symbol(i)));
  }
  for (int j = 1; j <= sch.num_states; ++j)
    b.arc("left", state_token(sch, j), "head",
          uw_to_tword(frag.config_state(j)));
  return b.finish("left", {"tail"});
}

Dfst encode_program_dfst(const Scheme& sch) {
  Fragments frag{sch};
  DfstBuilder b;
  b.state("rule");
  for (int j = 1; j <= sch.num_states; ++j) {
    b.arc("rule", state_token(sch, j), "read", uw_to_tword(frag.rule_state(j)));
    b.arc("to", state_token(sch, j), "write", uw_to_tword(frag.rule_state(j)));
  }
  for (int i = 1; i <= sch.num_symbols; ++i) {
    b.arc("read", sym_token(sch, i), "to", uw_to_tword(frag.rule_symbol(i)));
    b.arc("write", sym_token(sch, i), "dir", uw_to_tword(frag.rule_symbol(i)));
  }
  for (Move d : {Move::Left, Move::None, Move::Right})
    b.arc("dir", dir_token(sch, d), "rule", uw_to_tword(frag.rule_dir(d)));
  return b.finish("rule", {"rule"});
}

Dfst decode_config_unary_dfst(const Scheme& sch) {
  DfstBuilder b;
  const int n = sch.num_symbols, m = sch.num_states;
  b.arc("start", '1', nm("L", 1), "");
  b.arc("start", '0', nm("S", 0), "");
  for (int i = 1; i <= n; ++i) {
    if (i < n) b.arc(nm("L", i), '1', nm("L", i + 1), "");
    b.arc(nm("L", i), '0', "start", TWord{sym_token(sch, i)});
  }
  b.arc(nm("S", 0), '1', nm("S", 1), "");
  for (int j = 1; j <= m; ++j) {
    if (j < m) b.arc(nm("S", j), '1', nm("S", j + 1), "");
    b.arc(nm("S", j), '0', nm("R", 0), TWord{state_token(sch, j)});
  }
  b.arc(nm("R", 0), '1', nm("R", 1), "");
  for (int i = 1; i <= n; ++i) {
    if (i < n) b.arc(nm("R", i), '1', nm("R", i + 1), "");
    b.arc(nm("R", i), '0', "done", TWord{sym_token(sch, i)});
  }
  b.arc("done", '1', nm("R", 1), "");
  return b.finish("start", {"done"});
}

Dfst decode_program_unary_dfst(const Scheme& sch) {
  DfstBuilder b;
  const int n = sch.num_symbols, m = sch.num_states;
  b.state("start");
  auto field = [&](const char* tag, int max, const std::string& next,
                   auto emit) {
    for (int i = 1; i <= max; ++i) {
      if (i < max) b.arc(nm(tag, i), '1', nm(tag, i + 1), "");
      b.arc(nm(tag, i), '0', next, emit(i));
    }
  };
  b.arc("start", '1', nm("F0", 1), "");
  field("F0", m, "F1_in", [&](int j) { return TWord{state_token(sch, j)}; });
  b.arc("F1_in", '1', nm("F1", 1), "");
  field("F1", n, "F2_in", [&](int i) { return TWord{sym_token(sch, i)}; });
  b.arc("F2_in", '1', nm("F2", 1), "");
  field("F2", m, "F3_in", [&](int j) { return TWord{state_token(sch, j)}; });
  b.arc("F3_in", '1', nm("F3", 1), "");
  field("F3", n, "F4_in", [&](int i) { return TWord{sym_token(sch, i)}; });
  b.arc("F4_in", '1', nm("F4", 1), "");
  for (int d = 1; d <= 3; ++d) {
    if (d < 3) b.arc(nm("F4", d), '1', nm("F4", d + 1), "");
    b.arc(nm("F4", d), '0', nm("T", d), TWord{});
    b.arc(nm("T", d), '0', "start",
          TWord{dir_token(sch, move_of_code(d))});
  }
  return b.finish("start", {"start"});
}

// Fixed-width bit field collector: from entry state `from` on the first bit,
// through width bits, then the closer character, emitting one token chosen by
// the final value; values with no valid token get no closing transition.
void bit_field(DfstBuilder& b, const std::string& from, const char* tag,
               int width, char closer, const std::string& next,
               const std::function<std::optional<TSym>(int)>& token) {
  for (int v = 0; v < 2; ++v)
    b.arc(from, static_cast<char>('0' + v), nm(tag, 1, v), "");
  for (int bcount = 1; bcount < width; ++bcount)
    for (int v = 0; v < (1 << bcount); ++v)
      for (int bit = 0; bit < 2; ++bit)
        b.arc(nm(tag, bcount, v), static_cast<char>('0' + bit),
              nm(tag, bcount + 1, v * 2 + bit), "");
  for (int v = 0; v < (1 << width); ++v) {
    std::optional<TSym> tok = token(v);
    if (tok) b.arc(nm(tag, width, v), closer, next, TWord{*tok});
  }
}

Dfst decode_config_binary_dfst(const Scheme& sch) {
  DfstBuilder b;
  const int n = sch.num_symbols, m = sch.num_states;
  const int ws = sch.symbol_width(), wq = sch.state_width();
  auto sym_of = [&](int v) -> std::optional<TSym> {
    if (v + 1 > n) return std::nullopt;
    return sym_token(sch, v + 1);
  };
  auto state_of = [&](int v) -> std::optional<TSym> {
    if (v + 1 > m) return std::nullopt;
    return state_token(sch, v + 1);
  };
  bit_field(b, "start", "P", ws, 'a', "start", sym_of);
  b.arc("start", 'c', "C_in", "");
  bit_field(b, "C_in", "C", wq, 'c', "R_in", state_of);
  bit_field(b, "R_in", "Q", ws, 'a', "done", sym_of);
  bit_field(b, "done", "Q", ws, 'a', "done", sym_of);
  return b.finish("start", {"done"});
}

Dfst decode_program_binary_dfst(const Scheme& sch) {
  DfstBuilder b;
  const int n = sch.num_symbols, m = sch.num_states;
  const int ws = sch.symbol_width(), wq = sch.state_width();
  auto sym_of = [&](int v) -> std::optional<TSym> {
    if (v + 1 > n) return std::nullopt;
    return sym_token(sch, v + 1);
  };
  auto state_of = [&](int v) -> std::optional<TSym> {
    if (v + 1 > m) return std::nullopt;
    return state_token(sch, v + 1);
  };
  auto dir_of = [&](int v) -> std::optional<TSym> {
    if (v > 2) return std::nullopt;
    return dir_token(sch, move_of_code(v + 1));
  };
  b.state("start");
  bit_field(b, "start", "G0", wq, 'a', "G1_in", state_of);
  bit_field(b, "G1_in", "G1", ws, 'a', "G2_in", sym_of);
  bit_field(b, "G2_in", "G2", wq, 'a', "G3_in", state_of);
  bit_field(b, "G3_in", "G3", ws, 'a', "G4_in", sym_of);
  bit_field(b, "G4_in", "G4", 2, 'c', "start", dir_of);
  return b.finish("start", {"start"});
}

// Wraps a decoder over {0,1,a,c} into one over bit pairs.
Dfst unpack_wrapper(const Dfst& inner) {
  Dfst t;
  t.input_alphabet = {'0', '1'};
  t.output_alphabet = inner.output_alphabet;
  auto id = [&](int q, int phase) { return (q - 1) * 3 + phase + 1; };
  t.num_states = inner.num_states * 3;
  t.initial = id(inner.initial, 0);
  for (int q = 1; q <= inner.num_states; ++q) {
    t.transitions[{id(q, 0), '0'}] = {id(q, 1), {}};
    t.transitions[{id(q, 0), '1'}] = {id(q, 2), {}};
    auto forward = [&](int phase, char bit, char decoded) {
      auto it = inner.transitions.find({q, decoded});
      if (it == inner.transitions.end()) return;
      t.transitions[{id(q, phase), bit}] = {id(it->second.first, 0),
                                            it->second.second};
    };
    forward(1, '0', '0');
    forward(1, '1', '1');
    forward(2, '0', 'a');
    forward(2, '1', 'c');
  }
  for (int q : inner.accepting) t.accepting.insert(id(q, 0));
  t.validate();
  return t;
}

// Rewrites an encoder's outputs through the pair packing.
Dfst pack_outputs(Dfst t) {
  std::set<TSym> packed_alpha;
  for (auto& [key, value] : t.transitions) {
    UniversalWord raw = tword_to_uw(value.second);
    value.second = uw_to_tword(pack_pairs(raw));
    for (TSym s : value.second) packed_alpha.insert(s);
  }
  t.output_alphabet = packed_alpha;
  t.validate();
  return t;
}

}  // namespace

int Scheme::symbol_width() const { return width_for(num_symbols); }
int Scheme::state_width() const { return width_for(num_states); }

UniversalWord encode_config(const Scheme& sch, const Configuration& c) {
  if (c.right.empty()) fail("configuration right part is empty");
  Scheme base = sch;
  if (sch.kind == SchemeKind::BinaryPacked) base.kind = SchemeKind::Binary;
  Fragments frag{base};
  UniversalWord out;
  for (Symbol s : c.left) out += frag.config_symbol(s);
  out += frag.config_state(c.state);
  for (Symbol s : c.right) out += frag.config_symbol(s);
  if (sch.kind == SchemeKind::BinaryPacked) return pack_pairs(out);
  return out;
}

Configuration decode_config(const Scheme& sch, const UniversalWord& w) {
  switch (sch.kind) {
    case SchemeKind::Unary: return decode_config_unary(sch, w);
    case SchemeKind::Binary: return decode_config_binary(sch, w);
    case SchemeKind::BinaryPacked:
      return decode_config_binary(sch, unpack_pairs(w));
  }
  fail("bad scheme");
}

UniversalWord encode_program(const Scheme& sch, const Machine& m) {
  Scheme base = sch;
  if (sch.kind == SchemeKind::BinaryPacked) base.kind = SchemeKind::Binary;
  Fragments frag{base};
  UniversalWord out;
  for (const Rule& r : canonical_rules(m)) {
    out += frag.rule_state(r.from);
    out += frag.rule_symbol(r.read);
    out += frag.rule_state(r.to);
    out += frag.rule_symbol(r.write);
    out += frag.rule_dir(r.move);
  }
  if (sch.kind == SchemeKind::BinaryPacked) return pack_pairs(out);
  return out;
}

std::vector<Rule> decode_program(const Scheme& sch, const UniversalWord& w) {
  switch (sch.kind) {
    case SchemeKind::Unary: return decode_program_unary(sch, w);
    case SchemeKind::Binary: return decode_program_binary(sch, w);
    case SchemeKind::BinaryPacked:
      return decode_program_binary(sch, unpack_pairs(w));
  }
  fail("bad scheme");
}

std::uint64_t space_bound(const Scheme& sch, std::uint64_t w_len) {
  const std::uint64_t n = sch.num_symbols, m = sch.num_states;
  const std::uint64_t ws = sch.symbol_width(), wq = sch.state_width();
  switch (sch.kind) {
    case SchemeKind::Unary: return w_len * (n + 1) + m + 4;
    case SchemeKind::Binary: return w_len * (ws + 1) + wq + 2;
    case SchemeKind::BinaryPacked: return 2 * (w_len * (ws + 1) + wq + 2);
  }
  fail("bad scheme");
}

UniversalWord pack_pairs(const UniversalWord& w) {
  UniversalWord out;
  out.reserve(w.size() * 2);
  for (char ch : w) {
    switch (ch) {
      case '0': out += "00"; break;
      case '1': out += "01"; break;
      case 'a': out += "10"; break;
      case 'c': out += "11"; break;
      default: fail(std::string("cannot pack character '") + ch + "'");
    }
  }
  return out;
}

UniversalWord unpack_pairs(const UniversalWord& w) {
  if (w.size() % 2 != 0) fail("packed word has odd length");
  UniversalWord out;
  out.reserve(w.size() / 2);
  for (std::size_t i = 0; i < w.size(); i += 2) {
    char hi = w[i], lo = w[i + 1];
    if ((hi != '0' && hi != '1') || (lo != '0' && lo != '1'))
      fail("packed word contains a non-bit character");
    out += "01ac"[(hi - '0') * 2 + (lo - '0')];
  }
  return out;
}

Dfst codec_as_dfst(const Scheme& sch, CodecDirection dir, CodecTarget target) {
  Scheme base = sch;
  if (sch.kind == SchemeKind::BinaryPacked) base.kind = SchemeKind::Binary;
  if (dir == CodecDirection::Encode) {
    Dfst t = target == CodecTarget::Config ? encode_config_dfst(base)
                                           : encode_program_dfst(base);
    if (sch.kind == SchemeKind::BinaryPacked) t = pack_outputs(std::move(t));
    return t;
  }
  Dfst t;
  if (base.kind == SchemeKind::Unary)
    t = target == CodecTarget::Config ? decode_config_unary_dfst(base)
                                      : decode_program_unary_dfst(base);
  else
    t = target == CodecTarget::Config ? decode_config_binary_dfst(base)
                                      : decode_program_binary_dfst(base);
  if (sch.kind == SchemeKind::BinaryPacked) t = unpack_wrapper(t);
  return t;
}

TSym sym_token(const Scheme& sch, int symbol) {
  check_symbol(sch, symbol);
  return symbol;
}

TSym state_token(const Scheme& sch, int state) {
  check_state(sch, state);
  return sch.num_symbols + state;
}

TSym dir_token(const Scheme& sch, Move d) {
  return sch.num_symbols + sch.num_states + move_code(d);
}

TWord config_to_stream(const Scheme& sch, const Configuration& c) {
  TWord out;
  for (Symbol s : c.left) out.push_back(sym_token(sch, s));
  out.push_back(state_token(sch, c.state));
  for (Symbol s : c.right) out.push_back(sym_token(sch, s));
  return out;
}

Configuration stream_to_config(const Scheme& sch, const TWord& tokens) {
  Configuration c;
  bool seen_state = false;
  for (TSym t : tokens) {
    if (t >= 1 && t <= sch.num_symbols) {
      (seen_state ? c.right : c.left).push_back(t);
    } else if (t > sch.num_symbols && t <= sch.num_symbols + sch.num_states) {
      if (seen_state) fail("duplicate state token");
      c.state = t - sch.num_symbols;
      seen_state = true;
    } else {
      fail("unexpected token " + std::to_string(t) + " in configuration stream");
    }
  }
  if (!seen_state) fail("missing state token");
  if (c.right.empty()) fail("no symbol after the state token");
  return c;
}

TWord program_to_stream(const Scheme& sch, const Machine& m) {
  TWord out;
  for (const Rule& r : canonical_rules(m)) {
    out.push_back(state_token(sch, r.from));
    out.push_back(sym_token(sch, r.read));
    out.push_back(state_token(sch, r.to));
    out.push_back(sym_token(sch, r.write));
    out.push_back(dir_token(sch, r.move));
  }
  return out;
}

std::vector<Rule> stream_to_program(const Scheme& sch, const TWord& tokens) {
  if (tokens.size() % 5 != 0) fail("program stream length not a multiple of 5");
  auto as_state = [&](TSym t) {
    if (t <= sch.num_symbols || t > sch.num_symbols + sch.num_states)
      fail("expected state token");
    return t - sch.num_symbols;
  };
  auto as_sym = [&](TSym t) {
    if (t < 1 || t > sch.num_symbols) fail("expected symbol token");
    return t;
  };
  auto as_dir = [&](TSym t) {
    int d = t - sch.num_symbols - sch.num_states;
    if (d < 1 || d > 3) fail("expected direction token");
    return move_of_code(d);
  };
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < tokens.size(); i += 5)
    rules.push_back({as_state(tokens[i]), as_sym(tokens[i + 1]),
                     as_state(tokens[i + 2]), as_sym(tokens[i + 3]),
                     as_dir(tokens[i + 4])});
  return rules;
}

TWord uw_to_tword(const UniversalWord& w) {
  return TWord(w.begin(), w.end());
}

UniversalWord tword_to_uw(const TWord& w) {
  UniversalWord out;
  out.reserve(w.size());
  for (TSym s : w) out += static_cast<char>(s);
  return out;
}

}  // namespace umach
