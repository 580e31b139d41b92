#include "umach/universality.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "umach/codec.hpp"
#include "umach/universal.hpp"

namespace umach {
namespace {

using Elem = EncodedSystem::Elem;

constexpr std::uint64_t kUniversalStepFuel = 10'000'000;

std::string triple_text(std::size_t rel, int x, int y) {
  return "relation " + std::to_string(rel) + ", pair (" + std::to_string(x) +
         ", " + std::to_string(y) + ")";
}

enum class Reach { Found, Saturated, AtBound };

// Shortest chain of 1..n_max edges from a to b. Saturated means the set of
// elements reachable in one or more steps was exhausted without meeting b,
// so no larger bound can succeed either.
Reach reach_within(const std::map<Elem, std::vector<Elem>>& adj, const Elem& a,
                   const Elem& b, std::uint64_t n_max) {
  if (n_max == 0) return adj.count(a) ? Reach::AtBound : Reach::Saturated;
  std::set<Elem> visited{a};
  std::set<Elem> frontier{a};
  for (std::uint64_t depth = 1; depth <= n_max; ++depth) {
    std::set<Elem> raw;
    for (const Elem& v : frontier) {
      auto it = adj.find(v);
      if (it == adj.end()) continue;
      raw.insert(it->second.begin(), it->second.end());
    }
    if (raw.count(b)) return Reach::Found;
    std::set<Elem> next;
    for (const Elem& v : raw)
      if (!visited.count(v)) next.insert(v);
    visited.insert(raw.begin(), raw.end());
    if (next.empty()) return Reach::Saturated;
    frontier = std::move(next);
  }
  return Reach::AtBound;
}

CheckReport violation(std::string msg) {
  return {CheckOutcome::PreconditionViolation, std::nullopt, std::move(msg)};
}

CheckReport run_check(const EncodedSystem& sys,
                      const std::vector<RelationSystem>& cls,
                      std::uint64_t n_max, bool pairing_form) {
  if (sys.rel_codes.size() != cls.size() ||
      sys.elem_encoders.size() != cls.size())
    return violation("per-relation tables do not match the class size");

  std::set<Elem> code_side;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    try {
      cls[i].validate();
    } catch (const std::invalid_argument& e) {
      return violation("relation " + std::to_string(i) + ": " + e.what());
    }
    const Elem& code = sys.rel_codes[i];
    if (!sys.host.count(code))
      return violation("relation " + std::to_string(i) +
                       ": code is not a host element");
    if (!code_side.insert(code).second)
      return violation("relation codes are not injective");
  }

  std::set<Elem> element_side;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    std::set<Elem> image;
    for (const auto& [x, e] : sys.elem_encoders[i]) {
      if (!sys.host.count(e))
        return violation("relation " + std::to_string(i) + ": code of " +
                         std::to_string(x) + " is not a host element");
      if (!image.insert(e).second)
        return violation("relation " + std::to_string(i) +
                         ": element encoder is not injective");
      element_side.insert(e);
    }
    for (int x : cls[i].carrier)
      if (!sys.elem_encoders[i].count(x))
        return violation("relation " + std::to_string(i) + ": element " +
                         std::to_string(x) + " has no code");
  }
  for (const Elem& e : element_side)
    if (code_side.count(e))
      return violation("element side and coding side share '" + e + "'");

  for (const auto& [a, b] : sys.R)
    if (!sys.host.count(a) || !sys.host.count(b))
      return violation("host relation pair ('" + a + "', '" + b +
                       "') leaves the host carrier");

  if (pairing_form) {
    std::set<Elem> values;
    for (const auto& [key, value] : sys.pairing) {
      if (!sys.host.count(value))
        return violation("pairing of ('" + key.first + "', '" + key.second +
                         "') is not a host element");
      if (!values.insert(value).second)
        return violation("pairing is not injective");
    }
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (int x : cls[i].carrier)
        for (int y : cls[i].carrier) {
          std::pair<Elem, Elem> key{sys.elem_encoders[i].at(x),
                                    sys.elem_encoders[i].at(y)};
          if (!sys.pairing.count(key))
            return violation("pairing undefined on the codes of " +
                             triple_text(i, x, y));
        }
  } else {
    for (const auto& [key, value] : sys.op) {
      (void)key;
      if (!sys.host.count(value))
        return violation("operation value '" + value +
                         "' is not a host element");
    }
    for (const Elem& a : sys.host)
      for (const Elem& b : sys.host)
        if (!sys.op.count({a, b}))
          return violation("operation is not total: missing ('" + a + "', '" +
                           b + "')");
  }

  std::map<Elem, std::vector<Elem>> adj;
  for (const auto& [a, b] : sys.R) adj[a].push_back(b);

  std::uint64_t checked = 0;
  std::optional<CheckReport> first_unknown;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    for (int x : cls[i].carrier) {
      for (int y : cls[i].carrier) {
        const Elem& fx = sys.elem_encoders[i].at(x);
        const Elem& fy = sys.elem_encoders[i].at(y);
        Elem a, b;
        if (pairing_form) {
          a = sys.rel_codes[i];
          b = sys.pairing.at({fx, fy});
        } else {
          a = sys.op.at({sys.rel_codes[i], fx});
          b = sys.op.at({sys.rel_codes[i], fy});
        }
        bool expected = cls[i].relation.count({x, y}) != 0;
        Reach reach = reach_within(adj, a, b, n_max);
        ++checked;
        CheckCounterexample cex{i, x, y};
        if (expected && reach == Reach::Saturated)
          return {CheckOutcome::FalseCompleteness, cex,
                  triple_text(i, x, y) +
                      " is in the relation but its encoding is unreachable"};
        if (!expected && reach == Reach::Found)
          return {CheckOutcome::FalseSoundness, cex,
                  triple_text(i, x, y) +
                      " is not in the relation but its encoding is reachable"};
        if (reach == Reach::AtBound && !first_unknown)
          first_unknown = {CheckOutcome::UnknownAtBound, cex,
                           triple_text(i, x, y) + " is unresolved at bound " +
                               std::to_string(n_max)};
      }
    }
  }
  if (first_unknown) return *first_unknown;
  return {CheckOutcome::Ok, std::nullopt,
          "verified " + std::to_string(checked) + " pairs"};
}

Elem pair_code(const Elem& a, const Elem& b) {
  return "PAIR:" + std::to_string(a.size()) + ":" + a + "|" + b;
}

}  // namespace

void RelationSystem::validate() const {
  for (const auto& [x, y] : relation)
    if (!carrier.count(x) || !carrier.count(y))
      throw std::invalid_argument("relation pair (" + std::to_string(x) +
                                  ", " + std::to_string(y) +
                                  ") leaves the carrier");
}

const char* to_string(CheckOutcome o) {
  switch (o) {
    case CheckOutcome::Ok:
      return "ok";
    case CheckOutcome::FalseSoundness:
      return "false-soundness";
    case CheckOutcome::FalseCompleteness:
      return "false-completeness";
    case CheckOutcome::UnknownAtBound:
      return "unknown-at-bound";
    case CheckOutcome::PreconditionViolation:
      return "precondition-violation";
  }
  return "?";
}

CheckReport check_universal_op_form(const EncodedSystem& sys,
                                    const std::vector<RelationSystem>& cls,
                                    std::uint64_t n_max) {
  return run_check(sys, cls, n_max, false);
}

CheckReport check_universal_pairing_form(
    const EncodedSystem& sys, const std::vector<RelationSystem>& cls,
    std::uint64_t n_max) {
  return run_check(sys, cls, n_max, true);
}

TmInstance tm_instance(const std::vector<Machine>& corpus, int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  TmInstance out;
  const Machine u = build_utm();
  const State fetch = utm_table().fetch;

  for (const Machine& m : corpus) {
    m.validate();
    if (!m.deterministic)
      throw std::invalid_argument(
          "universal-run edges need deterministic machines");
    Scheme sch = Scheme::for_machine(SchemeKind::Unary, m);

    std::vector<Configuration> configs;
    std::vector<Word> lefts, rights;
    auto words_of = [&](int len) {
      std::vector<Word> out_words;
      Word w(len, 1);
      for (;;) {
        out_words.push_back(w);
        int i = len - 1;
        while (i >= 0 && w[i] == m.num_symbols) w[i--] = 1;
        if (i < 0) break;
        ++w[i];
      }
      if (len == 0) out_words = {Word{}};
      return out_words;
    };
    for (int len = 1; len <= depth; ++len)
      for (int ll = 0; ll < len; ++ll)
        for (State q = 1; q <= m.num_states; ++q)
          for (const Word& l : words_of(ll))
            for (const Word& r : words_of(len - ll))
              configs.push_back({l, q, r});

    std::vector<Elem> codes(configs.size());
    std::map<Elem, int> index_of;
    for (std::size_t i = 0; i < configs.size(); ++i) {
      codes[i] = "C:" + encode_config(sch, configs[i]);
      index_of[codes[i]] = static_cast<int>(i) + 1;
    }

    Elem g = "P:" + std::to_string(m.num_states) + ":" +
             std::to_string(m.num_symbols) + ":" + encode_program(sch, m);

    RelationSystem rs;
    std::map<int, Elem> encoder;
    for (std::size_t i = 0; i < configs.size(); ++i) {
      rs.carrier.insert(static_cast<int>(i) + 1);
      encoder[static_cast<int>(i) + 1] = codes[i];
    }

    out.system.host.insert(g);
    out.system.host.insert(codes.begin(), codes.end());
    for (const Elem& a : codes)
      for (const Elem& b : codes) {
        Elem p = pair_code(a, b);
        out.system.pairing[{a, b}] = p;
        out.system.host.insert(p);
      }

    for (std::size_t i = 0; i < configs.size(); ++i) {
      const Configuration& c = configs[i];

      std::vector<Configuration> direct = step(m, c);
      if (direct.size() == 1) {
        Elem next_code = "C:" + encode_config(sch, direct[0]);
        auto it = index_of.find(next_code);
        if (it != index_of.end())
          rs.relation.insert({static_cast<int>(i) + 1, it->second});
        else
          out.warnings.push_back(m.name + ": successor of " + codes[i] +
                                 " outgrows depth " + std::to_string(depth) +
                                 "; pair excluded");
      }

      TapeRunner runner(u, assemble_from_config(m, c));
      runner.set_watch_state(fetch);
      int visits = 0;
      std::optional<Configuration> observed;
      for (;;) {
        TapeRunner::Outcome got = runner.run(kUniversalStepFuel);
        if (got == TapeRunner::Outcome::Paused) {
          if (++visits < 2) continue;
          observed =
              parse_universal_tape(m, tape_word(runner.configuration()))
                  .decoded;
          break;
        }
        if (got == TapeRunner::Outcome::OutOfFuel)
          out.warnings.push_back(m.name + ": universal run from " + codes[i] +
                                 " exceeded its fuel; edge dropped");
        break;
      }
      if (observed) {
        Elem next_code = "C:" + encode_config(sch, *observed);
        auto it = index_of.find(next_code);
        if (it != index_of.end())
          out.system.R.insert({g, out.system.pairing.at({codes[i],
                                                         next_code})});
      }
    }

    out.system.rel_codes.push_back(g);
    out.system.elem_encoders.push_back(std::move(encoder));
    out.cls.push_back(std::move(rs));
  }
  return out;
}

ParsedInstance parse_instance(const std::string& text) {
  ParsedInstance out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(line) + ": " + msg);
  };
  auto parse_int = [&](const std::string& t) {
    if (t.empty() ||
        t.find_first_not_of("0123456789-") != std::string::npos ||
        t.find('-', 1) != std::string::npos)
      fail("'" + t + "' is not an integer");
    try {
      return std::stoi(t);
    } catch (const std::exception&) {
      fail("'" + t + "' is out of range");
    }
    return 0;
  };
  auto in_relation = [&]() {
    if (out.cls.empty()) fail("directive outside a relation block");
  };

  while (std::getline(in, raw)) {
    ++line;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& head = tok[0];

    if (head == "host") {
      out.system.host.insert(tok.begin() + 1, tok.end());
    } else if (head == "op" || head == "pair") {
      if (tok.size() != 5 || tok[3] != "->")
        fail(head + " needs the form '" + head + " A B -> C'");
      auto& table = head == "op" ? out.system.op : out.system.pairing;
      table[{tok[1], tok[2]}] = tok[4];
    } else if (head == "R") {
      if (tok.size() != 3) fail("R needs two elements");
      out.system.R.insert({tok[1], tok[2]});
    } else if (head == "relation") {
      if (tok.size() != 1) fail("relation takes no arguments");
      out.cls.emplace_back();
      out.system.rel_codes.emplace_back();
      out.system.elem_encoders.emplace_back();
    } else if (head == "carrier") {
      in_relation();
      for (std::size_t i = 1; i < tok.size(); ++i)
        out.cls.back().carrier.insert(parse_int(tok[i]));
    } else if (head == "member") {
      in_relation();
      if (tok.size() != 3) fail("member needs two elements");
      out.cls.back().relation.insert({parse_int(tok[1]), parse_int(tok[2])});
    } else if (head == "encode") {
      in_relation();
      if (tok.size() != 4 || tok[2] != "->")
        fail("encode needs the form 'encode X -> ELEM'");
      out.system.elem_encoders.back()[parse_int(tok[1])] = tok[3];
    } else if (head == "relcode") {
      in_relation();
      if (tok.size() != 2) fail("relcode needs one element");
      out.system.rel_codes.back() = tok[1];
    } else {
      fail("unknown directive '" + head + "'");
    }
  }

  for (std::size_t i = 0; i < out.cls.size(); ++i)
    if (out.system.rel_codes[i].empty())
      throw std::invalid_argument("relation " + std::to_string(i) +
                                  " has no relcode");
  return out;
}

}  // namespace umach
