#include "umach/fa.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace umach {
namespace {

constexpr std::uint64_t kEnumerationGuard = 1'000'000;

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::vector<char> host_alphabet(const std::vector<char>& alphabet) {
  std::vector<char> h = alphabet;
  h.push_back('0');
  h.push_back('1');
  h.push_back('#');
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  return h;
}

void check_class_guard(int k, int alphabet_size) {
  std::uint64_t size = k_class_size(k, alphabet_size);
  require(size <= kEnumerationGuard,
          "k-class too large to enumerate: " + std::to_string(size) +
              " members");
}

// All words over alphabet with length <= max_len, shortest first and
// lexicographic within a length.
std::vector<std::string> words_up_to(const std::vector<char>& alphabet,
                                     int max_len) {
  std::vector<std::string> out{""};
  std::size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (char c : alphabet) out.push_back(out[i] + c);
    level_begin = level_end;
  }
  return out;
}

}  // namespace

void Fa::validate() const {
  require(num_states >= 1, "automaton needs at least one state");
  require(!alphabet.empty(), "automaton needs a nonempty alphabet");
  require(std::is_sorted(alphabet.begin(), alphabet.end()) &&
              std::adjacent_find(alphabet.begin(), alphabet.end()) ==
                  alphabet.end(),
          "alphabet must be sorted and duplicate-free");
  require(transitions.size() ==
              static_cast<std::size_t>(num_states) * alphabet.size(),
          "transition table must cover every (state, symbol) pair");
  for (int t : transitions)
    require(t >= 1 && t <= num_states, "transition target out of range");
  for (int q : accepting)
    require(q >= 1 && q <= num_states, "accepting state out of range");
}

int Fa::next_state(int state, char symbol) const {
  auto it = std::lower_bound(alphabet.begin(), alphabet.end(), symbol);
  if (it == alphabet.end() || *it != symbol)
    throw std::invalid_argument(std::string("symbol '") + symbol +
                                "' outside the automaton alphabet");
  std::size_t idx = static_cast<std::size_t>(state - 1) * alphabet.size() +
                    (it - alphabet.begin());
  return transitions[idx];
}

bool run_fa(const Fa& a, std::string_view w) {
  a.validate();
  int q = 1;
  for (char c : w) q = a.next_state(q, c);
  return a.accepting.count(q) > 0;
}

std::uint64_t k_class_size(int k, int alphabet_size) {
  require(k >= 1, "k must be at least 1");
  require(alphabet_size >= 1, "alphabet must be nonempty");
  constexpr std::uint64_t kCap = std::uint64_t{1} << 63;
  std::uint64_t size = 1;
  std::uint64_t cells = static_cast<std::uint64_t>(k) * alphabet_size;
  for (std::uint64_t i = 0; i < cells; ++i) {
    if (size > kCap / k) return kCap;
    size *= k;
  }
  for (int i = 0; i < k; ++i) {
    if (size > kCap / 2) return kCap;
    size *= 2;
  }
  return size;
}

std::vector<Fa> enumerate_k_class(int k, const std::vector<char>& alphabet) {
  check_class_guard(k, static_cast<int>(alphabet.size()));
  std::vector<char> sigma = alphabet;
  std::sort(sigma.begin(), sigma.end());
  require(std::adjacent_find(sigma.begin(), sigma.end()) == sigma.end(),
          "alphabet must be duplicate-free");
  require(std::find(sigma.begin(), sigma.end(), '#') == sigma.end(),
          "'#' is reserved for the code separator");

  std::size_t cells = static_cast<std::size_t>(k) * sigma.size();
  std::vector<int> table(cells, 1);
  std::vector<Fa> out;
  while (true) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      Fa a;
      a.num_states = k;
      a.alphabet = sigma;
      a.transitions = table;
      for (int q = 1; q <= k; ++q)
        if (mask & (std::uint64_t{1} << (q - 1))) a.accepting.insert(q);
      out.push_back(std::move(a));
    }
    std::size_t i = cells;
    while (i > 0) {
      --i;
      if (table[i] < k) {
        ++table[i];
        break;
      }
      table[i] = 1;
      if (i == 0) return out;
    }
  }
}

int fa_code_width(int k) {
  int w = 0;
  while ((1 << w) < k) ++w;
  return std::max(1, w);
}

TWord fa_to_stream(const Fa& a) {
  a.validate();
  TWord stream;
  for (int t : a.transitions) stream.push_back(t);
  int k = a.num_states;
  for (int q = 1; q <= k; ++q)
    stream.push_back(a.accepting.count(q) ? k + 2 : k + 1);
  return stream;
}

Dfst fa_encoder_dfst(int k) {
  require(k >= 1, "k must be at least 1");
  int width = fa_code_width(k);
  std::map<TSym, TWord> table;
  for (int t = 1; t <= k; ++t) {
    TWord bits;
    for (int b = width - 1; b >= 0; --b)
      bits.push_back(((t - 1) >> b) & 1 ? '1' : '0');
    table[t] = bits;
  }
  table[k + 1] = {'0'};
  table[k + 2] = {'1'};
  return symbolwise_dfst(table);
}

std::string encode_fa(const Fa& a, int k) {
  a.validate();
  require(a.num_states == k,
          "automaton has " + std::to_string(a.num_states) +
              " states, not the class size " + std::to_string(k));
  TransduceResult r = transduce(fa_encoder_dfst(k), fa_to_stream(a));
  require(r.accepted, "encoder rejected the automaton stream");
  std::string code;
  for (TSym s : r.output) code.push_back(static_cast<char>(s));
  return code;
}

Fa build_universal_fa(int k, const std::vector<char>& alphabet) {
  std::vector<Fa> members = enumerate_k_class(k, alphabet);
  std::vector<char> host = host_alphabet(alphabet);
  std::vector<char> sigma = members.front().alphabet;

  std::unordered_map<std::string, std::size_t> code_to_member;
  std::unordered_set<std::string> prefixes;
  for (std::size_t i = 0; i < members.size(); ++i) {
    std::string code = encode_fa(members[i], k);
    code_to_member.emplace(code, i);
    for (std::size_t len = 0; len <= code.size(); ++len)
      prefixes.insert(code.substr(0, len));
  }
  std::size_t code_len = k * sigma.size() * fa_code_width(k) + k;

  // Abstract states: prefix states keyed by the prefix text, member states
  // keyed by (member, fa state), and one dead sink. Ids are assigned in
  // breadth-first discovery order starting from the empty prefix.
  struct Pending {
    bool is_prefix;
    std::string prefix;
    std::size_t member;
    int fa_state;
  };
  std::unordered_map<std::string, int> prefix_id;
  std::map<std::pair<std::size_t, int>, int> member_id;
  int dead_id = 0;
  int next_id = 0;
  std::queue<Pending> queue;
  std::vector<Pending> discovered;

  auto intern_prefix = [&](const std::string& p) {
    auto [it, fresh] = prefix_id.emplace(p, next_id + 1);
    if (fresh) {
      ++next_id;
      Pending s{true, p, 0, 0};
      queue.push(s);
      discovered.push_back(s);
    }
    return it->second;
  };
  auto intern_member = [&](std::size_t m, int q) {
    auto [it, fresh] = member_id.emplace(std::make_pair(m, q), next_id + 1);
    if (fresh) {
      ++next_id;
      Pending s{false, "", m, q};
      queue.push(s);
      discovered.push_back(s);
    }
    return it->second;
  };
  auto intern_dead = [&]() {
    if (dead_id == 0) {
      dead_id = ++next_id;
      Pending s{false, "", 0, 0};
      discovered.push_back(s);
    }
    return dead_id;
  };

  std::map<std::pair<int, char>, int> edges;
  intern_prefix("");
  while (!queue.empty()) {
    Pending s = queue.front();
    queue.pop();
    int from = s.is_prefix ? prefix_id.at(s.prefix)
                           : member_id.at({s.member, s.fa_state});
    for (char c : host) {
      int to;
      if (s.is_prefix) {
        if (c == '#') {
          auto it = code_to_member.find(s.prefix);
          to = (s.prefix.size() == code_len && it != code_to_member.end())
                   ? intern_member(it->second, 1)
                   : intern_dead();
        } else if (c == '0' || c == '1') {
          std::string ext = s.prefix + c;
          to = (ext.size() <= code_len && prefixes.count(ext))
                   ? intern_prefix(ext)
                   : intern_dead();
        } else {
          to = intern_dead();
        }
      } else {
        bool payload = std::binary_search(sigma.begin(), sigma.end(), c);
        to = payload ? intern_member(
                           s.member,
                           members[s.member].next_state(s.fa_state, c))
                     : intern_dead();
      }
      edges[{from, c}] = to;
    }
  }
  // The dead sink may have been created after the main loop stopped
  // feeding it; give it its self-loops.
  if (dead_id != 0)
    for (char c : host) edges[{dead_id, c}] = dead_id;

  Fa u;
  u.num_states = next_id;
  u.alphabet = host;
  u.transitions.assign(static_cast<std::size_t>(next_id) * host.size(), 1);
  for (const auto& [key, to] : edges) {
    auto it = std::lower_bound(host.begin(), host.end(), key.second);
    std::size_t idx =
        static_cast<std::size_t>(key.first - 1) * host.size() +
        (it - host.begin());
    u.transitions[idx] = to;
  }
  for (const auto& [key, id] : member_id)
    if (members[key.first].accepting.count(key.second)) u.accepting.insert(id);
  u.validate();
  return u;
}

FaVerifyReport verify_universal_fa_with(const Fa& u, int k,
                                        const std::vector<char>& alphabet,
                                        int max_len) {
  std::vector<Fa> members = enumerate_k_class(k, alphabet);
  FaVerifyReport report;
  report.class_size = members.size();
  report.universal_states = u.num_states;
  if (u.num_states <= k) {
    report.ok = false;
    report.counterexample = "universal automaton has only " +
                            std::to_string(u.num_states) +
                            " states, not more than " + std::to_string(k);
    return report;
  }
  std::vector<std::string> words =
      words_up_to(members.front().alphabet, max_len);
  for (const Fa& a : members) {
    std::string code = encode_fa(a, k);
    for (const std::string& w : words) {
      bool direct = run_fa(a, w);
      bool through = run_fa(u, code + "#" + w);
      if (direct != through) {
        report.ok = false;
        report.counterexample =
            code + "#" + w + (direct ? " (member accepts, universal rejects)"
                                     : " (member rejects, universal accepts)");
        return report;
      }
    }
  }
  report.ok = true;
  return report;
}

FaVerifyReport verify_universal_fa(int k, const std::vector<char>& alphabet,
                                   int max_len) {
  return verify_universal_fa_with(build_universal_fa(k, alphabet), k,
                                  alphabet, max_len);
}

}  // namespace umach
