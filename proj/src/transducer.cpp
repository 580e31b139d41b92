#include "umach/transducer.hpp"

#include <stdexcept>
#include <string>

namespace umach {

void Dfst::validate() const {
  if (num_states < 1) throw std::invalid_argument("transducer needs a state");
  auto in_range = [this](int q) { return q >= 1 && q <= num_states; };
  if (!in_range(initial)) throw std::invalid_argument("initial state out of range");
  for (int q : accepting)
    if (!in_range(q)) throw std::invalid_argument("accepting state out of range");
  for (const auto& [key, value] : transitions) {
    if (!in_range(key.first) || !in_range(value.first))
      throw std::invalid_argument("transition state out of range");
    if (!input_alphabet.count(key.second))
      throw std::invalid_argument("transition input not in alphabet");
    for (TSym s : value.second)
      if (!output_alphabet.count(s))
        throw std::invalid_argument("transition output not in alphabet");
  }
}

TransduceResult transduce(const Dfst& t, const TWord& input) {
  TransduceResult r;
  int state = t.initial;
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (!t.input_alphabet.count(input[i]))
      throw std::invalid_argument("input symbol " + std::to_string(input[i]) +
                                  " not in transducer alphabet");
    auto it = t.transitions.find({state, input[i]});
    if (it == t.transitions.end()) {
      r.failure_pos = i;
      return r;
    }
    state = it->second.first;
    r.output.insert(r.output.end(), it->second.second.begin(),
                    it->second.second.end());
    ++r.steps;
  }
  r.accepted = t.accepting.count(state) > 0;
  return r;
}

Dfst symbolwise_dfst(const std::map<TSym, TWord>& table) {
  if (table.empty())
    throw std::invalid_argument("symbolwise transducer needs a nonempty table");
  Dfst t;
  t.num_states = 1;
  t.initial = 1;
  t.accepting = {1};
  for (const auto& [sym, out] : table) {
    if (out.empty())
      throw std::invalid_argument("empty code word for symbol " +
                                  std::to_string(sym));
    t.input_alphabet.insert(sym);
    for (TSym s : out) t.output_alphabet.insert(s);
    t.transitions[{1, sym}] = {1, out};
  }
  t.validate();
  return t;
}

}  // namespace umach
