// Line-oriented text format for machines, words, and configurations.
//
// A machine file looks like:
//
//   # unary increment
//   machine increment
//   states 3
//   symbols 2
//   blank 1
//   rule 1 1 -> 2 2 N
//   rule 2 2 -> 3 2 N
//
// `machine` and `blank` are optional (defaults: "machine", 1). A bare
// `nondet` line permits several rules on the same (state, symbol) key.
// `#` starts a comment anywhere on a line. `states` and `symbols` must
// appear before the first `rule` line.
//
// Words are space-separated symbol indices ("1 2 1"); configurations are
// "left|state|right" with the head on the first symbol of right and an
// optionally empty left part ("1 2|3|1 1", "|1|2").
#pragma once

#include <stdexcept>
#include <string>

#include "umach/machine.hpp"

namespace umach {

struct MachineParseError : std::runtime_error {
  int line;
  MachineParseError(int line_number, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_number) + ": " +
                           message),
        line(line_number) {}
};

// Parses the machine file format above; the result is validated. Throws
// MachineParseError with a 1-based line number on any defect.
Machine parse_machine(const std::string& text);

// Renders m in the file format; parse_machine(format_machine(m)) == m.
std::string format_machine(const Machine& m);

// Space-separated symbol indices. Throws std::invalid_argument on anything
// that is not a positive integer; bounds against m when given.
Word parse_word(const std::string& text);
Word parse_word(const std::string& text, const Machine& m);
std::string format_word(const Word& w);

// "left|state|right" with words as above; right must be nonempty.
Configuration parse_configuration(const std::string& text, const Machine& m);
std::string format_configuration(const Configuration& c);

}  // namespace umach
