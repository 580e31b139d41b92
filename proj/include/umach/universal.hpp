// One fixed universal Turing machine over the symbols
// {blank, 0, 1, #, x, y, dotted-0, dotted-1, star}. Its tape holds
//   x 1^|Q| 0 enc(P) # y enc(c)
// with the unary program and configuration codes of the simulated machine;
// the leading 1^|Q| 0 header lets it recognize the final state by length
// comparison. The control cycle is: locate the encoded state and scanned
// symbol, match them against the program by zigzag comparison with dotted
// working symbols, then rewrite the configuration code in place (delete the
// old state/symbol blocks, insert the new ones, and rotate the state block
// across one neighbor block for left or right head moves). It halts in its
// final state exactly when the simulated machine reaches its final state,
// and gets stuck exactly when the simulated machine gets stuck.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "umach/machine.hpp"

namespace umach {

// Tape symbols of the universal machine.
namespace usym {
inline constexpr Symbol kBlank = 1;
inline constexpr Symbol kZero = 2;
inline constexpr Symbol kOne = 3;
inline constexpr Symbol kSep = 4;    // '#'
inline constexpr Symbol kX = 5;      // left marker
inline constexpr Symbol kY = 6;      // configuration marker
inline constexpr Symbol kZeroDot = 7;
inline constexpr Symbol kOneDot = 8;
inline constexpr Symbol kStar = 9;
inline constexpr int kCount = 9;
}  // namespace usym

// The fixed machine plus its bookkeeping: human-readable state names
// (index i names state i+1) and the fetch state whose visits delimit
// simulated steps.
struct UtmTable {
  Machine machine;
  std::vector<std::string> state_names;
  State fetch = 0;
};

// The shared deterministic table; built once.
const UtmTable& utm_table();

// Fresh copies of the deterministic universal machine and its
// nondeterministic variant. The variant adds exactly one rule letting the
// matcher reject a matching program rule and move on, which makes every
// encoded rule choice reachable; dead branches get stuck and produce no
// final configuration.
Machine build_utm();
Machine build_untm();

std::string utm_symbol_name(Symbol s);

// Initial universal configuration for m started on w (head state boot, tape
// x 1^|Q| 0 enc(P) # y enc(q1 w)). Requires m.blank == 1 and nonempty w.
Configuration assemble_initial(const Machine& m, const Word& w);

// Same layout around an arbitrary configuration of m.
Configuration assemble_from_config(const Machine& m, const Configuration& c);

// Decoded view of a universal tape: the raw header+program characters (for
// immutability checks) and the embedded configuration of m.
struct UtmSnapshot {
  std::string header_and_program;
  Configuration decoded;
};

// Parses a universal tape word back into its parts; throws if the layout or
// any region is malformed (working symbols outside a simulation phase,
// missing markers, undecodable configuration code).
UtmSnapshot parse_universal_tape(const Machine& m, const Word& u_tape);

struct UtmCheckpoint {
  std::uint64_t u_step = 0;
  Configuration decoded;
};

enum class SimStatus { Final, Stuck, Timeout, Space };

struct SimulationResult {
  SimStatus status = SimStatus::Timeout;
  // Tape word of the embedded final configuration, when status == Final.
  std::optional<Word> result;
  std::uint64_t u_steps = 0;
  std::uint64_t peak_cells = 0;
  // Decoded embedded configuration at simulation start and then at every
  // fetch visit that begins a new simulated step.
  std::vector<UtmCheckpoint> checkpoints;
  bool program_region_intact = true;
};

// Runs the universal machine on assemble_initial(m, w) for at most fuel of
// its own steps. space_limit (when nonzero) bounds the distinct tape cells
// it may ever occupy; exceeding it stops the run with SimStatus::Space.
// Throws if a checkpoint tape fails to parse (internal corruption).
SimulationResult simulate_universal(const Machine& m, const Word& w,
                                    std::uint64_t fuel,
                                    std::uint64_t space_limit = 0);

struct Correspondence {
  bool ok = false;
  std::string detail;
  std::size_t checkpoints = 0;
};

// Checks that the checkpoint sequence equals the direct step-by-step run of
// m on w (element-wise, same length when m halts within the fuel) and that
// the header+program region is unchanged at every checkpoint.
Correspondence verify_step_correspondence(const Machine& m, const Word& w,
                                          std::uint64_t fuel);

// Same correspondence check run on a caller-supplied universal machine;
// verify_step_correspondence uses the shared table. Lets tests corrupt the
// universal machine and watch the verification fail.
Correspondence verify_step_correspondence_with(const Machine& u,
                                               const Machine& m, const Word& w,
                                               std::uint64_t fuel);

struct NdSimulationResult {
  std::vector<Word> finals;  // deduplicated, sorted
  bool hit_fuel = false;
  std::uint64_t paths = 0;
};

// Explores the nondeterministic variant on assemble_initial(m, w), decoding
// the embedded configuration of every final universal configuration found
// within fuel steps per path.
NdSimulationResult simulate_universal_nd(const Machine& m, const Word& w,
                                         std::uint64_t fuel);

}  // namespace umach
