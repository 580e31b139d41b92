// umach: command-line workbench around the umach library.
//
// Exit codes: 0 success, 2 malformed input, 3 fuel exhausted or result
// unknown, 4 space-budget violation, 5 verification failure. Output is
// line-oriented and identical across runs of the same invocation.
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "umach/codec.hpp"
#include "umach/fa.hpp"
#include "umach/machine.hpp"
#include "umach/machine_io.hpp"
#include "umach/resource.hpp"
#include "umach/rewriting.hpp"
#include "umach/universal.hpp"
#include "umach/universality.hpp"

namespace {

constexpr const char* kVersion = "umach 0.1.0";
constexpr std::uint64_t kDefaultFuel = 10'000'000;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitExhausted = 3;
constexpr int kExitBudget = 4;
constexpr int kExitVerifyFail = 5;

struct CliError {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitBadInput, "cannot open '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

umach::Machine load_machine(const std::string& path) {
  return umach::parse_machine(read_file(path));
}

umach::SchemeKind scheme_kind(const std::string& name) {
  if (name == "unary") return umach::SchemeKind::Unary;
  if (name == "binary") return umach::SchemeKind::Binary;
  return umach::SchemeKind::BinaryPacked;
}

umach::ExprPtr load_expr(const std::string& text) {
  try {
    return umach::parse_expr(text);
  } catch (const std::exception& e) {
    throw CliError{kExitBadInput, "'" + text +
                                      "' does not belong to this subclass: " +
                                      e.what()};
  }
}

struct EncodeOpts {
  std::string scheme;
  std::string what;
  std::string machine;
  std::string config;
  std::string code;
};

int cmd_encode(const EncodeOpts& o) {
  umach::Machine m = load_machine(o.machine);
  umach::Scheme sch = umach::Scheme::for_machine(scheme_kind(o.scheme), m);
  if (o.what == "program") {
    std::cout << umach::encode_program(sch, m) << '\n';
  } else {
    if (o.config.empty())
      throw CliError{kExitBadInput, "--config is required with --what config"};
    umach::Configuration c = umach::parse_configuration(o.config, m);
    std::cout << umach::encode_config(sch, c) << '\n';
  }
  return kExitOk;
}

int cmd_decode(const EncodeOpts& o) {
  umach::Machine m = load_machine(o.machine);
  umach::Scheme sch = umach::Scheme::for_machine(scheme_kind(o.scheme), m);
  if (o.what == "program") {
    for (const umach::Rule& r : umach::decode_program(sch, o.code))
      std::cout << "rule " << r.from << ' ' << r.read << " -> " << r.to << ' '
                << r.write << ' ' << umach::move_letter(r.move) << '\n';
  } else {
    umach::Configuration c = umach::decode_config(sch, o.code);
    std::cout << umach::format_configuration(c) << '\n';
  }
  return kExitOk;
}

struct RunOpts {
  std::string machine;
  std::string input;
  std::uint64_t fuel = kDefaultFuel;
  bool nondet = false;
  bool trace = false;
};

int cmd_run(const RunOpts& o) {
  umach::Machine m = load_machine(o.machine);
  umach::Word w = umach::parse_word(o.input, m);
  umach::Configuration c0 = umach::initial_configuration(m, w);

  if (o.nondet || !m.deterministic) {
    umach::ExploreResult r = umach::explore(m, c0, o.fuel);
    std::set<umach::Word> words;
    for (const umach::Configuration& c : r.finals)
      words.insert(umach::tape_word(c));
    for (const umach::Word& out : words)
      std::cout << umach::format_word(out) << '\n';
    if (r.hit_fuel) {
      std::cerr << "error: fuel exhausted before the search closed\n";
      return kExitExhausted;
    }
    return kExitOk;
  }

  umach::RunResult r = umach::run_to_final(m, c0, o.fuel);
  switch (r.status) {
    case umach::HaltStatus::Final:
      std::cout << umach::format_word(umach::tape_word(*r.config)) << '\n';
      return kExitOk;
    case umach::HaltStatus::Stuck:
      std::cerr << "error: stuck after " << r.steps
                << " steps with no applicable rule\n";
      return kExitExhausted;
    default:
      std::cerr << "error: fuel exhausted after " << r.steps << " steps\n";
      return kExitExhausted;
  }
}

int cmd_urun(const RunOpts& o) {
  umach::Machine m = load_machine(o.machine);
  umach::Word w = umach::parse_word(o.input, m);

  if (o.nondet || !m.deterministic) {
    if (o.trace)
      throw CliError{kExitBadInput,
                     "--trace needs a deterministic simulation"};
    umach::NdSimulationResult r = umach::simulate_universal_nd(m, w, o.fuel);
    for (const umach::Word& out : r.finals)
      std::cout << umach::format_word(out) << '\n';
    if (r.hit_fuel) {
      std::cerr << "error: fuel exhausted before the search closed\n";
      return kExitExhausted;
    }
    return kExitOk;
  }

  umach::SimulationResult r = umach::simulate_universal(m, w, o.fuel);
  if (o.trace)
    for (const umach::UtmCheckpoint& cp : r.checkpoints)
      std::cout << "step=" << cp.u_step
                << " config=" << umach::format_configuration(cp.decoded)
                << '\n';
  switch (r.status) {
    case umach::SimStatus::Final:
      std::cout << umach::format_word(*r.result) << '\n';
      return kExitOk;
    case umach::SimStatus::Stuck:
      std::cerr << "error: simulated machine is stuck after " << r.u_steps
                << " universal steps\n";
      return kExitExhausted;
    default:
      std::cerr << "error: fuel exhausted after " << r.u_steps
                << " universal steps\n";
      return kExitExhausted;
  }
}

struct BoundsOpts {
  std::string machine;
  std::string input;
  std::string g;
  std::uint64_t fuel = kDefaultFuel;
};

int cmd_bounds(const BoundsOpts& o) {
  umach::Machine m = load_machine(o.machine);
  umach::Word w = umach::parse_word(o.input, m);
  umach::ExprPtr g = load_expr(o.g);
  std::optional<umach::Budget> budget = umach::make_budget(g);
  if (!budget)
    throw CliError{kExitBadInput,
                   "'" + o.g + "' does not belong to this subclass"};

  umach::SpaceBoundedResult r =
      umach::run_space_bounded(m, w, *budget, o.fuel);
  if (r.status == umach::SimStatus::Timeout) {
    std::cerr << "error: fuel exhausted after " << r.u_steps
              << " universal steps\n";
    return kExitExhausted;
  }
  bool violated = r.status == umach::SimStatus::Space;
  std::cout << "c_g=" << budget->c_g << " r_g=" << budget->r_g
            << " peak=" << r.peak_cells << " limit=" << r.limit
            << " verdict=" << (violated ? "violation" : "ok") << '\n';
  return violated ? kExitBudget : kExitOk;
}

struct OverheadOpts {
  std::string corpus;
  std::string g;
  std::uint64_t fuel = kDefaultFuel;
};

int cmd_overhead(const OverheadOpts& o) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(o.corpus))
    throw CliError{kExitBadInput, "'" + o.corpus + "' is not a directory"};

  std::vector<fs::path> machine_files;
  for (const auto& entry : fs::directory_iterator(o.corpus))
    if (entry.path().extension() == ".tm") machine_files.push_back(entry.path());
  std::sort(machine_files.begin(), machine_files.end());
  if (machine_files.empty())
    throw CliError{kExitBadInput,
                   "no .tm machine files in '" + o.corpus + "'"};

  std::vector<std::pair<umach::Machine, umach::Word>> corpus;
  for (const fs::path& mf : machine_files) {
    umach::Machine m = load_machine(mf.string());
    fs::path inputs_path = mf;
    inputs_path.replace_extension(".inputs");
    std::istringstream lines(read_file(inputs_path.string()));
    std::string line;
    while (std::getline(lines, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      corpus.push_back({m, umach::parse_word(line, m)});
    }
  }

  umach::ExprPtr g = load_expr(o.g);
  umach::OverheadTable table = umach::measure_time_overhead(corpus, g, o.fuel);
  std::cout << "x\tt_U\tg(x)\n";
  for (const umach::OverheadRow& row : table.rows)
    std::cout << row.x << '\t' << row.t_u << '\t' << row.g_of_x << '\n';
  for (const std::string& w : table.warnings)
    std::cout << "# warning: " << w << '\n';
  if (std::optional<umach::OverheadFit> fit = umach::fit_overhead(table, 4))
    std::cout << "# fit: t_U <= C*g(x)^d + C with C=" << fit->c
              << " d=" << fit->degree << '\n';
  return kExitOk;
}

struct FaOpts {
  int k = 1;
  std::string alphabet;
  bool verify = false;
  int max_len = 5;
  int mutate = -1;
};

int cmd_fa_universal(const FaOpts& o) {
  std::vector<char> alphabet(o.alphabet.begin(), o.alphabet.end());
  umach::Fa u = umach::build_universal_fa(o.k, alphabet);
  std::cout << "class_size=" << umach::k_class_size(o.k, (int)alphabet.size())
            << '\n';
  std::cout << "universal_states=" << u.num_states << '\n';

  bool verify = o.verify || o.mutate >= 0;
  if (o.mutate >= 0) {
    if (o.mutate >= (int)u.transitions.size())
      throw CliError{kExitBadInput, "transition index out of range"};
    u.transitions[o.mutate] = u.transitions[o.mutate] % u.num_states + 1;
  }
  if (!verify) return kExitOk;

  umach::FaVerifyReport rep =
      umach::verify_universal_fa_with(u, o.k, alphabet, o.max_len);
  std::cout << "verdict=" << (rep.ok ? "ok" : "fail") << '\n';
  if (!rep.ok) {
    std::cout << "counterexample=" << rep.counterexample << '\n';
    return kExitVerifyFail;
  }
  return kExitOk;
}

struct StsOpts {
  std::string rules;
  std::string from;
  std::string to;
  std::uint64_t fuel = 1000;
};

int cmd_sts_derive(const StsOpts& o) {
  umach::SemiThue s = umach::parse_sts(read_file(o.rules));
  umach::Word from = umach::parse_word(o.from);
  umach::Word to = umach::parse_word(o.to);
  switch (umach::derivable(s, from, to, o.fuel)) {
    case umach::Derivability::Yes:
      std::cout << "yes\n";
      return kExitOk;
    case umach::Derivability::No:
      std::cout << "no\n";
      return kExitOk;
    default:
      std::cout << "unknown\n";
      return kExitExhausted;
  }
}

struct CheckOpts {
  std::string instance;
  std::string form;
  std::uint64_t nmax = 1;
};

int cmd_check_universality(const CheckOpts& o) {
  umach::ParsedInstance pi = umach::parse_instance(read_file(o.instance));
  umach::CheckReport r =
      o.form == "op"
          ? umach::check_universal_op_form(pi.system, pi.cls, o.nmax)
          : umach::check_universal_pairing_form(pi.system, pi.cls, o.nmax);
  std::cout << "outcome=" << umach::to_string(r.outcome) << '\n';
  std::cout << "message=" << r.message << '\n';
  if (r.counterexample)
    std::cout << "counterexample=relation " << r.counterexample->relation
              << " pair (" << r.counterexample->x << ", "
              << r.counterexample->y << ")\n";
  switch (r.outcome) {
    case umach::CheckOutcome::Ok:
      return kExitOk;
    case umach::CheckOutcome::UnknownAtBound:
      return kExitExhausted;
    case umach::CheckOutcome::PreconditionViolation:
      return kExitBadInput;
    default:
      return kExitVerifyFail;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Universal-machine workbench"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto subcommand = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->set_version_flag("--version", kVersion);
    return sub;
  };

  EncodeOpts enc;
  CLI::App* encode = subcommand("encode", "Encode a program or configuration");
  encode->add_option("--scheme", enc.scheme, "Code scheme")
      ->required()
      ->check(CLI::IsMember({"unary", "binary", "packed"}));
  encode->add_option("--what", enc.what, "What to encode")
      ->required()
      ->check(CLI::IsMember({"program", "config"}));
  encode->add_option("--machine", enc.machine, "Machine file")->required();
  encode->add_option("--config", enc.config, "Configuration 'left|state|right'");

  EncodeOpts dec;
  CLI::App* decode = subcommand("decode", "Decode a program or configuration");
  decode->add_option("--scheme", dec.scheme, "Code scheme")
      ->required()
      ->check(CLI::IsMember({"unary", "binary", "packed"}));
  decode->add_option("--what", dec.what, "What to decode")
      ->required()
      ->check(CLI::IsMember({"program", "config"}));
  decode->add_option("--machine", dec.machine, "Machine file")->required();
  decode->add_option("--code", dec.code, "Code word to decode")->required();

  RunOpts run;
  CLI::App* run_cmd = subcommand("run", "Run a machine directly");
  run_cmd->add_option("--machine", run.machine, "Machine file")->required();
  run_cmd->add_option("--input", run.input, "Input word, e.g. \"1 2 1\"");
  run_cmd->add_option("--fuel", run.fuel, "Step budget");
  run_cmd->add_flag("--nondet", run.nondet, "Explore all branches");

  RunOpts urun;
  CLI::App* urun_cmd =
      subcommand("urun", "Run a machine through the universal machine");
  urun_cmd->add_option("--machine", urun.machine, "Machine file")->required();
  urun_cmd->add_option("--input", urun.input, "Input word");
  urun_cmd->add_option("--fuel", urun.fuel, "Universal step budget");
  urun_cmd->add_flag("--nondet", urun.nondet, "Explore all branches");
  urun_cmd->add_flag("--trace", urun.trace, "Print one line per checkpoint");

  BoundsOpts bounds;
  CLI::App* bounds_cmd =
      subcommand("bounds", "Space-budgeted universal simulation");
  bounds_cmd->add_option("--machine", bounds.machine, "Machine file")
      ->required();
  bounds_cmd->add_option("--input", bounds.input, "Input word");
  bounds_cmd->add_option("--g", bounds.g, "Complexity function")->required();
  bounds_cmd->add_option("--fuel", bounds.fuel, "Universal step budget");

  OverheadOpts overhead;
  CLI::App* overhead_cmd =
      subcommand("overhead", "Tabulate universal time overhead");
  overhead_cmd
      ->add_option("--corpus", overhead.corpus,
                   "Directory of NAME.tm and NAME.inputs files")
      ->required();
  overhead_cmd->add_option("--g", overhead.g, "Complexity function")
      ->required();
  overhead_cmd->add_option("--fuel", overhead.fuel, "Universal step budget");

  FaOpts fa;
  CLI::App* fa_cmd =
      subcommand("fa-universal", "Build the bounded universal automaton");
  fa_cmd->add_option("--k", fa.k, "State bound of the hosted class")
      ->required();
  fa_cmd->add_option("--alphabet", fa.alphabet, "Payload alphabet, e.g. 01")
      ->required();
  fa_cmd->add_flag("--verify", fa.verify, "Check acceptance exhaustively");
  fa_cmd->add_option("--max-len", fa.max_len, "Payload length bound");
  fa_cmd->add_option("--mutate-transition", fa.mutate,
                     "Corrupt one transition cell, then verify");

  StsOpts sts;
  CLI::App* sts_cmd = subcommand("sts", "Semi-Thue system tools");
  sts_cmd->set_version_flag("--version", kVersion);
  sts_cmd->require_subcommand(1);
  CLI::App* derive = sts_cmd->add_subcommand("derive", "Bounded derivability");
  derive->set_version_flag("--version", kVersion);
  derive->add_option("--rules", sts.rules, "Rules file, one 'lhs -> rhs' per line")
      ->required();
  derive->add_option("--from", sts.from, "Source word")->required();
  derive->add_option("--to", sts.to, "Target word")->required();
  derive->add_option("--fuel", sts.fuel, "Derivation depth bound");

  CheckOpts check;
  CLI::App* check_cmd =
      subcommand("check-universality", "Abstract universality condition");
  check_cmd->add_option("--instance", check.instance, "Instance file")
      ->required();
  check_cmd->add_option("--form", check.form, "Condition form")
      ->required()
      ->check(CLI::IsMember({"op", "pairing"}));
  check_cmd->add_option("--nmax", check.nmax, "Chain length bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*encode) return cmd_encode(enc);
    if (*decode) return cmd_decode(dec);
    if (*run_cmd) return cmd_run(run);
    if (*urun_cmd) return cmd_urun(urun);
    if (*bounds_cmd) return cmd_bounds(bounds);
    if (*overhead_cmd) return cmd_overhead(overhead);
    if (*fa_cmd) return cmd_fa_universal(fa);
    if (*sts_cmd) return cmd_sts_derive(sts);
    if (*check_cmd) return cmd_check_universality(check);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitBadInput;
}
