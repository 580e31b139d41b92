#include "umach/universal.hpp"

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "umach/codec.hpp"

namespace umach {
namespace {

using namespace usym;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Accumulates named rules; state numbers are assigned on finish() in order
// of first appearance, except that the final state is forced to the highest
// number as the machine layout requires.
class UtmBuilder {
 public:
  void rule(const std::string& from, Symbol read, const std::string& to,
            Symbol write, Move mv) {
    rules_.push_back({from, read, to, write, mv});
  }

  // Self-loops that pass over the listed symbols unchanged.
  void walk(const std::string& state, std::initializer_list<Symbol> reads,
            Move mv) {
    for (Symbol s : reads) rule(state, s, state, s, mv);
  }

  UtmTable finish(const std::string& final_name) {
    std::map<std::string, State> ids;
    std::vector<std::string> names;
    auto id_of = [&](const std::string& name) {
      auto [it, fresh] = ids.emplace(name, State(names.size() + 1));
      if (fresh) names.push_back(name);
      return it->second;
    };
    for (const auto& r : rules_) {
      require(r.from != final_name, "rule out of the final state");
      id_of(r.from);
    }
    for (const auto& r : rules_) id_of(r.to);
    require(ids.count(final_name) == 1, "final state never referenced");
    State last = State(names.size());
    State old_final = ids[final_name];
    // Swap the final state to the last number.
    for (auto& [name, id] : ids) {
      if (id == old_final)
        id = last;
      else if (id == last)
        id = old_final;
    }
    std::swap(names[old_final - 1], names[last - 1]);

    UtmTable t;
    t.machine.name = "utm";
    t.machine.num_states = last;
    t.machine.num_symbols = kCount;
    t.machine.blank = kBlank;
    t.machine.deterministic = true;
    for (const auto& r : rules_)
      t.machine.rules.push_back(
          {ids[r.from], r.read, ids[r.to], r.write, r.mv});
    t.machine.validate();
    t.state_names = names;
    t.fetch = ids.at("fetch");
    return t;
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

// One insertion cycle: walk to the rightmost used cell, shift everything
// right of the star one cell further right, slide the star one cell right,
// and deposit ch where the star was. Entered from the program region except
// for the "0a" chain, which starts inside the configuration region.
void emit_insert_chain(UtmBuilder& b, const std::string& tag, Symbol ch,
                       const std::string& continuation, bool from_program) {
  std::string go = "ins" + tag + "_go";
  std::string read = "ins" + tag + "_read";
  std::string wr0 = "ins" + tag + "_wr0";
  std::string wr1 = "ins" + tag + "_wr1";
  std::string step = "ins" + tag + "_step";
  std::string star = "ins" + tag + "_star";
  std::string fin = "ins" + tag + "_fin";
  b.walk(go, {kZero, kOne}, Move::Right);
  if (from_program) b.walk(go, {kSep, kY, kStar}, Move::Right);
  b.rule(go, kBlank, read, kBlank, Move::Left);
  b.rule(read, kZero, wr0, kZero, Move::Right);
  b.rule(read, kOne, wr1, kOne, Move::Right);
  b.rule(read, kStar, star, kStar, Move::Right);
  b.rule(wr0, kBlank, step, kZero, Move::Left);
  b.rule(wr0, kOne, step, kZero, Move::Left);
  b.rule(wr1, kZero, step, kOne, Move::Left);
  b.rule(wr1, kOne, step, kOne, Move::Left);
  b.rule(step, kZero, read, kZero, Move::Left);
  b.rule(step, kOne, read, kOne, Move::Left);
  b.rule(star, kZero, fin, kStar, Move::Left);
  b.rule(fin, kStar, continuation, ch, Move::Left);
}

UtmTable build_table() {
  UtmBuilder b;

  // Boot: cross the program once, then treat the marker visit like the
  // start of a simulated step.
  b.rule("boot", kX, "boot_scan", kX, Move::Right);
  b.walk("boot_scan", {kZero, kOne}, Move::Right);
  b.rule("boot_scan", kSep, "fetch", kSep, Move::Right);
  b.rule("fetch", kY, "find0", kY, Move::Right);

  // Locate the encoded state: a 0 right after a block boundary opens it.
  b.rule("find0", kOne, "find1", kOne, Move::Right);
  b.rule("find0", kZero, "probe_A", kZero, Move::Right);
  b.walk("find1", {kOne}, Move::Right);
  b.rule("find1", kZero, "find0", kZero, Move::Right);

  // Tick the next key character and carry it left to the program. Part A is
  // the state block, part B the scanned symbol block; the end of B is
  // carried without a tick so a failed match can restore the key cheaply.
  b.rule("probe_A", kOne, "goL_A1", kOneDot, Move::Left);
  b.rule("probe_A", kZero, "goL_A0", kZeroDot, Move::Left);
  b.rule("probe_B", kOne, "goL_B1", kOneDot, Move::Left);
  b.rule("probe_B", kZero, "goL_Bend", kZero, Move::Left);

  b.walk("goL_A1", {kZero, kOne, kOneDot, kY}, Move::Left);
  b.rule("goL_A1", kSep, "seekdot_A1", kSep, Move::Left);
  b.walk("goL_A0", {kZero, kOne, kOneDot, kY}, Move::Left);
  b.rule("goL_A0", kSep, "seekdot_A0", kSep, Move::Left);
  b.walk("goL_B1", {kZero, kOne, kOneDot, kZeroDot, kY}, Move::Left);
  b.rule("goL_B1", kSep, "seekdot_B1", kSep, Move::Left);
  b.walk("goL_Bend", {kZero, kOne, kOneDot, kZeroDot, kY}, Move::Left);
  b.rule("goL_Bend", kSep, "seekdot_Bend", kSep, Move::Left);

  // The rightmost dotted program cell marks the comparison position; with a
  // clean program the header marks the first rule instead.
  b.walk("seekdot_A1", {kZero, kOne}, Move::Left);
  b.rule("seekdot_A1", kOneDot, "atrule_A1", kOneDot, Move::Right);
  b.rule("seekdot_A1", kZeroDot, "atrule_A1", kZeroDot, Move::Right);
  b.rule("seekdot_A1", kX, "hdr1_A1", kX, Move::Right);
  b.walk("seekdot_A0", {kZero, kOne}, Move::Left);
  b.rule("seekdot_A0", kOneDot, "atrule_A0", kOneDot, Move::Right);
  b.walk("seekdot_B1", {kZero, kOne}, Move::Left);
  b.rule("seekdot_B1", kOneDot, "atrule_B1", kOneDot, Move::Right);
  b.rule("seekdot_B1", kZeroDot, "atrule_B1", kZeroDot, Move::Right);
  b.walk("seekdot_Bend", {kZero, kOne}, Move::Left);
  b.rule("seekdot_Bend", kOneDot, "atrule_Bend", kOneDot, Move::Right);

  b.walk("hdr1_A1", {kOne}, Move::Right);
  b.rule("hdr1_A1", kZero, "atrule_A1", kZero, Move::Right);

  // Compare the carried key character with the program cell under the
  // cursor. A hash here means the program has no rules at all.
  b.rule("atrule_A1", kOne, "goR", kOneDot, Move::Right);
  b.rule("atrule_A1", kZero, "fail_untick", kZero, Move::Left);
  b.rule("atrule_A1", kSep, "ex_gokey", kSep, Move::Right);
  b.rule("atrule_A0", kZero, "goR", kZeroDot, Move::Right);
  b.rule("atrule_A0", kOne, "fail_untick", kOne, Move::Left);
  b.rule("atrule_B1", kOne, "goR", kOneDot, Move::Right);
  b.rule("atrule_B1", kZero, "fail_untick", kZero, Move::Left);
  b.rule("atrule_Bend", kZero, "edel_go", kZeroDot, Move::Right);
  b.rule("atrule_Bend", kOne, "fail_untick", kOne, Move::Left);

  // Return to the key and resume behind its dotted prefix.
  b.walk("goR", {kZero, kOne, kSep}, Move::Right);
  b.rule("goR", kY, "retkey_seek", kY, Move::Right);
  b.walk("retkey_seek", {kZero, kOne}, Move::Right);
  b.rule("retkey_seek", kOneDot, "retkey_dots_A", kOneDot, Move::Right);
  b.walk("retkey_dots_A", {kOneDot}, Move::Right);
  b.rule("retkey_dots_A", kZeroDot, "retkey_dots_B", kZeroDot, Move::Right);
  b.rule("retkey_dots_A", kOne, "probe_A", kOne, Move::None);
  b.rule("retkey_dots_A", kZero, "probe_A", kZero, Move::None);
  b.walk("retkey_dots_B", {kOneDot}, Move::Right);
  b.rule("retkey_dots_B", kOne, "probe_B", kOne, Move::None);
  b.rule("retkey_dots_B", kZero, "probe_B", kZero, Move::None);

  // Mismatch: restore the rule's dotted prefix, advance to the end of the
  // rule, leave a dot on its terminator as the new cursor, and restore the
  // key. The dot left by a previous failure is consumed on the way.
  b.rule("fail_untick", kOneDot, "fail_untick", kOne, Move::Left);
  b.rule("fail_untick", kZeroDot, "fail_untick", kZero, Move::Left);
  b.rule("fail_untick", kZero, "fail_fwd0", kZero, Move::Right);
  b.walk("fail_fwd0", {kZero}, Move::Right);
  b.rule("fail_fwd0", kOne, "fail_e1", kOne, Move::Right);
  b.walk("fail_e1", {kOne}, Move::Right);
  b.rule("fail_e1", kZero, "fail_e0", kZero, Move::Right);
  b.rule("fail_e0", kOne, "fail_e1", kOne, Move::Right);
  b.rule("fail_e0", kZero, "fail_peek", kZeroDot, Move::Right);
  b.rule("fail_peek", kOne, "fail_gokey", kOne, Move::Right);
  b.rule("fail_peek", kSep, "ex_unboundary", kSep, Move::Left);
  b.walk("fail_gokey", {kZero, kOne, kSep}, Move::Right);
  b.rule("fail_gokey", kY, "fail_key_seek", kY, Move::Right);
  b.walk("fail_key_seek", {kZero, kOne}, Move::Right);
  b.rule("fail_key_seek", kOneDot, "fail_key_untick", kOne, Move::Right);
  b.rule("fail_key_untick", kOneDot, "fail_key_untick", kOne, Move::Right);
  b.rule("fail_key_untick", kZeroDot, "fail_key_untick", kZero, Move::Right);
  b.rule("fail_key_untick", kZero, "fail_back", kZero, Move::Left);
  b.rule("fail_key_untick", kOne, "fail_back", kOne, Move::Left);
  b.walk("fail_back", {kZero, kOne}, Move::Left);
  b.rule("fail_back", kY, "find0", kY, Move::Right);

  // All rules failed: drop the cursor dot, restore the key, and compare the
  // state block against the header to separate halting from sticking.
  b.rule("ex_unboundary", kZeroDot, "ex_gokey", kZero, Move::Right);
  b.walk("ex_gokey", {kSep}, Move::Right);
  b.rule("ex_gokey", kY, "ex_key_seek", kY, Move::Right);
  b.walk("ex_key_seek", {kZero, kOne}, Move::Right);
  b.rule("ex_key_seek", kOneDot, "ex_key_untick", kOne, Move::Right);
  b.rule("ex_key_untick", kOneDot, "ex_key_untick", kOne, Move::Right);
  b.rule("ex_key_untick", kZeroDot, "ex_key_untick", kZero, Move::Right);
  b.rule("ex_key_untick", kZero, "ex_back", kZero, Move::Left);
  b.rule("ex_key_untick", kOne, "ex_back", kOne, Move::Left);
  b.walk("ex_back", {kZero, kOne}, Move::Left);
  b.rule("ex_back", kY, "hfind0", kY, Move::Right);

  b.rule("hfind0", kOne, "hfind1", kOne, Move::Right);
  b.rule("hfind0", kZero, "hprobe", kZero, Move::Right);
  b.walk("hfind1", {kOne}, Move::Right);
  b.rule("hfind1", kZero, "hfind0", kZero, Move::Right);
  b.rule("hprobe", kOne, "hgoL_1", kOneDot, Move::Left);
  b.rule("hprobe", kZero, "hgoL_end", kZero, Move::Left);
  b.walk("hgoL_1", {kZero, kOne, kOneDot, kY}, Move::Left);
  b.rule("hgoL_1", kSep, "hseek_1", kSep, Move::Left);
  b.walk("hgoL_end", {kZero, kOne, kOneDot, kY}, Move::Left);
  b.rule("hgoL_end", kSep, "hseek_end", kSep, Move::Left);
  b.walk("hseek_1", {kZero, kOne}, Move::Left);
  b.rule("hseek_1", kOneDot, "hat_1", kOneDot, Move::Right);
  b.rule("hseek_1", kX, "hat_1", kX, Move::Right);
  b.walk("hseek_end", {kZero, kOne}, Move::Left);
  b.rule("hseek_end", kOneDot, "hat_end", kOneDot, Move::Right);
  // A shorter state block than the header means a stuck machine, so the
  // header-one case is deliberately missing: the simulator sticks here.
  b.rule("hat_1", kOne, "hgoR", kOneDot, Move::Right);
  b.rule("hat_end", kZero, "fin_untick_hdr", kZero, Move::Left);
  b.walk("hgoR", {kZero, kOne, kSep}, Move::Right);
  b.rule("hgoR", kY, "hretkey_seek", kY, Move::Right);
  b.walk("hretkey_seek", {kZero, kOne}, Move::Right);
  b.rule("hretkey_seek", kOneDot, "hretkey_dots", kOneDot, Move::Right);
  b.walk("hretkey_dots", {kOneDot}, Move::Right);
  b.rule("hretkey_dots", kOne, "hprobe", kOne, Move::None);
  b.rule("hretkey_dots", kZero, "hprobe", kZero, Move::None);

  // Final state confirmed: restore the header and key dots and park on the
  // left marker, leaving the tape exactly in assembled form.
  b.rule("fin_untick_hdr", kOneDot, "fin_untick_hdr", kOne, Move::Left);
  b.rule("fin_untick_hdr", kX, "fin_gokey", kX, Move::Right);
  b.walk("fin_gokey", {kZero, kOne, kSep}, Move::Right);
  b.rule("fin_gokey", kY, "fin_key_seek", kY, Move::Right);
  b.walk("fin_key_seek", {kZero, kOne}, Move::Right);
  b.rule("fin_key_seek", kOneDot, "fin_key_untick", kOne, Move::Right);
  b.rule("fin_key_untick", kOneDot, "fin_key_untick", kOne, Move::Right);
  b.rule("fin_key_untick", kZero, "fin_rewind", kZero, Move::Left);
  b.walk("fin_rewind", {kZero, kOne, kY, kSep}, Move::Left);
  b.rule("fin_rewind", kX, "u_final", kX, Move::None);

  // Matched: delete the dotted key, one leftward shift of the tail per
  // dotted cell, with a star marking the write front.
  b.walk("edel_go", {kZero, kOne, kSep}, Move::Right);
  b.rule("edel_go", kY, "edel_seek", kY, Move::Right);
  b.walk("edel_seek", {kZero, kOne}, Move::Right);
  b.rule("edel_seek", kOneDot, "edel_star", kOneDot, Move::Left);
  b.rule("edel_star", kZero, "edel_loop", kStar, Move::Right);
  b.rule("edel_loop", kOneDot, "edel_read", kOneDot, Move::Right);
  b.rule("edel_loop", kZeroDot, "edel_read", kZeroDot, Move::Right);
  b.rule("edel_loop", kZero, "ins0a_go", kZero, Move::Right);
  b.rule("edel_read", kOneDot, "edel_wrOD", kOneDot, Move::Left);
  b.rule("edel_read", kZeroDot, "edel_wrZD", kZeroDot, Move::Left);
  b.rule("edel_read", kZero, "edel_wr0", kZero, Move::Left);
  b.rule("edel_read", kOne, "edel_wr1", kOne, Move::Left);
  b.rule("edel_read", kBlank, "edel_last", kBlank, Move::Left);
  b.rule("edel_wrOD", kOneDot, "edel_adv", kOneDot, Move::Right);
  b.rule("edel_wrOD", kZeroDot, "edel_adv", kOneDot, Move::Right);
  b.rule("edel_wrZD", kOneDot, "edel_adv", kZeroDot, Move::Right);
  b.rule("edel_wr0", kOneDot, "edel_adv", kZero, Move::Right);
  b.rule("edel_wr0", kOne, "edel_adv", kZero, Move::Right);
  b.rule("edel_wr1", kZero, "edel_adv", kOne, Move::Right);
  b.rule("edel_wr1", kOne, "edel_adv", kOne, Move::Right);
  b.rule("edel_last", kZero, "edel_ret", kBlank, Move::Left);
  b.rule("edel_adv", kOneDot, "edel_read", kOneDot, Move::Right);
  b.rule("edel_adv", kZeroDot, "edel_read", kZeroDot, Move::Right);
  b.rule("edel_adv", kZero, "edel_read", kZero, Move::Right);
  b.rule("edel_adv", kOne, "edel_read", kOne, Move::Right);
  b.walk("edel_ret", {kOneDot, kZeroDot, kZero, kOne}, Move::Left);
  b.rule("edel_ret", kStar, "edel_loop", kStar, Move::Right);

  // Build the replacement: a fresh state opener, then the rule's new state
  // and written symbol copied one character per insertion cycle. The
  // surviving block terminator of the old key closes the new symbol block.
  emit_insert_chain(b, "0a", kZero, "ecp_goL_q", false);
  emit_insert_chain(b, "1q", kOne, "ecp_goL_q", true);
  emit_insert_chain(b, "0m", kZero, "ecp_goL_s", true);
  emit_insert_chain(b, "1s", kOne, "ecp_goL_s", true);

  b.walk("ecp_goL_q", {kZero, kOne, kY}, Move::Left);
  b.rule("ecp_goL_q", kSep, "ecp_seek_q", kSep, Move::Left);
  b.walk("ecp_seek_q", {kZero, kOne}, Move::Left);
  b.rule("ecp_seek_q", kOneDot, "ecp_at_q", kOneDot, Move::Right);
  b.rule("ecp_seek_q", kZeroDot, "ecp_at_q", kZeroDot, Move::Right);
  b.rule("ecp_at_q", kOne, "ins1q_go", kOneDot, Move::Right);
  b.rule("ecp_at_q", kZero, "ins0m_go", kZeroDot, Move::Right);
  b.walk("ecp_goL_s", {kZero, kOne, kY}, Move::Left);
  b.rule("ecp_goL_s", kSep, "ecp_seek_s", kSep, Move::Left);
  b.walk("ecp_seek_s", {kZero, kOne}, Move::Left);
  b.rule("ecp_seek_s", kOneDot, "ecp_at_s", kOneDot, Move::Right);
  b.rule("ecp_seek_s", kZeroDot, "ecp_at_s", kZeroDot, Move::Right);
  b.rule("ecp_at_s", kOne, "ins1s_go", kOneDot, Move::Right);
  b.rule("ecp_at_s", kZero, "eclose_go", kZero, Move::Right);

  // Remove the star by one rightward-shrinking shift of the tail.
  b.walk("eclose_go", {kZero, kOne, kSep, kY}, Move::Right);
  b.rule("eclose_go", kStar, "eclose_read", kStar, Move::Right);
  b.rule("eclose_read", kZero, "eclose_wr0", kZero, Move::Left);
  b.rule("eclose_read", kOne, "eclose_wr1", kOne, Move::Left);
  b.rule("eclose_read", kBlank, "eclose_wrB", kBlank, Move::Left);
  b.rule("eclose_wr0", kStar, "eclose_adv", kZero, Move::Right);
  b.rule("eclose_wr0", kOne, "eclose_adv", kZero, Move::Right);
  b.rule("eclose_wr1", kZero, "eclose_adv", kOne, Move::Right);
  b.rule("eclose_wr1", kOne, "eclose_adv", kOne, Move::Right);
  b.rule("eclose_adv", kZero, "eclose_read", kZero, Move::Right);
  b.rule("eclose_adv", kOne, "eclose_read", kOne, Move::Right);
  b.rule("eclose_wrB", kZero, "edisp_goL", kBlank, Move::Left);

  // Read the matched rule's direction field behind the dotted prefix.
  b.walk("edisp_goL", {kZero, kOne, kY}, Move::Left);
  b.rule("edisp_goL", kSep, "edisp_seek", kSep, Move::Left);
  b.walk("edisp_seek", {kZero, kOne}, Move::Left);
  b.rule("edisp_seek", kOneDot, "edisp_skip0", kOneDot, Move::Right);
  b.rule("edisp_skip0", kZero, "edisp_c1", kZero, Move::Right);
  b.rule("edisp_c1", kOne, "edisp_c2", kOne, Move::Right);
  b.rule("edisp_c2", kZero, "erotL_go", kZero, Move::Right);
  b.rule("edisp_c2", kOne, "edisp_c3", kOne, Move::Right);
  b.rule("edisp_c3", kZero, "euntick", kZero, Move::Left);
  b.rule("edisp_c3", kOne, "edisp_c4", kOne, Move::Right);
  b.rule("edisp_c4", kZero, "erotR_go", kZero, Move::Right);

  // Left move: dot the new state block and walk it left across the
  // preceding block, one four-cell transport per character. At the left
  // boundary insert a blank block behind the state block instead.
  b.walk("erotL_go", {kZero, kOne, kSep}, Move::Right);
  b.rule("erotL_go", kY, "erotL_f0", kY, Move::Right);
  b.rule("erotL_f0", kOne, "erotL_f1", kOne, Move::Right);
  b.rule("erotL_f0", kZero, "erotL_dot1", kZeroDot, Move::Right);
  b.walk("erotL_f1", {kOne}, Move::Right);
  b.rule("erotL_f1", kZero, "erotL_f0", kZero, Move::Right);
  b.rule("erotL_dot1", kOne, "erotL_dot1", kOneDot, Move::Right);
  b.rule("erotL_dot1", kZero, "erotL_back1st", kZeroDot, Move::Left);
  b.walk("erotL_back1st", {kOneDot, kZeroDot}, Move::Left);
  b.rule("erotL_back1st", kZero, "erotL_t0_a", kZeroDot, Move::Right);
  b.rule("erotL_back1st", kY, "erotLE0_go", kY, Move::Right);
  b.rule("erotL_t0_a", kZeroDot, "erotL_t0_b", kOneDot, Move::Right);
  b.walk("erotL_t0_b", {kOneDot}, Move::Right);
  b.rule("erotL_t0_b", kZeroDot, "erotL_t0_fix", kZero, Move::Left);
  b.rule("erotL_t0_fix", kOneDot, "erotL_backones", kZeroDot, Move::Left);
  b.walk("erotL_backones", {kOneDot, kZeroDot}, Move::Left);
  b.rule("erotL_backones", kOne, "erotL_t1_a", kZeroDot, Move::Right);
  b.rule("erotL_backones", kZero, "eundotA_fwd", kZero, Move::Right);
  b.rule("erotL_backones", kY, "eundotA_fwd", kY, Move::Right);
  b.rule("erotL_t1_a", kZeroDot, "erotL_t1_b", kOneDot, Move::Right);
  b.walk("erotL_t1_b", {kOneDot}, Move::Right);
  b.rule("erotL_t1_b", kZeroDot, "erotL_t1_fix", kOne, Move::Left);
  b.rule("erotL_t1_fix", kOneDot, "erotL_backones", kZeroDot, Move::Left);

  b.walk("erotLE0_go", {kOneDot, kZeroDot, kZero, kOne}, Move::Right);
  b.rule("erotLE0_go", kBlank, "erotLE0_read", kBlank, Move::Left);
  b.rule("erotLE0_read", kZero, "erotLE0_wr0", kZero, Move::Right);
  b.rule("erotLE0_read", kOne, "erotLE0_wr1", kOne, Move::Right);
  b.rule("erotLE0_read", kZeroDot, "erotLE0_slot", kZeroDot, Move::Right);
  b.rule("erotLE0_wr0", kBlank, "erotLE0_step", kZero, Move::Left);
  b.rule("erotLE0_wr0", kOne, "erotLE0_step", kZero, Move::Left);
  b.rule("erotLE0_wr1", kZero, "erotLE0_step", kOne, Move::Left);
  b.rule("erotLE0_wr1", kOne, "erotLE0_step", kOne, Move::Left);
  b.rule("erotLE0_step", kZero, "erotLE0_read", kZero, Move::Left);
  b.rule("erotLE0_step", kOne, "erotLE0_read", kOne, Move::Left);
  b.rule("erotLE0_slot", kOne, "erotLE1_go", kZero, Move::Right);
  b.walk("erotLE1_go", {kZero, kOne}, Move::Right);
  b.rule("erotLE1_go", kBlank, "erotLE1_read", kBlank, Move::Left);
  b.rule("erotLE1_read", kZero, "erotLE1_wr0", kZero, Move::Right);
  b.rule("erotLE1_read", kOne, "erotLE1_wr1", kOne, Move::Right);
  b.rule("erotLE1_read", kZeroDot, "erotLE1_slot", kZeroDot, Move::Right);
  b.rule("erotLE1_wr0", kBlank, "erotLE1_step", kZero, Move::Left);
  b.rule("erotLE1_wr0", kOne, "erotLE1_step", kZero, Move::Left);
  b.rule("erotLE1_wr1", kZero, "erotLE1_step", kOne, Move::Left);
  b.rule("erotLE1_wr1", kOne, "erotLE1_step", kOne, Move::Left);
  b.rule("erotLE1_step", kZero, "erotLE1_read", kZero, Move::Left);
  b.rule("erotLE1_step", kOne, "erotLE1_read", kOne, Move::Left);
  b.rule("erotLE1_slot", kZero, "eundotA_rev", kOne, Move::Left);

  // Right move: walk the dotted state block right across the symbol block
  // just written; append a blank block when it lands at the tape end.
  b.walk("erotR_go", {kZero, kOne, kSep}, Move::Right);
  b.rule("erotR_go", kY, "erotR_f0", kY, Move::Right);
  b.rule("erotR_f0", kOne, "erotR_f1", kOne, Move::Right);
  b.rule("erotR_f0", kZero, "erotR_dot1", kZeroDot, Move::Right);
  b.walk("erotR_f1", {kOne}, Move::Right);
  b.rule("erotR_f1", kZero, "erotR_f0", kZero, Move::Right);
  b.rule("erotR_dot1", kOne, "erotR_dot1", kOneDot, Move::Right);
  b.rule("erotR_dot1", kZero, "erotR_fwd", kZeroDot, Move::Right);
  b.walk("erotR_fwd", {kOneDot, kZeroDot}, Move::Right);
  b.rule("erotR_fwd", kOne, "erotR_t1_a", kZeroDot, Move::Left);
  b.rule("erotR_fwd", kZero, "erotR_t0_a", kZeroDot, Move::Left);
  b.rule("erotR_t1_a", kZeroDot, "erotR_t1_b", kOneDot, Move::Left);
  b.walk("erotR_t1_b", {kOneDot}, Move::Left);
  b.rule("erotR_t1_b", kZeroDot, "erotR_t1_fix", kOne, Move::Right);
  b.rule("erotR_t1_fix", kOneDot, "erotR_fwd", kZeroDot, Move::Right);
  b.rule("erotR_t0_a", kZeroDot, "erotR_t0_b", kOneDot, Move::Left);
  b.walk("erotR_t0_b", {kOneDot}, Move::Left);
  b.rule("erotR_t0_b", kZeroDot, "erotR_t0_fix", kZero, Move::Right);
  b.rule("erotR_t0_fix", kOneDot, "erotR_done", kZeroDot, Move::Right);
  b.walk("erotR_done", {kOneDot, kZeroDot}, Move::Right);
  b.rule("erotR_done", kOne, "eundotA_rev", kOne, Move::Left);
  b.rule("erotR_done", kBlank, "erotR_app1", kOne, Move::Right);
  b.rule("erotR_app1", kBlank, "erotR_appdone", kZero, Move::Left);
  b.rule("erotR_appdone", kOne, "eundotA_rev", kOne, Move::Left);

  // Undo the rotation dots, then the comparison dots, and fetch again.
  b.rule("eundotA_fwd", kZeroDot, "eundotA_fwd", kZero, Move::Right);
  b.rule("eundotA_fwd", kOneDot, "eundotA_fwd", kOne, Move::Right);
  b.rule("eundotA_fwd", kOne, "erew1", kOne, Move::Left);
  b.rule("eundotA_rev", kZeroDot, "eundotA_rev", kZero, Move::Left);
  b.rule("eundotA_rev", kOneDot, "eundotA_rev", kOne, Move::Left);
  b.rule("eundotA_rev", kZero, "erew1", kZero, Move::Left);
  b.rule("eundotA_rev", kY, "erew1", kY, Move::Left);
  b.walk("erew1", {kZero, kOne, kY}, Move::Left);
  b.rule("erew1", kSep, "euntick", kSep, Move::Left);
  b.walk("euntick", {kZero, kOne}, Move::Left);
  b.rule("euntick", kOneDot, "euntick", kOne, Move::Left);
  b.rule("euntick", kZeroDot, "euntick", kZero, Move::Left);
  b.rule("euntick", kX, "erew2", kX, Move::Right);
  b.walk("erew2", {kZero, kOne}, Move::Right);
  b.rule("erew2", kSep, "fetch", kSep, Move::Right);

  return b.finish("u_final");
}

Symbol char_symbol(char c) { return c == '0' ? kZero : kOne; }

const char* kSymbolNames[] = {"B", "0", "1", "#", "x", "y", "0*", "1*", "S"};

std::string config_text(const Configuration& c) {
  std::ostringstream out;
  out << "[";
  for (Symbol s : c.left) out << s << " ";
  out << "| q" << c.state << " |";
  for (Symbol s : c.right) out << " " << s;
  out << "]";
  return out.str();
}

}  // namespace

const UtmTable& utm_table() {
  static const UtmTable table = build_table();
  return table;
}

Machine build_utm() { return utm_table().machine; }

Machine build_untm() {
  Machine u = utm_table().machine;
  u.name = "untm";
  u.deterministic = false;
  const auto& names = utm_table().state_names;
  State at_bend = 0, fail = 0;
  for (State q = 1; q <= u.num_states; ++q) {
    if (names[q - 1] == "atrule_Bend") at_bend = q;
    if (names[q - 1] == "fail_untick") fail = q;
  }
  u.rules.push_back({at_bend, kZero, fail, kZero, Move::Left});
  u.validate();
  return u;
}

std::string utm_symbol_name(Symbol s) {
  require(s >= 1 && s <= kCount, "universal symbol out of range");
  return kSymbolNames[s - 1];
}

Configuration assemble_from_config(const Machine& m, const Configuration& c) {
  m.validate();
  require(m.blank == 1, "universal simulation requires blank symbol 1");
  Scheme sch = Scheme::for_machine(SchemeKind::Unary, m);
  Word right;
  right.push_back(kX);
  for (int i = 0; i < m.num_states; ++i) right.push_back(kOne);
  right.push_back(kZero);
  for (char ch : encode_program(sch, m)) right.push_back(char_symbol(ch));
  right.push_back(kSep);
  right.push_back(kY);
  for (char ch : encode_config(sch, c)) right.push_back(char_symbol(ch));
  return Configuration{{}, 1, right};
}

Configuration assemble_initial(const Machine& m, const Word& w) {
  return assemble_from_config(m, initial_configuration(m, w));
}

UtmSnapshot parse_universal_tape(const Machine& m, const Word& u_tape) {
  Scheme sch = Scheme::for_machine(SchemeKind::Unary, m);
  std::size_t i = 0;
  auto bad = [](const std::string& msg) {
    throw std::invalid_argument("universal tape: " + msg);
  };
  if (u_tape.empty() || u_tape[0] != kX) bad("missing left marker");
  i = 1;
  std::string header_program;
  int header_ones = 0;
  while (i < u_tape.size() && u_tape[i] == kOne) {
    ++header_ones;
    ++i;
  }
  if (header_ones != m.num_states) bad("header does not match state count");
  if (i >= u_tape.size() || u_tape[i] != kZero) bad("unterminated header");
  header_program.append(std::size_t(header_ones), '1');
  header_program.push_back('0');
  ++i;
  while (i < u_tape.size() && u_tape[i] != kSep) {
    if (u_tape[i] != kZero && u_tape[i] != kOne)
      bad("working symbol in program region");
    header_program.push_back(u_tape[i] == kZero ? '0' : '1');
    ++i;
  }
  if (i >= u_tape.size()) bad("missing separator");
  ++i;
  if (i >= u_tape.size() || u_tape[i] != kY) bad("missing configuration marker");
  ++i;
  UniversalWord code;
  for (; i < u_tape.size(); ++i) {
    if (u_tape[i] == kBlank) break;
    if (u_tape[i] != kZero && u_tape[i] != kOne)
      bad("working symbol in configuration region");
    code.push_back(u_tape[i] == kZero ? '0' : '1');
  }
  for (; i < u_tape.size(); ++i)
    if (u_tape[i] != kBlank) bad("content after trailing blanks");
  return UtmSnapshot{std::move(header_program), decode_config(sch, code)};
}

SimulationResult simulate_universal(const Machine& m, const Word& w,
                                    std::uint64_t fuel,
                                    std::uint64_t space_limit) {
  const UtmTable& table = utm_table();
  Configuration c0 = assemble_initial(m, w);
  UtmSnapshot initial = parse_universal_tape(m, tape_word(c0));

  SimulationResult sim;
  sim.checkpoints.push_back({0, initial.decoded});

  TapeRunner runner(table.machine, c0);
  runner.set_watch_state(table.fetch);
  if (space_limit != 0) runner.set_space_limit(space_limit);

  bool boot_visit = true;
  for (;;) {
    std::uint64_t used = runner.steps();
    TapeRunner::Outcome out = runner.run(fuel - used);
    sim.u_steps = runner.steps();
    sim.peak_cells = runner.peak_cells();
    if (out == TapeRunner::Outcome::Paused) {
      UtmSnapshot snap = parse_universal_tape(m, tape_word(runner.configuration()));
      if (snap.header_and_program != initial.header_and_program)
        sim.program_region_intact = false;
      if (boot_visit) {
        boot_visit = false;
        if (snap.decoded != initial.decoded)
          sim.checkpoints.push_back({runner.steps(), snap.decoded});
      } else {
        sim.checkpoints.push_back({runner.steps(), snap.decoded});
      }
      continue;
    }
    if (out == TapeRunner::Outcome::Final) {
      sim.status = SimStatus::Final;
      UtmSnapshot snap = parse_universal_tape(m, tape_word(runner.configuration()));
      if (snap.header_and_program != initial.header_and_program)
        sim.program_region_intact = false;
      sim.result = tape_word(snap.decoded);
    } else if (out == TapeRunner::Outcome::Stuck) {
      sim.status = SimStatus::Stuck;
    } else if (out == TapeRunner::Outcome::SpaceViolation) {
      sim.status = SimStatus::Space;
    } else {
      sim.status = SimStatus::Timeout;
    }
    return sim;
  }
}

namespace {

Correspondence correspondence_impl(const Machine& u, State fetch,
                                   const Machine& m, const Word& w,
                                   std::uint64_t fuel) {
  Correspondence rep;
  require(m.deterministic, "step correspondence needs a deterministic machine");

  // Direct trace of m, extended lazily while comparing.
  std::vector<Configuration> trace{initial_configuration(m, w)};
  bool m_halted = false;
  auto extend_trace = [&](std::size_t need) {
    while (!m_halted && trace.size() < need) {
      std::vector<Configuration> next = step(m, trace.back());
      if (next.empty())
        m_halted = true;
      else
        trace.push_back(next.front());
    }
  };

  std::vector<UtmCheckpoint> checkpoints;
  SimStatus status = SimStatus::Timeout;
  bool intact = true;
  bool boot_ok = true;
  try {
    Configuration c0 = assemble_from_config(m, trace.front());
    UtmSnapshot initial = parse_universal_tape(m, tape_word(c0));
    checkpoints.push_back({0, initial.decoded});
    TapeRunner runner(u, c0);
    runner.set_watch_state(fetch);
    bool boot_visit = true;
    for (;;) {
      TapeRunner::Outcome out = runner.run(fuel - runner.steps());
      if (out == TapeRunner::Outcome::Paused) {
        UtmSnapshot snap =
            parse_universal_tape(m, tape_word(runner.configuration()));
        if (snap.header_and_program != initial.header_and_program)
          intact = false;
        if (boot_visit) {
          boot_visit = false;
          if (snap.decoded != initial.decoded) boot_ok = false;
        } else {
          checkpoints.push_back({runner.steps(), snap.decoded});
        }
        continue;
      }
      if (out == TapeRunner::Outcome::Final)
        status = SimStatus::Final;
      else if (out == TapeRunner::Outcome::Stuck)
        status = SimStatus::Stuck;
      else
        status = SimStatus::Timeout;
      break;
    }
  } catch (const std::exception& e) {
    rep.detail = std::string("checkpoint decode failed: ") + e.what();
    return rep;
  }
  rep.checkpoints = checkpoints.size();

  if (!intact) {
    rep.detail = "program region changed during the run";
    return rep;
  }
  if (!boot_ok) {
    rep.detail = "configuration region changed before the first step";
    return rep;
  }
  extend_trace(checkpoints.size() + 1);
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (i >= trace.size()) {
      rep.detail = "more checkpoints than direct configurations: " +
                   std::to_string(checkpoints.size()) + " vs " +
                   std::to_string(trace.size());
      return rep;
    }
    if (checkpoints[i].decoded != trace[i]) {
      rep.detail = "checkpoint " + std::to_string(i) + " decodes to " +
                   config_text(checkpoints[i].decoded) + " but the machine is at " +
                   config_text(trace[i]);
      return rep;
    }
  }

  bool m_final = m_halted && trace.back().state == m.final_state();
  bool m_stuck = m_halted && trace.back().state != m.final_state();
  if (status == SimStatus::Final) {
    if (!(m_final && checkpoints.size() == trace.size())) {
      rep.detail = "universal run halted although the machine does not";
      return rep;
    }
  } else if (status == SimStatus::Stuck) {
    if (!(m_stuck && checkpoints.size() == trace.size())) {
      rep.detail = "universal run stuck although the machine is not";
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

}  // namespace

Correspondence verify_step_correspondence(const Machine& m, const Word& w,
                                          std::uint64_t fuel) {
  const UtmTable& table = utm_table();
  return correspondence_impl(table.machine, table.fetch, m, w, fuel);
}

Correspondence verify_step_correspondence_with(const Machine& u,
                                               const Machine& m, const Word& w,
                                               std::uint64_t fuel) {
  return correspondence_impl(u, utm_table().fetch, m, w, fuel);
}

NdSimulationResult simulate_universal_nd(const Machine& m, const Word& w,
                                         std::uint64_t fuel) {
  Machine u = build_untm();
  Configuration c0 = assemble_initial(m, w);
  ExploreResult ex = explore(u, c0, fuel);
  std::set<Word> words;
  for (const Configuration& c : ex.finals)
    words.insert(tape_word(parse_universal_tape(m, tape_word(c)).decoded));
  NdSimulationResult r;
  r.finals.assign(words.begin(), words.end());
  r.hit_fuel = ex.hit_fuel;
  r.paths = ex.paths;
  return r;
}

}  // namespace umach
