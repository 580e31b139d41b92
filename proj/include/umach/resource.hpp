// Space-budget functions and resource-bounded universal simulation.
//
// Budget functions form a small expression family over one variable:
// constants, x itself, c*e, e^k, 2^e, and polynomials with non-negative
// coefficients. A function is admitted as a budget only when some constant
// c_g makes c_g + g(x) >= x everywhere, certified over a finite range plus
// a growth argument; the admitted function then bounds the universal
// simulator's tape to g(|w|) + r_g cells, where r_g is the length of the
// function's canonical text form.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "umach/machine.hpp"
#include "umach/universal.hpp"

namespace umach {

using BigInt = boost::multiprecision::cpp_int;

struct ComplexityExpr;
using ExprPtr = std::shared_ptr<const ComplexityExpr>;

struct ComplexityExpr {
  enum class Kind { Const, Var, LinMul, Pow, Exp2, Poly };
  Kind kind = Kind::Const;
  // Const: the constant; LinMul: the scalar; Pow: the exponent.
  BigInt value = 0;
  // Poly: coefficient of x^i at index i.
  std::vector<BigInt> coeffs;
  ExprPtr sub;
};

ExprPtr make_const(const BigInt& c);
ExprPtr make_var();
ExprPtr make_lin_mul(const BigInt& c, ExprPtr sub);
ExprPtr make_pow(ExprPtr sub, const BigInt& k);
ExprPtr make_exp2(ExprPtr sub);
ExprPtr make_poly(const std::vector<BigInt>& coeffs);

// Parses the canonical infix syntax: "2*x", "x^2", "2^x", "2^(x^2+1)",
// "3*x^2", "x^2+2*x+1". Throws std::invalid_argument with a position on
// anything outside the family (for example "log2(x)").
ExprPtr parse_expr(const std::string& text);

// Canonical single-line rendering; parse_expr(serialize_expr(g)) evaluates
// identically. repr_length counts its characters.
std::string serialize_expr(const ExprPtr& g);
std::uint64_t repr_length(const ExprPtr& g);

// Exact evaluation. Throws std::overflow_error when an intermediate
// exponent exceeds the internal 2^24-bit guard.
BigInt eval_g(const ExprPtr& g, std::uint64_t x);

// min(g(x), cap): evaluates with early saturation so that towers like
// 2^(2^x) stay cheap when only a comparison against cap is needed.
BigInt eval_capped(const ExprPtr& g, std::uint64_t x, const BigInt& cap);

// Smallest admissible x_max for validate_subclass: past it every admitted
// function dominates x, so the finite scan plus the growth witness below
// certify the unbounded property.
std::uint64_t crossover_bound(const ExprPtr& g);

// Returns the least c_g with c_g + g(x) >= x for all x <= x_max, provided
// g structurally depends on x with positive degree and g(x_max) >= x_max;
// nullopt otherwise. Requires x_max >= crossover_bound(g).
std::optional<std::uint64_t> validate_subclass(const ExprPtr& g,
                                               std::uint64_t x_max);

struct Budget {
  ExprPtr g;
  std::uint64_t c_g = 0;
  std::uint64_t r_g = 0;
  // g(x) + r_g, exact.
  BigInt space_cells(std::uint64_t x) const;
  // Same, saturated to uint64 for the tape meter.
  std::uint64_t space_cells_clamped(std::uint64_t x) const;
};

// Validates g and packages it with its constant and representation length.
// x_max is raised to the crossover bound when it falls short of it.
std::optional<Budget> make_budget(const ExprPtr& g, std::uint64_t x_max = 64);

struct SpaceBoundedResult {
  SimStatus status = SimStatus::Timeout;
  std::optional<Word> result;
  std::uint64_t u_steps = 0;
  std::uint64_t peak_cells = 0;
  std::uint64_t limit = 0;
};

// Universal simulation of m on w with the tape metered against
// b.space_cells(|w|); aborts with SimStatus::Space at the step that would
// first exceed the limit.
SpaceBoundedResult run_space_bounded(const Machine& m, const Word& w,
                                     const Budget& b, std::uint64_t fuel);

struct OverheadRow {
  std::string machine;
  std::string input;        // formatted word, for deterministic ordering
  std::uint64_t x = 0;      // input length
  std::uint64_t t_u = 0;    // universal steps to termination
  BigInt g_of_x;
};

struct OverheadTable {
  std::vector<OverheadRow> rows;      // ordered by (machine, x, input)
  std::vector<std::string> warnings;  // one per excluded non-terminating run
};

// Runs the universal simulator over the corpus and tabulates step counts
// against g; entries that fail to terminate within fuel are excluded with
// a warning.
OverheadTable measure_time_overhead(
    const std::vector<std::pair<Machine, Word>>& corpus, const ExprPtr& g,
    std::uint64_t fuel);

struct OverheadFit {
  std::uint64_t c = 0;
  int degree = 0;
};

// Smallest degree d <= max_degree whose constant C = max ceil(t_U/(g^d+1))
// is within a factor two of the best constant at max_degree; every row then
// satisfies t_U <= C*g(x)^d + C. nullopt on an empty table.
std::optional<OverheadFit> fit_overhead(const OverheadTable& table,
                                        int max_degree = 4);

}  // namespace umach
