#include "umach/resource.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "umach/machine_io.hpp"

namespace umach {
namespace {

constexpr std::uint64_t kExponentGuard = 1u << 24;

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// 2^e >= cap exactly when e >= bits(cap - 1), for cap >= 1.
std::uint64_t exp2_saturation_threshold(const BigInt& cap) {
  if (cap <= 1) return 0;
  BigInt m = cap - 1;
  return boost::multiprecision::msb(m) + 1;
}

// min(base^k, cap) without materializing huge powers.
BigInt pow_capped(const BigInt& base, const BigInt& k, const BigInt& cap) {
  if (k == 0) return std::min(BigInt(1), cap);
  if (base <= 1) return std::min(base, cap);
  BigInt acc = 1;
  for (BigInt i = 0; i < k; ++i) {
    acc *= base;
    if (acc >= cap) return cap;
  }
  return acc;
}

BigInt eval_impl(const ComplexityExpr& e, std::uint64_t x, const BigInt* cap) {
  auto clamp = [&](const BigInt& v) { return cap && v > *cap ? *cap : v; };
  switch (e.kind) {
    case ComplexityExpr::Kind::Const:
      return clamp(e.value);
    case ComplexityExpr::Kind::Var:
      return clamp(BigInt(x));
    case ComplexityExpr::Kind::LinMul:
      return clamp(e.value * eval_impl(*e.sub, x, cap));
    case ComplexityExpr::Kind::Pow: {
      BigInt b = eval_impl(*e.sub, x, cap);
      if (cap) {
        if (b >= *cap && e.value >= 1 && b >= 1) return *cap;
        return pow_capped(b, e.value, *cap);
      }
      require(e.value <= kExponentGuard, "power exponent exceeds the guard");
      BigInt acc = 1;
      for (BigInt i = 0; i < e.value; ++i) acc *= b;
      return acc;
    }
    case ComplexityExpr::Kind::Exp2: {
      BigInt ev = eval_impl(*e.sub, x, cap);
      if (cap) {
        std::uint64_t threshold = exp2_saturation_threshold(*cap);
        if (ev >= threshold) return *cap;
        return std::min(BigInt(BigInt(1) << ev.convert_to<unsigned>()), *cap);
      }
      if (ev > kExponentGuard)
        throw std::overflow_error("2^e exponent exceeds the guard: " +
                                  ev.str());
      return BigInt(1) << ev.convert_to<unsigned>();
    }
    case ComplexityExpr::Kind::Poly: {
      BigInt sum = 0;
      BigInt xp = 1;
      for (std::size_t j = 0; j < e.coeffs.size(); ++j) {
        if (j > 0) {
          xp *= x;
          if (cap && xp > *cap) xp = *cap + 1;
        }
        sum += e.coeffs[j] * xp;
        if (cap && sum > *cap) return *cap;
      }
      return sum;
    }
  }
  throw std::logic_error("unreachable expression kind");
}

bool is_const(const ExprPtr& e) {
  return e->kind == ComplexityExpr::Kind::Const;
}

// Structural requirement for admission: the expression must contain a
// growing use of x on every multiplicative path, so that g(x) >= x holds
// past the crossover.
bool admissible(const ComplexityExpr& e) {
  switch (e.kind) {
    case ComplexityExpr::Kind::Const:
      return false;
    case ComplexityExpr::Kind::Var:
      return true;
    case ComplexityExpr::Kind::LinMul:
      return e.value >= 1 && admissible(*e.sub);
    case ComplexityExpr::Kind::Pow:
      return e.value >= 1 && admissible(*e.sub);
    case ComplexityExpr::Kind::Exp2:
      return admissible(*e.sub);
    case ComplexityExpr::Kind::Poly:
      for (std::size_t j = 1; j < e.coeffs.size(); ++j)
        if (e.coeffs[j] >= 1) return true;
      return false;
  }
  return false;
}

BigInt const_sum(const ComplexityExpr& e) {
  switch (e.kind) {
    case ComplexityExpr::Kind::Const:
      return e.value;
    case ComplexityExpr::Kind::Var:
      return 0;
    case ComplexityExpr::Kind::LinMul:
      return e.value + const_sum(*e.sub);
    case ComplexityExpr::Kind::Pow:
      return e.value + const_sum(*e.sub);
    case ComplexityExpr::Kind::Exp2:
      return const_sum(*e.sub);
    case ComplexityExpr::Kind::Poly: {
      BigInt s = 0;
      for (const BigInt& c : e.coeffs) s += c;
      return s;
    }
  }
  return 0;
}

std::uint64_t syntactic_degree(const ComplexityExpr& e) {
  switch (e.kind) {
    case ComplexityExpr::Kind::Const:
      return 0;
    case ComplexityExpr::Kind::Var:
      return 1;
    case ComplexityExpr::Kind::LinMul:
      return syntactic_degree(*e.sub);
    case ComplexityExpr::Kind::Pow: {
      BigInt k = std::min(e.value, BigInt(1000));
      return k.convert_to<std::uint64_t>() * syntactic_degree(*e.sub);
    }
    case ComplexityExpr::Kind::Exp2:
      return syntactic_degree(*e.sub) + 1;
    case ComplexityExpr::Kind::Poly: {
      std::uint64_t d = 0;
      for (std::size_t j = 0; j < e.coeffs.size(); ++j)
        if (e.coeffs[j] != 0) d = j;
      return d;
    }
  }
  return 0;
}

// --- parser -----------------------------------------------------------

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  explicit Parser(const std::string& t) : text(t) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("position " + std::to_string(pos + 1) + ": " +
                                msg);
  }

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  bool consume(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of expression");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      ExprPtr e = parse_sum();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (c == 'x') {
      ++pos;
      return make_var();
    }
    if (c >= '0' && c <= '9') {
      std::size_t b = pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
      return make_const(BigInt(text.substr(b, pos - b)));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (!consume('^')) return base;
    ExprPtr exp = parse_power();
    if (is_const(base) && is_const(exp)) {
      require(exp->value <= 4096, "constant exponent too large to fold");
      BigInt acc = 1;
      for (BigInt i = 0; i < exp->value; ++i) acc *= base->value;
      return make_const(acc);
    }
    if (is_const(base)) {
      if (base->value != 2)
        fail("only base-2 exponentials are in the family");
      return make_exp2(exp);
    }
    if (!is_const(exp)) fail("exponent must be constant or base must be 2");
    return make_pow(base, exp->value);
  }

  ExprPtr parse_product() {
    std::vector<ExprPtr> factors{parse_power()};
    while (consume('*')) factors.push_back(parse_power());
    BigInt scalar = 1;
    ExprPtr var_part;
    for (const ExprPtr& f : factors) {
      if (is_const(f)) {
        scalar *= f->value;
      } else if (!var_part) {
        var_part = f;
      } else {
        fail("product of two x-dependent factors is outside the family");
      }
    }
    if (!var_part) return make_const(scalar);
    if (scalar == 1) return var_part;
    return make_lin_mul(scalar, var_part);
  }

  ExprPtr parse_sum() {
    std::vector<ExprPtr> terms{parse_product()};
    while (consume('+')) terms.push_back(parse_product());
    if (terms.size() == 1) return terms[0];
    std::vector<BigInt> coeffs;
    auto add_coeff = [&](std::size_t power, const BigInt& c) {
      if (coeffs.size() <= power) coeffs.resize(power + 1, BigInt(0));
      coeffs[power] += c;
    };
    for (const ExprPtr& t : terms) {
      if (t->kind == ComplexityExpr::Kind::Const) {
        add_coeff(0, t->value);
      } else if (t->kind == ComplexityExpr::Kind::Var) {
        add_coeff(1, 1);
      } else if (t->kind == ComplexityExpr::Kind::Pow &&
                 t->sub->kind == ComplexityExpr::Kind::Var) {
        require(t->value <= 4096, "polynomial power too large");
        add_coeff(t->value.convert_to<std::size_t>(), 1);
      } else if (t->kind == ComplexityExpr::Kind::LinMul &&
                 t->sub->kind == ComplexityExpr::Kind::Var) {
        add_coeff(1, t->value);
      } else if (t->kind == ComplexityExpr::Kind::LinMul &&
                 t->sub->kind == ComplexityExpr::Kind::Pow &&
                 t->sub->sub->kind == ComplexityExpr::Kind::Var) {
        require(t->sub->value <= 4096, "polynomial power too large");
        add_coeff(t->sub->value.convert_to<std::size_t>(), t->value);
      } else {
        fail("sum mixes non-polynomial terms, outside the family");
      }
    }
    return make_poly(coeffs);
  }
};

bool needs_parens_under_mul(const ComplexityExpr& e) {
  return e.kind == ComplexityExpr::Kind::Poly;
}

void serialize(const ComplexityExpr& e, std::ostringstream& out) {
  switch (e.kind) {
    case ComplexityExpr::Kind::Const:
      out << e.value.str();
      return;
    case ComplexityExpr::Kind::Var:
      out << 'x';
      return;
    case ComplexityExpr::Kind::LinMul:
      out << e.value.str() << '*';
      if (needs_parens_under_mul(*e.sub)) {
        out << '(';
        serialize(*e.sub, out);
        out << ')';
      } else {
        serialize(*e.sub, out);
      }
      return;
    case ComplexityExpr::Kind::Pow:
      if (e.sub->kind == ComplexityExpr::Kind::Var) {
        serialize(*e.sub, out);
      } else {
        out << '(';
        serialize(*e.sub, out);
        out << ')';
      }
      out << '^' << e.value.str();
      return;
    case ComplexityExpr::Kind::Exp2:
      out << "2^";
      if (e.sub->kind == ComplexityExpr::Kind::Var ||
          e.sub->kind == ComplexityExpr::Kind::Const) {
        serialize(*e.sub, out);
      } else {
        out << '(';
        serialize(*e.sub, out);
        out << ')';
      }
      return;
    case ComplexityExpr::Kind::Poly: {
      bool first = true;
      bool any = false;
      for (std::size_t jj = e.coeffs.size(); jj-- > 0;) {
        const BigInt& c = e.coeffs[jj];
        if (c == 0) continue;
        any = true;
        if (!first) out << '+';
        first = false;
        if (jj == 0) {
          out << c.str();
        } else {
          if (c != 1) out << c.str() << '*';
          out << 'x';
          if (jj >= 2) out << '^' << jj;
        }
      }
      if (!any) out << '0';
      return;
    }
  }
}

}  // namespace

ExprPtr make_const(const BigInt& c) {
  require(c >= 0, "constants must be non-negative");
  auto e = std::make_shared<ComplexityExpr>();
  e->kind = ComplexityExpr::Kind::Const;
  e->value = c;
  return e;
}

ExprPtr make_var() {
  auto e = std::make_shared<ComplexityExpr>();
  e->kind = ComplexityExpr::Kind::Var;
  return e;
}

ExprPtr make_lin_mul(const BigInt& c, ExprPtr sub) {
  require(c >= 0, "scalar must be non-negative");
  require(sub != nullptr, "missing operand");
  auto e = std::make_shared<ComplexityExpr>();
  e->kind = ComplexityExpr::Kind::LinMul;
  e->value = c;
  e->sub = std::move(sub);
  return e;
}

ExprPtr make_pow(ExprPtr sub, const BigInt& k) {
  require(k >= 0, "exponent must be non-negative");
  require(sub != nullptr, "missing operand");
  auto e = std::make_shared<ComplexityExpr>();
  e->kind = ComplexityExpr::Kind::Pow;
  e->value = k;
  e->sub = std::move(sub);
  return e;
}

ExprPtr make_exp2(ExprPtr sub) {
  require(sub != nullptr, "missing operand");
  auto e = std::make_shared<ComplexityExpr>();
  e->kind = ComplexityExpr::Kind::Exp2;
  e->sub = std::move(sub);
  return e;
}

ExprPtr make_poly(const std::vector<BigInt>& coeffs) {
  for (const BigInt& c : coeffs)
    require(c >= 0, "polynomial coefficients must be non-negative");
  auto e = std::make_shared<ComplexityExpr>();
  e->kind = ComplexityExpr::Kind::Poly;
  e->coeffs = coeffs;
  return e;
}

ExprPtr parse_expr(const std::string& text) {
  Parser p(text);
  ExprPtr e = p.parse_sum();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return e;
}

std::string serialize_expr(const ExprPtr& g) {
  require(g != nullptr, "missing expression");
  std::ostringstream out;
  serialize(*g, out);
  return out.str();
}

std::uint64_t repr_length(const ExprPtr& g) {
  return serialize_expr(g).size();
}

BigInt eval_g(const ExprPtr& g, std::uint64_t x) {
  require(g != nullptr, "missing expression");
  return eval_impl(*g, x, nullptr);
}

BigInt eval_capped(const ExprPtr& g, std::uint64_t x, const BigInt& cap) {
  require(g != nullptr, "missing expression");
  require(cap >= 0, "cap must be non-negative");
  return eval_impl(*g, x, &cap);
}

std::uint64_t crossover_bound(const ExprPtr& g) {
  require(g != nullptr, "missing expression");
  BigInt s = const_sum(*g);
  if (s > 1'000'000) s = 1'000'000;
  return 4 * (s.convert_to<std::uint64_t>() + syntactic_degree(*g) + 2);
}

std::optional<std::uint64_t> validate_subclass(const ExprPtr& g,
                                               std::uint64_t x_max) {
  require(g != nullptr, "missing expression");
  require(x_max >= crossover_bound(g),
          "x_max below the crossover bound " +
              std::to_string(crossover_bound(g)));
  if (!admissible(*g)) return std::nullopt;
  if (eval_capped(g, x_max, BigInt(x_max)) < x_max) return std::nullopt;
  std::uint64_t c = 0;
  for (std::uint64_t x = 0; x <= x_max; ++x) {
    BigInt v = eval_capped(g, x, BigInt(x));
    std::uint64_t deficit = x - v.convert_to<std::uint64_t>();
    c = std::max(c, deficit);
  }
  return c;
}

BigInt Budget::space_cells(std::uint64_t x) const {
  return eval_g(g, x) + r_g;
}

std::uint64_t Budget::space_cells_clamped(std::uint64_t x) const {
  BigInt cap = BigInt(std::numeric_limits<std::uint64_t>::max()) - r_g;
  BigInt v = eval_capped(g, x, cap) + r_g;
  return v.convert_to<std::uint64_t>();
}

std::optional<Budget> make_budget(const ExprPtr& g, std::uint64_t x_max) {
  x_max = std::max(x_max, crossover_bound(g));
  std::optional<std::uint64_t> c = validate_subclass(g, x_max);
  if (!c) return std::nullopt;
  Budget b;
  b.g = g;
  b.c_g = *c;
  b.r_g = repr_length(g);
  return b;
}

SpaceBoundedResult run_space_bounded(const Machine& m, const Word& w,
                                     const Budget& b, std::uint64_t fuel) {
  SpaceBoundedResult out;
  out.limit = b.space_cells_clamped(w.size());
  SimulationResult sr = simulate_universal(m, w, fuel, out.limit);
  out.status = sr.status;
  out.result = sr.result;
  out.u_steps = sr.u_steps;
  out.peak_cells = sr.peak_cells;
  return out;
}

OverheadTable measure_time_overhead(
    const std::vector<std::pair<Machine, Word>>& corpus, const ExprPtr& g,
    std::uint64_t fuel) {
  std::vector<std::pair<Machine, Word>> ordered = corpus;
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) {
              if (a.first.name != b.first.name)
                return a.first.name < b.first.name;
              if (a.second.size() != b.second.size())
                return a.second.size() < b.second.size();
              return a.second < b.second;
            });
  OverheadTable table;
  for (const auto& [m, w] : ordered) {
    SimulationResult sr = simulate_universal(m, w, fuel);
    if (sr.status != SimStatus::Final && sr.status != SimStatus::Stuck) {
      table.warnings.push_back("excluded " + m.name + " on input '" +
                               format_word(w) +
                               "': no termination within fuel");
      continue;
    }
    OverheadRow row;
    row.machine = m.name;
    row.input = format_word(w);
    row.x = w.size();
    row.t_u = sr.u_steps;
    row.g_of_x = eval_g(g, row.x);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::optional<OverheadFit> fit_overhead(const OverheadTable& table,
                                        int max_degree) {
  if (table.rows.empty()) return std::nullopt;
  auto constant_for = [&](int d) {
    BigInt best = 0;
    for (const OverheadRow& row : table.rows) {
      BigInt denom = 1;
      for (int i = 0; i < d; ++i) denom *= row.g_of_x;
      denom += 1;
      BigInt c = (BigInt(row.t_u) + denom - 1) / denom;
      best = std::max(best, c);
    }
    return best;
  };
  BigInt anchor = constant_for(max_degree);
  for (int d = 0; d <= max_degree; ++d) {
    BigInt c = constant_for(d);
    if (c <= 2 * anchor) {
      OverheadFit fit;
      fit.c = c.convert_to<std::uint64_t>();
      fit.degree = d;
      return fit;
    }
  }
  return std::nullopt;
}

}  // namespace umach
