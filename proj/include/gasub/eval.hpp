#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "gasub/blade.hpp"
#include "gasub/blade_engine.hpp"
#include "gasub/multivector.hpp"
#include "gasub/parse.hpp"
#include "gasub/subspace_ops.hpp"

namespace gasub {

/// Evaluation result: most expressions yield a multivector; isblade yields
/// a boolean and factor yields a list of vectors.
using Value = std::variant<Multivector, bool, std::vector<Multivector>>;

namespace eval_detail {

inline const Multivector& as_mv(const Value& v, const char* context) {
  if (const auto* m = std::get_if<Multivector>(&v)) return *m;
  throw Error(std::string(context) + ": operand is not a multivector");
}

inline Blade certify(const Multivector& m, const std::string& op, const ToleranceConfig& tol) {
  try {
    return make_blade(m, tol);
  } catch (const Error& e) {
    throw Error(op + ": " + e.what());
  }
}

inline int as_small_int(const Multivector& m, const char* context) {
  for (const auto& [mask, c] : m.terms())
    if (mask != 0) throw Error(std::string(context) + ": argument must be a scalar integer");
  double v = scalar_part(m);
  double r = std::round(v);
  if (std::abs(v - r) > 1e-9) throw Error(std::string(context) + ": argument must be an integer");
  return static_cast<int>(r);
}

}  // namespace eval_detail

inline Value evaluate(const Expr& e, Signature sig, const ToleranceConfig& tol = {});

namespace eval_detail {

inline Multivector eval_mv(const Expr& e, Signature sig, const ToleranceConfig& tol,
                           const char* context) {
  return as_mv(evaluate(e, sig, tol), context);
}

inline Value eval_call(const Expr& e, Signature sig, const ToleranceConfig& tol) {
  const std::string& f = e.func;
  auto arg = [&](std::size_t i) { return eval_mv(*e.args[i], sig, tol, f.c_str()); };
  auto blade_arg = [&](std::size_t i) { return certify(arg(i), f, tol); };
  try {
    if (f == "meet") return meet(blade_arg(0), blade_arg(1), tol).mv();
    if (f == "join") return join(blade_arg(0), blade_arg(1), tol).mv();
    if (f == "delta") return delta_product(blade_arg(0), blade_arg(1), tol).mv();
    if (f == "idiv") return inner_division(blade_arg(0), blade_arg(1), tol).mv();
    if (f == "lmeet") {
      Blade i = e.args.size() == 3 ? blade_arg(2) : pseudoscalar(sig);
      return linear_meet(arg(0), arg(1), i);
    }
    if (f == "ljoin") return linear_join(arg(0), arg(1));
    if (f == "grade") return grade_part(arg(0), as_small_int(arg(1), "grade"));
    if (f == "rev") return reverse(arg(0));
    if (f == "inv") return blade_inverse(blade_arg(0), tol).mv();
    if (f == "proj") {
      Blade a = blade_arg(1);
      Blade ainv = blade_inverse(a, tol);
      return geometric_product(left_contraction(arg(0), a.mv()), ainv.mv());
    }
    if (f == "pseudo") return pseudoscalar(sig).mv();
    if (f == "factor") return factor_blade(arg(0), tol);
    if (f == "isblade") return is_blade(arg(0), tol);
  } catch (const Error& err) {
    std::string what = err.what();
    if (what.rfind(f + ":", 0) == 0) throw;  // already tagged
    throw Error(f + ": " + what);
  }
  throw Error("unknown function '" + f + "'");
}

}  // namespace eval_detail

inline Value evaluate(const Expr& e, Signature sig, const ToleranceConfig& tol) {
  using K = Expr::Kind;
  using eval_detail::as_mv;
  switch (e.kind) {
    case K::Number:
      return Multivector::scalar(sig, e.number);
    case K::Basis:
      if (e.basis < 1 || e.basis > sig.n())
        throw Error("basis vector e" + std::to_string(e.basis) + " exceeds the algebra dimension " +
                    std::to_string(sig.n()));
      return Multivector::basis_vector(sig, e.basis);
    case K::Neg:
      return -as_mv(evaluate(*e.args[0], sig, tol), "negation");
    case K::Add:
      return as_mv(evaluate(*e.args[0], sig, tol), "+") +
             as_mv(evaluate(*e.args[1], sig, tol), "+");
    case K::Sub:
      return as_mv(evaluate(*e.args[0], sig, tol), "-") -
             as_mv(evaluate(*e.args[1], sig, tol), "-");
    case K::Geometric:
      return geometric_product(as_mv(evaluate(*e.args[0], sig, tol), "*"),
                               as_mv(evaluate(*e.args[1], sig, tol), "*"));
    case K::Wedge:
      return outer_product(as_mv(evaluate(*e.args[0], sig, tol), "^"),
                           as_mv(evaluate(*e.args[1], sig, tol), "^"));
    case K::Contract:
      return left_contraction(as_mv(evaluate(*e.args[0], sig, tol), "|"),
                              as_mv(evaluate(*e.args[1], sig, tol), "|"));
    case K::Call:
      return eval_detail::eval_call(e, sig, tol);
  }
  throw Error("unreachable expression kind");
}

namespace format_detail {

inline std::string fmt_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// (grade, ascending index set) term order used by the plain and json styles.
inline bool index_set_less(BasisMask x, BasisMask y) {
  int gx = std::popcount(x), gy = std::popcount(y);
  if (gx != gy) return gx < gy;
  while (x && y) {
    int ix = std::countr_zero(x), iy = std::countr_zero(y);
    if (ix != iy) return ix < iy;
    x &= x - 1;
    y &= y - 1;
  }
  return false;
}

inline std::vector<std::pair<BasisMask, double>> sorted_terms(const Multivector& m) {
  std::vector<std::pair<BasisMask, double>> terms(m.terms().begin(), m.terms().end());
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return index_set_less(a.first, b.first); });
  return terms;
}

inline std::string basis_name(BasisMask mask) {
  std::string s;
  for (BasisMask rest = mask; rest; rest &= rest - 1) {
    if (!s.empty()) s += '^';
    s += 'e';
    s += std::to_string(std::countr_zero(rest) + 1);
  }
  return s;
}

}  // namespace format_detail

/// Plain rendering: terms in (grade, index set) order, shortest round-trip
/// coefficients, basis blades as e1^e2^...; reparsing reproduces the value.
inline std::string format_multivector(const Multivector& m) {
  using namespace format_detail;
  if (m.empty()) return "0";
  std::string out;
  for (const auto& [mask, c] : sorted_terms(m)) {
    double mag = std::abs(c);
    if (out.empty())
      out += (c < 0) ? "-" : "";
    else
      out += (c < 0) ? " - " : " + ";
    if (mask == 0) {
      out += fmt_double(mag);
    } else {
      if (mag != 1.0) {
        out += fmt_double(mag);
        out += '*';
      }
      out += basis_name(mask);
    }
  }
  return out;
}

inline nlohmann::json multivector_to_json(const Multivector& m) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mask, c] : format_detail::sorted_terms(m)) {
    nlohmann::json basis = nlohmann::json::array();
    for (BasisMask rest = mask; rest; rest &= rest - 1)
      basis.push_back(std::countr_zero(rest) + 1);
    terms.push_back({{"basis", basis}, {"coeff", c}});
  }
  return {{"signature", {m.sig().p, m.sig().q, m.sig().r}}, {"terms", terms}};
}

inline Multivector multivector_from_json(const nlohmann::json& j) {
  auto sig_arr = j.at("signature");
  Signature sig = make_signature(sig_arr.at(0), sig_arr.at(1), sig_arr.at(2));
  Multivector m(sig);
  for (const auto& term : j.at("terms")) {
    BasisMask mask = 0;
    int prev = 0;
    for (int i : term.at("basis")) {
      if (i <= prev || i > sig.n()) throw Error("json basis indices must be ascending and in range");
      mask |= BasisMask{1} << (i - 1);
      prev = i;
    }
    m.add_term(mask, term.at("coeff").get<double>());
  }
  return m;
}

}  // namespace gasub
