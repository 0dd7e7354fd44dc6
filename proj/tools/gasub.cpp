// gasub: expression front end for the geometric-algebra subspace engine.
//
//   gasub eval --sig P,Q,R [--json] [--normalize] [--tol REL] "EXPR"
//
// Exit codes: 0 success, 1 evaluation error, 2 parse error.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gasub/gasub.hpp"

namespace {

gasub::Signature parse_sig(const std::string& s) {
  int p = 0, q = 0, r = 0;
  if (std::sscanf(s.c_str(), "%d,%d,%d", &p, &q, &r) != 3)
    throw gasub::Error("--sig expects P,Q,R (e.g. 3,0,0)");
  return gasub::make_signature(p, q, r);
}

void print_value(const gasub::Value& v, bool json, bool norm) {
  using gasub::Multivector;
  auto render = [&](const Multivector& m) {
    const Multivector out = norm ? gasub::normalize(m) : m;
    if (json)
      std::cout << gasub::multivector_to_json(out).dump() << "\n";
    else
      std::cout << gasub::format_multivector(out) << "\n";
  };
  if (const auto* m = std::get_if<Multivector>(&v)) {
    render(*m);
  } else if (const auto* b = std::get_if<bool>(&v)) {
    std::cout << (*b ? "true" : "false") << "\n";
  } else {
    const auto& factors = std::get<std::vector<Multivector>>(v);
    if (json) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& f : factors) arr.push_back(gasub::multivector_to_json(f));
      std::cout << arr.dump() << "\n";
    } else {
      for (const auto& f : factors) std::cout << gasub::format_multivector(f) << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric-algebra subspace operations"};
  app.require_subcommand(1);

  auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression");
  std::string sig_text;
  std::string expr_text;
  bool json = false, norm = false;
  double tol_flag = -1.0;
  eval_cmd->add_option("--sig", sig_text, "signature P,Q,R")->required();
  eval_cmd->add_flag("--json", json, "emit the JSON multivector schema");
  eval_cmd->add_flag("--normalize", norm, "normalize the result for display");
  eval_cmd->add_option("--tol", tol_flag, "relative zero tolerance");
  eval_cmd->add_option("expr", expr_text, "expression")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  gasub::ToleranceConfig tol;
  if (const char* env = std::getenv("GASUB_TOL")) tol.rel_eps = std::atof(env);
  if (tol_flag > 0.0) tol.rel_eps = tol_flag;  // flag wins over environment

  gasub::ExprPtr expr;
  try {
    expr = gasub::parse(expr_text);
  } catch (const gasub::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }

  try {
    gasub::Signature sig = parse_sig(sig_text);
    gasub::Value v = gasub::evaluate(*expr, sig, tol);
    print_value(v, json, norm);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
