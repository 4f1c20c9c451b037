// Batch CLI binding the library operations to file I/O.
//
// Exit codes: 0 ok, 1 property violated (witness emitted), 2 input error,
// 3 numeric failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "risklens/errors.hpp"
#include "risklens/json_io.hpp"

namespace {

using risklens::json;

struct RunConfig {
  std::string input;
  std::string output;
  double tol = 1e-9;
  double tol_numeric = 1e-6;
  std::uint64_t seed = 0;
  int trials = 500;
  std::string format = "json";
};

json load_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw risklens::SchemaError("--input is required");
  std::ifstream in(cfg.input);
  if (!in) throw risklens::SchemaError("cannot open input file: " + cfg.input);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw risklens::SchemaError(std::string("invalid JSON: ") + e.what());
  }
  return j;
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw risklens::SchemaError("cannot open output file: " + cfg.output);
  out << text;
}

void emit_json(const RunConfig& cfg, const json& j) { write_output(cfg, j.dump(2) + "\n"); }

std::string num17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json witness_json(const risklens::PrattWitness& w) {
  return json{{"triple", {w.x, w.y, w.z}}, {"ratio_u", w.ratio_u}, {"ratio_v", w.ratio_v}};
}

json lottery_witness_json(const risklens::LotteryWitness& w) {
  return json{{"lottery", risklens::lottery_to_json(w.p)}, {"x", w.x}, {"margin", w.margin}};
}

int cmd_effective(const RunConfig& cfg) {
  const json in = load_input(cfg);
  const auto v = risklens::risk_attitude_from_json(risklens::require_field(in, "v"));
  const auto f = risklens::extended_cdf_from_json(risklens::require_field(in, "F"));
  const auto u = risklens::effective_utility(v, f);
  std::vector<double> keep(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) keep[i] = f(v.value(i));
  if (cfg.format == "csv") {
    std::string out = "alternative,v,u,exercise_prob\n";
    for (std::size_t i = 0; i < v.size(); ++i)
      out += num17(v.alternative(i)) + "," + num17(v.value(i)) + "," + num17(u.value(i)) + "," +
             num17(keep[i]) + "\n";
    write_output(cfg, out);
  } else {
    emit_json(cfg, json{{"u", risklens::risk_attitude_to_json(u)}, {"exercise_prob", keep}});
  }
  return 0;
}

int cmd_identify(const RunConfig& cfg) {
  const json in = load_input(cfg);
  const auto u = risklens::risk_attitude_from_json(risklens::require_field(in, "u"));
  const auto v = risklens::risk_attitude_from_json(risklens::require_field(in, "v"));
  try {
    const auto res = risklens::identify_F(u, v);
    emit_json(cfg, json{{"F", risklens::extended_cdf_to_json(res.F)},
                        {"alpha", res.alpha},
                        {"beta", res.beta},
                        {"concentrated", res.concentrated}});
    return 0;
  } catch (const risklens::CrossRatioError& e) {
    emit_json(cfg, json{{"error", "not_less_risk_averse"}, {"witness", witness_json(e.witness)}});
    return 1;
  }
}

int cmd_compare(const RunConfig& cfg) {
  const json in = load_input(cfg);
  const auto u = risklens::risk_attitude_from_json(risklens::require_field(in, "u"));
  const auto v = risklens::risk_attitude_from_json(risklens::require_field(in, "v"));
  risklens::PrattWitness pw{};
  const bool cross = risklens::less_risk_averse_crossratio(u, v, cfg.tol, &pw);
  risklens::LotteryWitness lw{risklens::SimpleLottery::degenerate(u.alternative(0)), 0.0, 0.0};
  const bool oracle = risklens::less_risk_averse_oracle(u, v, cfg.trials, cfg.seed, cfg.tol, &lw);
  json out{{"crossratio", cross}, {"oracle", oracle}, {"less_risk_averse", cross && oracle},
           {"witness", nullptr}};
  if (!cross)
    out["witness"] = witness_json(pw);
  else if (!oracle)
    out["witness"] = lottery_witness_json(lw);
  emit_json(cfg, out);
  return (cross && oracle) ? 0 : 1;
}

int cmd_mcs_a(const RunConfig& cfg) {
  const json in = load_input(cfg);
  const auto v = risklens::risk_attitude_from_json(risklens::require_field(in, "v"));
  const auto f = risklens::extended_cdf_from_json(risklens::require_field(in, "F"));
  const auto fhat = risklens::extended_cdf_from_json(risklens::require_field(in, "F_hat"));
  const auto r = risklens::mcs_part_a_check(v, f, fhat);
  emit_json(cfg, json{{"lra", r.lra}, {"rhr", r.rhr}, {"agree", r.agree}});
  return r.agree ? 0 : 1;
}

int cmd_mcs_b(const RunConfig& cfg) {
  const json in = load_input(cfg);
  const auto v = risklens::risk_attitude_from_json(risklens::require_field(in, "v"));
  const auto vhat = risklens::risk_attitude_from_json(risklens::require_field(in, "v_hat"));
  const auto mu = risklens::outside_option_measure_from_json(risklens::require_field(in, "mu"));
  const auto r = risklens::mcs_part_b_check(v, vhat, mu);
  emit_json(cfg, json{{"lra_u", r.lra_u}, {"lra_v", r.lra_v}, {"agree", r.agree}});
  return r.agree ? 0 : 1;
}

int cmd_cara(const RunConfig& cfg) {
  const json in = load_input(cfg);
  const auto spec = risklens::cara_spec_from_json(in);
  risklens::CaraGrid grid{spec.x0 - 6.0, 4001};
  if (in.contains("grid")) {
    grid.lo = risklens::require_number(in.at("grid"), "lo");
    grid.n = static_cast<int>(risklens::require_number(in.at("grid"), "n"));
  }
  const auto res = risklens::cara_numeric_check(spec, grid);
  if (cfg.format == "csv") {
    std::string out = "# rho_closed_form=" + num17(res.rho_closed_form) + "\n";
    out += "# max_abs_err=" + num17(res.max_abs_err) + "\n";
    out += "x,v,u,rho_hat\n";
    for (std::size_t i = 0; i < res.xs.size(); ++i)
      out += num17(res.xs[i]) + "," + num17(res.vs[i]) + "," + num17(res.us[i]) + "," +
             num17(res.rho_hat[i]) + "\n";
    write_output(cfg, out);
  } else {
    emit_json(cfg, json{{"rho_closed_form", res.rho_closed_form},
                        {"max_abs_err", res.max_abs_err},
                        {"x", res.xs},
                        {"v", res.vs},
                        {"u", res.us},
                        {"rho_hat", res.rho_hat}});
  }
  return 0;
}

json failure_json(const risklens::KernelFailure& f) {
  return json{{"violated", f.violated}, {"pair", {f.y, f.z}}, {"at", f.at}, {"detail", f.detail}};
}

int cmd_decompose(const RunConfig& cfg) {
  const json in = load_input(cfg);
  const auto kernel = risklens::kernel_from_json(in);
  const auto res = risklens::decompose(kernel, cfg.tol);
  if (res.ok()) {
    emit_json(cfg, risklens::decomposition_to_json(*res.decomposition));
    return 0;
  }
  emit_json(cfg, json{{"error", "not_decomposable"}, {"failure", failure_json(*res.failure)}});
  return 1;
}

int cmd_check_kernel(const RunConfig& cfg) {
  const json in = load_input(cfg);
  const auto kernel = risklens::kernel_from_json(in);
  const auto rr = risklens::check_risk_reduction(kernel, cfg.trials, cfg.seed);
  const auto t3 = risklens::theorem3_agreement(kernel, cfg.trials, cfg.seed);
  json out{{"all_pass", rr.all_pass},
           {"samples", rr.samples_run},
           {"witness", nullptr},
           {"theorem3", json{{"lra", t3.lra}, {"oo_form", t3.oo_form}, {"agree", t3.agree}}}};
  if (rr.witness) {
    out["witness"] = json{{"v", risklens::risk_attitude_to_json(rr.witness->v)},
                          {"lottery", risklens::lottery_to_json(rr.witness->p)},
                          {"x", rr.witness->x},
                          {"margin", rr.witness->margin}};
  }
  emit_json(cfg, out);
  return (rr.all_pass && t3.agree) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"outside-option model of risk attitude: valuation, identification, "
               "comparative statics, kernel decomposition"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("RISKLENS_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "input JSON file");
    sub->add_option("--output", cfg.output, "output file (default stdout)");
    sub->add_option("--tol", cfg.tol, "exact-arithmetic tolerance");
    sub->add_option("--tol-numeric", cfg.tol_numeric, "numerical-derivative tolerance");
    sub->add_option("--seed", cfg.seed, "RNG seed (fallback: RISKLENS_SEED)");
    sub->add_option("--trials", cfg.trials, "sampling trial count");
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  int (*handlers[])(const RunConfig&) = {cmd_effective, cmd_identify, cmd_compare, cmd_mcs_a,
                                         cmd_mcs_b,     cmd_cara,     cmd_decompose,
                                         cmd_check_kernel};
  const char* names[] = {"effective", "identify", "compare",   "mcs-a",
                         "mcs-b",     "cara",     "decompose", "check-kernel"};
  const char* descs[] = {
      "effective risk attitude and exercise probabilities from (v, F)",
      "identify the rationalizing outside-option distribution from (u, v)",
      "compare risk attitudes: cross-ratio test plus brute-force lottery oracle",
      "Theorem on fixed v: less-risk-averse vs reverse hazard rate order",
      "Theorem on fixed outside option: effective vs true attitude shifts",
      "CARA worked example: closed form and numeric cross-check",
      "decompose a lottery kernel into outside-option form",
      "test whether a kernel always reduces risk-aversion",
  };
  CLI::App* subs[8];
  for (int i = 0; i < 8; ++i) {
    subs[i] = app.add_subcommand(names[i], descs[i]);
    add_common(subs[i]);
  }

  CLI11_PARSE(app, argc, argv);

  if (!(cfg.tol > 0.0) || !(cfg.tol_numeric > 0.0)) {
    std::cerr << "error: tolerances must be positive\n";
    return 2;
  }

  try {
    for (int i = 0; i < 8; ++i)
      if (subs[i]->parsed()) return handlers[i](cfg);
    return 2;
  } catch (const risklens::SchemaError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const risklens::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
}
