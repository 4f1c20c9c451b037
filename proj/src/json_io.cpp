#include "risklens/json_io.hpp"

#include <cmath>
#include <string>

namespace risklens {

const json& require_field(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError("missing field: " + key);
  return j.at(key);
}

double number_or_decimal_string(const json& j) {
  double x;
  if (j.is_number()) {
    x = j.get<double>();
  } else if (j.is_string()) {
    try {
      std::size_t pos = 0;
      x = std::stod(j.get<std::string>(), &pos);
      if (pos != j.get<std::string>().size()) throw SchemaError("trailing junk in number");
    } catch (const SchemaError&) {
      throw;
    } catch (...) {
      throw SchemaError("not a decimal string: " + j.dump());
    }
  } else {
    throw SchemaError("expected a number: " + j.dump());
  }
  if (!std::isfinite(x)) throw SchemaError("non-finite number in input");
  return x;
}

double require_number(const json& j, const std::string& key) {
  return number_or_decimal_string(require_field(j, key));
}

namespace {

std::vector<double> number_array(const json& j, const std::string& key) {
  const json& arr = require_field(j, key);
  if (!arr.is_array()) throw SchemaError(key + " must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& e : arr) out.push_back(number_or_decimal_string(e));
  return out;
}

}  // namespace

RiskAttitude risk_attitude_from_json(const json& j) {
  try {
    return RiskAttitude(number_array(j, "alternatives"), number_array(j, "values"));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("RiskAttitude: ") + e.what());
  }
}

json risk_attitude_to_json(const RiskAttitude& u) {
  return json{{"alternatives", u.alternatives()}, {"values", u.values()}};
}

SimpleLottery lottery_from_json(const json& j) {
  const json& sup = require_field(j, "support");
  if (!sup.is_array() || sup.empty()) throw SchemaError("SimpleLottery: support must be a non-empty array");
  std::vector<std::pair<double, double>> entries;
  for (const auto& e : sup)
    entries.emplace_back(require_number(e, "at"), require_number(e, "p"));
  try {
    return SimpleLottery(std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("SimpleLottery: ") + e.what());
  }
}

json lottery_to_json(const SimpleLottery& p) {
  json sup = json::array();
  for (const auto& [x, q] : p.support()) sup.push_back(json{{"at", x}, {"p", q}});
  return json{{"support", sup}};
}

ExtendedCdf extended_cdf_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("ExtendedCDF: expected an object");
  double alpha = 0.0;
  if (j.contains("neg_inf_mass")) alpha = number_or_decimal_string(j.at("neg_inf_mass"));
  std::vector<Atom> atoms;
  if (j.contains("atoms")) {
    if (!j.at("atoms").is_array()) throw SchemaError("ExtendedCDF: atoms must be an array");
    for (const auto& e : j.at("atoms"))
      atoms.push_back(Atom{require_number(e, "at"), require_number(e, "mass")});
  }
  std::vector<UniformPiece> pieces;
  if (j.contains("uniform")) {
    if (!j.at("uniform").is_array()) throw SchemaError("ExtendedCDF: uniform must be an array");
    for (const auto& e : j.at("uniform"))
      pieces.push_back(UniformPiece{require_number(e, "from"), require_number(e, "to"),
                                    require_number(e, "mass")});
  }
  try {
    return ExtendedCdf(alpha, std::move(atoms), std::move(pieces));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("ExtendedCDF: ") + e.what());
  }
}

json extended_cdf_to_json(const ExtendedCdf& f) {
  json atoms = json::array();
  for (const auto& a : f.atoms()) atoms.push_back(json{{"at", a.at}, {"mass", a.mass}});
  json pieces = json::array();
  for (const auto& p : f.pieces())
    pieces.push_back(json{{"from", p.from}, {"to", p.to}, {"mass", p.mass}});
  return json{{"neg_inf_mass", f.neg_inf_mass()}, {"atoms", atoms}, {"uniform", pieces}};
}

PhysicalOutsideOption outside_option_measure_from_json(const json& j) {
  PhysicalOutsideOption mu;
  mu.unavailable_mass =
      j.contains("unavailable_mass") ? number_or_decimal_string(j.at("unavailable_mass")) : 0.0;
  if (j.contains("options")) {
    if (!j.at("options").is_array()) throw SchemaError("mu: options must be an array");
    for (const auto& e : j.at("options"))
      mu.option_masses.emplace_back(require_number(e, "at"), require_number(e, "mass"));
  }
  double total = mu.unavailable_mass;
  for (const auto& [y, m] : mu.option_masses) total += m;
  if (std::fabs(total - 1.0) > 1e-12) throw SchemaError("mu: masses must sum to 1");
  return mu;
}

LotteryKernel kernel_from_json(const json& j) {
  LotteryKernel k;
  k.xs = number_array(j, "X");
  const json& kernels = require_field(j, "kernels");
  if (!kernels.is_array()) throw SchemaError("LotteryKernel: kernels must be an array");
  std::vector<std::pair<double, ExtendedCdf>> entries;
  for (const auto& e : kernels)
    entries.emplace_back(require_number(e, "at"), extended_cdf_from_json(require_field(e, "cdf")));
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> xs_sorted = k.xs;
  std::sort(xs_sorted.begin(), xs_sorted.end());
  if (entries.size() != xs_sorted.size()) throw SchemaError("LotteryKernel: one kernel per alternative");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first != xs_sorted[i])
      throw SchemaError("LotteryKernel: kernel entry at a point outside X");
    k.cdfs.push_back(std::move(entries[i].second));
  }
  k.xs = std::move(xs_sorted);
  try {
    validate_kernel(k);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("LotteryKernel: ") + e.what());
  }
  return k;
}

json kernel_to_json(const LotteryKernel& k) {
  json kernels = json::array();
  for (std::size_t i = 0; i < k.xs.size(); ++i)
    kernels.push_back(json{{"at", k.xs[i]}, {"cdf", extended_cdf_to_json(k.cdfs[i])}});
  return json{{"X", k.xs}, {"kernels", kernels}};
}

Decomposition decomposition_from_json(const json& j) {
  Decomposition d{
      require_number(j, "lambda"),
      extended_cdf_from_json(require_field(j, "G")),
      extended_cdf_from_json(require_field(j, "H")),
      std::nullopt,
      false,
  };
  if (j.contains("H_star") && !j.at("H_star").is_null())
    d.H_star = extended_cdf_from_json(j.at("H_star"));
  if (j.contains("h_arbitrary")) d.h_arbitrary = j.at("h_arbitrary").get<bool>();
  return d;
}

json decomposition_to_json(const Decomposition& d) {
  json j{{"lambda", d.lambda},
         {"G", extended_cdf_to_json(d.G)},
         {"H", extended_cdf_to_json(d.H)},
         {"H_star", nullptr},
         {"h_arbitrary", d.h_arbitrary}};
  if (d.H_star) j["H_star"] = extended_cdf_to_json(*d.H_star);
  return j;
}

CaraSpec cara_spec_from_json(const json& j) {
  CaraSpec s{require_number(j, "sigma"), require_number(j, "lambda"), require_number(j, "x0")};
  if (s.lambda < 0.0) throw SchemaError("CaraSpec: lambda must be >= 0");
  return s;
}

}  // namespace risklens
