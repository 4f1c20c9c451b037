#ifndef RISKLENS_JSON_IO_HPP
#define RISKLENS_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "risklens/comparative_statics.hpp"
#include "risklens/errors.hpp"
#include "risklens/extended_cdf.hpp"
#include "risklens/outside_option.hpp"
#include "risklens/preferences.hpp"
#include "risklens/transformations.hpp"

namespace risklens {

using json = nlohmann::json;

// schemas:
//   RiskAttitude   {"alternatives": [x...], "values": [u...]}
//   SimpleLottery  {"support": [{"at": x, "p": q}...]}
//   ExtendedCDF    {"neg_inf_mass": a, "atoms": [{"at": x, "mass": m}...],
//                   "uniform": [{"from": a, "to": b, "mass": m}...]}
//                  masses may be doubles or decimal strings
//   mu             {"unavailable_mass": a, "options": [{"at": y, "mass": m}...]}
//   LotteryKernel  {"X": [...], "kernels": [{"at": x, "cdf": ExtendedCDF}...]}
//   Decomposition  {"lambda": l, "G": ..., "H": ..., "H_star": ... | null}
//   CaraSpec       {"sigma": s, "lambda": l, "x0": x0}

RiskAttitude risk_attitude_from_json(const json& j);
json risk_attitude_to_json(const RiskAttitude& u);

SimpleLottery lottery_from_json(const json& j);
json lottery_to_json(const SimpleLottery& p);

ExtendedCdf extended_cdf_from_json(const json& j);
json extended_cdf_to_json(const ExtendedCdf& f);

PhysicalOutsideOption outside_option_measure_from_json(const json& j);

LotteryKernel kernel_from_json(const json& j);
json kernel_to_json(const LotteryKernel& k);

Decomposition decomposition_from_json(const json& j);
json decomposition_to_json(const Decomposition& d);

CaraSpec cara_spec_from_json(const json& j);

// field access helpers that throw SchemaError with the offending key
const json& require_field(const json& j, const std::string& key);
double require_number(const json& j, const std::string& key);
double number_or_decimal_string(const json& j);  // masses

}  // namespace risklens

#endif
