#pragma once

#include <cmath>

#include <json.hpp>

#include "flrw/classifier.hpp"
#include "flrw/extension.hpp"
#include "flrw/geometry.hpp"
#include "flrw/sss.hpp"

namespace flrw {

// JSON has no infinities: infinite values serialize as the strings
// "+inf" / "-inf", NaN as null.
inline nlohmann::json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

inline void to_json(nlohmann::json& j, const LimitEstimate& e) {
  j = {{"value", json_number(e.value)},
       {"error_estimate", json_number(e.error_estimate)},
       {"verdict", to_string(e.verdict)},
       {"samples_used", e.samples_used}};
}

inline void to_json(nlohmann::json& j, const SublinearFit& f) {
  j = {{"m", f.m}, {"b", f.b}, {"holds", f.holds}, {"growth_exponent", f.growth_exponent},
       {"scope", "sampled range"}};
}

inline void to_json(nlohmann::json& j, const FlrwReport& r) {
  j = {{"geometry", to_string(r.geometry)},
       {"cond_a0_zero", r.cond_a0_zero},
       {"cond_sublinear", r.cond_sublinear},
       {"cond_a_prime_positive", r.cond_a_prime_positive},
       {"smoothness_assumed", r.smoothness_assumed},
       {"overall", r.overall}};
}

inline void to_json(nlohmann::json& j, const MilneReport& r) {
  j = {{"a_prime_limit", r.a_prime_limit},
       {"integral_diverges", r.integral_diverges},
       {"b_prime_limit", r.b_prime_limit},
       {"is_milne_like", r.is_milne_like},
       {"inconclusive", r.inconclusive}};
}

inline void to_json(nlohmann::json& j, const DistanceBound& b) {
  j = {{"tau0", b.tau0}, {"T", b.T}, {"d_h", b.d_h}, {"bound", b.bound}};
}

inline void to_json(nlohmann::json& j, const LiftCheckReport& r) {
  j = {{"samples_checked", r.samples_checked},
       {"max_lift_speed", r.max_lift_speed},
       {"max_curve_speed", r.max_curve_speed},
       {"all_timelike", r.all_timelike},
       {"speed_bound_ok", r.speed_bound_ok}};
}

inline void to_json(nlohmann::json& j, const BoundaryDiagnostic& d) {
  j = {{"n", d.n}, {"slice_length", d.slice_length}, {"ratio_to_a", d.ratio_to_a}};
}

inline void to_json(nlohmann::json& j, const SssValue& v) {
  j = {{"value", json_number(v.value)}, {"singular", v.singular}};
}

inline void to_json(nlohmann::json& j, const SssDivergenceReport& r) {
  j = {{"s_limit", r.s_limit},
       {"sfprime_sq_limit", r.sfprime_sq_limit},
       {"t_coord_limit", r.t_coord_limit},
       {"a_over_aprime_limit", r.a_over_aprime_limit},
       {"a2_integral_limit", r.a2_integral_limit},
       {"s_diverges", r.s_diverges},
       {"t_diverges", r.t_diverges}};
}

}  // namespace flrw
