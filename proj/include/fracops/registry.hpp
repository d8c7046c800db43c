#pragma once

#include <map>
#include <string>
#include <vector>

#include "fracops/exact_solutions.hpp"
#include "fracops/fields.hpp"
#include "fracops/point.hpp"
#include "fracops/wos.hpp"

namespace fracops {

using Params = std::map<std::string, std::string>;

/// Numeric parameter lookup; throws DomainError on malformed values.
double param_double(const Params& p, const std::string& key, double fallback);
int param_int(const Params& p, const std::string& key, int fallback);
std::string param_string(const Params& p, const std::string& key, const std::string& fallback);

/// "a,b,c" -> Point of dimension n; a single value is accepted for n = 1.
Point parse_point(const std::string& text, int n);

/// Named fields. The known operator value is set for the oracle fields.
///   ball_torsion, halfspace (shift = 0), shifted_halfspace (shift, default 1), fundamental,
///   constant (value), bump (center, radius, amplitude)
/// The half-space normal is e_1.
OracleField make_field(const std::string& name, int n, double s, const Params& p);
std::vector<std::string> field_names();

/// Named exterior data:
///   zero, constant (value), halfspace, shifted_halfspace (shift, default 1),
///   annulus_indicator (indicator of 2 < |z| < 3), ball_torsion
ExteriorData make_exterior(const std::string& name, int n, double s, const Params& p);
std::vector<std::string> exterior_names();

/// Named domains: ball (center, radius), interval (a, b), box (lo, hi), halfspace (offset; normal e_1).
DomainPtr make_domain(const std::string& name, int n, const Params& p);
std::vector<std::string> domain_names();

}  // namespace fracops
