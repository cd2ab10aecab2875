#pragma once

// JSON forms of the library's data. Scalars and exponent coordinates are
// exact strings; cutoffs are numbers when a double holds them exactly,
// strings "p/q" otherwise and "inf" for +inf. High-precision reals are
// written as decimal strings with 17 significant digits.

#include "dulac/banach.hpp"
#include "dulac/gevrey.hpp"
#include "dulac/mseries.hpp"
#include "dulac/solver.hpp"

#include "json.hpp"

#include <optional>

namespace dulac::io {

using json = nlohmann::ordered_json;

/// Numbers are read through their shortest decimal form, so 0.1 -> 1/10.
Rational rational_from_json(const json& j, const std::string& what);
json rational_to_json(const Rational& q);

json cutoff_to_json(const Cutoff& c);
Cutoff cutoff_from_json(const json& j);

json scalar_to_json(const ExactScalar& s);
json poly_to_json(const TPoly& p);
TPoly poly_from_json(const json& j);

json exponent_to_json(const Exponent& e);
Exponent exponent_from_json(const json& j, const ExponentBasis& basis);
/// Exact value string, or null for exponents on decimal basis entries.
json exponent_value_json(const Exponent& e, const ExponentBasis& basis);

json series_to_json(const DulacSeries& f);
DulacSeries series_from_json(const json& j, const BasisPtr& basis);

/// [{"lambda": [coords], "c": [scalars]}]
json prefix_to_json(const DulacSeries& f);
DulacSeries prefix_from_json(const json& j, const BasisPtr& basis);

json ode_to_json(const ODESpec& f);
ODESpec ode_from_json(const json& j);

json mseries_to_json(const MSeries& g);
MSeries mseries_from_json(const json& j, const BasisPtr& basis);

json slope_to_json(const Slope& s);
Slope slope_from_json(const json& j);

json linear_to_json(const LinearData& lin);
json conditions_to_json(const ConditionReport& r);
json state_to_json(const SolutionState& st);
json reduced_to_json(const ReducedEquation& red);
json gevrey_to_json(const GevreyReport& rep);
json real_to_json(const Real& x);
json double_to_json(double v);

struct Problem {
    BasisPtr basis;
    ODESpec ode;
    DulacSeries prefix;
    std::optional<std::vector<Exponent>> generators;
    std::optional<Rational> cutoff;
    std::optional<Rational> R;
    std::optional<Slope> s_override;
    unsigned precision = kDefaultPrecision;
    double tolerance = kDefaultGammaTolerance;
    std::optional<std::size_t> m;
};

/// Throws Error{Schema} (structure) or Error{Parse} (literals).
Problem problem_from_json(const json& j);
json problem_to_json(const Problem& p);

/// Parses text; malformed JSON raises Error{Schema}.
json parse_text(const std::string& text, const std::string& source);

} // namespace dulac::io
