#pragma once

#include <ostream>

#include <json.hpp>

#include "drg/enumerate.hpp"

namespace drg::cli {

/// "p" or "p/q".
nlohmann::json rational_json(const BigRational& r);
/// A rational string, or {"p", "q", "d"} for p + q sqrt(d).
nlohmann::json quadratic_json(const QuadraticNumber& q);
/// Quadratic form when available, otherwise the defining polynomial and an
/// isolating interval.
nlohmann::json algebraic_json(const AlgebraicNumber& a);
nlohmann::json multiplicity_json(const Multiplicity& m);

nlohmann::json shilla_json(const ShillaConstraintReport& s);
/// One JSON-lines record.  The shilla block is present for Shilla arrays.
nlohmann::json report_json(const FeasibilityReport& r, const ShillaConstraintReport* shilla, bool verbose);

void print_report(std::ostream& out, const FeasibilityReport& r, const ShillaConstraintReport* shilla, bool verbose);

}  // namespace drg::cli
