#pragma once

#include <vector>

namespace swme {

/// Real roots of c3 x^3 + c2 x^2 + c1 x + c0, sorted ascending. Uses Cardano's
/// formula (trigonometric form for three real roots) followed by Newton
/// polishing. Falls back to the quadratic/linear formulas when the leading
/// coefficients vanish. Repeated roots are reported once per multiplicity
/// that the discriminant resolves.
std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0);

/// Real roots of c2 x^2 + c1 x + c0, sorted ascending, computed without
/// cancellation.
std::vector<double> real_quadratic_roots(double c2, double c1, double c0);

} // namespace swme
