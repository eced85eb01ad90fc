#pragma once

#include <string>
#include <vector>

#include "kolmo/calculus.hpp"
#include "kolmo/polynomial.hpp"

namespace kolmo {

/// Field with exact polynomial evaluator and mixed-derivative oracle; works
/// on any group spec.
ScalarField make_polynomial_field(const GroupSpec& g, Polynomial p);

/// Built-in field registry.  Names:
///   sin_cos_poly        sin(x1) + cos(x2) + t^2, analytic oracle (prototype)
///   abs_x2              |x2 - c|, c = 1/2, oracle valid off the kink
///   abs_x2_3half        |x2 - c|^{3/2}, c = 1/2, oracle valid off the kink
///   transport           sin(x2 - t x1), constant along the Y flow
///   gauss_smoothed_abs  Gaussian-smoothed |x2| with variance x1^4
///   mono:<beta>:<k>     monomial t^k x^beta, e.g. "mono:2,1:0"
ScalarField make_field(const GroupSpec& g, const std::string& name);

std::vector<std::string> builtin_field_names();

/// Kink offset c used by the abs_* registry fields.
double abs_field_offset();

}  // namespace kolmo
