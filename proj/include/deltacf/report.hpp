#pragma once

// Human-readable renderings of propagation results (4 decimals).

#include <string>
#include <vector>

#include "deltacf/network.hpp"

namespace deltacf {

/// Fixed 4-decimal rendering; never prints "-0.0000".
std::string fixed4(double x);
/// Shortest decimal string that round-trips to the same double.
std::string shortest(double x);

std::string format_violations(const std::vector<Violation>& violations);
std::string format_propagation(const PropagationReport& report);
std::string format_posteriors(const PosteriorReport& report);

}  // namespace deltacf
