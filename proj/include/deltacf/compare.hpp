#pragma once

// Side-by-side tables of the MYCIN and delta1 combination functions,
// written as CSV for plotting.

#include <ostream>
#include <string>
#include <vector>

namespace deltacf {

struct CompareGrid {
  enum class Mode { parallel, sequential };
  Mode mode;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// `points` evenly spaced values on [-1, 1], endpoints included and
/// symmetric about 0.
std::vector<double> closed_grid(int points);

/// Parallel combination with the first update fixed at `first`:
/// columns second_update, mycin, delta1, abs_diff.
CompareGrid figure4_grid(int points, double first = 0.5);

/// Sequential combination for Δ(H,E) = 0.9 and Δ(H,~E) in {-0.05, -0.25,
/// -0.9}: columns u, mycin, delta1_a05, delta1_a25, delta1_a90.
CompareGrid figure7_grid(int points);

/// Header row then one line per row; 17 significant digits, LF endings.
void write_csv(std::ostream& out, const CompareGrid& grid);

}  // namespace deltacf
