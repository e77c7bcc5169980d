#include "deltacf/compare.hpp"

#include <cmath>
#include <cstdio>

#include "deltacf/combination.hpp"

namespace deltacf {

std::vector<double> closed_grid(int points) {
  if (points < 2) throw Error(ErrorCode::domain, "grid needs at least 2 points");
  std::vector<double> xs(static_cast<std::size_t>(points));
  const double span = points - 1;
  for (int i = 0; i < points; ++i) xs[static_cast<std::size_t>(i)] = (2.0 * i - span) / span;
  return xs;
}

CompareGrid figure4_grid(int points, double first) {
  CompareGrid g{CompareGrid::Mode::parallel, {"second_update", "mycin", "delta1", "abs_diff"}, {}};
  const Update a_mycin(first, Interpretation::mycin_legacy());
  const Update a_delta(first, Interpretation::delta1());
  for (double x : closed_grid(points)) {
    const double m = parallel_mycin(a_mycin, Update(x, Interpretation::mycin_legacy())).value();
    const double d = parallel_generic(a_delta, Update(x, Interpretation::delta1())).value();
    g.rows.push_back({x, m, d, std::fabs(m - d)});
  }
  return g;
}

CompareGrid figure7_grid(int points) {
  CompareGrid g{CompareGrid::Mode::sequential,
                {"u", "mycin", "delta1_a05", "delta1_a25", "delta1_a90"},
                {}};
  const auto delta1 = Interpretation::delta1();
  const Update present(0.9, delta1);
  for (double u : closed_grid(points)) {
    std::vector<double> row{u, sequential_mycin(Update(0.9, Interpretation::mycin_legacy()),
                                                Update(u, Interpretation::mycin_legacy()))
                                   .value()};
    for (double absent : {-0.05, -0.25, -0.9}) {
      row.push_back(sequential_delta1(present, Update(absent, delta1), Update(u, delta1)).value());
    }
    g.rows.push_back(std::move(row));
  }
  return g;
}

void write_csv(std::ostream& out, const CompareGrid& grid) {
  for (std::size_t i = 0; i < grid.columns.size(); ++i) {
    out << (i ? "," : "") << grid.columns[i];
  }
  out << '\n';
  char buf[64];
  for (const auto& row : grid.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      // Normalize -0 so output does not depend on the sign of zero.
      std::snprintf(buf, sizeof buf, "%.17g", row[i] == 0.0 ? 0.0 : row[i]);
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
}

}  // namespace deltacf
