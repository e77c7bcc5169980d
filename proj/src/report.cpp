#include "deltacf/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

namespace deltacf {

std::string fixed4(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  std::string s = buf;
  if (s == "-0.0000") s = "0.0000";
  return s;
}

std::string shortest(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string format_violations(const std::vector<Violation>& violations) {
  std::ostringstream os;
  for (const auto& v : violations) os << v.subject << ": " << v.kind << " (" << v.detail << ")\n";
  return os.str();
}

namespace {

std::size_t id_width(const PropagationReport& report) {
  std::size_t w = 4;
  for (const auto& [id, u] : report.updates) w = std::max(w, id.size());
  return w + 2;
}

}  // namespace

std::string format_propagation(const PropagationReport& report) {
  const auto w = id_width(report);
  std::ostringstream os;
  os << "interpretation: " << report.interpretation.name() << "\n\n";
  os << std::left << std::setw(static_cast<int>(w)) << "node" << "update\n";
  for (const auto& [id, u] : report.updates) {
    os << std::left << std::setw(static_cast<int>(w)) << id << fixed4(u.value()) << "\n";
  }
  if (!report.contributions.empty()) {
    std::size_t rw = 4;
    for (const auto& c : report.contributions) rw = std::max(rw, c.rule_id.size());
    rw += 2;
    os << "\nexplanation\n";
    os << std::left << std::setw(static_cast<int>(rw)) << "rule" << std::right << std::setw(10)
       << "evidence" << std::setw(14) << "contribution" << std::setw(10) << "running" << "\n";
    for (const auto& c : report.contributions) {
      os << std::left << std::setw(static_cast<int>(rw)) << c.rule_id << std::right
         << std::setw(10) << fixed4(c.child_update.value()) << std::setw(14)
         << fixed4(c.sequential_result.value()) << std::setw(10) << fixed4(c.running.value())
         << "\n";
    }
  }
  return os.str();
}

std::string format_posteriors(const PosteriorReport& report) {
  const auto w = id_width(report.propagation);
  const auto opt = [](const std::optional<Probability>& p) {
    return p ? fixed4(p->value()) : std::string("-");
  };
  std::ostringstream os;
  os << format_propagation(report.propagation) << "\n";
  os << std::left << std::setw(static_cast<int>(w)) << "node" << std::right << std::setw(10)
     << "prior" << std::setw(11) << "posterior" << "\n";
  for (const auto& [id, n] : report.nodes) {
    os << std::left << std::setw(static_cast<int>(w)) << id << std::right << std::setw(10)
       << opt(n.prior) << std::setw(11) << opt(n.posterior) << "\n";
  }
  for (const auto& warning : report.warnings) os << "warning: " << warning << "\n";
  return os.str();
}

}  // namespace deltacf
