#include "deltacf/types.hpp"

#include <charconv>

namespace deltacf {

double extended_add(double a, double b) {
  if (std::isinf(a) && std::isinf(b) && (a > 0) != (b > 0)) {
    throw Error(ErrorCode::contradiction, "contradiction: +infinity + -infinity");
  }
  return a + b;
}

Interpretation Interpretation::deltan(int n) {
  if (n < 1 || n % 2 == 0) {
    throw Error(ErrorCode::domain, "deltan requires an odd positive n, got " + std::to_string(n));
  }
  return Interpretation(Kind::deltan, n);
}

namespace {

int parse_order(std::string_view digits, std::string_view whole) {
  int n = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw Error(ErrorCode::domain, "unknown interpretation: " + std::string(whole));
  }
  return n;
}

}  // namespace

Interpretation Interpretation::parse(std::string_view text) {
  if (text == "delta1") return delta1();
  if (text == "cf") return cf();
  if (text == "mycin" || text == "mycin-legacy") return mycin_legacy();
  if (text == "orig") return orig();
  if (text.starts_with("deltan:")) return deltan(parse_order(text.substr(7), text));
  if (text.starts_with("delta") && text.size() > 5) return deltan(parse_order(text.substr(5), text));
  throw Error(ErrorCode::domain, "unknown interpretation: " + std::string(text));
}

std::string Interpretation::name() const {
  switch (kind_) {
    case Kind::delta1: return "delta1";
    case Kind::deltan: return "deltan:" + std::to_string(n_);
    case Kind::cf: return "cf";
    case Kind::mycin_legacy: return "mycin";
    case Kind::orig: return "orig";
  }
  return "?";
}

Odds odds_of(Probability p) {
  if (p.certain_true()) return Odds(kInfinity);
  return Odds(p.value() / (1.0 - p.value()));
}

Probability prob_of(Odds o) {
  if (std::isinf(o.value())) return Probability(1.0);
  return Probability(o.value() / (1.0 + o.value()));
}

}  // namespace deltacf
