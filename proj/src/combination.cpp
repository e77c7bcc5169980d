#include "deltacf/combination.hpp"

#include <algorithm>
#include <cmath>

#include "deltacf/interpretation.hpp"

namespace deltacf {

namespace {

using Kind = Interpretation::Kind;

void check_conflict(const Update& a, const Update& b) {
  if ((a.proves() && b.disproves()) || (a.disproves() && b.proves())) {
    throw Error(ErrorCode::conflicting_evidence,
                "conflicting certain evidence: combination of +1 and -1 is undefined");
  }
}

void check_same_interpretation(const Update& a, const Update& b) {
  if (a.interpretation() != b.interpretation()) {
    throw Error(ErrorCode::interpretation_mismatch,
                "cannot combine " + a.interpretation().name() + " with " +
                    b.interpretation().name());
  }
}

void check_coherent(double present, double absent) {
  if (!coherent_signs(present, absent)) {
    throw Error(ErrorCode::incoherent_pair,
                "incoherent strengths: (" + std::to_string(present) + ", " +
                    std::to_string(absent) + ") must be zero together or of opposite sign");
  }
}

}  // namespace

bool coherent_signs(double present, double absent) noexcept {
  return (present == 0.0 && absent == 0.0) || (present > 0.0 && absent < 0.0) ||
         (present < 0.0 && absent > 0.0);
}

RuleStrengthPair::RuleStrengthPair(Update on_present, Update on_absent)
    : on_present_(on_present), on_absent_(on_absent) {
  check_same_interpretation(on_present, on_absent);
  if (on_present.interpretation().kind() != Kind::mycin_legacy) {
    check_coherent(on_present.value(), on_absent.value());
  }
}

Update parallel_mycin(const Update& a, const Update& b) {
  check_conflict(a, b);
  const auto mycin = Interpretation::mycin_legacy();
  const double x = a.value();
  const double y = b.value();
  // Extremes first: the mixed-sign denominator vanishes only at (+-1, -+1).
  if (x == 1.0 || y == 1.0) return Update(1.0, mycin);
  if (x == -1.0 || y == -1.0) return Update(-1.0, mycin);
  if (x > 0.0 && y > 0.0) return Update(x + y - x * y, mycin);
  if (x < 0.0 && y < 0.0) return Update(x + y + x * y, mycin);
  return Update(std::clamp((x + y) / (1.0 - std::min(std::fabs(x), std::fabs(y))), -1.0, 1.0),
                mycin);
}

Update parallel_generic(const Update& a, const Update& b) {
  check_same_interpretation(a, b);
  const auto interp = a.interpretation();
  if (interp.kind() == Kind::orig) {
    throw Error(ErrorCode::unsupported_interpretation,
                "orig updates do not combine commutatively; use parallel_orig_demo");
  }
  check_conflict(a, b);
  if (a.value() == 0.0) return b;
  if (b.value() == 0.0) return a;
  if (interp.kind() == Kind::delta1) {
    // Closed form of G1(G1^-1(a) + G1^-1(b)); the conflict case is excluded above.
    const double x = a.value();
    const double y = b.value();
    return Update(std::clamp((x + y) / (1.0 + x * y), -1.0, 1.0), interp);
  }
  return g_apply(interp, g_invert(a) + g_invert(b));
}

Update parallel(const Update& a, const Update& b) {
  if (a.interpretation().kind() == Kind::mycin_legacy &&
      b.interpretation().kind() == Kind::mycin_legacy) {
    return parallel_mycin(a, b);
  }
  return parallel_generic(a, b);
}

Update parallel_fold(std::span<const Update> updates, Interpretation interp) {
  Update acc(0.0, interp);
  for (const auto& u : updates) acc = parallel(acc, u);
  return acc;
}

Probability parallel_orig_demo(Probability prior, std::span<const Update> updates) {
  Probability p = prior;
  for (const auto& u : updates) {
    if (u.interpretation().kind() != Kind::orig) {
      throw Error(ErrorCode::interpretation_mismatch, "parallel_orig_demo takes orig updates");
    }
    p = posterior_from_update(p, u);
  }
  return p;
}

Update sequential_mycin(const Update& d_he, const Update& u) {
  return Update(d_he.value() * std::max(0.0, u.value()), Interpretation::mycin_legacy());
}

LikelihoodRatio sequential_lambda(LikelihoodRatio l_he, LikelihoodRatio l_h_not_e,
                                  LikelihoodRatio l_e_ep) {
  const double l = l_he.value();
  const double lp = l_h_not_e.value();
  const double le = l_e_ep.value();
  if (l == 1.0 && lp == 1.0) return LikelihoodRatio(1.0);
  check_coherent(l - 1.0, lp - 1.0);

  if (std::isinf(le)) return l_he;
  if (le == 0.0) return l_h_not_e;
  if (le == 1.0) return LikelihoodRatio(1.0);
  if (std::isinf(l)) return LikelihoodRatio(le * (1.0 - lp) + lp);
  if (std::isinf(lp)) return LikelihoodRatio(l + (1.0 - l) / le);

  const double num = le * l * (1.0 - lp) + lp * (l - 1.0);
  const double den = le * (1.0 - lp) + (l - 1.0);
  return LikelihoodRatio(num / den);
}

Update sequential_delta1(const Update& d_he, const Update& d_h_not_e, const Update& u) {
  const auto delta1 = Interpretation::delta1();
  for (const Update* x : {&d_he, &d_h_not_e, &u}) {
    if (x->interpretation() != delta1) {
      throw Error(ErrorCode::interpretation_mismatch, "sequential_delta1 takes delta1 updates");
    }
  }
  const double d = d_he.value();
  const double dn = d_h_not_e.value();
  const double x = u.value();
  check_coherent(d, dn);
  if (d == 0.0 || x == 0.0) return Update(0.0, delta1);
  if (x == 1.0) return d_he;
  if (x == -1.0) return d_h_not_e;
  // Symmetric rule: the closed form reduces to d * u.
  if (dn == -d) return Update(d * x, delta1);

  const double num = -2.0 * d * dn * x;
  const double den = (d - dn) - x * (d + dn);
  return Update(std::clamp(num / den, -1.0, 1.0), delta1);
}

Update sequential_generic(const RuleStrengthPair& pair, const Update& u) {
  const auto interp = pair.interpretation();
  if (!interp.is_probabilistic()) {
    throw Error(ErrorCode::unsupported_interpretation,
                "sequential_generic needs a probabilistic interpretation, got " + interp.name());
  }
  if (u.interpretation() != interp) {
    throw Error(ErrorCode::interpretation_mismatch,
                "sequential combination of " + interp.name() + " rule with " +
                    u.interpretation().name() + " update");
  }
  if (u.value() == 0.0) return Update(0.0, interp);
  if (u.proves()) return pair.on_present();
  if (u.disproves()) return pair.on_absent();

  const auto l = sequential_lambda(lambda_from_update(pair.on_present()),
                                   lambda_from_update(pair.on_absent()), lambda_from_update(u));
  const double w = l.value() == 0.0 ? -kInfinity : std::log(l.value());
  return g_apply(interp, WeightOfEvidence(w));
}

Update sequential(const RuleStrengthPair& pair, const Update& u) {
  switch (pair.interpretation().kind()) {
    case Kind::mycin_legacy:
      return sequential_mycin(pair.on_present(), u);
    case Kind::delta1:
      return sequential_delta1(pair.on_present(), pair.on_absent(), u);
    default:
      return sequential_generic(pair, u);
  }
}

}  // namespace deltacf
