#include "deltacf/interpretation.hpp"

#include <algorithm>
#include <cmath>

namespace deltacf {

namespace {

using Kind = Interpretation::Kind;

void require_weight_map(Interpretation interp) {
  if (!interp.has_weight_map()) {
    throw Error(ErrorCode::unsupported_interpretation,
                "interpretation '" + interp.name() + "' has no weight-space map");
  }
}

// ln((1+d)/(1-d)), written so that f(-d) == -f(d) bit for bit.
double log_ratio(double d) {
  if (d == 1.0) return kInfinity;
  if (d == -1.0) return -kInfinity;
  return std::log1p(d) - std::log1p(-d);
}

double signed_pow(double x, double e) { return std::copysign(std::pow(std::fabs(x), e), x); }

double g_raw(Interpretation interp, double w) {
  switch (interp.kind()) {
    case Kind::delta1:
      return std::tanh(w / 2.0);
    case Kind::deltan:
      return std::tanh(signed_pow(w, 1.0 / interp.n()) / 2.0);
    case Kind::cf:
    case Kind::mycin_legacy:
      return w >= 0.0 ? -std::expm1(-w) : std::expm1(w);
    case Kind::orig:
      break;
  }
  require_weight_map(interp);
  return 0.0;
}

double g_inverse_raw(Interpretation interp, double d) {
  switch (interp.kind()) {
    case Kind::delta1:
      return log_ratio(d);
    case Kind::deltan:
      return signed_pow(log_ratio(d), interp.n());
    case Kind::cf:
    case Kind::mycin_legacy:
      return d >= 0.0 ? -std::log1p(-d) : std::log1p(d);
    case Kind::orig:
      break;
  }
  require_weight_map(interp);
  return 0.0;
}

void check_not_degenerate(Probability posterior, Probability prior) {
  const double p = prior.value();
  if (p == 0.0 || p == 1.0) {
    if (posterior.value() == p) {
      throw Error(ErrorCode::degenerate_prior, "degenerate prior: posterior and prior both " +
                                                   std::string(p == 0.0 ? "0" : "1"));
    }
  }
}

}  // namespace

double logit(Probability p) {
  const double x = p.value();
  if (x == 0.0) return -kInfinity;
  if (x == 1.0) return kInfinity;
  return std::log(x) - std::log1p(-x);
}

Probability logistic(double x) {
  if (x == kInfinity) return Probability(1.0);
  if (x == -kInfinity) return Probability(0.0);
  if (x >= 0.0) return Probability(1.0 / (1.0 + std::exp(-x)));
  const double e = std::exp(x);
  return Probability(e / (1.0 + e));
}

WeightOfEvidence weight_from_probs(Probability posterior, Probability prior) {
  check_not_degenerate(posterior, prior);
  const double p = prior.value();
  if (p == 0.0 || p == 1.0) {
    throw Error(ErrorCode::contradiction, "contradiction: posterior " +
                                              std::to_string(posterior.value()) +
                                              " from a certain prior " + std::to_string(p));
  }
  return WeightOfEvidence(logit(posterior) - logit(prior));
}

Update g_apply(Interpretation interp, WeightOfEvidence w) {
  return Update(g_raw(interp, w.value()), interp);
}

WeightOfEvidence g_invert(const Update& d) {
  return WeightOfEvidence(g_inverse_raw(d.interpretation(), d.value()));
}

Update reinterpret(const Update& d, Interpretation to) {
  if (d.interpretation() == to) return d;
  return g_apply(to, g_invert(d));
}

Update update_from_probs(Interpretation interp, Probability posterior, Probability prior) {
  if (interp.kind() == Kind::delta1) {
    // Closed form of G1(logit(q) - logit(p)); exact at p = 1/2.
    const WeightOfEvidence w = weight_from_probs(posterior, prior);
    if (!w.is_finite()) return g_apply(interp, w);
    const double q = posterior.value();
    const double p = prior.value();
    return Update(std::clamp((q - p) / (q + p - 2.0 * q * p), -1.0, 1.0), interp);
  }
  if (interp.kind() != Kind::orig) return g_apply(interp, weight_from_probs(posterior, prior));

  check_not_degenerate(posterior, prior);
  const double q = posterior.value();
  const double p = prior.value();
  if (q > p) return Update((q - p) / (1.0 - p), interp);
  if (q < p) return Update((q - p) / p, interp);
  return Update(0.0, interp);
}

Probability posterior_from_update(Probability prior, const Update& d) {
  const double p = prior.value();
  const double x = d.value();
  if (x == 0.0) return prior;
  if ((d.proves() && p == 0.0) || (d.disproves() && p == 1.0)) {
    throw Error(ErrorCode::contradiction,
                "contradiction: update " + std::to_string(x) + " applied to prior " +
                    std::to_string(p));
  }
  if (d.interpretation().kind() == Kind::orig) {
    return Probability(x > 0.0 ? p + x * (1.0 - p) : p + x * p);
  }
  return logistic(extended_add(logit(prior), g_invert(d).value()));
}

LikelihoodRatio lambda_from_update(const Update& d) {
  if (d.interpretation().kind() == Kind::delta1) {
    if (d.proves()) return LikelihoodRatio(kInfinity);
    return LikelihoodRatio((1.0 + d.value()) / (1.0 - d.value()));
  }
  return LikelihoodRatio(std::exp(g_invert(d).value()));
}

Update elicit_from_conditionals(Interpretation interp, Probability e_given_h,
                                Probability e_given_not_h) {
  require_weight_map(interp);
  const double a = e_given_h.value();
  const double b = e_given_not_h.value();
  if (a == 0.0 && b == 0.0) {
    throw Error(ErrorCode::evidence_impossible,
                "evidence impossible: p(E|H) = p(E|~H) = 0");
  }
  if (a == b) return Update(0.0, interp);
  if (interp.kind() == Kind::delta1) return Update((a - b) / (a + b), interp);
  const double w = (a == 0.0) ? -kInfinity : (b == 0.0) ? kInfinity : std::log(a) - std::log(b);
  return g_apply(interp, WeightOfEvidence(w));
}

Update elicit_from_fifty_prior(Interpretation interp, Probability posterior) {
  return update_from_probs(interp, posterior, Probability(0.5));
}

}  // namespace deltacf
