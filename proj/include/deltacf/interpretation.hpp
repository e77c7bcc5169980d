#pragma once

// The mapping scheme: probabilities are sent to weight space by the fixed
// logit map, and a G-function sends weights onto [-1,1]. Each G generates one
// probabilistic interpretation of certainty factors.

#include "deltacf/types.hpp"

namespace deltacf {

/// ln(p / (1 - p)), with +-inf at 1 / 0.
double logit(Probability p);

/// 1 / (1 + e^-x), defined on the extended reals.
Probability logistic(double x);

/// logit(posterior) - logit(prior) = ln O(H|E)/O(H).
WeightOfEvidence weight_from_probs(Probability posterior, Probability prior);

/// G(w). mycin-legacy uses the cf map; orig has no G and throws.
Update g_apply(Interpretation interp, WeightOfEvidence w);

/// G^{-1}(d) for the update's own interpretation; +-1 map to +-inf.
WeightOfEvidence g_invert(const Update& d);

/// Re-express an update under another interpretation through weight space.
Update reinterpret(const Update& d, Interpretation to);

/// Update implied by moving from prior to posterior. For orig this is the
/// asymmetric original definition; for everything else G(weight).
Update update_from_probs(Interpretation interp, Probability posterior, Probability prior);

/// Inverse of update_from_probs for a fixed prior (odds-likelihood Bayes).
Probability posterior_from_update(Probability prior, const Update& d);

LikelihoodRatio lambda_from_update(const Update& d);

/// Update from p(E|H) and p(E|~H).
Update elicit_from_conditionals(Interpretation interp, Probability e_given_h,
                                Probability e_given_not_h);

/// Update from a posterior elicited against an imagined prior of 1/2.
Update elicit_from_fifty_prior(Interpretation interp, Probability posterior);

}  // namespace deltacf
