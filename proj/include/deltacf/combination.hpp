#pragma once

// Parallel and sequential combination of updates: the legacy MYCIN
// functions, the generic weight-space route for every G-generated
// interpretation, and the likelihood-ratio form of sequential combination.

#include <span>

#include "deltacf/types.hpp"

namespace deltacf {

/// True when two strengths are zero together or strictly opposite in sign.
bool coherent_signs(double present, double absent) noexcept;

/// The pair (Δ(H,E), Δ(H,~E)) attached to a rule.
class RuleStrengthPair {
 public:
  /// Throws incoherent_pair unless the pair is coherent; pairs tagged
  /// mycin-legacy are not checked. Both updates must share an interpretation.
  RuleStrengthPair(Update on_present, Update on_absent);

  const Update& on_present() const noexcept { return on_present_; }
  const Update& on_absent() const noexcept { return on_absent_; }
  Interpretation interpretation() const noexcept { return on_present_.interpretation(); }

 private:
  Update on_present_;
  Update on_absent_;
};

/// MYCIN's parallel function. Operand tags are ignored; the result is
/// tagged mycin-legacy.
Update parallel_mycin(const Update& a, const Update& b);

/// G(G^-1(a) + G^-1(b)) for the operands' shared interpretation. delta1
/// uses the equivalent (a + b) / (1 + ab).
Update parallel_generic(const Update& a, const Update& b);

/// parallel_mycin for mycin-legacy operands, parallel_generic otherwise.
Update parallel(const Update& a, const Update& b);

/// Left fold of `parallel` in input order; an empty list yields 0.
Update parallel_fold(std::span<const Update> updates, Interpretation interp);

/// Sequential Bayesian updating with the original (asymmetric) definition,
/// applied left to right. The result depends on the order of `updates`.
Probability parallel_orig_demo(Probability prior, std::span<const Update> updates);

/// CF(H,E) * max(0, CF(E,E')).
Update sequential_mycin(const Update& d_he, const Update& u);

/// λ(H,E') from λ(H,E), λ(H,~E) and λ(E,E'). Infinite and zero ratios are
/// handled as limits.
LikelihoodRatio sequential_lambda(LikelihoodRatio l_he, LikelihoodRatio l_h_not_e,
                                  LikelihoodRatio l_e_ep);

/// Closed form of sequential combination for delta1.
Update sequential_delta1(const Update& d_he, const Update& d_h_not_e, const Update& u);

/// Sequential combination for any probabilistic interpretation, through
/// likelihood ratios.
Update sequential_generic(const RuleStrengthPair& pair, const Update& u);

/// sequential_mycin (ignoring on_absent) for mycin-legacy pairs, the
/// closed form for delta1, sequential_generic otherwise.
Update sequential(const RuleStrengthPair& pair, const Update& u);

}  // namespace deltacf
