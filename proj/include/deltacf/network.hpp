#pragma once

// Tree inference nets of binary statements. Rules point from evidence to
// hypothesis; every node is the evidence of at most one rule, so the rules
// form a single tree whose root is the ultimate hypothesis.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "deltacf/combination.hpp"
#include "deltacf/types.hpp"

namespace deltacf {

struct Node {
  std::string id;
  std::string description;
};

/// How a rule's strength was written down. Kept so that a net serializes
/// back to the numbers its author entered.
struct DeclaredStrength {
  enum class Form { lambda, delta, conditionals, weight };
  Form form = Form::weight;
  double first = 0.0;
  double second = 0.0;
  std::optional<Interpretation> interpretation;  // only for Form::delta
};

class Rule {
 public:
  static Rule from_weights(std::string evidence, std::string hypothesis, double w_present,
                           double w_absent);
  static Rule from_lambda(std::string evidence, std::string hypothesis, double l_present,
                          double l_absent);
  static Rule from_delta(std::string evidence, std::string hypothesis, Interpretation interp,
                         double d_present, double d_absent);
  static Rule from_conditionals(std::string evidence, std::string hypothesis,
                                double e_given_h, double e_given_not_h);

  const std::string& evidence() const noexcept { return evidence_; }
  const std::string& hypothesis() const noexcept { return hypothesis_; }
  std::string id() const { return evidence_ + "->" + hypothesis_; }

  /// ln λ(H,E) and ln λ(H,~E).
  WeightOfEvidence w_present() const noexcept { return w_present_; }
  WeightOfEvidence w_absent() const noexcept { return w_absent_; }
  const DeclaredStrength& declared() const noexcept { return declared_; }

  bool is_zero_strength() const noexcept {
    return w_present_.value() == 0.0 && w_absent_.value() == 0.0;
  }
  bool is_coherent() const noexcept;
  /// Rules written as mycin-legacy CFs are not held to the coherence invariant.
  bool exempt_from_coherence() const noexcept;

  /// The rule's (Δ(H,E), Δ(H,~E)) under `interp`. For mycin-legacy the CFs
  /// are the numbers as declared (through the cf map when the rule was not
  /// written as Δs). Throws incoherent_pair for incoherent probabilistic use.
  RuleStrengthPair strengths(Interpretation interp) const;

 private:
  Rule(std::string evidence, std::string hypothesis, double w_present, double w_absent,
       DeclaredStrength declared);

  std::string evidence_;
  std::string hypothesis_;
  WeightOfEvidence w_present_;
  WeightOfEvidence w_absent_;
  DeclaredStrength declared_;
};

struct Network {
  std::vector<Node> nodes;
  std::vector<Rule> rules;
  std::optional<Probability> root_prior;
};

struct Violation {
  std::string subject;  // node or rule id
  std::string kind;     // e.g. "multiple paths", "incoherent strengths"
  std::string detail;
};

/// Empty iff ids are unique, rules reference known nodes, the rules form a
/// single tree and every rule is coherent.
std::vector<Violation> validate(const Network& net);

/// Read-only navigation over a validated net.
class Topology {
 public:
  /// Throws invalid_network if validate(net) is not empty.
  explicit Topology(const Network& net);

  const std::string& root() const noexcept { return root_; }
  bool is_leaf(const std::string& id) const;
  bool contains(const std::string& id) const { return rule_into_.count(id) != 0; }
  /// Rules whose hypothesis is `id`, sorted by evidence id.
  const std::vector<const Rule*>& rules_into(const std::string& id) const;
  /// The rule in which `id` is the evidence; nullptr for the root.
  const Rule* rule_from(const std::string& id) const;
  /// Root first; each node after its hypothesis; siblings by id.
  const std::vector<std::string>& top_down_order() const noexcept { return order_; }
  /// Leaves in the subtree rooted at `id` (including `id` itself if a leaf).
  std::vector<std::string> leaves_below(const std::string& id) const;

 private:
  std::string root_;
  std::map<std::string, std::vector<const Rule*>> rule_into_;
  std::map<std::string, const Rule*> rule_from_;
  std::vector<std::string> order_;
};

/// p(E|H) and p(E|~H) recovered from a rule's weight pair; nullopt for
/// zero-strength rules, which leave them undetermined.
struct Conditionals {
  double e_given_h;
  double e_given_not_h;
};
std::optional<Conditionals> recover_conditionals(const Rule& rule);

struct UpdateFinding {
  double value;
  std::optional<Interpretation> interpretation;  // defaults to the propagation interpretation
};
struct ProbabilityPairFinding {
  Probability prior;
  Probability posterior;
};
using Finding = std::variant<UpdateFinding, ProbabilityPairFinding>;
using Findings = std::map<std::string, Finding>;

/// One rule's share of its hypothesis' update.
struct Contribution {
  std::string rule_id;
  std::string hypothesis;
  std::string evidence;
  Update child_update;
  Update sequential_result;
  Update running;  // parallel combination of this and earlier contributions
};

struct PropagationReport {
  Interpretation interpretation;
  std::map<std::string, Update> updates;
  std::vector<Contribution> contributions;
};

/// Bottom-up propagation. Leaves take their findings (0 when unobserved);
/// every rule contributes sequential(strengths, child update) and the
/// contributions into a node are combined in parallel.
PropagationReport propagate(const Network& net, const Findings& findings, Interpretation interp);

using PriorMap = std::map<std::string, std::optional<Probability>>;

/// Priors of all nodes implied by the root prior; nodes below a
/// zero-strength rule are unconstrained (nullopt).
PriorMap derive_priors(const Network& net, Probability root_prior);

struct NodePosterior {
  std::optional<Probability> prior;
  std::optional<Probability> posterior;  // given the findings beneath the node
  Update update;
};

struct PosteriorReport {
  PropagationReport propagation;
  std::map<std::string, NodePosterior> nodes;
  std::vector<std::string> warnings;
};

/// Derived priors combined with propagated updates. `root_prior` overrides
/// the net's own; one of them must be present.
PosteriorReport posterior_report(const Network& net, const Findings& findings,
                                 Interpretation interp,
                                 std::optional<Probability> root_prior = std::nullopt);

}  // namespace deltacf
