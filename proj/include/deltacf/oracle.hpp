#pragma once

// Brute-force exact probability for small tree nets. The joint distribution
// is materialized over all 2^k assignments and queried by enumeration; it is
// the ground truth the propagation engine is checked against.

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "deltacf/network.hpp"

namespace deltacf {

using Assignment = std::map<std::string, bool, std::less<>>;

class JointModel {
 public:
  static constexpr std::size_t kMaxVariables = 12;

  /// Row r assigns variable i the value of bit i of r. The table must have
  /// 2^k nonnegative entries summing to 1.
  JointModel(std::vector<std::string> variables, std::vector<double> table);

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  std::span<const double> table() const noexcept { return table_; }
  std::size_t index_of(std::string_view variable) const;

  /// Total probability of the rows consistent with `partial`.
  double mass(const Assignment& partial) const;

 private:
  std::vector<std::string> variables_;
  std::vector<double> table_;
};

/// p(E'|E) and p(E'|~E) for an observation variable E' hanging off a leaf.
struct ObservationModel {
  double given_true;
  double given_false;
};

/// Name of the observation variable attached to `leaf`.
std::string observation_variable(const std::string& leaf);

/// Chain-rule joint of a valid net: root prior times each node's table
/// given its hypothesis (recovered from the rule's weights), times the
/// observation tables. Conditional independence holds by construction.
JointModel build_joint(const Network& net, Probability root_prior,
                       const std::map<std::string, ObservationModel>& observations = {});

Probability exact_posterior(const JointModel& jm, const Assignment& evidence,
                            std::string_view query);

/// Max |posterior_report - exact| over all nodes, where each node is
/// conditioned on the certain findings in its own subtree.
double check_propagation(const Network& net, const std::map<std::string, bool>& findings,
                         Probability root_prior,
                         Interpretation interp = Interpretation::delta1());

/// Deviation of the sequential formulas (λ form and delta1 closed form)
/// from enumeration, for an uncertain observation on `leaf`.
double check_sequential(const Network& net, Probability root_prior, const std::string& leaf,
                        ObservationModel observation);

/// Max change of Δ1(H, E1) caused by also conditioning on E2, over both
/// values of E1 and E2. Vanishes under conditional independence.
double check_modularity(const JointModel& jm, std::string_view hypothesis, std::string_view e1,
                        std::string_view e2);

/// Random tree net with `node_count` nodes n0..n{k-1} (n0 the root) and
/// conditionals drawn uniformly from [0.05, 0.95], rejecting near-equal
/// (uninformative) pairs.
Network random_tree_network(std::mt19937_64& rng, int node_count);

struct VerifySummary {
  int count = 0;
  double propagation = 0.0;
  double sequential = 0.0;
  double modularity = 0.0;
  double legacy_propagation = 0.0;  // only filled when requested
  bool passed() const { return propagation < 1e-9 && sequential < 1e-9 && modularity < 1e-9; }
};

/// Runs the three checks over `count` random cases, seeds seed..seed+count-1.
VerifySummary run_verification(std::uint64_t seed, int count, bool include_legacy);

}  // namespace deltacf
