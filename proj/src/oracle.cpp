#include "deltacf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "deltacf/combination.hpp"
#include "deltacf/interpretation.hpp"

namespace deltacf {

JointModel::JointModel(std::vector<std::string> variables, std::vector<double> table)
    : variables_(std::move(variables)), table_(std::move(table)) {
  if (variables_.size() > kMaxVariables) {
    throw Error(ErrorCode::size_cap, "joint model limited to " + std::to_string(kMaxVariables) +
                                         " variables, got " + std::to_string(variables_.size()));
  }
  if (table_.size() != (std::size_t{1} << variables_.size())) {
    throw Error(ErrorCode::domain, "joint table size does not match 2^variables");
  }
  if (std::any_of(table_.begin(), table_.end(), [](double x) { return !(x >= 0.0); })) {
    throw Error(ErrorCode::domain, "joint table has a negative entry");
  }
  const double total = std::accumulate(table_.begin(), table_.end(), 0.0);
  if (std::fabs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::domain, "joint table does not sum to 1");
  }
}

std::size_t JointModel::index_of(std::string_view variable) const {
  auto it = std::find(variables_.begin(), variables_.end(), variable);
  if (it == variables_.end()) {
    throw Error(ErrorCode::domain, "unknown variable '" + std::string(variable) + "'");
  }
  return static_cast<std::size_t>(it - variables_.begin());
}

double JointModel::mass(const Assignment& partial) const {
  std::size_t care = 0;
  std::size_t want = 0;
  for (const auto& [name, value] : partial) {
    const std::size_t bit = std::size_t{1} << index_of(name);
    care |= bit;
    if (value) want |= bit;
  }
  double sum = 0.0;
  for (std::size_t row = 0; row < table_.size(); ++row) {
    if ((row & care) == want) sum += table_[row];
  }
  return sum;
}

std::string observation_variable(const std::string& leaf) { return leaf + "'"; }

JointModel build_joint(const Network& net, Probability root_prior,
                       const std::map<std::string, ObservationModel>& observations) {
  const Topology topo(net);
  std::vector<std::string> vars = topo.top_down_order();
  const std::size_t node_count = vars.size();
  for (const auto& [leaf, obs] : observations) {
    if (!topo.contains(leaf)) throw Error(ErrorCode::domain, "unknown node '" + leaf + "'");
    vars.push_back(observation_variable(leaf));
  }
  if (vars.size() > JointModel::kMaxVariables) {
    throw Error(ErrorCode::size_cap, "net too large for enumeration: " +
                                         std::to_string(vars.size()) + " variables");
  }

  // Per variable: index of its parent and (p(x|parent), p(x|~parent)).
  struct Factor {
    std::size_t parent;
    double given_true;
    double given_false;
  };
  std::vector<Factor> factors(vars.size());
  auto position = [&](const std::string& id) {
    return static_cast<std::size_t>(std::find(vars.begin(), vars.end(), id) - vars.begin());
  };
  for (std::size_t i = 1; i < node_count; ++i) {
    const Rule* rule = topo.rule_from(vars[i]);
    const auto cond = recover_conditionals(*rule).value_or(Conditionals{0.5, 0.5});
    factors[i] = {position(rule->hypothesis()), cond.e_given_h, cond.e_given_not_h};
  }
  std::size_t k = node_count;
  for (const auto& [leaf, obs] : observations) {
    factors[k++] = {position(leaf), Probability(obs.given_true).value(),
                    Probability(obs.given_false).value()};
  }

  const double p0 = root_prior.value();
  std::vector<double> table(std::size_t{1} << vars.size());
  for (std::size_t row = 0; row < table.size(); ++row) {
    double p = (row & 1) ? p0 : 1.0 - p0;
    for (std::size_t i = 1; i < vars.size() && p > 0.0; ++i) {
      const bool parent = (row >> factors[i].parent) & 1;
      const double on = parent ? factors[i].given_true : factors[i].given_false;
      p *= ((row >> i) & 1) ? on : 1.0 - on;
    }
    table[row] = p;
  }
  return JointModel(std::move(vars), std::move(table));
}

Probability exact_posterior(const JointModel& jm, const Assignment& evidence,
                            std::string_view query) {
  const double denom = jm.mass(evidence);
  if (!(denom > 0.0)) {
    throw Error(ErrorCode::zero_probability_evidence, "evidence has probability zero");
  }
  Assignment with_query = evidence;
  auto it = with_query.find(query);
  if (it != with_query.end()) return Probability(it->second ? 1.0 : 0.0);
  with_query.emplace(std::string(query), true);
  return Probability(std::clamp(jm.mass(with_query) / denom, 0.0, 1.0));
}

double check_propagation(const Network& net, const std::map<std::string, bool>& findings,
                         Probability root_prior, Interpretation interp) {
  Findings certain;
  for (const auto& [id, value] : findings) {
    certain.emplace(id, UpdateFinding{value ? 1.0 : -1.0, std::nullopt});
  }
  const auto report = posterior_report(net, certain, interp, root_prior);
  const auto jm = build_joint(net, root_prior);
  const Topology topo(net);

  double worst = 0.0;
  for (const auto& [id, node] : report.nodes) {
    if (!node.posterior) continue;
    Assignment evidence;
    for (const auto& leaf : topo.leaves_below(id)) {
      auto it = findings.find(leaf);
      if (it != findings.end()) evidence.emplace(leaf, it->second);
    }
    const double exact = exact_posterior(jm, evidence, id).value();
    worst = std::max(worst, std::fabs(node.posterior->value() - exact));
  }
  return worst;
}

double check_sequential(const Network& net, Probability root_prior, const std::string& leaf,
                        ObservationModel observation) {
  const Topology topo(net);
  const Rule* rule = topo.rule_from(leaf);
  if (!rule || !topo.is_leaf(leaf)) {
    throw Error(ErrorCode::domain, "check_sequential needs a leaf with a rule: '" + leaf + "'");
  }
  const auto& h = rule->hypothesis();
  const auto jm = build_joint(net, root_prior, {{leaf, observation}});
  const auto prior_h = derive_priors(net, root_prior).at(h);
  if (!prior_h) return 0.0;

  const auto delta1 = Interpretation::delta1();
  const auto pair = rule->strengths(delta1);
  const LikelihoodRatio l_he(std::exp(rule->w_present().value()));
  const LikelihoodRatio l_hne(std::exp(rule->w_absent().value()));

  double worst = 0.0;
  for (const bool seen : {true, false}) {
    const double a = seen ? observation.given_true : 1.0 - observation.given_true;
    const double b = seen ? observation.given_false : 1.0 - observation.given_false;
    const Update u = elicit_from_conditionals(delta1, Probability(a), Probability(b));
    const double l_eep = b == 0.0 ? kInfinity : a / b;

    const Update by_closed_form = sequential_delta1(pair.on_present(), pair.on_absent(), u);
    const auto l = sequential_lambda(l_he, l_hne, LikelihoodRatio(l_eep));
    const Update by_lambda = g_apply(delta1, WeightOfEvidence(std::log(l.value())));

    const auto exact_post = exact_posterior(jm, {{observation_variable(leaf), seen}}, h);
    const Update exact = update_from_probs(delta1, exact_post, *prior_h);

    worst = std::max({worst, std::fabs(by_closed_form.value() - exact.value()),
                      std::fabs(by_lambda.value() - exact.value()),
                      std::fabs(posterior_from_update(*prior_h, by_closed_form).value() -
                                exact_post.value())});
  }
  return worst;
}

double check_modularity(const JointModel& jm, std::string_view hypothesis, std::string_view e1,
                        std::string_view e2) {
  const auto delta1 = Interpretation::delta1();
  const std::string h(hypothesis);
  const double p_h = exact_posterior(jm, {}, h).value();
  double worst = 0.0;
  for (const bool v1 : {true, false}) {
    const Assignment only1{{std::string(e1), v1}};
    if (!(jm.mass(only1) > 0.0)) continue;
    const auto plain =
        update_from_probs(delta1, exact_posterior(jm, only1, h), Probability(p_h));
    for (const bool v2 : {true, false}) {
      const Assignment only2{{std::string(e2), v2}};
      const Assignment both{{std::string(e1), v1}, {std::string(e2), v2}};
      if (!(jm.mass(both) > 0.0)) continue;
      const auto in_context = update_from_probs(delta1, exact_posterior(jm, both, h),
                                                exact_posterior(jm, only2, h));
      worst = std::max(worst, std::fabs(in_context.value() - plain.value()));
    }
  }
  return worst;
}

Network random_tree_network(std::mt19937_64& rng, int node_count) {
  if (node_count < 1) throw Error(ErrorCode::domain, "node_count must be positive");
  std::uniform_real_distribution<double> prob(0.05, 0.95);
  Network net;
  for (int i = 0; i < node_count; ++i) {
    net.nodes.push_back({"n" + std::to_string(i), ""});
  }
  for (int i = 1; i < node_count; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    const int h = parent(rng);
    double a = 0.0;
    double b = 0.0;
    do {
      a = prob(rng);
      b = prob(rng);
    } while (std::fabs(a - b) < 1e-3);
    net.rules.push_back(Rule::from_conditionals("n" + std::to_string(i), "n" + std::to_string(h),
                                                a, b));
  }
  return net;
}

VerifySummary run_verification(std::uint64_t seed, int count, bool include_legacy) {
  VerifySummary s;
  s.count = count;
  std::uniform_real_distribution<double> prob(0.05, 0.95);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
    std::uniform_int_distribution<int> size(2, 6);

    // Propagation on a random tree with random certain findings.
    const Network net = random_tree_network(rng, size(rng));
    const Probability root_prior(prob(rng));
    const Topology topo(net);
    std::map<std::string, bool> findings;
    for (const auto& leaf : topo.leaves_below(topo.root())) {
      if (std::bernoulli_distribution(0.75)(rng)) findings.emplace(leaf, coin(rng));
    }
    s.propagation = std::max(s.propagation, check_propagation(net, findings, root_prior));
    if (include_legacy) {
      s.legacy_propagation =
          std::max(s.legacy_propagation,
                   check_propagation(net, findings, root_prior, Interpretation::mycin_legacy()));
    }

    // Chain E' -> E -> H.
    const Network chain = random_tree_network(rng, 2);
    const ObservationModel obs{prob(rng), prob(rng)};
    s.sequential = std::max(s.sequential, check_sequential(chain, Probability(prob(rng)), "n1", obs));

    // Two sibling leaves under one hypothesis.
    Network fan = random_tree_network(rng, 3);
    fan.rules[1] = Rule::from_conditionals("n2", "n0", fan.rules[1].declared().first,
                                           fan.rules[1].declared().second);
    const auto jm = build_joint(fan, Probability(prob(rng)));
    s.modularity = std::max(s.modularity, check_modularity(jm, "n0", "n1", "n2"));
  }
  return s;
}

}  // namespace deltacf
