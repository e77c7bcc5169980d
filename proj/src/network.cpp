#include "deltacf/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "deltacf/interpretation.hpp"

namespace deltacf {

namespace {

using Kind = Interpretation::Kind;

std::string format_number(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

double checked_log(double x, const char* what) {
  if (!(x >= 0.0)) {
    throw Error(ErrorCode::domain, std::string(what) + " must be nonnegative: " + format_number(x));
  }
  return std::log(x);
}

double log_ratio_of_probs(double a, double b, const char* what) {
  if (a == 0.0 && b == 0.0) {
    throw Error(ErrorCode::evidence_impossible, std::string("evidence impossible: ") + what);
  }
  if (a == b) return 0.0;
  if (a == 0.0) return -kInfinity;
  if (b == 0.0) return kInfinity;
  return std::log(a) - std::log(b);
}

}  // namespace

// ---------------------------------------------------------------- Rule

Rule::Rule(std::string evidence, std::string hypothesis, double w_present, double w_absent,
           DeclaredStrength declared)
    : evidence_(std::move(evidence)),
      hypothesis_(std::move(hypothesis)),
      w_present_(w_present),
      w_absent_(w_absent),
      declared_(declared) {}

Rule Rule::from_weights(std::string evidence, std::string hypothesis, double w_present,
                        double w_absent) {
  DeclaredStrength d{DeclaredStrength::Form::weight, w_present, w_absent, std::nullopt};
  return Rule(std::move(evidence), std::move(hypothesis), w_present, w_absent, d);
}

Rule Rule::from_lambda(std::string evidence, std::string hypothesis, double l_present,
                       double l_absent) {
  DeclaredStrength d{DeclaredStrength::Form::lambda, l_present, l_absent, std::nullopt};
  return Rule(std::move(evidence), std::move(hypothesis), checked_log(l_present, "lambda"),
              checked_log(l_absent, "lambda"), d);
}

Rule Rule::from_delta(std::string evidence, std::string hypothesis, Interpretation interp,
                      double d_present, double d_absent) {
  if (!interp.has_weight_map()) {
    throw Error(ErrorCode::unsupported_interpretation,
                "rule strengths cannot be given under " + interp.name());
  }
  DeclaredStrength d{DeclaredStrength::Form::delta, d_present, d_absent, interp};
  const double wp = g_invert(Update(d_present, interp)).value();
  const double wa = g_invert(Update(d_absent, interp)).value();
  return Rule(std::move(evidence), std::move(hypothesis), wp, wa, d);
}

Rule Rule::from_conditionals(std::string evidence, std::string hypothesis, double e_given_h,
                             double e_given_not_h) {
  const Probability a(e_given_h);
  const Probability b(e_given_not_h);
  DeclaredStrength d{DeclaredStrength::Form::conditionals, e_given_h, e_given_not_h,
                     std::nullopt};
  const double wp = log_ratio_of_probs(a.value(), b.value(), "p(E|H) = p(E|~H) = 0");
  const double wa =
      log_ratio_of_probs(1.0 - a.value(), 1.0 - b.value(), "p(~E|H) = p(~E|~H) = 0");
  return Rule(std::move(evidence), std::move(hypothesis), wp, wa, d);
}

bool Rule::is_coherent() const noexcept {
  return coherent_signs(w_present_.value(), w_absent_.value());
}

bool Rule::exempt_from_coherence() const noexcept {
  return declared_.interpretation &&
         declared_.interpretation->kind() == Kind::mycin_legacy;
}

RuleStrengthPair Rule::strengths(Interpretation interp) const {
  const bool as_declared = declared_.form == DeclaredStrength::Form::delta &&
                           (interp.kind() == Kind::mycin_legacy ||
                            declared_.interpretation == interp);
  if (as_declared) {
    return RuleStrengthPair(Update(declared_.first, interp), Update(declared_.second, interp));
  }
  if (!coherent_signs(w_present_.value(), w_absent_.value()) &&
      interp.kind() != Kind::mycin_legacy) {
    throw Error(ErrorCode::incoherent_pair,
                "rule " + id() + " has incoherent strengths for " + interp.name());
  }
  return RuleStrengthPair(g_apply(interp, w_present_), g_apply(interp, w_absent_));
}

// ---------------------------------------------------------------- validate

std::vector<Violation> validate(const Network& net) {
  std::vector<Violation> out;
  std::set<std::string> ids;
  for (const auto& n : net.nodes) {
    if (n.id.empty()) {
      out.push_back({"<node>", "invalid id", "node id must not be empty"});
    } else if (!ids.insert(n.id).second) {
      out.push_back({n.id, "duplicate id", "node id declared more than once"});
    }
  }

  std::map<std::string, std::vector<const Rule*>> rules_from;
  for (const auto& r : net.rules) {
    bool known = true;
    for (const auto* end : {&r.evidence(), &r.hypothesis()}) {
      if (!ids.count(*end)) {
        out.push_back({r.id(), "unknown node", "rule references undeclared node '" + *end + "'"});
        known = false;
      }
    }
    if (r.evidence() == r.hypothesis()) {
      out.push_back({r.id(), "self loop", "evidence and hypothesis are the same node"});
      known = false;
    }
    if (!r.is_coherent() && !r.exempt_from_coherence()) {
      out.push_back({r.id(), "incoherent strengths",
                     "w_present = " + format_number(r.w_present().value()) +
                         ", w_absent = " + format_number(r.w_absent().value()) +
                         " must be both zero or of opposite sign"});
    }
    if (known) rules_from[r.evidence()].push_back(&r);
  }

  for (const auto& [id, rules] : rules_from) {
    if (rules.size() > 1) {
      std::string targets;
      for (const auto* r : rules) targets += (targets.empty() ? "" : ", ") + r->hypothesis();
      out.push_back({id, "multiple paths", "node is evidence for several hypotheses: " + targets});
    }
  }

  std::vector<std::string> roots;
  for (const auto& id : ids) {
    if (!rules_from.count(id)) roots.push_back(id);
  }
  if (!ids.empty() && roots.empty()) {
    out.push_back({"<network>", "no root", "every node is the evidence of some rule"});
  } else if (roots.size() > 1) {
    std::string list;
    for (const auto& r : roots) list += (list.empty() ? "" : ", ") + r;
    out.push_back({"<network>", "multiple roots", "the rules do not form a single tree: " + list});
  }

  std::set<std::string> reported;
  for (const auto& start : ids) {
    std::set<std::string> seen{start};
    std::string cur = start;
    while (rules_from.count(cur)) {
      cur = rules_from.at(cur).front()->hypothesis();
      if (!seen.insert(cur).second) {
        if (reported.insert(cur).second) {
          out.push_back({cur, "cycle", "rules lead from '" + cur + "' back to itself"});
        }
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- Topology

Topology::Topology(const Network& net) {
  const auto violations = validate(net);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw Error(ErrorCode::invalid_network, "invalid network: " + v.subject + ": " + v.kind +
                                                " (" + v.detail + ")");
  }
  for (const auto& n : net.nodes) rule_into_[n.id];
  for (const auto& r : net.rules) {
    rule_into_[r.hypothesis()].push_back(&r);
    rule_from_[r.evidence()] = &r;
  }
  for (auto& [id, rules] : rule_into_) {
    std::sort(rules.begin(), rules.end(),
              [](const Rule* a, const Rule* b) { return a->evidence() < b->evidence(); });
    if (!rule_from_.count(id)) root_ = id;
  }
  order_.push_back(root_);
  for (std::size_t i = 0; i < order_.size(); ++i) {
    for (const auto* r : rule_into_.at(order_[i])) order_.push_back(r->evidence());
  }
}

bool Topology::is_leaf(const std::string& id) const { return rules_into(id).empty(); }

const std::vector<const Rule*>& Topology::rules_into(const std::string& id) const {
  auto it = rule_into_.find(id);
  if (it == rule_into_.end()) throw Error(ErrorCode::domain, "unknown node '" + id + "'");
  return it->second;
}

const Rule* Topology::rule_from(const std::string& id) const {
  auto it = rule_from_.find(id);
  return it == rule_from_.end() ? nullptr : it->second;
}

std::vector<std::string> Topology::leaves_below(const std::string& id) const {
  std::vector<std::string> out;
  std::vector<std::string> stack{id};
  while (!stack.empty()) {
    auto cur = stack.back();
    stack.pop_back();
    const auto& rules = rules_into(cur);
    if (rules.empty()) out.push_back(cur);
    for (const auto* r : rules) stack.push_back(r->evidence());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- conditionals

std::optional<Conditionals> recover_conditionals(const Rule& rule) {
  const double w = rule.w_present().value();
  const double wn = rule.w_absent().value();
  if (!coherent_signs(w, wn) || (w == 0.0 && wn == 0.0)) return std::nullopt;

  const double l = std::exp(w);
  const double ln = std::exp(wn);
  // Limits of p(E|H) = l(1-l')/(l-l'), p(E|~H) = (1-l')/(l-l').
  if (std::isinf(l) && std::isinf(ln)) return std::nullopt;  // incoherent, unreachable
  if (std::isinf(l)) return Conditionals{1.0 - ln, 0.0};
  if (std::isinf(ln)) return Conditionals{l, 1.0};
  const double den = l - ln;
  const double one_minus_ln = -std::expm1(wn);
  return Conditionals{std::clamp(l * one_minus_ln / den, 0.0, 1.0),
                      std::clamp(one_minus_ln / den, 0.0, 1.0)};
}

// ---------------------------------------------------------------- propagate

namespace {

Update leaf_update(const Findings& findings, const std::string& id, Interpretation interp) {
  auto it = findings.find(id);
  if (it == findings.end()) return Update(0.0, interp);
  if (const auto* pair = std::get_if<ProbabilityPairFinding>(&it->second)) {
    return update_from_probs(interp, pair->posterior, pair->prior);
  }
  const auto& f = std::get<UpdateFinding>(it->second);
  const Interpretation declared = f.interpretation.value_or(interp);
  const Update u(f.value, declared);
  if (declared == interp) return u;
  if (!declared.has_weight_map()) {
    throw Error(ErrorCode::unsupported_interpretation,
                "finding for '" + id + "' is given under " + declared.name() +
                    ", which cannot be converted");
  }
  return reinterpret(u, interp);
}

}  // namespace

PropagationReport propagate(const Network& net, const Findings& findings, Interpretation interp) {
  if (!interp.is_probabilistic() && interp.kind() != Kind::mycin_legacy) {
    throw Error(ErrorCode::unsupported_interpretation,
                "cannot propagate under " + interp.name());
  }
  const Topology topo(net);
  for (const auto& [id, f] : findings) {
    if (!topo.contains(id)) {
      throw Error(ErrorCode::domain, "finding for unknown node '" + id + "'");
    }
    if (!topo.is_leaf(id)) {
      throw Error(ErrorCode::domain, "finding for non-leaf node '" + id + "'");
    }
  }

  PropagationReport report{interp, {}, {}};
  const auto& order = topo.top_down_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::string& id = *it;
    const auto& rules = topo.rules_into(id);
    if (rules.empty()) {
      report.updates.emplace(id, leaf_update(findings, id, interp));
      continue;
    }
    Update running(0.0, interp);
    for (const Rule* rule : rules) {
      const Update& child = report.updates.at(rule->evidence());
      const Update seq = sequential(rule->strengths(interp), child);
      try {
        running = parallel(running, seq);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::conflicting_evidence) throw;
        throw Error(ErrorCode::conflicting_evidence,
                    std::string(e.what()) + " at node '" + id + "' (rule " + rule->id() +
                        " meets certain evidence of the opposite sign)");
      }
      report.contributions.push_back(
          Contribution{rule->id(), id, rule->evidence(), child, seq, running});
    }
    report.updates.emplace(id, running);
  }
  return report;
}

// ---------------------------------------------------------------- priors

PriorMap derive_priors(const Network& net, Probability root_prior) {
  if (root_prior.certain_false() || root_prior.certain_true()) {
    throw Error(ErrorCode::domain, "root prior must lie strictly inside (0,1)");
  }
  const Topology topo(net);
  PriorMap priors;
  priors.emplace(topo.root(), root_prior);
  for (const auto& id : topo.top_down_order()) {
    if (id == topo.root()) continue;
    const Rule* rule = topo.rule_from(id);
    const auto& ph = priors.at(rule->hypothesis());
    const auto cond = recover_conditionals(*rule);
    if (!ph || !cond) {
      priors.emplace(id, std::nullopt);
      continue;
    }
    const double p = cond->e_given_h * ph->value() + cond->e_given_not_h * (1.0 - ph->value());
    priors.emplace(id, Probability(std::clamp(p, 0.0, 1.0)));
  }
  return priors;
}

PosteriorReport posterior_report(const Network& net, const Findings& findings,
                                 Interpretation interp, std::optional<Probability> root_prior) {
  const auto prior = root_prior ? root_prior : net.root_prior;
  if (!prior) throw Error(ErrorCode::domain, "no root prior given and none in the network");

  PosteriorReport out{propagate(net, findings, interp), {}, {}};
  const auto priors = derive_priors(net, *prior);
  for (const auto& [id, update] : out.propagation.updates) {
    const auto& p = priors.at(id);
    std::optional<Probability> post = p;
    if (p && update.value() != 0.0) post = posterior_from_update(*p, update);
    out.nodes.emplace(id, NodePosterior{p, post, update});
  }
  for (const auto& [id, f] : findings) {
    const auto* pair = std::get_if<ProbabilityPairFinding>(&f);
    const auto& p = priors.at(id);
    if (pair && p && std::fabs(pair->prior.value() - p->value()) > kTolerance) {
      std::ostringstream os;
      os << "finding for '" << id << "' uses prior " << pair->prior.value()
         << " but the network implies " << p->value()
         << "; the update was computed from the finding's own pair";
      out.warnings.push_back(os.str());
    }
  }
  return out;
}

}  // namespace deltacf
