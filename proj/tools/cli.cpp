#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "deltacf/combination.hpp"
#include "deltacf/compare.hpp"
#include "deltacf/elicit.hpp"
#include "deltacf/interpretation.hpp"
#include "deltacf/network.hpp"
#include "deltacf/network_io.hpp"
#include "deltacf/oracle.hpp"
#include "deltacf/report.hpp"

namespace deltacf::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

// A quantity being converted: a weight of evidence, plus whatever exact
// companions the input supplied.
struct Quantity {
  double weight = 0.0;
  std::optional<double> posterior;
  std::optional<double> prior;
  std::optional<double> lambda;
  std::optional<Update> update;
};

bool is_pair(const std::string& rep) { return rep == "prob-pair" || rep == "odds"; }

Quantity read_quantity(const std::string& from, const std::vector<double>& values,
                       Interpretation interp, std::optional<double> prior) {
  const std::size_t arity = is_pair(from) ? 2 : 1;
  if (values.size() != arity) {
    throw Error(ErrorCode::domain, from + " takes " + std::to_string(arity) + " value(s), got " +
                                       std::to_string(values.size()));
  }
  if (is_pair(from) && prior) {
    throw Error(ErrorCode::domain, "--prior cannot be combined with a " + from + " input");
  }
  Quantity q;
  q.prior = prior;
  if (from == "prob-pair" || from == "odds") {
    const bool odds = from == "odds";
    const auto post = odds ? prob_of(Odds(values[0])) : Probability(values[0]);
    const auto pri = odds ? prob_of(Odds(values[1])) : Probability(values[1]);
    q.weight = weight_from_probs(post, pri).value();
    q.posterior = post.value();
    q.prior = pri.value();
    if (odds && values[1] > 0.0 && std::isfinite(values[1])) q.lambda = values[0] / values[1];
  } else if (from == "lambda") {
    const LikelihoodRatio l(values[0]);
    q.lambda = l.value();
    q.weight = l.value() == 0.0 ? -kInfinity : std::log(l.value());
  } else if (from == "weight") {
    q.weight = WeightOfEvidence(values[0]).value();
  } else {
    const Update d(values[0], interp);
    q.update = d;
    if (interp.kind() == Interpretation::Kind::orig) {
      if (!prior) throw Error(ErrorCode::domain, "orig updates need --prior");
      const auto post = posterior_from_update(Probability(*prior), d);
      q.posterior = post.value();
      q.weight = weight_from_probs(post, Probability(*prior)).value();
    } else {
      q.weight = g_invert(d).value();
      q.lambda = lambda_from_update(d).value();
    }
  }
  return q;
}

std::vector<double> write_quantity(const std::string& to, const Quantity& q,
                                   Interpretation interp) {
  if (is_pair(to)) {
    if (!q.prior) throw Error(ErrorCode::domain, "converting to " + to + " needs --prior");
    const Probability pri(*q.prior);
    const Probability post =
        q.posterior ? Probability(*q.posterior) : logistic(extended_add(logit(pri), q.weight));
    if (to == "prob-pair") return {post.value(), pri.value()};
    return {odds_of(post).value(), odds_of(pri).value()};
  }
  if (to == "lambda") return {q.lambda ? *q.lambda : std::exp(q.weight)};
  if (to == "weight") return {q.weight};
  if (q.update && q.update->interpretation() == interp) return {q.update->value()};
  if (q.posterior && q.prior) {
    return {update_from_probs(interp, Probability(*q.posterior), Probability(*q.prior)).value()};
  }
  if (interp.kind() == Interpretation::Kind::orig) {
    if (!q.prior) throw Error(ErrorCode::domain, "orig updates need --prior");
    const Probability pri(*q.prior);
    return {update_from_probs(interp, logistic(extended_add(logit(pri), q.weight)), pri).value()};
  }
  return {g_apply(interp, WeightOfEvidence(q.weight)).value()};
}

void print_values(std::ostream& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? " " : "") << shortest(values[i]);
  out << "\n";
}

std::optional<Probability> optional_probability(const std::optional<double>& p) {
  if (!p) return std::nullopt;
  return Probability(*p);
}

Findings findings_from(const std::string& path) {
  return path.empty() ? Findings{} : load_findings(path);
}

// Certain-findings copy of the extrovert net, for the demo.
Network extrovert_net() {
  Network net;
  net.nodes = {{"backpacking", "goes backpacking"},
               {"extrovert", "is an extrovert"},
               {"parties", "enjoys parties"},
               {"social-work", "will choose social work"}};
  const auto d1 = Interpretation::delta1();
  net.rules = {Rule::from_delta("parties", "extrovert", d1, 0.8, -0.3),
               Rule::from_delta("backpacking", "extrovert", d1, -0.5, 0.2),
               Rule::from_delta("extrovert", "social-work", d1, 0.4, -0.4)};
  net.root_prior = Probability(0.5);
  return net;
}

std::string pair4(double x) { return fixed4(x) + " (" + shortest(x) + ")"; }

void demo_noncommutativity(std::ostream& out) {
  const Probability prior(0.4);
  const auto orig = Interpretation::orig();
  const Update plus(0.7, orig);
  const Update minus(-0.5, orig);
  out << "orig updates applied one after another, prior p(H) = " << fixed4(prior.value())
      << "\n";
  for (const auto& order : {std::vector<Update>{plus, minus}, std::vector<Update>{minus, plus}}) {
    out << "order (" << shortest(order[0].value()) << ", " << shortest(order[1].value()) << "):";
    Probability p = prior;
    for (const auto& u : order) {
      p = posterior_from_update(p, u);
      out << "  " << pair4(p.value());
    }
    out << "\n";
  }
  out << "final posteriors depend on the order of the evidence\n";
}

void demo_extrovert(std::ostream& out) {
  const auto net = extrovert_net();
  const Findings both = {{"parties", UpdateFinding{1.0, std::nullopt}},
                         {"backpacking", UpdateFinding{1.0, std::nullopt}}};
  const Findings backpacking = {{"backpacking", UpdateFinding{1.0, std::nullopt}}};
  const std::pair<const char*, Findings> cases[] = {{"parties and backpacking", both},
                                                    {"backpacking only", backpacking}};
  for (const auto& [label, findings] : cases) {
    out << "findings: " << label << "\n";
    for (const auto interp : {Interpretation::mycin_legacy(), Interpretation::delta1()}) {
      const auto report = propagate(net, findings, interp);
      out << "  " << interp.name() << ": extrovert " << pair4(report.updates.at("extrovert").value())
          << ", social-work " << pair4(report.updates.at("social-work").value()) << "\n";
    }
  }
}

void demo_divergence(std::ostream& out, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::domain, "--epsilon must lie in (0,1)");
  const double a = 1.0 - eps;
  const double b = -1.0 + eps / 2.0;
  out << "a = 1 - eps, b = -1 + eps/2, eps = " << shortest(eps) << "\n";
  out << "mycin:  " << pair4(parallel_mycin(Update(a), Update(b)).value()) << "  limit -0.5\n";
  out << "delta1: " << pair4(parallel_generic(Update(a), Update(b)).value())
      << "  limit -1/3\n";
}

std::vector<double> read_answers_file(const std::string& path) {
  std::istringstream is(read_text_file(path));
  std::vector<double> answers;
  std::string token;
  while (is >> token) {
    try {
      std::size_t used = 0;
      answers.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw Error(ErrorCode::domain, path + ": not a number: " + token);
    }
  }
  return answers;
}

std::vector<double> ask_answers(ElicitMode mode, const std::vector<std::string>& questions,
                                std::istream& in, std::ostream& err) {
  std::vector<double> answers;
  while (answers.size() < questions.size()) {
    err << questions[answers.size()] << "? " << std::flush;
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::io, "input ended before all answers");
    std::istringstream ls(line);
    double x = 0.0;
    std::string rest;
    if (!(ls >> x) || (ls >> rest)) {
      err << "please enter a single number\n";
      continue;
    }
    if (auto problem = check_answer(mode, answers, x)) {
      err << *problem << "\n";
      continue;
    }
    answers.push_back(x);
  }
  return answers;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Certainty-factor belief updates: conversion, combination, inference nets"};
  app.name(args.empty() ? "deltacf" : args.front());
  app.require_subcommand(1);

  std::string interp_text = "delta1";
  const auto add_interp = [&](CLI::App* cmd) {
    cmd->add_option("--interp", interp_text,
                    "delta1, deltan:N, cf, mycin (mycin-legacy) or orig")
        ->capture_default_str();
  };

  // convert
  auto* convert = app.add_subcommand("convert", "Convert between representations of an update");
  std::string from;
  std::string to;
  std::optional<double> prior;
  std::vector<double> values;
  const std::vector<std::string> reps = {"prob-pair", "odds", "lambda", "weight", "update"};
  convert->add_option("--from", from, "Input representation")->required()->check(
      CLI::IsMember(reps));
  convert->add_option("--to", to, "Output representation")->required()->check(
      CLI::IsMember(reps));
  add_interp(convert);
  convert->add_option("--prior", prior, "Prior p(H), for single-value inputs");
  convert->add_option("values", values, "prob-pair/odds: posterior prior; others: one value")
      ->required();

  // combine
  auto* combine = app.add_subcommand("combine", "Combine updates");
  combine->require_subcommand(1);
  auto* par = combine->add_subcommand("parallel", "Fold two or more updates in input order");
  auto* seq = combine->add_subcommand("sequential", "Chain a rule (d_present d_absent) with u");
  for (auto* cmd : {par, seq}) {
    add_interp(cmd);
    cmd->add_option("values", values)->required();
  }

  // net
  auto* net_cmd = app.add_subcommand("net", "Validate or propagate an inference net");
  net_cmd->require_subcommand(1);
  std::string net_path;
  std::string findings_path;
  std::optional<double> root_prior;
  auto* validate_cmd = net_cmd->add_subcommand("validate", "Report structural violations");
  auto* propagate_cmd = net_cmd->add_subcommand("propagate", "Per-node updates and explanation");
  auto* posteriors_cmd = net_cmd->add_subcommand("posteriors", "Updates plus (prior, posterior)");
  for (auto* cmd : {validate_cmd, propagate_cmd, posteriors_cmd}) {
    cmd->add_option("file", net_path, "delta-net/1 network file")->required();
  }
  for (auto* cmd : {propagate_cmd, posteriors_cmd}) {
    cmd->add_option("--findings", findings_path, "delta-net/1 findings file");
    add_interp(cmd);
  }
  posteriors_cmd->add_option("--root-prior", root_prior, "Overrides the net's root_prior");

  // elicit
  auto* elicit = app.add_subcommand("elicit", "Elicit a rule's strengths from probabilities");
  std::string mode_text = "conditionals";
  std::string answers_path;
  std::string evidence = "E";
  std::string hypothesis = "H";
  elicit->add_option("--mode", mode_text, "conditionals or fifty-prior")
      ->check(CLI::IsMember({"conditionals", "fifty-prior"}))
      ->capture_default_str();
  add_interp(elicit);
  elicit->add_option("--answers", answers_path, "File of answers; prompts on stdin otherwise");
  elicit->add_option("--evidence", evidence, "Evidence node id")->capture_default_str();
  elicit->add_option("--hypothesis", hypothesis, "Hypothesis node id")->capture_default_str();

  // compare
  auto* compare = app.add_subcommand("compare", "Emit MYCIN vs delta1 comparison CSVs");
  compare->require_subcommand(1);
  int points = 201;
  std::string out_path;
  auto* fig4 = compare->add_subcommand("figure4", "Parallel combination with first update 0.5");
  auto* fig7 = compare->add_subcommand("figure7", "Sequential combination, d_present 0.9");
  for (auto* cmd : {fig4, fig7}) {
    cmd->add_option("--points", points, "Grid size (>= 11)")->capture_default_str();
    cmd->add_option("--out", out_path, "Output CSV path; stdout when omitted");
  }

  // demo
  auto* demo = app.add_subcommand("demo", "Worked examples");
  demo->require_subcommand(1);
  double epsilon = 1e-6;
  auto* demo_nc = demo->add_subcommand("noncommutativity", "Order dependence of orig updates");
  auto* demo_ex = demo->add_subcommand("extrovert", "The extrovert / social-work net");
  auto* demo_dl = demo->add_subcommand("divergence-limit", "MYCIN vs delta1 near (+1, -1)");
  demo_dl->add_option("--epsilon", epsilon)->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "Check propagation against exact enumeration");
  std::uint64_t seed = 1;
  int count = 100;
  bool legacy = false;
  verify->add_option("--seed", seed)->capture_default_str();
  verify->add_option("--count", count)->capture_default_str()->check(CLI::NonNegativeNumber);
  verify->add_flag("--legacy", legacy, "Also report mycin-legacy deviations (informational)");

  try {
    std::vector<std::string> rest(args.rbegin(), args.rend());
    if (!rest.empty()) rest.pop_back();
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const auto interp = Interpretation::parse(interp_text);

    if (*convert) {
      const auto q = read_quantity(from, values, interp, prior);
      print_values(out, write_quantity(to, q, interp));
      return kOk;
    }

    if (*par) {
      if (values.size() < 2) throw Error(ErrorCode::domain, "parallel takes at least 2 updates");
      Update acc(values[0], interp);
      for (std::size_t i = 1; i < values.size(); ++i) acc = parallel(acc, Update(values[i], interp));
      print_values(out, {acc.value()});
      return kOk;
    }
    if (*seq) {
      if (values.size() != 3) {
        throw Error(ErrorCode::domain, "sequential takes d_present d_absent u");
      }
      const RuleStrengthPair pair(Update(values[0], interp), Update(values[1], interp));
      print_values(out, {sequential(pair, Update(values[2], interp)).value()});
      return kOk;
    }

    if (*net_cmd) {
      const auto net = load_network(net_path);
      const auto violations = validate(net);
      if (!violations.empty()) {
        out << format_violations(violations);
        return kFailed;
      }
      if (*validate_cmd) {
        out << "valid: " << net.nodes.size() << " nodes, " << net.rules.size() << " rules, root "
            << Topology(net).root() << "\n";
        return kOk;
      }
      const auto findings = findings_from(findings_path);
      if (*propagate_cmd) {
        out << format_propagation(propagate(net, findings, interp));
      } else {
        out << format_posteriors(
            posterior_report(net, findings, interp, optional_probability(root_prior)));
      }
      return kOk;
    }

    if (*elicit) {
      const auto mode = parse_elicit_mode(mode_text);
      const auto questions = elicitation_questions(mode, evidence, hypothesis);
      const auto answers = answers_path.empty() ? ask_answers(mode, questions, in, err)
                                                : read_answers_file(answers_path);
      const auto elicited = elicit_rule(mode, interp, answers, evidence, hypothesis);
      out << serialize_rule(elicited.rule);
      return kOk;
    }

    if (*compare) {
      if (points < 11) throw Error(ErrorCode::domain, "--points must be at least 11");
      const auto grid = *fig4 ? figure4_grid(points) : figure7_grid(points);
      if (out_path.empty()) {
        write_csv(out, grid);
        return kOk;
      }
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw Error(ErrorCode::io, "cannot write " + out_path);
      write_csv(file, grid);
      file.flush();
      if (!file) throw Error(ErrorCode::io, "error writing " + out_path);
      return kOk;
    }

    if (*demo) {
      if (*demo_nc) demo_noncommutativity(out);
      if (*demo_ex) demo_extrovert(out);
      if (*demo_dl) demo_divergence(out, epsilon);
      return kOk;
    }

    if (*verify) {
      if (count == 0) err << "warning: --count 0 checks nothing; passing vacuously\n";
      const auto summary = run_verification(seed, count, legacy);
      out << "cases: " << summary.count << "\n";
      out << "max propagation deviation: " << shortest(summary.propagation) << "\n";
      out << "max sequential deviation: " << shortest(summary.sequential) << "\n";
      out << "max modularity deviation: " << shortest(summary.modularity) << "\n";
      if (legacy) {
        out << "mycin-legacy propagation deviation (informational): "
            << shortest(summary.legacy_propagation) << "\n";
      }
      const bool ok = summary.passed();
      out << (ok ? "PASS" : "FAIL") << " (tolerance 1e-9)\n";
      return ok ? kOk : kFailed;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace deltacf::cli
