#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "deltacf/interpretation.hpp"
#include "deltacf/network.hpp"
#include "deltacf/network_io.hpp"
#include "golden.hpp"

using namespace deltacf;

namespace {

const auto kDelta1 = Interpretation::delta1();
const auto kMycin = Interpretation::mycin_legacy();

Network extrovert() { return load_network(golden::data("nets/extrovert.json")); }

Findings certain(std::initializer_list<std::pair<const char*, double>> xs) {
  Findings f;
  for (const auto& [id, v] : xs) f.emplace(id, UpdateFinding{v, std::nullopt});
  return f;
}

bool has_violation(const Network& net, const std::string& kind) {
  const auto vs = validate(net);
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == kind; });
}

Network single_rule(double l, double lp) {
  Network net;
  net.nodes = {{"H", ""}, {"E", ""}};
  net.rules = {Rule::from_lambda("E", "H", l, lp)};
  return net;
}

}  // namespace

TEST_CASE("validate examples") {
  CHECK(validate(extrovert()).empty());

  Network shared;
  shared.nodes = {{"H1", ""}, {"H2", ""}, {"E", ""}};
  shared.rules = {Rule::from_lambda("E", "H1", 2, 0.5), Rule::from_lambda("E", "H2", 2, 0.5)};
  CHECK(has_violation(shared, "multiple paths"));

  Network incoherent = single_rule(1, 1);
  incoherent.rules = {Rule::from_weights("E", "H", 1.2, 0.3)};
  CHECK(has_violation(incoherent, "incoherent strengths"));

  Network cycle;
  cycle.nodes = {{"A", ""}, {"B", ""}, {"R", ""}, {"C", ""}};
  cycle.rules = {Rule::from_lambda("A", "B", 2, 0.5), Rule::from_lambda("B", "A", 2, 0.5),
                 Rule::from_lambda("C", "R", 2, 0.5)};
  CHECK(has_violation(cycle, "cycle"));

  Network dup = single_rule(2, 0.5);
  dup.nodes.push_back({"E", "again"});
  CHECK(has_violation(dup, "duplicate id"));

  Network unknown = single_rule(2, 0.5);
  unknown.rules.push_back(Rule::from_lambda("X", "H", 2, 0.5));
  CHECK(has_violation(unknown, "unknown node"));

  Network loop = single_rule(2, 0.5);
  loop.rules.push_back(Rule::from_lambda("H", "H", 2, 0.5));
  CHECK(has_violation(loop, "self loop"));

  Network forest;
  forest.nodes = {{"A", ""}, {"B", ""}, {"C", ""}, {"D", ""}};
  forest.rules = {Rule::from_lambda("B", "A", 2, 0.5), Rule::from_lambda("D", "C", 2, 0.5)};
  CHECK(has_violation(forest, "multiple roots"));

  CHECK_THROWS_AS(Topology{forest}, Error);
}

TEST_CASE("legacy rules are exempt from coherence") {
  const auto net = load_network(golden::data("nets/legacy.json"));
  CHECK(validate(net).empty());
  CHECK_THROWS_AS(propagate(net, {}, kDelta1), Error);
}

TEST_CASE("propagate: extrovert net") {
  const auto net = extrovert();
  const auto both = certain({{"parties", 1.0}, {"backpacking", 1.0}});
  const auto back = certain({{"backpacking", 1.0}});

  const auto d = propagate(net, both, kDelta1);
  CHECK(std::fabs(d.updates.at("extrovert").value() - golden::value("extrovert_both_extrovert")) <=
        1e-12);
  CHECK(std::fabs(d.updates.at("social-work").value() -
                  golden::value("extrovert_both_social_work")) <= 1e-12);

  const auto m = propagate(net, both, kMycin);
  CHECK(m.updates.at("extrovert").value() == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(std::fabs(m.updates.at("social-work").value() - 0.24) <= 1e-15);

  CHECK(propagate(net, back, kMycin).updates.at("social-work").value() == 0.0);
  CHECK(std::fabs(propagate(net, back, kDelta1).updates.at("social-work").value() -
                  golden::value("extrovert_backpacking_social_work")) <= 1e-12);

  for (const auto& [id, u] : propagate(net, {}, kDelta1).updates) CHECK(u.value() == 0.0);
}

TEST_CASE("propagate: explanation table") {
  const auto report = propagate(extrovert(), certain({{"parties", 1.0}, {"backpacking", 1.0}}),
                                kDelta1);
  REQUIRE(report.contributions.size() == 3);
  // Contributions into a node are listed by evidence id.
  CHECK(report.contributions[0].rule_id == "backpacking->extrovert");
  CHECK(report.contributions[1].rule_id == "parties->extrovert");
  CHECK(report.contributions[2].rule_id == "extrovert->social-work");
  CHECK(report.contributions[0].sequential_result.value() == -0.5);
  CHECK(report.contributions[1].running.value() ==
        report.updates.at("extrovert").value());
  CHECK(report.contributions[2].running.value() == report.updates.at("social-work").value());
}

TEST_CASE("propagate: chain and fan-in nets against exact enumeration") {
  const auto chain = load_network(golden::data("nets/chain.json"));
  const auto cf = load_findings(golden::data("findings/chain_assay.json"));
  const auto cr = propagate(chain, cf, kDelta1);
  for (const char* id : {"disease", "marker", "assay"}) {
    CAPTURE(id);
    CHECK(std::fabs(cr.updates.at(id).value() - golden::value(std::string("chain_assay_") + id)) <=
          1e-9);
  }

  const auto fan = load_network(golden::data("nets/fan_in.json"));
  const auto ff = load_findings(golden::data("findings/fan_in_mixed.json"));
  CHECK(std::fabs(propagate(fan, ff, kDelta1).updates.at("rain").value() -
                  golden::value("fan_in_mixed_rain")) <= 1e-9);
  const auto all = certain({{"wet-grass", 1.0}, {"clouds", 1.0}, {"puddles", -1.0}});
  const auto post = posterior_report(fan, all, kDelta1);
  CHECK(std::fabs(post.nodes.at("rain").update.value() -
                  golden::value("fan_in_certain_rain_update")) <= 1e-9);
  CHECK(std::fabs(post.nodes.at("rain").posterior->value() -
                  golden::value("fan_in_certain_rain_posterior")) <= 1e-9);
}

TEST_CASE("propagate: findings must be on leaves") {
  const auto net = extrovert();
  CHECK_THROWS_AS(propagate(net, certain({{"extrovert", 0.5}}), kDelta1), Error);
  CHECK_THROWS_AS(propagate(net, certain({{"nobody", 0.5}}), kDelta1), Error);
  CHECK_THROWS_AS(propagate(net, {}, Interpretation::orig()), Error);
}

TEST_CASE("propagate: certain conflict names the node") {
  Network net;
  net.nodes = {{"H", ""}, {"A", ""}, {"B", ""}};
  net.rules = {Rule::from_delta("A", "H", kDelta1, 1.0, -0.5),
               Rule::from_delta("B", "H", kDelta1, -1.0, 0.5)};
  try {
    propagate(net, certain({{"A", 1.0}, {"B", 1.0}}), kDelta1);
    FAIL("expected a conflict");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::conflicting_evidence);
    CHECK(std::string(e.what()).find("'H'") != std::string::npos);
  }
}

TEST_CASE("propagate: findings under another interpretation are converted") {
  Network net = single_rule(3.0, 1.0 / 3.0);
  Findings f;
  f.emplace("E", UpdateFinding{0.5, Interpretation::cf()});
  const auto r = propagate(net, f, kDelta1);
  CHECK(r.updates.at("E").value() ==
        doctest::Approx(reinterpret(Update(0.5, Interpretation::cf()), kDelta1).value()));
}

TEST_CASE("propagation is independent of rule declaration order") {
  std::mt19937_64 rng(3);
  const auto base_net = load_network(golden::data("nets/fan_in.json"));
  const auto findings = certain({{"wet-grass", 1.0}, {"clouds", -0.4}, {"puddles", 0.3}});
  const auto base = propagate(base_net, findings, kDelta1);
  for (int t = 0; t < 20; ++t) {
    auto net = base_net;
    std::shuffle(net.rules.begin(), net.rules.end(), rng);
    std::shuffle(net.nodes.begin(), net.nodes.end(), rng);
    const auto r = propagate(net, findings, kDelta1);
    for (const auto& [id, u] : base.updates) CHECK(r.updates.at(id).value() == u.value());
  }
}

TEST_CASE("a leaf's contribution ignores sibling findings") {
  const auto net = load_network(golden::data("nets/fan_in.json"));
  const auto alone = propagate(net, certain({{"clouds", 0.7}}), kDelta1);
  const auto with = propagate(net, certain({{"clouds", 0.7}, {"wet-grass", -1.0}}), kDelta1);
  const auto pick = [](const PropagationReport& r) {
    for (const auto& c : r.contributions) {
      if (c.evidence == "clouds") return c.sequential_result.value();
    }
    return 99.0;
  };
  CHECK(std::fabs(pick(alone) - pick(with)) <= 1e-9);
}

TEST_CASE("derive_priors examples") {
  const auto priors = derive_priors(single_rule(3.0, 1.0 / 3.0), Probability(0.5));
  CHECK(priors.at("E")->value() == doctest::Approx(0.5).epsilon(1e-15));

  const auto c = recover_conditionals(Rule::from_lambda("E", "H", 19.0, 0.6));
  REQUIRE(c);
  CHECK(c->e_given_h == doctest::Approx(19.0 * 0.4 / 18.4).epsilon(1e-14));
  CHECK(c->e_given_not_h == doctest::Approx(0.4 / 18.4).epsilon(1e-14));
  CHECK(c->e_given_h / c->e_given_not_h == doctest::Approx(19.0).epsilon(1e-14));
  CHECK((1 - c->e_given_h) / (1 - c->e_given_not_h) == doctest::Approx(0.6).epsilon(1e-14));

  Network root_only;
  root_only.nodes = {{"R", ""}};
  const auto rp = derive_priors(root_only, Probability(0.3));
  CHECK(rp.size() == 1);
  CHECK(rp.at("R")->value() == 0.3);

  CHECK_FALSE(derive_priors(single_rule(1.0, 1.0), Probability(0.5)).at("E").has_value());
  CHECK_THROWS_AS(derive_priors(single_rule(3, 0.5), Probability(1.0)), Error);

  const auto chain = derive_priors(load_network(golden::data("nets/chain.json")),
                                   Probability(0.1));
  CHECK(std::fabs(chain.at("marker")->value() - golden::value("chain_prior_marker")) <= 1e-12);
  CHECK(std::fabs(chain.at("assay")->value() - golden::value("chain_prior_assay")) <= 1e-12);
}

TEST_CASE("derived priors stay strictly inside (0,1)") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int i = 0; i < 500; ++i) {
    double a = u(rng);
    double b = u(rng);
    if (a == b) continue;
    Network net;
    net.nodes = {{"H", ""}, {"E", ""}};
    net.rules = {Rule::from_conditionals("E", "H", a, b)};
    const double p = derive_priors(net, Probability(u(rng))).at("E")->value();
    CHECK(p > 0.0);
    CHECK(p < 1.0);
  }
}

TEST_CASE("posterior_report examples") {
  const auto net = single_rule(3.0, 1.0 / 3.0);
  const auto r = posterior_report(net, certain({{"E", 1.0}}), kDelta1, Probability(0.5));
  CHECK(r.nodes.at("H").posterior->value() == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(r.nodes.at("E").posterior->value() == 1.0);

  const auto none = posterior_report(extrovert(), {}, kDelta1);
  for (const auto& [id, n] : none.nodes) CHECK(n.posterior->value() == n.prior->value());

  CHECK_THROWS_AS(posterior_report(net, {}, kDelta1), Error);

  const auto fan = posterior_report(load_network(golden::data("nets/fan_in.json")),
                                    load_findings(golden::data("findings/fan_in_mixed.json")),
                                    kDelta1);
  REQUIRE(fan.warnings.size() == 1);
  CHECK(fan.warnings[0].find("clouds") != std::string::npos);
  CHECK(std::fabs(fan.nodes.at("clouds").prior->value() - golden::value("fan_in_prior_clouds")) <=
        1e-12);
}

TEST_CASE("rule strengths per interpretation") {
  const auto r = Rule::from_delta("E", "H", kDelta1, 0.5, -0.2);
  CHECK(r.w_present().value() == doctest::Approx(std::log(3.0)).epsilon(1e-15));
  const auto as_cf = r.strengths(Interpretation::cf());
  CHECK(as_cf.on_present().value() == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  const auto as_mycin = r.strengths(kMycin);
  CHECK(as_mycin.on_present().value() == 0.5);
  CHECK(as_mycin.on_absent().value() == -0.2);
  CHECK(r.strengths(kDelta1).on_present().value() == 0.5);
  CHECK_THROWS_AS(Rule::from_lambda("E", "H", -1.0, 0.5), Error);
}
