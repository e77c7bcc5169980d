#include "deltacf/elicit.hpp"

#include <cmath>

#include "deltacf/interpretation.hpp"

namespace deltacf {

namespace {

constexpr double kComplementTolerance = 1e-6;

}  // namespace

ElicitMode parse_elicit_mode(const std::string& text) {
  if (text == "conditionals") return ElicitMode::conditionals;
  if (text == "fifty-prior") return ElicitMode::fifty_prior;
  throw Error(ErrorCode::domain, "unknown elicitation mode: " + text);
}

std::vector<std::string> elicitation_questions(ElicitMode mode, const std::string& evidence,
                                               const std::string& hypothesis) {
  const auto& e = evidence;
  const auto& h = hypothesis;
  if (mode == ElicitMode::conditionals) {
    return {"p(" + e + " | " + h + ") = probability of " + e + " when " + h + " is true",
            "p(" + e + " | ~" + h + ") = probability of " + e + " when " + h + " is false",
            "p(~" + e + " | " + h + ") = probability " + e + " is absent when " + h + " is true",
            "p(~" + e + " | ~" + h + ") = probability " + e + " is absent when " + h +
                " is false"};
  }
  return {"Imagine p(" + h + ") = 1/2. Given " + e + ", what is p(" + h + ")?",
          "Imagine p(" + h + ") = 1/2. Given not " + e + ", what is p(" + h + ")?"};
}

std::optional<std::string> check_answer(ElicitMode mode, std::span<const double> previous,
                                        double candidate) {
  if (!(candidate >= 0.0 && candidate <= 1.0)) return "a probability must lie in [0,1]";
  const std::size_t i = previous.size();
  if (mode == ElicitMode::conditionals) {
    if (i >= 4) return "too many answers";
    if (i == 1 && previous[0] == 0.0 && candidate == 0.0) {
      return "p(E|H) and p(E|~H) cannot both be 0 (the evidence would be impossible)";
    }
    if (i == 3 && previous[2] == 0.0 && candidate == 0.0) {
      return "p(~E|H) and p(~E|~H) cannot both be 0 (the evidence would be certain)";
    }
    if (i >= 2 && std::fabs(previous[i - 2] + candidate - 1.0) > kComplementTolerance) {
      return "must equal 1 - " + std::to_string(previous[i - 2]);
    }
    return std::nullopt;
  }
  if (i >= 2) return "too many answers";
  if (i == 1) {
    const double a = previous[0] - 0.5;
    const double b = candidate - 0.5;
    const bool coherent = (a == 0.0 && b == 0.0) || (a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0);
    if (!coherent) {
      return "p(H|~E) must lie on the other side of 1/2 from p(H|E) (or both equal 1/2)";
    }
  }
  return std::nullopt;
}

ElicitedRule elicit_rule(ElicitMode mode, Interpretation interp, std::span<const double> answers,
                         const std::string& evidence, const std::string& hypothesis) {
  const std::size_t expected = mode == ElicitMode::conditionals ? 4 : 2;
  if (answers.size() != expected) {
    throw Error(ErrorCode::domain, "expected " + std::to_string(expected) + " answers, got " +
                                       std::to_string(answers.size()));
  }
  for (std::size_t i = 0; i < answers.size(); ++i) {
    if (auto problem = check_answer(mode, answers.first(i), answers[i])) {
      throw Error(ErrorCode::domain, "answer " + std::to_string(i + 1) + ": " + *problem);
    }
  }
  if (!interp.has_weight_map()) {
    throw Error(ErrorCode::unsupported_interpretation,
                "cannot elicit strengths under " + interp.name());
  }

  const auto present =
      mode == ElicitMode::conditionals
          ? elicit_from_conditionals(interp, Probability(answers[0]), Probability(answers[1]))
          : elicit_from_fifty_prior(interp, Probability(answers[0]));
  const auto absent =
      mode == ElicitMode::conditionals
          ? elicit_from_conditionals(interp, Probability(answers[2]), Probability(answers[3]))
          : elicit_from_fifty_prior(interp, Probability(answers[1]));
  return {Rule::from_delta(evidence, hypothesis, interp, present.value(), absent.value()), present,
          absent};
}

}  // namespace deltacf
