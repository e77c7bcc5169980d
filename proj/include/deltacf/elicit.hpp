#pragma once

// Turning an expert's probability judgements into rule strengths.
//
// Two question sets are supported:
//   conditionals  p(E|H), p(E|~H), p(~E|H), p(~E|~H)
//   fifty_prior   p(H|E) and p(H|~E), imagining p(H) = 1/2 beforehand
// Both end in a rule whose strengths are expressed under the requested
// interpretation.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deltacf/network.hpp"

namespace deltacf {

enum class ElicitMode { conditionals, fifty_prior };

ElicitMode parse_elicit_mode(const std::string& text);

/// Question texts, in the order answers are expected.
std::vector<std::string> elicitation_questions(ElicitMode mode, const std::string& evidence,
                                               const std::string& hypothesis);

/// Reason to reject `candidate` as the next answer after `previous`, or
/// nullopt when it is acceptable.
std::optional<std::string> check_answer(ElicitMode mode, std::span<const double> previous,
                                        double candidate);

struct ElicitedRule {
  Rule rule;
  Update on_present;
  Update on_absent;
};

/// Builds the rule from a complete, valid answer list. Throws on invalid input.
ElicitedRule elicit_rule(ElicitMode mode, Interpretation interp, std::span<const double> answers,
                         const std::string& evidence, const std::string& hypothesis);

}  // namespace deltacf
