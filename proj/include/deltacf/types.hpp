#pragma once

// Value types shared by the whole engine: probabilities, odds, likelihood
// ratios, weights of evidence (extended reals), interpretations and updates.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace deltacf {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Default absolute tolerance for comparisons.
inline constexpr double kTolerance = 1e-9;
/// Tolerance used next to the 0/1 and +-1 boundaries, where logit amplifies error.
inline constexpr double kBoundaryTolerance = 1e-6;

enum class ErrorCode {
  domain,                     // value outside the range of its type
  contradiction,              // +inf + -inf in weight space
  degenerate_prior,           // posterior and prior both 0 or both 1
  conflicting_evidence,       // parallel combination of +1 and -1
  unsupported_interpretation, // e.g. orig in weight space
  incoherent_pair,            // rule strengths with the same nonzero sign
  evidence_impossible,        // p(E|H) = p(E|~H) = 0
  interpretation_mismatch,
  invalid_network,
  size_cap,
  zero_probability_evidence,
  schema,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class Probability {
 public:
  constexpr Probability() = default;
  explicit Probability(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw Error(ErrorCode::domain, "probability out of [0,1]: " + std::to_string(value));
    }
  }
  constexpr double value() const noexcept { return value_; }
  constexpr bool certain_true() const noexcept { return value_ == 1.0; }
  constexpr bool certain_false() const noexcept { return value_ == 0.0; }
  friend constexpr auto operator<=>(Probability, Probability) = default;

 private:
  double value_ = 0.0;
};

class Odds {
 public:
  constexpr Odds() = default;
  explicit Odds(double value) : value_(value) {
    if (!(value >= 0.0)) {
      throw Error(ErrorCode::domain, "odds must be nonnegative: " + std::to_string(value));
    }
  }
  constexpr double value() const noexcept { return value_; }
  friend constexpr auto operator<=>(Odds, Odds) = default;

 private:
  double value_ = 0.0;
};

class LikelihoodRatio {
 public:
  constexpr LikelihoodRatio() = default;
  explicit LikelihoodRatio(double value) : value_(value) {
    if (!(value >= 0.0)) {
      throw Error(ErrorCode::domain,
                  "likelihood ratio must be nonnegative: " + std::to_string(value));
    }
  }
  constexpr double value() const noexcept { return value_; }
  friend constexpr auto operator<=>(LikelihoodRatio, LikelihoodRatio) = default;

 private:
  double value_ = 1.0;
};

/// ln(lambda). Lives on the extended real line; NaN is never a valid value.
class WeightOfEvidence {
 public:
  constexpr WeightOfEvidence() = default;
  explicit WeightOfEvidence(double value) : value_(value) {
    if (std::isnan(value)) throw Error(ErrorCode::domain, "weight of evidence is NaN");
  }
  constexpr double value() const noexcept { return value_; }
  bool is_finite() const noexcept { return std::isfinite(value_); }
  WeightOfEvidence operator-() const { return WeightOfEvidence(-value_); }
  friend constexpr auto operator<=>(WeightOfEvidence, WeightOfEvidence) = default;

 private:
  double value_ = 0.0;
};

/// Extended-real addition. +inf + -inf is a contradiction (certain proof
/// meeting certain disproof), never NaN.
double extended_add(double a, double b);

inline WeightOfEvidence operator+(WeightOfEvidence a, WeightOfEvidence b) {
  return WeightOfEvidence(extended_add(a.value(), b.value()));
}

class Interpretation {
 public:
  enum class Kind { delta1, deltan, cf, mycin_legacy, orig };

  static constexpr Interpretation delta1() { return Interpretation(Kind::delta1, 1); }
  /// n must be an odd positive integer.
  static Interpretation deltan(int n);
  static constexpr Interpretation cf() { return Interpretation(Kind::cf, 1); }
  static constexpr Interpretation mycin_legacy() { return Interpretation(Kind::mycin_legacy, 1); }
  static constexpr Interpretation orig() { return Interpretation(Kind::orig, 1); }

  /// Accepts delta1, deltan:<n> (or delta<n>), cf, mycin (or mycin-legacy), orig.
  static Interpretation parse(std::string_view text);

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr int n() const noexcept { return n_; }

  /// Generated by the logit/G mapping scheme.
  constexpr bool is_probabilistic() const noexcept {
    return kind_ == Kind::delta1 || kind_ == Kind::deltan || kind_ == Kind::cf;
  }
  /// Has a weight-space map (probabilistic, or mycin-legacy through cf).
  constexpr bool has_weight_map() const noexcept { return kind_ != Kind::orig; }

  std::string name() const;

  friend constexpr bool operator==(Interpretation, Interpretation) = default;

 private:
  constexpr Interpretation(Kind kind, int n) : kind_(kind), n_(n) {}
  Kind kind_ = Kind::delta1;
  int n_ = 1;
};

/// A certainty factor: a belief change in [-1,1] tagged with the
/// interpretation it is expressed in.
class Update {
 public:
  explicit Update(double value, Interpretation interp = Interpretation::delta1())
      : value_(value), interp_(interp) {
    if (!(value >= -1.0 && value <= 1.0)) {
      throw Error(ErrorCode::domain, "update out of [-1,1]: " + std::to_string(value));
    }
  }
  constexpr double value() const noexcept { return value_; }
  constexpr Interpretation interpretation() const noexcept { return interp_; }
  constexpr bool proves() const noexcept { return value_ == 1.0; }
  constexpr bool disproves() const noexcept { return value_ == -1.0; }
  friend constexpr bool operator==(const Update&, const Update&) = default;

 private:
  double value_;
  Interpretation interp_;
};

/// p / (1 - p); +inf at p = 1.
Odds odds_of(Probability p);
/// o / (1 + o); 1 at o = +inf.
Probability prob_of(Odds o);

}  // namespace deltacf
