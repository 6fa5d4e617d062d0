#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bellbound {

// Joint settings of the two observers. The index order fixes the slot
// convention used everywhere else: 0=(X,Y), 1=(X',Y), 2=(X,Y'), 3=(X',Y').
enum class SettingPair : int { XY = 0, XpY = 1, XYp = 2, XpYp = 3 };

inline constexpr std::size_t kPairCount = 4;

constexpr std::size_t pair_index(SettingPair p) { return static_cast<std::size_t>(p); }

constexpr std::array<SettingPair, kPairCount> all_pairs() {
  return {SettingPair::XY, SettingPair::XpY, SettingPair::XYp, SettingPair::XpYp};
}

const char* pair_name(SettingPair p);

// Probabilities of the four joint outcomes, ordered (+,+), (+,-), (-,+), (-,-).
struct JointDistribution {
  std::array<double, 4> p{};

  double& operator[](std::size_t i) { return p[i]; }
  double operator[](std::size_t i) const { return p[i]; }
};

// Probability of outcome +1 for the first (m) and second (n) observer.
struct Marginals {
  double m = 0.0;
  double n = 0.0;
};

Marginals marginals(const JointDistribution& d);

// One hidden state: a weight and an outcome distribution per setting pair.
struct LambdaEntry {
  std::string label;
  std::array<double, kPairCount> weights{};
  std::array<JointDistribution, kPairCount> dists{};
};

struct LambdaModel {
  std::vector<LambdaEntry> lambdas;
};

// Observable statistics: one outcome distribution per setting pair.
struct Behavior {
  std::array<JointDistribution, kPairCount> dists{};
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ingestion tolerances. Entries in [-kNegTolerance, 0) are clamped to zero;
// after validation all stored numbers are taken at face value.
inline constexpr double kNegTolerance = 1e-12;
inline constexpr double kSumTolerance = 1e-9;
inline constexpr double kFreedomTolerance = 1e-12;

// Checks every invariant (clamping tiny negatives first) and returns the
// cleaned model. Throws ValidationError with the lambda label and setting
// pair in the message.
LambdaModel validate_model(LambdaModel model);

// True iff for every lambda the four weights agree within kFreedomTolerance.
bool has_freedom_of_choice(const LambdaModel& model);

// Weighted average of the per-lambda distributions, one per setting pair.
// No renormalization: validation already guarantees weights sum to 1.
Behavior behavior_of(const LambdaModel& model);

}  // namespace bellbound
