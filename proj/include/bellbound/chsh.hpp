#pragma once

#include <array>
#include <stdexcept>

#include <json.hpp>

#include "bellbound/measures.hpp"
#include "bellbound/model.hpp"

namespace bellbound {

// P(++) + P(--) - P(+-) - P(-+). Range [-1, 1].
double correlator(const JointDistribution& d);

struct ChshValue {
  double value = 0.0;                       // E1 + E2 + E3 - E4
  std::array<double, kPairCount> correlators{};
};

ChshValue chsh(const Behavior& b);

// Largest CHSH value reachable with indeterminism at most I and signalling
// at most S under freedom of choice: 2 + 4I below the saturation threshold,
// 4 from S = 1 - 2I on. Throws std::domain_error for I outside [0, 1/2] or
// S outside [0, 1].
double bound_B(double I, double S);

// Signalling level at which bound_B(I, .) reaches 4.
double gap_threshold(double I);

// Minimum resources needed to explain a CHSH excess V = CHSH - 2:
// indeterminism alone needs I >= V/4, signalling alone needs S >= 1 - V/2.
struct Thresholds {
  double V = 0.0;
  double I_V = 0.0;
  double S_V = 0.0;
};

Thresholds thresholds_for_violation(double V);  // V in [0, 2]

// Thrown by check_model_consistency when the model lacks freedom of choice;
// the bound does not apply there.
struct FreedomRequiredError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Measures the model, evaluates its CHSH value, and checks it against
// bound_B. pass must hold for every freedom-of-choice model; a failure
// indicates a bug, not an interesting model.
struct ConsistencyVerdict {
  double V = 0.0;  // max(0, CHSH - 2)
  double I = 0.0;
  double S = 0.0;
  double B = 0.0;
  bool pass = false;
  bool equality = false;  // CHSH matches B within 1e-9
};

ConsistencyVerdict check_model_consistency(const LambdaModel& model);

nlohmann::json to_json(const ConsistencyVerdict& v);

}  // namespace bellbound
