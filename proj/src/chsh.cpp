#include "bellbound/chsh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bellbound {

double correlator(const JointDistribution& d) {
  return (d.p[0] + d.p[3]) - (d.p[1] + d.p[2]);
}

ChshValue chsh(const Behavior& b) {
  ChshValue v;
  for (std::size_t k = 0; k < kPairCount; ++k) {
    v.correlators[k] = correlator(b.dists[k]);
  }
  v.value = v.correlators[0] + v.correlators[1] + v.correlators[2] - v.correlators[3];
  return v;
}

namespace {

void check_is_range(double I, double S) {
  if (!(I >= 0.0 && I <= 0.5)) {
    std::ostringstream msg;
    msg << "indeterminism I = " << I << " outside [0, 1/2]";
    throw std::domain_error(msg.str());
  }
  if (!(S >= 0.0 && S <= 1.0)) {
    std::ostringstream msg;
    msg << "signalling S = " << S << " outside [0, 1]";
    throw std::domain_error(msg.str());
  }
}

}  // namespace

double bound_B(double I, double S) {
  check_is_range(I, S);
  return S < 1.0 - 2.0 * I ? 2.0 + 4.0 * I : 4.0;
}

double gap_threshold(double I) {
  check_is_range(I, 0.0);
  return 1.0 - 2.0 * I;
}

Thresholds thresholds_for_violation(double V) {
  if (!(V >= 0.0 && V <= 2.0)) {
    std::ostringstream msg;
    msg << "violation V = " << V << " outside [0, 2]";
    throw std::domain_error(msg.str());
  }
  return {V, V / 4.0, 1.0 - V / 2.0};
}

ConsistencyVerdict check_model_consistency(const LambdaModel& model) {
  if (!has_freedom_of_choice(model)) {
    throw FreedomRequiredError(
        "model lacks freedom of choice (M > 0); the bound does not apply");
  }
  const MeasureReport m = measure_all(model);
  const double value = chsh(behavior_of(model)).value;
  ConsistencyVerdict v;
  v.I = m.I;
  v.S = m.S;
  // Sum-tolerance dust can push measured S a hair past 1; clamp for the bound.
  v.B = bound_B(std::min(m.I, 0.5), std::min(m.S, 1.0));
  v.V = std::max(0.0, value - 2.0);
  v.pass = value <= v.B + 1e-9;
  v.equality = std::abs(value - v.B) <= 1e-9;
  return v;
}

nlohmann::json to_json(const ConsistencyVerdict& v) {
  return nlohmann::json{
      {"V", v.V}, {"I", v.I}, {"S", v.S}, {"B", v.B},
      {"pass", v.pass}, {"equality", v.equality},
  };
}

}  // namespace bellbound
