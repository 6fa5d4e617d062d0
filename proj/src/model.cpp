#include "bellbound/model.hpp"

#include <cmath>
#include <sstream>

namespace bellbound {

const char* pair_name(SettingPair p) {
  switch (p) {
    case SettingPair::XY:   return "XY";
    case SettingPair::XpY:  return "XpY";
    case SettingPair::XYp:  return "XYp";
    case SettingPair::XpYp: return "XpYp";
  }
  throw std::invalid_argument("invalid SettingPair");
}

Marginals marginals(const JointDistribution& d) {
  return {d.p[0] + d.p[1], d.p[0] + d.p[2]};
}

namespace {

// Clamps values in [-kNegTolerance, 0) to zero; throws on anything more negative.
double clamp_probability(double v, const std::string& where) {
  if (v < 0.0) {
    if (v < -kNegTolerance) {
      std::ostringstream msg;
      msg << where << ": negative probability " << v;
      throw ValidationError(msg.str());
    }
    return 0.0;
  }
  return v;
}

std::string lambda_name(const LambdaEntry& e, std::size_t i) {
  std::ostringstream s;
  s << "lambda " << i;
  if (!e.label.empty()) s << " (" << e.label << ")";
  return s.str();
}

}  // namespace

LambdaModel validate_model(LambdaModel model) {
  if (model.lambdas.empty()) {
    throw ValidationError("model has no lambda entries");
  }
  for (std::size_t i = 0; i < model.lambdas.size(); ++i) {
    LambdaEntry& e = model.lambdas[i];
    const std::string name = lambda_name(e, i);
    for (SettingPair sp : all_pairs()) {
      const std::size_t k = pair_index(sp);
      const std::string where = name + ", pair " + pair_name(sp);
      e.weights[k] = clamp_probability(e.weights[k], where + ", weight");
      if (e.weights[k] > 1.0) {
        if (e.weights[k] > 1.0 + kNegTolerance) {
          std::ostringstream msg;
          msg << where << ": weight " << e.weights[k] << " exceeds 1";
          throw ValidationError(msg.str());
        }
        e.weights[k] = 1.0;
      }
      double sum = 0.0;
      for (std::size_t o = 0; o < 4; ++o) {
        e.dists[k].p[o] = clamp_probability(e.dists[k].p[o], where);
        sum += e.dists[k].p[o];
      }
      if (std::abs(sum - 1.0) > kSumTolerance) {
        std::ostringstream msg;
        msg << where << ": outcome probabilities sum to " << sum;
        throw ValidationError(msg.str());
      }
    }
  }
  for (SettingPair sp : all_pairs()) {
    const std::size_t k = pair_index(sp);
    double sum = 0.0;
    for (const LambdaEntry& e : model.lambdas) sum += e.weights[k];
    if (std::abs(sum - 1.0) > kSumTolerance) {
      std::ostringstream msg;
      msg << "pair " << pair_name(sp) << ": lambda weights sum to " << sum;
      throw ValidationError(msg.str());
    }
  }
  return model;
}

bool has_freedom_of_choice(const LambdaModel& model) {
  for (const LambdaEntry& e : model.lambdas) {
    double lo = e.weights[0], hi = e.weights[0];
    for (std::size_t k = 1; k < kPairCount; ++k) {
      lo = std::min(lo, e.weights[k]);
      hi = std::max(hi, e.weights[k]);
    }
    if (hi - lo > kFreedomTolerance) return false;
  }
  return true;
}

Behavior behavior_of(const LambdaModel& model) {
  Behavior b;
  for (std::size_t k = 0; k < kPairCount; ++k) {
    for (std::size_t o = 0; o < 4; ++o) {
      double sum = 0.0;
      for (const LambdaEntry& e : model.lambdas) {
        sum += e.weights[k] * e.dists[k].p[o];
      }
      b.dists[k].p[o] = sum;
    }
  }
  return b;
}

}  // namespace bellbound
