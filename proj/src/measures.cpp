#include "bellbound/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellbound {

namespace {

bool never_occurs(const LambdaEntry& e) {
  for (double w : e.weights) {
    if (w != 0.0) return false;
  }
  return true;
}

}  // namespace

double signalling_1to2(const LambdaModel& model) {
  double worst = 0.0;
  for (const LambdaEntry& e : model.lambdas) {
    if (never_occurs(e)) continue;
    std::array<double, kPairCount> n;
    for (std::size_t k = 0; k < kPairCount; ++k) n[k] = marginals(e.dists[k]).n;
    worst = std::max(worst, std::abs(n[0] - n[1]));
    worst = std::max(worst, std::abs(n[2] - n[3]));
  }
  return worst;
}

double signalling_2to1(const LambdaModel& model) {
  double worst = 0.0;
  for (const LambdaEntry& e : model.lambdas) {
    if (never_occurs(e)) continue;
    std::array<double, kPairCount> m;
    for (std::size_t k = 0; k < kPairCount; ++k) m[k] = marginals(e.dists[k]).m;
    worst = std::max(worst, std::abs(m[0] - m[2]));
    worst = std::max(worst, std::abs(m[1] - m[3]));
  }
  return worst;
}

double local_indeterminism(const LambdaModel& model, int observer) {
  if (observer != 1 && observer != 2) {
    throw std::invalid_argument("observer must be 1 or 2");
  }
  double worst = 0.0;
  for (const LambdaEntry& e : model.lambdas) {
    if (never_occurs(e)) continue;
    for (std::size_t k = 0; k < kPairCount; ++k) {
      const Marginals mg = marginals(e.dists[k]);
      const double p = observer == 1 ? mg.m : mg.n;
      worst = std::max(worst, std::min(p, 1.0 - p));
    }
  }
  return worst;
}

double measurement_dependence(const LambdaModel& model) {
  double worst = 0.0;
  for (std::size_t a = 0; a < kPairCount; ++a) {
    for (std::size_t b = a + 1; b < kPairCount; ++b) {
      double total = 0.0;
      for (const LambdaEntry& e : model.lambdas) {
        total += std::abs(e.weights[a] - e.weights[b]);
      }
      worst = std::max(worst, total);
    }
  }
  return worst;
}

MeasureReport measure_all(const LambdaModel& model) {
  MeasureReport r;
  r.I1 = local_indeterminism(model, 1);
  r.I2 = local_indeterminism(model, 2);
  r.I = std::max(r.I1, r.I2);
  r.S_1to2 = signalling_1to2(model);
  r.S_2to1 = signalling_2to1(model);
  r.S = std::max(r.S_1to2, r.S_2to1);
  r.M = measurement_dependence(model);
  r.freedom_of_choice = has_freedom_of_choice(model);
  return r;
}

nlohmann::json to_json(const MeasureReport& r) {
  return nlohmann::json{
      {"I1", r.I1},
      {"I2", r.I2},
      {"I", r.I},
      {"S_1to2", r.S_1to2},
      {"S_2to1", r.S_2to1},
      {"S", r.S},
      {"M", r.M},
      {"freedom_of_choice", r.freedom_of_choice},
  };
}

}  // namespace bellbound
