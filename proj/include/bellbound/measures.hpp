#pragma once

#include <json.hpp>

#include "bellbound/model.hpp"

namespace bellbound {

// All measures take the worst case over hidden states. Lambdas whose weight
// is zero for every setting pair never occur and are skipped.

// Largest shift of the second observer's marginal when the first observer
// changes setting: max over lambda of max(|n1-n2|, |n3-n4|), where n_k is
// the +1 marginal for pair k. Range [0,1]; 0 means no influence.
double signalling_1to2(const LambdaModel& model);

// Same with roles swapped: max over lambda of max(|m1-m3|, |m2-m4|).
double signalling_2to1(const LambdaModel& model);

// Worst-case randomness of one observer's outcome: max over lambda and
// setting pairs of min(p, 1-p) for that observer's marginal p. Observer is
// 1 or 2. Range [0, 1/2]; 0 means outcomes are deterministic given lambda.
double local_indeterminism(const LambdaModel& model, int observer);

// Max over the six unordered pairs of setting pairs {a,b} of
// sum over lambda of |w_a(lambda) - w_b(lambda)|. Range [0,2]; 0 iff the
// lambda distribution is independent of the settings (freedom of choice).
double measurement_dependence(const LambdaModel& model);

struct MeasureReport {
  double I1 = 0.0;
  double I2 = 0.0;
  double I = 0.0;
  double S_1to2 = 0.0;
  double S_2to1 = 0.0;
  double S = 0.0;
  double M = 0.0;
  bool freedom_of_choice = false;
};

MeasureReport measure_all(const LambdaModel& model);

nlohmann::json to_json(const MeasureReport& r);

}  // namespace bellbound
