#pragma once

#include <json.hpp>

namespace bellbound {

// Shannon entropy of a bit with P(1) = p, in bits; H(0) = H(1) = 0.
double binary_entropy(double p);

// Capacity of a binary symmetric channel whose crossover probability is
// (1 - S) / 2: the most information per use a marginal shift of size S can
// carry. C(0) = 0, C(1) = 1.
double channel_capacity(double S);

// Information revealed about a uniformly random setting choice by a marginal
// that takes value p under one setting and p + S under the other:
// H(p + S/2) - H(p)/2 - H(p + S)/2. Requires 0 <= p <= p + S <= 1.
// Minimized over p at p = (1 - S) / 2, where it equals channel_capacity(S).
double mutual_info_shift(double p, double S);

// Entropy cost of explaining a CHSH excess V by indeterminism alone
// (H_V = H(V/4) bits of outcome randomness) versus signalling alone
// (C_V = 1 - H_V bits per use). H_of_I and C_of_S default to those
// thresholds; the overload evaluates caller-supplied I and S instead.
struct InfoReport {
  double H_of_I = 0.0;
  double C_of_S = 0.0;
  double H_V = 0.0;
  double C_V = 0.0;
};

InfoReport info_thresholds(double V);
InfoReport info_thresholds(double V, double I, double S);

nlohmann::json to_json(const InfoReport& r);

}  // namespace bellbound
