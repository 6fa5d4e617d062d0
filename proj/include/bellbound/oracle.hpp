#pragma once

#include <array>
#include <vector>

#include <json.hpp>

#include "bellbound/model.hpp"

namespace bellbound {

// One single-lambda model in marginal form: for setting pair k the outcome
// distribution is (c_k, m_k - c_k, n_k - c_k, 1 + c_k - m_k - n_k), where
// m_k, n_k are the observers' +1 marginals and c_k = P(++). Positivity
// requires max(0, m_k + n_k - 1) <= c_k <= min(m_k, n_k).
struct BoxParams {
  std::array<double, kPairCount> m{};
  std::array<double, kPairCount> n{};
  std::array<double, kPairCount> c{};
};

// |m1-n1| + |m2-n2| + |m3-n3| + |m4+n4-1|. The CHSH value of any model with
// these marginals is at most 4 - 2*J regardless of the c's.
double j_functional(const BoxParams& params);

// The c's that reach 4 - 2*J: c_k = min(m_k, n_k) for the first three pairs
// and c_4 = max(0, m_4 + n_4 - 1). Cross-checks the closed form against
// direct evaluation of the assembled distributions (throws std::logic_error
// on disagreement beyond 1e-12).
struct EMaxResult {
  double e = 0.0;
  BoxParams params;
};

EMaxResult e_max_given_marginals(const std::array<double, kPairCount>& m,
                                 const std::array<double, kPairCount>& n);

// Marginal values admissible at indeterminism I: multiples of step inside
// [0, I] or [1 - I, 1] (membership within 1e-12), plus, when endpoints is
// set, the exact values {0, I, 1-I, 1}. Sorted, duplicates removed.
std::vector<double> admissible_grid(double I, double step, bool endpoints);

struct OracleReport {
  double max_E = 0.0;
  BoxParams argmax;
  double analytic_B = 0.0;
  double gap = 0.0;  // analytic_B - max_E
  double grid_step = 0.0;
};

// Exhaustive search over grid marginals obeying the indeterminism and
// signalling constraints (|m1-m2|, |m3-m4|, |n1-n3|, |n2-n4| <= S, applied
// with 1e-12 slack so grid arithmetic cannot exclude exact configurations).
// Ties in max_E resolve to the lexicographically smallest
// (m1..m4, n1..n4, c1..c4). The thread count never changes the result.
// Throws std::logic_error if max_E exceeds the analytic bound beyond 1e-9.
OracleReport brute_force_max(double I, double S, double grid_step,
                             bool endpoints = true, unsigned threads = 1);

// Runs brute_force_max over a grid of (I, S) cells (I outer, row-major) and
// checks 0 <= gap <= 4 * grid_step + 1e-9 everywhere; with endpoints on the
// attaining configurations are exact grid points and the gap is zero.
std::vector<OracleReport> verify_tightness(const std::vector<double>& I_grid,
                                           const std::vector<double>& S_grid,
                                           double grid_step,
                                           bool endpoints = true,
                                           unsigned threads = 1);

// Materializes the argmax as a single-lambda model (weight 1 per pair).
// Throws ValidationError if the params violate positivity beyond 1e-12.
LambdaModel argmax_to_model(const BoxParams& params);

nlohmann::json to_json(const OracleReport& r);

}  // namespace bellbound
