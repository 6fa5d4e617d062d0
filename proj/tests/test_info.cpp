#include <doctest.h>

#include <cmath>
#include <random>

#include "bellbound/info.hpp"
#include "test_support.hpp"

using namespace bellbound;

TEST_CASE("binary entropy anchors") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(std::abs(binary_entropy(0.25) - 0.8112781244591328) <= 1e-12);
  CHECK_THROWS_AS(binary_entropy(-0.01), std::domain_error);
  CHECK_THROWS_AS(binary_entropy(1.01), std::domain_error);
}

TEST_CASE("binary entropy is symmetric and peaks at one half") {
  std::mt19937_64 eng(41);
  for (int round = 0; round < 200; ++round) {
    const double p = testsupport::u01(eng);
    CHECK(std::abs(binary_entropy(p) - binary_entropy(1.0 - p)) <= 1e-12);
    CHECK(binary_entropy(p) <= 1.0);
  }
  for (double p = 0.0; p < 0.5; p += 0.01) {
    CHECK(binary_entropy(p) < binary_entropy(p + 0.01) + 1e-15);
  }
}

TEST_CASE("channel capacity endpoints and monotonicity") {
  CHECK(channel_capacity(0.0) == 0.0);
  CHECK(channel_capacity(1.0) == 1.0);
  double prev = -1e-15;
  for (double S = 0.0; S <= 1.0 + 1e-12; S += 0.05) {
    const double c = channel_capacity(std::min(S, 1.0));
    CHECK(c >= prev - 1e-15);
    prev = c;
  }
  CHECK_THROWS_AS(channel_capacity(1.5), std::domain_error);
}

TEST_CASE("mutual information of a marginal shift") {
  // p = 1/4, S = 1/2: H(1/2) - H(1/4)/2 - H(3/4)/2 = 1 - H(1/4).
  const double v = mutual_info_shift(0.25, 0.5);
  CHECK(std::abs(v - (1.0 - 0.8112781244591328)) <= 1e-12);
  CHECK(mutual_info_shift(0.0, 0.0) == 0.0);
  CHECK_THROWS_AS(mutual_info_shift(0.6, 0.5), std::domain_error);
  CHECK_THROWS_AS(mutual_info_shift(-0.1, 0.5), std::domain_error);
}

TEST_CASE("shift information is minimized at the symmetric marginal") {
  for (double S = 0.1; S <= 0.9 + 1e-12; S += 0.1) {
    const double symmetric = (1.0 - S) / 2.0;
    const double floor = channel_capacity(S);
    CHECK(std::abs(mutual_info_shift(symmetric, S) - floor) <= 1e-12);
    for (double p = 0.0; p <= 1.0 - S + 1e-12; p += 0.001) {
      CHECK(mutual_info_shift(std::min(p, 1.0 - S), S) >= floor - 1e-12);
    }
  }
}

TEST_CASE("information thresholds at the quantum violation") {
  const double V = 2.0 * std::sqrt(2.0) - 2.0;
  const InfoReport r = info_thresholds(V);
  CHECK(std::abs(r.H_V - 0.736) <= 1e-3);
  CHECK(std::abs(r.C_V - 0.264) <= 1e-3);
  CHECK(r.H_of_I == r.H_V);
  CHECK(r.C_of_S == r.C_V);
  CHECK(r.H_V == binary_entropy(V / 4.0));
  CHECK(r.C_V == 1.0 - r.H_V);
}

TEST_CASE("information thresholds with caller-supplied degrees") {
  const InfoReport r = info_thresholds(0.5, 0.25, 0.4);
  CHECK(r.H_of_I == binary_entropy(0.25));
  CHECK(r.C_of_S == channel_capacity(0.4));
  CHECK(r.H_V == binary_entropy(0.125));
  CHECK_THROWS_AS(info_thresholds(0.5, 0.7, 0.4), std::domain_error);
  CHECK_THROWS_AS(info_thresholds(0.5, 0.25, 1.4), std::domain_error);
}

TEST_CASE("blend family balances entropy against capacity") {
  // I = (1 - w) / 2 and S = w give H(I) + C(S) = 1 for every w.
  for (int i = 0; i <= 10; ++i) {
    const double w = static_cast<double>(i) / 10.0;
    const double I = (1.0 - w) / 2.0;
    CHECK(std::abs(binary_entropy(I) + channel_capacity(w) - 1.0) <= 1e-12);
    CHECK(std::abs(w + 2.0 * I - 1.0) <= 1e-12);
  }
}
