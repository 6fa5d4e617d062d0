#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bellbound/boxes.hpp"
#include "bellbound/measures.hpp"
#include "bellbound/singlet.hpp"
#include "test_support.hpp"

using namespace bellbound;

TEST_CASE("setting-independent distributions carry no signalling") {
  std::mt19937_64 eng(21);
  LambdaModel m;
  LambdaEntry e;
  e.weights.fill(1.0);
  const JointDistribution d = testsupport::random_dist(eng);
  for (std::size_t k = 0; k < kPairCount; ++k) e.dists[k] = d;
  m.lambdas.push_back(e);
  m = validate_model(m);
  CHECK(signalling_1to2(m) == 0.0);
  CHECK(signalling_2to1(m) == 0.0);
}

TEST_CASE("signalling box shifts the second observer by 1-2I") {
  const LambdaModel m = make_signalling_box(0.3);
  CHECK(std::abs(signalling_1to2(m) - 0.4) <= 1e-12);
  CHECK(signalling_2to1(m) == 0.0);
}

TEST_CASE("a first-observer flip is one-way signalling") {
  LambdaModel m;
  LambdaEntry e;
  e.weights.fill(1.0);
  const JointDistribution plus{{1.0, 0.0, 0.0, 0.0}};
  const JointDistribution minus{{0.0, 0.0, 0.0, 1.0}};
  e.dists = {plus, plus, minus, minus};  // everything flips when Y changes to Y'
  m.lambdas.push_back(e);
  m = validate_model(m);
  CHECK(signalling_2to1(m) == 1.0);
  CHECK(signalling_1to2(m) == 0.0);  // n never varies with X at fixed Y

  e.dists = {plus, minus, plus, minus};  // now the flip follows X instead
  LambdaModel mirrored;
  mirrored.lambdas.push_back(e);
  mirrored = validate_model(mirrored);
  CHECK(signalling_1to2(mirrored) == 1.0);
  CHECK(signalling_2to1(mirrored) == 0.0);
}

TEST_CASE("pr box is no-signalling with maximal indeterminism") {
  const MeasureReport r = measure_all(make_pr_box());
  CHECK(r.I1 == 0.5);
  CHECK(r.I2 == 0.5);
  CHECK(r.I == 0.5);
  CHECK(r.S == 0.0);
  CHECK(r.M == 0.0);
  CHECK(r.freedom_of_choice);
}

TEST_CASE("local indeterminism of the aligned boxes") {
  CHECK(local_indeterminism(make_nosignal_box(0.2), 1) == 0.2);
  CHECK(local_indeterminism(make_nosignal_box(0.2), 2) == 0.2);
  CHECK(local_indeterminism(make_deterministic_box(1, -1, 1, -1), 1) == 0.0);
  CHECK(local_indeterminism(make_deterministic_box(1, -1, 1, -1), 2) == 0.0);
  CHECK_THROWS_AS(local_indeterminism(make_pr_box(), 3), std::invalid_argument);
}

TEST_CASE("measure_all on the signalling box") {
  const MeasureReport r = measure_all(make_signalling_box(0.3));
  CHECK(std::abs(r.I - 0.3) <= 1e-12);
  CHECK(std::abs(r.S - 0.4) <= 1e-12);
  CHECK(r.M == 0.0);
  CHECK(r.freedom_of_choice);
}

TEST_CASE("blend model at w = 0.5 measures I = 1/4 and S = 1/2") {
  const LambdaModel m = grid_mixture_model({0.5}, default_chsh_settings());
  const MeasureReport r = measure_all(m);
  CHECK(std::abs(r.I - 0.25) <= 1e-12);
  CHECK(std::abs(r.S - 0.5) <= 1e-12);
  CHECK(r.M == 0.0);
}

TEST_CASE("measurement dependence of fully setting-dependent weights") {
  LambdaModel m;
  LambdaEntry a, b;
  for (std::size_t k = 0; k < kPairCount; ++k) {
    a.dists[k] = JointDistribution{{0.25, 0.25, 0.25, 0.25}};
    b.dists[k] = a.dists[k];
  }
  a.weights = {1.0, 0.5, 0.5, 0.0};
  b.weights = {0.0, 0.5, 0.5, 1.0};
  m.lambdas = {a, b};
  m = validate_model(m);
  CHECK(measurement_dependence(m) == 2.0);
  CHECK_FALSE(measure_all(m).freedom_of_choice);
}

TEST_CASE("measurement dependence of a mild reweighting") {
  LambdaModel m;
  LambdaEntry a, b;
  for (std::size_t k = 0; k < kPairCount; ++k) {
    a.dists[k] = JointDistribution{{1.0, 0.0, 0.0, 0.0}};
    b.dists[k] = JointDistribution{{0.0, 0.0, 0.0, 1.0}};
  }
  a.weights = {0.7, 0.7, 0.7, 0.5};
  b.weights = {0.3, 0.3, 0.3, 0.5};
  m.lambdas = {a, b};
  m = validate_model(m);
  CHECK(std::abs(measurement_dependence(m) - 0.4) <= 1e-12);
}

TEST_CASE("measures ignore lambdas that never occur") {
  LambdaModel m;
  LambdaEntry live, dead;
  live.weights.fill(1.0);
  dead.weights.fill(0.0);
  for (std::size_t k = 0; k < kPairCount; ++k) {
    live.dists[k] = JointDistribution{{1.0, 0.0, 0.0, 0.0}};
    dead.dists[k] = JointDistribution{{0.25, 0.25, 0.25, 0.25}};
  }
  dead.dists[0] = JointDistribution{{0.0, 1.0, 0.0, 0.0}};  // would signal
  m.lambdas = {live, dead};
  m = validate_model(m);
  const MeasureReport r = measure_all(m);
  CHECK(r.I == 0.0);
  CHECK(r.S == 0.0);
}

TEST_CASE("measures are invariant under lambda reordering") {
  std::mt19937_64 eng(22);
  for (int round = 0; round < 30; ++round) {
    LambdaModel m = testsupport::random_model(eng);
    const MeasureReport before = measure_all(m);
    std::reverse(m.lambdas.begin(), m.lambdas.end());
    const MeasureReport after = measure_all(m);
    CHECK(before.I == after.I);
    CHECK(before.S == after.S);
    // M sums over lambdas, so reordering reassociates the float additions.
    CHECK(std::abs(before.M - after.M) <= 1e-12);
  }
}

TEST_CASE("dropping lambdas from a freedom model never raises I or S") {
  std::mt19937_64 eng(23);
  for (int round = 0; round < 30; ++round) {
    const LambdaModel m = testsupport::random_freedom_model(eng);
    if (m.lambdas.size() < 2) continue;
    LambdaModel sub;
    sub.lambdas.assign(m.lambdas.begin(), m.lambdas.end() - 1);
    double sum = 0.0;
    for (const LambdaEntry& e : sub.lambdas) sum += e.weights[0];
    for (LambdaEntry& e : sub.lambdas) e.weights.fill(e.weights[0] / sum);
    sub = validate_model(sub);
    const MeasureReport full = measure_all(m);
    const MeasureReport part = measure_all(sub);
    CHECK(part.I <= full.I + 1e-12);
    CHECK(part.S <= full.S + 1e-12);
  }
}

TEST_CASE("measure ranges and the indeterminism-signalling inequality") {
  std::mt19937_64 eng(24);
  for (int round = 0; round < 1000; ++round) {
    const LambdaModel m = round % 2 == 0 ? testsupport::random_model(eng)
                                         : testsupport::random_freedom_model(eng);
    const MeasureReport r = measure_all(m);
    CHECK(r.I >= 0.0);
    CHECK(r.I <= 0.5);
    CHECK(r.S >= 0.0);
    CHECK(r.S <= 1.0 + 1e-9);
    CHECK(r.M >= 0.0);
    CHECK(r.M <= 2.0 + 1e-9);
    // Any marginal shift either stays inside one indeterminism subinterval
    // or jumps the gap between them.
    CHECK(r.I >= std::min(r.S, (1.0 - r.S) / 2.0) - 1e-12);
    if (r.S >= 1.0 / 3.0) {
      CHECK(r.S + 2.0 * r.I >= 1.0 - 1e-12);
    }
    if (r.freedom_of_choice) CHECK(r.M <= 5.0 * kFreedomTolerance);
    if (r.M > 1e-9) CHECK_FALSE(r.freedom_of_choice);
  }
}

TEST_CASE("zero measurement dependence coincides with freedom of choice") {
  std::mt19937_64 eng(25);
  for (int round = 0; round < 200; ++round) {
    const LambdaModel m = testsupport::random_freedom_model(eng);
    CHECK(measurement_dependence(m) == 0.0);
    CHECK(measure_all(m).freedom_of_choice);
  }
}
