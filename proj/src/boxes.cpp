#include "bellbound/boxes.hpp"

#include <sstream>
#include <stdexcept>

namespace bellbound {

namespace {

void check_box_indeterminism(double I) {
  if (!(I >= 0.0 && I <= 0.5)) {
    std::ostringstream msg;
    msg << "box indeterminism I = " << I << " outside [0, 1/2]";
    throw std::domain_error(msg.str());
  }
}

JointDistribution flipped(const JointDistribution& d) {
  // Swapping +1 and -1 for both observers reverses the outcome order.
  return {{d.p[3], d.p[2], d.p[1], d.p[0]}};
}

LambdaModel single_lambda(std::array<JointDistribution, kPairCount> dists, bool flip) {
  LambdaEntry e;
  e.weights.fill(1.0);
  for (std::size_t k = 0; k < kPairCount; ++k) {
    e.dists[k] = flip ? flipped(dists[k]) : dists[k];
  }
  LambdaModel model;
  model.lambdas.push_back(std::move(e));
  return validate_model(std::move(model));
}

}  // namespace

LambdaModel make_pr_box() {
  const JointDistribution even{{0.5, 0.0, 0.0, 0.5}};
  const JointDistribution odd{{0.0, 0.5, 0.5, 0.0}};
  return single_lambda({even, even, even, odd}, false);
}

LambdaModel make_nosignal_box(double I, bool flip) {
  check_box_indeterminism(I);
  const JointDistribution aligned{{I, 0.0, 0.0, 1.0 - I}};
  const JointDistribution last{{0.0, I, I, 1.0 - 2.0 * I}};
  return single_lambda({aligned, aligned, aligned, last}, flip);
}

LambdaModel make_signalling_box(double I, bool flip) {
  check_box_indeterminism(I);
  const JointDistribution aligned{{I, 0.0, 0.0, 1.0 - I}};
  const JointDistribution last{{0.0, I, 1.0 - I, 0.0}};
  return single_lambda({aligned, aligned, aligned, last}, flip);
}

LambdaModel make_deterministic_box(int aX, int aXp, int bY, int bYp) {
  for (int o : {aX, aXp, bY, bYp}) {
    if (o != 1 && o != -1) {
      throw std::invalid_argument("deterministic outcomes must be +1 or -1");
    }
  }
  std::array<JointDistribution, kPairCount> dists{};
  const std::array<int, kPairCount> first{aX, aXp, aX, aXp};
  const std::array<int, kPairCount> second{bY, bY, bYp, bYp};
  for (std::size_t k = 0; k < kPairCount; ++k) {
    const std::size_t slot = (first[k] == 1 ? 0 : 2) + (second[k] == 1 ? 0 : 1);
    dists[k].p[slot] = 1.0;
  }
  return single_lambda(dists, false);
}

LambdaModel make_box(const BoxSpec& spec) {
  switch (spec.kind) {
    case BoxSpec::Kind::PR:
      return make_pr_box();
    case BoxSpec::Kind::NoSignal:
      return make_nosignal_box(spec.I, spec.flip);
    case BoxSpec::Kind::Signalling:
      return make_signalling_box(spec.I, spec.flip);
    case BoxSpec::Kind::Deterministic:
      return make_deterministic_box(spec.outcomes[0], spec.outcomes[1],
                                    spec.outcomes[2], spec.outcomes[3]);
  }
  throw std::invalid_argument("invalid box kind");
}

}  // namespace bellbound
