#pragma once

#include <array>

#include "bellbound/model.hpp"

namespace bellbound {

// Reference single-lambda models. All have freedom of choice by construction.

// Perfectly correlated except anti-correlated at (X',Y'):
// dists (1/2,0,0,1/2) for the first three pairs, (0,1/2,1/2,0) at (X',Y').
// I = 1/2, S = 0, CHSH = 4.
LambdaModel make_pr_box();

// Indeterminism-only model saturating CHSH = 2 + 4I: dists (I,0,0,1-I) for
// the first three pairs, (0,I,I,1-2I) at (X',Y'). Requires I in [0, 1/2].
// flip swaps the roles of the +1 and -1 outcomes.
LambdaModel make_nosignal_box(double I, bool flip = false);

// Signalling-only model reaching CHSH = 4 with S = 1 - 2I: dists (I,0,0,1-I)
// for the first three pairs, (0,I,1-I,0) at (X',Y'). Requires I in [0, 1/2].
LambdaModel make_signalling_box(double I, bool flip = false);

// Deterministic local model: outcomes (each +1 or -1) for settings
// X, X', Y, Y'. I = S = 0, CHSH in {-2, 2}.
LambdaModel make_deterministic_box(int aX, int aXp, int bY, int bYp);

// CLI-facing description of one of the boxes above.
struct BoxSpec {
  enum class Kind { PR, NoSignal, Signalling, Deterministic };
  Kind kind = Kind::PR;
  double I = 0.0;
  bool flip = false;
  std::array<int, 4> outcomes{1, 1, 1, 1};  // aX, aXp, bY, bYp
};

LambdaModel make_box(const BoxSpec& spec);

}  // namespace bellbound
