// asr/optim.cc

// Copyright 2026  ASRKit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "asr/optim.h"

#include <cmath>

#include "asr/common.h"

namespace asr {

double LrSchedule::At(int epoch) const {
  if (epoch < 0) throw ConfigError("lr schedule: negative epoch");
  if (decay_every < 1) throw ConfigError("lr schedule: decay_every must be >= 1");
  double lr = initial;
  for (int k = 0; k < epoch / decay_every; k++) lr /= decay_factor;
  return lr;
}

void AdamState::Init(size_t param_count) {
  step = 0;
  m.assign(param_count, 0.0);
  v.assign(param_count, 0.0);
}

void AdamState::SnapToStorage() {
  for (double& x : m) x = static_cast<double>(static_cast<float>(x));
  for (double& x : v) x = static_cast<double>(static_cast<float>(x));
}

void AdamStep(std::span<double> params, std::span<const double> grads, AdamState* state,
              double lr) {
  if (params.size() != grads.size() || params.size() != state->m.size() ||
      params.size() != state->v.size())
    throw Error("adam: parameter/gradient/moment size mismatch");
  if (!(lr > 0.0)) throw ConfigError("adam: learning rate must be positive");
  for (double g : grads) {
    if (!std::isfinite(g)) throw Error("adam: non-finite gradient; step aborted");
  }
  state->step++;
  const double bc1 = 1.0 - std::pow(state->beta1, static_cast<double>(state->step));
  const double bc2 = 1.0 - std::pow(state->beta2, static_cast<double>(state->step));
  for (size_t i = 0; i < params.size(); i++) {
    const double g = grads[i];
    state->m[i] = state->beta1 * state->m[i] + (1.0 - state->beta1) * g;
    state->v[i] = state->beta2 * state->v[i] + (1.0 - state->beta2) * g * g;
    const double mhat = state->m[i] / bc1;
    const double vhat = state->v[i] / bc2;
    params[i] -= lr * mhat / (std::sqrt(vhat) + state->eps);
  }
}

}  // namespace asr
