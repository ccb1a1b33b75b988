// asr/optim.h

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

#ifndef ASR_OPTIM_H_
#define ASR_OPTIM_H_

#include <cstdint>
#include <span>
#include <vector>

namespace asr {

// Learning rate decays by decay_factor once per decay_every epochs:
// lr(epoch) = initial / decay_factor^floor(epoch / decay_every).
struct LrSchedule {
  double initial = 1e-3;
  double decay_factor = 10.0;
  int decay_every = 2;

  double At(int epoch) const;
};

struct AdamState {
  int64_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::vector<double> m, v;  // first/second moments, parameter-shaped

  void Init(size_t param_count);
  // Rounds moments through the 32-bit checkpoint grid.
  void SnapToStorage();
};

// Bias-corrected Adam update. Throws Error on non-finite gradients before
// touching the parameters.
void AdamStep(std::span<double> params, std::span<const double> grads, AdamState* state,
              double lr);

}  // namespace asr

#endif  // ASR_OPTIM_H_
