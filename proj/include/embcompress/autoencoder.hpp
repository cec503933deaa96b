// Copyright 2026 The embcompress Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Loss and gradient of the single-hidden-layer autoencoder, exposed so the
// training loop and gradient checks share one implementation.

#ifndef EMBCOMPRESS_AUTOENCODER_HPP_
#define EMBCOMPRESS_AUTOENCODER_HPP_

#include "embcompress/common.hpp"
#include "embcompress/reducers.hpp"
#include "embcompress/rng.hpp"

namespace embcompress {

struct AeParams {
  Matrix w1;  // k x d
  Vector b1;  // k
  Matrix w2;  // d x k
  Vector b2;  // d

  static AeParams Zeros(Index dim, Index k);
  // Glorot-uniform weights in +-sqrt(6 / (d + k)), zero biases.
  static AeParams GlorotInit(Index dim, Index k, RngStream& rng);
};

// Mean over rows and coordinates of (x - decode(encode(x)))^2 for an
// already-centred batch. Fills `grad` when non-null.
double AutoencoderLoss(const AeParams& params, const RowMatrix& batch,
                       AeParams* grad = nullptr);

}  // namespace embcompress

#endif  // EMBCOMPRESS_AUTOENCODER_HPP_
