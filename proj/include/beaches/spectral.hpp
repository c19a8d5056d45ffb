// SPDX-License-Identifier: Apache-2.0
//
// beaches: beamspace channel denoising with SURE-tuned soft-thresholding
// Copyright (C) 2026 The beaches authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "beaches/complex_vector.hpp"

namespace beaches {

// Unitary DFT between the antenna domain and the beamspace domain.
//
//   X[m] = 1/sqrt(B) * sum_n x[n] * exp(-j 2 pi m n / B),   m, n = 0 .. B-1
//
// The forward transform uses the negative exponent, so a steering vector with
// spatial frequency 2 pi k / B lands in bin k. Any B >= 1 is accepted.
// Both functions are safe to call concurrently. They throw
// std::invalid_argument on empty input.
ComplexVector dft(const ComplexVector &x);

// Inverse of dft(): x[n] = 1/sqrt(B) * sum_m X[m] * exp(+j 2 pi m n / B).
ComplexVector idft(const ComplexVector &x);

} // namespace beaches
