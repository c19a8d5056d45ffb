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

#include "beaches/complex_vector.hpp"

#include <cmath>

namespace beaches {

bool ComplexVector::all_finite() const noexcept
{
    for (const auto &v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return false;
    return true;
}

double ComplexVector::norm2() const noexcept
{
    double acc = 0.0;
    for (const auto &v : data_)
        acc += std::norm(v);
    return acc;
}

} // namespace beaches
