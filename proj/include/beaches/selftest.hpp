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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace beaches {

struct SelftestOptions
{
    double e0 = 1.0;                   // noise variance used by the denoiser checks
    std::uint64_t seed = 20260101;
    std::size_t unbiasedness_draws = 20000;
};

struct PropertyOutcome
{
    std::string name;
    bool passed = false;
    std::string detail;
};

// Fast invariant suite: Parseval, round trip, shrinkage, monotonicity,
// piecewise SURE consistency, oracle agreement at B <= 32 and a reduced-size
// unbiasedness check. One line per property is written to `log`.
// A violated precondition (e.g. a non-positive e0) fails the property that hit
// it instead of aborting the suite.
std::vector<PropertyOutcome> run_selftest(const SelftestOptions &opts, std::ostream &log);

} // namespace beaches
