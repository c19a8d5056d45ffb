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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace beaches {

// SplitMix64 finalizer; also used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Seed for one work unit, e.g. derive_seed(master, {trial, user}). Order of
// the stream ids matters; the result does not depend on execution order.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> stream) noexcept;

// Portable random source. The engine is std::mt19937_64, whose output sequence
// the standard fixes. Distributions are implemented here (53-bit uniforms,
// Box-Muller normals) rather than taken from <random>, whose distribution
// algorithms differ between standard libraries.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    double normal();

    // Circularly-symmetric CN(0, variance): real and imaginary parts N(0, variance / 2).
    cdouble complex_normal(double variance);

    std::uint32_t bit() { return static_cast<std::uint32_t>(engine_() >> 63); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace beaches
