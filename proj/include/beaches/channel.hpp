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
#include "beaches/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace beaches {

// One plane wave impinging on the array.
struct PathComponent
{
    cdouble alpha;   // complex gain
    double omega;    // spatial frequency in [0, 2 pi), radians per antenna
};

enum class Profile { los, nlos, custom };

std::string to_string(Profile p);
Profile parse_profile(std::string_view name); // throws std::invalid_argument

// Generation parameters of a synthetic propagation scenario. Angles are
// physical incidence angles relative to array broadside; the spatial
// frequency of a path at angle theta is pi sin(theta) (half-wavelength ULA).
struct ProfileParams
{
    Profile kind = Profile::los;
    int min_paths = 1;
    int max_paths = 4;
    double sector_deg = 120.0;          // UE directions are uniform in +-sector/2
    double secondary_min_db = 10.0;     // LoS: non-direct paths sit this far below the direct one ...
    double secondary_range_db = 10.0;   // ... plus up to this much more
    double decay_paths = 8.0;           // nLoS: mean path power falls by 1/e every decay_paths paths
    double angular_spread_deg = 30.0;   // nLoS: paths within +-spread of the UE direction

    static ProfileParams los();
    static ProfileParams nlos();
    static ProfileParams for_profile(Profile p); // custom -> std::invalid_argument
};

struct ChannelModel
{
    std::size_t b = 0;
    std::vector<PathComponent> paths;
    Profile profile = Profile::custom;

    // Throws std::invalid_argument on b < 1, no paths, omega outside [0, 2 pi),
    // non-finite gains, or a LoS model whose first path is not the strongest.
    void validate() const;
};

// Channel estimate y = h + e with e ~ CN(0, e0 I).
struct NoisyObservation
{
    ComplexVector y;
    ComplexVector h_true;
    double e0 = 0.0;
};

// Spatial frequency of a plane wave arriving at theta radians from broadside,
// wrapped into [0, 2 pi).
double angle_to_omega(double theta_rad);

// a(omega)[m] = exp(j m omega), m = 0 .. b-1.
ComplexVector steering_vector(double omega, std::size_t b);

// h = sum_l alpha_l a(omega_l).
ComplexVector synthesize_channel(const ChannelModel &model);

// Random channel of the given profile, normalized to ||h||^2 = b. Bit-identical
// for identical (params, b, seed). With ue_angle_rad set, the first path
// points there instead of a random direction within the sector.
ChannelModel sample_profile(const ProfileParams &params, std::size_t b, std::uint64_t seed,
                            std::optional<double> ue_angle_rad = std::nullopt);

// Channels of u users whose directions (first path) are pairwise at least
// min_separation_deg apart, placed by rejection sampling. User i is generated
// from derive_seed(seed, {i}) once the directions are fixed.
std::vector<ChannelModel> sample_users(const ProfileParams &params, std::size_t b, std::size_t u,
                                       std::uint64_t seed, double min_separation_deg = 1.0);

// y = h + e with e i.i.d. CN(0, e0). Throws std::invalid_argument unless e0 > 0.
NoisyObservation add_noise(const ComplexVector &h, double e0, std::uint64_t seed);
NoisyObservation add_noise(const ComplexVector &h, double e0, Rng &rng);

// (1/B) ||h_est - h_true||^2. Same value in either domain since the DFT is unitary.
double mse(const ComplexVector &h_est, const ComplexVector &h_true);

} // namespace beaches
