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

// Regenerates the checked-in test data under tests/data:
//   denoise_input.csv / denoise_expected.csv  CLI golden pair, tau from the grid oracle
//   characterization.golden                  frozen Monte-Carlo characterizations
//
// usage: golden_gen <tests/data directory>

#include "beaches/channel.hpp"
#include "beaches/denoiser.hpp"
#include "beaches/io.hpp"
#include "beaches/spectral.hpp"

#include "characterization.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace beaches;

int main(int argc, char **argv)
{
    if (argc != 2) {
        std::cerr << "usage: golden_gen <data-dir>\n";
        return 2;
    }
    const std::filesystem::path dir = argv[1];
    std::filesystem::create_directories(dir);

    const std::size_t b = 32;
    const double e0 = 0.1;
    const auto h = synthesize_channel(sample_profile(ProfileParams::los(), b, 77));
    const auto y = add_noise(h, e0, 78).y;
    const DenoiserConfig cfg(e0);
    const auto grid = brute_force_tau(dft(y), cfg);
    const auto expected = idft(soft_threshold(dft(y), grid.tau_star));
    write_vector_csv(dir / "denoise_input.csv", y);
    write_vector_csv(dir / "denoise_expected.csv", expected);

    const auto single = characterization::single_beam();
    const auto los = characterization::profile_stats(Profile::los);
    const auto nlos = characterization::profile_stats(Profile::nlos);

    std::ofstream out(dir / "characterization.golden");
    out << "# Fixed-seed Monte-Carlo characterizations; regenerate with golden_gen.\n"
        << "denoise_e0=" << format_double(e0) << '\n'
        << "denoise_grid_tau=" << format_double(grid.tau_star) << '\n'
        << "single_beam_rate=" << format_double(single.single_rate) << '\n'
        << "single_beam_above_noise_rate=" << format_double(single.above_noise_rate) << '\n'
        << "pure_noise_residual_energy=" << format_double(characterization::pure_noise_residual_energy()) << '\n'
        << "los_top4_half_rate=" << format_double(los.top4_half_rate) << '\n'
        << "los_top16_median=" << format_double(los.top16_median) << '\n'
        << "los_largest_below_half_rate=" << format_double(los.largest_below_half_rate) << '\n'
        << "nlos_top4_half_rate=" << format_double(nlos.top4_half_rate) << '\n'
        << "nlos_top16_median=" << format_double(nlos.top16_median) << '\n'
        << "nlos_largest_below_half_rate=" << format_double(nlos.largest_below_half_rate) << '\n';
    std::cout << "wrote " << dir << '\n';
    return 0;
}
