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

#include "beaches/channel.hpp"
#include "beaches/complex_vector.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace beaches {

using CMatrix = Eigen::MatrixXcd;

enum class Modulation { qpsk, qam16 };

// Channel estimate handed to the detector.
enum class Estimator {
    ml,          // raw pilot estimate, no denoising
    beaches,     // SURE-tuned beamspace soft-thresholding
    oracle_tau,  // beamspace soft-thresholding at the true-MSE-optimal threshold
    perfect_csi  // noiseless channel
};

std::string to_string(Modulation m);
std::string to_string(Estimator e);
Modulation parse_modulation(std::string_view name);
Estimator parse_estimator(std::string_view name);

// One experiment. SNR is 1/E0 with unit-power channels and symbols, and the
// data-phase noise N0 equals the pilot-phase E0.
struct SimConfig
{
    std::size_t b = 64;
    std::size_t u = 4;
    std::vector<double> snr_db_grid{-10.0, -5.0, 0.0};
    Modulation modulation = Modulation::qam16;
    std::size_t num_channel_trials = 200;
    std::size_t num_data_symbols_per_trial = 2000;
    Profile profile = Profile::los;
    std::vector<Estimator> estimators{Estimator::ml, Estimator::beaches, Estimator::oracle_tau,
                                      Estimator::perfect_csi};
    std::uint64_t master_seed = 1;
    unsigned threads = 0;               // 0: hardware concurrency; never affects results
    bool record_wall_time = false;      // false keeps wall_time_ms at 0 so output is reproducible
    std::vector<std::size_t> scaling_b_list{1024, 4096, 16384, 65536};
    std::size_t scaling_runs = 20;

    // Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

struct SweepRecord
{
    double snr_db = 0.0;            // NaN for records without an SNR axis
    std::string estimator;
    std::string metric;             // "ber", "mse", "sure_min", "runtime_ms"
    double value = 0.0;
    std::size_t trials = 0;         // channel trials (or timing runs) behind the value
    double wall_time_ms = 0.0;
    std::size_t b = 0;
    double std_error = 0.0;         // standard error of value; not serialized
    std::size_t samples = 0;        // bits for BER, channel vectors for MSE; not serialized
};

// ML pilot estimates y_u = h_u + e_u; user u draws its noise from derive_seed(seed, {u}).
std::vector<NoisyObservation> pilot_estimate(const std::vector<ComplexVector> &h, double e0, std::uint64_t seed);

// Stacks equal-length vectors as matrix columns.
CMatrix stack_columns(const std::vector<ComplexVector> &columns);

// Linear MMSE detector W = (H^H H + (N0/Es) I)^{-1} H^H, factored once per
// channel matrix. Throws std::runtime_error reporting the condition number if
// the regularized Gram matrix is numerically singular.
class LmmseEqualizer
{
public:
    LmmseEqualizer(const CMatrix &h, double n0, double es);

    ComplexVector apply(const ComplexVector &rx) const;
    // Columns of rx are independent received vectors.
    CMatrix apply(const CMatrix &rx) const;

    const CMatrix &weights() const noexcept { return w_; }

private:
    CMatrix w_;
};

ComplexVector lmmse_equalize(const CMatrix &h, double n0, double es, const ComplexVector &rx);

int bits_per_symbol(Modulation m);

// Gray-mapped square constellations with unit average energy. 16-QAM uses
// {-3, -1, 1, 3} / sqrt(10) per axis; the first two bits of a symbol select
// the in-phase level, the last two the quadrature level.
std::vector<cdouble> qam_map(std::span<const std::uint8_t> bits, Modulation m);
// Minimum-distance hard decisions.
std::vector<std::uint8_t> qam_demap(std::span<const cdouble> symbols, Modulation m);

// Uncoded BER per (SNR, estimator): pilots at E0, L-MMSE detection with the
// estimated channel of symbols sent through the true channel plus CN(0, N0).
std::vector<SweepRecord> run_ber_sweep(const SimConfig &cfg);

// Per-entry MSE of the channel estimates per (SNR, estimator); beaches also
// reports its mean SURE_min.
std::vector<SweepRecord> run_mse_sweep(const SimConfig &cfg);

// Median wall time of find_tau_star per antenna count, `runs` repetitions each.
std::vector<SweepRecord> run_scaling_benchmark(const std::vector<std::size_t> &b_list, std::size_t runs,
                                               std::uint64_t seed = 1);

} // namespace beaches
