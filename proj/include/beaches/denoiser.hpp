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

#include <cstddef>

namespace beaches {

// Noise variance per complex entry of the channel-estimation error
// (linear power units). Must be positive and finite; the constructor throws
// std::invalid_argument otherwise.
class DenoiserConfig
{
public:
    explicit DenoiserConfig(double e0);
    double e0() const noexcept { return e0_; }

private:
    double e0_;
};

// Outcome of a threshold search.
struct TauSearchResult
{
    double tau_star = 0.0;       // minimizing threshold, amplitude units
    double sure_min = 0.0;       // risk estimate at tau_star, power units
    std::size_t interval_index = 1; // k in [1, B+1]: tau_star lies in [r_{k-1}, r_k] of the sorted magnitudes
};

// Entrywise complex soft-thresholding: y_b / |y_b| * max(|y_b| - tau, 0), with
// 0 mapped to 0. Throws std::invalid_argument for negative or non-finite tau,
// or for non-finite input entries. The domain tag is preserved.
ComplexVector soft_threshold(const ComplexVector &y, double tau);

// Stein's unbiased risk estimate of the per-entry MSE of soft_threshold(y_hat, tau)
// under y_hat ~ CN(h_hat, e0 I):
//
//   1/B sum_{|y|<tau} |y|^2 + 1/B sum_{|y|>tau} tau^2 + e0
//     - e0/B tau sum_{|y|>tau} 1/|y| - 2 e0/B #{|y|<tau}
//
// Zero entries count as below every threshold, including tau = 0. The estimate
// is undefined when tau equals a nonzero magnitude; that case throws
// std::domain_error so the caller can perturb tau.
double sure_soft(const ComplexVector &y_hat, double tau, const DenoiserConfig &cfg);

// Risk estimate restricted to interval k of the sorted magnitudes, where it is
// a quadratic in tau:
//
//   s/B + (B-k+1)/B tau^2 + e0 - e0/B tau v - 2 e0/B (k-1)
//
// s is the sum of squared magnitudes below the interval, v the sum of inverse
// magnitudes above it.
double sure_interval_quadratic(std::size_t k, double s, double v, double tau, const DenoiserConfig &cfg,
                               std::size_t b);

// Exact global minimizer of sure_soft over tau in [0, inf).
//
// Sorts the magnitudes, then walks the B+1 intervals between consecutive
// sorted magnitudes, clamping the unconstrained vertex of each interval's
// quadratic into the interval and evaluating it there. A value at an interval
// boundary is the one-sided limit from inside that interval. O(B log B).
//
// Zero-magnitude entries never enter the interval walk; they contribute a
// constant -2 e0 / B each. Zero-width intervals from tied magnitudes are
// skipped. Throws std::invalid_argument for an empty vector or non-finite
// entries.
TauSearchResult find_tau_star(const ComplexVector &y_hat, const DenoiserConfig &cfg);

// Grid search oracle for find_tau_star: evaluates sure_soft at
// {eps, step, 2 step, ..., tau_max}, shifting any grid point that coincides
// with a magnitude by step/2, and returns the grid argmin.
// Requires step > 0 and tau_max >= max |y_hat|; throws std::invalid_argument
// otherwise, or when the grid would exceed 10^9 points.
TauSearchResult brute_force_tau(const ComplexVector &y_hat, const DenoiserConfig &cfg, double grid_step,
                                double tau_max);

// Default oracle grid: step = 1e-4 * max|y_hat|, tau_max = max|y_hat| + step.
TauSearchResult brute_force_tau(const ComplexVector &y_hat, const DenoiserConfig &cfg);

// Threshold that minimizes the TRUE squared error ||soft_threshold(y_hat, tau) - h_hat||^2.
// Needs the ground truth, so it is only a benchmark. Exact: the error is also
// piecewise quadratic on the sorted-magnitude intervals. sure_min holds the
// attained per-entry MSE.
TauSearchResult find_oracle_tau(const ComplexVector &y_hat, const ComplexVector &h_hat);

struct BeachesResult
{
    ComplexVector h_star;        // denoised channel, antenna domain
    TauSearchResult diagnostics;
};

// Full pipeline: beamspace transform, SURE-optimal soft-thresholding, inverse
// transform.
BeachesResult beaches(const ComplexVector &y, const DenoiserConfig &cfg);

// Same, for input already in the beamspace domain; h_star stays in beamspace.
BeachesResult beaches_beamspace(const ComplexVector &y_hat, const DenoiserConfig &cfg);

} // namespace beaches
