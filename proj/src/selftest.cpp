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

#include "beaches/selftest.hpp"

#include "beaches/denoiser.hpp"
#include "beaches/rng.hpp"
#include "beaches/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <ostream>
#include <sstream>

namespace beaches {

namespace {

ComplexVector random_vector(Rng &rng, std::size_t b, double variance = 1.0)
{
    ComplexVector x(b);
    for (auto &v : x)
        v = rng.complex_normal(variance);
    return x;
}

// Returns an empty string on success, a failure description otherwise.
using Check = std::function<std::string()>;

std::string check_parseval(std::uint64_t seed)
{
    Rng rng(seed);
    for (std::size_t b : {1, 2, 3, 5, 8, 256, 1000}) {
        const auto x = random_vector(rng, b);
        const double n_in = std::sqrt(x.norm2());
        const double n_out = std::sqrt(dft(x).norm2());
        if (std::abs(n_out - n_in) > 1e-10 * n_in)
            return "norm changed at B=" + std::to_string(b);
    }
    return {};
}

std::string check_round_trip(std::uint64_t seed)
{
    Rng rng(seed);
    for (std::size_t b : {1, 7, 64, 1000}) {
        const auto x = random_vector(rng, b);
        const auto back = idft(dft(x));
        double max_in = 0.0, max_err = 0.0;
        for (std::size_t i = 0; i < b; ++i) {
            max_in = std::max(max_in, std::abs(x[i]));
            max_err = std::max(max_err, std::abs(back[i] - x[i]));
        }
        if (max_err > 1e-10 * max_in)
            return "round-trip error at B=" + std::to_string(b);
    }
    return {};
}

std::string check_shrinkage(std::uint64_t seed)
{
    Rng rng(seed);
    for (int trial = 0; trial < 50; ++trial) {
        const auto y = random_vector(rng, 64, 4.0);
        double prev_norm = INFINITY;
        for (double tau : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
            const auto z = soft_threshold(y, tau);
            for (std::size_t i = 0; i < y.size(); ++i) {
                if (std::abs(z[i]) > std::abs(y[i]) * (1.0 + 1e-15))
                    return "magnitude grew";
                if (z[i] != 0.0 && std::abs(std::arg(z[i]) - std::arg(y[i])) > 1e-12)
                    return "phase changed";
            }
            const double n = z.norm2();
            if (n > prev_norm)
                return "norm not monotone in tau";
            prev_norm = n;
        }
    }
    return {};
}

std::string check_piecewise(std::uint64_t seed, const DenoiserConfig &cfg)
{
    Rng rng(seed);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t b = 1 + static_cast<std::size_t>(rng.uniform_int(0, 31));
        const auto y = random_vector(rng, b, 3.0);
        std::vector<double> r;
        for (const auto &v : y)
            r.push_back(std::abs(v));
        std::sort(r.begin(), r.end());
        double s = 0.0, v = 0.0;
        for (double m : r)
            v += 1.0 / m;
        for (std::size_t k = 1; k <= b + 1; ++k) {
            const double lo = k == 1 ? 0.0 : r[k - 2];
            const double hi = k == b + 1 ? lo + 1.0 : r[k - 1];
            if (hi > lo) {
                const double tau = lo + 0.37 * (hi - lo);
                const double quad = sure_interval_quadratic(k, s, k == b + 1 ? 0.0 : v, tau, cfg, b);
                const double direct = sure_soft(y, tau, cfg);
                if (std::abs(quad - direct) > 1e-10 * std::max(1.0, std::abs(direct)))
                    return "interval " + std::to_string(k) + " disagrees with the direct evaluation";
            }
            if (k <= b) {
                s += r[k - 1] * r[k - 1];
                v -= 1.0 / r[k - 1];
            }
        }
    }
    return {};
}

std::string check_oracle(std::uint64_t seed, const DenoiserConfig &cfg)
{
    Rng rng(seed);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t b = 1 + static_cast<std::size_t>(rng.uniform_int(0, 31));
        auto y = random_vector(rng, b, cfg.e0());
        for (int i = 0; i < 2; ++i)
            y[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(b) - 1))] +=
                rng.complex_normal(25.0 * cfg.e0());

        double r_max = 0.0, v = 0.0;
        for (const auto &x : y) {
            r_max = std::max(r_max, std::abs(x));
            v += 1.0 / std::abs(x);
        }
        const double step = 1e-4 * r_max;
        const auto fast = find_tau_star(y, cfg);
        const auto grid = brute_force_tau(y, cfg, step, r_max + step);
        const double slack = step * (2.0 * (r_max + step) + cfg.e0() / static_cast<double>(b) * v) + step * step;
        if (fast.sure_min > grid.sure_min + 1e-12)
            return "sorted search above the grid minimum";
        if (grid.sure_min - fast.sure_min > slack)
            return "grid minimum further than the curvature bound";
    }
    return {};
}

std::string check_unbiased(std::uint64_t seed, const DenoiserConfig &cfg, std::size_t draws)
{
    const std::size_t b = 32;
    const double e0 = cfg.e0();
    ComplexVector h(b, Domain::beamspace);
    h[3] = {3.0 * std::sqrt(e0), 0.0};
    h[10] = {0.0, -2.0 * std::sqrt(e0)};
    h[17] = {1.5 * std::sqrt(e0), 1.5 * std::sqrt(e0)};
    h[29] = {-4.0 * std::sqrt(e0), 1.0 * std::sqrt(e0)};
    const double tau = std::sqrt(e0);

    Rng rng(seed);
    double sum = 0.0, sum_sq = 0.0;
    ComplexVector y(b, Domain::beamspace);
    for (std::size_t n = 0; n < draws; ++n) {
        for (std::size_t i = 0; i < b; ++i)
            y[i] = h[i] + rng.complex_normal(e0);
        const auto z = soft_threshold(y, tau);
        double err = 0.0;
        for (std::size_t i = 0; i < b; ++i)
            err += std::norm(z[i] - h[i]);
        const double d = sure_soft(y, tau, cfg) - err / static_cast<double>(b);
        sum += d;
        sum_sq += d * d;
    }
    const double nd = static_cast<double>(draws);
    const double mean = sum / nd;
    const double sd = std::sqrt(std::max(0.0, sum_sq / nd - mean * mean));
    if (std::abs(mean) >= 4.0 * sd / std::sqrt(nd)) {
        std::ostringstream msg;
        msg << "bias " << mean << " exceeds 4 standard errors (" << 4.0 * sd / std::sqrt(nd) << ")";
        return msg.str();
    }
    return {};
}

} // namespace

std::vector<PropertyOutcome> run_selftest(const SelftestOptions &opts, std::ostream &log)
{
    const std::vector<std::pair<std::string, Check>> checks = {
        {"parseval", [&] { return check_parseval(opts.seed); }},
        {"dft_round_trip", [&] { return check_round_trip(opts.seed + 1); }},
        {"shrinkage_monotonicity", [&] { return check_shrinkage(opts.seed + 2); }},
        {"piecewise_consistency", [&] { return check_piecewise(opts.seed + 3, DenoiserConfig(opts.e0)); }},
        {"oracle_agreement", [&] { return check_oracle(opts.seed + 4, DenoiserConfig(opts.e0)); }},
        {"unbiasedness",
         [&] { return check_unbiased(opts.seed + 5, DenoiserConfig(opts.e0), opts.unbiasedness_draws); }},
    };

    std::vector<PropertyOutcome> outcomes;
    for (const auto &[name, check] : checks) {
        PropertyOutcome o{name, false, {}};
        try {
            o.detail = check();
            o.passed = o.detail.empty();
        } catch (const std::exception &e) {
            o.detail = std::string("precondition failed: ") + e.what();
        }
        log << (o.passed ? "PASS " : "FAIL ") << o.name;
        if (!o.passed)
            log << ": " << o.detail;
        log << '\n';
        outcomes.push_back(std::move(o));
    }
    return outcomes;
}

} // namespace beaches
