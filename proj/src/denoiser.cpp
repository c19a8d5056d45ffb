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

#include "beaches/denoiser.hpp"

#include "beaches/spectral.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace beaches {

namespace {

// |v| without hypot's overhead; falls back to std::abs near under/overflow.
inline double magnitude(const cdouble &v) noexcept
{
    const double n = v.real() * v.real() + v.imag() * v.imag();
    if (n >= DBL_MIN && n <= DBL_MAX)
        return std::sqrt(n);
    return std::abs(v);
}

void require_usable(const ComplexVector &y, const char *who)
{
    if (y.empty())
        throw std::invalid_argument(std::string(who) + ": input vector is empty");
    if (!y.all_finite())
        throw std::invalid_argument(std::string(who) + ": input contains NaN or Inf");
}

void require_threshold(double tau, const char *who)
{
    if (!std::isfinite(tau) || tau < 0.0)
        throw std::invalid_argument(std::string(who) + ": threshold must be finite and >= 0, got " +
                                    std::to_string(tau));
}

// Magnitudes split into a zero count and the ascending positive values.
struct SortedMagnitudes
{
    std::size_t zeros = 0;
    std::vector<double> positive;
};

SortedMagnitudes sorted_magnitudes(const ComplexVector &y)
{
    SortedMagnitudes out;
    out.positive.reserve(y.size());
    for (const auto &v : y) {
        const double r = magnitude(v);
        if (r == 0.0)
            ++out.zeros;
        else
            out.positive.push_back(r);
    }
    std::sort(out.positive.begin(), out.positive.end());
    return out;
}

} // namespace

DenoiserConfig::DenoiserConfig(double e0) : e0_(e0)
{
    if (!std::isfinite(e0) || e0 <= 0.0)
        throw std::invalid_argument("noise variance e0 must be finite and > 0, got " + std::to_string(e0));
}

ComplexVector soft_threshold(const ComplexVector &y, double tau)
{
    require_threshold(tau, "soft_threshold");
    if (!y.all_finite())
        throw std::invalid_argument("soft_threshold: input contains NaN or Inf");

    ComplexVector out(y.size(), y.domain());
    for (std::size_t b = 0; b < y.size(); ++b) {
        const double r = magnitude(y[b]);
        if (r > tau)
            out[b] = y[b] * ((r - tau) / r);
    }
    return out;
}

double sure_soft(const ComplexVector &y_hat, double tau, const DenoiserConfig &cfg)
{
    require_usable(y_hat, "sure_soft");
    require_threshold(tau, "sure_soft");

    double below_energy = 0.0, above_inv = 0.0;
    std::size_t below = 0, above = 0;
    for (const auto &v : y_hat) {
        const double r = magnitude(v);
        if (r == 0.0 || r < tau) {
            below_energy += r * r;
            ++below;
        } else if (r > tau) {
            above_inv += 1.0 / r;
            ++above;
        } else {
            throw std::domain_error("sure_soft: undefined at tau equal to an entry magnitude (" +
                                    std::to_string(tau) + ")");
        }
    }

    const double b = static_cast<double>(y_hat.size());
    const double e0 = cfg.e0();
    return below_energy / b + static_cast<double>(above) * tau * tau / b + e0 - e0 / b * tau * above_inv -
           2.0 * e0 / b * static_cast<double>(below);
}

double sure_interval_quadratic(std::size_t k, double s, double v, double tau, const DenoiserConfig &cfg,
                               std::size_t b)
{
    const double bd = static_cast<double>(b);
    const double above = static_cast<double>(b - k + 1);
    const double e0 = cfg.e0();
    return s / bd + above / bd * tau * tau + e0 - e0 / bd * tau * v - 2.0 * e0 / bd * static_cast<double>(k - 1);
}

TauSearchResult find_tau_star(const ComplexVector &y_hat, const DenoiserConfig &cfg)
{
    require_usable(y_hat, "find_tau_star");

    const std::size_t b = y_hat.size();
    const auto mags = sorted_magnitudes(y_hat);
    const auto &r = mags.positive;
    const std::size_t n = r.size();

    // s: sum of squares of the magnitudes already passed (below tau).
    // v: sum of inverse magnitudes still ahead (above tau). Summed from the
    // largest magnitude down so the small terms accumulate first.
    double s = 0.0;
    double v = 0.0;
    for (auto it = r.rbegin(); it != r.rend(); ++it)
        v += 1.0 / *it;

    TauSearchResult best;
    best.sure_min = std::numeric_limits<double>::infinity();

    const double e0 = cfg.e0();
    for (std::size_t k = 1; k <= n + 1; ++k) {
        const double lo = (k == 1) ? 0.0 : r[k - 2];
        double tau;
        if (k == n + 1) {
            // Nothing left above tau: SURE is flat on [r_n, inf).
            v = 0.0;
            tau = lo;
        } else {
            const double hi = r[k - 1];
            if (hi > lo) {
                const double vertex = e0 * v / (2.0 * static_cast<double>(n - k + 1));
                tau = std::max(lo, std::min(hi, vertex));
            } else {
                tau = -1.0; // zero-width interval from a tie
            }
        }

        if (tau >= 0.0) {
            const std::size_t k_all = k + mags.zeros;
            const double sure = sure_interval_quadratic(k_all, s, v, tau, cfg, b);
            if (sure < best.sure_min) {
                best.sure_min = sure;
                best.tau_star = tau;
                best.interval_index = k_all;
            }
        }

        if (k <= n) {
            s += r[k - 1] * r[k - 1];
            v = std::max(0.0, v - 1.0 / r[k - 1]);
        }
    }
    return best;
}

TauSearchResult brute_force_tau(const ComplexVector &y_hat, const DenoiserConfig &cfg, double grid_step,
                                double tau_max)
{
    require_usable(y_hat, "brute_force_tau");
    if (!std::isfinite(grid_step) || grid_step <= 0.0)
        throw std::invalid_argument("brute_force_tau: grid step must be finite and > 0");
    if (!std::isfinite(tau_max))
        throw std::invalid_argument("brute_force_tau: tau_max must be finite");

    const auto mags = sorted_magnitudes(y_hat);
    const auto &r = mags.positive;
    const double r_max = r.empty() ? 0.0 : r.back();
    if (tau_max < r_max)
        throw std::invalid_argument("brute_force_tau: tau_max is below the largest magnitude");

    if (r.empty())
        return {0.0, sure_soft(y_hat, 0.0, cfg), y_hat.size() + 1};

    const double steps = std::floor(tau_max / grid_step);
    if (steps > 1e9)
        throw std::invalid_argument("brute_force_tau: grid has more than 1e9 points");

    const auto count = static_cast<std::size_t>(steps);
    auto evaluate = [&](double tau, TauSearchResult &best) {
        if (std::binary_search(r.begin(), r.end(), tau))
            tau += 0.5 * grid_step;
        const double sure = sure_soft(y_hat, tau, cfg);
        if (sure < best.sure_min) {
            best.sure_min = sure;
            best.tau_star = tau;
        }
    };

    TauSearchResult best;
    best.sure_min = std::numeric_limits<double>::infinity();
    evaluate(1e-3 * grid_step, best);
    for (std::size_t i = 1; i <= count; ++i)
        evaluate(static_cast<double>(i) * grid_step, best);
    if (static_cast<double>(count) * grid_step < tau_max)
        evaluate(tau_max, best);

    const auto below = static_cast<std::size_t>(std::lower_bound(r.begin(), r.end(), best.tau_star) - r.begin());
    best.interval_index = mags.zeros + below + 1;
    return best;
}

TauSearchResult brute_force_tau(const ComplexVector &y_hat, const DenoiserConfig &cfg)
{
    require_usable(y_hat, "brute_force_tau");
    double r_max = 0.0;
    for (const auto &v : y_hat)
        r_max = std::max(r_max, magnitude(v));
    if (r_max == 0.0)
        return brute_force_tau(y_hat, cfg, 1.0, 0.0);
    const double step = 1e-4 * r_max;
    return brute_force_tau(y_hat, cfg, step, r_max + step);
}

TauSearchResult find_oracle_tau(const ComplexVector &y_hat, const ComplexVector &h_hat)
{
    require_usable(y_hat, "find_oracle_tau");
    if (h_hat.size() != y_hat.size())
        throw std::invalid_argument("find_oracle_tau: length mismatch between observation and ground truth");

    const std::size_t b = y_hat.size();

    // Per entry with |y| = r > 0 and u = y / r, the error of shrinking by tau < r is
    // |y - h|^2 - 2 tau Re(conj(u) (y - h)) + tau^2; for tau >= r it is |h|^2.
    struct Entry
    {
        double r, d, c, h2;
    };
    std::vector<Entry> entries;
    entries.reserve(b);
    double zeroed = 0.0; // error of entries that are zero for every tau
    for (std::size_t i = 0; i < b; ++i) {
        const double r = magnitude(y_hat[i]);
        const double h2 = std::norm(h_hat[i]);
        if (r == 0.0) {
            zeroed += h2;
            continue;
        }
        const cdouble diff = y_hat[i] - h_hat[i];
        const cdouble unit = y_hat[i] / r;
        entries.push_back({r, std::norm(diff), (std::conj(unit) * diff).real(), h2});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &c) { return a.r < c.r; });

    const std::size_t n = entries.size();
    std::vector<double> d_tail(n + 1, 0.0), c_tail(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        d_tail[i] = d_tail[i + 1] + entries[i].d;
        c_tail[i] = c_tail[i + 1] + entries[i].c;
    }

    TauSearchResult best;
    best.sure_min = std::numeric_limits<double>::infinity();
    double below = zeroed;
    for (std::size_t k = 1; k <= n + 1; ++k) {
        const double lo = (k == 1) ? 0.0 : entries[k - 2].r;
        double tau = lo;
        double err = below;
        if (k <= n) {
            const double hi = entries[k - 1].r;
            const auto active = static_cast<double>(n - k + 1);
            tau = std::max(lo, std::min(hi, c_tail[k - 1] / active));
            err = below + d_tail[k - 1] - 2.0 * tau * c_tail[k - 1] + active * tau * tau;
        }
        if (err < best.sure_min) {
            best.sure_min = err;
            best.tau_star = tau;
            best.interval_index = k + (b - n);
        }
        if (k <= n)
            below += entries[k - 1].h2;
    }
    best.sure_min /= static_cast<double>(b);
    return best;
}

BeachesResult beaches_beamspace(const ComplexVector &y_hat, const DenoiserConfig &cfg)
{
    const auto diag = find_tau_star(y_hat, cfg);
    return {soft_threshold(y_hat, diag.tau_star), diag};
}

BeachesResult beaches(const ComplexVector &y, const DenoiserConfig &cfg)
{
    auto result = beaches_beamspace(dft(y), cfg);
    result.h_star = idft(result.h_star);
    return result;
}

} // namespace beaches
