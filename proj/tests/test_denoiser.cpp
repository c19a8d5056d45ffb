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

#include "beaches/channel.hpp"
#include "beaches/denoiser.hpp"
#include "beaches/rng.hpp"
#include "beaches/spectral.hpp"

#include "characterization.hpp"
#include "golden.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

using namespace beaches;

namespace {

ComplexVector noise_vector(Rng &rng, std::size_t b, double variance, Domain d = Domain::beamspace)
{
    ComplexVector x(b, d);
    for (auto &v : x)
        v = rng.complex_normal(variance);
    return x;
}

// Random instance with a few strong entries over a noise floor.
ComplexVector sparse_instance(Rng &rng, std::size_t b, double e0)
{
    auto y = noise_vector(rng, b, e0);
    const auto strong = rng.uniform_int(0, 3);
    for (std::int64_t i = 0; i < strong; ++i)
        y[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(b) - 1))] +=
            rng.complex_normal(30.0 * e0);
    return y;
}

double max_magnitude(const ComplexVector &y)
{
    double m = 0.0;
    for (const auto &v : y)
        m = std::max(m, std::abs(v));
    return m;
}

double inverse_sum(const ComplexVector &y)
{
    double v = 0.0;
    for (const auto &x : y)
        if (std::abs(x) > 0.0)
            v += 1.0 / std::abs(x);
    return v;
}

// Largest amount by which a grid minimum (step `step`, up to r_max + step) can
// exceed the exact infimum: the continuous part of SURE is Lipschitz with
// constant 2 tau + (E0/B) V and every jump across a magnitude is downward.
double grid_gap_bound(const ComplexVector &y, double e0, double step)
{
    const double tau_max = max_magnitude(y) + step;
    return step * (2.0 * tau_max + e0 / static_cast<double>(y.size()) * inverse_sum(y)) + step * step;
}

} // namespace

TEST_SUITE("soft_threshold")
{
    TEST_CASE("shrinks 3+4j by 2 along its phase")
    {
        const auto z = soft_threshold(ComplexVector{cdouble(3.0, 4.0)}, 2.0);
        CHECK(z[0].real() == doctest::Approx(1.8).epsilon(1e-15));
        CHECK(z[0].imag() == doctest::Approx(2.4).epsilon(1e-15));
    }

    TEST_CASE("zero threshold is the identity")
    {
        Rng rng(1);
        const auto y = noise_vector(rng, 33, 2.0);
        CHECK(soft_threshold(y, 0.0) == y);
    }

    TEST_CASE("entries below the threshold vanish, zero maps to zero")
    {
        const auto z = soft_threshold(ComplexVector{cdouble(1.0, 0.0), cdouble(0.0, 0.0)}, 2.0);
        CHECK(z[0] == cdouble(0.0));
        CHECK(z[1] == cdouble(0.0));
        CHECK(soft_threshold(ComplexVector{cdouble(0.0)}, 0.0)[0] == cdouble(0.0));
    }

    TEST_CASE("rejects negative thresholds and NaN input")
    {
        CHECK_THROWS_AS(soft_threshold(ComplexVector{1.0}, -0.1), std::invalid_argument);
        CHECK_THROWS_AS(soft_threshold(ComplexVector{1.0}, std::numeric_limits<double>::quiet_NaN()),
                        std::invalid_argument);
        CHECK_THROWS_AS(soft_threshold(ComplexVector{cdouble(std::numeric_limits<double>::quiet_NaN(), 0.0)}, 1.0),
                        std::invalid_argument);
    }

    TEST_CASE("property: shrinkage, phase preservation, monotone norm")
    {
        Rng rng(2);
        for (int trial = 0; trial < 200; ++trial) {
            const auto b = static_cast<std::size_t>(rng.uniform_int(1, 80));
            const auto y = noise_vector(rng, b, rng.uniform(0.1, 10.0));
            std::vector<double> taus;
            for (int i = 0; i < 6; ++i)
                taus.push_back(rng.uniform(0.0, 5.0));
            std::sort(taus.begin(), taus.end());
            double prev = std::numeric_limits<double>::infinity();
            for (double tau : taus) {
                const auto z = soft_threshold(y, tau);
                for (std::size_t i = 0; i < b; ++i) {
                    REQUIRE(std::abs(z[i]) <= std::abs(y[i]) * (1.0 + 1e-15));
                    if (z[i] != 0.0)
                        REQUIRE(std::abs(std::arg(z[i] / y[i])) < 1e-12);
                }
                REQUIRE(z.norm2() <= prev);
                prev = z.norm2();
            }
        }
    }
}

TEST_SUITE("sure")
{
    TEST_CASE("hand-evaluated five-term value")
    {
        // |y| = {5, 1, 0.1}, tau = 0.5, E0 = 1, B = 3:
        // (0.01 + 2 * 0.25) / 3 + 1 - (0.5 * (0.2 + 1)) / 3 - 2 / 3 = 91 / 300
        const ComplexVector y{cdouble(3.0, 4.0), cdouble(1.0, 0.0), cdouble(0.0, 0.1)};
        CHECK(sure_soft(y, 0.5, DenoiserConfig(1.0)) == doctest::Approx(91.0 / 300.0).epsilon(1e-14));
    }

    TEST_CASE("above every magnitude SURE is ||y||^2 / B - E0")
    {
        Rng rng(3);
        const auto y = noise_vector(rng, 40, 1.0);
        const DenoiserConfig cfg(0.7);
        const double tau = max_magnitude(y) * 1.5;
        CHECK(sure_soft(y, tau, cfg) == doctest::Approx(y.norm2() / 40.0 - 0.7).epsilon(1e-13));
    }

    TEST_CASE("tends to E0 as tau goes to zero")
    {
        Rng rng(4);
        const auto y = noise_vector(rng, 40, 1.0);
        const DenoiserConfig cfg(2.5);
        CHECK(sure_soft(y, 1e-12, cfg) == doctest::Approx(2.5).epsilon(1e-9));
        CHECK(sure_soft(y, 0.0, cfg) == doctest::Approx(2.5).epsilon(1e-15));
    }

    TEST_CASE("zero entries count as thresholded, also at tau = 0")
    {
        const ComplexVector y{cdouble(0.0), cdouble(2.0, 0.0)};
        const DenoiserConfig cfg(1.0);
        // tau = 0: 0 + 0 + 1 - 0 - 2 * 1/2 = 0
        CHECK(sure_soft(y, 0.0, cfg) == doctest::Approx(0.0));
        // tau = 1: (1 + 0)/2 ... one above: 1/2 * 1 + 1 - 1/2 * 1 * 0.5 - 1 = 0.25
        CHECK(sure_soft(y, 1.0, cfg) == doctest::Approx(0.25));
    }

    TEST_CASE("undefined at a magnitude, invalid for negative tau or empty input")
    {
        const ComplexVector y{cdouble(3.0, 4.0), cdouble(1.0, 0.0)};
        const DenoiserConfig cfg(1.0);
        CHECK_THROWS_AS(sure_soft(y, 5.0, cfg), std::domain_error);
        CHECK_THROWS_AS(sure_soft(y, 1.0, cfg), std::domain_error);
        CHECK_THROWS_AS(sure_soft(y, -1.0, cfg), std::invalid_argument);
        CHECK_THROWS_AS(sure_soft(ComplexVector{}, 1.0, cfg), std::invalid_argument);
    }

    TEST_CASE("config rejects non-positive noise variance")
    {
        CHECK_THROWS_AS(DenoiserConfig(0.0), std::invalid_argument);
        CHECK_THROWS_AS(DenoiserConfig(-1.0), std::invalid_argument);
        CHECK_THROWS_AS(DenoiserConfig(std::numeric_limits<double>::infinity()), std::invalid_argument);
    }

    TEST_CASE("interval quadratic: last interval and first-interval origin")
    {
        Rng rng(5);
        const auto y = noise_vector(rng, 16, 1.0);
        const DenoiserConfig cfg(0.9);
        CHECK(sure_interval_quadratic(17, y.norm2(), 0.0, 123.0, cfg, 16) ==
              doctest::Approx(y.norm2() / 16.0 - 0.9).epsilon(1e-14));
        CHECK(sure_interval_quadratic(1, 0.0, inverse_sum(y), 0.0, cfg, 16) == doctest::Approx(0.9));
    }

    TEST_CASE("property: interval quadratic matches the direct evaluation inside every interval")
    {
        Rng rng(6);
        for (int trial = 0; trial < 300; ++trial) {
            const auto b = static_cast<std::size_t>(rng.uniform_int(1, 64));
            const DenoiserConfig cfg(rng.uniform(0.05, 5.0));
            const auto y = sparse_instance(rng, b, cfg.e0());
            std::vector<double> r;
            for (const auto &v : y)
                r.push_back(std::abs(v));
            std::sort(r.begin(), r.end());

            double s = 0.0, v = 0.0;
            for (double m : r)
                v += 1.0 / m;
            for (std::size_t k = 1; k <= b + 1; ++k) {
                const double lo = k == 1 ? 0.0 : r[k - 2];
                const double hi = k == b + 1 ? 2.0 * lo + 1.0 : r[k - 1];
                for (double frac : {0.01, 0.5, 0.99}) {
                    const double tau = lo + frac * (hi - lo);
                    if (!(tau > lo && tau < hi))
                        continue;
                    const double quad = sure_interval_quadratic(k, s, k == b + 1 ? 0.0 : v, tau, cfg, b);
                    REQUIRE(std::abs(quad - sure_soft(y, tau, cfg)) <= 1e-10);
                }
                if (k <= b) {
                    s += r[k - 1] * r[k - 1];
                    v -= 1.0 / r[k - 1];
                }
            }
        }
    }
}

TEST_SUITE("find_tau_star")
{
    TEST_CASE("all-zero vector")
    {
        const ComplexVector y(8, Domain::beamspace);
        const DenoiserConfig cfg(1.0);
        const auto res = find_tau_star(y, cfg);
        CHECK(res.tau_star == 0.0);
        CHECK(res.sure_min == doctest::Approx(-1.0));
        CHECK(res.interval_index == 9);
        for (const auto &v : soft_threshold(y, res.tau_star))
            CHECK(v == cdouble(0.0));

        const auto grid = brute_force_tau(y, cfg);
        CHECK(grid.tau_star == 0.0);
        CHECK(grid.sure_min == doctest::Approx(res.sure_min));
    }

    TEST_CASE("three-entry example matches the exact piecewise minimum and the grid")
    {
        // Independent enumeration of all interval vertices and boundary limits
        // gives the minimum at the lower limit of (1, 5): tau = 1, SURE = 0.27.
        const ComplexVector y{cdouble(3.0, 4.0), cdouble(1.0, 0.0), cdouble(0.0, 0.1)};
        const DenoiserConfig cfg(1.0);
        const auto fast = find_tau_star(y, cfg);
        CHECK(fast.tau_star == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(fast.sure_min == doctest::Approx(0.27).epsilon(1e-14));
        CHECK(fast.interval_index == 3);

        const auto grid = brute_force_tau(y, cfg, 1e-4, 6.0);
        CHECK(std::abs(grid.tau_star - fast.tau_star) <= 1e-4);
        CHECK(fast.sure_min <= grid.sure_min);
        // slope of interval 3 at tau = 1 is 2/3 - 0.2/3 = 0.6
        CHECK(grid.sure_min - fast.sure_min <= 0.6 * 1e-4 + 1e-12);
    }

    TEST_CASE("single entry: both searches pick the same side")
    {
        Rng rng(7);
        for (int trial = 0; trial < 200; ++trial) {
            const double r = rng.uniform(0.01, 6.0);
            const ComplexVector y{std::polar(r, rng.uniform(0.0, 6.28))};
            const DenoiserConfig cfg(1.0);
            const auto fast = find_tau_star(y, cfg);
            const auto grid = brute_force_tau(y, cfg);
            const bool fast_low = fast.tau_star < 0.5 * r;
            const bool grid_low = grid.tau_star < 0.5 * r;
            CHECK_MESSAGE(fast_low == grid_low, "r=" << r);
            CHECK(fast.sure_min <= grid.sure_min + 1e-12);
        }
    }

    TEST_CASE("property: never above the grid, and within the grid gap bound")
    {
        Rng rng(8);
        for (int trial = 0; trial < 300; ++trial) {
            const auto b = static_cast<std::size_t>(rng.uniform_int(1, 64));
            constexpr std::array<double, 3> e0s{0.1, 1.0, 10.0};
            const DenoiserConfig cfg(e0s[static_cast<std::size_t>(rng.uniform_int(0, 2))]);
            const auto y = sparse_instance(rng, b, cfg.e0());
            const double step = 1e-4 * max_magnitude(y);
            const auto fast = find_tau_star(y, cfg);
            const auto grid = brute_force_tau(y, cfg);
            REQUIRE(fast.sure_min <= grid.sure_min + 1e-12);
            REQUIRE(grid.sure_min - fast.sure_min <= grid_gap_bound(y, cfg.e0(), step));
            REQUIRE(fast.tau_star >= 0.0);
        }
    }

    TEST_CASE("reported minimum is the boundary-limit value of sure_soft")
    {
        Rng rng(9);
        for (int trial = 0; trial < 100; ++trial) {
            const auto b = static_cast<std::size_t>(rng.uniform_int(2, 64));
            const DenoiserConfig cfg(1.0);
            const auto y = sparse_instance(rng, b, 1.0);
            const auto res = find_tau_star(y, cfg);
            // Step a hair into the winning interval; interval k starts at r_{k-1}.
            std::vector<double> r;
            for (const auto &v : y)
                r.push_back(std::abs(v));
            std::sort(r.begin(), r.end());
            const double lo = res.interval_index == 1 ? 0.0 : r[res.interval_index - 2];
            const double hi = res.interval_index == b + 1 ? lo + 1.0 : r[res.interval_index - 1];
            const double eps = 1e-9 * (hi - lo);
            const double inside = std::clamp(res.tau_star, lo + eps, hi - eps);
            REQUIRE(std::abs(sure_soft(y, inside, cfg) - res.sure_min) < 1e-6);
        }
    }

    TEST_CASE("zero entries are a constant offset")
    {
        Rng rng(10);
        for (int trial = 0; trial < 100; ++trial) {
            const auto b = static_cast<std::size_t>(rng.uniform_int(2, 40));
            const DenoiserConfig cfg(1.0);
            auto y = sparse_instance(rng, b, 1.0);
            const auto zeros = rng.uniform_int(1, static_cast<std::int64_t>(b) - 1);
            for (std::int64_t i = 0; i < zeros; ++i)
                y[static_cast<std::size_t>(i)] = 0.0;
            const auto fast = find_tau_star(y, cfg);
            const auto grid = brute_force_tau(y, cfg);
            REQUIRE(std::isfinite(fast.sure_min));
            REQUIRE(fast.sure_min <= grid.sure_min + 1e-12);
            REQUIRE(grid.sure_min - fast.sure_min <= grid_gap_bound(y, 1.0, 1e-4 * max_magnitude(y)));
        }
    }

    TEST_CASE("tied magnitudes: order independent and consistent with the grid")
    {
        const DenoiserConfig cfg(1.0);
        ComplexVector y{cdouble(2.0, 0.0), cdouble(0.0, 2.0), cdouble(-2.0, 0.0), cdouble(0.5, 0.0),
                        cdouble(0.0, -0.5), cdouble(6.0, 8.0)};
        const auto a = find_tau_star(y, cfg);
        std::reverse(y.begin(), y.end());
        const auto b = find_tau_star(y, cfg);
        CHECK(a.tau_star == b.tau_star);
        CHECK(a.sure_min == b.sure_min);
        const auto grid = brute_force_tau(y, cfg);
        CHECK(a.sure_min <= grid.sure_min + 1e-12);
        CHECK(grid.sure_min - a.sure_min <= grid_gap_bound(y, 1.0, 1e-4 * 10.0));
    }

    TEST_CASE("rejects empty and non-finite input")
    {
        const DenoiserConfig cfg(1.0);
        CHECK_THROWS_AS(find_tau_star(ComplexVector{}, cfg), std::invalid_argument);
        CHECK_THROWS_AS(find_tau_star(ComplexVector{cdouble(std::numeric_limits<double>::infinity(), 0.0)}, cfg),
                        std::invalid_argument);
    }

    TEST_CASE("strong single beam: characterization rates are stable")
    {
        const auto stats = characterization::single_beam();
        MESSAGE("single-beam rate " << stats.single_rate << ", tau above noise max " << stats.above_noise_rate);
        CHECK(stats.single_rate == doctest::Approx(golden::value("single_beam_rate")).epsilon(1e-12));
        CHECK(stats.above_noise_rate == doctest::Approx(golden::value("single_beam_above_noise_rate")).epsilon(1e-12));
    }

    TEST_CASE("strong single beam: exactly one entry survives in at least 95% of trials")
    {
        CHECK(characterization::single_beam().single_rate >= 0.95);
    }
}

TEST_SUITE("brute_force_tau")
{
    TEST_CASE("degenerate grids are rejected")
    {
        const ComplexVector y{cdouble(1.0, 1.0)};
        const DenoiserConfig cfg(1.0);
        CHECK_THROWS_AS(brute_force_tau(y, cfg, 0.0, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(brute_force_tau(y, cfg, -1.0, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(brute_force_tau(y, cfg, 0.1, 1.0), std::invalid_argument); // below max |y|
        CHECK_THROWS_AS(brute_force_tau(y, cfg, 1e-12, 2.0), std::invalid_argument); // too many points
    }

    TEST_CASE("grid points on a magnitude are shifted, not evaluated")
    {
        // Magnitude 1 lies exactly on the grid.
        const ComplexVector y{cdouble(1.0, 0.0), cdouble(0.0, 0.25)};
        CHECK_NOTHROW(brute_force_tau(y, DenoiserConfig(1.0), 0.25, 1.5));
    }
}

TEST_SUITE("find_oracle_tau")
{
    TEST_CASE("matches a dense grid over the true error")
    {
        Rng rng(11);
        for (int trial = 0; trial < 50; ++trial) {
            const auto b = static_cast<std::size_t>(rng.uniform_int(1, 48));
            ComplexVector h(b, Domain::beamspace);
            for (int i = 0; i < 3; ++i)
                h[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(b) - 1))] =
                    rng.complex_normal(20.0);
            ComplexVector y(b, Domain::beamspace);
            for (std::size_t i = 0; i < b; ++i)
                y[i] = h[i] + rng.complex_normal(1.0);

            const auto oracle = find_oracle_tau(y, h);
            const double r_max = max_magnitude(y);
            double grid_best = std::numeric_limits<double>::infinity();
            for (int i = 0; i <= 20000; ++i) {
                const double tau = r_max * 1.001 * i / 20000.0;
                grid_best = std::min(grid_best, mse(soft_threshold(y, tau), h));
            }
            REQUIRE(oracle.sure_min <= grid_best + 1e-12);
            REQUIRE(std::abs(mse(soft_threshold(y, oracle.tau_star), h) - oracle.sure_min) < 1e-10);
            REQUIRE(grid_best - oracle.sure_min < 1e-3);
        }
    }
}

TEST_SUITE("beaches")
{
    TEST_CASE("high per-bin SNR leaves the observation nearly untouched")
    {
        Rng rng(12);
        const std::size_t b = 64;
        ComplexVector h_hat(b, Domain::beamspace);
        for (auto &v : h_hat)
            v = std::polar(rng.uniform(40.0, 100.0), rng.uniform(0.0, 6.28)); // >= 32 dB per bin at E0 = 1
        const auto h = idft(h_hat);
        const auto y = add_noise(h, 1.0, 99).y;
        const auto res = beaches::beaches(y, DenoiserConfig(1.0));
        ComplexVector diff(b);
        for (std::size_t i = 0; i < b; ++i)
            diff[i] = res.h_star[i] - y[i];
        CHECK(std::sqrt(diff.norm2() / y.norm2()) < 0.05);
        CHECK(res.h_star.domain() == Domain::antenna);
    }

    TEST_CASE("noiseless steering vector at vanishing E0 is reproduced")
    {
        for (double omega : {2.0 * std::numbers::pi * 5.0 / 64.0, 1.2345}) {
            const auto h = steering_vector(omega, 64);
            const auto res = beaches::beaches(h, DenoiserConfig(1e-6));
            double err = 0.0;
            for (std::size_t i = 0; i < h.size(); ++i)
                err += std::norm(res.h_star[i] - h[i]);
            CHECK(std::sqrt(err / h.norm2()) < 1e-3);
        }
    }

    TEST_CASE("pure noise is mostly suppressed")
    {
        const double e0 = 1.0;
        const double mean_energy = characterization::pure_noise_residual_energy();
        MESSAGE("mean residual energy per entry on pure noise: " << mean_energy);
        CHECK(mean_energy < e0 / 4.0);
        CHECK(mean_energy == doctest::Approx(golden::value("pure_noise_residual_energy")).epsilon(1e-9));
    }

    TEST_CASE("bit-identical across concurrent calls")
    {
        Rng rng(13);
        const auto y = noise_vector(rng, 500, 1.0, Domain::antenna);
        const auto ref = beaches::beaches(y, DenoiserConfig(0.5));
        std::vector<BeachesResult> out(4);
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < out.size(); ++i)
            pool.emplace_back([&, i] { out[i] = beaches::beaches(y, DenoiserConfig(0.5)); });
        for (auto &t : pool)
            t.join();
        for (const auto &o : out) {
            CHECK(o.h_star == ref.h_star);
            CHECK(o.diagnostics.tau_star == ref.diagnostics.tau_star);
        }
    }
}
