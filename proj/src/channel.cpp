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

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace beaches {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double deg_to_rad(double deg)
{
    return deg * std::numbers::pi / 180.0;
}

cdouble unit_phasor(Rng &rng)
{
    return std::polar(1.0, rng.uniform(0.0, two_pi));
}

// Rescales the gains so that the synthesized channel has ||h||^2 = b.
// Returns false if the paths cancel out.
bool normalize(ChannelModel &model)
{
    const double energy = synthesize_channel(model).norm2();
    if (!(energy > 1e-12 * static_cast<double>(model.b)))
        return false;
    const double scale = std::sqrt(static_cast<double>(model.b) / energy);
    for (auto &p : model.paths)
        p.alpha *= scale;
    return true;
}

} // namespace

std::string to_string(Profile p)
{
    switch (p) {
    case Profile::los:
        return "los";
    case Profile::nlos:
        return "nlos";
    case Profile::custom:
        return "custom";
    }
    return "custom";
}

Profile parse_profile(std::string_view name)
{
    if (name == "los")
        return Profile::los;
    if (name == "nlos")
        return Profile::nlos;
    if (name == "custom")
        return Profile::custom;
    throw std::invalid_argument("unknown channel profile '" + std::string(name) + "' (expected los, nlos or custom)");
}

ProfileParams ProfileParams::los()
{
    return ProfileParams{};
}

ProfileParams ProfileParams::nlos()
{
    ProfileParams p;
    p.kind = Profile::nlos;
    p.min_paths = 8;
    p.max_paths = 24;
    return p;
}

ProfileParams ProfileParams::for_profile(Profile p)
{
    switch (p) {
    case Profile::los:
        return los();
    case Profile::nlos:
        return nlos();
    case Profile::custom:
        break;
    }
    throw std::invalid_argument("the custom profile has no random generator; supply explicit paths");
}

void ChannelModel::validate() const
{
    if (b < 1)
        throw std::invalid_argument("channel model: antenna count must be >= 1");
    if (paths.empty())
        throw std::invalid_argument("channel model: at least one path is required");
    for (std::size_t l = 0; l < paths.size(); ++l) {
        const auto &p = paths[l];
        if (!(p.omega >= 0.0 && p.omega < two_pi))
            throw std::invalid_argument("channel model: path " + std::to_string(l) + " has omega " +
                                        std::to_string(p.omega) + " outside [0, 2 pi)");
        if (!std::isfinite(p.alpha.real()) || !std::isfinite(p.alpha.imag()))
            throw std::invalid_argument("channel model: path " + std::to_string(l) + " has a non-finite gain");
    }
    if (profile == Profile::los) {
        const double direct = std::abs(paths.front().alpha);
        for (const auto &p : paths)
            if (std::abs(p.alpha) > direct)
                throw std::invalid_argument("channel model: LoS direct path is not the strongest");
    }
}

double angle_to_omega(double theta_rad)
{
    double omega = std::fmod(std::numbers::pi * std::sin(theta_rad), two_pi);
    if (omega < 0.0)
        omega += two_pi;
    if (omega >= two_pi) // -tiny + 2 pi can round up
        omega = 0.0;
    return omega;
}

ComplexVector steering_vector(double omega, std::size_t b)
{
    if (b < 1)
        throw std::invalid_argument("steering_vector: antenna count must be >= 1");
    ComplexVector a(b, Domain::antenna);
    for (std::size_t m = 0; m < b; ++m)
        a[m] = std::polar(1.0, static_cast<double>(m) * omega);
    return a;
}

ComplexVector synthesize_channel(const ChannelModel &model)
{
    model.validate();
    ComplexVector h(model.b, Domain::antenna);
    for (const auto &p : model.paths)
        for (std::size_t m = 0; m < model.b; ++m)
            h[m] += p.alpha * std::polar(1.0, static_cast<double>(m) * p.omega);
    return h;
}

ChannelModel sample_profile(const ProfileParams &params, std::size_t b, std::uint64_t seed,
                            std::optional<double> ue_angle_rad)
{
    if (b < 1)
        throw std::invalid_argument("sample_profile: antenna count must be >= 1");
    if (params.kind == Profile::custom)
        throw std::invalid_argument("sample_profile: the custom profile has no random generator");
    if (params.min_paths < 1 || params.max_paths < params.min_paths)
        throw std::invalid_argument("sample_profile: invalid path-count range");

    Rng rng(seed);
    const double half_sector = 0.5 * deg_to_rad(params.sector_deg);

    for (;;) {
        ChannelModel model;
        model.b = b;
        model.profile = params.kind;

        const auto paths = static_cast<std::size_t>(rng.uniform_int(params.min_paths, params.max_paths));
        const double ue_angle = ue_angle_rad ? *ue_angle_rad : rng.uniform(-half_sector, half_sector);

        if (params.kind == Profile::los) {
            model.paths.push_back({unit_phasor(rng), angle_to_omega(ue_angle)});
            for (std::size_t l = 1; l < paths; ++l) {
                const double atten_db = params.secondary_min_db + params.secondary_range_db * rng.uniform();
                const double gain = std::pow(10.0, -atten_db / 20.0);
                const double theta = rng.uniform(-half_sector, half_sector);
                model.paths.push_back({gain * unit_phasor(rng), angle_to_omega(theta)});
            }
        } else {
            const double spread = deg_to_rad(params.angular_spread_deg);
            for (std::size_t l = 0; l < paths; ++l) {
                // Rayleigh magnitude: exponential power with a decaying mean.
                double u;
                do {
                    u = rng.uniform();
                } while (u == 0.0);
                const double power = -std::log(u) * std::exp(-static_cast<double>(l) / params.decay_paths);
                const double theta = (l == 0) ? ue_angle : ue_angle + rng.uniform(-spread, spread);
                model.paths.push_back({std::sqrt(power) * unit_phasor(rng), angle_to_omega(theta)});
            }
        }

        if (normalize(model))
            return model;
    }
}

std::vector<ChannelModel> sample_users(const ProfileParams &params, std::size_t b, std::size_t u,
                                       std::uint64_t seed, double min_separation_deg)
{
    const double half_sector = 0.5 * deg_to_rad(params.sector_deg);
    const double min_sep = deg_to_rad(min_separation_deg);

    Rng placement(derive_seed(seed, {0xa11ce5ULL}));
    std::vector<double> angles;
    angles.reserve(u);
    constexpr int max_attempts = 100000;
    for (std::size_t i = 0; i < u; ++i) {
        int attempt = 0;
        for (;; ++attempt) {
            if (attempt == max_attempts)
                throw std::invalid_argument("sample_users: cannot place " + std::to_string(u) +
                                            " users with the requested angular separation");
            const double theta = placement.uniform(-half_sector, half_sector);
            bool ok = true;
            for (double other : angles)
                if (std::abs(theta - other) < min_sep) {
                    ok = false;
                    break;
                }
            if (ok) {
                angles.push_back(theta);
                break;
            }
        }
    }

    std::vector<ChannelModel> users;
    users.reserve(u);
    for (std::size_t i = 0; i < u; ++i)
        users.push_back(sample_profile(params, b, derive_seed(seed, {i}), angles[i]));
    return users;
}

NoisyObservation add_noise(const ComplexVector &h, double e0, Rng &rng)
{
    if (!std::isfinite(e0) || e0 <= 0.0)
        throw std::invalid_argument("add_noise: e0 must be finite and > 0");
    NoisyObservation obs{ComplexVector(h.size(), h.domain()), h, e0};
    for (std::size_t i = 0; i < h.size(); ++i)
        obs.y[i] = h[i] + rng.complex_normal(e0);
    return obs;
}

NoisyObservation add_noise(const ComplexVector &h, double e0, std::uint64_t seed)
{
    Rng rng(seed);
    return add_noise(h, e0, rng);
}

double mse(const ComplexVector &h_est, const ComplexVector &h_true)
{
    if (h_est.size() != h_true.size())
        throw std::invalid_argument("mse: length mismatch (" + std::to_string(h_est.size()) + " vs " +
                                    std::to_string(h_true.size()) + ")");
    if (h_est.empty())
        throw std::invalid_argument("mse: empty vectors");
    double acc = 0.0;
    for (std::size_t i = 0; i < h_est.size(); ++i)
        acc += std::norm(h_est[i] - h_true[i]);
    return acc / static_cast<double>(h_est.size());
}

} // namespace beaches
