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

#include "beaches/simulator.hpp"

#include "beaches/denoiser.hpp"
#include "beaches/spectral.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace beaches {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

double snr_to_noise_variance(double snr_db)
{
    return std::pow(10.0, -snr_db / 10.0);
}

struct Estimate
{
    ComplexVector h;
    double sure_min = std::numeric_limits<double>::quiet_NaN();
};

Estimate estimate_channel(Estimator est, const NoisyObservation &obs)
{
    switch (est) {
    case Estimator::ml:
        return {obs.y};
    case Estimator::beaches: {
        auto res = beaches(obs.y, DenoiserConfig(obs.e0));
        return {std::move(res.h_star), res.diagnostics.sure_min};
    }
    case Estimator::oracle_tau: {
        const auto y_hat = dft(obs.y);
        const auto tau = find_oracle_tau(y_hat, dft(obs.h_true)).tau_star;
        return {idft(soft_threshold(y_hat, tau))};
    }
    case Estimator::perfect_csi:
        return {obs.h_true};
    }
    throw std::logic_error("unhandled estimator");
}

std::vector<ComplexVector> draw_user_channels(const SimConfig &cfg, std::size_t trial)
{
    const auto models =
        sample_users(ProfileParams::for_profile(cfg.profile), cfg.b, cfg.u, derive_seed(cfg.master_seed, {1, trial}));
    std::vector<ComplexVector> h;
    h.reserve(models.size());
    for (const auto &m : models)
        h.push_back(synthesize_channel(m));
    return h;
}

struct BerTally
{
    std::uint64_t errors = 0;
    std::uint64_t bits = 0;
    double estimator_ms = 0.0;
};

struct MseTally
{
    double sum = 0.0;
    double sum_sq = 0.0;
    double sure_sum = 0.0;
    double sure_sum_sq = 0.0;
    std::size_t count = 0;
    double estimator_ms = 0.0;
};

double standard_error(double sum, double sum_sq, std::size_t n)
{
    if (n < 2)
        return 0.0;
    const double nd = static_cast<double>(n);
    const double mean = sum / nd;
    const double var = std::max(0.0, (sum_sq - nd * mean * mean) / (nd - 1.0));
    return std::sqrt(var / nd);
}

} // namespace

std::string to_string(Modulation m)
{
    return m == Modulation::qam16 ? "qam16" : "qpsk";
}

std::string to_string(Estimator e)
{
    switch (e) {
    case Estimator::ml:
        return "ml";
    case Estimator::beaches:
        return "beaches";
    case Estimator::oracle_tau:
        return "oracle_tau";
    case Estimator::perfect_csi:
        return "perfect_csi";
    }
    return "unknown";
}

Modulation parse_modulation(std::string_view name)
{
    if (name == "qam16")
        return Modulation::qam16;
    if (name == "qpsk")
        return Modulation::qpsk;
    throw std::invalid_argument("unknown modulation '" + std::string(name) + "' (expected qam16 or qpsk)");
}

Estimator parse_estimator(std::string_view name)
{
    for (auto e : {Estimator::ml, Estimator::beaches, Estimator::oracle_tau, Estimator::perfect_csi})
        if (name == to_string(e))
            return e;
    throw std::invalid_argument("unknown estimator '" + std::string(name) +
                                "' (expected ml, beaches, oracle_tau or perfect_csi)");
}

void SimConfig::validate() const
{
    auto fail = [](const std::string &msg) { throw std::invalid_argument("invalid simulation config: " + msg); };
    if (b < 1)
        fail("b must be >= 1");
    if (u < 1)
        fail("u must be >= 1");
    if (u > b)
        fail("u must not exceed b");
    if (snr_db_grid.empty())
        fail("snr_db_grid is empty");
    for (double s : snr_db_grid)
        if (!std::isfinite(s))
            fail("snr_db_grid contains a non-finite value");
    if (num_channel_trials < 1)
        fail("num_channel_trials must be >= 1");
    if (num_data_symbols_per_trial < 1)
        fail("num_data_symbols_per_trial must be >= 1");
    if (profile == Profile::custom)
        fail("profile must be los or nlos");
    if (estimators.empty())
        fail("estimators is empty");
    if (scaling_b_list.empty())
        fail("scaling_b_list is empty");
    for (auto sb : scaling_b_list)
        if (sb < 1)
            fail("scaling_b_list entries must be >= 1");
    if (scaling_runs < 1)
        fail("scaling_runs must be >= 1");
}

std::vector<NoisyObservation> pilot_estimate(const std::vector<ComplexVector> &h, double e0, std::uint64_t seed)
{
    std::vector<NoisyObservation> out;
    out.reserve(h.size());
    for (std::size_t u = 0; u < h.size(); ++u)
        out.push_back(add_noise(h[u], e0, derive_seed(seed, {u})));
    return out;
}

CMatrix stack_columns(const std::vector<ComplexVector> &columns)
{
    if (columns.empty())
        return CMatrix(0, 0);
    const auto rows = columns.front().size();
    CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows)
            throw std::invalid_argument("stack_columns: columns differ in length");
        for (std::size_t r = 0; r < rows; ++r)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = columns[c][r];
    }
    return m;
}

LmmseEqualizer::LmmseEqualizer(const CMatrix &h, double n0, double es)
{
    if (!(n0 > 0.0) || !(es > 0.0) || !std::isfinite(n0) || !std::isfinite(es))
        throw std::invalid_argument("lmmse: n0 and es must be finite and > 0");
    if (h.cols() == 0 || h.rows() == 0)
        throw std::invalid_argument("lmmse: empty channel matrix");

    CMatrix gram = h.adjoint() * h;
    gram.diagonal().array() += n0 / es;
    Eigen::LLT<CMatrix> llt(gram);
    const double rcond = llt.info() == Eigen::Success ? llt.rcond() : 0.0;
    if (!(rcond > 1e-14)) {
        std::ostringstream msg;
        msg << "lmmse: regularized Gram matrix is numerically singular (condition number ";
        if (rcond > 0.0)
            msg << 1.0 / rcond;
        else
            msg << "inf";
        msg << ")";
        throw std::runtime_error(msg.str());
    }
    w_ = llt.solve(h.adjoint());
}

ComplexVector LmmseEqualizer::apply(const ComplexVector &rx) const
{
    if (static_cast<Eigen::Index>(rx.size()) != w_.cols())
        throw std::invalid_argument("lmmse: received vector length does not match the channel matrix");
    const Eigen::Map<const Eigen::VectorXcd> r(rx.data(), w_.cols());
    const Eigen::VectorXcd s = w_ * r;
    return ComplexVector(std::vector<cdouble>(s.data(), s.data() + s.size()));
}

CMatrix LmmseEqualizer::apply(const CMatrix &rx) const
{
    if (rx.rows() != w_.cols())
        throw std::invalid_argument("lmmse: received block row count does not match the channel matrix");
    return w_ * rx;
}

ComplexVector lmmse_equalize(const CMatrix &h, double n0, double es, const ComplexVector &rx)
{
    return LmmseEqualizer(h, n0, es).apply(rx);
}

std::vector<SweepRecord> run_ber_sweep(const SimConfig &cfg)
{
    cfg.validate();
    const std::size_t n_snr = cfg.snr_db_grid.size();
    const std::size_t n_est = cfg.estimators.size();
    const std::size_t trials = cfg.num_channel_trials;
    const std::size_t n_sym = cfg.num_data_symbols_per_trial;
    const auto users = static_cast<Eigen::Index>(cfg.u);
    const auto bps = static_cast<std::size_t>(bits_per_symbol(cfg.modulation));

    std::vector<std::vector<BerTally>> per_trial(trials, std::vector<BerTally>(n_snr * n_est));

    detail::parallel_for(trials, cfg.threads, [&](std::size_t t) {
        const auto h = draw_user_channels(cfg, t);
        const CMatrix h_true = stack_columns(h);

        for (std::size_t s = 0; s < n_snr; ++s) {
            const double e0 = snr_to_noise_variance(cfg.snr_db_grid[s]);
            const auto pilots = pilot_estimate(h, e0, derive_seed(cfg.master_seed, {2, t, s}));

            // Same payload and receiver noise for every estimator.
            Rng rng(derive_seed(cfg.master_seed, {3, t, s}));
            std::vector<std::uint8_t> bits(n_sym * cfg.u * bps);
            for (auto &bit : bits)
                bit = static_cast<std::uint8_t>(rng.bit());
            const auto symbols = qam_map(bits, cfg.modulation);
            const Eigen::Map<const CMatrix> tx(symbols.data(), users, static_cast<Eigen::Index>(n_sym));
            CMatrix rx = h_true * tx;
            for (Eigen::Index c = 0; c < rx.cols(); ++c)
                for (Eigen::Index r = 0; r < rx.rows(); ++r)
                    rx(r, c) += rng.complex_normal(e0);

            for (std::size_t e = 0; e < n_est; ++e) {
                auto &tally = per_trial[t][s * n_est + e];
                const auto start = Clock::now();
                std::vector<ComplexVector> h_est;
                h_est.reserve(cfg.u);
                for (const auto &obs : pilots)
                    h_est.push_back(estimate_channel(cfg.estimators[e], obs).h);
                tally.estimator_ms += elapsed_ms(start);

                const LmmseEqualizer eq(stack_columns(h_est), e0, 1.0);
                const CMatrix detected = eq.apply(rx);
                const auto decided =
                    qam_demap(std::span<const cdouble>(detected.data(), static_cast<std::size_t>(detected.size())),
                              cfg.modulation);
                for (std::size_t i = 0; i < bits.size(); ++i)
                    tally.errors += (decided[i] != bits[i]);
                tally.bits += bits.size();
            }
        }
    });

    std::vector<SweepRecord> records;
    for (std::size_t s = 0; s < n_snr; ++s)
        for (std::size_t e = 0; e < n_est; ++e) {
            BerTally total;
            for (std::size_t t = 0; t < trials; ++t) {
                const auto &x = per_trial[t][s * n_est + e];
                total.errors += x.errors;
                total.bits += x.bits;
                total.estimator_ms += x.estimator_ms;
            }
            const double p = static_cast<double>(total.errors) / static_cast<double>(total.bits);
            SweepRecord rec;
            rec.snr_db = cfg.snr_db_grid[s];
            rec.estimator = to_string(cfg.estimators[e]);
            rec.metric = "ber";
            rec.value = p;
            rec.trials = trials;
            rec.wall_time_ms = cfg.record_wall_time ? total.estimator_ms : 0.0;
            rec.b = cfg.b;
            rec.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(total.bits));
            rec.samples = total.bits;
            records.push_back(std::move(rec));
        }
    return records;
}

std::vector<SweepRecord> run_mse_sweep(const SimConfig &cfg)
{
    cfg.validate();
    const std::size_t n_snr = cfg.snr_db_grid.size();
    const std::size_t n_est = cfg.estimators.size();
    const std::size_t trials = cfg.num_channel_trials;

    std::vector<std::vector<MseTally>> per_trial(trials, std::vector<MseTally>(n_snr * n_est));

    detail::parallel_for(trials, cfg.threads, [&](std::size_t t) {
        const auto h = draw_user_channels(cfg, t);
        for (std::size_t s = 0; s < n_snr; ++s) {
            const double e0 = snr_to_noise_variance(cfg.snr_db_grid[s]);
            const auto pilots = pilot_estimate(h, e0, derive_seed(cfg.master_seed, {2, t, s}));
            for (std::size_t e = 0; e < n_est; ++e) {
                auto &tally = per_trial[t][s * n_est + e];
                for (const auto &obs : pilots) {
                    const auto start = Clock::now();
                    const auto est = estimate_channel(cfg.estimators[e], obs);
                    tally.estimator_ms += elapsed_ms(start);
                    const double err = mse(est.h, obs.h_true);
                    tally.sum += err;
                    tally.sum_sq += err * err;
                    tally.sure_sum += est.sure_min;
                    tally.sure_sum_sq += est.sure_min * est.sure_min;
                    ++tally.count;
                }
            }
        }
    });

    std::vector<SweepRecord> records;
    for (std::size_t s = 0; s < n_snr; ++s) {
        for (std::size_t e = 0; e < n_est; ++e) {
            MseTally total;
            for (std::size_t t = 0; t < trials; ++t) {
                const auto &x = per_trial[t][s * n_est + e];
                total.sum += x.sum;
                total.sum_sq += x.sum_sq;
                total.sure_sum += x.sure_sum;
                total.sure_sum_sq += x.sure_sum_sq;
                total.count += x.count;
                total.estimator_ms += x.estimator_ms;
            }
            const double n = static_cast<double>(total.count);

            SweepRecord rec;
            rec.snr_db = cfg.snr_db_grid[s];
            rec.estimator = to_string(cfg.estimators[e]);
            rec.metric = "mse";
            rec.value = total.sum / n;
            rec.trials = trials;
            rec.wall_time_ms = cfg.record_wall_time ? total.estimator_ms : 0.0;
            rec.b = cfg.b;
            rec.std_error = standard_error(total.sum, total.sum_sq, total.count);
            rec.samples = total.count;
            records.push_back(rec);

            if (cfg.estimators[e] == Estimator::beaches) {
                rec.metric = "sure_min";
                rec.value = total.sure_sum / n;
                rec.std_error = standard_error(total.sure_sum, total.sure_sum_sq, total.count);
                records.push_back(rec);
            }
        }
    }
    return records;
}

std::vector<SweepRecord> run_scaling_benchmark(const std::vector<std::size_t> &b_list, std::size_t runs,
                                               std::uint64_t seed)
{
    if (b_list.empty() || runs < 1)
        throw std::invalid_argument("scaling benchmark: need at least one antenna count and one run");

    const DenoiserConfig cfg(1.0);
    std::vector<SweepRecord> records;
    for (auto b : b_list) {
        if (b < 1)
            throw std::invalid_argument("scaling benchmark: antenna counts must be >= 1");

        // Unit-variance noise floor plus a handful of strong beams.
        Rng rng(derive_seed(seed, {b}));
        ComplexVector y_hat(b, Domain::beamspace);
        for (auto &v : y_hat)
            v = rng.complex_normal(1.0);
        for (int i = 0; i < 8; ++i)
            y_hat[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(b) - 1))] +=
                std::sqrt(static_cast<double>(b)) * rng.complex_normal(1.0);

        volatile double sink = find_tau_star(y_hat, cfg).tau_star; // warm-up
        std::vector<double> times;
        times.reserve(runs);
        for (std::size_t r = 0; r < runs; ++r) {
            const auto start = Clock::now();
            sink = find_tau_star(y_hat, cfg).tau_star;
            times.push_back(elapsed_ms(start));
        }
        (void)sink;
        std::sort(times.begin(), times.end());
        const double median =
            runs % 2 ? times[runs / 2] : 0.5 * (times[runs / 2 - 1] + times[runs / 2]);

        SweepRecord rec;
        rec.snr_db = std::numeric_limits<double>::quiet_NaN();
        rec.estimator = "beaches";
        rec.metric = "runtime_ms";
        rec.value = median;
        rec.trials = runs;
        rec.wall_time_ms = median;
        rec.b = b;
        rec.samples = runs;
        records.push_back(rec);
    }
    return records;
}

} // namespace beaches
