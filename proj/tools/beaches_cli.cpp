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

// Command-line front end: denoise, gen-channel, sweep, selftest.
//
// Exit codes: 0 success, 1 runtime or numeric failure, 2 usage or parse error.
// stdout carries machine-readable summaries, stderr diagnostics.

#include "beaches/channel.hpp"
#include "beaches/denoiser.hpp"
#include "beaches/io.hpp"
#include "beaches/selftest.hpp"
#include "beaches/simulator.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_runtime = 1;
constexpr int exit_usage = 2;

struct UsageError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

double ms_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string command_line(int argc, char **argv)
{
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i)
            s += ' ';
        s += argv[i];
    }
    return s;
}

struct DenoiseArgs
{
    std::string input, output, domain = "antenna";
    double e0 = 0.0;
    bool emit_tau = false;
};

int cmd_denoise(const DenoiseArgs &a, const std::string &cmdline)
{
    if (!(a.e0 > 0.0) || !std::isfinite(a.e0))
        throw UsageError("--e0 must be a finite value > 0");
    const auto t0 = std::chrono::steady_clock::now();

    auto y = beaches::read_vector_csv(a.input);
    const beaches::DenoiserConfig cfg(a.e0);
    beaches::BeachesResult res;
    if (a.domain == "beamspace") {
        y.set_domain(beaches::Domain::beamspace);
        res = beaches::beaches_beamspace(y, cfg);
    } else {
        res = beaches::beaches(y, cfg);
    }
    beaches::write_vector_csv(a.output, res.h_star);
    beaches::write_manifest(beaches::manifest_path_for(a.output), {cmdline, std::nullopt, ms_since(t0)});

    if (a.emit_tau)
        std::cout << "tau_star=" << beaches::format_double(res.diagnostics.tau_star)
                  << " sure_min=" << beaches::format_double(res.diagnostics.sure_min) << '\n';
    return exit_ok;
}

struct GenArgs
{
    std::string profile, paths_file, output;
    std::size_t b = 0;
    std::uint64_t seed = 1;
};

int cmd_gen_channel(const GenArgs &a, const std::string &cmdline)
{
    if (a.b < 1)
        throw UsageError("--b must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();

    beaches::ChannelModel model;
    if (!a.paths_file.empty()) {
        model = beaches::read_paths_csv(a.paths_file, a.b);
    } else {
        if (a.profile.empty())
            throw UsageError("either --profile or --paths-file is required");
        model = beaches::sample_profile(beaches::ProfileParams::for_profile(beaches::parse_profile(a.profile)), a.b,
                                        a.seed);
    }
    beaches::write_vector_csv(a.output, beaches::synthesize_channel(model));
    beaches::write_manifest(beaches::manifest_path_for(a.output), {cmdline, std::nullopt, ms_since(t0)});
    return exit_ok;
}

struct SweepArgs
{
    std::string kind, config, output;
};

int cmd_sweep(const SweepArgs &a, std::optional<unsigned> threads, const std::string &cmdline)
{
    auto cfg = beaches::read_config(a.config);
    if (threads)
        cfg.threads = *threads;
    cfg.validate();

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<beaches::SweepRecord> records;
    if (a.kind == "mse")
        records = beaches::run_mse_sweep(cfg);
    else if (a.kind == "ber")
        records = beaches::run_ber_sweep(cfg);
    else
        records = beaches::run_scaling_benchmark(cfg.scaling_b_list, cfg.scaling_runs, cfg.master_seed);

    beaches::write_results_csv(a.output, records);
    beaches::write_manifest(beaches::manifest_path_for(a.output), {cmdline, cfg, ms_since(t0)});
    std::cout << "records=" << records.size() << '\n';
    return exit_ok;
}

int cmd_selftest(std::optional<double> inject_e0)
{
    beaches::SelftestOptions opts;
    if (inject_e0)
        opts.e0 = *inject_e0;
    bool ok = true;
    for (const auto &o : beaches::run_selftest(opts, std::cout))
        ok = ok && o.passed;
    return ok ? exit_ok : exit_runtime;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"beaches: SURE-tuned beamspace channel denoising"};
    app.set_version_flag("--version", std::string(beaches::tool_version()));
    app.require_subcommand(1);

    std::optional<unsigned> threads;
    app.add_option("--threads", threads, "Worker thread cap (default: hardware parallelism)")
        ->check(CLI::PositiveNumber);

    DenoiseArgs den;
    auto *denoise = app.add_subcommand("denoise", "Denoise one channel vector");
    denoise->add_option("--input", den.input, "Input vector CSV (re,im)")->required();
    denoise->add_option("--e0", den.e0, "Noise variance per complex entry")->required();
    denoise->add_option("--output", den.output, "Output vector CSV")->required();
    denoise->add_flag("--emit-tau", den.emit_tau, "Print tau_star and sure_min to stdout");
    denoise->add_option("--domain", den.domain, "Domain of the input vector")
        ->check(CLI::IsMember({"antenna", "beamspace"}));

    GenArgs gen;
    auto *gen_channel = app.add_subcommand("gen-channel", "Synthesize a channel vector");
    gen_channel->add_option("--profile", gen.profile, "Random profile")->check(CLI::IsMember({"los", "nlos"}));
    gen_channel->add_option("--b", gen.b, "Antenna count")->required();
    gen_channel->add_option("--seed", gen.seed, "RNG seed");
    gen_channel->add_option("--paths-file", gen.paths_file, "Explicit paths CSV (alpha_re,alpha_im,omega)");
    gen_channel->add_option("--output", gen.output, "Output vector CSV")->required();

    SweepArgs sw;
    auto *sweep = app.add_subcommand("sweep", "Run a simulation sweep");
    sweep->add_option("--kind", sw.kind, "Sweep kind")->required()->check(CLI::IsMember({"mse", "ber", "scaling"}));
    sweep->add_option("--config", sw.config, "key=value config file")->required();
    sweep->add_option("--output", sw.output, "Results CSV")->required();

    std::optional<double> inject_e0;
    auto *selftest = app.add_subcommand("selftest", "Run the fast invariant suite");
    selftest->add_option("--inject-e0", inject_e0, "Override the noise variance (test hook)")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    const auto cmdline = command_line(argc, argv);
    try {
        if (denoise->parsed())
            return cmd_denoise(den, cmdline);
        if (gen_channel->parsed())
            return cmd_gen_channel(gen, cmdline);
        if (sweep->parsed())
            return cmd_sweep(sw, threads, cmdline);
        if (selftest->parsed())
            return cmd_selftest(inject_e0);
    } catch (const beaches::FileError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime;
    }
    return exit_usage;
}
