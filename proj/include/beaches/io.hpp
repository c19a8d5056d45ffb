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
#include "beaches/simulator.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace beaches {

// Malformed input text. line() is 1-based, 0 when no single line is at fault.
class ParseError : public std::invalid_argument
{
public:
    ParseError(const std::string &source, std::size_t line, const std::string &what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A file that cannot be opened for reading or writing.
class FileError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

const char *tool_version() noexcept;

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

// Vector files: header "re,im", then one "re,im" row per antenna index.
// Blank lines are ignored.
ComplexVector parse_vector_csv(std::istream &in, const std::string &source = "<stream>");
ComplexVector read_vector_csv(const std::filesystem::path &path);
void write_vector_csv(std::ostream &out, const ComplexVector &x);
void write_vector_csv(const std::filesystem::path &path, const ComplexVector &x);

// Path files: optional header "alpha_re,alpha_im,omega", then one row per path.
// Produces a custom-profile model with b antennas, validated.
ChannelModel parse_paths_csv(std::istream &in, std::size_t b, const std::string &source = "<stream>");
ChannelModel read_paths_csv(const std::filesystem::path &path, std::size_t b);
void write_paths_csv(std::ostream &out, const ChannelModel &model);

// Flat key=value configuration mirroring SimConfig. '#' starts a comment.
// Lists are comma separated. Unknown keys are rejected with the list of valid
// keys; keys not present keep their SimConfig defaults.
SimConfig parse_config(std::istream &in, const std::string &source = "<stream>");
SimConfig read_config(const std::filesystem::path &path);
std::string serialize_config(const SimConfig &cfg);
const std::vector<std::string> &config_keys();

// results.csv: snr_db,estimator,metric,value,trials,wall_time_ms,b
void write_results_csv(std::ostream &out, const std::vector<SweepRecord> &records);
void write_results_csv(const std::filesystem::path &path, const std::vector<SweepRecord> &records);

// Config echo plus provenance. The provenance lines are comments, so a
// manifest is itself a valid config for reproducing the run.
struct RunManifest
{
    std::string command;
    std::optional<SimConfig> config; // sweeps only; other commands are reproduced by their command line
    double wall_time_ms = 0.0;
};

void write_manifest(std::ostream &out, const RunManifest &manifest);
void write_manifest(const std::filesystem::path &path, const RunManifest &manifest);

// Where the manifest of an output file goes: "<output>.manifest".
std::filesystem::path manifest_path_for(const std::filesystem::path &output);

} // namespace beaches
