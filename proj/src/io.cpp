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

#include "beaches/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

#ifndef BEACHES_VERSION
#define BEACHES_VERSION "0.0.0"
#endif

namespace beaches {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            return parts;
        start = pos + 1;
    }
}

bool parse_double(std::string_view text, double &out)
{
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end && !text.empty();
}

bool parse_unsigned(std::string_view text, std::uint64_t &out)
{
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end && !text.empty();
}

std::ifstream open_input(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw FileError("cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_output(const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw FileError("cannot open '" + path.string() + "' for writing");
    return out;
}

template <class T, class Fn>
std::string join(const std::vector<T> &items, Fn &&fmt)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i)
            out += ',';
        out += fmt(items[i]);
    }
    return out;
}

} // namespace

ParseError::ParseError(const std::string &source, std::size_t line, const std::string &what)
    : std::invalid_argument(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what), line_(line)
{
}

const char *tool_version() noexcept
{
    return BEACHES_VERSION;
}

std::string format_double(double v)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

// ---------------------------------------------------------------- vectors

ComplexVector parse_vector_csv(std::istream &in, const std::string &source)
{
    std::vector<cdouble> values;
    bool seen_header = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty())
            continue;
        if (!seen_header) {
            if (text != "re,im")
                throw ParseError(source, line_no, "expected header 're,im'");
            seen_header = true;
            continue;
        }
        const auto fields = split(text, ',');
        double re = 0.0, im = 0.0;
        if (fields.size() != 2)
            throw ParseError(source, line_no, "expected 2 fields, found " + std::to_string(fields.size()));
        if (!parse_double(fields[0], re) || !parse_double(fields[1], im))
            throw ParseError(source, line_no, "malformed number in '" + std::string(text) + "'");
        if (!std::isfinite(re) || !std::isfinite(im))
            throw ParseError(source, line_no, "non-finite value");
        values.emplace_back(re, im);
    }
    if (!seen_header)
        throw ParseError(source, 0, "empty file, expected header 're,im'");
    if (values.empty())
        throw ParseError(source, 0, "no data rows");
    return ComplexVector(std::move(values));
}

ComplexVector read_vector_csv(const std::filesystem::path &path)
{
    auto in = open_input(path);
    return parse_vector_csv(in, path.string());
}

void write_vector_csv(std::ostream &out, const ComplexVector &x)
{
    out << "re,im\n";
    for (const auto &v : x)
        out << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
}

void write_vector_csv(const std::filesystem::path &path, const ComplexVector &x)
{
    auto out = open_output(path);
    write_vector_csv(out, x);
}

// ---------------------------------------------------------------- paths

ChannelModel parse_paths_csv(std::istream &in, std::size_t b, const std::string &source)
{
    ChannelModel model;
    model.b = b;
    model.profile = Profile::custom;

    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty())
            continue;
        if (first && text == "alpha_re,alpha_im,omega") {
            first = false;
            continue;
        }
        first = false;
        const auto fields = split(text, ',');
        if (fields.size() != 3)
            throw ParseError(source, line_no, "expected 3 fields (alpha_re,alpha_im,omega), found " +
                                                  std::to_string(fields.size()));
        double re = 0.0, im = 0.0, omega = 0.0;
        if (!parse_double(fields[0], re) || !parse_double(fields[1], im) || !parse_double(fields[2], omega))
            throw ParseError(source, line_no, "malformed number in '" + std::string(text) + "'");
        model.paths.push_back({{re, im}, omega});
    }
    if (model.paths.empty())
        throw ParseError(source, 0, "no path rows");
    model.validate();
    return model;
}

ChannelModel read_paths_csv(const std::filesystem::path &path, std::size_t b)
{
    auto in = open_input(path);
    return parse_paths_csv(in, b, path.string());
}

void write_paths_csv(std::ostream &out, const ChannelModel &model)
{
    out << "alpha_re,alpha_im,omega\n";
    for (const auto &p : model.paths)
        out << format_double(p.alpha.real()) << ',' << format_double(p.alpha.imag()) << ','
            << format_double(p.omega) << '\n';
}

// ---------------------------------------------------------------- config

namespace {

using Setter = std::function<void(SimConfig &, std::string_view)>;

struct KeyError
{
    std::string message;
};

std::size_t to_count(std::string_view v)
{
    std::uint64_t x = 0;
    if (!parse_unsigned(v, x))
        throw KeyError{"expected a non-negative integer, got '" + std::string(v) + "'"};
    return static_cast<std::size_t>(x);
}

const std::map<std::string, Setter> &setters()
{
    static const std::map<std::string, Setter> table = {
        {"b", [](SimConfig &c, std::string_view v) { c.b = to_count(v); }},
        {"u", [](SimConfig &c, std::string_view v) { c.u = to_count(v); }},
        {"snr_db_grid",
         [](SimConfig &c, std::string_view v) {
             c.snr_db_grid.clear();
             for (auto item : split(v, ',')) {
                 double x = 0.0;
                 if (!parse_double(item, x))
                     throw KeyError{"malformed SNR value '" + std::string(item) + "'"};
                 c.snr_db_grid.push_back(x);
             }
         }},
        {"modulation", [](SimConfig &c, std::string_view v) { c.modulation = parse_modulation(v); }},
        {"num_channel_trials", [](SimConfig &c, std::string_view v) { c.num_channel_trials = to_count(v); }},
        {"num_data_symbols_per_trial",
         [](SimConfig &c, std::string_view v) { c.num_data_symbols_per_trial = to_count(v); }},
        {"profile", [](SimConfig &c, std::string_view v) { c.profile = parse_profile(v); }},
        {"estimators",
         [](SimConfig &c, std::string_view v) {
             c.estimators.clear();
             for (auto item : split(v, ','))
                 c.estimators.push_back(parse_estimator(item));
         }},
        {"master_seed",
         [](SimConfig &c, std::string_view v) {
             std::uint64_t x = 0;
             if (!parse_unsigned(v, x))
                 throw KeyError{"expected an unsigned 64-bit seed, got '" + std::string(v) + "'"};
             c.master_seed = x;
         }},
        {"threads", [](SimConfig &c, std::string_view v) { c.threads = static_cast<unsigned>(to_count(v)); }},
        {"record_wall_time",
         [](SimConfig &c, std::string_view v) {
             if (v == "true" || v == "1")
                 c.record_wall_time = true;
             else if (v == "false" || v == "0")
                 c.record_wall_time = false;
             else
                 throw KeyError{"expected true or false, got '" + std::string(v) + "'"};
         }},
        {"scaling_b_list",
         [](SimConfig &c, std::string_view v) {
             c.scaling_b_list.clear();
             for (auto item : split(v, ','))
                 c.scaling_b_list.push_back(to_count(item));
         }},
        {"scaling_runs", [](SimConfig &c, std::string_view v) { c.scaling_runs = to_count(v); }},
    };
    return table;
}

} // namespace

const std::vector<std::string> &config_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto &[name, setter] : setters())
            k.push_back(name);
        return k;
    }();
    return keys;
}

SimConfig parse_config(std::istream &in, const std::string &source)
{
    SimConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos)
            text = text.substr(0, hash);
        text = trim(text);
        if (text.empty())
            continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(source, line_no, "expected key=value");
        const std::string key(trim(text.substr(0, eq)));
        const auto value = trim(text.substr(eq + 1));

        const auto &table = setters();
        const auto it = table.find(key);
        if (it == table.end()) {
            std::string valid;
            for (const auto &k : config_keys())
                valid += (valid.empty() ? "" : ", ") + k;
            throw ParseError(source, line_no, "unknown key '" + key + "'; valid keys: " + valid);
        }
        try {
            it->second(cfg, value);
        } catch (const KeyError &e) {
            throw ParseError(source, line_no, key + ": " + e.message);
        } catch (const std::invalid_argument &e) {
            throw ParseError(source, line_no, key + ": " + e.what());
        }
    }
    return cfg;
}

SimConfig read_config(const std::filesystem::path &path)
{
    auto in = open_input(path);
    return parse_config(in, path.string());
}

std::string serialize_config(const SimConfig &cfg)
{
    auto count = [](std::size_t v) { return std::to_string(v); };
    std::ostringstream out;
    out << "b=" << cfg.b << '\n';
    out << "u=" << cfg.u << '\n';
    out << "snr_db_grid=" << join(cfg.snr_db_grid, format_double) << '\n';
    out << "modulation=" << to_string(cfg.modulation) << '\n';
    out << "num_channel_trials=" << cfg.num_channel_trials << '\n';
    out << "num_data_symbols_per_trial=" << cfg.num_data_symbols_per_trial << '\n';
    out << "profile=" << to_string(cfg.profile) << '\n';
    out << "estimators=" << join(cfg.estimators, [](Estimator e) { return to_string(e); }) << '\n';
    out << "master_seed=" << cfg.master_seed << '\n';
    out << "threads=" << cfg.threads << '\n';
    out << "record_wall_time=" << (cfg.record_wall_time ? "true" : "false") << '\n';
    out << "scaling_b_list=" << join(cfg.scaling_b_list, count) << '\n';
    out << "scaling_runs=" << cfg.scaling_runs << '\n';
    return out.str();
}

// ---------------------------------------------------------------- results

void write_results_csv(std::ostream &out, const std::vector<SweepRecord> &records)
{
    out << "snr_db,estimator,metric,value,trials,wall_time_ms,b\n";
    for (const auto &r : records)
        out << format_double(r.snr_db) << ',' << r.estimator << ',' << r.metric << ',' << format_double(r.value)
            << ',' << r.trials << ',' << format_double(r.wall_time_ms) << ',' << r.b << '\n';
}

void write_results_csv(const std::filesystem::path &path, const std::vector<SweepRecord> &records)
{
    auto out = open_output(path);
    write_results_csv(out, records);
}

void write_manifest(std::ostream &out, const RunManifest &manifest)
{
    out << "# beaches run manifest\n";
    out << "# tool_version=" << tool_version() << '\n';
    out << "# command=" << manifest.command << '\n';
    out << "# wall_time_ms=" << format_double(manifest.wall_time_ms) << '\n';
    if (manifest.config)
        out << serialize_config(*manifest.config);
}

void write_manifest(const std::filesystem::path &path, const RunManifest &manifest)
{
    auto out = open_output(path);
    write_manifest(out, manifest);
}

std::filesystem::path manifest_path_for(const std::filesystem::path &output)
{
    auto p = output;
    p += ".manifest";
    return p;
}

} // namespace beaches
