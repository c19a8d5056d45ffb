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

#include <cmath>
#include <stdexcept>

namespace beaches {

namespace {

// Gray order along one axis: 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3.
double pam4_level(std::uint8_t b0, std::uint8_t b1)
{
    const double magnitude = b1 ? 1.0 : 3.0;
    return b0 ? magnitude : -magnitude;
}

void pam4_bits(double x, std::uint8_t &b0, std::uint8_t &b1)
{
    b0 = x >= 0.0 ? 1 : 0;
    b1 = std::abs(x) < 2.0 ? 1 : 0;
}

} // namespace

int bits_per_symbol(Modulation m)
{
    return m == Modulation::qam16 ? 4 : 2;
}

std::vector<cdouble> qam_map(std::span<const std::uint8_t> bits, Modulation m)
{
    const auto bps = static_cast<std::size_t>(bits_per_symbol(m));
    if (bits.size() % bps != 0)
        throw std::invalid_argument("qam_map: " + std::to_string(bits.size()) + " bits is not a multiple of " +
                                    std::to_string(bps));

    std::vector<cdouble> symbols(bits.size() / bps);
    if (m == Modulation::qam16) {
        const double scale = 1.0 / std::sqrt(10.0);
        for (std::size_t s = 0; s < symbols.size(); ++s) {
            const auto *b = &bits[4 * s];
            symbols[s] = {scale * pam4_level(b[0], b[1]), scale * pam4_level(b[2], b[3])};
        }
    } else {
        const double scale = 1.0 / std::sqrt(2.0);
        for (std::size_t s = 0; s < symbols.size(); ++s)
            symbols[s] = {bits[2 * s] ? scale : -scale, bits[2 * s + 1] ? scale : -scale};
    }
    return symbols;
}

std::vector<std::uint8_t> qam_demap(std::span<const cdouble> symbols, Modulation m)
{
    const auto bps = static_cast<std::size_t>(bits_per_symbol(m));
    std::vector<std::uint8_t> bits(symbols.size() * bps);
    if (m == Modulation::qam16) {
        const double scale = std::sqrt(10.0);
        for (std::size_t s = 0; s < symbols.size(); ++s) {
            auto *b = &bits[4 * s];
            pam4_bits(scale * symbols[s].real(), b[0], b[1]);
            pam4_bits(scale * symbols[s].imag(), b[2], b[3]);
        }
    } else {
        for (std::size_t s = 0; s < symbols.size(); ++s) {
            bits[2 * s] = symbols[s].real() >= 0.0 ? 1 : 0;
            bits[2 * s + 1] = symbols[s].imag() >= 0.0 ? 1 : 0;
        }
    }
    return bits;
}

} // namespace beaches
