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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace beaches {

using cdouble = std::complex<double>;

// Which side of the unitary DFT a vector lives on. Advisory only: no
// operation refuses a vector because of its tag.
enum class Domain { antenna, beamspace };

// Length-B complex sample vector, the common carrier for channel vectors,
// noisy observations and their beamspace images.
class ComplexVector
{
public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t n, Domain domain = Domain::antenna) : data_(n), domain_(domain) {}
    ComplexVector(std::vector<cdouble> data, Domain domain = Domain::antenna) : data_(std::move(data)), domain_(domain) {}
    ComplexVector(std::initializer_list<cdouble> init, Domain domain = Domain::antenna) : data_(init), domain_(domain) {}

    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    cdouble &operator[](std::size_t i) noexcept { return data_[i]; }
    const cdouble &operator[](std::size_t i) const noexcept { return data_[i]; }

    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    cdouble *data() noexcept { return data_.data(); }
    const cdouble *data() const noexcept { return data_.data(); }

    std::span<cdouble> span() noexcept { return data_; }
    std::span<const cdouble> span() const noexcept { return data_; }

    const std::vector<cdouble> &values() const noexcept { return data_; }

    Domain domain() const noexcept { return domain_; }
    void set_domain(Domain d) noexcept { domain_ = d; }

    // True when every entry has finite real and imaginary parts.
    bool all_finite() const noexcept;

    // Squared Euclidean norm.
    double norm2() const noexcept;

    friend bool operator==(const ComplexVector &a, const ComplexVector &b)
    {
        return a.data_ == b.data_ && a.domain_ == b.domain_;
    }

private:
    std::vector<cdouble> data_;
    Domain domain_ = Domain::antenna;
};

} // namespace beaches
