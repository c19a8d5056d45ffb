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

#include "beaches/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace beaches {

namespace {

// FFTW planning is not thread safe, execution with the new-array interface is.
// Plans are created once per (size, direction) under a lock and never mutated
// afterwards. They are in-place and unaligned so any std::vector buffer works.
class PlanCache
{
public:
    ~PlanCache()
    {
        for (auto &[key, plan] : plans_)
            fftw_destroy_plan(plan);
    }

    fftw_plan get(int n, int sign)
    {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end())
            return it->second;

        auto *buf = fftw_alloc_complex(static_cast<std::size_t>(n));
        fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        if (plan == nullptr)
            throw std::runtime_error("FFTW failed to create a plan of size " + std::to_string(n));
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache &plan_cache()
{
    static PlanCache cache;
    return cache;
}

ComplexVector transform(const ComplexVector &x, int sign, Domain out_domain)
{
    if (x.empty())
        throw std::invalid_argument("dft: input vector is empty");

    const auto n = x.size();
    ComplexVector out(x.values(), out_domain);
    if (n == 1)
        return out;

    fftw_plan plan = plan_cache().get(static_cast<int>(n), sign);
    auto *buf = reinterpret_cast<fftw_complex *>(out.data());
    fftw_execute_dft(plan, buf, buf);

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto &v : out)
        v *= scale;
    return out;
}

} // namespace

ComplexVector dft(const ComplexVector &x)
{
    return transform(x, FFTW_FORWARD, Domain::beamspace);
}

ComplexVector idft(const ComplexVector &x)
{
    return transform(x, FFTW_BACKWARD, Domain::antenna);
}

} // namespace beaches
