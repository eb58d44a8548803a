// Copyright 2026 bimax contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace bimax {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    double center() const { return 0.5 * (lo + hi); }
    bool contains(double t) const { return t >= lo && t <= hi; }
    bool contains_strictly(double t) const { return t > lo && t < hi; }
};

// Base class for every contract error in the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define BIMAX_ERROR(NAME)                       \
    struct NAME : Error {                       \
        using Error::Error;                     \
    }

// curve
BIMAX_ERROR(EtaOutsideDomain);
BIMAX_ERROR(DerivativeMismatch);
BIMAX_ERROR(CurveDegenerate);
BIMAX_ERROR(OutOfDomain);
BIMAX_ERROR(InvalidExponent);
// gridfn
BIMAX_ERROR(DegenerateAbscissas);
BIMAX_ERROR(EmptySupport);
BIMAX_ERROR(InvalidBand);
// lp_filters
BIMAX_ERROR(ResolutionTooCoarse);
// bilinear_ops
BIMAX_ERROR(InvalidRadius);
// czd
BIMAX_ERROR(LevelNonpositive);
// smoothing
BIMAX_ERROR(NonInteracting);
BIMAX_ERROR(GridTooCoarse);
BIMAX_ERROR(HypothesisViolated);
// harness
BIMAX_ERROR(IoFailure);
BIMAX_ERROR(CurveNotDegenerate);

#undef BIMAX_ERROR

// splitmix64; used to derive per-trial streams from a master seed so results
// do not depend on scheduling.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int max_threads();
void set_max_threads(int n);

// Static chunking; fn(begin, end) is invoked on disjoint index ranges.
// Each range writes its own slots, so results are identical for any thread
// count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

std::string sha1_hex(std::string_view data);

}  // namespace bimax
