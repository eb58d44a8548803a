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

#include <vector>

#include "bimax/common.hpp"

namespace bimax {

// In-place radix-2 FFT; size must be a power of two.  Forward uses the
// e^{-i 2 pi m n / N} convention; inverse applies the 1/N factor.
void fft_inplace(std::vector<Complex>& a, bool inverse);

std::size_t next_pow2(std::size_t n);

}  // namespace bimax
