/*
 * Copyright 2026 The m2pn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace m2pn {

// Comparison tolerances for probabilities: closed-form paths and sampled paths.
inline constexpr double kClosedFormTol = 1e-12;
inline constexpr double kSampledTol = 1e-9;

inline constexpr unsigned long long kDefaultSeed = 0x6d32706eULL;

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A documented precondition of an operation does not hold for the given inputs.
struct PreconditionViolation : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace m2pn
