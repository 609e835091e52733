// Copyright 2026 The cveao Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <optional>
#include <string_view>

#include "cveao/channel.hpp"

namespace cveao {

struct NoiseSpec {
    NoiseModel model;
    /// The noise scale reported alongside results, when the family has one.
    std::optional<double> sigma;
};

/// Parses the noise mini-grammar:
///   gaussian:sigma=<float>
///   s0[:sigma=<float>,alpha=<file>,beta=<file>]
///   single:mode=<i>,p=<float>,x=<float>      (mode is 1-based)
///   fixed:<file|zero>
/// File arguments are read through read_text_file. Throws InputError on
/// unknown families, keys or malformed values, and validates the result
/// against `params`.
NoiseSpec parse_noise_spec(std::string_view text, const CodeParams &params);

}  // namespace cveao
