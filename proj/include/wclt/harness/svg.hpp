// Copyright 2026 The wclt Authors.
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

#include <span>
#include <string>

namespace wclt {

/// Standalone SVG: histogram of z-scores (density scale) with the standard
/// normal density drawn over it. Bins cover [-4, 4]; values outside are
/// clipped into the edge bins.
[[nodiscard]] std::string zscore_histogram_svg(std::span<const double> z, const std::string& title,
                                               int bins = 40);

}  // namespace wclt
