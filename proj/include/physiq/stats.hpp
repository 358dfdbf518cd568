// Copyright 2026 The physiq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <vector>

namespace physiq::bench {

/// Ranks with 1 = best. When `higher_is_better` the largest value ranks
/// first, otherwise the smallest does. Tied values share the average of the
/// positions they occupy.
std::vector<double> average_ranks(std::span<const double> values,
                                  bool higher_is_better);

/// Product-moment correlation. Requires equal lengths >= 3 and nonzero
/// variance in both inputs.
double pearson(std::span<const double> x, std::span<const double> y);

/// Pearson correlation of average-ranked values (ties get average ranks).
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace physiq::bench
