// Copyright 2026 Google LLC
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

#include <functional>
#include <span>

namespace rosbid {

// Integrates `f` over [a, b] to an absolute error of `abs_tol` using a
// globally adaptive Gauss-Kronrod (7/15) scheme. The interval is first split
// at every point of `breakpoints` inside (a, b); known kinks and jumps belong
// there. Throws QuadratureFailure when the subdivision budget runs out before
// the summed error estimate drops below `abs_tol`.
double IntegrateAdaptive(const std::function<double(double)>& f, double a,
                         double b, double abs_tol,
                         std::span<const double> breakpoints = {});

}  // namespace rosbid
