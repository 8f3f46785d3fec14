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

#include "rosbid/quadrature.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rosbid/errors.h"

namespace rosbid {
namespace {

constexpr int kMaxSubdivisions = 4000;

struct Segment {
  double a;
  double b;
  double value;
  double error;

  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment Evaluate(const std::function<double(double)>& f, double a, double b) {
  double error = 0.0;
  // max_depth = 0: a single Kronrod panel with its embedded error estimate.
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
          f, a, b, 0, 0.0, &error);
  if (!std::isfinite(value) || !std::isfinite(error)) {
    throw QuadratureFailure("integrand is not finite on [" +
                            std::to_string(a) + ", " + std::to_string(b) +
                            "]");
  }
  return {a, b, value, error};
}

}  // namespace

double IntegrateAdaptive(const std::function<double(double)>& f, double a,
                         double b, double abs_tol,
                         std::span<const double> breakpoints) {
  if (!(b > a)) return 0.0;

  std::vector<double> cuts = {a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Segment> heap;
  double total_error = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    Segment s = Evaluate(f, cuts[i], cuts[i + 1]);
    total_error += s.error;
    heap.push(s);
  }

  int subdivisions = 0;
  while (total_error > abs_tol) {
    if (subdivisions++ >= kMaxSubdivisions) {
      throw QuadratureFailure("adaptive quadrature on [" + std::to_string(a) +
                              ", " + std::to_string(b) +
                              "] stalled with error estimate " +
                              std::to_string(total_error));
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw QuadratureFailure("adaptive quadrature exhausted floating-point "
                              "resolution near " + std::to_string(mid));
    }
    Segment left = Evaluate(f, worst.a, mid);
    Segment right = Evaluate(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Sum in interval order so the result does not depend on heap layout.
  std::vector<Segment> segments;
  segments.reserve(heap.size());
  while (!heap.empty()) {
    segments.push_back(heap.top());
    heap.pop();
  }
  std::sort(segments.begin(), segments.end(),
            [](const Segment& x, const Segment& y) { return x.a < y.a; });
  double total = 0.0;
  for (const Segment& s : segments) total += s.value;
  return total;
}

}  // namespace rosbid
