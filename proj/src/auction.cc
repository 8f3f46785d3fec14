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

#include "rosbid/auction.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "rosbid/errors.h"
#include "rosbid/quadrature.h"

namespace rosbid {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

CustomAllocation::CustomAllocation(Curve allocation,
                                   std::vector<double> breakpoints,
                                   std::optional<Curve> payment)
    : impl_(std::make_shared<const Impl>(Impl{std::move(allocation),
                                              std::move(breakpoints),
                                              std::move(payment)})) {}

AuctionModel AuctionModel::MakeSecondPrice(double competing_bid) {
  return AuctionModel(SecondPrice{competing_bid});
}

AuctionModel AuctionModel::MakeLinear() {
  return AuctionModel(LinearAllocation{});
}

AuctionModel AuctionModel::MakeCustom(CustomAllocation custom) {
  return AuctionModel(std::move(custom));
}

double AuctionModel::Allocation(double bid) const {
  return std::visit(
      Overloaded{
          [bid](const SecondPrice& sp) {
            return bid >= sp.competing_bid ? 1.0 : 0.0;
          },
          [bid](const LinearAllocation&) { return std::min(1.0, bid); },
          [bid](const CustomAllocation& c) { return c.Allocation(bid); },
      },
      kind_);
}

double AuctionModel::IntegratedAllocation(double bid) const {
  return std::visit(
      Overloaded{
          [bid](const SecondPrice& sp) {
            return std::max(0.0, bid - sp.competing_bid);
          },
          [bid](const LinearAllocation&) {
            return bid <= 1.0 ? 0.5 * bid * bid : 0.5 + (bid - 1.0);
          },
          [bid](const CustomAllocation& c) {
            return IntegrateAdaptive(
                [&c](double z) { return c.Allocation(z); }, 0.0, bid,
                kPaymentQuadratureTolerance, c.breakpoints());
          },
      },
      kind_);
}

double AuctionModel::Payment(double bid) const {
  return std::visit(
      Overloaded{
          [bid](const SecondPrice& sp) {
            return bid >= sp.competing_bid ? sp.competing_bid : 0.0;
          },
          [bid](const LinearAllocation&) {
            return bid <= 1.0 ? 0.5 * bid * bid : 0.5;
          },
          [this, bid](const CustomAllocation& c) {
            if (c.explicit_payment()) return (*c.explicit_payment())(bid);
            const double x = c.Allocation(bid);
            if (x == 0.0) return 0.0;
            return bid * x - IntegratedAllocation(bid);
          },
      },
      kind_);
}

std::optional<double> AuctionModel::competing_bid() const {
  if (const auto* sp = std::get_if<SecondPrice>(&kind_)) {
    return sp->competing_bid;
  }
  return std::nullopt;
}

std::vector<double> AuctionModel::Breakpoints() const {
  return std::visit(
      Overloaded{
          [](const SecondPrice& sp) {
            return std::vector<double>{sp.competing_bid};
          },
          [](const LinearAllocation&) { return std::vector<double>{1.0}; },
          [](const CustomAllocation& c) { return c.breakpoints(); },
      },
      kind_);
}

TruthfulnessReport CheckTruthful(const AuctionModel& model, int grid_size) {
  if (grid_size < 2) {
    throw DomainError("grid_size must be at least 2, got " +
                      std::to_string(grid_size));
  }
  constexpr double kGridMax = 2.0;
  const std::vector<double> breaks = model.Breakpoints();
  auto allocation = [&model](double z) { return model.Allocation(z); };

  TruthfulnessReport report;
  double prev_x = model.Allocation(0.0);
  double prev_b = 0.0;
  double integral = 0.0;  // running \int_0^b x, extended panel by panel
  for (int i = 0; i < grid_size; ++i) {
    const double b = kGridMax * i / (grid_size - 1);
    const double x = model.Allocation(b);
    if (i > 0) {
      report.max_monotonicity_violation =
          std::max(report.max_monotonicity_violation, prev_x - x);
    }
    double expected;
    if (model.is_second_price()) {
      expected = b * x - model.IntegratedAllocation(b);
    } else {
      integral += IntegrateAdaptive(allocation, prev_b, b,
                                    kPaymentQuadratureTolerance /
                                        static_cast<double>(grid_size),
                                    breaks);
      expected = b * x - integral;
    }
    report.max_myerson_residual = std::max(
        report.max_myerson_residual, std::abs(model.Payment(b) - expected));
    prev_x = x;
    prev_b = b;
  }
  return report;
}

}  // namespace rosbid
