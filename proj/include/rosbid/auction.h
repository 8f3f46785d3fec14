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
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace rosbid {

// Single-item second-price auction against one competing bid. Ties go to
// the bidder.
struct SecondPrice {
  double competing_bid = 0.0;
};

// Allocation x(b) = min(1, b) with the matching Myerson payment.
struct LinearAllocation {};

// A user-supplied allocation curve. The payment is derived from the Myerson
// identity by adaptive quadrature unless an explicit payment rule is given
// (explicit rules exist so that non-truthful fixtures can be checked).
class CustomAllocation {
 public:
  using Curve = std::function<double(double)>;

  explicit CustomAllocation(Curve allocation,
                            std::vector<double> breakpoints = {},
                            std::optional<Curve> payment = std::nullopt);

  double Allocation(double bid) const { return impl_->allocation(bid); }
  const std::optional<Curve>& explicit_payment() const {
    return impl_->payment;
  }
  const std::vector<double>& breakpoints() const { return impl_->breakpoints; }

 private:
  struct Impl {
    Curve allocation;
    std::vector<double> breakpoints;
    std::optional<Curve> payment;
  };
  std::shared_ptr<const Impl> impl_;
};

// A truthful auction as seen by one bidder: allocation x(b) and payment p(b).
// Immutable once built; copies share the custom curve.
class AuctionModel {
 public:
  using Kind = std::variant<SecondPrice, LinearAllocation, CustomAllocation>;

  static AuctionModel MakeSecondPrice(double competing_bid);
  static AuctionModel MakeLinear();
  static AuctionModel MakeCustom(CustomAllocation custom);

  // x(bid), in [0, 1].
  double Allocation(double bid) const;
  // Myerson payment p(bid) = b x(b) - \int_0^b x(z) dz.
  double Payment(double bid) const;
  // \int_0^bid x(z) dz. Closed form for built-ins, quadrature otherwise.
  double IntegratedAllocation(double bid) const;

  const Kind& kind() const { return kind_; }
  bool is_second_price() const {
    return std::holds_alternative<SecondPrice>(kind_);
  }
  // Competing bid of a second-price auction; nullopt for other kinds.
  std::optional<double> competing_bid() const;
  // Points where x may jump or kink; used to split quadrature panels.
  std::vector<double> Breakpoints() const;

 private:
  explicit AuctionModel(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

// One ad request: the advertiser's value and the auction it is sold in.
struct Query {
  double value = 0.0;
  AuctionModel auction = AuctionModel::MakeLinear();
};

// Absolute tolerance of the payment quadrature for custom allocations.
inline constexpr double kPaymentQuadratureTolerance = 1e-9;
// Residual below which CheckTruthful accepts a model.
inline constexpr double kTruthfulnessTolerance = 1e-6;

struct TruthfulnessReport {
  double max_monotonicity_violation = 0.0;
  double max_myerson_residual = 0.0;

  bool passed() const {
    return max_monotonicity_violation <= kTruthfulnessTolerance &&
           max_myerson_residual <= kTruthfulnessTolerance;
  }
};

// Samples x on a uniform grid of `grid_size` bids over [0, 2] and reports
// the largest decrease between neighbours and the largest deviation of the
// model's payment from b x(b) - \int_0^b x. Second-price integrals use the
// closed form max(0, b - d); every other model integrates x numerically,
// independently of how its payment is computed. Throws DomainError when
// grid_size < 2.
TruthfulnessReport CheckTruthful(const AuctionModel& model, int grid_size);

}  // namespace rosbid
