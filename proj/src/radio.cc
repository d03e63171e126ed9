// Copyright 2026 The apgame Authors.
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

#include "apgame/radio.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/core.h>

#include "apgame/errors.h"

namespace apgame {

std::string_view RateModeName(RateMode mode) {
  return mode == RateMode::kExact ? "exact" : "approx";
}

RateMode ParseRateMode(std::string_view name) {
  if (name == "exact") return RateMode::kExact;
  if (name == "approx" || name == "approximate") return RateMode::kApproximate;
  throw ValidationError(fmt::format("unknown rate mode '{}'", name));
}

void RadioParams::Validate() const {
  auto require = [](bool ok, std::string_view field, double value,
                    std::string_view rule) {
    if (!ok) {
      throw ValidationError(
          fmt::format("radio.{} = {} violates {}", field, value, rule));
    }
  };
  require(std::isfinite(bandwidth_hz) && bandwidth_hz > 0, "bandwidth_hz",
          bandwidth_hz, "> 0");
  require(std::isfinite(noise_w) && noise_w > 0, "noise_w", noise_w, "> 0");
  require(std::isfinite(tx_power_dbm), "tx_power_dbm", tx_power_dbm, "finite");
  require(std::isfinite(antenna_gain) && antenna_gain > 0, "antenna_gain",
          antenna_gain, "> 0");
  require(path_loss_exp > 2.0 && path_loss_exp <= 4.0, "path_loss_exp",
          path_loss_exp, "2 < alpha <= 4");
  require(p_collision >= 0 && p_collision <= 1, "p_collision", p_collision,
          "[0, 1]");
  require(p_non_collision >= 0 && p_non_collision <= 1, "p_non_collision",
          p_non_collision, "[0, 1]");
  require(std::abs(p_collision + p_non_collision - 1.0) <= 1e-12,
          "p_collision + p_non_collision", p_collision + p_non_collision,
          "== 1");
  require(std::isfinite(sinr_threshold_db), "sinr_threshold_db",
          sinr_threshold_db, "finite");
  require(std::isfinite(min_distance_m) && min_distance_m > 0,
          "min_distance_m", min_distance_m, "> 0");
}

double DbmToWatts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double DbToLinear(double db) { return std::pow(10.0, db / 10.0); }

RadioModel::RadioModel(const RadioParams& params) : params_(params) {
  params_.Validate();
  tx_power_w_ = DbmToWatts(params_.tx_power_dbm);
  threshold_linear_ = DbToLinear(params_.sinr_threshold_db);
}

double RadioModel::ReceivedPower(double distance_m) const {
  const double d = std::max(distance_m, params_.min_distance_m);
  return params_.antenna_gain * tx_power_w_ /
         std::pow(d, params_.path_loss_exp);
}

double RadioModel::Snr(double distance_m) const {
  return ReceivedPower(distance_m) / params_.noise_w;
}

double RadioModel::SinrFromPowers(std::size_t target,
                                  std::span<const double> powers) const {
  double interference = 0.0;
  for (std::size_t y = 0; y < powers.size(); ++y) {
    if (y != target) interference += powers[y];
  }
  return powers[target] / (interference + params_.noise_w);
}

double RadioModel::Sinr(std::size_t target,
                        std::span<const double> distances) const {
  const double own = ReceivedPower(distances[target]);
  double interference = 0.0;
  for (std::size_t y = 0; y < distances.size(); ++y) {
    if (y != target) interference += ReceivedPower(distances[y]);
  }
  return own / (interference + params_.noise_w);
}

bool RadioModel::CaptureOk(double sinr_linear) const {
  return sinr_linear >= threshold_linear_;
}

double RadioModel::RateFromRatios(double snr, double sinr,
                                  RateMode mode) const {
  const double w = params_.bandwidth_hz;
  if (mode == RateMode::kApproximate && sinr > 1.0) {
    return w * std::log2(sinr);
  }
  return params_.p_non_collision * w * std::log2(1.0 + snr) +
         params_.p_collision * w * std::log2(1.0 + sinr);
}

double RadioModel::EffectiveRateFromPowers(std::size_t target,
                                           std::span<const double> powers,
                                           RateMode mode) const {
  const double sinr = SinrFromPowers(target, powers);
  if (!CaptureOk(sinr)) {
    throw InfeasibleProfileError(fmt::format(
        "user #{} has SINR {:.6g} below capture threshold {:.6g}", target,
        sinr, threshold_linear_));
  }
  return RateFromRatios(powers[target] / params_.noise_w, sinr, mode);
}

double RadioModel::EffectiveRate(std::size_t target,
                                 std::span<const double> distances,
                                 RateMode mode) const {
  const double sinr = Sinr(target, distances);
  if (!CaptureOk(sinr)) {
    throw InfeasibleProfileError(fmt::format(
        "user #{} has SINR {:.6g} below capture threshold {:.6g}", target,
        sinr, threshold_linear_));
  }
  return RateFromRatios(Snr(distances[target]), sinr, mode);
}

}  // namespace apgame
