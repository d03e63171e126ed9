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

#ifndef APGAME_RADIO_H_
#define APGAME_RADIO_H_

// Path-loss, SNR/SINR and collision-weighted Shannon rate for uplink users
// of a single access point. Every signal, including interference, is
// measured at the AP, so a user's contribution depends only on its own
// distance to the AP.

#include <span>
#include <string_view>

namespace apgame {

enum class RateMode {
  kExact,        // P_nc * W log2(1 + SNR) + P_c * W log2(1 + SINR)
  kApproximate,  // W log2(SINR), falls back to kExact when SINR <= 1
};

std::string_view RateModeName(RateMode mode);
RateMode ParseRateMode(std::string_view name);

// Physical-layer constants. Defaults are the single-AP 802.11g setting
// (20 MHz, 32 dBm terminals, alpha = 2.1, -20 dB capture threshold).
struct RadioParams {
  double bandwidth_hz = 20e6;
  double noise_w = 1e-13;
  double tx_power_dbm = 32.0;
  double antenna_gain = 5.0;
  double path_loss_exp = 2.1;
  double p_collision = 0.97;
  double p_non_collision = 0.03;
  double sinr_threshold_db = -20.0;
  double min_distance_m = 1.0;

  // Throws ValidationError naming the offending field.
  void Validate() const;

  friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

double DbmToWatts(double dbm);
double DbToLinear(double db);

// Validated, unit-converted view of RadioParams. Immutable and cheap to
// copy; all member functions are pure.
class RadioModel {
 public:
  explicit RadioModel(const RadioParams& params);

  const RadioParams& params() const { return params_; }
  double tx_power_w() const { return tx_power_w_; }
  double sinr_threshold_linear() const { return threshold_linear_; }

  // g * P_send / max(d, d_min)^alpha.
  double ReceivedPower(double distance_m) const;
  double Snr(double distance_m) const;

  // SINR of distances[target] against every other entry as interferer.
  double Sinr(std::size_t target, std::span<const double> distances) const;
  // Same, from precomputed received powers.
  double SinrFromPowers(std::size_t target,
                        std::span<const double> powers) const;

  // Inclusive: SINR exactly at the threshold still captures.
  bool CaptureOk(double sinr_linear) const;

  // Throws InfeasibleProfileError when the target fails capture.
  double EffectiveRate(std::size_t target, std::span<const double> distances,
                       RateMode mode) const;
  double EffectiveRateFromPowers(std::size_t target,
                                 std::span<const double> powers,
                                 RateMode mode) const;

  // Rate from an (SNR, SINR) pair; no capture check.
  double RateFromRatios(double snr, double sinr, RateMode mode) const;

 private:
  RadioParams params_;
  double tx_power_w_;
  double threshold_linear_;
};

}  // namespace apgame

#endif  // APGAME_RADIO_H_
