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

#include <cmath>
#include <vector>

#include "apgame/errors.h"
#include "apgame/radio.h"
#include "doctest.h"
#include "reference_model.h"

namespace apgame {
namespace {

using testing::RefParams;
using testing::RefPower;
using testing::RelErr;

TEST_CASE("dbm to watts") {
  CHECK(DbmToWatts(30.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(DbmToWatts(0.0) == doctest::Approx(0.001).epsilon(1e-15));
  CHECK(RelErr(DbmToWatts(32.0), std::pow(10.0, 0.2)) < 1e-14);
  CHECK(DbmToWatts(32.0) == doctest::Approx(1.58489).epsilon(1e-5));
  CHECK(DbToLinear(-20.0) == doctest::Approx(0.01).epsilon(1e-15));
}

TEST_CASE("received power and snr") {
  RadioModel m{RadioParams{}};
  const double p_send = std::pow(10.0, 0.2);
  CHECK(RelErr(m.ReceivedPower(1.0), 5.0 * p_send) < 1e-14);
  CHECK(m.ReceivedPower(1.0) == doctest::Approx(7.92447).epsilon(1e-5));
  CHECK(RelErr(m.ReceivedPower(5.0), 5.0 * p_send / std::pow(5.0, 2.1)) < 1e-14);
  CHECK(m.ReceivedPower(5.0) == doctest::Approx(0.26983).epsilon(1e-4));
  CHECK(m.ReceivedPower(0.0) == m.ReceivedPower(1.0));
  CHECK(m.ReceivedPower(0.4) == m.ReceivedPower(1.0));
  CHECK(m.Snr(5.0) == doctest::Approx(2.6983e12).epsilon(1e-4));
  CHECK(m.Snr(0.0) == m.Snr(1.0));
  CHECK(RelErr(m.Snr(5.0), RefPower(RefParams{}, 5.0) / 1e-13) < 1e-13);

  // Noise set equal to received power gives SNR 1.
  RadioParams p;
  p.noise_w = m.ReceivedPower(5.0);
  CHECK(RadioModel(p).Snr(5.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sinr") {
  RadioModel m{RadioParams{}};
  const std::vector<double> lone = {5.0};
  CHECK(m.Sinr(0, lone) == m.Snr(5.0));

  const std::vector<double> two = {5.0, 5.0};
  const double p5 = RefPower(RefParams{}, 5.0);
  CHECK(RelErr(m.Sinr(0, two), p5 / (p5 + 1e-13)) < 1e-13);
  CHECK(m.Sinr(0, two) == doctest::Approx(1.0).epsilon(1e-9));

  const std::vector<double> four = {12.0, 12.0, 12.0, 12.0};
  for (std::size_t i = 1; i < 4; ++i) CHECK(m.Sinr(i, four) == m.Sinr(0, four));
}

TEST_CASE("capture threshold is inclusive") {
  RadioModel m{RadioParams{}};
  CHECK(m.CaptureOk(1.0));
  CHECK(m.CaptureOk(m.sinr_threshold_linear()));
  CHECK(m.CaptureOk(0.01));
  CHECK_FALSE(m.CaptureOk(0.005));
}

TEST_CASE("effective rate examples") {
  RadioModel m{RadioParams{}};
  const double w = 20e6;
  const double snr = m.Snr(5.0);

  const std::vector<double> lone = {5.0};
  CHECK(RelErr(m.EffectiveRate(0, lone, RateMode::kExact),
               w * std::log2(1.0 + snr)) < 1e-12);

  const std::vector<double> two = {5.0, 5.0};
  const auto ref = testing::RefRates(RefParams{}, two);
  REQUIRE(ref);
  const double r = m.EffectiveRate(0, two, RateMode::kExact);
  CHECK(RelErr(r, (*ref)[0]) < 1e-12);
  CHECK(r == doctest::Approx(44.18e6).epsilon(1e-3));

  RadioParams pure;
  pure.p_collision = 1.0;
  pure.p_non_collision = 0.0;
  RadioModel mp(pure);
  CHECK(RelErr(mp.EffectiveRate(0, two, RateMode::kExact),
               w * std::log2(1.0 + mp.Sinr(0, two))) < 1e-14);
}

TEST_CASE("approximate rate falls back when sinr <= 1") {
  RadioModel m{RadioParams{}};
  const std::vector<double> far = {2.0, 20.0};
  const double sinr = m.Sinr(0, far);
  REQUIRE(sinr > 1.0);
  CHECK(RelErr(m.EffectiveRate(0, far, RateMode::kApproximate),
               20e6 * std::log2(sinr)) < 1e-14);
  const std::vector<double> two = {5.0, 5.0};
  CHECK(m.EffectiveRate(0, two, RateMode::kApproximate) ==
        m.EffectiveRate(0, two, RateMode::kExact));
  CHECK(m.RateFromRatios(1e9, 1.0, RateMode::kApproximate) ==
        m.RateFromRatios(1e9, 1.0, RateMode::kExact));
}

TEST_CASE("capture violation is rejected") {
  RadioModel m{RadioParams{}};
  // 30 m user against one interferer at 1 m.
  const std::vector<double> d = {30.0, 1.0};
  CHECK_FALSE(m.CaptureOk(m.Sinr(0, d)));
  CHECK_THROWS_AS(m.EffectiveRate(0, d, RateMode::kExact), InfeasibleProfileError);
  CHECK_NOTHROW(m.EffectiveRate(1, d, RateMode::kExact));
}

TEST_CASE("monotonicity and symmetry properties") {
  RadioModel m{RadioParams{}};
  for (double d = 1.0; d < 30.0; d += 0.5) {
    CHECK(m.ReceivedPower(d + 0.5) < m.ReceivedPower(d));
    const std::vector<double> near = {d, 10.0, 20.0};
    const std::vector<double> farther = {d + 0.5, 10.0, 20.0};
    CHECK(m.Sinr(0, farther) < m.Sinr(0, near));
    // Interferer 0 moving out raises the others.
    CHECK(m.Sinr(1, farther) > m.Sinr(1, near));
    CHECK(m.Sinr(2, farther) > m.Sinr(2, near));
  }
  const std::vector<double> a = {7.0, 3.0, 11.0, 19.0};
  const std::vector<double> b = {7.0, 19.0, 3.0, 11.0};
  CHECK(m.EffectiveRate(0, a, RateMode::kExact) ==
        doctest::Approx(m.EffectiveRate(0, b, RateMode::kExact)).epsilon(1e-15));

  RadioParams wide;
  wide.bandwidth_hz = 40e6;
  CHECK(RelErr(RadioModel(wide).EffectiveRate(0, a, RateMode::kExact),
               2.0 * m.EffectiveRate(0, a, RateMode::kExact)) < 1e-14);

  RadioParams tilted;
  tilted.p_collision = 0.4;
  tilted.p_non_collision = 0.6;
  const std::vector<double> lone = {9.0};
  CHECK(RelErr(RadioModel(tilted).EffectiveRate(0, lone, RateMode::kExact),
               20e6 * std::log2(1.0 + m.Snr(9.0))) < 1e-14);
}

TEST_CASE("parameter validation") {
  auto bad = [](auto mutate) {
    RadioParams p;
    mutate(p);
    return p;
  };
  CHECK_NOTHROW(RadioParams{}.Validate());
  CHECK_THROWS_AS(bad([](RadioParams& p) { p.bandwidth_hz = 0; }).Validate(),
                  ValidationError);
  CHECK_THROWS_AS(bad([](RadioParams& p) { p.noise_w = -1; }).Validate(),
                  ValidationError);
  CHECK_THROWS_AS(bad([](RadioParams& p) { p.path_loss_exp = 2.0; }).Validate(),
                  ValidationError);
  CHECK_THROWS_AS(bad([](RadioParams& p) { p.path_loss_exp = 4.5; }).Validate(),
                  ValidationError);
  CHECK_NOTHROW(bad([](RadioParams& p) { p.path_loss_exp = 4.0; }).Validate());
  CHECK_THROWS_AS(bad([](RadioParams& p) { p.p_collision = 0.5; }).Validate(),
                  ValidationError);
  CHECK_THROWS_AS(bad([](RadioParams& p) { p.min_distance_m = 0; }).Validate(),
                  ValidationError);
  CHECK_THROWS_AS(RadioModel(bad([](RadioParams& p) { p.antenna_gain = 0; })),
                  ValidationError);
  CHECK_THROWS_WITH_AS(
      bad([](RadioParams& p) { p.bandwidth_hz = -3; }).Validate(),
      doctest::Contains("bandwidth_hz"), ValidationError);
  CHECK(ParseRateMode("approx") == RateMode::kApproximate);
  CHECK(ParseRateMode("exact") == RateMode::kExact);
  CHECK_THROWS_AS(ParseRateMode("fast"), ValidationError);
}

}  // namespace
}  // namespace apgame
