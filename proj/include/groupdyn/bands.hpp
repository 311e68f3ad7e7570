#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace groupdyn {

/// A cortical oscillation band paired with the group-size level it can
/// plausibly service. The center frequency carries the throughput estimate;
/// the range is display-only.
struct AttentionBand {
  std::string name;
  std::string attention;
  double f_low;
  double f_high;
  double f_center;
  double dunbar_level;

  AttentionBand(std::string name_, std::string attention_, double f_low_,
                double f_high_, double f_center_, double dunbar_level_)
      : name(std::move(name_)),
        attention(std::move(attention_)),
        f_low(f_low_),
        f_high(f_high_),
        f_center(f_center_),
        dunbar_level(dunbar_level_) {
    if (!(f_low > 0.0 && f_center >= f_low && f_high >= f_center)) {
      throw std::invalid_argument(
          "band frequencies must satisfy 0 < f_low <= f_center <= f_high");
    }
    if (!(dunbar_level > 0.0)) {
      throw std::invalid_argument("dunbar_level must be positive");
    }
  }
};

/// Information throughput in relative units: center frequency times the
/// group-size level the band serves. Constant across the canonical bands.
inline double throughput_product(const AttentionBand& band) {
  return band.f_center * band.dunbar_level;
}

/// The three canonical bands: light attention over the largest groups down
/// to concentrated attention over conversation-sized ones.
inline std::array<AttentionBand, 3> canonical_bands() {
  return {AttentionBand{"alpha", "light", 5.0, 15.0, 5.0, 150.0},
          AttentionBand{"beta", "middle", 12.0, 30.0, 25.0, 30.0},
          AttentionBand{"gamma-fast", "concentrated", 32.0, 200.0, 150.0, 5.0}};
}

}  // namespace groupdyn
