#pragma once

#include <cmath>
#include <numbers>

namespace avc {

/// Every capacity in the library is computed in bits; conversion happens at the edges.
enum class LogBase { Two, E };

inline double in_unit(double bits, LogBase base) noexcept {
    return base == LogBase::Two ? bits : bits * std::numbers::ln2;
}

inline double pos(double v) noexcept { return v > 0.0 ? v : 0.0; }

}  // namespace avc
