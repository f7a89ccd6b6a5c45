#ifndef T2U_ANGLES_HPP
#define T2U_ANGLES_HPP

#include <cmath>
#include <numbers>

namespace t2u {

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * std::numbers::pi);
    if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
    return a;
}

}  // namespace t2u

#endif
