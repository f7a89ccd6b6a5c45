#include "t2u/array_geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace t2u {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ArrayConfig ArrayConfig::from_carrier(int num_tx, int num_rx, double carrier_hz,
                                      double spacing_in_wavelengths) {
    if (num_tx < 1 || num_rx < 1) {
        throw std::invalid_argument("ArrayConfig: antenna counts must be >= 1");
    }
    if (carrier_hz <= 0.0 || spacing_in_wavelengths <= 0.0) {
        throw std::invalid_argument("ArrayConfig: carrier and spacing must be positive");
    }
    ArrayConfig cfg;
    cfg.num_tx = num_tx;
    cfg.num_rx = num_rx;
    cfg.wavelength = kSpeedOfLight / carrier_hz;
    cfg.spacing = spacing_in_wavelengths * cfg.wavelength;
    return cfg;
}

double element_distance(const PolarPoint& p, int n, double spacing) {
    const double nd = n * spacing;
    return std::sqrt(p.range * p.range + nd * nd -
                     2.0 * p.range * nd * std::cos(p.angle));
}

SteeringVector steering_vector(const ArrayConfig& cfg, ArraySide side,
                               const PolarPoint& p) {
    const int n_elem = side == ArraySide::Tx ? cfg.num_tx : cfg.num_rx;
    SteeringVector v(n_elem);
    const double k = kTwoPi / cfg.wavelength;
    for (int n = 0; n < n_elem; ++n) {
        const double phase = -k * (element_distance(p, n, cfg.spacing) - p.range);
        v[n] = std::polar(1.0, phase);
    }
    return v;
}

SteeringVector far_field_steering_vector(const ArrayConfig& cfg, ArraySide side,
                                         double angle) {
    const int n_elem = side == ArraySide::Tx ? cfg.num_tx : cfg.num_rx;
    SteeringVector v(n_elem);
    const double k = kTwoPi / cfg.wavelength;
    const double cos_theta = std::cos(angle);
    for (int n = 0; n < n_elem; ++n) {
        v[n] = std::polar(1.0, k * n * cfg.spacing * cos_theta);
    }
    return v;
}

std::complex<double> channel_gain(double range, double wavelength) {
    if (range <= 0.0) {
        throw std::invalid_argument("channel_gain: range must be positive");
    }
    const double magnitude = std::sqrt(wavelength / (4.0 * std::numbers::pi * range));
    return std::polar(magnitude, -kTwoPi * range / wavelength);
}

double rayleigh_distance(const ArrayConfig& cfg) {
    const double d = cfg.aperture();
    return 2.0 * d * d / cfg.wavelength;
}

std::complex<double> beam_gain(const SteeringVector& v, const Eigen::VectorXcd& w) {
    if (v.size() != w.size()) {
        throw std::invalid_argument("beam_gain: vector length mismatch");
    }
    return v.dot(w);  // Eigen's dot conjugates the left operand
}

}  // namespace t2u
