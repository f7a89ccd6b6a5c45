#ifndef T2U_ARRAY_GEOMETRY_HPP
#define T2U_ARRAY_GEOMETRY_HPP

#include <Eigen/Dense>
#include <complex>

namespace t2u {

// Propagation constant used for wavelength and delay conversions. 3e8 m/s is
// the usual comms convention and makes a 30 GHz carrier an exact 1 cm wave.
inline constexpr double kSpeedOfLight = 3.0e8;

using SteeringVector = Eigen::VectorXcd;

/// Uniform linear array: element n sits at [n*d, 0], n = 0..N-1.
struct ArrayConfig {
    int num_tx = 1;         // N_t
    int num_rx = 1;         // N_r
    double spacing = 0.0;   // d [m]
    double wavelength = 0.0;  // lambda [m]

    static ArrayConfig from_carrier(int num_tx, int num_rx, double carrier_hz,
                                    double spacing_in_wavelengths = 0.5);

    // Transmit aperture D = (N_t - 1) * d.
    double aperture() const { return (num_tx - 1) * spacing; }
};

/// Position in the array plane, relative to element 0 at the origin.
struct PolarPoint {
    double range = 0.0;   // r > 0 [m]
    double angle = 0.0;   // theta in (-pi, pi], measured from the array axis
};

enum class ArraySide { Tx, Rx };

/// Distance from array element n to the point (r, theta):
/// sqrt(r^2 + n^2 d^2 - 2 r n d cos(theta)).
double element_distance(const PolarPoint& p, int n, double spacing);

/// Spherical-wave (near-field-exact) steering vector; entry n is
/// exp(-j 2pi/lambda (r_n - r)), so entry 0 is exactly 1.
SteeringVector steering_vector(const ArrayConfig& cfg, ArraySide side,
                               const PolarPoint& p);

/// Planar-wavefront limit of steering_vector: entry n is
/// exp(+j 2pi/lambda n d cos(theta)).
SteeringVector far_field_steering_vector(const ArrayConfig& cfg, ArraySide side,
                                         double angle);

/// Free-space complex gain sqrt(lambda / (4 pi r)) * exp(-j 2 pi r / lambda);
/// power follows an exact 1/r law.
std::complex<double> channel_gain(double range, double wavelength);

/// Near/far-field boundary 2 D^2 / lambda of the transmit aperture.
double rayleigh_distance(const ArrayConfig& cfg);

/// Inner product v^H w. Throws std::invalid_argument on length mismatch.
std::complex<double> beam_gain(const SteeringVector& v, const Eigen::VectorXcd& w);

}  // namespace t2u

#endif
