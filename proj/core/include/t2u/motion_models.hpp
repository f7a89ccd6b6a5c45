#ifndef T2U_MOTION_MODELS_HPP
#define T2U_MOTION_MODELS_HPP

#include <Eigen/Dense>

namespace t2u {

using Vector5d = Eigen::Matrix<double, 5, 1>;
using Matrix5d = Eigen::Matrix<double, 5, 5>;

/// Planar kinematic state [x, y, vx, vy, omega].
struct VehicleState {
    double x = 0.0;      // [m]
    double y = 0.0;      // [m]
    double vx = 0.0;     // [m/s]
    double vy = 0.0;     // [m/s]
    double omega = 0.0;  // turn rate [rad/s]

    double speed() const;
    double heading() const;  // atan2(vy, vx); 0 when speed is 0

    Vector5d to_vector() const;
    static VehicleState from_vector(const Vector5d& v);
};

enum class ModelKind { Cv, Ct };

/// Standard deviations of the white accelerations driving the process noise.
struct ProcessNoiseConfig {
    double sigma_ax = 0.0;  // [m/s^2]
    double sigma_ay = 0.0;  // [m/s^2]
    double sigma_aw = 0.0;  // [rad/s^2]
};

// Below |omega*dt| = 1e-6 the coordinated-turn map switches to a second-order
// Taylor expansion of sin(w dt)/w and (1-cos(w dt))/w.
inline constexpr double kTurnRateTaylorThreshold = 1e-6;

/// Noise-free coordinated-turn propagation over dt. The CV variant applies the
/// same map with omega treated as 0 and forces the output omega to 0.
VehicleState propagate(const VehicleState& s, ModelKind model, double dt);

/// Jacobian of propagate with respect to the state. For CV the omega column is
/// zero except for a 1 at (4,4), matching the conventional linear CV block.
Matrix5d transition_jacobian(const VehicleState& s, ModelKind model, double dt);

/// Discretized white-acceleration covariance: per-axis blocks
/// [[dt^4/4, dt^3/2], [dt^3/2, dt^2]] * sigma^2 and dt^2*sigma_aw^2 for omega.
Matrix5d process_noise_cov(const ProcessNoiseConfig& cfg, double dt);

/// process_noise_cov with the omega variance pinned to cv_omega_variance for
/// the CV hypothesis, which keeps the two IMM models on a common 5-dim state.
Matrix5d process_noise_for_model(const ProcessNoiseConfig& cfg, ModelKind model,
                                 double dt, double cv_omega_variance = 1e-6);

}  // namespace t2u

#endif
