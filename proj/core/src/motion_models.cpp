#include "t2u/motion_models.hpp"

#include <cmath>
#include <stdexcept>

namespace t2u {

double VehicleState::speed() const { return std::hypot(vx, vy); }

double VehicleState::heading() const {
    if (vx == 0.0 && vy == 0.0) return 0.0;
    return std::atan2(vy, vx);
}

Vector5d VehicleState::to_vector() const {
    Vector5d v;
    v << x, y, vx, vy, omega;
    return v;
}

VehicleState VehicleState::from_vector(const Vector5d& v) {
    return VehicleState{v[0], v[1], v[2], v[3], v[4]};
}

namespace {

// sin(w dt)/w and (1 - cos(w dt))/w, Taylor-expanded below the threshold to
// remove the division-by-omega singularity.
struct TurnCoefficients {
    double s;   // sin(w dt)/w
    double c;   // (1 - cos(w dt))/w
};

TurnCoefficients turn_coefficients(double omega, double dt) {
    const double wt = omega * dt;
    if (std::abs(wt) < kTurnRateTaylorThreshold) {
        return {dt * (1.0 - wt * wt / 6.0), dt * (wt / 2.0) * (1.0 - wt * wt / 12.0)};
    }
    // 2 sin^2(x/2) form avoids the cancellation in 1 - cos(x) for small x.
    const double half = std::sin(0.5 * wt);
    return {std::sin(wt) / omega, 2.0 * half * half / omega};
}

}  // namespace

VehicleState propagate(const VehicleState& s, ModelKind model, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("propagate: dt must be positive");
    const double omega = model == ModelKind::Cv ? 0.0 : s.omega;
    const auto [sw, cw] = turn_coefficients(omega, dt);
    const double cos_wt = std::cos(omega * dt);
    const double sin_wt = std::sin(omega * dt);
    VehicleState out;
    out.x = s.x + sw * s.vx - cw * s.vy;
    out.y = s.y + cw * s.vx + sw * s.vy;
    out.vx = s.vx * cos_wt - s.vy * sin_wt;
    out.vy = s.vx * sin_wt + s.vy * cos_wt;
    out.omega = model == ModelKind::Cv ? 0.0 : s.omega;
    return out;
}

Matrix5d transition_jacobian(const VehicleState& s, ModelKind model, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("transition_jacobian: dt must be positive");
    Matrix5d f = Matrix5d::Identity();
    if (model == ModelKind::Cv) {
        f(0, 2) = dt;
        f(1, 3) = dt;
        return f;
    }
    const double omega = s.omega;
    const double wt = omega * dt;
    const auto [sw, cw] = turn_coefficients(omega, dt);
    const double cos_wt = std::cos(wt);
    const double sin_wt = std::sin(wt);
    f(0, 2) = sw;
    f(0, 3) = -cw;
    f(1, 2) = cw;
    f(1, 3) = sw;
    f(2, 2) = cos_wt;
    f(2, 3) = -sin_wt;
    f(3, 2) = sin_wt;
    f(3, 3) = cos_wt;
    // d/dw of the turn coefficients. The exact expressions lose all precision
    // to cancellation below |w dt| ~ 1e-4, so the series kicks in earlier than
    // in turn_coefficients.
    double ds_dw, dc_dw;
    if (std::abs(wt) < 1e-4) {
        ds_dw = -(omega * dt * dt * dt / 3.0) * (1.0 - wt * wt / 10.0);
        dc_dw = (dt * dt / 2.0) * (1.0 - wt * wt / 4.0);
    } else {
        ds_dw = (dt * cos_wt - sw) / omega;
        dc_dw = (dt * sin_wt - cw) / omega;
    }
    f(0, 4) = ds_dw * s.vx - dc_dw * s.vy;
    f(1, 4) = dc_dw * s.vx + ds_dw * s.vy;
    f(2, 4) = -dt * sin_wt * s.vx - dt * cos_wt * s.vy;
    f(3, 4) = dt * cos_wt * s.vx - dt * sin_wt * s.vy;
    return f;
}

Matrix5d process_noise_cov(const ProcessNoiseConfig& cfg, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("process_noise_cov: dt must be positive");
    Matrix5d q = Matrix5d::Zero();
    const double dt2 = dt * dt;
    const double dt3 = dt2 * dt;
    const double dt4 = dt3 * dt;
    const double qx = cfg.sigma_ax * cfg.sigma_ax;
    const double qy = cfg.sigma_ay * cfg.sigma_ay;
    q(0, 0) = dt4 / 4.0 * qx;
    q(0, 2) = q(2, 0) = dt3 / 2.0 * qx;
    q(2, 2) = dt2 * qx;
    q(1, 1) = dt4 / 4.0 * qy;
    q(1, 3) = q(3, 1) = dt3 / 2.0 * qy;
    q(3, 3) = dt2 * qy;
    q(4, 4) = dt2 * cfg.sigma_aw * cfg.sigma_aw;
    return q;
}

Matrix5d process_noise_for_model(const ProcessNoiseConfig& cfg, ModelKind model,
                                 double dt, double cv_omega_variance) {
    Matrix5d q = process_noise_cov(cfg, dt);
    if (model == ModelKind::Cv) q(4, 4) = cv_omega_variance;
    return q;
}

}  // namespace t2u
