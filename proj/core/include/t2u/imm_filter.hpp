#ifndef T2U_IMM_FILTER_HPP
#define T2U_IMM_FILTER_HPP

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "t2u/motion_models.hpp"

namespace t2u {

struct GaussianBelief {
    VehicleState mean;
    Matrix5d cov = Matrix5d::Zero();
};

/// Measurement map z = fn(state) with analytic Jacobian and diagonal noise.
/// Component 2 of the measurement is treated as an angle: residuals in that
/// component are wrapped into (-pi, pi].
struct MeasurementModel {
    std::function<Eigen::Vector3d(const VehicleState&)> fn;
    std::function<Eigen::Matrix<double, 3, 5>(const VehicleState&)> jacobian;
    Eigen::Vector3d noise_var = Eigen::Vector3d::Zero();  // diagonal of Q_m

    Eigen::Matrix3d noise_cov() const { return noise_var.asDiagonal(); }
};

/// Bank of model-conditioned beliefs plus the Markov model machinery.
/// Two models (CV, CT) is the standard configuration; a single-model bank
/// degenerates to a plain EKF and realizes the CV-only baselines.
struct ImmBank {
    std::vector<GaussianBelief> beliefs;      // one per model
    std::vector<ModelKind> models;            // parallel to beliefs
    Eigen::VectorXd model_probs;              // rho, sums to 1
    Eigen::MatrixXd transition;               // row-stochastic Pi, (j,i) = pi_{j,i}

    int num_models() const { return static_cast<int>(models.size()); }
};

/// Builds a {CV, CT} bank with the given transition matrix, or a single-model
/// CV bank when single_cv is set.
ImmBank make_bank(const GaussianBelief& init, const Eigen::Matrix2d& transition,
                  bool single_cv = false);

/// Mixing weights c^{(i|j)} = pi_{j,i} rho^{(j)} / sum_j pi_{j,i} rho^{(j)}.
/// Entry (j, i) of the result is c^{(i|j)}; every column sums to 1.
/// Throws std::runtime_error when some column's denominator vanishes
/// (unreachable model).
Eigen::MatrixXd mixing_weights(const ImmBank& bank);

/// Moment-matched mixed inputs per model: mean sum_j x_j c^{(i|j)} and
/// covariance sum_j c^{(i|j)} [P_j + (xbar - x_j)(xbar - x_j)^T].
std::vector<GaussianBelief> mix_inputs(const ImmBank& bank,
                                       const Eigen::MatrixXd& weights);

/// EKF time update: mean through propagate, covariance F P F^T + Q.
GaussianBelief ekf_predict(const GaussianBelief& b, ModelKind model, double dt,
                           const Matrix5d& q);

struct UpdateResult {
    GaussianBelief posterior;
    double likelihood = 0.0;      // Gaussian density of the residual under N(0, S)
    double log_likelihood = 0.0;  // same in log space, safe against underflow
};

/// EKF measurement update with Joseph-form covariance and wrapped angle
/// residual. Throws std::runtime_error when S is singular.
UpdateResult ekf_update(const GaussianBelief& b, const Eigen::Vector3d& z,
                        const MeasurementModel& mm);

/// Model-probability update rho_i ∝ L_i sum_j pi_{j,i} rho_j. Invariant under
/// common positive scaling of the likelihoods. Throws std::runtime_error when
/// every numerator is zero (filter divergence).
Eigen::VectorXd update_model_probs(const Eigen::VectorXd& likelihoods,
                                   const ImmBank& bank);

/// Probability-weighted combination of the per-model predictions using the
/// previous-epoch model probabilities.
VehicleState combined_prediction(const ImmBank& bank,
                                 std::span<const VehicleState> per_model);

/// Output of the prediction phase: mixed-and-propagated beliefs per model and
/// their moment-matched combination (the prediction driving the beams).
struct ImmPrediction {
    std::vector<GaussianBelief> per_model;
    GaussianBelief combined;
};

/// Mixing (weights + mixed inputs) followed by per-model EKF prediction.
ImmPrediction imm_predict(const ImmBank& bank, double dt,
                          std::span<const Matrix5d> process_noise);

/// Per-model EKF update on a shared measurement plus model-probability update.
void imm_update(ImmBank& bank, const ImmPrediction& pred, const Eigen::Vector3d& z,
                const MeasurementModel& mm);

/// Adopts the predicted beliefs without a measurement; model probabilities are
/// left unchanged.
void imm_coast(ImmBank& bank, const ImmPrediction& pred);

/// Full epoch: mix -> predict -> update -> probability update. Returns the
/// pre-update combined prediction (the beamforming input).
VehicleState imm_step(ImmBank& bank, const Eigen::Vector3d& z,
                      const MeasurementModel& mm, double dt,
                      std::span<const Matrix5d> process_noise);

/// Moment-matched mixture of the current posteriors (for logging/metrics).
GaussianBelief combined_posterior(const ImmBank& bank);

}  // namespace t2u

#endif
