#include "t2u/imm_filter.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "t2u/angles.hpp"

namespace t2u {

namespace {

void symmetrize(Matrix5d& m) { m = 0.5 * (m + m.transpose()).eval(); }

GaussianBelief moment_match(const std::vector<GaussianBelief>& beliefs,
                            const Eigen::VectorXd& weights) {
    Vector5d mean = Vector5d::Zero();
    for (size_t i = 0; i < beliefs.size(); ++i) {
        mean += weights[static_cast<int>(i)] * beliefs[i].mean.to_vector();
    }
    Matrix5d cov = Matrix5d::Zero();
    for (size_t i = 0; i < beliefs.size(); ++i) {
        const Vector5d diff = mean - beliefs[i].mean.to_vector();
        cov += weights[static_cast<int>(i)] *
               (beliefs[i].cov + diff * diff.transpose());
    }
    symmetrize(cov);
    return {VehicleState::from_vector(mean), cov};
}

}  // namespace

ImmBank make_bank(const GaussianBelief& init, const Eigen::Matrix2d& transition,
                  bool single_cv) {
    ImmBank bank;
    if (single_cv) {
        bank.beliefs = {init};
        bank.models = {ModelKind::Cv};
        bank.model_probs = Eigen::VectorXd::Ones(1);
        bank.transition = Eigen::MatrixXd::Ones(1, 1);
    } else {
        bank.beliefs = {init, init};
        bank.models = {ModelKind::Cv, ModelKind::Ct};
        bank.model_probs = Eigen::VectorXd::Constant(2, 0.5);
        bank.transition = transition;
    }
    return bank;
}

Eigen::MatrixXd mixing_weights(const ImmBank& bank) {
    const int n = bank.num_models();
    Eigen::MatrixXd w(n, n);
    for (int i = 0; i < n; ++i) {
        double denom = 0.0;
        for (int j = 0; j < n; ++j) {
            denom += bank.transition(j, i) * bank.model_probs[j];
        }
        if (denom <= 0.0) {
            throw std::runtime_error("mixing_weights: model " + std::to_string(i) +
                                     " is unreachable (zero prior mass)");
        }
        for (int j = 0; j < n; ++j) {
            w(j, i) = bank.transition(j, i) * bank.model_probs[j] / denom;
        }
    }
    return w;
}

std::vector<GaussianBelief> mix_inputs(const ImmBank& bank,
                                       const Eigen::MatrixXd& weights) {
    const int n = bank.num_models();
    std::vector<GaussianBelief> mixed(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        mixed[static_cast<size_t>(i)] = moment_match(bank.beliefs, weights.col(i));
    }
    return mixed;
}

GaussianBelief ekf_predict(const GaussianBelief& b, ModelKind model, double dt,
                           const Matrix5d& q) {
    const Matrix5d f = transition_jacobian(b.mean, model, dt);
    GaussianBelief out;
    out.mean = propagate(b.mean, model, dt);
    out.cov = f * b.cov * f.transpose() + q;
    symmetrize(out.cov);
    return out;
}

UpdateResult ekf_update(const GaussianBelief& b, const Eigen::Vector3d& z,
                        const MeasurementModel& mm) {
    const Eigen::Matrix<double, 3, 5> h = mm.jacobian(b.mean);
    const Eigen::Matrix3d s = h * b.cov * h.transpose() + mm.noise_cov();

    Eigen::LDLT<Eigen::Matrix3d> ldlt(s);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
        ldlt.vectorD().minCoeff() <= 0.0) {
        throw std::runtime_error("ekf_update: singular residual covariance");
    }

    Eigen::Vector3d residual = z - mm.fn(b.mean);
    residual[2] = wrap_angle(residual[2]);

    const Eigen::Matrix<double, 5, 3> gain =
        b.cov * h.transpose() * ldlt.solve(Eigen::Matrix3d::Identity());

    UpdateResult out;
    out.posterior.mean =
        VehicleState::from_vector(b.mean.to_vector() + gain * residual);
    const Matrix5d a = Matrix5d::Identity() - gain * h;
    out.posterior.cov = a * b.cov * a.transpose() +
                        gain * mm.noise_cov() * gain.transpose();
    symmetrize(out.posterior.cov);

    const double maha = residual.dot(ldlt.solve(residual));
    const double log_det = ldlt.vectorD().array().log().sum();
    out.log_likelihood = -0.5 * (maha + log_det + 3.0 * std::log(2.0 * std::numbers::pi));
    out.likelihood = std::exp(out.log_likelihood);
    return out;
}

Eigen::VectorXd update_model_probs(const Eigen::VectorXd& likelihoods,
                                   const ImmBank& bank) {
    const int n = bank.num_models();
    Eigen::VectorXd numerators(n);
    for (int i = 0; i < n; ++i) {
        double prior = 0.0;
        for (int j = 0; j < n; ++j) {
            prior += bank.transition(j, i) * bank.model_probs[j];
        }
        numerators[i] = likelihoods[i] * prior;
    }
    const double total = numerators.sum();
    if (!(total > 0.0)) {
        throw std::runtime_error("update_model_probs: all model likelihoods vanished");
    }
    return numerators / total;
}

VehicleState combined_prediction(const ImmBank& bank,
                                 std::span<const VehicleState> per_model) {
    Vector5d mean = Vector5d::Zero();
    for (size_t i = 0; i < per_model.size(); ++i) {
        mean += bank.model_probs[static_cast<int>(i)] * per_model[i].to_vector();
    }
    return VehicleState::from_vector(mean);
}

ImmPrediction imm_predict(const ImmBank& bank, double dt,
                          std::span<const Matrix5d> process_noise) {
    const Eigen::MatrixXd weights = mixing_weights(bank);
    const std::vector<GaussianBelief> mixed = mix_inputs(bank, weights);
    ImmPrediction pred;
    pred.per_model.reserve(mixed.size());
    for (size_t i = 0; i < mixed.size(); ++i) {
        pred.per_model.push_back(
            ekf_predict(mixed[i], bank.models[i], dt, process_noise[i]));
    }
    pred.combined = moment_match(pred.per_model, bank.model_probs);
    return pred;
}

void imm_update(ImmBank& bank, const ImmPrediction& pred, const Eigen::Vector3d& z,
                const MeasurementModel& mm) {
    const int n = bank.num_models();
    Eigen::VectorXd log_likelihoods(n);
    for (int i = 0; i < n; ++i) {
        UpdateResult res = ekf_update(pred.per_model[static_cast<size_t>(i)], z, mm);
        bank.beliefs[static_cast<size_t>(i)] = res.posterior;
        log_likelihoods[i] = res.log_likelihood;
    }
    // Likelihoods only enter through ratios, so shifting by the max keeps the
    // update exact while avoiding underflow to an all-zero vector.
    const Eigen::VectorXd scaled =
        (log_likelihoods.array() - log_likelihoods.maxCoeff()).exp();
    bank.model_probs = update_model_probs(scaled, bank);
}

void imm_coast(ImmBank& bank, const ImmPrediction& pred) {
    bank.beliefs = pred.per_model;
}

VehicleState imm_step(ImmBank& bank, const Eigen::Vector3d& z,
                      const MeasurementModel& mm, double dt,
                      std::span<const Matrix5d> process_noise) {
    const ImmPrediction pred = imm_predict(bank, dt, process_noise);
    imm_update(bank, pred, z, mm);
    return pred.combined.mean;
}

GaussianBelief combined_posterior(const ImmBank& bank) {
    return moment_match(bank.beliefs, bank.model_probs);
}

}  // namespace t2u
