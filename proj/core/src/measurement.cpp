#include "qie/measurement.hpp"

#include <cmath>
#include <sstream>

namespace qie {

namespace {

constexpr double kZeroProbability = 1e-15;

Eigen::MatrixXcd diag2(double ground, double excited) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = ground;
    m(1, 1) = excited;
    return m;
}

}  // namespace

GeneralizedMeasurement::GeneralizedMeasurement(
    std::vector<Eigen::MatrixXcd> kraus_ops, std::optional<Context> context)
    : ops_(std::move(kraus_ops)), context_(std::move(context)) {
    if (ops_.empty()) throw InvalidParameterError("empty Kraus set");
    const auto rows = ops_.front().rows();
    for (const auto& m : ops_)
        if (m.rows() != rows || m.cols() != rows)
            throw InvalidParameterError("Kraus operators must be square, same dim");
}

GeneralizedMeasurement build_measurement(double beta_b, double beta_a,
                                         double omega_fb) {
    if (!(beta_b > 0.0) || !(beta_a > 0.0) || !(omega_fb > 0.0) ||
        !std::isfinite(beta_b) || !std::isfinite(beta_a) ||
        !std::isfinite(omega_fb))
        throw InvalidParameterError("measurement parameters must be positive");
    if (beta_a < beta_b)
        throw InvalidParameterError(
            "beta_a < beta_b makes a Kraus radicand negative");

    const double a = beta_b * omega_fb;
    const double b = beta_a * omega_fb;
    // y^2 = (1-e^{-a-b})/(1-e^{-2b}), x^2 = e^{a-b} y^2; expm1 keeps both
    // accurate for small arguments and overflow-free for large b.
    const double y2 = std::expm1(-(a + b)) / std::expm1(-2.0 * b);
    const double x2 = std::exp(a - b) * y2;
    const double u2 = std::max(0.0, 1.0 - x2);
    const double v2 = std::max(0.0, 1.0 - y2);

    std::vector<Eigen::MatrixXcd> ops;
    ops.push_back(diag2(std::sqrt(y2), std::sqrt(x2)));  // M_0 = x|1><1| + y|0><0|
    ops.push_back(diag2(std::sqrt(v2), std::sqrt(u2)));  // M_1 = u|1><1| + v|0><0|
    return GeneralizedMeasurement(
        std::move(ops), GeneralizedMeasurement::Context{beta_b, beta_a, omega_fb});
}

std::vector<MeasurementRecord> apply_measurement(
    const GeneralizedMeasurement& meas, const DensityMatrix& rho,
    const ScaledHamiltonian& H) {
    if (rho.dim() != meas.dim() || H.dim() != meas.dim())
        throw InvalidParameterError("measurement/state dimension mismatch");
    if (!rho.is_diagonal(1e-9))
        throw ReversibilityError(
            "pre-measurement state has off-diagonal elements beyond 1e-9; "
            "the measurement would produce entropy");

    // Analytic targets for zero-probability outcomes of the qubit protocol.
    std::optional<DensityMatrix> target;
    if (meas.context() && meas.dim() == 2)
        target = thermal_state(meas.context()->beta_a, H);

    std::vector<MeasurementRecord> records;
    records.reserve(meas.outcomes());
    for (int i = 0; i < meas.outcomes(); ++i) {
        const Eigen::MatrixXcd& m = meas.kraus_ops()[i];
        const Eigen::MatrixXcd raw = m * rho.matrix() * m.adjoint();
        const double p = raw.trace().real();
        if (p < kZeroProbability) {
            DensityMatrix post =
                target ? (i == 0 ? *target : spin_flip(*target)) : rho;
            records.push_back({i, std::max(p, 0.0), post, entropy(post),
                               energy(post, H), true});
            continue;
        }
        DensityMatrix post = DensityMatrix::from_matrix(raw / p, 1e-9);
        const double s = entropy(post);
        const double e = energy(post, H);
        records.push_back({i, p, std::move(post), s, e, false});
    }
    return records;
}

double completeness_defect(const GeneralizedMeasurement& meas) {
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(meas.dim(), meas.dim());
    for (const auto& m : meas.kraus_ops()) sum += m.adjoint() * m;
    sum -= Eigen::MatrixXcd::Identity(meas.dim(), meas.dim());
    return sum.cwiseAbs().maxCoeff();
}

FeedbackReport apply_feedback(const MeasurementRecord& record,
                              const DensityMatrix& target,
                              const ScaledHamiltonian& H) {
    if (target.dim() != record.post_state.dim() || H.dim() != target.dim())
        throw InvalidParameterError("feedback dimension mismatch");

    const double e_after = energy(target, H);
    const DensityMatrix flipped = spin_flip(target);

    const bool matches_target = record.post_state.max_distance(target) <= 1e-9;
    const bool matches_flip = record.post_state.max_distance(flipped) <= 1e-9;
    if (!matches_target && !matches_flip) {
        std::ostringstream os;
        os << "outcome " << record.outcome
           << " state matches neither the target nor its spin flip";
        throw ProtocolMismatchError(os.str());
    }

    // Reordering is unitary, so the branch entropy is carried over unchanged;
    // the level shift back to H releases E_i - E_after.
    const double entropy_change = entropy(target) - record.post_entropy;
    return {target, record.post_energy - e_after, entropy_change};
}

MeasurementStatistics measurement_statistics(const GeneralizedMeasurement& meas,
                                             const DensityMatrix& rho_before,
                                             const ScaledHamiltonian& H) {
    if (!meas.context())
        throw InvalidParameterError(
            "statistics need a context-built measurement");
    const auto& ctx = *meas.context();
    if (std::abs(H.omega() - ctx.omega_fb) >
        1e-12 * std::max(1.0, std::abs(ctx.omega_fb)))
        throw InvalidParameterError(
            "Hamiltonian frequency differs from the measurement context");

    const DensityMatrix target = thermal_state(ctx.beta_a, H);
    const double e_after = energy(target, H);
    const double e_before = energy(rho_before, H);
    const double s_before = entropy(rho_before);

    const auto records = apply_measurement(meas, rho_before, H);
    double w_fb = 0.0, avg_s = 0.0, avg_e = 0.0;
    for (const auto& r : records) {
        w_fb += r.probability * (r.post_energy - e_after);
        avg_s += r.probability * r.post_entropy;
        avg_e += r.probability * r.post_energy;
    }
    return {w_fb, avg_s - s_before, avg_e - e_before};
}

}  // namespace qie
