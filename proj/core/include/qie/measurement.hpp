#pragma once

// Reversible generalized energy measurement of a qubit plus outcome-dependent
// feedback, with work and entropy accounting.
//
// The two Kraus operators are diagonal in the energy basis and are built so
// that measuring the thermal state at inverse temperature beta_b yields the
// (colder) thermal state at beta_a for outcome 0 and its spin flip for
// outcome 1. Feedback maps both outcomes onto the beta_a thermal state by a
// unitary population reordering followed by level shifts, extracting
// E_i - E_after as work on outcome i. The construction is qubit-only.
//
// Pure functions over immutable values; safe for concurrent use.

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "qie/states.hpp"

namespace qie {

class GeneralizedMeasurement {
public:
    /// Parameters the qubit construction was built from.
    struct Context {
        double beta_b;     // inverse temperature before the measurement
        double beta_a;     // inverse temperature after measurement + feedback
        double omega_fb;   // frequency of the measurement isochore
    };

    /// Arbitrary ordered Kraus set (completeness is *not* enforced here; use
    /// completeness_defect to measure it).
    explicit GeneralizedMeasurement(std::vector<Eigen::MatrixXcd> kraus_ops,
                                    std::optional<Context> context = {});

    const std::vector<Eigen::MatrixXcd>& kraus_ops() const { return ops_; }
    const std::optional<Context>& context() const { return context_; }
    int dim() const { return static_cast<int>(ops_.front().rows()); }
    int outcomes() const { return static_cast<int>(ops_.size()); }

private:
    std::vector<Eigen::MatrixXcd> ops_;
    std::optional<Context> context_;
};

/// Builds the reversible qubit energy measurement {M_0, M_1} for
/// beta_a >= beta_b > 0 and omega_fb > 0. With a = beta_b*omega_fb and
/// b = beta_a*omega_fb the diagonal entries are
///   x^2 = (e^{a+b}-1)/(e^{2b}-1),  y^2 = (1-e^{-a-b})/(1-e^{-2b}),
///   u^2 = 1-x^2,                   v^2 = 1-y^2,
/// all taken as nonnegative reals, so completeness holds by construction.
/// beta_a < beta_b would make a radicand negative and is rejected; equality
/// gives the identity measurement M_0 = I, M_1 = 0.
GeneralizedMeasurement build_measurement(double beta_b, double beta_a,
                                         double omega_fb);

/// One measurement branch: rho -> M_i rho M_i^dag / p_i.
struct MeasurementRecord {
    int outcome;
    double probability;
    DensityMatrix post_state;
    double post_entropy;
    double post_energy;
    /// p_i < 1e-15; post_state holds the analytic target so downstream
    /// averages stay well defined.
    bool zero_probability;
};

/// Applies the measurement to a state that is diagonal in the energy basis
/// (off-diagonal elements beyond 1e-9 would make the measurement produce
/// entropy and are rejected). H supplies the energies of the records.
std::vector<MeasurementRecord> apply_measurement(
    const GeneralizedMeasurement& meas, const DensityMatrix& rho,
    const ScaledHamiltonian& H);

/// Max-norm of sum_i M_i^dag M_i - I.
double completeness_defect(const GeneralizedMeasurement& meas);

struct FeedbackReport {
    DensityMatrix final_state;
    double work_extracted;   // E_i - E_after
    double entropy_change;   // 0 for the reversible protocol
};

/// Maps a measurement record onto `target`: identity when the record already
/// equals the target, spin-flip reordering when it equals the flipped target
/// (both within 1e-9), otherwise a protocol mismatch. The reordering keeps
/// the outcome entropy; shifting the levels back to H sheds E_i - E_after.
FeedbackReport apply_feedback(const MeasurementRecord& record,
                              const DensityMatrix& target,
                              const ScaledHamiltonian& H);

struct MeasurementStatistics {
    double avg_feedback_work;      // sum_i p_i (E_i - E_after) = E_b - E_a
    double avg_entropy_change;     // sum_i p_i S_i - S_before = S_a - S_b
    double avg_energy_change_meas; // sum_i p_i E_i - E_before = 0
};

/// Outcome-averaged bookkeeping for a context-built measurement applied to
/// rho_before; H must match the context frequency.
MeasurementStatistics measurement_statistics(const GeneralizedMeasurement& meas,
                                             const DensityMatrix& rho_before,
                                             const ScaledHamiltonian& H);

}  // namespace qie
