#pragma once

// Thermal states, entropy, energy and polarization for working media with a
// scaling Hamiltonian H_t = omega_t * P, where P is a fixed traceless
// observable. Units: k = hbar = 1, entropies in nats, temperatures and
// frequencies share units of energy.
//
// All types are immutable after construction and every operation is a pure
// function; everything here is safe for concurrent use.

#include <Eigen/Dense>

#include <vector>

#include "qie/errors.hpp"

namespace qie {

/// Spectrum {lambda_n} of the scaled observable P, stored in ascending order
/// (index 0 is the ground level). The offset convention is traceless,
/// sum lambda_n = 0, and chi is defined by sum lambda_n^2 = 2*chi.
class PolarizationSpectrum {
public:
    /// Eigenvalues must be ascending and traceless within 1e-12.
    explicit PolarizationSpectrum(std::vector<double> eigenvalues);

    /// Qubit spectrum lambda = (-1/2, +1/2), chi = 1/4.
    static PolarizationSpectrum qubit();

    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    double chi() const { return chi_; }
    int dim() const { return static_cast<int>(eigenvalues_.size()); }

private:
    std::vector<double> eigenvalues_;
    double chi_;
};

/// H = omega * P with omega > 0.
class ScaledHamiltonian {
public:
    ScaledHamiltonian(double omega, PolarizationSpectrum spectrum);

    double omega() const { return omega_; }
    const PolarizationSpectrum& spectrum() const { return spectrum_; }
    int dim() const { return spectrum_.dim(); }

    /// Energy eigenvalues omega*lambda_n, same ordering as the spectrum.
    Eigen::VectorXd energies() const;
    /// Dense diagonal matrix representation.
    Eigen::MatrixXcd matrix() const;

private:
    double omega_;
    PolarizationSpectrum spectrum_;
};

/// N x N complex Hermitian, unit-trace, positive semidefinite state.
class DensityMatrix {
public:
    /// Validates hermiticity and trace within 1e-12 and eigenvalues down to
    /// -positivity_tol. States produced by numerical integration may pass a
    /// relaxed positivity_tol (1e-9).
    static DensityMatrix from_matrix(const Eigen::MatrixXcd& m,
                                     double positivity_tol = 1e-12);

    /// Diagonal state from populations (must sum to 1 within 1e-12).
    static DensityMatrix diagonal(const Eigen::VectorXd& populations,
                                  double positivity_tol = 1e-12);

    static DensityMatrix maximally_mixed(int dim);
    /// Basis state |k><k|.
    static DensityMatrix pure(int dim, int k);
    /// Diagonal qubit state with polarization <P> = p in [-1/2, 1/2]:
    /// populations (1/2 - p, 1/2 + p).
    static DensityMatrix qubit_from_polarization(double p,
                                                 double tol = 1e-12);

    const Eigen::MatrixXcd& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

    /// Real parts of the diagonal.
    Eigen::VectorXd populations() const;
    /// Largest off-diagonal magnitude is below tol.
    bool is_diagonal(double tol = 1e-12) const;
    /// max-norm distance to another state.
    double max_distance(const DensityMatrix& other) const;

private:
    explicit DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {}
    Eigen::MatrixXcd m_;
};

/// Reverses the population order; for a qubit this is the spin flip
/// sigma_x rho sigma_x.
DensityMatrix spin_flip(const DensityMatrix& rho);

/// Gibbs state exp(-beta H)/Z for beta >= 0.
DensityMatrix thermal_state(double beta, const ScaledHamiltonian& H);

/// Von Neumann entropy in nats, computed from the spectrum with
/// 0 ln 0 := 0. Diagonal states are read off directly; general Hermitian
/// input is diagonalized first. Eigenvalues below -1e-9 are rejected.
double entropy(const DensityMatrix& rho);

/// E = Tr[rho H].
double energy(const DensityMatrix& rho, const ScaledHamiltonian& H);

/// <P> = sum_n lambda_n p_n.
double polarization_of(const DensityMatrix& rho,
                       const PolarizationSpectrum& spectrum);

/// Result of inverting <P> = -tanh(beta omega / 2)/2 for a qubit.
/// `inverted` marks population inversion (polarization > 0, negative beta).
struct EffectiveBeta {
    double value;
    bool inverted;
};

/// beta' = (2/omega) artanh(-2 <P>); requires polarization strictly inside
/// (-1/2, 1/2) and omega > 0.
EffectiveBeta effective_beta(double polarization, double omega);

/// High-temperature entropy ln N - beta^2 omega^2 chi / N. Accurate for
/// |beta omega lambda_max| << 1 (not enforced).
double entropy_highT(double beta, double omega,
                     const PolarizationSpectrum& spectrum);

// Exact qubit closed forms, x = beta*omega throughout.

/// S(x) = ln(2 cosh(x/2)) - (x/2) tanh(x/2), overflow-safe.
double qubit_entropy(double x);
/// <P>(x) = -tanh(x/2)/2.
double qubit_polarization(double x);
/// E = omega * <P>(beta*omega) = -(omega/2) tanh(beta omega / 2).
double qubit_energy(double beta, double omega);
/// Excited-level population 1/(1 + e^x).
double qubit_excited_population(double x);

}  // namespace qie
