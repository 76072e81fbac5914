#include "qie/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qie {

namespace {

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(),
                       [](double x) { return std::isfinite(x); });
}

}  // namespace

PolarizationSpectrum::PolarizationSpectrum(std::vector<double> eigenvalues)
    : eigenvalues_(std::move(eigenvalues)) {
    if (eigenvalues_.size() < 2 || !all_finite(eigenvalues_))
        throw InvalidParameterError("spectrum needs >= 2 finite eigenvalues");
    if (!std::is_sorted(eigenvalues_.begin(), eigenvalues_.end()))
        throw InvalidParameterError("spectrum eigenvalues must be ascending");
    const double trace =
        std::accumulate(eigenvalues_.begin(), eigenvalues_.end(), 0.0);
    if (std::abs(trace) > 1e-12)
        throw InvalidParameterError("spectrum is not traceless");
    double sumsq = 0.0;
    for (double l : eigenvalues_) sumsq += l * l;
    chi_ = sumsq / 2.0;
    if (chi_ <= 0.0)
        throw InvalidParameterError("spectrum is identically zero");
}

PolarizationSpectrum PolarizationSpectrum::qubit() {
    return PolarizationSpectrum({-0.5, 0.5});
}

ScaledHamiltonian::ScaledHamiltonian(double omega, PolarizationSpectrum spectrum)
    : omega_(omega), spectrum_(std::move(spectrum)) {
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw InvalidParameterError("omega must be positive and finite");
}

Eigen::VectorXd ScaledHamiltonian::energies() const {
    Eigen::VectorXd e(dim());
    for (int n = 0; n < dim(); ++n) e(n) = omega_ * spectrum_.eigenvalues()[n];
    return e;
}

Eigen::MatrixXcd ScaledHamiltonian::matrix() const {
    return energies().cast<std::complex<double>>().asDiagonal();
}

DensityMatrix DensityMatrix::from_matrix(const Eigen::MatrixXcd& m,
                                         double positivity_tol) {
    if (m.rows() != m.cols() || m.rows() < 2)
        throw InvalidStateError("density matrix must be square, dim >= 2");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw InvalidStateError("density matrix is not Hermitian");
    if (std::abs(m.trace().real() - 1.0) > 1e-12 ||
        std::abs(m.trace().imag()) > 1e-12)
        throw InvalidStateError("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m,
                                                       Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -positivity_tol) {
        std::ostringstream os;
        os << "density matrix has negative eigenvalue "
           << es.eigenvalues().minCoeff();
        throw InvalidStateError(os.str());
    }
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::diagonal(const Eigen::VectorXd& populations,
                                      double positivity_tol) {
    const int n = static_cast<int>(populations.size());
    if (n < 2) throw InvalidStateError("need dim >= 2");
    if (std::abs(populations.sum() - 1.0) > 1e-12)
        throw InvalidStateError("populations do not sum to 1");
    if (populations.minCoeff() < -positivity_tol)
        throw InvalidStateError("negative population");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = populations(i);
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    return diagonal(Eigen::VectorXd::Constant(dim, 1.0 / dim));
}

DensityMatrix DensityMatrix::pure(int dim, int k) {
    if (k < 0 || k >= dim) throw InvalidParameterError("basis index out of range");
    Eigen::VectorXd p = Eigen::VectorXd::Zero(dim);
    p(k) = 1.0;
    return diagonal(p);
}

DensityMatrix DensityMatrix::qubit_from_polarization(double p, double tol) {
    Eigen::VectorXd pop(2);
    pop << 0.5 - p, 0.5 + p;
    return diagonal(pop, tol);
}

Eigen::VectorXd DensityMatrix::populations() const {
    return m_.diagonal().real();
}

bool DensityMatrix::is_diagonal(double tol) const {
    const int n = dim();
    double off = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) off = std::max(off, std::abs(m_(i, j)));
    return off <= tol;
}

double DensityMatrix::max_distance(const DensityMatrix& other) const {
    if (other.dim() != dim())
        throw InvalidParameterError("dimension mismatch");
    return (m_ - other.m_).cwiseAbs().maxCoeff();
}

DensityMatrix spin_flip(const DensityMatrix& rho) {
    const int n = rho.dim();
    Eigen::MatrixXcd f(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            f(i, j) = rho.matrix()(n - 1 - i, n - 1 - j);
    return DensityMatrix::from_matrix(f);
}

DensityMatrix thermal_state(double beta, const ScaledHamiltonian& H) {
    if (!std::isfinite(beta) || beta < 0.0)
        throw InvalidParameterError("beta must be finite and >= 0");
    // Shifted softmax keeps exponents non-positive.
    const auto& lam = H.spectrum().eigenvalues();
    const int n = H.dim();
    const double emin = beta * H.omega() * lam.front();  // smallest exponent arg
    Eigen::VectorXd p(n);
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        p(i) = std::exp(-(beta * H.omega() * lam[i] - emin));
        z += p(i);
    }
    p /= z;
    return DensityMatrix::diagonal(p);
}

namespace {

double entropy_of_probs(const Eigen::VectorXd& p) {
    double s = 0.0;
    for (int i = 0; i < p.size(); ++i) {
        if (p(i) < -1e-9)
            throw InvalidStateError("state has eigenvalue below -1e-9");
        if (p(i) > 0.0) s -= p(i) * std::log(p(i));
    }
    return s;
}

}  // namespace

double entropy(const DensityMatrix& rho) {
    if (rho.is_diagonal(1e-12)) return entropy_of_probs(rho.populations());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix(),
                                                       Eigen::EigenvaluesOnly);
    return entropy_of_probs(es.eigenvalues());
}

double energy(const DensityMatrix& rho, const ScaledHamiltonian& H) {
    if (rho.dim() != H.dim())
        throw InvalidParameterError("state/Hamiltonian dimension mismatch");
    return (rho.matrix() * H.matrix()).trace().real();
}

double polarization_of(const DensityMatrix& rho,
                       const PolarizationSpectrum& spectrum) {
    if (rho.dim() != spectrum.dim())
        throw InvalidParameterError("state/spectrum dimension mismatch");
    const Eigen::VectorXd p = rho.populations();
    double v = 0.0;
    for (int n = 0; n < spectrum.dim(); ++n)
        v += spectrum.eigenvalues()[n] * p(n);
    return v;
}

EffectiveBeta effective_beta(double polarization, double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw InvalidParameterError("omega must be positive");
    if (!(polarization > -0.5 && polarization < 0.5))
        throw InvalidParameterError(
            "polarization must lie strictly inside (-1/2, 1/2)");
    const double value = (2.0 / omega) * std::atanh(-2.0 * polarization);
    return {value, polarization > 0.0};
}

double entropy_highT(double beta, double omega,
                     const PolarizationSpectrum& spectrum) {
    const double n = spectrum.dim();
    return std::log(n) - beta * beta * omega * omega * spectrum.chi() / n;
}

double qubit_entropy(double x) {
    const double u = std::abs(x) / 2.0;
    // ln(2 cosh u) = u + log1p(e^{-2u}), safe for large u.
    return u + std::log1p(std::exp(-2.0 * u)) - u * std::tanh(u);
}

double qubit_polarization(double x) { return -0.5 * std::tanh(x / 2.0); }

double qubit_energy(double beta, double omega) {
    return omega * qubit_polarization(beta * omega);
}

double qubit_excited_population(double x) {
    // 1/(1+e^x) without overflow for large |x|.
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

}  // namespace qie
