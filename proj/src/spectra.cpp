#include "pondera/spectra.hpp"

#include <cmath>
#include <sstream>

#include "pondera/constants.hpp"
#include "pondera/errors.hpp"

namespace pondera {

namespace {

using namespace std::complex_literals;

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
double max_abs(const RMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

FrequencyResponse build_drift(double omega, const PhysicalParams& params,
                              const SteadyState& steady) {
  params.validate();
  const int n = params.mode_count;
  const int dim = 2 * n;
  const double gc = params.gamma_c;
  const double delta = params.detuning;

  FrequencyResponse fr;
  fr.omega = omega;
  fr.chi = mirror_susceptibility(omega, params);

  const double g = steady.coupling;
  // Radiation-pressure feedback of every amplitude quadrature onto every
  // phase quadrature through the mirror.
  const std::complex<double> feedback =
      2.0 * constants::hbar * g * g * fr.chi * steady.alpha_sq();

  fr.drift = CMatrix::Zero(dim, dim);
  fr.force_coupling = CVector::Zero(dim);
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      fr.drift(2 * row + 1, 2 * col) = feedback;
    }
    fr.drift(2 * row, 2 * row) = -gc / 2.0;
    fr.drift(2 * row, 2 * row + 1) = -delta * gc;
    fr.drift(2 * row + 1, 2 * row) += delta * gc;
    fr.drift(2 * row + 1, 2 * row + 1) = -gc / 2.0;
    fr.force_coupling(2 * row + 1) = -std::sqrt(2.0) * g * fr.chi * steady.alpha;
  }

  const CMatrix identity = CMatrix::Identity(dim, dim);
  fr.propagator = 1i * omega * identity - fr.drift;
  fr.propagator_inv = fr.propagator.partialPivLu().inverse();

  // 1-norm condition number, exact for the dense inverse we already hold.
  const double norm = fr.propagator.cwiseAbs().colwise().sum().maxCoeff();
  const double norm_inv = fr.propagator_inv.cwiseAbs().colwise().sum().maxCoeff();
  const double condition = norm * norm_inv;
  if (!std::isfinite(condition) || condition > kConditionBound) {
    throw DegenerateFrequency(omega, condition);
  }

  fr.reflection = gc * fr.propagator_inv - identity;
  return fr;
}

CMatrix input_noise_correlation(int mode_count) {
  const int dim = 2 * mode_count;
  CMatrix n = CMatrix::Zero(dim, dim);
  for (int k = 0; k < mode_count; ++k) {
    n(2 * k, 2 * k) = 0.5;
    n(2 * k + 1, 2 * k + 1) = 0.5;
    n(2 * k, 2 * k + 1) = 0.5i;
    n(2 * k + 1, 2 * k) = -0.5i;
  }
  return n;
}

RMatrix symplectic_form(int mode_count) {
  const int dim = 2 * mode_count;
  RMatrix omega = RMatrix::Zero(dim, dim);
  for (int k = 0; k < mode_count; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

CMatrix unsymmetrized_output_correlations(const FrequencyResponse& at,
                                          const FrequencyResponse& mirrored,
                                          const PhysicalParams& params) {
  const int n = static_cast<int>(at.drift.rows() / 2);
  const CMatrix vacuum = at.reflection * input_noise_correlation(n) *
                         mirrored.reflection.transpose();
  // Input noises and the Brownian force are independent: no cross terms.
  const CVector w_plus = at.propagator_inv * at.force_coupling;
  const CVector w_minus = mirrored.propagator_inv * mirrored.force_coupling;
  const CMatrix thermal = params.gamma_c * force_noise_correlation(at.omega, params) *
                          (w_plus * w_minus.transpose());
  return vacuum + thermal;
}

double commutator_scale(const CMatrix& u_plus, const CMatrix& u_minus) {
  const int dim = static_cast<int>(u_plus.rows());
  const int n = dim / 2;
  const CMatrix commutator = (u_plus - u_minus.transpose()) / 1i;
  const double scale = std::max({1.0, max_abs(u_plus), max_abs(u_minus)});
  const double tol = kStructureTolerance * scale;

  const double c = commutator(0, 1).real();
  if (!(c > 0.0)) {
    std::ostringstream msg;
    msg << "commutator scale c(omega) = " << c << " is not positive";
    throw ConsistencyError(msg.str());
  }
  for (int k = 1; k < n; ++k) {
    const double ck = commutator(2 * k, 2 * k + 1).real();
    if (std::abs(ck - c) > tol) {
      std::ostringstream msg;
      msg << "commutator scale differs between modes 1 and " << k + 1 << ": " << c
          << " vs " << ck;
      throw ConsistencyError(msg.str());
    }
  }
  const CMatrix residual = commutator - c * symplectic_form(n).cast<std::complex<double>>();
  const double worst = max_abs(residual);
  if (worst > tol) {
    std::ostringstream msg;
    msg << "output commutators deviate from the canonical structure by " << worst
        << " (tolerance " << tol << ")";
    throw ConsistencyError(msg.str());
  }
  return c;
}

double commutator_scale(double omega, const PhysicalParams& params,
                        const SteadyState& steady) {
  const auto plus = build_drift(omega, params, steady);
  const auto minus = build_drift(-omega, params, steady);
  return commutator_scale(unsymmetrized_output_correlations(plus, minus, params),
                          unsymmetrized_output_correlations(minus, plus, params));
}

CovarianceMatrix covariance(double omega, const PhysicalParams& params,
                            const SteadyState& steady) {
  const auto plus = build_drift(omega, params, steady);
  const auto minus = build_drift(-omega, params, steady);
  const CMatrix u_plus = unsymmetrized_output_correlations(plus, minus, params);
  const CMatrix u_minus = unsymmetrized_output_correlations(minus, plus, params);

  CovarianceMatrix cov;
  cov.omega = omega;
  cov.c_omega = commutator_scale(u_plus, u_minus);

  // Symmetrize over +-omega first, then over the matrix transpose.
  const CMatrix g = 0.5 * (u_plus + u_minus);
  const CMatrix v = (g + g.transpose()) / (2.0 * cov.c_omega);

  const double residue = v.imag().cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, max_abs(v));
  if (residue > 1e-10 * scale) {
    std::ostringstream msg;
    msg << "covariance has imaginary residue " << residue << " at omega = " << omega;
    throw ConsistencyError(msg.str());
  }
  cov.V = v.real();

  const double deviation = block_structure_deviation(cov.V);
  if (deviation > kStructureTolerance) {
    std::ostringstream msg;
    msg << "covariance breaks symmetric-driving block structure (relative deviation "
        << deviation << ") at omega = " << omega;
    throw ConsistencyError(msg.str());
  }
  cov.A = cov.block(0, 0);
  if (params.mode_count > 1) cov.C = cov.block(0, 1);
  return cov;
}

double block_structure_deviation(const RMatrix& V) {
  const int n = static_cast<int>(V.rows() / 2);
  double worst = max_abs(RMatrix(V - V.transpose()));
  if (n > 1) {
    const Block a = V.block<2, 2>(0, 0);
    const Block c = V.block<2, 2>(0, 2);
    for (int i = 0; i < n; ++i) {
      worst = std::max(worst, (V.block<2, 2>(2 * i, 2 * i) - a).cwiseAbs().maxCoeff());
      for (int j = i + 1; j < n; ++j) {
        worst = std::max(worst, (V.block<2, 2>(2 * i, 2 * j) - c).cwiseAbs().maxCoeff());
      }
    }
  }
  return worst / std::max(1.0, max_abs(V));
}

void require_block_structure(const RMatrix& V) {
  if (V.rows() != V.cols() || V.rows() % 2 != 0 || V.rows() == 0) {
    throw BlockStructureError("covariance must be a square 2N x 2N matrix");
  }
  const double deviation = block_structure_deviation(V);
  if (deviation > kStructureTolerance) {
    std::ostringstream msg;
    msg << "covariance blocks are not mode-symmetric (relative deviation "
        << deviation << ")";
    throw BlockStructureError(msg.str());
  }
}

double uncertainty_min_eigenvalue(const RMatrix& V) {
  // Extended precision: with |V| ~ 1e7 the double solver's absolute error on
  // the near-zero eigenvalue is already ~1e-9.
  using Wide = std::complex<long double>;
  using WideMatrix = Eigen::Matrix<Wide, Eigen::Dynamic, Eigen::Dynamic>;
  const int n = static_cast<int>(V.rows() / 2);
  WideMatrix h = V.cast<long double>().cast<Wide>();
  for (int k = 0; k < n; ++k) {
    h(2 * k, 2 * k + 1) += Wide(0.0L, 0.5L);
    h(2 * k + 1, 2 * k) -= Wide(0.0L, 0.5L);
  }
  Eigen::SelfAdjointEigenSolver<WideMatrix> solver(h, Eigen::EigenvaluesOnly);
  return static_cast<double>(solver.eigenvalues().minCoeff());
}

DegenerateFrequency::DegenerateFrequency(double omega, double condition_number)
    : Error([&] {
        std::ostringstream msg;
        msg << "L(omega) is singular at omega = " << omega << " (condition number "
            << condition_number << ")";
        return msg.str();
      }()),
      omega_(omega),
      condition_number_(condition_number) {}

}  // namespace pondera
