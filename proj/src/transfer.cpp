#include "pondera/transfer.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pondera/constants.hpp"
#include "pondera/entanglement.hpp"
#include "pondera/errors.hpp"

namespace pondera {

void GaussianInput::validate() const {
  if (!D.allFinite() || std::abs(D(0, 1) - D(1, 0)) > 1e-12 * D.cwiseAbs().maxCoeff()) {
    throw std::invalid_argument("input correlation matrix D must be finite and symmetric");
  }
  if (!(D(0, 0) > 0.0) || !(D.determinant() > 0.0)) {
    throw std::invalid_argument("input correlation matrix D must be positive definite");
  }
}

double teleport_fidelity(const Block& A, const Block& C, const Block& D) {
  const Block r = reflection_matrix();
  const Block m = 2.0 * D + r.transpose() * A * r + r.transpose() * C +
                  C.transpose() * r + A;
  const double det = m.determinant();
  if (!std::isfinite(det) || !(m(0, 0) > 0.0) || !(det > 0.0)) {
    std::ostringstream msg;
    msg << "fidelity argument is not positive definite (det = " << det << ")";
    throw UnphysicalChannel(msg.str());
  }
  return 1.0 / std::sqrt(det);
}

double teleclone_fidelity(const RMatrix& V3, const Block& D) {
  if (V3.rows() != 6 || V3.cols() != 6) {
    throw BlockStructureError("telecloning expects a 6 x 6 covariance");
  }
  require_block_structure(V3);
  return teleport_fidelity(V3.block<2, 2>(0, 0), V3.block<2, 2>(0, 2), D);
}

double fidelity_quadrature_oracle(const Block& A, const Block& C, const Block& D,
                                  const QuadratureSpec& spec) {
  Eigen::Matrix4d v;
  v << A, C, C.transpose(), A;
  // lambda -> u = (l1, -l2, l1, l2)
  Eigen::Matrix<double, 4, 2> lift;
  lift << 1, 0, 0, -1, 1, 0, 0, 1;

  const auto integrand = [&](const Eigen::Vector2d& lambda) {
    const Eigen::Vector4d u = lift * lambda;
    return std::exp(-0.5 * lambda.dot(D * lambda) - 0.25 * u.dot(v * u));
  };

  // Hessian of minus the log-integrand fixes the grid orientation and widths.
  const Block hessian = D + 0.5 * lift.transpose() * v * lift;
  Eigen::SelfAdjointEigenSolver<Block> axes(0.5 * (hessian + hessian.transpose()));
  if (!(axes.eigenvalues().minCoeff() > 0.0) || !axes.eigenvalues().allFinite()) {
    throw QuadratureError("fidelity integrand is not a normalizable Gaussian");
  }
  const Eigen::Vector2d sigma = axes.eigenvalues().cwiseSqrt().cwiseInverse();
  const Block rotation = axes.eigenvectors();

  const auto integrate = [&](double radius_sigmas) {
    const int half = static_cast<int>(std::ceil(radius_sigmas * spec.points_per_sigma));
    const Eigen::Vector2d step = sigma / spec.points_per_sigma;
    double total = 0.0;
    for (int i = -half; i <= half; ++i) {
      for (int j = -half; j <= half; ++j) {
        const Eigen::Vector2d t(i * step(0), j * step(1));
        total += integrand(rotation * t);
      }
    }
    return total * step(0) * step(1) / (4.0 * constants::pi);
  };

  const double f = integrate(spec.radius_sigmas);
  const double f_wide = integrate(2.0 * spec.radius_sigmas);
  if (!std::isfinite(f) || std::abs(f_wide - f) > spec.convergence_tolerance) {
    std::ostringstream msg;
    msg << "fidelity quadrature did not converge: " << f << " vs " << f_wide
        << " at doubled radius";
    throw QuadratureError(msg.str());
  }
  return f;
}

TransferReport evaluate_transfer(const CovarianceMatrix& cov,
                                 const GaussianInput& input, bool teleport,
                                 bool teleclone) {
  TransferReport r;
  r.omega = cov.omega;
  if (teleport) {
    if (cov.mode_count() < 2) {
      throw BlockStructureError("teleportation needs a channel of at least two modes");
    }
    require_block_structure(cov.V);
    r.f_tele = teleport_fidelity(cov.A, cov.C, input.D);
    r.beats_classical_tele = *r.f_tele > kClassicalBound;
  }
  if (teleclone) {
    r.f_clone = teleclone_fidelity(cov.V, input.D);
    r.beats_classical_clone = *r.f_clone > kClassicalBound;
    r.within_cloning_bound = *r.f_clone <= kCloningBound + 1e-9;
  }
  return r;
}

}  // namespace pondera
