#include "pondera/entanglement.hpp"

#include <cmath>
#include <sstream>

#include "pondera/errors.hpp"

namespace pondera {

namespace {

void require_symmetric(const Block& A) {
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if (std::abs(A(0, 1) - A(1, 0)) > kStructureTolerance * scale) {
    std::ostringstream msg;
    msg << "diagonal block is not symmetric: A12 = " << A(0, 1) << ", A21 = " << A(1, 0);
    throw BlockStructureError(msg.str());
  }
}

}  // namespace

Block symplectic_unit() {
  Block j;
  j << 0.0, 1.0, -1.0, 0.0;
  return j;
}

Block reflection_matrix() {
  Block r;
  r << 1.0, 0.0, 0.0, -1.0;
  return r;
}

double simon_marker(const Block& A, const Block& C) {
  require_symmetric(A);
  const Block j = symplectic_unit();
  const double det_a = A.determinant();
  const double det_c = C.determinant();
  const double overlap = (A * j * C * j * A * j * C.transpose() * j).trace();
  const double gap = 0.25 - std::abs(det_c);
  return 1.0 + det_a * det_a + gap * gap - overlap - 0.5 * det_a;
}

double product_marker(const Block& A, const Block& C) {
  require_symmetric(A);
  return 4.0 * (A(0, 0) + C(0, 0)) * (A(1, 1) - C(1, 1));
}

double sum_marker(const Block& A, const Block& C) {
  require_symmetric(A);
  return A.trace() + (C * reflection_matrix()).trace();
}

bool certifies_entanglement(double marker) {
  return marker < kEntanglementThreshold - kVerdictMargin;
}

EntanglementReport evaluate_entanglement(const CovarianceMatrix& cov,
                                         CriterionSet tripartite_criteria) {
  if (cov.mode_count() < 2) {
    throw BlockStructureError("entanglement markers need at least two modes");
  }
  require_block_structure(cov.V);
  EntanglementReport r;
  r.omega = cov.omega;
  r.e_simon = simon_marker(cov.A, cov.C);
  r.e_product = product_marker(cov.A, cov.C);
  r.e_sum = sum_marker(cov.A, cov.C);
  r.entangled_simon = certifies_entanglement(r.e_simon);
  r.entangled_product = certifies_entanglement(r.e_product);
  r.entangled_sum = certifies_entanglement(r.e_sum);
  if (cov.mode_count() == 3) {
    r.tripartite_fully_inseparable = tripartite_verdict(cov.V, tripartite_criteria);
  }
  return r;
}

bool tripartite_verdict(const RMatrix& V3, CriterionSet criteria) {
  if (V3.rows() != 6 || V3.cols() != 6) {
    throw BlockStructureError("tripartite verdict expects a 6 x 6 covariance");
  }
  require_block_structure(V3);
  const Block a = V3.block<2, 2>(0, 0);
  const Block c = V3.block<2, 2>(0, 2);
  return (criteria.simon && certifies_entanglement(simon_marker(a, c))) ||
         (criteria.product && certifies_entanglement(product_marker(a, c))) ||
         (criteria.sum && certifies_entanglement(sum_marker(a, c)));
}

}  // namespace pondera
