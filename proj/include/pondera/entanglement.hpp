#pragma once

#include <optional>

#include "pondera/spectra.hpp"

namespace pondera {

/// Each marker signals entanglement below this value; the vacuum and any
/// uncorrelated product of vacua sit exactly on it.
inline constexpr double kEntanglementThreshold = 1.0;
/// A marker certifies entanglement only when it is below the threshold by
/// more than this margin. Channels that sit analytically on the threshold
/// (e.g. zero detuning for the product and sum markers) otherwise flip
/// verdicts on rounding noise.
inline constexpr double kVerdictMargin = 1e-6;

struct CriterionSet {
  bool simon = false;
  bool product = false;
  bool sum = false;

  static CriterionSet all() { return {true, true, true}; }
  static CriterionSet sum_only() { return {false, false, true}; }
  bool any() const { return simon || product || sum; }
};

/// J = [[0, 1], [-1, 0]].
Block symplectic_unit();
/// R = diag(1, -1).
Block reflection_matrix();

/// Simon marker for a two-mode state with equal diagonal blocks A.
double simon_marker(const Block& A, const Block& C);
/// 4 (A11 + C11)(A22 - C22).
double product_marker(const Block& A, const Block& C);
/// tr A + tr(C R).
double sum_marker(const Block& A, const Block& C);

bool certifies_entanglement(double marker);

struct EntanglementReport {
  double omega = 0.0;
  double e_simon = 0.0;
  double e_product = 0.0;
  double e_sum = 0.0;
  bool entangled_simon = false;
  bool entangled_product = false;
  bool entangled_sum = false;
  std::optional<bool> tripartite_fully_inseparable;  // three-mode channels only
};

/// Markers for the (1, 2) mode pair; the tripartite verdict is filled in for
/// N = 3 using `tripartite_criteria`.
EntanglementReport evaluate_entanglement(
    const CovarianceMatrix& cov,
    CriterionSet tripartite_criteria = CriterionSet::sum_only());

/// Full inseparability of a mode-symmetric three-mode state: one pair
/// certified by any of the selected criteria implies every pair, and so
/// every grouping, is entangled.
bool tripartite_verdict(const RMatrix& V3,
                        CriterionSet criteria = CriterionSet::sum_only());

}  // namespace pondera
