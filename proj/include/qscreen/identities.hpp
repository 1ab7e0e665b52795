#pragma once

// Numeric checks of the algebraic links between beta-wordlength patterns and
// contamination patterns for 3-level orthogonal arrays. Each check evaluates
// both sides independently from the design and reports the residual.

#include <stdexcept>
#include <string>
#include <vector>

#include "qscreen/contamination.hpp"
#include "qscreen/design.hpp"
#include "qscreen/indicator.hpp"

namespace qscreen {

inline constexpr double kIdentityTolerance = 1e-9;

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct IdentityReport {
  std::string name;
  std::string params;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  bool passed = false;
  std::string note;
};

/// Everything the checks read, computed once per design.
struct DesignQuantities {
  std::size_t factors = 0;
  int strength = 0;
  int max_degree = 0;
  bool mirror_symmetric = false;
  BetaPattern beta;
  SplitGrid beta_split;
  SplitGrid xi;
  ContaminationPattern lambda;
  SplitGrid lambda_split;
  ContaminationPattern mean;

  /// Requires a 3-level design with nonsingular Z_1^T Z_1.
  static DesignQuantities compute(const Design& design);
};

/// lambda_{p,q} = (p+1) beta_{p+1,q} + (p+1)/2 beta_{p+1,q-1} + (q+1)/2 beta_{p-1,q+1}
///              + (m-p-q+1) beta_{p-1,q} + sqrt(2) xi_{p-1,q}
/// Requires strength >= 2 and p + 2q >= 2.
IdentityReport check_split_contamination(const DesignQuantities& q, int p, int q2, double tol = kIdentityTolerance);
/// Full contamination/beta relation at order k (2 <= k <= m'), strength >= 2.
IdentityReport check_contamination_relation(const DesignQuantities& q, int k, double tol = kIdentityTolerance);
/// Linear relation for m = strength + 1, 2 <= k <= m'.
IdentityReport check_linear_relation(const DesignQuantities& q, int k, double tol = kIdentityTolerance);
/// rho of the m = strength + 1 relation.
double linear_relation_rho(int k, int strength, int max_degree);

/// [forward: mirror-symmetric => even-order lambda vanish,
///  converse: even-order lambda vanish => mirror-symmetric].
/// A converse failure is flagged in the note as a counterexample.
std::vector<IdentityReport> check_mirror_even_contamination(const DesignQuantities& q, double tol = kIdentityTolerance);
/// beta_k = sum_j beta_{k-2j,j} (k = 1..m') and lambda_k = sum_j lambda_{k-2j,j} (k = 2..m').
std::vector<IdentityReport> check_decompositions(const DesignQuantities& q, double tol = kIdentityTolerance);
/// Truncation at order r: (lambda_2..lambda_r) = (0, ..., 0, (r+1) beta_{r+1}). Requires strength >= 2.
std::vector<IdentityReport> check_low_order_truncation(const DesignQuantities& q, double tol = kIdentityTolerance);
/// beta_{i,j} = 0 and xi_{i,j} = 0 for 0 < i + j <= strength.
std::vector<IdentityReport> check_low_order_splits(const DesignQuantities& q, double tol = kIdentityTolerance);
/// Mirror-symmetric designs have beta_{i,j} = 0 for odd i + 2j. Empty otherwise.
std::vector<IdentityReport> check_mirror_split(const DesignQuantities& q, double tol = kIdentityTolerance);
/// General-mean contamination equals beta, k = 1..m'.
std::vector<IdentityReport> check_mean_contamination(const DesignQuantities& q, double tol = 1e-12);

struct VerifyResult {
  std::vector<IdentityReport> reports;
  std::vector<std::string> skipped;

  bool all_passed() const;
};

/// Runs every applicable check. Violated preconditions (not 3-level,
/// strength < 2, singular Z_1^T Z_1) become failed reports; checks that do
/// not apply to the design's shape (m != strength + 1) are listed as skipped.
VerifyResult verify_design(const Design& design, double tol = kIdentityTolerance);

}  // namespace qscreen
