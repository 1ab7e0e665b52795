#include "qscreen/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qscreen {

namespace {

const double kSqrt2 = std::sqrt(2.0);

std::string pq(int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }
std::string kstr(int k) { return "k=" + std::to_string(k); }

IdentityReport make(std::string name, std::string params, double lhs, double rhs, double tol) {
  IdentityReport r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = std::abs(lhs - rhs);
  r.passed = r.residual < tol;
  return r;
}

void require_strength(const DesignQuantities& q, int at_least, const char* what) {
  if (q.strength < at_least) {
    throw PreconditionError(std::string(what) + " requires strength >= " + std::to_string(at_least) +
                            ", design has strength " + std::to_string(q.strength));
  }
}

int ceil_half(int k) { return (k + 1) / 2; }

}  // namespace

DesignQuantities DesignQuantities::compute(const Design& design) {
  require_three_levels(design.level_counts(), "identity checks");
  DesignQuantities q;
  q.factors = design.factors();
  q.strength = qscreen::strength(design);
  q.max_degree = design.max_degree();
  q.mirror_symmetric = is_mirror_symmetric(design);
  const auto coeffs = indicator_coefficients(design);
  q.beta = beta_pattern(coeffs);
  q.beta_split = qscreen::beta_split(coeffs);
  q.xi = xi_grid(coeffs);
  q.lambda = contamination_pattern(design);
  q.lambda_split = qscreen::lambda_split(design);
  q.mean = mean_contamination(design);
  return q;
}

IdentityReport check_split_contamination(const DesignQuantities& q, int p, int q2, double tol) {
  require_strength(q, 2, "split_contamination");
  if (p < 0 || q2 < 0 || p + 2 * q2 < 2) throw PreconditionError("split_contamination requires p, q >= 0 and p + 2q >= 2");
  const auto& b = q.beta_split;
  const double m = static_cast<double>(q.factors);
  const double rhs = (p + 1) * b(p + 1, q2) + (p + 1) / 2.0 * b(p + 1, q2 - 1) + (q2 + 1) / 2.0 * b(p - 1, q2 + 1) +
                     (m - p - q2 + 1) * b(p - 1, q2) + kSqrt2 * q.xi(p - 1, q2);
  return make("split_contamination", pq(p, q2), q.lambda_split(p, q2), rhs, tol);
}

IdentityReport check_contamination_relation(const DesignQuantities& q, int k, double tol) {
  require_strength(q, 2, "contamination_relation");
  if (k < 2 || k > q.max_degree) throw PreconditionError("contamination_relation requires 2 <= k <= m'");
  const int c = ceil_half(k);
  const double m = static_cast<double>(q.factors);
  double beta_part = 0.0, xi_part = 0.0;
  for (int j = 0; j <= c - 1; ++j) {
    beta_part += (c - j) * q.beta_split(k - 2 * j + 1, j);
    xi_part += q.xi(k - 2 * j - 1, j);
  }
  const double extra = 1.5 * beta_part + kSqrt2 * xi_part;
  const double rhs = (1.0 + k - 1.5 * c) * q.beta(k + 1) + (m - (k - 1) / 2.0) * q.beta(k - 1) + extra;
  auto r = make("contamination_relation", kstr(k), q.lambda(k), rhs, tol);
  r.note = "B=" + std::to_string(extra);
  return r;
}

double linear_relation_rho(int k, int strength, int max_degree) {
  if (k == max_degree) return 0.0;
  if (k <= strength) return k + 1.0;
  return 0.5 * (3.0 * strength + 2.0 - k);
}

IdentityReport check_linear_relation(const DesignQuantities& q, int k, double tol) {
  if (static_cast<int>(q.factors) != q.strength + 1) {
    throw PreconditionError("linear_relation requires m = strength + 1 (m=" + std::to_string(q.factors) +
                            ", strength=" + std::to_string(q.strength) + ")");
  }
  require_strength(q, 2, "linear_relation");
  if (k < 2 || k > q.max_degree) throw PreconditionError("linear_relation requires 2 <= k <= m'");
  const int r = q.strength;
  const double rho = linear_relation_rho(k, r, q.max_degree);
  const double rhs = rho * q.beta(k + 1) + (r + 1 - (k - 1) / 2.0) * q.beta(k - 1);
  auto rep = make("linear_relation", kstr(k), q.lambda(k), rhs, tol);
  rep.note = "rho=" + std::to_string(rho);
  return rep;
}

std::vector<IdentityReport> check_mirror_even_contamination(const DesignQuantities& q, double tol) {
  double even_max = 0.0;
  for (int k = 2; k <= q.max_degree; k += 2) even_max = std::max(even_max, std::abs(q.lambda(k)));
  const bool even_zero = even_max < tol;

  IdentityReport fwd;
  fwd.name = "mirror_even_lambda_forward";
  fwd.params = q.mirror_symmetric ? "mirror-symmetric" : "not mirror-symmetric";
  fwd.lhs = even_max;
  fwd.rhs = 0.0;
  fwd.residual = q.mirror_symmetric ? even_max : 0.0;
  fwd.passed = fwd.residual < tol;
  if (!q.mirror_symmetric) fwd.note = "vacuous";

  IdentityReport conv;
  conv.name = "mirror_even_lambda_converse";
  conv.params = even_zero ? "even-order lambda zero" : "even-order lambda nonzero";
  conv.lhs = even_max;
  conv.rhs = 0.0;
  if (even_zero && !q.mirror_symmetric) {
    conv.residual = std::numeric_limits<double>::infinity();
    conv.note = "COUNTEREXAMPLE: even-order lambda vanish but design is not mirror-symmetric";
  } else {
    conv.residual = 0.0;
    if (!even_zero) conv.note = "vacuous";
  }
  conv.passed = conv.residual < tol;
  return {fwd, conv};
}

std::vector<IdentityReport> check_decompositions(const DesignQuantities& q, double tol) {
  std::vector<IdentityReport> out;
  for (int k = 1; k <= q.max_degree; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k / 2; ++j) s += q.beta_split(k - 2 * j, j);
    out.push_back(make("beta_decomposition", kstr(k), q.beta(k), s, tol));
  }
  for (int k = 2; k <= q.max_degree; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k / 2; ++j) s += q.lambda_split(k - 2 * j, j);
    out.push_back(make("lambda_decomposition", kstr(k), q.lambda(k), s, tol));
  }
  return out;
}

std::vector<IdentityReport> check_low_order_truncation(const DesignQuantities& q, double tol) {
  require_strength(q, 2, "low_order_truncation");
  const int r = q.strength;
  std::vector<IdentityReport> out;
  for (int k = 2; k <= std::min(r, q.max_degree); ++k) {
    const double rhs = k < r ? 0.0 : (r + 1) * q.beta(r + 1);
    out.push_back(make("low_order_truncation", kstr(k), q.lambda(k), rhs, tol));
  }
  return out;
}

std::vector<IdentityReport> check_low_order_splits(const DesignQuantities& q, double tol) {
  std::vector<IdentityReport> out;
  for (int s = 1; s <= q.strength; ++s) {
    for (int i = 0; i <= s; ++i) {
      const int j = s - i;
      out.push_back(make("low_order_beta_split", pq(i, j), q.beta_split(i, j), 0.0, tol));
      out.push_back(make("low_order_xi", pq(i, j), q.xi(i, j), 0.0, tol));
    }
  }
  return out;
}

std::vector<IdentityReport> check_mirror_split(const DesignQuantities& q, double tol) {
  std::vector<IdentityReport> out;
  if (!q.mirror_symmetric) return out;
  const int m = static_cast<int>(q.factors);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; i + j <= m; ++j) {
      if ((i + 2 * j) % 2 == 1) out.push_back(make("mirror_beta_split", pq(i, j), q.beta_split(i, j), 0.0, tol));
    }
  return out;
}

std::vector<IdentityReport> check_mean_contamination(const DesignQuantities& q, double tol) {
  std::vector<IdentityReport> out;
  for (int k = 1; k <= q.max_degree; ++k) out.push_back(make("mean_contamination", kstr(k), q.mean(k), q.beta(k), tol));
  return out;
}

// ---------------------------------------------------------------------------

bool VerifyResult::all_passed() const {
  return std::all_of(reports.begin(), reports.end(), [](const IdentityReport& r) { return r.passed; });
}

namespace {

IdentityReport precondition_failure(std::string name, const std::string& reason) {
  IdentityReport r;
  r.name = std::move(name);
  r.params = "precondition";
  r.residual = std::numeric_limits<double>::infinity();
  r.passed = false;
  r.note = reason;
  return r;
}

template <typename Fn>
void run(VerifyResult& out, const char* name, Fn&& fn) {
  try {
    auto reps = fn();
    out.reports.insert(out.reports.end(), reps.begin(), reps.end());
  } catch (const PreconditionError& e) {
    out.reports.push_back(precondition_failure(name, e.what()));
  }
}

}  // namespace

VerifyResult verify_design(const Design& design, double tol) {
  VerifyResult out;
  DesignQuantities q;
  try {
    q = DesignQuantities::compute(design);
  } catch (const std::exception& e) {
    out.reports.push_back(precondition_failure("design", e.what()));
    return out;
  }

  const int m = static_cast<int>(q.factors);
  run(out, "split_contamination", [&] {
    std::vector<IdentityReport> v;
    for (int p = 0; p <= m + 1; ++p)
      for (int s = 0; p + s <= m + 1; ++s)
        if (p + 2 * s >= 2) v.push_back(check_split_contamination(q, p, s, tol));
    return v;
  });
  run(out, "contamination_relation", [&] {
    std::vector<IdentityReport> v;
    for (int k = 2; k <= q.max_degree; ++k) v.push_back(check_contamination_relation(q, k, tol));
    return v;
  });
  if (m == q.strength + 1 && q.strength >= 2) {
    run(out, "linear_relation", [&] {
      std::vector<IdentityReport> v;
      for (int k = 2; k <= q.max_degree; ++k) v.push_back(check_linear_relation(q, k, tol));
      return v;
    });
  } else {
    out.skipped.push_back("linear_relation (m != strength + 1)");
  }
  run(out, "decompositions", [&] { return check_decompositions(q, tol); });
  run(out, "low_order_splits", [&] {
    if (q.strength < 2) throw PreconditionError("low-order split checks need strength >= 2, design has " + std::to_string(q.strength));
    return check_low_order_splits(q, tol);
  });
  run(out, "low_order_truncation", [&] { return check_low_order_truncation(q, tol); });
  run(out, "mirror_even_lambda", [&] { return check_mirror_even_contamination(q, tol); });
  run(out, "mirror_split", [&] { return check_mirror_split(q, tol); });
  run(out, "mean_contamination", [&] { return check_mean_contamination(q, std::min(tol, 1e-12)); });
  return out;
}

}  // namespace qscreen
