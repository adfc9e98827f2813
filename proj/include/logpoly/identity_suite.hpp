#ifndef LOGPOLY_IDENTITY_SUITE_HPP
#define LOGPOLY_IDENTITY_SUITE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "logpoly/spec_io.hpp"

namespace logpoly {

struct IdentityResult {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  int cases = 0;
  int skipped = 0;
  bool pass = true;
  std::string worst_case;  ///< description of the case with the largest error
};

struct IdentitySuiteOptions {
  std::uint64_t seed = 7;
  int trials = 100;
  /// When set, the spec-dependent identities use this mapping; the operator
  /// algebra identities always use seeded random series.
  std::optional<MappingSpecFile> spec;
};

struct IdentitySuiteResult {
  std::vector<IdentityResult> identities;

  bool all_pass() const;
  const IdentityResult* worst_failure() const;
  nlohmann::json to_json() const;
};

/// Operator linearity and product rule, Laplacian commutation, the
/// distribution law for L^n (n = 1, 2, 3), polyharmonicity of log F, closed
/// versus direct Jacobian, the power-case Jacobian, the L^n ratio identity,
/// the starlike/convex indicator equalities, symbolic versus finite-difference
/// Wirtinger and tangential derivatives.
IdentitySuiteResult run_identity_suite(const IdentitySuiteOptions& opts);

/// |a - b| / max(1, |b|).
double unit_floor_relative_error(Complex a, Complex b);

}  // namespace logpoly

#endif  // LOGPOLY_IDENTITY_SUITE_HPP
