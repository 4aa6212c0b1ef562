#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "pofrac/model.hpp"

namespace pofrac {

// Componentwise trajectory bounds 0 <= x_i <= M_i under which the Lipschitz
// constants are valid.
struct StateBox {
  double M1 = 0.0;
  double M2 = 0.0;
  double M3 = 0.0;

  void validate() const;
  bool contains(const Vec3& x, double below_zero_slack = 1e-12) const;
};

struct LipschitzOptions {
  // Two readings of K8 and K11 circulate: K8 with or without the gamma
  // factor on 2 M2, and K11 with c4^2 or c4^4 in the denominator. The
  // defaults are the forms the sampled certificate validates
  // (K8 = B M1/c1 + 2 gamma M2, K11 with c4^2); the variants stay available
  // for comparison.
  bool variant_k8 = false;
  bool variant_k11 = false;
};

struct LipschitzReport {
  std::array<double, 13> K{};  // K[0] is K1
  double L1 = 0.0, L2 = 0.0, L3 = 0.0, L = 0.0;
  LipschitzOptions options;

  double k(int index_1_based) const { return K[index_1_based - 1]; }
};

// All thirteen constants and their assembly
//   L1 = K1+K3+K5+K7+K11, L2 = K2+K4+K8+K9+K12, L3 = K6+K10+K13,
//   L  = max(L1, L2, L3).
// Throws singular_parameter naming the first constant whose denominator is
// zero while its coefficient is positive.
LipschitzReport lipschitz_constants(const ModelParams& p, const StateBox& box,
                                    const LipschitzOptions& options = {});

// Sampled certificate: max over n_samples random pairs (x, y) in the box of
// ||f(x)-f(y)||_1 / ||x-y||_1, with pairs closer than 1e-12 skipped.
// Deterministic for a fixed seed (per-pair seeding, independent of threading).
double empirical_lipschitz(const ModelParams& p, const StateBox& box,
                           int n_samples, std::uint64_t seed);

// Flat JSON document with K1..K13, L1..L3, L, the parameter set, the box and
// which corrections were applied; optionally the sampled certificate.
struct EmpiricalCertificate {
  int n_samples = 0;
  std::uint64_t seed = 0;
  double value = 0.0;
};
std::string lipschitz_report_json(const LipschitzReport& report,
                                  const ModelParams& p, const StateBox& box,
                                  const EmpiricalCertificate* empirical = nullptr);

}  // namespace pofrac
