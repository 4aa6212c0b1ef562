#include "pofrac/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "pofrac/errors.hpp"
#include "pofrac/version.hpp"

namespace pofrac {

namespace {

double ratio_or_zero(double coeff, double num, double den, const char* kname) {
  if (coeff == 0.0) return 0.0;
  if (den == 0.0)
    throw singular_parameter(std::string("lipschitz_constants: ") + kname +
                             " has a zero denominator");
  return coeff * num / den;
}

// splitmix64; gives independent, platform-stable streams per sample index.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

void StateBox::validate() const {
  if (!(M1 > 0.0) || !(M2 > 0.0) || !(M3 > 0.0))
    throw std::invalid_argument("StateBox: all bounds must be positive");
}

bool StateBox::contains(const Vec3& x, double below_zero_slack) const {
  const double lo = -below_zero_slack;
  return x[0] >= lo && x[0] <= M1 && x[1] >= lo && x[1] <= M2 && x[2] >= lo &&
         x[2] <= M3;
}

LipschitzReport lipschitz_constants(const ModelParams& p, const StateBox& box,
                                    const LipschitzOptions& options) {
  p.validate();
  box.validate();
  const double M1 = box.M1, M2 = box.M2, M3 = box.M3;
  const double xb = p.xi * p.beta_pred;

  LipschitzReport r;
  r.options = options;
  r.K[0] = ratio_or_zero(p.H, M2, p.c0, "K1");
  r.K[1] = ratio_or_zero(p.H, M1 + p.c0, p.c0, "K2");
  r.K[2] = ratio_or_zero(p.delta, M2, p.c2, "K3");
  r.K[3] = ratio_or_zero(p.delta, M1 * (M1 + p.c2), p.c2 * p.c2, "K4");
  r.K[4] = ratio_or_zero(p.v, M3, p.c3, "K5");
  r.K[5] = ratio_or_zero(p.v, M1 * (M1 + p.c3), p.c3 * p.c3, "K6");
  r.K[6] = ratio_or_zero(p.B, M2, p.c1, "K7");
  r.K[7] = ratio_or_zero(p.B, M1, p.c1, "K8") +
           (options.variant_k8 ? 2.0 * M2 : 2.0 * p.gamma * M2);
  r.K[8] = ratio_or_zero(p.beta_pred, M3, p.h, "K9");
  r.K[9] = ratio_or_zero(p.beta_pred, M2, p.h, "K10");
  {
    const double c4p = options.variant_k11 ? p.c4 * p.c4 * p.c4 * p.c4
                                           : p.c4 * p.c4;
    r.K[10] = ratio_or_zero(xb, 2.0 * M1 * M2 * M3, p.h * c4p, "K11");
  }
  r.K[11] = ratio_or_zero(xb, M1 * M1, p.h * p.c4 * p.c4, "K12");
  r.K[12] = ratio_or_zero(xb, M1 * M1 * M2, p.h * p.c4 * p.c4, "K13");

  r.L1 = r.K[0] + r.K[2] + r.K[4] + r.K[6] + r.K[10];
  r.L2 = r.K[1] + r.K[3] + r.K[7] + r.K[8] + r.K[11];
  r.L3 = r.K[5] + r.K[9] + r.K[12];
  r.L = std::max({r.L1, r.L2, r.L3});
  return r;
}

double empirical_lipschitz(const ModelParams& p, const StateBox& box,
                           int n_samples, std::uint64_t seed) {
  if (n_samples < 2)
    throw std::invalid_argument("empirical_lipschitz: need at least 2 samples");
  p.validate();
  box.validate();
  const double M[3] = {box.M1, box.M2, box.M3};
  double best = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    std::uint64_t s = mix(seed ^ mix(static_cast<std::uint64_t>(i) + 1));
    Vec3 x, y;
    for (int c = 0; c < 3; ++c) {
      x[c] = M[c] * unit_double(s = mix(s));
      y[c] = M[c] * unit_double(s = mix(s));
    }
    const Vec3 dxy{x[0] - y[0], x[1] - y[1], x[2] - y[2]};
    const double dist = one_norm(dxy);
    if (dist < 1e-12) continue;
    const Vec3 fx = rhs_nonlinear(p, x);
    const Vec3 fy = rhs_nonlinear(p, y);
    const Vec3 df{fx[0] - fy[0], fx[1] - fy[1], fx[2] - fy[2]};
    best = std::max(best, one_norm(df) / dist);
  }
  return best;
}

std::string lipschitz_report_json(const LipschitzReport& report,
                                  const ModelParams& p, const StateBox& box,
                                  const EmpiricalCertificate* empirical) {
  nlohmann::json doc;
  doc["version"] = std::string(version_string());
  nlohmann::json ks;
  for (int i = 0; i < 13; ++i) ks["K" + std::to_string(i + 1)] = report.K[i];
  doc["constants"] = ks;
  doc["L1"] = report.L1;
  doc["L2"] = report.L2;
  doc["L3"] = report.L3;
  doc["L"] = report.L;
  doc["corrections"] = {
      {"K8_includes_gamma", !report.options.variant_k8},
      {"K11_uses_c4_squared", !report.options.variant_k11},
  };
  doc["box"] = {box.M1, box.M2, box.M3};
  doc["params"] = nlohmann::json{
      {"c0", p.c0}, {"c1", p.c1}, {"c2", p.c2}, {"c3", p.c3},
      {"c4", p.c4}, {"h", p.h},   {"H", p.H},   {"delta", p.delta},
      {"v", p.v},   {"B", p.B},   {"beta_pred", p.beta_pred},
      {"xi", p.xi}, {"m", p.m},   {"gamma", p.gamma},
      {"sigma", p.sigma}, {"mu", p.mu}};
  if (empirical) {
    doc["empirical"] = {{"n_samples", empirical->n_samples},
                        {"seed", empirical->seed},
                        {"value", empirical->value},
                        {"margin", report.L - empirical->value}};
  }
  return doc.dump(2);
}

}  // namespace pofrac
