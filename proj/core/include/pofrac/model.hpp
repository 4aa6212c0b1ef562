#pragma once

#include <array>
#include <string>

namespace pofrac {

using Vec3 = std::array<double, 3>;

// The sixteen model constants. The predation rate is spelled `beta_pred`
// because beta is also the conventional symbol for fractional orders.
struct ModelParams {
  double c0 = 0.0;  // half-saturation, oxygen production
  double c1 = 0.0;  // half-saturation, phytoplankton growth
  double c2 = 0.0;  // half-saturation, phytoplankton respiration
  double c3 = 0.0;  // half-saturation, zooplankton respiration
  double c4 = 0.0;  // half-saturation, zooplankton feeding efficiency
  double h = 0.0;   // half-saturation, zooplankton predation
  double H = 0.0;   // environmental oxygen-production factor
  double delta = 0.0;      // max phytoplankton respiration rate
  double v = 0.0;          // max zooplankton respiration rate
  double B = 0.0;          // max phytoplankton growth rate
  double beta_pred = 0.0;  // max predation rate
  double xi = 0.0;         // max feeding efficiency
  double m = 0.0;      // oxygen loss rate
  double gamma = 0.0;  // intraspecific competition intensity
  double sigma = 0.0;  // phytoplankton mortality rate
  double mu = 0.0;     // zooplankton mortality rate

  // All fields nonnegative; each half-saturation constant that appears in a
  // denominator must be positive whenever its rate coefficient is positive.
  // Throws singular_parameter / std::invalid_argument.
  void validate() const;

  static ModelParams all_ones();
};

// Concentration triple (oxygen, phytoplankton, zooplankton). Construction
// rejects negative components.
class State {
 public:
  State(double x1, double x2, double x3);
  explicit State(const Vec3& v) : State(v[0], v[1], v[2]) {}

  double x1() const noexcept { return v_[0]; }
  double x2() const noexcept { return v_[1]; }
  double x3() const noexcept { return v_[2]; }
  const Vec3& vec() const noexcept { return v_; }

 private:
  Vec3 v_;
};

// Diagonal linear part A = diag(-m, -sigma, -mu).
struct LinearPart {
  Vec3 diagonal;

  static LinearPart from_params(const ModelParams& p) {
    return {{-p.m, -p.sigma, -p.mu}};
  }
  double one_norm() const noexcept {
    double s = 0.0;
    for (double d : diagonal) s += d < 0 ? -d : d;
    return s;
  }
};

// Nonlinear part f of the decomposition dx = A x + f(x). No sign constraint
// on the first two output components; the third is nonnegative on the
// nonnegative octant.
Vec3 rhs_nonlinear(const ModelParams& p, const Vec3& x);

// Full right-hand side A x + f(x).
Vec3 rhs_full(const ModelParams& p, const Vec3& x);

double one_norm(const Vec3& x);
inline double one_norm_state(const State& s) { return one_norm(s.vec()); }

}  // namespace pofrac
