#include "pofrac/quadrature.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "pofrac/errors.hpp"

namespace pofrac {

namespace {

// Gauss-Kronrod 7-15 pair, positive half of the rule.
constexpr double kXgk[8] = {
    0.0,
    0.2077849550078985,
    0.4058451513773972,
    0.5860872354676911,
    0.7415311855993945,
    0.8648644233597691,
    0.9491079123427585,
    0.9914553711208126,
};
constexpr double kWk[8] = {
    0.2094821410847278,
    0.2044329400752989,
    0.1903505780647854,
    0.1690047266392679,
    0.1406532597155259,
    0.1047900103222502,
    0.0630920926299786,
    0.0229353220105292,
};
// Gauss-7 weights aligned with kXgk[0], [2], [4], [6].
constexpr double kWg[4] = {
    0.4179591836734694,
    0.3818300505051189,
    0.2797053914892767,
    0.1294849661688697,
};

struct Panel {
  double a, b;
  double value;      // Kronrod estimate
  double error;      // |Kronrod - Gauss|, floored at machine level
  double abs_value;  // Kronrod estimate of |f| integral, for the floor

  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a,
                     double b, int* evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k = kWk[0] * fc;
  double g = kWg[0] * fc;
  double ka = kWk[0] * std::abs(fc);
  for (int i = 1; i < 8; ++i) {
    const double dx = h * kXgk[i];
    const double fl = f(c - dx);
    const double fr = f(c + dx);
    k += kWk[i] * (fl + fr);
    ka += kWk[i] * (std::abs(fl) + std::abs(fr));
    if ((i & 1) == 0) g += kWg[i / 2] * (fl + fr);
  }
  *evals += 15;
  Panel p;
  p.a = a;
  p.b = b;
  p.value = k * h;
  p.abs_value = ka * h;
  const double raw = std::abs(k - g) * h;
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * p.abs_value;
  p.error = std::max(raw, floor);
  return p;
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b, double abs_tol,
                              double rel_tol, int max_depth) {
  if (!(b >= a)) throw std::invalid_argument("integrate_adaptive: b < a");
  QuadResult out;
  if (a == b) return out;

  // Global adaptivity: keep a worst-error-first heap of panels and split the
  // top one until the summed error meets the target or the budget runs out.
  const int max_panels = 64 * std::max(1, max_depth);
  std::priority_queue<Panel> heap;
  heap.push(evaluate_panel(f, a, b, &out.evaluations));
  double total_value = heap.top().value;
  double total_error = heap.top().error;
  double total_abs = heap.top().abs_value;

  // Below the rounding floor of the assembled sum no split can help.
  auto target = [&]() {
    return std::max({abs_tol, rel_tol * std::abs(total_value),
                     100.0 * std::numeric_limits<double>::epsilon() * total_abs});
  };

  int panels = 1;
  while (total_error > target() && panels < max_panels) {
    Panel worst = heap.top();
    heap.pop();
    // Machine floor: no further split can improve this panel.
    const double floor =
        50.0 * std::numeric_limits<double>::epsilon() * worst.abs_value;
    if (worst.error <= floor * 1.0000001 &&
        worst.b - worst.a < 1e-6 * (b - a)) {
      // Re-insert with zero error so it never surfaces again.
      worst.error = 0.0;
      heap.push(worst);
      ++panels;
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = evaluate_panel(f, worst.a, mid, &out.evaluations);
    Panel right = evaluate_panel(f, mid, worst.b, &out.evaluations);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
    ++panels;
  }

  // Rounding floor on the assembled sum.
  const double machine_limit =
      100.0 * std::numeric_limits<double>::epsilon() * total_abs;
  if (total_error > target() && total_error > machine_limit)
    throw numerical_failure(
        "integrate_adaptive: panel budget exhausted before tolerance",
        total_value, total_error);

  out.value = total_value;
  out.error_estimate = total_error;
  return out;
}

QuadResult integrate_zero_to_inf(const std::function<double(double)>& f,
                                 double abs_tol, double rel_tol) {
  QuadResult head = integrate_adaptive(f, 0.0, 1.0, 0.5 * abs_tol, rel_tol);
  auto tail = [&f](double u) {
    if (u <= 0.0) return 0.0;  // theta -> inf limit; integrand must vanish
    return f(1.0 / u) / (u * u);
  };
  QuadResult rest = integrate_adaptive(tail, 0.0, 1.0, 0.5 * abs_tol, rel_tol);
  QuadResult out;
  out.value = head.value + rest.value;
  out.error_estimate = head.error_estimate + rest.error_estimate;
  out.evaluations = head.evaluations + rest.evaluations;
  return out;
}

}  // namespace pofrac
