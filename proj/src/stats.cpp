#include "gsel/stats.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gsel/games.hpp"

namespace gsel {

double Mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double SampleSd(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double mu = Mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

namespace {

constexpr double kRelTol = 1e-10;
constexpr int kMaxIter = 10000;

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double BetaContinuedFraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kRelTol) return h;
  }
  return h;  // FIXME: surface non-convergence to the caller
}

}  // namespace

double IncompleteBeta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidInput("incomplete beta needs a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * BetaContinuedFraction(a, b, x) / a;
  return 1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double StudentTwoSidedP(double t, double dof) {
  if (std::isinf(t)) return 0.0;
  if (std::isinf(dof)) return std::erfc(std::abs(t) / std::sqrt(2.0));
  return IncompleteBeta(0.5 * dof, 0.5, dof / (dof + t * t));
}

WelchResult WelchTTest(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() < 2 || ys.size() < 2)
    throw InvalidInput("Welch t-test needs at least two samples per group (got " + std::to_string(xs.size()) +
                       " and " + std::to_string(ys.size()) + ")");
  const double nx = static_cast<double>(xs.size()), ny = static_cast<double>(ys.size());
  const double mx = Mean(xs), my = Mean(ys);
  const double sx = SampleSd(xs), sy = SampleSd(ys);
  const double vx = sx * sx / nx, vy = sy * sy / ny;
  const double se2 = vx + vy;

  WelchResult r;
  if (se2 == 0.0) {
    r.dof = nx + ny - 2.0;
    if (mx == my) return r;
    r.t = mx > my ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    r.p = 0.0;
    r.degenerate = true;
    return r;
  }
  r.t = (mx - my) / std::sqrt(se2);
  r.dof = se2 * se2 / (vx * vx / (nx - 1.0) + vy * vy / (ny - 1.0));
  r.p = StudentTwoSidedP(r.t, r.dof);
  return r;
}

double OneSidedGreaterP(const WelchResult& r) {
  return r.t > 0.0 ? 0.5 * r.p : 1.0 - 0.5 * r.p;
}

}  // namespace gsel
