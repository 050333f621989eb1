#ifndef GSEL_STATS_HPP
#define GSEL_STATS_HPP

#include <span>

namespace gsel {

double Mean(std::span<const double> xs);
// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double SampleSd(std::span<const double> xs);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double IncompleteBeta(double a, double b, double x);
// Two-sided tail probability P(|T| >= |t|) for Student's t with `dof` degrees of freedom.
double StudentTwoSidedP(double t, double dof);

struct WelchResult {
  double t = 0.0;
  double dof = 0.0;
  double p = 1.0;           // two-sided
  bool degenerate = false;  // both samples constant and unequal: p forced to 0
};

// Welch unequal-variance t-test of mean(xs) - mean(ys). Throws InvalidInput
// when either sample has fewer than two values.
WelchResult WelchTTest(std::span<const double> xs, std::span<const double> ys);

// One-sided p for the alternative mean(xs) > mean(ys).
double OneSidedGreaterP(const WelchResult& r);

}  // namespace gsel

#endif  // GSEL_STATS_HPP
