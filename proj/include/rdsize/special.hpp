#pragma once

// Scalar special functions used by the likelihood and elicitation code.
//
// log_gamma, digamma and trigamma lift the argument to x >= 10 with the
// recurrence and then use the asymptotic (Stirling) series; this is the same
// scheme the vector kernels use, so the scalar versions double as their
// reference.
namespace rdsize::special {

// Recurrence threshold for the asymptotic series.
inline constexpr double kAsymptoticFrom = 10.0;

// log Gamma(x) for x > 0.
double log_gamma(double x);
// psi(x) for x > 0.
double digamma(double x);
// psi'(x) for x > 0.
double trigamma(double x);

// Series parts valid for x >= kAsymptoticFrom.
double log_gamma_asymptotic(double x);
double digamma_asymptotic(double x);
double trigamma_asymptotic(double x);

// log B(a, b), a, b > 0. Uses a cancellation-free form when both arguments
// are large, which matters when b is of order n*N.
double log_beta(double a, double b);

// log C(n, k) for real n >= k >= 0.
double log_choose(double n, double k);

// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

}  // namespace rdsize::special
