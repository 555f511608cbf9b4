#pragma once

namespace castlab::stats {

// Regularized lower/upper incomplete gamma P(a, x) and Q(a, x) = 1 - P(a, x).
// Series below x = a + 1, Lentz continued fraction above; relative
// tolerance 1e-15.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Upper-tail probability of a chi-square statistic with `dof` degrees of freedom.
double chi_square_sf(double statistic, double dof);

}  // namespace castlab::stats
