#pragma once

#include <complex>
#include <vector>

#include "cubic/family.hpp"
#include "cubic/gauss.hpp"
#include "cubic/primes.hpp"

namespace cubic {

// V(y) = Gamma(1/2, 2 pi y) / Gamma(1/2) = erfc(sqrt(2 pi y)).
double weight_V(double y);
// The same weight as the inverse Mellin integral along Re u = c, trapezoid rule with step h on |Im u| <= T.
double weight_V_contour(double y, double c = 1.0, double T = 60.0, double h = 0.02);
// log Gamma(z) for Re z > 0 (Lanczos, g = 7).
std::complex<double> lgamma_complex(std::complex<double> z);

// Bound for sum_{N a > B} N(a)^{-1/2} V(N(a) / Yp) over all ideals; uses #{N a <= t} <= t.
double afe_tail_bound(double B, double Yp);
// Smallest B (on a 1.05 geometric grid from Yp) with afe_tail_bound(B, Yp) <= eps.
double afe_truncation(double Yp, double eps);

struct LValueRecord {
    FamilyElement c;
    std::complex<double> value;
    double Y = 1;       // balance parameter; Y' = Y sqrt(3 n)
    double Yprime = 0;
    i64 principal_terms = 0;
    i64 dual_terms = 0;
    double truncation_error_bound = 0;
    std::complex<double> root_number;
};

// L(1/2, chi_c) from the two smoothed sums over ideals (1 - omega)^r b.
LValueRecord central_value(const FamilyElement& c, double Y, double tol, const PrimeTable& table,
                           GaussCache* cache = &default_gauss_cache());
// Same with an absolute balance point Y' instead of Y sqrt(3 n).
LValueRecord central_value_absolute(const FamilyElement& c, double Yprime, double tol, const PrimeTable& table,
                                    GaussCache* cache = &default_gauss_cache());

// Primary elements of norm <= B in increasing (norm, a, b) order. Thread safe; grows a shared cache.
std::vector<EisensteinInt> primary_elements_upto(i64 B);

// Right side of the GRH bound for log |L(1/2, chi_c)| at t = 0.
double grh_log_bound(const FamilyElement& c, double x, double lambda, const PrimeTable& table);
// Root of exp(-l) = l + l^2/2 by bisection.
double lambda0();

}  // namespace cubic
