#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cubic/family.hpp"
#include "cubic/lfunction.hpp"
#include "cubic/mollifier.hpp"
#include "cubic/primes.hpp"

namespace cubic {

// 4 pi^2 sqrt 3 / (2187 (sqrt 3 - 1))
double c0_prefactor();

// Prefactor times prod (1 - 3/N^2 + 2/N^3) over primary primes, truncated so the relative tail is <= tol.
double euler_constant_c0(double tol, const PrimeTable& table);

struct EulerConstants {
    double c0 = 0;
    double c1 = 0;          // c0 prod over all primary primes of (1 + N / ((N+2)(N^{3/2}-1)))
    double CX = 0;          // mid-range (k0, E_J] uses the b_m series, all other primes the c1 factor
    double c1_printed = 0;  // c1 with the product restricted to N >= X^{theta_J}
    double CX_printed = 0;  // first product over N >= X^{theta_J}, series factor without 1/(1 - N^{-3/2})
    double c0_tail = 0;     // relative truncation bound on c0
    double c1_tail = 0;     // relative truncation bound shared by c1 and CX
    double series_tail = 0; // largest first omitted b_m
    i64 truncation = 0;
    bool sandwich() const { return c0 < CX && CX < c1; }
};

EulerConstants euler_constants(const MollifierConfig& cfg, double tol, const PrimeTable& table);
double euler_constant_c1(const MollifierConfig& cfg, double tol, const PrimeTable& table);
double euler_constant_CX(const MollifierConfig& cfg, double tol, const PrimeTable& table);

// b_0, b_1, ... with b_m = f^m / (m! N^{(3/2) max(1, ceil(m/3))}), stopping after the first term below tol.
std::vector<double> b_series(double f, double N, double tol);

struct CharacterRow {
    FamilyElement c;
    std::complex<double> L;
    std::complex<double> M;
    double err_bound = 0;
};

struct MomentReport {
    i64 X = 0;
    i64 family_size = 0;
    std::complex<double> moment_value;
    double second_moment = 0;  // sum |L M|^2, diagnostic only
    double main_term_prediction = 0;
    double ratio = 0;          // Re moment / main term
    double c0 = 0, c1 = 0, CX = 0;
    i64 nonvanishing_count = 0;
    double threshold = 0;
    double Y = 1;
    double tol = 0;
    std::vector<CharacterRow> rows;  // in family order

    std::string to_json() const;
};

// Sum over the family of L(1/2, chi_c) M(c, 1); L at balance Y, summed in family order.
MomentReport first_mollified_moment(i64 X, const MollifierConfig& cfg, double tol, const PrimeTable& table,
                                    unsigned jobs = 1, double Y = 1.0);

struct AfeSplit {
    double S1 = 0;
    std::complex<double> S2, S3;
    double S1_oracle = 0;            // cubes b = beta^3 enumerated directly, coprimality by gcd
    std::complex<double> direct;     // sum of central_value_absolute at the same Y' (twist 1 only)
    double Yprime = 0;
    i64 family_size = 0;
};

// S1, S2, S3 with a fixed balance point Y' = sqrt(3 X) across the family and n = 1 in S3.
AfeSplit afe_term_split(i64 X, const PrimaryElement& a, double tol, const PrimeTable& table, unsigned jobs = 1);

struct NonvanishingReport {
    i64 count_nonzero = 0;
    i64 count_below_threshold = 0;
    double threshold = 0;
    double empirical_proportion = 0;  // |sum L M|^2 / (|F| sum |L M|^2)
    double bound_prefactor = 0;       // 3 / (sqrt 3 - 1)^2
    double bound_loglog_reciprocal = 0;
    // log(-log(bound)) comparison: empirical >= bound
    bool exceeds_bound = false;
};

NonvanishingReport nonvanishing_report(const MomentReport& m, double tol);
NonvanishingReport nonvanishing_report(i64 X, double tol, const PrimeTable& table, unsigned jobs = 1);

struct PaperConstants {
    double R1 = 0, R2 = 0;
    double S_k = 0;
    int D = 1;
    double loglog_bound = 0;
    double combined_constant = 0;  // D2 * 2 exp(2 e^{1/4} + 2 e^{1/8})
    double proportion_prefactor = 0;
    double proportion_loglog_reciprocal = 0;
    double c0_prefactor = 0;
    // Theta inside the printed rounding interval that reproduces the printed R1, if any
    double R1_at_theta_lo = 0, R1_at_theta_hi = 0;
    bool R1_printed_in_theta_interval = false;

    std::string to_json() const;
};

inline constexpr double kPaperD2 = 2.6176409874e15;

// S_k = 4 * 5^{2kD} (2kD)! e^{4k(1+D)}
double S_k(double k, int D);
PaperConstants reproduce_paper_constants();

}  // namespace cubic
