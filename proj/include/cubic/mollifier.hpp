#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "cubic/family.hpp"
#include "cubic/primes.hpp"

namespace cubic {

struct MollifierConfig {
    double k = 2;
    double kappa = 1;
    double alpha = 7;
    double beta = 0.916;
    double Theta = 5.8025935515e-44;
    double a = 1.0299;       // the s_j choice 2 floor(1 / (4 a theta_j))
    double epsilon = 1e-5;
    double D = 1;
    i64 X = 10000;

    // derived by derive()
    i64 k0 = 16;
    int J = -1;
    double logX = 0;
    std::vector<double> theta;  // theta[j + 1] = theta_j for j = -1..J
    std::vector<int> ell;       // ell[j] for j = 0..J
    std::vector<i64> endpoint;  // endpoint[j + 1] = floor(X^theta_j), endpoint[0] = k0

    void derive();
    double theta_at(int j) const { return theta.at(static_cast<size_t>(j + 1)); }
    i64 E(int j) const { return endpoint.at(static_cast<size_t>(j + 1)); }
    int s(int j) const;  // s_j = 2 floor(1 / (4 a theta_j))

    static MollifierConfig make(double k, double kappa, double alpha, double beta, double Theta, i64 X,
                                double a = 1.0299);
    // alpha = 1.2, beta = 0.75, Theta = 0.5, k = 2, kappa = 1: a few nonempty intervals at desk X.
    static MollifierConfig desk(i64 X);
    // The parameter set of the nonvanishing theorem; J < 0 at any computable X.
    static MollifierConfig paper(i64 X);

    std::string to_json() const;
    static MollifierConfig from_json(const std::string& text);
};

struct ValidationReport {
    std::vector<std::pair<std::string, bool>> conditions;
    bool Xcond_loglog = false;   // (log log X)^{alpha beta} > 2
    bool Xcond_logloglog = false;  // alpha log log log X >= 1 - log Theta
    double R1 = 0, R2 = 0;
    bool all_pass() const;
};

// Feasibility conditions with the o(1) terms set to zero, plus R1 < 0 < R2.
ValidationReport validate(const MollifierConfig& cfg);
// R1, R2 of the final-bound chain.
std::pair<double, double> R1R2(double k, double kappa, double a, double beta, double Theta);

double truncated_exp(double x, int ell);
std::complex<double> truncated_exp(std::complex<double> z, int ell);

// f(p, j) = N^{-1/(theta_j log X)} (1 - log N / (theta_j log X)).
double f_weight(double p_norm, int j, const MollifierConfig& cfg);

// chi_c on every prime ideal of norm <= limit (the prime (1 - omega) excluded).
struct PrimeCharacterValues {
    std::vector<EisensteinPrime> primes;
    std::vector<CubicSymbolValue> chi;
    i64 limit = 0;
};
PrimeCharacterValues prime_character_values(const FamilyElement& c, i64 limit, const PrimeTable& table);
// Norm limit the mollifier objects need for cfg.
i64 mollifier_prime_limit(const MollifierConfig& cfg);

std::complex<double> F_r(const PrimeCharacterValues& v, int r, int j, const MollifierConfig& cfg);
std::complex<double> mollifier_M(const PrimeCharacterValues& v, const MollifierConfig& cfg);
std::complex<double> mollifier_M(const FamilyElement& c, const MollifierConfig& cfg, const PrimeTable& table);

// E_ell(-(1/kappa) sum z_i) and the same as sum over exponent vectors e with |e| <= ell of prod (-z_i/kappa)^{e_i} / e_i!.
std::complex<double> mollifier_factor_product(const std::vector<std::complex<double>>& z, int ell, double kappa);
std::complex<double> mollifier_factor_expansion(const std::vector<std::complex<double>>& z, int ell, double kappa);
// Dirichlet-coefficient form of M_j on interval j.
std::complex<double> mollifier_Mj_expansion(const PrimeCharacterValues& v, int j, const MollifierConfig& cfg);

// nu(p1^r1 ... ps^rs) = 1 / (r1! ... rs!); nu_n its n-fold convolution; nu_n(.; ell) with Omega(a_i) <= ell.
double nu(const std::vector<int>& exponents);
double nu_n(const std::vector<int>& exponents, int n);
double nu_n_truncated(const std::vector<int>& exponents, int n, int ell);

struct DSDiagnostics {
    double D = 0;
    double S = 0;
    std::vector<bool> in_T;  // c in T_r for r = 0..J
};
DSDiagnostics diagnostics_DS(const PrimeCharacterValues& v, int j, const MollifierConfig& cfg);

// The GRH bound terms dropped by the mollifier objects at x: primes of norm <= k0, prime powers with
// m >= 3, and the two conductor-free constants.
double explicit_remainder(double x, const MollifierConfig& cfg, const PrimeTable& table);

struct T0Check {
    bool in_T0 = false;
    double lhs = 0;  // |L|^k
    double rhs = 0;
    bool holds = true;
};
T0Check check_InT0orNot(const PrimeCharacterValues& v, double absL, const MollifierConfig& cfg,
                        const PrimeTable& table);

struct EstimateCheck {
    std::string name;
    double lhs = 0, rhs = 0;
    bool pass = false;
};
EstimateCheck prime_sum_item1(i64 k0, const PrimeTable& table);
EstimateCheck prime_sum_item2(const MollifierConfig& cfg, int r, double sigma, const PrimeTable& table);
EstimateCheck prime_sum_item3(const MollifierConfig& cfg, const PrimeTable& table);
// |sum - (J - j)| log X^{theta_j} <= C.
EstimateCheck prime_sum_item4(const MollifierConfig& cfg, int j, double C, const PrimeTable& table);
EstimateCheck prime_sum_item5(const MollifierConfig& cfg, int j, const PrimeTable& table);

// n sum_{p in I_n} 1/p over rational primes, I_n = (base 5^{n-1}, base 5^n], n = 1..
std::vector<double> d_constant_values(i64 base, const PrimeTable& table);

}  // namespace cubic
