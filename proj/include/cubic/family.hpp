#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cubic/eisenstein.hpp"
#include "cubic/primes.hpp"

namespace cubic {

// c = c2 c1^2 with c1, c2 squarefree, coprime and c = 1 mod 9. The conductor is q = c1 c2.
struct FamilyElement {
    PrimaryElement c1, c2, c, q;
    i64 conductor_norm = 0;
    std::vector<EisensteinInt> primes1, primes2;  // prime divisors of c1 and c2

    FamilyElement conjugate() const;
    std::string key() const;
};

bool family_less(const FamilyElement& x, const FamilyElement& y);

// Build an element from the prime lists of c1 and c2; checks the congruence.
FamilyElement make_family_element(std::vector<EisensteinInt> primes1, std::vector<EisensteinInt> primes2);
// Membership predicate by factorization; fills *out when c is a member.
bool is_family_member(const EisensteinInt& c, const PrimeTable& table, FamilyElement* out = nullptr);

std::vector<FamilyElement> enumerate_family(i64 X, const PrimeTable& table);
// Oracle: scan all c = 1 mod 9 with N(c) <= X^2 and test membership.
std::vector<FamilyElement> enumerate_family_bruteforce(i64 X, const PrimeTable& table);

void save_family(const std::vector<FamilyElement>& fam, i64 X, const std::string& path);
std::vector<FamilyElement> load_family(const std::string& path, i64* X = nullptr);

// chi_c(alpha) = (alpha / c)_3.
CubicSymbolValue chi(const FamilyElement& c, const EisensteinInt& alpha);

// chi_c evaluated prime by prime: product of chi_pi over c2 and conj(chi_pi) over c1.
class FamilyCharacter {
public:
    explicit FamilyCharacter(const FamilyElement& c);
    CubicSymbolValue operator()(const EisensteinInt& alpha) const;

private:
    std::vector<PrimeCharacter> chars_;
    std::vector<int> power_;  // 1 for c2 primes, 2 for c1 primes
};

struct FamilySizeConstants {
    double C1 = 0;          // 4 pi^2 F / 2187
    double C2_partial = 0;  // C2 without the zeta_K derivative constant
    double C2 = 0;          // with the numerically estimated zeta_K constant
    double F = 0;           // F_{psi_0}(1; n)
    double F_log_derivative = 0;
    double tail_bound = 0;  // relative error bound on F from truncation
    i64 truncation = 0;
};

FamilySizeConstants family_size_constants(const PrimaryElement& n, double tol, const PrimeTable& table,
                                          double zeta_constant);

// lim_{s->1} ((s-1)^2 zeta_K(s)^2)' = 2 res gamma_K, with gamma_K from ideal-count partial sums up to x.
double zeta_K_square_derivative(i64 x = 1'000'000);

struct CharSumResult {
    std::complex<double> sum;
    i64 coprime_count = 0;
    bool principal = false;        // m is a unit times a cube
    double normalized = 0;         // |sum| / sqrt(X)
};

CharSumResult character_sum_over_family(const PrimaryElement& m, const std::vector<FamilyElement>& family, i64 X,
                                        const PrimeTable& table);

}  // namespace cubic
