#pragma once

#include <complex>
#include <map>
#include <shared_mutex>
#include <string>
#include <utility>

#include "cubic/eisenstein.hpp"
#include "cubic/primes.hpp"

namespace cubic {

struct FamilyElement;

enum class GaussMethod { direct, recurrence };

struct GaussSumValue {
    std::complex<double> value;
    i64 modulus_norm = 1;
    GaussMethod method = GaussMethod::direct;
};

inline constexpr i64 kDirectSumCap = 100'000;

// Sum over alpha mod n of chi_n(alpha) e(tr(r alpha / n)), one term per residue.
GaussSumValue gauss_direct(const EisensteinInt& r, const PrimaryElement& n, i64 cap = kDirectSumCap);

// Prime-level sums g(1, pi), and full sums keyed by (r mod n, n). Safe for concurrent use.
class GaussCache {
public:
    std::complex<double> prime_sum(const EisensteinInt& pi);
    bool lookup(const EisensteinInt& r, const EisensteinInt& n, std::complex<double>& out) const;
    void store(const EisensteinInt& r, const EisensteinInt& n, std::complex<double> v);
    size_t size() const;

    void save(const std::string& path, i64 limit) const;
    void load(const std::string& path);

private:
    mutable std::shared_mutex mu_;
    std::map<EisensteinInt, std::complex<double>> prime_;
    std::map<std::pair<EisensteinInt, EisensteinInt>, std::complex<double>> full_;
};

GaussCache& default_gauss_cache();

// g(1, pi) for a primary prime, summed over a generator of (Z[omega]/pi)^*.
std::complex<double> gauss_prime(const EisensteinInt& pi);

// Twisted multiplicativity over factor(n) plus the prime-power case analysis.
GaussSumValue gauss_fast(const EisensteinInt& r, const PrimaryElement& n, const PrimeTable& table,
                         GaussCache* cache = &default_gauss_cache());

// W(chi_c) = conj(g(1, c1)) g(1, c2).
std::complex<double> root_number(const FamilyElement& c, const PrimeTable& table,
                                 GaussCache* cache = &default_gauss_cache());
// W / sqrt(N(q)), of unit modulus.
std::complex<double> normalized_root_number(const FamilyElement& c, const PrimeTable& table,
                                            GaussCache* cache = &default_gauss_cache());
// Sum over x in (Z[omega]/q)^* of chi_c(x) e(tr(x / (q sqrt(-3)))).
std::complex<double> root_number_direct(const FamilyElement& c, i64 cap = kDirectSumCap);

}  // namespace cubic
