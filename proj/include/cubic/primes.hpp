#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cubic/eisenstein.hpp"

namespace cubic {

enum class PrimeKind { split, inert };

struct EisensteinPrime {
    PrimaryElement element;
    i64 norm = 0;
    PrimeKind kind = PrimeKind::split;
    i64 p = 0;  // rational prime below

    const EisensteinInt& value() const { return element.value; }
};

struct Factorization {
    std::vector<std::pair<EisensteinPrime, int>> factors;
    int unit = 0;  // index into kUnits

    int Omega() const;
    bool squarefree() const;
    EisensteinInt product() const;
};

class PrimeTable {
public:
    static constexpr i64 kMaxLimit = 100'000'000;

    // Sieve all primary primes of norm <= norm_limit.
    explicit PrimeTable(i64 norm_limit);

    i64 limit() const { return limit_; }
    const std::vector<EisensteinPrime>& primes() const { return primes_; }
    // Primes with lo < norm <= hi.
    std::span<const EisensteinPrime> range(i64 lo, i64 hi) const;
    const std::vector<std::uint32_t>& rational_primes() const { return rational_; }

    Factorization factor(const EisensteinInt& n) const;
    // Number of prime ideals of norm <= x, counting (1 - omega).
    i64 pi_K(double x) const;

    // Cache as JSON lines with a versioned header.
    void save(const std::string& path) const;
    static PrimeTable load(const std::string& path);
    // Load from cache_dir if present, else sieve and write the cache.
    static PrimeTable cached(i64 norm_limit, const std::string& cache_dir);

private:
    PrimeTable() = default;
    void build_rational(i64 upto);
    std::vector<std::pair<u64, int>> factor_rational(u64 n) const;
    std::pair<EisensteinPrime, EisensteinPrime> split_pair(u64 p) const;

    i64 limit_ = 0;
    std::vector<EisensteinPrime> primes_;
    std::vector<std::uint32_t> rational_;
    std::vector<std::uint32_t> spf_;
};

// The two primary primes above a rational prime p = 1 mod 3, via a square root of -3 and a gcd.
std::pair<EisensteinPrime, EisensteinPrime> split_primes_above(u64 p);

// chi_n(alpha) as the product of Euler-criterion symbols over the factorization of n.
CubicSymbolValue cubic_symbol(const EisensteinInt& alpha, const PrimaryElement& n, const PrimeTable& table);

// Number of nonzero ideals of norm <= x (lattice points / 6).
i64 ideal_count(double x);
// a[n] = number of ideals of norm exactly n, for 0 <= n <= x.
std::vector<std::uint32_t> ideal_norm_counts(i64 x);
// Logarithmic integral from 2 to x by adaptive quadrature.
double li(double x);

// Residue of zeta_K at s = 1, pi / (3 sqrt 3).
double zeta_K_residue();

}  // namespace cubic
