#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "cubic/errors.hpp"
#include "cubic/primes.hpp"

using namespace cubic;

TEST_CASE("small sieve") {
    PrimeTable t(7);
    REQUIRE(t.primes().size() == 3);
    CHECK(t.primes()[0].norm == 4);
    CHECK(t.primes()[0].value() == EisensteinInt{-2, 0});
    CHECK(t.primes()[1].norm == 7);
    CHECK(t.pi_K(7) == 4);
    for (const auto& p : t.primes()) CHECK(is_primary(p.value()));
}

TEST_CASE("ideal counts") {
    CHECK(ideal_count(1) == 1);
    CHECK(ideal_count(3) == 2);
    CHECK(ideal_count(4) == 3);
    CHECK(ideal_count(7) == 5);
    auto a = ideal_norm_counts(1000);
    i64 s = 0;
    for (i64 n = 1; n <= 1000; ++n) s += a[n];
    CHECK(s == ideal_count(1000));
}

TEST_CASE("factorization round trip") {
    PrimeTable t(10000);
    for (i64 a = -200; a <= 200; a += 7)
        for (i64 b = -201; b <= 201; b += 3) {
            EisensteinInt z{a, b};
            if (z.is_zero() || norm(z) % 3 == 0) continue;
            auto f = t.factor(z);
            CHECK(f.product() == z);
            for (const auto& [p, e] : f.factors) CHECK(is_primary(p.value()));
        }
    CHECK_THROWS_AS(t.factor(EisensteinInt{200000, 3}), FactorizationUnavailable);
}

TEST_CASE("prime number theorem sanity and li") {
    CHECK(li(1e6) == doctest::Approx(78626.5).epsilon(1e-5));
    PrimeTable t(100000);
    double ratio = static_cast<double>(t.pi_K(1e5)) / li(1e5);
    CHECK(std::abs(ratio - 1) < 0.02);
    CHECK_THROWS_AS(t.pi_K(2e5), SieveCapacity);
}

TEST_CASE("cache round trip") {
    auto dir = std::filesystem::temp_directory_path() / "cubic_primes_cache_test";
    std::filesystem::remove_all(dir);
    PrimeTable a = PrimeTable::cached(5000, dir.string());
    PrimeTable b = PrimeTable::cached(5000, dir.string());
    REQUIRE(a.primes().size() == b.primes().size());
    for (size_t i = 0; i < a.primes().size(); ++i) CHECK(a.primes()[i].value() == b.primes()[i].value());
    std::filesystem::remove_all(dir);
}

TEST_CASE("ideal count stays below t") {
    // the AFE tail bound assumes #{N a <= t} <= t
    auto a = ideal_norm_counts(200000);
    i64 s = 0;
    for (i64 n = 1; n <= 200000; ++n) {
        s += a[n];
        REQUIRE(s <= n);
    }
}
