#include "doctest.h"

#include "cubic/eisenstein.hpp"
#include "cubic/errors.hpp"
#include "cubic/primes.hpp"

using namespace cubic;

TEST_CASE("ring arithmetic") {
    EisensteinInt z{1, 3};
    CHECK(norm(z) == 7);
    CHECK(kOmega * kOmega == EisensteinInt{-1, -1});
    CHECK(norm(EisensteinInt{1, 2}) == 3);
    CHECK(EisensteinInt{1, 2} * EisensteinInt{1, 2} == EisensteinInt{-3, 0});
    CHECK(conj(z) * z == EisensteinInt{7, 0});
    for (int i = 0; i < 6; ++i) CHECK(unit_index(kUnits[i]) == i);
    for (int i = 0; i < 6; ++i) CHECK(kUnits[i] * kUnits[unit_inverse(i)] == EisensteinInt{1, 0});
    CHECK_THROWS_AS(EisensteinInt(i64{1} << 62, 0) * EisensteinInt(i64{1} << 62, 0), Overflow);
}

TEST_CASE("primary associates") {
    auto p = primary_associate(EisensteinInt{2, 0});
    CHECK(p.value == EisensteinInt{-2, 0});
    CHECK(p.unit == 3);
    CHECK_THROWS_AS(primary_associate(EisensteinInt{1, -1}), NotPrimaryizable);
    for (i64 a = -6; a <= 6; ++a)
        for (i64 b = -6; b <= 6; ++b) {
            EisensteinInt z{a, b};
            if (norm(z) % 3 == 0) continue;
            auto q = primary_associate(z);
            CHECK(is_primary(q.value));
            CHECK(q.value == kUnits[q.unit] * z);
        }
}

TEST_CASE("gcd and residue systems") {
    CHECK_THROWS_AS(gcd(EisensteinInt{}, EisensteinInt{}), UndefinedGcd);
    EisensteinInt g = gcd(EisensteinInt{7, 0}, EisensteinInt{2, -1});
    CHECK(norm(g) == 7);
    for (EisensteinInt n : {EisensteinInt{2, 0}, EisensteinInt{1, 3}, EisensteinInt{-5, 3}, EisensteinInt{4, 9}}) {
        ResidueSystem rs(n);
        CHECK(rs.size() == norm(n));
        auto all = rs.list();
        for (i64 i = 0; i < rs.size(); ++i) CHECK(rs.index(all[i]) == i);
        CHECK(rs.index(all[5 % rs.size()] + n * EisensteinInt{3, -7}) == 5 % rs.size());
    }
    CHECK_THROWS_AS(ResidueSystem(EisensteinInt{1000, 0}, 1000), ResidueSystemTooLarge);
}

TEST_CASE("cubic symbol at a prime") {
    CHECK(cubic_symbol_prime(EisensteinInt{2, 0}, primary_associate(EisensteinInt{1, 3})).e == 2);
    CHECK(cubic_symbol_prime(EisensteinInt{7, 0}, primary_associate(EisensteinInt{1, 3})).is_zero());
    CHECK_THROWS_AS(PrimeCharacter(EisensteinInt{1, 2}), NotPrime);
    CHECK_THROWS_AS(PrimeCharacter(EisensteinInt{4, 0}), NotPrime);
    // inert prime: every rational integer is a cube mod -2
    CHECK(cubic_symbol_prime(EisensteinInt{5, 0}, primary_associate(EisensteinInt{2, 0})).e == 0);
    // multiplicativity and the count of cubes mod a split prime
    PrimeCharacter chi(EisensteinInt{1, 3});
    int cubes = 0;
    for (const auto& r : ResidueSystem(EisensteinInt{1, 3}).list()) {
        if (r.is_zero()) continue;
        cubes += chi(r).e == 0;
        CHECK(chi(r * EisensteinInt{2, 1}) == chi(r) * chi(EisensteinInt{2, 1}));
    }
    CHECK(cubes == 2);
}

TEST_CASE("reciprocity agrees with Euler criterion") {
    PrimeTable table(2000);
    int checked = 0;
    for (i64 a = -41; a <= 40; a += 3)
        for (i64 b = -39; b <= 39; b += 3) {
            EisensteinInt n{a, b};
            if (mod_floor(a, 3) != 1 || mod_floor(b, 3) != 0 || norm(n) > 2000 * 2000) continue;
            for (EisensteinInt alpha : {EisensteinInt{2, 0}, EisensteinInt{1, -1}, EisensteinInt{0, 1},
                                        EisensteinInt{-1, 0}, EisensteinInt{5, 7}, EisensteinInt{-11, 4}}) {
                auto expect = cubic_symbol(alpha, PrimaryElement{n, 0}, table);
                CHECK_MESSAGE(cubic_symbol_reciprocity(alpha, n) == expect, "alpha=", alpha.str(), " n=", n.str());
                ++checked;
            }
        }
    CHECK(checked > 500);
}
