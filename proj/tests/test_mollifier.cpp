#include "doctest.h"

#include <cmath>

#include "cubic/errors.hpp"
#include "cubic/family.hpp"
#include "cubic/mollifier.hpp"
#include "cubic/primes.hpp"

using namespace cubic;

namespace {
const PrimeTable& table() {
    static PrimeTable t(1000000);
    return t;
}
}  // namespace

TEST_CASE("truncated exponential") {
    CHECK(truncated_exp(3.7, 0) == 1);
    CHECK(truncated_exp(-1.0, 2) == doctest::Approx(0.5));
    CHECK(truncated_exp(1.0, 20) == doctest::Approx(std::exp(1.0)));
    auto z = truncated_exp(std::complex<double>(0, 1), 30);
    CHECK(std::abs(z - std::exp(std::complex<double>(0, 1))) < 1e-14);
}

TEST_CASE("interval scheme") {
    auto d = MollifierConfig::desk(10000);
    CHECK(d.k0 == 16);
    CHECK(d.J == 0);
    CHECK(d.E(-1) == 16);
    CHECK(d.E(0) == 34);
    CHECK(d.ell[0] == 4);
    auto j1 = MollifierConfig::make(2, 1, 1.2, 0.75, 0.9, 1000000);
    REQUIRE(j1.J == 1);
    for (int j = 0; j <= j1.J; ++j) {
        CHECK(j1.ell[j] > 0);
        CHECK(j1.ell[j] % 2 == 0);
        CHECK(j1.E(j - 1) < j1.E(j));
    }
    auto p = MollifierConfig::paper(1000000);
    CHECK(p.J < 0);
    CHECK(MollifierConfig::make(0.5, 1, 2, 0.5, 0.5, 10000).k0 == 3);
    CHECK_THROWS_AS(MollifierConfig::make(0, 1, 2, 0.5, 0.5, 10000), ConfigError);
}

TEST_CASE("config JSON round trip") {
    auto d = MollifierConfig::desk(100000);
    auto back = MollifierConfig::from_json(d.to_json());
    CHECK(back.J == d.J);
    CHECK(back.endpoint == d.endpoint);
    CHECK(back.Theta == d.Theta);
    auto preset = MollifierConfig::from_json(R"({"preset": "paper", "X": 50000})");
    CHECK(preset.beta == 0.916);
    CHECK_THROWS_AS(MollifierConfig::from_json("[1]"), ConfigError);
    CHECK_THROWS_AS(MollifierConfig::from_json(R"({"k": "two"})"), ConfigError);
}

TEST_CASE("f weight") {
    auto d = MollifierConfig::desk(10000);
    const double top = std::exp(d.theta_at(0) * d.logX);
    CHECK(std::abs(f_weight(top, 0, d)) < 1e-12);
    CHECK(f_weight(1.0000001, 0, d) == doctest::Approx(1).epsilon(1e-5));
    double prev = 2;
    for (double N = 17; N <= 34; N += 0.5) {
        const double f = f_weight(N, 0, d);
        CHECK(f >= 0);
        CHECK(f <= 1);
        CHECK(f < prev);
        prev = f;
    }
}

TEST_CASE("validator on the paper parameters") {
    auto v = validate(MollifierConfig::paper(10000));
    CHECK(v.conditions.size() == 12);
    CHECK(v.all_pass());
    CHECK(v.R2 == doctest::Approx(2.8043085602e42).epsilon(1e-10));
    CHECK(v.R1 == doctest::Approx(-4.71078768e40).epsilon(1e-8));
    CHECK_FALSE(validate(MollifierConfig::desk(10000)).all_pass());
}

TEST_CASE("F_r and M on the family") {
    auto d = MollifierConfig::desk(100000);
    auto fam = enumerate_family(10000, table());
    for (size_t i = 0; i < fam.size(); i += 97) {
        auto v = prime_character_values(fam[i], mollifier_prime_limit(d), table());
        auto w = prime_character_values(fam[i].conjugate(), mollifier_prime_limit(d), table());
        double triangle = 0;
        for (const auto& p : table().range(d.E(-1), d.E(0))) triangle += 1 / std::sqrt(static_cast<double>(p.norm));
        auto F = F_r(v, 0, 0, d);
        CHECK(std::abs(F) <= triangle);
        CHECK(std::abs(F_r(w, 0, 0, d) - std::conj(F)) < 1e-14);
        CHECK(std::abs(mollifier_M(w, d) - std::conj(mollifier_M(v, d))) < 1e-14);
        CHECK(std::abs(mollifier_M(v, d) - mollifier_Mj_expansion(v, 0, d)) < 1e-12);
        auto ds = diagnostics_DS(v, 0, d);
        CHECK(ds.D > 0);
        CHECK(ds.S > 0);
        CHECK(ds.in_T.size() == 1);
    }
    auto p = MollifierConfig::paper(10000);
    CHECK(mollifier_M(fam[0], p, table()) == std::complex<double>(1));
}

TEST_CASE("one-prime interval") {
    // M = E_l(-chi f / sqrt N) exactly, expansion over the single prime
    std::vector<std::complex<double>> z{std::polar(0.3, 2.0)};
    for (int l : {1, 2, 4, 6})
        for (double kappa : {1.0, 2.0})
            CHECK(std::abs(mollifier_factor_product(z, l, kappa) - mollifier_factor_expansion(z, l, kappa)) < 1e-15);
}

TEST_CASE("nu weights") {
    CHECK(nu({2, 1}) == doctest::Approx(0.5));
    for (int n = 1; n <= 4; ++n)
        for (int m = 0; m <= 8; ++m) CHECK(nu_n({m}, n) == doctest::Approx(std::pow(n, m) / std::tgamma(m + 1.0)));
    CHECK(nu_n({2, 1}, 3) == doctest::Approx(9.0 / 2 * 3));
    CHECK(nu_n_truncated({2, 1}, 2, 3) == doctest::Approx(nu_n({2, 1}, 2)));
    CHECK(nu_n_truncated({3, 2}, 2, 2) < nu_n({3, 2}, 2));
    CHECK(nu_n({}, 3) == 1);
}

TEST_CASE("prime-sum estimates") {
    CHECK(prime_sum_item1(3, table()).pass);
    CHECK(prime_sum_item1(16, table()).pass);
    auto j1 = MollifierConfig::make(2, 1, 1.2, 0.75, 0.9, 1000000);
    CHECK(prime_sum_item2(j1, 1, 1.5, table()).pass);
    CHECK(prime_sum_item3(j1, table()).pass);
    CHECK(prime_sum_item4(j1, 0, 4, table()).pass);
    CHECK(prime_sum_item5(j1, 1, table()).pass);
}

TEST_CASE("D constant") {
    auto d8 = d_constant_values(8, table());
    CHECK(d8[0] == doctest::Approx(0.416533).epsilon(1e-6));
    for (double v : d8) CHECK(v < 1);
    for (double v : d_constant_values(16, table())) CHECK(v < 1);
}

TEST_CASE("explicit remainder and the T0 bound") {
    auto d = MollifierConfig::desk(10000);
    CHECK(std::isfinite(explicit_remainder(34, d, table())));
    CHECK_THROWS_AS(explicit_remainder(2, d, table()), DomainError);
    auto fam = enumerate_family(10000, table());
    auto v = prime_character_values(fam[5], mollifier_prime_limit(d), table());
    auto t = check_InT0orNot(v, 1.0, d, table());
    if (t.in_T0) CHECK(t.holds);
}

TEST_CASE("degenerate interval scheme is rejected") {
    CHECK_THROWS_AS(MollifierConfig::make(2, 1, 2, 0.75, 0.9, 1000000), ConfigError);
}
