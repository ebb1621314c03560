#include "doctest.h"

#include <cmath>

#include "cubic/errors.hpp"
#include "cubic/moments.hpp"

using namespace cubic;

namespace {
const PrimeTable& table() {
    static PrimeTable t(1000000);
    return t;
}
}  // namespace

TEST_CASE("c0") {
    const double pre = c0_prefactor();
    CHECK(pre == doctest::Approx(0.04271007725337014).epsilon(1e-14));
    const double coarse = euler_constant_c0(1e-3, table()), fine = euler_constant_c0(1e-5, table());
    CHECK(std::abs(coarse / fine - 1) <= 1e-3 + 1e-5);
    CHECK(fine < pre);
    CHECK(fine == doctest::Approx(pre * 0.6953866872).epsilon(1e-8));
    CHECK_THROWS_AS(euler_constant_c0(1e-9, table()), SieveCapacity);
}

TEST_CASE("b_m series decreases") {
    for (double N : {19.0, 25.0, 31.0})
        for (double f : {0.05, 0.3, 0.8}) {
            auto b = b_series(f, N, 1e-14);
            for (size_t m = 0; m + 1 < b.size(); ++m) CHECK(b[m + 1] < b[m]);
            double alt = 0;
            for (size_t m = 0; m < b.size(); ++m) alt += (m % 2 ? -1.0 : 1.0) * b[m];
            CHECK(alt < b[0]);
            CHECK(alt > b[0] - b[1]);
        }
}

TEST_CASE("C_X sandwich") {
    for (i64 X : {10000, 100000}) {
        auto e = euler_constants(MollifierConfig::desk(X), 1e-5, table());
        CHECK(e.sandwich());
        CHECK(e.CX_printed > e.c0);
    }
    auto p = euler_constants(MollifierConfig::paper(10000), 1e-5, table());
    CHECK(p.CX == doctest::Approx(p.c1));
}

TEST_CASE("first moment") {
    auto d = MollifierConfig::desk(10000);
    auto a = first_mollified_moment(10000, d, 1e-8, table(), 1);
    auto b = first_mollified_moment(10000, d, 1e-8, table(), 4);
    CHECK(a.moment_value == b.moment_value);
    CHECK(a.second_moment == b.second_moment);
    CHECK(a.family_size == 1586);
    CHECK(a.moment_value.real() > 0);
    CHECK(std::abs(a.moment_value.imag()) <= 1e-6 * (1 + std::abs(a.moment_value.real())));
    auto plain = first_mollified_moment(10000, MollifierConfig::paper(10000), 1e-8, table(), 2);
    for (const auto& r : plain.rows) CHECK(r.M == std::complex<double>(1));
    CHECK(plain.moment_value.real() > 0);
    auto big = first_mollified_moment(100000, MollifierConfig::desk(100000), 1e-8, table(), 8);
    CHECK(big.ratio > 0.2);
    CHECK(big.ratio < 5);
}

TEST_CASE("AFE split") {
    auto s = afe_term_split(10000, {EisensteinInt{1, 0}, 0}, 1e-8, table(), 4);
    CHECK(s.S1 == doctest::Approx(s.S1_oracle).epsilon(1e-12));
    CHECK(std::abs(s.S1 + s.S2 + s.S3 - s.direct) < 1e-6);
    CHECK(s.S1 > std::abs(s.S2));
    CHECK(s.S1 > std::abs(s.S3));
    CHECK(std::abs(s.S2) / std::sqrt(1e4) <= 10);
    auto tiny = afe_term_split(1, {EisensteinInt{1, 0}, 0}, 1e-8, table());
    CHECK(tiny.family_size == 0);
    CHECK(tiny.S1 == 0);
    CHECK(tiny.S2 == std::complex<double>(0));
    auto twisted = afe_term_split(3000, {EisensteinInt{-2, 0}, 0}, 1e-8, table(), 4);
    CHECK(std::isfinite(twisted.S1));
}

TEST_CASE("nonvanishing") {
    auto empty = nonvanishing_report(1, 1e-8, table());
    CHECK(empty.count_nonzero == 0);
    CHECK(empty.count_below_threshold == 0);
    auto m = first_mollified_moment(10000, MollifierConfig::desk(10000), 1e-8, table(), 4);
    auto r = nonvanishing_report(m, 1e-8);
    CHECK(r.count_nonzero + r.count_below_threshold == m.family_size);
    CHECK(r.bound_loglog_reciprocal == 101.3);
    CHECK(r.bound_prefactor == doctest::Approx(3 / std::pow(std::sqrt(3.0) - 1, 2)));
    CHECK(r.exceeds_bound);
    CHECK(r.empirical_proportion <= 1);
}

TEST_CASE("paper constants") {
    auto c = reproduce_paper_constants();
    CHECK(c.R2 == doctest::Approx(2.8043085602e42).epsilon(1e-10));
    CHECK(c.S_k == doctest::Approx(5.3316663123e11).epsilon(1e-11));
    CHECK(c.loglog_bound == doctest::Approx(101.248586291).epsilon(1e-9));
    CHECK(c.combined_constant == doctest::Approx(6.5837089699e17).epsilon(1e-10));
    CHECK(c.R1_printed_in_theta_interval);
    CHECK(S_k(2, 1) == doctest::Approx(4 * 625 * 24 * std::exp(16.0)));
}
