#include "cubic/lfunction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

#include "cubic/errors.hpp"

namespace cubic {

namespace {

constexpr double kPi = std::numbers::pi;

std::mutex g_elements_mu;
std::vector<EisensteinInt> g_elements;
i64 g_elements_bound = 0;

std::vector<EisensteinInt> scan_primary(i64 B) {
    std::vector<std::pair<i64, EisensteinInt>> v;
    const i64 bmax = static_cast<i64>(isqrt(static_cast<u64>(4 * B / 3)));
    for (i64 b = -(bmax / 3) * 3; b <= bmax; b += 3) {
        i64 s = static_cast<i64>(isqrt(static_cast<u64>(4 * B - 3 * b * b)));
        i64 lo = static_cast<i64>(floor_div(b - s + 1, 2)), hi = static_cast<i64>(floor_div(b + s, 2));
        for (i64 a = lo + static_cast<i64>(mod_floor(1 - lo, 3)); a <= hi; a += 3) {
            EisensteinInt z{a, b};
            v.emplace_back(norm(z), z);
        }
    }
    std::sort(v.begin(), v.end());
    std::vector<EisensteinInt> out;
    out.reserve(v.size());
    for (auto& [n, z] : v) out.push_back(z);
    return out;
}

struct SmoothedSum {
    std::complex<double> value;
    i64 terms = 0;
    double tail = 0;
};

// sum over ideals a = (1 - omega)^r b of chi(b) N(a)^{-1/2} V(N(a) / Yp); chi given per primary b.
SmoothedSum smoothed_sum(const std::vector<EisensteinInt>& elems, const std::vector<std::complex<double>>& chis,
                         double Yp, double eps) {
    SmoothedSum s;
    const double B = afe_truncation(Yp, eps);
    s.tail = afe_tail_bound(B, Yp);
    for (size_t i = 0; i < elems.size(); ++i) {
        double N = static_cast<double>(norm(elems[i]));
        if (N > B) break;
        if (chis[i] == 0.0) continue;
        std::complex<double> acc = 0;
        for (double Na = N; Na <= B; Na *= 3) {
            acc += weight_V(Na / Yp) / std::sqrt(Na);
            ++s.terms;
        }
        s.value += chis[i] * acc;
    }
    return s;
}

}  // namespace

double weight_V(double y) {
    if (!(y > 0)) throw DomainError("weight_V needs y > 0");
    return std::erfc(std::sqrt(2 * kPi * y));
}

std::complex<double> lgamma_complex(std::complex<double> z) {
    static const std::array<double, 9> c = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                            771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                            -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // reflection
        return std::log(kPi / std::sin(kPi * z)) - lgamma_complex(1.0 - z);
    }
    z -= 1.0;
    std::complex<double> x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
    std::complex<double> t = z + 7.5;
    return 0.5 * std::log(2 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double weight_V_contour(double y, double c, double T, double h) {
    if (!(y > 0)) throw DomainError("weight_V needs y > 0");
    const double lg_half = 0.5 * std::log(kPi);
    const double l2piy = std::log(2 * kPi * y);
    double acc = 0;
    const i64 n = static_cast<i64>(std::ceil(T / h));
    for (i64 k = -n; k <= n; ++k) {
        std::complex<double> u(c, k * h);
        std::complex<double> v = std::exp(-u * l2piy + lgamma_complex(0.5 + u) - lg_half) / u;
        acc += v.real();
    }
    // du = i dt, so (1 / 2 pi i) du = dt / 2 pi
    return acc * h / (2 * kPi);
}

double afe_tail_bound(double B, double Yp) {
    return std::sqrt(B) * std::exp(-2 * kPi * B / Yp) * (1 + Yp / (2 * kPi * B));
}

double afe_truncation(double Yp, double eps) {
    double B = std::max(Yp, 1.0);
    while (afe_tail_bound(B, Yp) > eps) B *= 1.05;
    return B;
}

std::vector<EisensteinInt> primary_elements_upto(i64 B) {
    std::lock_guard lock(g_elements_mu);
    if (B > g_elements_bound) {
        g_elements = scan_primary(std::max(B, 2 * g_elements_bound));
        g_elements_bound = std::max(B, 2 * g_elements_bound);
    }
    auto last = std::upper_bound(g_elements.begin(), g_elements.end(), B,
                                 [](i64 v, const EisensteinInt& z) { return v < norm(z); });
    return {g_elements.begin(), last};
}

LValueRecord central_value_absolute(const FamilyElement& c, double Yprime, double tol, const PrimeTable& table,
                                    GaussCache* cache) {
    if (!(Yprime > 0) || !(tol > 0)) throw DomainError("central_value needs Y > 0 and tol > 0");
    LValueRecord rec;
    rec.c = c;
    rec.Yprime = Yprime;
    rec.Y = Yprime / std::sqrt(3.0 * c.conductor_norm);
    const double n3 = 3.0 * c.conductor_norm;
    const double Ydual = n3 / Yprime;
    const double B = std::max(afe_truncation(Yprime, tol / 2), afe_truncation(Ydual, tol / 2));
    auto elems = primary_elements_upto(static_cast<i64>(B) + 1);
    FamilyCharacter chi_c(c);
    std::vector<std::complex<double>> chis(elems.size()), chis_bar(elems.size());
    for (size_t i = 0; i < elems.size(); ++i) {
        auto v = chi_c(elems[i]);
        chis[i] = v.value();
        chis_bar[i] = v.conj().value();
    }
    rec.root_number = root_number(c, table, cache);
    const std::complex<double> eps = rec.root_number / std::sqrt(static_cast<double>(c.conductor_norm));
    SmoothedSum p = smoothed_sum(elems, chis, Yprime, tol / 2);
    SmoothedSum d = smoothed_sum(elems, chis_bar, Ydual, tol / 2);
    rec.value = p.value + eps * d.value;
    rec.principal_terms = p.terms;
    rec.dual_terms = d.terms;
    rec.truncation_error_bound = p.tail + d.tail;
    return rec;
}

LValueRecord central_value(const FamilyElement& c, double Y, double tol, const PrimeTable& table,
                           GaussCache* cache) {
    if (!(Y > 0)) throw DomainError("central_value needs Y > 0");
    return central_value_absolute(c, Y * std::sqrt(3.0 * c.conductor_norm), tol, table, cache);
}

double grh_log_bound(const FamilyElement& c, double x, double lambda, const PrimeTable& table) {
    if (x < 3) throw DomainError("grh_log_bound needs x >= 3");
    const double lx = std::log(x);
    const double sigma = 0.5 + lambda / lx;
    FamilyCharacter chi_c(c);
    double s = 0;
    auto add_prime = [&](double Np, CubicSymbolValue v) {
        std::complex<double> cv = v.value(), pw = cv;
        double Nm = Np;
        for (int m = 1; Nm <= x; ++m, Nm *= Np, pw *= cv)
            s += (pw / (m * std::pow(Nm, sigma))).real() * std::log(x / Nm) / lx;
    };
    add_prime(3.0, CubicSymbolValue{0});  // chi_c(1 - omega) = 1 on the family
    for (const auto& p : table.range(0, static_cast<i64>(std::floor(x)))) add_prime(static_cast<double>(p.norm), chi_c(p.value()));
    s += (1 + lambda) / (2 * lx) * std::log(3.0 * c.conductor_norm * sigma * sigma / (4 * kPi * kPi));
    s += 2 * std::exp(-lambda) / (std::sqrt(x) * lx * lx * sigma * sigma);
    return s;
}

double lambda0() {
    double lo = 0, hi = 1;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (std::exp(-mid) > mid + mid * mid / 2 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace cubic
