#include "degpar/special.hpp"

#include "degpar/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace degpar {

namespace {

constexpr double kRootTolerance = 1e-12;
constexpr double kBisectionWidth = 1e-10;

// Below this the series is always used, above kAsymptoticAlways the expansion
// is. In between the expansion is accepted once its smallest term falls below
// kAsymptoticTermLimit, which is monotone in x and therefore defines a
// per-order switch point.
constexpr double kSeriesAlways = 12.0;
constexpr double kAsymptoticAlways = 20.0;
constexpr double kAsymptoticTermLimit = 1e-15;

}  // namespace

BesselOrder::BesselOrder(double nu) : nu_(nu) {
    if (!(nu > 0.0 && nu <= 1.0)) {
        throw DomainError("Bessel order must lie in (0, 1], got " + std::to_string(nu));
    }
}

RootTable::RootTable(double nu, std::vector<double> roots, double tolerance)
    : nu_(nu), roots_(std::move(roots)), tolerance_(tolerance) {}

namespace detail {

double cyl_j_series(double order, double x) {
    if (x == 0.0) {
        if (order == 0.0) return 1.0;
        if (order > 0.0) return 0.0;
        throw DomainError("J of negative order is singular at x = 0");
    }
    const long double nu = order;
    const long double half = static_cast<long double>(x) / 2.0L;
    const long double z2 = -half * half;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < 400; ++k) {
        term *= z2 / (static_cast<long double>(k) * (static_cast<long double>(k) + nu));
        sum += term;
        if (k > half && std::fabs(term) < 1e-21L) break;
    }
    const long double prefactor = std::pow(half, nu) / std::tgamma(nu + 1.0L);
    return static_cast<double>(prefactor * sum);
}

double cyl_j_asymptotic(double order, double x, double* smallest_term) {
    const long double mu = 4.0L * order * order;
    const long double lx = x;
    long double a = 1.0L;
    long double best = 1.0L;
    long double p = 1.0L;
    long double q = 0.0L;
    for (int k = 1; k < 200; ++k) {
        const long double odd = 2.0L * k - 1.0L;
        const long double next = a * (mu - odd * odd) / (static_cast<long double>(k) * 8.0L * lx);
        if (std::fabs(next) > best) break;
        a = next;
        best = std::fabs(a);
        const long double signed_term = ((k / 2) % 2 == 0) ? a : -a;
        if (k % 2 == 1) {
            q += signed_term;
        } else {
            p += signed_term;
        }
        if (best < 1e-22L) break;
    }
    if (smallest_term != nullptr) *smallest_term = static_cast<double>(best);
    const long double phase = lx - (0.5L * order + 0.25L) * std::numbers::pi_v<long double>;
    const long double amplitude = std::sqrt(2.0L / (std::numbers::pi_v<long double> * lx));
    return static_cast<double>(amplitude * (p * std::cos(phase) - q * std::sin(phase)));
}

double cyl_j(double order, double x) {
    if (x < kSeriesAlways) return cyl_j_series(order, x);
    if (x > kAsymptoticAlways) return cyl_j_asymptotic(order, x);
    double smallest = 0.0;
    const double asymptotic = cyl_j_asymptotic(order, x, &smallest);
    return smallest <= kAsymptoticTermLimit ? asymptotic : cyl_j_series(order, x);
}

double asymptotic_switch(double order) {
    auto accepted = [order](double x) {
        double smallest = 0.0;
        (void)cyl_j_asymptotic(order, x, &smallest);
        return smallest <= kAsymptoticTermLimit;
    };
    if (accepted(kSeriesAlways)) return kSeriesAlways;
    double lo = kSeriesAlways;
    double hi = kAsymptoticAlways;
    if (!accepted(hi)) return hi;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (accepted(mid) ? hi : lo) = mid;
    }
    return hi;
}

double first_zero_lower_bound(double nu) { return std::sqrt((nu + 1.0) * (nu + 5.0)); }

}  // namespace detail

double bessel_j(BesselOrder nu, double x) {
    if (!(x >= 0.0)) {
        throw DomainError("bessel_j requires x >= 0, got " + std::to_string(x));
    }
    return detail::cyl_j(nu.value(), x);
}

double bessel_j_deriv(BesselOrder nu, double x) {
    if (!(x > 0.0)) {
        throw DomainError("bessel_j_deriv requires x > 0, got " + std::to_string(x));
    }
    const double v = nu.value();
    return detail::cyl_j(v - 1.0, x) - (v / x) * detail::cyl_j(v, x);
}

RootTable bessel_roots(BesselOrder nu, int count) {
    if (count < 1) {
        throw ValidationError("bessel_roots requires count >= 1");
    }
    constexpr double pi = std::numbers::pi;
    const double step = pi / 8.0;
    const double start = detail::first_zero_lower_bound(nu.value());
    const double horizon = start + (count + 2) * pi;

    std::vector<double> roots;
    roots.reserve(static_cast<std::size_t>(count));

    double a = start;
    double fa = bessel_j(nu, a);
    while (static_cast<int>(roots.size()) < count && a < horizon) {
        const double b = a + step;
        const double fb = bessel_j(nu, b);
        if (fb == 0.0) {
            roots.push_back(b);
        } else if (fa * fb < 0.0) {
            double lo = a;
            double hi = b;
            double flo = fa;
            while (hi - lo > kBisectionWidth) {
                const double mid = 0.5 * (lo + hi);
                const double fmid = bessel_j(nu, mid);
                if (fmid == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fmid < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fmid;
                } else {
                    hi = mid;
                }
            }
            double r = 0.5 * (lo + hi);
            for (int it = 0; it < 8; ++it) {
                const double f = bessel_j(nu, r);
                if (f == 0.0) break;
                const double next = r - f / bessel_j_deriv(nu, r);
                if (next < lo - kBisectionWidth || next > hi + kBisectionWidth) break;
                const double delta = std::fabs(next - r);
                r = next;
                if (delta <= 1e-16 * r) break;
            }
            if (std::fabs(bessel_j(nu, r)) > kRootTolerance) {
                throw NumericalFailure("zero of J_" + std::to_string(nu.value()) + " near " +
                                       std::to_string(r) + " did not refine below tolerance");
            }
            roots.push_back(r);
        }
        a = b;
        fa = fb;
    }
    if (static_cast<int>(roots.size()) < count) {
        throw NumericalFailure("found only " + std::to_string(roots.size()) + " of " +
                               std::to_string(count) + " zeros of J_" + std::to_string(nu.value()) +
                               " below x = " + std::to_string(horizon));
    }
    // A skipped zero would show up as a gap near 2*pi.
    for (std::size_t i = 1; i < roots.size(); ++i) {
        const double gap = roots[i] - roots[i - 1];
        if (gap < 0.5 * pi || gap > 1.5 * pi) {
            throw NumericalFailure("zero spacing check failed between roots " + std::to_string(i) +
                                   " and " + std::to_string(i + 1));
        }
    }
    return RootTable(nu.value(), std::move(roots), kRootTolerance);
}

}  // namespace degpar
