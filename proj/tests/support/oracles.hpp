#pragma once

// Test-side reference computations. None of these call into degpar.

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using mp50 = boost::multiprecision::cpp_bin_float_50;

/// J_order(x) from the ascending series in 50-digit arithmetic.
/// Valid for order > -1 and moderate x (cancellation costs about x / 2.3
/// digits, so x <= 60 keeps more than 25 good digits).
inline double bessel_j_mp(double order, double x) {
    if (x == 0.0) return order == 0.0 ? 1.0 : 0.0;
    const mp50 half = mp50(x) / 2;
    const mp50 q = -half * half;
    mp50 term = pow(half, mp50(order)) / boost::math::tgamma(mp50(order) + 1);
    mp50 sum = term;
    for (int k = 1; k < 400; ++k) {
        term *= q / (mp50(k) * (mp50(k) + mp50(order)));
        sum += term;
        if (abs(term) < mp50("1e-45") && k > half) break;
    }
    return static_cast<double>(sum);
}

/// Zeros of f on (a, b): scan with step dz, then bisect every sign change
/// down to `tol`.
inline std::vector<double> scan_zeros(const std::function<double(double)>& f, double a, double b, double dz,
                                      std::size_t count, double tol = 1e-13) {
    std::vector<double> out;
    double x0 = a;
    double f0 = f(x0);
    while (x0 < b && out.size() < count) {
        const double x1 = x0 + dz;
        const double f1 = f(x1);
        if (f0 == 0.0) {
            out.push_back(x0);
        } else if (f0 * f1 < 0.0) {
            double lo = x0;
            double hi = x1;
            double flo = f0;
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            out.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    return out;
}

/// Classical RK4 for a complex scalar ODE y' = f(t, y) from t0 to t1 in
/// `steps` steps; returns the trajectory at every step (steps + 1 values).
inline std::vector<std::complex<double>> rk4_scalar(
    const std::function<std::complex<double>(double, std::complex<double>)>& f, double t0, double t1,
    std::complex<double> y0, int steps) {
    std::vector<std::complex<double>> out{y0};
    const double h = (t1 - t0) / steps;
    std::complex<double> y = y0;
    for (int i = 0; i < steps; ++i) {
        const double t = t0 + i * h;
        const auto k1 = f(t, y);
        const auto k2 = f(t + h / 2, y + h / 2 * k1);
        const auto k3 = f(t + h / 2, y + h / 2 * k2);
        const auto k4 = f(t + h, y + h * k3);
        y += h / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        out.push_back(y);
    }
    return out;
}

/// RK4 for X'' = -mu x^e X from x = 0 with X(0) = v0, X'(0) = d0.
/// Returns {X, X'} at x = 1 and X at every step.
struct SecondOrderRun {
    std::vector<double> value;
    std::vector<double> slope;
};

inline SecondOrderRun rk4_weighted(double mu, double e, double v0, double d0, int steps) {
    SecondOrderRun out{{v0}, {d0}};
    const double h = 1.0 / steps;
    double v = v0;
    double d = d0;
    auto acc = [&](double x, double val) { return -mu * (x > 0.0 ? std::pow(x, e) : (e == 0.0 ? 1.0 : 0.0)) * val; };
    for (int i = 0; i < steps; ++i) {
        const double x = i * h;
        const double k1v = d;
        const double k1d = acc(x, v);
        const double k2v = d + h / 2 * k1d;
        const double k2d = acc(x + h / 2, v + h / 2 * k1v);
        const double k3v = d + h / 2 * k2d;
        const double k3d = acc(x + h / 2, v + h / 2 * k2v);
        const double k4v = d + h * k3d;
        const double k4d = acc(x + h, v + h * k3v);
        v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
        d += h / 6 * (k1d + 2 * k2d + 2 * k3d + k4d);
        out.value.push_back(v);
        out.slope.push_back(d);
    }
    return out;
}

/// Composite Simpson on [a, b] with an even panel count.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return sum * h / 3.0;
}

}  // namespace oracle
