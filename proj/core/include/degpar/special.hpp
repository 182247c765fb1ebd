#pragma once

#include <span>
#include <vector>

namespace degpar {

/// Order of a first-kind Bessel function, restricted to (0, 1].
class BesselOrder {
public:
    /// Throws DomainError unless 0 < nu <= 1.
    explicit BesselOrder(double nu);

    [[nodiscard]] double value() const noexcept { return nu_; }

private:
    double nu_;
};

/// J_nu(x) for x >= 0, absolute error below 1e-12 for x <= 100.
[[nodiscard]] double bessel_j(BesselOrder nu, double x);

/// dJ_nu/dx for x > 0 via J'_nu = J_{nu-1} - (nu/x) J_nu.
[[nodiscard]] double bessel_j_deriv(BesselOrder nu, double x);

/// Ordered positive zeros of J_nu. Immutable after construction.
class RootTable {
public:
    RootTable(double nu, std::vector<double> roots, double tolerance);

    [[nodiscard]] double nu() const noexcept { return nu_; }
    [[nodiscard]] std::span<const double> roots() const noexcept { return roots_; }
    [[nodiscard]] double tolerance() const noexcept { return tolerance_; }
    [[nodiscard]] std::size_t size() const noexcept { return roots_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return roots_.at(i); }

private:
    double nu_;
    std::vector<double> roots_;
    double tolerance_;
};

/// First `count` positive zeros of J_nu.
///
/// Zeros are bracketed by a sign-change scan with step pi/8 starting below
/// the first zero, bisected to width 1e-10 and polished by Newton steps.
/// Throws NumericalFailure if `count` zeros cannot be isolated below the
/// search horizon or a refined zero misses |J_nu(r)| <= 1e-12.
[[nodiscard]] RootTable bessel_roots(BesselOrder nu, int count);

namespace detail {

/// J_order(x) for order in (-1, 1]. Requires x > 0 when order < 0.
[[nodiscard]] double cyl_j(double order, double x);

/// Ascending power series, summed in long double.
[[nodiscard]] double cyl_j_series(double order, double x);

/// Hankel large-argument expansion, truncated at its smallest term.
/// `smallest_term` receives the magnitude of that term relative to the
/// leading one.
[[nodiscard]] double cyl_j_asymptotic(double order, double x, double* smallest_term = nullptr);

/// Smallest x at which the asymptotic branch is used for this order.
[[nodiscard]] double asymptotic_switch(double order);

/// Lower bound sqrt((nu+1)(nu+5)) on the first positive zero of J_nu.
[[nodiscard]] double first_zero_lower_bound(double nu);

}  // namespace detail

}  // namespace degpar
