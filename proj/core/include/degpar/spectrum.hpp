#pragma once

#include "degpar/types.hpp"

#include <memory>
#include <string>
#include <vector>

namespace degpar {

/// One eigenpair of X'' + mu x^e X = 0, X(0) = X(1) = 0.
///
/// mu = ((e + 2)/2 * root)^2 where root is a positive zero of J_{1/(e+2)}.
struct SpatialEigenpair {
    double exponent = 0.0;
    int index = 1;
    double mu = 0.0;
    double root = 0.0;
    double amplitude = 1.0;
};

/// First `count` Dirichlet eigenpairs for the given degeneracy exponent (>= 0).
[[nodiscard]] std::vector<SpatialEigenpair> spatial_eigenvalues(double exponent, int count);

/// Closed-form eigenfunction
///   X(x) = A (2/(e+2))^nu mu^{nu/2} sqrt(x) J_nu(root * x^{(e+2)/2}),  nu = 1/(e+2).
///
/// With K the prefactor, q = (e+2)/2 and z = root x^q, the first derivative is
/// X' = K root q x^{q-1/2} J_{nu-1}(z); the second
/// derivative comes from differentiating the composite through Bessel's
/// equation for x >= 0.01 and from X'' = -mu x^e X below that.
class SpatialEigenfunction {
public:
    explicit SpatialEigenfunction(const SpatialEigenpair& pair);

    /// Throws DomainError for x outside [0, 1].
    [[nodiscard]] Jet operator()(double x) const;

    [[nodiscard]] const SpatialEigenpair& pair() const noexcept { return pair_; }
    [[nodiscard]] double mu() const noexcept { return pair_.mu; }
    [[nodiscard]] double exponent() const noexcept { return pair_.exponent; }

private:
    SpatialEigenpair pair_;
    double order_;
    double power_;   // (e + 2)/2
    double scale_;   // A (2/(e+2))^nu mu^{nu/2}
    double slope_at_zero_;
};

enum class EdgeCondition { Dirichlet, Neumann };

/// Conditions at x = 0 (left) and x = 1 (right).
struct BoundaryKind {
    EdgeCondition left = EdgeCondition::Dirichlet;
    EdgeCondition right = EdgeCondition::Dirichlet;

    friend bool operator==(const BoundaryKind&, const BoundaryKind&) = default;
};

/// "DD", "DN", "ND", "NN".
[[nodiscard]] std::string to_string(BoundaryKind bc);

/// Parses "D,N", "dirichlet,neumann", "DN" and similar; throws ValidationError.
[[nodiscard]] BoundaryKind parse_boundary_kind(const std::string& text);

/// Eigenfunction tabulated by the shooting integrator on a uniform grid.
struct ShootingProfile {
    double step = 0.0;
    std::vector<double> value;
    std::vector<double> slope;
};

/// One eigenpair from the shooting solver. The profile is normalized to
/// max |X| = 1 with a positive value just right of x = 0.
struct ShootingEigenpair {
    double exponent = 0.0;
    BoundaryKind bc{};
    int index = 1;
    double mu = 0.0;
    double endpoint_residual = 0.0;
    std::shared_ptr<const ShootingProfile> profile;
};

/// Integration step of the shooting solver.
inline constexpr double kShootingStep = 1e-4;

/// First `count` eigenvalues of X'' + mu x^e X = 0 under the given endpoint
/// conditions, found by RK4 shooting from x = 0 and bisection on the
/// right-endpoint functional. Searches sqrt(mu) up to (e+2)/2 (count+2) pi.
/// A zero eigenvalue (Neumann at both ends) is reported first.
[[nodiscard]] std::vector<ShootingEigenpair> shooting_eigenvalues(double exponent, BoundaryKind bc,
                                                                  int count);

/// Piecewise cubic Hermite interpolant of a shooting profile; the second
/// derivative is -mu x^e X.
class ShootingEigenfunction {
public:
    explicit ShootingEigenfunction(ShootingEigenpair pair);

    [[nodiscard]] Jet operator()(double x) const;

    [[nodiscard]] const ShootingEigenpair& pair() const noexcept { return pair_; }
    [[nodiscard]] double mu() const noexcept { return pair_.mu; }
    [[nodiscard]] double exponent() const noexcept { return pair_.exponent; }

private:
    ShootingEigenpair pair_;
};

}  // namespace degpar
