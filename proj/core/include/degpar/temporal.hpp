#pragma once

#include "degpar/types.hpp"

#include <string>
#include <vector>

namespace degpar {

/// Complex coefficient of a nonlocal condition u(., 0) = a u(., 1).
struct NonlocalCoefficient {
    double re = 1.0;
    double im = 0.0;

    [[nodiscard]] double norm2() const noexcept { return re * re + im * im; }
    [[nodiscard]] double magnitude() const noexcept;
    [[nodiscard]] ComplexValue value() const noexcept { return {re, im}; }

    friend bool operator==(const NonlocalCoefficient&, const NonlocalCoefficient&) = default;
};

/// Throws ValidationError when re^2 + im^2 == 0 or a component is not finite.
void require_nonzero(const NonlocalCoefficient& a, const char* name);

/// How the phase of a nonlocal coefficient is chosen.
enum class AngleBranch {
    /// atan2(im, re) in (-pi, pi]; agrees with atan(im/re) for re > 0.
    TwoArgument,
    /// atan(im/re), as the closed-form formulas are printed; +-pi/2 when re = 0.
    Literal,
};

[[nodiscard]] std::string to_string(AngleBranch branch);
[[nodiscard]] double coefficient_angle(const NonlocalCoefficient& a, AngleBranch branch);

/// One temporal mode: lambda from the nonlocal existence system and the data
/// needed to evaluate T_s.
struct TemporalMode {
    NonlocalCoefficient alpha;
    double k = 1.0;
    double mu_lp = 0.0;
    int s = 0;
    double lambda_re = 0.0;
    double lambda_im = 0.0;
    double amplitude = 1.0;
    AngleBranch branch = AngleBranch::TwoArgument;
    /// Angle actually used for lambda_im and T.
    double angle = 0.0;
    /// atan(alpha_im / alpha_re); differs from `angle` when alpha_re < 0.
    double literal_angle = 0.0;
    [[nodiscard]] bool branch_matches_literal() const noexcept;
    [[nodiscard]] ComplexValue lambda() const noexcept { return {lambda_re, lambda_im}; }
};

/// lambda_re = -mu_lp + (k+1)/2 ln|alpha|^2,  lambda_im = (k+1)(angle + s pi).
[[nodiscard]] TemporalMode lambda_parameters(const NonlocalCoefficient& alpha, double k, double mu_lp,
                                             int s, AngleBranch branch = AngleBranch::TwoArgument);

/// F(z) = C exp((-ln|a| - i(angle + s pi)) z^{p+1}) on [0, 1].
///
/// This is the temporal factor T_s(t) (p = k, a = alpha) and, for the
/// two-nonlocal-condition problem, also the y factor (p = m, a = beta).
class NonlocalExponential {
public:
    NonlocalExponential(const NonlocalCoefficient& a, double exponent, int s, double amplitude = 1.0,
                        AngleBranch branch = AngleBranch::TwoArgument);

    /// Throws DomainError outside [0, 1].
    [[nodiscard]] ComplexJet operator()(double z) const;

    /// The complex rate -ln|a| - i(angle + s pi).
    [[nodiscard]] ComplexValue rate() const noexcept { return rate_; }
    [[nodiscard]] double exponent() const noexcept { return exponent_; }
    [[nodiscard]] int shift() const noexcept { return s_; }
    [[nodiscard]] const NonlocalCoefficient& coefficient() const noexcept { return a_; }

private:
    NonlocalCoefficient a_;
    double exponent_;
    int s_;
    double amplitude_;
    ComplexValue rate_;
};

[[nodiscard]] NonlocalExponential temporal_eigenfunction(const TemporalMode& mode);

/// Defects of the two real equations
///   re/|a|^2 = e^{-(l1+mu)/(k+1)} cos(l2/(k+1)),
///   im/|a|^2 = e^{-(l1+mu)/(k+1)} sin(l2/(k+1)).
struct ExistenceResiduals {
    double cosine = 0.0;
    double sine = 0.0;
};

[[nodiscard]] ExistenceResiduals existence_system_check(const TemporalMode& mode);

/// |F(0) - a F(1)| for the exponential factor with shift s.
[[nodiscard]] double nonlocal_factor_defect(const NonlocalCoefficient& a, double exponent, int s,
                                            AngleBranch branch = AngleBranch::TwoArgument);

/// Shifts s in [0, s_max] whose factor satisfies F(0) = a F(1) to 1e-10.
[[nodiscard]] std::vector<int> admissible_shifts(const NonlocalCoefficient& a, double exponent, int s_max,
                                                 AngleBranch branch = AngleBranch::TwoArgument);

/// Tolerance used by admissible_shifts.
inline constexpr double kAdmissibilityTolerance = 1e-10;

}  // namespace degpar
