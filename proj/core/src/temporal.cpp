#include "degpar/temporal.hpp"

#include "degpar/errors.hpp"

#include <cmath>
#include <numbers>

namespace degpar {

namespace {

void require_exponent(double p) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
        throw ValidationError("degeneracy exponent must be finite and >= 0, got " + std::to_string(p));
    }
}

}  // namespace

double NonlocalCoefficient::magnitude() const noexcept { return std::hypot(re, im); }

void require_nonzero(const NonlocalCoefficient& a, const char* name) {
    if (!std::isfinite(a.re) || !std::isfinite(a.im)) {
        throw ValidationError(std::string(name) + " must be finite");
    }
    if (a.norm2() == 0.0) {
        throw ValidationError(std::string(name) + " must be nonzero (re^2 + im^2 != 0)");
    }
}

std::string to_string(AngleBranch branch) {
    return branch == AngleBranch::TwoArgument ? "two-argument" : "literal";
}

double coefficient_angle(const NonlocalCoefficient& a, AngleBranch branch) {
    if (branch == AngleBranch::TwoArgument) return std::atan2(a.im, a.re);
    return std::atan(a.im / a.re);
}

bool TemporalMode::branch_matches_literal() const noexcept {
    return std::fabs(angle - literal_angle) <= 1e-15;
}

TemporalMode lambda_parameters(const NonlocalCoefficient& alpha, double k, double mu_lp, int s,
                               AngleBranch branch) {
    require_nonzero(alpha, "alpha");
    require_exponent(k);
    if (s < 0) throw ValidationError("shift s must be >= 0");
    if (!std::isfinite(mu_lp)) throw ValidationError("mu_lp must be finite");

    TemporalMode mode;
    mode.alpha = alpha;
    mode.k = k;
    mode.mu_lp = mu_lp;
    mode.s = s;
    mode.branch = branch;
    mode.angle = coefficient_angle(alpha, branch);
    mode.literal_angle = coefficient_angle(alpha, AngleBranch::Literal);
    mode.lambda_re = -mu_lp + 0.5 * (k + 1.0) * std::log(alpha.norm2());
    mode.lambda_im = (k + 1.0) * (mode.angle + s * std::numbers::pi);
    return mode;
}

NonlocalExponential::NonlocalExponential(const NonlocalCoefficient& a, double exponent, int s,
                                         double amplitude, AngleBranch branch)
    : a_(a), exponent_(exponent), s_(s), amplitude_(amplitude) {
    require_nonzero(a, "nonlocal coefficient");
    require_exponent(exponent);
    if (s < 0) throw ValidationError("shift s must be >= 0");
    rate_ = {-std::log(a.magnitude()), -(coefficient_angle(a, branch) + s * std::numbers::pi)};
}

ComplexJet NonlocalExponential::operator()(double z) const {
    if (!(z >= 0.0 && z <= 1.0)) {
        throw DomainError("nonlocal exponential evaluated outside [0, 1]: " + std::to_string(z));
    }
    const double p = exponent_;
    const double zp = std::pow(z, p);
    const ComplexValue e = amplitude_ * std::exp(rate_ * (zp * z));
    const ComplexValue g = rate_ * (p + 1.0);
    ComplexJet out;
    out.value = e;
    out.d1 = g * zp * e;
    const double zpm1 = (p == 1.0) ? 1.0 : std::pow(z, p - 1.0);
    out.d2 = (g * p * zpm1 + (g * zp) * (g * zp)) * e;
    return out;
}

NonlocalExponential temporal_eigenfunction(const TemporalMode& mode) {
    return NonlocalExponential(mode.alpha, mode.k, mode.s, mode.amplitude, mode.branch);
}

ExistenceResiduals existence_system_check(const TemporalMode& mode) {
    const double n2 = mode.alpha.norm2();
    const double kp1 = mode.k + 1.0;
    const double decay = std::exp(-(mode.lambda_re + mode.mu_lp) / kp1);
    const double phase = mode.lambda_im / kp1;
    return {std::fabs(mode.alpha.re / n2 - decay * std::cos(phase)),
            std::fabs(mode.alpha.im / n2 - decay * std::sin(phase))};
}

double nonlocal_factor_defect(const NonlocalCoefficient& a, double exponent, int s, AngleBranch branch) {
    const NonlocalExponential f(a, exponent, s, 1.0, branch);
    return std::abs(f(0.0).value - a.value() * f(1.0).value);
}

std::vector<int> admissible_shifts(const NonlocalCoefficient& a, double exponent, int s_max,
                                   AngleBranch branch) {
    require_nonzero(a, "nonlocal coefficient");
    std::vector<int> out;
    for (int s = 0; s <= s_max; ++s) {
        if (nonlocal_factor_defect(a, exponent, s, branch) < kAdmissibilityTolerance) out.push_back(s);
    }
    return out;
}

}  // namespace degpar
