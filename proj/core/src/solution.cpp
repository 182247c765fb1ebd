#include "degpar/solution.hpp"

#include "degpar/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace degpar {

namespace {

constexpr EdgeCondition D = EdgeCondition::Dirichlet;
constexpr EdgeCondition N = EdgeCondition::Neumann;

void require_cube(double x, double y, double t) {
    auto in = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in(x) || !in(y) || !in(t)) {
        throw DomainError("point (" + std::to_string(x) + ", " + std::to_string(y) + ", " +
                          std::to_string(t) + ") lies outside the unit cube");
    }
}

void require_exponent(double v, const char* name, bool allow_zero) {
    const bool ok = std::isfinite(v) && (allow_zero ? v >= 0.0 : v > 0.0);
    if (!ok) {
        throw ValidationError(std::string(name) + (allow_zero ? " must be >= 0" : " must be > 0") +
                              ", got " + std::to_string(v));
    }
}

std::vector<ComplexJet> evaluate_axis(const AxisFactor& f, std::span<const double> zs) {
    std::vector<ComplexJet> out;
    out.reserve(zs.size());
    for (double z : zs) out.push_back(evaluate_factor(f, z));
    return out;
}

}  // namespace

std::string to_string(Variant v) {
    static constexpr std::array<const char*, 10> names = {"Problem1", "P2", "P3", "P4", "P5",
                                                          "P6",       "P7", "P8", "P9", "ProblemA"};
    return names[static_cast<std::size_t>(v)];
}

Variant parse_variant(const std::string& text) {
    std::string s;
    for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s.starts_with("problem")) s = s.substr(7);
    if (s == "1" || s == "p1") return Variant::Problem1;
    if (s == "a") return Variant::ProblemA;
    if (s.size() == 2 && s[0] == 'p' && s[1] >= '2' && s[1] <= '9') {
        return static_cast<Variant>(s[1] - '1');
    }
    throw ValidationError("unknown problem variant '" + text + "'");
}

bool is_problem1_family(Variant v) noexcept { return v != Variant::ProblemA; }

AxisConditions axis_conditions(Variant v) {
    switch (v) {
        case Variant::Problem1: return {{D, D}, {D, D}};
        case Variant::P2: return {{D, N}, {N, D}};
        case Variant::P3: return {{N, D}, {D, N}};
        case Variant::P4: return {{D, D}, {N, N}};
        case Variant::P5: return {{N, N}, {D, D}};
        case Variant::P6: return {{D, D}, {N, D}};
        case Variant::P7: return {{N, D}, {D, D}};
        case Variant::P8: return {{D, N}, {D, D}};
        case Variant::P9: return {{D, D}, {D, N}};
        case Variant::ProblemA: break;
    }
    throw ValidationError("ProblemA has no y eigenproblem");
}

void ProblemParams::validate() const {
    require_exponent(n, "n", allow_zero_exponents);
    require_exponent(m, "m", allow_zero_exponents);
    require_exponent(k, "k", allow_zero_exponents);
    if (is_problem1_family(variant)) {
        require_nonzero(alpha, "alpha");
    } else {
        require_nonzero(beta, "beta");
        require_nonzero(gamma, "gamma");
    }
}

ComplexJet evaluate_factor(const AxisFactor& factor, double z) {
    return std::visit(
        [z](const auto& f) -> ComplexJet {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, ConstantFactor>) {
                if (!(z >= 0.0 && z <= 1.0)) throw DomainError("factor evaluated outside [0, 1]");
                return {f.value, 0.0, 0.0};
            } else if constexpr (std::is_same_v<F, NonlocalExponential>) {
                return f(z);
            } else {
                const Jet j = f(z);
                return {j.value, j.d1, j.d2};
            }
        },
        factor);
}

SolutionField::SolutionField(ProblemParams params, ComplexValue lambda, std::vector<ProductTerm> terms,
                             bool admissible)
    : params_(std::move(params)), lambda_(lambda), terms_(std::move(terms)), admissible_(admissible) {}

SolutionField SolutionField::zero(const ProblemParams& params) { return {params, {0.0, 0.0}, {}, true}; }

SolutionField SolutionField::constant(const ProblemParams& params, ComplexValue c) {
    ProductTerm term{c, ConstantFactor{}, ConstantFactor{}, ConstantFactor{}};
    return {params, {0.0, 0.0}, {std::move(term)}, true};
}

SolutionField SolutionField::with_lambda(ComplexValue lambda) const {
    SolutionField copy = *this;
    copy.lambda_ = lambda;
    return copy;
}

SolutionField SolutionField::with_details(ModeDetails d) const {
    SolutionField copy = *this;
    copy.details_ = std::move(d);
    return copy;
}

SolutionField SolutionField::with_details(ModeDetailsA d) const {
    SolutionField copy = *this;
    copy.details_a_ = std::move(d);
    return copy;
}

Partials SolutionField::evaluate(double x, double y, double t) const {
    require_cube(x, y, t);
    Partials p;
    for (const ProductTerm& term : terms_) {
        const ComplexJet fx = evaluate_factor(term.x, x);
        const ComplexJet fy = evaluate_factor(term.y, y);
        const ComplexJet ft = evaluate_factor(term.t, t);
        const ComplexValue a = term.amplitude;
        p.u += a * fx.value * fy.value * ft.value;
        p.u_x += a * fx.d1 * fy.value * ft.value;
        p.u_y += a * fx.value * fy.d1 * ft.value;
        p.u_t += a * fx.value * fy.value * ft.d1;
        p.u_xx += a * fx.d2 * fy.value * ft.value;
        p.u_yy += a * fx.value * fy.d2 * ft.value;
    }
    return p;
}

std::vector<Partials> SolutionField::sample(std::span<const double> xs, std::span<const double> ys,
                                            std::span<const double> ts) const {
    const GridEvaluator grid(*this, xs, ys, ts);
    std::vector<Partials> out;
    out.reserve(xs.size() * ys.size() * ts.size());
    for (std::size_t it = 0; it < ts.size(); ++it) {
        for (std::size_t iy = 0; iy < ys.size(); ++iy) {
            for (std::size_t ix = 0; ix < xs.size(); ++ix) out.push_back(grid(ix, iy, it));
        }
    }
    return out;
}

GridEvaluator::GridEvaluator(const SolutionField& field, std::span<const double> xs,
                             std::span<const double> ys, std::span<const double> ts)
    : nx_(xs.size()), ny_(ys.size()), nt_(ts.size()) {
    for (double x : xs) require_cube(x, 0.0, 0.0);
    for (double y : ys) require_cube(0.0, y, 0.0);
    for (double t : ts) require_cube(0.0, 0.0, t);
    terms_.reserve(field.terms().size());
    for (const ProductTerm& term : field.terms()) {
        terms_.push_back({term.amplitude, evaluate_axis(term.x, xs), evaluate_axis(term.y, ys),
                          evaluate_axis(term.t, ts)});
    }
}

Partials GridEvaluator::operator()(std::size_t ix, std::size_t iy, std::size_t it) const {
    Partials p;
    for (const TermCache& c : terms_) {
        const ComplexJet& fx = c.x[ix];
        const ComplexJet& fy = c.y[iy];
        const ComplexJet& ft = c.t[it];
        const ComplexValue yt = c.amplitude * fy.value * ft.value;
        p.u += fx.value * yt;
        p.u_x += fx.d1 * yt;
        p.u_xx += fx.d2 * yt;
        p.u_y += c.amplitude * fx.value * fy.d1 * ft.value;
        p.u_yy += c.amplitude * fx.value * fy.d2 * ft.value;
        p.u_t += c.amplitude * fx.value * fy.value * ft.d1;
    }
    return p;
}

SolutionField SolutionField::operator+(const SolutionField& other) const {
    if (!(params_ == other.params_)) {
        throw ValidationError("superposition requires identical problem parameters");
    }
    const double scale = std::max({1.0, std::abs(lambda_), std::abs(other.lambda_)});
    if (std::abs(lambda_ - other.lambda_) > 1e-12 * scale) {
        throw ValidationError("superposition requires modes sharing lambda");
    }
    std::vector<ProductTerm> terms = terms_;
    terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
    return {params_, lambda_, std::move(terms), admissible_ && other.admissible_};
}

AxisSpectrum::AxisSpectrum(double exponent, BoundaryKind bc, int count) : exponent_(exponent), bc_(bc) {
    if (count < 1) throw ValidationError("axis spectrum needs count >= 1");
    if (bc.left == D && bc.right == D) {
        for (const SpatialEigenpair& pair : spatial_eigenvalues(exponent, count)) {
            mus_.push_back(pair.mu);
            factors_.emplace_back(SpatialEigenfunction(pair));
        }
    } else {
        for (ShootingEigenpair& pair : shooting_eigenvalues(exponent, bc, count)) {
            mus_.push_back(pair.mu);
            factors_.emplace_back(ShootingEigenfunction(std::move(pair)));
        }
    }
}

const AxisFactor& AxisSpectrum::factor(int index) const {
    if (index < 1 || index > count()) throw ValidationError("spectral index out of range");
    return factors_[static_cast<std::size_t>(index) - 1];
}

double AxisSpectrum::mu(int index) const {
    if (index < 1 || index > count()) throw ValidationError("spectral index out of range");
    return mus_[static_cast<std::size_t>(index) - 1];
}

SolutionField build_mode_solution(const ProblemParams& params, const AxisSpectrum& x_axis,
                                  const AxisSpectrum& y_axis, const ModeIndex& mode) {
    params.validate();
    if (!is_problem1_family(params.variant)) {
        throw ValidationError("build_mode_solution handles the Problem 1 family; use build_mode_solution_A");
    }
    if (mode.l < 1 || mode.p < 1 || mode.s < 0) {
        throw ValidationError("mode indices need l, p >= 1 and s >= 0");
    }
    const double mu_x = x_axis.mu(mode.l);
    const double mu_y = y_axis.mu(mode.p);
    const TemporalMode temporal = lambda_parameters(params.alpha, params.k, mu_x + mu_y, mode.s);
    const bool admissible = nonlocal_factor_defect(params.alpha, params.k, mode.s) < kAdmissibilityTolerance;

    ProductTerm term{{1.0, 0.0}, x_axis.factor(mode.l), y_axis.factor(mode.p),
                     temporal_eigenfunction(temporal)};
    SolutionField field(params, temporal.lambda(), {std::move(term)}, admissible);
    return field.with_details(ModeDetails{mode, mu_x, mu_y, temporal});
}

SolutionField build_mode_solution(const ProblemParams& params, int l, int p, int s) {
    params.validate();
    if (!is_problem1_family(params.variant)) {
        throw ValidationError("build_mode_solution handles the Problem 1 family; use build_mode_solution_A");
    }
    if (l < 1 || p < 1) throw ValidationError("mode indices need l, p >= 1");
    const AxisConditions axes = axis_conditions(params.variant);
    const AxisSpectrum x_axis(params.n, axes.x, l);
    const AxisSpectrum y_axis(params.m, axes.y, p);
    return build_mode_solution(params, x_axis, y_axis, {l, p, s});
}

LambdaSplit lambda_split(const ProblemParams& params, double mu_1l, double theta, int s_y, int s_t) {
    constexpr double pi = std::numbers::pi;
    LambdaSplit split;
    split.theta = theta;
    split.y_re = -theta * mu_1l + (params.m + 1.0) * std::log(params.beta.magnitude());
    split.y_im = (params.m + 1.0) * (coefficient_angle(params.beta, AngleBranch::TwoArgument) + s_y * pi);
    split.t_re = -(1.0 - theta) * mu_1l + (params.k + 1.0) * std::log(params.gamma.magnitude());
    split.t_im = (params.k + 1.0) * (coefficient_angle(params.gamma, AngleBranch::TwoArgument) + s_t * pi);
    return split;
}

LambdaSplit printed_lambda_split(const ProblemParams& params, double mu_1l) {
    LambdaSplit split;
    split.theta = std::numeric_limits<double>::quiet_NaN();
    split.y_re = -mu_1l + (params.m + 1.0) * std::log(params.beta.magnitude());
    split.y_im = (params.m + 1.0) * coefficient_angle(params.beta, AngleBranch::Literal);
    split.t_re = -mu_1l + (params.k + 1.0) * std::log(params.gamma.magnitude());
    split.t_im = (params.k + 1.0) * coefficient_angle(params.gamma, AngleBranch::Literal);
    return split;
}

SolutionField build_mode_solution_A(const ProblemParams& params, int l, int s, double theta,
                                    std::optional<int> s_y, std::optional<int> s_t) {
    params.validate();
    if (params.variant != Variant::ProblemA) {
        throw ValidationError("build_mode_solution_A requires variant ProblemA");
    }
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw ValidationError("split theta must lie in [0, 1], got " + std::to_string(theta));
    }
    if (l < 1 || s < 0) throw ValidationError("mode indices need l >= 1 and s >= 0");
    const int shift_y = s_y.value_or(s);
    const int shift_t = s_t.value_or(s);
    if (shift_y < 0 || shift_t < 0) throw ValidationError("shifts must be >= 0");

    const SpatialEigenpair pair = spatial_eigenvalues(params.n, l).back();
    const LambdaSplit split = lambda_split(params, pair.mu, theta, shift_y, shift_t);
    const bool admissible =
        nonlocal_factor_defect(params.beta, params.m, shift_y) < kAdmissibilityTolerance &&
        nonlocal_factor_defect(params.gamma, params.k, shift_t) < kAdmissibilityTolerance;

    ProductTerm term{{1.0, 0.0}, SpatialEigenfunction(pair), NonlocalExponential(params.beta, params.m, shift_y),
                     NonlocalExponential(params.gamma, params.k, shift_t)};
    SolutionField field(params, split.total(), {std::move(term)}, admissible);
    return field.with_details(ModeDetailsA{l, shift_y, shift_t, pair.mu, split});
}

Partials evaluate_with_partials(const SolutionField& field, double x, double y, double t) {
    return field.evaluate(x, y, t);
}

}  // namespace degpar
