#include "degpar/classify.hpp"

#include "degpar/errors.hpp"
#include "degpar/verify.hpp"

#include <cmath>

namespace degpar {

namespace {

constexpr double kResidualTolerance = 1e-8;
constexpr double kDefectTolerance = 1e-10;
constexpr double kShootingDefectTolerance = 1e-8;

bool matches(ComplexValue a, ComplexValue b) {
    return std::fabs(a.real() - b.real()) <= kLambdaMatchTolerance &&
           std::fabs(a.imag() - b.imag()) <= kLambdaMatchTolerance;
}

}  // namespace

std::string to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::UniqueGuaranteed: return "UniqueGuaranteed";
        case VerdictStatus::NontrivialExists: return "NontrivialExists";
        case VerdictStatus::Indeterminate: return "Indeterminate";
    }
    return "?";
}

std::string to_string(Theorem t) { return t == Theorem::T1 ? "T1" : "T2"; }

bool theorem_hypothesis(const ProblemParams& params, ComplexValue lambda) {
    switch (params.variant) {
        case Variant::Problem1: return params.alpha.norm2() < 1.0 && lambda.real() >= 0.0;
        case Variant::ProblemA:
            return params.beta.norm2() < 1.0 && params.gamma.norm2() < 1.0 && lambda.real() >= 0.0;
        default: return false;
    }
}

WitnessSearch::WitnessSearch(const ProblemParams& params, SearchBox box) : shape_(params), box_(box) {
    params.validate();
    if (box.l_max < 1 || box.p_max < 1 || box.s_max < 0) {
        throw ValidationError("search box needs l_max, p_max >= 1 and s_max >= 0");
    }
    if (params.variant == Variant::ProblemA) {
        x_axis_.emplace(params.n, BoundaryKind{}, box.l_max);
    } else {
        const AxisConditions axes = axis_conditions(params.variant);
        x_axis_.emplace(params.n, axes.x, box.l_max);
        y_axis_.emplace(params.m, axes.y, box.p_max);
    }
}

bool WitnessSearch::admissible(const ProblemParams& params, int s) const {
    if (params.variant == Variant::ProblemA) {
        return nonlocal_factor_defect(params.beta, params.m, s) < kAdmissibilityTolerance &&
               nonlocal_factor_defect(params.gamma, params.k, s) < kAdmissibilityTolerance;
    }
    return nonlocal_factor_defect(params.alpha, params.k, s) < kAdmissibilityTolerance;
}

ComplexValue WitnessSearch::generated_lambda(const ProblemParams& params, const ModeIndex& mode) const {
    if (params.variant == Variant::ProblemA) {
        return lambda_split(params, x_axis_->mu(mode.l), 1.0, mode.s, mode.s).total();
    }
    const double mu = x_axis_->mu(mode.l) + y_axis_->mu(mode.p);
    return lambda_parameters(params.alpha, params.k, mu, mode.s).lambda();
}

std::optional<ModeIndex> WitnessSearch::find(const ProblemParams& params, ComplexValue lambda) const {
    const bool problem_a = params.variant == Variant::ProblemA;
    const int p_max = problem_a ? 0 : box_.p_max;
    std::vector<int> shifts;
    for (int s = 0; s <= box_.s_max; ++s) {
        if (admissible(params, s)) shifts.push_back(s);
    }
    for (int l = 1; l <= box_.l_max; ++l) {
        for (int p = problem_a ? 0 : 1; p <= p_max; ++p) {
            for (int s : shifts) {
                const ModeIndex mode{l, p, s};
                if (matches(generated_lambda(params, mode), lambda)) return mode;
            }
        }
    }
    return std::nullopt;
}

SolutionField WitnessSearch::build(const ProblemParams& params, const ModeIndex& mode) const {
    if (params.variant == Variant::ProblemA) return build_mode_solution_A(params, mode.l, mode.s, 1.0);
    return build_mode_solution(params, *x_axis_, *y_axis_, mode);
}

bool verify_witness(const SolutionField& field) {
    const ProblemParams& params = field.params();
    const ResidualReport residual = pde_residual_analytic(field, GridSpec::cube(7));
    if (!(residual.sup_norm < kResidualTolerance)) return false;

    double boundary_tol = kDefectTolerance;
    if (params.variant != Variant::Problem1 && params.variant != Variant::ProblemA) {
        boundary_tol = kShootingDefectTolerance;
    }
    const auto surfaces = constrained_surfaces(params.variant);
    if (!(boundary_sup(field, surfaces, 11) < boundary_tol)) return false;

    if (params.variant == Variant::ProblemA) {
        return nonlocal_defect(field, params.beta, NonlocalAxis::Y, 11) < kDefectTolerance &&
               nonlocal_defect(field, params.gamma, NonlocalAxis::Time, 11) < kDefectTolerance;
    }
    return nonlocal_defect(field, params.alpha, NonlocalAxis::Time, 11) < kDefectTolerance;
}

std::optional<ModeIndex> nontrivial_witness(const ProblemParams& params, ComplexValue lambda, SearchBox box) {
    return WitnessSearch(params, box).find(params, lambda);
}

UniquenessVerdict uniqueness_verdict(const ProblemParams& params, ComplexValue lambda, const WitnessSearch& search) {
    params.validate();
    UniquenessVerdict verdict;
    verdict.theorem = params.variant == Variant::ProblemA ? Theorem::T2 : Theorem::T1;
    verdict.hypothesis_holds = theorem_hypothesis(params, lambda);
    if (verdict.hypothesis_holds) {
        verdict.status = VerdictStatus::UniqueGuaranteed;
        return verdict;
    }
    if (const auto mode = search.find(params, lambda)) {
        if (verify_witness(search.build(params, *mode))) {
            verdict.status = VerdictStatus::NontrivialExists;
            verdict.witness = mode;
            return verdict;
        }
    }
    verdict.status = VerdictStatus::Indeterminate;
    return verdict;
}

UniquenessVerdict uniqueness_verdict(const ProblemParams& params, ComplexValue lambda, SearchBox box) {
    params.validate();
    return uniqueness_verdict(params, lambda, WitnessSearch(params, box));
}

ScanResult scan_alpha_plane(const ScanOptions& options) {
    if (!(options.r_max > 0.0)) throw ValidationError("scan needs r_max > 0");
    if (options.lattice < 2) throw ValidationError("scan lattice needs at least 2 points per axis");

    ProblemParams params;
    params.n = options.n;
    params.m = options.m;
    params.k = options.k;
    params.variant = Variant::Problem1;
    const WitnessSearch search(params, options.box);

    ScanResult result;
    const int count = options.lattice;
    const double r = options.r_max;
    for (int j = 0; j < count; ++j) {
        const double im = -r + 2.0 * r * j / (count - 1);
        for (int i = 0; i < count; ++i) {
            const double re = -r + 2.0 * r * i / (count - 1);
            const double norm2 = re * re + im * im;
            if (norm2 == 0.0 || norm2 > r * r) continue;
            params.alpha = {re, im};

            std::optional<ModeIndex> first;
            for (int l = 1; l <= options.box.l_max; ++l) {
                for (int p = 1; p <= options.box.p_max; ++p) {
                    for (int s = 0; s <= options.box.s_max; ++s) {
                        if (!search.admissible(params, s)) continue;
                        const ModeIndex mode{l, p, s};
                        ++result.generated;
                        if (theorem_hypothesis(params, search.generated_lambda(params, mode))) ++result.conflicts;
                        if (!first) first = mode;
                    }
                }
            }

            ScanRow row;
            row.alpha_re = re;
            row.alpha_im = im;
            row.theorem_region = norm2 < 1.0;
            if (first) {
                const ComplexValue lambda = search.generated_lambda(params, *first);
                row.lambda_re = lambda.real();
                row.lambda_im = lambda.imag();
                row.mode = *first;
                const UniquenessVerdict verdict = uniqueness_verdict(params, lambda, search);
                row.verdict = verdict.status;
                if (verdict.witness) row.mode = *verdict.witness;
            }
            result.rows.push_back(row);
        }
    }
    return result;
}

}  // namespace degpar
