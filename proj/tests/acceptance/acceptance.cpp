// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "degpar/classify.hpp"
#include "degpar/special.hpp"
#include "degpar/spectrum.hpp"
#include "degpar/temporal.hpp"
#include "degpar/verify.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace degpar;

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned tolerances.
constexpr double kBesselTol = 1e-12;
constexpr double kRootTol = 1e-10;
constexpr double kShootingRelTol = 1e-8;
constexpr double kClassicalRelTol = 1e-6;
constexpr double kEndpointTol = 1e-10;
constexpr double kTemporalTol = 1e-8;
constexpr double kExistenceTol = 1e-12;
constexpr double kResidualTol = 1e-8;
constexpr double kOrderLow = 1.8;
constexpr double kOrderHigh = 2.2;
constexpr double kDefectTol = 1e-10;
constexpr double kEnergyRelEstimate = 1e-6;
constexpr double kEnergyOrderLow = 3.5;
constexpr double kEnergyOrderHigh = 4.5;
constexpr double kSplitTol = 1e-8;

constexpr int kTemporalSteps = 80000;
constexpr double kGrading = 4.0;
constexpr double kFdOffset = 0.05;
constexpr std::array<double, 3> kFdSteps{1e-2, 5e-3, 2.5e-3};

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

NonlocalCoefficient polar(double r, double a) { return {r * std::cos(a), r * std::sin(a)}; }

ProblemParams problem1(NonlocalCoefficient alpha, double n, double m, double k) {
    ProblemParams p;
    p.n = n;
    p.m = m;
    p.k = k;
    p.alpha = alpha;
    return p;
}

Outcome special_exactness() {
    const BesselOrder half(0.5);
    double worst = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        const double x = 50.0 * i / 1000.0;
        worst = std::max(worst, std::fabs(bessel_j(half, x) - std::sqrt(2.0 / (kPi * x)) * std::sin(x)));
    }
    const RootTable roots = bessel_roots(half, 20);
    double worst_root = 0.0;
    for (int l = 1; l <= 20; ++l) worst_root = std::max(worst_root, std::fabs(roots[l - 1] - l * kPi));
    return {roots.size() == 20 && worst < kBesselTol && worst_root < kRootTol,
            fmt("max |J - closed form| = %.3g on 1000 points, max root error = %.3g", worst, worst_root)};
}

Outcome spectrum_cross_validation() {
    double worst = 0.0;
    for (double e : {0.5, 1.0, 2.0}) {
        const auto closed = spatial_eigenvalues(e, 5);
        const auto shot = shooting_eigenvalues(e, BoundaryKind{}, 5);
        for (int i = 0; i < 5; ++i) worst = std::max(worst, std::fabs(shot[i].mu - closed[i].mu) / closed[i].mu);
    }
    double classical = 0.0;
    const auto limit = shooting_eigenvalues(0.0, BoundaryKind{}, 5);
    for (int l = 1; l <= 5; ++l) {
        const double exact = std::pow(l * kPi, 2);
        classical = std::max(classical, std::fabs(limit[l - 1].mu - exact) / exact);
    }
    return {worst < kShootingRelTol && classical < kClassicalRelTol,
            fmt("shooting vs closed form max rel = %.3g, exponent 0 vs (l pi)^2 max rel = %.3g", worst, classical)};
}

Outcome endpoint_exactness() {
    double worst = 0.0;
    for (double e : {0.5, 1.0, 2.0, 3.0}) {
        for (const SpatialEigenpair& pair : spatial_eigenvalues(e, 10)) {
            worst = std::max(worst, std::fabs(SpatialEigenfunction(pair)(1.0).value));
        }
    }
    return {worst < kEndpointTol, fmt("max |X_l(1)| over l <= 10, exponents {0.5,1,2,3} = %.3g", worst)};
}

Outcome temporal_consistency() {
    std::mt19937_64 rng(20260401);
    std::uniform_real_distribution<double> radius(0.2, 3.0);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_real_distribution<double> k_dist(0.0, 3.0);
    std::uniform_real_distribution<double> mu_dist(1.0, 100.0);
    double worst_ode = 0.0;
    double worst_system = 0.0;
    for (int draw = 0; draw < 50; ++draw) {
        const NonlocalCoefficient alpha = polar(radius(rng), angle(rng));
        const double k = k_dist(rng);
        const double mu = mu_dist(rng);
        const std::vector<int> shifts = admissible_shifts(alpha, k, 6);
        const int s = shifts[std::uniform_int_distribution<std::size_t>(0, shifts.size() - 1)(rng)];
        const TemporalMode mode = lambda_parameters(alpha, k, mu, s);
        const NonlocalExponential T = temporal_eigenfunction(mode);
        const ComplexValue rate = mode.lambda() + mode.mu_lp;
        // t^k is not smooth at 0 for k < 1; integrating in tau with t = tau^g
        // turns the right-hand side into a smooth power of tau.
        auto rhs = [&](double tau, ComplexValue y) {
            return -rate * kGrading * std::pow(tau, kGrading * (k + 1.0) - 1.0) * y;
        };
        const auto run = oracle::rk4_scalar(rhs, 0.0, 1.0, T(0.0).value, kTemporalSteps);
        for (int i = 0; i <= kTemporalSteps; i += 200) {
            const double tau = static_cast<double>(i) / kTemporalSteps;
            worst_ode = std::max(worst_ode, std::abs(T(std::pow(tau, kGrading)).value - run[i]));
        }
        const ExistenceResiduals r = existence_system_check(mode);
        worst_system = std::max({worst_system, r.cosine, r.sine});
    }
    return {worst_ode < kTemporalTol && worst_system < kExistenceTol,
            fmt("50 draws: max |T - RK4| = %.3g, max existence residual = %.3g", worst_ode, worst_system)};
}

struct RandomMode {
    ProblemParams params;
    ModeIndex index;
};

std::vector<RandomMode> random_admissible_modes(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.2, 2.0);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_real_distribution<double> exponent(0.5, 3.0);
    std::uniform_int_distribution<int> index(1, 4);
    std::vector<RandomMode> modes;
    for (int i = 0; i < count; ++i) {
        const ProblemParams p = problem1(polar(radius(rng), angle(rng)), exponent(rng), exponent(rng), exponent(rng));
        const std::vector<int> shifts = admissible_shifts(p.alpha, p.k, 4);
        const int s = shifts[std::uniform_int_distribution<std::size_t>(0, shifts.size() - 1)(rng)];
        modes.push_back({p, {index(rng), index(rng), s}});
    }
    return modes;
}

Outcome full_solution_residual(const std::vector<RandomMode>& modes) {
    double worst = 0.0;
    double order_min = 1e9;
    double order_max = -1e9;
    for (const RandomMode& m : modes) {
        const SolutionField f = build_mode_solution(m.params, m.index.l, m.index.p, m.index.s);
        worst = std::max(worst, pde_residual_analytic(f, GridSpec::cube(21)).sup_norm);
        const ResidualReport fd = pde_residual_fd(f, GridSpec::cube(11, kFdOffset), kFdSteps);
        const double order = fd.convergence_order.value_or(0.0);
        order_min = std::min(order_min, order);
        order_max = std::max(order_max, order);
    }
    return {worst < kResidualTol && order_min >= kOrderLow && order_max <= kOrderHigh,
            fmt("20 modes: max analytic sup = %.3g on 21^3; fd order in [%.4f, %.4f]", worst, order_min, order_max)};
}

Outcome defects(const std::vector<RandomMode>& modes) {
    constexpr std::array<Surface, 4> faces{Surface::S2, Surface::S3, Surface::S4, Surface::S5};
    double boundary = 0.0;
    double nonlocal = 0.0;
    for (const RandomMode& m : modes) {
        const SolutionField f = build_mode_solution(m.params, m.index.l, m.index.p, m.index.s);
        boundary = std::max(boundary, boundary_sup(f, faces, 41));
        nonlocal = std::max(nonlocal, nonlocal_defect(f, m.params.alpha, NonlocalAxis::Time, 41));
    }
    const std::vector<int> kept = admissible_shifts({0.5, 0.0}, 1.0, 8);
    const int rejected = 9 - static_cast<int>(kept.size());
    return {boundary < kDefectTol && nonlocal < kDefectTol && rejected >= 1,
            fmt("max boundary = %.3g, max nonlocal = %.3g; alpha = 0.5 rejects %d of s = 0..8", boundary, nonlocal,
                rejected)};
}

Outcome energy_identity_check() {
    struct Case {
        NonlocalCoefficient alpha;
        double k;
        int s;
    };
    const std::array<Case, 10> cases{{{{0.5, 0.0}, 1.0, 0},
                                      {{0.5, 0.0}, 1.0, 2},
                                      {{-0.5, 0.0}, 2.0, 0},
                                      {{0.0, 0.5}, 1.0, 2},
                                      {{0.3, 0.4}, 3.0, 0},
                                      {{1.5, 0.0}, 1.0, 2},
                                      {{1.5, 0.0}, 3.0, 0},
                                      {{2.0, 0.0}, 2.0, 4},
                                      {{-2.0, 0.0}, 1.0, 0},
                                      {{0.4, -0.3}, 2.0, 2}}};
    constexpr std::array<int, 3> refinement{16, 32, 64};
    bool pass = true;
    double worst_ratio = 0.0;
    double worst_rel = 0.0;
    double order_min = 1e9;
    double order_max = -1e9;
    for (const Case& c : cases) {
        const SolutionField f = build_mode_solution(problem1(c.alpha, 1.0, 1.0, c.k), 1, 1, c.s);
        const EnergyReport e = energy_identity(f, 128);
        worst_ratio = std::max(worst_ratio, std::fabs(e.sum) / e.quadrature_error_estimate);
        worst_rel = std::max(worst_rel, e.quadrature_error_estimate / std::fabs(e.surface_term));
        pass = pass && std::fabs(e.sum) <= e.quadrature_error_estimate &&
               e.quadrature_error_estimate < kEnergyRelEstimate * std::fabs(e.surface_term);
        for (double o : energy_refinement(f, refinement).orders) {
            order_min = std::min(order_min, o);
            order_max = std::max(order_max, o);
        }
    }
    pass = pass && order_min >= kEnergyOrderLow && order_max <= kEnergyOrderHigh;
    return {pass, fmt("10 modes at 128 panels: max |sum|/estimate = %.3g, max estimate/|surface| = %.3g; "
                      "refinement order in [%.3f, %.3f]",
                      worst_ratio, worst_rel, order_min, order_max)};
}

Outcome negative_real_part_property() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> radius2(1e-3, 0.999);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_real_distribution<double> k_dist(0.2, 3.0);
    std::uniform_int_distribution<int> index(1, 5);
    const WitnessSearch search(problem1({1.0, 0.0}, 1.0, 1.0, 1.0), SearchBox{});
    double max_re = -1e300;
    int contradictions = 0;
    int verified = 0;
    for (int draw = 0; draw < 100; ++draw) {
        const ProblemParams p = problem1(polar(std::sqrt(radius2(rng)), angle(rng)), 1.0, 1.0, k_dist(rng));
        const std::vector<int> shifts = admissible_shifts(p.alpha, p.k, 8);
        const int s = shifts[std::uniform_int_distribution<std::size_t>(0, shifts.size() - 1)(rng)];
        const ModeIndex mode{index(rng), index(rng), s};
        const ComplexValue lambda = search.generated_lambda(p, mode);
        max_re = std::max(max_re, lambda.real());
        const UniquenessVerdict v = uniqueness_verdict(p, lambda, search);
        const std::optional<ModeIndex> w = search.find(p, lambda);
        const bool witness_ok = w && verify_witness(search.build(p, *w));
        verified += witness_ok ? 1 : 0;
        if (v.status == VerdictStatus::UniqueGuaranteed && witness_ok) ++contradictions;
    }
    return {max_re < 0.0 && contradictions == 0,
            fmt("100 draws: max Re lambda = %.4g, verified witnesses = %d, contradictions = %d", max_re, verified,
                contradictions)};
}

Outcome split_adjudication() {
    ProblemParams p;
    p.variant = Variant::ProblemA;
    p.beta = {0.5, 0.0};
    p.gamma = {0.5, 0.0};
    constexpr std::array<double, 3> thetas{0.0, 0.5, 1.0};
    const SplitAdjudication a = adjudicate_split_A(p, 1, 2, thetas, GridSpec::cube(21));
    int passing = 0;
    bool others_nonzero = true;
    std::string residuals;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        const SplitCandidate& c = a.candidates[i];
        residuals += fmt("%s%s: %.3g", residuals.empty() ? "" : ", ", c.label.c_str(), c.residual.sup_norm);
        if (c.residual.sup_norm < kSplitTol) {
            ++passing;
        }
    }
    // Every theta other than the selected one must leave a nonzero residual.
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        if (a.selected && i == *a.selected) continue;
        if (a.candidates[i].residual.sup_norm < kSplitTol) others_nonzero = false;
    }
    const SplitCandidate& printed = a.candidates.back();
    residuals += fmt(", %s: %.3g", printed.label.c_str(), printed.residual.sup_norm);
    std::string chosen = "none";
    if (a.selected) {
        const LambdaSplit& s = a.candidates[*a.selected].lambda;
        chosen = fmt("%s, Lambda = %.6g%+.6gi", a.candidates[*a.selected].label.c_str(), s.total().real(),
                     s.total().imag());
    }
    return {passing >= 1 && others_nonzero && a.selected.has_value(),
            fmt("residuals {%s}; %d of 3 theta values pass; selected %s; theta identifiable: %s", residuals.c_str(),
                passing, chosen.c_str(), a.theta_identifiable ? "yes" : "no")};
}

Outcome classifier_round_trip() {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> radius(0.1, 2.5);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_real_distribution<double> k_dist(0.3, 3.0);
    std::uniform_int_distribution<int> index(1, 5);
    // Distinct exponents keep mu_lp injective in (l, p).
    const double n = 0.8;
    const double m = 1.7;
    const auto x_pairs = spatial_eigenvalues(n, 5);
    const auto y_pairs = spatial_eigenvalues(m, 5);
    int recovered = 0;
    for (int draw = 0; draw < 100; ++draw) {
        const ProblemParams p = problem1(polar(radius(rng), angle(rng)), n, m, k_dist(rng));
        const std::vector<int> shifts = admissible_shifts(p.alpha, p.k, 8);
        const int s = shifts[std::uniform_int_distribution<std::size_t>(0, shifts.size() - 1)(rng)];
        const ModeIndex mode{index(rng), index(rng), s};
        const double mu = x_pairs[mode.l - 1].mu + y_pairs[mode.p - 1].mu;
        const ComplexValue lambda = lambda_parameters(p.alpha, p.k, mu, s).lambda();
        if (nontrivial_witness(p, lambda) == mode) ++recovered;
    }
    return {recovered == 100, fmt("%d of 100 draws recovered", recovered)};
}

}  // namespace

int main() {
    const std::vector<RandomMode> modes = random_admissible_modes(20, 1234);
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"special-function exactness", special_exactness},
        {"spectrum cross-validation", spectrum_cross_validation},
        {"eigenfunction endpoint zeros", endpoint_exactness},
        {"temporal consistency", temporal_consistency},
        {"full-solution residual", [&] { return full_solution_residual(modes); }},
        {"nonlocal and boundary defects", [&] { return defects(modes); }},
        {"energy identity", energy_identity_check},
        {"negative real part inside the unit disk", negative_real_part_property},
        {"Problem A split adjudication", split_adjudication},
        {"classifier round-trip", classifier_round_trip},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("criterion %zu: %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
