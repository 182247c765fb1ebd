#pragma once

#include "degpar/spectrum.hpp"
#include "degpar/temporal.hpp"
#include "degpar/types.hpp"

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace degpar {

/// Problem 1 (Dirichlet on the four lateral faces), its mixed
/// Dirichlet/Neumann relatives P2..P9, and Problem A (two nonlocal
/// conditions and a first-order y derivative in the equation).
enum class Variant { Problem1, P2, P3, P4, P5, P6, P7, P8, P9, ProblemA };

[[nodiscard]] std::string to_string(Variant v);
/// Accepts "1", "problem1", "P1", "P2".."P9", "A", "problemA".
[[nodiscard]] Variant parse_variant(const std::string& text);
[[nodiscard]] bool is_problem1_family(Variant v) noexcept;

/// Endpoint conditions of the x and y eigenproblems. Left is the face at
/// 0 (S4 for x, S3 for y), right the face at 1 (S2 for x, S5 for y).
struct AxisConditions {
    BoundaryKind x;
    BoundaryKind y;
};

/// Throws ValidationError for ProblemA.
[[nodiscard]] AxisConditions axis_conditions(Variant v);

struct ProblemParams {
    double n = 1.0;
    double m = 1.0;
    double k = 1.0;
    Variant variant = Variant::Problem1;
    NonlocalCoefficient alpha{};
    NonlocalCoefficient beta{};
    NonlocalCoefficient gamma{};
    /// Admit n = m = k = 0 (classical limit used by tests).
    bool allow_zero_exponents = false;

    void validate() const;

    friend bool operator==(const ProblemParams&, const ProblemParams&) = default;
};

/// Spatial indices l, p >= 1 and temporal shift s >= 0.
struct ModeIndex {
    int l = 1;
    int p = 1;
    int s = 0;

    friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

/// Test double: a constant factor.
struct ConstantFactor {
    ComplexValue value{1.0, 0.0};
};

using AxisFactor = std::variant<ConstantFactor, SpatialEigenfunction, ShootingEigenfunction, NonlocalExponential>;

[[nodiscard]] ComplexJet evaluate_factor(const AxisFactor& factor, double z);

/// amplitude * X(x) * Y(y) * T(t)
struct ProductTerm {
    ComplexValue amplitude{1.0, 0.0};
    AxisFactor x;
    AxisFactor y;
    AxisFactor t;
};

/// Parameter Lambda of the two-nonlocal-condition equation split into its y
/// and t parts: Lambda = (y_re + t_re) + i (y_im + t_im).
struct LambdaSplit {
    /// Fraction of mu_1l assigned to the y equation; NaN for the printed formulas.
    double theta = 0.0;
    double y_re = 0.0;  // Lambda_11
    double y_im = 0.0;  // Lambda_12
    double t_re = 0.0;  // Lambda_21
    double t_im = 0.0;  // Lambda_22

    [[nodiscard]] ComplexValue total() const noexcept { return {y_re + t_re, y_im + t_im}; }
};

/// Provenance of a Problem-1-family mode.
struct ModeDetails {
    ModeIndex index;
    double mu_x = 0.0;
    double mu_y = 0.0;
    TemporalMode temporal;
};

/// Provenance of a Problem A mode.
struct ModeDetailsA {
    int l = 1;
    int s_y = 0;
    int s_t = 0;
    double mu_x = 0.0;
    LambdaSplit split;
};

struct Partials {
    ComplexValue u{};
    ComplexValue u_x{};
    ComplexValue u_y{};
    ComplexValue u_t{};
    ComplexValue u_xx{};
    ComplexValue u_yy{};
};

/// A finite sum of separable terms together with the equation parameter
/// (lambda, or Lambda for Problem A) it is meant to satisfy. Immutable.
class SolutionField {
public:
    SolutionField(ProblemParams params, ComplexValue lambda, std::vector<ProductTerm> terms, bool admissible);

    /// The identically zero field.
    [[nodiscard]] static SolutionField zero(const ProblemParams& params);
    /// u = c everywhere, lambda = 0.
    [[nodiscard]] static SolutionField constant(const ProblemParams& params, ComplexValue c);

    [[nodiscard]] const ProblemParams& params() const noexcept { return params_; }
    [[nodiscard]] ComplexValue lambda() const noexcept { return lambda_; }
    [[nodiscard]] bool admissible() const noexcept { return admissible_; }
    [[nodiscard]] const std::vector<ProductTerm>& terms() const noexcept { return terms_; }
    [[nodiscard]] const std::optional<ModeDetails>& details() const noexcept { return details_; }
    [[nodiscard]] const std::optional<ModeDetailsA>& details_a() const noexcept { return details_a_; }

    /// Same field, different equation parameter (used to build deliberately
    /// inconsistent fields).
    [[nodiscard]] SolutionField with_lambda(ComplexValue lambda) const;
    [[nodiscard]] SolutionField with_details(ModeDetails d) const;
    [[nodiscard]] SolutionField with_details(ModeDetailsA d) const;

    /// Throws DomainError outside the closed unit cube.
    [[nodiscard]] Partials evaluate(double x, double y, double t) const;

    /// Partials on the tensor grid xs x ys x ts, x fastest:
    /// index = (it * ys.size() + iy) * xs.size() + ix.
    [[nodiscard]] std::vector<Partials> sample(std::span<const double> xs, std::span<const double> ys,
                                               std::span<const double> ts) const;

    /// Superposition; both fields must share params and lambda to 1e-12
    /// (relative), otherwise ValidationError.
    [[nodiscard]] SolutionField operator+(const SolutionField& other) const;

private:
    ProblemParams params_;
    ComplexValue lambda_;
    std::vector<ProductTerm> terms_;
    bool admissible_;
    std::optional<ModeDetails> details_;
    std::optional<ModeDetailsA> details_a_;
};

/// Tensor-grid evaluator: factor values are computed once per axis node and
/// combined on demand, so large grids need O(nx + ny + nt) special-function
/// evaluations and no O(nx ny nt) storage.
class GridEvaluator {
public:
    GridEvaluator(const SolutionField& field, std::span<const double> xs, std::span<const double> ys,
                  std::span<const double> ts);

    [[nodiscard]] Partials operator()(std::size_t ix, std::size_t iy, std::size_t it) const;

    [[nodiscard]] std::size_t nx() const noexcept { return nx_; }
    [[nodiscard]] std::size_t ny() const noexcept { return ny_; }
    [[nodiscard]] std::size_t nt() const noexcept { return nt_; }

private:
    struct TermCache {
        ComplexValue amplitude;
        std::vector<ComplexJet> x;
        std::vector<ComplexJet> y;
        std::vector<ComplexJet> t;
    };
    std::size_t nx_;
    std::size_t ny_;
    std::size_t nt_;
    std::vector<TermCache> terms_;
};

/// Eigenfunctions of one spatial axis, computed once: closed form for
/// Dirichlet/Dirichlet, shooting otherwise.
class AxisSpectrum {
public:
    AxisSpectrum(double exponent, BoundaryKind bc, int count);

    /// index is 1-based.
    [[nodiscard]] const AxisFactor& factor(int index) const;
    [[nodiscard]] double mu(int index) const;
    [[nodiscard]] int count() const noexcept { return static_cast<int>(mus_.size()); }
    [[nodiscard]] double exponent() const noexcept { return exponent_; }
    [[nodiscard]] BoundaryKind bc() const noexcept { return bc_; }

private:
    double exponent_;
    BoundaryKind bc_;
    std::vector<double> mus_;
    std::vector<AxisFactor> factors_;
};

/// u_lps = X_l(x) Y_p(y) T_s(t) for the Problem 1 family, with
/// mu_lp = mu_1l + mu_2p feeding lambda. Inadmissible s still yields a
/// field, flagged via admissible().
[[nodiscard]] SolutionField build_mode_solution(const ProblemParams& params, int l, int p, int s);
[[nodiscard]] SolutionField build_mode_solution(const ProblemParams& params, const AxisSpectrum& x_axis,
                                                const AxisSpectrum& y_axis, const ModeIndex& mode);

/// U_ls = X_l(x) exp(rate_beta y^{m+1}) exp(rate_gamma t^{k+1}).
///
/// theta in [0, 1] assigns theta * mu_1l to Lambda_11 and (1 - theta) * mu_1l
/// to Lambda_21. The y and t factors may carry separate shifts; both default
/// to s.
[[nodiscard]] SolutionField build_mode_solution_A(const ProblemParams& params, int l, int s, double theta,
                                                  std::optional<int> s_y = std::nullopt,
                                                  std::optional<int> s_t = std::nullopt);

/// Lambda components exactly as the closed-form formulas print them:
/// both real parts carry -mu_1l and the imaginary parts carry no shift.
[[nodiscard]] LambdaSplit printed_lambda_split(const ProblemParams& params, double mu_1l);

/// The θ-split Lambda for given mu_1l and shifts.
[[nodiscard]] LambdaSplit lambda_split(const ProblemParams& params, double mu_1l, double theta, int s_y,
                                       int s_t);

[[nodiscard]] Partials evaluate_with_partials(const SolutionField& field, double x, double y, double t);

}  // namespace degpar
