#pragma once

#include "degpar/solution.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace degpar {

/// Uniform nodes in [offset, 1 - offset] along each axis.
struct GridSpec {
    int nx = 21;
    int ny = 21;
    int nt = 21;
    double offset = 1e-3;

    void validate() const;
    [[nodiscard]] std::vector<double> nodes(int count) const;
    [[nodiscard]] static GridSpec cube(int n, double offset = 1e-3) { return {n, n, n, offset}; }
};

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
};

struct ResidualReport {
    double sup_norm = 0.0;
    /// sqrt(sum |r|^2 dV) with dV = grid volume / node count.
    double l2_norm = 0.0;
    Point3 worst_point;
    /// Least-squares slope of log sup against log h (finite-difference runs).
    std::optional<double> convergence_order;
    /// Finite-difference runs: the steps and their sup norms, in input order.
    std::vector<double> steps;
    std::vector<double> step_sup_norms;
};

/// Residual of the field's governing equation using analytic partials:
///   Problem 1 family:  x^n y^m u_t - t^k y^m u_xx - t^k x^n u_yy + lambda t^k x^n y^m u
///   Problem A:         t^k y^m U_xx - t^k x^n U_y - x^n y^m U_t - Lambda x^n y^m t^k U
[[nodiscard]] ResidualReport pde_residual_analytic(const SolutionField& field, const GridSpec& grid);

/// The complex residual at every grid node, x fastest, then y, then t.
[[nodiscard]] std::vector<ComplexValue> analytic_residual_field(const SolutionField& field, const GridSpec& grid);

/// Same residual with every partial replaced by a centered second-order
/// difference of field values. Each h must not exceed the grid offset
/// (DomainError otherwise). sup_norm/l2_norm/worst_point refer to the
/// smallest step.
[[nodiscard]] ResidualReport pde_residual_fd(const SolutionField& field, const GridSpec& grid,
                                             std::span<const double> steps);

/// Lateral faces: S2 (x = 1), S3 (y = 0), S4 (x = 0), S5 (y = 1).
enum class Surface { S2, S3, S4, S5 };

[[nodiscard]] std::string to_string(Surface s);

/// Faces carrying a homogeneous condition for the variant: all four for the
/// Problem 1 family, S2 and S4 for Problem A.
[[nodiscard]] std::vector<Surface> constrained_surfaces(Variant v);

/// Sup over a samples x samples grid on each face of |u|, or of the normal
/// derivative where the variant prescribes a Neumann condition on that face.
[[nodiscard]] double boundary_sup(const SolutionField& field, std::span<const Surface> surfaces, int samples);

enum class NonlocalAxis { Time, Y };

/// Sup over a samples x samples grid of |u(., ., 0) - c u(., ., 1)| (time) or
/// |U(., 0, .) - c U(., 1, .)| (y).
[[nodiscard]] double nonlocal_defect(const SolutionField& field, const NonlocalCoefficient& coefficient,
                                     NonlocalAxis axis, int samples = 41);

struct EnergyReport {
    /// 1/2 (1 - |alpha|^2) int int x^n y^m |u(x, y, 1)|^2
    double surface_term = 0.0;
    /// int int int (t^k y^m |u_x|^2 + t^k x^n |u_y|^2 + lambda_1 t^k x^n y^m |u|^2)
    double volume_term = 0.0;
    double sum = 0.0;
    /// kEnergySafetyFactor * (|surface_N - surface_{N/2}| + |volume_N - volume_{N/2}|) / 15
    double quadrature_error_estimate = 0.0;
    int panels = 0;
};

/// Multiplies the Richardson panel-doubling estimate. The bare estimate is
/// asymptotically exact, so |sum| <= estimate would be decided by
/// higher-order terms whenever both term errors share a sign.
inline constexpr double kEnergySafetyFactor = 2.0;

/// Defect tolerance for the boundary and nonlocal preconditions.
inline constexpr double kEnergyPreconditionTolerance = 1e-8;

/// Energy identity by tensor-product composite Simpson quadrature with
/// `panels` panels per axis (a positive multiple of 4). Requires a
/// Problem-1-family field whose boundary and nonlocal defects are below
/// 1e-8; throws ValidationError otherwise.
[[nodiscard]] EnergyReport energy_identity(const SolutionField& field, int panels);

struct EnergyRefinement {
    std::vector<int> panels;
    std::vector<double> sums;
    /// log2(|sum_i| / |sum_{i+1}|) for consecutive doublings.
    std::vector<double> orders;
};

/// |surface + volume| for each panel count (no precondition checks).
[[nodiscard]] EnergyRefinement energy_refinement(const SolutionField& field, std::span<const int> panels);

struct SplitCandidate {
    std::string label;
    LambdaSplit lambda;
    ResidualReport residual;
    bool passes = false;
};

struct SplitAdjudication {
    ModeDetailsA mode;
    double tolerance = 1e-8;
    std::vector<SplitCandidate> candidates;
    /// Candidate with the smallest residual among the passing theta values.
    std::optional<std::size_t> selected;
    /// True when exactly one theta value passes.
    bool theta_identifiable = false;
};

/// Residual study of the Problem A mode (l, s) for each theta and for the
/// Lambda components exactly as printed.
[[nodiscard]] SplitAdjudication adjudicate_split_A(const ProblemParams& params, int l, int s,
                                                   std::span<const double> thetas, const GridSpec& grid);

}  // namespace degpar
