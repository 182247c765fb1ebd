#pragma once

#include "degpar/solution.hpp"

#include <optional>
#include <string>
#include <vector>

namespace degpar {

enum class VerdictStatus { UniqueGuaranteed, NontrivialExists, Indeterminate };

/// T1: Problem 1 (|alpha| < 1, Re lambda >= 0).
/// T2: Problem A (|beta| < 1, |gamma| < 1, Lambda_11 + Lambda_21 >= 0).
enum class Theorem { T1, T2 };

[[nodiscard]] std::string to_string(VerdictStatus s);
[[nodiscard]] std::string to_string(Theorem t);

struct UniquenessVerdict {
    VerdictStatus status = VerdictStatus::Indeterminate;
    /// For Problem A the witness has p = 0 (there is no y eigenproblem).
    std::optional<ModeIndex> witness;
    Theorem theorem = Theorem::T1;
    /// Whether the theorem's hypotheses hold for the given parameters.
    bool hypothesis_holds = false;
};

/// Lexicographic witness search box: 1 <= l <= l_max, 1 <= p <= p_max, 0 <= s <= s_max.
struct SearchBox {
    int l_max = 5;
    int p_max = 5;
    int s_max = 8;
};

inline constexpr double kLambdaMatchTolerance = 1e-9;

/// True when the theorem hypotheses hold for (params, lambda). Always false
/// for P2..P9, for which no uniqueness statement is made.
[[nodiscard]] bool theorem_hypothesis(const ProblemParams& params, ComplexValue lambda);

/// Spatial spectra for a search box, shared across many (alpha, lambda)
/// queries with the same exponents and variant.
class WitnessSearch {
public:
    WitnessSearch(const ProblemParams& params, SearchBox box);

    /// Smallest (l, p, s) whose generated lambda matches to 1e-9 in both
    /// components and whose s is admissible. Only the nonlocal coefficients
    /// of `params` may differ from the ones the search was built with.
    [[nodiscard]] std::optional<ModeIndex> find(const ProblemParams& params, ComplexValue lambda) const;

    /// The field of a witness.
    [[nodiscard]] SolutionField build(const ProblemParams& params, const ModeIndex& mode) const;

    /// lambda (or Lambda) generated by a mode.
    [[nodiscard]] ComplexValue generated_lambda(const ProblemParams& params, const ModeIndex& mode) const;

    [[nodiscard]] bool admissible(const ProblemParams& params, int s) const;

    [[nodiscard]] const SearchBox& box() const noexcept { return box_; }

private:
    ProblemParams shape_;
    SearchBox box_;
    std::optional<AxisSpectrum> x_axis_;
    std::optional<AxisSpectrum> y_axis_;
};

/// Residual (< 1e-8 on a 7^3 interior grid), boundary (< 1e-10, or 1e-8 when
/// a shooting eigenfunction is involved) and nonlocal (< 1e-10) checks.
[[nodiscard]] bool verify_witness(const SolutionField& field);

[[nodiscard]] std::optional<ModeIndex> nontrivial_witness(const ProblemParams& params, ComplexValue lambda,
                                                          SearchBox box = {});

/// UniqueGuaranteed when the theorem hypotheses hold; otherwise
/// NontrivialExists with a verified witness, or Indeterminate.
/// Throws ValidationError for a zero nonlocal coefficient.
[[nodiscard]] UniquenessVerdict uniqueness_verdict(const ProblemParams& params, ComplexValue lambda,
                                                   SearchBox box = {});
[[nodiscard]] UniquenessVerdict uniqueness_verdict(const ProblemParams& params, ComplexValue lambda,
                                                   const WitnessSearch& search);

struct ScanOptions {
    double n = 1.0;
    double m = 1.0;
    double k = 1.0;
    double r_max = 2.0;
    /// Points per axis of the square lattice over [-r_max, r_max]^2.
    int lattice = 41;
    SearchBox box{};
};

struct ScanRow {
    double alpha_re = 0.0;
    double alpha_im = 0.0;
    double lambda_re = 0.0;
    double lambda_im = 0.0;
    ModeIndex mode;
    VerdictStatus verdict = VerdictStatus::Indeterminate;
    bool theorem_region = false;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    /// Generated (alpha, lambda) pairs, over every admissible mode in the box,
    /// at which the T1 hypothesis also holds. Expected to be zero.
    int conflicts = 0;
    int generated = 0;
};

/// Classifies every lattice point with 0 < |alpha| <= r_max at the lambda of
/// its smallest admissible mode (Problem 1).
[[nodiscard]] ScanResult scan_alpha_plane(const ScanOptions& options);

}  // namespace degpar
