#include "degpar/verify.hpp"

#include "degpar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace degpar {

namespace {

std::vector<double> linspace01(int count) {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = count == 1 ? 0.5 : double(i) / (count - 1);
    return out;
}

std::vector<double> powers(std::span<const double> zs, double exponent) {
    std::vector<double> out;
    out.reserve(zs.size());
    for (double z : zs) out.push_back(std::pow(z, exponent));
    return out;
}

/// Residual of the field's equation from the six partials and the
/// precomputed coordinate powers.
ComplexValue equation_residual(bool problem_a, ComplexValue lambda, const Partials& p, double xn, double ym,
                               double tk) {
    if (problem_a) {
        return tk * ym * p.u_xx - tk * xn * p.u_y - xn * ym * p.u_t - lambda * (xn * ym * tk) * p.u;
    }
    return xn * ym * p.u_t - tk * ym * p.u_xx - tk * xn * p.u_yy + lambda * (tk * xn * ym) * p.u;
}

struct Accumulator {
    double sup = 0.0;
    double sum_sq = 0.0;
    std::size_t count = 0;
    Point3 worst;

    void add(double r, double x, double y, double t) {
        sum_sq += r * r;
        if (count == 0 || r > sup) {
            sup = r;
            worst = {x, y, t};
        }
        ++count;
    }

    [[nodiscard]] ResidualReport report(double volume) const {
        ResidualReport out;
        out.sup_norm = sup;
        out.l2_norm = count == 0 ? 0.0 : std::sqrt(sum_sq * volume / static_cast<double>(count));
        out.worst_point = worst;
        return out;
    }
};

double grid_volume(const GridSpec& g) {
    auto extent = [&](int n) { return n == 1 ? 1.0 : 1.0 - 2.0 * g.offset; };
    return extent(g.nx) * extent(g.ny) * extent(g.nt);
}

std::vector<double> simpson_weights(int panels) {
    const double h = 1.0 / panels;
    std::vector<double> w(static_cast<std::size_t>(panels) + 1);
    for (int i = 0; i <= panels; ++i) {
        const double c = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        w[static_cast<std::size_t>(i)] = c * h / 3.0;
    }
    return w;
}

struct EnergyTerms {
    double surface = 0.0;
    double volume = 0.0;
};

EnergyTerms energy_terms(const SolutionField& field, int panels) {
    const ProblemParams& params = field.params();
    const std::vector<double> nodes = linspace01(panels + 1);
    const std::vector<double> w = simpson_weights(panels);
    const std::vector<double> xn = powers(nodes, params.n);
    const std::vector<double> ym = powers(nodes, params.m);
    const std::vector<double> tk = powers(nodes, params.k);
    const double lambda_1 = field.lambda().real();
    const std::size_t count = nodes.size();

    EnergyTerms out;
    const std::vector<double> top{1.0};
    const GridEvaluator at_top(field, nodes, nodes, top);
    double surface = 0.0;
    for (std::size_t iy = 0; iy < count; ++iy) {
        for (std::size_t ix = 0; ix < count; ++ix) {
            surface += w[ix] * w[iy] * xn[ix] * ym[iy] * std::norm(at_top(ix, iy, 0).u);
        }
    }
    out.surface = 0.5 * (1.0 - params.alpha.norm2()) * surface;

    const GridEvaluator grid(field, nodes, nodes, nodes);
    double volume = 0.0;
    for (std::size_t it = 0; it < count; ++it) {
        double slice = 0.0;
        for (std::size_t iy = 0; iy < count; ++iy) {
            for (std::size_t ix = 0; ix < count; ++ix) {
                const Partials p = grid(ix, iy, it);
                const double integrand = ym[iy] * std::norm(p.u_x) + xn[ix] * std::norm(p.u_y) +
                                         lambda_1 * xn[ix] * ym[iy] * std::norm(p.u);
                slice += w[ix] * w[iy] * integrand;
            }
        }
        volume += w[it] * tk[it] * slice;
    }
    out.volume = volume;
    return out;
}

}  // namespace

void GridSpec::validate() const {
    if (nx < 1 || ny < 1 || nt < 1) throw ValidationError("grid needs at least one node per axis");
    if (!(offset >= 0.0 && offset < 0.5)) throw ValidationError("grid offset must lie in [0, 0.5)");
}

std::vector<double> GridSpec::nodes(int count) const {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] =
            count == 1 ? 0.5 : offset + (1.0 - 2.0 * offset) * static_cast<double>(i) / (count - 1);
    }
    return out;
}

std::vector<ComplexValue> analytic_residual_field(const SolutionField& field, const GridSpec& grid) {
    grid.validate();
    const ProblemParams& params = field.params();
    const bool problem_a = params.variant == Variant::ProblemA;
    const auto xs = grid.nodes(grid.nx);
    const auto ys = grid.nodes(grid.ny);
    const auto ts = grid.nodes(grid.nt);
    const auto xn = powers(xs, params.n);
    const auto ym = powers(ys, params.m);
    const auto tk = powers(ts, params.k);
    const GridEvaluator eval(field, xs, ys, ts);

    std::vector<ComplexValue> out;
    out.reserve(xs.size() * ys.size() * ts.size());
    for (std::size_t it = 0; it < ts.size(); ++it) {
        for (std::size_t iy = 0; iy < ys.size(); ++iy) {
            for (std::size_t ix = 0; ix < xs.size(); ++ix) {
                out.push_back(equation_residual(problem_a, field.lambda(), eval(ix, iy, it), xn[ix], ym[iy], tk[it]));
            }
        }
    }
    return out;
}

ResidualReport pde_residual_analytic(const SolutionField& field, const GridSpec& grid) {
    const std::vector<ComplexValue> values = analytic_residual_field(field, grid);
    const auto xs = grid.nodes(grid.nx);
    const auto ys = grid.nodes(grid.ny);
    const auto ts = grid.nodes(grid.nt);
    Accumulator acc;
    std::size_t i = 0;
    for (double t : ts) {
        for (double y : ys) {
            for (double x : xs) acc.add(std::abs(values[i++]), x, y, t);
        }
    }
    return acc.report(grid_volume(grid));
}

ResidualReport pde_residual_fd(const SolutionField& field, const GridSpec& grid, std::span<const double> steps) {
    grid.validate();
    if (steps.empty()) throw ValidationError("finite-difference residual needs at least one step");
    for (double h : steps) {
        if (!(h > 0.0) || h > grid.offset) {
            throw DomainError("finite-difference step " + std::to_string(h) +
                              " leaves the unit cube for grid offset " + std::to_string(grid.offset));
        }
    }
    const ProblemParams& params = field.params();
    const bool problem_a = params.variant == Variant::ProblemA;
    const auto xs = grid.nodes(grid.nx);
    const auto ys = grid.nodes(grid.ny);
    const auto ts = grid.nodes(grid.nt);
    const auto xn = powers(xs, params.n);
    const auto ym = powers(ys, params.m);
    const auto tk = powers(ts, params.k);

    // Stencil coordinates per axis: [z - h, z, z + h] interleaved.
    auto stencil = [](std::span<const double> zs, double h) {
        std::vector<double> out;
        out.reserve(3 * zs.size());
        for (double z : zs) {
            out.push_back(std::max(0.0, z - h));
            out.push_back(z);
            out.push_back(std::min(1.0, z + h));
        }
        return out;
    };

    ResidualReport result;
    Accumulator last;
    for (double h : steps) {
        const auto sx = stencil(xs, h);
        const auto sy = stencil(ys, h);
        const auto st = stencil(ts, h);
        const GridEvaluator eval(field, sx, sy, st);
        auto u = [&](std::size_t ix, std::size_t iy, std::size_t it) { return eval(ix, iy, it).u; };

        Accumulator acc;
        for (std::size_t it = 0; it < ts.size(); ++it) {
            const std::size_t ct = 3 * it + 1;
            for (std::size_t iy = 0; iy < ys.size(); ++iy) {
                const std::size_t cy = 3 * iy + 1;
                for (std::size_t ix = 0; ix < xs.size(); ++ix) {
                    const std::size_t cx = 3 * ix + 1;
                    Partials p;
                    p.u = u(cx, cy, ct);
                    p.u_xx = (u(cx + 1, cy, ct) - 2.0 * p.u + u(cx - 1, cy, ct)) / (h * h);
                    p.u_yy = (u(cx, cy + 1, ct) - 2.0 * p.u + u(cx, cy - 1, ct)) / (h * h);
                    p.u_x = (u(cx + 1, cy, ct) - u(cx - 1, cy, ct)) / (2.0 * h);
                    p.u_y = (u(cx, cy + 1, ct) - u(cx, cy - 1, ct)) / (2.0 * h);
                    p.u_t = (u(cx, cy, ct + 1) - u(cx, cy, ct - 1)) / (2.0 * h);
                    const ComplexValue r =
                        equation_residual(problem_a, field.lambda(), p, xn[ix], ym[iy], tk[it]);
                    acc.add(std::abs(r), xs[ix], ys[iy], ts[it]);
                }
            }
        }
        result.steps.push_back(h);
        result.step_sup_norms.push_back(acc.sup);
        if (h == *std::ranges::min_element(steps)) last = acc;
    }

    const ResidualReport smallest = last.report(grid_volume(grid));
    result.sup_norm = smallest.sup_norm;
    result.l2_norm = smallest.l2_norm;
    result.worst_point = smallest.worst_point;

    const bool positive = std::ranges::all_of(result.step_sup_norms, [](double s) { return s > 0.0; });
    if (steps.size() >= 2 && positive) {
        double mx = 0.0;
        double my = 0.0;
        const double n = static_cast<double>(steps.size());
        for (std::size_t i = 0; i < steps.size(); ++i) {
            mx += std::log(result.steps[i]);
            my += std::log(result.step_sup_norms[i]);
        }
        mx /= n;
        my /= n;
        double sxy = 0.0;
        double sxx = 0.0;
        for (std::size_t i = 0; i < steps.size(); ++i) {
            const double dx = std::log(result.steps[i]) - mx;
            sxy += dx * (std::log(result.step_sup_norms[i]) - my);
            sxx += dx * dx;
        }
        if (sxx > 0.0) result.convergence_order = sxy / sxx;
    }
    return result;
}

std::string to_string(Surface s) {
    switch (s) {
        case Surface::S2: return "S2";
        case Surface::S3: return "S3";
        case Surface::S4: return "S4";
        case Surface::S5: return "S5";
    }
    return "?";
}

std::vector<Surface> constrained_surfaces(Variant v) {
    if (v == Variant::ProblemA) return {Surface::S2, Surface::S4};
    return {Surface::S2, Surface::S3, Surface::S4, Surface::S5};
}

double boundary_sup(const SolutionField& field, std::span<const Surface> surfaces, int samples) {
    if (samples < 1) throw ValidationError("boundary_sup needs samples >= 1");
    const Variant variant = field.params().variant;
    const bool mixed = is_problem1_family(variant);
    const AxisConditions axes =
        mixed ? axis_conditions(variant) : AxisConditions{{EdgeCondition::Dirichlet, EdgeCondition::Dirichlet},
                                                          {EdgeCondition::Dirichlet, EdgeCondition::Dirichlet}};
    const auto line = linspace01(samples);
    const std::vector<double> zero{0.0};
    const std::vector<double> one{1.0};

    double sup = 0.0;
    for (Surface s : surfaces) {
        const bool x_face = s == Surface::S2 || s == Surface::S4;
        const bool at_one = s == Surface::S2 || s == Surface::S5;
        const BoundaryKind bc = x_face ? axes.x : axes.y;
        const bool neumann = (at_one ? bc.right : bc.left) == EdgeCondition::Neumann;
        const auto& fixed = at_one ? one : zero;
        const GridEvaluator eval = x_face ? GridEvaluator(field, fixed, line, line)
                                          : GridEvaluator(field, line, fixed, line);
        for (std::size_t it = 0; it < line.size(); ++it) {
            for (std::size_t j = 0; j < line.size(); ++j) {
                const Partials p = x_face ? eval(0, j, it) : eval(j, 0, it);
                const ComplexValue q = neumann ? (x_face ? p.u_x : p.u_y) : p.u;
                sup = std::max(sup, std::abs(q));
            }
        }
    }
    return sup;
}

double nonlocal_defect(const SolutionField& field, const NonlocalCoefficient& coefficient, NonlocalAxis axis,
                       int samples) {
    if (samples < 1) throw ValidationError("nonlocal_defect needs samples >= 1");
    const auto line = linspace01(samples);
    const std::vector<double> ends{0.0, 1.0};
    const ComplexValue c = coefficient.value();
    const bool time = axis == NonlocalAxis::Time;
    const GridEvaluator eval = time ? GridEvaluator(field, line, line, ends) : GridEvaluator(field, line, ends, line);
    double sup = 0.0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        for (std::size_t j = 0; j < line.size(); ++j) {
            const ComplexValue lo = time ? eval(i, j, 0).u : eval(i, 0, j).u;
            const ComplexValue hi = time ? eval(i, j, 1).u : eval(i, 1, j).u;
            sup = std::max(sup, std::abs(lo - c * hi));
        }
    }
    return sup;
}

EnergyReport energy_identity(const SolutionField& field, int panels) {
    if (panels < 4 || panels % 4 != 0) {
        throw ValidationError("energy quadrature needs a positive multiple of 4 panels");
    }
    const ProblemParams& params = field.params();
    if (!is_problem1_family(params.variant)) {
        throw ValidationError("the energy identity is formulated for the Problem 1 family");
    }
    const auto surfaces = constrained_surfaces(params.variant);
    const double boundary = boundary_sup(field, surfaces, 41);
    const double nonlocal = nonlocal_defect(field, params.alpha, NonlocalAxis::Time, 41);
    if (boundary > kEnergyPreconditionTolerance || nonlocal > kEnergyPreconditionTolerance) {
        throw ValidationError("energy identity precondition violated: boundary defect " + std::to_string(boundary) +
                              ", nonlocal defect " + std::to_string(nonlocal));
    }

    const EnergyTerms fine = energy_terms(field, panels);
    const EnergyTerms coarse = energy_terms(field, panels / 2);
    EnergyReport report;
    report.panels = panels;
    report.surface_term = fine.surface;
    report.volume_term = fine.volume;
    report.sum = fine.surface + fine.volume;
    // Richardson: Simpson error at N is about (Q_N - Q_{N/2}) / 15.
    report.quadrature_error_estimate =
        kEnergySafetyFactor * (std::fabs(fine.surface - coarse.surface) + std::fabs(fine.volume - coarse.volume)) / 15.0;
    return report;
}

EnergyRefinement energy_refinement(const SolutionField& field, std::span<const int> panels) {
    EnergyRefinement out;
    for (int n : panels) {
        if (n < 2 || n % 2 != 0) throw ValidationError("Simpson quadrature needs an even panel count");
        const EnergyTerms terms = energy_terms(field, n);
        out.panels.push_back(n);
        out.sums.push_back(std::fabs(terms.surface + terms.volume));
    }
    for (std::size_t i = 1; i < out.sums.size(); ++i) {
        const double ratio = static_cast<double>(out.panels[i]) / out.panels[i - 1];
        out.orders.push_back(std::log(out.sums[i - 1] / out.sums[i]) / std::log(ratio));
    }
    return out;
}

SplitAdjudication adjudicate_split_A(const ProblemParams& params, int l, int s, std::span<const double> thetas,
                                     const GridSpec& grid) {
    SplitAdjudication out;
    const SolutionField base = build_mode_solution_A(params, l, s, 1.0);
    out.mode = *base.details_a();
    std::size_t passing = 0;
    for (double theta : thetas) {
        const SolutionField field = build_mode_solution_A(params, l, s, theta);
        SplitCandidate c;
        std::ostringstream label;
        label << "theta=" << theta;
        c.label = label.str();
        c.lambda = field.details_a()->split;
        c.residual = pde_residual_analytic(field, grid);
        c.passes = c.residual.sup_norm < out.tolerance;
        if (c.passes) {
            ++passing;
            if (!out.selected || c.residual.sup_norm < out.candidates[*out.selected].residual.sup_norm) {
                out.selected = out.candidates.size();
            }
        }
        out.candidates.push_back(std::move(c));
    }
    out.theta_identifiable = passing == 1;

    SplitCandidate printed;
    printed.label = "printed";
    printed.lambda = printed_lambda_split(params, base.details_a()->mu_x);
    printed.residual = pde_residual_analytic(base.with_lambda(printed.lambda.total()), grid);
    printed.passes = printed.residual.sup_norm < out.tolerance;
    out.candidates.push_back(std::move(printed));
    return out;
}

}  // namespace degpar
