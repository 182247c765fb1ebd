#include "degpar/cli/cli.hpp"

#include "degpar/cli/emit.hpp"
#include "degpar/errors.hpp"
#include "degpar/special.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace degpar::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    if (!text.empty() && text.back() == ',') out.emplace_back();
    return out;
}

double to_double(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (text.empty() || used != text.size() || !std::isfinite(v)) {
        throw ValidationError("invalid " + what + " '" + text + "'");
    }
    return v;
}

int to_int(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (text.empty() || used != text.size()) throw ValidationError("invalid " + what + " '" + text + "'");
    return v;
}

Json complex_json(const NonlocalCoefficient& c) { return Json::array({c.re, c.im}); }

Json base_config(const RunConfig& cfg) {
    Json c = Json::object();
    c["command"] = to_string(cfg.command);
    c["defaults"] = {{"delta", kDefaultDelta},
                     {"grid", kDefaultGrid},
                     {"panels", kDefaultPanels},
                     {"search_box", Json::array({kDefaultBox.l_max, kDefaultBox.p_max, kDefaultBox.s_max})}};
    return c;
}

void add_problem_config(Json& c, const RunConfig& cfg) {
    const ProblemParams& p = cfg.params;
    c["problem"] = to_string(p.variant);
    c["n"] = p.n;
    c["m"] = p.m;
    c["k"] = p.k;
    if (p.variant == Variant::ProblemA) {
        c["beta"] = complex_json(p.beta);
        c["gamma"] = complex_json(p.gamma);
        c["mode"] = Json::array({cfg.mode.l, cfg.mode.s});
        c["s_y"] = cfg.s_y.value_or(cfg.mode.s);
        c["s_t"] = cfg.s_t.value_or(cfg.mode.s);
        c["theta"] = cfg.theta;
    } else {
        c["alpha"] = complex_json(p.alpha);
        c["mode"] = Json::array({cfg.mode.l, cfg.mode.p, cfg.mode.s});
    }
}

Json grid_json(const GridSpec& g) { return {{"nx", g.nx}, {"ny", g.ny}, {"nt", g.nt}, {"offset", g.offset}}; }

Json point_json(const Point3& p) { return {{"x", p.x}, {"y", p.y}, {"t", p.t}}; }

Json split_json(const LambdaSplit& s) {
    const ComplexValue total = s.total();
    return {{"theta", s.theta},   {"lambda_11", s.y_re},         {"lambda_12", s.y_im},
            {"lambda_21", s.t_re}, {"lambda_22", s.t_im},        {"Lambda_re", total.real()},
            {"Lambda_im", total.imag()}};
}

Json mode_json(const SolutionField& field) {
    Json m = Json::object();
    if (const auto& d = field.details()) {
        m["l"] = d->index.l;
        m["p"] = d->index.p;
        m["s"] = d->index.s;
        m["mu_x"] = d->mu_x;
        m["mu_y"] = d->mu_y;
    } else if (const auto& a = field.details_a()) {
        m["l"] = a->l;
        m["s_y"] = a->s_y;
        m["s_t"] = a->s_t;
        m["mu_x"] = a->mu_x;
        m["split"] = split_json(a->split);
    }
    m["lambda_re"] = field.lambda().real();
    m["lambda_im"] = field.lambda().imag();
    m["admissible"] = field.admissible();
    return m;
}

SolutionField build_field(const RunConfig& cfg) {
    if (cfg.params.variant == Variant::ProblemA) {
        return build_mode_solution_A(cfg.params, cfg.mode.l, cfg.mode.s, cfg.theta, cfg.s_y, cfg.s_t);
    }
    return build_mode_solution(cfg.params, cfg.mode.l, cfg.mode.p, cfg.mode.s);
}

/// Output stream for the run: the --out file, or `fallback`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (path.empty()) return;
        file_.open(path, std::ios::binary);
        if (!file_) throw ValidationError("cannot open output file '" + path + "'");
        os_ = &file_;
    }
    std::ostream& stream() { return *os_; }
    void finish(const std::string& path) {
        if (!file_.is_open()) return;
        file_.close();
        if (!file_) throw ValidationError("failed writing output file '" + path + "'");
    }

private:
    std::ofstream file_;
    std::ostream* os_;
};

void emit_table(const RunConfig& cfg, std::ostream& out, const Json& config, const Table& table,
                OutputFormat default_format, const std::string& key, const Json& extra = Json::object()) {
    Sink sink(cfg.out_path, out);
    if (cfg.format.value_or(default_format) == OutputFormat::Csv) {
        Json echoed = config;
        for (const auto& [k, v] : extra.items()) echoed[k] = v;
        write_csv(sink.stream(), echoed, table);
    } else {
        Json doc = table_json(config, table, key);
        for (const auto& [k, v] : extra.items()) doc[k] = v;
        write_json(sink.stream(), doc);
    }
    sink.finish(cfg.out_path);
    if (!cfg.out_path.empty()) {
        out << to_string(cfg.command) << ": wrote " << table.rows.size() << " rows to " << cfg.out_path << '\n';
    }
}

void emit_report(const RunConfig& cfg, std::ostream& out, const Json& doc, const std::string& summary) {
    if (cfg.format == OutputFormat::Csv) throw ValidationError(to_string(cfg.command) + " reports are JSON only");
    Sink sink(cfg.out_path, out);
    write_json(sink.stream(), doc);
    sink.finish(cfg.out_path);
    if (!cfg.out_path.empty()) out << to_string(cfg.command) << ": " << summary << " -> " << cfg.out_path << '\n';
}

void run_roots(const RunConfig& cfg, std::ostream& out) {
    const BesselOrder order(cfg.nu);
    const RootTable table = bessel_roots(order, cfg.count);
    Json config = base_config(cfg);
    config["nu"] = cfg.nu;
    config["count"] = cfg.count;
    Table t{{"nu", "index", "root", "residual"}, {}};
    for (std::size_t i = 0; i < table.size(); ++i) {
        t.rows.push_back({cfg.nu, static_cast<int>(i + 1), table[i], std::fabs(bessel_j(order, table[i]))});
    }
    emit_table(cfg, out, config, t, OutputFormat::Csv, "roots");
}

void run_eigen(const RunConfig& cfg, std::ostream& out) {
    const bool dirichlet = cfg.bc == BoundaryKind{};
    std::string method = cfg.method;
    if (method == "auto") method = dirichlet ? "closed" : "shooting";
    if (method == "closed" && !dirichlet) {
        throw ValidationError("closed-form eigenvalues exist only for Dirichlet/Dirichlet; use --method shooting");
    }
    Json config = base_config(cfg);
    config["exponent"] = cfg.exponent;
    config["count"] = cfg.count;
    config["bc"] = to_string(cfg.bc);
    config["method"] = method;

    Table t{{"exponent", "index", "root", "mu", "bc", "method"}, {}};
    if (method == "closed") {
        for (const SpatialEigenpair& e : spatial_eigenvalues(cfg.exponent, cfg.count)) {
            t.rows.push_back({cfg.exponent, e.index, e.root, e.mu, to_string(cfg.bc), method});
        }
    } else {
        // Shooting has no Bessel zero; report the equivalent sqrt(mu) / q.
        const double q = (cfg.exponent + 2.0) / 2.0;
        for (const ShootingEigenpair& e : shooting_eigenvalues(cfg.exponent, cfg.bc, cfg.count)) {
            t.rows.push_back({cfg.exponent, e.index, std::sqrt(e.mu) / q, e.mu, to_string(cfg.bc), method});
        }
    }
    emit_table(cfg, out, config, t, OutputFormat::Csv, "eigenvalues");
}

void run_lambda(const RunConfig& cfg, std::ostream& out) {
    std::vector<AngleBranch> branches;
    if (cfg.branch == "atan2" || cfg.branch == "both") branches.push_back(AngleBranch::TwoArgument);
    if (cfg.branch == "literal" || cfg.branch == "both") branches.push_back(AngleBranch::Literal);
    std::vector<int> shifts;
    if (cfg.s) {
        shifts.push_back(*cfg.s);
    } else {
        for (int s = 0; s <= cfg.s_max; ++s) shifts.push_back(s);
    }

    Json config = base_config(cfg);
    config["alpha"] = complex_json(cfg.params.alpha);
    config["k"] = cfg.params.k;
    config["mu"] = cfg.mu;
    if (cfg.s) {
        config["s"] = *cfg.s;
    } else {
        config["s_max"] = cfg.s_max;
    }
    config["branch"] = cfg.branch;

    Table t{{"alpha_re", "alpha_im", "k", "mu_lp", "s", "lambda_re", "lambda_im", "admissible", "branch",
             "nonlocal_defect"},
            {}};
    Json admissible = Json::object();
    for (AngleBranch branch : branches) {
        Json kept = Json::array();
        for (int s : shifts) {
            const TemporalMode mode = lambda_parameters(cfg.params.alpha, cfg.params.k, cfg.mu, s, branch);
            const double defect = nonlocal_factor_defect(cfg.params.alpha, cfg.params.k, s, branch);
            const bool ok = defect < kAdmissibilityTolerance;
            if (ok) kept.push_back(s);
            t.rows.push_back({cfg.params.alpha.re, cfg.params.alpha.im, cfg.params.k, cfg.mu, s, mode.lambda_re,
                              mode.lambda_im, ok, to_string(branch), defect});
        }
        admissible[to_string(branch)] = std::move(kept);
    }
    emit_table(cfg, out, config, t, OutputFormat::Json, "records", {{"admissible_shifts", admissible}});
}

void run_solve(const RunConfig& cfg, std::ostream& out) {
    const SolutionField field = build_field(cfg);
    const GridSpec g{cfg.samples, cfg.samples, cfg.samples, cfg.sample_offset};
    g.validate();
    const auto xs = g.nodes(g.nx);
    const auto ys = g.nodes(g.ny);
    const auto ts = g.nodes(g.nt);
    const std::vector<Partials> values = field.sample(xs, ys, ts);

    Json config = base_config(cfg);
    add_problem_config(config, cfg);
    config["samples"] = cfg.samples;
    config["sample_offset"] = cfg.sample_offset;
    Table t{{"x", "y", "t", "re", "im", "abs"}, {}};
    std::size_t i = 0;
    for (double tt : ts) {
        for (double y : ys) {
            for (double x : xs) {
                const ComplexValue u = values[i++].u;
                t.rows.push_back({x, y, tt, u.real(), u.imag(), std::abs(u)});
            }
        }
    }
    emit_table(cfg, out, config, t, OutputFormat::Csv, "samples", {{"mode_details", mode_json(field)}});
}

void run_verify(const RunConfig& cfg, std::ostream& out) {
    const SolutionField field = build_field(cfg);
    const ProblemParams& params = cfg.params;

    Json config = base_config(cfg);
    add_problem_config(config, cfg);
    config["grid"] = grid_json(cfg.grid);
    config["panels"] = cfg.panels;
    config["boundary_samples"] = cfg.boundary_samples;
    if (!cfg.fd_steps.empty()) {
        config["fd_steps"] = cfg.fd_steps;
        config["fd_offset"] = cfg.fd_offset;
    }

    Json doc = Json::object();
    doc["config"] = config;
    doc["mode"] = mode_json(field);

    const ResidualReport pde = pde_residual_analytic(field, cfg.grid);
    doc["pde"] = {{"sup_norm", pde.sup_norm}, {"l2_norm", pde.l2_norm}, {"worst_point", point_json(pde.worst_point)}};

    if (!cfg.fd_steps.empty()) {
        GridSpec fd_grid = cfg.grid;
        fd_grid.offset = cfg.fd_offset;
        const ResidualReport fd = pde_residual_fd(field, fd_grid, cfg.fd_steps);
        doc["fd"] = {{"grid", grid_json(fd_grid)},
                     {"steps", fd.steps},
                     {"sup_norms", fd.step_sup_norms},
                     {"convergence_order", fd.convergence_order ? Json(*fd.convergence_order) : Json()}};
    }

    const auto surfaces = constrained_surfaces(params.variant);
    Json names = Json::array();
    for (Surface s : surfaces) names.push_back(to_string(s));
    doc["boundary"] = {{"surfaces", names}, {"sup", boundary_sup(field, surfaces, cfg.boundary_samples)}};

    Json nonlocal = Json::object();
    if (params.variant == Variant::ProblemA) {
        nonlocal["y"] = nonlocal_defect(field, params.beta, NonlocalAxis::Y, cfg.boundary_samples);
        nonlocal["time"] = nonlocal_defect(field, params.gamma, NonlocalAxis::Time, cfg.boundary_samples);
    } else {
        nonlocal["time"] = nonlocal_defect(field, params.alpha, NonlocalAxis::Time, cfg.boundary_samples);
    }
    doc["nonlocal"] = nonlocal;

    if (!is_problem1_family(params.variant)) {
        doc["energy"] = {{"skipped", "the energy identity applies to the Problem 1 family"}};
    } else {
        try {
            const EnergyReport e = energy_identity(field, cfg.panels);
            doc["energy"] = {{"surface_term", e.surface_term},
                             {"volume_term", e.volume_term},
                             {"sum", e.sum},
                             {"quadrature_error_estimate", e.quadrature_error_estimate},
                             {"panels", e.panels},
                             {"holds", std::fabs(e.sum) <= e.quadrature_error_estimate}};
        } catch (const ValidationError& ex) {
            doc["energy"] = {{"skipped", ex.what()}};
        }
    }

    if (!cfg.residual_csv.empty()) {
        const std::vector<ComplexValue> r = analytic_residual_field(field, cfg.grid);
        const auto xs = cfg.grid.nodes(cfg.grid.nx);
        const auto ys = cfg.grid.nodes(cfg.grid.ny);
        const auto ts = cfg.grid.nodes(cfg.grid.nt);
        Table t{{"x", "y", "t", "re", "im", "abs"}, {}};
        std::size_t i = 0;
        for (double tt : ts) {
            for (double y : ys) {
                for (double x : xs) {
                    t.rows.push_back({x, y, tt, r[i].real(), r[i].imag(), std::abs(r[i])});
                    ++i;
                }
            }
        }
        std::ofstream file(cfg.residual_csv, std::ios::binary);
        if (!file) throw ValidationError("cannot open residual file '" + cfg.residual_csv + "'");
        write_csv(file, config, t);
    }

    std::ostringstream summary;
    summary << "pde sup " << format_double(pde.sup_norm) << ", boundary "
            << format_double(doc["boundary"]["sup"].get<double>());
    emit_report(cfg, out, doc, summary.str());
}

void run_scan(const RunConfig& cfg, std::ostream& out) {
    const ScanResult result = scan_alpha_plane(cfg.scan);
    Json config = base_config(cfg);
    config["problem"] = to_string(Variant::Problem1);
    config["n"] = cfg.scan.n;
    config["m"] = cfg.scan.m;
    config["k"] = cfg.scan.k;
    config["r_max"] = cfg.scan.r_max;
    config["lattice"] = cfg.scan.lattice;
    config["box"] = Json::array({cfg.scan.box.l_max, cfg.scan.box.p_max, cfg.scan.box.s_max});

    Table t{{"alpha_re", "alpha_im", "lambda_re", "lambda_im", "l", "p", "s", "verdict", "theorem_region"}, {}};
    for (const ScanRow& row : result.rows) {
        t.rows.push_back({row.alpha_re, row.alpha_im, row.lambda_re, row.lambda_im, row.mode.l, row.mode.p,
                          row.mode.s, to_string(row.verdict), row.theorem_region});
    }
    const Json summary = {{"generated_pairs", result.generated}, {"conflicts", result.conflicts}};
    emit_table(cfg, out, config, t, OutputFormat::Csv, "rows", {{"result", summary}});
}

void run_adjudicate(const RunConfig& cfg, std::ostream& out) {
    Json config = base_config(cfg);
    config["problem"] = to_string(Variant::ProblemA);
    config["n"] = cfg.params.n;
    config["m"] = cfg.params.m;
    config["k"] = cfg.params.k;
    config["beta"] = complex_json(cfg.params.beta);
    config["gamma"] = complex_json(cfg.params.gamma);
    config["l"] = cfg.mode.l;
    config["s"] = cfg.mode.s;
    config["thetas"] = cfg.thetas;
    config["grid"] = grid_json(cfg.grid);

    const SplitAdjudication adj = adjudicate_split_A(cfg.params, cfg.mode.l, cfg.mode.s, cfg.thetas, cfg.grid);
    Json doc = Json::object();
    doc["config"] = config;
    doc["mode"] = {{"l", adj.mode.l}, {"s_y", adj.mode.s_y}, {"s_t", adj.mode.s_t}, {"mu_x", adj.mode.mu_x}};
    doc["tolerance"] = adj.tolerance;
    Json candidates = Json::array();
    for (const SplitCandidate& c : adj.candidates) {
        Json j = {{"label", c.label}};
        const Json split = split_json(c.lambda);
        for (const auto& [k, v] : split.items()) j[k] = v;
        j["residual_sup"] = c.residual.sup_norm;
        j["residual_l2"] = c.residual.l2_norm;
        j["passes"] = c.passes;
        candidates.push_back(std::move(j));
    }
    doc["candidates"] = candidates;
    if (adj.selected) {
        const SplitCandidate& c = adj.candidates[*adj.selected];
        doc["selected"] = {{"label", c.label}, {"split", split_json(c.lambda)}};
    } else {
        doc["selected"] = nullptr;
    }
    doc["theta_identifiable"] = adj.theta_identifiable;

    const std::string summary =
        adj.selected ? "selected " + adj.candidates[*adj.selected].label : std::string("no passing split");
    emit_report(cfg, out, doc, summary);
}

struct RawOptions {
    std::string problem = "1";
    std::string alpha = "1,0";
    std::string beta = "1,0";
    std::string gamma = "1,0";
    std::string mode;
    std::string bc = "DD";
    std::string format;
    std::string fd_steps;
    std::string thetas = "0,0.5,1";
    std::string box = "5,5,8";
    int grid = kDefaultGrid;
    int s = 0;
    int sy = 0;
    int st = 0;
    int l = 1;
};

void add_output_options(CLI::App* sub, RunConfig& cfg, RawOptions& raw) {
    sub->add_option("--out,-o", cfg.out_path, "Output file (default: standard output)");
    sub->add_option("--format", raw.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

void add_problem_options(CLI::App* sub, RunConfig& cfg, RawOptions& raw) {
    sub->add_option("--problem", raw.problem, "Variant: 1, P2..P9 or A");
    sub->add_option("--n", cfg.params.n, "Exponent n of x");
    sub->add_option("--m", cfg.params.m, "Exponent m of y");
    sub->add_option("--k", cfg.params.k, "Exponent k of t");
    sub->add_option("--alpha", raw.alpha, "Nonlocal time coefficient re,im (Problem 1 family)");
    sub->add_option("--beta", raw.beta, "Nonlocal y coefficient re,im (Problem A)");
    sub->add_option("--gamma", raw.gamma, "Nonlocal time coefficient re,im (Problem A)");
    sub->add_option("--mode", raw.mode, "Mode l,p,s (Problem A: l,s); default 1,1,0");
    sub->add_option("--theta", cfg.theta, "Problem A: share of mu_1l in Lambda_11");
    sub->add_option("--sy", raw.sy, "Problem A: shift of the y factor (default s)");
    sub->add_option("--st", raw.st, "Problem A: shift of the t factor (default s)");
}

}  // namespace

std::string to_string(Command c) {
    switch (c) {
        case Command::Roots: return "roots";
        case Command::Eigen: return "eigen";
        case Command::Lambda: return "lambda";
        case Command::Solve: return "solve";
        case Command::Verify: return "verify";
        case Command::Scan: return "scan";
        case Command::AdjudicateSplitA: return "adjudicate-splitA";
    }
    return "?";
}

NonlocalCoefficient parse_complex(const std::string& text) {
    const auto parts = split_commas(text);
    if (parts.empty() || parts.size() > 2) throw ValidationError("invalid complex value '" + text + "': expected re,im");
    NonlocalCoefficient c;
    c.re = to_double(parts[0], "complex value");
    c.im = parts.size() == 2 ? to_double(parts[1], "complex value") : 0.0;
    return c;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& part : split_commas(text)) out.push_back(to_int(part, "integer list entry"));
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split_commas(text)) out.push_back(to_double(part, "number list entry"));
    return out;
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out) {
    RunConfig cfg;
    RawOptions raw;

    CLI::App app{"Exact modal solutions of degenerate parabolic problems with nonlocal conditions", "degpar"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.footer("Defaults: delta = 1e-3, verification grid 21^3, 128 quadrature panels, search box 5x5x8.\n"
               "Complex values are given as re,im. Exit codes: 0 ok, 1 invalid input, 2 numerical failure.");

    auto* roots = app.add_subcommand("roots", "Positive zeros of J_nu");
    roots->add_option("--nu", cfg.nu, "Bessel order in (0, 1]")->required();
    roots->add_option("--count", cfg.count, "Number of zeros");
    add_output_options(roots, cfg, raw);

    auto* eigen = app.add_subcommand("eigen", "Spatial spectrum of X'' + mu x^e X = 0 on (0, 1)");
    eigen->add_option("--exponent", cfg.exponent, "Weight exponent e >= 0")->required();
    eigen->add_option("--count", cfg.count, "Number of eigenvalues");
    eigen->add_option("--bc", raw.bc, "Endpoint conditions at 0 and 1: DD, DN, ND, NN");
    eigen->add_option("--method", cfg.method, "Solver")->check(CLI::IsMember({"auto", "closed", "shooting"}));
    add_output_options(eigen, cfg, raw);

    auto* lambda = app.add_subcommand("lambda", "Temporal parameters lambda for a separation constant");
    lambda->add_option("--alpha", raw.alpha, "Nonlocal coefficient re,im")->required();
    lambda->add_option("--k", cfg.params.k, "Exponent k of t");
    lambda->add_option("--mu", cfg.mu, "Separation constant mu_lp")->required();
    auto* s_opt = lambda->add_option("--s", raw.s, "Single shift s (otherwise 0..s-max)");
    lambda->add_option("--s-max", cfg.s_max, "Largest shift listed");
    lambda->add_option("--branch", cfg.branch, "Angle branch")->check(CLI::IsMember({"atan2", "literal", "both"}));
    add_output_options(lambda, cfg, raw);

    auto* solve = app.add_subcommand("solve", "Sample a mode solution on a grid");
    add_problem_options(solve, cfg, raw);
    solve->add_option("--samples", cfg.samples, "Nodes per axis");
    solve->add_option("--offset", cfg.sample_offset, "Sample [offset, 1 - offset] on each axis");
    add_output_options(solve, cfg, raw);

    auto* verify = app.add_subcommand("verify", "Residual, boundary, nonlocal and energy report for a mode");
    add_problem_options(verify, cfg, raw);
    verify->add_option("--grid", raw.grid, "Verification nodes per axis");
    verify->add_option("--delta", cfg.grid.offset, "Interior offset of the verification grid");
    verify->add_option("--panels", cfg.panels, "Simpson panels per axis (multiple of 4)");
    verify->add_option("--boundary-samples", cfg.boundary_samples, "Nodes per axis on each face");
    verify->add_option("--fd-steps", raw.fd_steps, "Finite-difference steps, e.g. 1e-2,5e-3,2.5e-3");
    verify->add_option("--fd-offset", cfg.fd_offset, "Grid offset for the finite-difference study");
    verify->add_option("--residual-csv", cfg.residual_csv, "Also dump the analytic residual field as CSV");
    add_output_options(verify, cfg, raw);

    auto* scan = app.add_subcommand("scan", "Classify a lattice in the alpha plane (Problem 1)");
    scan->add_option("--n", cfg.scan.n, "Exponent n of x");
    scan->add_option("--m", cfg.scan.m, "Exponent m of y");
    scan->add_option("--k", cfg.scan.k, "Exponent k of t");
    scan->add_option("--r-max", cfg.scan.r_max, "Largest |alpha|");
    scan->add_option("--lattice", cfg.scan.lattice, "Lattice points per axis");
    scan->add_option("--box", raw.box, "Witness search box l_max,p_max,s_max");
    add_output_options(scan, cfg, raw);

    auto* adjudicate = app.add_subcommand("adjudicate-splitA", "Residual study of the Problem A Lambda split");
    adjudicate->add_option("--n", cfg.params.n, "Exponent n of x");
    adjudicate->add_option("--m", cfg.params.m, "Exponent m of y");
    adjudicate->add_option("--k", cfg.params.k, "Exponent k of t");
    adjudicate->add_option("--beta", raw.beta, "Nonlocal y coefficient re,im");
    adjudicate->add_option("--gamma", raw.gamma, "Nonlocal time coefficient re,im");
    adjudicate->add_option("--l", raw.l, "Spatial index l");
    adjudicate->add_option("--s", raw.s, "Shift s of both nonlocal factors");
    adjudicate->add_option("--thetas", raw.thetas, "Candidate theta values");
    adjudicate->add_option("--grid", raw.grid, "Verification nodes per axis");
    adjudicate->add_option("--delta", cfg.grid.offset, "Interior offset of the verification grid");
    add_output_options(adjudicate, cfg, raw);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw ValidationError(e.what());
    }

    if (roots->parsed()) cfg.command = Command::Roots;
    if (eigen->parsed()) cfg.command = Command::Eigen;
    if (lambda->parsed()) cfg.command = Command::Lambda;
    if (solve->parsed()) cfg.command = Command::Solve;
    if (verify->parsed()) cfg.command = Command::Verify;
    if (scan->parsed()) cfg.command = Command::Scan;
    if (adjudicate->parsed()) cfg.command = Command::AdjudicateSplitA;

    if (!raw.format.empty()) cfg.format = raw.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    if (cfg.count < 1) throw ValidationError("--count must be at least 1");
    cfg.bc = parse_boundary_kind(raw.bc);
    cfg.params.alpha = parse_complex(raw.alpha);
    cfg.params.beta = parse_complex(raw.beta);
    cfg.params.gamma = parse_complex(raw.gamma);
    cfg.grid.nx = cfg.grid.ny = cfg.grid.nt = raw.grid;

    switch (cfg.command) {
        case Command::Roots: (void)BesselOrder(cfg.nu); break;
        case Command::Eigen:
            if (!(cfg.exponent >= 0.0)) throw ValidationError("--exponent must be >= 0");
            break;
        case Command::Lambda:
            if (s_opt->count() > 0) {
                if (raw.s < 0) throw ValidationError("--s must be >= 0");
                cfg.s = raw.s;
            }
            if (cfg.s_max < 0) throw ValidationError("--s-max must be >= 0");
            if (!(cfg.params.k >= 0.0)) throw ValidationError("--k must be >= 0");
            require_nonzero(cfg.params.alpha, "alpha");
            break;
        case Command::Solve:
        case Command::Verify: {
            cfg.params.variant = parse_variant(raw.problem);
            const auto* sub = cfg.command == Command::Solve ? solve : verify;
            const bool problem_a = cfg.params.variant == Variant::ProblemA;
            if (!raw.mode.empty()) {
                const auto idx = parse_int_list(raw.mode);
                if (problem_a) {
                    if (idx.size() != 2) throw ValidationError("Problem A --mode takes l,s");
                    cfg.mode = {idx[0], 0, idx[1]};
                } else {
                    if (idx.size() != 3) throw ValidationError("--mode takes l,p,s");
                    cfg.mode = {idx[0], idx[1], idx[2]};
                }
            } else if (problem_a) {
                cfg.mode = {1, 0, 0};
            }
            if (cfg.mode.l < 1 || (!problem_a && cfg.mode.p < 1) || cfg.mode.s < 0) {
                throw ValidationError("mode indices need l, p >= 1 and s >= 0");
            }
            if (sub->get_option("--sy")->count() > 0) cfg.s_y = raw.sy;
            if (sub->get_option("--st")->count() > 0) cfg.s_t = raw.st;
            if (!problem_a && (cfg.s_y || cfg.s_t)) throw ValidationError("--sy/--st apply to Problem A only");
            cfg.params.validate();
            if (cfg.command == Command::Solve && cfg.samples < 1) throw ValidationError("--samples must be >= 1");
            if (cfg.command == Command::Verify) {
                cfg.grid.validate();
                if (cfg.panels < 4 || cfg.panels % 4 != 0) {
                    throw ValidationError("--panels must be a positive multiple of 4");
                }
                if (cfg.boundary_samples < 1) throw ValidationError("--boundary-samples must be >= 1");
                if (!raw.fd_steps.empty()) cfg.fd_steps = parse_double_list(raw.fd_steps);
            }
            break;
        }
        case Command::Scan: {
            const auto box = parse_int_list(raw.box);
            if (box.size() != 3) throw ValidationError("--box takes l_max,p_max,s_max");
            cfg.scan.box = {box[0], box[1], box[2]};
            break;
        }
        case Command::AdjudicateSplitA:
            cfg.params.variant = Variant::ProblemA;
            cfg.mode = {raw.l, 0, raw.s};
            if (raw.l < 1 || raw.s < 0) throw ValidationError("adjudication needs l >= 1 and s >= 0");
            cfg.thetas = parse_double_list(raw.thetas);
            cfg.params.validate();
            cfg.grid.validate();
            break;
    }
    return cfg;
}

void execute(const RunConfig& config, std::ostream& out) {
    switch (config.command) {
        case Command::Roots: run_roots(config, out); return;
        case Command::Eigen: run_eigen(config, out); return;
        case Command::Lambda: run_lambda(config, out); return;
        case Command::Solve: run_solve(config, out); return;
        case Command::Verify: run_verify(config, out); return;
        case Command::Scan: run_scan(config, out); return;
        case Command::AdjudicateSplitA: run_adjudicate(config, out); return;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        const auto config = parse_args(args, out);
        if (!config) return kExitOk;
        execute(*config, out);
        return kExitOk;
    } catch (const NumericalFailure& e) {
        err << "degpar: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::string message = e.what();
        for (char& c : message) {
            if (c == '\n') c = ' ';
        }
        err << "degpar: error: " << message << '\n';
        return kExitValidation;
    }
}

}  // namespace degpar::cli
