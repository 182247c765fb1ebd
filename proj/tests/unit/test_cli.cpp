#include "degpar/cli/cli.hpp"
#include "degpar/errors.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace degpar;
using namespace degpar::cli;

namespace {

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    Result r;
    r.code = run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

nlohmann::json parse_json(const std::string& text) { return nlohmann::json::parse(text); }

/// CSV body without the leading "# key=value" lines.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class TempDir {
public:
    TempDir() {
        path_ = std::filesystem::temp_directory_path() /
                ("degpar_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    [[nodiscard]] const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace

TEST(ParseHelpers, ComplexAndLists) {
    EXPECT_EQ(parse_complex("0.5,0"), (NonlocalCoefficient{0.5, 0.0}));
    EXPECT_EQ(parse_complex("-1e-1,2"), (NonlocalCoefficient{-0.1, 2.0}));
    EXPECT_EQ(parse_complex("3"), (NonlocalCoefficient{3.0, 0.0}));
    EXPECT_THROW((void)parse_complex("1,2,3"), ValidationError);
    EXPECT_THROW((void)parse_complex("a,b"), ValidationError);
    EXPECT_THROW((void)parse_complex(""), ValidationError);
    EXPECT_EQ(parse_int_list("1,1,2"), (std::vector<int>{1, 1, 2}));
    EXPECT_THROW((void)parse_int_list("1,x"), ValidationError);
    EXPECT_THROW((void)parse_int_list("1.5"), ValidationError);
    EXPECT_EQ(parse_double_list("1e-2,5e-3"), (std::vector<double>{1e-2, 5e-3}));
}

TEST(ParseArgs, DefaultsAndValidation) {
    std::ostringstream sink;
    const auto cfg = parse_args({"verify", "--alpha", "0.5,0", "--mode", "1,1,2"}, sink);
    ASSERT_TRUE(cfg.has_value());
    EXPECT_EQ(cfg->command, Command::Verify);
    EXPECT_EQ(cfg->grid.nx, kDefaultGrid);
    EXPECT_EQ(cfg->grid.offset, kDefaultDelta);
    EXPECT_EQ(cfg->panels, kDefaultPanels);
    EXPECT_EQ(cfg->mode, (ModeIndex{1, 1, 2}));
    EXPECT_THROW((void)parse_args({"verify", "--alpha", "0,0"}, sink), ValidationError);
    EXPECT_THROW((void)parse_args({"verify", "--alpha", "0.5,0", "--n", "-1"}, sink), ValidationError);
    EXPECT_THROW((void)parse_args({"frobnicate"}, sink), ValidationError);
    EXPECT_THROW((void)parse_args({"roots", "--nu", "0.5", "--bogus"}, sink), ValidationError);
    EXPECT_THROW((void)parse_args({"roots", "--nu", "0.5", "--count", "0"}, sink), ValidationError);
}

TEST(Roots, HalfOrderGivesMultiplesOfPi) {
    const Result r = invoke({"roots", "--nu", "0.5", "--count", "3"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"nu", "index", "root", "residual"}));
    for (int l = 1; l <= 3; ++l) {
        EXPECT_NEAR(std::stod(rows[l][2]), l * std::numbers::pi, 1e-12);
    }
}

TEST(Roots, JsonFormat) {
    const Result r = invoke({"roots", "--nu", "0.5", "--count", "2", "--format", "json"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = parse_json(r.out);
    EXPECT_EQ(j["config"]["command"], "roots");
    EXPECT_EQ(j["config"]["defaults"]["grid"], kDefaultGrid);
}

TEST(Eigen, ClosedAndShooting) {
    const Result closed = invoke({"eigen", "--exponent", "1", "--count", "3"});
    ASSERT_EQ(closed.code, kExitOk) << closed.err;
    const auto rows = csv_rows(closed.out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0][3], "mu");

    const Result nn = invoke({"eigen", "--exponent", "1", "--count", "2", "--bc", "NN"});
    ASSERT_EQ(nn.code, kExitOk) << nn.err;
    const auto nn_rows = csv_rows(nn.out);
    EXPECT_EQ(std::stod(nn_rows[1][3]), 0.0);
    EXPECT_GT(std::stod(nn_rows[2][3]), 0.0);

    const Result shot = invoke({"eigen", "--exponent", "1", "--count", "3", "--method", "shooting"});
    ASSERT_EQ(shot.code, kExitOk) << shot.err;
    for (int i = 1; i <= 3; ++i) {
        const double a = std::stod(rows[i][3]);
        EXPECT_NEAR(std::stod(csv_rows(shot.out)[i][3]), a, 1e-8 * a);
    }
}

TEST(Lambda, OddShiftFlaggedInadmissible) {
    const Result r = invoke({"lambda", "--alpha", "0.5,0", "--k", "1", "--mu", "9.8696", "--s", "3"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = parse_json(r.out);
    ASSERT_EQ(j["records"].size(), 1u);
    EXPECT_EQ(j["records"][0]["s"], 3);
    EXPECT_EQ(j["records"][0]["admissible"], false);
}

TEST(Lambda, ShiftTableAndBranches) {
    const Result r = invoke({"lambda", "--alpha", "-0.5,0", "--mu", "10", "--s-max", "3", "--branch", "both"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = parse_json(r.out);
    EXPECT_EQ(j["records"].size(), 8u);
    EXPECT_EQ(j["admissible_shifts"]["two-argument"], (std::vector<int>{0, 2}));
    EXPECT_EQ(j["admissible_shifts"]["literal"], (std::vector<int>{1, 3}));
}

TEST(Verify, ReportForExampleMode) {
    const Result r = invoke({"verify", "--problem", "1", "--n", "1", "--m", "1", "--k", "1", "--alpha", "0.5,0",
                             "--mode", "1,1,2", "--grid", "21"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = parse_json(r.out);
    EXPECT_LT(j["pde"]["sup_norm"].get<double>(), 1e-8);
    EXPECT_LT(j["nonlocal"]["time"].get<double>(), 1e-10);
    EXPECT_LT(j["boundary"]["sup"].get<double>(), 1e-10);
    EXPECT_LE(std::fabs(j["energy"]["sum"].get<double>()), j["energy"]["quadrature_error_estimate"].get<double>());
    EXPECT_EQ(j["energy"]["holds"], true);
    EXPECT_EQ(j["config"]["defaults"]["panels"], kDefaultPanels);
    EXPECT_EQ(j["config"]["defaults"]["delta"], kDefaultDelta);
}

TEST(Verify, FiniteDifferenceStudyAndResidualDump) {
    TempDir dir;
    const auto csv = dir.path() / "residual.csv";
    const Result r = invoke({"verify", "--alpha", "0.5,0", "--mode", "1,1,2", "--grid", "5", "--panels", "32",
                             "--fd-steps", "1e-2,5e-3,2.5e-3", "--residual-csv", csv.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = parse_json(r.out);
    const double order = j["fd"]["convergence_order"].get<double>();
    EXPECT_GE(order, 1.8);
    EXPECT_LE(order, 2.2);
    const auto rows = csv_rows(slurp(csv));
    EXPECT_EQ(rows.size(), 1u + 125u);
}

TEST(Verify, InadmissibleModeSkipsEnergy) {
    const Result r = invoke({"verify", "--alpha", "0.5,0", "--mode", "1,1,3", "--grid", "5"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = parse_json(r.out);
    EXPECT_EQ(j["mode"]["admissible"], false);
    EXPECT_GT(j["nonlocal"]["time"].get<double>(), 0.1);
    EXPECT_TRUE(j["energy"].contains("skipped"));
}

TEST(Solve, SamplesCsv) {
    const Result r = invoke({"solve", "--alpha", "0.5,0", "--mode", "1,1,2", "--samples", "3"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 28u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"x", "y", "t", "re", "im", "abs"}));
    // x = 0 on the first node.
    EXPECT_EQ(std::stod(rows[1][5]), 0.0);
}

TEST(Scan, CsvColumnsAndNoConflicts) {
    const Result r = invoke({"scan", "--lattice", "9", "--r-max", "2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto rows = csv_rows(r.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"alpha_re", "alpha_im", "lambda_re", "lambda_im", "l", "p", "s",
                                                 "verdict", "theorem_region"}));
    EXPECT_LE(rows.size() - 1, 81u);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const std::string& v = rows[i][7];
        EXPECT_TRUE(v == "UniqueGuaranteed" || v == "NontrivialExists" || v == "Indeterminate") << v;
    }
    EXPECT_NE(r.out.find("# result.conflicts=0"), std::string::npos);
}

TEST(Adjudicate, ReportsSplitAndLambda) {
    const Result r = invoke({"adjudicate-splitA", "--beta", "0.5,0", "--gamma", "0.5,0", "--l", "1", "--s", "2",
                             "--grid", "7"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = parse_json(r.out);
    EXPECT_EQ(j["candidates"].size(), 4u);
    EXPECT_TRUE(j.contains("selected"));
    EXPECT_TRUE(j["selected"]["split"].contains("Lambda_re"));
    EXPECT_EQ(j["theta_identifiable"], false);
}

TEST(ExitCodes, ValidationFailures) {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"roots", "--nu", "0.5", "--unknown"}, {"roots", "--nu", "2"},
          {"verify", "--alpha", "0,0"}, {"verify", "--alpha", "0.5,0", "--mode", "0,1,2"},
          {"lambda", "--alpha", "0.5,0"}, {"verify", "--problem", "Q", "--alpha", "0.5,0"}, {}}) {
        const Result r = invoke(args);
        EXPECT_EQ(r.code, kExitValidation);
        EXPECT_TRUE(r.out.empty());
        // One line of diagnostics.
        EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
        EXPECT_EQ(r.err.rfind("degpar: ", 0), 0u) << r.err;
    }
}

TEST(ExitCodes, NumericalFailure) {
    // Shooting cannot resolve the top of this spectrum at its fixed step.
    const Result r = invoke({"eigen", "--exponent", "8", "--count", "1000", "--bc", "DN"});
    EXPECT_EQ(r.code, kExitNumerical);
    EXPECT_NE(r.err.find("numerical failure"), std::string::npos);
}

TEST(Help, ListsDefaults) {
    const Result r = invoke({"--help"});
    EXPECT_EQ(r.code, kExitOk);
    for (const char* needle : {"1e-3", "21", "128", "5x5x8", "roots", "adjudicate-splitA"}) {
        EXPECT_NE(r.out.find(needle), std::string::npos) << needle;
    }
    const Result sub = invoke({"verify", "--help"});
    EXPECT_EQ(sub.code, kExitOk);
    EXPECT_NE(sub.out.find("--panels"), std::string::npos);
}

TEST(Output, FilesAreDeterministic) {
    TempDir dir;
    const auto a = dir.path() / "a.json";
    const auto b = dir.path() / "b.json";
    const std::vector<std::string> base{"verify", "--alpha", "0.3,0.4", "--mode", "2,1,2", "--grid", "7", "--panels", "32"};
    auto with_out = [&](const std::filesystem::path& p) {
        auto args = base;
        args.push_back("--out");
        args.push_back(p.string());
        return args;
    };
    const Result ra = invoke(with_out(a));
    const Result rb = invoke(with_out(b));
    ASSERT_EQ(ra.code, kExitOk) << ra.err;
    ASSERT_EQ(rb.code, kExitOk) << rb.err;
    EXPECT_FALSE(slurp(a).empty());
    EXPECT_EQ(slurp(a), slurp(b));
    // The console gets a summary, not the report.
    EXPECT_NE(ra.out.find(a.string()), std::string::npos);
    EXPECT_EQ(ra.out.find("\"config\""), std::string::npos);
}

TEST(Output, CsvHeaderEchoesConfig) {
    const Result r = invoke({"roots", "--nu", "0.25", "--count", "2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out.rfind("# command=roots\n", 0), 0u);
    EXPECT_NE(r.out.find("# nu=0.25\n"), std::string::npos);
    EXPECT_NE(r.out.find("# defaults.delta=0.001\n"), std::string::npos);
    EXPECT_NE(r.out.find("# defaults.search_box=[5, 5, 8]\n"), std::string::npos);
}

TEST(Output, SeventeenSignificantDigits) {
    const Result r = invoke({"roots", "--nu", "0.5", "--count", "1"});
    EXPECT_NE(r.out.find("3.1415926535897931"), std::string::npos);
}
