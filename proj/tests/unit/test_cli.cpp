#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
using casimir::cli::run;

namespace
{

struct Outcome
{
    int code;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args)
{
    args.insert(args.begin(), "casimir");
    std::ostringstream out;
    std::ostringstream err;
    int const code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(std::string const& text)
{
    std::vector<std::string> result;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);)
        result.push_back(line);
    return result;
}

std::vector<double> fields(std::string const& line)
{
    std::vector<double> result;
    std::istringstream is(line);
    for (std::string cell; std::getline(is, cell, ',');)
        result.push_back(std::strtod(cell.c_str(), nullptr));
    return result;
}

class TempDir
{
  public:
    TempDir()
    {
        auto base = fs::temp_directory_path() / "casimir-cli-XXXXXX";
        std::string pattern = base.string();
        path_ = ::mkdtemp(pattern.data());
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path operator/(std::string const& name) const { return path_ / name; }
    fs::path const& path() const { return path_; }

  private:
    fs::path path_;
};

void write(fs::path const& p, std::string const& text)
{
    std::ofstream(p) << text;
}

std::string read(fs::path const& p)
{
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, ReproduceFig2Table)
{
    auto const r = call({"reproduce-fig2"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto const rows = lines(r.out);
    ASSERT_EQ(rows.size(), 42u);
    EXPECT_EQ(rows[0], "a_um,ratio_line1,ratio_line2,ratio_line3");
    EXPECT_EQ(rows[1].substr(0, 5), "1.00,");
    EXPECT_EQ(rows[41].substr(0, 5), "3.00,");

    double const expected[5][3] = {{1.458, 0.429, 0.314},
                                   {1.361, 0.507, 0.409},
                                   {1.287, 0.580, 0.496},
                                   {1.233, 0.641, 0.570},
                                   {1.193, 0.689, 0.627}};
    for (int i = 0; i < 5; ++i)
    {
        auto const f = fields(rows[1 + 10 * i]);
        ASSERT_EQ(f.size(), 4u);
        EXPECT_NEAR(f[0], 1.0 + 0.5 * i, 1e-12);
        for (int j = 0; j < 3; ++j)
            EXPECT_NEAR(f[1 + j], expected[i][j], 2e-3) << i << ' ' << j;
    }
}

TEST(Cli, Deterministic)
{
    EXPECT_EQ(call({"reproduce-fig2"}).out, call({"reproduce-fig2"}).out);
}

TEST(Cli, EquivalentUnitsGiveIdenticalOutput)
{
    auto const a = call({"fpp", "--a", "1000nm"});
    auto const b = call({"fpp", "--a", "1um"});
    auto const c = call({"fpp", "--a", "0.001mm"});
    ASSERT_EQ(a.code, 0) << a.err;
    auto const body = [](std::string const& s) { return s.substr(s.find('\n') + 1); };
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(b.out, c.out);
    EXPECT_EQ(body(a.out).substr(0, 18), "1.00000000000e-06,");
}

TEST(Cli, Headers)
{
    EXPECT_EQ(lines(call({"fpp", "--a", "1um"}).out)[0], "z_m,F_pp_J_m2,bracket,terms");
    EXPECT_EQ(lines(call({"pressure", "--a", "1um"}).out)[0], "z_m,P_N_m2");
    EXPECT_EQ(lines(call({"force", "--a", "1um"}).out)[0], "a_m,F_N,method");
    auto const v = call({"validate-lens", "--profile", "bubble", "--R1", "25cm", "--D1",
                         "0.5um"});
    ASSERT_EQ(v.code, 0) << v.err;
    auto const rows = lines(v.out);
    EXPECT_EQ(rows[0], "check,value_m,limit_m,status");
    EXPECT_EQ(rows.size(), 5u);
    for (std::size_t i = 1; i < rows.size(); ++i)
        EXPECT_NE(rows[i].find(",pass"), std::string::npos) << rows[i];
}

TEST(Cli, FppAtZeroTemperature)
{
    auto const r = call({"fpp", "--a", "1um", "--T", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(lines(r.out)[1].find("nan"), std::string::npos);
}

TEST(Cli, InclusiveGrid)
{
    auto const r = call({"fpp", "--a-start", "1um", "--a-stop", "2um", "--a-step", "0.25um"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(r.out).size(), 6u);
}

TEST(Cli, EmptyGridGivesHeaderOnly)
{
    auto const r = call({"force", "--a-start", "2um", "--a-stop", "1um", "--a-step", "0.1um"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "a_m,F_N,method\n");
}

TEST(Cli, SimplifiedFullAndQuadratureAgree)
{
    auto const value = [](std::string const& method) {
        auto const r = call({"force", "--a", "1um", "--method", method});
        EXPECT_EQ(r.code, 0) << r.err;
        return fields(lines(r.out)[1])[1];
    };
    double const simple = value("simplified");
    double const full = value("full");
    double const quad = value("quadrature");
    EXPECT_GT(simple, 0);
    EXPECT_NEAR(full / simple, 1.0, 2e-5);
    EXPECT_NEAR(quad / full, 1.0, 1e-6);
}

TEST(Cli, RatioCommand)
{
    auto const r = call({"ratio", "--profile", "bubble", "--R1", "25cm", "--D1", "0.5um",
                         "--a", "1um"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(fields(lines(r.out)[1])[1], 1.458, 2e-3);
}

TEST(Cli, MethodProfileMismatch)
{
    EXPECT_EQ(call({"force", "--a", "1um", "--method", "bubble"}).code, 1);
    EXPECT_EQ(call({"force", "--a", "1um", "--profile", "pit", "--R1", "12cm", "--D1",
                    "1um", "--method", "full"})
                  .code,
              1);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(call({}).code, 1);
    EXPECT_EQ(call({"fpp"}).code, 1);
    EXPECT_EQ(call({"fpp", "--a", "1 furlong"}).code, 1);
    EXPECT_EQ(call({"nonsense"}).code, 1);
    EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(Cli, ConfigFileAndFlagOverride)
{
    TempDir dir;
    write(dir / "run.cfg", "# lens\nprofile = bubble\nR1 = 25 cm\nD1 = 0.5 um\na = 1um\n");
    auto const from_file = call({"ratio", "--config", (dir / "run.cfg").string()});
    ASSERT_EQ(from_file.code, 0) << from_file.err;
    EXPECT_NEAR(fields(lines(from_file.out)[1])[1], 1.458, 2e-3);

    auto const flag = call({"ratio", "--config", (dir / "run.cfg").string(), "--R1", "5cm",
                            "--D1", "1um"});
    ASSERT_EQ(flag.code, 0) << flag.err;
    EXPECT_NEAR(fields(lines(flag.out)[1])[1], 0.429, 2e-3);

    write(dir / "bad.cfg", "colour = blue\n");
    EXPECT_EQ(call({"ratio", "--config", (dir / "bad.cfg").string()}).code, 1);
}

TEST(Cli, CombineErrorsQuadratureBranch)
{
    TempDir dir;
    write(dir / "b.txt", "random_error = 0.1\nsystematic = 3, 4\nvariance_of_mean = 0.5\nk = 1.1\n"
                         "measured_value = 100\n");
    auto const r = call({"combine-errors", "--budget", (dir / "b.txt").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto const rows = lines(r.out);
    ASSERT_EQ(rows.size(), 7u);
    EXPECT_EQ(rows[0], "J=2");
    EXPECT_EQ(std::stod(rows[2].substr(8)), 5.5);
    EXPECT_EQ(rows[4], "rule=SystematicDominates");
    EXPECT_EQ(rows[6], "delta_t_relative=5.50000000000e-02");
}

TEST(Cli, CombineErrorsSystematicDominates)
{
    TempDir dir;
    write(dir / "b.txt", "random_error = 0.04\nsystematic = 0.19\nvariance_of_mean = 0.02\n"
                         "k = 1.1\n");
    auto const r = call({"combine-errors", "--budget", (dir / "b.txt").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto const rows = lines(r.out);
    EXPECT_EQ(rows[4], "rule=SystematicDominates");
    EXPECT_DOUBLE_EQ(std::stod(rows[5].substr(8)), 0.19);
}

TEST(Cli, CombineErrorsWithTables)
{
    TempDir dir;
    write(dir / "k.csv", "3, 1.1\n");
    write(dir / "q.csv", "0.8 0.71\n8 0.81\n");
    write(dir / "b.txt", "random_error = 1\nsystematic = 1, 1, 1\nvariance_of_mean = 1\n"
                         "k_table = k.csv\nq_table = q.csv\n");
    auto const r = call({"combine-errors", "--budget", (dir / "b.txt").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto const rows = lines(r.out);
    EXPECT_EQ(rows[1], "k=1.10000000000e+00");
    EXPECT_EQ(rows[4], "rule=Blend");
}

TEST(Cli, CombineErrorsFailures)
{
    TempDir dir;
    write(dir / "empty.txt", "random_error = 1\nsystematic =\nvariance_of_mean = 1\nk = 1\n");
    EXPECT_EQ(call({"combine-errors", "--budget", (dir / "empty.txt").string()}).code, 1);

    write(dir / "noq.txt", "random_error = 1\nsystematic = 2\nvariance_of_mean = 1\nk = 1\n");
    auto const r = call({"combine-errors", "--budget", (dir / "noq.txt").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("no q coefficient"), std::string::npos);

    write(dir / "nok.txt", "random_error = 1\nsystematic = 2, 1\nvariance_of_mean = 1\n");
    EXPECT_EQ(call({"combine-errors", "--budget", (dir / "nok.txt").string()}).code, 1);

    EXPECT_EQ(call({"combine-errors", "--budget", (dir / "missing.txt").string()}).code, 3);
    EXPECT_EQ(call({"combine-errors"}).code, 1);
}

TEST(Cli, OutputFileWrittenWhole)
{
    TempDir dir;
    auto const target = dir / "fig2.csv";
    auto const r = call({"reproduce-fig2", "--out", target.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(read(target), call({"reproduce-fig2"}).out);
}

TEST(Cli, NoPartialFileOnNumericalError)
{
    TempDir dir;
    auto const target = dir / "f.csv";
    // The first separation is far below the thermal series range at 300 K
    auto const r = call({"fpp", "--a", "0.1nm,1um,2um", "--out", target.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(fs::exists(target));
    EXPECT_EQ(std::distance(fs::directory_iterator(dir.path()), fs::directory_iterator{}), 0);
}

TEST(Cli, UnwritableOutput)
{
    TempDir dir;
    auto const target = dir / "no" / "such" / "dir.csv";
    EXPECT_EQ(call({"fpp", "--a", "1um", "--out", target.string()}).code, 3);
    EXPECT_FALSE(fs::exists(target));
}

#ifdef CASIMIR_CLI_BINARY
TEST(CliBinary, ExitCodesThroughProcess)
{
    std::string const bin = CASIMIR_CLI_BINARY;
    auto status = [](std::string const& cmd) {
        int const s = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(s);
    };
    EXPECT_EQ(status(bin + " reproduce-fig2"), 0);
    EXPECT_EQ(status(bin + " fpp"), 1);
    EXPECT_EQ(status(bin + " fpp --a 0.1nm"), 2);
}
#endif
