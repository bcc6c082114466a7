#include "cli.hpp"

#include "lorcyl/metric.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace lorcyl::cli {
namespace {

namespace fs = std::filesystem;

const fs::path kSource = LORCYL_TEST_SOURCE_DIR;
const fs::path kGolden = kSource / "golden";
const fs::path kFixtures = kSource / "fixtures";

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string spec(const char* name) { return (kFixtures / name).string(); }
std::string golden_spec(const char* name) { return (kGolden / name).string(); }

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "lorcyl_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

TEST(Classify, GoldenReports) {
    for (const char* name : {"totally_vicious", "null_circle", "globally_hyperbolic"}) {
        const std::string base = name;
        const Outcome o = invoke({"classify", golden_spec((base + ".spec").c_str()), "--dual"});
        EXPECT_EQ(o.code, kOk) << name;
        EXPECT_EQ(o.out, slurp(kGolden / (base + ".classify.out"))) << name;
    }
}

TEST(Classify, FirstLinesAndDual) {
    Outcome o = invoke({"classify", golden_spec("totally_vicious.spec"), "--dual"});
    std::istringstream lines(o.out);
    std::string a, b;
    std::getline(lines, a);
    std::getline(lines, b);
    EXPECT_EQ(a, "class=TotallyVicious");
    EXPECT_EQ(b, "dual_class=GloballyHyperbolic");

    o = invoke({"classify", golden_spec("null_circle.spec"), "--dual"});
    EXPECT_EQ(first_line(o.out), "class=ChronologicalNonCausal");
    EXPECT_NE(o.out.find("\ndual_class=ChronologicalNonCausal\n"), std::string::npos);
    EXPECT_NE(o.err.find("warning"), std::string::npos);

    o = invoke({"classify", spec("conformal_gh.spec")});
    EXPECT_EQ(o.code, kOk);
    EXPECT_EQ(first_line(o.out), "class=GloballyHyperbolic");
    EXPECT_EQ(o.out.find("dual_class"), std::string::npos);
    EXPECT_TRUE(o.err.empty());
}

TEST(Classify, PrintsQuantitiesThatCheckOut) {
    const Outcome o = invoke({"classify", spec("tilted_tv.spec")});
    EXPECT_NE(o.out.find("\nq_dx=-1\n"), std::string::npos);
    EXPECT_NE(o.out.find("\ndx_character=Timelike\n"), std::string::npos);
    EXPECT_NE(o.out.find("\nclosed_causal_curve=Timelike\n"), std::string::npos);
}

TEST(Classify, ErrorFamilies) {
    Outcome o = invoke({"classify", spec("riemannian.spec")});
    EXPECT_EQ(o.code, kDomainError);
    EXPECT_NE(o.err.find("-1"), std::string::npos);
    EXPECT_TRUE(o.out.empty());

    o = invoke({"classify", spec("unknown_key.spec")});
    EXPECT_EQ(o.code, kDomainError);
    EXPECT_NE(o.err.find("line 5"), std::string::npos);

    EXPECT_EQ(invoke({"classify", spec("aperiodic_psi.spec")}).code, kDomainError);
    EXPECT_EQ(invoke({"classify", spec("general.spec")}).code, kDomainError);
    EXPECT_EQ(invoke({"classify", spec("missing.spec")}).code, kDomainError);

    EXPECT_EQ(invoke({}).code, kUsageError);
    EXPECT_EQ(invoke({"classify"}).code, kUsageError);
    EXPECT_EQ(invoke({"classify", spec("tilted_tv.spec"), "--eps", "-1"}).code, kUsageError);
    EXPECT_EQ(invoke({"classify", spec("tilted_tv.spec"), "--bogus"}).code, kUsageError);
    EXPECT_EQ(invoke({"frobnicate"}).code, kUsageError);
    EXPECT_EQ(invoke({"--help"}).code, kOk);
}

TEST(Oracle, ReportsForCanonicalMetrics) {
    Outcome o = invoke({"oracle", golden_spec("totally_vicious.spec"), "--grid", "64x64", "--y-range", "-1:1",
                        "--stencil", "3"});
    EXPECT_EQ(o.code, kOk);
    EXPECT_EQ(first_line(o.out), "inferred=TotallyVicious");
    EXPECT_NE(o.out.find("\nexact=TotallyVicious\n"), std::string::npos);
    EXPECT_NE(o.out.find("\nmatch=true\n"), std::string::npos);

    o = invoke({"oracle", golden_spec("globally_hyperbolic.spec")});
    EXPECT_EQ(o.code, kOk);
    EXPECT_NE(o.out.find("\ncausal_cycle=false\n"), std::string::npos);
    EXPECT_NE(o.out.find("\ndiamond_violations=0\n"), std::string::npos);

    o = invoke({"oracle", golden_spec("null_circle.spec")});
    EXPECT_EQ(o.code, kOk);
    EXPECT_NE(o.out.find("\ncausal_cycle=true\n"), std::string::npos);
    EXPECT_NE(o.out.find("\ntimelike_cycle=false\n"), std::string::npos);
}

TEST(Oracle, ConfigurationAndGeometryErrors) {
    EXPECT_EQ(invoke({"oracle", golden_spec("null_circle.spec"), "--stencil", "0"}).code, kUsageError);
    EXPECT_EQ(invoke({"oracle", golden_spec("null_circle.spec"), "--grid", "6x64"}).code, kUsageError);
    EXPECT_EQ(invoke({"oracle", golden_spec("null_circle.spec"), "--grid", "64"}).code, kUsageError);
    EXPECT_EQ(invoke({"oracle", golden_spec("null_circle.spec"), "--y-range", "1:-1"}).code, kUsageError);
    EXPECT_EQ(invoke({"oracle", spec("general.spec")}).code, kDomainError);
    const Outcome o = invoke({"oracle", golden_spec("null_circle.spec"), "--grid", "64x8"});
    EXPECT_NE(o.err.find("aspect ratio"), std::string::npos);
}

TEST(Oracle, WritesReachableSet) {
    const fs::path pgm = scratch("reach.pgm");
    const fs::path csv = scratch("reach.csv");
    EXPECT_EQ(invoke({"oracle", golden_spec("globally_hyperbolic.spec"), "--grid", "16x16", "--out", pgm.string()}).code,
              kOk);
    EXPECT_EQ(slurp(pgm).substr(0, 13), "P2\n16 16\n255\n");
    EXPECT_EQ(invoke({"oracle", golden_spec("globally_hyperbolic.spec"), "--grid", "16x16", "--out", csv.string()}).code,
              kOk);
    EXPECT_EQ(slurp(csv).substr(0, 14), "i,j,reachable\n");
}

TEST(Render, ConesAreNull) {
    const fs::path out = scratch("cones.csv");
    ASSERT_EQ(invoke({"render", "cones", spec("tilted_tv.spec"), "--grid", "8x8", "--out", out.string()}).code, kOk);
    std::istringstream in(slurp(out));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "x,y,d1x,d1y,d2x,d2y");
    const FlatMetric m = validate_lorentzian(1, 1, 1);
    int rows = 0;
    while (std::getline(in, line)) {
        double v[6];
        ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3], &v[4], &v[5]), 6);
        for (int k : {2, 4}) {
            const TangentVector d{v[k], v[k + 1]};
            const double scale = 4.0 * (d.a * d.a + d.b * d.b);
            EXPECT_LE(std::abs(quadratic_form(m, d)) / scale, 1e-12);
        }
        ++rows;
    }
    EXPECT_EQ(rows, 64);
}

TEST(Render, DiamondStaysBetweenTips) {
    const fs::path out = scratch("diamond.pgm");
    ASSERT_EQ(invoke({"render", "diamond", golden_spec("globally_hyperbolic.spec"), "--p", "0,0", "--q", "0,1",
                      "--out", out.string()})
                  .code,
              kOk);
    std::istringstream in(slurp(out));
    std::string magic;
    int w = 0, h = 0, max = 0;
    in >> magic >> w >> h >> max;
    ASSERT_EQ(magic, "P2");
    ASSERT_EQ(max, 255);
    int set = 0;
    for (int row = 0; row < h; ++row) {
        for (int col = 0; col < w; ++col) {
            int v = 0;
            in >> v;
            if (v == 0) continue;
            ++set;
            const int j = h - 1 - row;
            const double y = -1.0 + (j + 0.5) * 2.0 / h;  // default y-range -1:1
            EXPECT_GE(y, 0.0);
            EXPECT_LE(y, 1.0);
        }
    }
    EXPECT_GT(set, 0);
    EXPECT_EQ(invoke({"render", "diamond", golden_spec("globally_hyperbolic.spec"), "--p", "0"}).code, kUsageError);
}

TEST(Render, CurvatureOfConstantCoefficientsIsZero) {
    const Outcome o = invoke({"render", "curvature", spec("constant.spec"), "--grid", "8x8"});
    ASSERT_EQ(o.code, kOk);
    std::istringstream in(o.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "x,y,K");
    int rows = 0;
    while (std::getline(in, line)) {
        EXPECT_EQ(line.substr(line.rfind(',') + 1), "0");
        ++rows;
    }
    EXPECT_EQ(rows, 64);
    EXPECT_EQ(invoke({"render", "curvature", spec("general.spec"), "--grid", "8x8"}).code, kOk);
    EXPECT_EQ(invoke({"render", "curvature", spec("riemannian.spec")}).code, kDomainError);
}

TEST(Render, ByteIdenticalAcrossRuns) {
    for (const char* what : {"cones", "curvature"}) {
        const Outcome a = invoke({"render", what, spec("conformal_gh.spec"), "--grid", "16x16"});
        const Outcome b = invoke({"render", what, spec("conformal_gh.spec"), "--grid", "16x16"});
        EXPECT_EQ(a.code, kOk);
        EXPECT_EQ(a.out, b.out);
    }
    const std::vector<std::string> diamond{"render", "diamond", golden_spec("globally_hyperbolic.spec"), "--p", "0.2,0",
                                           "--q", "0.7,1.5"};
    EXPECT_EQ(invoke(diamond).out, invoke(diamond).out);
    EXPECT_EQ(invoke({"render"}).code, kUsageError);
}

// The installed binary, run as a separate process, reports the same exit codes.
int process_exit(const std::string& args) {
    const std::string cmd = std::string(LORCYL_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Binary, ExitCodes) {
    EXPECT_EQ(process_exit("classify " + golden_spec("totally_vicious.spec")), 0);
    EXPECT_EQ(process_exit("classify " + spec("riemannian.spec")), 1);
    EXPECT_EQ(process_exit("classify"), 2);
    EXPECT_EQ(process_exit("oracle " + golden_spec("null_circle.spec") + " --stencil 0"), 2);
}

}  // namespace
}  // namespace lorcyl::cli
