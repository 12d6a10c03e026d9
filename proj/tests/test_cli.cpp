#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "divcurl/cli.hpp"

using namespace divcurl;
using divcurl::cli::json;

namespace {

struct Result {
  int status = 0;
  std::string out;
  json body;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "divcurl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  if (r.status != 2) r.body = json::parse(r.out);
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("divcurl_cli_" + name);
  std::filesystem::remove_all(p);
  return p;
}

std::vector<std::string> csv_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

}  // namespace

TEST(Cli, GeneratorSpecs) {
  EXPECT_EQ(cli::generate_from_spec("square:n=4").num_triangles(), 64);
  EXPECT_EQ(cli::generate_from_spec("annulus:rin=0.5,rout=1,rings=2,sectors=12").num_holes(), 1);
  EXPECT_EQ(cli::generate_from_spec("disk:rings=2,sectors=8,refine=1").num_triangles(),
            4 * generate_disk(2, 8, 1.0).num_triangles());
  EXPECT_THROW(cli::generate_from_spec("hexagon:n=3"), Error);
  EXPECT_THROW(cli::generate_from_spec("square:n=3,rings=2"), Error);
  EXPECT_THROW(cli::generate_from_spec("square:n=2.5"), Error);
}

TEST(Cli, EigLambda1OnSquare) {
  const auto dir = scratch("eig");
  const auto r = invoke({"eig", "--gen", "square:n=4,refine=4", "--out", dir.string()});
  ASSERT_EQ(r.status, 0) << r.out;
  const double l1 = r.body["values"][0]["value"].get<double>();
  EXPECT_NEAR(l1, 19.74, 0.05);
  const auto lines = csv_lines(dir / "eig.csv");
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0].rfind("name,value", 0), 0u);
  EXPECT_EQ(lines[1].rfind("lambda1,", 0), 0u);
  EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, EigSteklovTable) {
  const auto r = invoke({"eig", "--which", "steklov", "-k", "3", "--gen", "disk:rings=4,sectors=32"});
  ASSERT_EQ(r.status, 0) << r.out;
  ASSERT_EQ(r.body["values"].size(), 3u);
  EXPECT_NEAR(r.body["values"][1]["value"].get<double>(), 1.0, 0.05);
}

TEST(Cli, SolveNormalIncompatibleNamesIdentity) {
  const auto r = invoke({"solve-normal", "--gen", "square:n=4", "--rho", "const:1", "--eta-nu", "const:0"});
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.body["error"]["code"], "INCOMPATIBLE_DATA");
  EXPECT_EQ(r.body["error"]["condition"], "normal_compatibility");
  EXPECT_NEAR(r.body["error"]["value"].get<double>(), 1.0, 1e-12);
}

TEST(Cli, SolveNormalWritesFields) {
  const auto dir = scratch("solve");
  const auto r = invoke({"solve-normal", "--gen", "annulus:rin=0.5,rout=1,rings=2,sectors=16", "--omega", "const:1",
                         "--out", dir.string()});
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(r.body["report"]["satisfied"].get<bool>());
  for (const char* f : {"v.txt", "psi0.txt", "phi0.txt", "chi.txt", "report.json"}) EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  EXPECT_TRUE(r.body.contains("least_energy"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, SolveTangentialReportsBothReadings) {
  const auto r = invoke({"solve-tangential", "--gen", "square:n=6", "--rho", "const:1"});
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(r.body["report"]["extra"].contains("rhs_literal"));
}

TEST(Cli, SolveMixedEchoesGammaNu) {
  const auto r = invoke({"solve-mixed", "--gen", "square:n=6", "--rho", "const:1", "--gamma-nu", "bottom"});
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.body["gamma_nu"], "bottom");
  EXPECT_TRUE(r.body["report"]["satisfied"].get<bool>());
}

TEST(Cli, DecomposeCirculation) {
  const auto r = invoke({"decompose", "--gen", "annulus:rin=0.5,rout=1,rings=4,sectors=48"});
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_GT(r.body["energy_fraction_h"].get<double>(), 0.95);
}

TEST(Cli, ConvergencePoisson) {
  const auto dir = scratch("conv");
  const auto r = invoke({"convergence", "--case", "poisson", "--levels", "4", "--out", dir.string()});
  ASSERT_EQ(r.status, 0) << r.out;
  const auto& rows = r.body["rows"];
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 1; i < rows.size(); ++i)
    EXPECT_LT(rows[i]["error"].get<double>(), rows[i - 1]["error"].get<double>());
  const double rate = rows[3]["rate"].get<double>();
  EXPECT_GE(rate, 1.8);
  EXPECT_LE(rate, 2.2);
  const auto lines = csv_lines(dir / "convergence.csv");
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0], "level,h,error,rate");
  std::filesystem::remove_all(dir);
}

TEST(Cli, VerifyBoundsSmall) {
  const auto r = invoke({"verify-bounds", "--gen", "square:n=6", "--draws", "2", "--seed", "3"});
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(r.body["all_satisfied"].get<bool>());
  const auto& p = r.body["meshes"][0]["problems"];
  for (const char* k : {"dirichlet", "neumann", "normal", "tangential", "mixed", "mixed_pieces"}) EXPECT_TRUE(p.contains(k)) << k;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).status, 2);
  EXPECT_EQ(invoke({"frobnicate"}).status, 2);
  EXPECT_EQ(invoke({"eig", "--which", "nonsense"}).status, 2);
  EXPECT_EQ(invoke({"verify-bounds", "--draws", "-1"}).status, 2);
  EXPECT_EQ(invoke({"eig", "--tol", "0"}).status, 2);
}

TEST(Cli, DomainErrorsAreStructured) {
  const auto r = invoke({"mesh", "info", "--mesh", "/nonexistent/mesh.txt"});
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.body["error"]["code"], "IO_ERROR");
  const auto p = invoke({"decompose", "--gen", "annulus:rin=0.5,rout=1,rings=2,sectors=12", "--field", "gen:rotation"});
  EXPECT_EQ(p.status, 0);
  const auto g = invoke({"mesh", "info", "--gen", "square:n=2", "--mesh", "x"});
  EXPECT_EQ(g.status, 1);
}

TEST(Cli, MeshGenAndInfoRoundTrip) {
  const auto dir = scratch("mesh");
  ASSERT_EQ(invoke({"mesh", "gen", "--gen", "annulus:rin=0.5,rout=1,rings=2,sectors=12", "--out", dir.string()}).status, 0);
  const auto r = invoke({"mesh", "info", "--mesh", (dir / "mesh.txt").string()});
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.body["mesh"]["holes"], 1);
  EXPECT_EQ(r.body["loops"].size(), 2u);
  std::filesystem::remove_all(dir);
}

TEST(Cli, TimestampIsolatedToOneKey) {
  const auto a = invoke({"eig", "--gen", "square:n=4"});
  const auto b = invoke({"eig", "--gen", "square:n=4"});
  json ja = a.body, jb = b.body;
  ASSERT_TRUE(ja.contains("generated_at"));
  ja.erase("generated_at");
  jb.erase("generated_at");
  EXPECT_EQ(ja.dump(), jb.dump());
}
