#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

std::string fixture(const std::string& name) {
  return (fs::path(BEXT_FIXTURE_DIR) / name).string();
}

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("bext_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, const fs::path& stdout_file) {
  std::string cmd = std::string(BEXT_CLI_PATH) + " " + args + " > " + stdout_file.string() +
                    " 2> " + stdout_file.string() + ".err";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("degree subcommand prints the winding degree") {
  fs::path dir = fresh_dir("degree");
  CHECK(run_cli("degree --scenario " + fixture("disc_rotation_wavy.json"), dir / "out") == 0);
  CHECK(slurp(dir / "out") == "1\n");
  CHECK(run_cli("degree --scenario " + fixture("disc_collapse_sine.json"), dir / "out") == 0);
  CHECK(slurp(dir / "out") == "0\n");
  fs::remove_all(dir);
}

TEST_CASE("fixed-points subcommand lists canonical angles") {
  fs::path dir = fresh_dir("fixed");
  CHECK(run_cli("fixed-points --scenario " + fixture("disc_rotation_wavy.json"), dir / "out") ==
        0);
  CHECK(slurp(dir / "out") == "[0, 3.1415926535897931]\n");
  CHECK(run_cli("fixed-points --scenario " + fixture("disc_rotation_identity.json"),
                dir / "out") == 0);
  CHECK(slurp(dir / "out") == "\"all-fixed\"\n");
  fs::remove_all(dir);
}

TEST_CASE("fixed-points exits 2 when the fixed-point set is empty") {
  fs::path dir = fresh_dir("nofix");
  CHECK(run_cli("fixed-points --scenario " + fixture("nofix_translation.json"), dir / "out") ==
        2);
  CHECK(slurp(dir / "out") == "[]\n");
  fs::remove_all(dir);
}

TEST_CASE("extend writes a report and samples, deterministically") {
  fs::path dir = fresh_dir("extend");
  std::string args = "extend --scenario " + fixture("disc_collapse_sine.json") + " --grid 16 " +
                     "--out " + (dir / "run").string();
  CHECK(run_cli(args, dir / "out1") == 0);
  std::string report1 = slurp(dir / "run" / "report.json");
  std::string csv1 = slurp(dir / "run" / "samples.csv");
  CHECK(run_cli(args, dir / "out2") == 0);
  CHECK(slurp(dir / "run" / "report.json") == report1);
  CHECK(slurp(dir / "run" / "samples.csv") == csv1);

  nlohmann::json parsed = nlohmann::json::parse(report1);
  CHECK(parsed.at("degree").get<int>() == 0);
  CHECK(parsed.at("strategy").get<std::string>() == "collapse0");
  CHECK(parsed.at("boundary_error").get<double>() <= 1e-9);
  CHECK(parsed.contains("candidates"));
  CHECK(parsed.contains("oscillation"));
  CHECK(csv1.rfind("x,y,Fx,Fy\n", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("extend runs on a curved surface scenario") {
  fs::path dir = fresh_dir("surface");
  std::string args = "extend --scenario " + fixture("paraboloid_collapse_sine.json") +
                     " --grid 12 --out " + (dir / "run").string();
  CHECK(run_cli(args, dir / "out") == 0);
  std::string csv = slurp(dir / "run" / "samples.csv");
  CHECK(csv.rfind("x,y,z,Fx,Fy,Fz\n", 0) == 0);
  nlohmann::json parsed = nlohmann::json::parse(slurp(dir / "run" / "report.json"));
  bool convex_flag = false;
  for (const auto& f : parsed.at("flags")) {
    convex_flag = convex_flag || f.get<std::string>() == "assumed-convex";
  }
  CHECK(convex_flag);
  fs::remove_all(dir);
}

TEST_CASE("exit codes separate hypothesis, input, and strategy failures") {
  fs::path dir = fresh_dir("codes");
  CHECK(run_cli("extend --scenario " + fixture("nofix_translation.json") + " --grid 8 --out " +
                    (dir / "a").string(),
                dir / "out") == 2);
  CHECK(run_cli("extend --scenario " + fixture("halfwinding_invalid.json") + " --grid 8 --out " +
                    (dir / "b").string(),
                dir / "out") == 3);
  CHECK(run_cli("extend --scenario " + fixture("square_rotation_wavy.json") +
                    " --strategy collapse0 --grid 8 --out " + (dir / "c").string(),
                dir / "out") == 4);
  CHECK(run_cli("extend --scenario " + (dir / "missing.json").string() + " --grid 8 --out " +
                    (dir / "d").string(),
                dir / "out") == 3);
  CHECK(run_cli("extend", dir / "out") != 0);
  fs::remove_all(dir);
}

TEST_CASE("render produces a deterministic SVG") {
  fs::path dir = fresh_dir("render");
  std::string args = "render --scenario " + fixture("square_rotation_wavy.json") +
                     " --density 8 --svg-size 320 --out " + (dir / "run").string();
  CHECK(run_cli(args, dir / "out1") == 0);
  std::string svg1 = slurp(dir / "run" / "render.svg");
  CHECK(svg1.rfind("<svg", 0) == 0);
  CHECK(svg1.find("</svg>") != std::string::npos);
  CHECK(run_cli(args, dir / "out2") == 0);
  CHECK(slurp(dir / "run" / "render.svg") == svg1);
  fs::remove_all(dir);
}
