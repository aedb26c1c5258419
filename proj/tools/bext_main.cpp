#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bext/scenario.hpp"
#include "bext/svg_render.hpp"
#include "bext/tolerances.hpp"

namespace {

// 0 success, 2 unmet hypothesis, 3 malformed input, 4 inapplicable strategy
constexpr int kExitHypothesis = 2;
constexpr int kExitBadInput = 3;
constexpr int kExitStrategy = 4;

struct CommonOpts {
  std::string scenario_path;
  std::string out_dir = ".";
  std::optional<std::string> strategy;
  std::optional<int> grid;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
};

bext::Scenario load(const CommonOpts& opts) {
  bext::Scenario s = bext::load_scenario(opts.scenario_path);
  if (opts.strategy.has_value()) {
    if (*opts.strategy == "rotation") {
      s.strategy = bext::Strategy::kRotation;
    } else if (*opts.strategy == "collapse0") {
      s.strategy = bext::Strategy::kCollapse0;
    } else {
      throw bext::ScenarioError("strategy must be 'rotation' or 'collapse0'");
    }
  }
  if (opts.grid.has_value()) {
    if (*opts.grid < 2) throw bext::ScenarioError("grid must be at least 2");
    s.verify.grid = *opts.grid;
  }
  if (opts.tol.has_value()) {
    if (!(*opts.tol > 0.0)) throw bext::ScenarioError("tol must be positive");
    s.verify.tol = *opts.tol;
  }
  if (opts.seed.has_value()) s.seed = *opts.seed;
  return s;
}

int cmd_degree(const CommonOpts& opts) {
  bext::Scenario s = load(opts);
  std::printf("%d\n", s.boundary_map.degree);
  return 0;
}

int cmd_fixed_points(const CommonOpts& opts) {
  bext::Scenario s = load(opts);
  bext::FixedPointSet fps = bext::fixed_points(s.boundary_map, bext::kTol.fixed_point_tol);
  if (fps.all_fixed()) {
    std::printf("\"all-fixed\"\n");
    return 0;
  }
  std::string out = "[";
  for (std::size_t i = 0; i < fps.points.size(); ++i) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", fps.points[i].radians());
    out += i == 0 ? "" : ", ";
    out += buf;
  }
  out += "]";
  std::printf("%s\n", out.c_str());
  return fps.empty() ? kExitHypothesis : 0;
}

int cmd_extend(const CommonOpts& opts) {
  bext::Scenario s = load(opts);
  bext::Pipeline pipeline = bext::build_pipeline(std::move(s));
  bext::VerificationReport report = bext::run_verification(pipeline);

  std::filesystem::create_directories(opts.out_dir);
  std::filesystem::path report_path = std::filesystem::path(opts.out_dir) / "report.json";
  std::filesystem::path csv_path = std::filesystem::path(opts.out_dir) / "samples.csv";
  bext::write_file_atomic(report_path, bext::report_to_json(report));
  bext::write_file_atomic(csv_path, bext::samples_to_csv(pipeline));

  std::printf("report: %s\n", report_path.string().c_str());
  std::printf("samples: %s\n", csv_path.string().c_str());
  std::printf("degree=%d boundary_error=%.3g candidates=%zu\n", report.degree,
              report.boundary_err, report.candidates.size());
  return 0;
}

int cmd_render(const CommonOpts& opts, const bext::RenderSpec& spec) {
  bext::Scenario s = load(opts);
  bext::Pipeline pipeline = bext::build_pipeline(std::move(s));
  std::filesystem::create_directories(opts.out_dir);
  std::filesystem::path svg_path = std::filesystem::path(opts.out_dir) / "render.svg";
  bext::write_file_atomic(svg_path, bext::render_svg(pipeline, spec));
  std::printf("render: %s\n", svg_path.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boundary extension toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  bext::RenderSpec render_spec;

  auto add_common = [&opts](CLI::App* cmd, bool with_out) {
    cmd->add_option("--scenario", opts.scenario_path, "scenario JSON file")->required();
    cmd->add_option("--strategy", opts.strategy, "override: rotation | collapse0");
    cmd->add_option("--seed", opts.seed, "override the circumscribed-circle seed");
    if (with_out) {
      cmd->add_option("--out", opts.out_dir, "output directory");
      cmd->add_option("--grid", opts.grid, "override the scan grid");
      cmd->add_option("--tol", opts.tol, "override the scan tolerance");
    }
  };

  CLI::App* degree = app.add_subcommand("degree", "winding degree of the boundary map");
  add_common(degree, false);
  CLI::App* fixed = app.add_subcommand("fixed-points", "fixed points of the boundary map");
  add_common(fixed, false);
  CLI::App* extend = app.add_subcommand("extend", "build the extension and verify it");
  add_common(extend, true);
  CLI::App* render = app.add_subcommand("render", "draw the extension as SVG");
  add_common(render, true);
  render->add_option("--svg-size", render_spec.size_px, "canvas edge in pixels");
  render->add_option("--density", render_spec.density, "arrows per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (degree->parsed()) return cmd_degree(opts);
    if (fixed->parsed()) return cmd_fixed_points(opts);
    if (extend->parsed()) return cmd_extend(opts);
    if (render->parsed()) return cmd_render(opts, render_spec);
  } catch (const bext::HypothesisError& e) {
    std::fprintf(stderr, "hypothesis not met: %s\n", e.what());
    return kExitHypothesis;
  } catch (const bext::StrategyError& e) {
    std::fprintf(stderr, "strategy not applicable: %s\n", e.what());
    return kExitStrategy;
  } catch (const bext::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitBadInput;
  } catch (const bext::EvalError& e) {
    std::fprintf(stderr, "evaluation error: %s\n", e.what());
    return kExitBadInput;
  } catch (const bext::NonIntegerWindingError& e) {
    std::fprintf(stderr, "invalid boundary map: %s\n", e.what());
    return kExitBadInput;
  } catch (const bext::ScenarioError& e) {
    std::fprintf(stderr, "invalid scenario: %s\n", e.what());
    return kExitBadInput;
  } catch (const bext::GeometryError& e) {
    std::fprintf(stderr, "geometry error: %s\n", e.what());
    return kExitBadInput;
  } catch (const bext::UnwrapError& e) {
    std::fprintf(stderr, "winding estimation failed: %s\n", e.what());
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
