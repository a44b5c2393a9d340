// Command-line front end: kdvbbm <command> --config <path> [--jobs K] [--out DIR]
//
// Exit codes: 0 success, 2 input that cannot be parsed (CLI flags or config
// file), 3 config validation failure, 4 numerical failure (blowup or a
// fixed-point iteration that does not contract; partial artifacts are kept).

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include <kdvbbm.hpp>

int main(int argc, char** argv) {
  CLI::App app{"spectral laboratory for a fifth-order KdV-BBM water-wave model"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  unsigned jobs = 1;

  const char* names[] = {"simulate",       "picard", "global-split",
                         "norms",          "soliton", "verify-estimates"};
  const char* blurbs[] = {
      "integrate the equation and record norm and energy histories",
      "run the Duhamel fixed-point iteration and report contraction ratios",
      "evolve the low/high frequency splitting and its junction bookkeeping",
      "evaluate the configured norms of the initial datum",
      "report the solitary-wave constants and equation residuals",
      "run the randomized estimate campaign, growth and quotient probes"};
  for (int i = 0; i < 6; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
    sub->add_option("--config", config_path, "JSON run configuration (or a manifest to re-run)")
        ->required();
    sub->add_option("--jobs", jobs, "worker bound for campaign batches (runs sequentially)");
    sub->add_option("--out", out_override, "artifact directory, overrides the config");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    kdvbbm::RunConfig cfg =
        kdvbbm::load_config(config_path, app.get_subcommands().front()->get_name());
    kdvbbm::apply_seed_override(cfg, std::getenv("KDVBBM_SEED"));
    if (jobs < 1) throw kdvbbm::validation_error("jobs", "jobs >= 1");
    cfg.jobs = jobs;
    if (!out_override.empty()) {
      cfg.out = out_override;
      cfg.resolved["out"] = out_override;
    }

    const kdvbbm::RunOutcome outcome = kdvbbm::execute(cfg);
    std::printf("%s: %s (artifacts in %s)\n", kdvbbm::command_name(cfg.command),
                outcome.status.c_str(), outcome.dir.string().c_str());
    return outcome.exit_code;
  } catch (const kdvbbm::parse_error& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const kdvbbm::validation_error& e) {
    std::fprintf(stderr, "config error at %s: requires %s\n", e.field_path.c_str(),
                 e.hypothesis.c_str());
    return 3;
  } catch (const kdvbbm::config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 3;
  } catch (const kdvbbm::symbol_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 3;
  } catch (const kdvbbm::shape_error& e) {
    std::fprintf(stderr, "internal shape mismatch: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
