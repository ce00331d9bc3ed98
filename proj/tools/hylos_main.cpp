// hylos command-line driver. Talks to the library only through hylos.h.
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "hylos/hylos.h"

namespace {

constexpr int kPass = 0;
constexpr int kError = 1;
constexpr int kFail = 2;

int report_error(const char* what, hylos_status st) {
  std::fprintf(stderr, "hylos: %s: %s (%s)\n", what, hylos_last_error(), hylos_status_name(st));
  return kError;
}

void print_report(const hylos_report* rep, const char* title) {
  std::printf("%s: %s\n", title, hylos_report_passed(rep) ? "PASS" : "FAIL");
  for (size_t i = 0; i < hylos_report_metric_count(rep); ++i) {
    const char* name = nullptr;
    double value = 0.0;
    hylos_report_metric_at(rep, i, &name, &value);
    std::printf("  %-28s %.10g\n", name, value);
  }
  for (size_t i = 0; i < hylos_report_verdict_count(rep); ++i) {
    const char* name = nullptr;
    int passed = 0, gating = 0;
    hylos_report_verdict_at(rep, i, &name, &passed, &gating);
    std::printf("  [%s] %s%s\n", passed ? "ok" : "no", name, gating ? "" : " (informational)");
  }
  for (size_t i = 0; i < hylos_report_note_count(rep); ++i) std::printf("  note: %s\n", hylos_report_note_at(rep, i));
}

// Loads the config, runs `body`, prints and optionally writes the report.
template <class Body>
int drive(const std::string& config_path, const std::string& title, std::string out_dir, Body&& body) {
  hylos_config* cfg = nullptr;
  hylos_status st = hylos_config_load(config_path.c_str(), &cfg);
  if (st != HYLOS_OK) return report_error("config", st);
  if (out_dir.empty()) {
    char buf[4096];
    if (hylos_config_get(cfg, "output.dir", buf, sizeof buf) == HYLOS_OK) out_dir = buf;
  }
  hylos_report* rep = nullptr;
  st = body(cfg, &rep);
  if (st != HYLOS_OK) {
    hylos_config_free(cfg);
    return report_error(title.c_str(), st);
  }
  print_report(rep, title.c_str());
  int code = hylos_report_passed(rep) ? kPass : kFail;
  if (!out_dir.empty()) {
    st = hylos_report_write(rep, cfg, out_dir.c_str());
    if (st != HYLOS_OK) code = report_error("write", st);
  }
  hylos_report_free(rep);
  hylos_config_free(cfg);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laboratory for hylomorphic solitons of the NS and NKG equations"};
  app.require_subcommand(1);

  std::string config_path, out_dir, experiment;

  auto* gs = app.add_subcommand("groundstate", "solve and validate a ground-state profile");
  gs->add_option("--config", config_path, "run config")->required()->check(CLI::ExistingFile);
  gs->add_option("--out", out_dir, "output directory (defaults to output.dir)");

  auto* ev = app.add_subcommand("evolve", "integrate the configured initial state");
  ev->add_option("--config", config_path, "run config")->required()->check(CLI::ExistingFile);
  ev->add_option("--out", out_dir, "output directory (defaults to output.dir)");

  auto* ex = app.add_subcommand("experiment", "run a named experiment");
  std::vector<std::string> names;
  for (size_t i = 0; i < hylos_experiment_count(); ++i) names.emplace_back(hylos_experiment_name(i));
  ex->add_option("name", experiment, "experiment name")->required()->check(CLI::IsMember(names));
  ex->add_option("--config", config_path, "run config")->required()->check(CLI::ExistingFile);
  ex->add_option("--out", out_dir, "output directory")->required();

  auto* va = app.add_subcommand("validate", "check a config against the schema");
  va->add_option("--config", config_path, "run config")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kError;
  }

  if (*gs) return drive(config_path, "groundstate", out_dir, [](auto* cfg, auto** rep) { return hylos_run_groundstate(cfg, rep); });
  if (*ev) return drive(config_path, "evolve", out_dir, [](auto* cfg, auto** rep) { return hylos_run_evolve(cfg, rep); });
  if (*ex) {
    return drive(config_path, experiment, out_dir,
                 [&](auto* cfg, auto** rep) { return hylos_run_experiment(experiment.c_str(), cfg, rep); });
  }

  hylos_config* cfg = nullptr;
  hylos_status st = hylos_config_load(config_path.c_str(), &cfg);
  if (st == HYLOS_OK) st = hylos_config_validate(cfg);
  hylos_config_free(cfg);
  if (st == HYLOS_OK) {
    std::printf("validate: PASS\n");
    return kPass;
  }
  if (st == HYLOS_ERR_CONFIG) {
    std::printf("validate: FAIL: %s\n", hylos_last_error());
    return kFail;
  }
  return report_error("validate", st);
}
