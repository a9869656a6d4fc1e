#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cvqa/experiment.hpp"
#include "cvqa/fourier.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_dir;
  std::size_t threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Config file path");
  cmd->add_option("--seed", args.seed, "Master seed (overrides config)")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_option("--out", args.out_dir, "Output directory (overrides config)");
  cmd->add_option("--threads", args.threads, "Worker threads (overrides config)");
}

cvqa::RunConfig load_config(const CommonArgs& args,
                            const std::string& subcommand) {
  cvqa::RunConfig config;
  if (!args.config_path.empty()) {
    config = cvqa::RunConfig::from_file(args.config_path);
  }
  if (args.seed_set) {
    config.seed = args.seed;
    config.seed_set = true;
  }
  if (!args.out_dir.empty()) config.out_dir = args.out_dir;
  if (args.threads != 0) config.threads = args.threads;
  config.validate(subcommand);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford-point loss landscape experiments"};
  app.require_subcommand(1);

  CommonArgs variance_args, minima_args, random_args, lemma_args;
  CLI::App* variance =
      app.add_subcommand("variance-scan", "Sampling-mode variance study");
  add_common(variance, variance_args);
  CLI::App* minima =
      app.add_subcommand("exact-minima", "Greedy siloed-minimum trials");
  add_common(minima, minima_args);
  CLI::App* random_obs = app.add_subcommand(
      "random-obs", "Random-observable second-moment identity");
  add_common(random_obs, random_args);
  CLI::App* lemma =
      app.add_subcommand("lemma-checks", "Structural identity checks");
  add_common(lemma, lemma_args);

  CLI::App* plot = app.add_subcommand("plot", "Render a result CSV to SVG");
  std::string plot_csv, plot_kind, plot_svg;
  plot->add_option("--csv", plot_csv, "Input CSV path")->required();
  plot->add_option("--kind", plot_kind, "variance or exact_minima")->required();
  plot->add_option("--svg", plot_svg, "Output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (variance->parsed()) {
      cvqa::run_variance_scan(load_config(variance_args, "variance_scan"));
    } else if (minima->parsed()) {
      cvqa::run_exact_minima(load_config(minima_args, "exact_minima"));
    } else if (random_obs->parsed()) {
      cvqa::run_random_observable_identity(
          load_config(random_args, "random_observable_identity"));
    } else if (lemma->parsed()) {
      if (!cvqa::run_lemma_checks(load_config(lemma_args, "lemma_checks"))) {
        std::cerr << "lemma-checks: one or more checks failed\n";
        return 1;
      }
    } else if (plot->parsed()) {
      cvqa::emit_plot(plot_csv, plot_kind, plot_svg);
    }
  } catch (const cvqa::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const cvqa::TermCapExceeded& e) {
    std::cerr << "engine cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::length_error& e) {
    std::cerr << "engine cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
