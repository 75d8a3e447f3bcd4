#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wigdet/experiments.hpp"

namespace {

void add_common(CLI::App* cmd, wigdet::ExperimentConfig& cfg,
                std::string& output_path) {
  cmd->add_option("--seed", cfg.seed, "root seed (required; replicate r uses "
                                      "splitmix mix of seed and r)")
      ->required();
  cmd->add_option("--workers", cfg.workers, "worker threads (results do not depend on it)");
  cmd->add_option("--format", cfg.format, "json or csv");
  cmd->add_option("--output", output_path, "write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wigner log-determinant simulation and verification toolkit"};
  app.require_subcommand(1);

  wigdet::ExperimentConfig cfg;
  std::string output_path;

  auto* clt = app.add_subcommand("clt", "log-determinant limit-law experiment");
  clt->add_option("--ensemble", cfg.ensemble, "catalog ensemble");
  clt->add_option("--n", cfg.n, "matrix size");
  clt->add_option("--replicates", cfg.replicates, "Monte Carlo replicates");
  clt->add_option("--law", cfg.law, "standardization law (gue, goe, iid-real, iid-complex)");
  clt->add_option("--path", cfg.path, "tridiag, dense or auto");
  clt->add_option("--beta", cfg.beta, "tridiagonal beta override");
  clt->add_option("--start-index", cfg.start_index, "trace start index m (0 = default)");
  clt->add_option("--n-compare", cfg.n_compare, "second size run on the same seed schedule");

  auto* trotter = app.add_subcommand("trotter-check",
                                     "dense vs tridiagonal distribution check");
  trotter->add_option("--ensemble", cfg.ensemble, "gue or goe");
  trotter->add_option("--n", cfg.n, "matrix size");
  trotter->add_option("--replicates", cfg.replicates, "samples per side");

  auto* moments = app.add_subcommand("moments", "exact and Monte Carlo determinant moments");
  moments->add_option("--n", cfg.n, "matrix size");
  moments->add_option("--class", cfg.mclass, "goe or gue");
  moments->add_option("--replicates", cfg.replicates, "Monte Carlo replicates (<2 skips MC)");

  auto* phase = app.add_subcommand("phase", "phase equidistribution Weyl sums");
  phase->add_option("--ensemble", cfg.ensemble, "gue or goe");
  phase->add_option("--beta", cfg.beta, "tridiagonal beta override");
  phase->add_option("--n", cfg.n, "matrix size (even)");
  phase->add_option("--replicates", cfg.replicates, "number of traces");
  phase->add_option("--max-k", cfg.order, "largest Weyl frequency");
  phase->add_option("--start-index", cfg.start_index, "trace start index m");

  auto* mart = app.add_subcommand("martingale", "martingale increment diagnostics");
  mart->add_option("--ensemble", cfg.ensemble, "gue or goe");
  mart->add_option("--beta", cfg.beta, "tridiagonal beta override");
  mart->add_option("--n", cfg.n, "matrix size (even)");
  mart->add_option("--replicates", cfg.replicates, "number of traces");
  mart->add_option("--epsilon", cfg.epsilon, "Lindeberg threshold");
  mart->add_option("--start-index", cfg.start_index, "trace start index m");

  auto* resol = app.add_subcommand("resolvent", "resolvent calculus probes");
  resol->add_option("--ensemble", cfg.ensemble, "catalog ensemble");
  resol->add_option("--n", cfg.n, "matrix size");
  resol->add_option("--replicates", cfg.replicates, "probe instances");
  resol->add_option("--z0-re", cfg.z0_re, "Re z0");
  resol->add_option("--z0-im", cfg.z0_im, "Im z0 (> 0)");
  resol->add_option("--order", cfg.order, "Taylor order k");

  auto* ftc = app.add_subcommand("ftc", "log-determinant / Stieltjes integral identity");
  ftc->add_option("--ensemble", cfg.ensemble, "catalog ensemble");
  ftc->add_option("--n", cfg.n, "matrix size");
  ftc->add_option("--z0-re", cfg.z0_re, "Re z0 = E");
  ftc->add_option("--z0-im", cfg.z0_im, "Im z0 = eta0 >= 0");
  ftc->add_option("--tol", cfg.tol, "quadrature tolerance");

  auto* swap = app.add_subcommand("swap", "two-ensemble determinant statistic comparison");
  swap->add_option("--ensemble", cfg.ensemble, "catalog ensemble A");
  swap->add_option("--ensemble-b", cfg.ensemble_b, "catalog ensemble B")->required();
  swap->add_option("--n", cfg.n, "matrix size");
  swap->add_option("--replicates", cfg.replicates, "replicates per ensemble");
  swap->add_option("--z0-re", cfg.z0_re, "Re z0");
  swap->add_option("--z0-im", cfg.z0_im, "Im z0");
  swap->add_option("--g", cfg.gfun, "test function id (bump, cosine, logistic)");
  swap->add_option("--g-mu", cfg.g_mu, "test function center (default: law center)");
  swap->add_option("--g-width", cfg.g_width, "test function width (default: law scale)");
  swap->add_option("--law", cfg.law, "law for the default test-function scaling");

  auto* sample = app.add_subcommand("sample", "emit raw draws");
  sample->add_option("--ensemble", cfg.ensemble, "catalog ensemble");
  sample->add_option("--what", cfg.what, "matrix, tridiag or trace");
  sample->add_option("--n", cfg.n, "size");
  sample->add_option("--beta", cfg.beta, "tridiagonal beta override");
  sample->add_option("--start-index", cfg.start_index, "trace start index m");

  for (auto* cmd : {clt, trotter, moments, phase, mart, resol, ftc, swap, sample})
    add_common(cmd, cfg, output_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cfg.seed_set = true;
  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (cfg.subcommand == "sample" && !sample->get_option("--format")->count())
    cfg.format = "csv";

  try {
    const wigdet::Report report = wigdet::run_experiment(cfg);
    const std::string text = wigdet::render_report(report, cfg.format);
    if (output_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(output_path);
      if (!out) {
        std::cerr << "error: cannot open " << output_path << "\n";
        return 3;
      }
      out << text;
    }
  } catch (const wigdet::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const wigdet::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
