#include "wigdet/experiments.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <vector>

#include "wigdet/decomposition.hpp"
#include "wigdet/dense_logdet.hpp"
#include "wigdet/ensembles.hpp"
#include "wigdet/moments.hpp"
#include "wigdet/parallel.hpp"
#include "wigdet/resolvent.hpp"
#include "wigdet/stats.hpp"
#include "wigdet/tridiag.hpp"

namespace wigdet {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

int beta_for(const ExperimentConfig& cfg) {
  if (cfg.beta == 1 || cfg.beta == 2) return cfg.beta;
  if (cfg.ensemble == "gue") return 2;
  if (cfg.ensemble == "goe") return 1;
  throw UsageError("tridiagonal path needs --beta or ensemble gue/goe");
}

std::string default_law(const std::string& ensemble) {
  if (ensemble == "gue") return "gue";
  if (ensemble == "goe") return "goe";
  if (ensemble == "iid-gaussian-real") return "iid-real";
  if (ensemble == "iid-gaussian-complex") return "iid-complex";
  throw UsageError("no default law for ensemble " + ensemble + "; pass --law");
}

Report summary_json(const SummaryStats& s) {
  return Report{{"count", s.n},
                {"mean", s.mean},
                {"mean_stderr", s.mean_stderr},
                {"variance", s.variance},
                {"variance_stderr", s.variance_stderr},
                {"skewness", s.skewness},
                {"excess_kurtosis", s.excess_kurtosis}};
}

Report ks_json(const KSResult& ks) {
  Report r{{"d", ks.d}, {"p", ks.p_approx}, {"n", ks.n}};
  if (ks.m > 0) r["m"] = ks.m;
  return r;
}

Report base_config(const ExperimentConfig& cfg) {
  return Report{{"subcommand", cfg.subcommand},
                {"seed", cfg.seed},
                {"format", cfg.format}};
}

struct CltRun {
  std::vector<double> standardized;
  std::vector<double> log_abs_det;
};

CltRun clt_samples(const ExperimentConfig& cfg, const std::string& path,
                   long long n) {
  const LawSpec law = LawSpec::from_name(
      cfg.law.empty() ? default_law(cfg.ensemble) : cfg.law);
  CltRun run;
  run.standardized.resize(cfg.replicates);
  run.log_abs_det.resize(cfg.replicates);
  if (path == "tridiag") {
    const int beta = beta_for(cfg);
    const int m = cfg.start_index;
    for_each_replicate(cfg.replicates, cfg.workers, [&](std::size_t r) {
      const auto model = sample_tridiagonal(static_cast<int>(n), beta,
                                            rng::derive_seed(cfg.seed, r));
      run.log_abs_det[r] = logdet_trace(model, m).log_abs_Dn;
    });
  } else {
    const EnsembleSpec spec = make_ensemble(cfg.ensemble);
    for_each_replicate(cfg.replicates, cfg.workers, [&](std::size_t r) {
      const Eigen::MatrixXcd mat =
          sample_matrix(spec, static_cast<int>(n), rng::derive_seed(cfg.seed, r));
      double log_abs;
      if (spec.family == EnsembleFamily::wigner_hermitian)
        log_abs = logdet_hermitian(mat).log_abs;
      else if (spec.offdiag.is_real())
        log_abs = logdet_real_lu(mat.real()).log_abs;
      else
        log_abs = logdet_abs_lu(mat);
      run.log_abs_det[r] = log_abs;
    });
  }
  for (std::size_t r = 0; r < cfg.replicates; ++r)
    run.standardized[r] = standardize_logdet(run.log_abs_det[r], n, law);
  return run;
}

Report run_clt(const ExperimentConfig& cfg) {
  std::string path = cfg.path;
  if (path == "auto")
    path = (cfg.ensemble == "gue" || cfg.ensemble == "goe") ? "tridiag" : "dense";
  if (path != "tridiag" && path != "dense")
    throw UsageError("clt path must be tridiag, dense or auto");

  const std::string law_name =
      cfg.law.empty() ? default_law(cfg.ensemble) : cfg.law;

  Report config = base_config(cfg);
  config["ensemble"] = cfg.ensemble;
  config["n"] = cfg.n;
  config["replicates"] = cfg.replicates;
  config["law"] = law_name;
  config["path"] = path;
  if (path == "tridiag") config["start_index"] = cfg.start_index;
  if (cfg.n_compare > 0) config["n_compare"] = cfg.n_compare;

  const CltRun run = clt_samples(cfg, path, cfg.n);
  Report results;
  results["standardized"] = Report{
      {"summary", summary_json(summary(run.standardized))},
      {"ks_std_normal", ks_json(ks_one_sample(run.standardized, "std-normal"))}};
  if (cfg.n_compare > 0) {
    const CltRun other = clt_samples(cfg, path, cfg.n_compare);
    const KSResult ks_small = ks_one_sample(other.standardized, "std-normal");
    const KSResult ks_big = ks_one_sample(run.standardized, "std-normal");
    results["compare"] = Report{{"n", cfg.n_compare},
                                {"ks", ks_json(ks_small)},
                                {"ks_decreases", ks_big.d < ks_small.d}};
  }
  if (cfg.format == "csv") {
    Report table = Report::array();
    for (std::size_t r = 0; r < cfg.replicates; ++r)
      table.push_back(Report{{"replicate", r},
                             {"log_abs_det", run.log_abs_det[r]},
                             {"standardized", run.standardized[r]}});
    results["table"] = std::move(table);
  }
  return Report{{"tool", "wigdet"},
                {"version", kVersion},
                {"config", std::move(config)},
                {"results", std::move(results)}};
}

Report run_trotter_check(const ExperimentConfig& cfg) {
  if (cfg.ensemble != "gue" && cfg.ensemble != "goe")
    throw UsageError("trotter-check compares gue or goe with its tridiagonal form");
  const int beta = beta_for(cfg);
  const EnsembleSpec spec = make_ensemble(cfg.ensemble);

  std::vector<double> dense(cfg.replicates), tridiag(cfg.replicates);
  for_each_replicate(cfg.replicates, cfg.workers, [&](std::size_t r) {
    const Eigen::MatrixXcd mat = sample_matrix(
        spec, static_cast<int>(cfg.n), rng::derive_seed(cfg.seed, r));
    dense[r] = logdet_hermitian(mat).log_abs;
  });
  for_each_replicate(cfg.replicates, cfg.workers, [&](std::size_t r) {
    const auto model =
        sample_tridiagonal(static_cast<int>(cfg.n), beta,
                           rng::derive_seed(cfg.seed, cfg.replicates + r));
    tridiag[r] = det_recursion_exact(model).back().log_abs;
  });

  Report config = base_config(cfg);
  config["ensemble"] = cfg.ensemble;
  config["beta"] = beta;
  config["n"] = cfg.n;
  config["replicates"] = cfg.replicates;

  Report results;
  results["dense_summary"] = summary_json(summary(dense));
  results["tridiag_summary"] = summary_json(summary(tridiag));
  results["ks_two_sample"] = ks_json(ks_two_sample(dense, tridiag));
  return Report{{"tool", "wigdet"},
                {"version", kVersion},
                {"config", std::move(config)},
                {"results", std::move(results)}};
}

Report run_moments(const ExperimentConfig& cfg) {
  const MomentClass cls = moment_class_from_name(cfg.mclass);
  const int n = static_cast<int>(cfg.n);

  Report config = base_config(cfg);
  config["class"] = cfg.mclass;
  config["n"] = cfg.n;
  config["replicates"] = cfg.replicates;

  Report exact;
  exact["first_moment"] = first_moment_exact(n).str();
  exact["perfect_matchings"] = perfect_matching_count(n).str();
  if (n <= 7)
    exact["second_moment"] = second_moment_bruteforce(n, cls).value.str();
  if (n % 2 == 0) {
    // |E det| / (n^{-1/4} sqrt(n!)) approaches (2/pi)^{1/4}
    const double log_ratio = log_bigint(perfect_matching_count(n)) -
                             (-0.25 * std::log(static_cast<double>(n)) +
                              0.5 * log_factorial(n));
    exact["first_moment_stirling_ratio"] = std::exp(log_ratio);
  }

  Report results;
  results["exact"] = exact;

  Report row{{"n", n}, {"class", cfg.mclass}, {"exact_first", exact["first_moment"]}};
  row["exact_second"] = n <= 7 ? exact["second_moment"] : Report();
  if (cfg.replicates >= 2) {
    const EnsembleSpec spec = make_ensemble(cfg.mclass);
    const MomentMC first = moment_mc(spec, n, WhichMoment::first, cfg.replicates,
                                     cfg.seed, 0.0, cfg.workers);
    const MomentMC second = moment_mc(spec, n, WhichMoment::second,
                                      cfg.replicates,
                                      rng::derive_seed(cfg.seed, 1u << 20),
                                      0.0, cfg.workers);
    results["mc"] = Report{{"first", Report{{"estimate", first.estimate},
                                            {"stderr", first.stderr_}}},
                           {"second", Report{{"estimate", second.estimate},
                                             {"stderr", second.stderr_}}}};
    row["mc_first"] = first.estimate;
    row["mc_first_stderr"] = first.stderr_;
    row["mc_second"] = second.estimate;
    row["mc_second_stderr"] = second.stderr_;
  }
  results["table"] = Report::array({row});
  return Report{{"tool", "wigdet"},
                {"version", kVersion},
                {"config", std::move(config)},
                {"results", std::move(results)}};
}

std::vector<DeterminantTrace> sample_traces(const ExperimentConfig& cfg) {
  const int beta = beta_for(cfg);
  std::vector<DeterminantTrace> traces(cfg.replicates);
  for_each_replicate(cfg.replicates, cfg.workers, [&](std::size_t r) {
    const auto model = sample_tridiagonal(static_cast<int>(cfg.n), beta,
                                          rng::derive_seed(cfg.seed, r));
    traces[r] = logdet_trace(model, cfg.start_index);
  });
  return traces;
}

Report run_phase(const ExperimentConfig& cfg) {
  const auto traces = sample_traces(cfg);
  std::vector<double> thetas(traces.size());
  for (std::size_t r = 0; r < traces.size(); ++r)
    thetas[r] = traces[r].theta.back();

  Report config = base_config(cfg);
  config["ensemble"] = cfg.ensemble;
  config["beta"] = beta_for(cfg);
  config["n"] = cfg.n;
  config["replicates"] = cfg.replicates;
  config["max_k"] = cfg.order;

  Report table = Report::array();
  for (int k = 1; k <= cfg.order; ++k) {
    const WeylEstimate est = weyl_sum(thetas, k);
    table.push_back(Report{{"k", k},
                           {"mean_re", est.mean.real()},
                           {"mean_im", est.mean.imag()},
                           {"abs_mean", std::abs(est.mean)},
                           {"stderr", est.stderr_},
                           {"count", est.count}});
  }
  Report results;
  results["weyl"] = table;
  results["table"] = std::move(table);
  return Report{{"tool", "wigdet"},
                {"version", kVersion},
                {"config", std::move(config)},
                {"results", std::move(results)}};
}

Report run_martingale(const ExperimentConfig& cfg) {
  const auto traces = sample_traces(cfg);
  const MartingaleReport rep = martingale_report(traces, cfg.epsilon);
  double max_tel = 0.0;
  for (const auto& t : traces)
    max_tel = std::max(max_tel, telescoping_residual(t));

  Report config = base_config(cfg);
  config["ensemble"] = cfg.ensemble;
  config["beta"] = beta_for(cfg);
  config["n"] = cfg.n;
  config["replicates"] = cfg.replicates;
  config["epsilon"] = cfg.epsilon;
  config["start_index"] = rep.m;

  Report results{{"pooled_mean", rep.pooled_mean},
                 {"pooled_mean_stderr", rep.pooled_mean_stderr},
                 {"pooled_second_moment", rep.pooled_second},
                 {"pooled_second_stderr", rep.pooled_second_stderr},
                 {"s_n2", rep.s_n2},
                 {"lindeberg_ratio", rep.lindeberg_ratio},
                 {"max_telescoping_residual", max_tel}};
  return Report{{"tool", "wigdet"},
                {"version", kVersion},
                {"config", std::move(config)},
                {"results", std::move(results)}};
}

Report run_resolvent(const ExperimentConfig& cfg) {
  const std::complex<double> z0{cfg.z0_re, cfg.z0_im};
  if (z0.imag() <= 0.0) throw UsageError("resolvent probes need Im z0 > 0");
  const EnsembleSpec spec = make_ensemble(cfg.ensemble);
  const int n = static_cast<int>(cfg.n);
  const double root_n = std::sqrt(static_cast<double>(n));
  const int k = std::max(1, cfg.order);

  double rr_residual = 0.0, herglotz_min = std::numeric_limits<double>::max();
  double identity_residual = 0.0, coeff_ratio = 0.0, cyclic_residual = 0.0;
  double halving_min = std::numeric_limits<double>::max(), halving_max = 0.0;
  double elementary_norm_max = 0.0;
  double min_gap = std::numeric_limits<double>::max(), deloc_max = 0.0;
  int interval_count_max = 0;
  const double half_width = 0.05;

  for (std::size_t rep = 0; rep < cfg.replicates; ++rep) {
    const std::uint64_t s = rng::derive_seed(cfg.seed, rep);
    const Eigen::MatrixXcd w =
        sample_matrix(spec, n, s) / root_n;
    const Eigen::MatrixXcd r0 = resolvent(w, z0);

    // R R* = (R - R*)/(2 i eta)
    const Eigen::MatrixXcd lhs = r0 * r0.adjoint();
    const Eigen::MatrixXcd rhs =
        (r0 - r0.adjoint()) / (2.0 * kI * z0.imag());
    rr_residual = std::max(rr_residual, opnorm(lhs - rhs, NormPair::inf_one));
    herglotz_min = std::min(herglotz_min, stieltjes(w, z0).imag());

    rng::Stream pick(rng::derive_seed(s, 1));
    const int a = static_cast<int>(pick.bits() % n);
    int b = static_cast<int>(pick.bits() % (n - 1));
    if (b >= a) ++b;
    const ElementaryMatrix v = (rep % 3 == 0)   ? ElementaryMatrix::diagonal(a)
                               : (rep % 3 == 1) ? ElementaryMatrix::symmetric(a, b)
                                                : ElementaryMatrix::antisymmetric(a, b);
    for (auto pair : {NormPair::inf_one, NormPair::inf_two, NormPair::two_two,
                      NormPair::two_one})
      elementary_norm_max =
          std::max(elementary_norm_max, opnorm(v.to_matrix(n), pair));

    const double t = 1.0;
    const Eigen::MatrixXcd rt =
        resolvent(w + (t / root_n) * v.to_matrix(n), z0);
    const Eigen::MatrixXcd expect = r0 - (t / root_n) * r0 * v.to_matrix(n) * rt;
    identity_residual = std::max(
        identity_residual, opnorm(rt - expect, NormPair::inf_one) /
                               std::max(1.0, opnorm(rt, NormPair::inf_one)));

    const TaylorCoefficients coeffs = taylor_coefficients(r0, v, k);
    cyclic_residual = std::max(cyclic_residual, coeffs.cyclic_residual);
    const double r0_norm = opnorm(r0, NormPair::inf_one);
    const double envelope_base =
        std::min(r0_norm, 1.0 / (n * z0.imag()));
    double power = 1.0;
    for (int j = 1; j <= k; ++j) {
      power *= r0_norm;
      coeff_ratio = std::max(
          coeff_ratio, std::abs(coeffs.c[j - 1]) / (16.0 * power * envelope_base));
    }

    const RemainderProbe full = expansion_remainder_probe(w, v, z0, t, 4);
    const RemainderProbe half = expansion_remainder_probe(w, v, z0, t / 2.0, 4);
    if (std::abs(half.remainder) > 0) {
      const double ratio = std::abs(full.remainder) / std::abs(half.remainder);
      halving_min = std::min(halving_min, ratio);
      halving_max = std::max(halving_max, ratio);
    }
  }

  Report config = base_config(cfg);
  config["ensemble"] = cfg.ensemble;
  config["n"] = cfg.n;
  config["replicates"] = cfg.replicates;
  config["z0"] = Report{{"re", cfg.z0_re}, {"im", cfg.z0_im}};
  config["order"] = k;

  Report results{{"rr_identity_residual", rr_residual},
                 {"herglotz_min_im", herglotz_min},
                 {"resolvent_identity_residual", identity_residual},
                 {"elementary_norm_max", elementary_norm_max},
                 {"coeff_bound_ratio_k16", coeff_ratio},
                 {"cyclic_trace_residual", cyclic_residual},
                 {"remainder_halving_ratio_min", halving_min},
                 {"remainder_halving_ratio_max", halving_max}};
  return Report{{"tool", "wigdet"},
                {"version", kVersion},
                {"config", std::move(config)},
                {"results", std::move(results)}};
}

Report run_ftc(const ExperimentConfig& cfg) {
  const EnsembleSpec spec = make_ensemble(cfg.ensemble);
  const int n = static_cast<int>(cfg.n);
  const Eigen::MatrixXcd w =
      sample_matrix(spec, n, rng::derive_seed(cfg.seed, 0)) /
      std::sqrt(static_cast<double>(n));
  const std::complex<double> z0{cfg.z0_re, cfg.z0_im};
  const double t_top =
      100.0 * (opnorm(w, NormPair::two_two) + std::abs(z0.real()) + 1.0);
  const FtcResult res = ftc_logdet_identity(w, z0, t_top, cfg.tol);

  Report config = base_config(cfg);
  config["ensemble"] = cfg.ensemble;
  config["n"] = cfg.n;
  config["z0"] = Report{{"re", cfg.z0_re}, {"im", cfg.z0_im}};
  config["tol"] = cfg.tol;

  Report results{{"residual", res.residual},
                 {"log_abs_det_z0", res.lhs},
                 {"log_abs_det_top", res.at_top},
                 {"integral", res.integral},
                 {"t_top", t_top},
                 {"evaluations", res.evaluations}};
  if (res.residual > cfg.tol)
    throw ToleranceError("ftc identity residual exceeds the tolerance");
  return Report{{"tool", "wigdet"},
                {"version", kVersion},
                {"config", std::move(config)},
                {"results", std::move(results)}};
}

Report run_swap(const ExperimentConfig& cfg) {
  if (cfg.ensemble_b.empty())
    throw UsageError("swap needs --ensemble-b");
  const EnsembleSpec ens_a = make_ensemble(cfg.ensemble);
  const EnsembleSpec ens_b = make_ensemble(cfg.ensemble_b);
  const std::string law_name = cfg.law.empty() ? "gue" : cfg.law;
  const LawSpec law = LawSpec::from_name(law_name);
  const double mu =
      std::isnan(cfg.g_mu) ? law.center(cfg.n) : cfg.g_mu;
  const double width =
      std::isnan(cfg.g_width) ? std::max(1.0, law.scale(cfg.n)) : cfg.g_width;
  const TestFunction g = TestFunction::make(cfg.gfun, mu, width);
  const SwapResult res =
      swap_experiment(ens_a, ens_b, static_cast<int>(cfg.n),
                      {cfg.z0_re, cfg.z0_im}, g, cfg.replicates, cfg.seed,
                      cfg.workers);

  Report config = base_config(cfg);
  config["ensemble"] = cfg.ensemble;
  config["ensemble_b"] = cfg.ensemble_b;
  config["n"] = cfg.n;
  config["replicates"] = cfg.replicates;
  config["z0"] = Report{{"re", cfg.z0_re}, {"im", cfg.z0_im}};
  config["g"] = Report{{"id", g.id}, {"mu", g.mu}, {"width", g.width}};

  Report results{{"mean_a", res.mean_a},
                 {"mean_b", res.mean_b},
                 {"diff", res.diff},
                 {"stderr_a", res.stderr_a},
                 {"stderr_b", res.stderr_b},
                 {"pooled_stderr", res.pooled_stderr},
                 {"within_3_stderr", std::abs(res.diff) <= 3.0 * res.pooled_stderr}};
  return Report{{"tool", "wigdet"},
                {"version", kVersion},
                {"config", std::move(config)},
                {"results", std::move(results)}};
}

Report run_sample(const ExperimentConfig& cfg) {
  Report config = base_config(cfg);
  config["ensemble"] = cfg.ensemble;
  config["n"] = cfg.n;
  config["what"] = cfg.what;

  Report table = Report::array();
  if (cfg.what == "matrix") {
    const EnsembleSpec spec = make_ensemble(cfg.ensemble);
    const Eigen::MatrixXcd m =
        sample_matrix(spec, static_cast<int>(cfg.n), cfg.seed);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        table.push_back(Report{{"i", i + 1},
                               {"j", j + 1},
                               {"re", m(i, j).real()},
                               {"im", m(i, j).imag()}});
  } else if (cfg.what == "tridiag") {
    const auto model =
        sample_tridiagonal(static_cast<int>(cfg.n), beta_for(cfg), cfg.seed);
    config["beta"] = model.beta;
    for (int i = 1; i <= model.n; ++i) {
      Report row{{"i", i}, {"a", model.a(i - 1)}};
      row["b"] = i < model.n ? Report(model.b(i - 1)) : Report();
      table.push_back(std::move(row));
    }
  } else if (cfg.what == "trace") {
    const auto model =
        sample_tridiagonal(static_cast<int>(cfg.n), beta_for(cfg), cfg.seed);
    config["beta"] = model.beta;
    const DeterminantTrace trace = logdet_trace(model, cfg.start_index);
    config["start_index"] = trace.m;
    for (int j = trace.m; j <= trace.half(); ++j) {
      Report row{{"j", j}, {"logF", trace.log_f(j)}, {"theta", trace.angle(j)}};
      row["h"] = j > trace.m ? Report(trace.h_at(j)) : Report();
      table.push_back(std::move(row));
    }
  } else {
    throw UsageError("sample target must be matrix, tridiag or trace");
  }

  Report results;
  results["table"] = std::move(table);
  return Report{{"tool", "wigdet"},
                {"version", kVersion},
                {"config", std::move(config)},
                {"results", std::move(results)}};
}

std::string csv_escape(const Report& cell) {
  if (cell.is_null()) return "";
  if (cell.is_string()) return cell.get<std::string>();
  return cell.dump();
}

}  // namespace

Report run_experiment(const ExperimentConfig& cfg) {
  if (!cfg.seed_set) throw UsageError("an explicit --seed is required");
  if (cfg.replicates < 1) throw UsageError("replicates must be >= 1");
  if (cfg.n < 1) throw UsageError("n must be >= 1");
  if (cfg.format != "json" && cfg.format != "csv")
    throw UsageError("format must be json or csv");

  if (cfg.subcommand == "clt") return run_clt(cfg);
  if (cfg.subcommand == "trotter-check") return run_trotter_check(cfg);
  if (cfg.subcommand == "moments") return run_moments(cfg);
  if (cfg.subcommand == "phase") return run_phase(cfg);
  if (cfg.subcommand == "martingale") return run_martingale(cfg);
  if (cfg.subcommand == "resolvent") return run_resolvent(cfg);
  if (cfg.subcommand == "ftc") return run_ftc(cfg);
  if (cfg.subcommand == "swap") return run_swap(cfg);
  if (cfg.subcommand == "sample") return run_sample(cfg);
  throw UsageError("unknown subcommand: " + cfg.subcommand);
}

std::string render_report(const Report& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  if (format != "csv") throw UsageError("format must be json or csv");
  if (!report.contains("results") || !report["results"].contains("table"))
    throw UsageError("csv output is available only for tabular results");
  const Report& table = report["results"]["table"];
  if (!table.is_array() || table.empty())
    throw UsageError("csv output needs a nonempty table");
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, value] : table.front().items()) {
    (void)value;
    out << (first ? "" : ",") << key;
    first = false;
  }
  out << "\n";
  for (const auto& row : table) {
    first = true;
    for (const auto& [key, value] : row.items()) {
      (void)key;
      out << (first ? "" : ",") << csv_escape(value);
      first = false;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace wigdet
