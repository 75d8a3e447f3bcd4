#include <doctest.h>

#include <algorithm>
#include <string>

#include "wigdet/experiments.hpp"

using namespace wigdet;

namespace {
ExperimentConfig base(const std::string& sub) {
  ExperimentConfig cfg;
  cfg.subcommand = sub;
  cfg.seed = 20240801;
  cfg.seed_set = true;
  return cfg;
}
}  // namespace

TEST_CASE("reports are byte-identical across runs and worker counts") {
  ExperimentConfig cfg = base("clt");
  cfg.ensemble = "gue";
  cfg.n = 32;
  cfg.replicates = 24;
  const std::string once = run_experiment(cfg).dump();
  const std::string twice = run_experiment(cfg).dump();
  CHECK(once == twice);
  cfg.workers = 2;
  CHECK(run_experiment(cfg).dump() == once);

  ExperimentConfig mart = base("martingale");
  mart.ensemble = "goe";
  mart.n = 64;
  mart.replicates = 12;
  const std::string m1 = run_experiment(mart).dump();
  mart.workers = 3;
  CHECK(run_experiment(mart).dump() == m1);
}

TEST_CASE("clt report fields") {
  ExperimentConfig cfg = base("clt");
  cfg.ensemble = "gue";
  cfg.n = 64;
  cfg.n_compare = 16;
  cfg.replicates = 40;
  const Report r = run_experiment(cfg);
  CHECK(r["config"]["path"] == "tridiag");
  CHECK(r["config"]["law"] == "gue");
  CHECK(r["results"]["standardized"]["summary"]["count"] == 40);
  const double d = r["results"]["standardized"]["ks_std_normal"]["d"];
  CHECK(d > 0.0);
  CHECK(d < 1.0);
  CHECK(r["results"]["compare"]["n"] == 16);

  // dense path on the iid ensembles
  ExperimentConfig iid = base("clt");
  iid.ensemble = "iid-gaussian-complex";
  iid.n = 24;
  iid.replicates = 30;
  const Report ri = run_experiment(iid);
  CHECK(ri["config"]["path"] == "dense");
  CHECK(ri["config"]["law"] == "iid-complex");
}

TEST_CASE("moments experiment pins the exact values") {
  ExperimentConfig cfg = base("moments");
  cfg.mclass = "goe";
  cfg.n = 2;
  cfg.replicates = 500;
  const Report r = run_experiment(cfg);
  CHECK(r["results"]["exact"]["second_moment"] == "7");
  CHECK(r["results"]["exact"]["first_moment"] == "-1");
  CHECK(r["results"]["mc"]["second"]["estimate"].get<double>() > 0.0);

  ExperimentConfig gue = base("moments");
  gue.mclass = "gue";
  gue.n = 2;
  gue.replicates = 1;  // skips Monte Carlo
  const Report rg = run_experiment(gue);
  CHECK(rg["results"]["exact"]["second_moment"] == "3");
  CHECK_FALSE(rg["results"].contains("mc"));
}

TEST_CASE("trotter check produces a sane two-sample comparison") {
  ExperimentConfig cfg = base("trotter-check");
  cfg.ensemble = "gue";
  cfg.n = 16;
  cfg.replicates = 60;
  const Report r = run_experiment(cfg);
  const double d = r["results"]["ks_two_sample"]["d"];
  const double p = r["results"]["ks_two_sample"]["p"];
  CHECK(d >= 0.0);
  CHECK(d <= 1.0);
  CHECK(p >= 0.0);
  CHECK(p <= 1.0);
}

TEST_CASE("phase and martingale experiments") {
  ExperimentConfig phase = base("phase");
  phase.ensemble = "gue";
  phase.n = 128;
  phase.replicates = 50;
  phase.order = 2;
  const Report rp = run_experiment(phase);
  CHECK(rp["results"]["weyl"].size() == 2);
  CHECK(rp["results"]["weyl"][0]["k"] == 1);

  ExperimentConfig mart = base("martingale");
  mart.ensemble = "gue";
  mart.n = 128;
  mart.replicates = 40;
  const Report rm = run_experiment(mart);
  CHECK(rm["results"]["max_telescoping_residual"].get<double>() < 1e-12);
  CHECK(rm["results"]["pooled_second_moment"].get<double>() > 0.5);
}

TEST_CASE("resolvent, ftc and swap experiments run clean") {
  ExperimentConfig res = base("resolvent");
  res.ensemble = "gue";
  res.n = 12;
  res.replicates = 6;
  res.z0_re = 0.2;
  res.z0_im = 0.5;
  res.order = 3;
  const Report rr = run_experiment(res);
  CHECK(rr["results"]["rr_identity_residual"].get<double>() < 1e-12);
  CHECK(rr["results"]["coeff_bound_ratio_k16"].get<double>() <= 1.0);

  ExperimentConfig ftc = base("ftc");
  ftc.ensemble = "gue";
  ftc.n = 8;
  ftc.z0_re = 0.1;
  ftc.z0_im = 0.2;
  ftc.tol = 1e-6;
  const Report rf = run_experiment(ftc);
  CHECK(rf["results"]["residual"].get<double>() < 1e-6);

  ExperimentConfig swap = base("swap");
  swap.ensemble = "gue";
  swap.ensemble_b = "gue";
  swap.n = 8;
  swap.replicates = 30;
  swap.z0_re = 0.2;
  const Report rs = run_experiment(swap);
  CHECK(rs["results"]["diff"].get<double>() == 0.0);
}

TEST_CASE("sample tables and csv rendering") {
  ExperimentConfig cfg = base("sample");
  cfg.ensemble = "gue";
  cfg.what = "tridiag";
  cfg.n = 5;
  cfg.format = "csv";
  const Report r = run_experiment(cfg);
  const std::string csv = render_report(r, "csv");
  CHECK(csv.rfind("i,a,b\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);  // header + 5 rows

  ExperimentConfig trace = base("sample");
  trace.ensemble = "gue";
  trace.what = "trace";
  trace.n = 8;
  const Report rt = run_experiment(trace);
  CHECK(rt["results"]["table"].size() == 4);  // j = 1..4
  CHECK(rt["results"]["table"][0]["h"].is_null());

  ExperimentConfig mat = base("sample");
  mat.ensemble = "iid-gaussian-real";
  mat.what = "matrix";
  mat.n = 3;
  CHECK(run_experiment(mat)["results"]["table"].size() == 9);
}

TEST_CASE("config validation errors") {
  ExperimentConfig cfg = base("clt");
  cfg.seed_set = false;
  CHECK_THROWS_AS(run_experiment(cfg), UsageError);

  ExperimentConfig bad = base("no-such-command");
  CHECK_THROWS_AS(run_experiment(bad), UsageError);

  ExperimentConfig badn = base("clt");
  badn.n = 0;
  CHECK_THROWS_AS(run_experiment(badn), UsageError);

  ExperimentConfig badfmt = base("clt");
  badfmt.format = "xml";
  CHECK_THROWS_AS(run_experiment(badfmt), UsageError);

  ExperimentConfig badlaw = base("clt");
  badlaw.ensemble = "bernoulli-complex";
  badlaw.n = 8;
  badlaw.replicates = 5;
  CHECK_THROWS_AS(run_experiment(badlaw), UsageError);  // no default law
}
