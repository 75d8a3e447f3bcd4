#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <json.hpp>

#include "wigdet/errors.hpp"

namespace wigdet {

inline constexpr const char* kVersion = "0.1.0";

// Resolved experiment configuration.  Every field that influences results is
// echoed into the report; worker count and output destination are
// presentation-only and never echoed.
struct ExperimentConfig {
  std::string subcommand;
  std::string ensemble = "gue";
  std::string ensemble_b;          // swap partner
  std::string mclass = "goe";      // moments class
  long long n = 64;
  long long n_compare = 0;         // clt: optional second size on the same seeds
  std::size_t replicates = 100;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string law;                 // standardization law; empty = derive
  int beta = 0;                    // tridiagonal beta override; 0 = derive
  double z0_re = 0.0;
  double z0_im = 0.0;
  int order = 3;                   // taylor order / max Weyl frequency
  std::string path = "auto";       // clt: tridiag | dense | auto
  std::string what = "matrix";     // sample: matrix | tridiag | trace
  std::string gfun = "bump";
  double g_mu = std::numeric_limits<double>::quiet_NaN();     // auto
  double g_width = std::numeric_limits<double>::quiet_NaN();  // auto
  double epsilon = 0.1;            // Lindeberg threshold
  double tol = 1e-6;               // ftc quadrature tolerance
  int start_index = 0;             // trace start m; 0 = default
  std::string format = "json";     // json | csv
  unsigned workers = 1;
};

using Report = nlohmann::ordered_json;

Report run_experiment(const ExperimentConfig& config);

// json -> pretty print; csv -> the report's results.table rows
std::string render_report(const Report& report, const std::string& format);

}  // namespace wigdet
