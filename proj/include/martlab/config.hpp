#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace martlab {

// Full experiment configuration.  Every field below participates in the
// canonical serialization and config hash; runtime-only knobs (threads,
// output directory) live outside the hashed surface because they must not
// influence results.
struct ExperimentConfig {
  std::string experiment = "levy-check";
  std::uint64_t seed = 20260824;
  int d = 1;
  double t_max = 1.0;
  int steps = 4096;
  int ensemble_size = 1000;
  int replications = 100;

  // Phi generator
  std::string phi_model = "constant";  // constant | scalar-diffusion |
                                       // regime-switch | driver-functional
  double phi_scale = 1.0;
  double phi_v_lo = 0.25;
  double phi_v_hi = 1.0;
  double phi_kappa = 1.0;
  double phi_eta = 1.5;
  double phi_rate = 4.0;
  double phi_alpha = 1.0;
  double phi_beta = 0.5;
  double phi_gamma = 0.0;
  double phi_corr = 0.3;
  std::vector<double> phi_levels = {0.5, 1.5};

  // time scale
  std::string lambda_kind = "identity";  // identity | power | plateau
  double lambda_power = 2.0;
  double lambda_plateau_from = 0.4;
  double lambda_plateau_to = 0.6;

  // initial value law
  std::string y0_law = "constant";  // constant | gaussian | two-point
  double y0_value = 0.0;
  double y0_mean = 0.0;
  double y0_sd = 1.0;
  double y0_a = -1.0;
  double y0_b = 1.0;
  double y0_p = 0.5;

  // test levels
  std::vector<double> probe_times = {0.25, 0.5, 0.75, 1.0};
  int n_perm = 1999;
  double alpha = 0.01;
  double alpha_reject = 0.001;
  std::vector<double> epsilon_ladder = {0.5, 0.25, 0.1, 0.05};
  std::vector<double> depth_ladder = {4, 6, 8, 10};
  std::vector<double> n_ladder = {64, 256, 1024, 4096};
  double eps_qv = 0.1;
  double qv_threshold = 0.05;
  std::vector<double> trunc_levels = {0.5, 1.0, 2.0};
  std::vector<double> big_n_grid = {1.0, 2.0, 4.0, 8.0};
  std::vector<double> r_grid = {0.4, 0.2, 0.1, 0.05};
  std::vector<double> l_grid = {0.5, 1.0, 2.0, 4.0};

  // runtime only, never hashed
  int threads = 0;        // 0 = hardware concurrency
  std::string out_dir;    // empty = no files written

  static ExperimentConfig defaults_for(const std::string& experiment);

  // Parses the flat [section] key = value format; unknown sections or keys
  // are errors.  Values overwrite the current contents.
  void apply_text(const std::string& text);
  static ExperimentConfig from_file(const std::string& path,
                                    const std::string& experiment);

  std::string to_file_string() const;  // emits every hashed key
  std::string canonical() const;       // sorted key=value lines
  std::string hash() const;            // FNV-1a 64 of canonical(), hex
  void validate() const;               // throws std::invalid_argument
};

}  // namespace martlab
