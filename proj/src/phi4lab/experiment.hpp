#pragma once

#include <map>
#include <string>
#include <vector>

namespace phi4 {

// Declarative experiment configuration: key = value file plus flag
// overrides (flags win). Unknown keys are rejected.
struct ExperimentConfig {
  std::string experiment;
  int N = 2;
  std::vector<int> N_list;
  double T = 2.0;
  double h = 1e-3;        // wave / heat step
  double h_q = 1.0 / 64;  // Duhamel quadrature step
  double h_W = 1e-2;      // noise path step
  double h_gamma = 0.0;   // 0 = default 1/(8N)
  double t = 0.5;         // evaluation time for object experiments
  int samples = 1000;
  int burn_in = 2000;
  int thin = 10;
  double s0 = -1.0;
  uint64_t seed = 1;
  std::string out = "out";
  int threads = 0;  // 0 = library default

  std::string canonical() const;  // sorted key=value text
  uint64_t hash() const;
};

ExperimentConfig parse_config_file(const std::string& path);
void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Executes the configured experiment, writes CSV tables and a JSON summary
// into cfg.out. Returns the process exit status (0 ok, 2 invalid config,
// 3 budget exceeded).
int run_experiment(const ExperimentConfig& cfg);

// Minimal CSV writer: '.' decimal, %.17g floats, no locale.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  void row_values(const std::vector<double>& cells);
  static std::string fmt(double v);

 private:
  std::string path_;
  std::vector<std::string> lines_;
  void flush();
};

}  // namespace phi4
