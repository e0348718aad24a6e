#include "phi4lab/experiment.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "phi4lab/counting.hpp"
#include "phi4lab/gaussian.hpp"
#include "phi4lab/gibbs.hpp"
#include "phi4lab/heat.hpp"
#include "phi4lab/objects.hpp"
#include "phi4lab/renorm.hpp"
#include "phi4lab/rng.hpp"
#include "phi4lab/stats.hpp"
#include "phi4lab/wave.hpp"

namespace phi4 {

static const char* kVersion = "phi4lab 1.0.0";

std::string CsvWriter::fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path) {
  std::string line;
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) line += ",";
    line += header[i];
  }
  lines_.push_back(line);
  flush();
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  std::string line;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ",";
    line += cells[i];
  }
  lines_.push_back(line);
  flush();
}

void CsvWriter::row_values(const std::vector<double>& cells) {
  std::vector<std::string> s;
  s.reserve(cells.size());
  for (double v : cells) s.push_back(fmt(v));
  row(s);
}

void CsvWriter::flush() {
  std::ofstream os(path_);
  for (const auto& l : lines_) os << l << "\n";
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  os << "N=" << N << "\n";
  os << "N_list=";
  for (size_t i = 0; i < N_list.size(); ++i) os << (i ? "," : "") << N_list[i];
  os << "\n";
  os << "T=" << CsvWriter::fmt(T) << "\n";
  os << "burn_in=" << burn_in << "\n";
  os << "experiment=" << experiment << "\n";
  os << "h=" << CsvWriter::fmt(h) << "\n";
  os << "h_W=" << CsvWriter::fmt(h_W) << "\n";
  os << "h_gamma=" << CsvWriter::fmt(h_gamma) << "\n";
  os << "h_q=" << CsvWriter::fmt(h_q) << "\n";
  os << "s0=" << CsvWriter::fmt(s0) << "\n";
  os << "samples=" << samples << "\n";
  os << "seed=" << seed << "\n";
  os << "t=" << CsvWriter::fmt(t) << "\n";
  os << "thin=" << thin << "\n";
  return os.str();
}

uint64_t ExperimentConfig::hash() const { return fnv1a64(canonical()); }

namespace {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

}  // namespace

void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "experiment")
    cfg.experiment = value;
  else if (key == "N")
    cfg.N = std::stoi(value);
  else if (key == "N_list")
    cfg.N_list = parse_int_list(value);
  else if (key == "T")
    cfg.T = std::stod(value);
  else if (key == "h")
    cfg.h = std::stod(value);
  else if (key == "h_q")
    cfg.h_q = std::stod(value);
  else if (key == "h_W")
    cfg.h_W = std::stod(value);
  else if (key == "h_gamma")
    cfg.h_gamma = std::stod(value);
  else if (key == "t")
    cfg.t = std::stod(value);
  else if (key == "samples")
    cfg.samples = std::stoi(value);
  else if (key == "burn_in")
    cfg.burn_in = std::stoi(value);
  else if (key == "thin")
    cfg.thin = std::stoi(value);
  else if (key == "s0")
    cfg.s0 = std::stod(value);
  else if (key == "seed")
    cfg.seed = std::stoull(value);
  else if (key == "out")
    cfg.out = value;
  else if (key == "threads")
    cfg.threads = std::stoi(value);
  else
    throw std::invalid_argument("unknown config key: " + key);
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config " + path);
  ExperimentConfig cfg;
  std::string line;
  while (std::getline(is, line)) {
    size_t hashpos = line.find('#');
    if (hashpos != std::string::npos) line = line.substr(0, hashpos);
    size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t");
      size_t b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    apply_override(cfg, key, value);
  }
  return cfg;
}

namespace {

using nlohmann::json;

void write_summary(const ExperimentConfig& cfg, json body) {
  body["experiment"] = cfg.experiment;
  body["seed"] = cfg.seed;
  body["config_hash"] = cfg.hash();
  body["config"] = cfg.canonical();
  body["version"] = kVersion;
  std::ofstream os(cfg.out + "/summary.json");
  os << body.dump(2) << "\n";
}

double gamma_h(const ExperimentConfig& cfg, int N) {
  return cfg.h_gamma > 0.0 ? cfg.h_gamma : 1.0 / (8.0 * N);
}

// ---------------------------------------------------------------- identities

int run_identities(const ExperimentConfig& cfg) {
  const int N = cfg.N;
  const double t = cfg.t;
  RngStream root(cfg.seed, "identities");
  RenormTable table(N, gamma_h(cfg, N), std::max(1.0, t), true);
  FourierField g0 = gamma_field(N, 0.0, 0.0);

  CsvWriter csv(cfg.out + "/identities.csv", {"identity", "N", "t", "residual", "scale"});
  json summary;

  {  // multiply: FFT vs direct convolution
    FourierField a = sample_gff(N, root.sub("mulA"));
    FourierField b = sample_gff(N, root.sub("mulB"));
    FourierField fft = multiply(a, b, 2 * N);
    FourierField dir = multiply_direct(a, b, 2 * N);
    double r = (fft - dir).max_abs(), s = dir.max_abs();
    csv.row({"multiply_fft_vs_direct", std::to_string(N), CsvWriter::fmt(0.0), CsvWriter::fmt(r),
             CsvWriter::fmt(s)});
  }

  {  // shell telescoping
    FourierField f = sample_gff(N, root.sub("proj"));
    FourierField sum(f.cutoff());
    for (int K : dyadic_range(N)) sum += project(f, K, ProjectMode::shell);
    double r = (sum - project(f, N, ProjectMode::ball)).max_abs();
    csv.row({"shell_telescoping", std::to_string(N), "0", CsvWriter::fmt(r), "1"});
  }

  {  // quintic pairing decomposition and resistor representation
    BlueData blue = sample_blue(N, root.sub("blue"));
    const double hq = cfg.h_q;
    int G = int(std::lround(t / hq));
    std::vector<FourierField> low_src(size_t(G + 1)), res_src(size_t(G + 1));
    for (int j = 0; j <= G; ++j) {
      QuinticParts parts = quintic_pairing_parts(blue, j * hq, hq, N);
      FourierField lin = with_cutoff(wave_linear(blue, j * hq), N);
      FourierField low(N), rsrc(N);
      for (size_t i = 0; i < low.size(); ++i) {
        low[i] = 3.0 * parts.zero[i] + 18.0 * parts.one[i];
        rsrc[i] = 18.0 * parts.two[i] - g0[i].real() * lin[i];
      }
      low_src[size_t(j)] = std::move(low);
      res_src[size_t(j)] = std::move(rsrc);
    }
    FourierField quintic = wave_quintic(blue, t, hq, N, g0);
    FourierField resistor_exact = resistor(blue, t, table);
    FourierField lhs(N), rhs(N);
    FourierField duh_low = duhamel(low_src, hq, t);
    FourierField duh_res = duhamel(res_src, hq, t);
    for (size_t i = 0; i < lhs.size(); ++i) {
      lhs[i] = 3.0 * quintic[i];
      rhs[i] = duh_low[i] + 18.0 * resistor_exact[i];
    }
    double scale = lhs.max_abs();
    csv.row({"quintic_pairing_decomposition", std::to_string(N), CsvWriter::fmt(t),
             CsvWriter::fmt((lhs - rhs).max_abs()), CsvWriter::fmt(scale)});
    double r2 = 0.0, s2 = resistor_exact.max_abs();
    for (size_t i = 0; i < duh_res.size(); ++i)
      r2 = std::max(r2, std::abs(duh_res[i] / 18.0 - resistor_exact[i]));
    csv.row({"resistor_exact_vs_duhamel", std::to_string(N), CsvWriter::fmt(t),
             CsvWriter::fmt(r2), CsvWriter::fmt(s2)});
  }

  {  // sine kernel symmetrization
    double worst = 0.0;
    for (int K : {1, 2, 4, 8})
      for (int L : {1, 2, 4, 8})
        for (const Vec3i& r : std::vector<Vec3i>{{0, 0, 0}, {1, 0, 0}, {2, -1, 3}}) {
          double d = sine_kernel(K, L, t, r);
          double sym = sine_kernel_symmetrized(K, L, t, r);
          worst = std::max(worst, std::abs(d - sym));
        }
    csv.row({"sine_kernel_symmetrization", "8", CsvWriter::fmt(t), CsvWriter::fmt(worst), "1"});
  }

  {  // heat-wave resonant formula on one noise path
    NoisePath path = sample_noise_path(N, 20.0, cfg.h_W, root.sub("mixed"));
    FourierField lem = mixed_resonant(path, N, t);
    FourierField dir = mixed_two_pairing_direct(path, N, t);
    double r = 0.0;
    for (size_t i = 0; i < lem.size(); ++i) r = std::max(r, std::abs(lem[i] - 18.0 * dir[i]));
    csv.row({"heat_wave_resonant", std::to_string(N), CsvWriter::fmt(t), CsvWriter::fmt(r),
             CsvWriter::fmt(lem.max_abs())});
  }

  {  // 1533 cancellation at the table times
    double c15v = table.c15(t), c33v = table.c33(t), ctot = table.c_total(t);
    csv.row({"cancellation_1533", std::to_string(N), CsvWriter::fmt(t),
             CsvWriter::fmt(std::abs(6.0 * c15v + c33v - ctot)),
             CsvWriter::fmt(1.0 + std::abs(c33v))});
  }

  summary["rows"] = "identities.csv";
  write_summary(cfg, summary);
  return 0;
}

// -------------------------------------------------------------- cancellation

int run_cancellation(const ExperimentConfig& cfg) {
  std::vector<int> Ns = cfg.N_list.empty() ? std::vector<int>{2, 4, 8} : cfg.N_list;
  CsvWriter csv(cfg.out + "/cancellation.csv",
                {"N", "t", "c15", "c33", "c_total", "mc_c15", "mc_c33", "stderr"});
  json summary;
  json rows = json::array();
  for (int N : Ns) {
    RenormTable table(N, gamma_h(cfg, N), 1.0, false);
    FourierField g0 = gamma_field(N, 0.0, 0.0);
    for (double t : {0.25, 0.5, 1.0}) {
      bool big = N > 8;
      double c15v = big ? table.c15_reduced(t) : table.c15(t);
      double c33v = big ? table.c33_reduced(t) : table.c33(t);
      double ctot = table.c_total(t);
      double mc15 = 0.0, mc33 = 0.0, se = 0.0;
      if (N == 2 && cfg.samples > 1) {
        auto cub = [&](const BlueData& b, double tt) { return wave_cubic(b, tt, cfg.h_q, N); };
        auto lin = [&](const BlueData& b, double tt) {
          return with_cutoff(wave_linear(b, tt), N);
        };
        auto qui = [&](const BlueData& b, double tt) {
          return wave_quintic(b, tt, cfg.h_q, N, g0);
        };
        McResult m33 = mc_expect(cub, nullptr, N, t, cfg.samples, cfg.seed, "mc/c33");
        McResult m15 = mc_expect(lin, qui, N, t, cfg.samples, cfg.seed, "mc/c15");
        mc33 = m33.estimate.real();
        mc15 = m15.estimate.real();
        se = std::max(m33.stderr_real, m15.stderr_real);
      }
      csv.row_values({double(N), t, c15v, c33v, ctot, mc15, mc33, se});
      rows.push_back({{"N", N},
                      {"t", t},
                      {"identity_residual", std::abs(6.0 * c15v + c33v - ctot)}});
    }
  }
  summary["rows"] = rows;
  write_summary(cfg, summary);
  return 0;
}

// ------------------------------------------------------------------ counting

struct BoundFit {
  double calibration_c = 0.0;
  double test_max_ratio = 0.0;
  bool pass() const { return test_max_ratio <= calibration_c + 1e-12; }
};

int run_counting(const ExperimentConfig& cfg) {
  std::vector<int> Ns = cfg.N_list.empty() ? std::vector<int>{4, 8, 16, 32} : cfg.N_list;
  CsvWriter csv(cfg.out + "/counting.csv",
                {"lemma", "N", "A", "sign", "count", "bound", "ratio", "grid"});
  json summary;

  const std::vector<Vec3i> calib_dirs{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const std::vector<Vec3i> test_dirs{{1, 1, 0}, {1, -1, 1}, {0, 1, 1}, {1, 1, 1}};

  auto scale_dir = [](const Vec3i& d, int A) {
    int m = linf(d);
    int k = std::max(1, A / m);
    return Vec3i{d[0] * k, d[1] * k, d[2] * k};
  };

  auto run_family = [&](const std::string& name, int sign, auto&& bound_fn,
                        auto&& count_fn) -> BoundFit {
    BoundFit fit;
    auto visit = [&](const std::vector<Vec3i>& dirs, bool calib) {
      for (int N : Ns)
        for (int A : {1, 2, 4, N / 2 > 0 ? N / 2 : 1, N}) {
          if (A < 1 || A > 2 * N) continue;
          for (const Vec3i& d : dirs) {
            Vec3i a = scale_dir(d, A);
            long cnt = count_fn(a, N, sign);
            double bnd = bound_fn(double(linf(a)), double(N));
            double ratio = bnd > 0 ? double(cnt) / bnd : 0.0;
            csv.row({name, std::to_string(N), std::to_string(linf(a)), std::to_string(sign),
                     std::to_string(cnt), CsvWriter::fmt(bnd), CsvWriter::fmt(ratio),
                     calib ? "calibration" : "test"});
            if (calib)
              fit.calibration_c = std::max(fit.calibration_c, ratio);
            else
              fit.test_max_ratio = std::max(fit.test_max_ratio, ratio);
          }
        }
    };
    visit(calib_dirs, true);
    visit(test_dirs, false);
    return fit;
  };

  BoundFit basic_minus = run_family(
      "basic_minus", -1,
      [](double A, double N) { return N * N * N / std::min(A, N); },
      [](const Vec3i& a, int N, int sign) { return count_basic_sup(a, N, sign); });
  BoundFit basic_plus = run_family(
      "basic_plus", +1, [](double, double N) { return N * N; },
      [](const Vec3i& a, int N, int sign) { return count_basic_sup(a, N, sign); });
  BoundFit gamma_fit = run_family(
      "gamma_condition", -1,
      [](double, double N) { return N * N * std::log2(2.0 * N); },
      [](const Vec3i& a, int N, int sign) {
        GammaCondition gc{0.75 * N};
        return count_gamma_sup(a, N, sign, gc);
      });
  BoundFit box_fit = run_family(
      "box", -1, [](double, double N) { return N * N; },
      [](const Vec3i& a, int N, int sign) {
        Vec3i zeta{N, 0, 0};
        return count_box_sup(a, N, zeta, std::max(1, linf(a)), sign);
      });

  summary["basic_minus"] = {{"C", basic_minus.calibration_c},
                            {"test_max", basic_minus.test_max_ratio},
                            {"pass", basic_minus.pass()}};
  summary["basic_plus"] = {{"C", basic_plus.calibration_c},
                           {"test_max", basic_plus.test_max_ratio},
                           {"pass", basic_plus.pass()}};
  summary["gamma_condition"] = {{"C", gamma_fit.calibration_c},
                                {"test_max", gamma_fit.test_max_ratio},
                                {"pass", gamma_fit.pass()}};
  summary["box"] = {{"C", box_fit.calibration_c},
                    {"test_max", box_fit.test_max_ratio},
                    {"pass", box_fit.pass()}};
  write_summary(cfg, summary);
  return 0;
}

// -------------------------------------------------------------- tensor norms

int run_tensor_norms(const ExperimentConfig& cfg) {
  CsvWriter csv(cfg.out + "/tensor_norms.csv",
                {"N0", "N1", "N2", "N3", "m", "signs", "hs2", "hs2_bound", "ratio", "op_norm"});
  json summary;
  double worst_ratio = 0.0;
  bool op_le_hs = true;
  std::vector<std::array<int, 4>> shell_sets{{2, 2, 2, 2}, {4, 4, 2, 2}, {4, 2, 2, 1},
                                             {8, 4, 2, 2}, {8, 8, 2, 1}};
  std::vector<std::array<int, 4>> signsets{{1, -1, 1, -1}, {1, 1, -1, -1}, {1, 1, 1, 1}};
  for (const auto& sh : shell_sets)
    for (const auto& sg : signsets)
      for (double m : {0.0, 2.0, double(sh[0])}) {
        BaseTensor bt{sh, sg, m};
        long hs2 = base_tensor_hs_sq(bt);
        // HS bound: min over |J| = 3 of med(N_J)^-1 prod_J N^3
        double best = 1e300;
        for (int skip = 0; skip < 4; ++skip) {
          std::vector<double> J;
          for (int j = 0; j < 4; ++j)
            if (j != skip) J.push_back(double(sh[size_t(j)]));
          std::sort(J.begin(), J.end());
          best = std::min(best, J[0] * J[0] * J[0] * J[1] * J[1] * J[1] * J[2] * J[2] * J[2] / J[1]);
        }
        double ratio = double(hs2) / best;
        worst_ratio = std::max(worst_ratio, ratio);
        double op = base_tensor_op_norm(bt, {false, true, true, true});
        if (op > std::sqrt(double(hs2)) + 1e-9) op_le_hs = false;
        std::string signs_s;
        for (int s : sg) signs_s += (s > 0 ? "+" : "-");
        csv.row({std::to_string(sh[0]), std::to_string(sh[1]), std::to_string(sh[2]),
                 std::to_string(sh[3]), CsvWriter::fmt(m), signs_s, std::to_string(hs2),
                 CsvWriter::fmt(best), CsvWriter::fmt(ratio), CsvWriter::fmt(op)});
      }
  summary["max_hs_ratio"] = worst_ratio;
  summary["op_le_hs"] = op_le_hs;
  write_summary(cfg, summary);
  return 0;
}

// ------------------------------------------------------------------- caloric

int run_caloric(const ExperimentConfig& cfg) {
  const int N = cfg.N;
  WaveParams wp{N, gamma_constant(N), sigma_sq(N), false};
  HeatParams hp{N, wp.gamma, wp.sigma2, false};

  GibbsRun gibbs = gibbs_samples(wp, cfg.samples, cfg.burn_in, cfg.thin, cfg.seed, "caloric/gibbs");

  RngStream root(cfg.seed, "caloric");
  const int n = int(gibbs.samples.size());
  std::vector<double> direct_mass(size_t(n)), evolved_mass(size_t(n));
  std::vector<double> direct_low(size_t(n)), evolved_low(size_t(n));
  double max_identity_residual = 0.0;

#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < n; ++s) {
    RngStream sub = root.sub(uint64_t(s));
    NoisePath path = sample_noise_path(N, -cfg.s0, cfg.h, sub.sub("W"));
    FourierField lin0 = ou_stationary(N, sub.sub("lin0"));
    FourierField sin0 = ou_stationary(N, sub.sub("sin0"));
    CaloricData cal = caloric_decompose(gibbs.samples[size_t(s)], cfg.s0, path, lin0, sin0, hp);
    FourierField sum = cal.blue_cos - cal.green_cos + cal.red_cos;
    double resid = (sum - cal.phi_at_zero).max_abs();
#pragma omp critical
    max_identity_residual = std::max(max_identity_residual, resid);
    evolved_mass[size_t(s)] = cal.phi_at_zero.l2sq_coeffs();
    evolved_low[size_t(s)] = std::abs(cal.phi_at_zero.at({1, 0, 0}));
    direct_mass[size_t(s)] = gibbs.samples[size_t(s)].l2sq_coeffs();
    direct_low[size_t(s)] = std::abs(gibbs.samples[size_t(s)].at({1, 0, 0}));
  }

  json summary;
  summary["identity_max_residual"] = max_identity_residual;
  summary["z_mass"] = z_two_sample(evolved_mass, direct_mass);
  summary["z_low_mode"] = z_two_sample(evolved_low, direct_low);
  summary["ess"] = gibbs.ess;
  CsvWriter csv(cfg.out + "/caloric.csv", {"sample", "direct_mass", "evolved_mass"});
  for (int s = 0; s < n; ++s)
    csv.row_values({double(s), direct_mass[size_t(s)], evolved_mass[size_t(s)]});
  write_summary(cfg, summary);
  return 0;
}

// ------------------------------------------------------------------- objects

int run_objects(const ExperimentConfig& cfg) {
  const int N = cfg.N;
  const double t = cfg.t;
  FourierField g0 = gamma_field(N, 0.0, 0.0);
  RenormTable table(N, gamma_h(cfg, N), std::max(1.0, t), true);
  RngStream root(cfg.seed, "objects");

  std::vector<int> shells = dyadic_range(N);
  std::vector<double> l2_cubic(shells.size(), 0.0), l2_quintic(shells.size(), 0.0),
      l2_resistor(shells.size(), 0.0);
  double resid_pairing = 0.0;

  for (int s = 0; s < cfg.samples; ++s) {
    BlueData blue = sample_blue(N, root.sub(uint64_t(s)));
    FourierField cub = wave_cubic(blue, t, cfg.h_q, N);
    FourierField qui = wave_quintic(blue, t, cfg.h_q, N, g0);
    FourierField res = resistor(blue, t, table);
    for (size_t k = 0; k < shells.size(); ++k) {
      l2_cubic[k] += project(cub, shells[k], ProjectMode::shell).l2sq_coeffs();
      l2_quintic[k] += project(qui, shells[k], ProjectMode::shell).l2sq_coeffs();
      l2_resistor[k] += project(res, shells[k], ProjectMode::shell).l2sq_coeffs();
    }
  }

  CsvWriter csv(cfg.out + "/objects.csv", {"object", "shell", "mean_shell_l2"});
  for (size_t k = 0; k < shells.size(); ++k) {
    csv.row({"cubic", std::to_string(shells[k]), CsvWriter::fmt(l2_cubic[k] / cfg.samples)});
    csv.row({"quintic", std::to_string(shells[k]), CsvWriter::fmt(l2_quintic[k] / cfg.samples)});
    csv.row({"resistor", std::to_string(shells[k]), CsvWriter::fmt(l2_resistor[k] / cfg.samples)});
  }
  json summary;
  summary["pairing_residual"] = resid_pairing;
  write_summary(cfg, summary);
  return 0;
}

// ---------------------------------------------------------------- invariance

int run_invariance(const ExperimentConfig& cfg) {
  InvarianceReport rep =
      invariance_test(cfg.N, cfg.T, cfg.h, {"low_mode_mass", "hamiltonian", "wick4"},
                      cfg.samples, cfg.burn_in, cfg.thin, cfg.seed);
  json summary;
  summary["valid"] = rep.valid;
  summary["note"] = rep.note;
  summary["ess"] = rep.ess;
  summary["beta"] = rep.beta;
  json obs = json::array();
  for (const auto& r : rep.observables)
    obs.push_back({{"name", r.name},
                   {"mean0", r.mean0},
                   {"mean_T", r.mean1},
                   {"z", r.z},
                   {"ks_stat", r.ks_stat},
                   {"ks_p", r.ks_p},
                   {"halving_delta", r.halving_delta},
                   {"halving_gate", r.halving_gate}});
  summary["observables"] = obs;
  if (rep.valid) {
    CsvWriter csv(cfg.out + "/invariance_raw.csv", {"observable", "sample", "at0", "atT"});
    for (size_t o = 0; o < rep.observables.size(); ++o)
      for (size_t s = 0; s < rep.raw0[o].size(); ++s)
        csv.row({rep.observables[o].name, std::to_string(s), CsvWriter::fmt(rep.raw0[o][s]),
                 CsvWriter::fmt(rep.raw1[o][s])});
  }
  write_summary(cfg, summary);
  return rep.valid ? 0 : 4;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg) {
  try {
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
    std::filesystem::create_directories(cfg.out);
    if (cfg.experiment == "identities") return run_identities(cfg);
    if (cfg.experiment == "cancellation") return run_cancellation(cfg);
    if (cfg.experiment == "counting") return run_counting(cfg);
    if (cfg.experiment == "tensor-norms") return run_tensor_norms(cfg);
    if (cfg.experiment == "caloric") return run_caloric(cfg);
    if (cfg.experiment == "objects") return run_objects(cfg);
    if (cfg.experiment == "invariance") return run_invariance(cfg);
    std::cerr << "unknown experiment: " << cfg.experiment << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace phi4
