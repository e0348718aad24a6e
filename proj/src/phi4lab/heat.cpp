#include "phi4lab/heat.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "phi4lab/gaussian.hpp"

namespace phi4 {

int NoisePath::index_of(double s) const {
  double k = (s + S) / h;
  int ki = int(std::lround(k));
  if (std::abs(k - ki) > 1e-9 || ki < 0 || ki > steps())
    throw std::out_of_range("time not on noise path grid");
  return ki;
}

NoisePath sample_noise_path(int N, double S, double h, const RngStream& stream) {
  NoisePath p;
  p.N = N;
  p.S = S;
  p.h = h;
  int steps = int(std::lround(S / h));
  if (std::abs(steps * h - S) > 1e-9) throw std::invalid_argument("S must be a multiple of h");
  p.dW.resize(steps);
  double sd = std::sqrt(h);
  for (int k = 0; k < steps; ++k) {
    FourierField w = sample_white(N, stream.sub(uint64_t(k)));
    p.dW[k].assign(w.data().begin(), w.data().end());
    for (cplx& v : p.dW[k]) v *= sd;
  }
  return p;
}

void save_noise_path(const NoisePath& p, const std::string& file) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + file);
  int64_t N = p.N, steps = p.steps();
  os.write(reinterpret_cast<const char*>(&N), sizeof(N));
  os.write(reinterpret_cast<const char*>(&p.S), sizeof(p.S));
  os.write(reinterpret_cast<const char*>(&p.h), sizeof(p.h));
  os.write(reinterpret_cast<const char*>(&steps), sizeof(steps));
  for (const auto& row : p.dW)
    os.write(reinterpret_cast<const char*>(row.data()), std::streamsize(row.size() * sizeof(cplx)));
}

NoisePath load_noise_path(const std::string& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + file);
  int64_t N, steps;
  NoisePath p;
  is.read(reinterpret_cast<char*>(&N), sizeof(N));
  is.read(reinterpret_cast<char*>(&p.S), sizeof(p.S));
  is.read(reinterpret_cast<char*>(&p.h), sizeof(p.h));
  is.read(reinterpret_cast<char*>(&steps), sizeof(steps));
  if (!is || N < 0 || steps < 0) throw std::runtime_error("bad noise path header");
  p.N = int(N);
  size_t cube = size_t(2 * N + 1) * (2 * N + 1) * (2 * N + 1);
  p.dW.assign(size_t(steps), std::vector<cplx>(cube));
  for (auto& row : p.dW)
    is.read(reinterpret_cast<char*>(row.data()), std::streamsize(row.size() * sizeof(cplx)));
  if (!is) throw std::runtime_error("truncated noise path file");
  return p;
}

FourierField ou_stationary(int N, const RngStream& stream) { return sample_gff(N, stream); }

FourierField ou_step(const FourierField& field, double h, const RngStream& noise) {
  if (h <= 0.0) throw std::invalid_argument("h > 0 required");
  FourierField xi = sample_white(field.cutoff(), noise);
  FourierField out(field.cutoff());
  for (size_t i = 0; i < out.size(); ++i) {
    double q = bracket_sq(out.node(i));
    double decay = std::exp(-h * q);
    double sd = std::sqrt((1.0 - decay * decay) / q);
    out[i] = decay * field[i] + sd * xi[i];
  }
  return out;
}

FourierField linear_path_step(const FourierField& field, const NoisePath& path, int k) {
  FourierField out(field.cutoff());
  const double h = path.h;
  for (size_t i = 0; i < out.size(); ++i) {
    double q = bracket_sq(out.node(i));
    double decay = std::exp(-h * q);
    // scale so the one-step noise variance matches the exact stochastic
    // convolution: 2 c^2 h = (1 - e^{-2hq})/q
    double c = std::sqrt((1.0 - decay * decay) / (2.0 * h * q));
    out[i] = decay * field[i] + std::sqrt(2.0) * c * path.dW[size_t(k)][i];
  }
  return out;
}

namespace {

FourierField wick_cube_ball(const FourierField& f, const HeatParams& p) {
  FourierField pf = with_cutoff(f, p.N);
  FourierField cube = multiply({&pf, &pf, &pf}, p.N);
  for (size_t i = 0; i < cube.size(); ++i) cube[i] -= 3.0 * p.sigma2 * pf[i];
  return cube;
}

}  // namespace

FourierField snlh_step(const FourierField& field, double h, const RngStream& noise,
                       const HeatParams& p) {
  if (h <= 0.0) throw std::invalid_argument("h > 0 required");
  FourierField F(field.cutoff());
  if (!p.disable_force) {
    FourierField cube = wick_cube_ball(field, p);
    for (int x = -p.N; x <= p.N; ++x)
      for (int y = -p.N; y <= p.N; ++y)
        for (int z = -p.N; z <= p.N; ++z) {
          Vec3i n{x, y, z};
          F.set(n, -(cube.at(n) + p.gamma * field.at(n)));
        }
  }
  FourierField xi = sample_white(field.cutoff(), noise);
  FourierField out(field.cutoff());
  for (size_t i = 0; i < out.size(); ++i) {
    double q = bracket_sq(out.node(i));
    double decay = std::exp(-h * q);
    double sd = std::sqrt((1.0 - decay * decay) / q);
    out[i] = decay * field[i] + (1.0 - decay) / q * F[i] + sd * xi[i];
  }
  return out;
}

FourierField snlh_integrate(FourierField phi0, double s0, double s1, double h,
                            const RngStream& noise, const HeatParams& p) {
  if (!(s0 < s1)) throw std::invalid_argument("s0 < s1 required");
  int steps = int(std::lround((s1 - s0) / h));
  if (std::abs(s0 + steps * h - s1) > 1e-9)
    throw std::invalid_argument("interval must be a multiple of h");
  for (int k = 0; k < steps; ++k) phi0 = snlh_step(phi0, h, noise.sub(uint64_t(k)), p);
  return phi0;
}

FourierField snlh_path_step(const FourierField& field, const NoisePath& path, int k,
                            const HeatParams& p) {
  const double h = path.h;
  FourierField cube;
  if (!p.disable_force) cube = wick_cube_ball(field, p);
  FourierField out(field.cutoff());
  for (size_t i = 0; i < out.size(); ++i) {
    Vec3i n = out.node(i);
    double q = bracket_sq(n) + (in_ball(n, p.N) ? p.gamma : 0.0);
    double decay = std::exp(-h * q);
    double c = std::sqrt((1.0 - decay * decay) / (2.0 * h * q));
    cplx drive(0.0, 0.0);
    if (!p.disable_force && in_ball(n, p.N)) drive = -cube.at(n);
    out[i] = decay * field[i] + (1.0 - decay) / q * drive +
             std::sqrt(2.0) * c * path.dW[size_t(k)][i];
  }
  return out;
}

FourierField heat_cubic_object(const NoisePath& path, const FourierField& lin_init,
                               double s, const HeatParams& p) {
  if (std::exp(-path.S) >= 1e-8) throw std::invalid_argument("noise horizon too short");
  int k_end = path.index_of(s);
  FourierField lin = lin_init;
  FourierField acc(p.N);
  const double h = path.h;
  for (int k = 0; k < k_end; ++k) {
    FourierField src = wick_cube_ball(lin, p);
    for (size_t i = 0; i < acc.size(); ++i) {
      double q = bracket_sq(acc.node(i));
      double decay = std::exp(-h * q);
      acc[i] = decay * acc[i] + (1.0 - decay) / q * src.at(acc.node(i));
    }
    lin = linear_path_step(lin, path, k);
  }
  return acc;
}

CaloricData caloric_decompose(const FourierField& phi_cos, double s0, const NoisePath& path,
                              const FourierField& lin_init_cos, const FourierField& phi_sin0,
                              const HeatParams& p) {
  if (!(s0 < 0.0)) throw std::invalid_argument("s0 < 0 required");
  const int k0 = path.index_of(s0);
  const int k_end = path.steps();

  CaloricData out;
  out.blue_sin = phi_sin0;
  out.green_cos = heat_cubic_object(path, lin_init_cos, 0.0, p);

  FourierField lin = lin_init_cos;
  for (int k = 0; k < k_end; ++k) lin = linear_path_step(lin, path, k);
  out.blue_cos = lin;

  FourierField phi = phi_cos;
  for (int k = k0; k < k_end; ++k) phi = snlh_path_step(phi, path, k, p);
  out.phi_at_zero = phi;

  out.red_cos = phi - out.blue_cos + out.green_cos;
  return out;
}

}  // namespace phi4
