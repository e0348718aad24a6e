#pragma once

#include <string>
#include <vector>

#include "phi4lab/lattice.hpp"
#include "phi4lab/rng.hpp"

namespace phi4 {

// Discretized two-sided Brownian increments on [-S, 0] for one family
// (cos or sin): per mode n and step k, complex Gaussian with E|dW|^2 = h,
// dW(-n) = conj dW(n), zero mode real. Families are sampled from distinct
// streams.
struct NoisePath {
  int N = 0;
  double S = 0.0;
  double h = 0.0;
  std::vector<std::vector<cplx>> dW;  // [step][cube index], step k covers [s_k, s_k + h)

  int steps() const { return int(dW.size()); }
  double s_at(int k) const { return -S + k * h; }
  int index_of(double s) const;  // grid index with s = -S + k h
};

NoisePath sample_noise_path(int N, double S, double h, const RngStream& stream);
void save_noise_path(const NoisePath& p, const std::string& path);
NoisePath load_noise_path(const std::string& path);

// Stationary draw of the linear heat field (law = GFF).
FourierField ou_stationary(int N, const RngStream& stream);

// Exact OU update over time h: field' = e^{-h<n>^2} field + xi with
// E|xi|^2 = (1 - e^{-2h<n>^2})/<n>^2 (the sqrt2-forced equation).
FourierField ou_step(const FourierField& field, double h, const RngStream& noise);

// Evolve the linear heat field along a noise path from step k0 to k1,
// exact propagator plus variance-matched increments (so the marginal law
// stays exactly stationary on the grid).
FourierField linear_path_step(const FourierField& field, const NoisePath& path, int k);

struct HeatParams {
  int N;
  double gamma;
  double sigma2;
  bool disable_force = false;
};

// Exponential-Euler step of the truncated cubic stochastic heat equation,
// fresh exact-variance noise: field' = e^{-hq} field + (1-e^{-hq})/q F + xi,
// F = -P(:(P field)^3: + gamma P field).
FourierField snlh_step(const FourierField& field, double h, const RngStream& noise,
                       const HeatParams& p);
FourierField snlh_integrate(FourierField phi0, double s0, double s1, double h,
                            const RngStream& noise, const HeatParams& p);

// Path-driven variant with the gamma mass term folded into the exact
// per-mode propagator (rate <n>^2 + gamma); only the Wick cube is
// Euler-discretized. Used where the invariant measure must be resolved
// accurately at moderate h.
FourierField snlh_path_step(const FourierField& field, const NoisePath& path, int k,
                            const HeatParams& p);

// Cubic heat object at s (a grid point <= 0):
// int_{-S}^{s} e^{-(s-tau)(1-Delta)} P :(P Phi_lin(tau))^3: dtau along the
// simulated stationary linear path; requires e^{-S} < 1e-8.
// lin_init seeds Phi_lin(-S) (stationary draw for production runs).
FourierField heat_cubic_object(const NoisePath& path, const FourierField& lin_init,
                               double s, const HeatParams& p);

struct CaloricData {
  FourierField blue_cos, blue_sin;
  FourierField green_cos;  // green_sin = 0
  FourierField red_cos;    // red_sin = 0
  FourierField phi_at_zero;
};

// Blue/green/red decomposition at s = 0: blue from the stationary linear
// solutions, green the cubic heat object, red = Phi(0) - blue + green with
// Phi solving the full SNLH from s0 on the same noise path.
CaloricData caloric_decompose(const FourierField& phi_cos, double s0, const NoisePath& path,
                              const FourierField& lin_init_cos, const FourierField& phi_sin0,
                              const HeatParams& p);

}  // namespace phi4
