#pragma once

#include <functional>
#include <vector>

#include "phi4lab/heat.hpp"
#include "phi4lab/lattice.hpp"
#include "phi4lab/renorm.hpp"
#include "phi4lab/rng.hpp"

namespace phi4 {

// Gaussian wave data (phi_cos, phi_sin), both GFF samples at one cutoff.
// SI[n,phi] = <n> * phihat(n) are the normalized first-order integrals.
struct BlueData {
  FourierField phi_cos, phi_sin;
  int cutoff() const { return phi_cos.cutoff(); }
  cplx SI(const Vec3i& n, int family) const;  // family 0 = cos, 1 = sin
};

BlueData sample_blue(int N, const RngStream& stream);

// coeff(n) = cos(t<n>) phihat_cos(n) + sin(t<n>) phihat_sin(n).
FourierField wave_linear(const BlueData& blue, double t);

// Picard iterates of the renormalized wave equation, Duhamel quadrature on
// the uniform grid with spacing h_q along the exact linear trajectory:
//   cubic:   (d_t^2+1-Delta) cubic = P :(lin)^3:, zero data;
//   quintic: 3 (d_t^2+1-Delta) quintic = P (3 :lin^2: cubic - Gamma lin).
// Gamma0 is the t = 0 renormalization multiplier field for the same N.
class WaveObjects {
 public:
  WaveObjects(const BlueData& blue, int N, double h_q, const FourierField& Gamma0);

  FourierField linear(double t) const { return wave_linear(*blue_, t); }
  FourierField cubic(double t);    // advances the internal grid as needed
  FourierField quintic(double t);

  int N() const { return N_; }
  double h_q() const { return h_; }

 private:
  const BlueData* blue_;
  int N_;
  double h_;
  double sigma2_;
  const FourierField* Gamma0_;
  // per-mode running trapezoid sums (cos/sin components) for both objects
  int done_ = -1;  // grid steps fully accumulated
  std::vector<cplx> cubic_C_, cubic_S_, quintic_C_, quintic_S_;
  FourierField cubic_now_;  // cubic(t_done)
  FourierField last_cubic_src_, last_quintic_src_;
  void advance_to(int steps);
  FourierField eval(const std::vector<cplx>& C, const std::vector<cplx>& S, double t,
                    double scale) const;
  int grid_steps(double t) const;
};

FourierField wave_cubic(const BlueData& blue, double t, double h_q, int N);
FourierField wave_quintic(const BlueData& blue, double t, double h_q, int N,
                          const FourierField& Gamma0);

// Nonlinearity-level pairing parts of the quintic source at time t
// (zero/one/two pairings), evaluated on the shared quadrature grid. The
// source decomposes as 3 quad*cubic = 3*zero + 18*one + 18*two, so
// 3*(d_t^2+1-Delta) quintic = 3 zero + 18 one + 18 two - Gamma lin.
struct QuinticParts {
  FourierField zero, one, two;
};
QuinticParts quintic_pairing_parts(const BlueData& blue, double t, double h_q, int N);

// Exact resistor representation (Gamma-table quadrature):
// 18 resistor(t,n) = -<n>^-2 (int_0^t sin((t-t')<n>) Gamma(n,t') dt') SI[n,cos]
//   - <n>^-1 sum_phi (int_0^t int_0^t' sin((t-t')<n>) Gamma(n,t'-t'')
//                     (d phi)(t''<n>) dt'' dt') SI[n,phi].
FourierField resistor(const BlueData& blue, double t, const RenormTable& table);

// Sine-cancellation kernel sum_{n1+n2=r} 1_K(n1) 1_L(n2)
// sin(t<n1>)/<n1> cos(t<n2>)/<n2>^2, and its exact three-term
// symmetrization (difference-frequency, sum-frequency, Gamma-condition).
double sine_kernel(int K, int L, double t, const Vec3i& r);
double sine_kernel_symmetrized(int K, int L, double t, const Vec3i& r);

// Resonant part of the heat-wave quintic diagram on a discretized noise
// path: the three-term closed form (Gamma(n,t) SI-term, Ito integral of
// Gamma(n,t,s), and the heat-propagated double integral).
FourierField mixed_resonant(const NoisePath& path, int N, double t);
// Variant taking a Gamma(n,t,s) provider (s -> field), for tests that patch
// the multiplier.
FourierField mixed_resonant(const NoisePath& path, int N, double t,
                            const std::function<FourierField(double)>& gamma_ts);
// Direct summation of the two-pairing heat-wave object on the same path;
// 18x it equals mixed_resonant up to path discretization.
FourierField mixed_two_pairing_direct(const NoisePath& path, int N, double t);

// Monte-Carlo harness: sample mean and standard error of the spatial
// average of A*B over independent blue draws.
struct McResult {
  cplx estimate;
  double stderr_real;
};
using BlueObject = std::function<FourierField(const BlueData&, double)>;
McResult mc_expect(const BlueObject& A, const BlueObject& B, int N, double t, int samples,
                   uint64_t seed, const std::string& stream_name);

}  // namespace phi4
