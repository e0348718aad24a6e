#pragma once

#include <vector>

#include "phi4lab/lattice.hpp"

namespace phi4 {

// Gamma_{<=N}(n,t,s) for all |n|_inf <= N at once, as 6x the Fourier
// coefficients of k^3 where k(x) = sum_{|m|<=N} <m>^-2 cos(t<m>) e^{s<m>^2}
// e^{imx}. One cube FFT per (t,s). Requires s <= 0.
FourierField gamma_field(int N, double t, double s);
double gamma_multiplier(int N, const Vec3i& n, double t, double s);

// gamma_{<=N} = Gamma_{<=N}(0) (t = 0, s = 0).
double gamma_constant(int N);

// Shell-restricted multiplier Gamma[N0,N1,N2,N3](n,t); summing over all
// dyadic N0..N3 <= N reproduces Gamma_{<=N}(n,t).
FourierField gamma_dyadic_field(int N0, int N1, int N2, int N3, double t);
double gamma_dyadic(int N0, int N1, int N2, int N3, const Vec3i& n, double t);

// max over |n|_inf <= N of |gamma - Gamma(n)| / <n>^0.1.
double gamma_defect(int N);

// Cached Gamma_{<=N}(n, t_k) on the uniform grid t_k = k*h, k = 0..steps.
// Stores per-(outer shell, <n>^2) bucket sums, which is all the closed-form
// c-integrals need, plus the full per-n table when requested (resistor
// quadrature and small-N diagnostics).
class RenormTable {
 public:
  RenormTable(int N, double h, double t_max, bool full_table);

  int N() const { return N_; }
  double h() const { return h_; }
  double t_max() const { return t_max_; }
  int steps() const { return steps_; }
  double gamma() const { return gamma_; }

  double Gamma0(const Vec3i& n) const;             // Gamma(n) at t = 0
  double Gamma_nt(const Vec3i& n, double t) const; // full table required
  bool has_full_table() const { return full_; }

  // grid index of a time that must lie on the grid
  int grid_index(double t) const;

  // Explicit-formula cancellation constants, quadrature over the table grid.
  // c33: E[(cubic)^2] double integral; c15: E[lin*quintic]; c_total computed
  // independently from the single-integral 1533 formula.
  double c33(double t) const;
  double c15(double t) const;
  double c_total(double t) const;

  // Reduced single-integral route for c33 (exact reformulation of the same
  // double integral; cheap enough for N = 32 scans).
  double c33_reduced(double t) const;
  double c15_reduced(double t) const;

  // Shell-pair constants: zero off the diagonal, shell-restricted sums on it.
  double c33_dyadic(int N1, int N2, double t) const;
  double c15_dyadic(int N1, int N2, double t) const;

  // integral of bump_rho(t) * c33_reduced(t) over the table grid
  double c33_against_bump() const;

 private:
  int N_;
  double h_, t_max_;
  int steps_;
  double gamma_;
  bool full_;
  std::vector<int> shells_;                 // dyadic shells {1,2,...,N}
  std::vector<double> Gamma0_;              // per cube index
  long max_q_;
  // bucket[k][shell * (max_q_+1) + q] = sum over n in shell with <n>^2 = q
  std::vector<std::vector<double>> bucket_;
  std::vector<std::vector<double>> full_table_;  // [k][cube index]
  std::vector<double> A_;                   // precomputed sum q^-1 cos(w_k sqrt q) P_q(w_k)

  int shell_index(const Vec3i& n) const;
  double double_integral(double t, int shell_filter) const;    // sin sin Gamma quadrature
  double single_integral(double t, int shell_filter) const;    // cos(t<n>)<n>^-3 int sin Gamma
};

}  // namespace phi4
