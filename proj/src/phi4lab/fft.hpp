#pragma once

#include <complex>
#include <vector>

#include "phi4lab/lattice.hpp"

namespace phi4 {

// Smallest 5-smooth integer >= m (FFT-friendly grid sizes).
int next_fft_size(int m);

// Cached FFTW c2c plans for a cubic M^3 grid. Plans are created once per M
// (guarded); executions run on caller-owned buffers and are thread-safe.
class SpectralGrid {
 public:
  explicit SpectralGrid(int M);

  int M;
  size_t points() const { return size_t(M) * M * M; }

  // coeffs (cube storage, |n|_inf <= cutoff) -> grid values, e^{+i n x} sum.
  void to_grid(const FourierField& f, std::vector<cplx>& grid) const;
  // grid values -> coefficients restricted to |n|_inf <= out_cutoff,
  // normalized by 1/M^3.
  FourierField from_grid(std::vector<cplx>& grid, int out_cutoff) const;

  static const SpectralGrid& get(int M);

 private:
  void* fwd_;  // fftw_plan
  void* bwd_;
};

}  // namespace phi4
