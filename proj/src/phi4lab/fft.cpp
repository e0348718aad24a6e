#include "phi4lab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace phi4 {

int next_fft_size(int m) {
  if (m < 1) m = 1;
  for (int s = m;; ++s) {
    int r = s;
    for (int p : {2, 3, 5})
      while (r % p == 0) r /= p;
    if (r == 1) return s;
  }
}

SpectralGrid::SpectralGrid(int M_) : M(M_) {
  std::vector<cplx> a(points()), b(points());
  fwd_ = fftw_plan_dft_3d(M, M, M, reinterpret_cast<fftw_complex*>(a.data()),
                          reinterpret_cast<fftw_complex*>(b.data()), FFTW_FORWARD,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  bwd_ = fftw_plan_dft_3d(M, M, M, reinterpret_cast<fftw_complex*>(a.data()),
                          reinterpret_cast<fftw_complex*>(b.data()), FFTW_BACKWARD,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!fwd_ || !bwd_) throw std::runtime_error("fftw plan creation failed");
}

void SpectralGrid::to_grid(const FourierField& f, std::vector<cplx>& grid) const {
  grid.assign(points(), cplx(0.0, 0.0));
  const int N = f.cutoff();
  if (2 * N + 1 > M) throw std::invalid_argument("grid too small for field cutoff");
  for (int x = -N; x <= N; ++x) {
    int i = (x % M + M) % M;
    for (int y = -N; y <= N; ++y) {
      int j = (y % M + M) % M;
      const cplx* row = &f.data()[f.index({x, y, -N})];
      for (int z = -N; z <= N; ++z) {
        int k = (z % M + M) % M;
        grid[(size_t(i) * M + j) * M + k] = row[z + N];
      }
    }
  }
  std::vector<cplx> out(points());
  fftw_execute_dft(static_cast<fftw_plan>(bwd_), reinterpret_cast<fftw_complex*>(grid.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  grid.swap(out);
}

FourierField SpectralGrid::from_grid(std::vector<cplx>& grid, int out_cutoff) const {
  std::vector<cplx> out(points());
  fftw_execute_dft(static_cast<fftw_plan>(fwd_), reinterpret_cast<fftw_complex*>(grid.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  FourierField f(out_cutoff);
  const double scale = 1.0 / double(points());
  for (int x = -out_cutoff; x <= out_cutoff; ++x) {
    int i = (x % M + M) % M;
    for (int y = -out_cutoff; y <= out_cutoff; ++y) {
      int j = (y % M + M) % M;
      for (int z = -out_cutoff; z <= out_cutoff; ++z) {
        int k = (z % M + M) % M;
        f.set({x, y, z}, scale * out[(size_t(i) * M + j) * M + k]);
      }
    }
  }
  return f;
}

const SpectralGrid& SpectralGrid::get(int M) {
  static std::mutex mu;
  static std::map<int, SpectralGrid*> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(M);
  if (it == cache.end()) it = cache.emplace(M, new SpectralGrid(M)).first;
  return *it->second;
}

}  // namespace phi4
