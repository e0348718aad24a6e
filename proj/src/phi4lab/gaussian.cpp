#include "phi4lab/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace phi4 {

double sigma_sq(int N) {
  if (N < 1) throw std::invalid_argument("N >= 1 required");
  double s = 0.0;
  for (int x = -N; x <= N; ++x)
    for (int y = -N; y <= N; ++y)
      for (int z = -N; z <= N; ++z) s += 1.0 / bracket_sq({x, y, z});
  return s;
}

namespace {

// Canonical representative of the +-n pair: lexicographically positive.
bool is_canonical(const Vec3i& n) {
  if (n[0] != 0) return n[0] > 0;
  if (n[1] != 0) return n[1] > 0;
  return n[2] > 0;
}

}  // namespace

FourierField sample_white(int N, const RngStream& stream) {
  FourierField f(N);
  const double inv_sqrt2 = 0.70710678118654752440;
  for (size_t i = 0; i < f.size(); ++i) {
    Vec3i n = f.node(i);
    if (n[0] == 0 && n[1] == 0 && n[2] == 0) {
      RngStream s = stream.sub(i);
      f[i] = cplx(s.normal(), 0.0);
    } else if (is_canonical(n)) {
      RngStream s = stream.sub(i);
      double re = s.normal() * inv_sqrt2;
      double im = s.normal() * inv_sqrt2;
      f[i] = cplx(re, im);
      f[f.index({-n[0], -n[1], -n[2]})] = cplx(re, -im);
    }
  }
  return f;
}

FourierField sample_gff(int N, const RngStream& stream) {
  FourierField f = sample_white(N, stream);
  for (size_t i = 0; i < f.size(); ++i) f[i] /= bracket(f.node(i));
  return f;
}

FourierField wick_power(const FourierField& f, int k, int N) {
  return wick_power(f, k, N, sigma_sq(N));
}

FourierField wick_power(const FourierField& f, int k, int N, double s2) {
  if (k < 2 || k > 4) throw std::invalid_argument("wick_power supports k in {2,3,4}");
  FourierField p = project(with_cutoff(f, std::max(f.cutoff(), N)), N, ProjectMode::ball);
  const Vec3i zero{0, 0, 0};
  if (k == 2) {
    FourierField out = multiply(p, p, 2 * N);
    out.set(zero, out.at(zero) - s2);
    return out;
  }
  if (k == 3) {
    FourierField out = multiply({&p, &p, &p}, 3 * N);
    out -= 3.0 * s2 * with_cutoff(p, 3 * N);
    return out;
  }
  FourierField sq = multiply(p, p, 2 * N);
  FourierField out = multiply(sq, sq, 4 * N);
  out -= 6.0 * s2 * with_cutoff(sq, 4 * N);
  out.set(zero, out.at(zero) + 3.0 * s2 * s2);
  return out;
}

}  // namespace phi4
