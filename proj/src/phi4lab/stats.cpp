#include "phi4lab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phi4 {

Moments moments(const std::vector<double>& xs) {
  Moments m;
  m.n = xs.size();
  if (m.n == 0) return m;
  double s = 0.0;
  for (double x : xs) s += x;
  m.mean = s / double(m.n);
  double v = 0.0;
  for (double x : xs) v += (x - m.mean) * (x - m.mean);
  m.var = m.n > 1 ? v / double(m.n - 1) : 0.0;
  m.stderr_mean = m.n > 0 ? std::sqrt(m.var / double(m.n)) : 0.0;
  return m;
}

double z_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
  Moments ma = moments(a), mb = moments(b);
  double se = std::sqrt(ma.var / double(ma.n) + mb.var / double(mb.n));
  if (se == 0.0) return 0.0;
  return (ma.mean - mb.mean) / se;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  size_t i = 0, j = 0;
  const double na = double(a.size()), nb = double(b.size());
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(double(i) / na - double(j) / nb));
  }
  double ne = std::sqrt(na * nb / (na + nb));
  double lambda = (ne + 0.12 + 0.11 / ne) * d;
  double p = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    p += sign * 2.0 * std::exp(-2.0 * lambda * lambda * k * k);
    sign = -sign;
  }
  p = std::min(1.0, std::max(0.0, p));
  return {d, p};
}

double effective_sample_size(const std::vector<double>& chain) {
  const size_t n = chain.size();
  if (n < 4) return double(n);
  Moments m = moments(chain);
  if (m.var == 0.0) return double(n);
  double tau = 1.0;
  for (size_t lag = 1; lag < n / 2; ++lag) {
    double c = 0.0;
    for (size_t i = 0; i + lag < n; ++i) c += (chain[i] - m.mean) * (chain[i + lag] - m.mean);
    c /= double(n - lag) * m.var;
    if (c <= 0.0) break;
    tau += 2.0 * c;
  }
  return double(n) / tau;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("bad fit input");
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  double slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - slope * sx) / n;
  double ss_tot = syy - sy * sy / n;
  double ss_res = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (slope * x[i] + intercept);
    ss_res += r * r;
  }
  double r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return {slope, intercept, r2};
}

namespace {
double smooth_step(double x) {
  // 0 for x<=0, 1 for x>=1, C^infinity in between.
  auto f = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
  double a = f(x), b = f(1.0 - x);
  return a / (a + b);
}
}  // namespace

double bump_rho(double t) {
  return smooth_step((t - 0.125) * 8.0) * smooth_step((0.875 - t) * 8.0);
}

std::vector<double> trapezoid_weights(size_t n, double h) {
  std::vector<double> w(n + 1, h);
  if (n == 0) {
    w.assign(1, 0.0);
    return w;
  }
  w.front() = h / 2.0;
  w.back() = h / 2.0;
  return w;
}

}  // namespace phi4
