#include "phi4lab/renorm.hpp"

#include <cmath>
#include <stdexcept>

#include "phi4lab/stats.hpp"

namespace phi4 {

namespace {

FourierField heat_kernel_field(int N, double t, double s, bool shell_mode, int shell) {
  FourierField k(N);
  for (size_t i = 0; i < k.size(); ++i) {
    Vec3i n = k.node(i);
    if (shell_mode && !in_shell(n, shell)) continue;
    double q = bracket_sq(n);
    k[i] = cplx(std::cos(t * std::sqrt(q)) * std::exp(s * q) / q, 0.0);
  }
  return k;
}

}  // namespace

FourierField gamma_field(int N, double t, double s) {
  if (s > 0.0) throw std::invalid_argument("gamma_field requires s <= 0");
  FourierField k = heat_kernel_field(N, t, s, false, 0);
  FourierField g = multiply({&k, &k, &k}, N);
  g *= 6.0;
  return g;
}

double gamma_multiplier(int N, const Vec3i& n, double t, double s) {
  if (linf(n) > N) return 0.0;
  return gamma_field(N, t, s).at(n).real();
}

double gamma_constant(int N) { return gamma_field(N, 0.0, 0.0).at({0, 0, 0}).real(); }

FourierField gamma_dyadic_field(int N0, int N1, int N2, int N3, double t) {
  FourierField k1 = heat_kernel_field(N1, t, 0.0, true, N1);
  FourierField k2 = heat_kernel_field(N2, t, 0.0, true, N2);
  FourierField k3 = heat_kernel_field(N3, t, 0.0, true, N3);
  FourierField g = multiply({&k1, &k2, &k3}, N0);
  FourierField out(N0);
  for (size_t i = 0; i < out.size(); ++i) {
    Vec3i n = out.node(i);
    if (in_shell(n, N0)) out[i] = 6.0 * g[i];
  }
  return out;
}

double gamma_dyadic(int N0, int N1, int N2, int N3, const Vec3i& n, double t) {
  if (!in_shell(n, N0)) return 0.0;
  return gamma_dyadic_field(N0, N1, N2, N3, t).at(n).real();
}

double gamma_defect(int N) {
  FourierField g = gamma_field(N, 0.0, 0.0);
  double gamma = g.at({0, 0, 0}).real();
  double worst = 0.0;
  for (size_t i = 0; i < g.size(); ++i) {
    Vec3i n = g.node(i);
    double d = std::abs(gamma - g[i].real()) / std::pow(bracket(n), 0.1);
    worst = std::max(worst, d);
  }
  return worst;
}

int RenormTable::shell_index(const Vec3i& n) const {
  int a = linf(n);
  for (size_t s = 0; s < shells_.size(); ++s)
    if (in_shell(n, shells_[s])) return int(s);
  (void)a;
  throw std::logic_error("mode outside every shell");
}

RenormTable::RenormTable(int N, double h, double t_max, bool full_table)
    : N_(N), h_(h), t_max_(t_max), full_(full_table) {
  if (h <= 0.0 || t_max <= 0.0) throw std::invalid_argument("bad table grid");
  steps_ = int(std::round(t_max / h));
  t_max_ = steps_ * h;
  shells_ = dyadic_range(N);
  max_q_ = 1 + 3L * N * N;

  const size_t nshell = shells_.size();
  bucket_.assign(steps_ + 1, std::vector<double>(nshell * size_t(max_q_ + 1), 0.0));
  if (full_) full_table_.assign(steps_ + 1, {});

  FourierField probe(N);
  for (int k = 0; k <= steps_; ++k) {
    FourierField g = gamma_field(N, k * h_, 0.0);
    auto& row = bucket_[k];
    for (size_t i = 0; i < g.size(); ++i) {
      Vec3i n = g.node(i);
      long q = long(bracket_sq(n));
      row[size_t(shell_index(n)) * (max_q_ + 1) + q] += g[i].real();
    }
    if (full_) {
      full_table_[k].resize(g.size());
      for (size_t i = 0; i < g.size(); ++i) full_table_[k][i] = g[i].real();
    }
    if (k == 0) {
      gamma_ = g.at({0, 0, 0}).real();
      Gamma0_.resize(g.size());
      for (size_t i = 0; i < g.size(); ++i) Gamma0_[i] = g[i].real();
    }
  }

  // A(w_k) = sum_q q^-1 cos(w_k sqrt q) P_q(w_k), reused by c33_reduced.
  A_.assign(steps_ + 1, 0.0);
  for (int k = 0; k <= steps_; ++k) {
    double a = 0.0;
    for (size_t s = 0; s < nshell; ++s)
      for (long q = 1; q <= max_q_; ++q) {
        double p = bucket_[k][s * (max_q_ + 1) + q];
        if (p != 0.0) a += std::cos(k * h_ * std::sqrt(double(q))) / double(q) * p;
      }
    A_[k] = a;
  }
}

double RenormTable::Gamma0(const Vec3i& n) const {
  if (linf(n) > N_) return 0.0;
  FourierField probe(N_);
  return Gamma0_[probe.index(n)];
}

int RenormTable::grid_index(double t) const {
  double k = t / h_;
  int ki = int(std::lround(k));
  if (std::abs(k - ki) > 1e-9 || ki < 0 || ki > steps_)
    throw std::out_of_range("time not on renorm table grid");
  return ki;
}

double RenormTable::Gamma_nt(const Vec3i& n, double t) const {
  if (!full_) throw std::logic_error("full Gamma table not built");
  if (linf(n) > N_) return 0.0;
  int k = grid_index(std::abs(t));  // Gamma is even in t
  FourierField probe(N_);
  return full_table_[k][probe.index(n)];
}

// sum over modes (optionally one shell) of <n>^-2 * double time integral of
// sin((t-t')<n>) sin((t-t'')<n>) Gamma(n, t'-t'').
double RenormTable::double_integral(double t, int shell_filter) const {
  const int G = grid_index(t);
  const size_t nshell = shells_.size();
  std::vector<double> w = trapezoid_weights(G, h_);
  double total = 0.0;
  std::vector<double> v(G + 1);
  for (size_t s = 0; s < nshell; ++s) {
    if (shell_filter >= 0 && int(s) != shell_filter) continue;
    for (long q = 1; q <= max_q_; ++q) {
      bool any = false;
      for (int k = 0; k <= G && !any; ++k) any = bucket_[k][s * (max_q_ + 1) + q] != 0.0;
      if (!any) continue;
      double rq = std::sqrt(double(q));
      for (int j = 0; j <= G; ++j) v[j] = w[j] * std::sin((t - j * h_) * rq);
      double acc = 0.0;
      for (int u = 0; u <= G; ++u) {
        double p = bucket_[u][s * (max_q_ + 1) + q];
        if (p == 0.0) continue;
        double c = 0.0;
        for (int j = u; j <= G; ++j) c += v[j] * v[j - u];
        acc += p * c * (u == 0 ? 1.0 : 2.0);
      }
      total += acc / double(q);
    }
  }
  return total;
}

// sum over modes (optionally one shell) of <n>^-3 cos(t<n>) * int_0^t
// sin((t-t')<n>) Gamma(n,t') dt'.
double RenormTable::single_integral(double t, int shell_filter) const {
  const int G = grid_index(t);
  const size_t nshell = shells_.size();
  std::vector<double> w = trapezoid_weights(G, h_);
  double total = 0.0;
  for (size_t s = 0; s < nshell; ++s) {
    if (shell_filter >= 0 && int(s) != shell_filter) continue;
    for (long q = 1; q <= max_q_; ++q) {
      double rq = std::sqrt(double(q));
      double integ = 0.0;
      bool any = false;
      for (int j = 0; j <= G; ++j) {
        double p = bucket_[j][s * (max_q_ + 1) + q];
        if (p != 0.0) {
          integ += w[j] * std::sin((t - j * h_) * rq) * p;
          any = true;
        }
      }
      if (any) total += std::cos(t * rq) * integ / (double(q) * rq);
    }
  }
  return total;
}

double RenormTable::c33(double t) const { return double_integral(t, -1); }

double RenormTable::c15(double t) const {
  return (-0.5 * double_integral(t, -1) - single_integral(t, -1)) / 3.0;
}

double RenormTable::c_total(double t) const {
  // independent loop of the single-integral 1533 formula
  const int G = grid_index(t);
  std::vector<double> w = trapezoid_weights(G, h_);
  double total = 0.0;
  for (size_t s = 0; s < shells_.size(); ++s)
    for (long q = 1; q <= max_q_; ++q) {
      double rq = std::sqrt(double(q));
      double integ = 0.0;
      bool any = false;
      for (int j = 0; j <= G; ++j) {
        double p = bucket_[j][s * (max_q_ + 1) + q];
        if (p != 0.0) {
          integ += w[j] * std::sin((t - j * h_) * rq) * p;
          any = true;
        }
      }
      if (any) total += -2.0 * std::cos(t * rq) * integ / (double(q) * rq);
    }
  return total;
}

double RenormTable::c33_reduced(double t) const {
  const int G = grid_index(t);
  std::vector<double> w = trapezoid_weights(G, h_);
  // term a: int_0^t (t-w) A(w) dw
  double term_a = 0.0;
  for (int k = 0; k <= G; ++k) term_a += w[k] * (t - k * h_) * A_[k];
  // term b: 1/2 int_0^t sum_q q^-3/2 [sin(w sqrt q) - sin((2t-w) sqrt q)] P_q(w) dw
  double term_b = 0.0;
  for (int k = 0; k <= G; ++k) {
    double wk = k * h_;
    double b = 0.0;
    for (size_t s = 0; s < shells_.size(); ++s)
      for (long q = 1; q <= max_q_; ++q) {
        double p = bucket_[k][s * (max_q_ + 1) + q];
        if (p == 0.0) continue;
        double rq = std::sqrt(double(q));
        b += (std::sin(wk * rq) - std::sin((2.0 * t - wk) * rq)) / (double(q) * rq) * p;
      }
    term_b += w[k] * b;
  }
  return term_a - 0.5 * term_b;
}

double RenormTable::c15_reduced(double t) const {
  return (-0.5 * c33_reduced(t) - single_integral(t, -1)) / 3.0;
}

double RenormTable::c33_dyadic(int N1, int N2, double t) const {
  if (N1 != N2) return 0.0;
  for (size_t s = 0; s < shells_.size(); ++s)
    if (shells_[s] == N1) return double_integral(t, int(s));
  throw std::invalid_argument("shell not in table");
}

double RenormTable::c15_dyadic(int N1, int N2, double t) const {
  if (N1 != N2) return 0.0;
  for (size_t s = 0; s < shells_.size(); ++s)
    if (shells_[s] == N1)
      return (-0.5 * double_integral(t, int(s)) - single_integral(t, int(s))) / 3.0;
  throw std::invalid_argument("shell not in table");
}

double RenormTable::c33_against_bump() const {
  double acc = 0.0;
  for (int k = 0; k <= steps_; ++k) {
    double t = k * h_;
    double r = bump_rho(t);
    if (r == 0.0) continue;
    double wk = (k == 0 || k == steps_) ? h_ / 2.0 : h_;
    acc += wk * r * c33_reduced(t);
  }
  return acc;
}

}  // namespace phi4
