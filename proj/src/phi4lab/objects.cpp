#include "phi4lab/objects.hpp"

#include <cmath>
#include <omp.h>
#include <stdexcept>

#include "phi4lab/gaussian.hpp"

namespace phi4 {

cplx BlueData::SI(const Vec3i& n, int family) const {
  const FourierField& f = family == 0 ? phi_cos : phi_sin;
  return bracket(n) * f.at(n);
}

BlueData sample_blue(int N, const RngStream& stream) {
  BlueData b;
  b.phi_cos = sample_gff(N, stream.sub("cos"));
  b.phi_sin = sample_gff(N, stream.sub("sin"));
  return b;
}

FourierField wave_linear(const BlueData& blue, double t) {
  FourierField out(blue.cutoff());
  for (size_t i = 0; i < out.size(); ++i) {
    double b = bracket(out.node(i));
    out[i] = std::cos(t * b) * blue.phi_cos[i] + std::sin(t * b) * blue.phi_sin[i];
  }
  return out;
}

namespace {

// per-mode multiplier sin(tau <n>)/<n> restricted to the ball
FourierField sin_propagate(const FourierField& f, double tau) {
  FourierField out(f.cutoff());
  for (size_t i = 0; i < out.size(); ++i) {
    double b = bracket(out.node(i));
    out[i] = std::sin(tau * b) / b * f[i];
  }
  return out;
}

FourierField kernel_field(int N, double tau, bool sine) {
  // sine: sin(tau<m>)/<m>, else cos(tau<m>)/<m>^2, on the ball
  FourierField out(N);
  for (size_t i = 0; i < out.size(); ++i) {
    double b = bracket(out.node(i));
    out[i] = sine ? cplx(std::sin(tau * b) / b, 0.0) : cplx(std::cos(tau * b) / (b * b), 0.0);
  }
  return out;
}

FourierField wick_square(const FourierField& lin, int N, double s2) {
  FourierField sq = multiply(lin, lin, 2 * N);
  sq.set({0, 0, 0}, sq.at({0, 0, 0}) - s2);
  return sq;
}

FourierField wick_cube(const FourierField& lin, int N, double s2) {
  FourierField cube = multiply({&lin, &lin, &lin}, N);
  for (size_t i = 0; i < cube.size(); ++i) cube[i] -= 3.0 * s2 * lin.at(cube.node(i));
  return cube;
}

}  // namespace

WaveObjects::WaveObjects(const BlueData& blue, int N, double h_q, const FourierField& Gamma0)
    : blue_(&blue), N_(N), h_(h_q), sigma2_(sigma_sq(N)), Gamma0_(&Gamma0) {
  if (blue.cutoff() < N) throw std::invalid_argument("blue data cutoff below N");
  size_t cube = FourierField(N).size();
  cubic_C_.assign(cube, cplx(0, 0));
  cubic_S_.assign(cube, cplx(0, 0));
  quintic_C_.assign(cube, cplx(0, 0));
  quintic_S_.assign(cube, cplx(0, 0));
  cubic_now_ = FourierField(N);
}

int WaveObjects::grid_steps(double t) const {
  double k = t / h_;
  int ki = int(std::lround(k));
  if (std::abs(k - ki) > 1e-9 || ki < 0) throw std::invalid_argument("t not on the object grid");
  return ki;
}

FourierField WaveObjects::eval(const std::vector<cplx>& C, const std::vector<cplx>& S, double t,
                               double scale) const {
  FourierField out(N_);
  for (size_t i = 0; i < out.size(); ++i) {
    double b = bracket(out.node(i));
    out[i] = scale / b * (std::sin(t * b) * C[i] - std::cos(t * b) * S[i]);
  }
  return out;
}

void WaveObjects::advance_to(int steps) {
  FourierField probe(N_);
  auto push = [&](std::vector<cplx>& C, std::vector<cplx>& S, const FourierField& src, int j,
                  double w) {
    double tj = j * h_;
    for (size_t i = 0; i < src.size(); ++i) {
      double b = bracket(probe.node(i));
      C[i] += w * std::cos(tj * b) * src[i];
      S[i] += w * std::sin(tj * b) * src[i];
    }
  };
  auto source_at = [&](int j) {
    FourierField lin = wave_linear(*blue_, j * h_);
    FourierField lin_ball = with_cutoff(lin, N_);
    FourierField cs = wick_cube(lin_ball, N_, sigma2_);
    // quintic source needs cubic at t_j, which uses sums through j
    return std::pair<FourierField, FourierField>(std::move(cs), std::move(lin_ball));
  };

  for (int j = done_ + 1; j <= steps; ++j) {
    auto [cub_src, lin_ball] = source_at(j);
    // composite trapezoid: interval [t_{j-1}, t_j] adds h/2 of both ends
    if (j == 0) {
      push(cubic_C_, cubic_S_, cub_src, 0, 0.0);  // no interval yet
    } else {
      push(cubic_C_, cubic_S_, last_cubic_src_, j - 1, h_ / 2.0);
      push(cubic_C_, cubic_S_, cub_src, j, h_ / 2.0);
    }
    cubic_now_ = eval(cubic_C_, cubic_S_, j * h_, 1.0);

    FourierField quad = wick_square(lin_ball, N_, sigma2_);
    FourierField qc = multiply(quad, cubic_now_, N_);
    FourierField qsrc(N_);
    for (size_t i = 0; i < qsrc.size(); ++i)
      qsrc[i] = 3.0 * qc[i] - (*Gamma0_)[i].real() * lin_ball[i];
    if (j == 0) {
      push(quintic_C_, quintic_S_, qsrc, 0, 0.0);
    } else {
      push(quintic_C_, quintic_S_, last_quintic_src_, j - 1, h_ / 2.0);
      push(quintic_C_, quintic_S_, qsrc, j, h_ / 2.0);
    }
    last_cubic_src_ = std::move(cub_src);
    last_quintic_src_ = std::move(qsrc);
    done_ = j;
  }
}

FourierField WaveObjects::cubic(double t) {
  int steps = grid_steps(t);
  if (steps > done_) advance_to(steps);
  if (steps < done_) throw std::logic_error("object grid cannot rewind");
  return eval(cubic_C_, cubic_S_, t, 1.0);
}

FourierField WaveObjects::quintic(double t) {
  int steps = grid_steps(t);
  if (steps > done_) advance_to(steps);
  if (steps < done_) throw std::logic_error("object grid cannot rewind");
  return eval(quintic_C_, quintic_S_, t, 1.0 / 3.0);
}

FourierField wave_cubic(const BlueData& blue, double t, double h_q, int N) {
  FourierField g0(N);  // cubic does not involve Gamma
  WaveObjects eng(blue, N, h_q, g0);
  return eng.cubic(t);
}

FourierField wave_quintic(const BlueData& blue, double t, double h_q, int N,
                          const FourierField& Gamma0) {
  WaveObjects eng(blue, N, h_q, Gamma0);
  return eng.quintic(t);
}

QuinticParts quintic_pairing_parts(const BlueData& blue, double t, double h_q, int N) {
  if (N > 4) throw std::invalid_argument("explicit pairing sums limited to N <= 4");
  const double s2 = sigma_sq(N);
  const int G = int(std::lround(t / h_q));
  if (std::abs(G * h_q - t) > 1e-9) throw std::invalid_argument("t not on the object grid");

  FourierField g0(N);
  WaveObjects eng(blue, N, h_q, g0);  // provides the shared-grid cubic sums

  FourierField lin_t = with_cutoff(wave_linear(blue, t), N);
  FourierField quad_t = wick_square(lin_t, N, s2);

  QuinticParts parts{FourierField(N), FourierField(N), FourierField(N)};
  for (int j = 0; j <= G; ++j) {
    double w = (j == 0 || j == G) ? h_q / 2.0 : h_q;
    if (G == 0) w = 0.0;
    double tj = j * h_q, tau = t - tj;
    FourierField lin_j = with_cutoff(wave_linear(blue, tj), N);
    FourierField F_tau = kernel_field(N, tau, true);
    FourierField G_tau = kernel_field(N, tau, false);

    // two pairings: deterministic kernel conv(G,G,F) times lin(t_j)
    FourierField W = multiply({&G_tau, &G_tau, &F_tau}, N);
    FourierField two_j(N);
    for (size_t i = 0; i < two_j.size(); ++i) two_j[i] = W[i].real() * lin_j[i];

    // one pairing: S = conv(F,G) on the pair frequency, Wick-corrected
    FourierField S = multiply(F_tau, G_tau, 2 * N);
    FourierField quad_j = wick_square(lin_j, N, s2);
    FourierField A(2 * N);
    for (size_t i = 0; i < A.size(); ++i) A[i] = S[i].real() * quad_j[i];
    FourierField one_j = multiply(lin_t, A, N);
    FourierField K = multiply(S, G_tau, N);
    for (size_t i = 0; i < one_j.size(); ++i) one_j[i] -= 2.0 * K[i].real() * lin_j[i];

    // zero pairings by subtraction from the product-formula slice:
    // P(quad_t * C_j) = zero_j + 6 one_j + 6 two_j
    FourierField cub_src = wick_cube(lin_j, N, s2);
    FourierField C_j = sin_propagate(cub_src, tau);
    FourierField zero_j = multiply(quad_t, C_j, N);
    for (size_t i = 0; i < zero_j.size(); ++i) zero_j[i] -= 6.0 * (one_j[i] + two_j[i]);

    for (size_t i = 0; i < parts.zero.size(); ++i) {
      parts.zero[i] += w * zero_j[i];
      parts.one[i] += w * one_j[i];
      parts.two[i] += w * two_j[i];
    }
  }
  return parts;
}

FourierField resistor(const BlueData& blue, double t, const RenormTable& table) {
  const int N = table.N();
  const int G = table.grid_index(t);
  const double h = table.h();
  FourierField out(N);
  for (size_t i = 0; i < out.size(); ++i) {
    Vec3i n = out.node(i);
    double b = bracket(n);
    // I1 = int_0^t sin((t-t')<n>) Gamma(n,t') dt'
    double I1 = 0.0;
    for (int j = 0; j <= G; ++j) {
      double w = (j == 0 || j == G) ? h / 2.0 : h;
      if (G == 0) w = 0.0;
      I1 += w * std::sin((t - j * h) * b) * table.Gamma_nt(n, j * h);
    }
    // D_phi = int_0^t dt' sin((t-t')<n>) int_0^{t'} dt'' Gamma(n,t'-t'') (d phi)(t''<n>)
    double Dcos = 0.0, Dsin = 0.0;
    for (int j = 0; j <= G; ++j) {
      double wj = (j == 0 || j == G) ? h / 2.0 : h;
      if (G == 0) wj = 0.0;
      double inner_c = 0.0, inner_s = 0.0;
      for (int k = 0; k <= j; ++k) {
        double wk = (k == 0 || k == j) ? h / 2.0 : h;
        if (j == 0) wk = 0.0;
        double gam = table.Gamma_nt(n, (j - k) * h);
        inner_c += wk * gam * (-std::sin(k * h * b));
        inner_s += wk * gam * (std::cos(k * h * b));
      }
      double s = std::sin((t - j * h) * b);
      Dcos += wj * s * inner_c;
      Dsin += wj * s * inner_s;
    }
    cplx si_cos = blue.SI(n, 0), si_sin = blue.SI(n, 1);
    out[i] = (-I1 / (b * b) * si_cos - (Dcos * si_cos + Dsin * si_sin) / b) / 18.0;
  }
  return out;
}

double sine_kernel(int K, int L, double t, const Vec3i& r) {
  double s = 0.0;
  for (int x = -K; x <= K; ++x)
    for (int y = -K; y <= K; ++y)
      for (int z = -K; z <= K; ++z) {
        Vec3i n1{x, y, z};
        if (!in_shell(n1, K)) continue;
        Vec3i n2{r[0] - x, r[1] - y, r[2] - z};
        if (!in_shell(n2, L)) continue;
        double b1 = bracket(n1), b2 = bracket(n2);
        s += std::sin(t * b1) / b1 * std::cos(t * b2) / (b2 * b2);
      }
  return s;
}

double sine_kernel_symmetrized(int K, int L, double t, const Vec3i& r) {
  const int B = std::max(K, L);
  double s = 0.0;
  for (int x = -B; x <= B; ++x)
    for (int y = -B; y <= B; ++y)
      for (int z = -B; z <= B; ++z) {
        Vec3i n1{x, y, z};
        Vec3i n2{r[0] - x, r[1] - y, r[2] - z};
        double iKL = (in_shell(n1, K) && in_shell(n2, L)) ? 1.0 : 0.0;
        double iLK = (in_shell(n1, L) && in_shell(n2, K)) ? 1.0 : 0.0;
        if (iKL == 0.0 && iLK == 0.0) continue;
        double b1 = bracket(n1), b2 = bracket(n2);
        double q = b1 * b1 * b2 * b2;
        if (iKL != 0.0) {
          s += 0.25 * (b1 - b2) / q * std::sin(t * (b1 - b2));
          s += 0.25 * (b1 + b2) / q * std::sin(t * (b1 + b2));
        }
        s -= 0.5 * (iKL - iLK) * std::cos(t * b1) / (b1 * b1) * std::sin(t * b2) / b2;
      }
  return s;
}

FourierField mixed_resonant(const NoisePath& path, int N, double t,
                            const std::function<FourierField(double)>& gamma_ts) {
  const int steps = path.steps();
  const double h = path.h;
  // Gamma(n,t,s_k) for every path step
  std::vector<FourierField> gam(steps + 1);
  for (int k = 0; k <= steps; ++k) {
    double s = path.s_at(k);
    gam[k] = gamma_ts ? gamma_ts(s) : gamma_field(N, t, s);
  }
  FourierField out(N);
  for (size_t i = 0; i < out.size(); ++i) {
    Vec3i n = out.node(i);
    double q = bracket_sq(n), b = bracket(n);
    // SI[n,cos] realized on the path
    cplx si(0.0, 0.0);
    for (int k = 0; k < steps; ++k) si += std::exp(path.s_at(k) * q) * path.dW[k][i];
    si *= std::sqrt(2.0) * b;
    // Ito term: -sqrt2 int Gamma(n,t,s) dW
    cplx ito(0.0, 0.0);
    for (int k = 0; k < steps; ++k) ito += gam[k].at(n).real() * path.dW[k][i];
    ito *= -std::sqrt(2.0);
    // heat-propagated term: +sqrt2 <n>^2 int dW H(s), H(s) = int_s^0 Gamma(n,t,tau) e^{-(tau-s)q} dtau
    std::vector<double> H(steps + 1, 0.0);
    for (int k = steps - 1; k >= 0; --k)
      H[k] = std::exp(-h * q) * H[k + 1] +
             h / 2.0 * (gam[k].at(n).real() + std::exp(-h * q) * gam[k + 1].at(n).real());
    cplx heat(0.0, 0.0);
    for (int k = 0; k < steps; ++k) heat += H[k] * path.dW[k][i];
    heat *= std::sqrt(2.0) * q;
    double gamma_nt = gam[steps].at(n).real();  // s = 0
    out[i] = gamma_nt / b * si + ito + heat;
  }
  return out;
}

FourierField mixed_resonant(const NoisePath& path, int N, double t) {
  return mixed_resonant(path, N, t, nullptr);
}

FourierField mixed_two_pairing_direct(const NoisePath& path, int N, double t) {
  const int steps = path.steps();
  const long maxE = 3 * (1 + 3L * N * N);
  FourierField out(N);
  for (size_t i = 0; i < out.size(); ++i) {
    Vec3i n = out.node(i);
    double q = bracket_sq(n);
    // bucket the deterministic coefficient by the integer decay rate E
    std::vector<double> wE(size_t(maxE + 1), 0.0);
    for (int x2 = -N; x2 <= N; ++x2)
      for (int y2 = -N; y2 <= N; ++y2)
        for (int z2 = -N; z2 <= N; ++z2) {
          Vec3i n2{x2, y2, z2};
          double q2 = bracket_sq(n2), b2 = bracket(n2);
          for (int x4 = -N; x4 <= N; ++x4)
            for (int y4 = -N; y4 <= N; ++y4)
              for (int z4 = -N; z4 <= N; ++z4) {
                Vec3i n4{x4, y4, z4};
                Vec3i n234{n2[0] + n[0] + n4[0], n2[1] + n[1] + n4[1], n2[2] + n[2] + n4[2]};
                if (linf(n234) > N) continue;
                double q4 = bracket_sq(n4), b4 = bracket(n4);
                double q234 = bracket_sq(n234), b234 = bracket(n234);
                long E = long(q2 + q4 + q234);
                wE[size_t(E)] += std::cos(t * b2) * std::cos(t * b234) * std::cos(t * b4) /
                                 (q2 * q4);
              }
        }
    cplx acc(0.0, 0.0);
    for (int k = 0; k < steps; ++k) {
      double s = path.s_at(k);
      double g = 0.0;
      for (long E = 1; E <= maxE; ++E) {
        if (wE[size_t(E)] == 0.0) continue;
        double val;
        if (std::abs(double(E) - q) < 0.5)
          val = -s * std::exp(s * q);
        else
          val = (std::exp(s * q) - std::exp(s * double(E))) / (double(E) - q);
        g += wE[size_t(E)] * val;
      }
      acc += g * path.dW[k][i];
    }
    out[i] = std::sqrt(2.0) * acc;
  }
  return out;
}

McResult mc_expect(const BlueObject& A, const BlueObject& B, int N, double t, int samples,
                   uint64_t seed, const std::string& stream_name) {
  if (samples < 2) throw std::invalid_argument("samples >= 2 required");
  std::vector<cplx> vals(size_t(samples));
  RngStream root(seed, stream_name);
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < samples; ++s) {
    BlueData blue = sample_blue(N, root.sub(uint64_t(s)));
    FourierField a = A(blue, t);
    FourierField b = B ? B(blue, t) : a;
    vals[size_t(s)] = pair_l2(a, b);
  }
  cplx mean(0.0, 0.0);
  for (const cplx& v : vals) mean += v;
  mean /= double(samples);
  double var = 0.0;
  for (const cplx& v : vals) var += (v.real() - mean.real()) * (v.real() - mean.real());
  var /= double(samples - 1);
  return {mean, std::sqrt(var / double(samples))};
}

}  // namespace phi4
