#include "phi4lab/wave.hpp"

#include <cmath>
#include <stdexcept>

#include "phi4lab/gaussian.hpp"

namespace phi4 {

WaveState linear_propagate(const WaveState& st, double t) {
  WaveState out;
  out.pos = FourierField(st.pos.cutoff());
  out.vel = FourierField(st.vel.cutoff());
  out.time = st.time + t;
  for (size_t i = 0; i < st.pos.size(); ++i) {
    double b = bracket(st.pos.node(i));
    double c = std::cos(t * b), s = std::sin(t * b);
    out.pos[i] = c * st.pos[i] + s * st.vel[i];
    out.vel[i] = -s * st.pos[i] + c * st.vel[i];
  }
  return out;
}

FourierField nlw_force(const FourierField& pos, int N, double gamma, double sigma2) {
  if (pos.cutoff() < N) throw std::invalid_argument("state cutoff below N");
  // :(Pu)^3: + gamma Pu restricted to |n| <= N; the cube is extracted only
  // on the output ball, which keeps the FFT gather small.
  FourierField p = with_cutoff(pos, N);
  FourierField cube = multiply({&p, &p, &p}, N);
  FourierField f(pos.cutoff());
  for (int x = -N; x <= N; ++x)
    for (int y = -N; y <= N; ++y)
      for (int z = -N; z <= N; ++z) {
        Vec3i n{x, y, z};
        f.set(n, -(cube.at(n) + (gamma - 3.0 * sigma2) * p.at(n)));
      }
  return f;
}

namespace {

void half_kick(WaveState& st, double h, const WaveParams& p) {
  if (p.disable_force) return;
  FourierField f = nlw_force(st.pos, p.N, p.gamma, p.sigma2);
  for (size_t i = 0; i < st.vel.size(); ++i)
    st.vel[i] += (h / 2.0) / bracket(st.vel.node(i)) * f[i];
}

void rotate_inplace(WaveState& st, double t) {
  for (size_t i = 0; i < st.pos.size(); ++i) {
    double b = bracket(st.pos.node(i));
    double c = std::cos(t * b), s = std::sin(t * b);
    cplx np = c * st.pos[i] + s * st.vel[i];
    cplx nv = -s * st.pos[i] + c * st.vel[i];
    st.pos[i] = np;
    st.vel[i] = nv;
  }
}

}  // namespace

WaveState strang_step(const WaveState& st, double h, const WaveParams& p) {
  if (h <= 0.0) throw std::invalid_argument("h > 0 required");
  WaveState s = st;
  half_kick(s, h, p);
  rotate_inplace(s, h);
  half_kick(s, h, p);
  s.time = st.time + h;
  return s;
}

WaveState integrate(WaveState st, double T, double h, const WaveParams& p) {
  if (h <= 0.0) throw std::invalid_argument("h > 0 required");
  // Merged-kick (leapfrog) form of composed Strang steps: interior half
  // kicks of consecutive steps coalesce, one force evaluation per step.
  long n = long(std::floor(T / h + 1e-12));
  double rem = T - double(n) * h;
  if (n > 0) {
    half_kick(st, h, p);
    rotate_inplace(st, h);
    for (long k = 1; k < n; ++k) {
      half_kick(st, 2.0 * h, p);
      rotate_inplace(st, h);
    }
    half_kick(st, h, p);
    st.time += double(n) * h;
  }
  if (rem > 1e-14) st = strang_step(st, rem, p);
  return st;
}

WaveState integrate_observed(WaveState st, double T, double h, const WaveParams& p,
                             const std::function<void(const WaveState&)>& visit) {
  if (h <= 0.0) throw std::invalid_argument("h > 0 required");
  double remaining = T;
  while (remaining > 1e-14) {
    double step = std::min(h, remaining);
    st = strang_step(st, step, p);
    remaining -= step;
    if (visit) visit(st);
  }
  return st;
}

double free_energy(const WaveState& st) {
  // (2pi)^3 / 2 * sum <n>^2 (|pos|^2 + |vel|^2); d/dt u = <grad> vel.
  double s = 0.0;
  for (size_t i = 0; i < st.pos.size(); ++i) {
    double q = bracket_sq(st.pos.node(i));
    s += q * (std::norm(st.pos[i]) + std::norm(st.vel[i]));
  }
  const double vol = 248.05021344239856140;  // (2 pi)^3
  return 0.5 * vol * s;
}

double potential_energy(const FourierField& pos, const WaveParams& p) {
  const double vol = 248.05021344239856140;
  FourierField pu = project(with_cutoff(pos, std::max(pos.cutoff(), p.N)), p.N, ProjectMode::ball);
  FourierField sq = multiply(pu, pu, 2 * p.N);
  // int (Pu)^4 = (2pi)^3 sum |F[(Pu)^2]|^2, exact for alias-free products
  double quart = 0.0;
  for (const cplx& v : sq.data()) quart += std::norm(v);
  double mass = 0.0;
  for (const cplx& v : pu.data()) mass += std::norm(v);
  double s2 = p.sigma2;
  // int :(Pu)^4: = int (Pu)^4 - 6 s2 int (Pu)^2 + 3 s2^2 (2pi)^3
  double wick4 = vol * (quart - 6.0 * s2 * mass + 3.0 * s2 * s2);
  return 0.25 * wick4 + 0.5 * p.gamma * vol * mass;
}

double hamiltonian(const WaveState& st, const WaveParams& p) {
  return free_energy(st) + potential_energy(st.pos, p);
}

FourierField duhamel(const std::vector<FourierField>& F, double h_q, double t) {
  if (F.empty()) throw std::invalid_argument("no samples");
  const int G = int(std::lround(t / h_q));
  if (std::abs(G * h_q - t) > 1e-9 || G + 1 > int(F.size()))
    throw std::invalid_argument("samples do not cover [0,t] on the grid");
  FourierField out(F[0].cutoff());
  for (size_t i = 0; i < out.size(); ++i) {
    double b = bracket(out.node(i));
    cplx acc(0.0, 0.0);
    for (int j = 0; j <= G; ++j) {
      double w = (j == 0 || j == G) ? h_q / 2.0 : h_q;
      if (G == 0) w = 0.0;
      acc += w * std::sin((t - j * h_q) * b) * F[j][i];
    }
    out[i] = acc / b;
  }
  return out;
}

}  // namespace phi4
