#pragma once

#include <functional>
#include <vector>

#include "phi4lab/lattice.hpp"

namespace phi4 {

// First-order pair (u, <grad>^-1 du/dt), both Hermitian with one cutoff.
struct WaveState {
  FourierField pos;
  FourierField vel;
  double time = 0.0;
};

// Exact rotation by angle t<n> per mode.
WaveState linear_propagate(const WaveState& st, double t);

// -P_{<=N}( :(P_{<=N} u)^3: + gamma * P_{<=N} u ), evaluated at u = st.pos.
// gamma and the Wick constant are supplied by the caller (renorm / gaussian).
FourierField nlw_force(const FourierField& pos, int N, double gamma, double sigma2);

struct WaveParams {
  int N;
  double gamma;
  double sigma2;
  bool disable_force = false;  // linear flow (testing hook)
};

// Strang step: half kick, exact rotation by h, half kick.
WaveState strang_step(const WaveState& st, double h, const WaveParams& p);
WaveState integrate(WaveState st, double T, double h, const WaveParams& p);

// Integrate while merging interior kicks (leapfrog form); calls visit(state)
// after every step when provided.
WaveState integrate_observed(WaveState st, double T, double h, const WaveParams& p,
                             const std::function<void(const WaveState&)>& visit);

// H_{<=N} = 1/2 int (u^2 + |grad u|^2 + (du/dt)^2) + 1/4 int :(Pu)^4:
//         + gamma/2 int (Pu)^2, via Parseval (exact for band-limited fields).
double hamiltonian(const WaveState& st, const WaveParams& p);

// Quadratic (free) part only.
double free_energy(const WaveState& st);

// 1/4 int :(Pu)^4: + gamma/2 int (Pu)^2 over the torus.
double potential_energy(const FourierField& pos, const WaveParams& p);

// Duhamel quadrature: int_0^t sin((t-t')<n>)/<n> F(t') dt' by per-mode
// trapezoid over samples F(j*h_q), j = 0..n_steps, which must cover [0,t].
FourierField duhamel(const std::vector<FourierField>& F_samples, double h_q, double t);

}  // namespace phi4
