#pragma once

#include <string>
#include <vector>

#include "phi4lab/lattice.hpp"
#include "phi4lab/rng.hpp"
#include "phi4lab/wave.hpp"

namespace phi4 {

// V_{<=N}(phi) = 1/4 int :(P phi)^4: + gamma/2 int (P phi)^2.
double gibbs_potential(const FourierField& phi_cos, const WaveParams& p);

// pCN chain targeting d mu ~ exp(-V) d(GFF); the reference measure is
// preserved exactly by the proposal, so phi_sin never enters the density.
struct GibbsChain {
  FourierField phi;
  double beta = 0.5;
  double current_V = 0.0;
  long accepts = 0;
  long steps = 0;
  std::vector<double> v_series;  // recorded V values, for ESS diagnostics

  double acceptance() const { return steps ? double(accepts) / double(steps) : 0.0; }
};

GibbsChain gibbs_chain_init(const WaveParams& p, const RngStream& stream);
void pcn_step(GibbsChain& chain, const WaveParams& p, RngStream& stream);

// Run burn-in with beta auto-tuned to 20-40% acceptance, then emit `count`
// states thinned by `thin`.
struct GibbsRun {
  std::vector<FourierField> samples;
  double beta;
  double acceptance;
  double ess;  // effective sample size of the V series over the kept window
};
GibbsRun gibbs_samples(const WaveParams& p, int count, int burn_in, int thin, uint64_t seed,
                       const std::string& stream_name);

struct ObservableReport {
  std::string name;
  double mean0, stderr0;
  double mean1, stderr1;
  double z;
  double ks_stat, ks_p;
  double halving_delta;  // |mean_T(h) - mean_T(h/2)|
  double halving_gate;   // one MC stderr, the allowed delta
};

struct InvarianceReport {
  bool valid = false;
  std::string note;
  double ess = 0.0;
  double beta = 0.0;
  std::vector<ObservableReport> observables;
  std::vector<std::vector<double>> raw0, raw1;  // per observable, per sample
};

// Draw n_samples Gibbs states, evolve to time T by the truncated wave flow,
// and compare observable distributions at t = 0 and t = T (z and KS tests),
// with an h-halving bias check on the same ensemble.
InvarianceReport invariance_test(int N, double T, double h, const std::vector<std::string>& observables,
                                 int n_samples, int burn_in, int thin, uint64_t seed,
                                 bool linear_only = false);

// The three standard observables.
double obs_low_mode_mass(const WaveState& st);           // |P_{<=1} u|_{L2}^2
double obs_hamiltonian(const WaveState& st, const WaveParams& p);
double obs_wick4(const WaveState& st, const WaveParams& p);  // int :(Pu)^4:

}  // namespace phi4
