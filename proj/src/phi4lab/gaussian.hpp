#pragma once

#include "phi4lab/lattice.hpp"
#include "phi4lab/rng.hpp"

namespace phi4 {

// sum_{|n|_inf <= N} <n>^-2, the Wick constant of the truncated field.
double sigma_sq(int N);

// Draw a GFF sample on |n|_inf <= N: coeff(n) = g_n / <n> with g_0 real
// standard normal, g_n complex standard normal (E|g_n|^2 = 1), g_{-n} =
// conj(g_n), modes independent up to that coupling. One RNG substream per
// canonical mode, so parallel fills reproduce the serial result.
FourierField sample_gff(int N, const RngStream& stream);

// Hermitian complex white noise on the cube: h_0 real N(0,1), h_n complex
// with E|h_n|^2 = 1, h_{-n} = conj(h_n). The GFF is this divided by <n>.
FourierField sample_white(int N, const RngStream& stream);

// Wick powers of the ball-projected field:
//   k=2: (Pf)^2 - s2,  k=3: (Pf)^3 - 3 s2 Pf,  k=4: (Pf)^4 - 6 s2 (Pf)^2 + 3 s2^2,
// with s2 = sigma_sq(N) unless overridden (the constants act on the zero
// mode: a constant function has that value as its n=0 coefficient).
FourierField wick_power(const FourierField& f, int k, int N);
FourierField wick_power(const FourierField& f, int k, int N, double s2);

}  // namespace phi4
