#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace phi4 {

using cplx = std::complex<double>;
using Vec3i = std::array<int, 3>;

inline int linf(const Vec3i& n) {
  int a = std::abs(n[0]), b = std::abs(n[1]), c = std::abs(n[2]);
  return std::max(a, std::max(b, c));
}

inline long l2sq(const Vec3i& n) {
  return long(n[0]) * n[0] + long(n[1]) * n[1] + long(n[2]) * n[2];
}

// Japanese bracket <n> = sqrt(1 + |n|^2).
inline double bracket(const Vec3i& n) { return std::sqrt(1.0 + double(l2sq(n))); }
inline double bracket_sq(const Vec3i& n) { return 1.0 + double(l2sq(n)); }

// Dyadic frequency scale N in {1, 2, 4, ...}.
struct DyadicScale {
  int value;
  explicit DyadicScale(int v);
};

// Shell indicator 1_N: for N = 1 keeps |n|_inf <= 1, for N >= 2 keeps
// N/2 < |n|_inf <= N.
bool in_shell(const Vec3i& n, int N);
inline bool in_ball(const Vec3i& n, int N) { return linf(n) <= N; }

std::vector<int> dyadic_range(int N);  // {1, 2, 4, ..., N}

// Hermitian-symmetric complex coefficients on the cube |n|_inf <= cutoff.
// Stored as the full (2*cutoff+1)^3 cube in lexicographic n-order; symmetry
// is checked, not structurally enforced.
class FourierField {
 public:
  FourierField() : cutoff_(0), c_(1) {}
  explicit FourierField(int cutoff);

  int cutoff() const { return cutoff_; }
  int side() const { return 2 * cutoff_ + 1; }
  size_t size() const { return c_.size(); }

  size_t index(const Vec3i& n) const;
  Vec3i node(size_t idx) const;
  bool contains(const Vec3i& n) const { return linf(n) <= cutoff_; }

  cplx at(const Vec3i& n) const;        // 0 outside the cube
  cplx& operator[](size_t idx) { return c_[idx]; }
  const cplx& operator[](size_t idx) const { return c_[idx]; }
  void set(const Vec3i& n, cplx v);

  std::vector<cplx>& data() { return c_; }
  const std::vector<cplx>& data() const { return c_; }

  double hermitian_defect() const;      // max |c(-n) - conj(c(n))|
  double l2sq_coeffs() const;           // sum |c(n)|^2
  double max_abs() const;

  FourierField& operator+=(const FourierField& o);
  FourierField& operator-=(const FourierField& o);
  FourierField& operator*=(double s);

 private:
  int cutoff_;
  std::vector<cplx> c_;
};

FourierField operator+(FourierField a, const FourierField& b);
FourierField operator-(FourierField a, const FourierField& b);
FourierField operator*(double s, FourierField a);

enum class ProjectMode { shell, ball };

// Sharp projection P_N (shell) / P_{<=N} (ball).
FourierField project(const FourierField& f, int N, ProjectMode mode);

// Resize the storage cube without touching retained modes.
FourierField with_cutoff(const FourierField& f, int cutoff);

// Exact Fourier coefficients of the pointwise product of 2..5 fields,
// restricted to |n|_inf <= out_cutoff. FFT on an alias-free grid.
FourierField multiply(const std::vector<const FourierField*>& fs, int out_cutoff);
FourierField multiply(const FourierField& a, const FourierField& b, int out_cutoff);

// O(N^6) reference convolution, used as an oracle in tests.
FourierField multiply_direct(const FourierField& a, const FourierField& b, int out_cutoff);

// sum_n a(n) * b(-n) = (2pi)^-3 * integral(a*b) for fields of any cutoffs.
cplx pair_l2(const FourierField& a, const FourierField& b);

// Parseval diagnostics: coefficient sum vs (2pi)^-3 |f|^2 integral on the grid.
struct ParsevalCheck {
  double coeff_sum;
  double grid_sum;
  double max_imag;  // largest |Im f(x_j)| seen on the grid
};
ParsevalCheck parseval_check(const FourierField& f);

// Binary layout: little-endian int64 cutoff, then coefficients in
// lexicographic n-order as interleaved real/imag doubles.
void write_binary(const FourierField& f, std::ostream& os);
FourierField read_binary(std::istream& is);
void save_field(const FourierField& f, const std::string& path);
FourierField load_field(const std::string& path);

std::string to_json(const FourierField& f);
FourierField field_from_json(const std::string& text);

}  // namespace phi4
