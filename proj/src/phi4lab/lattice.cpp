#include "phi4lab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "phi4lab/fft.hpp"

namespace phi4 {

DyadicScale::DyadicScale(int v) : value(v) {
  if (v < 1 || (v & (v - 1)) != 0) throw std::invalid_argument("dyadic scale must be a power of two");
}

bool in_shell(const Vec3i& n, int N) {
  int a = linf(n);
  if (N == 1) return a <= 1;
  return 2 * a > N && a <= N;
}

std::vector<int> dyadic_range(int N) {
  std::vector<int> r;
  for (int K = 1; K <= N; K *= 2) r.push_back(K);
  return r;
}

FourierField::FourierField(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 0) throw std::invalid_argument("negative cutoff");
  size_t s = size_t(2 * cutoff + 1);
  c_.assign(s * s * s, cplx(0.0, 0.0));
}

size_t FourierField::index(const Vec3i& n) const {
  const int N = cutoff_, S = 2 * N + 1;
  return (size_t(n[0] + N) * S + size_t(n[1] + N)) * S + size_t(n[2] + N);
}

Vec3i FourierField::node(size_t idx) const {
  const int N = cutoff_, S = 2 * N + 1;
  int z = int(idx % S) - N;
  idx /= S;
  int y = int(idx % S) - N;
  int x = int(idx / S) - N;
  return {x, y, z};
}

cplx FourierField::at(const Vec3i& n) const {
  if (!contains(n)) return cplx(0.0, 0.0);
  return c_[index(n)];
}

void FourierField::set(const Vec3i& n, cplx v) {
  if (!contains(n)) throw std::out_of_range("mode outside cutoff cube");
  c_[index(n)] = v;
}

double FourierField::hermitian_defect() const {
  double d = 0.0;
  const int N = cutoff_;
  for (int x = -N; x <= N; ++x)
    for (int y = -N; y <= N; ++y)
      for (int z = -N; z <= N; ++z) {
        cplx a = c_[index({x, y, z})];
        cplx b = c_[index({-x, -y, -z})];
        d = std::max(d, std::abs(b - std::conj(a)));
      }
  return d;
}

double FourierField::l2sq_coeffs() const {
  double s = 0.0;
  for (const cplx& v : c_) s += std::norm(v);
  return s;
}

double FourierField::max_abs() const {
  double s = 0.0;
  for (const cplx& v : c_) s = std::max(s, std::abs(v));
  return s;
}

FourierField& FourierField::operator+=(const FourierField& o) {
  if (o.cutoff_ != cutoff_) throw std::invalid_argument("cutoff mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

FourierField& FourierField::operator-=(const FourierField& o) {
  if (o.cutoff_ != cutoff_) throw std::invalid_argument("cutoff mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

FourierField& FourierField::operator*=(double s) {
  for (cplx& v : c_) v *= s;
  return *this;
}

FourierField operator+(FourierField a, const FourierField& b) { return a += b; }
FourierField operator-(FourierField a, const FourierField& b) { return a -= b; }
FourierField operator*(double s, FourierField a) { return a *= s; }

FourierField project(const FourierField& f, int N, ProjectMode mode) {
  DyadicScale check(N);
  FourierField out(f.cutoff());
  for (size_t i = 0; i < f.size(); ++i) {
    Vec3i n = f.node(i);
    bool keep = (mode == ProjectMode::ball) ? in_ball(n, N) : in_shell(n, N);
    if (keep) out[i] = f[i];
  }
  return out;
}

FourierField with_cutoff(const FourierField& f, int cutoff) {
  FourierField out(cutoff);
  int N = std::min(cutoff, f.cutoff());
  for (int x = -N; x <= N; ++x)
    for (int y = -N; y <= N; ++y)
      for (int z = -N; z <= N; ++z) out.set({x, y, z}, f.at({x, y, z}));
  return out;
}

FourierField multiply(const std::vector<const FourierField*>& fs, int out_cutoff) {
  const size_t k = fs.size();
  if (k < 2 || k > 5) throw std::invalid_argument("multiply takes 2..5 fields");
  int max_in = 0;
  for (const FourierField* f : fs) max_in = std::max(max_in, f->cutoff());
  const int M = next_fft_size(int(k) * max_in + out_cutoff + 1);
  const SpectralGrid& g = SpectralGrid::get(M);

  std::vector<cplx> prod, tmp;
  g.to_grid(*fs[0], prod);
  for (size_t j = 1; j < k; ++j) {
    g.to_grid(*fs[j], tmp);
    for (size_t i = 0; i < prod.size(); ++i) prod[i] *= tmp[i];
  }
  return g.from_grid(prod, out_cutoff);
}

FourierField multiply(const FourierField& a, const FourierField& b, int out_cutoff) {
  return multiply({&a, &b}, out_cutoff);
}

FourierField multiply_direct(const FourierField& a, const FourierField& b, int out_cutoff) {
  FourierField out(out_cutoff);
  const int Na = a.cutoff();
  for (int x = -Na; x <= Na; ++x)
    for (int y = -Na; y <= Na; ++y)
      for (int z = -Na; z <= Na; ++z) {
        cplx av = a.at({x, y, z});
        if (av == cplx(0.0, 0.0)) continue;
        const int Nb = b.cutoff();
        for (int u = -Nb; u <= Nb; ++u)
          for (int v = -Nb; v <= Nb; ++v)
            for (int w = -Nb; w <= Nb; ++w) {
              Vec3i n{x + u, y + v, z + w};
              if (linf(n) > out_cutoff) continue;
              out[out.index(n)] += av * b.at({u, v, w});
            }
      }
  return out;
}

cplx pair_l2(const FourierField& a, const FourierField& b) {
  cplx s(0.0, 0.0);
  int N = std::min(a.cutoff(), b.cutoff());
  for (int x = -N; x <= N; ++x)
    for (int y = -N; y <= N; ++y)
      for (int z = -N; z <= N; ++z) s += a.at({x, y, z}) * b.at({-x, -y, -z});
  return s;
}

ParsevalCheck parseval_check(const FourierField& f) {
  const int M = next_fft_size(2 * f.cutoff() + 2);
  const SpectralGrid& g = SpectralGrid::get(M);
  std::vector<cplx> grid;
  g.to_grid(f, grid);
  double s = 0.0, mi = 0.0;
  for (const cplx& v : grid) {
    s += std::norm(v);
    mi = std::max(mi, std::abs(v.imag()));
  }
  return {f.l2sq_coeffs(), s / double(grid.size()), mi};
}

void write_binary(const FourierField& f, std::ostream& os) {
  int64_t N = f.cutoff();
  os.write(reinterpret_cast<const char*>(&N), sizeof(N));
  for (const cplx& v : f.data()) {
    double re = v.real(), im = v.imag();
    os.write(reinterpret_cast<const char*>(&re), sizeof(re));
    os.write(reinterpret_cast<const char*>(&im), sizeof(im));
  }
}

FourierField read_binary(std::istream& is) {
  int64_t N = 0;
  is.read(reinterpret_cast<char*>(&N), sizeof(N));
  if (!is || N < 0 || N > 4096) throw std::runtime_error("bad field header");
  FourierField f(int(N));
  for (cplx& v : f.data()) {
    double re, im;
    is.read(reinterpret_cast<char*>(&re), sizeof(re));
    is.read(reinterpret_cast<char*>(&im), sizeof(im));
    v = cplx(re, im);
  }
  if (!is) throw std::runtime_error("truncated field file");
  return f;
}

void save_field(const FourierField& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_binary(f, os);
}

FourierField load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_binary(is);
}

std::string to_json(const FourierField& f) {
  nlohmann::json j;
  j["cutoff"] = f.cutoff();
  auto& arr = j["coeffs"] = nlohmann::json::array();
  for (const cplx& v : f.data()) arr.push_back({v.real(), v.imag()});
  return j.dump();
}

FourierField field_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FourierField f(j.at("cutoff").get<int>());
  const auto& arr = j.at("coeffs");
  if (arr.size() != f.size()) throw std::runtime_error("coeff count mismatch");
  for (size_t i = 0; i < f.size(); ++i) f[i] = cplx(arr[i][0].get<double>(), arr[i][1].get<double>());
  return f;
}

}  // namespace phi4
