#include "phi4lab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

namespace phi4 {

namespace {

// |n|_inf dyadic shell point list (shared with the spectral convention).
std::vector<Vec3i> linf_shell_points(int N) {
  std::vector<Vec3i> pts;
  for (int x = -N; x <= N; ++x)
    for (int y = -N; y <= N; ++y)
      for (int z = -N; z <= N; ++z)
        if (in_shell({x, y, z}, N)) pts.push_back({x, y, z});
  return pts;
}

const std::vector<Vec3i>& linf_shell(int N) {
  static std::mutex mu;
  static std::map<int, std::vector<Vec3i>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it == cache.end()) it = cache.emplace(N, linf_shell_points(N)).first;
  return it->second;
}

// Histogram of values v over integer bins: whole[k] counts v in [k, k+1),
// exact[k] counts v == k (integer brackets do occur). Windowed count for
// integer m is whole[m-1] + whole[m] + exact[m+1].
struct OmegaHistogram {
  long lo = 0;
  std::vector<long> whole, exact;

  void init(double min_v, double max_v) {
    lo = long(std::floor(min_v)) - 2;
    long hi = long(std::floor(max_v)) + 3;
    whole.assign(size_t(hi - lo + 1), 0);
    exact.assign(size_t(hi - lo + 1), 0);
  }
  void add(double v) {
    long k = long(std::floor(v));
    whole[size_t(k - lo)] += 1;
    if (v == double(k)) exact[size_t(k - lo)] += 1;
  }
  long window(long m) const {
    auto idx = [&](long k) -> long {
      if (k < lo || k >= lo + long(whole.size())) return -1;
      return k - lo;
    };
    long c = 0;
    long a = idx(m - 1), b = idx(m), e = idx(m + 1);
    if (a >= 0) c += whole[size_t(a)];
    if (b >= 0) c += whole[size_t(b)];
    if (e >= 0) c += exact[size_t(e)];
    return c;
  }
  long sup(long* argmax) const {
    long best = 0, arg = 0;
    for (long m = lo; m < lo + long(whole.size()); ++m) {
      long c = window(m);
      if (c > best) {
        best = c;
        arg = m;
      }
    }
    if (argmax) *argmax = arg;
    return best;
  }
};

template <typename Filter>
OmegaHistogram basic_histogram(const Vec3i& a, int N, int sign, Filter&& keep) {
  const auto& pts = linf_shell(N);
  OmegaHistogram h;
  double bound = bracket({N + std::abs(a[0]) + std::abs(a[1]) + std::abs(a[2]), N, N}) + 2 * N + 4;
  h.init(-2.0 * bound, 2.0 * bound);
  for (const Vec3i& n : pts) {
    if (!keep(n)) continue;
    Vec3i an{a[0] + n[0], a[1] + n[1], a[2] + n[2]};
    h.add(bracket(an) + sign * bracket(n));
  }
  return h;
}

long window_count_from(const OmegaHistogram& h, double m) {
  // non-integer m: direct definition needs a fresh pass; the lab only
  // evaluates integer m (the lemmas' sup runs over Z).
  return h.window(long(std::llround(m)));
}

}  // namespace

long count_basic(const Vec3i& a, int N, int sign, double m) {
  return window_count_from(basic_histogram(a, N, sign, [](const Vec3i&) { return true; }), m);
}

long count_basic_sup(const Vec3i& a, int N, int sign, long* argmax_m) {
  return basic_histogram(a, N, sign, [](const Vec3i&) { return true; }).sup(argmax_m);
}

long count_box(const Vec3i& a, int N, const Vec3i& zeta, int A_box, int sign, double m) {
  auto keep = [&](const Vec3i& n) {
    return linf({n[0] - zeta[0], n[1] - zeta[1], n[2] - zeta[2]}) <= A_box;
  };
  return window_count_from(basic_histogram(a, N, sign, keep), m);
}

long count_box_sup(const Vec3i& a, int N, const Vec3i& zeta, int A_box, int sign) {
  auto keep = [&](const Vec3i& n) {
    return linf({n[0] - zeta[0], n[1] - zeta[1], n[2] - zeta[2]}) <= A_box;
  };
  return basic_histogram(a, N, sign, keep).sup(nullptr);
}

long count_gamma(const Vec3i& a, int N, int sign, double m, const GammaCondition& gc) {
  auto keep = [&](const Vec3i& n) {
    return gc.holds(n, {n[0] + a[0], n[1] + a[1], n[2] + a[2]});
  };
  return window_count_from(basic_histogram(a, N, sign, keep), m);
}

long count_gamma_sup(const Vec3i& a, int N, int sign, const GammaCondition& gc) {
  auto keep = [&](const Vec3i& n) {
    return gc.holds(n, {n[0] + a[0], n[1] + a[1], n[2] + a[2]});
  };
  return basic_histogram(a, N, sign, keep).sup(nullptr);
}

const std::vector<Vec3i>& bracket_shell(int N) {
  static std::mutex mu;
  static std::map<int, std::vector<Vec3i>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it == cache.end()) {
    std::vector<Vec3i> pts;
    int B = 2 * N;  // <n> < 2N implies |n| < 2N
    for (int x = -B; x <= B; ++x)
      for (int y = -B; y <= B; ++y)
        for (int z = -B; z <= B; ++z) {
          double b = bracket({x, y, z});
          if (b >= double(N) && b < 2.0 * double(N)) pts.push_back({x, y, z});
        }
    it = cache.emplace(N, std::move(pts)).first;
  }
  return it->second;
}

namespace {

bool in_bracket_shell(const Vec3i& n, int N) {
  double b = bracket(n);
  return b >= double(N) && b < 2.0 * double(N);
}

struct MqEnumerator {
  // iterate over tuples with the largest shell determined by the constraint
  std::vector<int> order;  // permutation: free slots first (ascending size)
  const std::vector<int>* Ns;
  const std::vector<int>* signs;

  long cost() const {
    long c = 1;
    for (size_t k = 0; k + 1 < order.size(); ++k)
      c *= long(bracket_shell((*Ns)[size_t(order[k])]).size());
    return c;
  }
};

MqEnumerator make_enumerator(const std::vector<int>& signs, const std::vector<int>& Ns) {
  MqEnumerator e;
  e.Ns = &Ns;
  e.signs = &signs;
  e.order.resize(Ns.size());
  std::iota(e.order.begin(), e.order.end(), 0);
  std::sort(e.order.begin(), e.order.end(), [&](int i, int j) { return Ns[size_t(i)] < Ns[size_t(j)]; });
  return e;
}

// visit all tuples; f(omega) called per solution with omega = sum s_j <n_j>
template <typename F>
void enumerate_Mq(const MqEnumerator& e, const Vec3i& n_ex, F&& f) {
  const auto& Ns = *e.Ns;
  const auto& signs = *e.signs;
  const size_t q = Ns.size();
  const int last = e.order.back();
  std::vector<Vec3i> cur(q);

  std::function<void(size_t, Vec3i, double)> rec = [&](size_t k, Vec3i acc, double omega) {
    if (k + 1 == q) {
      // remaining slot solves sum s_j n_j = n_ex
      int s = signs[size_t(last)];
      Vec3i n{s * (n_ex[0] - acc[0]), s * (n_ex[1] - acc[1]), s * (n_ex[2] - acc[2])};
      if (!in_bracket_shell(n, Ns[size_t(last)])) return;
      f(omega + signs[size_t(last)] * bracket(n));
      return;
    }
    int slot = e.order[k];
    for (const Vec3i& n : bracket_shell(Ns[size_t(slot)])) {
      Vec3i a{acc[0] + signs[size_t(slot)] * n[0], acc[1] + signs[size_t(slot)] * n[1],
              acc[2] + signs[size_t(slot)] * n[2]};
      rec(k + 1, a, omega + signs[size_t(slot)] * bracket(n));
    }
  };
  rec(0, {0, 0, 0}, 0.0);
}

}  // namespace

long count_Mq(int q, const std::vector<int>& signs, const std::vector<int>& Ns,
              const Vec3i& n_ex, double m) {
  if (q < 2 || q > 4 || int(signs.size()) != q || int(Ns.size()) != q)
    throw std::invalid_argument("bad M_q arguments");
  if (q == 4 && (n_ex[0] || n_ex[1] || n_ex[2]))
    throw std::invalid_argument("q = 4 requires n_ex = 0");
  MqEnumerator e = make_enumerator(signs, Ns);
  if (e.cost() > kEnumBudget) throw BudgetExceeded("M_q enumeration over budget");
  long count = 0;
  enumerate_Mq(e, n_ex, [&](double omega) {
    if (std::abs(omega - m) <= 1.0) ++count;
  });
  return count;
}

long count_Mq_sup(int q, const std::vector<int>& signs, const std::vector<int>& Ns,
                  const Vec3i& n_ex, long* argmax_m) {
  if (q < 2 || q > 4 || int(signs.size()) != q || int(Ns.size()) != q)
    throw std::invalid_argument("bad M_q arguments");
  if (q == 4 && (n_ex[0] || n_ex[1] || n_ex[2]))
    throw std::invalid_argument("q = 4 requires n_ex = 0");
  MqEnumerator e = make_enumerator(signs, Ns);
  if (e.cost() > kEnumBudget) throw BudgetExceeded("M_q enumeration over budget");
  OmegaHistogram h;
  double bound = 0.0;
  for (int Nj : Ns) bound += 2.0 * double(Nj) + 1.0;
  h.init(-bound - 2.0, bound + 2.0);
  enumerate_Mq(e, n_ex, [&](double omega) { h.add(omega); });
  return h.sup(argmax_m);
}

long count_Mqr(int q, int r, const std::vector<int>& signs, const std::vector<int>& signs_p,
               const std::vector<int>& signs_l, const std::vector<int>& Ns,
               const std::vector<int>& Ms, const std::vector<int>& Ls, const Vec3i& n_ex,
               const Vec3i& n_ex_p, double m, double m_p) {
  if (q < 1 || r < 1 || q + r > 4) throw std::invalid_argument("need q,r >= 1, q + r <= 4");
  if (int(signs.size()) != q || int(signs_p.size()) != q || int(signs_l.size()) != r ||
      int(Ns.size()) != q || int(Ms.size()) != q || int(Ls.size()) != r)
    throw std::invalid_argument("bad M_{q,r} arguments");

  // L-tuple loop; the two atoms decouple once the ell sum is fixed.
  long lcost = 1;
  for (int L : Ls) lcost *= long(bracket_shell(L).size());
  auto atom_cost = [&](const std::vector<int>& shells) {
    std::vector<int> sorted = shells;
    std::sort(sorted.begin(), sorted.end());
    long c = 1;
    for (size_t k = 0; k + 1 < sorted.size(); ++k) c *= long(bracket_shell(sorted[k]).size());
    return c;
  };
  if (lcost * (atom_cost(Ns) + atom_cost(Ms)) > kEnumBudget)
    throw BudgetExceeded("M_{q,r} enumeration over budget");

  // count solutions of one atom: sum s_j n_j = target, |sum s_j <n_j> + base - m| <= 1
  auto atom_count = [&](const std::vector<int>& s, const std::vector<int>& shells,
                        const Vec3i& target, double base, double mm) -> long {
    if (shells.size() == 1) {
      int sg = s[0];
      Vec3i n{sg * target[0], sg * target[1], sg * target[2]};
      if (!in_bracket_shell(n, shells[0])) return 0;
      return std::abs(base + s[0] * bracket(n) - mm) <= 1.0 ? 1 : 0;
    }
    MqEnumerator e = make_enumerator(s, shells);
    long cnt = 0;
    enumerate_Mq(e, target, [&](double omega) {
      if (std::abs(base + omega - mm) <= 1.0) ++cnt;
    });
    return cnt;
  };

  long total = 0;
  std::vector<Vec3i> ell(size_t(r));
  std::function<void(int, Vec3i, double)> rec = [&](int k, Vec3i acc, double lomega) {
    if (k == r) {
      Vec3i ta{n_ex[0] - acc[0], n_ex[1] - acc[1], n_ex[2] - acc[2]};
      Vec3i tb{n_ex_p[0] - acc[0], n_ex_p[1] - acc[1], n_ex_p[2] - acc[2]};
      long ca = atom_count(signs, Ns, ta, lomega, m);
      if (ca == 0) return;
      long cb = atom_count(signs_p, Ms, tb, lomega, m_p);
      total += ca * cb;
      return;
    }
    for (const Vec3i& l : bracket_shell(Ls[size_t(k)])) {
      Vec3i a{acc[0] + signs_l[size_t(k)] * l[0], acc[1] + signs_l[size_t(k)] * l[1],
              acc[2] + signs_l[size_t(k)] * l[2]};
      rec(k + 1, a, lomega + signs_l[size_t(k)] * bracket(l));
    }
  };
  rec(0, {0, 0, 0}, 0.0);
  return total;
}

namespace {

// visit support tuples of the base tensor: n1, n2 free over their shells
// (two smallest among 1..3), the third solves n0 = -n123, n0 enumerated as
// the free outer axis. Chooses the cheapest arrangement: enumerate the three
// smallest shells of {0,1,2,3} and solve for the largest.
template <typename F>
void base_tensor_visit(const BaseTensor& bt, F&& f) {
  std::array<int, 4> ord{0, 1, 2, 3};
  std::sort(ord.begin(), ord.end(),
            [&](int i, int j) { return bt.shells[size_t(i)] < bt.shells[size_t(j)]; });
  const int a = ord[0], b = ord[1], c = ord[2], d = ord[3];
  const auto& A = linf_shell(bt.shells[size_t(a)]);
  const auto& B = linf_shell(bt.shells[size_t(b)]);
  const auto& C = linf_shell(bt.shells[size_t(c)]);
  std::array<Vec3i, 4> n;
  for (const Vec3i& na : A) {
    n[size_t(a)] = na;
    for (const Vec3i& nb : B) {
      n[size_t(b)] = nb;
      for (const Vec3i& nc : C) {
        n[size_t(c)] = nc;
        // n0 + n1 + n2 + n3 = 0
        Vec3i nd{-(na[0] + nb[0] + nc[0]), -(na[1] + nb[1] + nc[1]), -(na[2] + nb[2] + nc[2])};
        if (!in_shell(nd, bt.shells[size_t(d)])) continue;
        n[size_t(d)] = nd;
        double omega = 0.0;
        for (int j = 0; j < 4; ++j) omega += bt.signs[size_t(j)] * bracket(n[size_t(j)]);
        if (std::abs(omega - bt.m) > 1.0) continue;
        f(n);
      }
    }
  }
}

long base_tensor_cost(const BaseTensor& bt) {
  std::array<long, 4> sz;
  for (int j = 0; j < 4; ++j) sz[size_t(j)] = long(linf_shell(bt.shells[size_t(j)]).size());
  std::sort(sz.begin(), sz.end());
  return sz[0] * sz[1] * sz[2];
}

}  // namespace

long base_tensor_hs_sq(const BaseTensor& bt) {
  if (base_tensor_cost(bt) > kEnumBudget) throw BudgetExceeded("base tensor over budget");
  long count = 0;
  base_tensor_visit(bt, [&](const std::array<Vec3i, 4>&) { ++count; });
  return count;
}

double base_tensor_op_norm(const BaseTensor& bt, const std::array<bool, 4>& in_mask,
                           double tol, int max_iter) {
  if (base_tensor_cost(bt) > kEnumBudget / 8) throw BudgetExceeded("operator norm over budget");
  // dense per-axis boxes for indexing
  std::array<int, 4> side{};
  std::array<size_t, 4> stride_in{}, stride_out{};
  size_t in_size = 1, out_size = 1;
  for (int j = 0; j < 4; ++j) side[size_t(j)] = 2 * bt.shells[size_t(j)] + 1;
  for (int j = 0; j < 4; ++j) {
    size_t cube = size_t(side[size_t(j)]) * side[size_t(j)] * side[size_t(j)];
    if (in_mask[size_t(j)]) {
      stride_in[size_t(j)] = in_size;
      in_size *= cube;
    } else {
      stride_out[size_t(j)] = out_size;
      out_size *= cube;
    }
  }
  if (in_size == 1 || out_size == 1) throw std::invalid_argument("partition must be proper");
  if (double(in_size) + double(out_size) > 2e8) throw BudgetExceeded("index space over budget");

  auto flat = [&](int axis, const Vec3i& n) -> size_t {
    int N = bt.shells[size_t(axis)], S = side[size_t(axis)];
    return (size_t(n[0] + N) * S + size_t(n[1] + N)) * S + size_t(n[2] + N);
  };
  auto in_index = [&](const std::array<Vec3i, 4>& n) {
    size_t idx = 0;
    for (int j = 0; j < 4; ++j)
      if (in_mask[size_t(j)]) idx += stride_in[size_t(j)] * flat(j, n[size_t(j)]);
    return idx;
  };
  auto out_index = [&](const std::array<Vec3i, 4>& n) {
    size_t idx = 0;
    for (int j = 0; j < 4; ++j)
      if (!in_mask[size_t(j)]) idx += stride_out[size_t(j)] * flat(j, n[size_t(j)]);
    return idx;
  };

  std::vector<double> x(in_size, 1.0), y(out_size);
  double prev = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    std::fill(y.begin(), y.end(), 0.0);
    base_tensor_visit(bt, [&](const std::array<Vec3i, 4>& n) { y[out_index(n)] += x[in_index(n)]; });
    double ny = std::sqrt(std::inner_product(y.begin(), y.end(), y.begin(), 0.0));
    if (ny == 0.0) return 0.0;
    std::fill(x.begin(), x.end(), 0.0);
    base_tensor_visit(bt, [&](const std::array<Vec3i, 4>& n) { x[in_index(n)] += y[out_index(n)]; });
    double nx = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    if (nx == 0.0) return 0.0;
    double sigma = nx / ny;  // ||A^T y|| / ||y|| -> largest singular value
    for (double& v : x) v /= nx;
    if (it > 2 && std::abs(sigma - prev) <= tol * std::max(1.0, sigma)) return sigma;
    prev = sigma;
  }
  return prev;
}

size_t LatticeTensor::total_size() const {
  size_t s = 1;
  for (const auto& ax : axis_points) s *= ax.size();
  return s;
}

double LatticeTensor::hs_norm() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return std::sqrt(s);
}

double LatticeTensor::op_norm(const std::vector<bool>& in_mask, double tol, int max_iter) const {
  if (in_mask.size() != rank()) throw std::invalid_argument("mask rank mismatch");
  size_t in_size = 1, out_size = 1;
  std::vector<size_t> stride(rank()), stride_in(rank()), stride_out(rank());
  size_t acc = 1;
  for (size_t j = rank(); j-- > 0;) {
    stride[j] = acc;
    acc *= axis_points[j].size();
  }
  for (size_t j = 0; j < rank(); ++j) {
    if (in_mask[j]) {
      stride_in[j] = in_size;
      in_size *= axis_points[j].size();
    } else {
      stride_out[j] = out_size;
      out_size *= axis_points[j].size();
    }
  }
  std::vector<double> x(in_size, 1.0), y(out_size);
  std::vector<size_t> digit(rank());
  auto loop = [&](auto&& touch) {
    size_t total = total_size();
    for (size_t flat = 0; flat < total; ++flat) {
      size_t rem = flat, iin = 0, iout = 0;
      for (size_t j = 0; j < rank(); ++j) {
        size_t d = rem / stride[j];
        rem %= stride[j];
        if (in_mask[j])
          iin += stride_in[j] * d;
        else
          iout += stride_out[j] * d;
      }
      touch(values[flat], iin, iout);
    }
  };
  double prev = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    std::fill(y.begin(), y.end(), 0.0);
    loop([&](double v, size_t i, size_t o) { y[o] += v * x[i]; });
    double ny = std::sqrt(std::inner_product(y.begin(), y.end(), y.begin(), 0.0));
    if (ny == 0.0) return 0.0;
    std::fill(x.begin(), x.end(), 0.0);
    loop([&](double v, size_t i, size_t o) { x[i] += v * y[o]; });
    double nx = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    if (nx == 0.0) return 0.0;
    double sigma = nx / ny;
    for (double& v : x) v /= nx;
    if (it > 2 && std::abs(sigma - prev) <= tol * std::max(1.0, sigma)) return sigma;
    prev = sigma;
  }
  return prev;
}

LatticeTensor dense_base_tensor(const BaseTensor& bt) {
  LatticeTensor t;
  t.axis_names = {"n0", "n1", "n2", "n3"};
  size_t total = 1;
  for (int j = 0; j < 4; ++j) {
    t.axis_points.push_back(linf_shell(bt.shells[size_t(j)]));
    total *= t.axis_points.back().size();
  }
  if (total > 50'000'000) throw BudgetExceeded("dense tensor too large");
  t.values.assign(total, 0.0);
  std::array<std::map<long, size_t>, 4> lookup;  // packed coords -> axis position
  auto pack = [](const Vec3i& n) {
    return (long(n[0] + 512) << 20) | (long(n[1] + 512) << 10) | long(n[2] + 512);
  };
  for (int j = 0; j < 4; ++j)
    for (size_t k = 0; k < t.axis_points[size_t(j)].size(); ++k)
      lookup[size_t(j)][pack(t.axis_points[size_t(j)][k])] = k;
  std::array<size_t, 4> stride;
  size_t acc = 1;
  for (size_t j = 4; j-- > 0;) {
    stride[j] = acc;
    acc *= t.axis_points[j].size();
  }
  base_tensor_visit(bt, [&](const std::array<Vec3i, 4>& n) {
    size_t idx = 0;
    for (size_t j = 0; j < 4; ++j) idx += stride[j] * lookup[j].at(pack(n[j]));
    t.values[idx] = 1.0;
  });
  return t;
}

}  // namespace phi4
