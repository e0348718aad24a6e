#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "phi4lab/lattice.hpp"

namespace phi4 {

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration ceiling for all exhaustive counts.
constexpr long kEnumBudget = 1'000'000'000L;

// Threshold separation: |n1| <= G <= |n2| or |n2| <= G <= |n1| (l-inf).
struct GammaCondition {
  double threshold;
  bool holds(const Vec3i& n1, const Vec3i& n2) const {
    double a = linf(n1), b = linf(n2);
    return (a <= threshold && threshold <= b) || (b <= threshold && threshold <= a);
  }
};

// #{n : |n|_inf ~ N (dyadic shell), |<a+n> + sign <n> - m| <= 1}.
long count_basic(const Vec3i& a, int N, int sign, double m);
// sup over integer m of the same count, one enumeration pass.
long count_basic_sup(const Vec3i& a, int N, int sign, long* argmax_m = nullptr);

// Box-restricted variant: additionally |n - zeta|_inf <= A_box.
long count_box(const Vec3i& a, int N, const Vec3i& zeta, int A_box, int sign, double m);
long count_box_sup(const Vec3i& a, int N, const Vec3i& zeta, int A_box, int sign);

// Gamma-condition variant on the pair (n, n+a).
long count_gamma(const Vec3i& a, int N, int sign, double m, const GammaCondition& gc);
long count_gamma_sup(const Vec3i& a, int N, int sign, const GammaCondition& gc);

// Bracket shells <n> ~ N: <n> in [N, 2N). Lists are cached.
const std::vector<Vec3i>& bracket_shell(int N);

// M_q of the single-atom counting lemma: tuples (n_1..n_q) with
// <n_j> ~ N_j, sum_j s_j n_j = n_ex, |sum_j s_j <n_j> - m| <= 1.
// q = 4 requires n_ex = 0 (enforced precondition).
long count_Mq(int q, const std::vector<int>& signs, const std::vector<int>& Ns,
              const Vec3i& n_ex, double m);
long count_Mq_sup(int q, const std::vector<int>& signs, const std::vector<int>& Ns,
                  const Vec3i& n_ex, long* argmax_m = nullptr);

// M_{q,r} of the two-atom lemma (q + r <= 4).
long count_Mqr(int q, int r, const std::vector<int>& signs, const std::vector<int>& signs_p,
               const std::vector<int>& signs_l, const std::vector<int>& Ns,
               const std::vector<int>& Ms, const std::vector<int>& Ls, const Vec3i& n_ex,
               const Vec3i& n_ex_p, double m, double m_p);

// Base tensor h^b on dyadic |n|_inf-shells N0..N3 with the constraints
// n_0 + n_123 = 0 and |Omega - m| <= 1, Omega = sum_j s_j <n_j>.
struct BaseTensor {
  std::array<int, 4> shells;
  std::array<int, 4> signs;  // each +-1
  double m;
};

// HS norm squared = number of support tuples (entries are 0/1).
long base_tensor_hs_sq(const BaseTensor& bt);

// Operator norm for the partition given by axis masks: axes with
// in_mask[j] true feed the input side. Power iteration on the implicit 0/1
// matrix; tol is the relative change stopping rule.
double base_tensor_op_norm(const BaseTensor& bt, const std::array<bool, 4>& in_mask,
                           double tol = 1e-8, int max_iter = 400);

// Dense small tensor with named axes (diagnostics and small cases).
struct LatticeTensor {
  std::vector<std::string> axis_names;
  std::vector<std::vector<Vec3i>> axis_points;
  std::vector<double> values;  // row-major over axes

  size_t rank() const { return axis_points.size(); }
  size_t total_size() const;
  double hs_norm() const;
  double op_norm(const std::vector<bool>& in_mask, double tol = 1e-8, int max_iter = 400) const;
};

LatticeTensor dense_base_tensor(const BaseTensor& bt);  // small shells only

}  // namespace phi4
