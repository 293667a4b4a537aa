#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "sscm/errors.hpp"
#include "sscm/sampling.hpp"

namespace sscm {

enum class MomentFlavor { beta, gamma };

// Ordered moments beta_1..beta_k of the eigenvalue distribution of B_n
// (beta flavor, with the dimension ratio they were computed under) or
// gamma_1..gamma_k of the population spectral distribution H (gamma
// flavor). The first moment is identically 1 for both.
struct MomentVector {
  MomentFlavor flavor = MomentFlavor::gamma;
  std::vector<double> values;  // values[j-1] holds the order-j moment
  double ratio_c = 0.0;        // beta flavor only

  static MomentVector gamma(std::vector<double> vals) {
    MomentVector m;
    m.flavor = MomentFlavor::gamma;
    m.values = std::move(vals);
    m.snap_first();
    return m;
  }

  static MomentVector beta(std::vector<double> vals, double c) {
    MomentVector m;
    m.flavor = MomentFlavor::beta;
    m.values = std::move(vals);
    m.ratio_c = c;
    m.snap_first();
    return m;
  }

  int max_order() const { return static_cast<int>(values.size()); }
  double at_order(int j) const {
    return values.at(static_cast<std::size_t>(j - 1));
  }

 private:
  void snap_first() {
    if (values.empty()) throw ContractViolation("MomentVector: empty");
    if (std::abs(values[0] - 1.0) > 1e-9)
      throw ContractViolation("MomentVector: first moment must equal 1, got " +
                              std::to_string(values[0]));
    values[0] = 1.0;
  }
};

// One solution (i_1,...,i_j) of j = i_1 + 2 i_2 + ... + j i_j together
// with its combinatorial weight phi = j!/[i_1!...i_j!(j+1-i_1-...-i_j)!].
struct PartitionTerm {
  std::vector<int> multiplicities;
  double weight;        // phi; an exact integer, computed in uint64 arithmetic
  int total = 0;        // i_1 + ... + i_j, so the c-exponent is total - 1
};

namespace detail {

inline std::uint64_t factorial_u64(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;  // n <= 20 fits
}

inline std::vector<PartitionTerm> compute_partitions(int j) {
  std::vector<PartitionTerm> out;
  std::vector<int> mult(static_cast<std::size_t>(j), 0);
  // Descending lexicographic enumeration: i_1 runs from j down to 0, then
  // i_2, and so on.
  auto rec = [&](auto&& self, int level, int rem) -> void {
    if (level > j) {
      if (rem != 0) return;
      PartitionTerm term;
      term.multiplicities = mult;
      int r = 0;
      std::uint64_t den = 1;
      for (int i : mult) {
        r += i;
        den *= factorial_u64(i);
      }
      den *= factorial_u64(j + 1 - r);
      term.weight = static_cast<double>(factorial_u64(j) / den);
      term.total = r;
      out.push_back(std::move(term));
      return;
    }
    for (int i = rem / level; i >= 0; --i) {
      mult[static_cast<std::size_t>(level - 1)] = i;
      self(self, level + 1, rem - level * i);
    }
    mult[static_cast<std::size_t>(level - 1)] = 0;
  };
  rec(rec, 1, j);
  return out;
}

}  // namespace detail

// All partitions of j with their weights, memoized. Supported orders are
// 2..20; weights stay exactly representable and partition counts small.
inline const std::vector<PartitionTerm>& enumerate_partitions(int j) {
  if (j < 2 || j > 20)
    throw UnsupportedOrderError("enumerate_partitions: order " +
                                std::to_string(j) + " outside 2..20");
  static std::array<std::once_flag, 21> flags;
  static std::array<std::vector<PartitionTerm>, 21> cache;
  auto idx = static_cast<std::size_t>(j);
  std::call_once(flags[idx],
                 [&] { cache[idx] = detail::compute_partitions(j); });
  return cache[idx];
}

// ESD moments to PSD moments and back. beta_j is a polynomial in
// (c, gamma_2..gamma_j); the partition with i_j = 1 contributes gamma_j
// with coefficient one, so the map is unit triangular and inverts by
// forward substitution.

inline MomentVector gamma_to_beta(const MomentVector& g, double c, int k) {
  if (g.flavor != MomentFlavor::gamma)
    throw ContractViolation("gamma_to_beta: expected gamma flavor");
  if (g.max_order() < k)
    throw ContractViolation("gamma_to_beta: need gamma moments through k");
  std::vector<double> beta(static_cast<std::size_t>(k));
  beta[0] = 1.0;
  for (int j = 2; j <= k; ++j) {
    double sum = 0;
    for (const auto& term : enumerate_partitions(j)) {
      double prod = term.weight * std::pow(c, term.total - 1);
      for (int l = 2; l <= j; ++l) {
        int il = term.multiplicities[static_cast<std::size_t>(l - 1)];
        for (int rep = 0; rep < il; ++rep) prod *= g.at_order(l);
      }
      sum += prod;
    }
    beta[static_cast<std::size_t>(j - 1)] = sum;
  }
  return MomentVector::beta(std::move(beta), c);
}

inline MomentVector beta_to_gamma(const MomentVector& b, double c) {
  if (b.flavor != MomentFlavor::beta)
    throw ContractViolation("beta_to_gamma: expected beta flavor");
  const int k = b.max_order();
  std::vector<double> gamma(static_cast<std::size_t>(k));
  gamma[0] = 1.0;
  for (int j = 2; j <= k; ++j) {
    double rest = 0;
    for (const auto& term : enumerate_partitions(j)) {
      if (term.multiplicities[static_cast<std::size_t>(j - 1)] == 1) continue;
      double prod = term.weight * std::pow(c, term.total - 1);
      for (int l = 2; l < j; ++l) {
        int il = term.multiplicities[static_cast<std::size_t>(l - 1)];
        for (int rep = 0; rep < il; ++rep)
          prod *= gamma[static_cast<std::size_t>(l - 1)];
      }
      rest += prod;
    }
    gamma[static_cast<std::size_t>(j - 1)] = b.at_order(j) - rest;
  }
  return MomentVector::gamma(std::move(gamma));
}

// Jacobian of the map beta -> gamma (orders 2..k), the inverse of the
// analytic d beta / d gamma, which is unit lower triangular.
inline Eigen::MatrixXd jacobian_g2(const MomentVector& b, double c) {
  const int k = b.max_order();
  if (k < 2) throw ContractViolation("jacobian_g2: need order >= 2");
  MomentVector g = beta_to_gamma(b, c);
  const int m = k - 1;
  Eigen::MatrixXd fwd = Eigen::MatrixXd::Zero(m, m);  // d beta_j / d gamma_l
  for (int j = 2; j <= k; ++j) {
    for (const auto& term : enumerate_partitions(j)) {
      double base = term.weight * std::pow(c, term.total - 1);
      for (int l = 2; l <= j; ++l) {
        int il = term.multiplicities[static_cast<std::size_t>(l - 1)];
        if (il == 0) continue;
        double deriv = base * il * std::pow(g.at_order(l), il - 1);
        for (int l2 = 2; l2 <= j; ++l2) {
          if (l2 == l) continue;
          int il2 = term.multiplicities[static_cast<std::size_t>(l2 - 1)];
          for (int rep = 0; rep < il2; ++rep) deriv *= g.at_order(l2);
        }
        fwd(j - 2, l - 2) += deriv;
      }
    }
  }
  return fwd.triangularView<Eigen::UnitLower>().solve(
      Eigen::MatrixXd::Identity(m, m));
}

// Empirical ESD moments tr(B^j)/p for j = 1..k from one symmetric
// eigendecomposition of B.
inline MomentVector esd_moments(const Sscm& b, int k) {
  if (k < 1) throw ContractViolation("esd_moments: k must be >= 1");
  const int p = b.p();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.compute(b.matrix, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalError(
        "esd_moments: eigendecomposition failed (p=" + std::to_string(p) +
        ", trace=" + std::to_string(b.matrix.trace()) +
        ", max|B|=" + std::to_string(b.matrix.cwiseAbs().maxCoeff()) + ")");
  const Eigen::VectorXd& lam = es.eigenvalues();
  std::vector<double> vals(static_cast<std::size_t>(k));
  Eigen::VectorXd pw = Eigen::VectorXd::Ones(p);
  for (int j = 1; j <= k; ++j) {
    pw.array() *= lam.array();
    vals[static_cast<std::size_t>(j - 1)] = pw.sum() / p;
  }
  if (std::abs(vals[0] - 1.0) > 1e-9)
    throw NumericalError("esd_moments: tr(B)/p deviates from 1 by " +
                         std::to_string(vals[0] - 1.0));
  return MomentVector::beta(std::move(vals),
                            static_cast<double>(p) / b.n);
}

}  // namespace sscm
