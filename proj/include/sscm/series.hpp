#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sscm/discrete_psd.hpp"
#include "sscm/errors.hpp"
#include "sscm/moments.hpp"

namespace sscm {

// Formal power series at z = 0 truncated at order K. Arithmetic is
// closed at order K: coefficient m of a product depends only on inputs'
// coefficients 0..m, so results agree with any larger truncation.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int order)
      : c_(static_cast<std::size_t>(order) + 1, 0.0) {}

  static TruncatedSeries constant(double c0, int order) {
    TruncatedSeries s(order);
    s.c_[0] = c0;
    return s;
  }

  static TruncatedSeries variable(int order) {
    TruncatedSeries s(order);
    if (order >= 1) s.c_[1] = 1.0;
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](int m) const { return c_[static_cast<std::size_t>(m)]; }
  double& operator[](int m) { return c_[static_cast<std::size_t>(m)]; }

  TruncatedSeries operator+(const TruncatedSeries& b) const {
    TruncatedSeries r = *this;
    for (std::size_t m = 0; m < c_.size(); ++m) r.c_[m] += b.c_[m];
    return r;
  }

  TruncatedSeries operator-(const TruncatedSeries& b) const {
    TruncatedSeries r = *this;
    for (std::size_t m = 0; m < c_.size(); ++m) r.c_[m] -= b.c_[m];
    return r;
  }

  TruncatedSeries operator*(const TruncatedSeries& b) const {
    TruncatedSeries r(order());
    for (std::size_t m = 0; m < c_.size(); ++m) {
      double s = 0;
      for (std::size_t i = 0; i <= m; ++i) s += c_[i] * b.c_[m - i];
      r.c_[m] = s;
    }
    return r;
  }

  // Long division; requires a nonzero constant term in the divisor.
  TruncatedSeries operator/(const TruncatedSeries& b) const {
    if (std::abs(b.c_[0]) <= 1e-14)
      throw SingularSeriesError(
          "TruncatedSeries: division by series with zero constant term");
    TruncatedSeries r(order());
    for (std::size_t m = 0; m < c_.size(); ++m) {
      double s = c_[m];
      for (std::size_t i = 0; i < m; ++i) s -= r.c_[i] * b.c_[m - i];
      r.c_[m] = s / b.c_[0];
    }
    return r;
  }

  TruncatedSeries operator*(double a) const {
    TruncatedSeries r = *this;
    for (double& x : r.c_) x *= a;
    return r;
  }

  friend TruncatedSeries operator*(double a, const TruncatedSeries& s) {
    return s * a;
  }

  TruncatedSeries pow(int n) const {
    TruncatedSeries r = TruncatedSeries::constant(1.0, order());
    for (int i = 0; i < n; ++i) r = r * (*this);
    return r;
  }

  // Multiply by z^k (shift coefficients up).
  TruncatedSeries shift(int k) const {
    TruncatedSeries r(order());
    for (int m = order(); m >= k; --m) r.c_[static_cast<std::size_t>(m)] =
        c_[static_cast<std::size_t>(m - k)];
    return r;
  }

 private:
  std::vector<double> c_;
};

// Series expansion of P_{s,t}(z) = int x^s (1+xz)^{-t} dH(x) for a
// discrete H: coefficient m is sum_i w_i a_i^{s+m} (-1)^m binom(t+m-1, m).
inline TruncatedSeries p_st_series(const DiscretePsd& psd, int s, int t,
                                   int order) {
  if (s < 0 || t < 1)
    throw ContractViolation("p_st_series: need s >= 0 and t >= 1");
  TruncatedSeries out(order);
  const auto& a = psd.atoms();
  const auto& w = psd.weights();
  std::vector<double> apow(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) apow[i] = std::pow(a[i], s);
  double binom = 1.0;  // binom(t+m-1, m), built multiplicatively
  double sign = 1.0;
  for (int m = 0; m <= order; ++m) {
    if (m > 0) {
      binom *= static_cast<double>(t + m - 1) / m;
      sign = -sign;
      for (std::size_t i = 0; i < a.size(); ++i) apow[i] *= a[i];
    }
    double power_sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) power_sum += w[i] * apow[i];
    out[m] = sign * binom * power_sum;
  }
  return out;
}

namespace detail {

// P(z) = c z P_{1,1}(z) - 1, the series whose powers carry all the
// derivative information used below.
inline TruncatedSeries p_series(const DiscretePsd& psd, double c, int order) {
  TruncatedSeries p11 = p_st_series(psd, 1, 1, order);
  return c * p11.shift(1) - TruncatedSeries::constant(1.0, order);
}

inline int default_truncation(int k) { return 2 * k + 4; }

}  // namespace detail

// Limiting mean v_j, j = 2..k, of p(beta_hat_j - beta_nj): the (j-2)-th
// Taylor coefficient of c P^j [ P_{2,3}/(1 - c z^2 P_{2,2})
// + 2 gamma_2 P_{1,1} P_{1,2} - 2 P_{2,1} P_{1,2} - 2 P_{1,1} P_{2,2} ].
inline std::vector<double> mean_correction(const DiscretePsd& psd, double c,
                                           int k) {
  if (k < 2) throw ContractViolation("mean_correction: k must be >= 2");
  const int K = detail::default_truncation(k);
  const double gamma2 = psd.moment(2);
  TruncatedSeries p11 = p_st_series(psd, 1, 1, K);
  TruncatedSeries p12 = p_st_series(psd, 1, 2, K);
  TruncatedSeries p21 = p_st_series(psd, 2, 1, K);
  TruncatedSeries p22 = p_st_series(psd, 2, 2, K);
  TruncatedSeries p23 = p_st_series(psd, 2, 3, K);
  TruncatedSeries one = TruncatedSeries::constant(1.0, K);
  TruncatedSeries bracket = p23 / (one - c * p22.shift(2)) +
                            2.0 * gamma2 * (p11 * p12) - 2.0 * (p21 * p12) -
                            2.0 * (p11 * p22);
  TruncatedSeries p = detail::p_series(psd, c, K);
  TruncatedSeries ppow = p * p;  // P^2
  std::vector<double> v(static_cast<std::size_t>(k - 1));
  for (int j = 2; j <= k; ++j) {
    if (j > 2) ppow = ppow * p;
    TruncatedSeries g = c * (ppow * bracket);
    v[static_cast<std::size_t>(j - 2)] = g[j - 2];
  }
  return v;
}

// Limiting covariance Psi = (psi_ij), i,j = 2..k, of the same vector:
// psi_ij = 2 sum_{l=0}^{i-1} (i-l) u_{i,l} u_{j,i+j-l}
//          + 2 c gamma_2 i j beta_i beta_j
//          + 2 j beta_j u_{i,i+1} + 2 i beta_i u_{j,j+1},
// where u_{s,t} is coefficient t of P^s and beta comes from the moment
// recursion at (H, c).
inline Eigen::MatrixXd covariance_matrix(const DiscretePsd& psd, double c,
                                         int k) {
  if (k < 2) throw ContractViolation("covariance_matrix: k must be >= 2");
  const int K = detail::default_truncation(k);
  const double gamma2 = psd.moment(2);
  TruncatedSeries p = detail::p_series(psd, c, K);
  // u[s][t] for s = 0..k (s < 2 unused), t = 0..K.
  std::vector<TruncatedSeries> ppow;
  ppow.reserve(static_cast<std::size_t>(k) + 1);
  ppow.push_back(TruncatedSeries::constant(1.0, K));
  for (int s = 1; s <= k; ++s) ppow.push_back(ppow.back() * p);
  auto u = [&](int s, int t) -> double {
    return ppow[static_cast<std::size_t>(s)][t];
  };
  MomentVector gamma = MomentVector::gamma(psd.moments(k));
  MomentVector beta = gamma_to_beta(gamma, c, k);
  Eigen::MatrixXd psi(k - 1, k - 1);
  for (int i = 2; i <= k; ++i) {
    for (int j = 2; j <= k; ++j) {
      double s1 = 0;
      for (int l = 0; l <= i - 1; ++l)
        s1 += (i - l) * u(i, l) * u(j, i + j - l);
      double val = 2 * s1 +
                   2 * c * gamma2 * i * j * beta.at_order(i) * beta.at_order(j) +
                   2 * j * beta.at_order(j) * u(i, i + 1) +
                   2 * i * beta.at_order(i) * u(j, j + 1);
      psi(i - 2, j - 2) = val;
    }
  }
  return psi;
}

// Mean vector and covariance matrix of the limiting Gaussian for the
// first k ESD moments, evaluated at one (H, c).
struct CltCorrection {
  std::vector<double> mean;   // v_2..v_k
  Eigen::MatrixXd covariance; // (k-1) x (k-1)
  int order = 0;
  double ratio_c = 0;
  DiscretePsd psd = DiscretePsd::point_mass();
};

inline CltCorrection clt_correction(const DiscretePsd& psd, double c, int k) {
  CltCorrection out;
  out.mean = mean_correction(psd, c, k);
  out.covariance = covariance_matrix(psd, c, k);
  out.order = k;
  out.ratio_c = c;
  out.psd = psd;
  return out;
}

}  // namespace sscm
