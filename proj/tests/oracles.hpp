// Independent reference implementations used only by tests: brute-force
// moment recursions, numerical differentiation of the closed-form
// integrands, and small statistical helpers. Nothing here shares code
// with the library paths it checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "sscm/discrete_psd.hpp"
#include "sscm/rng.hpp"

namespace oracles {

// ---------------------------------------------------------------------
// Brute-force partition machinery (odometer enumeration, no recursion).

inline std::uint64_t fact(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

struct BruteTerm {
  std::vector<int> idx;  // i_1..i_j
  double phi;
  int total;
};

inline std::vector<BruteTerm> brute_partitions(int j) {
  std::vector<BruteTerm> out;
  std::vector<int> idx(static_cast<std::size_t>(j), 0);
  while (true) {
    int weighted = 0, total = 0;
    for (int l = 1; l <= j; ++l) {
      weighted += l * idx[static_cast<std::size_t>(l - 1)];
      total += idx[static_cast<std::size_t>(l - 1)];
    }
    if (weighted == j) {
      std::uint64_t den = fact(j + 1 - total);
      for (int i : idx) den *= fact(i);
      out.push_back({idx, static_cast<double>(fact(j) / den), total});
    }
    // odometer step
    int l = 0;
    while (l < j) {
      ++idx[static_cast<std::size_t>(l)];
      if ((l + 1) * idx[static_cast<std::size_t>(l)] <= j) break;
      idx[static_cast<std::size_t>(l)] = 0;
      ++l;
    }
    if (l == j) break;
  }
  return out;
}

// gamma -> beta by direct summation over brute-force partitions.
// gamma[l-1] holds the order-l moment, gamma[0] = 1.
inline std::vector<double> brute_gamma_to_beta(const std::vector<double>& gamma,
                                               double c, int k) {
  std::vector<double> beta(static_cast<std::size_t>(k), 1.0);
  for (int j = 2; j <= k; ++j) {
    double sum = 0;
    for (const auto& t : brute_partitions(j)) {
      double prod = t.phi * std::pow(c, t.total - 1);
      for (int l = 2; l <= j; ++l)
        for (int rep = 0; rep < t.idx[static_cast<std::size_t>(l - 1)]; ++rep)
          prod *= gamma[static_cast<std::size_t>(l - 1)];
      sum += prod;
    }
    beta[static_cast<std::size_t>(j - 1)] = sum;
  }
  return beta;
}

// ---------------------------------------------------------------------
// Pointwise closed-form evaluation of the CLT integrand pieces.

template <typename Z>
Z p_st(const sscm::DiscretePsd& h, int s, int t, Z z) {
  Z sum{};
  for (std::size_t i = 0; i < h.atoms().size(); ++i) {
    double a = h.atoms()[i];
    Z base = Z(1) + a * z;
    Z denom = Z(1);
    for (int q = 0; q < t; ++q) denom *= base;
    sum += h.weights()[i] * std::pow(a, s) / denom;
  }
  return sum;
}

template <typename Z>
Z p_fun(const sscm::DiscretePsd& h, double c, Z z) {
  return c * z * p_st(h, 1, 1, z) - Z(1);
}

template <typename Z>
Z mean_bracket(const sscm::DiscretePsd& h, double c, Z z) {
  double g2 = h.moment(2);
  return p_st(h, 2, 3, z) / (Z(1) - c * z * z * p_st(h, 2, 2, z)) +
         2.0 * g2 * p_st(h, 1, 1, z) * p_st(h, 1, 2, z) -
         2.0 * p_st(h, 2, 1, z) * p_st(h, 1, 2, z) -
         2.0 * p_st(h, 1, 1, z) * p_st(h, 2, 2, z);
}

// ---------------------------------------------------------------------
// Numerical differentiation.

// Richardson-extrapolated central differences for derivative orders 0-2.
inline double richardson_derivative(const std::function<double(double)>& f,
                                    int order, double h0 = 0.05,
                                    int levels = 6) {
  if (order == 0) return f(0.0);
  std::vector<double> d(static_cast<std::size_t>(levels));
  double h = h0;
  for (int i = 0; i < levels; ++i) {
    if (order == 1)
      d[static_cast<std::size_t>(i)] = (f(h) - f(-h)) / (2 * h);
    else
      d[static_cast<std::size_t>(i)] = (f(h) - 2 * f(0.0) + f(-h)) / (h * h);
    h /= 2;
  }
  // Neville table in powers of h^2.
  for (int m = 1; m < levels; ++m) {
    double fac = std::pow(4.0, m);
    for (int i = levels - 1; i >= m; --i)
      d[static_cast<std::size_t>(i)] =
          (fac * d[static_cast<std::size_t>(i)] -
           d[static_cast<std::size_t>(i - 1)]) /
          (fac - 1);
  }
  return d[static_cast<std::size_t>(levels - 1)];
}

// Taylor coefficient t of an analytic f via trapezoid quadrature of the
// Cauchy integral on |z| = r (Lyness-Moler numerical differentiation);
// spectrally accurate for r inside the convergence disc.
inline double cauchy_coefficient(
    const std::function<std::complex<double>(std::complex<double>)>& f, int t,
    double r, int npoints = 512) {
  std::complex<double> sum{};
  for (int m = 0; m < npoints; ++m) {
    double theta = 2 * M_PI * m / npoints;
    std::complex<double> z = std::polar(r, theta);
    sum += f(z) * std::polar(1.0, -t * theta);
  }
  return (sum / static_cast<double>(npoints)).real() / std::pow(r, t);
}

// Reference v_j (j = 2..k) by differentiating G(z) = c P(z)^j B(z).
inline std::vector<double> oracle_mean(const sscm::DiscretePsd& h, double c,
                                       int k) {
  std::vector<double> v(static_cast<std::size_t>(k - 1));
  for (int j = 2; j <= k; ++j) {
    auto g = [&](double z) {
      double pj = 1;
      for (int q = 0; q < j; ++q) pj *= p_fun(h, c, z);
      return c * pj * mean_bracket(h, c, z);
    };
    v[static_cast<std::size_t>(j - 2)] = richardson_derivative(g, j - 2);
  }
  return v;
}

// Reference psi_ij assembled from Cauchy-quadrature u_{s,t} and
// brute-force beta moments.
inline std::vector<std::vector<double>> oracle_covariance(
    const sscm::DiscretePsd& h, double c, int k) {
  double amax = h.atoms().back();
  double r = 0.4 / amax;  // safely inside the disc of analyticity
  auto u = [&](int s, int t) {
    return cauchy_coefficient(
        [&](std::complex<double> z) {
          std::complex<double> ps{1.0};
          for (int q = 0; q < s; ++q) ps *= p_fun(h, c, z);
          return ps;
        },
        t, r);
  };
  std::vector<double> gam(static_cast<std::size_t>(k));
  for (int j = 1; j <= k; ++j)
    gam[static_cast<std::size_t>(j - 1)] = h.moment(j);
  std::vector<double> beta = brute_gamma_to_beta(gam, c, k);
  double g2 = h.moment(2);
  auto b = [&](int j) { return beta[static_cast<std::size_t>(j - 1)]; };
  std::vector<std::vector<double>> psi(
      static_cast<std::size_t>(k - 1),
      std::vector<double>(static_cast<std::size_t>(k - 1)));
  for (int i = 2; i <= k; ++i)
    for (int j = 2; j <= k; ++j) {
      double s1 = 0;
      for (int l = 0; l <= i - 1; ++l) s1 += (i - l) * u(i, l) * u(j, i + j - l);
      psi[static_cast<std::size_t>(i - 2)][static_cast<std::size_t>(j - 2)] =
          2 * s1 + 2 * c * g2 * i * j * b(i) * b(j) +
          2 * j * b(j) * u(i, i + 1) + 2 * i * b(i) * u(j, j + 1);
    }
  return psi;
}

// ---------------------------------------------------------------------
// Random parameter draws and test statistics.

// Random psd in the constrained family: atoms separated by at least
// min_gap after the unit-mean rescaling, weights at least min_weight.
inline sscm::DiscretePsd random_psd(sscm::RngStream& rng, int d,
                                    double min_gap = 0.2,
                                    double min_weight = 0.1) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<double> a(static_cast<std::size_t>(d));
    std::vector<double> w(static_cast<std::size_t>(d));
    for (auto& x : a) x = 0.2 + 2.0 * rng.uniform01();
    std::sort(a.begin(), a.end());
    double sw = 0;
    for (auto& x : w) {
      x = 0.15 + 0.85 * rng.uniform01();
      sw += x;
    }
    double saw = 0;
    for (int i = 0; i < d; ++i) {
      w[static_cast<std::size_t>(i)] /= sw;
      saw += a[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
    }
    bool ok = true;
    for (int i = 0; i < d; ++i) {
      a[static_cast<std::size_t>(i)] /= saw;
      if (w[static_cast<std::size_t>(i)] < min_weight) ok = false;
      if (i > 0 && a[static_cast<std::size_t>(i)] -
                           a[static_cast<std::size_t>(i - 1)] <
                       min_gap)
        ok = false;
      if (a[static_cast<std::size_t>(i)] <= 0.05) ok = false;
    }
    if (ok) return sscm::DiscretePsd(std::move(a), std::move(w));
  }
  throw std::runtime_error("random_psd: could not draw a valid psd");
}

// One-sample Kolmogorov-Smirnov statistic against a cdf.
inline double ks_statistic(std::vector<double> sample,
                           const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const auto n = static_cast<double>(sample.size());
  double d = 0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double f = cdf(sample[i]);
    d = std::max(d, std::abs((static_cast<double>(i) + 1) / n - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return d;
}

// Asymptotic KS p-value with Marsaglia's small-sample adjustment.
inline double ks_pvalue(double d, std::size_t n) {
  double sn = std::sqrt(static_cast<double>(n));
  double lambda = (sn + 0.12 + 0.11 / sn) * d;
  double p = 0;
  for (int k = 1; k <= 100; ++k)
    p += 2 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace oracles
