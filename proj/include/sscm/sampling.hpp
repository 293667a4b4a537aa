#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sscm/discrete_psd.hpp"
#include "sscm/errors.hpp"
#include "sscm/rng.hpp"

namespace sscm {

// Spectrum of the shape matrix T = AA', normalized so tr(T) = p. The
// shape matrix is kept diagonal: eigenvalues of the sign covariance
// matrix are invariant under orthogonal conjugation of T, so a diagonal
// representative loses nothing.
class ShapeSpectrum {
 public:
  explicit ShapeSpectrum(std::vector<double> eigenvalues)
      : eigenvalues_(std::move(eigenvalues)) {
    if (eigenvalues_.empty())
      throw InvalidDimensionError("ShapeSpectrum: empty spectrum");
    double mean = 0;
    for (double e : eigenvalues_) {
      if (!(e > 0))
        throw Error("ShapeSpectrum: eigenvalues must be strictly positive");
      mean += e;
    }
    mean /= static_cast<double>(eigenvalues_.size());
    rescaled_ = std::abs(mean - 1.0) > 1e-6;
    if (std::abs(mean - 1.0) > 1e-15) {
      for (double& e : eigenvalues_) e /= mean;
    }
  }

  // Spectrum with round(w_i * p) eigenvalues at each atom; the largest
  // weight absorbs any rounding deficit so the total count is exactly p.
  static ShapeSpectrum from_psd(const DiscretePsd& psd, int p) {
    if (p < psd.order())
      throw InvalidDimensionError("ShapeSpectrum::from_psd: p < order");
    const auto& a = psd.atoms();
    const auto& w = psd.weights();
    std::vector<int> mult(a.size());
    int total = 0;
    std::size_t imax = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      mult[i] = static_cast<int>(std::llround(w[i] * p));
      total += mult[i];
      if (w[i] > w[imax]) imax = i;
    }
    mult[imax] += p - total;
    if (mult[imax] <= 0)
      throw InvalidDimensionError("ShapeSpectrum::from_psd: p too small");
    std::vector<double> eig;
    eig.reserve(static_cast<std::size_t>(p));
    for (std::size_t i = 0; i < a.size(); ++i)
      eig.insert(eig.end(), static_cast<std::size_t>(mult[i]), a[i]);
    return ShapeSpectrum(std::move(eig));
  }

  int dimension() const { return static_cast<int>(eigenvalues_.size()); }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  // True when the input spectrum deviated from mean 1 by more than 1e-6
  // and was rescaled; callers may want to log this.
  bool was_rescaled() const { return rescaled_; }

 private:
  std::vector<double> eigenvalues_;
  bool rescaled_ = false;
};

// Law of the radius w in x = w * A * u. The sign covariance matrix is
// invariant to this choice; several laws exist to demonstrate that.
class RadiusLaw {
 public:
  enum class Kind { constant, chi, lognormal, pareto };

  static RadiusLaw constant() { return RadiusLaw(Kind::constant, 0, 0); }
  // w ~ chi(p): matches x = A z with z ~ N(0, I_p).
  static RadiusLaw chi() { return RadiusLaw(Kind::chi, 0, 0); }
  static RadiusLaw lognormal(double mu, double sigma) {
    if (!(sigma > 0)) throw Error("RadiusLaw: lognormal needs sigma > 0");
    return RadiusLaw(Kind::lognormal, mu, sigma);
  }
  static RadiusLaw pareto(double alpha) {
    if (!(alpha > 1)) throw Error("RadiusLaw: pareto needs alpha > 1");
    return RadiusLaw(Kind::pareto, alpha, 0);
  }

  double draw(RngStream& rng, int p) const {
    switch (kind_) {
      case Kind::constant:
        return 1.0;
      case Kind::chi: {
        std::normal_distribution<double> gauss;
        double s = 0;
        for (int i = 0; i < p; ++i) {
          double g = gauss(rng);
          s += g * g;
        }
        return std::sqrt(s);
      }
      case Kind::lognormal:
        return std::exp(a_ + b_ * std::normal_distribution<double>()(rng));
      case Kind::pareto:
        return std::pow(rng.uniform01(), -1.0 / a_);
    }
    return 1.0;
  }

  Kind kind() const { return kind_; }
  std::string name() const {
    switch (kind_) {
      case Kind::constant: return "constant";
      case Kind::chi: return "chi";
      case Kind::lognormal: return "lognormal";
      case Kind::pareto: return "pareto";
    }
    return "?";
  }

 private:
  RadiusLaw(Kind k, double a, double b) : kind_(k), a_(a), b_(b) {}
  Kind kind_;
  double a_, b_;
};

enum class SampleFlavor { raw, spatial_sign };

// n-by-p data matrix, rows = observations.
struct SampleMatrix {
  Eigen::MatrixXd data;
  SampleFlavor flavor = SampleFlavor::raw;

  int n() const { return static_cast<int>(data.rows()); }
  int p() const { return static_cast<int>(data.cols()); }
};

// Sign covariance matrix B = (1/n) Y'Y, symmetric p-by-p, tr(B) = p.
struct Sscm {
  Eigen::MatrixXd matrix;
  int n = 0;

  int p() const { return static_cast<int>(matrix.rows()); }
};

// Uniform draw from the unit sphere in R^p. A zero normal vector (only
// possible in floating point) is resampled.
inline Eigen::VectorXd sample_sphere(int p, RngStream& rng) {
  if (p < 1) throw InvalidDimensionError("sample_sphere: p must be >= 1");
  std::normal_distribution<double> gauss;
  Eigen::VectorXd z(p);
  double norm = 0;
  do {
    for (int i = 0; i < p; ++i) z[i] = gauss(rng);
    norm = z.norm();
  } while (norm == 0.0);
  return z / norm;
}

// n i.i.d. rows x_j = w_j * A * u_j with A = diag(sqrt(eigenvalues)).
// Directions and radii are drawn from separate substreams so the
// direction sequence does not depend on the radius law.
inline SampleMatrix sample_elliptical(int n, const ShapeSpectrum& shape,
                                      const RadiusLaw& radius,
                                      RngStream& rng) {
  if (n < 1) throw InvalidDimensionError("sample_elliptical: n must be >= 1");
  const int p = shape.dimension();
  RngStream dir_rng = rng.fork(0x6449);
  RngStream rad_rng = rng.fork(0x5241);
  Eigen::VectorXd sqrt_eig(p);
  for (int i = 0; i < p; ++i) sqrt_eig[i] = std::sqrt(shape.eigenvalues()[i]);
  SampleMatrix out;
  out.flavor = SampleFlavor::raw;
  out.data.resize(n, p);
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd u = sample_sphere(p, dir_rng);
    double w = radius.draw(rad_rng, p);
    out.data.row(j) = (w * sqrt_eig.array() * u.array()).transpose();
  }
  return out;
}

// Row-wise spatial-sign transform y_j = sqrt(p) * x_j / ||x_j||.
inline SampleMatrix spatial_sign(const SampleMatrix& x) {
  const int n = x.n(), p = x.p();
  const double sqrt_p = std::sqrt(static_cast<double>(p));
  SampleMatrix out;
  out.flavor = SampleFlavor::spatial_sign;
  out.data.resize(n, p);
  for (int j = 0; j < n; ++j) {
    double norm = x.data.row(j).norm();
    if (norm == 0.0)
      throw DegenerateObservationError(
          "spatial_sign: zero observation at row " + std::to_string(j), j);
    out.data.row(j) = x.data.row(j) * (sqrt_p / norm);
  }
  return out;
}

// B = (1/n) * Y'Y from spatial-sign samples.
inline Sscm sscm(const SampleMatrix& y) {
  if (y.flavor != SampleFlavor::spatial_sign)
    throw ContractViolation("sscm: input must have spatial_sign flavor");
  const int p = y.p();
  Sscm b;
  b.n = y.n();
  b.matrix = Eigen::MatrixXd::Zero(p, p);
  b.matrix.selfadjointView<Eigen::Lower>().rankUpdate(
      y.data.transpose(), 1.0 / static_cast<double>(b.n));
  b.matrix.triangularView<Eigen::StrictlyUpper>() =
      b.matrix.transpose().triangularView<Eigen::StrictlyUpper>();
  return b;
}

}  // namespace sscm
