#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "sscm/errors.hpp"

namespace sscm {

// Discrete population spectral distribution H = sum_i w_i * delta_{a_i}
// with strictly increasing positive atoms, positive weights summing to 1,
// and unit mean (sum_i a_i w_i = 1, matching tr(Sigma)/p = 1).
class DiscretePsd {
 public:
  DiscretePsd(std::vector<double> atoms, std::vector<double> weights)
      : atoms_(std::move(atoms)), weights_(std::move(weights)) {
    validate();
  }

  DiscretePsd(std::initializer_list<double> atoms,
              std::initializer_list<double> weights)
      : atoms_(atoms), weights_(weights) {
    validate();
  }

  static DiscretePsd point_mass() { return DiscretePsd({1.0}, {1.0}); }

  int order() const { return static_cast<int>(atoms_.size()); }
  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }

  // j-th moment of H; moment(0) = 1, moment(1) = 1 up to rounding.
  double moment(int j) const {
    double s = 0;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      s += weights_[i] * std::pow(atoms_[i], j);
    return s;
  }

  // Moments of orders 1..k as a plain vector.
  std::vector<double> moments(int k) const {
    std::vector<double> out(static_cast<std::size_t>(k));
    std::vector<double> pw(atoms_.size(), 1.0);
    for (int j = 1; j <= k; ++j) {
      double s = 0;
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        pw[i] *= atoms_[i];
        s += weights_[i] * pw[i];
      }
      out[static_cast<std::size_t>(j - 1)] = s;
    }
    return out;
  }

  bool operator==(const DiscretePsd& o) const {
    return atoms_ == o.atoms_ && weights_ == o.weights_;
  }

 private:
  void validate() const {
    if (atoms_.empty() || atoms_.size() != weights_.size())
      throw Error("DiscretePsd: atoms/weights size mismatch or empty");
    double sw = 0, saw = 0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (!(atoms_[i] > 0))
        throw InfeasiblePsdError("DiscretePsd: atoms must be positive");
      if (!(weights_[i] > 0))
        throw InfeasiblePsdError("DiscretePsd: weights must be positive");
      if (i > 0 && !(atoms_[i] > atoms_[i - 1]))
        throw InvalidMomentSequenceError(
            "DiscretePsd: atoms must be strictly increasing");
      sw += weights_[i];
      saw += atoms_[i] * weights_[i];
    }
    if (std::abs(sw - 1.0) > 1e-10)
      throw InfeasiblePsdError("DiscretePsd: weights must sum to 1");
    if (std::abs(saw - 1.0) > 1e-10)
      throw InfeasiblePsdError("DiscretePsd: mean must equal 1");
  }

  std::vector<double> atoms_;
  std::vector<double> weights_;
};

// Builds a psd from (atom, weight) pairs, merging coincident atoms. Used
// by the two-parameter benchmark families where x = 0 collapses atoms.
inline DiscretePsd make_psd(std::vector<std::pair<double, double>> aw) {
  std::sort(aw.begin(), aw.end());
  std::vector<double> atoms, weights;
  for (const auto& [a, w] : aw) {
    if (!atoms.empty() && std::abs(a - atoms.back()) < 1e-12) {
      weights.back() += w;
    } else {
      atoms.push_back(a);
      weights.push_back(w);
    }
  }
  return DiscretePsd(std::move(atoms), std::move(weights));
}

}  // namespace sscm
