#ifndef HYPERFRONT_TYPES_HPP_
#define HYPERFRONT_TYPES_HPP_

#include <cmath>
#include <stdexcept>
#include <string>

namespace hyperfront {

/// Transverse flow state (rho, v). The axial perturbation u is derived,
/// never stored.
struct State {
  double rho = 1.0;
  double v = 0.0;
};

inline bool operator==(const State& a, const State& b) {
  return a.rho == b.rho && a.v == b.v;
}

inline double sup_norm(const State& a, const State& b) {
  return std::max(std::abs(a.rho - b.rho), std::abs(a.v - b.v));
}

inline double abs_sum(const State& a, const State& b) {
  return std::abs(a.rho - b.rho) + std::abs(a.v - b.v);
}

/// Similarity parameters (gamma, a_inf, tau). tau = 0 selects the
/// small-disturbance system, tau > 0 the scaled system. All speeds,
/// fluxes and wave curves are fixed by these three numbers plus the
/// admissible-neighborhood radius around the background state (1, 0).
struct SimilarityParams {
  double gamma = 1.4;
  double a_inf = 0.5;
  double tau = 0.0;
  /// Sup-norm radius of the admissible neighborhood around (1, 0).
  /// All local theory (wave curves, Riemann solves) is restricted to it.
  double neighborhood_radius = 0.1;

  bool small_disturbance() const { return tau == 0.0; }

  void validate() const {
    if (!(gamma > 1.0)) throw std::invalid_argument("params: gamma must be > 1");
    if (!(a_inf > 0.0)) throw std::invalid_argument("params: a_inf must be > 0");
    if (!(tau >= 0.0) || !(tau < 0.5 * a_inf))
      throw std::invalid_argument("params: need 0 <= tau < a_inf/2");
    if (!(neighborhood_radius > 0.0))
      throw std::invalid_argument("params: neighborhood_radius must be > 0");
  }
};

inline constexpr State kBackground{1.0, 0.0};

/// State outside the admissible neighborhood or an expression left its
/// domain of validity (negative radicand, lost hyperbolicity, ...).
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// A nonlinear solve failed to reach tolerance; the data are too far
/// apart for the local theory.
class no_convergence_error : public std::runtime_error {
 public:
  explicit no_convergence_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// Boundary function violates the wedge/wing hypotheses.
class invalid_boundary_error : public std::runtime_error {
 public:
  explicit invalid_boundary_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// Initial data violates the BV/positivity hypotheses.
class invalid_data_error : public std::runtime_error {
 public:
  explicit invalid_data_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// The Glimm total exceeded its diagnostic budget mid-run.
class budget_exceeded_error : public std::runtime_error {
 public:
  explicit budget_exceeded_error(const std::string& what)
      : std::runtime_error(what) {}
};

class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Operation asked for in a regime where no closed form exists.
class unsupported_regime_error : public std::runtime_error {
 public:
  explicit unsupported_regime_error(const std::string& what)
      : std::runtime_error(what) {}
};

inline bool in_neighborhood(const State& u, const SimilarityParams& p) {
  return sup_norm(u, kBackground) <= p.neighborhood_radius;
}

inline void require_admissible(const State& u, const SimilarityParams& p,
                               const char* who) {
  if (!(u.rho > 0.0))
    throw domain_error(std::string(who) + ": rho <= 0");
  if (!in_neighborhood(u, p))
    throw domain_error(std::string(who) + ": state outside admissible neighborhood");
}

}  // namespace hyperfront

#endif  // HYPERFRONT_TYPES_HPP_
