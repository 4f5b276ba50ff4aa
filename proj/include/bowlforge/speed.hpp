#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bowlforge {

/// Which catalog entry a speed came from. Used by diagnostics that know a
/// closed form for a particular family (e.g. the separable Gauss-power ODE).
enum class SpeedFamily { Mean, HarmonicMean, Scalar, GaussPower, PowerMean, Expression, Custom };

/// A symmetric, elliptic, alpha-homogeneous speed f on the positive cone.
///
/// Instances are immutable; copies share the evaluator. Evaluation is pure
/// and may be called concurrently.
class SpeedFunction {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  SpeedFunction(std::string name, int dim, double alpha, Evaluator evaluator,
                SpeedFamily family = SpeedFamily::Custom);

  const std::string& name() const noexcept { return name_; }
  int dim() const noexcept { return dim_; }
  double alpha() const noexcept { return alpha_; }
  SpeedFamily family() const noexcept { return family_; }

  /// f(z). Throws DomainError unless every z_i is positive and finite, or if
  /// the evaluator produces a non-finite or non-positive value.
  double evaluate(std::span<const double> z) const;
  double operator()(std::span<const double> z) const { return evaluate(z); }

  /// f(x, y, ..., y): first slot x, the remaining n-1 slots equal to y.
  double restricted(double x, double y) const;

  /// Evaluates without the positivity checks on the output (inputs are still
  /// checked). Used by admissibility probes that want to see bad values.
  double evaluate_raw(std::span<const double> z) const;

 private:
  std::string name_;
  int dim_;
  double alpha_;
  SpeedFamily family_;
  std::shared_ptr<const Evaluator> evaluator_;
};

/// Scalar invariants that drive the whole construction.
struct SpeedInvariants {
  double alpha = 0.0;
  double gamma = 0.0;           // 1 / f(1,...,1)^(1/alpha)
  double boundary_value = 0.0;  // f(0, e) as a limit
  bool degenerate = false;
  std::optional<double> gamma_plus;  // 1 / f(0,e)^(1/alpha), nondegenerate only
  double beta = 0.0;                 // 1/2 - 1/(2 alpha)
};

inline constexpr double kDefaultDegeneracyTol = 1e-9;

/// f(0, e) = lim_{s -> 0} f(s, e), extrapolated from s = 10^-1 .. 10^-12.
/// Throws NonConvergentLimit if f(s, e) fails to decrease monotonically as
/// s decreases or the extrapolation does not settle.
double boundary_limit(const SpeedFunction& speed);

/// lim_{t -> inf} f(t, e); +inf when f(t, e) grows without bound.
double far_limit(const SpeedFunction& speed);

SpeedInvariants compute_invariants(const SpeedFunction& speed,
                                   double degeneracy_tol = kDefaultDegeneracyTol);

struct AxiomCheck {
  std::string axiom;
  bool passed = true;
  std::vector<double> witness;  // first failing point, empty on success
  std::string detail;
};

struct AdmissibilityReport {
  std::vector<AxiomCheck> checks;  // positivity, symmetry, ellipticity, homogeneity
  bool passed() const;
  const AxiomCheck* find(const std::string& axiom) const;
};

/// Samples `samples` quasi-random points in [0.1, 10]^n and checks the
/// admissibility axioms there. Failures are reported, never thrown.
AdmissibilityReport verify_admissibility(const SpeedFunction& speed, int samples);

namespace speeds {

SpeedFunction mean_curvature(int dim);
SpeedFunction harmonic_mean(int dim);
/// sqrt(2 S2) = sqrt(sum_{i<j} 2 k_i k_j).
SpeedFunction scalar_curvature(int dim);
/// K^(alpha/n).
SpeedFunction gauss_power(int dim, double alpha);
/// ((1/n) sum z_i^p)^(alpha/p); p = 0 is the geometric mean to the power alpha.
SpeedFunction power_mean(int dim, double p, double alpha);

}  // namespace speeds

/// Builds a speed from an identifier: `mean`, `harmonic-mean`, `scalar`,
/// `gauss:<alpha>`, `power-mean:<p>:<alpha>` or `expr:<source>`.
/// Throws SpecError, ParseError, DimensionError, NotHomogeneous or
/// AdmissibilityError.
SpeedFunction make_speed(const std::string& spec, int dim);

}  // namespace bowlforge
