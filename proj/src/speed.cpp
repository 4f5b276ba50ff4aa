#include "bowlforge/speed.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "bowlforge/error.hpp"
#include "bowlforge/numerics.hpp"

namespace bowlforge {

namespace {

constexpr int kStackDim = 32;

std::string format_point(std::span<const double> z) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  for (std::size_t i = 0; i < z.size(); ++i) os << (i ? ", " : "") << z[i];
  os << ')';
  return os.str();
}

void check_inputs(std::span<const double> z, int dim) {
  if (static_cast<int>(z.size()) != dim)
    throw DomainError("speed expects " + std::to_string(dim) + " curvatures, got " +
                      std::to_string(z.size()));
  for (double zi : z) {
    if (!(zi > 0.0) || !std::isfinite(zi))
      throw DomainError("curvatures must be positive and finite, got " + format_point(z));
  }
}

}  // namespace

SpeedFunction::SpeedFunction(std::string name, int dim, double alpha, Evaluator evaluator,
                             SpeedFamily family)
    : name_(std::move(name)),
      dim_(dim),
      alpha_(alpha),
      family_(family),
      evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))) {
  if (dim_ < 2) throw SpecError("speed dimension must be at least 2");
  if (!(alpha_ > 0.0) || !std::isfinite(alpha_))
    throw AdmissibilityError("homogeneity degree must be positive, got " + std::to_string(alpha_));
}

double SpeedFunction::evaluate_raw(std::span<const double> z) const {
  check_inputs(z, dim_);
  return (*evaluator_)(z);
}

double SpeedFunction::evaluate(std::span<const double> z) const {
  const double value = evaluate_raw(z);
  if (!std::isfinite(value) || !(value > 0.0))
    throw DomainError(name_ + " is not positive and finite at " + format_point(z));
  return value;
}

double SpeedFunction::restricted(double x, double y) const {
  if (dim_ <= kStackDim) {
    std::array<double, kStackDim> buf;
    buf[0] = x;
    std::fill(buf.begin() + 1, buf.begin() + dim_, y);
    return evaluate(std::span<const double>(buf.data(), static_cast<std::size_t>(dim_)));
  }
  std::vector<double> buf(static_cast<std::size_t>(dim_), y);
  buf[0] = x;
  return evaluate(buf);
}

double boundary_limit(const SpeedFunction& speed) {
  std::vector<double> seq;
  seq.reserve(12);
  for (int k = 1; k <= 12; ++k) {
    const double s = std::pow(10.0, -k);
    const double value = speed.restricted(s, 1.0);
    // f is increasing in every slot, so f(s, e) must not grow as s shrinks.
    if (!seq.empty() && value > seq.back() * (1.0 + 1e-12))
      throw NonConvergentLimit(speed.name() + ": f(s, e) increases as s -> 0 (at s = 1e-" +
                               std::to_string(k) + "); evaluator is not elliptic");
    seq.push_back(value);
  }
  const auto est = numerics::extrapolate_limit(seq);
  if (!est.stabilized)
    throw NonConvergentLimit(speed.name() + ": f(s, e) does not stabilize as s -> 0");
  return std::max(0.0, est.value);
}

double far_limit(const SpeedFunction& speed) {
  std::vector<double> seq;
  seq.reserve(12);
  for (int k = 1; k <= 12; ++k) seq.push_back(speed.restricted(std::pow(10.0, k), 1.0));
  const auto est = numerics::extrapolate_limit(seq);
  if (est.diverging) return std::numeric_limits<double>::infinity();
  if (!est.stabilized)
    throw NonConvergentLimit(speed.name() + ": f(t, e) does not stabilize as t -> inf");
  return est.value;
}

SpeedInvariants compute_invariants(const SpeedFunction& speed, double degeneracy_tol) {
  SpeedInvariants inv;
  inv.alpha = speed.alpha();
  const std::vector<double> ones(static_cast<std::size_t>(speed.dim()), 1.0);
  inv.gamma = 1.0 / std::pow(speed.evaluate(ones), 1.0 / inv.alpha);
  inv.boundary_value = boundary_limit(speed);
  inv.degenerate = inv.boundary_value < degeneracy_tol;
  if (inv.degenerate) {
    inv.boundary_value = 0.0;
  } else {
    inv.gamma_plus = 1.0 / std::pow(inv.boundary_value, 1.0 / inv.alpha);
  }
  inv.beta = 0.5 - 0.5 / inv.alpha;
  return inv;
}

bool AdmissibilityReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck* AdmissibilityReport::find(const std::string& axiom) const {
  for (const auto& c : checks)
    if (c.axiom == axiom) return &c;
  return nullptr;
}

namespace {

std::vector<int> first_primes(int count) {
  std::vector<int> primes;
  for (int candidate = 2; static_cast<int>(primes.size()) < count; ++candidate) {
    bool prime = true;
    for (int p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(candidate);
  }
  return primes;
}

double radical_inverse(int index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * (index % base);
    index /= base;
    f /= base;
  }
  return result;
}

void fail(AxiomCheck& check, std::span<const double> z, std::string detail) {
  if (!check.passed) return;
  check.passed = false;
  check.witness.assign(z.begin(), z.end());
  check.detail = std::move(detail);
}

}  // namespace

AdmissibilityReport verify_admissibility(const SpeedFunction& speed, int samples) {
  const int n = speed.dim();
  const auto primes = first_primes(n);
  AxiomCheck positivity, symmetry, ellipticity, homogeneity;
  positivity.axiom = "positivity";
  symmetry.axiom = "symmetry";
  ellipticity.axiom = "ellipticity";
  homogeneity.axiom = "homogeneity";

  std::vector<double> z(static_cast<std::size_t>(n)), w(z.size());
  for (int s = 1; s <= samples; ++s) {
    // Halton point mapped log-uniformly onto [0.1, 10]^n.
    for (int i = 0; i < n; ++i) z[i] = 0.1 * std::pow(100.0, radical_inverse(s, primes[i]));

    double fz = 0.0;
    try {
      fz = speed.evaluate_raw(z);
    } catch (const DomainError& e) {
      fail(positivity, z, e.what());
      continue;
    }
    if (!std::isfinite(fz) || !(fz > 0.0)) {
      fail(positivity, z, "f(z) = " + std::to_string(fz));
      continue;
    }

    auto eval = [&](std::span<const double> p) -> double {
      try {
        return speed.evaluate_raw(p);
      } catch (const DomainError&) {
        return std::numeric_limits<double>::quiet_NaN();
      }
    };

    // Symmetry: reversal, a cyclic shift and a transposition of the first pair.
    for (int perm = 0; perm < 3; ++perm) {
      w = z;
      if (perm == 0) std::reverse(w.begin(), w.end());
      if (perm == 1) std::rotate(w.begin(), w.begin() + 1, w.end());
      if (perm == 2) std::swap(w[0], w[1]);
      const double fw = eval(w);
      if (!(std::abs(fw - fz) <= 1e-12 * std::abs(fz))) {
        fail(symmetry, z,
             "f(z) = " + std::to_string(fz) + " but f(permuted z) = " + std::to_string(fw));
        break;
      }
    }

    for (int i = 0; i < n; ++i) {
      const double h = 1e-6 * std::abs(z[i]);
      w = z;
      w[i] = z[i] + h;
      const double up = eval(w);
      w[i] = z[i] - h;
      const double down = eval(w);
      const double deriv = (up - down) / (2.0 * h);
      if (!(deriv > 0.0)) {
        fail(ellipticity, z,
             "df/dz" + std::to_string(i + 1) + " = " + std::to_string(deriv) + " <= 0");
        break;
      }
    }

    for (double lambda : {0.5, 2.0, 10.0}) {
      for (int i = 0; i < n; ++i) w[i] = lambda * z[i];
      const double flz = eval(w);
      const double expected = std::pow(lambda, speed.alpha()) * fz;
      if (!(std::abs(flz - expected) <= 1e-10 * std::abs(flz))) {
        fail(homogeneity, z,
             "f(" + std::to_string(lambda) + " z) = " + std::to_string(flz) + " but lambda^alpha f(z) = " +
                 std::to_string(expected));
        break;
      }
    }
  }
  return AdmissibilityReport{{positivity, symmetry, ellipticity, homogeneity}};
}

namespace speeds {

SpeedFunction mean_curvature(int dim) {
  return SpeedFunction(
      "mean", dim, 1.0,
      [](std::span<const double> z) { return std::accumulate(z.begin(), z.end(), 0.0); },
      SpeedFamily::Mean);
}

SpeedFunction harmonic_mean(int dim) {
  return SpeedFunction(
      "harmonic-mean", dim, 1.0,
      [](std::span<const double> z) {
        double s = 0.0;
        for (double zi : z) s += 1.0 / zi;
        return 1.0 / s;
      },
      SpeedFamily::HarmonicMean);
}

SpeedFunction scalar_curvature(int dim) {
  return SpeedFunction(
      "scalar", dim, 1.0,
      [](std::span<const double> z) {
        // 2 S2 = (sum z)^2 - sum z^2, accumulated pairwise to stay positive.
        double partial = 0.0, s2 = 0.0;
        for (double zi : z) {
          s2 += zi * partial;
          partial += zi;
        }
        return std::sqrt(2.0 * s2);
      },
      SpeedFamily::Scalar);
}

SpeedFunction gauss_power(int dim, double alpha) {
  const double expo = alpha / dim;
  std::ostringstream name;
  name << "gauss:" << alpha;
  return SpeedFunction(
      name.str(), dim, alpha,
      [expo](std::span<const double> z) {
        double log_k = 0.0;
        for (double zi : z) log_k += std::log(zi);
        return std::exp(expo * log_k);
      },
      SpeedFamily::GaussPower);
}

SpeedFunction power_mean(int dim, double p, double alpha) {
  std::ostringstream name;
  name << "power-mean:" << p << ':' << alpha;
  if (p == 0.0) {
    return SpeedFunction(
        name.str(), dim, alpha,
        [alpha](std::span<const double> z) {
          double log_sum = 0.0;
          for (double zi : z) log_sum += std::log(zi);
          return std::exp(alpha * log_sum / static_cast<double>(z.size()));
        },
        SpeedFamily::PowerMean);
  }
  return SpeedFunction(
      name.str(), dim, alpha,
      [p, alpha](std::span<const double> z) {
        double s = 0.0;
        for (double zi : z) s += std::pow(zi, p);
        return std::pow(s / static_cast<double>(z.size()), alpha / p);
      },
      SpeedFamily::PowerMean);
}

}  // namespace speeds

}  // namespace bowlforge
