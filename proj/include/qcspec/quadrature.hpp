#ifndef QCSPEC_QUADRATURE_HPP
#define QCSPEC_QUADRATURE_HPP

#include <functional>
#include <memory>
#include <vector>

#include "qcspec/geometry.hpp"
#include "qcspec/qcmap.hpp"

namespace qcspec {

enum class ConvergenceStatus { Converged, Diverged, Inconclusive };

const char* convergence_status_name(ConvergenceStatus s);

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  ConvergenceStatus status = ConvergenceStatus::Inconclusive;

  bool converged() const { return status == ConvergenceStatus::Converged; }
};

/// Tensor Gauss-Legendre rule over one of the two model domains, in polar
/// coordinates for the disc (the r dr weight folded into the nodes) and
/// Cartesian coordinates for the square. `annuli` is the number of dyadic
/// refinement levels (ratio 1/2) toward each declared singular point; the
/// innermost level is excluded from quadrature and recovered by geometric
/// extrapolation of the shell sums.
struct QuadratureRule {
  int radial_order = 24;
  int angular_order = 48;
  int annuli = 16;
  ModelDomain domain = ModelDomain::UnitDisc;
  double tolerance = 1e-8;  // relative
};

using Integrand = std::function<double(Point2)>;

/**
 * Prebuilt quadrature nodes for a (rule, singular set) pair. Building the
 * node set once and reusing it across integrands of the form f_base^e is
 * the fast path used by the q-infimum scans.
 */
class NodeSet {
 public:
  static NodeSet build(const QuadratureRule& rule, const std::vector<Point2>& singular = {});

  IntegralResult integrate(const Integrand& f) const;

  /// log f_base at every node (coarse and fine), for integrate_power.
  std::vector<double> log_samples(const Integrand& f_base) const;

  /// Integrates f_base^exponent from cached logarithms. With
  /// `coarse_only` the fine level is skipped: cheaper, no error estimate
  /// refinement, used inside optimization scans.
  IntegralResult integrate_power(const std::vector<double>& logs, double exponent,
                                 bool coarse_only = false) const;

  size_t node_count() const;
  double tolerance() const;

  NodeSet(NodeSet&&) noexcept;
  NodeSet& operator=(NodeSet&&) noexcept;
  ~NodeSet();

 private:
  NodeSet();
  struct Impl;
  std::unique_ptr<Impl> impl_;
  friend struct NodeSetAccess;
};

/// One-shot integration of f over the model domain, with dyadic refinement
/// and divergence detection around the declared singular points.
IntegralResult integrate(const Integrand& f, const QuadratureRule& rule,
                         const std::vector<Point2>& singular = {});

/// Integrates f_base^exponent with divergence detection: shell sums around
/// each singular point are ratio-tested and the excluded core is recovered
/// by geometric extrapolation when convergent.
IntegralResult power_exponent_probe(const Integrand& f_base, double exponent,
                                    const std::vector<Point2>& singular,
                                    const QuadratureRule& rule);

}  // namespace qcspec

#endif
