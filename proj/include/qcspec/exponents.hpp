#ifndef QCSPEC_EXPONENTS_HPP
#define QCSPEC_EXPONENTS_HPP

#include <string>

#include "qcspec/qcmap.hpp"
#include "qcspec/quadrature.hpp"

namespace qcspec {

/// Whether exponent ranges use the proved integrability bound beta0 or the
/// full conjectured range (equivalent to beta0 = 4).
enum class BrennanMode { Proved, Conjectured };

const char* brennan_mode_name(BrennanMode m);

/// Default proved upper integrability exponent for conformal maps onto the
/// disc.
constexpr double kDefaultBeta0 = 3.752;

/// Bundle of the distortion coefficient K, the regularity exponent alpha,
/// and the Brennan exponent bound driving all admissible ranges.
struct ExponentContext {
  double K = 1.0;
  double alpha = 4.0;
  double beta0 = kDefaultBeta0;
  BrennanMode mode = BrennanMode::Proved;

  ExponentContext() = default;
  ExponentContext(double K_, double alpha_, double beta0_ = kDefaultBeta0,
                  BrennanMode mode_ = BrennanMode::Proved);

  /// beta0 in Proved mode, 4 in Conjectured mode (the value at which the
  /// proved-range formulas reproduce the conjectured endpoints).
  double effective_beta0() const { return mode == BrennanMode::Conjectured ? 4.0 : beta0; }
};

/// Interval with explicit endpoint openness; empty intervals are
/// representable.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;

  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool contains(double x) const {
    if (empty()) return false;
    const bool above = lo_closed ? x >= lo : x > lo;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
  }
  std::string str() const;
};

/// Selector for the admissible p-interval of the different estimates.
enum class AdmissibleFor {
  SobolevTransfer,            // composition-operator transfer step
  GeneralPoincare,            // (s,p)-Poincare-Sobolev constant
  EigenvalueBound,            // (p,p) constant / eigenvalue lower bound
  EigenvalueBoundConjectured  // same, under the full conjectured range
};

/// Exponent range of integrability |Dw|^beta for K-quasiconformal maps onto
/// the disc: (4K/(2K+1), 2K b/((K-1)b+2)) with b the effective beta0.
Interval brennan_range(const ExponentContext& ctx);

/// q = p*beta/(p+beta-2) for p > 2; always q < p.
double q_from_brennan(double p, double beta);

/// p/(p-1) for p > 1.
double holder_conjugate(double p);

/// Open interval of p for which the named estimate applies.
Interval admissible_p(const ExponentContext& ctx, AdmissibleFor which);

struct QIntervals {
  Interval exact;  // [1, (2b-4)p/(2Kb-((K-1)b+2)p)], closed
  Interval weak;   // [1, 2p/(4K-(2K-1)p)), half-open; exact.hi < weak.hi
};

/// Both q-ranges of the transfer inequality at this p.
QIntervals q_interval(const ExponentContext& ctx, double p);

/// Largest admissible r in the weighted Poincare-Sobolev inequality:
/// (b-2)/(K b) * 2p/(2-p).
double r_max(const ExponentContext& ctx, double p);

/// s = r(alpha-2)/alpha, defined for r >= alpha/(alpha-2) so that s >= 1.
double s_of_r(double alpha, double r);

/// Certifies alpha-regularity at this alpha: integrates jac^{alpha/2} of the
/// map (in the model-to-image role) over the model domain with divergence
/// detection.
IntegralResult alpha_regularity(const QCMap& map, double alpha, const QuadratureRule& rule);

/// A-priori cap 2K/(K-1) on certifiable alpha for general K-quasiconformal
/// maps; +infinity in the conformal case K <= 1.
double astala_alpha_cap(double K);

}  // namespace qcspec

#endif
