#include "qcspec/exponents.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qcspec/errors.hpp"

namespace qcspec {

const char* brennan_mode_name(BrennanMode m) {
  return m == BrennanMode::Proved ? "proved" : "conjectured";
}

ExponentContext::ExponentContext(double K_, double alpha_, double beta0_, BrennanMode mode_)
    : K(K_), alpha(alpha_), beta0(beta0_), mode(mode_) {
  if (!(K >= 1.0)) throw Error(ErrorKind::ConfigError, "distortion K must be >= 1");
  if (!(alpha > 2.0)) throw Error(ErrorKind::ConfigError, "regularity exponent alpha must be > 2");
  if (!(beta0 > 2.0 && beta0 <= 4.0)) {
    throw Error(ErrorKind::ConfigError, "beta0 must lie in (2, 4]");
  }
}

std::string Interval::str() const {
  std::ostringstream os;
  os.precision(10);
  if (empty()) return "(empty)";
  os << (lo_closed ? '[' : '(') << lo << ", " << hi << (hi_closed ? ']' : ')');
  return os.str();
}

Interval brennan_range(const ExponentContext& ctx) {
  const double K = ctx.K;
  const double b = ctx.effective_beta0();
  Interval out;
  out.lo = 4.0 * K / (2.0 * K + 1.0);
  out.hi = 2.0 * K * b / ((K - 1.0) * b + 2.0);
  out.lo_closed = false;
  out.hi_closed = false;
  return out;
}

double q_from_brennan(double p, double beta) {
  if (!(p > 2.0)) throw Error(ErrorKind::InvalidExponent, "requires p > 2");
  if (!(beta > 0.0)) throw Error(ErrorKind::InvalidExponent, "requires beta > 0");
  return p * beta / (p + beta - 2.0);
}

double holder_conjugate(double p) {
  if (!(p > 1.0)) throw Error(ErrorKind::InvalidExponent, "conjugate requires p > 1");
  return p / (p - 1.0);
}

Interval admissible_p(const ExponentContext& ctx, AdmissibleFor which) {
  const double K = ctx.K;
  const double a = ctx.alpha;
  const double b = ctx.effective_beta0();
  const double brennan_lo = 4.0 * K / (2.0 * K + 1.0);
  double lo;
  switch (which) {
    case AdmissibleFor::SobolevTransfer:
      lo = 2.0 * K * b / ((K + 1.0) * b - 2.0);
      break;
    case AdmissibleFor::GeneralPoincare:
      lo = std::max(brennan_lo, 2.0 * K * a * b / ((K + 2.0) * a * b - 4.0 * (a + b - 2.0)));
      break;
    case AdmissibleFor::EigenvalueBound:
      lo = std::max(brennan_lo, (2.0 * (K - 1.0) * a * b + 4.0 * (a + b - 2.0)) / (K * a * b));
      break;
    case AdmissibleFor::EigenvalueBoundConjectured:
      lo = std::max(brennan_lo, (a * (2.0 * K - 1.0) + 2.0) / (a * K));
      break;
    default:
      throw Error(ErrorKind::ConfigError, "bad admissibility selector");
  }
  Interval out{lo, 2.0, false, false};
  if (lo >= 2.0) {
    throw Error(ErrorKind::EmptyInterval, "admissible p interval " + out.str() + " is empty");
  }
  return out;
}

QIntervals q_interval(const ExponentContext& ctx, double p) {
  const Interval adm = admissible_p(ctx, AdmissibleFor::SobolevTransfer);
  if (!adm.contains(p)) {
    throw Error(ErrorKind::EmptyInterval,
                "p = " + std::to_string(p) + " outside admissible interval " + adm.str());
  }
  const double K = ctx.K;
  const double b = ctx.effective_beta0();
  const double den_exact = 2.0 * K * b - ((K - 1.0) * b + 2.0) * p;
  const double den_weak = 4.0 * K - (2.0 * K - 1.0) * p;
  if (den_exact <= 0.0 || den_weak <= 0.0) {
    throw Error(ErrorKind::EmptyInterval, "q interval denominators not positive");
  }
  QIntervals out;
  out.exact = {1.0, (2.0 * b - 4.0) * p / den_exact, true, true};
  out.weak = {1.0, 2.0 * p / den_weak, true, false};
  return out;
}

double r_max(const ExponentContext& ctx, double p) {
  if (!(p < 2.0)) throw Error(ErrorKind::InvalidExponent, "requires p < 2");
  const double b = ctx.effective_beta0();
  return (b - 2.0) / (ctx.K * b) * 2.0 * p / (2.0 - p);
}

double s_of_r(double alpha, double r) {
  if (!(alpha > 2.0)) throw Error(ErrorKind::InvalidExponent, "requires alpha > 2");
  if (r < alpha / (alpha - 2.0) - 1e-12) {
    throw Error(ErrorKind::InvalidExponent, "requires r >= alpha/(alpha-2)");
  }
  return r * (alpha - 2.0) / alpha;
}

IntegralResult alpha_regularity(const QCMap& map, double alpha, const QuadratureRule& rule) {
  if (!(alpha > 2.0)) throw Error(ErrorKind::InvalidExponent, "requires alpha > 2");
  QuadratureRule r = rule;
  r.domain = map.source_domain();
  return power_exponent_probe([&map](Point2 z) { return map.wirtinger(z).jac; }, 0.5 * alpha,
                              map.singular_points(), r);
}

double astala_alpha_cap(double K) {
  if (K <= 1.0) return std::numeric_limits<double>::infinity();
  return 2.0 * K / (K - 1.0);
}

}  // namespace qcspec
