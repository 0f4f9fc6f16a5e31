#ifndef QCSPEC_QCMAP_HPP
#define QCSPEC_QCMAP_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcspec/geometry.hpp"

namespace qcspec {

/// The two model source domains: the unit disc and the centered open square
/// with half-side sqrt(2)/2 (corners on the unit circle).
enum class ModelDomain { UnitDisc, CenteredSquare };

constexpr double kSquareHalfSide = 0.7071067811865475244;  // sqrt(2)/2

const char* model_domain_name(ModelDomain d);
double model_domain_area(ModelDomain d);

/// Pointwise Wirtinger data of a planar map w at a point:
/// wz = (w_x - i w_y)/2, wzbar = (w_x + i w_y)/2,
/// opnorm = |wz| + |wzbar|, jac = |wz|^2 - |wzbar|^2.
struct WirtingerData {
  Complex wz;
  Complex wzbar;
  double opnorm = 0.0;
  double jac = 0.0;

  static WirtingerData from_derivatives(Complex wz, Complex wzbar) {
    WirtingerData d;
    d.wz = wz;
    d.wzbar = wzbar;
    d.opnorm = std::abs(wz) + std::abs(wzbar);
    d.jac = std::norm(wz) - std::norm(wzbar);
    return d;
  }
};

enum class MapKind { Identity, EllipseAffine, CardioidPower, StarPower, Custom };

const char* map_kind_name(MapKind k);

/**
 * A quasiconformal map from a model domain onto a planar image domain,
 * with exact Wirtinger calculus for the built-in kinds:
 *
 *   identity        w = z                        on the unit disc, K = 1
 *   ellipse_affine  w = A z + B conj(z)          on the unit disc, K = (A+B)/(A-B)
 *   cardioid_power  w = (|z|^{k-1} z + 1)^2      on the unit disc, K = k
 *   star_power      w = |z|^k z                  on the square Q,  K = k+1
 *
 * Custom maps supply forward evaluation only; derivatives fall back to
 * central finite differences and the distortion to a sampled maximum.
 */
class QCMap {
 public:
  static QCMap identity();
  static QCMap ellipse_affine(double a, double b);   // requires a > b >= 0
  static QCMap cardioid_power(double k);             // requires k >= 1
  static QCMap star_power(double k);                 // requires k >= 0
  static QCMap custom(ModelDomain source, std::function<Point2(Point2)> forward,
                      std::vector<Point2> singular_points = {},
                      std::optional<double> distortion_hint = std::nullopt);

  MapKind kind() const { return kind_; }
  ModelDomain source_domain() const { return source_; }
  const std::vector<double>& params() const { return params_; }

  /// Forward evaluation w(z). Throws PointOutsideSource if z is not in the
  /// closed model domain (within a small tolerance).
  Point2 evaluate(Point2 z) const;

  /// Exact analytic Wirtinger data for built-ins; central differences with
  /// step 1e-6 * max(1,|z|) for Custom. Throws DerivativeSingularity at
  /// z = 0 where the analytic formula carries a negative |z| power.
  WirtingerData wirtinger(Point2 z) const;

  /// The distortion coefficient K. Closed form for built-ins; for Custom a
  /// sampled maximum of opnorm^2/jac over a grid of the given density
  /// (no essential-sup claim). Throws DegenerateJacobian if jac <= 0 at a
  /// sample away from declared singular points.
  double distortion(int grid_radial = 64, int grid_angular = 128) const;

  /// Points of the model domain where derivative formulas are singular or
  /// non-smooth; quadrature refines toward these.
  std::vector<Point2> singular_points() const;

  bool in_source_domain(Point2 z, double tol = 1e-12) const;

  /// Descriptor string, e.g. "ellipse:2,1". Round-trips through parse_map
  /// for the built-in kinds.
  std::string describe() const;

 private:
  QCMap() = default;

  MapKind kind_ = MapKind::Identity;
  ModelDomain source_ = ModelDomain::UnitDisc;
  std::vector<double> params_;
  std::function<Point2(Point2)> forward_;
  std::vector<Point2> custom_singular_;
  std::optional<double> distortion_hint_;
};

/// Parses a map descriptor of the form "identity", "ellipse:A,B",
/// "cardioid:k" or "star:k". Throws ConfigError on malformed input.
QCMap parse_map(const std::string& descriptor);

}  // namespace qcspec

#endif
