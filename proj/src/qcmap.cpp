#include "qcspec/qcmap.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "qcspec/errors.hpp"

namespace qcspec {

namespace {

std::string shortest(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

const char* model_domain_name(ModelDomain d) {
  return d == ModelDomain::UnitDisc ? "unit_disc" : "centered_square";
}

double model_domain_area(ModelDomain d) {
  return d == ModelDomain::UnitDisc ? M_PI : 4.0 * kSquareHalfSide * kSquareHalfSide;
}

const char* map_kind_name(MapKind k) {
  switch (k) {
    case MapKind::Identity: return "identity";
    case MapKind::EllipseAffine: return "ellipse";
    case MapKind::CardioidPower: return "cardioid";
    case MapKind::StarPower: return "star";
    case MapKind::Custom: return "custom";
  }
  return "?";
}

QCMap QCMap::identity() {
  QCMap m;
  m.kind_ = MapKind::Identity;
  m.source_ = ModelDomain::UnitDisc;
  return m;
}

QCMap QCMap::ellipse_affine(double a, double b) {
  if (!(a > b && b >= 0.0)) {
    throw Error(ErrorKind::ConfigError,
                "ellipse map requires A > B >= 0, got A=" + shortest(a) + " B=" + shortest(b));
  }
  QCMap m;
  m.kind_ = MapKind::EllipseAffine;
  m.source_ = ModelDomain::UnitDisc;
  m.params_ = {a, b};
  return m;
}

QCMap QCMap::cardioid_power(double k) {
  if (!(k >= 1.0)) {
    throw Error(ErrorKind::ConfigError, "cardioid map requires k >= 1, got k=" + shortest(k));
  }
  QCMap m;
  m.kind_ = MapKind::CardioidPower;
  m.source_ = ModelDomain::UnitDisc;
  m.params_ = {k};
  return m;
}

QCMap QCMap::star_power(double k) {
  if (!(k >= 0.0)) {
    throw Error(ErrorKind::ConfigError, "star map requires k >= 0, got k=" + shortest(k));
  }
  QCMap m;
  m.kind_ = MapKind::StarPower;
  m.source_ = ModelDomain::CenteredSquare;
  m.params_ = {k};
  return m;
}

QCMap QCMap::custom(ModelDomain source, std::function<Point2(Point2)> forward,
                    std::vector<Point2> singular_points,
                    std::optional<double> distortion_hint) {
  QCMap m;
  m.kind_ = MapKind::Custom;
  m.source_ = source;
  m.forward_ = std::move(forward);
  m.custom_singular_ = std::move(singular_points);
  m.distortion_hint_ = distortion_hint;
  return m;
}

bool QCMap::in_source_domain(Point2 z, double tol) const {
  if (source_ == ModelDomain::UnitDisc) return z.abs() <= 1.0 + tol;
  return std::max(std::abs(z.x), std::abs(z.y)) <= kSquareHalfSide + tol;
}

Point2 QCMap::evaluate(Point2 z) const {
  if (!z.finite() || !in_source_domain(z)) {
    throw Error(ErrorKind::PointOutsideSource,
                "point (" + shortest(z.x) + ", " + shortest(z.y) + ") outside " +
                    model_domain_name(source_));
  }
  const Complex zc = z.to_complex();
  switch (kind_) {
    case MapKind::Identity:
      return z;
    case MapKind::EllipseAffine:
      return Point2::from_complex(params_[0] * zc + params_[1] * std::conj(zc));
    case MapKind::CardioidPower: {
      const double k = params_[0];
      const Complex u = std::pow(z.abs(), k - 1.0) * zc + 1.0;
      return Point2::from_complex(u * u);
    }
    case MapKind::StarPower:
      return Point2::from_complex(std::pow(z.abs(), params_[0]) * zc);
    case MapKind::Custom:
      return forward_(z);
  }
  throw Error(ErrorKind::ConfigError, "unreachable map kind");
}

WirtingerData QCMap::wirtinger(Point2 z) const {
  if (!z.finite() || !in_source_domain(z)) {
    throw Error(ErrorKind::PointOutsideSource,
                "point (" + shortest(z.x) + ", " + shortest(z.y) + ") outside " +
                    model_domain_name(source_));
  }
  const Complex zc = z.to_complex();
  const double m = z.abs();
  switch (kind_) {
    case MapKind::Identity:
      return WirtingerData::from_derivatives(1.0, 0.0);
    case MapKind::EllipseAffine:
      return WirtingerData::from_derivatives(params_[0], params_[1]);
    case MapKind::CardioidPower: {
      const double k = params_[0];
      if (m == 0.0) {
        // w_zbar carries |z|^{k-3}; the k = 1 term vanishes identically.
        if (k != 1.0 && k < 3.0) {
          throw Error(ErrorKind::DerivativeSingularity,
                      "cardioid derivative formula singular at z = 0 for k=" + shortest(k));
        }
        const Complex wz = (k == 1.0) ? Complex(2.0) : Complex(0.0);
        return WirtingerData::from_derivatives(wz, 0.0);
      }
      const Complex u = std::pow(m, k - 1.0) * zc + 1.0;
      const Complex wz = (k + 1.0) * std::pow(m, k - 1.0) * u;
      const Complex wzbar =
          (k == 1.0) ? Complex(0.0) : (k - 1.0) * std::pow(m, k - 3.0) * zc * zc * u;
      return WirtingerData::from_derivatives(wz, wzbar);
    }
    case MapKind::StarPower: {
      const double k = params_[0];
      if (m == 0.0) {
        if (k != 0.0 && k < 2.0) {
          throw Error(ErrorKind::DerivativeSingularity,
                      "star derivative formula singular at z = 0 for k=" + shortest(k));
        }
        const Complex wz = (k == 0.0) ? Complex(1.0) : Complex(0.0);
        return WirtingerData::from_derivatives(wz, 0.0);
      }
      const Complex wz = (0.5 * k + 1.0) * std::pow(m, k);
      const Complex wzbar =
          (k == 0.0) ? Complex(0.0) : 0.5 * k * std::pow(m, k - 2.0) * zc * zc;
      return WirtingerData::from_derivatives(wz, wzbar);
    }
    case MapKind::Custom: {
      const double h = 1e-6 * std::max(1.0, m);
      auto at = [&](double dx, double dy) {
        return evaluate({z.x + dx, z.y + dy}).to_complex();
      };
      const Complex wx = (at(h, 0) - at(-h, 0)) / (2.0 * h);
      const Complex wy = (at(0, h) - at(0, -h)) / (2.0 * h);
      const Complex i(0.0, 1.0);
      return WirtingerData::from_derivatives(0.5 * (wx - i * wy), 0.5 * (wx + i * wy));
    }
  }
  throw Error(ErrorKind::ConfigError, "unreachable map kind");
}

double QCMap::distortion(int grid_radial, int grid_angular) const {
  switch (kind_) {
    case MapKind::Identity:
      return 1.0;
    case MapKind::EllipseAffine:
      return (params_[0] + params_[1]) / (params_[0] - params_[1]);
    case MapKind::CardioidPower:
      return params_[0];
    case MapKind::StarPower:
      return params_[0] + 1.0;
    case MapKind::Custom:
      break;
  }
  if (distortion_hint_) return *distortion_hint_;

  // Sampled maximum of opnorm^2/jac over an interior grid; samples close to
  // declared singular points are skipped.
  const double scale =
      source_ == ModelDomain::UnitDisc ? 1.0 : kSquareHalfSide;
  double kmax = 1.0;
  int degenerate = 0;
  auto visit = [&](Point2 pt) {
    for (const Point2& s : custom_singular_) {
      if (distance(pt, s) < 1e-3 * scale) return;
    }
    const WirtingerData d = wirtinger(pt);
    if (!(d.jac > 0.0)) {
      ++degenerate;
      return;
    }
    kmax = std::max(kmax, d.opnorm * d.opnorm / d.jac);
  };
  if (source_ == ModelDomain::UnitDisc) {
    for (int i = 0; i < grid_radial; ++i) {
      const double r = (i + 0.5) / grid_radial;
      for (int j = 0; j < grid_angular; ++j) {
        const double a = 2.0 * M_PI * (j + 0.5) / grid_angular;
        visit({r * std::cos(a), r * std::sin(a)});
      }
    }
  } else {
    for (int i = 0; i < grid_radial; ++i) {
      for (int j = 0; j < grid_radial; ++j) {
        visit({kSquareHalfSide * (2.0 * (i + 0.5) / grid_radial - 1.0),
               kSquareHalfSide * (2.0 * (j + 0.5) / grid_radial - 1.0)});
      }
    }
  }
  if (degenerate > 0) {
    throw Error(ErrorKind::DegenerateJacobian,
                "jacobian <= 0 at " + std::to_string(degenerate) + " sample points");
  }
  return kmax;
}

std::vector<Point2> QCMap::singular_points() const {
  switch (kind_) {
    case MapKind::Identity:
    case MapKind::EllipseAffine:
      return {};
    case MapKind::CardioidPower: {
      // Cusp preimage z = -1 always; origin except for the polynomial k = 1.
      std::vector<Point2> pts = {{-1.0, 0.0}};
      if (params_[0] != 1.0) pts.push_back({0.0, 0.0});
      return pts;
    }
    case MapKind::StarPower:
      if (params_[0] != 0.0) return {{0.0, 0.0}};
      return {};
    case MapKind::Custom:
      return custom_singular_;
  }
  return {};
}

std::string QCMap::describe() const {
  std::string s = map_kind_name(kind_);
  if (!params_.empty()) {
    s += ":";
    for (size_t i = 0; i < params_.size(); ++i) {
      if (i) s += ",";
      s += shortest(params_[i]);
    }
  }
  return s;
}

QCMap parse_map(const std::string& descriptor) {
  std::string kind = descriptor;
  std::vector<double> params;
  const auto colon = descriptor.find(':');
  if (colon != std::string::npos) {
    kind = descriptor.substr(0, colon);
    std::stringstream ss(descriptor.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        params.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw Error(ErrorKind::ConfigError, "bad map parameter '" + tok + "' in " + descriptor);
      }
    }
  }
  auto need = [&](size_t n) {
    if (params.size() != n) {
      throw Error(ErrorKind::ConfigError,
                  "map '" + kind + "' takes " + std::to_string(n) + " parameter(s)");
    }
  };
  if (kind == "identity") {
    need(0);
    return QCMap::identity();
  }
  if (kind == "ellipse") {
    need(2);
    return QCMap::ellipse_affine(params[0], params[1]);
  }
  if (kind == "cardioid") {
    need(1);
    return QCMap::cardioid_power(params[0]);
  }
  if (kind == "star") {
    need(1);
    return QCMap::star_power(params[0]);
  }
  throw Error(ErrorKind::ConfigError, "unknown map kind '" + kind + "'");
}

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PointOutsideSource: return "PointOutsideSource";
    case ErrorKind::DerivativeSingularity: return "DerivativeSingularity";
    case ErrorKind::DegenerateJacobian: return "DegenerateJacobian";
    case ErrorKind::InvalidExponent: return "InvalidExponent";
    case ErrorKind::EmptyInterval: return "EmptyInterval";
    case ErrorKind::OutOfValidity: return "OutOfValidity";
    case ErrorKind::DivergentIntegral: return "DivergentIntegral";
    case ErrorKind::EmptyFeasibleSet: return "EmptyFeasibleSet";
    case ErrorKind::SolverFailure: return "SolverFailure";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::CheckFailed: return "CheckFailed";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Error";
}

}  // namespace qcspec
