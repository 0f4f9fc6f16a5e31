#ifndef QCSPEC_GEOMETRY_HPP
#define QCSPEC_GEOMETRY_HPP

#include <cmath>
#include <complex>

namespace qcspec {

using Complex = std::complex<double>;

/// A point of the plane, also read as the complex number x + iy.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Complex to_complex() const { return {x, y}; }
  double abs() const { return std::hypot(x, y); }
  double abs2() const { return x * x + y * y; }

  static Point2 from_complex(Complex z) { return {z.real(), z.imag()}; }

  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double distance(Point2 a, Point2 b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace qcspec

#endif
