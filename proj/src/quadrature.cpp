#include "qcspec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "qcspec/errors.hpp"

namespace qcspec {

const char* convergence_status_name(ConvergenceStatus s) {
  switch (s) {
    case ConvergenceStatus::Converged: return "converged";
    case ConvergenceStatus::Diverged: return "diverged";
    case ConvergenceStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on the
// Legendre recurrence; cached per order.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<double> x(n), w(n);
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(M_PI * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i - 1] = -z;
    x[n - i] = z;
    w[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - i] = w[i - 1];
  }
  return cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first->second;
}

// One axis segment. level: -1 regular, 0..L-1 dyadic ring of coords[owner],
// L core (innermost, candidate for exclusion).
struct Seg {
  double a, b;
  int owner = -1;
  int level = -1;
  int order = 0;
};

struct AxisCoord {
  double u;
  double lam_left = 0.0;
  double lam_right = 0.0;
};

// Dyadic decomposition of [A,B] around the window of each coord; the gaps
// are split uniformly with roughly base_segments pieces across the axis.
std::vector<Seg> decompose_axis(double A, double B, const std::vector<AxisCoord>& coords,
                                int L, int base_segments, int order_regular, int order_ring) {
  std::vector<Seg> segs;
  const double axis_len = B - A;
  double cursor = A;
  auto emit_gap = [&](double a, double b) {
    if (b - a <= 1e-15 * axis_len) return;
    const int pieces = std::max(1, (int)std::ceil((b - a) / axis_len * base_segments));
    for (int i = 0; i < pieces; ++i) {
      segs.push_back({a + (b - a) * i / pieces, a + (b - a) * (i + 1) / pieces, -1, -1,
                      order_regular});
    }
  };
  for (size_t c = 0; c < coords.size(); ++c) {
    const AxisCoord& t = coords[c];
    const double lo = t.u - t.lam_left;
    const double hi = t.u + t.lam_right;
    emit_gap(cursor, lo);
    if (t.lam_left + t.lam_right <= 0.0) continue;
    // core spans both sides of u
    const double scale = std::ldexp(1.0, -L);  // 2^-L
    segs.push_back({t.u - t.lam_left * scale, t.u + t.lam_right * scale, (int)c, L, order_ring});
    for (int j = 0; j < L; ++j) {
      const double s1 = std::ldexp(1.0, -j - 1), s0 = std::ldexp(1.0, -j);
      if (t.lam_left > 0.0) {
        segs.push_back({t.u - t.lam_left * s0, t.u - t.lam_left * s1, (int)c, j, order_ring});
      }
      if (t.lam_right > 0.0) {
        segs.push_back({t.u + t.lam_right * s1, t.u + t.lam_right * s0, (int)c, j, order_ring});
      }
    }
    cursor = hi;
  }
  emit_gap(cursor, B);
  std::sort(segs.begin(), segs.end(), [](const Seg& a, const Seg& b) { return a.a < b.a; });
  return segs;
}

struct TargetRef {
  int c0 = -1;  // index into axis0 coords, -1 = unconstrained
  int c1 = -1;
};

struct ShellAnalysis {
  double tail = 0.0;
  double err = 0.0;
  bool diverged = false;
};

// Ratio test on the shell sums c_0..c_{L-1} (outermost to innermost): a
// sustained ratio >= 0.9 means the core contribution cannot be bounded and
// the integral is reported divergent; otherwise the core is recovered as a
// geometric tail.
ShellAnalysis analyze_shells(const std::vector<double>& c, double reference_scale) {
  ShellAnalysis out;
  const int L = (int)c.size();
  if (L == 0) return out;
  const double tiny = 1e-14 * std::max(1.0, reference_scale);
  int last = L - 1;
  if (std::abs(c[last]) <= tiny) return out;  // shells died out: nothing left under the core

  const int win = std::min(5, L - 1);
  std::vector<double> ratios;
  for (int j = L - 1 - win; j < L - 1; ++j) {
    const double a0 = std::abs(c[j]), a1 = std::abs(c[j + 1]);
    if (a0 > 0.0) ratios.push_back(a1 / a0);
  }
  if (ratios.empty()) return out;
  std::sort(ratios.begin(), ratios.end());
  const double rbar = ratios[ratios.size() / 2];
  if (rbar >= 0.9) {
    out.diverged = true;
    return out;
  }
  double spread = 0.0;
  for (double r : ratios) spread = std::max(spread, std::abs(r - rbar));
  out.tail = c[last] * rbar / (1.0 - rbar);
  out.err = std::abs(out.tail) * std::min(1.0, spread / (1.0 - rbar)) +
            1e-13 * std::abs(out.tail);
  return out;
}

}  // namespace

struct NodeSet::Impl {
  ModelDomain domain;
  double tolerance = 1e-8;
  int levels = 0;       // L
  int n_targets = 0;
  int n_panels = 0;

  // struct-of-arrays node storage; `level` 0 = coarse rule, 1 = fine rule
  std::vector<double> xs, ys, ws;
  std::vector<int32_t> panel;
  std::vector<int8_t> level;

  // per panel: owning target and dyadic ring (target < 0: regular panel)
  std::vector<int32_t> panel_target;
  std::vector<int32_t> panel_ring;

  void add_panel_nodes(double a0, double b0, double a1, double b1, int n0, int n1,
                       int panel_idx, int lvl) {
    const auto& [g0x, g0w] = gauss_legendre(n0);
    const auto& [g1x, g1w] = gauss_legendre(n1);
    const double h0 = 0.5 * (b0 - a0), m0 = 0.5 * (a0 + b0);
    const double h1 = 0.5 * (b1 - a1), m1 = 0.5 * (a1 + b1);
    for (int i = 0; i < n0; ++i) {
      const double u = m0 + h0 * g0x[i];
      for (int j = 0; j < n1; ++j) {
        const double v = m1 + h1 * g1x[j];
        double x, y, w = g0w[i] * g1w[j] * h0 * h1;
        if (domain == ModelDomain::UnitDisc) {
          x = u * std::cos(v);
          y = u * std::sin(v);
          w *= u;  // polar area element
        } else {
          x = u;
          y = v;
        }
        xs.push_back(x);
        ys.push_back(y);
        ws.push_back(w);
        panel.push_back(panel_idx);
        level.push_back((int8_t)lvl);
      }
    }
  }
};

NodeSet::NodeSet() : impl_(new Impl) {}
NodeSet::NodeSet(NodeSet&&) noexcept = default;
NodeSet& NodeSet::operator=(NodeSet&&) noexcept = default;
NodeSet::~NodeSet() = default;

size_t NodeSet::node_count() const { return impl_->xs.size(); }
double NodeSet::tolerance() const { return impl_->tolerance; }

NodeSet NodeSet::build(const QuadratureRule& rule, const std::vector<Point2>& singular) {
  if (rule.radial_order < 2 || rule.angular_order < 4 || rule.annuli < 1) {
    throw Error(ErrorKind::ConfigError, "quadrature orders too small");
  }
  NodeSet ns;
  Impl& im = *ns.impl_;
  im.domain = rule.domain;
  im.tolerance = rule.tolerance;
  const int L = rule.annuli;
  im.levels = L;

  // Axis setup: disc is (r, psi) with weight r, square is (x, y).
  const bool disc = rule.domain == ModelDomain::UnitDisc;
  const double half = kSquareHalfSide;
  double A0 = disc ? 0.0 : -half, B0 = disc ? 1.0 : half;

  struct RawTarget {
    double u0;
    double u1;
    bool has_u1;
  };
  std::vector<RawTarget> raw;
  for (const Point2& s : singular) {
    if (disc) {
      const double r = s.abs();
      if (r > 1.0 + 1e-9) continue;  // outside the closed disc: nothing to refine
      if (r < 1e-12) {
        raw.push_back({0.0, 0.0, false});  // purely radial target
      } else {
        raw.push_back({std::min(r, 1.0), std::atan2(s.y, s.x), true});
      }
    } else {
      if (std::max(std::abs(s.x), std::abs(s.y)) > half + 1e-9) continue;
      raw.push_back({std::clamp(s.x, -half, half), std::clamp(s.y, -half, half), true});
    }
  }

  // Angular axis: center the 2*pi interval on the first angular target so
  // that periodic refinement needs no wrap-around.
  double A1, B1;
  if (disc) {
    double psi0 = 0.0;
    for (const RawTarget& t : raw) {
      if (t.has_u1) {
        psi0 = t.u1;
        break;
      }
    }
    A1 = psi0 - M_PI;
    B1 = psi0 + M_PI;
    for (RawTarget& t : raw) {
      if (t.has_u1) {
        double d = std::remainder(t.u1 - (A1 + M_PI), kTwoPi);
        t.u1 = A1 + M_PI + d;
      }
    }
  } else {
    A1 = -half;
    B1 = half;
  }

  // Collect distinct per-axis coordinates.
  auto collect = [](std::vector<double> vals) {
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               vals.end());
    return vals;
  };
  std::vector<double> coords0_u, coords1_u;
  for (const RawTarget& t : raw) coords0_u.push_back(t.u0);
  for (const RawTarget& t : raw)
    if (t.has_u1) coords1_u.push_back(t.u1);
  coords0_u = collect(coords0_u);
  coords1_u = collect(coords1_u);

  auto find_coord = [](const std::vector<double>& cs, double u) {
    for (size_t i = 0; i < cs.size(); ++i) {
      if (std::abs(cs[i] - u) < 1e-12) return (int)i;
    }
    return -1;
  };

  // Window half-widths: capped by the domain edge, half the gap to the
  // neighbouring coordinate, and a fixed fraction of the axis.
  auto window = [&](const std::vector<double>& cs, double A, double B, double base_cap) {
    std::vector<AxisCoord> out;
    for (size_t i = 0; i < cs.size(); ++i) {
      AxisCoord ac;
      ac.u = cs[i];
      double left = std::min(base_cap, ac.u - A);
      double right = std::min(base_cap, B - ac.u);
      if (i > 0) left = std::min(left, 0.5 * (ac.u - cs[i - 1]));
      if (i + 1 < cs.size()) right = std::min(right, 0.5 * (cs[i + 1] - ac.u));
      ac.lam_left = std::max(left, 0.0);
      ac.lam_right = std::max(right, 0.0);
      out.push_back(ac);
    }
    return out;
  };

  const double cap0 = 0.4 * (B0 - A0);
  std::vector<AxisCoord> coords0 = window(coords0_u, A0, B0, cap0);
  std::vector<AxisCoord> coords1;
  if (disc) {
    // angular window commensurate with the radial one: arc length ~ radius * angle
    std::vector<AxisCoord> pre = window(coords1_u, A1, B1, M_PI);
    for (AxisCoord& ac : pre) {
      double rad_ext = cap0;
      for (const RawTarget& t : raw) {
        if (t.has_u1 && std::abs(t.u1 - ac.u) < 1e-12) {
          const int ci = find_coord(coords0_u, t.u0);
          if (ci >= 0) rad_ext = std::max(coords0[ci].lam_left, coords0[ci].lam_right);
          const double cap = rad_ext / std::max(t.u0, 1e-6);
          ac.lam_left = std::min(ac.lam_left, cap);
          ac.lam_right = std::min(ac.lam_right, cap);
          break;
        }
      }
    }
    coords1 = pre;
  } else {
    coords1 = window(coords1_u, A1, B1, 0.4 * (B1 - A1));
  }

  std::vector<TargetRef> targets;
  for (const RawTarget& t : raw) {
    TargetRef tr;
    tr.c0 = find_coord(coords0_u, t.u0);
    tr.c1 = t.has_u1 ? find_coord(coords1_u, t.u1) : -1;
    targets.push_back(tr);
  }
  im.n_targets = (int)targets.size();

  // The square uses radial_order on both Cartesian axes; angular_order is a
  // disc-specific knob.
  const int ring_order0 = std::max(8, rule.radial_order / 3);
  const int ring_order1 = disc ? std::max(8, rule.angular_order / 6) : ring_order0;
  const int order1 = disc ? rule.angular_order : rule.radial_order;
  const int base0 = disc ? rule.annuli : std::max(2, rule.annuli / 4);
  const int base1 = disc ? 1 : std::max(2, rule.annuli / 4);

  std::vector<Seg> segs0 =
      decompose_axis(A0, B0, coords0, L, base0, rule.radial_order, ring_order0);
  std::vector<Seg> segs1 = decompose_axis(A1, B1, coords1, L, base1, order1, ring_order1);

  auto fine_order = [](int n) { return n + std::max(4, n / 2); };

  for (const Seg& s0 : segs0) {
    for (const Seg& s1 : segs1) {
      int owner = -1, ring = -1;
      bool core = false;
      for (size_t t = 0; t < targets.size(); ++t) {
        const TargetRef& tr = targets[t];
        int lvl0 = tr.c0 < 0 ? INT32_MAX : (s0.owner == tr.c0 ? s0.level : -1);
        int lvl1 = tr.c1 < 0 ? INT32_MAX : (s1.owner == tr.c1 ? s1.level : -1);
        if (lvl0 < 0 || lvl1 < 0) continue;  // outside this target's window
        const int lvl = std::min(lvl0, lvl1);
        if (lvl >= L) {
          core = true;
        } else if (owner < 0) {
          owner = (int)t;
          ring = lvl;
        }
      }
      if (core) continue;  // excluded neighbourhood, recovered by extrapolation
      const int pidx = im.n_panels++;
      im.panel_target.push_back(owner);
      im.panel_ring.push_back(ring);
      im.add_panel_nodes(s0.a, s0.b, s1.a, s1.b, s0.order, s1.order, pidx, 0);
      im.add_panel_nodes(s0.a, s0.b, s1.a, s1.b, fine_order(s0.order), fine_order(s1.order),
                         pidx, 1);
    }
  }
  return ns;
}

namespace {

IntegralResult reduce_panels(const NodeSet::Impl& im, const std::vector<double>& pc,
                             const std::vector<double>& pf, size_t nonfinite,
                             bool coarse_only) {
  const std::vector<double>& pv = coarse_only ? pc : pf;
  double value = 0.0, err = 0.0;
  for (int p = 0; p < im.n_panels; ++p) {
    value += pv[p];
    if (!coarse_only) err += std::abs(pf[p] - pc[p]);
  }

  // shell sums per target, outermost ring first
  bool any_diverged = false;
  for (int t = 0; t < im.n_targets; ++t) {
    std::vector<double> shells(im.levels, 0.0);
    bool seen = false;
    for (int p = 0; p < im.n_panels; ++p) {
      if (im.panel_target[p] == t) {
        shells[im.panel_ring[p]] += pv[p];
        seen = true;
      }
    }
    if (!seen) continue;
    const ShellAnalysis sa = analyze_shells(shells, std::abs(value));
    if (sa.diverged) {
      any_diverged = true;
      continue;
    }
    value += sa.tail;
    err += sa.err;
  }

  IntegralResult out;
  out.value = value;
  out.error_estimate = err;
  if (any_diverged) {
    out.status = ConvergenceStatus::Diverged;
  } else if (nonfinite > 0) {
    out.status = ConvergenceStatus::Inconclusive;
  } else if (coarse_only || err <= im.tolerance * std::max(1.0, std::abs(value))) {
    out.status = ConvergenceStatus::Converged;
  } else {
    out.status = ConvergenceStatus::Inconclusive;
  }
  return out;
}

}  // namespace

IntegralResult NodeSet::integrate(const Integrand& f) const {
  const Impl& im = *impl_;
  std::vector<double> pc(im.n_panels, 0.0), pf(im.n_panels, 0.0);
  size_t nonfinite = 0;
  const size_t n = im.xs.size();
  for (size_t i = 0; i < n; ++i) {
    const double v = f({im.xs[i], im.ys[i]});
    if (!std::isfinite(v)) {
      ++nonfinite;
      continue;
    }
    (im.level[i] ? pf : pc)[im.panel[i]] += im.ws[i] * v;
  }
  return reduce_panels(im, pc, pf, nonfinite, false);
}

std::vector<double> NodeSet::log_samples(const Integrand& f_base) const {
  const Impl& im = *impl_;
  std::vector<double> logs(im.xs.size());
  for (size_t i = 0; i < logs.size(); ++i) {
    const double v = f_base({im.xs[i], im.ys[i]});
    logs[i] = v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
  }
  return logs;
}

IntegralResult NodeSet::integrate_power(const std::vector<double>& logs, double exponent,
                                        bool coarse_only) const {
  const Impl& im = *impl_;
  std::vector<double> pc(im.n_panels, 0.0), pf(im.n_panels, 0.0);
  size_t nonfinite = 0;
  const size_t n = im.xs.size();
  for (size_t i = 0; i < n; ++i) {
    if (coarse_only && im.level[i]) continue;
    double v;
    if (exponent == 0.0) {
      v = 1.0;
    } else {
      v = std::exp(exponent * logs[i]);
    }
    if (!std::isfinite(v)) {
      ++nonfinite;
      continue;
    }
    (im.level[i] ? pf : pc)[im.panel[i]] += im.ws[i] * v;
  }
  return reduce_panels(im, pc, pf, nonfinite, coarse_only);
}

IntegralResult integrate(const Integrand& f, const QuadratureRule& rule,
                         const std::vector<Point2>& singular) {
  return NodeSet::build(rule, singular).integrate(f);
}

IntegralResult power_exponent_probe(const Integrand& f_base, double exponent,
                                    const std::vector<Point2>& singular,
                                    const QuadratureRule& rule) {
  NodeSet ns = NodeSet::build(rule, singular);
  return ns.integrate_power(ns.log_samples(f_base), exponent);
}

}  // namespace qcspec
