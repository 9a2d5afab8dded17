#include "hmcf/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "hmcf/error.hpp"
#include "fd.hpp"

namespace hmcf {

PressureField pressure(const HeightField& field, double p) {
  if (!(p > 0.0 && p < 1.0))
    fail(ErrorCode::InvalidArgument, "pressure exponent must satisfy 0 < p < 1");
  PressureField g{field.grid(), {}, p};
  g.values.reserve(field.values().size());
  for (double h : field.values()) g.values.push_back(h > 0.0 ? std::pow(h, p) : 0.0);
  return g;
}

namespace {

double catmull_rom(double p0, double p1, double p2, double p3, double s) {
  return 0.5 * (2.0 * p1 + (-p0 + p2) * s + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * s * s +
                (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * s * s * s);
}

// Bicubic interpolant of g; nullopt if the 4x4 support leaves the grid or
// touches the zero set.
std::optional<double> interpolate(const PressureField& g, double x, double y) {
  const double fx = (x - g.grid.x0) / g.grid.dx;
  const double fy = (y - g.grid.y0) / g.grid.dy;
  const int i = static_cast<int>(std::floor(fx));
  const int j = static_cast<int>(std::floor(fy));
  if (i < 1 || j < 1 || i + 2 >= g.grid.nx || j + 2 >= g.grid.ny) return std::nullopt;
  double col[4];
  for (int a = 0; a < 4; ++a) {
    double row[4];
    for (int b = 0; b < 4; ++b) {
      const double v = g(i - 1 + a, j - 1 + b);
      if (!(v > 0.0)) return std::nullopt;
      row[b] = v;
    }
    col[a] = catmull_rom(row[0], row[1], row[2], row[3], fy - j);
  }
  return catmull_rom(col[0], col[1], col[2], col[3], fx - i);
}

}  // namespace

StarMargins check_star(const PressureField& g, const Curve& interface,
                       double lambda) {
  const double dx = g.grid.dx;
  const double dy = g.grid.dy;
  const std::size_t n = interface.size();
  for (int attempt = 0; attempt < 8; ++attempt) {
    const double offset = (3.0 + attempt) * std::max(dx, dy);
    StarMargins m;
    m.lambda = lambda;
    m.offset = offset;
    m.min_gradient = std::numeric_limits<double>::infinity();
    m.min_tangential = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) {
      const Vec2& a = interface[(k + n - 1) % n];
      const Vec2& b = interface[(k + 1) % n];
      const double cx = b[0] - a[0], cy = b[1] - a[1];
      const double len = std::hypot(cx, cy);
      // Outward normal of a counterclockwise curve: chord rotated clockwise.
      const double px = interface[k][0] + offset * cy / len;
      const double py = interface[k][1] - offset * cx / len;
      auto G = [&](double x, double y) { return interpolate(g, x, y); };
      const auto g0 = G(px, py);
      const auto gxp = G(px + dx, py), gxm = G(px - dx, py);
      const auto gyp = G(px, py + dy), gym = G(px, py - dy);
      if (!g0 || !gxp || !gxm || !gyp || !gym) {
        ok = false;
        break;
      }
      const double gx = (*gxp - *gxm) / (2.0 * dx);
      const double gy = (*gyp - *gym) / (2.0 * dy);
      const double grad = std::hypot(gx, gy);
      if (!(grad > 0.0)) {
        m.min_gradient = 0.0;
        m.min_tangential = std::min(m.min_tangential, 0.0);
        ++m.samples;
        continue;
      }
      const double tx = -gy / grad, ty = gx / grad;
      const double step = 2.0 * dx;
      const auto gtp = G(px + step * tx, py + step * ty);
      const auto gtm = G(px - step * tx, py - step * ty);
      if (!gtp || !gtm) {
        ok = false;
        break;
      }
      const double gtt = (*gtp - 2.0 * *g0 + *gtm) / (step * step);
      m.min_gradient = std::min(m.min_gradient, grad);
      m.min_tangential = std::min(m.min_tangential, gtt);
      ++m.samples;
    }
    if (!ok) continue;
    m.passed = m.min_gradient >= lambda && m.min_tangential >= lambda;
    return m;
  }
  fail(ErrorCode::Sampling,
       "no sampling offset keeps the (star) stencils inside the positive set");
}

ZYSamples sample_zy(double z0, double dz, int nz, double y0, double dy, int ny,
                    const std::function<double(double, double)>& f) {
  ZYSamples s{z0, dz, y0, dy, nz, ny, {}};
  s.values.resize(static_cast<std::size_t>(nz) * ny);
  for (int i = 0; i < nz; ++i)
    for (int j = 0; j < ny; ++j)
      s.values[static_cast<std::size_t>(i) * ny + j] = f(s.z(i), s.y(j));
  return s;
}

double check_star_star(const ZYSamples& f, double p) {
  if (f.nz < 3 || f.ny < 3)
    fail(ErrorCode::Stencil, "check_star_star needs at least 3x3 samples");
  if (!(f.z0 > 0.0)) fail(ErrorCode::Domain, "check_star_star needs z > 0 samples");
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < f.nz; ++i) {
    const double z = f.z(i);
    for (int j = 1; j + 1 < f.ny; ++j) {
      const double fzz = (f(i + 1, j) - 2.0 * f(i, j) + f(i - 1, j)) / (f.dz * f.dz);
      const double fyy = (f(i, j + 1) - 2.0 * f(i, j) + f(i, j - 1)) / (f.dy * f.dy);
      const double fzy = (f(i + 1, j + 1) - f(i + 1, j - 1) - f(i - 1, j + 1) +
                          f(i - 1, j - 1)) /
                         (4.0 * f.dz * f.dy);
      Sym2 m{-std::pow(z, 2.0 - p) * fzz, std::pow(z, 1.0 - p) * fzy, -fyy};
      margin = std::min(margin, m.eigenvalues()[0]);
    }
  }
  return margin;
}

HalfSpaceField sample_half_space(std::vector<double> z, std::vector<double> y,
                                 std::vector<double> t,
                                 const std::function<double(double, double, double)>& f) {
  HalfSpaceField h{std::move(z), std::move(y), std::move(t), {}};
  h.values.resize(h.nz() * h.ny() * h.nt());
  for (std::size_t k = 0; k < h.nt(); ++k)
    for (std::size_t i = 0; i < h.nz(); ++i)
      for (std::size_t j = 0; j < h.ny(); ++j) h.at(k, i, j) = f(h.z[i], h.y[j], h.t[k]);
  return h;
}

LogField log_decompose(const HalfSpaceField& field, double p, double w_min,
                       double w_max) {
  if (field.z.empty() || field.z[0] != 0.0)
    fail(ErrorCode::Domain, "log_decompose needs the boundary row z = 0 first");
  if (!(w_max >= w_min)) fail(ErrorCode::Window, "empty w window");
  LogField out;
  out.p = p;
  out.y = field.y;
  out.t = field.t;
  std::vector<std::size_t> rows;
  for (std::size_t i = 1; i < field.nz(); ++i) {
    if (!(field.z[i] > field.z[i - 1]))
      fail(ErrorCode::InvalidArgument, "z grid must be strictly increasing");
    const double w = std::log(field.z[i]);
    if (w >= w_min && w <= w_max) {
      rows.push_back(i);
      out.w.push_back(w);
    }
  }
  if (rows.empty()) fail(ErrorCode::Window, "no z row falls in the requested w window");
  out.boundary.resize(field.nt() * field.ny());
  out.tilde.resize(field.nt() * rows.size() * field.ny());
  for (std::size_t k = 0; k < field.nt(); ++k) {
    for (std::size_t j = 0; j < field.ny(); ++j) {
      const double f0 = field.at(k, 0, j);
      out.boundary[k * field.ny() + j] = f0;
      for (std::size_t r = 0; r < rows.size(); ++r)
        out.tilde[(k * rows.size() + r) * field.ny() + j] =
            std::exp(-p * out.w[r]) * (field.at(k, rows[r], j) - f0);
    }
  }
  return out;
}

LogField sample_log_field(double p, std::vector<double> w, std::vector<double> y,
                          std::vector<double> t,
                          const std::function<double(double, double)>& boundary,
                          const std::function<double(double, double, double)>& tilde) {
  LogField f{p, std::move(w), std::move(y), std::move(t), {}, {}};
  f.boundary.resize(f.nt() * f.ny());
  f.tilde.resize(f.nt() * f.nw() * f.ny());
  for (std::size_t k = 0; k < f.nt(); ++k)
    for (std::size_t j = 0; j < f.ny(); ++j) {
      f.boundary[k * f.ny() + j] = boundary(f.y[j], f.t[k]);
      for (std::size_t i = 0; i < f.nw(); ++i)
        f.tilde[(k * f.nw() + i) * f.ny() + j] = tilde(f.w[i], f.y[j], f.t[k]);
    }
  return f;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "linspace needs n >= 2");
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k)
    v[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  v[n - 1] = hi;
  return v;
}

WWindow default_w_window(const HalfSpaceField& field, double flat_tol) {
  if (field.z.empty()) fail(ErrorCode::Window, "empty z grid");
  return {std::log(flat_tol), std::log(field.z.back())};
}

double hyperbolic_distance(const ZY& a, const ZY& b) {
  if (!(a.z > 0.0) || !(b.z > 0.0))
    fail(ErrorCode::Domain, "hyperbolic distance needs z > 0");
  const double dy = b.y - a.y;
  if (a.z <= 1.0 && b.z <= 1.0) return std::hypot(std::log(a.z) - std::log(b.z), dy);
  if (a.z >= 1.0 && b.z >= 1.0) return std::hypot(a.z - b.z, dy);
  const ZY& lo = a.z < b.z ? a : b;
  const ZY& hi = a.z < b.z ? b : a;
  const double leg_h = -std::log(lo.z);
  const double leg_e = hi.z - 1.0;
  const double theta = leg_h / (leg_h + leg_e);
  return std::hypot(leg_h, theta * dy) + std::hypot(leg_e, (1.0 - theta) * dy);
}

double parabolic_distance(const ZYT& a, const ZYT& b) {
  return hyperbolic_distance({a.z, a.y}, {b.z, b.y}) + std::sqrt(std::abs(a.t - b.t));
}

IndexBox full_box(const LogField& f) {
  return {0, f.nw() - 1, 0, f.ny() - 1, 0, f.nt() - 1, true};
}

namespace {

bool uniform(const std::vector<double>& v) {
  if (v.size() < 2) return true;
  const double h = v[1] - v[0];
  for (std::size_t k = 2; k < v.size(); ++k)
    if (std::abs((v[k] - v[k - 1]) - h) > 1e-9 * std::abs(h)) return false;
  return true;
}

// A scalar function on either the boundary grid (y, t) or the tilde grid
// (w, y, t), with flags for which norm parts it contributes to.
struct Component {
  std::vector<double> values;
  bool sup = true;
  bool semi = true;
  double max_abs = 0.0;
  double max_ratio = 0.0;
};

template <class Dist>
long sample_pairs(std::vector<Component*>& comps, std::size_t nt, std::size_t na,
                  std::size_t nb, const IndexBox& box, bool tilde_grid,
                  const NormOptions& opts, double alpha, std::uint64_t seed,
                  Dist dist) {
  // Index triple (kt, ia, ib); on the boundary grid na == 1 and ia == 0.
  const std::size_t a_lo = tilde_grid ? box.w_lo : 0, a_hi = tilde_grid ? box.w_hi : 0;
  auto inside = [&](std::size_t k, std::size_t a, std::size_t b) {
    return k >= box.t_lo && k <= box.t_hi && a >= a_lo && a <= a_hi && b >= box.y_lo &&
           b <= box.y_hi;
  };
  long count = 0;
  auto visit = [&](std::size_t k1, std::size_t a1, std::size_t b1, std::size_t k2,
                   std::size_t a2, std::size_t b2) {
    const double d = dist(k1, a1, b1, k2, a2, b2);
    if (!(d > 0.0)) return;
    ++count;
    const double scale = std::pow(d, alpha);
    const std::size_t i1 = (k1 * na + a1) * nb + b1;
    const std::size_t i2 = (k2 * na + a2) * nb + b2;
    for (Component* c : comps) {
      if (!c->semi) continue;
      const double r = std::abs(c->values[i1] - c->values[i2]) / scale;
      if (r > c->max_ratio) c->max_ratio = r;
    }
  };

  const int R = opts.local_radius;
  const int ra = tilde_grid ? R : 0;
  const int rt = nt > 1 ? R : 0;
  for (std::size_t k = box.t_lo; k <= box.t_hi; ++k)
    for (std::size_t a = a_lo; a <= a_hi; ++a)
      for (std::size_t b = box.y_lo; b <= box.y_hi; ++b)
        for (int dk = 0; dk <= rt; ++dk)
          for (int da = -ra; da <= ra; ++da)
            for (int db = -R; db <= R; ++db) {
              // lexicographically positive offsets only
              if (dk == 0 && (da < 0 || (da == 0 && db <= 0))) continue;
              const long k2 = static_cast<long>(k) + dk;
              const long a2 = static_cast<long>(a) + da;
              const long b2 = static_cast<long>(b) + db;
              if (k2 < 0 || a2 < 0 || b2 < 0) continue;
              if (!inside(k2, a2, b2)) continue;
              visit(k, a, b, k2, a2, b2);
            }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pt(0, nt - 1), pa(0, na - 1), pb(0, nb - 1);
  for (long r = 0; r < opts.random_pairs; ++r) {
    const std::size_t k1 = pt(rng), a1 = pa(rng), b1 = pb(rng);
    const std::size_t k2 = pt(rng), a2 = pa(rng), b2 = pb(rng);
    if (inside(k1, a1, b1) && inside(k2, a2, b2)) visit(k1, a1, b1, k2, a2, b2);
  }
  return count;
}

void sup_over_box(Component& c, std::size_t, std::size_t na, std::size_t nb,
                  const IndexBox& box, bool tilde_grid) {
  const std::size_t a_lo = tilde_grid ? box.w_lo : 0, a_hi = tilde_grid ? box.w_hi : 0;
  for (std::size_t k = box.t_lo; k <= box.t_hi; ++k)
    for (std::size_t a = a_lo; a <= a_hi; ++a)
      for (std::size_t b = box.y_lo; b <= box.y_hi; ++b)
        c.max_abs = std::max(c.max_abs, std::abs(c.values[(k * na + a) * nb + b]));
}

}  // namespace

NormReport holder_norm(const LogField& f, double alpha, NormMode mode,
                       const NormOptions& opts) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    fail(ErrorCode::InvalidArgument, "alpha must lie in (0, 1]");
  const std::size_t nt = f.nt(), nw = f.nw(), ny = f.ny();
  if (nt == 0 || nw == 0 || ny == 0) fail(ErrorCode::Sampling, "empty field");
  const IndexBox box = opts.window.value_or(full_box(f));
  if (box.w_hi >= nw || box.y_hi >= ny || box.t_hi >= nt || box.w_lo > box.w_hi ||
      box.y_lo > box.y_hi || box.t_lo > box.t_hi)
    fail(ErrorCode::Window, "norm window outside the field grid");

  std::vector<Component> bdry;   // on (t, y), na = 1
  std::vector<Component> tilde;  // on (t, w, y)
  const double p = f.p;

  switch (mode) {
    case NormMode::C0p:
      bdry.push_back({f.boundary, true, false});
      tilde.push_back({f.tilde, true, false});
      break;
    case NormMode::CAlphaP:
      bdry.push_back({f.boundary, true, true});
      tilde.push_back({f.tilde, true, true});
      break;
    case NormMode::C2AlphaP: {
      if (!uniform(f.w) || !uniform(f.y) || (nt >= 3 && !uniform(f.t)))
        fail(ErrorCode::InvalidArgument, "C2AlphaP norm needs uniform w, y, t grids");
      const double hw = f.w[1] - f.w[0];
      const double hy = f.y[1] - f.y[0];
      const auto b_y = detail::axis_derivative(f.boundary, nt, 1, ny, 2, hy, 1);
      const auto b_yy = detail::axis_derivative(f.boundary, nt, 1, ny, 2, hy, 2);
      const auto t_w = detail::axis_derivative(f.tilde, nt, nw, ny, 1, hw, 1);
      const auto t_ww = detail::axis_derivative(f.tilde, nt, nw, ny, 1, hw, 2);
      const auto t_y = detail::axis_derivative(f.tilde, nt, nw, ny, 2, hy, 1);
      const auto t_yy = detail::axis_derivative(f.tilde, nt, nw, ny, 2, hy, 2);
      const auto t_wy = detail::axis_derivative(t_y, nt, nw, ny, 1, hw, 1);
      const std::size_t n = f.tilde.size();
      std::vector<double> zf_z(n), z2f_zz(n), zf_zy(n);
      for (std::size_t k = 0; k < n; ++k) {
        zf_z[k] = p * f.tilde[k] + t_w[k];
        z2f_zz[k] = t_ww[k] + (2.0 * p - 1.0) * t_w[k] + (p * p - p) * f.tilde[k];
        zf_zy[k] = p * t_y[k] + t_wy[k];
      }
      // C^{2+alpha} of the boundary trace.
      bdry.push_back({f.boundary, true, false});
      bdry.push_back({b_y, true, false});
      bdry.push_back({b_yy, true, true});
      // Weighted derivatives f, z f_z, f_y, z^2 f_zz, z f_zy, f_yy: the traces of
      // z f_z, z^2 f_zz and z f_zy vanish.
      bdry.push_back({f.boundary, true, true});
      bdry.push_back({b_y, true, true});
      bdry.push_back({b_yy, true, true});
      const std::vector<double>* weighted[] = {&f.tilde, &zf_z,  &t_y,
                                               &z2f_zz,  &zf_zy, &t_yy};
      for (const auto* v : weighted)
        tilde.push_back({*v, true, true});
      if (nt >= 3) {
        const double ht = f.t[1] - f.t[0];
        const auto b_t = detail::axis_derivative(f.boundary, nt, 1, ny, 0, ht, 1);
        const auto t_t = detail::axis_derivative(f.tilde, nt, nw, ny, 0, ht, 1);
        bdry.push_back({b_t, true, true});
        bdry.push_back({b_t, true, true});
        tilde.push_back({t_t, true, true});
      }
      break;
    }
  }

  const bool any_semi = mode != NormMode::C0p;
  long pairs = 0;
  {
    std::vector<Component*> ptrs;
    for (auto& c : tilde) ptrs.push_back(&c);
    for (auto& c : tilde) sup_over_box(c, nt, nw, ny, box, true);
    if (any_semi)
      pairs += sample_pairs(
          ptrs, nt, nw, ny, box, true, opts, alpha, opts.seed,
          [&](std::size_t k1, std::size_t a1, std::size_t b1, std::size_t k2,
              std::size_t a2, std::size_t b2) {
            return parabolic_distance({std::exp(f.w[a1]), f.y[b1], f.t[k1]},
                                      {std::exp(f.w[a2]), f.y[b2], f.t[k2]});
          });
  }
  if (box.includes_boundary) {
    std::vector<Component*> ptrs;
    for (auto& c : bdry) ptrs.push_back(&c);
    for (auto& c : bdry) sup_over_box(c, nt, 1, ny, box, false);
    if (any_semi)
      pairs += sample_pairs(
          ptrs, nt, 1, ny, box, false, opts, alpha, opts.seed + 1,
          [&](std::size_t k1, std::size_t, std::size_t b1, std::size_t k2, std::size_t,
              std::size_t b2) {
            return std::abs(f.y[b1] - f.y[b2]) + std::sqrt(std::abs(f.t[k1] - f.t[k2]));
          });
  } else {
    bdry.clear();
  }
  if (any_semi && pairs == 0)
    fail(ErrorCode::Sampling, "pair sample contains no two distinct points");

  NormReport rep;
  rep.alpha = alpha;
  rep.pairs_sampled = pairs;
  for (const auto* group : {&bdry, &tilde})
    for (const auto& c : *group) {
      if (c.sup) rep.c0 += c.max_abs;
      if (c.semi) rep.holder_seminorm += c.max_ratio;
    }
  rep.total = rep.c0 + rep.holder_seminorm;
  return rep;
}

IndexBox schauder_box(const LogField& f, const ZYT& P, double r) {
  if (!(r > 0.0 && r <= 1.0)) fail(ErrorCode::InvalidArgument, "box radius must lie in (0, 1]");
  const double z_hi = P.z + std::exp(r);
  const double z_lo = P.z - std::exp(r);
  const double eps = 1e-12;
  auto range = [&](const std::vector<double>& axis, double lo, double hi, std::size_t& a,
                   std::size_t& b) {
    bool found = false;
    for (std::size_t k = 0; k < axis.size(); ++k) {
      if (axis[k] < lo - eps || axis[k] > hi + eps) continue;
      if (!found) a = k;
      b = k;
      found = true;
    }
    return found;
  };
  IndexBox box;
  const double w_lo = z_lo > 0.0 ? std::log(z_lo) : -std::numeric_limits<double>::infinity();
  const bool ok = range(f.w, w_lo, std::log(z_hi), box.w_lo, box.w_hi) &&
                  range(f.y, P.y - r, P.y + r, box.y_lo, box.y_hi) &&
                  range(f.t, P.t - r * r, P.t, box.t_lo, box.t_hi);
  if (!ok) fail(ErrorCode::Window, "Schauder box contains no grid node");
  box.includes_boundary = z_lo <= 0.0;
  return box;
}

}  // namespace hmcf
