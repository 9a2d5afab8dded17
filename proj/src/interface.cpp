#include "hmcf/interface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "hmcf/error.hpp"

namespace hmcf {

namespace {

Vec2 sub(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
double cross(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }
double norm(const Vec2& a) { return std::hypot(a[0], a[1]); }

bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1,
                        const Vec2& q2) {
  const double d1 = cross(sub(p2, p1), sub(q1, p1));
  const double d2 = cross(sub(p2, p1), sub(q2, p1));
  const double d3 = cross(sub(q2, q1), sub(p1, q1));
  const double d4 = cross(sub(q2, q1), sub(p2, q1));
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 &&
         d2 != 0 && d3 != 0 && d4 != 0;
}

bool is_simple(const std::vector<Vec2>& pts) {
  const std::size_t n = pts.size();
  for (std::size_t a = 0; a < n; ++a) {
    const Vec2& p1 = pts[a];
    const Vec2& p2 = pts[(a + 1) % n];
    for (std::size_t b = a + 2; b < n; ++b) {
      if (a == 0 && b == n - 1) continue;  // adjacent through the closure
      if (segments_intersect(p1, p2, pts[b], pts[(b + 1) % n])) return false;
    }
  }
  return true;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = sub(b, a);
  const double len2 = ab[0] * ab[0] + ab[1] * ab[1];
  double t = len2 > 0.0 ? ((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2
                        : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(sub(p, {a[0] + t * ab[0], a[1] + t * ab[1]}));
}

}  // namespace

double polygon_signed_area(const std::vector<Vec2>& pts) {
  double a = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k)
    a += cross(pts[k], pts[(k + 1) % pts.size()]);
  return 0.5 * a;
}

Curve::Curve(std::vector<Vec2> points) : points_(std::move(points)) {
  if (points_.size() < 8)
    fail(ErrorCode::InvalidArgument, "curve needs at least 8 points");
  for (std::size_t k = 0; k < points_.size(); ++k) {
    const Vec2& a = points_[k];
    const Vec2& b = points_[(k + 1) % points_.size()];
    if (a == b)
      fail(ErrorCode::InvalidArgument, "consecutive curve points coincide");
  }
  if (!(polygon_signed_area(points_) > 0.0))
    fail(ErrorCode::InvalidArgument, "curve must be counterclockwise");
  if (!is_simple(points_))
    fail(ErrorCode::InvalidArgument, "curve self-intersects");
}

Curve Curve::circle(double r, int n, Vec2 center) {
  std::vector<Vec2> pts(n);
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * std::numbers::pi * k / n;
    pts[k] = {center[0] + r * std::cos(th), center[1] + r * std::sin(th)};
  }
  return Curve(std::move(pts));
}

Curve Curve::ellipse(double a, double b, int n) {
  std::vector<Vec2> pts(n);
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * std::numbers::pi * k / n;
    pts[k] = {a * std::cos(th), b * std::sin(th)};
  }
  return Curve(std::move(pts));
}

double Curve::signed_area() const { return polygon_signed_area(points_); }

double Curve::perimeter() const {
  double len = 0.0;
  for (std::size_t k = 0; k < size(); ++k)
    len += norm(sub(points_[(k + 1) % size()], points_[k]));
  return len;
}

double Curve::min_segment() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < size(); ++k)
    m = std::min(m, norm(sub(points_[(k + 1) % size()], points_[k])));
  return m;
}

Vec2 Curve::centroid() const {
  double cx = 0.0, cy = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    const Vec2& a = points_[k];
    const Vec2& b = points_[(k + 1) % size()];
    const double c = cross(a, b);
    cx += (a[0] + b[0]) * c;
    cy += (a[1] + b[1]) * c;
  }
  const double a6 = 6.0 * signed_area();
  return {cx / a6, cy / a6};
}

double Curve::mean_radius() const {
  const Vec2 c = centroid();
  double s = 0.0;
  for (const auto& p : points_) s += norm(sub(p, c));
  return s / static_cast<double>(size());
}

double Curve::radius_spread() const {
  const Vec2 c = centroid();
  const double mean = mean_radius();
  double m = 0.0;
  for (const auto& p : points_) m = std::max(m, std::abs(norm(sub(p, c)) - mean));
  return m;
}

std::optional<Curve> extract_interface(const HeightField& f, double level) {
  if (!(level > 0.0)) fail(ErrorCode::InvalidArgument, "level must be > 0");
  const int nx = f.nx();
  const int ny = f.ny();
  auto inside = [&](int i, int j) { return f(i, j) <= level; };

  // Crossing points are keyed by the grid edge they sit on:
  // key = 2 * (i * ny + j) + dir, dir 0 = edge to (i+1, j), 1 = edge to (i, j+1).
  auto edge_key = [&](int i, int j, int dir) { return 2L * (i * ny + j) + dir; };
  std::map<long, Vec2> crossing;
  std::map<long, std::vector<long>> links;

  auto crossing_point = [&](int i, int j, int dir) {
    const long key = edge_key(i, j, dir);
    if (!crossing.count(key)) {
      const int i2 = dir == 0 ? i + 1 : i;
      const int j2 = dir == 0 ? j : j + 1;
      const double ha = f(i, j);
      const double hb = f(i2, j2);
      const double t = (level - ha) / (hb - ha);
      const auto& g = f.grid();
      crossing[key] = {g.x(i) + t * (g.x(i2) - g.x(i)),
                       g.y(j) + t * (g.y(j2) - g.y(j))};
    }
    return key;
  };

  bool any_inside = false;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      if (!inside(i, j)) continue;
      any_inside = true;
      if (i == 0 || j == 0 || i == nx - 1 || j == ny - 1)
        fail(ErrorCode::OpenInterface,
             "flat set reaches the domain boundary; contour does not close");
    }
  if (!any_inside) return std::nullopt;

  for (int i = 0; i + 1 < nx; ++i) {
    for (int j = 0; j + 1 < ny; ++j) {
      // Corners counterclockwise: (i,j), (i+1,j), (i+1,j+1), (i,j+1).
      const bool c0 = inside(i, j), c1 = inside(i + 1, j),
                 c2 = inside(i + 1, j + 1), c3 = inside(i, j + 1);
      const int mask = c0 | (c1 << 1) | (c2 << 2) | (c3 << 3);
      if (mask == 0 || mask == 15) continue;
      // Cell edges: e0 bottom, e1 right, e2 top, e3 left.
      auto key_of = [&](int e) {
        switch (e) {
          case 0: return crossing_point(i, j, 0);
          case 1: return crossing_point(i + 1, j, 1);
          case 2: return crossing_point(i, j + 1, 0);
          default: return crossing_point(i, j, 1);
        }
      };
      const bool corner_in[4] = {c0, c1, c2, c3};
      std::vector<std::pair<int, int>> segs;
      if (mask == 5 || mask == 10) {
        const double centre =
            0.25 * (f(i, j) + f(i + 1, j) + f(i + 1, j + 1) + f(i, j + 1));
        const bool centre_in = centre <= level;
        if ((mask == 5) == centre_in) {
          // inside corners joined through the centre
          segs = {{0, 1}, {2, 3}};
        } else {
          segs = {{3, 0}, {1, 2}};
        }
      } else {
        std::vector<int> edges;
        for (int e = 0; e < 4; ++e)
          if (corner_in[e] != corner_in[(e + 1) % 4]) edges.push_back(e);
        segs = {{edges[0], edges[1]}};
      }
      for (auto [ea, eb] : segs) {
        const long ka = key_of(ea);
        const long kb = key_of(eb);
        links[ka].push_back(kb);
        links[kb].push_back(ka);
      }
    }
  }

  std::vector<std::vector<Vec2>> loops;
  std::map<long, bool> visited;
  for (const auto& [start, nbrs] : links) {
    if (visited[start]) continue;
    if (nbrs.size() != 2)
      fail(ErrorCode::OpenInterface, "contour is not a closed curve");
    std::vector<Vec2> loop;
    long prev = -1, cur = start;
    while (!visited[cur]) {
      visited[cur] = true;
      const Vec2& p = crossing[cur];
      if (loop.empty() || norm(sub(p, loop.back())) > 1e-14) loop.push_back(p);
      const auto& nb = links[cur];
      const long next = nb[0] != prev ? nb[0] : nb[1];
      prev = cur;
      cur = next;
    }
    if (loop.size() > 1 && norm(sub(loop.front(), loop.back())) <= 1e-14)
      loop.pop_back();
    loops.push_back(std::move(loop));
  }
  if (loops.size() > 1)
    fail(ErrorCode::MultipleInterfaces,
         "level set has " + std::to_string(loops.size()) + " components");
  auto& pts = loops.front();
  if (pts.size() < 8) return std::nullopt;
  if (polygon_signed_area(pts) < 0.0) std::reverse(pts.begin(), pts.end());
  return Curve(std::move(pts));
}

double edge_level(const HeightField& f) { return 9.0 * f.dx() * f.dx(); }

std::optional<double> flat_radius_estimate(const HeightField& f, double level) {
  const double l = level > 0.0 ? level : edge_level(f);
  const auto inner = extract_interface(f, l);
  if (!inner) return std::nullopt;
  const auto outer = extract_interface(f, 4.0 * l);
  const double r1 = std::sqrt(inner->signed_area() / std::numbers::pi);
  if (!outer) return r1;
  const double r2 = std::sqrt(outer->signed_area() / std::numbers::pi);
  return std::max(2.0 * r1 - r2, 0.0);
}

std::vector<double> discrete_curvature(const Curve& c) {
  const std::size_t n = c.size();
  std::vector<double> k(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = c[(i + n - 1) % n];
    const Vec2& b = c[i];
    const Vec2& d = c[(i + 1) % n];
    const double denom = norm(sub(b, a)) * norm(sub(d, b)) * norm(sub(d, a));
    k[i] = 2.0 * cross(sub(b, a), sub(d, b)) / denom;
  }
  return k;
}

CsfStepResult csf_step(const Curve& c, double dt) {
  const double seg = c.min_segment();
  if (!(dt > 0.0) || dt > 0.25 * seg * seg * (1.0 + 1e-12))
    fail(ErrorCode::InvalidArgument,
         "csf_step requires 0 < dt <= 0.25 * min_segment^2");
  const std::size_t n = c.size();
  const auto k = discrete_curvature(c);
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = c[(i + n - 1) % n];
    const Vec2& d = c[(i + 1) % n];
    const Vec2 chord = sub(d, a);
    const double len = norm(chord);
    const Vec2 inward = {-chord[1] / len, chord[0] / len};
    pts[i] = {c[i][0] + dt * k[i] * inward[0], c[i][1] + dt * k[i] * inward[1]};
  }
  // Drop vertices that collapsed onto their predecessor.
  const double merge = 1e-12 * std::sqrt(std::abs(c.signed_area()));
  std::vector<Vec2> kept;
  for (const auto& p : pts)
    if (kept.empty() || norm(sub(p, kept.back())) > merge) kept.push_back(p);
  while (kept.size() > 1 && norm(sub(kept.front(), kept.back())) <= merge)
    kept.pop_back();
  if (kept.size() < 8 || !(polygon_signed_area(kept) > 0.0))
    return {c, true};
  try {
    return {Curve(std::move(kept)), false};
  } catch (const Error&) {
    return {c, true};
  }
}

Curve resample_uniform(const Curve& c, int n) {
  const std::size_t m = c.size();
  auto P = [&](long k) -> const Vec2& {
    return c[static_cast<std::size_t>(((k % static_cast<long>(m)) + m) % m)];
  };
  // Uniform Catmull-Rom segment k from P(k) to P(k+1), parameter s in [0,1].
  auto eval = [&](long k, double s) {
    const Vec2 &p0 = P(k - 1), &p1 = P(k), &p2 = P(k + 1), &p3 = P(k + 2);
    Vec2 out;
    for (int d = 0; d < 2; ++d) {
      out[d] = 0.5 * ((2.0 * p1[d]) + (-p0[d] + p2[d]) * s +
                      (2.0 * p0[d] - 5.0 * p1[d] + 4.0 * p2[d] - p3[d]) * s * s +
                      (-p0[d] + 3.0 * p1[d] - 3.0 * p2[d] + p3[d]) * s * s * s);
    }
    return out;
  };
  // Dense arc-length table.
  constexpr int kSub = 16;
  std::vector<double> arc{0.0};
  std::vector<std::pair<long, double>> param{{0, 0.0}};
  Vec2 prev = eval(0, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    for (int s = 1; s <= kSub; ++s) {
      const double u = static_cast<double>(s) / kSub;
      const Vec2 p = eval(static_cast<long>(k), u);
      arc.push_back(arc.back() + norm(sub(p, prev)));
      param.emplace_back(static_cast<long>(k), u);
      prev = p;
    }
  }
  const double total = arc.back();
  std::vector<Vec2> pts(n);
  std::size_t idx = 1;
  for (int q = 0; q < n; ++q) {
    const double target = total * q / n;
    while (idx + 1 < arc.size() && arc[idx] < target) ++idx;
    const double a0 = arc[idx - 1], a1 = arc[idx];
    const double frac = a1 > a0 ? (target - a0) / (a1 - a0) : 0.0;
    auto [k0, u0] = param[idx - 1];
    auto [k1, u1] = param[idx];
    if (k1 != k0) u1 = 1.0;  // never happens: segment ends carry u = 1
    pts[q] = eval(k0, u0 + frac * (u1 - u0));
  }
  return Curve(std::move(pts));
}

CsfIntegrator::CsfIntegrator(Curve initial, int resample_every)
    : curve_(std::move(initial)), resample_every_(resample_every) {}

bool CsfIntegrator::advance_to(double t_target, double dt_max) {
  while (!extinct_ && t_ < t_target) {
    const double seg = curve_.min_segment();
    double dt = std::min(dt_max, 0.2 * seg * seg);
    if (t_ + dt > t_target) dt = t_target - t_;
    auto res = csf_step(curve_, dt);
    if (res.extinct) {
      extinct_ = true;
      break;
    }
    curve_ = std::move(res.curve);
    t_ += dt;
    ++steps_;
    if (resample_every_ > 0 && steps_ % resample_every_ == 0)
      curve_ = resample_uniform(curve_, static_cast<int>(curve_.size()));
  }
  return !extinct_;
}

double curve_distance(const Curve& a, const Curve& b) {
  auto one_sided = [](const Curve& from, const Curve& to) {
    constexpr int kSamples = 8;
    double worst = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) {
      const Vec2& p = from[i];
      const Vec2& q = from[(i + 1) % from.size()];
      for (int s = 0; s < kSamples; ++s) {
        const double t = static_cast<double>(s) / kSamples;
        const Vec2 x{p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])};
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < to.size(); ++j)
          best = std::min(best,
                          point_segment_distance(x, to[j], to[(j + 1) % to.size()]));
        worst = std::max(worst, best);
      }
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

}  // namespace hmcf
