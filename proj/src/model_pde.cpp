#include "hmcf/model_pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "json.hpp"

#include "fd.hpp"
#include "hmcf/error.hpp"

namespace hmcf {

Field3 constant_field(double value) {
  return [value](double, double, double) { return value; };
}

ModelCoefficients ModelCoefficients::laplacian(double lambda_ell) {
  return constant(1.0, 0.0, 1.0, 0.0, 0.0, 0.0, lambda_ell);
}

ModelCoefficients ModelCoefficients::constant(double a11, double a12, double a22, double b1,
                                              double b2, double c, double lambda_ell) {
  return {constant_field(a11), constant_field(a12), constant_field(a22),
          constant_field(b1),  constant_field(b2),  constant_field(c),
          lambda_ell};
}

namespace {

double min_eigen(double a11, double a12, double a22) {
  return Sym2{a11, a12, a22}.eigenvalues()[0];
}

}  // namespace

double check_ellipticity(const ModelCoefficients& c, const std::vector<double>& z,
                         const std::vector<double>& y, const std::vector<double>& t) {
  if (!(c.lambda_ell > 0.0)) fail(ErrorCode::Ellipticity, "lambda_ell must be positive");
  double worst = std::numeric_limits<double>::infinity();
  for (double tt : t)
    for (double zz : z)
      for (double yy : y) {
        const double m = min_eigen(c.a11(zz, yy, tt), c.a12(zz, yy, tt), c.a22(zz, yy, tt));
        worst = std::min(worst, m);
        if (m < c.lambda_ell)
          fail(ErrorCode::Ellipticity, "coefficient matrix below lambda_ell at z = " +
                                           std::to_string(zz) + ", y = " +
                                           std::to_string(yy));
      }
  return worst;
}

std::vector<double> log_uniform_z(double w_min, double w_max, std::size_t n) {
  std::vector<double> z{0.0};
  for (double w : linspace(w_min, w_max, n)) z.push_back(std::exp(w));
  return z;
}

namespace {

double uniform_step(const std::vector<double>& v, const char* axis) {
  if (v.size() < 2) fail(ErrorCode::Stencil, std::string("axis ") + axis + " too short");
  const double h = v[1] - v[0];
  for (std::size_t k = 2; k < v.size(); ++k)
    if (std::abs((v[k] - v[k - 1]) - h) > 1e-8 * std::abs(h))
      fail(ErrorCode::Stencil, std::string("axis ") + axis + " is not uniform");
  if (!(h > 0.0)) fail(ErrorCode::Stencil, std::string("axis ") + axis + " not increasing");
  return h;
}

std::vector<double> log_rows(const std::vector<double>& z) {
  if (z.empty() || z[0] != 0.0)
    fail(ErrorCode::Stencil, "first z row must be the boundary z = 0");
  std::vector<double> w;
  for (std::size_t i = 1; i < z.size(); ++i) {
    if (!(z[i] > 0.0)) fail(ErrorCode::Stencil, "z rows after the boundary must be > 0");
    w.push_back(std::log(z[i]));
  }
  return w;
}

}  // namespace

HalfSpaceField apply_model_operator(const ModelCoefficients& k, const HalfSpaceField& f) {
  const std::size_t nt = f.nt(), nz = f.nz(), ny = f.ny();
  const std::vector<double> w = log_rows(f.z);
  const double hw = uniform_step(w, "w");
  const double hy = uniform_step(f.y, "y");
  const double ht = uniform_step(f.t, "t");
  if (w.size() < 4 || ny < 4 || nt < 3)
    fail(ErrorCode::Stencil, "apply_model_operator needs >= 4 log rows, 4 y nodes, 3 times");

  using detail::axis_derivative;
  const auto f_y = axis_derivative(f.values, nt, nz, ny, 2, hy, 1);
  const auto f_yy = axis_derivative(f.values, nt, nz, ny, 2, hy, 2);
  const auto f_t = axis_derivative(f.values, nt, nz, ny, 0, ht, 1);

  const std::size_t nr = nz - 1;
  std::vector<double> rows(nt * nr * ny);
  for (std::size_t kt = 0; kt < nt; ++kt)
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < ny; ++j)
        rows[(kt * nr + i) * ny + j] = f.at(kt, i + 1, j);
  const auto f_w = axis_derivative(rows, nt, nr, ny, 1, hw, 1);
  const auto f_ww = axis_derivative(rows, nt, nr, ny, 1, hw, 2);
  const auto f_wy = axis_derivative(axis_derivative(rows, nt, nr, ny, 2, hy, 1), nt, nr, ny,
                                    1, hw, 1);

  HalfSpaceField out{f.z, f.y, f.t, std::vector<double>(f.values.size())};
  for (std::size_t kt = 0; kt < nt; ++kt) {
    const double t = f.t[kt];
    for (std::size_t i = 0; i < nz; ++i) {
      const double z = f.z[i];
      for (std::size_t j = 0; j < ny; ++j) {
        const double y = f.y[j];
        const std::size_t idx = (kt * nz + i) * ny + j;
        double zterms = 0.0;
        if (i > 0) {
          const std::size_t r = (kt * nr + i - 1) * ny + j;
          zterms = k.a11(z, y, t) * (f_ww[r] - f_w[r]) + 2.0 * k.a12(z, y, t) * f_wy[r] +
                   k.b1(z, y, t) * f_w[r];
        }
        out.values[idx] = f_t[idx] - (zterms + k.a22(z, y, t) * f_yy[idx] +
                                      k.b2(z, y, t) * f_y[idx] +
                                      k.c(z, y, t) * f.values[idx]);
      }
    }
  }
  return out;
}

double literal_c_bracket(double a11, double a12, double b1, double p) {
  return p * p * a11 - 2.0 * p * a12 + p * b1;
}

TransformedCoefficients transform_coefficients(const ModelCoefficients& k, double p,
                                               const BoundaryTrace* trace,
                                               TransformVariant variant) {
  if (!(p > 0.0 && p < 1.0))
    fail(ErrorCode::InvalidArgument, "exponent p must satisfy 0 < p < 1");
  auto in_w = [](const Field3& a) {
    return Field3([a](double w, double y, double t) { return a(std::exp(w), y, t); });
  };
  TransformedCoefficients tc;
  tc.p = p;
  tc.lambda_ell = k.lambda_ell;
  tc.variant = variant;
  tc.a11 = in_w(k.a11);
  tc.a12 = in_w(k.a12);
  tc.a22 = in_w(k.a22);
  tc.b1 = [k, p](double w, double y, double t) {
    const double z = std::exp(w);
    return (2.0 * p - 1.0) * k.a11(z, y, t) + k.b1(z, y, t);
  };
  const bool derived = variant == TransformVariant::Derived;
  if (derived) {
    tc.b2 = [k, p](double w, double y, double t) {
      const double z = std::exp(w);
      return k.b2(z, y, t) + 2.0 * p * k.a12(z, y, t);
    };
    tc.c = [k, p](double w, double y, double t) {
      const double z = std::exp(w);
      return (p * p - p) * k.a11(z, y, t) + p * k.b1(z, y, t) + k.c(z, y, t);
    };
  } else {
    tc.b2 = in_w(k.b2);
    tc.c = [k, p](double w, double y, double t) {
      const double z = std::exp(w);
      return std::exp(-p * z) *
             literal_c_bracket(k.a11(z, y, t), k.a12(z, y, t), k.b1(z, y, t), p);
    };
  }
  if (trace == nullptr) {
    tc.G = constant_field(0.0);
  } else {
    const BoundaryTrace tr = *trace;
    tc.G = [k, p, tr, derived](double w, double y, double t) {
      const double z = std::exp(w);
      double g = (k.a22(z, y, t) - k.a22(0.0, y, t)) * tr.f_yy(y, t) +
                 (k.b2(z, y, t) - k.b2(0.0, y, t)) * tr.f_y(y, t);
      if (derived) g += (k.c(z, y, t) - k.c(0.0, y, t)) * tr.f(y, t);
      return std::exp(-p * w) * g;
    };
  }
  return tc;
}

std::vector<double> periodic_grid(double y0, double period, std::size_t n) {
  if (n < 4 || !(period > 0.0))
    fail(ErrorCode::InvalidArgument, "periodic grid needs n >= 4 and a positive period");
  std::vector<double> y(n);
  for (std::size_t k = 0; k < n; ++k) y[k] = y0 + period * static_cast<double>(k) / n;
  return y;
}

std::vector<double> Solution::frame(std::size_t kt) const {
  const std::size_t n = n_space();
  return {values.begin() + static_cast<long>(kt * n),
          values.begin() + static_cast<long>((kt + 1) * n)};
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplets = std::vector<Eigen::Triplet<double>>;

// u_t = L(t) u + s(t), backward Euler; L is re-factorised only when it changes.
class ImplicitStepper {
 public:
  using Assemble = std::function<void(double t, Triplets& L, Eigen::VectorXd& s)>;

  ImplicitStepper(std::size_t n, Assemble assemble) : n_(n), assemble_(std::move(assemble)) {}

  Eigen::VectorXd step(const Eigen::VectorXd& u, double t_next, double dt) {
    Triplets trip;
    Eigen::VectorXd s = Eigen::VectorXd::Zero(static_cast<long>(n_));
    assemble_(t_next, trip, s);
    SpMat L(static_cast<long>(n_), static_cast<long>(n_));
    L.setFromTriplets(trip.begin(), trip.end());
    SpMat I(static_cast<long>(n_), static_cast<long>(n_));
    I.setIdentity();
    SpMat A = I - dt * L;
    A.makeCompressed();
    if (!same_as_cached(A)) {
      solver_.compute(A);
      if (solver_.info() != Eigen::Success)
        fail(ErrorCode::Ellipticity, "implicit system is singular");
      cached_ = A;
      have_ = true;
    }
    Eigen::VectorXd x = solver_.solve(u + dt * s);
    if (solver_.info() != Eigen::Success) fail(ErrorCode::Ellipticity, "implicit solve failed");
    return x;
  }

 private:
  bool same_as_cached(const SpMat& A) const {
    if (!have_ || A.nonZeros() != cached_.nonZeros()) return false;
    for (long k = 0; k <= A.outerSize(); ++k)
      if (A.outerIndexPtr()[k] != cached_.outerIndexPtr()[k]) return false;
    for (long k = 0; k < A.nonZeros(); ++k)
      if (A.innerIndexPtr()[k] != cached_.innerIndexPtr()[k] ||
          A.valuePtr()[k] != cached_.valuePtr()[k])
        return false;
    return true;
  }

  std::size_t n_;
  Assemble assemble_;
  Eigen::SparseLU<SpMat> solver_;
  SpMat cached_;
  bool have_ = false;
};

Solution integrate(std::vector<double> w, std::vector<double> y,
                   const std::vector<double>& initial, const TimeStepping& ts,
                   ImplicitStepper& stepper) {
  if (!(ts.dt > 0.0) || !(ts.t_end >= 0.0) || ts.record_every < 1)
    fail(ErrorCode::Config, "time stepping needs dt > 0, t_end >= 0, record_every >= 1");
  Solution sol{std::move(w), std::move(y), {}, {}};
  if (initial.size() != sol.n_space())
    fail(ErrorCode::GridMismatch, "initial data does not match the grid");
  Eigen::VectorXd u = Eigen::Map<const Eigen::VectorXd>(initial.data(),
                                                        static_cast<long>(initial.size()));
  const double lo = u.minCoeff(), hi = u.maxCoeff();
  const double tol = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  auto record = [&](double t) {
    sol.t.push_back(t);
    sol.values.insert(sol.values.end(), u.data(), u.data() + u.size());
  };
  record(0.0);
  const long steps = static_cast<long>(std::ceil(ts.t_end / ts.dt - 1e-9));
  double t = 0.0;
  for (long n = 1; n <= steps; ++n) {
    const double t_next = n == steps ? ts.t_end : n * ts.dt;
    u = stepper.step(u, t_next, t_next - t);
    t = t_next;
    if (ts.check_max_principle && (u.minCoeff() < lo - tol || u.maxCoeff() > hi + tol))
      fail(ErrorCode::Ellipticity, "maximum principle violated at t = " + std::to_string(t));
    if (ts.observer) ts.observer(t, std::vector<double>(u.data(), u.data() + u.size()));
    if (n % ts.record_every == 0 || n == steps) record(t);
  }
  return sol;
}

}  // namespace

Solution solve_boundary_problem(const ModelCoefficients& k, const std::vector<double>& y,
                                const std::vector<double>& initial, const Field2& forcing,
                                const TimeStepping& ts) {
  const std::size_t n = y.size();
  const double hy = uniform_step(y, "y");
  if (n < 4) fail(ErrorCode::Stencil, "boundary problem needs >= 4 nodes");
  ImplicitStepper stepper(n, [&](double t, Triplets& L, Eigen::VectorXd& s) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = k.a22(0.0, y[j], t), b = k.b2(0.0, y[j], t), c = k.c(0.0, y[j], t);
      if (!(a >= k.lambda_ell))
        fail(ErrorCode::Ellipticity, "a22 at z = 0 falls below lambda_ell");
      const long jj = static_cast<long>(j);
      const long jm = static_cast<long>((j + n - 1) % n), jp = static_cast<long>((j + 1) % n);
      L.emplace_back(jj, jm, a / (hy * hy) - b / (2.0 * hy));
      L.emplace_back(jj, jj, -2.0 * a / (hy * hy) + c);
      L.emplace_back(jj, jp, a / (hy * hy) + b / (2.0 * hy));
      s[jj] = forcing ? forcing(y[j], t) : 0.0;
    }
  });
  return integrate({}, y, initial, ts, stepper);
}

Solution solve_tilde_problem(const TransformedCoefficients& tc, const std::vector<double>& w,
                             const std::vector<double>& y,
                             const std::vector<double>& initial, const Field3& forcing,
                             WBoundary wb, const TimeStepping& ts) {
  const std::size_t nw = w.size(), ny = y.size();
  if (nw < 4) fail(ErrorCode::Window, "tilde window needs >= 4 w nodes");
  const double hw = uniform_step(w, "w");
  const double hy = uniform_step(y, "y");
  if (ny < 4) fail(ErrorCode::Stencil, "tilde problem needs >= 4 y nodes");
  if (wb == WBoundary::Outflow && w.back() - w.front() < 8.0)
    fail(ErrorCode::Window, "outflow window must span at least 8 in w");

  // Node (i, j) with out-of-range i resolved by wrap-around or extrapolation.
  auto add = [&](Triplets& L, long row, long i, long j, double weight) {
    j = (j + static_cast<long>(ny)) % static_cast<long>(ny);
    const long last = static_cast<long>(nw) - 1;
    auto put = [&](long ii, double wt) {
      L.emplace_back(row, ii * static_cast<long>(ny) + j, wt);
    };
    if (i >= 0 && i <= last) return put(i, weight);
    if (wb == WBoundary::Periodic) return put((i + last + 1) % (last + 1), weight);
    if (i < 0) {
      put(0, 2.0 * weight);
      put(1, -weight);
    } else {
      put(last, 2.0 * weight);
      put(last - 1, -weight);
    }
  };

  ImplicitStepper stepper(nw * ny, [&](double t, Triplets& L, Eigen::VectorXd& s) {
    for (std::size_t i = 0; i < nw; ++i) {
      for (std::size_t j = 0; j < ny; ++j) {
        const double ww = w[i], yy = y[j];
        const double a11 = tc.a11(ww, yy, t), a12 = tc.a12(ww, yy, t),
                     a22 = tc.a22(ww, yy, t);
        if (min_eigen(a11, a12, a22) < tc.lambda_ell)
          fail(ErrorCode::Ellipticity, "transformed coefficients lose ellipticity");
        const double b1 = tc.b1(ww, yy, t), b2 = tc.b2(ww, yy, t), c = tc.c(ww, yy, t);
        const long I = static_cast<long>(i), J = static_cast<long>(j);
        const long row = I * static_cast<long>(ny) + J;
        add(L, row, I - 1, J, a11 / (hw * hw) - b1 / (2.0 * hw));
        add(L, row, I + 1, J, a11 / (hw * hw) + b1 / (2.0 * hw));
        add(L, row, I, J - 1, a22 / (hy * hy) - b2 / (2.0 * hy));
        add(L, row, I, J + 1, a22 / (hy * hy) + b2 / (2.0 * hy));
        add(L, row, I, J, -2.0 * a11 / (hw * hw) - 2.0 * a22 / (hy * hy) + c);
        const double cross = 2.0 * a12 / (4.0 * hw * hy);
        if (cross != 0.0) {
          add(L, row, I + 1, J + 1, cross);
          add(L, row, I + 1, J - 1, -cross);
          add(L, row, I - 1, J + 1, -cross);
          add(L, row, I - 1, J - 1, cross);
        }
        s[row] = (forcing ? forcing(ww, yy, t) : 0.0) + tc.G(ww, yy, t);
      }
    }
  });
  return integrate(w, y, initial, ts, stepper);
}

HalfSpaceField reconstruct(const LogField& f) {
  const std::size_t nt = f.nt(), nw = f.nw(), ny = f.ny();
  if (f.boundary.size() != nt * ny || f.tilde.size() != nt * nw * ny)
    fail(ErrorCode::GridMismatch, "log field arrays do not match its axes");
  HalfSpaceField out;
  out.z.push_back(0.0);
  for (double w : f.w) out.z.push_back(std::exp(w));
  out.y = f.y;
  out.t = f.t;
  out.values.resize(nt * (nw + 1) * ny);
  for (std::size_t k = 0; k < nt; ++k)
    for (std::size_t j = 0; j < ny; ++j) {
      const double f0 = f.bdry(k, j);
      out.at(k, 0, j) = f0;
      for (std::size_t i = 0; i < nw; ++i)
        out.at(k, i + 1, j) = f0 + std::exp(f.p * f.w[i]) * f.til(k, i, j);
    }
  return out;
}

HalfSpaceField reconstruct(const Solution& boundary, const Solution& tilde, double p) {
  if (!boundary.w.empty() || tilde.w.empty())
    fail(ErrorCode::GridMismatch, "expected a boundary and a tilde solution");
  if (boundary.y != tilde.y || boundary.t != tilde.t)
    fail(ErrorCode::GridMismatch, "boundary and tilde solutions use different y or t");
  LogField f{p, tilde.w, tilde.y, tilde.t, boundary.values, tilde.values};
  return reconstruct(f);
}

namespace {

// Linear interpolation of a (t, y) array, periodic in y, clamped in t.
double interp_ty(const std::vector<double>& a, const std::vector<double>& y,
                 const std::vector<double>& t, double yq, double tq) {
  const std::size_t ny = y.size();
  const double hy = y[1] - y[0];
  const double period = hy * static_cast<double>(ny);
  double s = std::fmod(yq - y[0], period);
  if (s < 0.0) s += period;
  const double fy = s / hy;
  const std::size_t j0 = static_cast<std::size_t>(fy) % ny, j1 = (j0 + 1) % ny;
  const double ay = fy - std::floor(fy);
  auto row = [&](std::size_t k) {
    return (1.0 - ay) * a[k * ny + j0] + ay * a[k * ny + j1];
  };
  if (t.size() == 1 || tq <= t.front()) return row(0);
  if (tq >= t.back()) return row(t.size() - 1);
  const std::size_t k = static_cast<std::size_t>(
      std::upper_bound(t.begin(), t.end(), tq) - t.begin() - 1);
  const double at = (tq - t[k]) / (t[k + 1] - t[k]);
  return (1.0 - at) * row(k) + at * row(k + 1);
}

}  // namespace

BoundaryTrace trace_of(const Solution& b) {
  const std::size_t ny = b.y.size(), nt = b.t.size();
  if (!b.w.empty() || ny < 4) fail(ErrorCode::GridMismatch, "trace_of needs a boundary solution");
  const double hy = uniform_step(b.y, "y");
  std::vector<double> d1(b.values.size()), d2(b.values.size());
  for (std::size_t k = 0; k < nt; ++k)
    for (std::size_t j = 0; j < ny; ++j) {
      const double um = b.at(k, (j + ny - 1) % ny), u0 = b.at(k, j),
                   up = b.at(k, (j + 1) % ny);
      d1[k * ny + j] = (up - um) / (2.0 * hy);
      d2[k * ny + j] = (up - 2.0 * u0 + um) / (hy * hy);
    }
  auto make = [y = b.y, t = b.t](std::vector<double> a) {
    return Field2([a = std::move(a), y, t](double yq, double tq) {
      return interp_ty(a, y, t, yq, tq);
    });
  };
  return {make(b.values), make(std::move(d1)), make(std::move(d2))};
}

SplittingReport splitting_identity(const ModelCoefficients& k, double p,
                                   const BoundaryTrace& f0, const Field3& tilde,
                                   const std::vector<double>& w, const std::vector<double>& y,
                                   const std::vector<double>& t, TransformVariant variant) {
  const std::size_t nw = w.size(), ny = y.size(), nt = t.size();
  const double hw = uniform_step(w, "w");
  const double hy = uniform_step(y, "y");
  const double ht = uniform_step(t, "t");
  std::vector<double> z{0.0};
  for (double ww : w) z.push_back(std::exp(ww));
  const HalfSpaceField f = sample_half_space(z, y, t, [&](double zz, double yy, double tt) {
    const double b = f0.f(yy, tt);
    return zz == 0.0 ? b : b + std::pow(zz, p) * tilde(std::log(zz), yy, tt);
  });
  const HalfSpaceField Lf = apply_model_operator(k, f);

  using detail::axis_derivative;
  std::vector<double> b(nt * ny);
  for (std::size_t kt = 0; kt < nt; ++kt)
    for (std::size_t j = 0; j < ny; ++j) b[kt * ny + j] = f0.f(y[j], t[kt]);
  const auto b_y = axis_derivative(b, nt, 1, ny, 2, hy, 1);
  const auto b_yy = axis_derivative(b, nt, 1, ny, 2, hy, 2);
  const auto b_t = axis_derivative(b, nt, 1, ny, 0, ht, 1);

  std::vector<double> g(nt * nw * ny);
  for (std::size_t kt = 0; kt < nt; ++kt)
    for (std::size_t i = 0; i < nw; ++i)
      for (std::size_t j = 0; j < ny; ++j) g[(kt * nw + i) * ny + j] = tilde(w[i], y[j], t[kt]);
  const auto g_w = axis_derivative(g, nt, nw, ny, 1, hw, 1);
  const auto g_ww = axis_derivative(g, nt, nw, ny, 1, hw, 2);
  const auto g_y = axis_derivative(g, nt, nw, ny, 2, hy, 1);
  const auto g_yy = axis_derivative(g, nt, nw, ny, 2, hy, 2);
  const auto g_wy = axis_derivative(g_y, nt, nw, ny, 1, hw, 1);
  const auto g_t = axis_derivative(g, nt, nw, ny, 0, ht, 1);

  const TransformedCoefficients tc = transform_coefficients(k, p, &f0, variant);
  SplittingReport rep;
  for (std::size_t kt = 0; kt < nt; ++kt) {
    const double tt = t[kt];
    for (std::size_t j = 0; j < ny; ++j) {
      const double yy = y[j];
      const std::size_t bj = kt * ny + j;
      const double r0 = b_t[bj] - (k.a22(0.0, yy, tt) * b_yy[bj] + k.b2(0.0, yy, tt) * b_y[bj] +
                                   k.c(0.0, yy, tt) * b[bj]);
      rep.boundary_residual = std::max(rep.boundary_residual, std::abs(Lf.at(kt, 0, j) - r0));
      for (std::size_t i = 0; i < nw; ++i) {
        const double ww = w[i];
        const std::size_t gi = (kt * nw + i) * ny + j;
        const double lt = g_t[gi] - (tc.a11(ww, yy, tt) * g_ww[gi] +
                                     2.0 * tc.a12(ww, yy, tt) * g_wy[gi] +
                                     tc.a22(ww, yy, tt) * g_yy[gi] + tc.b1(ww, yy, tt) * g_w[gi] +
                                     tc.b2(ww, yy, tt) * g_y[gi] + tc.c(ww, yy, tt) * g[gi]);
        const double zp = std::exp(p * ww);
        const double mismatch = Lf.at(kt, i + 1, j) - r0 - zp * (lt - tc.G(ww, yy, tt));
        rep.interior_residual = std::max(rep.interior_residual, std::abs(mismatch) / zp);
      }
    }
  }
  return rep;
}

DiscrepancyReport discrepancy_report(const ModelCoefficients& k, double p,
                                     const BoundaryTrace& f0, const Field3& tilde,
                                     double w_min, double w_max, double y_max, double t_max,
                                     std::size_t n_w, std::size_t n_y, std::size_t n_t) {
  DiscrepancyReport rep;
  const auto d = transform_coefficients(k, p, &f0, TransformVariant::Derived);
  const auto l = transform_coefficients(k, p, &f0, TransformVariant::Literal);
  const auto w = linspace(w_min, w_max, n_w), y = linspace(0.0, y_max, n_y),
             t = linspace(0.0, t_max, n_t);
  const std::pair<const char*, std::pair<const Field3*, const Field3*>> parts[] = {
      {"hat_a11", {&d.a11, &l.a11}}, {"hat_a12", {&d.a12, &l.a12}},
      {"hat_a22", {&d.a22, &l.a22}}, {"hat_b1", {&d.b1, &l.b1}},
      {"hat_b2", {&d.b2, &l.b2}},   {"hat_c", {&d.c, &l.c}},
      {"hat_G", {&d.G, &l.G}}};
  for (const auto& [name, fns] : parts) {
    double worst = 0.0;
    for (double tt : t)
      for (double ww : w)
        for (double yy : y)
          worst = std::max(worst, std::abs((*fns.first)(ww, yy, tt) - (*fns.second)(ww, yy, tt)));
    rep.coefficients.push_back({name, worst});
  }
  const auto w2 = linspace(w_min, w_max, 2 * n_w - 1), y2 = linspace(0.0, y_max, 2 * n_y - 1),
             t2 = linspace(0.0, t_max, 2 * n_t - 1);
  using V = TransformVariant;
  rep.derived_coarse = splitting_identity(k, p, f0, tilde, w, y, t, V::Derived);
  rep.derived_fine = splitting_identity(k, p, f0, tilde, w2, y2, t2, V::Derived);
  rep.literal_coarse = splitting_identity(k, p, f0, tilde, w, y, t, V::Literal);
  rep.literal_fine = splitting_identity(k, p, f0, tilde, w2, y2, t2, V::Literal);
  auto order = [](const SplittingReport& a, const SplittingReport& b) {
    const double ea = a.max_residual(), eb = b.max_residual();
    return ea > 0.0 && eb > 0.0 ? std::log2(ea / eb) : 0.0;
  };
  rep.derived_order = order(rep.derived_coarse, rep.derived_fine);
  rep.literal_order = order(rep.literal_coarse, rep.literal_fine);
  return rep;
}

std::string DiscrepancyReport::to_json() const {
  nlohmann::json j;
  for (const auto& e : coefficients)
    j["coefficients"][e.name] = {{"max_abs_difference_derived_vs_literal", e.max_abs_difference}};
  auto split = [](const SplittingReport& r) {
    return nlohmann::json{{"boundary_residual", r.boundary_residual},
                          {"interior_residual", r.interior_residual}};
  };
  j["derived"] = {{"coarse", split(derived_coarse)},
                  {"fine", split(derived_fine)},
                  {"order", derived_order}};
  j["literal"] = {{"coarse", split(literal_coarse)},
                  {"fine", split(literal_fine)},
                  {"order", literal_order}};
  return j.dump(2);
}

}  // namespace hmcf
