#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hmcf/error.hpp"
#include "hmcf/geometry.hpp"

namespace hmcf {

enum class Integrator { ForwardEuler, Rk2 };

struct FlowConfig {
  double dt_safety = 0.9;
  double t_end = 0.0;
  /// Floor for |denominator| of the graph quotient; <= 0 selects 1e-10/dx.
  double denom_eps = 0.0;
  int record_every = 1;
  double p = 0.5;  // pressure exponent, only used by the (star) precheck
  Integrator integrator = Integrator::ForwardEuler;
  /// Tolerances for the convexity check; clamp_tol <= 0 selects 1e-8/dx.
  double clamp_tol = 0.0;
  /// Run the (star) non-degeneracy check on the initial data when it has a
  /// flat side.
  bool check_initial_star = true;

  void validate() const;
};

struct FlowState {
  HeightField field;
  double t = 0.0;
  long step_count = 0;
  /// Smallest |denominator| of the graph quotient over the strictly convex
  /// nodes in the last step (+inf before the first step).
  double min_denominator = 0.0;
};

/// Vertical velocity h_t of the lower graph at node (i, j):
///   h_t = det(D^2 h) / ((1+h_y^2) h_xx - 2 h_x h_y h_xy + (1+h_x^2) h_yy),
/// which is the normal speed K/H times sqrt(1+|Dh|^2). Any node is accepted;
/// the outer ring uses one-sided stencils. Where the 3x3 stencil touches the
/// flat set the discrete Hessian is first projected onto the positive
/// semidefinite cone.
double rhs_graph(const HeightField& field, int i, int j, double denom_eps = 0.0);

/// One explicit step. dt = dt_safety * min(dx,dy)^2 / (4 * max effective
/// diffusivity), clipped so t does not pass cfg.t_end.
FlowState step(const FlowState& state, const FlowConfig& cfg);

/// Largest stable dt for the current state (before clipping to t_end).
double stable_dt(const HeightField& field, const FlowConfig& cfg);

struct FlowFailure {
  ErrorCode code;
  std::string message;
};

struct Trajectory {
  std::vector<FlowState> snapshots;
  std::optional<FlowFailure> failure;

  bool ok() const { return !failure.has_value(); }
};

/// Integrates to cfg.t_end, recording every cfg.record_every steps plus the
/// initial and final states. Step errors end the run and are reported in
/// Trajectory::failure alongside the partial trajectory.
Trajectory run(const HeightField& initial, const FlowConfig& cfg);

/// max over nodes of (outer.h - inner.h). Both are lower graphs, so the body
/// of `inner` lies inside the body of `outer` where this is <= 0.
double containment_check(const HeightField& inner, const HeightField& outer);

/// Volume between the graph and the plane z = top over the grid.
double enclosed_volume(const HeightField& field, double top);

}  // namespace hmcf
