#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hmcf/analysis.hpp"
#include "hmcf/config.hpp"
#include "hmcf/flow.hpp"
#include "hmcf/model_pde.hpp"

namespace hmcf {

// ---------------------------------------------------------------------------
// Snapshots
// ---------------------------------------------------------------------------

struct SnapshotFiles {
  std::filesystem::path height;
  std::optional<std::filesystem::path> curve;  // absent when there is no interface
  std::filesystem::path meta;
};

/// Writes snapshot_<step>_height.csv (one grid row i per line, %.17g),
/// snapshot_<step>_curve.csv (x,y per vertex) and snapshot_<step>_meta.json
/// with t, step and the check_star margins against `lambda`. The curve is the
/// contour at the field's flat tolerance; the margins are sampled outside the
/// edge_level contour. ErrorCode::Io on write failure.
SnapshotFiles emit_snapshot(const FlowState& state, const std::filesystem::path& dir,
                            double p = 0.5, double lambda = 0.0);

/// Comma-separated numbers, one vector per non-empty line. ErrorCode::Io.
std::vector<std::vector<double>> read_csv(const std::filesystem::path& path);

/// Reloads a height CSV written by emit_snapshot onto `grid`.
HeightField load_height_csv(const std::filesystem::path& path, const GridSpec& grid,
                            double flat_tol);

// ---------------------------------------------------------------------------
// Initial data
// ---------------------------------------------------------------------------

/// Lower hemisphere of radius R0 touching z = 0 at `center`:
///   h = R0 - sqrt(R0^2 - |x - center|^2).
/// ErrorCode::Domain if a grid node lies outside the sphere's shadow.
HeightField sphere_field(const GridSpec& grid, double R0, double flat_tol,
                         Vec2 center = {0.0, 0.0});

/// h = ((rho - r0)_+)^q.
HeightField flat_disk_field(const GridSpec& grid, double r0, double q, double flat_tol);

HeightField initial_field(const RunConfig& cfg);

// ---------------------------------------------------------------------------
// Refinement studies shared by the CLI and the acceptance checks
// ---------------------------------------------------------------------------

/// One refinement level of the Hoelder-detector study. Level k uses the
/// window w in [-4 * 2^k, 1] with dw = 0.25 / 2^k and 16 * 2^k periodic y
/// nodes; both test fields are steady.
struct NormsRow {
  int level = 0;
  double w_min = 0.0;
  std::size_t nw = 0, ny = 0;
  double smooth_total = 0.0;  // C2AlphaP total of z^p (1 + z e^{-z}) cos y
  double singular_sup = 0.0;  // sup |f~| of z^{p/2}
};

std::vector<NormsRow> norms_refinement_table(double alpha, double p, int levels,
                                             long random_pairs, std::uint64_t seed);

/// Schauder ratio ||f||_{2+alpha,p}(B_1/2) / (||f||_{0,p}(B_1) + ||L f||_{alpha,p}(B_1))
/// for a manufactured solution, on successively refined grids around the
/// boundary point (0, 0, 1).
struct SchauderRow {
  int level = 0;
  double numerator = 0.0;
  double c0 = 0.0;
  double lf_norm = 0.0;
  double ratio = 0.0;
};

struct SchauderStudy {
  std::string solution;
  std::vector<SchauderRow> rows;
  /// max ratio / min ratio over the levels.
  double spread() const;
};

/// check_star on the ring outside the edge_level contour (clear of the thin
/// layer the explicit scheme leaves inside the shrinking flat side).
/// ErrorCode::Sampling when that contour does not exist.
StarMargins edge_star_margins(const HeightField& field, double p, double lambda);

/// f_t = f_yy on a periodic grid of ny nodes from sin y, compared with
/// e^{-t} sin y at t_end.
struct HeatStudy {
  double t_end = 0.0;
  double l2_error = 0.0;  // sqrt(sum e^2 dy)
  double max_error = 0.0;
};
HeatStudy boundary_heat_study(std::size_t ny, double dt, double t_end);

/// Derived against printed transform on a fixed manufactured problem with
/// z-dependent a22 and c.
DiscrepancyReport splitting_study(double p);

/// Three manufactured solutions ("trig", "decay", "mixed"), `levels` grids.
std::vector<SchauderStudy> schauder_studies(double alpha, double p, int levels,
                                            long random_pairs, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------------

struct ExperimentReport {
  int exit_code = 0;       // 0 iff no module error
  std::string reason;      // "ok" or the error code name
  std::string message;     // error text, empty on success
  std::string summary_json;
  std::filesystem::path summary_path;
};

/// Exit code for a module error.
int exit_code_for(ErrorCode code);

/// Runs the configured pipeline, writing its artefacts and summary.json
/// under cfg.out. Never throws for module errors; they land in the report.
ExperimentReport run_experiment(const RunConfig& cfg);

}  // namespace hmcf
