#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "vfp/diagnostics.hpp"
#include "vfp/io.hpp"
#include "vfp/mesh.hpp"
#include "vfp/rkc.hpp"
#include "vfp/scenario.hpp"
#include "vfp/transport.hpp"

namespace vfp {

/// nu * Q(f) over every column, with the drift shift drift[i] added to the
/// x mean velocity of column i (empty = no shift).
void collision_rhs(const PhaseGrid& grid, int order, double nu, std::span<const double> drift,
                   std::span<const double> f, std::span<double> out);

/// Largest staggered temperature over the columns.
double max_temperature(const DistState& f);

/// Outcome of one split step. `err` is the collision-substep error measure
/// (0 when no estimate was requested or the substep was skipped).
struct SubstepInfo {
  double err = 0.0;
  int stages = 0;
  std::int64_t evals = 0;
};

/// Shared per-run machinery of the split schemes.
class StepContext {
 public:
  explicit StepContext(const Scenario& sc);

  const Scenario& scenario() const noexcept { return sc_; }
  const PhaseGrid& grid() const noexcept { return grid_; }
  const SpectralPlan& plan() const { return *plan_; }

  /// Collision substep dy/dt = nu Q~(y) over [t, t + h] on the whole array with
  /// the chosen integrator. When `estimate` is set the error measure is
  /// computed (two extra evaluations for RKC).
  SubstepInfo collide(DistState& f, std::span<const double> drift, double h, double advection_scale,
                      bool estimate);

 private:
  Scenario sc_;
  PhaseGrid grid_;
  std::unique_ptr<SpectralPlan> plan_;
  CoeffCache cache_;
  double c_eta_;
  RkcWorkspace ws_;
  std::vector<double> y1_, q0_, q1_, est_, k1_, k2_;
};

/// X(h/2), Poisson, RKC on df/dt + E df/dv = nu Q(f) with drift E/nu (v-advection
/// by E when nu = 0), X(h/2). On return `e` holds the Poisson field of the new f.
SubstepInfo step_sl_rkc(StepContext& ctx, DistState& f, FieldState& e, double h, bool estimate);

/// X(h/2), energy-conserving RK2 velocity stage with Ampere, collision, X(h/2).
SubstepInfo step_sl_rk2_rkc(StepContext& ctx, DistState& f, FieldState& e, double h, bool estimate);

/// X(h/2), Poisson + V(h/2), C(h), V(h/2), X(h/2) with semi-Lagrangian V.
SubstepInfo step_strang_2dv(StepContext& ctx, DistState& f, FieldState& e, double h, bool estimate);

struct RunOptions {
  /// Start from this state instead of the scenario datum. A stored field is
  /// reused by sl-rk2-rkc; otherwise E comes from Poisson.
  std::optional<Snapshot> initial;
  /// Called for every emitted diagnostics row.
  std::function<void(const DiagRow&)> on_row;
  /// Called after every accepted step.
  std::function<void(const DistState&, const FieldState&)> on_step;
};

struct RunResult {
  std::vector<StepRecord> records;
  DiagSeries series;
  DistState state;
  FieldState field;
  std::vector<double> m_ref;
  std::int64_t accepted = 0;
  std::int64_t rejected = 0;
  std::int64_t rhs_evals = 0;
  double max_dt = 0.0;
  double wall = 0.0;
};

/// Advances the scenario from its start time to t_end. Deterministic for a
/// fixed thread count of 1.
RunResult run(const Scenario& sc, const RunOptions& opt = {});

}  // namespace vfp
