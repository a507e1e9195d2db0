#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "slc/base.hpp"

namespace slc {

/// Piecewise-constant mode schedule. Dwell times are strictly positive, so
/// any finite horizon sees finitely many switches.
struct SwitchingSignal {
  enum class Kind { Periodic, Table, SeededRandom };
  Kind kind = Kind::Periodic;

  // Periodic: cycles through (mode_order[i], dwells[i]).
  std::vector<int> mode_order;  // 1-based mode indices
  std::vector<double> dwells;

  // Table: (switch time, mode); first entry must start at time 0.
  std::vector<std::pair<double, int>> table;

  // Seeded random: replayable dwell/mode stream.
  std::uint64_t seed = 0;
  double dwell_min = 0.0;
  double dwell_max = 0.0;

  static SwitchingSignal periodic(std::vector<int> order, std::vector<double> dwell);
  static SwitchingSignal from_table(std::vector<std::pair<double, int>> entries);
  static SwitchingSignal seeded_random(std::uint64_t seed, double dwell_min, double dwell_max);

  struct Segment {
    double start = 0.0;
    double end = 0.0;
    int mode = 1;  // 1-based
  };

  /// Expands the signal over [0, horizon); discrete signals round dwells up
  /// to whole steps.
  std::vector<Segment> segments(double horizon, int mode_count, bool discrete) const;
};

struct SwitchingScenario {
  Mode mode = Mode::Continuous;
  std::vector<Matrix> matrices;
  SwitchingSignal signal;
  Vector x0;
  double horizon = 0.0;      // time span (ct) or step count (dt)
  double sample_step = 1.0;  // sampling grid; switch instants always sampled

  void validate() const;  // InvalidScenarioError on structural defects
};

struct TrajectorySample {
  double time = 0.0;
  Vector state;
  double alpha = 0.0;       // mean of the state
  double delta_norm = 0.0;  // ‖x - alpha·𝟙‖
};

enum class SimVerdict { Converged, Diverged, Undecided };

struct Trajectory {
  std::vector<TrajectorySample> samples;
  SimVerdict verdict = SimVerdict::Undecided;
  Vector final_state;
  bool overflow = false;
  double eps_conv = 0.0;
  double div_threshold = 0.0;
};

/// Exact piecewise propagation via the matrix exponential.
Trajectory simulate_continuous(const SwitchingScenario& scenario);
/// Exact matrix-vector stepping.
Trajectory simulate_discrete(const SwitchingScenario& scenario);

/// alpha = mean(x), delta = x - alpha·𝟙 (so 𝟙ᵀdelta = 0).
std::pair<double, Vector> disagreement_decomposition(const Eigen::Ref<const Vector>& x);

enum class SufficiencyClass { None, NormalClass, ClfReferral };

/// Mode-family screening: per-matrix necessary tests, the normal-class
/// sufficiency (every mode normal and EEP/ES) with its decay rate, and a
/// referral to the CLF search otherwise.
struct ConsensusSetReport {
  std::vector<bool> necessary_ok;
  bool all_necessary_ok = false;
  SufficiencyClass sufficient = SufficiencyClass::None;
  std::optional<double> decay_rate;  // lambda* (ct) or the geometric factor (dt)
};

ConsensusSetReport consensus_set_check(const std::vector<Matrix>& matrices, Mode mode,
                                       const Tolerances& tol = {});

}  // namespace slc
