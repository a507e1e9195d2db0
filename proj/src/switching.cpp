#include "slc/switching.hpp"

#include "slc/classify.hpp"
#include "slc/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace slc {

SwitchingSignal SwitchingSignal::periodic(std::vector<int> order, std::vector<double> dwell) {
  SwitchingSignal s;
  s.kind = Kind::Periodic;
  s.mode_order = std::move(order);
  s.dwells = std::move(dwell);
  return s;
}

SwitchingSignal SwitchingSignal::from_table(std::vector<std::pair<double, int>> entries) {
  SwitchingSignal s;
  s.kind = Kind::Table;
  s.table = std::move(entries);
  return s;
}

SwitchingSignal SwitchingSignal::seeded_random(std::uint64_t seed, double dwell_min,
                                               double dwell_max) {
  SwitchingSignal s;
  s.kind = Kind::SeededRandom;
  s.seed = seed;
  s.dwell_min = dwell_min;
  s.dwell_max = dwell_max;
  return s;
}

namespace {

// splitmix64: tiny, platform-independent replayable stream.
struct SeededStream {
  std::uint64_t state;
  explicit SeededStream(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace

std::vector<SwitchingSignal::Segment> SwitchingSignal::segments(double horizon, int mode_count,
                                                                bool discrete) const {
  if (!(horizon > 0.0)) throw InvalidScenarioError("horizon must be positive");
  std::vector<Segment> out;
  auto push = [&](double start, double dwell, int mode) {
    if (mode < 1 || mode > mode_count) throw InvalidScenarioError("mode index out of range");
    if (!(dwell > 0.0)) throw InvalidScenarioError("dwell times must be strictly positive");
    if (discrete) dwell = std::ceil(dwell - 1e-12);
    out.push_back({start, std::min(start + dwell, horizon), mode});
    return start + dwell;
  };

  double t = 0.0;
  switch (kind) {
    case Kind::Periodic: {
      if (mode_order.empty() || mode_order.size() != dwells.size())
        throw InvalidScenarioError("periodic signal needs matching order/dwell lists");
      std::size_t i = 0;
      while (t < horizon) {
        t = push(t, dwells[i], mode_order[i]);
        i = (i + 1) % mode_order.size();
      }
      break;
    }
    case Kind::Table: {
      if (table.empty() || table.front().first != 0.0)
        throw InvalidScenarioError("switch table must start at time zero");
      for (std::size_t i = 0; i < table.size() && table[i].first < horizon; ++i) {
        const double start = table[i].first;
        const double end = (i + 1 < table.size()) ? table[i + 1].first : horizon;
        if (!(end > start)) throw InvalidScenarioError("switch times must be increasing");
        if (discrete && start != std::floor(start))
          throw InvalidScenarioError("discrete switch times must be whole steps");
        push(start, end - start, table[i].second);
      }
      break;
    }
    case Kind::SeededRandom: {
      if (!(dwell_min > 0.0) || dwell_max < dwell_min)
        throw InvalidScenarioError("random signal needs 0 < dwell_min <= dwell_max");
      SeededStream rng(seed);
      while (t < horizon) {
        const double dwell = dwell_min + (dwell_max - dwell_min) * rng.uniform01();
        const int mode = static_cast<int>(rng.next() % static_cast<std::uint64_t>(mode_count)) + 1;
        t = push(t, dwell, mode);
      }
      break;
    }
  }
  if (!out.empty()) out.back().end = horizon;
  return out;
}

void SwitchingScenario::validate() const {
  if (matrices.empty()) throw InvalidScenarioError("scenario needs at least one mode matrix");
  const Index n = matrices.front().rows();
  const Vector ones = Vector::Ones(n);
  for (const Matrix& m : matrices) {
    if (m.rows() != m.cols() || m.rows() != n)
      throw InvalidScenarioError("mode matrices must be square of equal dimension");
    if (!m.allFinite()) throw InvalidScenarioError("mode matrix has non-finite entries");
    const double scale = std::max(inf_norm(m), 1.0);
    if (mode == Mode::Continuous) {
      if ((m * ones).cwiseAbs().maxCoeff() > 1e-6 * scale)
        throw InvalidScenarioError("continuous modes must annihilate the ones vector");
    } else {
      if ((m * ones - ones).cwiseAbs().maxCoeff() > 1e-6 * scale)
        throw InvalidScenarioError("discrete modes must have unit row sums");
    }
  }
  if (x0.size() != n) throw InvalidScenarioError("initial state dimension mismatch");
  if (!x0.allFinite()) throw InvalidScenarioError("initial state has non-finite entries");
  if (!(horizon > 0.0)) throw InvalidScenarioError("horizon must be positive");
  if (!(sample_step > 0.0)) throw InvalidScenarioError("sample step must be positive");
}

std::pair<double, Vector> disagreement_decomposition(const Eigen::Ref<const Vector>& x) {
  if (x.size() == 0) throw InvalidInputError("empty state vector");
  const double alpha = x.mean();
  return {alpha, Vector(x.array() - alpha)};
}

namespace {

struct VerdictRules {
  double eps_conv;
  double div_threshold;
};

VerdictRules rules_for(const Vector& x0) {
  const double base = 1.0 + x0.norm();
  return {1e-8 * base, 1e6 * base};
}

void push_sample(Trajectory& tr, double t, const Vector& x) {
  auto [alpha, delta] = disagreement_decomposition(x);
  tr.samples.push_back({t, x, alpha, delta.norm()});
}

void finalize(Trajectory& tr, const SwitchingScenario& scenario, double last_dwell) {
  const VerdictRules rules = rules_for(scenario.x0);
  tr.eps_conv = rules.eps_conv;
  tr.div_threshold = rules.div_threshold;
  tr.final_state = tr.samples.back().state;
  // The trailing window checked for convergence: the final dwell, capped at a
  // tenth of the horizon so single-mode runs are judged on their tail only.
  const double last_window =
      std::clamp(last_dwell, scenario.sample_step,
                 std::max(scenario.sample_step, 0.1 * scenario.horizon));

  bool diverged = tr.overflow;
  for (const auto& s : tr.samples)
    if (!std::isfinite(s.delta_norm) || s.delta_norm > rules.div_threshold) diverged = true;
  if (diverged) {
    tr.verdict = SimVerdict::Diverged;
    return;
  }
  // Converged when the whole trailing window sits below eps_conv.
  const double t_end = tr.samples.back().time;
  bool converged = true;
  for (const auto& s : tr.samples)
    if (s.time >= t_end - last_window && s.delta_norm >= rules.eps_conv) converged = false;
  tr.verdict = converged ? SimVerdict::Converged : SimVerdict::Undecided;
}

}  // namespace

Trajectory simulate_continuous(const SwitchingScenario& scenario) {
  if (scenario.mode != Mode::Continuous)
    throw InvalidScenarioError("simulate_continuous requires a continuous scenario");
  scenario.validate();
  const auto segs =
      scenario.signal.segments(scenario.horizon, static_cast<int>(scenario.matrices.size()), false);

  Trajectory tr;
  Vector x = scenario.x0;
  push_sample(tr, 0.0, x);
  double last_dwell = scenario.sample_step;

  for (const auto& seg : segs) {
    const Matrix& l = scenario.matrices[static_cast<std::size_t>(seg.mode - 1)];
    // Interior samples on the global grid, then the exact segment hop.
    const double first_tick = std::ceil(seg.start / scenario.sample_step + 1e-12);
    for (double k = first_tick;; k += 1.0) {
      const double t = k * scenario.sample_step;
      if (t >= seg.end - 1e-12 * std::max(1.0, seg.end)) break;
      if (t <= seg.start) continue;
      Vector xt;
      try {
        xt = matrix_exponential(-l, t - seg.start) * x;
      } catch (const OverflowError&) {
        tr.overflow = true;
        break;
      }
      push_sample(tr, t, xt);
      if (!xt.allFinite()) { tr.overflow = true; break; }
    }
    if (tr.overflow) break;
    Vector xe;
    try {
      xe = matrix_exponential(-l, seg.end - seg.start) * x;
    } catch (const OverflowError&) {
      tr.overflow = true;
      break;
    }
    x = xe;
    push_sample(tr, seg.end, x);
    if (!x.allFinite()) { tr.overflow = true; break; }
    last_dwell = seg.end - seg.start;
  }
  finalize(tr, scenario, last_dwell);
  return tr;
}

Trajectory simulate_discrete(const SwitchingScenario& scenario) {
  if (scenario.mode != Mode::Discrete)
    throw InvalidScenarioError("simulate_discrete requires a discrete scenario");
  scenario.validate();
  const auto segs =
      scenario.signal.segments(scenario.horizon, static_cast<int>(scenario.matrices.size()), true);
  const int step = std::max(1, static_cast<int>(std::llround(scenario.sample_step)));

  Trajectory tr;
  Vector x = scenario.x0;
  push_sample(tr, 0.0, x);
  double last_dwell = step;

  for (const auto& seg : segs) {
    const Matrix& w = scenario.matrices[static_cast<std::size_t>(seg.mode - 1)];
    for (int t = static_cast<int>(seg.start); t < static_cast<int>(seg.end); ++t) {
      x = w * x;
      const int now = t + 1;
      if (now % step == 0 || now == static_cast<int>(seg.end)) push_sample(tr, now, x);
      if (!x.allFinite()) { tr.overflow = true; break; }
    }
    if (tr.overflow) break;
    last_dwell = seg.end - seg.start;
  }
  finalize(tr, scenario, last_dwell);
  return tr;
}

ConsensusSetReport consensus_set_check(const std::vector<Matrix>& matrices, Mode mode,
                                       const Tolerances& tol) {
  if (matrices.empty()) throw InvalidInputError("empty matrix family");
  const Index n = matrices.front().rows();
  for (const Matrix& m : matrices)
    if (m.rows() != m.cols() || m.rows() != n)
      throw InvalidInputError("family members must be square of equal dimension");

  ConsensusSetReport report;
  report.necessary_ok.reserve(matrices.size());
  bool all_normal_class = true;
  double rate_ct = std::numeric_limits<double>::infinity();
  double rate_dt = 0.0;

  for (const Matrix& m : matrices) {
    const bool necessary = (mode == Mode::Continuous)
                               ? detail::continuous_consensus_core(m, tol)
                               : detail::discrete_consensus_core(m, tol);
    report.necessary_ok.push_back(necessary);

    if (necessary && is_normal(m, tol)) {
      if (mode == Mode::Continuous) {
        if (is_eventually_exponentially_positive(-m, tol).holds) {
          const Vector ev = definiteness((m + m.transpose()) / 2.0, tol).eigenvalues;
          // lambda_2 of the symmetric part; a single agent has no slow mode.
          if (ev.size() > 1) rate_ct = std::min(rate_ct, ev[1]);
        } else {
          all_normal_class = false;
        }
      } else {
        if (is_eventually_stochastic(m, tol)) {
          Vector moduli = spectrum(m, tol).eigenvalues.cwiseAbs();
          std::sort(moduli.data(), moduli.data() + moduli.size(), std::greater<double>());
          if (moduli.size() > 1) rate_dt = std::max(rate_dt, moduli[1]);
        } else {
          all_normal_class = false;
        }
      }
    } else {
      all_normal_class = false;
    }
  }

  report.all_necessary_ok =
      std::all_of(report.necessary_ok.begin(), report.necessary_ok.end(), [](bool b) { return b; });
  if (!report.all_necessary_ok) {
    report.sufficient = SufficiencyClass::None;
  } else if (all_normal_class) {
    report.sufficient = SufficiencyClass::NormalClass;
    const double rate = (mode == Mode::Continuous) ? rate_ct : rate_dt;
    if (std::isfinite(rate)) report.decay_rate = rate;
  } else {
    report.sufficient = SufficiencyClass::ClfReferral;
  }
  return report;
}

}  // namespace slc
