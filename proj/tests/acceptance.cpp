// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Fixtures are desk scale (n <= 4, lifted dimension <= 16).

#include "slc/bipartite.hpp"
#include "slc/classify.hpp"
#include "slc/clf.hpp"
#include "slc/consensus.hpp"
#include "slc/graph.hpp"
#include "slc/numerics.hpp"
#include "slc/switching.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace slc;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::vector<Complex> to_list(const ComplexVector& v) {
  return {v.data(), v.data() + v.size()};
}

double spectra_distance(const Matrix& m, std::vector<Complex> expected) {
  return oracles::multiset_distance(to_list(spectrum(m).eigenvalues), std::move(expected));
}

// ---- criterion bodies ----------------------------------------------------

void criterion_corank2(Check& c) {
  const Matrix l = fixtures::corank2_laplacian();
  c.expect(spectra_distance(l, {{0, 0}, {0, 0}, {4, 0}, {4, 0}}) < 1e-9,
           "spectrum is not {0,0,4,4} at 1e-9");
  c.expect(corank(l).corank == 2, "corank is not 2");
  c.expect(marginal_stability(Matrix(-l), Mode::Continuous), "-L should be marginally stable");
  c.expect(!analyze_continuous(l).achieves_consensus, "consensus must fail at corank 2");
}

void criterion_gap_stable(Check& c) {
  const Matrix l = fixtures::right_pf_only_stable();
  c.expect(spectra_distance(l, {{0, 0}, {0.7325, 0.1220}, {0.7325, -0.1220}, {3.8349, 0}}) < 5e-4,
           "four-decimal spectrum mismatch");
  Matrix b = -l;
  b.diagonal().array() += 2.0;
  c.expect(pf_property(b).holds, "PF property must hold at shift 2");
  c.expect(!pf_property(Matrix(b.transpose())).holds, "transposed PF property must fail");
  c.expect(!is_eventually_exponentially_positive(Matrix(-l)).holds, "EEP must fail");
}

void criterion_gap_unstable(Check& c) {
  const Matrix l = fixtures::right_pf_only_unstable();
  const Spectrum s = spectrum(Matrix(-l));
  c.expect(std::abs(s.eigenvalues[0] - Complex{0.0890, 0.0}) < 5e-4,
           "-L should have the unstable eigenvalue +0.0890");
  c.expect(!marginal_stability(Matrix(-l), Mode::Continuous), "-L must be unstable");
  c.expect(!analyze_continuous(l).achieves_consensus, "consensus must fail");
}

void criterion_eep_consensus(Check& c) {
  const Matrix l = fixtures::eep_digraph_laplacian();
  c.expect(spectra_distance(l, {{0, 0}, {1.6956, 0.9452}, {1.6956, -0.9452}, {3.2089, 0}}) < 5e-4,
           "four-decimal spectrum mismatch");
  const auto eep = is_eventually_exponentially_positive(Matrix(-l));
  c.expect(eep.holds, "EEP must hold");
  c.expect(eep.witness_d.has_value() && eep.witness_validated,
           "analytic shift witness failed to validate");

  const auto verdict = analyze_continuous(l);
  c.expect(verdict.achieves_consensus, "consensus must hold");
  if (verdict.limit_functional) {
    oracles::Rng rng(100);
    const double t = 20.0 / 1.6956;
    for (int trial = 0; trial < 5; ++trial) {
      const Vector x0 = rng.vector(4, -3.0, 3.0);
      const Vector limit = matrix_exponential(-l, t) * x0;
      const double target = verdict.limit_functional->dot(x0);
      c.expect((limit - Vector::Constant(4, target)).cwiseAbs().maxCoeff() < 1e-6,
               "exponential limit does not match the limit functional at 1e-6");
    }
  } else {
    c.expect(false, "missing limit functional");
  }
}

void criterion_weight_balanced_trio(Check& c) {
  const Matrix l5 = fixtures::wb_eep_indefinite_sym_part();
  const Matrix l6 = fixtures::wb_eep_indefinite_posdiag();
  const Matrix l7 = fixtures::nonnormal_psd_sym_part();
  c.expect(is_weight_balanced(l5) && is_weight_balanced(l6) && is_weight_balanced(l7),
           "all three fixtures must be weight balanced");
  c.expect(is_eventually_exponentially_positive(Matrix(-l5)).holds, "first fixture must be EEP");
  c.expect(is_eventually_exponentially_positive(Matrix(-l6)).holds, "second fixture must be EEP");

  auto sym_spectrum = [](const Matrix& l) { return definiteness((l + l.transpose()) / 2.0); };
  auto close_set = [](const Vector& got, std::vector<double> want) {
    if (got.size() != static_cast<Index>(want.size())) return false;
    std::sort(want.begin(), want.end());
    for (Index i = 0; i < got.size(); ++i)
      if (std::abs(got[i] - want[static_cast<std::size_t>(i)]) >= 5e-4) return false;
    return true;
  };
  c.expect(close_set(sym_spectrum(l5).eigenvalues, {-0.0402, 0, 0.1248, 0.2655}),
           "first symmetric-part spectrum mismatch at 5e-4");
  c.expect(close_set(sym_spectrum(l6).eigenvalues, {-0.0446, 0, 0.0404, 0.3441}),
           "second symmetric-part spectrum mismatch at 5e-4");
  c.expect(close_set(sym_spectrum(l7).eigenvalues, {0, 0.7192, 1.5, 2.7808}),
           "third symmetric-part spectrum mismatch at 5e-4");
  c.expect(!is_normal(l7), "third fixture must not be normal");
  c.expect(sym_spectrum(l7).is_psd_of_corank(1), "third symmetric part must be psd of corank 1");
}

void criterion_discrete_fixtures(Check& c) {
  const Matrix l = fixtures::corank2_laplacian();
  c.expect(spectra_distance(Matrix(Matrix::Identity(4, 4) - l / 10.0),
                            {{0.6, 0}, {0.6, 0}, {1, 0}, {1, 0}}) < 1e-9,
           "I - L/10 spectrum mismatch");
  c.expect(spectra_distance(Matrix(Matrix::Identity(4, 4) - l / 2.0),
                            {{-1, 0}, {-1, 0}, {1, 0}, {1, 0}}) < 1e-9,
           "I - L/2 spectrum mismatch");

  const auto verdict = analyze_discrete(fixtures::pf_not_es_gain());
  c.expect(verdict.achieves_consensus, "PF-but-not-ES gain must reach consensus");
  c.expect(!is_eventually_stochastic(fixtures::pf_not_es_gain()),
           "PF-but-not-ES gain must fail the ES test");

  const auto pf = pf_property(fixtures::pf_unstable_gain());
  c.expect(pf.holds, "unstable gain must have the PF property");
  c.expect(std::abs(pf.rho - 1.6447) < 5e-4, "spectral radius must be 1.6447 at 5e-4");
  Vector expected(4);
  expected << 0.2303, 0.8242, 0.4991, 0.1362;
  c.expect(pf.right_vector &&
               (*pf.right_vector - expected).cwiseAbs().maxCoeff() < 5e-4,
           "dominant right eigenvector mismatch at 5e-4");
}

void criterion_switching_divergence(Check& c) {
  SwitchingScenario sc;
  sc.mode = Mode::Continuous;
  sc.matrices = fixtures::divergent_ct_pair();
  sc.signal = SwitchingSignal::periodic({1, 2}, {1.0, 1.0});
  sc.x0 = fixtures::divergent_x0();
  sc.horizon = 400.0;
  sc.sample_step = 0.5;
  const auto tr = simulate_continuous(sc);
  c.expect(tr.verdict == SimVerdict::Diverged, "alternating continuous pair must diverge");

  auto delta_at = [&](double t) {
    for (const auto& s : tr.samples)
      if (std::abs(s.time - t) < 1e-9) return s.delta_norm;
    return -1.0;
  };
  double prev = delta_at(0.0);
  for (int period = 1; period <= 11; ++period) {
    const double now = delta_at(2.0 * period);
    c.expect(now > prev, "disagreement must grow across the first ten periods");
    prev = now;
  }

  const auto pair = fixtures::divergent_dt_pair();
  c.expect(std::abs(spectrum(Matrix(pair[1] * pair[0])).spectral_radius - 1.1008) < 5e-4,
           "product spectral radius must be 1.1008 at 5e-4");
  SwitchingScenario sd;
  sd.mode = Mode::Discrete;
  sd.matrices = pair;
  sd.signal = SwitchingSignal::periodic({1, 2}, {1, 1});
  sd.x0 = fixtures::divergent_x0();
  sd.horizon = 800;
  sd.sample_step = 2;
  c.expect(simulate_discrete(sd).verdict == SimVerdict::Diverged,
           "alternating discrete pair must diverge");
}

void criterion_quadratic_clf(Check& c) {
  const auto pair = fixtures::quadratic_clf_pair();
  const auto basis = projection_basis(3);
  const auto margins =
      verify_certificate(fixtures::quadratic_clf_matrix(), pair, Mode::Continuous, 1, basis);
  c.expect(margins.passes, "reference certificate must verify");
  c.expect(margins.min_eig_P > 0, "P must be positive definite");
  for (double top : margins.block_max_eigs)
    c.expect(top < 0, "all block maxima must be negative");

  const auto cert = sdp_feasibility(assemble_lmi(pair, Mode::Continuous, 1, basis), {10000});
  c.expect(cert.status == ClfStatus::Feasible,
           "search must find a certificate within 10^4 iterations");
  if (cert.status == ClfStatus::Feasible)
    c.expect(verify_certificate(cert.P, pair, Mode::Continuous, 1, basis).passes,
             "search output must re-verify");
}

void criterion_planar_lifts(Check& c) {
  const auto basis = projection_basis(3);
  const auto q = basis.Q;
  const auto [b1, b2] = fixtures::planar_noquad_ct_projected();
  const std::vector<Matrix> ct{fixtures::lift_ct(b1, q), fixtures::lift_ct(b2, q)};
  const auto [w1, w2] = fixtures::planar_noquad_dt_projected();
  const std::vector<Matrix> dt{fixtures::lift_dt(w1, q), fixtures::lift_dt(w2, q)};

  for (const auto& l : ct) {
    const Matrix proj = q * l * q.transpose();
    c.expect(spectra_distance(proj, {{1, 1}, {1, -1}}) < 1e-6,
             "continuous projection spectrum must be {1 +/- i} at 1e-6");
  }
  for (const auto& w : dt) {
    const Matrix proj = q * w * q.transpose();
    c.expect(spectra_distance(proj, {{-0.2, 0.4}, {-0.2, -0.4}}) < 1e-6,
             "discrete projection spectrum must be {-0.2 +/- 0.4i} at 1e-6");
  }

  const auto ct1 = sdp_feasibility(assemble_lmi(ct, Mode::Continuous, 1, basis), {10000});
  c.expect(ct1.status == ClfStatus::Unknown, "continuous pair must stay unknown at order 1");
  const auto dt1 = sdp_feasibility(assemble_lmi(dt, Mode::Discrete, 1, basis), {10000});
  c.expect(dt1.status == ClfStatus::Unknown, "discrete pair must stay unknown at order 1");

  const auto ct2 = sdp_feasibility(assemble_lmi(ct, Mode::Continuous, 2, basis), {10000});
  c.expect(ct2.status == ClfStatus::Feasible, "continuous pair must certify at order 2");
  if (ct2.status == ClfStatus::Feasible)
    c.expect(verify_certificate(ct2.P, ct, Mode::Continuous, 2, basis).passes,
             "order-2 continuous certificate must re-verify");
  const auto dt2 = sdp_feasibility(assemble_lmi(dt, Mode::Discrete, 2, basis), {10000});
  c.expect(dt2.status == ClfStatus::Feasible, "discrete pair must certify at order 2");
  if (dt2.status == ClfStatus::Feasible)
    c.expect(verify_certificate(dt2.P, dt, Mode::Discrete, 2, basis).passes,
             "order-2 discrete certificate must re-verify");
}

void criterion_property_suites(Check& c) {
  // Power-vs-eigen agreement for eventual positivity on 200 random 4x4
  // signed matrices.
  {
    oracles::Rng rng(2020);
    int confirmed = 0;
    for (int trial = 0; trial < 200; ++trial) {
      Matrix m = rng.matrix(4, 0.05, 1.0);
      const int flips = rng.integer(0, 3);
      for (int f = 0; f < flips; ++f)
        m(rng.integer(0, 3), rng.integer(0, 3)) = rng.uniform(-0.4, 0.0);
      const auto verdict = is_eventually_positive(m);
      if (verdict.power_threshold.has_value()) {
        ++confirmed;
        c.expect(verdict.holds, "positive powers must imply the eigen characterization");
      }
    }
    c.expect(confirmed > 50, "sample contains too few eventually positive instances");
  }

  // Three-way equivalence on 100 random weight-balanced instances.
  {
    oracles::Rng rng(3030);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 100; ++trial) {
      const Matrix l = oracles::random_weight_balanced_laplacian(rng, 4);
      const Spectrum s = spectrum(l);
      bool clear = true;
      int near_zero = 0;
      for (Index i = 0; i < 4; ++i) {
        const Complex z = s.eigenvalues[i];
        if (std::abs(z) < 1e-3) {
          ++near_zero;
          continue;
        }
        if (std::abs(z.real()) < 1e-3) clear = false;
      }
      if (!clear || near_zero != 1) continue;
      ++checked;
      const bool eep = is_eventually_exponentially_positive(Matrix(-l)).holds;
      const bool spectral =
          marginal_stability(Matrix(-l), Mode::Continuous) && corank(l).corank == 1;
      c.expect(eep == spectral, "EEP and the spectral test must agree when weight balanced");
    }
    c.expect(checked == 100, "failed to draw 100 usable weight-balanced instances");

    // On normal instances the symmetric-part test joins the equivalence.
    for (int trial = 0; trial < 40; ++trial) {
      const Matrix l = oracles::random_normal_laplacian(rng, 4, trial % 2 == 0);
      const bool eep = is_eventually_exponentially_positive(Matrix(-l)).holds;
      const bool spectral =
          marginal_stability(Matrix(-l), Mode::Continuous) && corank(l).corank == 1;
      const bool sym = definiteness((l + l.transpose()) / 2.0).is_psd_of_corank(1);
      c.expect(eep == spectral && spectral == sym,
               "normal instances must satisfy the three-way equivalence");
    }
  }

  // Alpha invariance and the exponential envelope on a normal (symmetric)
  // EEP switching family.
  {
    Matrix path(4, 4), cycle(4, 4);
    path << 1, -1, 0, 0, -1, 2, -1, 0, 0, -1, 2, -1, 0, 0, -1, 1;
    cycle << 2, -1, 0, -1, -1, 2, -1, 0, 0, -1, 2, -1, -1, 0, -1, 2;
    const std::vector<Matrix> family{path, cycle};
    const auto screen = consensus_set_check(family, Mode::Continuous);
    c.expect(screen.sufficient == SufficiencyClass::NormalClass,
             "symmetric EEP family must classify as normal");
    if (screen.decay_rate) {
      SwitchingScenario sc;
      sc.mode = Mode::Continuous;
      sc.matrices = family;
      sc.signal = SwitchingSignal::seeded_random(17, 0.3, 1.1);
      sc.x0 = Vector::LinSpaced(4, -3.0, 2.0);
      sc.horizon = 10.0;
      sc.sample_step = 0.25;
      const auto tr = simulate_continuous(sc);
      const double d0 = tr.samples.front().delta_norm;
      for (const auto& s : tr.samples) {
        c.expect(std::abs(s.alpha - tr.samples.front().alpha) < 1e-9,
                 "alpha must stay invariant");
        c.expect(s.delta_norm <= d0 * std::exp(-*screen.decay_rate * s.time) * (1.0 + 1e-6),
                 "disagreement must respect the exponential envelope");
      }
    } else {
      c.expect(false, "normal family must report a decay rate");
    }
  }

  // Gauge equivalence on 100 random signature/matrix pairs.
  {
    oracles::Rng rng(4040);
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix base = rng.matrix(4, 0.1, 1.0);
      const Vector s1 = rng.signature(4);
      const Matrix m = s1.asDiagonal() * base * s1.asDiagonal();
      const Vector s2 = rng.signature(4);
      const Matrix gauged = s2.asDiagonal() * m * s2.asDiagonal();
      c.expect(oracles::multiset_distance(to_list(spectrum(m).eigenvalues),
                                          to_list(spectrum(gauged).eigenvalues)) < 1e-9,
               "gauging must preserve spectra to 1e-9");
      const auto vm = signed_variants(m);
      const auto vg = signed_variants(gauged);
      c.expect(vm.is_spf && vg.is_spf, "gauged positive matrices must stay signed-PF");
      c.expect(vm.is_sep == vg.is_sep && vm.is_seep == vg.is_seep && vm.is_ses == vg.is_ses,
               "signed flags must transport");
      if (vm.signature && vg.signature) {
        Vector expected = (s2.array() * vm.signature->array()).matrix();
        if (expected[0] < 0) expected = -expected;
        c.expect((*vg.signature - expected).cwiseAbs().maxCoeff() == 0.0,
                 "signatures must compose with the gauge");
      }
    }
  }

  // Simulator semigroup consistency at 1e-9.
  {
    SwitchingScenario sc;
    sc.mode = Mode::Continuous;
    sc.matrices = fixtures::divergent_ct_pair();
    sc.signal = SwitchingSignal::periodic({1, 2}, {1.0, 1.0});
    sc.x0 = fixtures::divergent_x0();
    sc.horizon = 8.0;
    sc.sample_step = 0.5;
    const auto full = simulate_continuous(sc);
    auto head = sc;
    head.horizon = 4.0;
    const auto first = simulate_continuous(head);
    auto tail = sc;
    tail.horizon = 4.0;
    tail.x0 = first.final_state;
    const auto second = simulate_continuous(tail);
    c.expect((second.final_state - full.final_state).cwiseAbs().maxCoeff() < 1e-9,
             "split simulation must match the single run at 1e-9");
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Check&)> body;
  };
  const std::vector<Criterion> criteria{
      {"corank-2 fixture: spectrum, corank, no consensus", criterion_corank2},
      {"right-PF-only stable fixture: spectrum, one-sided PF, no EEP", criterion_gap_stable},
      {"right-PF-only unstable fixture: instability, no consensus", criterion_gap_unstable},
      {"EEP digraph fixture: spectrum, witness shift, consensus limit", criterion_eep_consensus},
      {"weight-balanced trio: balance, EEP, symmetric-part spectra", criterion_weight_balanced_trio},
      {"discrete fixtures: shifted spectra, ES gap, dominant eigenpair", criterion_discrete_fixtures},
      {"switching divergence: alternating growth, product radius", criterion_switching_divergence},
      {"quadratic certificate: reference P verifies, search succeeds", criterion_quadratic_clf},
      {"planar lifts: projections, order-1 unknown, order-2 certified", criterion_planar_lifts},
      {"property suites: power/eigen, three-way, envelope, gauge, semigroup",
       criterion_property_suites},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    try {
      criteria[i].body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    if (check.ok) {
      std::printf("[PASS] %2zu %s\n", i + 1, criteria[i].name);
    } else {
      std::printf("[FAIL] %2zu %s -- %s\n", i + 1, criteria[i].name, check.detail.c_str());
      ++failures;
    }
  }
  if (failures) std::printf("%d of %zu acceptance criteria failing\n", failures, criteria.size());
  return failures;
}
