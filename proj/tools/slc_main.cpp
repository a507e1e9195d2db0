// slc — signed-Laplacian consensus toolbox.
//
// Subcommands: classify, analyze, simulate, clf, bipartite.
// Exit codes: 0 decisive verdict, 1 error, 2 undecided/unknown.

#include <CLI11.hpp>

#include "slc/io.hpp"

#include <fstream>
#include <iostream>

namespace {

constexpr const char* kVersion = "0.1.0";

using slc::Matrix;
using slc::Mode;
using slc::Tolerances;
namespace io = slc::io;

struct CommonFlags {
  std::string json_path;
  bool no_timestamp = false;
  double tol_zero = -1.0;
  double tol_gap = -1.0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--json", flags.json_path, "write the full run report to this file");
  cmd->add_flag("--no-timestamp", flags.no_timestamp, "omit the timestamp (byte-stable output)");
  cmd->add_option("--tol-zero", flags.tol_zero, "override the relative zero threshold");
  cmd->add_option("--tol-gap", flags.tol_gap, "override the relative dominance-gap threshold");
  cmd->add_option("--seed", flags.seed, "seed for seeded-random switching signals")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
}

Tolerances tolerances_from(const CommonFlags& flags) {
  Tolerances tol;
  if (flags.tol_zero > 0) tol.tol_zero = flags.tol_zero;
  if (flags.tol_gap > 0) tol.gap_min = flags.tol_gap;
  return tol;
}

void emit(const io::RunReport& report, const CommonFlags& flags) {
  if (flags.json_path.empty()) return;
  std::ofstream out(flags.json_path);
  if (!out) throw io::FileNotFoundError("cannot write " + flags.json_path);
  out << report.to_json().dump(2) << '\n';
}

io::RunReport make_report(const std::string& command, std::vector<std::filesystem::path> inputs,
                          const Tolerances& tol, const CommonFlags& flags) {
  io::RunReport report;
  report.command = command;
  report.inputs = std::move(inputs);
  report.tolerances = tol;
  report.with_timestamp = !flags.no_timestamp;
  report.version = kVersion;
  return report;
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

void print_classification(const slc::ClassificationReport& r) {
  const char* kind = r.kind == slc::MatrixKind::Laplacian    ? "laplacian"
                     : r.kind == slc::MatrixKind::RowSumOne ? "row-sum-one"
                                                             : "general";
  std::cout << "kind                 : " << kind << "\n";
  std::cout << "eigenvalues          :";
  for (slc::Index i = 0; i < r.eigen.size(); ++i) {
    const auto z = r.eigen.eigenvalues[i];
    std::cout << " " << z.real();
    if (std::abs(z.imag()) > 0) std::cout << (z.imag() > 0 ? "+" : "") << z.imag() << "i";
  }
  std::cout << "\n";
  std::cout << "corank               : " << r.rank.corank << "\n";
  std::cout << "weight balanced      : " << yesno(r.weight_balanced) << "\n";
  std::cout << "normal               : " << yesno(r.normal) << "\n";
  std::cout << "marginally stable ct : " << yesno(r.marginally_stable_ct) << "\n";
  std::cout << "marginally stable dt : " << yesno(r.marginally_stable_dt) << "\n";
  std::cout << "PF (right / left)    : " << yesno(r.pf_right.holds) << " / "
            << yesno(r.pf_left.holds) << "  (probe shift " << r.probe_shift << ")\n";
  std::cout << "PF gap               : " << yesno(r.pf_gap) << "\n";
  std::cout << "EP                   : " << yesno(r.is_ep) << "\n";
  std::cout << "EEP                  : " << yesno(r.eep.holds);
  if (r.eep.witness_d)
    std::cout << "  (witness d = " << *r.eep.witness_d << ", validated "
              << yesno(r.eep.witness_validated) << ")";
  std::cout << "\n";
  std::cout << "ES / EDS             : " << yesno(r.is_es) << " / " << yesno(r.is_eds) << "\n";
  std::cout << "SPF/SEP/SEEP/SES     : " << yesno(r.signed_flags.is_spf) << "/"
            << yesno(r.signed_flags.is_sep) << "/" << yesno(r.signed_flags.is_seep) << "/"
            << yesno(r.signed_flags.is_ses) << "\n";
  if (r.signed_flags.signature) {
    std::cout << "signature            :";
    for (slc::Index i = 0; i < r.signed_flags.signature->size(); ++i)
      std::cout << " " << ((*r.signed_flags.signature)[i] > 0 ? "+1" : "-1");
    std::cout << "\n";
  }
  const auto& sp = r.sym_part;
  std::cout << "symmetric part       : "
            << (sp.verdict == slc::Definiteness::PositiveDefinite       ? "positive-definite"
                : sp.verdict == slc::Definiteness::PositiveSemidefinite ? "psd"
                                                                        : "indefinite")
            << " (corank " << sp.corank << ", min eig " << sp.min_eigenvalue << ")\n";
}

int run_classify(const std::string& file, const std::string& as, const std::string& batch_dir,
                 const CommonFlags& flags) {
  const Tolerances tol = tolerances_from(flags);
  slc::MatrixKind kind = slc::MatrixKind::Auto;
  if (as == "laplacian") kind = slc::MatrixKind::Laplacian;
  else if (as == "rowsum") kind = slc::MatrixKind::RowSumOne;
  else if (as == "general") kind = slc::MatrixKind::General;

  std::vector<std::filesystem::path> files;
  if (!batch_dir.empty()) {
    for (const auto& entry : std::filesystem::directory_iterator(batch_dir)) {
      const auto ext = entry.path().extension();
      if (entry.is_regular_file() && (ext == ".csv" || ext == ".json"))
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw io::FileNotFoundError("no .csv/.json inputs in " + batch_dir);
  } else {
    files.emplace_back(file);
  }

  io::json results = io::json::array();
  for (const auto& path : files) {
    const Matrix m = io::read_matrix_any(path);
    const auto report = slc::classify_report(m, kind, tol);
    if (files.size() > 1) std::cout << "== " << path.string() << " ==\n";
    print_classification(report);
    results.push_back(io::to_json(report));
  }
  auto run = make_report("classify", files, tol, flags);
  run.result = (files.size() == 1) ? results[0] : results;
  emit(run, flags);
  return 0;
}

int run_analyze(const std::string& file, const std::string& mode_str, bool undirected,
                const CommonFlags& flags) {
  const Tolerances tol = tolerances_from(flags);
  const Mode mode = (mode_str == "dt") ? Mode::Discrete : Mode::Continuous;
  const Matrix m = io::read_matrix_any(file);

  slc::ConsensusVerdict v;
  if (undirected)
    v = slc::undirected_verdict(m, mode, tol);
  else
    v = (mode == Mode::Continuous) ? slc::analyze_continuous(m, tol) : slc::analyze_discrete(m, tol);

  std::cout << "consensus : " << yesno(v.achieves_consensus) << "\n";
  std::cout << "basis     : " << v.basis << "\n";
  if (v.gap_note) std::cout << "note      : right-PF-only gap instance\n";
  if (v.limit_functional) {
    std::cout << "limit c   :";
    for (slc::Index i = 0; i < v.limit_functional->size(); ++i)
      std::cout << " " << (*v.limit_functional)[i];
    std::cout << (v.mixed_sign_limit ? "  (mixed signs)" : "") << "\n";
  }
  auto run = make_report("analyze", {file}, tol, flags);
  run.result = io::to_json(v);
  emit(run, flags);
  return 0;
}

int run_simulate(const std::string& file, const std::string& traj_path, const CommonFlags& flags) {
  const Tolerances tol = tolerances_from(flags);
  auto scenario = io::read_scenario_json(file);
  if (flags.seed_set && scenario.signal.kind == slc::SwitchingSignal::Kind::SeededRandom)
    scenario.signal.seed = flags.seed;

  const auto trajectory = (scenario.mode == Mode::Continuous) ? slc::simulate_continuous(scenario)
                                                              : slc::simulate_discrete(scenario);
  const char* verdict = trajectory.verdict == slc::SimVerdict::Converged   ? "converged"
                        : trajectory.verdict == slc::SimVerdict::Diverged ? "diverged"
                                                                           : "undecided";
  std::cout << "verdict     : " << verdict << (trajectory.overflow ? " (overflow)" : "") << "\n";
  std::cout << "samples     : " << trajectory.samples.size() << "\n";
  std::cout << "final delta : " << trajectory.samples.back().delta_norm << "\n";
  std::cout << "final alpha : " << trajectory.samples.back().alpha << "\n";
  if (!traj_path.empty()) io::write_trajectory_csv(traj_path, trajectory);

  auto run = make_report("simulate", {file}, tol, flags);
  run.result = io::to_json(trajectory);
  emit(run, flags);
  return trajectory.verdict == slc::SimVerdict::Undecided ? 2 : 0;
}

int run_clf(const std::vector<std::string>& files, const std::string& mode_str, int max_order,
            int budget, const std::string& cert_path, const std::string& verify_path,
            const CommonFlags& flags) {
  const Tolerances tol = tolerances_from(flags);
  const Mode mode = (mode_str == "dt") ? Mode::Discrete : Mode::Continuous;
  std::vector<Matrix> mats;
  std::vector<std::filesystem::path> inputs;
  for (const auto& f : files) {
    mats.push_back(io::read_matrix_any(f));
    inputs.emplace_back(f);
  }

  if (!verify_path.empty()) {
    std::ifstream in(verify_path);
    if (!in) throw io::FileNotFoundError("cannot open " + verify_path);
    const auto cert = io::certificate_from_json(io::json::parse(in));
    const auto basis = slc::projection_basis(mats.front().rows());
    const auto margins = slc::verify_certificate(cert.P, mats, mode, cert.order, basis);
    std::cout << "verification : " << (margins.passes ? "pass" : "fail") << "\n";
    std::cout << "min eig P    : " << margins.min_eig_P << "\n";
    for (std::size_t k = 0; k < margins.block_max_eigs.size(); ++k)
      std::cout << "block " << (k + 1) << " max  : " << margins.block_max_eigs[k] << "\n";
    inputs.emplace_back(verify_path);
    auto run = make_report("clf-verify", inputs, tol, flags);
    run.result = {{"passes", margins.passes},
                  {"min_eig_P", margins.min_eig_P},
                  {"block_max_eigs", margins.block_max_eigs},
                  {"margin_min", margins.margin_min}};
    emit(run, flags);
    return margins.passes ? 0 : 2;
  }

  slc::SdpBudget sdp_budget;
  if (budget > 0) sdp_budget.max_iterations = budget;
  const auto cert = slc::clf_consensus_certificate(mats, mode, max_order, sdp_budget, tol);
  const bool feasible = cert.status == slc::ClfStatus::Feasible;
  std::cout << "status     : " << (feasible ? "feasible" : "unknown") << "\n";
  std::cout << "order      : " << cert.order << "\n";
  std::cout << "iterations : " << cert.iterations << "\n";
  if (feasible) std::cout << "min eig P  : " << cert.min_eig_P << "\n";
  if (!cert_path.empty()) {
    std::ofstream out(cert_path);
    if (!out) throw io::FileNotFoundError("cannot write " + cert_path);
    out << io::certificate_to_json(cert).dump(2) << '\n';
  }
  auto run = make_report("clf", inputs, tol, flags);
  run.result = io::certificate_to_json(cert);
  emit(run, flags);
  return feasible ? 0 : 2;
}

int run_bipartite(const std::vector<std::string>& files, const std::string& mode_str, bool set_check,
                  int max_order, int budget, const CommonFlags& flags) {
  const Tolerances tol = tolerances_from(flags);
  const Mode mode = (mode_str == "dt") ? Mode::Discrete : Mode::Continuous;
  std::vector<Matrix> mats;
  std::vector<std::filesystem::path> inputs;
  for (const auto& f : files) {
    mats.push_back(io::read_matrix_any(f));
    inputs.emplace_back(f);
  }

  if (set_check || mats.size() > 1) {
    slc::SdpBudget sdp_budget;
    if (budget > 0) sdp_budget.max_iterations = budget;
    const auto report = slc::bipartite_consensus_set_check(mats, mode, tol, max_order, sdp_budget);
    std::cout << "signature :";
    for (slc::Index i = 0; i < report.signature.s.size(); ++i)
      std::cout << " " << (report.signature.s[i] > 0 ? "+1" : "-1");
    std::cout << "\n";
    const char* suff =
        report.set_check.sufficient == slc::SufficiencyClass::NormalClass   ? "normal-class"
        : report.set_check.sufficient == slc::SufficiencyClass::ClfReferral ? "clf-referral"
                                                                             : "none";
    std::cout << "necessary : " << yesno(report.set_check.all_necessary_ok) << "\n";
    std::cout << "sufficient: " << suff << "\n";
    bool decisive = report.set_check.sufficient == slc::SufficiencyClass::NormalClass ||
                    !report.set_check.all_necessary_ok;
    if (report.certificate) {
      const bool feasible = report.certificate->status == slc::ClfStatus::Feasible;
      std::cout << "clf       : " << (feasible ? "feasible" : "unknown") << " (order "
                << report.certificate->order << ")\n";
      decisive = decisive || feasible;
    }
    auto run = make_report("bipartite-set", inputs, tol, flags);
    run.result = io::to_json(report);
    emit(run, flags);
    return decisive ? 0 : 2;
  }

  const auto verdict = slc::analyze_bipartite(mats.front(), mode, tol);
  std::cout << "bipartite consensus : " << yesno(verdict.achieves_bipartite) << "\n";
  std::cout << "signature           :";
  for (slc::Index i = 0; i < verdict.signature.s.size(); ++i)
    std::cout << " " << (verdict.signature.s[i] > 0 ? "+1" : "-1");
  std::cout << "\n";
  std::cout << "structural balance  : " << yesno(slc::is_structurally_balanced(mats.front()))
            << " (informational)\n";
  auto run = make_report("bipartite", inputs, tol, flags);
  run.result = io::to_json(verdict);
  emit(run, flags);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"signed-Laplacian consensus toolbox"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonFlags flags;

  // classify
  std::string cls_file, cls_as = "auto", cls_batch;
  auto* classify = app.add_subcommand("classify", "matrix-class report (PF/EP/EEP/ES and friends)");
  classify->add_option("file", cls_file, "matrix CSV or graph JSON");
  classify->add_option("--as", cls_as, "interpret as: auto|laplacian|rowsum|general")
      ->check(CLI::IsMember({"auto", "laplacian", "rowsum", "general"}));
  classify->add_option("--batch", cls_batch, "classify every .csv/.json in a directory");
  add_common(classify, flags);

  // analyze
  std::string ana_file, ana_mode = "ct";
  bool ana_undirected = false;
  auto* analyze = app.add_subcommand("analyze", "time-invariant consensus verdict");
  analyze->add_option("file", ana_file, "matrix CSV or graph JSON")->required();
  analyze->add_option("--mode", ana_mode, "ct (x' = -Lx) or dt (x+ = Wx)")
      ->check(CLI::IsMember({"ct", "dt"}));
  analyze->add_flag("--undirected", ana_undirected, "use the symmetric-case exact criteria");
  add_common(analyze, flags);

  // simulate
  std::string sim_file, sim_traj;
  auto* simulate = app.add_subcommand("simulate", "switching-protocol simulation");
  simulate->add_option("scenario", sim_file, "scenario JSON")->required();
  simulate->add_option("--traj", sim_traj, "write the sampled trajectory CSV here");
  add_common(simulate, flags);

  // clf
  std::vector<std::string> clf_files;
  std::string clf_mode = "ct", clf_cert, clf_verify;
  int clf_max_order = 2, clf_budget = 0;
  auto* clf = app.add_subcommand("clf", "common-Lyapunov certificate search / verification");
  clf->add_option("files", clf_files, "mode matrices (CSV or graph JSON)")->required();
  clf->add_option("--mode", clf_mode, "ct or dt")->check(CLI::IsMember({"ct", "dt"}));
  clf->add_option("--max-order", clf_max_order, "highest Kronecker order to try (default 2)");
  clf->add_option("--budget", clf_budget, "iteration budget per order (default 10000)");
  clf->add_option("--cert", clf_cert, "write the certificate JSON here");
  clf->add_option("--verify", clf_verify, "verify this certificate JSON instead of searching");
  add_common(clf, flags);

  // bipartite
  std::vector<std::string> bip_files;
  std::string bip_mode = "ct";
  bool bip_set = false;
  int bip_max_order = 2, bip_budget = 0;
  auto* bipartite = app.add_subcommand("bipartite", "bipartite-consensus analysis");
  bipartite->add_option("files", bip_files, "matrix (one) or mode family (several)")->required();
  bipartite->add_option("--mode", bip_mode, "ct or dt")->check(CLI::IsMember({"ct", "dt"}));
  bipartite->add_flag("--set", bip_set, "treat the inputs as a switching family");
  bipartite->add_option("--max-order", bip_max_order, "highest Kronecker order for the CLF search");
  bipartite->add_option("--budget", bip_budget, "iteration budget per order");
  add_common(bipartite, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) {
      if (cls_file.empty() && cls_batch.empty())
        throw slc::InvalidInputError("classify needs a file or --batch");
      return run_classify(cls_file, cls_as, cls_batch, flags);
    }
    if (analyze->parsed()) return run_analyze(ana_file, ana_mode, ana_undirected, flags);
    if (simulate->parsed()) return run_simulate(sim_file, sim_traj, flags);
    if (clf->parsed())
      return run_clf(clf_files, clf_mode, clf_max_order, clf_budget, clf_cert, clf_verify, flags);
    if (bipartite->parsed())
      return run_bipartite(bip_files, bip_mode, bip_set, bip_max_order, bip_budget, flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
