#include "slc/io.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace slc::io {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFoundError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<double> to_vector(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ParseError(std::string(what) + " must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Matrix matrix_from_rows(const json& rows, const char* what) {
  if (!rows.is_array() || rows.empty()) throw ParseError(std::string(what) + " must be a row list");
  const auto first = to_vector(rows[0], what);
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(first.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto row = to_vector(rows[i], what);
    if (row.size() != first.size()) throw ParseError(std::string(what) + " rows differ in length");
    for (std::size_t k = 0; k < row.size(); ++k)
      m(static_cast<Index>(i), static_cast<Index>(k)) = row[k];
  }
  return m;
}

json rows_to_json(const Eigen::Ref<const Matrix>& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::Ref<const Vector>& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

}  // namespace

Matrix parse_matrix_csv(const std::string& text, const std::string& origin) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    for (char& c : line)
      if (c == ',' || c == '\t' || c == '\r' || c == ';') c = ' ';
    std::istringstream fields(line);
    std::vector<double> row;
    std::string field;
    int col = 0;
    while (fields >> field) {
      ++col;
      try {
        std::size_t used = 0;
        const double value = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        row.push_back(value);
      } catch (const std::exception&) {
        throw ParseError(origin + ":" + std::to_string(lineno) + ":" + std::to_string(col) +
                         ": expected a decimal number, got '" + field + "'");
      }
    }
    if (row.empty()) continue;  // blank line
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError(origin + ":" + std::to_string(lineno) + ": row length mismatch");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(origin + ": no data rows");
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return m;
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  return parse_matrix_csv(read_file(path), path.string());
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::Ref<const Matrix>& m) {
  std::ofstream out(path);
  if (!out) throw FileNotFoundError("cannot write " + path.string());
  out.precision(17);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

SignedDigraph parse_graph_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw ParseError("graph JSON needs fields 'n' and 'edges'");
  SignedDigraph g;
  g.n = j.at("n").get<int>();
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3) throw ParseError("edge must be [source, target, weight]");
    g.edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
  }
  g.validate();
  return g;
}

SignedDigraph read_graph_json(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return parse_graph_json(j);
}

json graph_to_json(const SignedDigraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges) edges.push_back(json::array({e.source, e.target, e.weight}));
  return json{{"n", g.n}, {"edges", edges}};
}

Matrix read_matrix_any(const std::filesystem::path& path, bool* was_graph) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
    if (was_graph) *was_graph = true;
    return laplacian_from_digraph(parse_graph_json(j)).laplacian;
  }
  if (was_graph) *was_graph = false;
  return parse_matrix_csv(text, path.string());
}

SwitchingScenario parse_scenario_json(const json& j, const std::filesystem::path& base_dir) {
  SwitchingScenario sc;
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "continuous")
    sc.mode = Mode::Continuous;
  else if (mode == "discrete")
    sc.mode = Mode::Discrete;
  else
    throw ParseError("mode must be 'continuous' or 'discrete'");

  for (const auto& entry : j.at("matrices")) {
    if (entry.is_string())
      sc.matrices.push_back(read_matrix_any(base_dir / entry.get<std::string>()));
    else
      sc.matrices.push_back(matrix_from_rows(entry, "matrix"));
  }

  const json& sig = j.at("signal");
  const std::string kind = sig.at("kind").get<std::string>();
  if (kind == "periodic") {
    sc.signal = SwitchingSignal::periodic(sig.at("order").get<std::vector<int>>(),
                                          sig.at("dwells").get<std::vector<double>>());
  } else if (kind == "table") {
    std::vector<std::pair<double, int>> entries;
    for (const auto& e : sig.at("entries"))
      entries.emplace_back(e[0].get<double>(), e[1].get<int>());
    sc.signal = SwitchingSignal::from_table(std::move(entries));
  } else if (kind == "random") {
    sc.signal = SwitchingSignal::seeded_random(sig.value("seed", std::uint64_t{0}),
                                               sig.at("dwell_min").get<double>(),
                                               sig.at("dwell_max").get<double>());
  } else {
    throw ParseError("signal kind must be periodic, table or random");
  }

  const auto x0 = to_vector(j.at("x0"), "x0");
  sc.x0 = Eigen::Map<const Vector>(x0.data(), static_cast<Index>(x0.size()));
  sc.horizon = j.at("horizon").get<double>();
  sc.sample_step = j.value("sample_step", 1.0);
  sc.validate();
  return sc;
}

SwitchingScenario read_scenario_json(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return parse_scenario_json(j, path.has_parent_path() ? path.parent_path() : ".");
}

json scenario_to_json(const SwitchingScenario& sc) {
  json j;
  j["mode"] = (sc.mode == Mode::Continuous) ? "continuous" : "discrete";
  j["matrices"] = json::array();
  for (const Matrix& m : sc.matrices) j["matrices"].push_back(rows_to_json(m));
  json sig;
  switch (sc.signal.kind) {
    case SwitchingSignal::Kind::Periodic:
      sig = {{"kind", "periodic"}, {"order", sc.signal.mode_order}, {"dwells", sc.signal.dwells}};
      break;
    case SwitchingSignal::Kind::Table: {
      json entries = json::array();
      for (const auto& [t, mode] : sc.signal.table) entries.push_back(json::array({t, mode}));
      sig = {{"kind", "table"}, {"entries", entries}};
      break;
    }
    case SwitchingSignal::Kind::SeededRandom:
      sig = {{"kind", "random"},
             {"seed", sc.signal.seed},
             {"dwell_min", sc.signal.dwell_min},
             {"dwell_max", sc.signal.dwell_max}};
      break;
  }
  j["signal"] = sig;
  j["x0"] = vector_to_json(sc.x0);
  j["horizon"] = sc.horizon;
  j["sample_step"] = sc.sample_step;
  return j;
}

json certificate_to_json(const ClfCertificate& cert) {
  json j;
  j["status"] = (cert.status == ClfStatus::Feasible) ? "feasible" : "unknown";
  j["order"] = cert.order;
  j["iterations"] = cert.iterations;
  j["margins"] = {{"min_eig_P", cert.min_eig_P},
                  {"block_max_eigs", cert.block_max_eigs},
                  {"margin_min", cert.margin_min}};
  if (cert.status == ClfStatus::Feasible) j["P"] = rows_to_json(cert.P);
  return j;
}

ClfCertificate certificate_from_json(const json& j) {
  ClfCertificate cert;
  cert.status = (j.at("status").get<std::string>() == "feasible") ? ClfStatus::Feasible
                                                                  : ClfStatus::Unknown;
  cert.order = j.at("order").get<int>();
  cert.iterations = j.value("iterations", 0);
  if (j.contains("margins")) {
    cert.min_eig_P = j["margins"].value("min_eig_P", 0.0);
    cert.margin_min = j["margins"].value("margin_min", 0.0);
    if (j["margins"].contains("block_max_eigs"))
      cert.block_max_eigs = j["margins"]["block_max_eigs"].get<std::vector<double>>();
  }
  if (j.contains("P")) cert.P = matrix_from_rows(j.at("P"), "P");
  return cert;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& tr) {
  std::ofstream out(path);
  if (!out) throw FileNotFoundError("cannot write " + path.string());
  out.precision(17);
  const Index n = tr.samples.empty() ? 0 : tr.samples.front().state.size();
  out << "t";
  for (Index i = 1; i <= n; ++i) out << ",x" << i;
  out << ",alpha,delta_norm\n";
  for (const auto& s : tr.samples) {
    out << s.time;
    for (Index i = 0; i < n; ++i) out << ',' << s.state[i];
    out << ',' << s.alpha << ',' << s.delta_norm << '\n';
  }
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  std::string text = read_file(path);
  const auto header_end = text.find('\n');
  if (header_end == std::string::npos) throw ParseError(path.string() + ": missing header row");
  const Matrix raw = parse_matrix_csv(text.substr(header_end + 1), path.string());
  Trajectory tr;
  const Index n = raw.cols() - 3;
  if (n < 1) throw ParseError(path.string() + ": too few columns for a trajectory");
  for (Index i = 0; i < raw.rows(); ++i) {
    TrajectorySample s;
    s.time = raw(i, 0);
    s.state = raw.row(i).segment(1, n).transpose();
    s.alpha = raw(i, n + 1);
    s.delta_norm = raw(i, n + 2);
    tr.samples.push_back(std::move(s));
  }
  if (!tr.samples.empty()) tr.final_state = tr.samples.back().state;
  return tr;
}

json to_json(const Spectrum& s) {
  json ev = json::array();
  for (Index i = 0; i < s.size(); ++i)
    ev.push_back(json::array({s.eigenvalues[i].real(), s.eigenvalues[i].imag()}));
  return json{{"eigenvalues", ev},
              {"spectral_radius", s.spectral_radius},
              {"dominance_gap", s.dominance_gap}};
}

json to_json(const PfVerdict& v) {
  json j{{"holds", v.holds}, {"rho", v.rho}, {"dominance_gap", v.dominance_gap}};
  if (v.right_vector) j["right_vector"] = vector_to_json(*v.right_vector);
  if (!v.reasons.empty()) j["reasons"] = v.reasons;
  return j;
}

json to_json(const DefinitenessReport& d) {
  const char* verdict = d.verdict == Definiteness::PositiveDefinite ? "positive-definite"
                        : d.verdict == Definiteness::PositiveSemidefinite
                            ? "positive-semidefinite"
                            : "indefinite";
  return json{{"verdict", verdict},
              {"corank", d.corank},
              {"eigenvalues", std::vector<double>(d.eigenvalues.data(),
                                                  d.eigenvalues.data() + d.eigenvalues.size())},
              {"min_eigenvalue", d.min_eigenvalue}};
}

json to_json(const ClassificationReport& r) {
  const char* kind = r.kind == MatrixKind::Laplacian    ? "laplacian"
                     : r.kind == MatrixKind::RowSumOne ? "row-sum-one"
                                                        : "general";
  json signed_flags{{"is_spf", r.signed_flags.is_spf},
                    {"is_sep", r.signed_flags.is_sep},
                    {"is_seep", r.signed_flags.is_seep},
                    {"is_ses", r.signed_flags.is_ses},
                    {"ambiguous", r.signed_flags.ambiguous}};
  if (r.signed_flags.signature) signed_flags["signature"] = vector_to_json(*r.signed_flags.signature);
  json j{{"kind", kind},
         {"spectrum", to_json(r.eigen)},
         {"pf_right", to_json(r.pf_right)},
         {"pf_left", to_json(r.pf_left)},
         {"probe_shift", r.probe_shift},
         {"pf_gap", r.pf_gap},
         {"is_ep", r.is_ep},
         {"is_eep", r.eep.holds},
         {"is_es", r.is_es},
         {"is_eds", r.is_eds},
         {"is_normal", r.normal},
         {"is_weight_balanced", r.weight_balanced},
         {"corank", r.rank.corank},
         {"marginally_stable_ct", r.marginally_stable_ct},
         {"marginally_stable_dt", r.marginally_stable_dt},
         {"sym_part", to_json(r.sym_part)},
         {"signed", signed_flags}};
  if (r.eep.witness_d) {
    j["eep_witness_d"] = *r.eep.witness_d;
    j["eep_witness_validated"] = r.eep.witness_validated;
  }
  return j;
}

json to_json(const ConsensusVerdict& v) {
  json j{{"achieves_consensus", v.achieves_consensus},
         {"basis", v.basis},
         {"gap_note", v.gap_note},
         {"mixed_sign_limit", v.mixed_sign_limit}};
  if (v.limit_functional) j["limit_functional"] = vector_to_json(*v.limit_functional);
  return j;
}

json to_json(const Trajectory& t) {
  const char* verdict = t.verdict == SimVerdict::Converged   ? "converged"
                        : t.verdict == SimVerdict::Diverged ? "diverged"
                                                             : "undecided";
  json j{{"verdict", verdict},
         {"samples", t.samples.size()},
         {"overflow", t.overflow},
         {"eps_conv", t.eps_conv},
         {"div_threshold", t.div_threshold}};
  if (!t.samples.empty()) {
    j["final_time"] = t.samples.back().time;
    j["final_state"] = vector_to_json(t.final_state);
    j["final_alpha"] = t.samples.back().alpha;
    j["final_delta_norm"] = t.samples.back().delta_norm;
  }
  return j;
}

json to_json(const ConsensusSetReport& r) {
  const char* suff = r.sufficient == SufficiencyClass::NormalClass   ? "normal_class"
                     : r.sufficient == SufficiencyClass::ClfReferral ? "clf_referral"
                                                                     : "none";
  json j{{"necessary_ok", r.necessary_ok},
         {"all_necessary_ok", r.all_necessary_ok},
         {"sufficient", suff}};
  if (r.decay_rate) j["decay_rate"] = *r.decay_rate;
  return j;
}

json to_json(const BipartiteVerdict& v) {
  json j{{"achieves_bipartite", v.achieves_bipartite},
         {"signature", vector_to_json(v.signature.s)},
         {"gauged", to_json(v.gauged)}};
  if (v.limit_functional) j["limit_functional"] = vector_to_json(*v.limit_functional);
  return j;
}

json to_json(const BipartiteSetReport& r) {
  json j{{"signature", vector_to_json(r.signature.s)}, {"set_check", to_json(r.set_check)}};
  if (r.certificate) j["certificate"] = certificate_to_json(*r.certificate);
  return j;
}

json tolerances_to_json(const Tolerances& tol) {
  return json{{"tol_zero", tol.tol_zero},   {"tol_resid", tol.tol_resid},
              {"tol_sym", tol.tol_sym},     {"gap_min", tol.gap_min},
              {"pos_min", tol.pos_min},     {"power_t_max", tol.power_t_max}};
}

std::string file_digest(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

json RunReport::to_json() const {
  json inputs_json = json::array();
  for (const auto& p : inputs)
    inputs_json.push_back(json{{"path", p.string()}, {"digest", file_digest(p)}});
  json j{{"command", command},
         {"version", version},
         {"inputs", inputs_json},
         {"tolerances", tolerances_to_json(tolerances)},
         {"result", result}};
  if (with_timestamp) {
    const auto now = std::chrono::system_clock::now();
    j["timestamp"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  }
  return j;
}

}  // namespace slc::io
