#include "omegaq/report.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "omegaq/rootcount.hpp"

namespace omegaq {

std::string format_float(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12Lg", v);
  return buf;
}

double rounded12(long double v) {
  return std::strtod(format_float(v).c_str(), nullptr);
}

OutputFile::OutputFile(const std::string& path) : path_(path) {
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  out_.open(path_ + ".tmp", std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot write '" + path_ + "'");
}

OutputFile::~OutputFile() {
  if (committed_) return;
  // leave an explicit failure marker instead of a parseable-looking file
  if (out_.is_open()) {
    out_ << "# FAILED: incomplete output\n";
    out_.close();
  }
  std::error_code ec;
  std::filesystem::rename(path_ + ".tmp", path_ + ".failed", ec);
}

void OutputFile::commit() {
  out_.flush();
  if (!out_) throw std::runtime_error("write failure on '" + path_ + "'");
  out_.close();
  std::filesystem::rename(path_ + ".tmp", path_);
  committed_ = true;
}

void write_provenance(std::ostream& os, const ExperimentConfig& config,
                      const std::string& comment_prefix) {
  os << comment_prefix << "omegaq " << kArtifactVersion << "\n";
  os << comment_prefix << "config_hash=" << config.hash() << "\n";
  std::istringstream lines(config.emit());
  std::string line;
  while (std::getline(lines, line))
    os << comment_prefix << line << "\n";
}

std::string render_rho_csv(const ExperimentConfig& cfg, const IntPoly& P) {
  std::ostringstream out;
  write_provenance(out, cfg);
  out << "# poly=" << P.to_string() << "\n";
  out << "modulus,count\n";
  for (uint64_t m = 1; m <= cfg.mmax; ++m)
    out << m << "," << rho(P, m) << "\n";
  return out.str();
}

std::string render_mertens_csv(const ExperimentConfig& cfg,
                               const PolySystem& system,
                               const MertensProfile& profile) {
  std::ostringstream out;
  write_provenance(out, cfg);
  out << "x";
  for (size_t j = 0; j < system.r(); ++j)
    out << ",S_" << (j + 1) << ",delta_" << (j + 1);
  out << "\n";
  const auto& grid = profile.members[0].grid_x;
  for (size_t i = 0; i < grid.size(); ++i) {
    out << format_float(grid[i]);
    for (size_t j = 0; j < system.r(); ++j) {
      const long double S = profile.members[j].grid_S[i];
      out << "," << format_float(S) << ","
          << format_float(S - loglog(grid[i]));
    }
    out << "\n";
  }
  return out.str();
}

std::string render_histogram_csv(const ExperimentConfig& cfg,
                                 const PolySystem& system,
                                 const JointHistogram& hist) {
  std::ostringstream out;
  write_provenance(out, cfg);
  out << "# system=" << system.to_string() << " x=" << hist.window.x
      << " y=" << hist.window.y << " epsilon="
      << format_float(hist.window.epsilon)
      << " alpha=" << format_float(hist.window.alpha)
      << " z_max=" << hist.window.z_max << "\n";
  if (!hist.excluded.empty()) {
    out << "# excluded=";
    for (size_t i = 0; i < hist.excluded.size(); ++i)
      out << (i ? "|" : "") << hist.excluded[i];
    out << "\n";
  }
  for (size_t j = 0; j < system.r(); ++j) out << "k_" << (j + 1) << ",";
  out << "count\n";
  for (const auto& [ks, c] : hist.counts) {
    for (uint32_t k : ks) out << k << ",";
    out << c << "\n";
  }
  return out.str();
}

std::string render_records_csv(
    const ExperimentConfig& cfg, const PolySystem& system,
    const WindowSpec& window,
    const std::vector<FactorizationRecord>& records) {
  std::ostringstream out;
  write_provenance(out, cfg);
  out << "# system=" << system.to_string() << " x=" << window.x
      << " y=" << window.y << " epsilon=" << format_float(window.epsilon)
      << " alpha=" << format_float(window.alpha) << "\n";
  out << "n,class,xi";
  for (size_t j = 0; j < system.r(); ++j) out << ",a_" << (j + 1);
  out << ",b,p_n,v_n\n";
  for (const auto& rec : records) {
    out << rec.n << "," << to_string(rec.cls) << "," << rec.xi.get_str();
    for (const auto& a : rec.a) out << "," << a.get_str();
    out << "," << rec.b.get_str() << ","
        << (rec.p_min_b == 0 ? std::string("inf") : rec.p_min_b.get_str())
        << "," << rec.v << "\n";
  }
  return out.str();
}

std::string render_verify_table_csv(const ExperimentConfig& cfg,
                                    const VerifyReport& rep) {
  std::ostringstream out;
  write_provenance(out, cfg);
  const size_t r = rep.M_j.size();
  out << "x";
  for (size_t j = 0; j < r; ++j) out << ",k_" << (j + 1);
  out << ",count,rhs,ratio\n";
  for (const auto& px : rep.per_x)
    for (const auto& row : px.table) {
      out << px.x;
      for (uint32_t k : row.ks) out << "," << k;
      out << "," << row.count << "," << format_float(row.rhs) << ","
          << format_float(row.ratio) << "\n";
    }
  return out.str();
}

nlohmann::ordered_json render_verify_json(const ExperimentConfig& cfg,
                                          const VerifyReport& rep,
                                          const std::string& table_path) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["artifact"] = std::string("omegaq ") + kArtifactVersion;
  j["config_hash"] = cfg.hash();
  j["system"] = rep.system;
  j["params"] = {{"R", rounded12(rep.params.R)},
                 {"K", rounded12(rep.params.effective_K(rep.M_j.size()))},
                 {"alpha", rounded12(rep.params.alpha)},
                 {"y_rule", cfg.y_rule}};
  ordered_json mj = ordered_json::array();
  for (long double m : rep.M_j) mj.push_back(rounded12(m));
  j["profile"] = {{"x_max", rounded12(rep.profile_x_max)},
                  {"M_total", rounded12(rep.M_total)},
                  {"M_j", mj}};
  j["kfactor"] = rounded12(rep.kfactor);
  j["norm_warning"] = rep.norm_warning;
  if (!table_path.empty()) j["table_path"] = table_path;
  ordered_json per_x = ordered_json::array();
  for (const auto& px : rep.per_x) {
    ordered_json e;
    e["x"] = px.x;
    e["y"] = px.y;
    e["z_max"] = px.z_max;
    e["total"] = px.total;
    e["excluded"] = px.excluded;
    e["k_cap"] = rounded12(px.k_cap);
    e["no_admissible_k"] = px.no_admissible_k;
    e["sup_ratio"] = rounded12(px.sup_ratio);
    if (rep.params.fixed_constant_mode)
      e["constant_exceedances"] = px.constant_exceedances;
    e["argsup"] = px.argsup;
    ordered_json table = ordered_json::array();
    for (const auto& row : px.table)
      table.push_back({{"k", row.ks},
                       {"count", row.count},
                       {"rhs", rounded12(row.rhs)},
                       {"ratio", rounded12(row.ratio)}});
    e["table"] = std::move(table);
    per_x.push_back(std::move(e));
  }
  j["per_x"] = std::move(per_x);
  j["max_sup_ratio"] = rounded12(rep.max_sup_ratio);
  return j;
}

std::string render_sieve_csv(const ExperimentConfig& cfg,
                             const std::vector<SieveStudyRow>& rows) {
  std::ostringstream out;
  write_provenance(out, cfg);
  out << "z,T,d,bound,exact,ratio,violation\n";
  for (const auto& row : rows) {
    out << row.instance.z << "," << row.instance.T() << ",";
    for (size_t j = 0; j < row.instance.d.size(); ++j)
      out << (j ? "|" : "") << row.instance.d[j];
    out << "," << format_float(row.bound.get_d()) << "," << row.exact << ","
        << format_float(row.ratio) << "," << (row.violation ? 1 : 0) << "\n";
  }
  return out.str();
}

nlohmann::ordered_json render_audit_json(const ExperimentConfig& cfg,
                                         const PolySystem& system,
                                         const ClassAuditReport& rep) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["artifact"] = std::string("omegaq ") + kArtifactVersion;
  j["config_hash"] = cfg.hash();
  j["system"] = system.to_string();
  j["x"] = rep.x;
  j["y"] = rep.y;
  j["epsilon"] = rounded12(rep.epsilon);
  j["alpha"] = rounded12(rep.alpha);
  j["E"] = rounded12(rep.E);
  j["records"] = rep.records;
  j["counts"] = {
      {"N1", rep.count_n1}, {"N2", rep.count_n2}, {"N3", rep.count_n3}};
  j["n2"] = {{"proxy", rounded12(rep.n2_proxy)},
             {"stewart_proxy", rounded12(rep.n2_stewart_proxy)},
             {"ratio", rounded12(rep.n2_ratio)}};
  j["rankin"] = {{"C", rounded12(rep.rankin_C)},
                 {"sum", rounded12(rep.rankin_sum)},
                 {"n3_count", rep.count_n3}};
  ordered_json viol = ordered_json::array();
  for (const auto& v : rep.violations)
    viol.push_back({{"n", v.n}, {"check", v.check}, {"detail", v.detail}});
  j["violations"] = std::move(viol);
  ordered_json obs = ordered_json::array();
  for (const auto& v : rep.observations)
    obs.push_back({{"n", v.n}, {"check", v.check}, {"detail", v.detail}});
  j["observations"] = std::move(obs);
  j["pass"] = rep.pass;
  return j;
}

}  // namespace omegaq
