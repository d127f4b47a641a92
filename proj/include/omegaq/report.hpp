#pragma once

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "omegaq/asymptotics.hpp"
#include "omegaq/config.hpp"
#include "omegaq/selberg.hpp"
#include "omegaq/window.hpp"

namespace omegaq {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Fixed 12-significant-digit formatting for every float that reaches an
// output file; bit-stable across runs.
std::string format_float(long double v);

// Rounds through the 12-digit decimal representation so JSON numbers
// serialize identically across runs.
double rounded12(long double v);

/* Writes to <path>.tmp and renames on commit(); if the object dies
   without commit (error paths), the partial file is kept with a
   "# FAILED" trailer so no output ever looks complete when it is not. */
class OutputFile {
 public:
  explicit OutputFile(const std::string& path);
  ~OutputFile();
  std::ostream& stream() { return out_; }
  void commit();

 private:
  std::string path_;
  std::ofstream out_;
  bool committed_ = false;
};

// Standard provenance header: artifact version, config hash, and the
// full effective configuration, one commented line per key.
void write_provenance(std::ostream& os, const ExperimentConfig& config,
                      const std::string& comment_prefix = "# ");

/* Renderers shared by the CLI and the acceptance suite: given identical
   inputs they produce identical bytes (fixed field order, 12-digit
   floats). */
std::string render_rho_csv(const ExperimentConfig& cfg, const IntPoly& P);
std::string render_mertens_csv(const ExperimentConfig& cfg,
                               const PolySystem& system,
                               const MertensProfile& profile);
std::string render_histogram_csv(const ExperimentConfig& cfg,
                                 const PolySystem& system,
                                 const JointHistogram& hist);
std::string render_records_csv(const ExperimentConfig& cfg,
                               const PolySystem& system,
                               const WindowSpec& window,
                               const std::vector<FactorizationRecord>& records);
nlohmann::ordered_json render_verify_json(const ExperimentConfig& cfg,
                                          const VerifyReport& rep,
                                          const std::string& table_path = "");
std::string render_verify_table_csv(const ExperimentConfig& cfg,
                                    const VerifyReport& rep);
std::string render_sieve_csv(const ExperimentConfig& cfg,
                             const std::vector<SieveStudyRow>& rows);
nlohmann::ordered_json render_audit_json(const ExperimentConfig& cfg,
                                         const PolySystem& system,
                                         const ClassAuditReport& rep);

}  // namespace omegaq
