#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace omegaq {

/* Flat key=value experiment configuration. Every field has a concrete
   default; emit() writes all effective values so outputs are fully
   reproducible from their headers. emit -> parse is the identity. */
struct ExperimentConfig {
  std::string system = "0,1;1,1";  // semicolon-separated coefficient lists
  uint64_t x = 100000;
  uint64_t y = 0;          // 0: derive from alpha (y = floor(x^alpha))
  std::string y_rule = "x";  // verify: "x" or "alpha"
  double alpha = 0.5;
  double epsilon = 0.0;    // 0: midpoint of (alpha/4g, alpha/3g)
  double R = 2.0;
  double K = -1.0;         // -1: K = r
  double constant = 0.0;   // >0: verify also flags count > constant*rhs
  uint64_t z = 0;          // 0: automatic sieving budget
  std::vector<uint64_t> xs = {100000, 1000000, 10000000};
  double xmax = 1e6;       // mertens profile range
  uint64_t mmax = 100;     // rho table range
  std::string T = "";      // sieve t-vector, comma-separated
  std::string d = "";      // sieve d-vector, comma-separated
  uint64_t study = 0;      // sieve: random-instance count
  uint64_t seed = 1;
  uint64_t scan_limit = 0; // validate: fixed-divisor scan extension
  double rankin_C = 0.0;   // audit: 0 = auto
  unsigned threads = 1;
  std::string out_dir = ".";  // default may come from OMEGAQ_OUT_DIR

  std::string emit() const;                     // canonical key=value text
  static ExperimentConfig parse_text(const std::string& text);
  static ExperimentConfig parse_file(const std::string& path);
  void apply_line(const std::string& line);     // one key=value entry

  // FNV-1a hash of the canonical emission, for provenance headers.
  std::string hash() const;
};

}  // namespace omegaq
