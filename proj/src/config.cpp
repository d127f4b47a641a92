#include "omegaq/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace omegaq {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

uint64_t parse_u64(const std::string& s) {
  // accepts plain integers and scientific shorthand like 1e6
  if (s.find_first_of("eE.") != std::string::npos) {
    char* end = nullptr;
    long double v = strtold(s.c_str(), &end);
    if (end == nullptr || *end != '\0' || v < 0)
      throw std::invalid_argument("config: bad integer '" + s + "'");
    return static_cast<uint64_t>(v + 0.5L);
  }
  return std::stoull(s);
}

double parse_double(const std::string& s) {
  size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size())
    throw std::invalid_argument("config: bad real '" + s + "'");
  return v;
}

std::string join_u64(const std::vector<uint64_t>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out;
}

std::vector<uint64_t> split_u64(const std::string& s) {
  std::vector<uint64_t> out;
  std::string token;
  std::istringstream in(s);
  while (std::getline(in, token, ','))
    if (!token.empty()) out.push_back(parse_u64(token));
  return out;
}

}  // namespace

std::string ExperimentConfig::emit() const {
  std::ostringstream out;
  out << "system=" << system << "\n";
  out << "x=" << x << "\n";
  out << "y=" << y << "\n";
  out << "y_rule=" << y_rule << "\n";
  out << "alpha=" << fmt_double(alpha) << "\n";
  out << "epsilon=" << fmt_double(epsilon) << "\n";
  out << "R=" << fmt_double(R) << "\n";
  out << "K=" << fmt_double(K) << "\n";
  out << "constant=" << fmt_double(constant) << "\n";
  out << "z=" << z << "\n";
  out << "xs=" << join_u64(xs) << "\n";
  out << "xmax=" << fmt_double(xmax) << "\n";
  out << "mmax=" << mmax << "\n";
  out << "T=" << T << "\n";
  out << "d=" << d << "\n";
  out << "study=" << study << "\n";
  out << "seed=" << seed << "\n";
  out << "scan_limit=" << scan_limit << "\n";
  out << "rankin_C=" << fmt_double(rankin_C) << "\n";
  out << "threads=" << threads << "\n";
  out << "out_dir=" << out_dir << "\n";
  return out.str();
}

void ExperimentConfig::apply_line(const std::string& line) {
  if (line.empty() || line[0] == '#') return;
  const size_t eq = line.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("config: expected key=value, got '" + line + "'");
  const std::string key = line.substr(0, eq);
  const std::string val = line.substr(eq + 1);
  if (key == "system") system = val;
  else if (key == "x") x = parse_u64(val);
  else if (key == "y") y = parse_u64(val);
  else if (key == "y_rule") y_rule = val;
  else if (key == "alpha") alpha = parse_double(val);
  else if (key == "epsilon") epsilon = parse_double(val);
  else if (key == "R") R = parse_double(val);
  else if (key == "K") K = parse_double(val);
  else if (key == "constant") constant = parse_double(val);
  else if (key == "z") z = parse_u64(val);
  else if (key == "xs") xs = split_u64(val);
  else if (key == "xmax") xmax = parse_double(val);
  else if (key == "mmax") mmax = parse_u64(val);
  else if (key == "T") T = val;
  else if (key == "d") d = val;
  else if (key == "study") study = parse_u64(val);
  else if (key == "seed") seed = parse_u64(val);
  else if (key == "scan_limit") scan_limit = parse_u64(val);
  else if (key == "rankin_C") rankin_C = parse_double(val);
  else if (key == "threads") threads = static_cast<unsigned>(parse_u64(val));
  else if (key == "out_dir") out_dir = val;
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

ExperimentConfig ExperimentConfig::parse_text(const std::string& text) {
  ExperimentConfig cfg;
  if (const char* env = std::getenv("OMEGAQ_OUT_DIR")) cfg.out_dir = env;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    cfg.apply_line(line);
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

std::string ExperimentConfig::hash() const {
  // FNV-1a over the canonical emission; out_dir names a destination,
  // not an experiment, so it stays out of the hash
  uint64_t h = 1469598103934665603ull;
  std::istringstream lines(emit());
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("out_dir=", 0) == 0) continue;
    for (unsigned char c : line) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= '\n';
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace omegaq
