#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <string>

#include "omegaq/asymptotics.hpp"
#include "omegaq/config.hpp"
#include "omegaq/polysystem.hpp"
#include "omegaq/report.hpp"
#include "omegaq/rootcount.hpp"
#include "omegaq/selberg.hpp"
#include "omegaq/window.hpp"

using nlohmann::ordered_json;
using namespace omegaq;

namespace {

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
  if (name.find('/') != std::string::npos) return name;
  return cfg.out_dir + "/" + name;
}

std::vector<uint64_t> parse_vec(const std::string& csv) {
  std::vector<uint64_t> out;
  std::string token;
  std::istringstream in(csv);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    if (token.find_first_of("eE.") != std::string::npos)
      out.push_back(
          static_cast<uint64_t>(strtold(token.c_str(), nullptr) + 0.5L));
    else
      out.push_back(std::stoull(token));
  }
  return out;
}

void write_text(const ExperimentConfig& cfg, const std::string& name,
                const std::string& text) {
  OutputFile f(out_path(cfg, name));
  f.stream() << text;
  f.commit();
}

// y as requested: explicit value wins (0 means an empty window); the
// default derives floor(x^alpha).
uint64_t window_length(const ExperimentConfig& cfg, bool y_explicit) {
  if (y_explicit) return cfg.y;
  if (cfg.y != 0) return cfg.y;
  return static_cast<uint64_t>(
      floorl(powl(static_cast<long double>(cfg.x),
                  static_cast<long double>(cfg.alpha))));
}

int cmd_validate(const ExperimentConfig& cfg) {
  PolySystem sys = PolySystem::from_string(cfg.system, cfg.scan_limit);
  std::cout << "system: " << sys.to_string() << "\n";
  std::cout << "r=" << sys.r() << " g=" << sys.g() << "\n";
  std::cout << "beta=" << sys.beta().get_str() << " D=" << sys.D().get_str()
            << " betaD=" << sys.betaD().get_str() << "\n";
  for (size_t j = 0; j < sys.r(); ++j)
    std::cout << "member " << j << ": " << sys.member(j).to_string()
              << " irreducible via "
              << to_string(sys.certificate().methods[j]) << "\n";
  std::cout << "fixed-divisor scan: primes <= "
            << sys.certificate().scan_limit << " clean\n";
  auto disc_rows = density_discrepancies(sys);
  for (const auto& row : disc_rows)
    std::cout << "note: at p=" << row.p << " | betaD, rho_0(p)=" << row.rho_0
              << " < sum_j rho_j(p)=" << row.rho_sum
              << " (members share roots mod p)\n";
  if (disc_rows.empty())
    std::cout << "rho_0(p) = sum_j rho_j(p) at every prime of betaD\n";
  return 0;
}

int cmd_rho(const ExperimentConfig& cfg, const std::string& poly_spec,
            const std::string& out_name) {
  IntPoly P = poly_spec.empty()
                  ? PolySystem::from_string(cfg.system).member(0)
                  : IntPoly::from_string(poly_spec);
  write_text(cfg, out_name, render_rho_csv(cfg, P));
  std::cout << "rho table for " << P.to_string() << " written (" << cfg.mmax
            << " rows)\n";
  return 0;
}

int cmd_mertens(const ExperimentConfig& cfg, const std::string& out_name) {
  PolySystem sys = PolySystem::from_string(cfg.system, cfg.scan_limit);
  MertensProfile prof = estimate_profile(sys, cfg.xmax);
  write_text(cfg, out_name, render_mertens_csv(cfg, sys, prof));
  for (size_t j = 0; j < sys.r(); ++j) {
    const auto& m = prof.members[j];
    std::cout << "member " << j << ": M_j=" << format_float(m.M)
              << " at x=" << format_float(m.M_arg_x)
              << " tail=" << format_float(m.tail)
              << " alt_gap=" << format_float(m.alt_gap) << "\n";
  }
  std::cout << "M=" << format_float(prof.M_total) << "\n";
  return 0;
}

int cmd_window(const ExperimentConfig& cfg, bool y_explicit,
               const std::string& hist_name, const std::string& records_name) {
  PolySystem sys = PolySystem::from_string(cfg.system, cfg.scan_limit);
  WindowSpec spec;
  spec.x = cfg.x;
  spec.y = window_length(cfg, y_explicit);
  spec.alpha = cfg.alpha;
  spec.epsilon = cfg.epsilon;
  spec.z_max = cfg.z;

  JointHistogram hist = window_histogram(sys, spec);
  write_text(cfg, hist_name, render_histogram_csv(cfg, sys, hist));
  std::cout << "histogram: " << hist.counts.size() << " k-vectors, total "
            << hist.total << ", excluded " << hist.excluded.size() << "\n";

  if (!records_name.empty()) {
    auto records = decompose_window(sys, spec);
    write_text(cfg, records_name,
               render_records_csv(cfg, sys, spec.resolved(sys), records));
    std::cout << "records: " << records.size() << " rows\n";
  }
  return 0;
}

int cmd_verify(const ExperimentConfig& cfg, const std::string& out_name) {
  PolySystem sys = PolySystem::from_string(cfg.system, cfg.scan_limit);
  TheoremParams params;
  params.R = cfg.R;
  params.K = cfg.K;
  params.alpha = cfg.alpha;
  if (cfg.constant > 0) {
    params.fixed_constant_mode = true;
    params.constant = cfg.constant;
  }
  YRule rule =
      cfg.y_rule == "alpha" ? YRule::y_equals_x_alpha : YRule::y_equals_x;
  VerifyReport rep =
      verify_theorem(sys, cfg.xs, rule, params, cfg.xmax, cfg.threads);
  const std::string table_name = out_name + ".table.csv";
  write_text(cfg, table_name, render_verify_table_csv(cfg, rep));
  write_text(cfg, out_name,
             render_verify_json(cfg, rep, table_name).dump(2) + "\n");
  for (const auto& px : rep.per_x)
    std::cout << "x=" << px.x << " sup_ratio=" << format_float(px.sup_ratio)
              << " argsup=" << ordered_json(px.argsup).dump()
              << (px.no_admissible_k ? " (no admissible k)" : "") << "\n";
  std::cout << "max_sup_ratio=" << format_float(rep.max_sup_ratio) << "\n";
  if (rep.norm_warning)
    std::cout << "warning: window start below ||Q||; the bound regime "
                 "assumes x >= c0 ||Q||\n";
  return 0;
}

int cmd_sieve(const ExperimentConfig& cfg, bool y_explicit,
              const std::string& out_name) {
  PolySystem sys = PolySystem::from_string(cfg.system, cfg.scan_limit);
  std::vector<SieveStudyRow> rows;
  if (cfg.study > 0) {
    SieveStudy study = sieve_ratio_study(
        sys, cfg.x, cfg.y ? cfg.y : 10000, cfg.study, cfg.seed);
    rows = std::move(study.rows);
  } else {
    SieveInstance inst;
    inst.x = cfg.x;
    inst.y = window_length(cfg, y_explicit);
    inst.z = cfg.z ? cfg.z : 10;
    if (!cfg.T.empty()) inst.t = parse_vec(cfg.T);
    if (!cfg.d.empty()) inst.d = parse_vec(cfg.d);
    SieveResult res = sieve_upper_bound(sys, inst, true);
    SieveStudyRow row;
    row.instance = inst;
    row.bound = res.upper_bound;
    row.exact = res.exact_count.value_or(0);
    if (row.exact > 0)
      row.ratio = static_cast<long double>(row.bound.get_d()) /
                  static_cast<long double>(row.exact);
    row.violation =
        mpq_class(static_cast<unsigned long>(row.exact)) > row.bound;
    rows.push_back(std::move(row));
  }
  write_text(cfg, out_name, render_sieve_csv(cfg, rows));
  uint64_t violations = 0;
  for (const auto& row : rows)
    if (row.violation) ++violations;
  if (violations) {
    std::cerr << "error: sieve_dominance: upper bound fell below the exact "
                 "count on "
              << violations << " instance(s)\n";
    return 1;
  }
  std::cout << rows.size() << " sieve row(s) written\n";
  return 0;
}

int cmd_audit(const ExperimentConfig& cfg, bool y_explicit,
              const std::string& out_name) {
  PolySystem sys = PolySystem::from_string(cfg.system, cfg.scan_limit);
  WindowSpec spec;
  spec.x = cfg.x;
  spec.y = window_length(cfg, y_explicit);
  spec.alpha = cfg.alpha;
  spec.epsilon = cfg.epsilon;
  spec.z_max = cfg.z;
  auto records = decompose_window(sys, spec);
  ClassAuditReport rep = audit_classes(records, sys, spec, cfg.rankin_C);
  write_text(cfg, out_name, render_audit_json(cfg, sys, rep).dump(2) + "\n");
  std::cout << "audit: " << rep.records << " records, N1=" << rep.count_n1
            << " N2=" << rep.count_n2 << " N3=" << rep.count_n3
            << (rep.pass ? " PASS" : " FAIL") << "\n";
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"omegaq: joint local statistics of the prime-factor count "
               "over polynomial values in short windows"};
  app.fallthrough();

  ExperimentConfig cfg;
  if (const char* env = std::getenv("OMEGAQ_OUT_DIR")) cfg.out_dir = env;
  // load --config before flag overrides
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") {
      try {
        cfg = ExperimentConfig::parse_file(argv[i + 1]);
      } catch (const std::exception& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 2;
      }
    }

  std::string config_path;
  app.add_option("--config", config_path, "flat key=value config file");
  app.add_option("--system", cfg.system, "semicolon-separated members");
  app.add_option("--x", cfg.x, "window start");
  auto* yopt =
      app.add_option("--y", cfg.y, "window length (default: floor(x^alpha))");
  app.add_option("--y-rule", cfg.y_rule, "verify window rule: x | alpha");
  app.add_option("--alpha", cfg.alpha, "window exponent");
  app.add_option("--epsilon", cfg.epsilon,
                 "decomposition epsilon (0: midpoint)");
  app.add_option("--R", cfg.R, "k-range multiplier");
  app.add_option("--K", cfg.K, "betaD-factor exponent (-1: r)");
  app.add_option("--constant", cfg.constant,
                 "fixed-constant mode: flag count > C*rhs rows");
  app.add_option("--z", cfg.z, "sieving prime budget (0: auto)");
  std::string xs_arg;
  app.add_option("--xs", xs_arg, "verify grid, comma-separated");
  app.add_option("--xmax", cfg.xmax, "mertens profile range");
  app.add_option("--mmax", cfg.mmax, "rho table range");
  app.add_option("--T", cfg.T, "sieve t-vector, comma-separated");
  app.add_option("--d", cfg.d, "sieve d-vector, comma-separated");
  app.add_option("--study", cfg.study, "sieve: random instance count");
  app.add_option("--seed", cfg.seed, "rng seed");
  app.add_option("--scan-limit", cfg.scan_limit,
                 "fixed-divisor scan extension");
  app.add_option("--rankin-C", cfg.rankin_C, "audit Rankin constant (0: auto)");
  app.add_option("--threads", cfg.threads, "verify fan-out degree");
  app.add_option("--out-dir", cfg.out_dir, "output directory");
  std::string out_name;
  app.add_option("--out", out_name, "output file name");

  auto* validate =
      app.add_subcommand("validate", "validate a polynomial system");
  auto* rho_cmd =
      app.add_subcommand("rho", "root-count table over a modulus range");
  std::string poly_spec;
  rho_cmd->add_option("--poly", poly_spec, "polynomial (default: first member)");
  auto* mertens = app.add_subcommand("mertens", "mertens profile CSV");
  auto* window =
      app.add_subcommand("window", "joint omega histogram over a window");
  std::string records_name;
  window->add_option("--records", records_name,
                     "also write decomposition records");
  auto* verify =
      app.add_subcommand("verify", "sup-ratio experiment vs the rhs bound");
  auto* sieve =
      app.add_subcommand("sieve", "selberg upper bound vs exact count");
  auto* audit = app.add_subcommand("audit", "decomposition class audit");
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: cli: " << e.what() << "\n";
    return 2;
  }
  const bool y_explicit = yopt->count() > 0;

  try {
    if (validate->parsed()) return cmd_validate(cfg);
    if (rho_cmd->parsed())
      return cmd_rho(cfg, poly_spec, out_name.empty() ? "rho.csv" : out_name);
    if (mertens->parsed())
      return cmd_mertens(cfg, out_name.empty() ? "mertens.csv" : out_name);
    if (window->parsed())
      return cmd_window(cfg, y_explicit,
                        out_name.empty() ? "window.csv" : out_name,
                        records_name);
    if (verify->parsed()) {
      if (!xs_arg.empty()) cfg.xs = parse_vec(xs_arg);
      return cmd_verify(cfg, out_name.empty() ? "verify.json" : out_name);
    }
    if (sieve->parsed())
      return cmd_sieve(cfg, y_explicit,
                       out_name.empty() ? "sieve.csv" : out_name);
    if (audit->parsed())
      return cmd_audit(cfg, y_explicit,
                       out_name.empty() ? "audit.json" : out_name);
    std::cout << app.help();
    return 0;
  } catch (const system_error& e) {
    std::cerr << "error: system: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: domain: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: runtime: " << e.what() << "\n";
    return 1;
  }
}
