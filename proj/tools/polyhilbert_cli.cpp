// polyhilbert: command-line front end.
//
//   polyhilbert analyze --poly "t1*t2"
//   polyhilbert sum     --poly "t1*t2" --xi 0,0,0.123 --N1 4096 --N2 4096
//   polyhilbert scan    --poly "t1*t2" --schedule 16,64,256,1024 [--grid-file xi.csv]
//   polyhilbert gauss   --poly "t1^2*t2" --j2 10 --qmax 199
//   polyhilbert arcs    --poly "t1^2*t2" --xi3 1/3 --grid 40x40
//   polyhilbert verify  --poly "t1^2*t2" --check major --j 30,8 --xi3 1/3
//
// Every flag can also come from `--config FILE` (key=value lines, `command=`
// selects the subcommand); flags on the command line win.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyhilbert/report.hpp"

using namespace polyhilbert;

namespace {

const std::vector<std::string> kCommands = {"analyze", "sum", "scan", "gauss", "arcs", "verify"};

struct RunConfig {
  std::string poly;
  std::string out;
  unsigned workers = 0;
  // sum
  std::string xi = "0,0,0";
  std::int64_t n1 = 1024, n2 = 1024;
  std::string quadrants = "all";
  // scan / theorem
  std::string schedule = "16,32,64,128,256,512,1024";
  std::string grid_file;
  std::size_t grid_size = 64;
  // gauss
  int j2 = 10;
  std::uint64_t qmax = 97;
  std::int64_t a = 1;
  // arcs / verify
  std::string xi3 = "1/3";
  std::string grid = "20x20";
  std::string vertex;
  std::string check = "theorem";
  std::string j = "30,8";
  std::string poisson_j = "8,8";
  long w_window = 16;
  long j1_lo = 10, j1_hi = 16;
  double j2_ratio = 0.5;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    if (!trim(item).empty()) out.push_back(trim(item));
  }
  return out;
}

std::vector<std::int64_t> parse_ints(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& t : split(s, ',')) out.push_back(std::stoll(t));
  return out;
}

// Expands `--config FILE` into flags placed right after the subcommand name.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
  }
  std::vector<std::string> out{argv[0]};
  if (config_path.empty()) {
    out.insert(out.end(), args.begin(), args.end());
    return out;
  }
  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot open config file " + config_path);
  std::string command;
  std::vector<std::string> flags;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("config line without '=': " + line);
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "command") {
      command = value;
    } else {
      flags.push_back("--" + key);
      flags.push_back(value);
    }
  }
  std::size_t rest = 0;
  if (!args.empty() && std::find(kCommands.begin(), kCommands.end(), args[0]) != kCommands.end()) {
    command = args[0];
    rest = 1;
  }
  if (!command.empty()) out.push_back(command);
  out.insert(out.end(), flags.begin(), flags.end());
  out.insert(out.end(), args.begin() + static_cast<long>(rest), args.end());
  return out;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + cfg.out);
  f << text;
}

PhaseContext parse_xi(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw std::invalid_argument("--xi expects three comma-separated frequencies");
  return PhaseContext(Frequency::parse(parts[0]), Frequency::parse(parts[1]), Frequency::parse(parts[2]));
}

std::vector<Frequency> load_grid(const RunConfig& cfg, const Polynomial& p, std::int64_t n_max) {
  if (cfg.grid_file.empty()) {
    // Reach down to 1/(4 N^deg) so the near-zero divergence of odd vertices is sampled.
    const double lo = std::max(1, p.degree()) * std::log2(static_cast<double>(n_max)) + 2;
    return default_xi3_grid(cfg.grid_size, lo);
  }
  std::ifstream in(cfg.grid_file);
  if (!in) throw std::runtime_error("cannot open grid file " + cfg.grid_file);
  std::vector<Frequency> grid;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line == "xi3") continue;
    grid.push_back(Frequency::parse(line));
  }
  return grid;
}

int run_analyze(const RunConfig& cfg) {
  const Polynomial p = parse(cfg.poly);
  const auto n = NewtonPolyhedron::build(p);
  const auto v = decide_boundedness(n);
  emit(cfg, polyhedron_json(p, n, v).dump(2) + "\n");
  return v.bounded ? 0 : 2;
}

int run_sum(const RunConfig& cfg) {
  const Polynomial p = parse(cfg.poly);
  const PhaseContext xi = parse_xi(cfg.xi);
  SumOptions opts;
  opts.workers = cfg.workers;
  if (cfg.quadrants == "positive") {
    opts.quadrants = Quadrants::Positive;
  } else if (cfg.quadrants != "all") {
    throw std::invalid_argument("--quadrants must be 'all' or 'positive'");
  }
  const auto r = hilbert_sum(p, cfg.n1, cfg.n2, xi, opts);
  emit(cfg, sum_json(r, xi).dump(2) + "\n");
  return 0;
}

int run_scan(const RunConfig& cfg) {
  const Polynomial p = parse(cfg.poly);
  const auto schedule = parse_ints(cfg.schedule);
  if (schedule.empty()) throw std::invalid_argument("empty schedule");
  const auto grid = load_grid(cfg, p, schedule.back());
  const auto rows = partial_sup_scan(p, grid, schedule, {Quadrants::All, cfg.workers});
  emit(cfg, scan_csv(rows));
  return 0;
}

int run_gauss(const RunConfig& cfg) {
  const Polynomial p = parse(cfg.poly);
  std::vector<std::uint64_t> moduli;
  for (const auto q : primes_up_to(cfg.qmax)) {
    if (std::gcd(static_cast<std::uint64_t>(std::llabs(cfg.a)), q) == 1) moduli.push_back(q);
  }
  const auto rows = gauss_decay_table(p, cfg.j2, moduli, cfg.a);
  std::string text = gauss_csv(rows);
  std::vector<std::pair<double, double>> samples;
  for (const auto& r : rows) {
    if (r.average > 0) samples.emplace_back(static_cast<double>(r.q), r.average);
  }
  if (samples.size() >= 3) {
    const auto fit = fit_decay(samples);
    text += "# fit delta=" + format_double(fit.exponent) + " constant=" + format_double(fit.constant) +
            " r_squared=" + format_double(fit.r_squared) + "\n";
  }
  emit(cfg, text);
  return 0;
}

int run_arcs(const RunConfig& cfg) {
  const Polynomial p = parse(cfg.poly);
  const auto dims = split(cfg.grid, 'x');
  if (dims.size() != 2) throw std::invalid_argument("--grid expects J1xJ2");
  const long J1 = std::stol(dims[0]), J2 = std::stol(dims[1]);
  const Frequency xi3 = Frequency::parse(cfg.xi3);
  ArcPartition part;
  if (cfg.vertex.empty()) {
    part = partition_grid(xi3, NewtonPolyhedron::build(p), J1, J2);
  } else {
    const auto v = parse_ints(cfg.vertex);
    if (v.size() != 2) throw std::invalid_argument("--vertex expects m1,m2");
    part = partition_grid(xi3, Exponent{static_cast<int>(v[0]), static_cast<int>(v[1])}, J1, J2);
  }
  emit(cfg, arcs_csv(part));
  return 0;
}

int run_verify(const RunConfig& cfg) {
  const Polynomial p = parse(cfg.poly);
  const auto n = NewtonPolyhedron::build(p);
  const Frequency xi3 = Frequency::parse(cfg.xi3);
  const auto jj = parse_ints(cfg.j);
  if (jj.size() != 2) throw std::invalid_argument("--j expects j1,j2");
  const long j1 = jj[0], j2 = jj[1];
  const Exponent vertex = n.vertices()[n.dual_face_of(j1, j2)];
  const auto pj = parse_ints(cfg.poisson_j);
  if (pj.size() != 2) throw std::invalid_argument("--poisson-j expects j1,j2");

  Json report;
  report["polynomial"] = render(p);
  bool contradiction = false;
  const bool all = cfg.check == "all";
  bool ran = false;
  if (all || cfg.check == "major") {
    ran = true;
    try {
      const auto r = major_arc_approx_check(p, j1, j2, xi3, vertex);
      report["major"] = identity_json(r);
      contradiction = contradiction || !r.passed;
    } catch (const PreconditionError& e) {
      report["major"] = {{"skipped", e.what()}};
    }
  }
  if (all || cfg.check == "poisson") {
    ran = true;
    // The left side is a direct block sum, so this index stays small.
    const auto r = poisson_identity_check(p, pj[0], pj[1], xi3, n.vertices()[n.dual_face_of(pj[0], pj[1])],
                                          cfg.w_window);
    report["poisson"] = identity_json(r);
    contradiction = contradiction || !r.passed;
  }
  if (all || cfg.check == "minor") {
    ran = true;
    const auto ray = minor_arc_ray(p, xi3, vertex, cfg.j1_lo, cfg.j1_hi, cfg.j2_ratio);
    report["minor"] = minor_ray_json(ray);
    for (const auto& row : ray.rows) contradiction = contradiction || !row.within_bound;
  }
  if (all || cfg.check == "theorem") {
    ran = true;
    const auto schedule = parse_ints(cfg.schedule);
    if (schedule.empty()) throw std::invalid_argument("empty schedule");
    const auto v = theorem_crosscheck(p, load_grid(cfg, p, schedule.back()), schedule, {Quadrants::All, cfg.workers});
    report["theorem"] = verdict_json(v);
    contradiction = contradiction || v.contradiction;
  }
  if (!ran) throw std::invalid_argument("--check must be major, poisson, minor, theorem or all");
  report["contradiction"] = contradiction;
  emit(cfg, report.dump(2) + "\n");
  return contradiction ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Newton-polyhedron boundedness and circle-method numerics for discrete double Hilbert transforms"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--poly", cfg.poly, "polynomial in t1, t2")->required();
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
    sub->add_option("--workers", cfg.workers, "worker threads (results do not depend on it)");
  };

  auto* analyze = app.add_subcommand("analyze", "Newton polyhedron and boundedness verdict (JSON)");
  common(analyze);

  auto* sum = app.add_subcommand("sum", "truncated two-parameter exponential sum (JSON)");
  common(sum);
  sum->add_option("--xi", cfg.xi, "xi1,xi2,xi3 (decimals or a/q)");
  sum->add_option("--N1", cfg.n1)->check(CLI::PositiveNumber);
  sum->add_option("--N2", cfg.n2)->check(CLI::PositiveNumber);
  sum->add_option("--quadrants", cfg.quadrants, "all | positive");

  auto* scan = app.add_subcommand("scan", "running sup over a xi3 grid (CSV N,sup_abs)");
  common(scan);
  scan->add_option("--schedule", cfg.schedule, "increasing N values");
  scan->add_option("--grid-file", cfg.grid_file, "one xi3 per line");
  scan->add_option("--grid-size", cfg.grid_size, "size of the default log-spaced grid");

  auto* gauss = app.add_subcommand("gauss", "Gauss-sum fiber averages over primes (CSV q,a,avg,magnitude)");
  common(gauss);
  gauss->add_option("--j2", cfg.j2);
  gauss->add_option("--qmax", cfg.qmax);
  gauss->add_option("--a", cfg.a);

  auto* arcs = app.add_subcommand("arcs", "arc classification grid (CSV j1,j2,class,q,beta_scaled)");
  common(arcs);
  arcs->add_option("--xi3", cfg.xi3);
  arcs->add_option("--grid", cfg.grid, "J1xJ2");
  arcs->add_option("--vertex", cfg.vertex, "m1,m2 (default: the dual-face vertex of each j)");

  auto* verify = app.add_subcommand("verify", "numerical checks (JSON); exit 3 on a confident contradiction");
  common(verify);
  verify->add_option("--check", cfg.check, "major | poisson | minor | theorem | all");
  verify->add_option("--xi3", cfg.xi3);
  verify->add_option("--j", cfg.j, "j1,j2 for the major-arc check");
  verify->add_option("--poisson-j", cfg.poisson_j, "j1,j2 for the Poisson check (direct block sum)");
  verify->add_option("--w-window", cfg.w_window);
  verify->add_option("--j1-lo", cfg.j1_lo);
  verify->add_option("--j1-hi", cfg.j1_hi);
  verify->add_option("--j2-ratio", cfg.j2_ratio);
  verify->add_option("--schedule", cfg.schedule);
  verify->add_option("--grid-file", cfg.grid_file);
  verify->add_option("--grid-size", cfg.grid_size);

  try {
    auto args = expand_config(argc, argv);
    std::vector<char*> ptrs;
    for (auto& a : args) ptrs.push_back(a.data());
    app.parse(static_cast<int>(ptrs.size()), ptrs.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*analyze) return run_analyze(cfg);
    if (*sum) return run_sum(cfg);
    if (*scan) return run_scan(cfg);
    if (*gauss) return run_gauss(cfg);
    if (*arcs) return run_arcs(cfg);
    if (*verify) return run_verify(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
