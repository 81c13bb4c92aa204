#include "tinpc/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tinpc/bounds.hpp"
#include "tinpc/bpc.hpp"
#include "tinpc/gdof.hpp"
#include "tinpc/opc.hpp"
#include "tinpc/rate.hpp"
#include "tinpc/search.hpp"

namespace tinpc {

namespace {

// Error tied to a command-line argument; the message names it.
class ArgumentError : public std::runtime_error {
 public:
  ArgumentError(const std::string& argument, const std::string& what)
      : std::runtime_error(argument + ": " + what) {}
};

std::string read_file(const std::string& flag, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError(flag, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Topology load_topology(const std::string& path) {
  const std::string text = read_file("--topology", path);
  try {
    return parse_topology(text);
  } catch (const std::exception& e) {
    throw ArgumentError("--topology", "'" + path + "': " + e.what());
  }
}

// ALLOC is a file if one exists at that path, otherwise an inline vector.
PowerAllocation load_allocation(const std::string& spec, std::size_t k) {
  std::error_code ec;
  const bool is_file = std::filesystem::is_regular_file(spec, ec);
  PowerAllocation r;
  try {
    r = parse_allocation(is_file ? read_file("--alloc", spec) : spec);
  } catch (const ArgumentError&) {
    throw;
  } catch (const std::exception& e) {
    throw ArgumentError("--alloc", "'" + spec + "': " + e.what());
  }
  if (r.size() != k) {
    throw ArgumentError("--alloc", "'" + spec + "' has " + std::to_string(r.size()) + " entries but the topology has " +
                                       std::to_string(k) + " users");
  }
  return r;
}

std::string users_text(UserMask mask) {
  std::string s = "{";
  bool first = true;
  for (std::size_t u : mask_to_users(mask)) {
    s += (first ? "" : ",") + std::to_string(u);
    first = false;
  }
  return s + "}";
}

std::string values_text(const std::vector<Rational>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? " " : "") + values[i].to_string();
  return s;
}

// Writes to the file named by `path`, or to `out` when it is empty or "-".
void emit(const std::string& path, std::ostream& out, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ArgumentError("--output", "cannot write '" + path + "'");
  f << text;
}

std::size_t default_threads() {
  if (const char* env = std::getenv("TIN_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 1;
}

Rational parse_rational_arg(const std::string& flag, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw ArgumentError(flag, "'" + text + "' is not a rational number");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Power control under treating interference as noise: GDoF solvers, bounds and simulations", "tinpc"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "tinpc 0.1.0");

  std::size_t threads = default_threads();
  std::size_t limit = kDefaultEnumerationLimit;
  app.add_option("--threads", threads, "Worker thread cap (default: TIN_THREADS or 1)")->check(CLI::PositiveNumber);
  app.add_option("--max-users", limit, "Largest K accepted by the exhaustive solvers")->check(CLI::Range(1, 63));

  std::string topology_path, alloc_spec, output_path;

  auto* gen = app.add_subcommand("gen", "Write an extremal topology");
  int small_k = 0, grid_m = 0;
  auto* gen_small = gen->add_option("--small", small_k, "Extremal topology for K in 3..6")->check(CLI::Range(3, 6));
  auto* gen_grid = gen->add_option("--grid", grid_m, "Grid topology with K = M^2 users")->check(CLI::Range(1, 8));
  gen_small->excludes(gen_grid);
  gen->add_option("-o,--output", output_path, "Output file (default stdout)");

  auto* eval = app.add_subcommand("eval", "Per-user GDoF of a power allocation");
  eval->add_option("-t,--topology", topology_path, "Topology file")->required();
  eval->add_option("-r,--alloc", alloc_spec, "Allocation file or inline vector, e.g. \"0 -1/2 off\"")->required();

  auto* opc = app.add_subcommand("opc", "Optimal power control sum GDoF");
  opc->add_option("-t,--topology", topology_path, "Topology file")->required();
  bool all_optima = false;
  opc->add_flag("--all-optima", all_optima, "Also list every optimal active set");

  auto* bpc = app.add_subcommand("bpc", "Binary power control sum GDoF or sum rate");
  bpc->add_option("-t,--topology", topology_path, "Topology file")->required();
  std::optional<double> rate_db;
  bpc->add_option("--rate", rate_db, "Maximize the sum rate at this SNR in dB instead");

  auto* bounds = app.add_subcommand("bounds", "Converse certificate for D_o / D_b");
  bounds->add_option("-t,--topology", topology_path, "Topology file")->required();
  bounds->add_option("-r,--alloc", alloc_spec, "Optimal allocation (default: the solver's witness)");
  bool use_small = false;
  int square_m = 0;
  auto* small_flag = bounds->add_flag("--small-k", use_small, "Use the K <= 6 combination");
  auto* square_opt = bounds->add_option("--square", square_m, "Use the K = M^2 combination")->check(CLI::PositiveNumber);
  small_flag->excludes(square_opt);

  auto* ratesim = app.add_subcommand("ratesim", "Sum-rate sweep: allocation versus binary power control (CSV)");
  int sim_grid = 0;
  double pmin = 0, pmax = 40, pstep = 5;
  auto* sim_grid_opt = ratesim->add_option("--grid", sim_grid, "Grid topology with its group allocation")->check(CLI::Range(1, 4));
  auto* sim_topo = ratesim->add_option("-t,--topology", topology_path, "Topology file");
  auto* sim_alloc = ratesim->add_option("-r,--alloc", alloc_spec, "Allocation for the topology file");
  sim_grid_opt->excludes(sim_topo)->excludes(sim_alloc);
  sim_alloc->needs(sim_topo);
  ratesim->add_option("--pmin", pmin, "First SNR in dB");
  ratesim->add_option("--pmax", pmax, "Last SNR in dB");
  ratesim->add_option("--step", pstep, "SNR step in dB")->check(CLI::PositiveNumber);
  ratesim->add_option("-o,--output", output_path, "CSV file (default stdout)");

  auto* search = app.add_subcommand("search", "Local search for topologies with a large D_o / D_b");
  std::size_t search_k = 0, budget = 0;
  std::uint64_t seed = 0;
  std::string step_text = "1", max_text = "3";
  std::size_t streams = 4;
  search->add_option("-k", search_k, "Number of users")->required()->check(CLI::PositiveNumber);
  search->add_option("--budget", budget, "Number of ratio evaluations")->required()->check(CLI::PositiveNumber);
  search->add_option("--seed", seed, "RNG seed")->required();
  search->add_option("--step", step_text, "Strength granularity and move size");
  search->add_option("--max-strength", max_text, "Largest link strength");
  search->add_option("--streams", streams, "Independent restart streams")->check(CLI::PositiveNumber);
  search->add_option("-o,--output", output_path, "Report file (default stdout)");

  std::vector<std::string> argv(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (gen->parsed()) {
      if (!small_k && !grid_m) throw ArgumentError("gen", "one of --small or --grid is required");
      const Topology t = small_k ? extremal_small(small_k) : extremal_grid(grid_m);
      emit(output_path, out, t.to_text());
    } else if (eval->parsed()) {
      const Topology t = load_topology(topology_path);
      const PowerAllocation r = load_allocation(alloc_spec, t.size());
      const GdofOutcome o = sum_gdof(t, r);
      out << "users " << t.size() << '\n';
      for (std::size_t i = 0; i < t.size(); ++i) out << "d" << i + 1 << " = " << o.per_user[i] << '\n';
      out << "sum = " << o.total << '\n';
    } else if (opc->parsed()) {
      const Topology t = load_topology(topology_path);
      OpcOptions options;
      options.enumeration_limit = limit;
      options.collect_all_optima = all_optima;
      const OpcResult res = solve_opc(t, options);
      out << "D_o = " << res.value << '\n';
      out << "allocation = " << res.allocation.to_string() << '\n';
      out << "gdof = " << values_text(res.outcome.per_user) << '\n';
      out << "active = " << users_text(res.active_set) << '\n';
      if (all_optima) {
        out << "optimal_sets =";
        for (UserMask m : res.optimal_sets) out << ' ' << users_text(m);
        out << '\n';
      }
    } else if (bpc->parsed()) {
      const Topology t = load_topology(topology_path);
      if (rate_db) {
        const BpcRateResult res = solve_bpc_rate(t, *rate_db, limit);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9g", res.value);
        out << "R_b = " << buf << " at P = " << *rate_db << " dB\n";
        out << "best_sets =";
        for (UserMask m : res.best_sets) out << ' ' << users_text(m);
        out << '\n';
      } else {
        const BpcGdofResult res = solve_bpc_gdof(t, limit);
        out << "D_b = " << res.value << '\n';
        out << "best_sets =";
        for (UserMask m : res.best_sets) out << ' ' << users_text(m);
        out << '\n';
      }
    } else if (bounds->parsed()) {
      const Topology t = load_topology(topology_path);
      const std::size_t k = t.size();
      PowerAllocation r;
      if (alloc_spec.empty()) {
        OpcOptions options;
        options.enumeration_limit = limit;
        r = solve_opc(t, options).allocation;
      } else {
        r = load_allocation(alloc_spec, k);
      }
      int m = square_m;
      if (!use_small && !m && (k < 2 || k > 6)) {
        while (static_cast<std::size_t>((m + 1) * (m + 1)) <= k) ++m;
        if (static_cast<std::size_t>(m * m) != k) {
          throw ArgumentError("--topology", "no certificate for K = " + std::to_string(k) +
                                                " (needs K in 2..6 or a perfect square)");
        }
      }
      try {
        const AggregateCertificate cert = m ? certificate_square(t, r, m, limit) : certificate_small_k(t, r, limit);
        out << describe(cert);
      } catch (const PreconditionError& e) {
        throw ArgumentError(alloc_spec.empty() ? "--topology" : "--alloc", e.what());
      } catch (const std::invalid_argument& e) {
        throw ArgumentError(m ? "--square" : "--small-k", e.what());
      }
    } else if (ratesim->parsed()) {
      Topology t = diagonal_topology({Rational(1)});
      PowerAllocation r;
      if (sim_grid) {
        t = extremal_grid(sim_grid);
        r = kk_power_allocation(sim_grid);
      } else if (!topology_path.empty()) {
        t = load_topology(topology_path);
        if (alloc_spec.empty()) {
          OpcOptions options;
          options.enumeration_limit = limit;
          r = solve_opc(t, options).allocation;
        } else {
          r = load_allocation(alloc_spec, t.size());
        }
      } else {
        throw ArgumentError("ratesim", "one of --grid or --topology is required");
      }
      if (pmax < pmin) throw ArgumentError("--pmax", "must not be below --pmin");
      std::ostringstream csv;
      write_sweep_csv(csv, gain_sweep(t, r, db_range(pmin, pmax, pstep)));
      emit(output_path, out, csv.str());
    } else if (search->parsed()) {
      SearchOptions options;
      options.max_strength = parse_rational_arg("--max-strength", max_text);
      options.threads = threads;
      options.streams = streams;
      options.enumeration_limit = limit;
      const Rational step = parse_rational_arg("--step", step_text);
      if (step.sign() <= 0) throw ArgumentError("--step", "must be positive");
      if (options.max_strength.sign() < 0) throw ArgumentError("--max-strength", "must be nonnegative");
      if (search_k > limit) {
        throw ArgumentError("-k", std::to_string(search_k) + " exceeds --max-users " + std::to_string(limit));
      }
      emit(output_path, out, to_text(local_search(search_k, budget, step, seed, options)));
    }
  } catch (const std::exception& e) {
    err << "tinpc " << app.get_subcommands().front()->get_name() << ": error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace tinpc
