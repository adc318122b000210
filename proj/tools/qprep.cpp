// qprep: prepare quantum states whose measurement law matches a target
// distribution, transpile the preparation circuits to {ry, x, cx}, and
// check the results against exact simulation.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qprep/qprep.hpp"

namespace {

struct Options {
  std::string pmf_path;
  std::string builtin;
  int n = 0;
  std::string breakpoints;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  double tol = -1.0;  // per-command default when negative
  std::string format = "text";
};

std::vector<qprep::PiecewisePoint> parse_breakpoints(const std::string& text) {
  std::vector<qprep::PiecewisePoint> points;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("breakpoints must be `x:density` pairs, got `" + item + "`");
    std::size_t used = 0;
    const double x = std::stod(item.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("bad breakpoint position in `" + item + "`");
    const std::string d = item.substr(colon + 1);
    const double density = std::stod(d, &used);
    if (used != d.size()) throw std::invalid_argument("bad breakpoint density in `" + item + "`");
    points.push_back({x, density});
  }
  if (points.empty()) throw std::invalid_argument("breakpoint list is empty");
  return points;
}

qprep::DistributionSpec resolve_source(const Options& opt) {
  const bool have_pmf = !opt.pmf_path.empty();
  const bool have_builtin = !opt.builtin.empty();
  if (have_pmf == have_builtin)
    throw std::invalid_argument("give exactly one distribution source: --pmf or --builtin");
  if (have_pmf) {
    if (opt.n != 0) throw std::invalid_argument("--n applies only to --builtin sources");
    if (!opt.breakpoints.empty())
      throw std::invalid_argument("--breakpoints applies only to --builtin piecewise-linear");
    return qprep::load_pmf_file(opt.pmf_path);
  }
  if (opt.n < 1) throw std::invalid_argument("--builtin needs --n >= 1");
  if (opt.builtin == "uniform" || opt.builtin == "triangular") {
    if (!opt.breakpoints.empty())
      throw std::invalid_argument("--breakpoints applies only to --builtin piecewise-linear");
    return opt.builtin == "uniform" ? qprep::DistributionSpec::uniform(opt.n)
                                    : qprep::DistributionSpec::triangular(opt.n);
  }
  if (opt.builtin == "piecewise-linear") {
    if (opt.breakpoints.empty())
      throw std::invalid_argument("--builtin piecewise-linear needs --breakpoints");
    return qprep::DistributionSpec::piecewise_linear(opt.n, parse_breakpoints(opt.breakpoints));
  }
  throw std::invalid_argument("unknown builtin `" + opt.builtin +
                              "`; choose uniform, triangular, or piecewise-linear");
}

void add_source_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--pmf", opt.pmf_path, "JSON pmf file: {\"n\": qubits, \"p\": [2^n values]}");
  cmd->add_option("--builtin", opt.builtin,
                  "built-in density: uniform, triangular, or piecewise-linear")
      ->check(CLI::IsMember({"uniform", "triangular", "piecewise-linear"}));
  cmd->add_option("--n", opt.n, "register size for --builtin sources");
  cmd->add_option("--breakpoints", opt.breakpoints,
                  "piecewise-linear breakpoints, e.g. 0:0,0.5:2,1:0");
  cmd->add_option("--out", opt.out_dir, "output directory (default .)");
}

std::string out_path(const Options& opt, const std::string& name) {
  return (std::filesystem::path(opt.out_dir) / name).string();
}

void prepare_out_dir(const Options& opt) {
  std::filesystem::create_directories(opt.out_dir);
}

struct Prepared {
  qprep::MassTree masses;
  qprep::AngleTree angles;
};

Prepared prepare(const Options& opt) {
  const qprep::DistributionSpec spec = resolve_source(opt);
  qprep::MassTree masses = qprep::build_mass_tree(spec);
  if (masses.was_rescaled())
    std::cout << "note: input mass " << qprep::format_double(masses.ingest_total())
              << " rescaled to 1\n";
  qprep::AngleTree angles = qprep::compute_angles(masses);
  return Prepared{std::move(masses), std::move(angles)};
}

std::vector<std::string> circuit_comments(int n, bool transpiled) {
  std::vector<std::string> comments = {
      "qubits are 1-based; basis index k has bit t-1 equal to qubit t",
      "RY t a: y-rotation ry(a) on qubit t",
  };
  if (transpiled)
    comments.push_back("CX c t: controlled X with control qubit c");
  else
    comments.push_back(
        "PRY t a q:b ...: y-rotation ry(2a) on qubit t where every qubit q holds bit b");
  comments.push_back("register size " + std::to_string(n));
  return comments;
}

int cmd_angles(const Options& opt) {
  prepare_out_dir(opt);
  const Prepared p = prepare(opt);
  std::string file;
  if (opt.format == "json") {
    file = out_path(opt, "angles.json");
    qprep::write_text_file(file, qprep::angle_table_json(p.masses, p.angles).dump(2) + "\n");
  } else if (opt.format == "csv") {
    file = out_path(opt, "angles.csv");
    qprep::write_text_file(file, qprep::angle_table_csv(p.masses, p.angles));
  } else {
    file = out_path(opt, "angles.txt");
    qprep::write_text_file(file, qprep::angle_table_text(p.masses, p.angles));
  }
  const std::size_t words = (std::size_t{1} << p.angles.qubit_count()) - 1;
  std::cout << "angles: " << words << " words over " << p.angles.qubit_count()
            << " qubits, root angle " << qprep::format_double(p.angles.root_theta()) << "\n"
            << "wrote " << file << "\n";
  return 0;
}

int cmd_compile(const Options& opt) {
  prepare_out_dir(opt);
  const Prepared p = prepare(opt);
  const qprep::Circuit circuit = qprep::build_full(p.angles);
  const std::string file = out_path(opt, "circuit.txt");
  qprep::write_text_file(
      file, qprep::to_text(circuit, circuit_comments(circuit.qubit_count(), false)));
  const qprep::GateCounts counts = qprep::gate_counts(circuit);
  std::cout << "compile: " << counts.total() << " gates (" << counts.rot_y << " RY, "
            << counts.pattern_rot << " pattern RY)\n"
            << "wrote " << file << "\n";
  return 0;
}

int cmd_transpile(const Options& opt) {
  prepare_out_dir(opt);
  const double tol = opt.tol < 0 ? 1e-10 : opt.tol;
  const Prepared p = prepare(opt);
  const qprep::Circuit circuit = qprep::transpile_full(p.angles, tol);
  const std::string text_file = out_path(opt, "transpiled.txt");
  const std::string qasm_file = out_path(opt, "transpiled.qasm");
  const std::string report_file = out_path(opt, "transpile_report.json");
  qprep::write_text_file(
      text_file, qprep::to_text(circuit, circuit_comments(circuit.qubit_count(), true)));
  qprep::write_text_file(qasm_file, qprep::to_qasm(circuit));
  const auto reports = qprep::compare_ladder_variants(p.angles);
  qprep::write_text_file(report_file, qprep::stage_reports_json(reports, tol).dump(2) + "\n");
  const qprep::GateCounts counts = qprep::gate_counts(circuit);
  std::cout << "transpile: " << counts.rot_y << " RY, " << counts.cnot << " CX (tol "
            << qprep::format_double(tol) << ")\n"
            << "wrote " << text_file << ", " << qasm_file << ", " << report_file << "\n";
  return 0;
}

int cmd_simulate(const Options& opt) {
  prepare_out_dir(opt);
  const double tol = opt.tol < 0 ? 1e-12 : opt.tol;
  const Prepared p = prepare(opt);
  const qprep::StateVector sv = qprep::run(qprep::build_full(p.angles));
  const std::vector<double> simulated = qprep::born_probabilities(sv);
  const std::vector<double>& target = p.masses.leaves();
  const int n = p.angles.qubit_count();

  std::string file;
  if (opt.format == "json") {
    file = out_path(opt, "probabilities.json");
    qprep::write_text_file(
        file, qprep::probability_report_json(target, simulated, n, tol).dump(2) + "\n");
  } else {
    file = out_path(opt, "probabilities.csv");
    qprep::write_text_file(file, qprep::probability_report_csv(target, simulated, n, tol));
  }

  double max_err = 0.0;
  std::size_t worst_k = 0;
  for (std::size_t k = 0; k < target.size(); ++k) {
    const double err = std::abs(target[k] - simulated[k]);
    if (err > max_err) {
      max_err = err;
      worst_k = k;
    }
  }
  std::cout << "simulate: max abs error " << qprep::format_double(max_err) << " (tol "
            << qprep::format_double(tol) << ")\n"
            << "wrote " << file << "\n";
  if (max_err > tol) {
    std::cerr << "tolerance breach at k=" << worst_k << " (word "
              << qprep::Word(n, worst_k).str() << "): abs error "
              << qprep::format_double(max_err) << " > tol " << qprep::format_double(tol) << "\n";
    return 2;
  }
  return 0;
}

int cmd_sample(const Options& opt) {
  prepare_out_dir(opt);
  const Prepared p = prepare(opt);
  const qprep::StateVector sv = qprep::run(qprep::build_full(p.angles));
  const qprep::Histogram hist = qprep::sample(sv, opt.shots, opt.seed);
  std::string file;
  if (opt.format == "json") {
    file = out_path(opt, "histogram.json");
    qprep::write_text_file(file, qprep::histogram_json(hist).dump(2) + "\n");
  } else {
    file = out_path(opt, "histogram.csv");
    qprep::write_text_file(file, qprep::histogram_csv(hist));
  }
  std::cout << "sample: " << hist.shots << " shots, seed " << hist.seed << ", generator "
            << qprep::sample_generator_id() << "\n"
            << "wrote " << file << "\n";
  return 0;
}

int cmd_verify(const Options& opt) {
  prepare_out_dir(opt);
  const double tol = opt.tol < 0 ? 1e-10 : opt.tol;
  const double pmf_tol = 1e-12;
  const Prepared p = prepare(opt);
  const int n = p.angles.qubit_count();

  const qprep::StateVector direct = qprep::run(qprep::build_full(p.angles));
  const qprep::Circuit elementary = qprep::transpile_full(p.angles, tol);
  const qprep::StateVector transpiled = qprep::run(elementary);

  double sv_deviation = 0.0;
  for (std::size_t k = 0; k < direct.amplitudes().size(); ++k)
    sv_deviation = std::max(
        sv_deviation, std::abs(direct.amplitudes()[k] - transpiled.amplitudes()[k]));

  const std::vector<double> born = qprep::born_probabilities(direct);
  double born_err = 0.0;
  std::size_t worst_k = 0;
  for (std::size_t k = 0; k < born.size(); ++k) {
    const double err = std::abs(born[k] - p.masses.leaves()[k]);
    if (err > born_err) {
      born_err = err;
      worst_k = k;
    }
  }

  const auto reports = qprep::compare_ladder_variants(p.angles);
  double stage_deviation = 0.0;
  for (const auto& r : reports) stage_deviation = std::max(stage_deviation, r.deviation_closed);

  const bool pass = sv_deviation <= tol && born_err <= pmf_tol && stage_deviation <= tol;
  nlohmann::ordered_json doc{{"tol", tol},
                             {"pmf_tol", pmf_tol},
                             {"statevector_deviation", sv_deviation},
                             {"born_max_abs_error", born_err},
                             {"max_stage_deviation", stage_deviation},
                             {"pass", pass},
                             {"stages", qprep::stage_reports_json(reports, tol)["stages"]}};
  const std::string file = out_path(opt, "verify_report.json");
  qprep::write_text_file(file, doc.dump(2) + "\n");

  std::cout << "verify: statevector deviation " << qprep::format_double(sv_deviation)
            << " (tol " << qprep::format_double(tol) << "), born error "
            << qprep::format_double(born_err) << " (tol " << qprep::format_double(pmf_tol)
            << ")\n"
            << "wrote " << file << "\n";
  if (!pass) {
    std::cerr << "verification failed";
    if (born_err > pmf_tol)
      std::cerr << " at k=" << worst_k << " (word " << qprep::Word(n, worst_k).str()
                << "): born error " << qprep::format_double(born_err);
    else
      std::cerr << ": deviation " << qprep::format_double(std::max(sv_deviation, stage_deviation));
    std::cerr << "\n";
    return 2;
  }
  std::cout << "verify: PASS\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Grover-Rudolph state preparation: angles, circuits, transpilation, simulation"};
  app.require_subcommand(1);

  CLI::App* angles = app.add_subcommand("angles", "compute the word/mass/angle table");
  CLI::App* compile = app.add_subcommand("compile", "build the pattern-controlled circuit");
  CLI::App* transpile =
      app.add_subcommand("transpile", "rewrite the circuit over {ry, x, cx} and verify it");
  CLI::App* simulate =
      app.add_subcommand("simulate", "compare simulated measurement law with the target");
  CLI::App* sample = app.add_subcommand("sample", "draw seeded shots from the prepared state");
  CLI::App* verify = app.add_subcommand("verify", "run the direct-vs-transpiled equivalence suite");

  for (CLI::App* cmd : {angles, compile, transpile, simulate, sample, verify})
    add_source_flags(cmd, opt);
  for (CLI::App* cmd : {angles, simulate, sample})
    cmd->add_option("--format", opt.format, "output format: text, csv, or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
  for (CLI::App* cmd : {transpile, simulate, verify})
    cmd->add_option("--tol", opt.tol, "tolerance override (defaults per subcommand)");
  sample->add_option("--seed", opt.seed, "64-bit RNG seed")->required();
  sample->add_option("--shots", opt.shots, "number of shots")->required()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (angles->parsed()) return cmd_angles(opt);
    if (compile->parsed()) return cmd_compile(opt);
    if (transpile->parsed()) return cmd_transpile(opt);
    if (simulate->parsed()) return cmd_simulate(opt);
    if (sample->parsed()) return cmd_sample(opt);
    if (verify->parsed()) return cmd_verify(opt);
  } catch (const qprep::CompilationError& e) {
    std::cerr << "verification failed: " << e.what() << " (deviation "
              << qprep::format_double(e.max_deviation) << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
