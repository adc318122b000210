#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qprep/angles.hpp"
#include "qprep/distribution.hpp"
#include "qprep/simulator.hpp"
#include "qprep/transpiler.hpp"
#include "qprep/words.hpp"

namespace qprep {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

/// Reads a pmf document: {"n": <qubits>, "p": [<2^n nonnegative reals>]}.
inline DistributionSpec load_pmf_file(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("p"))
    throw std::invalid_argument(path + ": expected an object with fields `n` and `p`");
  if (!doc["n"].is_number_integer())
    throw std::invalid_argument(path + ": `n` must be an integer");
  if (!doc["p"].is_array()) throw std::invalid_argument(path + ": `p` must be an array");
  const int n = doc["n"].get<int>();
  std::vector<double> values;
  values.reserve(doc["p"].size());
  for (const auto& v : doc["p"]) {
    if (!v.is_number()) throw std::invalid_argument(path + ": `p` entries must be numbers");
    values.push_back(v.get<double>());
  }
  try {
    return DistributionSpec::discrete_pmf(n, std::move(values));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

namespace detail {

template <class Fn>
void for_each_tree_word(int depth, Fn&& fn) {
  for (int l = 0; l < depth; ++l)
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << l); ++k) fn(l, k);
}

}  // namespace detail

/// Word / mass / angle table, one row per word of length 0..n-1, level by
/// level. The root's empty word prints as `-`.
inline std::string angle_table_text(const MassTree& masses, const AngleTree& angles) {
  std::string out = "# qubits " + std::to_string(angles.qubit_count()) + "\n";
  out += "# word mass angle\n";
  detail::for_each_tree_word(angles.qubit_count(), [&](int l, std::uint64_t k) {
    const std::string word = l == 0 ? "-" : Word(l, k).str();
    out += word + " " + format_double(masses.mass(l, k)) + " " +
           format_double(angles.theta(l, k)) + "\n";
  });
  return out;
}

inline std::string angle_table_csv(const MassTree& masses, const AngleTree& angles) {
  std::string out = "word,mass,angle\n";
  detail::for_each_tree_word(angles.qubit_count(), [&](int l, std::uint64_t k) {
    const std::string word = l == 0 ? "-" : Word(l, k).str();
    out += word + "," + format_double(masses.mass(l, k)) + "," +
           format_double(angles.theta(l, k)) + "\n";
  });
  return out;
}

/// JSON form keyed by word string; the root is keyed by "".
inline nlohmann::ordered_json angle_table_json(const MassTree& masses, const AngleTree& angles) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::object();
  detail::for_each_tree_word(angles.qubit_count(), [&](int l, std::uint64_t k) {
    const std::string word = l == 0 ? "" : Word(l, k).str();
    entries[word] = {{"mass", masses.mass(l, k)}, {"angle", angles.theta(l, k)}};
  });
  return nlohmann::ordered_json{{"qubits", angles.qubit_count()}, {"angles", entries}};
}

/// Target vs simulated measurement probabilities, one row per outcome.
inline std::string probability_report_csv(const std::vector<double>& target,
                                          const std::vector<double>& simulated, int qubit_count,
                                          double tol) {
  if (target.size() != simulated.size() ||
      target.size() != (std::size_t{1} << qubit_count))
    throw std::invalid_argument("probability vectors must hold 2^n entries");
  double max_err = 0.0;
  for (std::size_t k = 0; k < target.size(); ++k)
    max_err = std::max(max_err, std::abs(target[k] - simulated[k]));
  std::string out = "# tol=" + format_double(tol) + "\n";
  out += "# max_abs_error=" + format_double(max_err) + "\n";
  out += "k,word,p_target,p_simulated,abs_error\n";
  for (std::size_t k = 0; k < target.size(); ++k) {
    out += std::to_string(k) + "," + Word(qubit_count, k).str() + "," +
           format_double(target[k]) + "," + format_double(simulated[k]) + "," +
           format_double(std::abs(target[k] - simulated[k])) + "\n";
  }
  return out;
}

inline nlohmann::ordered_json probability_report_json(const std::vector<double>& target,
                                                      const std::vector<double>& simulated,
                                                      int qubit_count, double tol) {
  if (target.size() != simulated.size() ||
      target.size() != (std::size_t{1} << qubit_count))
    throw std::invalid_argument("probability vectors must hold 2^n entries");
  double max_err = 0.0;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < target.size(); ++k) {
    const double err = std::abs(target[k] - simulated[k]);
    max_err = std::max(max_err, err);
    rows.push_back({{"k", k},
                    {"word", Word(qubit_count, k).str()},
                    {"p_target", target[k]},
                    {"p_simulated", simulated[k]},
                    {"abs_error", err}});
  }
  return nlohmann::ordered_json{
      {"qubits", qubit_count}, {"tol", tol}, {"max_abs_error", max_err}, {"rows", rows}};
}

/// Seeded histogram, one row per outcome (zero counts included).
inline std::string histogram_csv(const Histogram& hist) {
  std::string out = "# seed=" + std::to_string(hist.seed) + "\n";
  out += "# generator=" + std::string(sample_generator_id()) + "\n";
  out += "# shots=" + std::to_string(hist.shots) + "\n";
  out += "k,word,count,frequency\n";
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << hist.qubit_count); ++k) {
    const auto it = hist.counts.find(k);
    const std::uint64_t count = it == hist.counts.end() ? 0 : it->second;
    const double freq =
        hist.shots == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(hist.shots);
    out += std::to_string(k) + "," + Word(hist.qubit_count, k).str() + "," +
           std::to_string(count) + "," + format_double(freq) + "\n";
  }
  return out;
}

inline nlohmann::ordered_json histogram_json(const Histogram& hist) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << hist.qubit_count); ++k) {
    const auto it = hist.counts.find(k);
    const std::uint64_t count = it == hist.counts.end() ? 0 : it->second;
    const double freq =
        hist.shots == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(hist.shots);
    rows.push_back({{"k", k},
                    {"word", Word(hist.qubit_count, k).str()},
                    {"count", count},
                    {"frequency", freq}});
  }
  return nlohmann::ordered_json{{"seed", hist.seed},
                                {"generator", sample_generator_id()},
                                {"shots", hist.shots},
                                {"rows", rows}};
}

/// Per-stage transpilation summary: costs of the shipped (closed) ladder,
/// costs and deviations of the open variant, and the oracle tolerances in
/// force.
inline nlohmann::ordered_json stage_reports_json(const std::vector<StageReport>& reports,
                                                 double tol) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::size_t total_ry = 0, total_cx = 0;
  for (const StageReport& r : reports) {
    total_ry += r.ry_count;
    total_cx += r.cx_count_closed;
    rows.push_back({{"stage", r.stage},
                    {"controls", r.control_count},
                    {"ry", r.ry_count},
                    {"cx_closed", r.cx_count_closed},
                    {"cx_open", r.cx_count_open},
                    {"dense_checked", r.dense_checked},
                    {"deviation_closed", r.deviation_closed},
                    {"deviation_open", r.deviation_open},
                    {"residual_x_open", r.residual_x_open}});
  }
  return nlohmann::ordered_json{{"tol", tol},
                                {"total_ry", total_ry},
                                {"total_cx", total_cx},
                                {"stages", rows}};
}

}  // namespace qprep
