#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "expcodes/ael.hpp"
#include "expcodes/oracle.hpp"

namespace expcodes {

/// Flat key=value experiment description ('#' starts a comment). Every
/// numeric range is validated at parse time; violations raise ConfigError,
/// which the CLI turns into a usage message and exit code 2.
struct ExperimentConfig {
  /// tanner-unique | tanner-decode | ael-decode | ael-recover
  std::string mode = "ael-decode";

  // instance: either a saved graph or (n, d, graph_seed); d == n gives the
  // complete graph directly
  int n = 4;
  int d = 4;
  std::uint64_t graph_seed = 1;
  std::string graph_file;

  // component codes: repetition | parity | random | file:PATH
  std::uint32_t q = 2;
  std::string left = "parity";
  std::string right = "parity";
  std::string inner = "repetition";
  std::string outer = "repetition";
  int left_k = 1, right_k = 1, inner_k = 1, outer_k = 1;
  std::uint64_t code_seed = 7;

  // channel
  double beta = 0.0;
  double s = 0.0;
  int k = 2;

  // decoder
  double eps = 0.05;
  int K = -1;
  int k1 = -1, k2 = -1;
  double gamma_override = -1.0;
  double eta_override = -1.0;
  double net_cap = 1e8;
  /// exact | bb | heuristic
  std::string oracle = "exact";
  int restarts = 16;
  int tuples = 24;

  // run
  int trials = 10;
  std::uint64_t master_seed = 0;
  bool master_seed_set = false;
  std::string out;
  int jobs = 1;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);
/// One line per key: name, type, range, default.
std::string config_schema();

/// One experiment trial. The beta column holds the realized planted
/// corruption under the channel's own metric (edge distance, block
/// distance, list miss rate, or touched-vertex fraction for the
/// errors-and-erasures channel). audit_min_slack stays empty unless a
/// lemma audit ran; an audit row encodes its verdict as recovered = 1
/// (precondition met, slack nonnegative), missed = 1 (precondition met,
/// negative slack), both zero when the precondition failed.
struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  double lambda = 0.0;
  double beta = 0.0;
  int list_size = 0;
  int recovered = 0;
  int missed = 0;
  int extra = 0;
  double wall_ms = 0.0;
  std::optional<double> audit_min_slack;
};

/// Fixed header, one row per record in trial order, shortest round-trip
/// number formatting so reruns of one config match byte for byte (the
/// wall_ms column is the sanctioned exception).
std::string csv_text(const std::vector<TrialRecord>& records);
void emit_csv(const std::vector<TrialRecord>& records, const std::string& path);

// Instance builders shared by the CLI and the test suites. The returned
// codes keep a reference to `g`; the caller owns its lifetime.
BipartiteGraph build_graph(const ExperimentConfig& cfg);
LinearCode build_component_code(const std::string& spec, const Field& f,
                                int len, int k, std::uint64_t seed);
TannerCode build_tanner(const ExperimentConfig& cfg, const BipartiteGraph& g);
AELCode build_ael(const ExperimentConfig& cfg, const BipartiteGraph& g);
std::unique_ptr<CutOracle> build_cut_oracle(const ExperimentConfig& cfg);

/// Entry point behind main(): args in natural order, subcommand first
/// (gen-graph, gen-code, params, decode-unique, decode-list, recover-list,
/// audit, bench). Returns 0 on success, 1 when an assertion failed
/// (soundness, mixing, or a precondition-met audit with negative slack),
/// 2 on usage errors.
int cli_run(const std::vector<std::string>& args);

}  // namespace expcodes
