#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "expcodes/harness.hpp"

using namespace expcodes;

namespace {

std::filesystem::path scratch_dir() {
  auto p = std::filesystem::temp_directory_path() / "expcodes_harness_test";
  std::filesystem::create_directories(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
  REQUIRE(out.good());
}

/// Runs the CLI with stdout captured; stderr is left alone so failures
/// stay visible in the test log.
int run_cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream captured;
  auto* prev = std::cout.rdbuf(captured.rdbuf());
  int rc = cli_run(args);
  std::cout.rdbuf(prev);
  if (out != nullptr) *out = captured.str();
  return rc;
}

/// CSV rows with the wall_ms column blanked, for determinism comparisons.
std::string strip_wall(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream cols(line);
    while (std::getline(cols, cell, ',')) cells.push_back(cell);
    if (line.size() && line.back() == ',') cells.push_back("");
    for (std::size_t i = 0; i < cells.size(); ++i)
      out << (i == 8 ? "" : cells[i]) << (i + 1 < cells.size() ? "," : "");
    out << '\n';
  }
  return out.str();
}

}  // namespace

TEST_CASE("config parsing applies keys, comments, and defaults") {
  ExperimentConfig def;
  CHECK(def.mode == "ael-decode");
  CHECK(def.trials == 10);
  CHECK_FALSE(def.master_seed_set);

  auto cfg = parse_config_text(
      "# experiment\n"
      "mode = tanner-decode\n"
      "n=6\n"
      "  d =  3   # inline comment\n"
      "q = 3\n"
      "left = repetition\n"
      "beta = 0.25\n"
      "master_seed = 99\n"
      "out = run.csv\n"
      "jobs = 2\n"
      "\n");
  CHECK(cfg.mode == "tanner-decode");
  CHECK(cfg.n == 6);
  CHECK(cfg.d == 3);
  CHECK(cfg.q == 3);
  CHECK(cfg.left == "repetition");
  CHECK(cfg.right == "parity");
  CHECK(cfg.beta == doctest::Approx(0.25));
  CHECK(cfg.master_seed == 99);
  CHECK(cfg.master_seed_set);
  CHECK(cfg.out == "run.csv");
  CHECK(cfg.jobs == 2);
}

TEST_CASE("config parsing rejects bad input at parse time") {
  CHECK_THROWS_AS(parse_config_text("bogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("just a line\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("= 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("beta = 1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("beta = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("s = -0.1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("eps = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("jobs = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("trials = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("mode = secret\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("oracle = psychic\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("outer = parity\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("n = 2\nd = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_file("/nonexistent/path.cfg"), ConfigError);
  // graph_file lifts the d <= n check; the loaded graph supplies both
  CHECK_NOTHROW(parse_config_text("graph_file = g.txt\nn = 2\nd = 3\n"));
}

TEST_CASE("csv text has the fixed schema and deterministic cells") {
  CHECK(csv_text({}) ==
        "trial,seed,lambda,beta,list_size,recovered,missed,extra,wall_ms,"
        "audit_min_slack\n");

  TrialRecord r;
  r.trial = 3;
  r.seed = 17;
  r.lambda = 0.25;
  r.beta = 1.0 / 3.0;
  r.list_size = 2;
  r.recovered = 1;
  r.missed = 0;
  r.extra = 1;
  r.wall_ms = 1.5;
  TrialRecord audit = r;
  audit.trial = 4;
  audit.audit_min_slack = -0.125;

  std::string text = csv_text({r, audit});
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  CHECK(line == "3,17,0.25,0.3333333333333333,2,1,0,1,1.5,");
  std::getline(lines, line);
  CHECK(line == "4,17,0.25,0.3333333333333333,2,1,0,1,1.5,-0.125");

  int rows = 0;
  std::istringstream all(csv_text(std::vector<TrialRecord>(10)));
  while (std::getline(all, line)) ++rows;
  CHECK(rows == 11);
}

TEST_CASE("emit_csv writes the file and surfaces path errors") {
  auto path = scratch_dir() / "records.csv";
  TrialRecord r;
  r.trial = 0;
  r.seed = 5;
  emit_csv({r}, path.string());
  std::string text = slurp(path);
  CHECK(text.substr(0, 5) == "trial");
  CHECK(text.find("0,5,0,0,0,0,0,0,0,") != std::string::npos);
  CHECK_THROWS(emit_csv({}, "/nonexistent_dir_zzz/x.csv"));
}

TEST_CASE("instance builders follow the config") {
  ExperimentConfig cfg;
  cfg.n = 4;
  cfg.d = 4;
  BipartiteGraph g = build_graph(cfg);
  CHECK(g.n == 4);
  CHECK(g.d == 4);
  for (int l = 0; l < 4; ++l) CHECK(g.left_adj[l].size() == 4);

  cfg.n = 8;
  cfg.d = 3;
  cfg.graph_seed = 2;
  BipartiteGraph h = build_graph(cfg);
  CHECK(h.n == 8);
  CHECK(h.d == 3);

  auto gpath = scratch_dir() / "graph.txt";
  save_graph_file(h, gpath.string());
  cfg.graph_file = gpath.string();
  cfg.n = 1;  // ignored once a file is given
  BipartiteGraph loaded = build_graph(cfg);
  CHECK(loaded.n == 8);
  CHECK(loaded.left_adj == h.left_adj);

  Field f3(3);
  LinearCode rep = build_component_code("repetition", f3, 5, 1, 0);
  CHECK(rep.k() == 1);
  CHECK(min_distance(rep) == doctest::Approx(1.0));
  LinearCode par = build_component_code("parity", f3, 5, 1, 0);
  CHECK(par.k() == 4);
  CHECK(min_distance(par) == doctest::Approx(2.0 / 5));
  CHECK_THROWS_AS(build_component_code("parity", f3, 1, 1, 0), ConfigError);
  LinearCode rnd = build_component_code("random", f3, 6, 2, 11);
  CHECK(rnd.n() == 6);
  CHECK(rnd.k() == 2);
  CHECK_THROWS_AS(build_component_code("random", f3, 3, 4, 0), ConfigError);

  auto cpath = scratch_dir() / "code.txt";
  save_code_file(rnd, cpath.string());
  LinearCode reloaded =
      build_component_code("file:" + cpath.string(), f3, 6, 1, 0);
  CHECK(reloaded.generator() == rnd.generator());
  CHECK_THROWS_AS(build_component_code("file:" + cpath.string(), f3, 7, 1, 0),
                  ConfigError);
  CHECK_THROWS_AS(
      build_component_code("file:" + cpath.string(), Field(2), 6, 1, 0),
      ConfigError);
}

TEST_CASE("tanner and ael builders assemble matching components") {
  ExperimentConfig cfg;
  cfg.n = 4;
  cfg.d = 4;
  cfg.q = 2;
  cfg.left = "parity";
  cfg.right = "parity";
  BipartiteGraph g = build_graph(cfg);
  TannerCode t = build_tanner(cfg, g);
  CHECK(t.delta1() == doctest::Approx(0.5));
  CHECK(t.delta2() == doctest::Approx(0.5));
  CHECK(t.lambda() == doctest::Approx(0.0).epsilon(1e-6));

  cfg.q = 3;
  cfg.inner = "repetition";
  cfg.outer = "repetition";
  AELCode a = build_ael(cfg, g);
  CHECK(a.delta_in() == doctest::Approx(1.0));
  CHECK(a.delta_out() == doctest::Approx(1.0));
  // outer repetition of a repetition inner: codewords are constants
  OuterWord msg(4, 2);
  FoldedWord enc = ael_encode(a, msg);
  for (symbol s : enc) CHECK(s == 2);

  cfg.oracle = "exact";
  CHECK(build_cut_oracle(cfg)->alpha() == doctest::Approx(1.0));
  cfg.oracle = "bb";
  CHECK(build_cut_oracle(cfg)->alpha() == doctest::Approx(1.0));
  cfg.oracle = "heuristic";
  CHECK(build_cut_oracle(cfg)->alpha() == doctest::Approx(0.03));
}

TEST_CASE("params subcommand echoes the theorem arithmetic") {
  std::string out;
  int rc = run_cli({"params", "--mode", "ael-decode", "--eps", "0.1",
                    "--delta-dec", "0.1", "--K", "2"},
                   &out);
  CHECK(rc == 0);
  CHECK(out.find("gamma = 0.00125\n") != std::string::npos);
  CHECK(out.find("PASS") != std::string::npos);

  CHECK(run_cli({"params", "--mode", "warp-drive"}) == 2);
  CHECK(run_cli({"params"}) == 2);
}

TEST_CASE("usage errors exit 2 and help exits 0") {
  CHECK(run_cli({}) == 2);
  CHECK(run_cli({"no-such-subcommand"}) == 2);
  CHECK(run_cli({"decode-list"}) == 2);
  CHECK(run_cli({"decode-list", "huffman"}) == 2);
  CHECK(run_cli({"audit", "not-a-lemma"}) == 2);
  CHECK(run_cli({"gen-graph"}) == 2);
  CHECK(run_cli({"--help"}) == 0);

  auto bad = scratch_dir() / "bad.cfg";
  spit(bad, "bogus = 1\n");
  CHECK(run_cli({"decode-unique", "--config", bad.string()}) == 2);
}

TEST_CASE("gen-graph and gen-code round trip through their files") {
  auto gpath = scratch_dir() / "gen_graph.txt";
  std::string out;
  int rc = run_cli({"gen-graph", "--n", "8", "--d", "3", "--seed", "4",
                    "--out", gpath.string()},
                   &out);
  CHECK(rc == 0);
  CHECK(out.find("lambda=") != std::string::npos);
  BipartiteGraph g = load_graph_file(gpath.string());
  CHECK(g.n == 8);
  CHECK(g.d == 3);

  auto cpath = scratch_dir() / "gen_code.txt";
  rc = run_cli({"gen-code", "--q", "3", "--n", "5", "--k", "2", "--seed", "9",
                "--out", cpath.string()},
               &out);
  CHECK(rc == 0);
  CHECK(out.find("distance=") != std::string::npos);
  LinearCode c = load_code_file(cpath.string());
  CHECK(c.n() == 5);
  CHECK(c.k() == 2);
  CHECK(c.field().q() == 3);

  CHECK(run_cli({"gen-graph", "--n", "4", "--d", "5", "--out",
                 (scratch_dir() / "x.txt").string()}) == 2);
}

TEST_CASE("decode-unique recovers planted corruptions inside the window") {
  auto cfg = scratch_dir() / "uniq.cfg";
  spit(cfg,
       "mode = tanner-unique\n"
       "n = 4\n"
       "d = 4\n"
       "left = repetition\n"
       "right = repetition\n"
       "beta = 0.25\n"
       "s = 0.25\n"
       "eps = 0.02\n"
       "trials = 6\n");
  auto out = scratch_dir() / "uniq.csv";
  int rc = run_cli({"decode-unique", "--config", cfg.string(), "--out",
                    out.string()});
  CHECK(rc == 0);
  std::string csv = slurp(out);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line ==
        "trial,seed,lambda,beta,list_size,recovered,missed,extra,wall_ms,"
        "audit_min_slack");
  int rows = 0;
  while (std::getline(lines, line)) {
    std::istringstream cols(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(cols, cell, ',')) cells.push_back(cell);
    CHECK(cells[5] == "1");  // recovered
    CHECK(cells[6] == "0");  // missed
    ++rows;
  }
  CHECK(rows == 6);
}

TEST_CASE("decode-list ael equals its oracle on the desk instance") {
  auto cfg = scratch_dir() / "ael.cfg";
  spit(cfg,
       "mode = ael-decode\n"
       "n = 3\n"
       "d = 3\n"
       "q = 3\n"
       "inner = repetition\n"
       "outer = repetition\n"
       "beta = 0.34\n"
       "eps = 0.25\n"
       "gamma_override = 0.5\n"
       "eta_override = 2.0\n"
       "trials = 4\n");
  auto out = scratch_dir() / "ael.csv";
  std::string info;
  int rc = run_cli({"decode-list", "ael", "--config", cfg.string(), "--out",
                    out.string()},
                   &info);
  CHECK(rc == 0);
  CHECK(info.find("sound=yes") != std::string::npos);
  std::string csv = slurp(out);
  CHECK(csv.find("\n0,0,0,0.3333333333333333,1,1,0,0,") != std::string::npos);

  // reruns agree byte for byte once the timing column is blanked, and a
  // worker pool does not change the records
  auto out2 = scratch_dir() / "ael2.csv";
  CHECK(run_cli({"decode-list", "ael", "--config", cfg.string(), "--out",
                 out2.string()}) == 0);
  CHECK(strip_wall(slurp(out)) == strip_wall(slurp(out2)));
  auto out3 = scratch_dir() / "ael3.csv";
  CHECK(run_cli({"decode-list", "ael", "--config", cfg.string(), "--jobs",
                 "3", "--out", out3.string()}) == 0);
  CHECK(strip_wall(slurp(out)) == strip_wall(slurp(out3)));
}

TEST_CASE("audit subcommands report slack and honor exit codes") {
  std::string out;
  int rc = run_cli({"audit", "mixing", "--n", "16", "--d", "4", "--seed", "3",
                    "--trials", "2000"},
                   &out);
  CHECK(rc == 0);
  CHECK(out.find("violations=0") != std::string::npos);

  rc = run_cli({"audit", "regularity", "--n", "16", "--d", "4", "--seed", "5",
                "--gamma", "0.25", "--trials", "2"},
               &out);
  CHECK(rc == 0);
  CHECK(out.find("VIOLATION") == std::string::npos);

  auto cfg = scratch_dir() / "audit.cfg";
  spit(cfg,
       "n = 4\n"
       "d = 4\n"
       "q = 3\n"
       "inner = repetition\n"
       "outer = repetition\n"
       "beta = 0.25\n"
       "eps = 0.25\n"
       "gamma_override = 0.5\n"
       "tuples = 8\n"
       "trials = 3\n");
  auto csv = scratch_dir() / "audit.csv";
  rc = run_cli({"audit", "ael-rigidity", "--config", cfg.string(), "--out",
                csv.string()},
               &out);
  CHECK(rc == 0);
  CHECK(out.find("pass=yes") != std::string::npos);
  std::string text = slurp(csv);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    auto last = line.rfind(',');
    std::string slack = line.substr(last + 1);
    REQUIRE(!slack.empty());
    CHECK(std::stod(slack) >= 0.0);
  }
}

TEST_CASE("master seed falls back to EXPCODES_SEED") {
  auto cfg = scratch_dir() / "seed.cfg";
  spit(cfg,
       "mode = tanner-unique\n"
       "n = 4\n"
       "d = 4\n"
       "left = repetition\n"
       "right = repetition\n"
       "trials = 1\n");
  auto out = scratch_dir() / "seed.csv";

  setenv("EXPCODES_SEED", "777", 1);
  CHECK(run_cli({"decode-unique", "--config", cfg.string(), "--out",
                 out.string()}) == 0);
  CHECK(slurp(out).find("0,777,") != std::string::npos);

  // an explicit seed wins over the environment
  CHECK(run_cli({"decode-unique", "--config", cfg.string(), "--seed", "5",
                 "--out", out.string()}) == 0);
  CHECK(slurp(out).find("0,5,") != std::string::npos);
  unsetenv("EXPCODES_SEED");

  CHECK(run_cli({"decode-unique", "--config", cfg.string(), "--out",
                 out.string()}) == 0);
  CHECK(slurp(out).find("0,0,") != std::string::npos);
}

TEST_CASE("bench times the configured mode") {
  auto cfg = scratch_dir() / "bench.cfg";
  spit(cfg,
       "mode = tanner-unique\n"
       "n = 4\n"
       "d = 4\n"
       "left = repetition\n"
       "right = repetition\n"
       "trials = 3\n");
  std::string out;
  int rc = run_cli({"bench", "--config", cfg.string()}, &out);
  CHECK(rc == 0);
  CHECK(out.find("mode=tanner-unique") != std::string::npos);
  CHECK(out.find("mean_ms=") != std::string::npos);
}
