#include "expcodes/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "expcodes/regularity.hpp"
#include "expcodes/spectral.hpp"

namespace expcodes {

namespace {

constexpr double kTol = 1e-9;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

/// Shortest round-trip formatting keeps CSV bytes stable across reruns.
std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Display formatting for human-facing reports: trims float noise like
/// 0.0012500000000000002 down to 0.00125.
std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

long long parse_ll(const std::string& key, const std::string& v, long long lo,
                   long long hi) {
  long long x = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ConfigError("config: key '" + key + "' expects an integer, got '" +
                      v + "'");
  if (x < lo || x > hi)
    throw ConfigError("config: key '" + key + "' out of range [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ConfigError("config: key '" + key +
                      "' expects an unsigned integer, got '" + v + "'");
  return x;
}

double parse_dbl(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' expects a number, got '" + v +
                      "'");
  }
}

bool component_spec_ok(const std::string& s, bool outer) {
  if (s.rfind("file:", 0) == 0) return s.size() > 5;
  if (s == "repetition" || s == "random") return true;
  return !outer && s == "parity";
}

void validate_config(const ExperimentConfig& c) {
  auto fail = [](const std::string& m) { throw ConfigError("config: " + m); };
  if (c.mode != "tanner-unique" && c.mode != "tanner-decode" &&
      c.mode != "ael-decode" && c.mode != "ael-recover")
    fail("mode must be tanner-unique | tanner-decode | ael-decode | "
         "ael-recover");
  if (c.graph_file.empty()) {
    if (c.n < 1 || c.n > 4096) fail("n must be in [1, 4096]");
    if (c.d < 1 || c.d > c.n) fail("d must be in [1, n]");
  }
  if (c.q < 2) fail("q must be a prime >= 2");
  if (!component_spec_ok(c.left, false) || !component_spec_ok(c.right, false))
    fail("left/right must be repetition | parity | random | file:PATH");
  if (!component_spec_ok(c.inner, false))
    fail("inner must be repetition | parity | random | file:PATH");
  if (!component_spec_ok(c.outer, true))
    fail("outer must be repetition | random | file:PATH");
  if (c.left_k < 1 || c.right_k < 1 || c.inner_k < 1 || c.outer_k < 1)
    fail("code dimensions must be >= 1");
  if (c.beta < 0.0 || c.beta > 1.0) fail("beta must be in [0, 1]");
  if (c.s < 0.0 || c.s > 1.0) fail("s must be in [0, 1]");
  if (c.k < 1) fail("k must be >= 1");
  if (c.eps <= 0.0) fail("eps must be > 0");
  if (c.net_cap <= 0.0) fail("net_cap must be > 0");
  if (c.oracle != "exact" && c.oracle != "bb" && c.oracle != "heuristic")
    fail("oracle must be exact | bb | heuristic");
  if (c.restarts < 1) fail("restarts must be >= 1");
  if (c.tuples < 0) fail("tuples must be >= 0");
  if (c.trials < 0) fail("trials must be >= 0");
  if (c.jobs < 1) fail("jobs must be >= 1");
}

void apply_key(ExperimentConfig& c, const std::string& key,
               const std::string& v) {
  if (key == "mode") c.mode = v;
  else if (key == "n") c.n = static_cast<int>(parse_ll(key, v, 1, 1 << 20));
  else if (key == "d") c.d = static_cast<int>(parse_ll(key, v, 1, 1 << 20));
  else if (key == "graph_seed") c.graph_seed = parse_u64(key, v);
  else if (key == "graph_file") c.graph_file = v;
  else if (key == "q")
    c.q = static_cast<std::uint32_t>(parse_ll(key, v, 2, 1 << 20));
  else if (key == "left") c.left = v;
  else if (key == "right") c.right = v;
  else if (key == "inner") c.inner = v;
  else if (key == "outer") c.outer = v;
  else if (key == "left_k")
    c.left_k = static_cast<int>(parse_ll(key, v, 1, 1 << 20));
  else if (key == "right_k")
    c.right_k = static_cast<int>(parse_ll(key, v, 1, 1 << 20));
  else if (key == "inner_k")
    c.inner_k = static_cast<int>(parse_ll(key, v, 1, 1 << 20));
  else if (key == "outer_k")
    c.outer_k = static_cast<int>(parse_ll(key, v, 1, 1 << 20));
  else if (key == "code_seed") c.code_seed = parse_u64(key, v);
  else if (key == "beta") c.beta = parse_dbl(key, v);
  else if (key == "s") c.s = parse_dbl(key, v);
  else if (key == "k") c.k = static_cast<int>(parse_ll(key, v, 0, 1 << 20));
  else if (key == "eps") c.eps = parse_dbl(key, v);
  else if (key == "K") c.K = static_cast<int>(parse_ll(key, v, -1, 1 << 20));
  else if (key == "k1") c.k1 = static_cast<int>(parse_ll(key, v, -1, 1 << 20));
  else if (key == "k2") c.k2 = static_cast<int>(parse_ll(key, v, -1, 1 << 20));
  else if (key == "gamma_override") c.gamma_override = parse_dbl(key, v);
  else if (key == "eta_override") c.eta_override = parse_dbl(key, v);
  else if (key == "net_cap") c.net_cap = parse_dbl(key, v);
  else if (key == "oracle") c.oracle = v;
  else if (key == "restarts")
    c.restarts = static_cast<int>(parse_ll(key, v, 0, 1 << 20));
  else if (key == "tuples")
    c.tuples = static_cast<int>(parse_ll(key, v, 0, 1 << 20));
  else if (key == "trials")
    c.trials = static_cast<int>(parse_ll(key, v, 0, 1 << 24));
  else if (key == "master_seed") {
    c.master_seed = parse_u64(key, v);
    c.master_seed_set = true;
  } else if (key == "out") c.out = v;
  else if (key == "jobs")
    c.jobs = static_cast<int>(parse_ll(key, v, 1, 256));
  else
    throw ConfigError("config: unknown key '" + key + "'");
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct TrialResult {
  TrialRecord rec;
  bool ok = true;
  std::string note;
};

std::vector<TrialResult> run_trials(
    int trials, int jobs, const std::function<TrialResult(int)>& fn) {
  std::vector<TrialResult> out(trials);
  if (jobs <= 1 || trials <= 1) {
    for (int i = 0; i < trials; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<int> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  std::vector<std::thread> pool;
  int workers = std::min(jobs, trials);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= trials) return;
        try {
          out[i] = fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return out;
}

/// Emits the CSV (file, or stdout when no path is set), prints a one-line
/// summary, and turns any failed per-trial assertion into exit code 1.
int finish_experiment(const ExperimentConfig& cfg,
                      const std::vector<TrialResult>& results,
                      const std::string& gate_label) {
  std::vector<TrialRecord> recs;
  recs.reserve(results.size());
  bool all_ok = true;
  std::string first_note;
  long long recovered = 0, missed = 0, extra = 0;
  for (const auto& r : results) {
    recs.push_back(r.rec);
    recovered += r.rec.recovered;
    missed += r.rec.missed;
    extra += r.rec.extra;
    if (!r.ok && all_ok) {
      all_ok = false;
      first_note = r.note;
    }
  }
  std::ostream& info = cfg.out.empty() ? std::cerr : std::cout;
  if (cfg.out.empty()) {
    std::cout << csv_text(recs);
  } else {
    emit_csv(recs, cfg.out);
    info << "wrote " << cfg.out << "\n";
  }
  info << "trials=" << results.size() << " recovered=" << recovered
       << " missed=" << missed << " extra=" << extra << " " << gate_label
       << "=" << (all_ok ? "yes" : "NO") << "\n";
  if (!all_ok) {
    std::cerr << "assertion failed: " << first_note << "\n";
    return 1;
  }
  return 0;
}

template <typename WordT>
bool list_contains(const std::vector<WordT>& list, const WordT& w) {
  for (const auto& x : list)
    if (x == w) return true;
  return false;
}

// Per-trial closures for the four experiment modes. Each one plants a
// corruption at seed master + i, decodes, and checks the decoder's own
// output contract (the soundness assertion) with the oracle-side metrics.

TrialResult tanner_unique_trial(const ExperimentConfig& cfg,
                                const TannerCode& t, int i) {
  TrialResult r;
  std::uint64_t seed = cfg.master_seed + static_cast<std::uint64_t>(i);
  auto plant = plant_tanner_assignment(t, cfg.beta, cfg.s, seed);
  auto t0 = Clock::now();
  auto dec = unique_decode_errors_erasures(t, plant.assignment, cfg.eps);
  r.rec.wall_ms = ms_since(t0);
  r.rec.trial = i;
  r.rec.seed = seed;
  r.rec.lambda = t.lambda();
  r.rec.beta = plant.corrupted + plant.erased;
  r.rec.list_size = dec.codeword ? 1 : 0;
  r.rec.recovered = dec.codeword && *dec.codeword == plant.codeword ? 1 : 0;
  r.rec.missed = 1 - r.rec.recovered;
  r.rec.extra = dec.codeword && !r.rec.recovered ? 1 : 0;
  if (dec.codeword) {
    double window = 2.0 * left_disagreement(t, plant.assignment, *dec.codeword) +
                    erasure_fraction(plant.assignment);
    if (!tanner_membership(t, *dec.codeword) ||
        window > t.delta2() - 4.0 * cfg.eps + kTol) {
      r.ok = false;
      r.note = "trial " + std::to_string(i) +
               ": unique decode returned a word outside its contract";
    }
  }
  return r;
}

TrialResult tanner_list_trial(const ExperimentConfig& cfg, const TannerCode& t,
                              const CutOracle& oracle, int i) {
  TrialResult r;
  std::uint64_t seed = cfg.master_seed + static_cast<std::uint64_t>(i);
  auto plant = plant_tanner_edges(t, cfg.beta, seed);
  TannerDecodeParams params;
  params.k1 = cfg.k1;
  params.k2 = cfg.k2;
  params.gamma_override = cfg.gamma_override;
  params.eta_override = cfg.eta_override;
  params.net_cap = cfg.net_cap;
  auto t0 = Clock::now();
  auto rep = list_decode_tanner(t, plant.received, cfg.eps, oracle, params);
  r.rec.wall_ms = ms_since(t0);
  r.rec.trial = i;
  r.rec.seed = seed;
  r.rec.lambda = t.lambda();
  r.rec.beta = oracle_distance(plant.received, plant.codeword);
  r.rec.list_size = static_cast<int>(rep.list.size());
  r.rec.recovered = list_contains(rep.list, plant.codeword) ? 1 : 0;
  r.rec.missed = 1 - r.rec.recovered;
  r.rec.extra = r.rec.list_size - r.rec.recovered;
  double radius = std::min(t.delta1() * t.delta2_dec(),
                           t.delta1_dec() * t.delta2()) - cfg.eps;
  for (const auto& w : rep.list) {
    if (!tanner_membership(t, w) ||
        oracle_distance(w, plant.received) > radius + kTol) {
      r.ok = false;
      r.note = "trial " + std::to_string(i) +
               ": list contains a word outside the code or the radius";
      break;
    }
  }
  return r;
}

TrialResult ael_list_trial(const ExperimentConfig& cfg, const AELCode& a,
                           const CutOracle& oracle, int i) {
  TrialResult r;
  std::uint64_t seed = cfg.master_seed + static_cast<std::uint64_t>(i);
  auto plant = plant_ael(a, cfg.beta, seed);
  AelParams params;
  params.K = cfg.K;
  params.gamma_override = cfg.gamma_override;
  params.eta_override = cfg.eta_override;
  params.net_cap = cfg.net_cap;
  auto t0 = Clock::now();
  auto rep = list_decode_ael(a, plant.received, cfg.beta, cfg.eps, oracle,
                             params);
  r.rec.wall_ms = ms_since(t0);
  r.rec.trial = i;
  r.rec.seed = seed;
  r.rec.lambda = a.lambda();
  r.rec.beta = oracle_block_distance(plant.received, plant.codeword, a.n(),
                                     a.d());
  r.rec.list_size = static_cast<int>(rep.list.size());
  r.rec.recovered = list_contains(rep.list, plant.codeword) ? 1 : 0;
  r.rec.missed = 1 - r.rec.recovered;
  r.rec.extra = r.rec.list_size - r.rec.recovered;
  for (const auto& w : rep.list) {
    if (!ael_membership(a, w) ||
        oracle_block_distance(w, plant.received, a.n(), a.d()) >
            cfg.beta + kTol) {
      r.ok = false;
      r.note = "trial " + std::to_string(i) +
               ": list contains a word outside the code or the radius";
      break;
    }
  }
  return r;
}

TrialResult ael_recover_trial(const ExperimentConfig& cfg, const AELCode& a,
                              const CutOracle& oracle, int i) {
  TrialResult r;
  std::uint64_t seed = cfg.master_seed + static_cast<std::uint64_t>(i);
  auto plant = plant_ael_recovery(a, cfg.k, cfg.beta, seed);
  AelParams params;
  params.K = cfg.K;
  params.gamma_override = cfg.gamma_override;
  params.eta_override = cfg.eta_override;
  params.net_cap = cfg.net_cap;
  auto t0 = Clock::now();
  auto rep = list_recover_ael(a, plant.input, cfg.k, cfg.beta, cfg.eps, oracle,
                              params);
  r.rec.wall_ms = ms_since(t0);
  r.rec.trial = i;
  r.rec.seed = seed;
  r.rec.lambda = a.lambda();
  r.rec.beta =
      static_cast<double>(plant.missing.size()) / static_cast<double>(a.n());
  r.rec.list_size = static_cast<int>(rep.list.size());
  r.rec.recovered = list_contains(rep.list, plant.codeword) ? 1 : 0;
  r.rec.missed = 1 - r.rec.recovered;
  r.rec.extra = r.rec.list_size - r.rec.recovered;
  for (const auto& w : rep.list) {
    if (!ael_membership(a, w) ||
        oracle_miss_fraction(plant.input, w, a.n(), a.d()) > cfg.beta + kTol) {
      r.ok = false;
      r.note = "trial " + std::to_string(i) +
               ": list contains a word outside the code or the miss bound";
      break;
    }
  }
  return r;
}

TrialResult lemma_trial(const ExperimentConfig& cfg, const std::string& id,
                        const TannerCode* t, const AELCode* a, int i) {
  TrialResult r;
  std::uint64_t seed = cfg.master_seed + static_cast<std::uint64_t>(i);
  AuditConfig acfg;
  acfg.beta = cfg.beta;
  acfg.eps = cfg.eps;
  acfg.gamma_override = cfg.gamma_override;
  acfg.K = cfg.K;
  acfg.tuples = cfg.tuples;
  acfg.seed = seed;
  LemmaReport rep;
  auto t0 = Clock::now();
  if (t != nullptr) {
    auto plant = plant_tanner_edges(*t, cfg.beta, seed);
    rep = lemma_audit(id, *t, plant, acfg);
    r.rec.lambda = t->lambda();
    r.rec.beta = oracle_distance(plant.received, plant.codeword);
  } else if (id == "local-membership-lr" || id == "ael-rigidity-lr") {
    auto plant = plant_ael_recovery(*a, cfg.k, cfg.beta, seed);
    rep = lemma_audit(id, *a, plant, acfg);
    r.rec.lambda = a->lambda();
    r.rec.beta =
        static_cast<double>(plant.missing.size()) / static_cast<double>(a->n());
  } else {
    auto plant = plant_ael(*a, cfg.beta, seed);
    rep = lemma_audit(id, *a, plant, acfg);
    r.rec.lambda = a->lambda();
    r.rec.beta =
        oracle_block_distance(plant.received, plant.codeword, a->n(), a->d());
  }
  r.rec.wall_ms = ms_since(t0);
  r.rec.trial = i;
  r.rec.seed = seed;
  r.rec.audit_min_slack = rep.slack;
  r.rec.recovered = rep.precondition_met && rep.slack >= -1e-12 ? 1 : 0;
  r.rec.missed = rep.precondition_met && !r.rec.recovered ? 1 : 0;
  r.ok = rep.pass;
  if (!r.ok)
    r.note = id + ": negative slack " + fmt(rep.slack) + " at trial " +
             std::to_string(i);
  return r;
}

std::uint64_t env_seed_fallback(bool already_set, std::uint64_t current) {
  if (already_set) return current;
  const char* env = std::getenv("EXPCODES_SEED");
  if (env == nullptr) return current;
  std::string v(env);
  return parse_u64("EXPCODES_SEED", v);
}

LinearCode block_repetition_code(const Field& f, int blocks, int dim) {
  GfMatrix gen(dim, Word(static_cast<std::size_t>(blocks) * dim, 0));
  for (int j = 0; j < dim; ++j)
    for (int b = 0; b < blocks; ++b) gen[j][b * dim + j] = 1;
  return LinearCode(f, std::move(gen));
}

// Subcommand runners. Usage-shaped failures (bad config, unreadable files)
// throw and become exit code 2 in cli_run; assertion failures return 1.

int run_gen_graph(int n, int d, std::uint64_t seed, const std::string& out) {
  if (n < 1 || d < 1 || d > n)
    throw ConfigError("gen-graph: need 1 <= d <= n");
  BipartiteGraph g = d == n ? complete_bipartite(n) : random_biregular(n, d, seed);
  save_graph_file(g, out);
  auto prof = measure_lambda(g);
  std::cout << "n=" << n << " d=" << d << " lambda=" << fmt(prof.lambda)
            << " -> " << out << "\n";
  return 0;
}

int run_gen_code(std::uint32_t q, int n, int k, std::uint64_t seed,
                 const std::string& out) {
  if (n < 1 || k < 1 || k > n)
    throw ConfigError("gen-code: need 1 <= k <= n");
  Field f(q);
  LinearCode c = random_linear_code(f, n, k, seed);
  save_code_file(c, out);
  std::cout << "q=" << q << " n=" << n << " k=" << k;
  if (k * std::log2(static_cast<double>(q)) <= 20.0)
    std::cout << " distance=" << fmt(min_distance(c));
  std::cout << " -> " << out << "\n";
  return 0;
}

int run_params(const std::string& mode, double eps, double delta_dec, int K,
               int k, double lambda) {
  auto rep = parameter_check(eps, delta_dec, K, k, lambda, mode);
  std::cout << "mode = " << rep.mode << "\n"
            << "gamma = " << fmt_g(rep.gamma) << "\n"
            << "eta = " << fmt_g(rep.eta) << "\n"
            << "family_bound = " << fmt_g(rep.family_bound) << "\n"
            << "log10_net_bound = " << fmt_g(rep.log10_net_bound) << "\n"
            << "lambda = " << fmt_g(lambda) << "\n";
  for (const auto& row : rep.thresholds)
    std::cout << row.name << " <= " << fmt_g(row.threshold) << " : "
              << (row.pass ? "PASS" : "FAIL") << "\n";
  return 0;
}

int run_audit_mixing(int n, int d, std::uint64_t seed, int trials) {
  if (n < 1 || d < 1 || d > n)
    throw ConfigError("audit mixing: need 1 <= d <= n");
  BipartiteGraph g = d == n ? complete_bipartite(n) : random_biregular(n, d, seed);
  auto prof = measure_lambda(g);
  auto rep = mixing_audit(g, prof.lambda, trials, seed);
  std::cout << "n=" << n << " d=" << d << " lambda=" << fmt(prof.lambda)
            << " trials=" << rep.trials << " violations=" << rep.violations
            << " max_violation=" << fmt(rep.max_violation) << "\n";
  return rep.violations == 0 ? 0 : 1;
}

int run_audit_regularity(int n, int d, std::uint64_t seed, double gamma,
                         int trials) {
  if (n < 1 || d < 1 || d > n)
    throw ConfigError("audit regularity: need 1 <= d <= n");
  if (gamma <= 0.0 || gamma > 1.0)
    throw ConfigError("audit regularity: need gamma in (0, 1]");
  BipartiteGraph g = d == n ? complete_bipartite(n) : random_biregular(n, d, seed);
  double threshold = gamma * g.num_edges();
  BranchBoundCutOracle oracle(threshold);
  bool all_ok = true;
  for (int i = 0; i < trials; ++i) {
    Subgraph h = random_subgraph(g, seed + 1 + static_cast<std::uint64_t>(i));
    auto dec = regularity_decompose(h, gamma, oracle);
    double sum_c = 0.0;
    for (const auto& tr : dec.triples) sum_c += std::abs(tr.c);
    bool steps_ok =
        static_cast<double>(dec.triples.size()) <= 1.0 / (gamma * gamma) + kTol;
    bool mass_ok = sum_c <= 1.0 / gamma + kTol;
    bool drops_ok = true;
    for (std::size_t j = 0; j + 1 < dec.potential.size(); ++j)
      if (dec.potential[j] - dec.potential[j + 1] < gamma * gamma - kTol)
        drops_ok = false;
    auto residual = cut_norm_exact_bb(residual_matrix(h, dec));
    bool residual_ok = std::abs(residual.value) <= threshold + 1e-6;
    bool ok = steps_ok && mass_ok && drops_ok && residual_ok;
    std::cout << "trial " << i << ": steps=" << dec.triples.size()
              << " sum_c=" << fmt(sum_c)
              << " residual=" << fmt(std::abs(residual.value)) << "/"
              << fmt(threshold) << (ok ? " ok" : " VIOLATION") << "\n";
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}

int run_bench(const ExperimentConfig& cfg) {
  auto t0 = Clock::now();
  BipartiteGraph g = build_graph(cfg);
  std::vector<TrialResult> results;
  if (cfg.mode == "tanner-unique" || cfg.mode == "tanner-decode") {
    TannerCode t = build_tanner(cfg, g);
    auto oracle = build_cut_oracle(cfg);
    double build_ms = ms_since(t0);
    results = run_trials(cfg.trials, cfg.jobs, [&](int i) {
      return cfg.mode == "tanner-unique"
                 ? tanner_unique_trial(cfg, t, i)
                 : tanner_list_trial(cfg, t, *oracle, i);
    });
    std::cout << "build_ms=" << fmt(build_ms) << "\n";
  } else {
    AELCode a = build_ael(cfg, g);
    auto oracle = build_cut_oracle(cfg);
    double build_ms = ms_since(t0);
    results = run_trials(cfg.trials, cfg.jobs, [&](int i) {
      return cfg.mode == "ael-decode" ? ael_list_trial(cfg, a, *oracle, i)
                                      : ael_recover_trial(cfg, a, *oracle, i);
    });
    std::cout << "build_ms=" << fmt(build_ms) << "\n";
  }
  double total = 0.0, lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    double w = results[i].rec.wall_ms;
    total += w;
    lo = i == 0 ? w : std::min(lo, w);
    hi = std::max(hi, w);
  }
  double mean = results.empty() ? 0.0 : total / results.size();
  std::cout << "mode=" << cfg.mode << " trials=" << results.size()
            << " total_ms=" << fmt(total) << " mean_ms=" << fmt(mean)
            << " min_ms=" << fmt(lo) << " max_ms=" << fmt(hi) << "\n";
  return 0;
}

struct CommonFlags {
  std::string config;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> jobs;
  std::optional<double> beta;
  std::optional<double> eps;

  void attach(CLI::App* sub) {
    sub->add_option("--config", config, "experiment config file (key=value)");
    sub->add_option("--trials", trials, "override config trials");
    sub->add_option("--seed", seed, "override master seed");
    sub->add_option("--out", out, "override CSV path (default: stdout)");
    sub->add_option("--jobs", jobs, "override worker count");
    sub->add_option("--beta", beta, "override channel corruption rate");
    sub->add_option("--eps", eps, "override decoder eps");
  }

  ExperimentConfig load() const {
    ExperimentConfig cfg =
        config.empty() ? ExperimentConfig{} : parse_config_file(config);
    if (trials) cfg.trials = *trials;
    if (seed) {
      cfg.master_seed = *seed;
      cfg.master_seed_set = true;
    }
    if (out) cfg.out = *out;
    if (jobs) cfg.jobs = *jobs;
    if (beta) cfg.beta = *beta;
    if (eps) cfg.eps = *eps;
    cfg.master_seed = env_seed_fallback(cfg.master_seed_set, cfg.master_seed);
    validate_config(cfg);
    return cfg;
  }
};

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config: line " + std::to_string(lineno) +
                        ": empty key");
    apply_key(cfg, key, value);
  }
  validate_config(cfg);
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string config_schema() {
  return
      "config keys (key = value, '#' comments):\n"
      "  mode          tanner-unique | tanner-decode | ael-decode | ael-recover\n"
      "  n, d          graph size and degree (d = n gives the complete graph)\n"
      "  graph_seed    matching sampler seed\n"
      "  graph_file    load a saved graph instead of sampling\n"
      "  q             field size (prime)\n"
      "  left, right   Tanner component codes: repetition | parity | random | file:PATH\n"
      "  inner, outer  AEL components (outer: repetition | random | file:PATH)\n"
      "  left_k, right_k, inner_k, outer_k  dimensions for random components\n"
      "  code_seed     random component seed\n"
      "  beta, s, k    channel: corruption rate, erasure rate, list-recovery size\n"
      "  eps           decoder accuracy parameter (> 0)\n"
      "  K, k1, k2     local list bounds (-1 = exhaustive maximum)\n"
      "  gamma_override, eta_override, net_cap  decoder internals\n"
      "  oracle        exact | bb | heuristic\n"
      "  restarts      heuristic oracle restarts\n"
      "  tuples        rigidity audit tuples per trial\n"
      "  trials, master_seed, out, jobs  run control\n";
}

std::string csv_text(const std::vector<TrialRecord>& records) {
  std::ostringstream os;
  os << "trial,seed,lambda,beta,list_size,recovered,missed,extra,wall_ms,"
        "audit_min_slack\n";
  for (const auto& r : records) {
    os << r.trial << ',' << r.seed << ',' << fmt(r.lambda) << ','
       << fmt(r.beta) << ',' << r.list_size << ',' << r.recovered << ','
       << r.missed << ',' << r.extra << ',' << fmt(r.wall_ms) << ',';
    if (r.audit_min_slack) os << fmt(*r.audit_min_slack);
    os << '\n';
  }
  return os.str();
}

void emit_csv(const std::vector<TrialRecord>& records,
              const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("emit_csv: cannot open '" + path + "'");
  os << csv_text(records);
  os.flush();
  if (!os) throw std::runtime_error("emit_csv: write failed on '" + path + "'");
}

BipartiteGraph build_graph(const ExperimentConfig& cfg) {
  if (!cfg.graph_file.empty()) return load_graph_file(cfg.graph_file);
  if (cfg.d == cfg.n) return complete_bipartite(cfg.n);
  return random_biregular(cfg.n, cfg.d, cfg.graph_seed);
}

LinearCode build_component_code(const std::string& spec, const Field& f,
                                int len, int k, std::uint64_t seed) {
  if (spec == "repetition") return LinearCode(f, {Word(len, 1)});
  if (spec == "parity") {
    if (len < 2) throw ConfigError("parity component needs length >= 2");
    GfMatrix gen(len - 1, Word(len, 0));
    for (int i = 0; i < len - 1; ++i) {
      gen[i][i] = 1;
      gen[i][len - 1] = f.q() - 1;
    }
    return LinearCode(f, std::move(gen));
  }
  if (spec == "random") {
    if (k > len)
      throw ConfigError("random component dimension exceeds its length");
    return random_linear_code(f, len, k, seed);
  }
  if (spec.rfind("file:", 0) == 0) {
    LinearCode c = load_code_file(spec.substr(5));
    if (c.n() != len)
      throw ConfigError("component code file has length " +
                        std::to_string(c.n()) + ", instance needs " +
                        std::to_string(len));
    if (c.field().q() != f.q())
      throw ConfigError("component code file is over GF(" +
                        std::to_string(c.field().q()) + "), config says GF(" +
                        std::to_string(f.q()) + ")");
    return c;
  }
  throw ConfigError("unknown component code spec '" + spec + "'");
}

TannerCode build_tanner(const ExperimentConfig& cfg, const BipartiteGraph& g) {
  Field f(cfg.q);
  LinearCode left = build_component_code(cfg.left, f, g.d, cfg.left_k,
                                         cfg.code_seed);
  LinearCode right = build_component_code(cfg.right, f, g.d, cfg.right_k,
                                          cfg.code_seed + 1);
  return TannerCode(g, std::move(left), std::move(right));
}

AELCode build_ael(const ExperimentConfig& cfg, const BipartiteGraph& g) {
  Field f(cfg.q);
  LinearCode inner = build_component_code(cfg.inner, f, g.d, cfg.inner_k,
                                          cfg.code_seed);
  int dim = inner.k();
  LinearCode outer_base = [&] {
    if (cfg.outer == "repetition") return block_repetition_code(f, g.n, dim);
    if (cfg.outer == "random")
      return random_linear_code(f, g.n * dim, cfg.outer_k, cfg.code_seed + 2);
    LinearCode c = load_code_file(cfg.outer.substr(5));
    if (c.n() != g.n * dim)
      throw ConfigError("outer code file has length " + std::to_string(c.n()) +
                        ", instance needs " + std::to_string(g.n * dim));
    if (c.field().q() != f.q())
      throw ConfigError("outer code file field mismatch");
    return c;
  }();
  auto outer = std::make_shared<BruteForceOuterCode>(std::move(outer_base),
                                                     g.n);
  return AELCode(g, std::move(inner), std::move(outer));
}

std::unique_ptr<CutOracle> build_cut_oracle(const ExperimentConfig& cfg) {
  if (cfg.oracle == "exact") return std::make_unique<ExactCutOracle>();
  if (cfg.oracle == "bb") return std::make_unique<BranchBoundCutOracle>();
  return std::make_unique<HeuristicCutOracle>(cfg.master_seed ^
                                                  0x9e3779b97f4a7c15ull,
                                              cfg.restarts);
}

int cli_run(const std::vector<std::string>& args) {
  CLI::App app{"expander-code experiment harness"};
  app.name("expcodes");
  app.require_subcommand(1);

  auto* gg = app.add_subcommand("gen-graph",
                                "sample a biregular graph and save it");
  int gg_n = 16, gg_d = 4;
  std::uint64_t gg_seed = 1;
  std::string gg_out;
  gg->add_option("--n", gg_n, "vertices per side");
  gg->add_option("--d", gg_d, "degree");
  gg->add_option("--seed", gg_seed, "sampler seed");
  gg->add_option("--out", gg_out, "output path")->required();

  auto* gc = app.add_subcommand("gen-code", "sample a random linear code");
  std::uint32_t gc_q = 2;
  int gc_n = 6, gc_k = 3;
  std::uint64_t gc_seed = 1;
  std::string gc_out;
  gc->add_option("--q", gc_q, "field size (prime)");
  gc->add_option("--n", gc_n, "length");
  gc->add_option("--k", gc_k, "dimension");
  gc->add_option("--seed", gc_seed, "sampler seed");
  gc->add_option("--out", gc_out, "output path")->required();

  auto* pp = app.add_subcommand("params",
                                "echo decoder parameters and lambda thresholds");
  std::string pp_mode;
  double pp_eps = 0.05, pp_delta = 0.1, pp_lambda = 0.0;
  int pp_K = 1, pp_k = 1;
  pp->add_option("--mode", pp_mode, "ael-decode | ael-recover | tanner-decode")
      ->required()
      ->check(CLI::IsMember({"ael-decode", "ael-recover", "tanner-decode"}));
  pp->add_option("--eps", pp_eps, "accuracy parameter");
  pp->add_option("--delta-dec", pp_delta, "outer decoding radius");
  pp->add_option("--K", pp_K, "local list bound");
  pp->add_option("--k", pp_k, "recovery list size / second list bound");
  pp->add_option("--lambda", pp_lambda, "measured expansion");

  auto* du = app.add_subcommand("decode-unique",
                                "errors-and-erasures channel experiment");
  CommonFlags du_flags;
  du_flags.attach(du);
  std::optional<double> du_s;
  du->add_option("--s", du_s, "override erasure fraction");

  auto* dl = app.add_subcommand("decode-list", "list decoding experiment");
  std::string dl_family;
  dl->add_option("family", dl_family, "tanner | ael")
      ->required()
      ->check(CLI::IsMember({"tanner", "ael"}));
  CommonFlags dl_flags;
  dl_flags.attach(dl);

  auto* rl = app.add_subcommand("recover-list", "list recovery experiment");
  CommonFlags rl_flags;
  rl_flags.attach(rl);

  auto* au = app.add_subcommand("audit",
                                "mixing, regularity, or lemma slack audits");
  std::string au_what;
  au->add_option("what", au_what,
                 "mixing | regularity | local-membership | "
                 "local-membership-lr | ael-rigidity | ael-rigidity-lr | "
                 "local-presence | tanner-rigidity")
      ->required();
  CommonFlags au_flags;
  au_flags.attach(au);
  int au_n = 16, au_d = 4;
  std::optional<int> au_trials;
  double au_gamma = 0.25;
  std::uint64_t au_seed = 1;
  au->add_option("--n", au_n, "graph size (mixing/regularity)");
  au->add_option("--d", au_d, "graph degree (mixing/regularity)");
  au->add_option("--gamma", au_gamma, "decomposition accuracy (regularity)");

  auto* bn = app.add_subcommand("bench", "time the configured experiment");
  CommonFlags bn_flags;
  bn_flags.attach(bn);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(gg)) return run_gen_graph(gg_n, gg_d, gg_seed, gg_out);
    if (app.got_subcommand(gc))
      return run_gen_code(gc_q, gc_n, gc_k, gc_seed, gc_out);
    if (app.got_subcommand(pp))
      return run_params(pp_mode, pp_eps, pp_delta, pp_K, pp_k, pp_lambda);
    if (app.got_subcommand(du)) {
      ExperimentConfig cfg = du_flags.load();
      if (du_s) cfg.s = *du_s;
      validate_config(cfg);
      BipartiteGraph g = build_graph(cfg);
      TannerCode t = build_tanner(cfg, g);
      auto results = run_trials(cfg.trials, cfg.jobs, [&](int i) {
        return tanner_unique_trial(cfg, t, i);
      });
      return finish_experiment(cfg, results, "sound");
    }
    if (app.got_subcommand(dl)) {
      ExperimentConfig cfg = dl_flags.load();
      BipartiteGraph g = build_graph(cfg);
      auto oracle = build_cut_oracle(cfg);
      std::vector<TrialResult> results;
      if (dl_family == "tanner") {
        TannerCode t = build_tanner(cfg, g);
        results = run_trials(cfg.trials, cfg.jobs, [&](int i) {
          return tanner_list_trial(cfg, t, *oracle, i);
        });
      } else {
        AELCode a = build_ael(cfg, g);
        results = run_trials(cfg.trials, cfg.jobs, [&](int i) {
          return ael_list_trial(cfg, a, *oracle, i);
        });
      }
      return finish_experiment(cfg, results, "sound");
    }
    if (app.got_subcommand(rl)) {
      ExperimentConfig cfg = rl_flags.load();
      BipartiteGraph g = build_graph(cfg);
      AELCode a = build_ael(cfg, g);
      auto oracle = build_cut_oracle(cfg);
      auto results = run_trials(cfg.trials, cfg.jobs, [&](int i) {
        return ael_recover_trial(cfg, a, *oracle, i);
      });
      return finish_experiment(cfg, results, "sound");
    }
    if (app.got_subcommand(au)) {
      if (au->count("--seed")) au_seed = *au_flags.seed;
      if (au->count("--trials")) au_trials = au_flags.trials;
      if (au_what == "mixing")
        return run_audit_mixing(au_n, au_d, au_seed,
                                au_trials.value_or(10000));
      if (au_what == "regularity")
        return run_audit_regularity(au_n, au_d, au_seed, au_gamma,
                                    au_trials.value_or(5));
      static const std::vector<std::string> kAelIds = {"local-membership",
                                                       "ael-rigidity"};
      static const std::vector<std::string> kLrIds = {"local-membership-lr",
                                                      "ael-rigidity-lr"};
      static const std::vector<std::string> kTannerIds = {"local-presence",
                                                          "tanner-rigidity"};
      bool is_ael = list_contains(kAelIds, au_what) ||
                    list_contains(kLrIds, au_what);
      bool is_tanner = list_contains(kTannerIds, au_what);
      if (!is_ael && !is_tanner) {
        std::cerr << "audit: unknown target '" << au_what
                  << "' (mixing | regularity | local-membership | "
                     "local-membership-lr | ael-rigidity | ael-rigidity-lr | "
                     "local-presence | tanner-rigidity)\n";
        return 2;
      }
      ExperimentConfig cfg = au_flags.load();
      BipartiteGraph g = build_graph(cfg);
      std::optional<TannerCode> t;
      std::optional<AELCode> a;
      if (is_tanner)
        t.emplace(build_tanner(cfg, g));
      else
        a.emplace(build_ael(cfg, g));
      auto results = run_trials(cfg.trials, cfg.jobs, [&](int i) {
        return lemma_trial(cfg, au_what, t ? &*t : nullptr, a ? &*a : nullptr,
                           i);
      });
      return finish_experiment(cfg, results, "pass");
    }
    if (app.got_subcommand(bn)) return run_bench(bn_flags.load());
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n" << config_schema();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace expcodes
