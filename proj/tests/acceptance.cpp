// Acceptance suite: one PASS/FAIL/SKIP line per criterion; exit status 1 if
// anything failed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "dkcore/engine.hpp"
#include "dkcore/graph.hpp"
#include "dkcore/oracle.hpp"
#include "dkcore/protocol.hpp"
#include "dkcore/rng.hpp"
#include "support/oracles.hpp"

using namespace dkcore;
namespace fs = std::filesystem;

namespace {

enum class Status { pass, fail, skip };

struct Verdict {
  Status status;
  std::string detail;
};

struct Named {
  std::string name;
  Graph graph;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Graphs shared by criteria 5 and 6.
std::vector<Named> pool;

std::vector<Graph> ac1_graphs() {
  const double ps[] = {0.02, 0.05, 0.1, 0.3};
  std::vector<Graph> out;
  Rng sizes(2024);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::size_t n = 1 + sizes.below(200);
    out.push_back(gen_random(n, ps[i % 4], 1000 + i));
  }
  return out;
}

Verdict ac1_oracle() {
  const auto graphs = ac1_graphs();
  const auto start = Clock::now();
  std::size_t bad = 0;
  std::string first;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto exact = coreness_exact(graphs[i]);
    const bool ok = exact == testing::naive_peeling(graphs[i]) && verify_locality(graphs[i], exact).ok();
    if (!ok && bad++ == 0) first = fmt(" first failure graph %zu", i);
  }
  const double t = seconds_since(start);
  for (std::size_t i = 0; i < graphs.size(); ++i) pool.push_back({fmt("random#%zu", i), graphs[i]});
  const bool pass = bad == 0 && t < 10.0;
  return {pass ? Status::pass : Status::fail,
          fmt("%zu graphs, %zu disagreements, %.2f s (limit 10 s)%s", graphs.size(), bad, t, first.c_str())};
}

Verdict ac2_example() {
  const Graph g = testing::example_graph();
  pool.push_back({"example", g});
  const RunReport r = run_one_to_one(g);
  const CorenessMap expected({1, 2, 2, 2, 2, 1});
  std::string got;
  for (auto k : r.final_coreness.values()) got += std::to_string(k);
  return {r.converged && r.final_coreness == expected ? Status::pass : Status::fail,
          "final coreness by label 1..6 = " + got + " (expected 122221)"};
}

Verdict ac3_worst_case() {
  const auto start = Clock::now();
  std::size_t bad = 0;
  std::string observed;
  for (std::size_t n = 5; n <= 50; ++n) {
    const Graph g = gen_worst_case(n);
    pool.push_back({fmt("worstcase(%zu)", n), g});
    const RunReport r = run_one_to_one(g);
    if (r.exec_time_rounds != n - 1) {
      if (bad++ < 3) observed += fmt(" n=%zu:T=%zu(sim %zu)", n, r.exec_time_rounds, r.rounds_simulated);
    }
  }
  const double t = seconds_since(start);
  const bool pass = bad == 0 && t < 5.0;
  return {pass ? Status::pass : Status::fail,
          fmt("exec_time_rounds == n-1 for n=5..50: %zu mismatches, %.2f s (limit 5 s)%s", bad, t, observed.c_str())};
}

Verdict ac4_chain() {
  std::size_t bad = 0;
  std::string observed;
  for (std::size_t n = 2; n <= 100; ++n) {
    const Graph g = gen_chain(n);
    pool.push_back({fmt("chain(%zu)", n), g});
    const RunReport r = run_one_to_one(g);
    if (r.exec_time_rounds != (n + 1) / 2 && bad++ < 3) observed += fmt(" n=%zu:T=%zu", n, r.exec_time_rounds);
  }
  return {bad == 0 ? Status::pass : Status::fail,
          fmt("exec_time_rounds == ceil(n/2) for n=2..100: %zu mismatches%s", bad, observed.c_str())};
}

Verdict ac5_bounds() {
  std::size_t bad = 0;
  std::string first;
  for (const auto& [name, g] : pool) {
    const auto oracle = coreness_exact(g);
    const BoundReport b = check_bounds(g, oracle, run_one_to_one(g));
    if (!b.all_satisfied && bad++ == 0) {
      first = fmt(" first: %s T=%llu b1=%llu cor=%llu upd=%llu msg=%llu", name.c_str(),
                  static_cast<unsigned long long>(b.observed_T), static_cast<unsigned long long>(b.bound_b1),
                  static_cast<unsigned long long>(b.bound_corollary),
                  static_cast<unsigned long long>(b.observed_updates),
                  static_cast<unsigned long long>(b.bound_messages));
    }
  }
  return {bad == 0 ? Status::pass : Status::fail,
          fmt("%zu runs checked, %zu violations%s", pool.size(), bad, first.c_str())};
}

Verdict ac6_safety() {
  std::size_t bad = 0;
  std::string first;
  for (const auto& [name, g] : pool) {
    const auto oracle = coreness_exact(g);
    bool ok = true;
    std::vector<Coreness> last;
    RunOptions o;
    o.oracle = &oracle;
    o.observer = [&](std::size_t, std::span<const Coreness> est) {
      for (std::size_t u = 0; u < est.size(); ++u) {
        ok = ok && est[u] >= oracle[u];
        if (!last.empty()) ok = ok && est[u] <= last[u];
      }
      last.assign(est.begin(), est.end());
    };
    try {
      const RunReport r = run_one_to_one(g, o);
      for (const auto& row : r.error_trace) ok = ok && row.min_error >= 0;
      ok = ok && r.converged && r.final_coreness == oracle;
      ok = ok && !r.error_trace.empty() && r.error_trace.back().max_error == 0;
    } catch (const InvariantViolation& e) {
      ok = false;
      if (first.empty()) first = std::string(" ") + e.what();
    }
    if (!ok && bad++ == 0 && first.empty()) first = " first: " + name;
  }
  return {bad == 0 ? Status::pass : Status::fail,
          fmt("%zu runs: min error >= 0, non-increasing estimates, final error 0; %zu failures%s", pool.size(), bad,
              first.c_str())};
}

Verdict ac7_modes() {
  std::size_t bad = 0;
  std::size_t runs = 0;
  std::string first;
  Rng sizes(77);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::size_t n = 1 + sizes.below(150);
    const Graph g = gen_random(n, std::vector<double>{0.03, 0.08, 0.2}[i % 3], 5000 + i);
    const auto oracle = coreness_exact(g);
    RunOptions o;
    o.oracle = &oracle;
    const RunReport plain = run_one_to_one(g, o);
    o.filter = SendFilter::optimized;
    const RunReport opt = run_one_to_one(g, o);
    o.filter = SendFilter::plain;
    std::vector<RunReport> reports = {plain, opt};
    for (std::size_t h : {std::size_t{1}, std::size_t{2}, std::size_t{5}, n}) {
      for (Policy p : {Policy::broadcast, Policy::p2p}) reports.push_back(run_one_to_many(g, h, p, o));
    }
    runs += reports.size();
    bool ok = opt.update_messages <= plain.update_messages;
    for (const auto& r : reports) ok = ok && r.converged && r.final_coreness == oracle;
    if (!ok && bad++ == 0) first = fmt(" first failure graph %llu (N=%zu)", static_cast<unsigned long long>(i), n);
  }
  return {bad == 0 ? Status::pass : Status::fail,
          fmt("50 graphs x 10 modes (%zu runs), %zu graphs disagree%s", runs, bad, first.c_str())};
}

Verdict ac8_compute_index() {
  const std::vector<Coreness> values = {1, 2, 3, 4, 5, testing::kInf};
  std::size_t checked = 0;
  std::size_t bad = 0;
  std::vector<Coreness> est;
  std::function<void(std::size_t)> walk = [&](std::size_t depth) {
    for (Coreness k = 1; k <= 5; ++k) {
      ++checked;
      if (compute_index(est, k) != testing::brute_index(est, k)) ++bad;
    }
    if (depth == 5) return;
    for (Coreness v : values) {
      est.push_back(v);
      walk(depth + 1);
      est.pop_back();
    }
  };
  walk(0);
  return {bad == 0 ? Status::pass : Status::fail,
          fmt("%zu (vector, k) cases, degree 0..5, %zu disagreements", checked, bad)};
}

Verdict ac9_datasets() {
  const char* dir = std::getenv("DKCORE_DATA_DIR");
  const fs::path base = dir != nullptr ? dir : "data";
  const fs::path gnutella = base / "p2p-Gnutella31.txt";
  const fs::path condmat = base / "CA-CondMat.txt";
  if (!fs::exists(gnutella) || !fs::exists(condmat)) {
    return {Status::skip, "dataset files not found under " + base.string()};
  }
  auto load = [](const fs::path& p) {
    std::ifstream in(p);
    return parse_edge_list(in, {EdgeMode::symmetrize_directed, std::nullopt});
  };
  std::vector<std::string> failures;
  const Graph g = load(gnutella);
  const auto c = coreness_exact(g);
  const auto s = stats(g, c);
  if (s.k_max != 6) failures.push_back(fmt("gnutella k_max=%u", s.k_max));
  if (std::fabs(s.k_avg() - 2.52) > 0.01) failures.push_back(fmt("gnutella k_avg=%.4f", s.k_avg()));

  const Graph cm = load(condmat);
  const auto cms = stats(cm, coreness_exact(cm));
  if (cms.k_max != 25) failures.push_back(fmt("condmat k_max=%u", cms.k_max));

  RunOptions o;
  o.oracle = &c;
  const RunReport plain = run_one_to_one(g, o);
  if (plain.exec_time_rounds < 20 || plain.exec_time_rounds > 35) {
    failures.push_back(fmt("gnutella T=%zu", plain.exec_time_rounds));
  }
  o.filter = SendFilter::optimized;
  const RunReport opt = run_one_to_one(g, o);
  const double reduction =
      1.0 - static_cast<double>(opt.update_messages) / static_cast<double>(std::max<std::uint64_t>(plain.update_messages, 1));
  if (reduction < 0.25 || reduction > 0.75) failures.push_back(fmt("reduction=%.3f", reduction));
  o.filter = SendFilter::plain;
  const RunReport hosted = run_one_to_many(g, 16, Policy::broadcast, o);
  const double overhead = hosted.overhead_per_node.value_or(0.0);
  if (!(overhead < 3.0)) failures.push_back(fmt("overhead=%.3f", overhead));

  std::string detail = fmt("k_max=%u k_avg=%s condmat k_max=%u T=%zu reduction=%.3f overhead16=%.3f", s.k_max,
                           s.k_avg_text().c_str(), cms.k_max, plain.exec_time_rounds, reduction, overhead);
  for (const auto& f : failures) detail += "; bad " + f;
  return {failures.empty() ? Status::pass : Status::fail, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"AC1 oracle correctness", ac1_oracle},
      {"AC2 example graph", ac2_example},
      {"AC3 worst-case family", ac3_worst_case},
      {"AC4 chain family", ac4_chain},
      {"AC5 bounds", ac5_bounds},
      {"AC6 safety and liveness", ac6_safety},
      {"AC7 mode equivalence", ac7_modes},
      {"AC8 compute_index", ac8_compute_index},
      {"AC9 datasets", ac9_datasets},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {Status::fail, std::string("exception: ") + e.what()};
    }
    const char* tag = v.status == Status::pass ? "PASS" : v.status == Status::fail ? "FAIL" : "SKIP";
    std::printf("%s %s: %s\n", tag, name, v.detail.c_str());
    failed += v.status == Status::fail ? 1 : 0;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
