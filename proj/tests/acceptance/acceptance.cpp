// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.
//
//   scx_acceptance --cli PATH/TO/scx --workdir DIR [--only N]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "support.hpp"

using namespace scx;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Settings {
  std::string cli;
  fs::path workdir;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome exactness_oracles() {
  std::ostringstream why;
  bool ok = true;
  double worst_time = 0.0;
  auto timed = [&](const std::function<bool()>& check, const char* name) {
    const auto t0 = Clock::now();
    const bool r = check();
    const double t = seconds_since(t0);
    worst_time = std::max(worst_time, t);
    if (!r) why << name << " failed; ";
    if (t >= 1.0) why << name << " took " << t << " s; ";
    ok = ok && r && t < 1.0;
  };

  timed([] {
    for (const double w : {0.5, 1.0, 4.0})
      if (std::abs(generalized_resistance(build_complex({{{0, 1}, w}}), 1)(0) - 1.0 / w) > 1e-10) return false;
    return true;
  }, "edge resistance");
  timed([] {
    for (const double w : {0.5, 1.0, 4.0})
      if (std::abs(generalized_resistance(build_complex({{{0, 1, 2}, w}}), 2)(0) - 1.0 / w) > 1e-10) return false;
    return true;
  }, "triangle resistance");
  timed([] {
    const auto k4 = datasets::complete_graph(4);
    const RealVector r = generalized_resistance(k4, 1);
    const RealVector ref = test_support::reference_edge_resistance(k4);
    for (Eigen::Index e = 0; e < r.size(); ++e)
      if (std::abs(r(e) - 0.5) > 1e-8 || std::abs(ref(e) - 0.5) > 1e-8) return false;
    return true;
  }, "K_4 resistance");
  timed([] {
    test_support::RandomComplexOptions o;
    o.edge_probability = 0.75;
    o.triangle_probability = 0.75;
    o.include_tetrahedra = true;
    for (std::uint64_t s = 0; s < 50; ++s) {
      o.vertices = 3 + static_cast<int>(s % 8);
      const auto k = test_support::random_complex(o, 10'000 + s);
      for (int p = 0; p + 1 < k.dimension(); ++p) {
        const RealMatrix dd = RealMatrix(incidence_matrix(k, p + 1)) * RealMatrix(incidence_matrix(k, p));
        if (!dd.isZero(0.0)) return false;
      }
    }
    return true;
  }, "coboundary square");

  if (ok) why << "all four checks, slowest " << fmt("%.3f", worst_time) << " s";
  return {ok, why.str()};
}

Outcome projection_identities() {
  double worst_idem = 0.0, worst_trace = 0.0;
  int cases = 0;
  test_support::RandomComplexOptions o;
  o.weighted_edges = false;
  o.edge_probability = 0.7;
  o.triangle_probability = 0.6;
  test_support::RandomComplexOptions g;
  g.triangle_probability = 0.0;
  std::uint64_t seed = 20'000;
  for (int c = 0; c < 20; ++c) {
    // i = 2 needs unit edge weights; i = 1 uses a separately drawn weighted graph
    SimplicialComplex k;
    do k = test_support::random_complex(o, seed++);
    while (k.count(2) == 0);
    SimplicialComplex w;
    do w = test_support::random_complex(g, seed++);
    while (w.count(1) == 0);
    for (const auto& [complex, i] : {std::pair{&w, 1}, std::pair{&k, 1}, std::pair{&k, 2}}) {
      const RealMatrix p = leverage_projection(*complex, i);
      worst_idem = std::max(worst_idem, (p * p - p).cwiseAbs().maxCoeff());
      const auto rank = numerical_rank(RealMatrix(incidence_matrix(*complex, i - 1)));
      worst_trace = std::max(worst_trace, std::abs(p.trace() - static_cast<double>(rank)));
      ++cases;
    }
  }
  const bool ok = worst_idem <= 1e-8 && worst_trace <= 1e-8;
  return {ok, std::to_string(cases) + " projections, max |P^2 - P| = " + fmt("%.2e", worst_idem) +
                  ", max |tr P - rank| = " + fmt("%.2e", worst_trace)};
}

struct OrderingTrials {
  SimplicialComplex complex;
  double epsilon = 0.9;
  std::size_t q = 0;
  std::vector<SimplicialComplex> sparsifiers;
  std::vector<bool> held;
};

OrderingTrials run_ordering_trials() {
  OrderingTrials t;
  t.complex = datasets::complete_complex2(10);
  t.q = samples_for_epsilon(t.complex.count(1), t.epsilon);
  const auto plan = sampling_plan(t.complex, 2);
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    auto r = sparsify(t.complex, plan, t.q, derive_seed(31'000, {trial}));
    const auto report = spectral_bound_report(t.complex, r.complex, 2, t.epsilon, {});
    t.held.push_back(report.semidefinite_pass);
    t.sparsifiers.push_back(std::move(r.complex));
  }
  return t;
}

Outcome ordering_at_desk_scale(const OrderingTrials& t) {
  const auto passes = std::count(t.held.begin(), t.held.end(), true);
  return {passes >= 50, std::to_string(passes) + "/100 trials satisfy the semidefinite ordering (n_1 = " +
                            std::to_string(t.complex.count(1)) + ", q = " + std::to_string(t.q) + ", eps = 0.9)"};
}

/// Averaged lambda_max(L_J - L_K) over the log-spaced schedule 10 .. 2 n_i.
struct Curve {
  std::vector<std::size_t> q;
  std::vector<double> mean_diff;
  std::vector<double> upper;
};

Curve averaged_curve(const SimplicialComplex& k, int i, int instances, std::uint64_t seed) {
  ExperimentConfig c;
  c.dataset.kind = "in-memory";
  c.dimension = i;
  c.simulations = 1;
  c.instances = instances;
  c.seed = seed;
  c.schedule_min = 10;
  c.schedule_points = 12;
  Curve out;
  for (const auto& row : run_spectrum(c, k)) {
    out.q.push_back(row.q);
    out.mean_diff.push_back(row.mean_lambda_max_diff);
    out.upper.push_back(row.eigen_upper);
  }
  return out;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t j = 1; j < v.size(); ++j)
    if (!(v[j] < v[j - 1])) return false;
  return true;
}

Outcome eigenvalue_band() {
  std::ostringstream why;
  const auto graph = datasets::complete_graph(40);
  const Curve g = averaged_curve(graph, 1, 25, 41'000);
  const double threshold = 40.0 * std::log(40.0);
  bool band = true;
  std::size_t checked = 0;
  double worst_ratio = 0.0;
  for (std::size_t j = 0; j < g.q.size(); ++j) {
    if (static_cast<double>(g.q[j]) < threshold) continue;
    ++checked;
    worst_ratio = std::max(worst_ratio, g.mean_diff[j] / g.upper[j]);
    if (g.mean_diff[j] < -1e-8 || g.mean_diff[j] > g.upper[j]) {
      band = false;
      why << "q = " << g.q[j] << " mean " << g.mean_diff[j] << " vs bound " << g.upper[j] << "; ";
    }
  }
  const bool graph_shape = strictly_decreasing(g.mean_diff) && strictly_decreasing(g.upper);

  const auto complex = datasets::complete_complex2(40);
  const Curve c = averaged_curve(complex, 2, 5, 42'000);
  const bool complex_shape = strictly_decreasing(c.mean_diff) && strictly_decreasing(c.upper);

  why << "graph: " << checked << " schedule points with q >= n ln n, worst mean/bound = " << fmt("%.3f", worst_ratio)
      << ", decreasing " << (graph_shape ? "yes" : "no") << "; complex (n_1 = 780): decreasing "
      << (complex_shape ? "yes" : "no");
  return {band && checked > 0 && graph_shape && complex_shape, why.str()};
}

Outcome cheeger_suite(const OrderingTrials& t) {
  const auto t0 = Clock::now();
  std::ostringstream why;
  bool ok = true;

  // graphs: lambda_1 / 2 <= h
  test_support::RandomComplexOptions g;
  g.triangle_probability = 0.0;
  int graphs = 0;
  for (std::uint64_t s = 0; graphs < 30; ++s) {
    g.vertices = 2 + static_cast<int>(s % 6);
    g.edge_probability = 0.4 + 0.1 * static_cast<double>(s % 6);
    const auto k = test_support::random_complex(g, 51'000 + s);
    if (k.count(1) == 0) continue;
    ++graphs;
    const double h = weighted_cheeger_constant(k, 1).value;
    const double bound = graph_cheeger_lower_bound(k);
    if (bound > h + 1e-12 * std::max(1.0, h)) {
      ok = false;
      why << "graph " << s << ": " << bound << " > " << h << "; ";
    }
  }

  // 2-complexes: |V| lambda_1 / (3 C*) <= h
  test_support::RandomComplexOptions c;
  c.weighted_edges = false;
  int complexes = 0;
  for (std::uint64_t s = 0; complexes < 15; ++s) {
    c.vertices = 4 + static_cast<int>(s % 5);
    c.edge_probability = 0.6 + 0.1 * static_cast<double>(s % 5);
    c.triangle_probability = 0.3 + 0.15 * static_cast<double>(s % 4);
    const auto k = test_support::random_complex(c, 52'000 + s);
    if (k.count(2) == 0) continue;
    CheegerResult h;
    try {
      h = weighted_cheeger_constant(k, 2);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NoValidPartition) continue;
      throw;
    }
    ++complexes;
    const double bound = cheeger_lower_bound(k, 2);
    if (bound > h.value + 1e-10 * std::max(1.0, h.value)) {
      ok = false;
      why << "complex " << s << ": " << bound << " > " << h.value << "; ";
    }
  }

  // corollary on the sparsification trials where the ordering held
  BruteForceLimits limits;
  limits.max_vertices_k2 = 10;
  const double n = static_cast<double>(t.complex.vertex_count());
  const double cstar = static_cast<double>(max_coface_count(t.complex, 2));
  const double lambda1 = lambda1_nontrivial(t.complex, 1);
  const double floor = n / (3.0 * cstar) * (1.0 - t.epsilon) * lambda1;
  int corollary = 0;
  double tightest = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < t.held.size(); ++j) {
    if (!t.held[j]) continue;
    ++corollary;
    const double h = weighted_cheeger_constant(t.sparsifiers[j], 2, limits).value;
    tightest = std::min(tightest, h - floor);
    if (floor > h + 1e-10 * std::max(1.0, h)) {
      ok = false;
      why << "trial " << j << ": " << floor << " > " << h << "; ";
    }
  }

  const double elapsed = seconds_since(t0);
  if (elapsed >= 120.0) {
    ok = false;
    why << "took " << elapsed << " s; ";
  }
  why << graphs << " graphs, " << complexes << " 2-complexes, " << corollary << " corollary trials (min slack "
      << fmt("%.3f", tightest) << "), " << fmt("%.1f", elapsed) << " s";
  return {ok, why.str()};
}

Outcome learning_equivalence() {
  double worst_prop = 0.0, worst_identity = 0.0;
  int instances = 0, complexes = 0;
  test_support::RandomComplexOptions g;
  g.vertices = 14;
  g.edge_probability = 0.3;
  g.triangle_probability = 0.0;
  for (std::uint64_t s = 0; instances < 20; ++s) {
    const auto a = vertex_affinity(test_support::random_complex(g, 61'000 + s));
    Rng rng(s);
    LabelVector labels(static_cast<std::size_t>(a.size()), Label::Unlabeled);
    for (auto& l : labels) {
      const double u = uniform01(rng);
      l = u < 0.12 ? Label::Positive : u < 0.24 ? Label::Negative : Label::Unlabeled;
    }
    const auto reach = label_reachable(a, labels);
    if (std::find(reach.begin(), reach.end(), false) != reach.end()) continue;
    if (std::count(labels.begin(), labels.end(), Label::Unlabeled) == 0) continue;
    const auto d = label_propagation(a, labels, PropagationMode::Direct);
    const auto it = label_propagation(a, labels, PropagationMode::Iterative);
    worst_prop = std::max(worst_prop, (d.scores - it.scores).cwiseAbs().maxCoeff());
    ++instances;
  }
  test_support::RandomComplexOptions c;
  c.weighted_edges = false;
  c.edge_probability = 0.7;
  c.triangle_probability = 0.6;
  for (std::uint64_t s = 0; complexes < 20; ++s) {
    const auto k = test_support::random_complex(c, 62'000 + s);
    if (k.count(2) == 0) continue;
    const RealMatrix rhs = RealMatrix(edge_affinity(k).degrees().asDiagonal()) / 2.0 - oriented_edge_affinity(k);
    worst_identity = std::max(worst_identity, (up_laplacian(k, 1) - rhs).cwiseAbs().maxCoeff());
    ++complexes;
  }
  return {worst_prop <= 1e-6 && worst_identity <= 1e-12,
          std::to_string(instances) + " propagation instances, max gap " + fmt("%.2e", worst_prop) + "; " +
              std::to_string(complexes) + " complexes, max |L_1 - (Delta/2 - A*)| = " + fmt("%.2e", worst_identity)};
}

Outcome learning_stability() {
  const auto complex = datasets::dumbbell_complex(10, 16, 48);
  const auto q_complex = static_cast<std::size_t>(std::ceil(0.75 * static_cast<double>(complex.count(2))));
  int cluster_ok = 0;
  std::ostringstream fracs;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto r = compare_clustering(complex, 2, 2, q_complex, derive_seed(71'000, {s}));
    cluster_ok += r.agreement >= 0.80 ? 1 : 0;
    fracs << (s ? " " : "") << fmt("%.2f", r.agreement);
  }

  const int bell = 20;
  const auto graph = datasets::dumbbell_graph(bell, 8);
  const auto q_graph = static_cast<std::size_t>(std::ceil(0.5 * static_cast<double>(graph.count(1))));
  const std::vector<std::pair<std::size_t, Label>> seeds{{bell - 1, Label::Positive}, {2 * bell - 1, Label::Negative}};
  int label_ok = 0;
  std::ostringstream lfracs;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto r = compare_labels(graph, 1, seeds, q_graph, derive_seed(72'000, {s}), PropagationMode::Direct);
    label_ok += r.agreement >= 0.90 ? 1 : 0;
    lfracs << (s ? " " : "") << fmt("%.2f", r.agreement);
  }
  return {cluster_ok >= 8 && label_ok >= 8,
          "clustering q = " + std::to_string(q_complex) + ": " + std::to_string(cluster_ok) + "/10 seeds >= 0.80 [" +
              fracs.str() + "]; labels q = " + std::to_string(q_graph) + ": " + std::to_string(label_ok) +
              "/10 seeds >= 0.90 [" + lfracs.str() + "]"};
}

// ---------------------------------------------------------------------------

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

int run(const std::string& command) {
  const int status = std::system((command + " 2>/dev/null").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

Outcome cli_determinism(const Settings& s) {
  if (s.cli.empty()) return {false, "no --cli given"};
  fs::create_directories(s.workdir);
  const fs::path dir = s.workdir;
  const std::string cli = quote(s.cli);

  write_file(dir / "spectrum.cfg",
             "dataset = complete_graph\ndataset_params = 12\ndimension = 1\nschedule = 10, 30, 90\n"
             "simulations = 3\ninstances = 4\nthreads = 2\nseed = 5\n");
  write_file(dir / "scaling.cfg",
             "dataset = complete_complex2\ndataset_params = 8\ndimension = 2\nschedule = auto\n"
             "schedule_points = 6\ninstances = 3\nthreads = 2\nseed = 6\n");
  write_file(dir / "cluster.cfg",
             "dataset = dumbbell_complex\ndataset_params = 10, 16, 48\ndimension = 2\nclusters = 2\n"
             "sample_fraction = 0.75\nseed = 7\n");
  write_file(dir / "labels.cfg",
             "dataset = dumbbell_graph\ndataset_params = 20, 8\ndimension = 1\nsample_fraction = 0.5\n"
             "labeled = 19:+1, 39:-1\nseed = 8\n");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"gen", cli + " gen dumbbell_complex 10 16 48 -o %OUT%"},
      {"sparsify", cli + " sparsify -i 2 -q 216 --seed 3 " + quote(dir / "gen.run0") + " -o %OUT%"},
      {"resistance", cli + " resistance -i 2 " + quote(dir / "gen.run0") + " -o %OUT%"},
      {"cheeger", cli + " cheeger -k 2 " + quote(dir / "k7.txt") + " -o %OUT%"},
      {"spectrum", cli + " spectrum --config " + quote(dir / "spectrum.cfg") + " -o %OUT%"},
      {"scaling", cli + " scaling --config " + quote(dir / "scaling.cfg") + " -o %OUT%"},
      {"cluster", cli + " cluster --config " + quote(dir / "cluster.cfg") + " -o %OUT%"},
      {"labels", cli + " labels --config " + quote(dir / "labels.cfg") + " -o %OUT%"},
  };
  save_complex(datasets::complete_complex2(7), (dir / "k7.txt").string());

  std::ostringstream why;
  bool ok = true;
  for (const auto& [name, templ] : commands) {
    std::string outputs[2];
    for (int r = 0; r < 2; ++r) {
      const fs::path out = dir / (name + ".run" + std::to_string(r));
      std::string cmd = templ;
      cmd.replace(cmd.find("%OUT%"), 5, quote(out));
      const int code = run(cmd);
      if (code != 0) {
        ok = false;
        why << name << " exit " << code << "; ";
      }
      outputs[r] = read_file(out);
      if (name == "sparsify") outputs[r] += read_file(out.string() + ".json");
    }
    if (outputs[0].empty() || outputs[0] != outputs[1]) {
      ok = false;
      why << name << " differs between runs; ";
    }
  }
  if (ok) why << commands.size() << " commands byte-identical across reruns";
  return {ok, why.str()};
}

}  // namespace

int main(int argc, char** argv) {
  Settings settings;
  settings.workdir = fs::temp_directory_path() / "scx_acceptance";
  int only = 0;
  for (int a = 1; a < argc; ++a) {
    const std::string arg = argv[a];
    if (arg == "--cli" && a + 1 < argc) settings.cli = argv[++a];
    else if (arg == "--workdir" && a + 1 < argc) settings.workdir = argv[++a];
    else if (arg == "--only" && a + 1 < argc) only = std::atoi(argv[++a]);
    else {
      std::cerr << "usage: scx_acceptance --cli PATH [--workdir DIR] [--only N]\n";
      return 2;
    }
  }

  std::optional<OrderingTrials> trials;
  auto ordering = [&]() -> const OrderingTrials& {
    if (!trials) trials = run_ordering_trials();
    return *trials;
  };

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exactness oracles", exactness_oracles},
      {"projection identities", projection_identities},
      {"sparsifier ordering at desk scale", [&] { return ordering_at_desk_scale(ordering()); }},
      {"largest-eigenvalue band and curve shape", eigenvalue_band},
      {"Cheeger bounds", [&] { return cheeger_suite(ordering()); }},
      {"learning equivalences", learning_equivalence},
      {"learning stability under sparsification", learning_stability},
      {"CLI determinism", [&] { return cli_determinism(settings); }},
  };

  int failures = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    if (only && static_cast<int>(c + 1) != only) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[c].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (c + 1) << " (" << criteria[c].first << ") "
              << fmt("%.1f", seconds_since(t0)) << " s: " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
