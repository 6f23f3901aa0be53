// scx command line front end.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scx/scx.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

// Writes to `path`, or stdout when empty / "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw scx::Error(scx::ErrorCode::IoError, "cannot write " + path);
  fn(out);
  if (!out) throw scx::Error(scx::ErrorCode::IoError, "write failed for " + path);
}

std::string experiment_output(const std::string& flag, const scx::ExperimentConfig& config) {
  return flag.empty() ? config.output : flag;
}

std::string join_vertices(const scx::Simplex& s) {
  std::string out;
  for (const auto v : s.vertices()) out += (out.empty() ? "" : " ") + std::to_string(v);
  return out;
}

void print_partition(std::ostream& out, const scx::Partition& p) {
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    out << "block_" << b << ',';
    for (std::size_t j = 0; j < p.blocks[b].size(); ++j) out << (j ? " " : "") << p.blocks[b][j];
    out << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral sparsification of weighted simplicial complexes"};
  app.require_subcommand(1);
  std::string output;

  auto* gen = app.add_subcommand("gen", "Generate a benchmark complex");
  std::string kind;
  std::vector<int> params;
  gen->add_option("kind", kind, "complete_graph | complete_complex2 | dumbbell_graph | dumbbell_complex")->required();
  gen->add_option("params", params, "Integer parameters of the generator");
  gen->add_option("-o,--output", output, "Output complex file (default stdout)");

  auto* sp = app.add_subcommand("sparsify", "Sample i-simplices by generalized resistance");
  int dim = 1;
  std::size_t samples = 1;
  std::uint64_t seed = 0;
  std::string input;
  sp->add_option("-i,--dimension", dim, "Dimension of the sampled simplices")->required();
  sp->add_option("-q,--samples", samples, "Number of draws")->required();
  sp->add_option("--seed", seed, "Random seed");
  sp->add_option("file", input, "Input complex file")->required();
  sp->add_option("-o,--output", output, "Output complex file; metadata goes to <output>.json");

  auto* res = app.add_subcommand("resistance", "Print generalized effective resistances");
  res->add_option("-i,--dimension", dim, "Simplex dimension")->required();
  res->add_option("file", input, "Input complex file")->required();
  res->add_option("-o,--output", output, "Output CSV (default stdout)");

  auto* ch = app.add_subcommand("cheeger", "Brute-force Cheeger constant and its spectral lower bound");
  int k = 1;
  std::size_t max_vertices = 0;
  ch->add_option("-k", k, "Number of blocks minus one")->required();
  ch->add_option("file", input, "Input complex file")->required();
  ch->add_option("--max-vertices", max_vertices, "Override the brute-force vertex limit for this k");
  ch->add_option("-o,--output", output, "Output CSV (default stdout)");

  std::string config_path;
  std::vector<CLI::App*> experiments;
  for (const char* name : {"spectrum", "scaling", "cluster", "labels"}) {
    auto* sub = app.add_subcommand(name, std::string("Run the ") + name + " experiment");
    sub->add_option("--config", config_path, "key = value config file")->required();
    sub->add_option("-o,--output", output, "Output CSV (default: config `output`, else stdout)");
    experiments.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (gen->parsed()) {
      const auto complex = scx::datasets::generate(kind, params);
      with_output(output, [&](std::ostream& out) { scx::write_complex(out, complex); });
    } else if (sp->parsed()) {
      const auto complex = scx::load_complex(input);
      const auto result = scx::sparsify(complex, dim, samples, seed);
      with_output(output, [&](std::ostream& out) { scx::write_complex(out, result.complex); });
      if (!output.empty() && output != "-") {
        nlohmann::ordered_json meta;
        meta["i"] = dim;
        meta["q"] = samples;
        meta["seed"] = seed;
        if (complex.count(dim - 1) >= 2) meta["epsilon"] = scx::epsilon_for_samples(complex.count(dim - 1), samples);
        else meta["epsilon"] = nullptr;
        meta["distinct_count"] = result.distinct_count();
        with_output(output + ".json", [&](std::ostream& out) { out << meta.dump(2) << '\n'; });
      }
    } else if (res->parsed()) {
      const auto complex = scx::load_complex(input);
      const auto plan = scx::sampling_plan(complex, dim);
      const auto simplices = complex.simplices(dim);
      const auto weights = complex.weights(dim);
      with_output(output, [&](std::ostream& out) {
        out << "index,simplex,weight,resistance,probability\n";
        for (std::size_t f = 0; f < simplices.size(); ++f)
          out << f << ',' << join_vertices(simplices[f]) << ',' << scx::detail::format_double(weights[f]) << ','
              << scx::detail::format_double(plan.resistance[f]) << ','
              << scx::detail::format_double(plan.probabilities[f]) << '\n';
      });
    } else if (ch->parsed()) {
      const auto complex = scx::load_complex(input);
      scx::BruteForceLimits limits;
      if (max_vertices > 0) {
        limits.max_vertices_k1 = max_vertices;
        limits.max_vertices_k2 = max_vertices;
      }
      const auto h = scx::weighted_cheeger_constant(complex, k, limits);
      const double bound = scx::cheeger_lower_bound(complex, k);
      with_output(output, [&](std::ostream& out) {
        out << "quantity,value\n";
        out << "cheeger_constant," << scx::detail::format_double(h.value) << '\n';
        out << "lower_bound," << scx::detail::format_double(bound) << '\n';
        if (k == 1) out << "graph_lower_bound," << scx::detail::format_double(scx::graph_cheeger_lower_bound(complex)) << '\n';
        print_partition(out, h.partition);
      });
    } else {
      const auto config = scx::load_config(config_path);
      const auto complex = scx::load_dataset(config.dataset);
      const std::string path = experiment_output(output, config);
      if (experiments[0]->parsed()) {
        const auto rows = scx::run_spectrum(config, complex);
        with_output(path, [&](std::ostream& out) { scx::write_spectrum_csv(out, rows); });
      } else if (experiments[1]->parsed()) {
        const auto rows = scx::run_scaling(config, complex);
        with_output(path, [&](std::ostream& out) { scx::write_scaling_csv(out, rows); });
      } else if (experiments[2]->parsed()) {
        const auto result = scx::run_clustering(config, complex);
        with_output(path, [&](std::ostream& out) { scx::write_comparison_csv(out, result); });
      } else {
        const auto result = scx::run_labels(config, complex);
        with_output(path, [&](std::ostream& out) { scx::write_comparison_csv(out, result); });
      }
    }
  } catch (const scx::Error& e) {
    std::cerr << "scx: " << e.what() << '\n';
    return scx::is_numerical(e.code()) ? kExitNumerical : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "scx: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
