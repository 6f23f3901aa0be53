#pragma once

// Flat `key = value` experiment configuration. `#` starts a comment; unknown
// and repeated keys are rejected.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scx/error.hpp"
#include "scx/learning.hpp"

namespace scx {

struct DatasetSpec {
  std::string kind;         ///< generator name, or "file"
  std::vector<int> params;  ///< generator parameters
  std::string path;         ///< complex file when kind == "file"
};

struct ExperimentConfig {
  DatasetSpec dataset;
  int dimension = 1;

  /// Explicit sample sizes; when empty the schedule is log-spaced between
  /// schedule_min and schedule_max (default 2 n_i) with schedule_points entries.
  std::vector<std::size_t> schedule;
  std::size_t schedule_min = 10;
  std::size_t schedule_max = 0;
  std::size_t schedule_points = 12;

  int simulations = 1;
  int instances = 1;
  int eigen_simulations = -1;  ///< simulations that also compute lambda_max(L_J - L_K); -1 = all
  int threads = 1;
  std::uint64_t seed = 0;
  std::string output;

  int clusters = 2;
  std::size_t samples = 0;      ///< q for cluster/labels runs; 0 = use sample_fraction
  double sample_fraction = 0.0; ///< q = ceil(fraction * n_i)
  std::vector<std::pair<std::size_t, Label>> labeled;
  PropagationMode mode = PropagationMode::Direct;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(ErrorCode::InvalidConfig, "key '" + key + "': cannot parse '" + text + "'");
  return value;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  for (const auto& part : split(text, ',')) {
    if (part.empty()) continue;
    out.push_back(parse_number<T>(key, part));
  }
  return out;
}

}  // namespace detail

inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    const std::string body = detail::trim(view);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected key = value");
    const std::string key = detail::trim(std::string_view(body).substr(0, eq));
    const std::string value = detail::trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (!kv.emplace(key, value).second) throw ParseError(line_no, "key '" + key + "' repeated");
  }
  return kv;
}

inline void validate(const ExperimentConfig& c) {
  if (c.simulations < 1) throw Error(ErrorCode::InvalidConfig, "simulations must be >= 1");
  if (c.instances < 1) throw Error(ErrorCode::InvalidConfig, "instances must be >= 1");
  if (c.threads < 1) throw Error(ErrorCode::InvalidConfig, "threads must be >= 1");
  if (c.dimension < 1) throw Error(ErrorCode::InvalidConfig, "dimension must be >= 1");
  for (std::size_t j = 0; j < c.schedule.size(); ++j) {
    if (c.schedule[j] < 1) throw Error(ErrorCode::InvalidConfig, "schedule entries must be >= 1");
    if (j > 0 && c.schedule[j] <= c.schedule[j - 1])
      throw Error(ErrorCode::InvalidConfig, "schedule must be strictly increasing");
  }
  if (c.schedule_points < 1) throw Error(ErrorCode::InvalidConfig, "schedule_points must be >= 1");
  if (c.sample_fraction < 0.0) throw Error(ErrorCode::InvalidConfig, "sample_fraction must be non-negative");
  if (c.dataset.kind.empty()) throw Error(ErrorCode::InvalidConfig, "dataset is required");
}

inline ExperimentConfig parse_config(std::istream& in) {
  auto kv = parse_key_values(in);
  ExperimentConfig c;
  std::set<std::string> used;
  auto take = [&](const std::string& key) -> const std::string* {
    const auto it = kv.find(key);
    if (it == kv.end()) return nullptr;
    used.insert(key);
    return &it->second;
  };

  if (auto v = take("dataset")) c.dataset.kind = *v;
  if (auto v = take("dataset_params")) c.dataset.params = detail::parse_list<int>("dataset_params", *v);
  if (auto v = take("dataset_file")) c.dataset.path = *v;
  if (c.dataset.kind == "file" && c.dataset.path.empty())
    throw Error(ErrorCode::InvalidConfig, "dataset = file requires dataset_file");
  if (auto v = take("dimension")) c.dimension = detail::parse_number<int>("dimension", *v);
  if (auto v = take("schedule")) {
    if (*v != "auto") c.schedule = detail::parse_list<std::size_t>("schedule", *v);
  }
  if (auto v = take("schedule_min")) c.schedule_min = detail::parse_number<std::size_t>("schedule_min", *v);
  if (auto v = take("schedule_max")) c.schedule_max = detail::parse_number<std::size_t>("schedule_max", *v);
  if (auto v = take("schedule_points")) c.schedule_points = detail::parse_number<std::size_t>("schedule_points", *v);
  if (auto v = take("simulations")) c.simulations = detail::parse_number<int>("simulations", *v);
  if (auto v = take("instances")) c.instances = detail::parse_number<int>("instances", *v);
  if (auto v = take("eigen_simulations")) c.eigen_simulations = detail::parse_number<int>("eigen_simulations", *v);
  if (auto v = take("threads")) c.threads = detail::parse_number<int>("threads", *v);
  if (auto v = take("seed")) c.seed = detail::parse_number<std::uint64_t>("seed", *v);
  if (auto v = take("output")) c.output = *v;
  if (auto v = take("clusters")) c.clusters = detail::parse_number<int>("clusters", *v);
  if (auto v = take("samples")) c.samples = detail::parse_number<std::size_t>("samples", *v);
  if (auto v = take("sample_fraction")) c.sample_fraction = detail::parse_number<double>("sample_fraction", *v);
  if (auto v = take("mode")) {
    if (*v == "direct") c.mode = PropagationMode::Direct;
    else if (*v == "iterative") c.mode = PropagationMode::Iterative;
    else throw Error(ErrorCode::InvalidConfig, "mode must be direct or iterative");
  }
  if (auto v = take("labeled")) {
    for (const auto& item : detail::split(*v, ',')) {
      if (item.empty()) continue;
      const auto parts = detail::split(item, ':');
      if (parts.size() != 2) throw Error(ErrorCode::InvalidConfig, "labeled entries look like index:+1 or index:-1");
      const auto index = detail::parse_number<std::size_t>("labeled", parts[0]);
      Label label;
      if (parts[1] == "+1" || parts[1] == "1") label = Label::Positive;
      else if (parts[1] == "-1") label = Label::Negative;
      else throw Error(ErrorCode::InvalidConfig, "label must be +1 or -1, got '" + parts[1] + "'");
      c.labeled.emplace_back(index, label);
    }
  }

  for (const auto& [key, value] : kv)
    if (!used.contains(key)) throw Error(ErrorCode::InvalidConfig, "unknown key '" + key + "'");
  validate(c);
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return parse_config(in);
}

}  // namespace scx
