#pragma once

// Weighted oriented simplicial complexes and their signed incidence matrices.
//
// Every simplex is stored in canonical orientation (strictly ascending vertex
// labels). Within each dimension simplices are kept in lexicographic order, and
// that order fixes the row/column indices of every matrix built from a complex.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "scx/error.hpp"

namespace scx {

using Vertex = std::int64_t;
using SparseRealMatrix = Eigen::SparseMatrix<double>;

class Simplex {
 public:
  Simplex() = default;

  /// Sorts the labels into canonical order; rejects empty lists, negative
  /// labels and repeated vertices.
  explicit Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw Error(ErrorCode::InvalidSimplex, "simplex has no vertices");
    std::sort(vertices_.begin(), vertices_.end());
    if (vertices_.front() < 0) throw Error(ErrorCode::InvalidSimplex, "negative vertex label");
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
      throw Error(ErrorCode::InvalidSimplex, "repeated vertex in " + to_string());
  }

  Simplex(std::initializer_list<Vertex> vertices) : Simplex(std::vector<Vertex>(vertices)) {}

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  int dimension() const noexcept { return static_cast<int>(vertices_.size()) - 1; }

  /// The face opposite the vertex at position `j`; it appears in the
  /// coboundary with sign (-1)^j.
  Simplex facet(std::size_t j) const {
    Simplex f;
    f.vertices_.reserve(vertices_.size() - 1);
    for (std::size_t a = 0; a < vertices_.size(); ++a)
      if (a != j) f.vertices_.push_back(vertices_[a]);
    return f;
  }

  bool contains(const Simplex& face) const {
    return std::includes(vertices_.begin(), vertices_.end(), face.vertices_.begin(),
                         face.vertices_.end());
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t a = 0; a < vertices_.size(); ++a) {
      if (a) s += ',';
      s += std::to_string(vertices_[a]);
    }
    return s + "]";
  }

  auto operator<=>(const Simplex&) const = default;

 private:
  std::vector<Vertex> vertices_;
};

struct WeightedSimplex {
  std::vector<Vertex> vertices;
  double weight = 1.0;
};

/// Immutable weighted simplicial complex, closed under taking faces.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Trusted constructor: `levels[p]` must be sorted, duplicate-free and closed
  /// under faces together with the lower levels. Used by the operations that
  /// derive one complex from another.
  SimplicialComplex(std::vector<std::vector<Simplex>> levels, std::vector<std::vector<double>> weights)
      : simplices_(std::move(levels)), weights_(std::move(weights)) {
    while (!simplices_.empty() && simplices_.back().empty()) {
      simplices_.pop_back();
      weights_.pop_back();
    }
    index_.resize(simplices_.size());
    for (std::size_t p = 0; p < simplices_.size(); ++p)
      for (std::size_t j = 0; j < simplices_[p].size(); ++j) index_[p].emplace(simplices_[p][j], j);
  }

  /// Highest dimension present, or -1 for the empty complex.
  int dimension() const noexcept { return static_cast<int>(simplices_.size()) - 1; }

  /// n_p; zero outside [0, dimension()].
  std::size_t count(int p) const noexcept {
    return (p < 0 || p > dimension()) ? 0 : simplices_[static_cast<std::size_t>(p)].size();
  }

  std::size_t vertex_count() const noexcept { return count(0); }

  std::span<const Simplex> simplices(int p) const noexcept {
    if (p < 0 || p > dimension()) return {};
    return simplices_[static_cast<std::size_t>(p)];
  }

  std::span<const double> weights(int p) const noexcept {
    if (p < 0 || p > dimension()) return {};
    return weights_[static_cast<std::size_t>(p)];
  }

  std::optional<std::size_t> index_of(const Simplex& s) const {
    const int p = s.dimension();
    if (p < 0 || p > dimension()) return std::nullopt;
    const auto& level = index_[static_cast<std::size_t>(p)];
    const auto it = level.find(s);
    if (it == level.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const Simplex& s) const { return index_of(s).has_value(); }

  double weight(const Simplex& s) const {
    const auto idx = index_of(s);
    if (!idx) throw Error(ErrorCode::InvalidSimplex, s.to_string() + " is not in the complex");
    return weights_[static_cast<std::size_t>(s.dimension())][*idx];
  }

  /// Dense index of a vertex label (its row in the 0-dimensional level).
  std::optional<std::size_t> vertex_index(Vertex v) const { return index_of(Simplex{v}); }

  Vertex vertex_label(std::size_t index) const { return simplices_.at(0).at(index).vertices()[0]; }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.simplices_ == b.simplices_ && a.weights_ == b.weights_;
  }

 private:
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::vector<double>> weights_;
  std::vector<std::map<Simplex, std::size_t>> index_;
};

/// Builds the closure of the given simplices. Faces that are not listed
/// explicitly are added with weight 1.
inline SimplicialComplex build_complex(std::span<const WeightedSimplex> input) {
  if (input.empty()) throw Error(ErrorCode::EmptyInput, "no simplices given");

  std::vector<std::map<Simplex, double>> levels;
  for (const auto& ws : input) {
    Simplex s(ws.vertices);
    if (!(ws.weight > 0.0))
      throw Error(ErrorCode::NonPositiveWeight, s.to_string() + " has weight " + std::to_string(ws.weight));
    const auto p = static_cast<std::size_t>(s.dimension());
    if (levels.size() <= p) levels.resize(p + 1);
    const std::string name = s.to_string();
    if (!levels[p].emplace(std::move(s), ws.weight).second)
      throw Error(ErrorCode::DuplicateSimplex, name + " listed more than once");
  }

  for (std::size_t p = levels.size() - 1; p > 0; --p)
    for (const auto& [s, w] : levels[p])
      for (std::size_t j = 0; j <= p; ++j) levels[p - 1].try_emplace(s.facet(j), 1.0);

  std::vector<std::vector<Simplex>> simplices(levels.size());
  std::vector<std::vector<double>> weights(levels.size());
  for (std::size_t p = 0; p < levels.size(); ++p) {
    simplices[p].reserve(levels[p].size());
    weights[p].reserve(levels[p].size());
    for (const auto& [s, w] : levels[p]) {
      simplices[p].push_back(s);
      weights[p].push_back(w);
    }
  }
  return SimplicialComplex(std::move(simplices), std::move(weights));
}

inline SimplicialComplex build_complex(std::initializer_list<WeightedSimplex> input) {
  return build_complex(std::span<const WeightedSimplex>(input.begin(), input.size()));
}

/// K^(p): every simplex of dimension <= p, weights preserved.
inline SimplicialComplex skeleton(const SimplicialComplex& complex, int p) {
  if (p < 0 || p > complex.dimension())
    throw Error(ErrorCode::DimensionOutOfRange,
                "skeleton dimension " + std::to_string(p) + " outside [0, " +
                    std::to_string(complex.dimension()) + "]");
  std::vector<std::vector<Simplex>> simplices;
  std::vector<std::vector<double>> weights;
  for (int d = 0; d <= p; ++d) {
    const auto s = complex.simplices(d);
    const auto w = complex.weights(d);
    simplices.emplace_back(s.begin(), s.end());
    weights.emplace_back(w.begin(), w.end());
  }
  return SimplicialComplex(std::move(simplices), std::move(weights));
}

/// D_p, the n_{p+1} x n_p matrix of the coboundary delta_p. Row r holds the
/// facets of the r-th (p+1)-simplex; deleting the vertex at position j of the
/// ascending vertex list contributes (-1)^j.
inline SparseRealMatrix incidence_matrix(const SimplicialComplex& complex, int p) {
  if (p < 0 || p >= complex.dimension())
    throw Error(ErrorCode::DimensionOutOfRange,
                "incidence dimension " + std::to_string(p) + " outside [0, " +
                    std::to_string(complex.dimension() - 1) + ")");
  const auto rows = complex.simplices(p + 1);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(rows.size() * static_cast<std::size_t>(p + 2));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t j = 0; j <= static_cast<std::size_t>(p + 1); ++j) {
      const auto col = complex.index_of(rows[r].facet(j));
      entries.emplace_back(static_cast<int>(r), static_cast<int>(*col), (j % 2 == 0) ? 1.0 : -1.0);
    }
  }
  SparseRealMatrix d(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(complex.count(p)));
  d.setFromTriplets(entries.begin(), entries.end());
  return d;
}

}  // namespace scx
