#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "drg/intersection_array.hpp"

namespace drg {

/// Simple undirected graph with sorted neighbor lists.
class Graph {
 public:
  /// Throws std::invalid_argument on loops, repeated edges or out-of-range
  /// endpoints.
  Graph(std::string name, int n, std::vector<std::pair<int, int>> edges, std::vector<std::string> labels = {});

  const std::string& name() const { return name_; }
  int n() const { return static_cast<int>(adj_.size()); }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  bool adjacent(int u, int v) const;
  /// Each edge once with u < v, sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> regular_degree() const;

 private:
  std::string name_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::string> labels_;
};

/// Words of length d over q symbols, adjacent at Hamming distance 1.
Graph build_hamming(int d, int q);
/// k-subsets of a v-set, adjacent when they share k-1 elements.
Graph build_johnson(int v, int k);
/// (m-1)-subsets of a (2m-1)-set, adjacent when disjoint.
Graph build_odd(int m);

/// The named witness graphs: hamming = H(3,3), johnson = J(9,3), odd4.
std::vector<std::string> witness_names();
Graph witness_graph(const std::string& name);

class DisconnectedGraph : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PartitionWitness {
  int x = 0;
  int y = 0;
  int distance = 0;
  std::string parameter;  // "c", "a" or "b"
  std::int64_t expected = 0;
  std::int64_t found = 0;
};
std::string to_string(const PartitionWitness& w);

struct DistancePartitionCheck {
  std::optional<IntersectionArray> array;
  std::optional<PartitionWitness> witness;
  bool ok() const { return array.has_value(); }
};

/// BFS from every vertex.  Throws DisconnectedGraph.
DistancePartitionCheck verify_distance_regular(const Graph& g);

struct CocliqueReport {
  bool ok = true;
  int min_max_coclique = 0;  // over all vertices
  int max_max_coclique = 0;
  std::vector<std::string> failures;
};

/// Maximum co-cliques of every local graph, the co-clique inequality for
/// every size up to the maximum, and max size >= k / (a1 + 1).
CocliqueReport coclique_bound_check(const Graph& g, const IntersectionArray& arr);

/// Size of a maximum independent set; at most 64 vertices.
int max_coclique(const Graph& g, const std::vector<int>& vertices);

struct InterlacingReport {
  bool ok = true;
  double theta1 = 0;
  double lower_bound = 0;  // min{(a1 + sqrt(a1^2 + 4k)) / 2, a3}
  std::vector<double> second_largest;  // per sampled vertex
  std::vector<std::string> failures;
};

/// Second-largest eigenvalue of the subgraph on {x} + G(x) + G3(x) for up to
/// `samples` vertices x.  Diameter 3 only.
InterlacingReport interlacing_check(const Graph& g, const IntersectionArray& arr, int samples = 5);

struct SpectrumComparison {
  bool ok = true;
  std::vector<std::pair<double, int>> numeric;  // eigenvalue, multiplicity, descending
  std::vector<std::string> failures;
};

/// Numerical adjacency spectrum against the exact spectrum of arr.
SpectrumComparison spectrum_check(const Graph& g, const IntersectionArray& arr);

/// One "u v" line per edge, 0-indexed.
void write_edge_list(const Graph& g, std::ostream& out);

}  // namespace drg
