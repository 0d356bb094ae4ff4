#include "drg/graphs.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>

#include <Eigen/Dense>

#include "drg/spectrum.hpp"

namespace drg {

namespace {

/// Every k-subset of {0..v-1} as a bitmask, in lexicographic order.
std::vector<std::uint32_t> subsets(int v, int k) {
  std::vector<std::uint32_t> out;
  std::function<void(int, int, std::uint32_t)> rec = [&](int start, int left, std::uint32_t mask) {
    if (left == 0) {
      out.push_back(mask);
      return;
    }
    for (int i = start; i <= v - left; ++i) rec(i + 1, left - 1, mask | (1u << i));
  };
  rec(0, k, 0);
  return out;
}

std::string subset_label(std::uint32_t mask) {
  std::string s = "{";
  for (int i = 0; i < 32; ++i)
    if (mask & (1u << i)) s += (s.size() > 1 ? "," : "") + std::to_string(i);
  return s + "}";
}

std::vector<int> bfs(const Graph& g, int source) {
  std::vector<int> dist(static_cast<std::size_t>(g.n()), -1);
  std::queue<int> q;
  dist[static_cast<std::size_t>(source)] = 0;
  q.push(source);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : g.neighbors(u))
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        q.push(w);
      }
  }
  return dist;
}

Eigen::MatrixXd adjacency(const Graph& g, const std::vector<int>& vertices) {
  const auto m = static_cast<Eigen::Index>(vertices.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      if (g.adjacent(vertices[static_cast<std::size_t>(i)], vertices[static_cast<std::size_t>(j)])) a(i, j) = 1;
  return a;
}

/// Ascending eigenvalues of a symmetric matrix.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  return solver.eigenvalues();
}

constexpr double kAssertTol = 1e-6;

}  // namespace

Graph::Graph(std::string name, int n, std::vector<std::pair<int, int>> edges, std::vector<std::string> labels)
    : name_(std::move(name)), adj_(static_cast<std::size_t>(n)), labels_(std::move(labels)) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  if (!labels_.empty() && labels_.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("label count differs from vertex count");
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    edges_.emplace_back(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("repeated edge");
  for (auto [u, v] : edges_) {
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

bool Graph::adjacent(int u, int v) const {
  const auto& list = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(list.begin(), list.end(), v);
}

std::optional<int> Graph::regular_degree() const {
  if (adj_.empty()) return 0;
  auto d = adj_.front().size();
  for (const auto& list : adj_)
    if (list.size() != d) return std::nullopt;
  return static_cast<int>(d);
}

Graph build_hamming(int d, int q) {
  if (d < 1 || q < 2) throw std::invalid_argument("Hamming graph needs d >= 1 and q >= 2");
  int n = 1;
  for (int i = 0; i < d; ++i) n *= q;
  auto digits = [&](int v) {
    std::vector<int> w(static_cast<std::size_t>(d));
    for (int i = d - 1; i >= 0; --i, v /= q) w[static_cast<std::size_t>(i)] = v % q;
    return w;
  };
  std::vector<std::pair<int, int>> edges;
  std::vector<std::string> labels;
  for (int u = 0; u < n; ++u) {
    auto wu = digits(u);
    std::string label;
    for (int x : wu) label += std::to_string(x);
    labels.push_back(label);
    for (int v = u + 1; v < n; ++v) {
      auto wv = digits(v);
      int diff = 0;
      for (std::size_t i = 0; i < wu.size(); ++i) diff += wu[i] != wv[i];
      if (diff == 1) edges.emplace_back(u, v);
    }
  }
  return Graph("H(" + std::to_string(d) + "," + std::to_string(q) + ")", n, std::move(edges), std::move(labels));
}

Graph build_johnson(int v, int k) {
  if (!(v > k && k >= 1) || v > 32) throw std::invalid_argument("Johnson graph needs 32 >= v > k >= 1");
  auto sets = subsets(v, k);
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (std::popcount(sets[i] & sets[j]) == k - 1) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
  std::vector<std::string> labels;
  for (auto s : sets) labels.push_back(subset_label(s));
  return Graph("J(" + std::to_string(v) + "," + std::to_string(k) + ")", static_cast<int>(sets.size()),
               std::move(edges), std::move(labels));
}

Graph build_odd(int m) {
  if (m < 2 || 2 * m - 1 > 32) throw std::invalid_argument("Odd graph needs 2 <= m <= 16");
  auto sets = subsets(2 * m - 1, m - 1);
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if ((sets[i] & sets[j]) == 0) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
  std::vector<std::string> labels;
  for (auto s : sets) labels.push_back(subset_label(s));
  return Graph("O" + std::to_string(m), static_cast<int>(sets.size()), std::move(edges), std::move(labels));
}

std::vector<std::string> witness_names() { return {"hamming", "johnson", "odd4"}; }

Graph witness_graph(const std::string& name) {
  if (name == "hamming") return build_hamming(3, 3);
  if (name == "johnson") return build_johnson(9, 3);
  if (name == "odd4") return build_odd(4);
  throw std::invalid_argument("unknown witness graph '" + name + "' (expected hamming, johnson or odd4)");
}

std::string to_string(const PartitionWitness& w) {
  std::ostringstream out;
  out << "vertices " << w.x << " and " << w.y << " at distance " << w.distance << ": " << w.parameter << "_"
      << w.distance << " = " << w.found << ", expected " << w.expected;
  return out.str();
}

DistancePartitionCheck verify_distance_regular(const Graph& g) {
  const int n = g.n();
  if (n == 0) throw DisconnectedGraph("empty graph");
  // counts[i] = {c_i, a_i, b_i} as first observed.
  std::vector<std::optional<std::array<std::int64_t, 3>>> counts;
  static const char* names[3] = {"c", "a", "b"};
  DistancePartitionCheck result;
  for (int x = 0; x < n; ++x) {
    auto dist = bfs(g, x);
    for (int y = 0; y < n; ++y) {
      int i = dist[static_cast<std::size_t>(y)];
      if (i < 0) throw DisconnectedGraph(g.name() + " is disconnected (" + std::to_string(x) + " cannot reach " +
                                         std::to_string(y) + ")");
      std::array<std::int64_t, 3> seen{0, 0, 0};
      for (int z : g.neighbors(y)) ++seen[static_cast<std::size_t>(dist[static_cast<std::size_t>(z)] - i + 1)];
      auto ui = static_cast<std::size_t>(i);
      if (ui >= counts.size()) counts.resize(ui + 1);
      if (!counts[ui]) {
        counts[ui] = seen;
        continue;
      }
      for (std::size_t t = 0; t < 3; ++t)
        if (seen[t] != (*counts[ui])[t]) {
          result.witness = PartitionWitness{x, y, i, names[t], (*counts[ui])[t], seen[t]};
          return result;
        }
    }
  }
  IntersectionArray arr;
  const int d = static_cast<int>(counts.size()) - 1;
  for (int i = 0; i < d; ++i) arr.b.push_back((*counts[static_cast<std::size_t>(i)])[2]);
  for (int i = 1; i <= d; ++i) arr.c.push_back((*counts[static_cast<std::size_t>(i)])[0]);
  result.array = arr;
  return result;
}

int max_coclique(const Graph& g, const std::vector<int>& vertices) {
  const std::size_t m = vertices.size();
  if (m > 64) throw std::invalid_argument("max_coclique supports at most 64 vertices");
  std::vector<std::uint64_t> nbr(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j && g.adjacent(vertices[i], vertices[j])) nbr[i] |= std::uint64_t{1} << j;
  int best = 0;
  std::function<void(std::uint64_t, int)> grow = [&](std::uint64_t candidates, int size) {
    if (candidates == 0) {
      best = std::max(best, size);
      return;
    }
    if (size + std::popcount(candidates) <= best) return;
    // Branch on the candidate with most candidate neighbours: take it or drop it.
    int pick = -1, most = -1;
    for (std::uint64_t c = candidates; c; c &= c - 1) {
      int v = std::countr_zero(c);
      int deg = std::popcount(nbr[static_cast<std::size_t>(v)] & candidates);
      if (deg > most) {
        most = deg;
        pick = v;
      }
    }
    std::uint64_t bit = std::uint64_t{1} << pick;
    grow(candidates & ~bit & ~nbr[static_cast<std::size_t>(pick)], size + 1);
    if (most > 0) grow(candidates & ~bit, size);
  };
  grow(m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1, 0);
  return best;
}

CocliqueReport coclique_bound_check(const Graph& g, const IntersectionArray& arr) {
  if (arr.diameter() < 2) throw std::invalid_argument("co-clique check needs diameter >= 2");
  CocliqueReport r;
  const std::int64_t k = arr.k(), a1 = arr.a_at(1), c2 = arr.c_at(2);
  r.min_max_coclique = g.n() > 0 ? static_cast<int>(k) + 1 : 0;
  for (int x = 0; x < g.n(); ++x) {
    int s_max = max_coclique(g, g.neighbors(x));
    r.min_max_coclique = std::min(r.min_max_coclique, s_max);
    r.max_max_coclique = std::max(r.max_max_coclique, s_max);
    if (static_cast<std::int64_t>(s_max) * (a1 + 1) < k) {
      r.ok = false;
      r.failures.push_back("vertex " + std::to_string(x) + ": max co-clique " + std::to_string(s_max) +
                           " < k/(a1+1)");
    }
    for (std::int64_t s = 2; s <= s_max; ++s) {
      BigRational rhs = make_rational(BigInt(static_cast<long>(s * (a1 + 1) - k)), BigInt(static_cast<long>(s * (s - 1) / 2)));
      if (BigRational(c2 - 1) < rhs) {
        r.ok = false;
        r.failures.push_back("vertex " + std::to_string(x) + ", s = " + std::to_string(s) + ": c2-1 < " + to_string(rhs));
      }
    }
  }
  return r;
}

InterlacingReport interlacing_check(const Graph& g, const IntersectionArray& arr, int samples) {
  if (arr.diameter() != 3) throw UnsupportedDiameter("interlacing check needs diameter 3");
  InterlacingReport r;
  auto theta = eigenvalues(arr);
  r.theta1 = theta[1].approx();
  const double a1 = static_cast<double>(arr.a_at(1)), k = static_cast<double>(arr.k());
  r.lower_bound = std::min((a1 + std::sqrt(a1 * a1 + 4 * k)) / 2, static_cast<double>(arr.a_at(3)));
  if (r.theta1 < r.lower_bound - kAssertTol) {
    r.ok = false;
    r.failures.push_back("theta1 below min{(a1+sqrt(a1^2+4k))/2, a3}");
  }
  const int count = std::min(samples, g.n());
  for (int t = 0; t < count; ++t) {
    int x = static_cast<int>(static_cast<long>(t) * g.n() / std::max(count, 1));
    auto dist = bfs(g, x);
    std::vector<int> vs;
    for (int y = 0; y < g.n(); ++y) {
      int d = dist[static_cast<std::size_t>(y)];
      if (d == 0 || d == 1 || d == 3) vs.push_back(y);
    }
    auto ev = symmetric_eigenvalues(adjacency(g, vs));
    double second = ev.size() >= 2 ? ev(ev.size() - 2) : ev(0);
    r.second_largest.push_back(second);
    if (second > r.theta1 + kAssertTol) {
      r.ok = false;
      r.failures.push_back("vertex " + std::to_string(x) + ": second eigenvalue " + std::to_string(second) +
                           " exceeds theta1");
    }
  }
  return r;
}

SpectrumComparison spectrum_check(const Graph& g, const IntersectionArray& arr) {
  SpectrumComparison r;
  std::vector<int> all(static_cast<std::size_t>(g.n()));
  std::iota(all.begin(), all.end(), 0);
  auto ev = symmetric_eigenvalues(adjacency(g, all));
  for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
    if (!r.numeric.empty() && std::abs(r.numeric.back().first - ev(i)) < kAssertTol)
      ++r.numeric.back().second;
    else
      r.numeric.emplace_back(ev(i), 1);
  }
  SpectrumData spec = compute_spectrum(arr);
  if (spec.theta.size() != r.numeric.size()) {
    r.ok = false;
    r.failures.push_back(std::to_string(r.numeric.size()) + " distinct numerical eigenvalues, " +
                         std::to_string(spec.theta.size()) + " from the array");
    return r;
  }
  for (std::size_t i = 0; i < spec.theta.size(); ++i) {
    double exact = spec.theta[i]->approx();
    const auto& m = spec.multiplicities[i];
    if (std::abs(exact - r.numeric[i].first) > kAssertTol) {
      r.ok = false;
      r.failures.push_back("eigenvalue " + spec.theta[i]->to_string() + " vs " + std::to_string(r.numeric[i].first));
    }
    if (!m.integer || *m.integer != r.numeric[i].second) {
      r.ok = false;
      r.failures.push_back("multiplicity of " + spec.theta[i]->to_string() + ": " + m.to_string() + " vs " +
                           std::to_string(r.numeric[i].second));
    }
  }
  return r;
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace drg
