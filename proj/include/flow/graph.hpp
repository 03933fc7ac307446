#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flow {

struct GraphError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Finite connected multigraph with every edge split into two darts; dart e has reversal e ^ 1.
class QuotientGraph {
 public:
  // Edges given by vertex names. Rejects loops, disconnected graphs and vertices of degree < 3.
  static QuotientGraph from_edges(const std::vector<std::pair<std::string, std::string>>& edges);
  // One edge "u v" per line; blank lines and '#' comments ignored.
  static QuotientGraph parse(std::istream& in);
  static QuotientGraph complete(int n);
  static QuotientGraph petersen();

  int num_vertices() const { return static_cast<int>(names_.size()); }
  int num_darts() const { return static_cast<int>(tail_.size()); }
  int tail(int e) const { return tail_[e]; }
  int head(int e) const { return tail_[e ^ 1]; }
  static int reversal(int e) { return e ^ 1; }
  const std::vector<int>& out(int v) const { return out_[v]; }
  int degree(int v) const { return static_cast<int>(out_[v].size()); }
  const std::string& name(int v) const { return names_[v]; }
  int vertex(const std::string& name) const;  // throws GraphError if unknown
  // First dart from u to v.
  int dart(int u, int v) const;
  std::vector<int> distances_from(int v) const;

 private:
  std::vector<std::string> names_;
  std::vector<int> tail_;
  std::vector<std::vector<int>> out_;
};

// Closed non-backtracking loop of L >= 3 darts with pairwise distinct undirected edges.
struct Cycle {
  std::vector<int> darts;
  int length() const { return static_cast<int>(darts.size()); }
  // From an ordered vertex list v0 .. v_{L-1}; the loop closes back to v0.
  static Cycle from_vertices(const QuotientGraph& G, const std::vector<std::string>& vs);
  static Cycle from_vertices(const QuotientGraph& G, const std::vector<int>& vs);
};

}  // namespace flow
