#include "flow/graph.hpp"

#include <istream>
#include <map>
#include <queue>
#include <sstream>

namespace flow {

QuotientGraph QuotientGraph::from_edges(const std::vector<std::pair<std::string, std::string>>& edges) {
  QuotientGraph G;
  std::map<std::string, int> id;
  auto get = [&](const std::string& s) {
    auto [it, fresh] = id.emplace(s, static_cast<int>(G.names_.size()));
    if (fresh) {
      G.names_.push_back(s);
      G.out_.emplace_back();
    }
    return it->second;
  };
  for (const auto& [a, b] : edges) {
    if (a == b) throw GraphError("loop at vertex " + a);
    const int u = get(a), v = get(b);
    G.out_[u].push_back(static_cast<int>(G.tail_.size()));
    G.tail_.push_back(u);
    G.out_[v].push_back(static_cast<int>(G.tail_.size()));
    G.tail_.push_back(v);
  }
  if (G.names_.empty()) throw GraphError("empty graph");
  for (int v = 0; v < G.num_vertices(); ++v)
    if (G.degree(v) < 3) throw GraphError("vertex " + G.names_[v] + " has degree < 3 (flow is degenerate)");
  for (int d : G.distances_from(0))
    if (d < 0) throw GraphError("graph is not connected");
  return G;
}

QuotientGraph QuotientGraph::parse(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ss(line);
    std::string a, b, extra;
    if (!(ss >> a)) continue;
    if (!(ss >> b) || (ss >> extra)) throw GraphError("line " + std::to_string(lineno) + ": expected 'u v'");
    edges.emplace_back(a, b);
  }
  return from_edges(edges);
}

QuotientGraph QuotientGraph::complete(int n) {
  std::vector<std::pair<std::string, std::string>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(std::to_string(i), std::to_string(j));
  return from_edges(e);
}

QuotientGraph QuotientGraph::petersen() {
  std::vector<std::pair<std::string, std::string>> e;
  auto s = [](int i) { return std::to_string(i); };
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(s(i), s((i + 1) % 5));
    e.emplace_back(s(i), s(i + 5));
    e.emplace_back(s(i + 5), s((i + 2) % 5 + 5));
  }
  return from_edges(e);
}

int QuotientGraph::vertex(const std::string& name) const {
  for (int v = 0; v < num_vertices(); ++v)
    if (names_[v] == name) return v;
  throw GraphError("unknown vertex " + name);
}

int QuotientGraph::dart(int u, int v) const {
  for (int e : out_[u])
    if (head(e) == v) return e;
  throw GraphError("no edge " + names_[u] + " - " + names_[v]);
}

std::vector<int> QuotientGraph::distances_from(int v) const {
  std::vector<int> d(num_vertices(), -1);
  std::queue<int> Q;
  d[v] = 0;
  Q.push(v);
  while (!Q.empty()) {
    int u = Q.front();
    Q.pop();
    for (int e : out_[u])
      if (d[head(e)] < 0) d[head(e)] = d[u] + 1, Q.push(head(e));
  }
  return d;
}

Cycle Cycle::from_vertices(const QuotientGraph& G, const std::vector<std::string>& vs) {
  std::vector<int> ids;
  for (const auto& s : vs) ids.push_back(G.vertex(s));
  return from_vertices(G, ids);
}

Cycle Cycle::from_vertices(const QuotientGraph& G, const std::vector<int>& vs) {
  const int L = static_cast<int>(vs.size());
  if (L < 3) throw GraphError("cycle needs at least 3 vertices");
  Cycle c;
  std::vector<int> used;
  for (int i = 0; i < L; ++i) {
    const int e = G.dart(vs[i], vs[(i + 1) % L]);
    for (int f : used)
      if ((f >> 1) == (e >> 1)) throw GraphError("cycle repeats an edge");
    used.push_back(e);
    c.darts.push_back(e);
  }
  for (int i = 0; i < L; ++i)
    if (c.darts[(i + 1) % L] == QuotientGraph::reversal(c.darts[i])) throw GraphError("cycle backtracks");
  return c;
}

}  // namespace flow
