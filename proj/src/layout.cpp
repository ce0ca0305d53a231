// Copyright 2026 The simonq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "simonq/layout.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include "simonq/rng.hpp"

namespace simonq {

const char* family_name(GraphFamily f) {
  switch (f) {
    case GraphFamily::HeavyHex: return "heavy-hex";
    case GraphFamily::SquareGrid: return "square-grid";
    case GraphFamily::Custom: return "custom";
  }
  return "custom";
}

GraphFamily parse_family(std::string_view name) {
  if (name == "heavy-hex") return GraphFamily::HeavyHex;
  if (name == "square-grid") return GraphFamily::SquareGrid;
  if (name == "custom") return GraphFamily::Custom;
  throw ConfigError("unknown graph family \"" + std::string(name) + "\"");
}

CouplingGraph::CouplingGraph(int qubit_count, std::vector<std::pair<int, int>> edges, GraphFamily family)
    : qubit_count_(qubit_count), family_(family), adjacency_(static_cast<std::size_t>(qubit_count)) {
  if (qubit_count < 0) throw InvalidArgument("negative qubit count");
  std::set<std::pair<int, int>> unique;
  for (auto [u, v] : edges) {
    if (u == v) throw InvalidArgument("self-loop on qubit " + std::to_string(u));
    if (u < 0 || v < 0 || u >= qubit_count || v >= qubit_count) {
      throw InvalidArgument("edge references qubit outside [0, " + std::to_string(qubit_count) + ")");
    }
    unique.insert(std::minmax(u, v));
  }
  edges_.assign(unique.begin(), unique.end());
  for (auto [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool CouplingGraph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= qubit_count_ || v >= qubit_count_) return false;
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

int CouplingGraph::max_degree() const {
  std::size_t d = 0;
  for (const auto& list : adjacency_) d = std::max(d, list.size());
  return static_cast<int>(d);
}

CouplingGraph square_grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw InvalidArgument("grid dimensions must be >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int q = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(q, q + 1);
      if (r + 1 < rows) edges.emplace_back(q, q + cols);
    }
  }
  CouplingGraph g(rows * cols, std::move(edges), GraphFamily::SquareGrid);
  g.set_shape(GridShape{rows, cols});
  return g;
}

namespace {

std::vector<int> bridge_columns(const HeavyHexShape& s, int gap) {
  std::vector<int> cols;
  for (int c = (gap % 2 == 0) ? s.even_offset : s.odd_offset; c < s.row_length; c += s.period) {
    cols.push_back(c);
  }
  return cols;
}

// Qubit ids of a heavy-hex lattice: row_ids[r][c] and bridge_ids[g][k].
struct HeavyHexIds {
  std::vector<std::vector<int>> row;
  std::vector<std::vector<int>> bridge;
  int total = 0;
};

HeavyHexIds number_heavy_hex(const HeavyHexShape& s) {
  HeavyHexIds ids;
  for (int r = 0; r < s.rows; ++r) {
    ids.row.emplace_back();
    for (int c = 0; c < s.row_length; ++c) ids.row.back().push_back(ids.total++);
    if (r + 1 < s.rows) {
      ids.bridge.emplace_back();
      for ([[maybe_unused]] int c : bridge_columns(s, r)) ids.bridge.back().push_back(ids.total++);
    }
  }
  return ids;
}

}  // namespace

CouplingGraph heavy_hex(const HeavyHexShape& s) {
  if (s.rows < 1 || s.row_length < 1 || s.period < 2 || s.even_offset < 0 || s.odd_offset < 0) {
    throw InvalidArgument("invalid heavy-hex parameters");
  }
  const auto ids = number_heavy_hex(s);
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < s.rows; ++r) {
    for (int c = 0; c + 1 < s.row_length; ++c) edges.emplace_back(ids.row[r][c], ids.row[r][c + 1]);
    if (r + 1 < s.rows) {
      const auto cols = bridge_columns(s, r);
      for (std::size_t k = 0; k < cols.size(); ++k) {
        edges.emplace_back(ids.row[r][cols[k]], ids.bridge[r][k]);
        edges.emplace_back(ids.bridge[r][k], ids.row[r + 1][cols[k]]);
      }
    }
  }
  CouplingGraph g(ids.total, std::move(edges), GraphFamily::HeavyHex);
  g.set_shape(s);
  return g;
}

CouplingGraph heavy_hex(std::string_view preset) {
  // 8 rows of 16 plus 7 bridge rows of 4: 156 qubits.
  if (preset == "boston-156") return heavy_hex(HeavyHexShape{8, 16, 3, 1, 4});
  throw InvalidArgument("unknown heavy-hex preset \"" + std::string(preset) + "\"");
}

CouplingGraph parse_device(std::string_view spec) {
  if (spec.starts_with("grid:")) {
    const auto dims = spec.substr(5);
    const auto x = dims.find('x');
    int rows = 0;
    int cols = 0;
    if (x == std::string_view::npos ||
        std::from_chars(dims.data(), dims.data() + x, rows).ec != std::errc{} ||
        std::from_chars(dims.data() + x + 1, dims.data() + dims.size(), cols).ec != std::errc{}) {
      throw InvalidArgument("grid device must look like grid:ROWSxCOLS");
    }
    return square_grid(rows, cols);
  }
  if (spec.starts_with("heavy-hex:")) return heavy_hex(spec.substr(10));
  throw InvalidArgument("unknown device \"" + std::string(spec) + "\"");
}

bool is_simple_path(const CouplingGraph& graph, const std::vector<int>& chain) {
  std::set<int> seen;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    if (chain[k] < 0 || chain[k] >= graph.qubit_count()) return false;
    if (!seen.insert(chain[k]).second) return false;
    if (k > 0 && !graph.has_edge(chain[k - 1], chain[k])) return false;
  }
  return true;
}

namespace {

std::vector<int> grid_snake(const GridShape& s) {
  std::vector<int> chain;
  chain.reserve(static_cast<std::size_t>(s.rows * s.cols));
  for (int r = 0; r < s.rows; ++r) {
    for (int k = 0; k < s.cols; ++k) {
      const int c = (r % 2 == 0) ? k : s.cols - 1 - k;
      chain.push_back(r * s.cols + c);
    }
  }
  return chain;
}

std::vector<int> heavy_hex_snake(const HeavyHexShape& s) {
  const auto ids = number_heavy_hex(s);
  std::vector<int> chain;
  auto walk_row = [&](int r, int from, int to) {
    const int step = from <= to ? 1 : -1;
    for (int c = from;; c += step) {
      chain.push_back(ids.row[r][c]);
      if (c == to) break;
    }
  };
  const int last = s.row_length - 1;
  if (s.rows == 1) {
    walk_row(0, 0, last);
    return chain;
  }

  // Row 0: pick the exit bridge leaving the longest run from a row end.
  const auto first_cols = bridge_columns(s, 0);
  if (first_cols.empty()) {
    walk_row(0, 0, last);
    return chain;
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < first_cols.size(); ++k) {
    auto reach = [&](int c) { return std::max(c, last - c); };
    if (reach(first_cols[k]) > reach(first_cols[best])) best = k;
  }
  int exit_col = first_cols[best];
  walk_row(0, exit_col >= last - exit_col ? 0 : last, exit_col);
  chain.push_back(ids.bridge[0][best]);

  for (int r = 1; r < s.rows; ++r) {
    const int entry = exit_col;
    if (r + 1 == s.rows) {
      walk_row(r, entry, entry >= last - entry ? 0 : last);
      break;
    }
    const auto cols = bridge_columns(s, r);
    if (cols.empty()) {
      walk_row(r, entry, entry >= last - entry ? 0 : last);
      break;
    }
    best = 0;
    for (std::size_t k = 1; k < cols.size(); ++k) {
      if (std::abs(cols[k] - entry) > std::abs(cols[best] - entry)) best = k;
    }
    exit_col = cols[best];
    walk_row(r, entry, exit_col);
    chain.push_back(ids.bridge[r][best]);
  }
  return chain;
}

// Warnsdorff-style greedy walk from both ends, restarted from seeded
// random starting qubits.
std::vector<int> dfs_chain(const CouplingGraph& g, int length, std::uint64_t seed) {
  const int nq = g.qubit_count();
  std::vector<int> best;
  if (nq == 0) return best;
  SeededRng rng(seed, 0x636861696eull);
  const int restarts = std::max(64, 4 * nq);
  std::vector<char> used(static_cast<std::size_t>(nq));

  auto free_degree = [&](int q) {
    int d = 0;
    for (int v : g.neighbors(q)) d += used[v] ? 0 : 1;
    return d;
  };
  auto extend = [&](std::vector<int>& path) {
    while (true) {
      const int tail = path.back();
      int pick = -1;
      int pick_deg = 0;
      std::uint64_t pick_tie = 0;
      for (int v : g.neighbors(tail)) {
        if (used[v]) continue;
        const int d = free_degree(v);
        const std::uint64_t tie = rng.next();
        if (pick < 0 || d < pick_deg || (d == pick_deg && tie < pick_tie)) {
          pick = v;
          pick_deg = d;
          pick_tie = tie;
        }
      }
      if (pick < 0) return;
      used[pick] = 1;
      path.push_back(pick);
    }
  };

  for (int attempt = 0; attempt < restarts; ++attempt) {
    std::fill(used.begin(), used.end(), 0);
    const int start = attempt < nq ? attempt : static_cast<int>(rng.below(static_cast<std::uint64_t>(nq)));
    std::vector<int> path{start};
    used[start] = 1;
    extend(path);
    std::reverse(path.begin(), path.end());
    extend(path);
    if (path.size() > best.size()) best = std::move(path);
    if (static_cast<int>(best.size()) >= length) break;
  }
  return best;
}

}  // namespace

std::vector<int> find_linear_chain(const CouplingGraph& graph, int length, std::uint64_t seed) {
  if (length < 1) throw InvalidArgument("chain length must be >= 1");
  std::vector<int> chain;
  if (graph.family() == GraphFamily::SquareGrid && graph.grid_shape()) {
    chain = grid_snake(*graph.grid_shape());
  } else if (graph.family() == GraphFamily::HeavyHex && graph.heavy_hex_shape()) {
    chain = heavy_hex_snake(*graph.heavy_hex_shape());
  } else {
    chain = dfs_chain(graph, length, seed);
  }
  if (static_cast<int>(chain.size()) < length) {
    throw ChainNotFound("no linear chain of " + std::to_string(length) + " qubits; longest found has " +
                            std::to_string(chain.size()),
                        std::move(chain));
  }
  return chain;
}

std::vector<int> ChainEmbedding::logical_map(int hw) const {
  if (!isolated || hw == 0) return map;
  if (hw < 1 || hw > n) throw InvalidArgument("class weight outside [1, n]");
  const int idle = n - hw;
  std::vector<int> out(static_cast<std::size_t>(2 * n), -1);
  std::size_t k = 0;
  for (int j = 0; j < idle; ++j) {
    out[ancilla_wire(n, j)] = chain[k++];
    out[data_wire(n, j)] = chain[k++];
  }
  out[data_wire(n, idle)] = chain[k++];
  for (int j = idle + 1; j < n; ++j) {
    out[ancilla_wire(n, j)] = chain[k++];
    out[data_wire(n, j)] = chain[k++];
  }
  out[ancilla_wire(n, idle)] = *isolated;
  return out;
}

ChainEmbedding embed_query(int n, int w, const CouplingGraph& graph, std::uint64_t seed) {
  if (n < 1 || w < 1 || w > n) throw InvalidArgument("embedding needs 1 <= w <= n");
  ChainEmbedding e;
  e.n = n;
  e.w = w;
  if (2 * n > graph.qubit_count()) {
    std::vector<int> longest;
    try {
      longest = find_linear_chain(graph, std::max(graph.qubit_count(), 1), seed);
    } catch (const ChainNotFound& e) {
      longest = e.longest();
    }
    throw ChainNotFound("device has " + std::to_string(graph.qubit_count()) + " qubits, query needs " +
                            std::to_string(2 * n),
                        std::move(longest));
  }

  std::vector<int> chain;
  try {
    chain = find_linear_chain(graph, 2 * n, seed);
  } catch (const ChainNotFound& full) {
    if (w < n) throw;
    chain = find_linear_chain(graph, 2 * n - 1, seed);
    chain.resize(static_cast<std::size_t>(2 * n - 1));
    std::vector<char> on_chain(static_cast<std::size_t>(graph.qubit_count()), 0);
    for (int q : chain) on_chain[q] = 1;
    // A leftover neighbour of either end completes a full chain.
    for (int v : graph.neighbors(chain.front())) {
      if (!on_chain[v]) {
        chain.insert(chain.begin(), v);
        break;
      }
    }
    if (static_cast<int>(chain.size()) < 2 * n) {
      for (int v : graph.neighbors(chain.back())) {
        if (!on_chain[v]) {
          chain.push_back(v);
          break;
        }
      }
    }
    if (static_cast<int>(chain.size()) < 2 * n) {
      for (int q = 0; q < graph.qubit_count(); ++q) {
        if (!on_chain[q]) {
          e.isolated = q;
          break;
        }
      }
    }
  }
  chain.resize(static_cast<std::size_t>(e.isolated ? 2 * n - 1 : 2 * n));
  e.chain = std::move(chain);

  if (e.isolated) {
    e.map = e.logical_map(n);
  } else {
    e.map.assign(static_cast<std::size_t>(2 * n), -1);
    for (int j = 0; j < n; ++j) {
      e.map[ancilla_wire(n, j)] = e.chain[2 * j];
      e.map[data_wire(n, j)] = e.chain[2 * j + 1];
    }
  }
  return e;
}

bool verify_swap_free(const std::vector<int>& wire_map, const CouplingGraph& graph, const QueryCircuit& circuit) {
  if (static_cast<int>(wire_map.size()) < circuit.wires()) {
    throw InvalidArgument("embedding does not cover every circuit wire");
  }
  for (const auto& g : circuit.oracle().gates()) {
    const int u = wire_map[g.control];
    const int v = wire_map[g.target];
    if (u < 0 || v < 0) throw InvalidArgument("unmapped wire in embedding");
    if (!graph.has_edge(u, v)) return false;
  }
  return true;
}

bool verify_swap_free(const ChainEmbedding& embedding, const CouplingGraph& graph, const QueryCircuit& circuit) {
  if (circuit.n() != embedding.n) throw InvalidArgument("embedding and circuit sizes differ");
  return verify_swap_free(embedding.logical_map(circuit.oracle().hw()), graph, circuit);
}

std::vector<std::vector<int>> interaction_components(const CnotCircuit& circuit) {
  std::vector<int> parent(static_cast<std::size_t>(circuit.wires()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : circuit.gates()) parent[find(g.control)] = find(g.target);
  std::vector<std::vector<int>> groups(parent.size());
  for (int w = 0; w < circuit.wires(); ++w) groups[find(w)].push_back(w);
  std::vector<std::vector<int>> out;
  for (auto& grp : groups) {
    if (!grp.empty()) out.push_back(std::move(grp));
  }
  return out;
}

}  // namespace simonq
