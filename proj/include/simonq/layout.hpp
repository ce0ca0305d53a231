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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "simonq/circuit.hpp"
#include "simonq/errors.hpp"

namespace simonq {

enum class GraphFamily { HeavyHex, SquareGrid, Custom };
const char* family_name(GraphFamily f);
GraphFamily parse_family(std::string_view name);

struct GridShape {
  int rows;
  int cols;
};

/// Heavy-hex lattice as long rows joined by bridge ("rung") qubits.
///
/// `rows` rows of `row_length` qubits; between row r and r+1 a bridge qubit
/// sits at every column c = offset + k * period (< row_length), where the
/// offset alternates between `even_offset` (r even) and `odd_offset`.
/// Numbering is row-major with each bridge row following its upper row.
struct HeavyHexShape {
  int rows;
  int row_length;
  int even_offset;
  int odd_offset;
  int period = 4;
};

class CouplingGraph {
 public:
  CouplingGraph() = default;
  CouplingGraph(int qubit_count, std::vector<std::pair<int, int>> edges,
                GraphFamily family = GraphFamily::Custom);

  int qubit_count() const { return qubit_count_; }
  GraphFamily family() const { return family_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int q) const { return adjacency_[q]; }
  bool has_edge(int u, int v) const;
  int max_degree() const;

  const std::optional<GridShape>& grid_shape() const { return grid_; }
  const std::optional<HeavyHexShape>& heavy_hex_shape() const { return heavy_hex_; }
  void set_shape(GridShape s) { grid_ = s; }
  void set_shape(HeavyHexShape s) { heavy_hex_ = s; }

 private:
  int qubit_count_ = 0;
  GraphFamily family_ = GraphFamily::Custom;
  std::vector<std::pair<int, int>> edges_;  // u < v, sorted
  std::vector<std::vector<int>> adjacency_;
  std::optional<GridShape> grid_;
  std::optional<HeavyHexShape> heavy_hex_;
};

CouplingGraph square_grid(int rows, int cols);
CouplingGraph heavy_hex(const HeavyHexShape& shape);
/// Named preset; currently "boston-156".
CouplingGraph heavy_hex(std::string_view preset);
/// "grid:RxC", "heavy-hex:PRESET"; anything else is rejected.
CouplingGraph parse_device(std::string_view spec);

class ChainNotFound : public Error {
 public:
  ChainNotFound(const std::string& what, std::vector<int> longest)
      : Error(what), longest_(std::move(longest)) {}
  const std::vector<int>& longest() const { return longest_; }

 private:
  std::vector<int> longest_;
};

/// True if `chain` is a simple path of `graph`.
bool is_simple_path(const CouplingGraph& graph, const std::vector<int>& chain);

/// Simple path with at least `length` qubits.
///
/// Square grids use a boustrophedon snake over every qubit; heavy-hex
/// lattices a row snake through bridge qubits; other graphs a seeded
/// depth-first search with restarts. Throws ChainNotFound carrying the
/// longest path seen.
std::vector<int> find_linear_chain(const CouplingGraph& graph, int length, std::uint64_t seed = 0);

/// Placement of a size-n query circuit on a linear chain.
///
/// With a chain of 2n qubits the logical order a_0, d_0, a_1, d_1, ...,
/// a_{n-1}, d_{n-1} serves every Hamming-weight class. With only 2n-1
/// chain qubits plus one isolated qubit, the class-i idle ancilla a_{n-i}
/// goes on the isolated qubit and the rest stay in chain order.
struct ChainEmbedding {
  int n = 0;
  int w = 0;
  std::vector<int> chain;
  std::optional<int> isolated;
  /// Default wire -> physical qubit map (class i = w when isolated is set).
  std::vector<int> map;

  /// Map used for circuits of Hamming weight `hw`.
  std::vector<int> logical_map(int hw) const;
};

ChainEmbedding embed_query(int n, int w, const CouplingGraph& graph, std::uint64_t seed = 0);

/// True if every two-wire gate of `circuit` lands on an edge.
bool verify_swap_free(const std::vector<int>& wire_map, const CouplingGraph& graph,
                      const QueryCircuit& circuit);
bool verify_swap_free(const ChainEmbedding& embedding, const CouplingGraph& graph,
                      const QueryCircuit& circuit);

/// Connected components (as wire lists) of the interaction graph of a CNOT
/// circuit; isolated wires form singleton components.
std::vector<std::vector<int>> interaction_components(const CnotCircuit& circuit);

}  // namespace simonq
