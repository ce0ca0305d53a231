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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "simonq/errors.hpp"
#include "simonq/layout.hpp"
#include "simonq/oracle.hpp"

using namespace simonq;

TEST_CASE("square grids") {
  const auto g = square_grid(10, 12);
  CHECK(g.qubit_count() == 120);
  CHECK(g.edges().size() == 218);
  CHECK(g.max_degree() == 4);
  CHECK(square_grid(1, 1).qubit_count() == 1);
  CHECK(square_grid(1, 1).edges().empty());
  const auto line = square_grid(1, 5);
  CHECK(line.edges().size() == 4);
  CHECK(line.max_degree() == 2);
  CHECK(parse_device("grid:3x4").qubit_count() == 12);
  CHECK_THROWS_AS(parse_device("grid:3by4"), InvalidArgument);
  CHECK_THROWS_AS(square_grid(0, 3), InvalidArgument);
}

TEST_CASE("heavy-hex lattices") {
  const auto boston = heavy_hex("boston-156");
  CHECK(boston.qubit_count() == 156);
  CHECK(boston.max_degree() == 3);
  CHECK(boston.family() == GraphFamily::HeavyHex);
  CHECK(parse_device("heavy-hex:boston-156").qubit_count() == 156);
  CHECK_THROWS_AS(heavy_hex("x"), InvalidArgument);

  // One hexagonal cell: two rows of five joined by two rung qubits.
  const auto cell = heavy_hex(HeavyHexShape{2, 5, 0, 0, 4});
  CHECK(cell.qubit_count() == 12);
  CHECK(cell.edges().size() == 12);
  for (int q = 0; q < 12; ++q) CHECK(cell.neighbors(q).size() == 2);
}

TEST_CASE("graph families") {
  CHECK(parse_family(family_name(GraphFamily::HeavyHex)) == GraphFamily::HeavyHex);
  CHECK(parse_family(family_name(GraphFamily::SquareGrid)) == GraphFamily::SquareGrid);
  CHECK(parse_family(family_name(GraphFamily::Custom)) == GraphFamily::Custom);
  CHECK_THROWS(parse_family("torus"));
}

TEST_CASE("linear chains") {
  const auto grid = square_grid(10, 12);
  const auto snake = find_linear_chain(grid, 120);
  CHECK(snake.size() == 120);
  CHECK(is_simple_path(grid, snake));

  const auto boston = heavy_hex("boston-156");
  const auto chain = find_linear_chain(boston, 129);
  CHECK(chain.size() >= 129);
  CHECK(is_simple_path(boston, chain));

  try {
    find_linear_chain(square_grid(2, 2), 5);
    FAIL("expected ChainNotFound");
  } catch (const ChainNotFound& e) {
    CHECK(e.longest().size() == 4);
    CHECK(is_simple_path(square_grid(2, 2), e.longest()));
  }

  // Custom graph: a 3x3 grid without its family tag still has a Hamiltonian path.
  const auto plain = CouplingGraph(9, square_grid(3, 3).edges());
  const auto found = find_linear_chain(plain, 9, 5);
  CHECK(found.size() == 9);
  CHECK(is_simple_path(plain, found));

  // Star graph: no path longer than 3.
  const CouplingGraph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  CHECK_THROWS_AS(find_linear_chain(star, 4), ChainNotFound);
  CHECK(find_linear_chain(star, 3).size() == 3);
}

TEST_CASE("is_simple_path rejects repeats and non-edges") {
  const auto g = square_grid(2, 2);
  CHECK(is_simple_path(g, {0, 1, 3, 2}));
  CHECK_FALSE(is_simple_path(g, {0, 3}));
  CHECK_FALSE(is_simple_path(g, {0, 1, 0}));
}

TEST_CASE("embedding on a 10x12 grid at n=60, w=3") {
  const auto g = square_grid(10, 12);
  const auto e = embed_query(60, 3, g);
  CHECK_FALSE(e.isolated);
  std::set<int> used(e.map.begin(), e.map.end());
  CHECK(used.size() == 120);
  for (int i = 1; i <= 3; ++i) CHECK(verify_swap_free(e, g, QueryCircuit(build_constant_depth_oracle(60, i))));
}

TEST_CASE("embedding on boston at n=65, w=65") {
  const auto g = heavy_hex("boston-156");
  const auto e = embed_query(65, 65, g);
  CHECK(e.chain.size() == 129);
  REQUIRE(e.isolated);
  for (int i : {1, 2, 33, 64, 65}) {
    const auto map = e.logical_map(i);
    CHECK(std::set<int>(map.begin(), map.end()).size() == 130);
    CHECK(map[ancilla_wire(65, 65 - i)] == *e.isolated);
    CHECK(verify_swap_free(e, g, QueryCircuit(build_constant_depth_oracle(65, i))));
  }
  CHECK_THROWS_AS(embed_query(66, 66, g), ChainNotFound);
  CHECK_THROWS_AS(embed_query(65, 64, g), ChainNotFound);
}

TEST_CASE("small embeddings") {
  const auto g = square_grid(3, 4);
  const auto e = embed_query(5, 5, g);
  CHECK(verify_swap_free(e, g, QueryCircuit(build_constant_depth_oracle(5, 5))));

  auto swapped = e.map;
  std::swap(swapped[data_wire(5, 1)], swapped[ancilla_wire(5, 3)]);
  CHECK_FALSE(verify_swap_free(swapped, g, QueryCircuit(build_constant_depth_oracle(5, 5))));

  CHECK(verify_swap_free(e.map, g, QueryCircuit(CnotCircuit(5))));
  std::vector<int> partial(e.map.begin(), e.map.end());
  partial[0] = -1;
  CHECK_THROWS_AS(verify_swap_free(partial, g, QueryCircuit(build_constant_depth_oracle(5, 5))), InvalidArgument);

  // Three qubits in a line cannot host n=2.
  CHECK_THROWS_AS(embed_query(2, 2, square_grid(1, 3)), ChainNotFound);
  CHECK_THROWS_AS(embed_query(3, 4, g), InvalidArgument);
}

TEST_CASE("embedding failure reports the longest chain") {
  try {
    embed_query(70, 70, square_grid(10, 12));
    FAIL("expected ChainNotFound");
  } catch (const ChainNotFound& e) {
    CHECK(e.longest().size() == 120);
  }
}

TEST_CASE("interaction components of the canonical oracle") {
  // b = 00011: boxes (d0,a0), (d1,a1), (d2,a2), then d3, d4, a4 joined; a3 alone.
  const auto comps = interaction_components(build_constant_depth_oracle(5, 2));
  CHECK(comps.size() == 5);
  std::size_t largest = 0;
  for (const auto& c : comps) largest = std::max(largest, c.size());
  CHECK(largest == 3);
}
