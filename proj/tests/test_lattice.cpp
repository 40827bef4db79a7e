#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "dimerlab/lattice.hpp"

using dimerlab::hypercube;
using dimerlab::LatticeSpec;
using dimerlab::validation_error;

TEST_CASE("parsing box specs") {
  CHECK(LatticeSpec::parse("8x8").dims() == std::vector<int>{8, 8});
  CHECK(LatticeSpec::parse("2x3x4").dims() == std::vector<int>{2, 3, 4});
  CHECK(LatticeSpec::parse("3").dims() == std::vector<int>{3});
  CHECK(LatticeSpec::parse("12x1").dims() == std::vector<int>{12, 1});

  CHECK_THROWS_AS(LatticeSpec::parse(""), validation_error);
  CHECK_THROWS_AS(LatticeSpec::parse("0x2"), validation_error);
  CHECK_THROWS_AS(LatticeSpec::parse("2x"), validation_error);
  CHECK_THROWS_AS(LatticeSpec::parse("x2"), validation_error);
  CHECK_THROWS_AS(LatticeSpec::parse("axb"), validation_error);
  CHECK_THROWS_AS(LatticeSpec::parse("2X3"), validation_error);
  CHECK_THROWS_AS(LatticeSpec::parse("4x-2"), validation_error);
  CHECK_THROWS_AS(LatticeSpec::parse("2x3x"), validation_error);
  CHECK_THROWS_AS(LatticeSpec(std::vector<int>{}), validation_error);
}

TEST_CASE("volume and bond count") {
  CHECK(LatticeSpec::parse("8x8").volume() == 64);
  CHECK(LatticeSpec::parse("8x8").edge_count() == 112);
  CHECK(LatticeSpec::parse("2x3x4").volume() == 24);
  CHECK(LatticeSpec::parse("2x3x4").edge_count() == 46);
  CHECK(LatticeSpec::parse("1x5").edge_count() == 4);
  CHECK(LatticeSpec::parse("3").edge_count() == 2);
  CHECK(LatticeSpec::parse("1x1").edge_count() == 0);
  CHECK(LatticeSpec::parse("2x2x2").edge_count() == 12);
}

TEST_CASE("strides follow last-axis-fastest order") {
  CHECK(LatticeSpec::parse("2x3x4").strides() ==
        std::vector<long long>{12, 4, 1});
  CHECK(LatticeSpec::parse("5").strides() == std::vector<long long>{1});
  CHECK(LatticeSpec::parse("7x9").strides() == std::vector<long long>{9, 1});
}

TEST_CASE("coords and neighbors") {
  LatticeSpec grid = LatticeSpec::parse("3x3");
  CHECK(grid.coords(4) == std::vector<int>{1, 1});
  CHECK(grid.neighbors(4) == std::vector<long long>{1, 3, 5, 7});
  CHECK(grid.neighbors(0) == std::vector<long long>{1, 3});
  CHECK(grid.neighbors(8) == std::vector<long long>{5, 7});

  LatticeSpec square = LatticeSpec::parse("2x2");
  CHECK(square.neighbors(0) == std::vector<long long>{1, 2});
  CHECK(square.neighbors(3) == std::vector<long long>{1, 2});

  LatticeSpec path = LatticeSpec::parse("1x5");
  CHECK(path.neighbors(2) == std::vector<long long>{1, 3});
  CHECK(path.neighbors(0) == std::vector<long long>{1});

  CHECK_THROWS_AS(grid.neighbors(-1), std::out_of_range);
  CHECK_THROWS_AS(grid.neighbors(9), std::out_of_range);
  CHECK_THROWS_AS(grid.coords(100), std::out_of_range);
}

TEST_CASE("adjacency is symmetric and matches the bond count") {
  std::vector<std::vector<int>> shapes;
  for (int a = 1; a <= 4; ++a) {
    shapes.push_back({a});
    for (int b = 1; b <= 4; ++b) {
      shapes.push_back({a, b});
      for (int c = 1; c <= 4; ++c) shapes.push_back({a, b, c});
    }
  }
  for (const auto& dims : shapes) {
    LatticeSpec spec{dims};
    long long degree_sum = 0;
    for (long long cell = 0; cell < spec.volume(); ++cell) {
      auto nbs = spec.neighbors(cell);
      CHECK(std::is_sorted(nbs.begin(), nbs.end()));
      CHECK(static_cast<int>(nbs.size()) <= 2 * spec.dimension());
      degree_sum += static_cast<long long>(nbs.size());
      for (long long nb : nbs) {
        auto back = spec.neighbors(nb);
        CHECK(std::find(back.begin(), back.end(), cell) != back.end());
      }
    }
    CHECK(degree_sum == 2 * spec.edge_count());  // handshake
  }
}

TEST_CASE("extent permutations preserve size invariants") {
  LatticeSpec base = LatticeSpec::parse("2x3x4");
  std::vector<int> dims{2, 3, 4};
  std::sort(dims.begin(), dims.end());
  do {
    LatticeSpec perm{dims};
    CHECK(perm.volume() == base.volume());
    CHECK(perm.edge_count() == base.edge_count());
  } while (std::next_permutation(dims.begin(), dims.end()));
}

TEST_CASE("reversal and rendering") {
  CHECK(LatticeSpec::parse("2x3x4").reversed().str() == "4x3x2");
  CHECK(LatticeSpec::parse("8x8").str() == "8x8");
  CHECK(LatticeSpec::parse("6").reversed().str() == "6");
  CHECK(hypercube(3, 2).str() == "3x3");
  CHECK(hypercube(2, 3).str() == "2x2x2");
  CHECK(hypercube(9, 1).str() == "9");
  CHECK_THROWS_AS(hypercube(3, 0), validation_error);
  CHECK_THROWS_AS(hypercube(0, 2), validation_error);
}
