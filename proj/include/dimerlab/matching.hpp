#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dimerlab/errors.hpp"
#include "dimerlab/exact.hpp"
#include "dimerlab/lattice.hpp"

namespace dimerlab {

// Matching polynomial of a box: counts[k] = number of ways to place k
// disjoint dimers on nearest-neighbor bonds (remaining cells are monomers).
struct MatchingPolynomial {
  long long volume = 0;
  bool truncated = false;  // true when counts stop short of floor(V/2)
  std::vector<BigCount> counts;
};

// Resource guards for the exact counter.  The frontier guard is the width
// of the profile bitmask (cross-section cell count), not a state count.
inline constexpr int kHardFrontierCeiling = 26;

struct CountingLimits {
  int max_frontier_bits = 22;
  long long max_volume = 10000;
};

// One sweep layer of the profile DP: coverage bitmask over the window of
// the next `cross` cells -> counts by dimer number.
struct FrontierLayer {
  std::unordered_map<std::uint32_t, std::vector<BigCount>> states;
};

namespace detail {

inline void check_guards(const LatticeSpec& spec, const CountingLimits& limits) {
  if (limits.max_frontier_bits < 1 || limits.max_frontier_bits > kHardFrontierCeiling)
    throw capacity_error("frontier guard of " +
                         std::to_string(limits.max_frontier_bits) +
                         " bits is outside the supported range 1.." +
                         std::to_string(kHardFrontierCeiling));
  long long v = spec.volume();
  if (v > limits.max_volume)
    throw capacity_error("volume " + std::to_string(v) + " of " + spec.str() +
                         " exceeds the guard of " +
                         std::to_string(limits.max_volume) + " cells");
  long long cross = v / spec.dims()[0];
  if (cross > limits.max_frontier_bits)
    throw capacity_error(
        "cross-section of " + spec.str() + " needs " + std::to_string(cross) +
        " frontier bits, over the limit of " +
        std::to_string(limits.max_frontier_bits) +
        " (DIMERLAB_MAX_FRONTIER_BITS can raise it to " +
        std::to_string(kHardFrontierCeiling) + ")");
}

// dst[k+shift] += src[k], never growing past kcap dimers.
inline void add_shifted(std::vector<BigCount>& dst, const std::vector<BigCount>& src,
                        std::size_t shift, std::size_t kcap) {
  std::size_t want = std::min(src.size() + shift, kcap + 1);
  if (dst.size() < want) dst.resize(want);
  for (std::size_t k = 0; k + shift < want; ++k) dst[k + shift] += src[k];
}

// Merge a whole state vector at shift 0, moving when the slot is empty.
inline void merge_state(FrontierLayer& layer, std::uint32_t mask,
                        std::vector<BigCount>&& vec, std::size_t kcap) {
  auto [it, inserted] = layer.states.try_emplace(mask, std::move(vec));
  if (!inserted) add_shifted(it->second, vec, 0, kcap);
}

}  // namespace detail

// Exact matching polynomial by broken-profile dynamic programming.
//
// Cells are visited in index order (last coordinate fastest) and the sweep
// advances along axis 0.  Before cell c is processed, bit t of a state's
// mask says whether cell c+t is already covered by a dimer placed earlier;
// the window is cross = V/dims[0] bits wide, so the axis-0 partner c+cross
// lands on the top bit right after the shift.  Each cell either was covered
// (shift only), takes a monomer (shift), or starts a dimer toward a free
// forward neighbor (mark, shift, dimer count +1).  Addition of counts is
// commutative, so the hash-map iteration order cannot affect the result.
//
// max_k truncates the polynomial: counts beyond it are not tracked.
inline MatchingPolynomial matching_polynomial(
    const LatticeSpec& spec, std::optional<long long> max_k = std::nullopt,
    const CountingLimits& limits = {}) {
  detail::check_guards(spec, limits);
  if (max_k && *max_k < 0)
    throw validation_error("max_k must be nonnegative, got " +
                           std::to_string(*max_k));

  const long long volume = spec.volume();
  const std::size_t half = static_cast<std::size_t>(volume / 2);
  const std::size_t kcap =
      max_k ? std::min(static_cast<std::size_t>(*max_k), half) : half;
  const int cross = static_cast<int>(volume / spec.dims()[0]);
  const std::vector<long long> strides = spec.strides();
  const std::vector<int>& dims = spec.dims();
  const int d = spec.dimension();

  FrontierLayer layer;
  layer.states.emplace(0u, std::vector<BigCount>{BigCount(1)});

  std::vector<int> coord(static_cast<std::size_t>(d), 0);  // odometer
  for (long long cell = 0; cell < volume; ++cell) {
    FrontierLayer next;
    next.states.reserve(layer.states.size() * 2 + 4);
    for (auto& [mask, poly] : layer.states) {
      if (mask & 1u) {  // covered earlier; just slide the window
        detail::merge_state(next, mask >> 1, std::move(poly), kcap);
        continue;
      }
      // Dimer toward each free forward neighbor (reads poly, so before the
      // move below).
      for (int axis = 0; axis < d; ++axis) {
        if (coord[axis] + 1 >= dims[axis]) continue;
        long long delta = strides[axis];
        std::uint32_t target;
        if (delta == cross) {
          // Axis-0 partner: the slot exposed by the shift, never occupied.
          target = (mask >> 1) | (1u << (cross - 1));
        } else {
          if (mask & (1u << delta)) continue;
          target = (mask | (1u << delta)) >> 1;
        }
        auto it = next.states.try_emplace(target).first;
        detail::add_shifted(it->second, poly, 1, kcap);
      }
      // Monomer on this cell.
      detail::merge_state(next, mask >> 1, std::move(poly), kcap);
    }
    layer.states = std::move(next.states);
    for (int axis = d - 1; axis >= 0; --axis) {  // advance the odometer
      if (++coord[axis] < dims[axis]) break;
      coord[axis] = 0;
    }
  }

  // Dimers never reach past the last cell, so everything funnels into the
  // empty window.
  MatchingPolynomial out;
  out.volume = volume;
  out.truncated = kcap < half;
  auto it = layer.states.find(0u);
  if (it != layer.states.end()) out.counts = std::move(it->second);
  out.counts.resize(kcap + 1);
  return out;
}

// Number of perfect matchings; zero when the volume is odd.
inline BigCount perfect_matching_count(const LatticeSpec& spec,
                                       const CountingLimits& limits = {}) {
  detail::check_guards(spec, limits);
  if (spec.volume() % 2 != 0) return BigCount(0);
  MatchingPolynomial poly = matching_polynomial(spec, std::nullopt, limits);
  return poly.counts.back();
}

// Independent oracle: direct recursion over cells with an explicit covered
// set.  Exponential, hence the tight volume cap; used to cross-check the
// profile DP on small boxes.
inline MatchingPolynomial brute_force_matchings(const LatticeSpec& spec) {
  const long long volume = spec.volume();
  if (volume > 24)
    throw capacity_error("brute-force oracle capped at 24 cells, " +
                         spec.str() + " has " + std::to_string(volume));

  std::vector<std::vector<int>> forward(static_cast<std::size_t>(volume));
  for (long long cell = 0; cell < volume; ++cell)
    for (long long nb : spec.neighbors(cell))
      if (nb > cell) forward[static_cast<std::size_t>(cell)].push_back(static_cast<int>(nb));

  MatchingPolynomial out;
  out.volume = volume;
  out.counts.assign(static_cast<std::size_t>(volume / 2) + 1, BigCount(0));

  // Walk cells in order; each uncovered cell is a monomer or pairs with a
  // free forward neighbor, so every matching is produced exactly once.
  auto recurse = [&](auto&& self, int cell, std::uint32_t covered, int k) -> void {
    while (cell < volume && (covered & (1u << cell))) ++cell;
    if (cell == volume) {
      out.counts[static_cast<std::size_t>(k)] += 1;
      return;
    }
    self(self, cell + 1, covered, k);  // monomer
    for (int nb : forward[static_cast<std::size_t>(cell)])
      if (!(covered & (1u << nb)))
        self(self, cell + 1, covered | (1u << nb), k + 1);
  };
  recurse(recurse, 0, 0u, 0);
  return out;
}

}  // namespace dimerlab
