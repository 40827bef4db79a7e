#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "dimerlab/errors.hpp"

namespace dimerlab {

enum class Boundary { Free };

// A d-dimensional box of unit cells with free boundary, d = dims.size().
// Cells are indexed lexicographically with the LAST coordinate varying
// fastest, so strides are suffix products of the extents.
class LatticeSpec {
 public:
  explicit LatticeSpec(std::vector<int> dims, Boundary boundary = Boundary::Free)
      : dims_(std::move(dims)), boundary_(boundary) {
    if (dims_.empty()) throw validation_error("lattice spec: no extents");
    for (int e : dims_)
      if (e < 1)
        throw validation_error("lattice spec: extents must be positive, got " +
                               std::to_string(e));
  }

  // Parses "LxMxN" (lowercase 'x' separators), e.g. "8x8" or "2x3x4".
  static LatticeSpec parse(std::string_view text) {
    std::vector<int> dims;
    std::size_t pos = 0;
    while (true) {
      std::size_t next = text.find('x', pos);
      std::string_view tok = text.substr(
          pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
      if (tok.empty())
        throw validation_error("lattice spec: empty extent in '" +
                               std::string(text) + "'");
      int value = 0;
      for (char ch : tok) {
        if (ch < '0' || ch > '9')
          throw validation_error("lattice spec: bad character '" +
                                 std::string(1, ch) + "' in '" +
                                 std::string(text) + "'");
        if (value > (std::numeric_limits<int>::max() - (ch - '0')) / 10)
          throw validation_error("lattice spec: extent overflow in '" +
                                 std::string(text) + "'");
        value = value * 10 + (ch - '0');
      }
      dims.push_back(value);
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
    return LatticeSpec(std::move(dims));
  }

  int dimension() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  Boundary boundary() const { return boundary_; }

  long long volume() const {
    long long v = 1;
    for (int e : dims_) {
      if (v > std::numeric_limits<long long>::max() / e)
        throw validation_error("lattice spec: volume overflow");
      v *= e;
    }
    return v;
  }

  // Nearest-neighbor bonds: sum over axes of (L_i - 1) * prod_{j != i} L_j.
  long long edge_count() const {
    long long total = 0;
    long long v = volume();
    for (int e : dims_) total += (v / e) * (e - 1);
    return total;
  }

  // strides()[i] = index step for +1 along axis i; last axis has stride 1.
  std::vector<long long> strides() const {
    std::vector<long long> s(dims_.size());
    long long acc = 1;
    for (int i = static_cast<int>(dims_.size()) - 1; i >= 0; --i) {
      s[i] = acc;
      acc *= dims_[i];
    }
    return s;
  }

  std::vector<int> coords(long long cell) const {
    check_cell(cell);
    std::vector<int> c(dims_.size());
    for (int i = static_cast<int>(dims_.size()) - 1; i >= 0; --i) {
      c[i] = static_cast<int>(cell % dims_[i]);
      cell /= dims_[i];
    }
    return c;
  }

  // Sorted cell indices adjacent to `cell` (2d of them in the interior).
  std::vector<long long> neighbors(long long cell) const {
    std::vector<int> c = coords(cell);  // range-checks
    std::vector<long long> s = strides();
    std::vector<long long> out;
    out.reserve(2 * dims_.size());
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (c[i] > 0) out.push_back(cell - s[i]);
      if (c[i] + 1 < dims_[i]) out.push_back(cell + s[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  LatticeSpec reversed() const {
    std::vector<int> rev(dims_.rbegin(), dims_.rend());
    return LatticeSpec(std::move(rev), boundary_);
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (i) out += 'x';
      out += std::to_string(dims_[i]);
    }
    return out;
  }

  friend bool operator==(const LatticeSpec& a, const LatticeSpec& b) {
    return a.dims_ == b.dims_;
  }

 private:
  void check_cell(long long cell) const {
    if (cell < 0 || cell >= volume())
      throw std::out_of_range("cell index " + std::to_string(cell) +
                              " outside lattice " + str());
  }

  std::vector<int> dims_;
  Boundary boundary_;
};

// Hypercube L^d, the shape used by the estimator's size sweeps.
inline LatticeSpec hypercube(int side, int d) {
  if (d < 1) throw validation_error("hypercube: dimension must be >= 1");
  return LatticeSpec(std::vector<int>(static_cast<std::size_t>(d), side));
}

}  // namespace dimerlab
