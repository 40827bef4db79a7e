#pragma once

#include <map>
#include <sstream>
#include <string>

#include "dimerlab/exact.hpp"

namespace dimerlab {

// Polynomial in the density variable p with exact rational coefficients.
// Sparse: only nonzero terms are stored, keyed by power.
class PPoly {
 public:
  PPoly() = default;

  static PPoly monomial(unsigned power, const Rational& c) {
    PPoly poly;
    poly.add_term(power, c);
    return poly;
  }

  // Adds c*p^power, dropping the term if the coefficient cancels to zero.
  PPoly& add_term(unsigned power, const Rational& c) {
    if (c == 0) return *this;
    auto it = coeff_.find(power);
    if (it == coeff_.end()) {
      coeff_.emplace(power, c);
    } else {
      it->second += c;
      if (it->second == 0) coeff_.erase(it);
    }
    return *this;
  }

  Rational coeff(unsigned power) const {
    auto it = coeff_.find(power);
    return it == coeff_.end() ? Rational(0) : it->second;
  }

  const std::map<unsigned, Rational>& terms() const { return coeff_; }
  bool empty() const { return coeff_.empty(); }
  unsigned degree() const { return coeff_.empty() ? 0 : coeff_.rbegin()->first; }

  PPoly truncated(unsigned max_power) const {
    PPoly out;
    for (const auto& [pw, c] : coeff_)
      if (pw <= max_power) out.coeff_.emplace(pw, c);
    return out;
  }

  // Exact evaluation by sparse Horner: walk powers high to low, multiplying
  // by p^gap between consecutive stored powers.
  Rational eval(const Rational& p) const {
    Rational acc(0);
    unsigned prev = 0;
    bool first = true;
    for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it) {
      if (first) {
        acc = it->second;
        first = false;
      } else {
        acc = acc * rational_pow(p, prev - it->first) + it->second;
      }
      prev = it->first;
    }
    if (first) return Rational(0);
    return acc * rational_pow(p, prev);
  }

  PPoly& operator+=(const PPoly& other) {
    for (const auto& [pw, c] : other.coeff_) add_term(pw, c);
    return *this;
  }

  friend PPoly operator+(PPoly a, const PPoly& b) { return a += b; }

  friend PPoly operator-(const PPoly& a) {
    PPoly out;
    for (const auto& [pw, c] : a.coeff_) out.coeff_.emplace(pw, -c);
    return out;
  }

  friend PPoly operator*(const PPoly& a, const PPoly& b) {
    PPoly out;
    for (const auto& [pa, ca] : a.coeff_)
      for (const auto& [pb, cb] : b.coeff_) out.add_term(pa + pb, ca * cb);
    return out;
  }

  friend bool operator==(const PPoly& a, const PPoly& b) {
    return a.coeff_ == b.coeff_;
  }

  // Human-readable form for reports, e.g. "1/8*p^2 + 1/48*p^3".
  std::string str() const {
    if (coeff_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [pw, c] : coeff_) {
      if (!first) os << " + ";
      os << c.get_str();
      if (pw == 1)
        os << "*p";
      else if (pw > 1)
        os << "*p^" << pw;
      first = false;
    }
    return os.str();
  }

 private:
  std::map<unsigned, Rational> coeff_;
};

// Formal series in 1/d whose coefficients are polynomials in p.  Power 0
// is reserved for d-independent content and stays empty in the tables used
// here; the container does not forbid it.
class DSeries {
 public:
  DSeries& add(unsigned inv_d_power, unsigned p_power, const Rational& c) {
    terms_[inv_d_power].add_term(p_power, c);
    if (terms_[inv_d_power].empty()) terms_.erase(inv_d_power);
    return *this;
  }

  // Coefficient polynomial of (1/d)^j; empty polynomial if j is absent.
  PPoly collect(unsigned inv_d_power) const {
    auto it = terms_.find(inv_d_power);
    return it == terms_.end() ? PPoly() : it->second;
  }

  const std::map<unsigned, PPoly>& terms() const { return terms_; }

 private:
  std::map<unsigned, PPoly> terms_;
};

}  // namespace dimerlab
