#pragma once

// Dense univariate polynomials over a runtime Field. Coefficients are stored
// flat, little-endian, field.words() words per coefficient.

#include <cstdint>
#include <utility>
#include <vector>

#include "hmrc/galois.hpp"

namespace hmrc::detail {

class PolyOps {
 public:
  using Poly = std::vector<Word>;

  explicit PolyOps(const Field& field) : f_(field), w_(field.words()) {}

  const Field& field() const noexcept { return f_; }
  std::size_t width() const noexcept { return w_; }

  std::size_t size(const Poly& a) const noexcept { return a.size() / w_; }
  const Word* coeff(const Poly& a, std::size_t i) const noexcept { return a.data() + i * w_; }
  Word* coeff(Poly& a, std::size_t i) const noexcept { return a.data() + i * w_; }

  /// Degree, -1 for the zero polynomial.
  long degree(const Poly& a) const noexcept;
  void trim(Poly& a) const;

  Poly zero() const { return {}; }
  Poly constant_one() const;
  /// x
  Poly monomial_x() const;

  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly mul(const Poly& a, const Poly& b) const;
  /// Remainder modulo a nonzero polynomial (need not be monic).
  Poly mod(const Poly& a, const Poly& m) const;
  std::pair<Poly, Poly> divmod(const Poly& a, const Poly& m) const;
  Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const;
  Poly powmod(const Poly& a, std::uint64_t e, const Poly& m) const;
  /// a^{|F|} mod m, via repeated p-th powers (no 64-bit limit on |F|).
  Poly frobenius_mod(const Poly& a, const Poly& m) const;
  /// Monic gcd.
  Poly gcd(Poly a, Poly b) const;
  /// Makes the polynomial monic (nonzero input).
  void make_monic(Poly& a) const;

 private:
  const Field& f_;
  std::size_t w_;
};

}  // namespace hmrc::detail
