#include "poly.hpp"

#include <algorithm>

namespace hmrc::detail {

long PolyOps::degree(const Poly& a) const noexcept {
  for (std::size_t i = size(a); i-- > 0;) {
    if (!f_.is_zero(coeff(a, i))) return static_cast<long>(i);
  }
  return -1;
}

void PolyOps::trim(Poly& a) const { a.resize(static_cast<std::size_t>(degree(a) + 1) * w_); }

PolyOps::Poly PolyOps::constant_one() const {
  Poly r(w_, 0);
  f_.set_one(r.data());
  return r;
}

PolyOps::Poly PolyOps::monomial_x() const {
  Poly r(2 * w_, 0);
  f_.set_one(r.data() + w_);
  return r;
}

PolyOps::Poly PolyOps::add(const Poly& a, const Poly& b) const {
  Poly r(std::max(a.size(), b.size()), 0);
  std::copy(a.begin(), a.end(), r.begin());
  for (std::size_t i = 0; i < size(b); ++i) f_.add(coeff(r, i), coeff(b, i), coeff(r, i));
  trim(r);
  return r;
}

PolyOps::Poly PolyOps::sub(const Poly& a, const Poly& b) const {
  Poly r(std::max(a.size(), b.size()), 0);
  std::copy(a.begin(), a.end(), r.begin());
  for (std::size_t i = 0; i < size(b); ++i) f_.sub(coeff(r, i), coeff(b, i), coeff(r, i));
  trim(r);
  return r;
}

PolyOps::Poly PolyOps::mul(const Poly& a, const Poly& b) const {
  const long da = degree(a), db = degree(b);
  if (da < 0 || db < 0) return {};
  Poly r(static_cast<std::size_t>(da + db + 1) * w_, 0);
  std::vector<Word> neg_a(w_);
  for (long i = 0; i <= da; ++i) {
    if (f_.is_zero(coeff(a, i))) continue;
    f_.neg(coeff(a, i), neg_a.data());
    // r[i + j] -= (-a_i) * b_j
    f_.sub_scaled(coeff(r, i), neg_a.data(), b.data(), static_cast<std::size_t>(db + 1));
  }
  trim(r);
  return r;
}

std::pair<PolyOps::Poly, PolyOps::Poly> PolyOps::divmod(const Poly& a, const Poly& m) const {
  const long dm = degree(m);
  if (dm < 0) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  Poly r = a;
  trim(r);
  long dr = degree(r);
  if (dr < dm) return {Poly{}, r};
  Poly quot(static_cast<std::size_t>(dr - dm + 1) * w_, 0);
  std::vector<Word> lead_inv(w_), c(w_);
  f_.inv(coeff(m, dm), lead_inv.data());
  for (long i = dr; i >= dm; --i) {
    if (f_.is_zero(coeff(r, i))) continue;
    f_.mul(coeff(r, i), lead_inv.data(), c.data());
    f_.copy(c.data(), coeff(quot, i - dm));
    f_.sub_scaled(coeff(r, i - dm), c.data(), m.data(), static_cast<std::size_t>(dm + 1));
  }
  r.resize(static_cast<std::size_t>(dm) * w_);
  trim(r);
  trim(quot);
  return {quot, r};
}

PolyOps::Poly PolyOps::mod(const Poly& a, const Poly& m) const { return divmod(a, m).second; }

PolyOps::Poly PolyOps::mulmod(const Poly& a, const Poly& b, const Poly& m) const {
  return mod(mul(a, b), m);
}

PolyOps::Poly PolyOps::powmod(const Poly& a, std::uint64_t e, const Poly& m) const {
  Poly result = mod(constant_one(), m);
  Poly base = mod(a, m);
  while (e) {
    if (e & 1U) result = mulmod(result, base, m);
    e >>= 1U;
    if (e) base = mulmod(base, base, m);
  }
  return result;
}

PolyOps::Poly PolyOps::frobenius_mod(const Poly& a, const Poly& m) const {
  Poly r = mod(a, m);
  for (unsigned i = 0; i < f_.prime_degree(); ++i) r = powmod(r, f_.characteristic(), m);
  return r;
}

void PolyOps::make_monic(Poly& a) const {
  const long d = degree(a);
  if (d < 0) return;
  std::vector<Word> inv(w_);
  f_.inv(coeff(a, d), inv.data());
  f_.scale(a.data(), inv.data(), static_cast<std::size_t>(d + 1));
  trim(a);
}

PolyOps::Poly PolyOps::gcd(Poly a, Poly b) const {
  trim(a);
  trim(b);
  while (degree(b) >= 0) {
    Poly r = mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a);
  return a;
}

}  // namespace hmrc::detail
