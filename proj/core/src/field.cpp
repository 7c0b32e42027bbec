#include <optional>
#include <algorithm>
#include <array>
#include <cstring>
#include <limits>
#include <map>
#include <mutex>

#include "hmrc/galois.hpp"
#include "poly.hpp"

namespace hmrc {

namespace {

using u128 = unsigned __int128;

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned e) {
  u128 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    r *= base;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(r);
}

// ---------------------------------------------------------------------------

class PrimeField final : public Field {
 public:
  explicit PrimeField(std::uint64_t p) : Field(nullptr, p, 1, 1) { order_ = p; }

  void add(const Word* a, const Word* b, Word* out) const override {
    Word s = *a + *b;
    *out = s >= p_ ? s - p_ : s;
  }
  void sub(const Word* a, const Word* b, Word* out) const override {
    *out = *a >= *b ? *a - *b : *a + p_ - *b;
  }
  void neg(const Word* a, Word* out) const override { *out = *a == 0 ? 0 : p_ - *a; }
  void mul(const Word* a, const Word* b, Word* out) const override { *out = (*a * *b) % p_; }
  void inv(const Word* a, Word* out) const override {
    if (*a == 0) throw Error(Errc::DivisionByZero, "inverse of zero in F_" + std::to_string(p_));
    // extended Euclid on signed 64-bit values; p < 2^31
    std::int64_t t = 0, new_t = 1, r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(*a);
    while (new_r != 0) {
      const std::int64_t quot = r / new_r;
      t = std::exchange(new_t, t - quot * new_t);
      r = std::exchange(new_r, r - quot * new_r);
    }
    *out = static_cast<Word>(t < 0 ? t + static_cast<std::int64_t>(p_) : t);
  }
  void sub_scaled(Word* dst, const Word* c, const Word* src, std::size_t len) const override {
    const Word nc = *c == 0 ? 0 : p_ - *c;
    if (nc == 0) return;
    for (std::size_t i = 0; i < len; ++i) dst[i] = (dst[i] + nc * src[i]) % p_;
  }
  void scale(Word* row, const Word* c, std::size_t len) const override {
    for (std::size_t i = 0; i < len; ++i) row[i] = (row[i] * *c) % p_;
  }
  void to_coeffs(const Word* a, Word* coeffs) const override { *coeffs = *a; }
  void from_coeffs(const Word* coeffs, Word* out) const override { *out = *coeffs; }
  void from_rank(std::uint64_t rank, Word* out) const override { *out = rank; }
  std::uint64_t rank_of(const Word* a) const override { return *a; }
};

// ---------------------------------------------------------------------------

class PolyField final : public Field {
 public:
  PolyField(FieldPtr sub, std::span<const Word> modulus)
      : Field(sub, sub->characteristic(), static_cast<unsigned>(modulus.size() / sub->words() - 1),
              (modulus.size() / sub->words() - 1) * sub->words()),
        modulus_(modulus.begin(), modulus.end()) {
    if (auto so = sub_->order()) order_ = checked_pow(*so, degree_);
  }

  const Field& s() const { return *sub_; }
  std::size_t sw() const { return sub_->words(); }

  void add(const Word* a, const Word* b, Word* out) const override {
    for (unsigned i = 0; i < degree_; ++i) s().add(a + i * sw(), b + i * sw(), out + i * sw());
  }
  void sub(const Word* a, const Word* b, Word* out) const override {
    for (unsigned i = 0; i < degree_; ++i) s().sub(a + i * sw(), b + i * sw(), out + i * sw());
  }
  void neg(const Word* a, Word* out) const override {
    for (unsigned i = 0; i < degree_; ++i) s().neg(a + i * sw(), out + i * sw());
  }

  void mul(const Word* a, const Word* b, Word* out) const override {
    const std::size_t d = degree_, w = sw();
    const std::size_t need = (2 * d - 1) * w + w;
    // nested PolyFields recurse through here, so no shared scratch buffers
    std::array<Word, 512> stack_buf;
    std::vector<Word> heap_buf;
    Word* tmp = stack_buf.data();
    if (need > stack_buf.size()) {
      heap_buf.resize(need);
      tmp = heap_buf.data();
    }
    std::fill(tmp, tmp + need, Word{0});
    Word* scratch = tmp + (2 * d - 1) * w;
    for (std::size_t i = 0; i < d; ++i) {
      if (s().is_zero(a + i * w)) continue;
      s().neg(a + i * w, scratch);
      s().sub_scaled(tmp + i * w, scratch, b, d);
    }
    // reduce by the monic modulus
    for (std::size_t i = 2 * d - 1; i-- > d;) {
      Word* c = tmp + i * w;
      if (s().is_zero(c)) continue;
      s().copy(c, scratch);
      s().sub_scaled(tmp + (i - d) * w, scratch, modulus_.data(), d);
      s().set_zero(c);
    }
    std::copy(tmp, tmp + d * w, out);
  }

  void inv(const Word* a, Word* out) const override {
    if (is_zero(a)) throw Error(Errc::DivisionByZero, "inverse of zero in extension field");
    detail::PolyOps ops(s());
    using Poly = detail::PolyOps::Poly;
    // extended Euclid: track t with t*a ≡ r (mod modulus)
    Poly r0 = modulus_, r1(a, a + words_);
    ops.trim(r1);
    Poly t0 = {}, t1 = ops.constant_one();
    while (ops.degree(r1) > 0) {
      auto [quot, rem] = ops.divmod(r0, r1);
      Poly t2 = ops.sub(t0, ops.mul(quot, t1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    // r1 is a nonzero constant c: a * t1 ≡ c
    std::vector<Word> cinv(sw());
    s().inv(ops.coeff(r1, 0), cinv.data());
    std::fill(out, out + words_, Word{0});
    for (std::size_t i = 0; i < ops.size(t1) && i < degree_; ++i) {
      s().mul(ops.coeff(t1, i), cinv.data(), out + i * sw());
    }
  }

  void to_coeffs(const Word* a, Word* coeffs) const override { std::copy(a, a + words_, coeffs); }
  void from_coeffs(const Word* coeffs, Word* out) const override { std::copy(coeffs, coeffs + words_, out); }

  void from_rank(std::uint64_t rank, Word* out) const override {
    const std::uint64_t so = *sub_->order();
    for (unsigned i = 0; i < degree_; ++i) {
      s().from_rank(rank % so, out + i * sw());
      rank /= so;
    }
  }
  std::uint64_t rank_of(const Word* a) const override {
    const std::uint64_t so = *sub_->order();
    std::uint64_t r = 0;
    for (unsigned i = degree_; i-- > 0;) r = r * so + s().rank_of(a + i * sw());
    return r;
  }

 private:
  std::vector<Word> modulus_;
};

// ---------------------------------------------------------------------------

/// Extension of an indexed subfield, elements are canonical ranks; arithmetic
/// through discrete log / antilog / Zech tables.
class TableField final : public Field {
 public:
  TableField(FieldPtr sub, std::span<const Word> modulus)
      : Field(sub, sub->characteristic(), static_cast<unsigned>(modulus.size() - 1), 1) {
    const std::uint64_t so = *sub_->order();
    order_ = checked_pow(so, degree_);
    q_ = *order_;
    n_ = q_ - 1;
    half_ = (p_ == 2) ? 0 : n_ / 2;
    build_tables(modulus);
  }

  void add(const Word* a, const Word* b, Word* out) const override { *out = add_idx(*a, *b); }
  void sub(const Word* a, const Word* b, Word* out) const override { *out = add_idx(*a, neg_idx(*b)); }
  void neg(const Word* a, Word* out) const override { *out = neg_idx(*a); }
  void mul(const Word* a, const Word* b, Word* out) const override {
    *out = (*a == 0 || *b == 0) ? 0 : exp_[log_[*a] + log_[*b]];
  }
  void inv(const Word* a, Word* out) const override {
    if (*a == 0) throw Error(Errc::DivisionByZero, "inverse of zero in extension field");
    *out = exp_[(n_ - log_[*a]) % n_];
  }
  void pow(const Word* a, std::uint64_t e, Word* out) const override {
    if (e == 0) {
      *out = 1;
      return;
    }
    if (*a == 0) {
      *out = 0;
      return;
    }
    const u128 l = static_cast<u128>(log_[*a]) * (e % n_);
    *out = exp_[static_cast<std::uint64_t>(l % n_)];
  }
  void sub_scaled(Word* dst, const Word* c, const Word* src, std::size_t len) const override {
    if (*c == 0) return;
    const std::uint64_t lnc = (log_[*c] + half_) % n_;
    for (std::size_t i = 0; i < len; ++i) {
      if (src[i] == 0) continue;
      dst[i] = add_idx(dst[i], exp_[lnc + log_[src[i]]]);
    }
  }
  void scale(Word* row, const Word* c, std::size_t len) const override {
    if (*c == 0) {
      std::fill(row, row + len, Word{0});
      return;
    }
    const std::uint64_t lc = log_[*c];
    for (std::size_t i = 0; i < len; ++i) {
      if (row[i] != 0) row[i] = exp_[lc + log_[row[i]]];
    }
  }
  void to_coeffs(const Word* a, Word* coeffs) const override {
    const std::uint64_t so = *sub_->order();
    std::uint64_t v = *a;
    for (unsigned i = 0; i < degree_; ++i) {
      sub_->from_rank(v % so, coeffs + i);
      v /= so;
    }
  }
  void from_coeffs(const Word* coeffs, Word* out) const override {
    const std::uint64_t so = *sub_->order();
    std::uint64_t v = 0;
    for (unsigned i = degree_; i-- > 0;) v = v * so + sub_->rank_of(coeffs + i);
    *out = v;
  }
  void from_rank(std::uint64_t rank, Word* out) const override { *out = rank; }
  std::uint64_t rank_of(const Word* a) const override { return *a; }

 private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  Word neg_idx(Word a) const {
    if (a == 0 || p_ == 2) return a;
    std::uint64_t l = log_[a] + half_;
    return exp_[l];
  }

  Word add_idx(Word a, Word b) const {
    if (p_ == 2) return a ^ b;
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint64_t la = log_[a], lb = log_[b];
    const std::uint64_t d = lb >= la ? lb - la : lb + n_ - la;
    const std::uint32_t z = zech_[d];
    if (z == kNone) return 0;
    return exp_[la + z];
  }

  void build_tables(std::span<const Word> modulus) {
    // Work in the polynomial representation to find a generator and its powers.
    PolyField poly(sub_, modulus);
    const std::size_t d = degree_;
    const std::uint64_t so = *sub_->order();
    auto to_index = [&](const std::vector<Word>& v) {
      std::uint64_t r = 0;
      for (std::size_t i = d; i-- > 0;) r = r * so + v[i];
      return r;
    };

    const std::vector<Word> gen = find_primitive(poly);
    exp_.assign(2 * n_ + 1, 0);
    log_.assign(q_, 0);
    std::vector<Word> cur(d, 0), next(d, 0);
    cur[0] = 1;
    for (std::uint64_t i = 0; i < n_; ++i) {
      const std::uint64_t idx = to_index(cur);
      exp_[i] = static_cast<std::uint32_t>(idx);
      log_[idx] = static_cast<std::uint32_t>(i);
      poly.mul(cur.data(), gen.data(), next.data());
      std::swap(cur, next);
    }
    for (std::uint64_t i = n_; i < 2 * n_ + 1; ++i) exp_[i] = exp_[i - n_];

    if (p_ != 2) {
      zech_.assign(n_, kNone);
      for (std::uint64_t i = 0; i < n_; ++i) {
        // 1 + g^i: bump the constant coefficient
        const std::uint64_t v = exp_[i];
        const Word c0 = v % so;
        Word one = 1, sum = 0;
        sub_->add(&c0, &one, &sum);
        const std::uint64_t w = v - c0 + sub_->rank_of(&sum);
        if (w != 0) zech_[i] = log_[w];
      }
    }
  }

  std::uint64_t q_ = 0, n_ = 0, half_ = 0;
  std::vector<std::uint32_t> exp_, log_, zech_;
};

}  // namespace

// ---------------------------------------------------------------------------

Field::Field(std::shared_ptr<const Field> sub, std::uint64_t p, unsigned degree, std::size_t words)
    : sub_(std::move(sub)), p_(p), degree_(degree), words_(words) {
  prime_degree_ = sub_ ? sub_->prime_degree() * degree_ : 1;
}

void Field::pow(const Word* a, std::uint64_t e, Word* out) const {
  std::vector<Word> result(words_, 0), base(a, a + words_), tmp(words_);
  set_one(result.data());
  while (e) {
    if (e & 1U) {
      mul(result.data(), base.data(), tmp.data());
      std::swap(result, tmp);
    }
    e >>= 1U;
    if (e) {
      mul(base.data(), base.data(), tmp.data());
      std::swap(base, tmp);
    }
  }
  copy(result.data(), out);
}

void Field::sub_scaled(Word* dst, const Word* c, const Word* src, std::size_t len) const {
  if (is_zero(c)) return;
  std::vector<Word> prod(words_);
  for (std::size_t i = 0; i < len; ++i) {
    const Word* s = src + i * words_;
    if (is_zero(s)) continue;
    mul(c, s, prod.data());
    sub(dst + i * words_, prod.data(), dst + i * words_);
  }
}

void Field::scale(Word* row, const Word* c, std::size_t len) const {
  std::vector<Word> prod(words_);
  for (std::size_t i = 0; i < len; ++i) {
    mul(row + i * words_, c, prod.data());
    copy(prod.data(), row + i * words_);
  }
}

bool Field::is_zero(const Word* a) const noexcept {
  return std::all_of(a, a + words_, [](Word w) { return w == 0; });
}

bool Field::is_one(const Word* a) const noexcept {
  return a[0] == 1 && std::all_of(a + 1, a + words_, [](Word w) { return w == 0; });
}

bool Field::equal(const Word* a, const Word* b) const noexcept { return std::equal(a, a + words_, b); }

void Field::set_zero(Word* a) const noexcept { std::fill(a, a + words_, Word{0}); }

void Field::set_one(Word* a) const noexcept {
  set_zero(a);
  a[0] = 1;
}

void Field::copy(const Word* a, Word* out) const noexcept { std::copy(a, a + words_, out); }

// ---------------------------------------------------------------------------

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d <= n / d; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q) noexcept {
  if (q < 2) return std::nullopt;
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p != 0) continue;
    unsigned s = 0;
    while (q % p == 0) {
      q /= p;
      ++s;
    }
    if (q != 1) return std::nullopt;
    return std::pair{p, s};
  }
  return std::pair{q, 1U};
}

std::uint64_t smallest_prime_power_above(std::uint64_t n, bool inclusive) {
  std::uint64_t c = inclusive ? std::max<std::uint64_t>(n, 2) : std::max<std::uint64_t>(n + 1, 2);
  while (!prime_power(c)) ++c;
  return c;
}

FieldPtr make_prime_field(std::uint64_t p) {
  if (!is_prime(p)) throw Error(Errc::NonPrime, std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 31)) throw Error(Errc::InvalidArgument, "characteristic too large");
  return std::make_shared<PrimeField>(p);
}

FieldPtr make_extension(FieldPtr sub, std::span<const Word> modulus) {
  const std::size_t w = sub->words();
  if (modulus.size() % w != 0 || modulus.size() / w < 3) {
    throw Error(Errc::InvalidArgument, "extension modulus must have degree >= 2");
  }
  const std::size_t deg = modulus.size() / w - 1;
  if (!sub->is_one(modulus.data() + deg * w)) throw Error(Errc::InvalidArgument, "modulus must be monic");

  // Identical (subfield, modulus) pairs share one field object; tables for the
  // larger mid fields take a noticeable moment to build.
  static std::mutex mu;
  static std::map<std::pair<const Field*, std::vector<Word>>, std::weak_ptr<const Field>> cache;
  const std::lock_guard lock(mu);
  auto key = std::pair{sub.get(), std::vector<Word>(modulus.begin(), modulus.end())};
  if (auto it = cache.find(key); it != cache.end()) {
    if (auto hit = it->second.lock()) return hit;
  }

  FieldPtr out;
  const auto so = sub->order();
  const auto total = so ? checked_pow(*so, static_cast<unsigned>(deg)) : std::nullopt;
  if (sub->indexed() && total && *total <= kTableLimit) {
    out = std::make_shared<TableField>(sub, modulus);
  } else {
    out = std::make_shared<PolyField>(sub, modulus);
  }
  cache[std::move(key)] = out;
  return out;
}

bool is_irreducible(const Field& field, std::span<const Word> poly_in) {
  detail::PolyOps ops(field);
  detail::PolyOps::Poly f(poly_in.begin(), poly_in.end());
  ops.trim(f);
  const long d = ops.degree(f);
  if (d < 1) return false;
  if (d == 1) return true;
  // no factor of degree i <= d/2: gcd(f, x^(Q^i) - x) = 1
  const auto x = ops.mod(ops.monomial_x(), f);
  auto frob = x;
  for (long i = 1; i <= d / 2; ++i) {
    frob = ops.frobenius_mod(frob, f);
    if (ops.degree(ops.gcd(f, ops.sub(frob, x))) != 0) return false;
  }
  return true;
}

namespace {

// Coefficients are drawn from the first kCoefficientAlphabet canonical ranks;
// for larger fields whole prefix families can be reducible (characteristic 2,
// even degree), which would make an unrestricted scan quadratic in the order.
constexpr std::uint64_t kCoefficientAlphabet = 256;

std::optional<std::vector<Word>> scan_irreducible(const Field& field, unsigned degree, std::uint64_t alphabet) {
  const std::size_t w = field.words();
  // digits[0] is c0 and is the most significant position of the scan; a zero
  // constant term means a factor x unless the degree is 1
  std::vector<std::uint64_t> digits(degree, 0);
  if (degree > 1) digits[0] = 1;
  std::vector<Word> poly((degree + 1) * w, 0);
  field.set_one(poly.data() + degree * w);
  while (true) {
    for (unsigned i = 0; i < degree; ++i) field.from_rank(digits[i], poly.data() + i * w);
    if (is_irreducible(field, poly)) return poly;
    // odometer: last coefficient fastest
    unsigned pos = degree;
    while (pos-- > 0) {
      if (++digits[pos] < alphabet) break;
      digits[pos] = 0;
      if (pos == 0) return std::nullopt;
    }
  }
}

}  // namespace

std::vector<Word> smallest_irreducible(const Field& field, unsigned degree) {
  if (degree == 0) throw Error(Errc::InvalidArgument, "irreducible of degree 0");
  const auto order = field.order();
  if (!order) throw Error(Errc::InvalidArgument, "coefficient field too large to enumerate");
  const std::uint64_t alphabet = std::min(*order, kCoefficientAlphabet);
  if (auto poly = scan_irreducible(field, degree, alphabet)) return *poly;
  if (alphabet < *order) {
    if (auto poly = scan_irreducible(field, degree, *order)) return *poly;
  }
  throw Error(Errc::InvalidArgument, "no irreducible polynomial found");
}

namespace {

bool has_full_order(const Field& field, const Word* a, std::uint64_t n, const std::vector<std::uint64_t>& factors) {
  if (field.is_zero(a)) return false;
  if (n == 1) return field.is_one(a);
  std::vector<Word> t(field.words());
  for (const std::uint64_t r : factors) {
    field.pow(a, n / r, t.data());
    if (field.is_one(t.data())) return false;
  }
  field.pow(a, n, t.data());
  return field.is_one(t.data());
}

}  // namespace

bool is_primitive(const Field& field, const Word* a) {
  const auto order = field.order();
  if (!order) throw Error(Errc::InvalidArgument, "primitive test needs a field of 64-bit order");
  const std::uint64_t n = *order - 1;
  return has_full_order(field, a, n, prime_factors(n));
}

std::vector<Word> find_primitive(const Field& field) {
  const auto order = field.order();
  if (!order) throw Error(Errc::InvalidArgument, "primitive search needs a field of 64-bit order");
  const std::uint64_t n = *order - 1;
  const auto factors = prime_factors(n);
  std::vector<Word> a(field.words());
  for (std::uint64_t r = 1; r < *order; ++r) {
    field.from_rank(r, a.data());
    if (has_full_order(field, a.data(), n, factors)) return a;
  }
  throw Error(Errc::InvalidArgument, "no primitive element");
}

}  // namespace hmrc
