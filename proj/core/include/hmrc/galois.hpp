#pragma once

// Exact arithmetic in the three-level tower F_q ⊂ F_{q^m1} ⊂ F_{q^m}.
//
// Each level is a runtime Field object. Elements are stored as a fixed number
// of 64-bit words per field:
//   * prime fields and "tabulated" extensions (at most kTableLimit elements)
//     use a single word holding the integer rank Σ c_i |S|^i of the
//     coefficient vector over the subfield S;
//   * larger extensions store their coefficient vector over the subfield,
//     each coefficient occupying subfield().words() words.
// In both encodings zero is all-zero words and one is {1, 0, ..., 0}.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hmrc/error.hpp"

namespace hmrc {

using Word = std::uint64_t;

/// Extensions with at most this many elements get log/antilog/Zech tables.
inline constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 22;

class Field {
 public:
  virtual ~Field() = default;

  std::size_t words() const noexcept { return words_; }
  /// Degree over the immediate subfield (1 for a prime field).
  unsigned degree() const noexcept { return degree_; }
  /// Degree over the prime field.
  unsigned prime_degree() const noexcept { return prime_degree_; }
  std::uint64_t characteristic() const noexcept { return p_; }
  const Field* subfield() const noexcept { return sub_.get(); }
  const std::shared_ptr<const Field>& subfield_ptr() const noexcept { return sub_; }
  /// Number of elements when it fits in 64 bits.
  std::optional<std::uint64_t> order() const noexcept { return order_; }
  bool is_prime() const noexcept { return sub_ == nullptr; }
  /// True when an element is a single word equal to its canonical rank.
  bool indexed() const noexcept { return words_ == 1; }

  virtual void add(const Word* a, const Word* b, Word* out) const = 0;
  virtual void sub(const Word* a, const Word* b, Word* out) const = 0;
  virtual void neg(const Word* a, Word* out) const = 0;
  virtual void mul(const Word* a, const Word* b, Word* out) const = 0;
  /// Throws Errc::DivisionByZero on zero input.
  virtual void inv(const Word* a, Word* out) const = 0;
  virtual void pow(const Word* a, std::uint64_t e, Word* out) const;

  /// dst[i] -= c * src[i] for i < len (elements, not words).
  virtual void sub_scaled(Word* dst, const Word* c, const Word* src, std::size_t len) const;
  /// row[i] *= c for i < len.
  virtual void scale(Word* row, const Word* c, std::size_t len) const;

  /// Coefficients over the subfield, degree() * subfield()->words() words.
  virtual void to_coeffs(const Word* a, Word* coeffs) const = 0;
  virtual void from_coeffs(const Word* coeffs, Word* out) const = 0;

  /// Element with the given canonical rank (little-endian digits over the
  /// subfield). Requires order() to be known and rank < order.
  virtual void from_rank(std::uint64_t rank, Word* out) const = 0;
  /// Canonical rank; requires order() to be known.
  virtual std::uint64_t rank_of(const Word* a) const = 0;

  bool is_zero(const Word* a) const noexcept;
  bool is_one(const Word* a) const noexcept;
  bool equal(const Word* a, const Word* b) const noexcept;
  void set_zero(Word* a) const noexcept;
  void set_one(Word* a) const noexcept;
  void copy(const Word* a, Word* out) const noexcept;

 protected:
  Field(std::shared_ptr<const Field> sub, std::uint64_t p, unsigned degree, std::size_t words);

  std::shared_ptr<const Field> sub_;
  std::uint64_t p_;
  unsigned degree_;
  unsigned prime_degree_;
  std::size_t words_;
  std::optional<std::uint64_t> order_;
};

using FieldPtr = std::shared_ptr<const Field>;

bool is_prime(std::uint64_t n) noexcept;
/// Distinct prime factors by trial division.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
/// Splits q = p^s; returns nullopt when q is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q) noexcept;
/// Smallest prime power strictly greater than n (or >= n when inclusive).
std::uint64_t smallest_prime_power_above(std::uint64_t n, bool inclusive = false);

FieldPtr make_prime_field(std::uint64_t p);
/// F[x]/(modulus) for a monic modulus given as degree+1 coefficients over sub
/// (flat words, little-endian). Picks the tabulated representation when the
/// result is small enough. Degree-1 moduli are rejected; callers alias instead.
FieldPtr make_extension(FieldPtr sub, std::span<const Word> modulus);

/// Lexicographically smallest monic irreducible of the given degree over
/// `field`, comparing coefficients c0, c1, ... by canonical rank. Fields with
/// more than 256 elements draw coefficients from ranks below 256 first.
std::vector<Word> smallest_irreducible(const Field& field, unsigned degree);
/// Ben-Or irreducibility test for a monic polynomial (flat coefficient words).
bool is_irreducible(const Field& field, std::span<const Word> poly);

/// Multiplicative order test over a field of known order.
bool is_primitive(const Field& field, const Word* a);
/// First element in canonical order with multiplicative order |F| - 1.
std::vector<Word> find_primitive(const Field& field);

// ---------------------------------------------------------------------------
// Tower

enum class Level : std::uint8_t { Base = 0, Mid = 1, Top = 2 };

char level_tag(Level level) noexcept;
Level level_from_tag(char tag);

class Element;
class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

class FieldTower : public std::enable_shared_from_this<FieldTower> {
 public:
  struct Moduli {
    std::vector<std::uint64_t> base;  // over F_p, s+1 coefficients
    std::vector<Word> mid;            // over F_q, m1+1 coefficients (flat words)
    std::vector<Word> top;            // over F_{q^m1}, m/m1+1 coefficients (flat words)
  };

  /// Deterministic tower with lexicographically smallest moduli.
  static TowerPtr create(std::uint64_t p, unsigned s, unsigned m1, unsigned m);
  /// Tower from explicit moduli (validated for degree, monicity and irreducibility).
  static TowerPtr from_moduli(std::uint64_t p, unsigned s, unsigned m1, unsigned m,
                              const Moduli& moduli);
  /// Same base and mid fields as `tower`, new top degree m (m1 | m).
  static TowerPtr with_top_degree(const TowerPtr& tower, unsigned m);

  std::uint64_t p() const noexcept { return p_; }
  unsigned s() const noexcept { return s_; }
  unsigned m1() const noexcept { return m1_; }
  unsigned m() const noexcept { return m_; }
  std::uint64_t q() const noexcept { return q_; }

  const Field& prime_field() const noexcept { return *prime_; }
  const Field& field(Level level) const noexcept { return *fields_[static_cast<int>(level)]; }
  const FieldPtr& field_ptr(Level level) const noexcept { return fields_[static_cast<int>(level)]; }
  const Moduli& moduli() const noexcept { return moduli_; }

  /// [upper : lower] extension degree.
  unsigned degree_over(Level upper, Level lower) const;
  /// Degree of a level over the prime field.
  unsigned prime_degree(Level level) const noexcept;

  Element zero(Level level) const;
  Element one(Level level) const;
  Element from_rank(Level level, std::uint64_t rank) const;
  Element from_words(Level level, std::span<const Word> words) const;
  /// Base element from its F_p digits.
  Element base_from_digits(std::span<const std::uint64_t> digits) const;
  std::vector<std::uint64_t> base_digits(const Element& a) const;

  Element embed(const Element& a, Level level) const;
  /// Coordinates of `a` over `target` (strictly below a's level), ordered
  /// with the outer coefficient index major.
  std::vector<Element> decompose(const Element& a, Level target) const;
  /// Inverse of decompose.
  Element recompose(std::span<const Element> coords, Level level) const;

  /// Base-level primitive element (smallest in canonical order).
  Element primitive_element() const;

  bool same_as(const FieldTower& other) const noexcept;

 private:
  FieldTower() = default;
  void build(const Moduli* moduli, const FieldTower* reuse);

  std::uint64_t p_ = 0;
  unsigned s_ = 0, m1_ = 0, m_ = 0;
  std::uint64_t q_ = 0;
  FieldPtr prime_;
  FieldPtr fields_[3];
  Moduli moduli_;
};

/// A value in one level of a tower. Lower-level operands are embedded
/// implicitly by the arithmetic operators.
class Element {
 public:
  Element() = default;
  Element(TowerPtr tower, Level level, std::vector<Word> words);

  Level level() const noexcept { return level_; }
  const FieldTower& tower() const { return *tower_; }
  const TowerPtr& tower_ptr() const noexcept { return tower_; }
  const Field& field() const { return tower_->field(level_); }
  std::span<const Word> words() const noexcept { return words_; }
  const Word* data() const noexcept { return words_.data(); }
  bool valid() const noexcept { return tower_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;

  Element inverse() const;
  Element pow(std::uint64_t e) const;
  /// x -> x^{|level|}: Base gives x^q, Mid gives x^{q^m1}. Applied `times` times.
  Element frobenius(Level stride, unsigned times = 1) const;
  /// Coefficients over the next-lower level (F_p digits for Base).
  std::vector<Element> coeffs() const;
  /// Canonical rank; requires a field of 64-bit order.
  std::uint64_t rank() const;

  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator/(const Element& a, const Element& b);
  Element operator-() const;
  Element& operator+=(const Element& b) { return *this = *this + b; }
  Element& operator-=(const Element& b) { return *this = *this - b; }
  Element& operator*=(const Element& b) { return *this = *this * b; }

  friend bool operator==(const Element& a, const Element& b);

 private:
  TowerPtr tower_;
  Level level_ = Level::Base;
  std::vector<Word> words_;
};

/// Raises both operands to their common level.
std::pair<Element, Element> unify(const Element& a, const Element& b);

}  // namespace hmrc
