#include <algorithm>

#include "hmrc/galois.hpp"

namespace hmrc {

char level_tag(Level level) noexcept {
  switch (level) {
    case Level::Base: return 'b';
    case Level::Mid: return 'm';
    case Level::Top: return 't';
  }
  return '?';
}

Level level_from_tag(char tag) {
  switch (tag) {
    case 'b': return Level::Base;
    case 'm': return Level::Mid;
    case 't': return Level::Top;
    default: throw Error(Errc::Parse, std::string("unknown level tag '") + tag + "'");
  }
}

namespace {

Level below(Level level) { return static_cast<Level>(static_cast<int>(level) - 1); }

std::vector<Word> degree_one_modulus(const Field& f) {
  // the polynomial x
  std::vector<Word> m(2 * f.words(), 0);
  f.set_one(m.data() + f.words());
  return m;
}

FieldPtr extend(const FieldPtr& sub, unsigned degree, const std::vector<Word>* given,
                std::vector<Word>& modulus_out) {
  if (degree == 1) {
    modulus_out = given ? *given : degree_one_modulus(*sub);
    return sub;
  }
  if (given) {
    if (given->size() != (degree + 1) * sub->words()) {
      throw Error(Errc::InvalidArgument, "modulus has the wrong degree");
    }
    if (!sub->is_one(given->data() + degree * sub->words())) {
      throw Error(Errc::InvalidArgument, "modulus is not monic");
    }
    if (!is_irreducible(*sub, *given)) throw Error(Errc::InvalidArgument, "modulus is reducible");
    modulus_out = *given;
  } else {
    modulus_out = smallest_irreducible(*sub, degree);
  }
  return make_extension(sub, modulus_out);
}

}  // namespace

TowerPtr FieldTower::create(std::uint64_t p, unsigned s, unsigned m1, unsigned m) {
  auto t = std::shared_ptr<FieldTower>(new FieldTower());
  t->p_ = p;
  t->s_ = s;
  t->m1_ = m1;
  t->m_ = m;
  t->build(nullptr, nullptr);
  return t;
}

TowerPtr FieldTower::from_moduli(std::uint64_t p, unsigned s, unsigned m1, unsigned m,
                                 const Moduli& moduli) {
  auto t = std::shared_ptr<FieldTower>(new FieldTower());
  t->p_ = p;
  t->s_ = s;
  t->m1_ = m1;
  t->m_ = m;
  t->build(&moduli, nullptr);
  return t;
}

TowerPtr FieldTower::with_top_degree(const TowerPtr& tower, unsigned m) {
  auto t = std::shared_ptr<FieldTower>(new FieldTower());
  t->p_ = tower->p_;
  t->s_ = tower->s_;
  t->m1_ = tower->m1_;
  t->m_ = m;
  t->build(nullptr, tower.get());
  return t;
}

void FieldTower::build(const Moduli* given, const FieldTower* reuse) {
  if (!is_prime(p_)) throw Error(Errc::NonPrime, std::to_string(p_) + " is not prime");
  if (s_ < 1 || m1_ < 1 || m_ < 1) throw Error(Errc::InvalidArgument, "tower degrees must be >= 1");
  if (m_ % m1_ != 0) {
    throw Error(Errc::DivisibilityViolation,
                "m1 = " + std::to_string(m1_) + " does not divide m = " + std::to_string(m_));
  }
  q_ = 1;
  for (unsigned i = 0; i < s_; ++i) q_ *= p_;

  if (reuse) {
    prime_ = reuse->prime_;
    fields_[0] = reuse->fields_[0];
    fields_[1] = reuse->fields_[1];
    moduli_.base = reuse->moduli_.base;
    moduli_.mid = reuse->moduli_.mid;
  } else {
    prime_ = make_prime_field(p_);
    std::vector<Word> base_mod;
    std::vector<Word> given_base;
    if (given) given_base.assign(given->base.begin(), given->base.end());
    fields_[0] = extend(prime_, s_, given ? &given_base : nullptr, base_mod);
    moduli_.base.assign(base_mod.begin(), base_mod.end());
    fields_[1] = extend(fields_[0], m1_, given ? &given->mid : nullptr, moduli_.mid);
  }
  fields_[2] = extend(fields_[1], m_ / m1_, given ? &given->top : nullptr, moduli_.top);
}

unsigned FieldTower::degree_over(Level upper, Level lower) const {
  if (static_cast<int>(upper) < static_cast<int>(lower)) {
    throw Error(Errc::LevelMismatch, "degree_over: upper level below lower level");
  }
  return prime_degree(upper) / prime_degree(lower);
}

unsigned FieldTower::prime_degree(Level level) const noexcept {
  switch (level) {
    case Level::Base: return s_;
    case Level::Mid: return s_ * m1_;
    case Level::Top: return s_ * m_;
  }
  return 0;
}

Element FieldTower::zero(Level level) const {
  return Element(shared_from_this(), level, std::vector<Word>(field(level).words(), 0));
}

Element FieldTower::one(Level level) const {
  std::vector<Word> w(field(level).words(), 0);
  w[0] = 1;
  return Element(shared_from_this(), level, std::move(w));
}

Element FieldTower::from_rank(Level level, std::uint64_t rank) const {
  const Field& f = field(level);
  if (!f.order() || rank >= *f.order()) throw Error(Errc::IndexOutOfRange, "element rank out of range");
  std::vector<Word> w(f.words());
  f.from_rank(rank, w.data());
  return Element(shared_from_this(), level, std::move(w));
}

Element FieldTower::from_words(Level level, std::span<const Word> words) const {
  if (words.size() != field(level).words()) throw Error(Errc::ShapeMismatch, "element word count");
  return Element(shared_from_this(), level, std::vector<Word>(words.begin(), words.end()));
}

Element FieldTower::base_from_digits(std::span<const std::uint64_t> digits) const {
  if (digits.size() != s_) throw Error(Errc::ShapeMismatch, "base element needs s digits");
  for (auto d : digits) {
    if (d >= p_) throw Error(Errc::IndexOutOfRange, "digit outside [0, p)");
  }
  std::vector<Word> w(field(Level::Base).words());
  if (s_ == 1) {
    w[0] = digits[0];
  } else {
    field(Level::Base).from_coeffs(digits.data(), w.data());
  }
  return Element(shared_from_this(), Level::Base, std::move(w));
}

std::vector<std::uint64_t> FieldTower::base_digits(const Element& a) const {
  if (a.level() != Level::Base) throw Error(Errc::LevelMismatch, "base_digits expects a Base element");
  if (s_ == 1) return {a.words()[0]};
  std::vector<Word> c(s_);
  field(Level::Base).to_coeffs(a.data(), c.data());
  return {c.begin(), c.end()};
}

Element FieldTower::embed(const Element& a, Level level) const {
  if (static_cast<int>(a.level()) > static_cast<int>(level)) {
    throw Error(Errc::LevelMismatch, "cannot embed an element into a lower level");
  }
  Element cur = a;
  while (cur.level() != level) {
    const Level up = static_cast<Level>(static_cast<int>(cur.level()) + 1);
    const unsigned d = degree_over(up, cur.level());
    if (d == 1) {
      cur = Element(shared_from_this(), up, {cur.words().begin(), cur.words().end()});
      continue;
    }
    const Field& uf = field(up);
    std::vector<Word> coeffs(uf.words() == 1 ? d : uf.words(), 0);
    const std::size_t sw = field(cur.level()).words();
    coeffs.assign(static_cast<std::size_t>(d) * sw, 0);
    std::copy(cur.words().begin(), cur.words().end(), coeffs.begin());
    std::vector<Word> w(uf.words());
    uf.from_coeffs(coeffs.data(), w.data());
    cur = Element(shared_from_this(), up, std::move(w));
  }
  return cur;
}

std::vector<Element> FieldTower::decompose(const Element& a, Level target) const {
  if (static_cast<int>(target) >= static_cast<int>(a.level())) {
    throw Error(Errc::LevelMismatch, "decompose target must be below the element's level");
  }
  std::vector<Element> cur = a.coeffs();
  Level lvl = below(a.level());
  while (lvl != target) {
    std::vector<Element> next;
    for (const auto& c : cur) {
      auto cc = c.coeffs();
      next.insert(next.end(), cc.begin(), cc.end());
    }
    cur = std::move(next);
    lvl = below(lvl);
  }
  return cur;
}

Element FieldTower::recompose(std::span<const Element> coords, Level level) const {
  if (level == Level::Base) throw Error(Errc::LevelMismatch, "cannot recompose into Base");
  if (coords.empty()) throw Error(Errc::ShapeMismatch, "recompose: empty coordinate vector");
  const Level from = coords.front().level();
  if (static_cast<int>(from) >= static_cast<int>(level)) {
    throw Error(Errc::LevelMismatch, "recompose: coordinates must lie below the target level");
  }
  if (coords.size() != degree_over(level, from)) {
    throw Error(Errc::ShapeMismatch, "recompose: wrong number of coordinates");
  }
  std::vector<Element> cur(coords.begin(), coords.end());
  Level lvl = from;
  while (lvl != level) {
    const Level up = static_cast<Level>(static_cast<int>(lvl) + 1);
    const unsigned d = degree_over(up, lvl);
    const Field& uf = field(up);
    const std::size_t sw = field(lvl).words();
    std::vector<Element> next;
    for (std::size_t g = 0; g < cur.size() / d; ++g) {
      std::vector<Word> coeffs(static_cast<std::size_t>(d) * sw, 0);
      for (unsigned i = 0; i < d; ++i) {
        const Element& c = cur[g * d + i];
        if (c.level() != lvl) throw Error(Errc::LevelMismatch, "recompose: mixed coordinate levels");
        std::copy(c.words().begin(), c.words().end(), coeffs.begin() + static_cast<std::ptrdiff_t>(i * sw));
      }
      std::vector<Word> w(uf.words());
      if (d == 1) {
        w = coeffs;
      } else {
        uf.from_coeffs(coeffs.data(), w.data());
      }
      next.emplace_back(shared_from_this(), up, std::move(w));
    }
    cur = std::move(next);
    lvl = up;
  }
  return cur.front();
}

Element FieldTower::primitive_element() const {
  auto w = find_primitive(field(Level::Base));
  return Element(shared_from_this(), Level::Base, std::move(w));
}

bool FieldTower::same_as(const FieldTower& other) const noexcept {
  return this == &other || (p_ == other.p_ && s_ == other.s_ && m1_ == other.m1_ && m_ == other.m_ &&
                            moduli_.base == other.moduli_.base && moduli_.mid == other.moduli_.mid &&
                            moduli_.top == other.moduli_.top);
}

// ---------------------------------------------------------------------------

Element::Element(TowerPtr tower, Level level, std::vector<Word> words)
    : tower_(std::move(tower)), level_(level), words_(std::move(words)) {}

bool Element::is_zero() const { return field().is_zero(data()); }
bool Element::is_one() const { return field().is_one(data()); }

std::pair<Element, Element> unify(const Element& a, const Element& b) {
  if (!a.valid() || !b.valid()) throw Error(Errc::LevelMismatch, "operation on an empty element");
  if (!a.tower().same_as(b.tower())) throw Error(Errc::LevelMismatch, "elements from different towers");
  if (a.level() == b.level()) return {a, b};
  const Level lvl = std::max(a.level(), b.level());
  return {a.tower().embed(a, lvl), a.tower().embed(b, lvl)};
}

namespace {

template <typename Op>
Element binary(const Element& a, const Element& b, Op op) {
  auto [x, y] = unify(a, b);
  std::vector<Word> out(x.field().words());
  op(x.field(), x.data(), y.data(), out.data());
  return Element(x.tower_ptr(), x.level(), std::move(out));
}

}  // namespace

Element operator+(const Element& a, const Element& b) {
  return binary(a, b, [](const Field& f, const Word* x, const Word* y, Word* o) { f.add(x, y, o); });
}
Element operator-(const Element& a, const Element& b) {
  return binary(a, b, [](const Field& f, const Word* x, const Word* y, Word* o) { f.sub(x, y, o); });
}
Element operator*(const Element& a, const Element& b) {
  return binary(a, b, [](const Field& f, const Word* x, const Word* y, Word* o) { f.mul(x, y, o); });
}
Element operator/(const Element& a, const Element& b) { return a * b.inverse(); }

Element Element::operator-() const {
  std::vector<Word> out(words_.size());
  field().neg(data(), out.data());
  return Element(tower_, level_, std::move(out));
}

bool operator==(const Element& a, const Element& b) {
  if (!a.valid() || !b.valid()) return a.valid() == b.valid();
  if (!a.tower().same_as(b.tower())) return false;
  if (a.level() == b.level()) return a.words_ == b.words_;
  auto [x, y] = unify(a, b);
  return x.words_ == y.words_;
}

Element Element::inverse() const {
  std::vector<Word> out(words_.size());
  field().inv(data(), out.data());
  return Element(tower_, level_, std::move(out));
}

Element Element::pow(std::uint64_t e) const {
  std::vector<Word> out(words_.size());
  field().pow(data(), e, out.data());
  return Element(tower_, level_, std::move(out));
}

Element Element::frobenius(Level stride, unsigned times) const {
  const Field& sf = tower_->field(stride);
  Element cur = *this;
  const unsigned base_steps = stride == Level::Base ? 1 : tower_->degree_over(stride, Level::Base);
  const auto q_stride = sf.order();
  for (unsigned t = 0; t < times; ++t) {
    if (q_stride) {
      cur = cur.pow(*q_stride);
    } else {
      for (unsigned i = 0; i < base_steps; ++i) cur = cur.pow(tower_->q());
    }
  }
  return cur;
}

std::vector<Element> Element::coeffs() const {
  if (level_ == Level::Base) throw Error(Errc::LevelMismatch, "Base coefficients are F_p digits; use base_digits");
  const Level lower = below(level_);
  const unsigned d = tower_->degree_over(level_, lower);
  const std::size_t sw = tower_->field(lower).words();
  std::vector<Element> out;
  out.reserve(d);
  if (d == 1) {
    out.emplace_back(tower_, lower, words_);
    return out;
  }
  std::vector<Word> c(static_cast<std::size_t>(d) * sw);
  field().to_coeffs(data(), c.data());
  for (unsigned i = 0; i < d; ++i) {
    out.emplace_back(tower_, lower, std::vector<Word>(c.begin() + static_cast<std::ptrdiff_t>(i * sw),
                                                      c.begin() + static_cast<std::ptrdiff_t>((i + 1) * sw)));
  }
  return out;
}

std::uint64_t Element::rank() const {
  if (!field().order()) throw Error(Errc::InvalidArgument, "rank needs a field of 64-bit order");
  return field().rank_of(data());
}

}  // namespace hmrc
