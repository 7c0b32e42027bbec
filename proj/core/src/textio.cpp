#include "hmrc/textio.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace hmrc {

namespace {

Level lower(Level level) { return static_cast<Level>(static_cast<int>(level) - 1); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(Errc::Parse, "expected a non-negative integer for " + std::string(what) + ", got '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
  }
  while (!out.empty() && trim(out.back()).empty()) out.pop_back();
  return out;
}

// `key=value` tokens separated by whitespace
std::map<std::string, std::string, std::less<>> header_fields(std::string_view line) {
  std::map<std::string, std::string, std::less<>> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw Error(Errc::Parse, "malformed header token '" + tok + "'");
    out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

const std::string& field_of(const std::map<std::string, std::string, std::less<>>& h, std::string_view key) {
  const auto it = h.find(key);
  if (it == h.end()) throw Error(Errc::Parse, "header lacks '" + std::string(key) + "'");
  return it->second;
}

// ---- elements ---------------------------------------------------------------

// Coefficient of a level-`level` element: digits when level is Base and the
// coefficient lives in F_p, otherwise an element of the next lower level.
void render_list(const FieldTower& t, const Element& a, std::string& out);

void render_coeff(const FieldTower& t, const Element& c, std::string& out) {
  if (t.prime_degree(c.level()) == 1) {
    out += std::to_string(c.level() == Level::Base ? t.base_digits(c)[0] : c.rank());
    return;
  }
  out += '(';
  render_list(t, c, out);
  out += ')';
}

void render_list(const FieldTower& t, const Element& a, std::string& out) {
  if (a.level() == Level::Base) {
    const auto digits = t.base_digits(a);
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(digits[i]);
    }
    return;
  }
  const auto coords = t.decompose(a, lower(a.level()));
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ',';
    render_coeff(t, coords[i], out);
  }
}

class ElementParser {
 public:
  ElementParser(const TowerPtr& tower, std::string_view text) : t_(tower), s_(text) {}

  Element element() {
    skip();
    if (s_.size() < 2 || s_[1] != ':') throw Error(Errc::Parse, "element lacks a level prefix: '" + std::string(s_) + "'");
    const Level level = level_from_tag(s_[0]);
    pos_ = 2;
    Element out = list(level);
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return out;
  }

 private:
  Element list(Level level) {
    if (level == Level::Base) {
      std::vector<std::uint64_t> digits;
      for (unsigned i = 0; i < t_->s(); ++i) {
        if (i) expect(',');
        digits.push_back(number());
        if (digits.back() >= t_->p()) fail("digit out of range");
      }
      return t_->base_from_digits(digits);
    }
    const Level sub = lower(level);
    std::vector<Element> coords;
    const unsigned deg = t_->degree_over(level, sub);
    for (unsigned i = 0; i < deg; ++i) {
      if (i) expect(',');
      coords.push_back(coeff(sub));
    }
    return t_->recompose(coords, level);
  }

  Element coeff(Level level) {
    skip();
    if (t_->prime_degree(level) == 1) {
      const auto v = number();
      if (v >= t_->p()) fail("digit out of range");
      return t_->from_rank(level, v);
    }
    expect('(');
    Element e = list(level);
    expect(')');
    return e;
  }

  std::uint64_t number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a digit");
    return parse_uint(s_.substr(start, pos_ - start), "coefficient");
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::Parse, why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  const TowerPtr& t_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string q_text(const FieldTower& t) { return std::to_string(t.p()) + "^" + std::to_string(t.s()); }

}  // namespace

std::string format_element(const Element& a) {
  std::string out(1, level_tag(a.level()));
  out += ':';
  render_list(a.tower(), a, out);
  return out;
}

Element parse_element(const TowerPtr& tower, std::string_view text) { return ElementParser(tower, text).element(); }

// ---- matrices -----------------------------------------------------------------

void write_matrix(std::ostream& out, const MatrixF& m) {
  out << "q=" << q_text(m.tower()) << " level=" << level_tag(m.level()) << " rows=" << m.rows()
      << " cols=" << m.cols() << "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << format_element(m.at(r, c));
    }
    out << "\n";
  }
}

MatrixF read_matrix(std::istream& in, const TowerPtr& tower) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::Parse, "matrix file is empty");
  const auto h = header_fields(line);
  if (field_of(h, "q") != q_text(*tower)) throw Error(Errc::Parse, "matrix field does not match the tower");
  const std::string& lv = field_of(h, "level");
  if (lv.size() != 1) throw Error(Errc::Parse, "bad level '" + lv + "'");
  const Level level = level_from_tag(lv[0]);
  const auto rows = parse_uint(field_of(h, "rows"), "rows");
  const auto cols = parse_uint(field_of(h, "cols"), "cols");
  MatrixF m(tower, level, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!std::getline(in, line)) throw Error(Errc::Parse, "matrix has too few rows");
    std::istringstream row(line);
    std::string tok;
    std::size_t c = 0;
    while (row >> tok) {
      if (c >= cols) throw Error(Errc::Parse, "matrix row " + std::to_string(r + 1) + " is too long");
      const Element e = parse_element(tower, tok);
      if (e.level() != level) throw Error(Errc::Parse, "matrix entry at the wrong level");
      m.set(r, c++, e);
    }
    if (c != cols) throw Error(Errc::Parse, "matrix row " + std::to_string(r + 1) + " is too short");
  }
  return m;
}

// ---- element lists ---------------------------------------------------------------

void write_element_list(std::ostream& out, const ElementList& list, std::uint64_t base_q) {
  out << "count=" << list.elems.size() << " kwise=" << list.kwise << " base_q=" << base_q
      << " degree=" << list.degree << "\n";
  for (const auto& e : list.elems) out << format_element(e) << "\n";
}

ElementList read_element_list(std::istream& in, const TowerPtr& tower) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::Parse, "element list is empty");
  const auto h = header_fields(line);
  ElementList list;
  const auto count = parse_uint(field_of(h, "count"), "count");
  list.kwise = parse_uint(field_of(h, "kwise"), "kwise");
  list.degree = static_cast<unsigned>(parse_uint(field_of(h, "degree"), "degree"));
  if (parse_uint(field_of(h, "base_q"), "base_q") != tower->q()) {
    throw Error(Errc::Parse, "element list base field does not match the tower");
  }
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw Error(Errc::Parse, "element list is too short");
    list.elems.push_back(parse_element(tower, trim(line)));
  }
  return list;
}

// ---- parameter configs ---------------------------------------------------------------

ParamsConfig parse_params_config(std::string_view text) {
  ParamsConfig cfg;
  std::map<std::string, std::string, std::less<>> kv;
  for (auto line : lines_of(text)) {
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(Errc::Parse, "config line lacks '=': '" + std::string(line) + "'");
    const std::string key(trim(line.substr(0, eq)));
    if (kv.contains(key)) throw Error(Errc::Parse, "duplicate config key '" + key + "'");
    kv[key] = std::string(trim(line.substr(eq + 1)));
  }
  auto num = [&](const char* key) -> unsigned {
    const auto v = parse_uint(field_of(kv, key), key);
    if (v > 1'000'000) throw Error(Errc::InvalidArgument, std::string(key) + " is out of range");
    return static_cast<unsigned>(v);
  };
  CodeParams& p = cfg.params;
  if (const auto it = kv.find("family"); it != kv.end()) p.family = family_from_name(it->second);
  p.k = num("k");
  p.r1 = num("r1");
  p.r2 = num("r2");
  p.h1 = num("h1");
  p.h2 = num("h2");
  p.delta = num("delta");
  if (const auto it = kv.find("q"); it != kv.end()) cfg.q = parse_uint(it->second, "q");
  if (const auto it = kv.find("seed"); it != kv.end()) cfg.seed = parse_uint(it->second, "seed");
  if (const auto it = kv.find("construction"); it != kv.end()) cfg.construction = construction_from_name(it->second);
  for (const auto& [key, value] : kv) {
    static const char* known[] = {"family", "k", "r1", "r2", "h1", "h2", "delta", "q", "seed", "construction"};
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw Error(Errc::Parse, "unknown config key '" + key + "'");
    }
  }
  return cfg;
}

std::string format_params_config(const ParamsConfig& cfg) {
  const CodeParams& p = cfg.params;
  std::ostringstream out;
  out << "family=" << family_name(p.family) << "\n"
      << "k=" << p.k << "\nr1=" << p.r1 << "\nr2=" << p.r2 << "\nh1=" << p.h1 << "\nh2=" << p.h2
      << "\ndelta=" << p.delta << "\n";
  if (cfg.q) out << "q=" << *cfg.q << "\n";
  if (cfg.seed) out << "seed=" << *cfg.seed << "\n";
  if (cfg.construction) out << "construction=" << construction_name(*cfg.construction) << "\n";
  return out.str();
}

// ---- erasure patterns ---------------------------------------------------------------

namespace {

std::vector<std::uint32_t> parse_index_list(std::string_view s) {
  std::vector<std::uint32_t> out;
  s = trim(s);
  if (s.empty()) return out;
  for (auto tok : split(s, ',')) out.push_back(static_cast<std::uint32_t>(parse_uint(tok, "index")));
  return out;
}

// `[a]` or `[a][b]` after a one-letter key
std::vector<std::uint64_t> parse_subscripts(std::string_view s) {
  std::vector<std::uint64_t> out;
  while (!s.empty()) {
    if (s.front() != '[') throw Error(Errc::Parse, "malformed subscript '" + std::string(s) + "'");
    const auto close = s.find(']');
    if (close == std::string_view::npos) throw Error(Errc::Parse, "unclosed subscript");
    out.push_back(parse_uint(s.substr(1, close - 1), "subscript"));
    s.remove_prefix(close + 1);
  }
  return out;
}

std::string join(const std::vector<std::uint32_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

ErasurePattern parse_pattern(std::string_view text, const CodeParams& p) {
  const Dims d = derive_dims(p);
  ErasurePattern pat;
  pat.delta.assign(d.t1, std::vector<std::vector<std::uint32_t>>(d.t2));
  pat.gamma.assign(d.t1, {});
  std::vector<bool> seen_d(static_cast<std::size_t>(d.t1) * d.t2, false), seen_g(d.t1, false);
  bool seen_x = false;
  std::string flat(text);
  std::replace(flat.begin(), flat.end(), '\n', ';');
  for (auto item : split(flat, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw Error(Errc::Parse, "pattern item lacks '=': '" + std::string(item) + "'");
    const auto key = trim(item.substr(0, eq));
    const auto value = parse_index_list(item.substr(eq + 1));
    if (key.empty()) throw Error(Errc::Parse, "empty pattern key");
    const auto subs = parse_subscripts(key.substr(1));
    auto check_range = [](std::uint64_t v, unsigned hi, const char* what) {
      if (v < 1 || v > hi) throw Error(Errc::Parse, std::string(what) + " subscript out of range");
    };
    switch (key[0]) {
      case 'D': {
        if (subs.size() != 2) throw Error(Errc::Parse, "D needs two subscripts");
        check_range(subs[0], d.t1, "D");
        check_range(subs[1], d.t2, "D");
        const std::size_t slot = (subs[0] - 1) * d.t2 + (subs[1] - 1);
        if (seen_d[slot]) throw Error(Errc::Parse, "duplicate D entry");
        seen_d[slot] = true;
        pat.delta[subs[0] - 1][subs[1] - 1] = value;
        break;
      }
      case 'G': {
        if (subs.size() != 1) throw Error(Errc::Parse, "G needs one subscript");
        check_range(subs[0], d.t1, "G");
        if (seen_g[subs[0] - 1]) throw Error(Errc::Parse, "duplicate G entry");
        seen_g[subs[0] - 1] = true;
        pat.gamma[subs[0] - 1] = value;
        break;
      }
      case 'X': {
        if (!subs.empty() || seen_x) throw Error(Errc::Parse, "malformed X entry");
        seen_x = true;
        pat.extra = IndexSet(value);
        break;
      }
      default:
        throw Error(Errc::Parse, "unknown pattern key '" + std::string(key) + "'");
    }
  }
  pat.validate(p);
  return pat;
}

std::string format_pattern(const ErasurePattern& pattern) {
  std::vector<std::string> items;
  for (std::size_t i = 0; i < pattern.delta.size(); ++i) {
    for (std::size_t s = 0; s < pattern.delta[i].size(); ++s) {
      items.push_back("D[" + std::to_string(i + 1) + "][" + std::to_string(s + 1) + "]=" + join(pattern.delta[i][s]));
    }
  }
  for (std::size_t i = 0; i < pattern.gamma.size(); ++i) {
    items.push_back("G[" + std::to_string(i + 1) + "]=" + join(pattern.gamma[i]));
  }
  if (!pattern.extra.empty()) items.push_back("X=" + join(pattern.extra.values()));
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += "; ";
    out += items[i];
  }
  return out;
}

// ---- received words ---------------------------------------------------------------

std::vector<std::optional<Element>> parse_received(std::string_view text, const TowerPtr& tower) {
  std::vector<std::optional<Element>> out;
  for (auto line : lines_of(text)) {
    line = trim(line);
    if (line.empty()) throw Error(Errc::Parse, "blank line in received word");
    if (line == "?") {
      out.emplace_back(std::nullopt);
    } else {
      out.emplace_back(parse_element(tower, line));
    }
  }
  return out;
}

std::string format_word(std::span<const Element> word) {
  std::string out;
  for (const auto& e : word) out += format_element(e) + "\n";
  return out;
}

// ---- towers ---------------------------------------------------------------

std::string format_tower(const FieldTower& t) {
  std::ostringstream out;
  out << "p=" << t.p() << " s=" << t.s() << " m1=" << t.m1() << " m=" << t.m() << "\n";
  const auto& mod = t.moduli();
  out << "base=";
  for (std::size_t i = 0; i < mod.base.size(); ++i) out << (i ? "," : "") << mod.base[i];
  auto coeff_list = [&](const std::vector<Word>& words, Level level) {
    const std::size_t w = t.field(level).words();
    std::string s;
    for (std::size_t i = 0; i * w < words.size(); ++i) {
      if (i) s += ',';
      render_coeff(t, t.from_words(level, std::span<const Word>(words).subspan(i * w, w)), s);
    }
    return s;
  };
  out << "\nmid=" << coeff_list(mod.mid, Level::Base) << "\ntop=" << coeff_list(mod.top, Level::Mid) << "\n";
  return out.str();
}

TowerPtr parse_tower(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.size() != 4) throw Error(Errc::Parse, "tower spec needs four lines");
  const auto h = header_fields(lines[0]);
  const auto p = parse_uint(field_of(h, "p"), "p");
  const auto s = static_cast<unsigned>(parse_uint(field_of(h, "s"), "s"));
  const auto m1 = static_cast<unsigned>(parse_uint(field_of(h, "m1"), "m1"));
  const auto m = static_cast<unsigned>(parse_uint(field_of(h, "m"), "m"));
  auto value_of = [&](std::string_view line, std::string_view key) {
    if (line.substr(0, key.size() + 1) != std::string(key) + "=") {
      throw Error(Errc::Parse, "tower spec lacks '" + std::string(key) + "='");
    }
    return std::string(line.substr(key.size() + 1));
  };
  FieldTower::Moduli mod;
  for (auto tok : split(value_of(lines[1], "base"), ',')) mod.base.push_back(parse_uint(tok, "base modulus"));
  // coefficient lists are parsed against partial towers sharing the lower moduli
  // each coefficient is read as an element of its level, against a partial
  // tower that already holds the lower moduli
  auto parse_coeffs = [](const TowerPtr& t, const std::string& body, Level level) {
    std::vector<Word> words;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      if (i < body.size() && body[i] == '(') ++depth;
      if (i < body.size() && body[i] == ')') --depth;
      if (i == body.size() || (body[i] == ',' && depth == 0)) {
        const std::string item(trim(std::string_view(body).substr(start, i - start)));
        if (item.empty()) throw Error(Errc::Parse, "empty modulus coefficient");
        const Element e = parse_element(t, std::string(1, level_tag(level)) + ":" +
                                                (item.front() == '(' ? item.substr(1, item.size() - 2) : item));
        words.insert(words.end(), e.words().begin(), e.words().end());
        start = i + 1;
      }
    }
    return words;
  };
  const auto t0 = FieldTower::from_moduli(p, s, 1, 1, [&] {
    FieldTower::Moduli m0;
    m0.base = mod.base;
    return m0;
  }());
  mod.mid = parse_coeffs(t0, value_of(lines[2], "mid"), Level::Base);
  const auto t1 = FieldTower::from_moduli(p, s, m1, m1, [&] {
    FieldTower::Moduli m0;
    m0.base = mod.base;
    m0.mid = mod.mid;
    return m0;
  }());
  mod.top = parse_coeffs(t1, value_of(lines[3], "top"), Level::Mid);
  return FieldTower::from_moduli(p, s, m1, m, mod);
}

// ---- files and bundles ---------------------------------------------------------------

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(Errc::Io, "write failed for " + path.string());
}

void save_instance(const std::filesystem::path& dir, const CodeInstance& inst, const DeriveLog* log) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::Io, "cannot create " + dir.string() + ": " + ec.message());
  ParamsConfig cfg;
  cfg.params = inst.params;
  cfg.q = inst.tower->q();
  cfg.construction = inst.kind;
  write_file(dir / "params.cfg", format_params_config(cfg));
  write_file(dir / "tower.txt", format_tower(*inst.tower));
  write_file(dir / "beta.txt", format_element(inst.beta) + "\n");
  std::ostringstream h;
  write_matrix(h, inst.H);
  write_file(dir / "H.mat", h.str());
  const auto q = inst.tower->q();
  std::filesystem::remove(dir / "alphas.txt", ec);
  std::filesystem::remove(dir / "lambdas.txt", ec);
  std::filesystem::remove(dir / "derive.log", ec);
  if (!inst.alphas.empty()) {
    ElementList list;
    for (const auto& row : inst.alphas) list.elems.insert(list.elems.end(), row.begin(), row.end());
    list.kwise = inst.alpha_kwise;
    list.degree = inst.tower->m1();
    std::ostringstream out;
    write_element_list(out, list, q);
    write_file(dir / "alphas.txt", out.str());
  }
  if (!inst.lambdas.empty()) {
    ElementList list;
    for (const auto& grid : inst.lambdas) {
      for (const auto& row : grid) list.elems.insert(list.elems.end(), row.begin(), row.end());
    }
    list.kwise = inst.lambda_kwise;
    list.degree = inst.tower->m() / inst.tower->m1();
    std::ostringstream out;
    write_element_list(out, list, q);
    write_file(dir / "lambdas.txt", out.str());
  }
  if (log) write_file(dir / "derive.log", log->to_string());
}

CodeInstance load_instance(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error(Errc::Io, dir.string() + " is not an instance directory");
  const ParamsConfig cfg = parse_params_config(read_file(dir / "params.cfg"));
  CodeInstance inst;
  inst.params = cfg.params;
  inst.dims = derive_dims(cfg.params);
  inst.groups = group_structure(cfg.params);
  inst.kind = cfg.construction.value_or(ConstructionKind::General);
  inst.tower = parse_tower(read_file(dir / "tower.txt"));
  if (cfg.q && *cfg.q != inst.tower->q()) throw Error(Errc::Parse, "params.cfg q does not match the tower");
  inst.beta = parse_element(inst.tower, trim(read_file(dir / "beta.txt")));
  {
    std::istringstream in(read_file(dir / "H.mat"));
    inst.H = read_matrix(in, inst.tower).lift(Level::Top);
  }
  const Dims& d = inst.dims;
  if (inst.H.cols() != d.n) throw Error(Errc::ShapeMismatch, "H has " + std::to_string(inst.H.cols()) + " columns, expected n");
  if (std::filesystem::exists(dir / "alphas.txt")) {
    std::istringstream in(read_file(dir / "alphas.txt"));
    const ElementList list = read_element_list(in, inst.tower);
    if (list.elems.size() != static_cast<std::size_t>(d.t2) * d.n2) throw Error(Errc::ShapeMismatch, "alpha grid size");
    for (unsigned s = 0; s < d.t2; ++s) {
      inst.alphas.emplace_back(list.elems.begin() + s * d.n2, list.elems.begin() + (s + 1) * d.n2);
    }
    inst.alpha_kwise = list.kwise;
  }
  if (std::filesystem::exists(dir / "lambdas.txt")) {
    std::istringstream in(read_file(dir / "lambdas.txt"));
    const ElementList list = read_element_list(in, inst.tower);
    if (list.elems.size() != d.n) throw Error(Errc::ShapeMismatch, "lambda grid size");
    for (unsigned i = 0; i < d.t1; ++i) {
      inst.lambdas.emplace_back();
      for (unsigned s = 0; s < d.t2; ++s) {
        const auto first = list.elems.begin() + (i * d.t2 + s) * d.n2;
        inst.lambdas.back().emplace_back(first, first + d.n2);
      }
    }
    inst.lambda_kwise = list.kwise;
  }
  return inst;
}

}  // namespace hmrc
