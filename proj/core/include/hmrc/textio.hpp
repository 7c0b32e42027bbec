#pragma once

// Text formats for elements, matrices, element lists, parameter configs,
// erasure patterns, received words and instance bundles.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "hmrc/derive.hpp"

namespace hmrc {

/// `b:`, `m:` or `t:` followed by the little-endian coefficients over the next
/// lower level. A coefficient is a bare integer when its level has degree 1
/// over F_p and a parenthesized coefficient list otherwise.
std::string format_element(const Element& a);
Element parse_element(const TowerPtr& tower, std::string_view text);

/// Header `q=<p>^<s> level=<b|m|t> rows=<r> cols=<c>`, then one row per line.
void write_matrix(std::ostream& out, const MatrixF& m);
MatrixF read_matrix(std::istream& in, const TowerPtr& tower);

struct ElementList {
  std::vector<Element> elems;
  std::size_t kwise = 0;
  unsigned degree = 1;
};
/// Header `count=<n> kwise=<k> base_q=<q> degree=<d>`, then one element per line.
void write_element_list(std::ostream& out, const ElementList& list, std::uint64_t base_q);
ElementList read_element_list(std::istream& in, const TowerPtr& tower);

struct ParamsConfig {
  CodeParams params;
  std::optional<std::uint64_t> q, seed;
  std::optional<ConstructionKind> construction;
};
/// `key=value` lines (`#` starts a comment): family, k, r1, r2, h1, h2, delta,
/// and optionally q, seed, construction.
ParamsConfig parse_params_config(std::string_view text);
std::string format_params_config(const ParamsConfig& cfg);

/// `D[i][s]=j1,j2; G[i]=j; X=c1,c2` with 1-based indices.
ErasurePattern parse_pattern(std::string_view text, const CodeParams& p);
std::string format_pattern(const ErasurePattern& pattern);

/// One element per line, `?` marks an erasure.
std::vector<std::optional<Element>> parse_received(std::string_view text, const TowerPtr& tower);
std::string format_word(std::span<const Element> word);

/// `p= s= m1= m=` then the moduli as element lists over F_p, F_q and F_{q^m1}.
std::string format_tower(const FieldTower& tower);
TowerPtr parse_tower(std::string_view text);

/// Bundle directory: params.cfg, tower.txt, H.mat, and when present
/// alphas.txt, lambdas.txt and derive.log.
void save_instance(const std::filesystem::path& dir, const CodeInstance& inst, const DeriveLog* log = nullptr);
CodeInstance load_instance(const std::filesystem::path& dir);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace hmrc
