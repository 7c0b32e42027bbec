#pragma once

// Parity-check constructions for hierarchical-locality codes, the parameter
// selection rule, and the erasure-reduction diagnostics.

#include <optional>
#include <string>
#include <string_view>

#include "hmrc/indep.hpp"
#include "hmrc/model.hpp"

namespace hmrc {

enum class ConstructionKind : std::uint8_t { General, SingleGlobal, Derived };

std::string_view construction_name(ConstructionKind k) noexcept;
ConstructionKind construction_from_name(std::string_view name);

struct CodeInstance {
  CodeParams params;
  Dims dims;
  GroupStructure groups;
  TowerPtr tower;
  MatrixF H;  // (n - k) x n
  ConstructionKind kind = ConstructionKind::General;
  Element beta;
  std::vector<std::vector<Element>> alphas;                // t2 x n2, Mid
  std::vector<std::vector<std::vector<Element>>> lambdas;  // t1 x t2 x n2, Top
  std::size_t alpha_kwise = 0, lambda_kwise = 0;
};

/// delta x n2 over Base. Column 1 is e_1; column j >= 2 holds the powers of
/// beta^{j-1}. Errc::FieldTooSmall when q < n2.
MatrixF local_parity_block(const TowerPtr& tower, const Element& beta, unsigned n2, unsigned delta);

/// Row l is the l-fold Frobenius image (stride Base: x -> x^q, stride Mid:
/// x -> x^{q^m1}) of the element row.
MatrixF build_moore(std::span<const Element> elems, unsigned rows, Level stride);

struct ParameterChoice {
  TowerPtr tower;
  Element beta;
  std::vector<Element> alphas;   // n2 * t2, Mid
  std::vector<Element> lambdas;  // n, Top (empty for the single-global construction)
  std::size_t alpha_kwise = 0, lambda_kwise = 0;
  IndepMethod alpha_method = IndepMethod::Bch, lambda_method = IndepMethod::Bch;
  unsigned alpha_degree = 1, lambda_degree = 1;  // over Base and over Mid
};

struct ChoiceOptions {
  bool single_global = false;  // h1 = 1 construction: alphas carry the global row
  bool strict_q = false;       // q >= n instead of q > n2
  std::optional<std::uint64_t> q;  // explicit base field size, overrides both rules
};

/// q is the smallest prime power above n2 (or at least n with strict_q);
/// alphas are BCH columns certified (delta+1)h2-wise independent over F_q
/// ((delta+1)(h2+1) for the single-global construction); lambdas are BCH
/// columns over F_{q^m1} certified (delta+1)(h2+1)h1-wise independent, and m
/// is m1 times their achieved degree.
ParameterChoice choose_parameters(const CodeParams& p, const ChoiceOptions& opts = {});

/// Block layout: per mid group, t2 copies of local_block on the diagonal and the alpha
/// Moore strip below; the h1 global rows span every column.
CodeInstance assemble_H(const CodeParams& p, const TowerPtr& tower, const Element& beta,
                        std::span<const Element> alphas, std::span<const Element> lambdas);

/// Single-global variant: the global row is alpha^{q^{h2}} for every mid group.
/// Errc::WrongH1 unless h1 = 1.
CodeInstance build_h1_one(const CodeParams& p, const TowerPtr& tower, const Element& beta,
                          std::span<const Element> alphas);

/// choose_parameters followed by the matching assembly.
CodeInstance construct(const CodeParams& p, const ChoiceOptions& opts = {});

struct ReductionTrace {
  std::vector<std::vector<MatrixF>> local_elim;  // t1 x t2, delta x (n2 - delta) over Base
  std::vector<std::vector<Element>> mid_columns;  // t1 lists of r1 + h2 Mid elements, ordered by (s, position)
  std::vector<std::vector<std::uint32_t>> mid_positions;  // matching positions in [1, n1]
  std::vector<MatrixF> mid_moore;                  // h2 x (r1 + h2) Moore matrices of mid_columns
  std::vector<std::vector<Element>> global_columns;  // t1 lists of r1 + h2 Top elements
  std::vector<MatrixF> mid_elim;                   // h2 x r1
  std::vector<Element> residual_globals;           // t1 * r1 Top elements
  bool mid_independent = true, global_independent = true;
  bool verdict = true;
  std::string note;  // failure explanation, empty on success
};

/// Row-reduces away the pattern's local and mid erasures and checks that the
/// reduced mid columns of every group are h2-wise independent over Base and
/// the residual global columns are h1-wise independent over Mid. Singular
/// blocks are reported in the verdict.
ReductionTrace reduction_trace(const CodeInstance& inst, const ErasurePattern& pattern);

}  // namespace hmrc
