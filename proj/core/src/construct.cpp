#include "hmrc/construct.hpp"

#include <algorithm>

namespace hmrc {

std::string_view construction_name(ConstructionKind k) noexcept {
  switch (k) {
    case ConstructionKind::General: return "general";
    case ConstructionKind::SingleGlobal: return "single-global";
    case ConstructionKind::Derived: return "derived";
  }
  return "?";
}

ConstructionKind construction_from_name(std::string_view name) {
  if (name == "general") return ConstructionKind::General;
  if (name == "single-global") return ConstructionKind::SingleGlobal;
  if (name == "derived") return ConstructionKind::Derived;
  throw Error(Errc::Parse, "unknown construction '" + std::string(name) + "'");
}

MatrixF local_parity_block(const TowerPtr& tower, const Element& beta, unsigned n2, unsigned delta) {
  if (tower->q() < n2) {
    throw Error(Errc::FieldTooSmall, "q = " + std::to_string(tower->q()) + " < n2 = " + std::to_string(n2));
  }
  if (delta > n2) throw Error(Errc::ShapeMismatch, "delta exceeds the local group size");
  MatrixF m(tower, Level::Base, delta, n2);
  if (delta == 0) return m;
  m.set(0, 0, tower->one(Level::Base));
  for (unsigned j = 1; j < n2; ++j) {
    const Element point = beta.pow(j);
    Element v = tower->one(Level::Base);
    for (unsigned r = 0; r < delta; ++r) {
      m.set(r, j, v);
      v *= point;
    }
  }
  return m;
}

MatrixF build_moore(std::span<const Element> elems, unsigned rows, Level stride) {
  if (elems.empty()) throw Error(Errc::ShapeMismatch, "build_moore of an empty row");
  Level lvl = elems.front().level();
  for (const auto& e : elems) lvl = std::max(lvl, e.level());
  MatrixF m(elems.front().tower_ptr(), lvl, rows, elems.size());
  for (std::size_t j = 0; j < elems.size(); ++j) {
    Element v = elems[j];
    for (unsigned r = 0; r < rows; ++r) {
      m.set(r, j, v);
      if (r + 1 < rows) v = v.frobenius(stride);
    }
  }
  return m;
}

ParameterChoice choose_parameters(const CodeParams& p, const ChoiceOptions& opts) {
  if (p.family != Family::HL) throw Error(Errc::InvalidArgument, "constructions produce HL codes");
  const Dims d = derive_dims(p);
  if (opts.single_global && p.h1 != 1) throw Error(Errc::WrongH1, "single-global construction needs h1 = 1");

  std::uint64_t q = opts.strict_q ? smallest_prime_power_above(d.n, true) : smallest_prime_power_above(d.n2);
  if (opts.q) {
    q = *opts.q;
    if (!prime_power(q)) throw Error(Errc::InvalidArgument, std::to_string(q) + " is not a prime power");
    if (q < d.n2) throw Error(Errc::FieldTooSmall, "q = " + std::to_string(q) + " is below n2");
  }
  const auto pp = prime_power(q);
  const auto base_tower = FieldTower::create(pp->first, pp->second, 1, 1);

  ParameterChoice c;
  c.alpha_kwise = opts.single_global ? static_cast<std::size_t>(p.delta + 1) * (p.h2 + 1)
                                     : static_cast<std::size_t>(p.delta + 1) * p.h2;
  std::optional<IndependentSet> aset;
  if (c.alpha_kwise > 0) {
    aset = independent_set(base_tower, Level::Base, static_cast<std::size_t>(d.n2) * d.t2, c.alpha_kwise);
    c.alpha_degree = aset->degree;
    c.alpha_method = aset->method;
  }
  const unsigned m1 = c.alpha_degree;
  auto tower = FieldTower::create(pp->first, pp->second, m1, m1);

  std::optional<IndependentSet> lset;
  if (!opts.single_global && p.h1 > 0) {
    c.lambda_kwise = static_cast<std::size_t>(p.delta + 1) * (p.h2 + 1) * p.h1;
    lset = independent_set(tower, Level::Mid, d.n, c.lambda_kwise);
    c.lambda_degree = lset->degree;
    c.lambda_method = lset->method;
    tower = FieldTower::with_top_degree(tower, m1 * lset->degree);
  }
  c.tower = tower;
  if (aset) c.alphas = embed_columns(*aset, tower, Level::Base, Level::Mid);
  if (lset) c.lambdas = embed_columns(*lset, tower, Level::Mid, Level::Top);
  c.beta = tower->primitive_element();
  return c;
}

namespace {

CodeInstance assemble(const CodeParams& p, const TowerPtr& tower, const Element& beta,
                      std::span<const Element> alphas, std::span<const Element> lambdas, bool single) {
  if (p.family != Family::HL) throw Error(Errc::InvalidArgument, "constructions produce HL codes");
  CodeInstance inst;
  inst.params = p;
  inst.dims = derive_dims(p);
  inst.groups = group_structure(p);
  inst.tower = tower;
  inst.beta = beta;
  inst.kind = single ? ConstructionKind::SingleGlobal : ConstructionKind::General;
  const Dims& d = inst.dims;
  const bool need_alphas = p.h2 > 0 || single;
  if (need_alphas && alphas.size() != static_cast<std::size_t>(d.n2) * d.t2) {
    throw Error(Errc::ShapeMismatch, "expected n2 * t2 alphas, got " + std::to_string(alphas.size()));
  }
  if (!single && p.h1 > 0 && lambdas.size() != d.n) {
    throw Error(Errc::ShapeMismatch, "expected n lambdas, got " + std::to_string(lambdas.size()));
  }
  if (need_alphas) {
    for (unsigned s = 0; s < d.t2; ++s) {
      inst.alphas.emplace_back(alphas.begin() + s * d.n2, alphas.begin() + (s + 1) * d.n2);
    }
  }
  if (!single && p.h1 > 0) {
    for (unsigned i = 0; i < d.t1; ++i) {
      inst.lambdas.emplace_back();
      for (unsigned s = 0; s < d.t2; ++s) {
        const auto* first = lambdas.data() + (i * d.t2 + s) * d.n2;
        inst.lambdas.back().emplace_back(first, first + d.n2);
      }
    }
  }

  const unsigned group_rows = d.t2 * p.delta + p.h2;
  const unsigned rows = d.t1 * group_rows + p.h1;
  MatrixF H(tower, Level::Top, rows, d.n);
  const MatrixF local_block = local_parity_block(tower, beta, d.n2, p.delta);
  const Field& f = H.field();
  auto put = [&](const MatrixF& block, std::size_t r0, std::size_t c0) {
    const MatrixF b = block.lift(Level::Top);
    for (std::size_t r = 0; r < b.rows(); ++r) {
      for (std::size_t c = 0; c < b.cols(); ++c) f.copy(b.raw(r, c), H.raw(r0 + r, c0 + c));
    }
  };
  std::optional<MatrixF> mid_strip;
  if (p.h2 > 0) mid_strip = build_moore(alphas, p.h2, Level::Base);
  std::optional<MatrixF> single_row;
  if (single) {
    std::vector<Element> lifted;
    for (const auto& a : alphas) lifted.push_back(a.frobenius(Level::Base, p.h2));
    single_row = MatrixF(tower, Level::Mid, 1, lifted.size());
    for (std::size_t j = 0; j < lifted.size(); ++j) single_row->set(0, j, lifted[j]);
  }
  for (unsigned i = 0; i < d.t1; ++i) {
    const std::size_t r0 = i * group_rows, c0 = i * d.n1;
    for (unsigned s = 0; s < d.t2; ++s) put(local_block, r0 + s * p.delta, c0 + s * d.n2);
    if (mid_strip) put(*mid_strip, r0 + d.t2 * p.delta, c0);
    if (p.h1 == 0) continue;
    const std::size_t g0 = d.t1 * group_rows;
    if (single) {
      put(*single_row, g0, c0);
      continue;
    }
    for (unsigned s = 0; s < d.t2; ++s) {
      put(build_moore(inst.lambdas[i][s], p.h1, Level::Mid), g0, c0 + s * d.n2);
    }
  }
  inst.H = std::move(H);
  return inst;
}

}  // namespace

CodeInstance assemble_H(const CodeParams& p, const TowerPtr& tower, const Element& beta,
                        std::span<const Element> alphas, std::span<const Element> lambdas) {
  return assemble(p, tower, beta, alphas, lambdas, false);
}

CodeInstance build_h1_one(const CodeParams& p, const TowerPtr& tower, const Element& beta,
                          std::span<const Element> alphas) {
  if (p.h1 != 1) throw Error(Errc::WrongH1, "single-global construction needs h1 = 1, got " + std::to_string(p.h1));
  return assemble(p, tower, beta, alphas, {}, true);
}

CodeInstance construct(const CodeParams& p, const ChoiceOptions& opts) {
  const ParameterChoice c = choose_parameters(p, opts);
  CodeInstance inst = opts.single_global ? build_h1_one(p, c.tower, c.beta, c.alphas)
                                         : assemble_H(p, c.tower, c.beta, c.alphas, c.lambdas);
  inst.alpha_kwise = c.alpha_kwise;
  inst.lambda_kwise = c.lambda_kwise;
  return inst;
}

// ---------------------------------------------------------------------------

namespace {

// v_rest - v_erased * L for a row vector split by the erased positions.
std::vector<Element> reduce_row(const std::vector<Element>& erased, const std::vector<Element>& rest,
                                const MatrixF& L) {
  std::vector<Element> out = rest;
  for (std::size_t c = 0; c < rest.size(); ++c) {
    for (std::size_t r = 0; r < erased.size(); ++r) out[c] = out[c] - erased[r] * L.at(r, c);
  }
  return out;
}

}  // namespace

ReductionTrace reduction_trace(const CodeInstance& inst, const ErasurePattern& pattern) {
  const CodeParams& p = inst.params;
  if (inst.kind == ConstructionKind::Derived) {
    throw Error(Errc::UnsupportedCase, "reduction trace needs a constructed HL instance");
  }
  pattern.validate(p);
  if (!pattern.extra.empty()) throw Error(Errc::InvalidArgument, "reduction trace takes patterns without extras");
  const Dims& d = inst.dims;
  const TowerPtr& tower = inst.tower;
  const bool single = inst.kind == ConstructionKind::SingleGlobal;
  const MatrixF local_check = local_parity_block(tower, inst.beta, d.n2, p.delta);
  const bool have_alphas = !inst.alphas.empty();
  const bool have_global = p.h1 > 0;

  auto global_entry = [&](unsigned i, unsigned s, unsigned j) {
    if (single) return inst.alphas[s][j].frobenius(Level::Base, p.h2);
    return inst.lambdas[i][s][j];
  };

  ReductionTrace tr;
  for (unsigned i = 0; i < d.t1; ++i) {
    tr.local_elim.emplace_back();
    std::vector<Element> mids, globals;
    std::vector<std::uint32_t> positions;
    for (unsigned s = 0; s < d.t2; ++s) {
      const auto& del = pattern.delta[i][s];
      IndexSet dset(std::vector<std::uint32_t>(del.begin(), del.end()));
      const IndexSet rest = dset.complement(d.n2);
      MatrixF elim_local(tower, Level::Base, p.delta, rest.size());
      if (p.delta > 0) {
        std::vector<std::uint32_t> ordered(del.begin(), del.end());
        elim_local = inverse(restrict(local_check, IndexSet(ordered))) * restrict(local_check, rest);
      }
      tr.local_elim.back().push_back(elim_local);
      auto pick = [&](auto&& entry) {
        std::vector<Element> er, re;
        for (auto j : dset) er.push_back(entry(j - 1));
        for (auto j : rest) re.push_back(entry(j - 1));
        return reduce_row(er, re, elim_local);
      };
      if (have_alphas) {
        auto v = pick([&](unsigned j) { return inst.alphas[s][j]; });
        mids.insert(mids.end(), v.begin(), v.end());
      }
      if (have_global) {
        auto v = pick([&](unsigned j) { return global_entry(i, s, j); });
        globals.insert(globals.end(), v.begin(), v.end());
      }
      for (auto j : rest) positions.push_back(s * d.n2 + j);
    }
    tr.mid_columns.push_back(mids);
    tr.mid_positions.push_back(positions);
    tr.global_columns.push_back(globals);

    // split by gamma
    std::vector<std::size_t> gamma_idx, rest_idx;
    const auto& gam = pattern.gamma[i];
    for (std::size_t x = 0; x < positions.size(); ++x) {
      if (std::find(gam.begin(), gam.end(), positions[x]) != gam.end()) {
        gamma_idx.push_back(x);
      } else {
        rest_idx.push_back(x);
      }
    }
    // gamma in the pattern's own order
    std::vector<std::size_t> g_ordered;
    for (auto gpos : gam) {
      g_ordered.push_back(static_cast<std::size_t>(std::find(positions.begin(), positions.end(), gpos) - positions.begin()));
    }

    if (p.h2 > 0) {
      const MatrixF moore = build_moore(mids, p.h2, Level::Base);
      tr.mid_moore.push_back(moore);
      if (!kwise_independent(mids, p.h2, Level::Base).independent) {
        tr.mid_independent = false;
        if (tr.note.empty()) tr.note = "mid columns of group " + std::to_string(i + 1) + " are not h2-wise independent";
      }
      MatrixF elim;
      try {
        elim = inverse(moore.select_columns(g_ordered)) * moore.select_columns(rest_idx);
      } catch (const Error& e) {
        if (e.code() != Errc::Singular) throw;
        tr.mid_independent = false;
        if (tr.note.empty()) tr.note = "singular mid block in group " + std::to_string(i + 1);
        tr.mid_elim.emplace_back(tower, Level::Mid, p.h2, rest_idx.size());
        continue;
      }
      tr.mid_elim.push_back(elim);
      if (have_global) {
        for (std::size_t c = 0; c < rest_idx.size(); ++c) {
          Element v = globals[rest_idx[c]];
          for (std::size_t r = 0; r < g_ordered.size(); ++r) v = v - globals[g_ordered[r]] * elim.at(r, c);
          tr.residual_globals.push_back(v);
        }
      }
    } else {
      tr.mid_moore.emplace_back(tower, Level::Mid, 0, mids.size());
      tr.mid_elim.emplace_back(tower, Level::Mid, 0, rest_idx.size());
      if (have_global) {
        for (auto x : rest_idx) tr.residual_globals.push_back(globals[x]);
      }
    }
  }
  if (have_global && tr.mid_independent && !tr.residual_globals.empty()) {
    std::vector<Element> residual;
    for (const auto& t : tr.residual_globals) residual.push_back(tower->embed(t, Level::Top));
    if (!kwise_independent(residual, p.h1, Level::Mid).independent) {
      tr.global_independent = false;
      if (tr.note.empty()) tr.note = "residual global columns are not h1-wise independent over the mid field";
    }
  }
  tr.verdict = tr.mid_independent && tr.global_independent;
  return tr;
}

}  // namespace hmrc
