#include "hmrc/derive.hpp"

namespace hmrc {

namespace {

std::string set_text(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out + "}";
}

}  // namespace

std::string DeriveLog::to_string() const {
  std::string out;
  out += std::string("case=") + (global_groups_aligned ? "aligned" : "shortened") + "\n";
  out += "primary=" + set_text(primary) + "\n";
  out += "data=" + set_text(data) + "\n";
  out += "globals=" + set_text(globals) + "\n";
  out += "shortened=" + set_text(shortened) + "\n";
  out += "dropped=" + set_text(dropped) + "\n";
  out += "kept=" + set_text(kept) + "\n";
  return out;
}

CodeParams derived_params(const CodeParams& hl) {
  if (hl.family != Family::HL) throw Error(Errc::InvalidArgument, "derivation starts from an HL code");
  derive_dims(hl);
  if (hl.h2 % hl.r2 != 0) throw Error(Errc::UnsupportedCase, "derivation needs r2 | h2");
  if (hl.r1 % hl.r2 != 0) throw Error(Errc::UnsupportedCase, "HDL codes need r2 | r1");
  CodeParams out = hl;
  out.family = Family::HDL;
  if (hl.h1 % hl.r1 != 0) out.k = hl.k / hl.r1 * hl.r1;
  if (out.k == 0) throw Error(Errc::UnsupportedCase, "no complete data group survives");
  return out;
}

std::optional<CodeParams> hl_source(const CodeParams& hdl) {
  if (hdl.family != Family::HDL) throw Error(Errc::InvalidArgument, "expected HDL parameters");
  derive_dims(hdl);
  CodeParams hl = hdl;
  hl.family = Family::HL;
  if (hdl.h1 % hdl.r1 != 0) hl.k = hdl.k + (hdl.r1 - hdl.h1 % hdl.r1);
  if (!valid_params(hl)) return std::nullopt;
  try {
    if (derived_params(hl) == hdl) return hl;
  } catch (const Error&) {
  }
  return std::nullopt;
}

Derived hdl_from_hl(const CodeInstance& hl, unsigned workers) {
  const CodeParams& p = hl.params;
  const CodeParams q = derived_params(p);
  if (!is_mr(hl, workers).pass) throw Error(Errc::NotMR, "input is not maximally recoverable");

  const Dims& d = hl.dims;
  const GroupStructure& g = hl.groups;
  Derived out;
  DeriveLog& log = out.log;
  log.global_groups_aligned = p.h1 % p.r1 == 0;
  log.primary = AdmissibleSets(p).at(0);
  std::vector<std::uint32_t> data(log.primary.begin(), log.primary.begin() + p.k);
  std::vector<std::uint32_t> globals(log.primary.begin() + p.k, log.primary.end());
  log.data = IndexSet(data);
  log.globals = IndexSet(globals);

  const unsigned full_groups = q.k / p.r1;
  const unsigned data_blocks = p.r1 / p.r2;
  std::vector<std::uint32_t> kept, shortened;
  for (unsigned i = 0; i < d.t1; ++i) {
    const IndexSet prim_i = log.primary.intersect(g.A[i]);
    if (i < full_groups) {
      // data blocks stay whole; the remaining blocks keep r2 symbols as mid parities
      for (unsigned s = 0; s < d.t2; ++s) {
        const IndexSet& B = g.B[i][s];
        const std::size_t keep = s < data_blocks ? B.size() : p.r2;
        kept.insert(kept.end(), B.begin(), B.begin() + keep);
      }
      continue;
    }
    for (auto c : prim_i) {
      if (log.data.contains(c)) {
        shortened.push_back(c);
      } else {
        kept.push_back(c);
      }
    }
  }
  log.kept = IndexSet(kept);
  log.shortened = IndexSet(shortened);
  log.dropped = log.kept.complement(d.n);

  // systematic generator on the data symbols, shortened rows removed
  const MatrixF G = null_space(hl.H);
  const MatrixF Gsys = inverse(restrict(G, log.data)) * G;
  std::vector<std::size_t> rows;
  for (std::size_t j = 0; j < data.size(); ++j) {
    if (!log.shortened.contains(data[j])) rows.push_back(j);
  }
  const MatrixF Gq = restrict(Gsys.select_rows(rows), log.kept);

  CodeInstance& inst = out.instance;
  inst.params = q;
  inst.dims = derive_dims(q);
  inst.groups = group_structure(q);
  inst.tower = hl.tower;
  inst.kind = ConstructionKind::Derived;
  inst.beta = hl.beta;
  inst.H = null_space(Gq);
  if (inst.H.cols() != inst.dims.n || inst.H.rows() != inst.dims.n - q.k) {
    throw Error(Errc::VerificationFailed, "derived code has the wrong shape");
  }
  if (!is_mr(inst, workers).pass) throw Error(Errc::VerificationFailed, "derived code is not maximally recoverable");
  return out;
}

}  // namespace hmrc
