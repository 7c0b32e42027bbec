#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "hmrc/textio.hpp"

namespace hmrc::cli {

namespace {

namespace fs = std::filesystem;

int exit_for(Errc code) {
  switch (code) {
    case Errc::Io: return kIo;
    case Errc::NotMR:
    case Errc::VerificationFailed:
    case Errc::NotCorrectable: return kFail;
    default: return kInvalid;
  }
}

std::string set_text(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out + "}";
}

void print_summary(std::ostream& out, const CodeInstance& inst) {
  const CodeParams& p = inst.params;
  const Dims& d = inst.dims;
  const FieldTower& t = *inst.tower;
  out << "family=" << family_name(p.family) << " construction=" << construction_name(inst.kind) << "\n"
      << "k=" << p.k << " r1=" << p.r1 << " r2=" << p.r2 << " h1=" << p.h1 << " h2=" << p.h2 << " delta=" << p.delta
      << "\n"
      << "t1=" << d.t1 << " t2=" << d.t2 << " n1=" << d.n1 << " n2=" << d.n2 << " n=" << d.n << "\n"
      << "q=" << t.q() << " m1=" << t.m1() << " m=" << t.m() << "\n"
      << "H=" << inst.H.rows() << "x" << inst.H.cols() << "\n";
}

void print_matrix(std::ostream& out, const std::string& name, const MatrixF& m) {
  out << name << " ";
  write_matrix(out, m);
}

void print_list(std::ostream& out, const std::string& name, const std::vector<Element>& elems) {
  out << name << " =";
  for (const auto& e : elems) out << ' ' << format_element(e);
  out << "\n";
}

struct Options {
  std::string config, out, instance, received, pattern, family, output_file;
  bool h1_one = false, strict_q = false, mask_millis = false;
  unsigned workers = 1;
  std::optional<unsigned> cap;
  std::optional<std::uint64_t> q;
};

int cmd_construct(const Options& o, std::ostream& out) {
  ParamsConfig cfg = parse_params_config(read_file(o.config));
  CodeParams p = cfg.params;
  if (!o.family.empty()) p.family = family_from_name(o.family);
  derive_dims(p);
  ChoiceOptions opts;
  opts.single_global = o.h1_one;
  opts.strict_q = o.strict_q;
  opts.q = o.q ? o.q : cfg.q;
  if (p.family == Family::HL) {
    const CodeInstance inst = construct(p, opts);
    save_instance(o.out, inst);
    print_summary(out, inst);
    return kOk;
  }
  const auto hl = hl_source(p);
  if (!hl) throw Error(Errc::UnsupportedCase, "no HL source derives these HDL parameters");
  const CodeInstance source = construct(*hl, opts);
  const Derived der = hdl_from_hl(source, o.workers);
  save_instance(o.out, der.instance, &der.log);
  print_summary(out, der.instance);
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const CodeInstance inst = load_instance(o.instance);
  Certificate cert = is_mr(inst, o.workers);
  if (o.mask_millis) cert.millis = 0;
  out << cert.to_string() << "\n";
  return cert.pass ? kOk : kFail;
}

int cmd_distance(const Options& o, std::ostream& out) {
  const CodeInstance inst = load_instance(o.instance);
  const CodeParams& p = inst.params;
  const Dims& d = inst.dims;
  const auto dist = min_distance(inst, o.cap);
  out << "distance=" << (dist ? std::to_string(*dist) : ">" + std::to_string(o.cap.value_or(d.n))) << "\n";
  out << "rd_bound=" << rd_bound(d.n, p.k, p.r2, p.delta + 1) << "\n"
      << "local_mrc=" << local_mrc_distance(p.h2, p.delta, p.r2) << "\n"
      << "data_local_mrc=" << data_local_mrc_distance(p.h2, p.delta) << "\n"
      << "hier_bound=" << hier_bound(p) << "\n"
      << "hdl_mrc=" << hdl_mrc_distance(p.h1, p.h2, p.delta) << "\n";
  return kOk;
}

int cmd_encode(const Options& o, std::ostream& out) {
  const CodeInstance inst = load_instance(o.instance);
  std::vector<Element> data;
  for (const auto& e : parse_received(read_file(o.received), inst.tower)) {
    if (!e) throw Error(Errc::Parse, "data symbols cannot be erased");
    data.push_back(*e);
  }
  const Encoder enc = make_encoder(inst.H);
  out << format_word(encode(enc, data));
  return kOk;
}

int cmd_recover(const Options& o, std::ostream& out) {
  const CodeInstance inst = load_instance(o.instance);
  const auto received = parse_received(read_file(o.received), inst.tower);
  out << format_word(recover(inst, received));
  return kOk;
}

int cmd_derive(const Options& o, std::ostream& out) {
  const CodeInstance inst = load_instance(o.instance);
  const Derived der = hdl_from_hl(inst, o.workers);
  save_instance(o.out, der.instance, &der.log);
  print_summary(out, der.instance);
  out << der.log.to_string();
  return kOk;
}

int cmd_trace(const Options& o, std::ostream& out) {
  const CodeInstance inst = load_instance(o.instance);
  const ErasurePattern pat = parse_pattern(read_file(o.pattern), inst.params);
  const ReductionTrace tr = reduction_trace(inst, pat);
  out << "pattern " << format_pattern(pat) << "\n";
  for (std::size_t i = 0; i < tr.local_elim.size(); ++i) {
    for (std::size_t s = 0; s < tr.local_elim[i].size(); ++s) {
      print_matrix(out, "local_elim[" + std::to_string(i + 1) + "][" + std::to_string(s + 1) + "]", tr.local_elim[i][s]);
    }
  }
  for (std::size_t i = 0; i < tr.mid_columns.size(); ++i) {
    const std::string idx = "[" + std::to_string(i + 1) + "]";
    print_list(out, "mid_columns" + idx, tr.mid_columns[i]);
    if (i < tr.mid_moore.size()) print_matrix(out, "mid_moore" + idx, tr.mid_moore[i]);
    if (i < tr.global_columns.size()) print_list(out, "global_columns" + idx, tr.global_columns[i]);
    if (i < tr.mid_elim.size()) print_matrix(out, "mid_elim" + idx, tr.mid_elim[i]);
  }
  print_list(out, "residual_globals", tr.residual_globals);
  out << "mid_independent=" << (tr.mid_independent ? "true" : "false")
      << " global_independent=" << (tr.global_independent ? "true" : "false") << "\n";
  if (!tr.note.empty()) out << "note=" << tr.note << "\n";
  out << "verdict=" << (tr.verdict ? "true" : "false") << "\n";
  return tr.verdict ? kOk : kFail;
}

int cmd_export(const Options& o, std::ostream& out) {
  const CodeInstance inst = load_instance(o.instance);
  std::ostringstream m;
  write_matrix(m, inst.H);
  if (o.output_file.empty()) {
    out << m.str();
  } else {
    write_file(o.output_file, m.str());
  }
  return kOk;
}

int cmd_inspect(const Options& o, std::ostream& out) {
  const CodeInstance inst = load_instance(o.instance);
  print_summary(out, inst);
  out << format_tower(*inst.tower);
  out << "beta=" << format_element(inst.beta) << "\n";
  for (std::size_t i = 0; i < inst.groups.A.size(); ++i) {
    out << "A[" << i + 1 << "]=" << set_text(inst.groups.A[i]);
    for (std::size_t s = 0; s < inst.groups.B[i].size(); ++s) {
      out << " B[" << i + 1 << "][" << s + 1 << "]=" << set_text(inst.groups.B[i][s]);
    }
    out << "\n";
  }
  if (!inst.groups.tail.empty()) out << "tail=" << set_text(inst.groups.tail) << "\n";
  out << "admissible_sets=" << AdmissibleSets(inst.params).size() << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hierarchical-locality maximally recoverable codes"};
  app.require_subcommand(1);
  Options o;

  auto* construct_cmd = app.add_subcommand("construct", "build an instance from a parameter config");
  construct_cmd->add_option("--config", o.config, "parameter config file")->required();
  construct_cmd->add_option("--out", o.out, "instance directory to write")->required();
  construct_cmd->add_option("--family", o.family, "hl or hdl (overrides the config)");
  construct_cmd->add_flag("--h1-one", o.h1_one, "single global parity construction");
  construct_cmd->add_flag("--strict-q", o.strict_q, "choose q >= n");
  construct_cmd->add_option("--q", o.q, "explicit base field size");
  construct_cmd->add_option("--workers", o.workers, "threads for certifying derived codes")->check(CLI::PositiveNumber);

  auto* verify_cmd = app.add_subcommand("verify", "certify maximal recoverability");
  verify_cmd->add_option("--instance", o.instance)->required();
  verify_cmd->add_option("--workers", o.workers)->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--mask-millis", o.mask_millis, "print millis=0 for reproducible output");

  auto* distance_cmd = app.add_subcommand("distance", "brute-force minimum distance and closed forms");
  distance_cmd->add_option("--instance", o.instance)->required();
  distance_cmd->add_option("--cap", o.cap, "largest distance searched");

  auto* encode_cmd = app.add_subcommand("encode", "encode k data symbols");
  encode_cmd->add_option("--instance", o.instance)->required();
  encode_cmd->add_option("--data", o.received, "one element per line")->required();

  auto* recover_cmd = app.add_subcommand("recover", "fill erased symbols of a received word");
  recover_cmd->add_option("--instance", o.instance)->required();
  recover_cmd->add_option("--received", o.received, "one element per line, ? for erasures")->required();

  auto* derive_cmd = app.add_subcommand("derive-hdl", "derive an HDL code from an HL instance");
  derive_cmd->add_option("--instance", o.instance)->required();
  derive_cmd->add_option("--out", o.out)->required();
  derive_cmd->add_option("--workers", o.workers)->check(CLI::PositiveNumber);

  auto* trace_cmd = app.add_subcommand("trace", "reduction trace for an erasure pattern");
  trace_cmd->add_option("--instance", o.instance)->required();
  trace_cmd->add_option("--pattern", o.pattern)->required();

  auto* export_cmd = app.add_subcommand("export", "write the parity-check matrix");
  export_cmd->add_option("--instance", o.instance)->required();
  export_cmd->add_option("--out", o.output_file, "file instead of stdout");

  auto* inspect_cmd = app.add_subcommand("inspect", "print parameters, tower and groups");
  inspect_cmd->add_option("--instance", o.instance)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInvalid;
  }

  try {
    if (construct_cmd->parsed()) return cmd_construct(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (distance_cmd->parsed()) return cmd_distance(o, out);
    if (encode_cmd->parsed()) return cmd_encode(o, out);
    if (recover_cmd->parsed()) return cmd_recover(o, out);
    if (derive_cmd->parsed()) return cmd_derive(o, out);
    if (trace_cmd->parsed()) return cmd_trace(o, out);
    if (export_cmd->parsed()) return cmd_export(o, out);
    if (inspect_cmd->parsed()) return cmd_inspect(o, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << e.what() << "\n";
    return kIo;
  }
  return kInvalid;
}

}  // namespace hmrc::cli
