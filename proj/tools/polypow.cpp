#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "bench.hpp"
#include "polypow/instance.hpp"
#include "polypow/io.hpp"
#include "polypow/power.hpp"

using namespace polypow;

namespace {

enum Exit { kOk = 0, kParse = 2, kPrecondition = 3, kMismatch = 4, kInternal = 5 };

int exit_code(Error::Kind k) {
  switch (k) {
    case Error::Kind::Parse:
      return kParse;
    case Error::Kind::Precondition:
    case Error::Kind::DivisionByZero:
    case Error::Kind::ParameterCollision:
      return kPrecondition;
    case Error::Kind::Mismatch:
      return kMismatch;
    default:
      return kInternal;
  }
}

struct IoOpts {
  std::string in, out;
  u64 N = 0;
  std::string method = "ct";
  bool verify = false;
  bool hash = false;
  std::optional<u64> prime;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(Error::Kind::Parse, "input", "cannot open " + path);
  return is;
}

void emit(const IoOpts& o, const std::string& body) {
  if (o.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream os(o.out);
  if (!os) throw Error(Error::Kind::Internal, "output", "cannot write " + o.out);
  os << body;
}

void report_events(const std::vector<std::string>& events) {
  for (const auto& e : events) std::cerr << "note: " << e << "\n";
}

void mismatch() { throw Error(Error::Kind::Mismatch, "verify", "result differs from binary powering"); }

void add_io(CLI::App* sub, IoOpts& o) {
  sub->add_option("--in", o.in, "input file")->required();
  sub->add_option("-N", o.N, "exponent / index")->required();
  sub->add_option("--out", o.out, "output file (default stdout)");
  sub->add_option("--method", o.method, "ct or binary")->check(CLI::IsMember({"ct", "binary"}));
  sub->add_flag("--verify", o.verify, "compare against binary powering");
  sub->add_flag("--hash", o.hash, "print a content hash instead of the result");
  sub->add_option("--prime", o.prime, "field characteristic");
}

int cmd_matpow(const IoOpts& o) {
  auto is = open_in(o.in);
  PolyMatrix M = parse_matrix(is, o.prime);
  PowerTrace tr;
  PolyMatrix R = o.method == "ct" ? polmatpow(M, o.N, &tr) : binpow_matrix(M, o.N);
  report_events(tr.events);
  if (o.verify && o.method == "ct" && R != binpow_matrix(M, o.N)) mismatch();
  emit(o, o.hash ? hash_hex(content_hash(R)) + "\n" : format_matrix(R));
  return kOk;
}

int cmd_seqterm(const IoOpts& o) {
  auto is = open_in(o.in);
  CFiniteSpec spec = parse_spec(is, o.prime);
  SeqTermTrace tr;
  Poly u = o.method == "ct" ? seq_term_ct(spec, o.N, &tr) : seq_iterate(spec, o.N);
  report_events(tr.events);
  if (o.verify && o.method == "ct" && u != seq_iterate(spec, o.N)) mismatch();
  emit(o, o.hash ? hash_hex(content_hash(u)) + "\n" : format_poly(u) + "\n");
  return kOk;
}

int cmd_bivmodpow(const IoOpts& o) {
  auto is = open_in(o.in);
  BivariateInstance b = parse_bivariate(is, o.prime);
  PowerTrace tr;
  BiPoly R = o.method == "ct" ? bivmodpow(b.P, b.Q, o.N, &tr) : modpow_baseline(b.P, b.Q, o.N);
  report_events(tr.events);
  if (o.verify && o.method == "ct" && R != modpow_baseline(b.P, b.Q, o.N)) mismatch();
  emit(o, o.hash ? hash_hex(content_hash(R)) + "\n" : format_bipoly(R));
  return kOk;
}

struct TelescopeOpts {
  std::string in, kind = "spec", out;
  bool symbolic = false;
  std::optional<u64> N;
  int hint = 2;
  std::optional<u64> prime;
};

int cmd_telescope(const TelescopeOpts& o) {
  auto is = open_in(o.in);
  CFiniteSpec spec;
  if (o.kind == "matrix") {
    PolyMatrix M = parse_matrix(is, o.prime);
    spec = entry_sequence_spec(M, 0, M.rows() - 1);
  } else {
    spec = parse_spec(is, o.prime);
  }
  BiRat U = genfunc(spec);
  std::ostringstream os;
  if (o.symbolic || !o.N) {
    SymbolicDiffOp L = telescoper_symbolic(U, o.hint);
    os << "order " << L.order << " deg_n " << L.deg_n << " deg_x " << L.deg_x << "\n";
    for (const auto& qi : L.terms) {
      for (const auto& t : qi) os << format_poly(t) << "\n";
    }
  } else {
    DiffOp L = telescoper_at(U, *o.N % spec.field->modulus());
    os << "order " << L.order() << " deg_n 0 deg_x " << L.degree_x() << "\n";
    for (const auto& q : L.coeffs) os << format_poly(q) << "\n";
  }
  IoOpts io;
  io.out = o.out;
  emit(io, os.str());
  return kOk;
}

struct GenOpts {
  std::string kind = "matrix", out;
  std::size_t r = 2, d = 2;
  u64 seed = 1;
  std::optional<u64> prime;
};

int cmd_gen(const GenOpts& o) {
  InstanceKind k = o.kind == "matrix" ? InstanceKind::Matrix
                   : o.kind == "spec" ? InstanceKind::Spec
                                      : InstanceKind::Bivariate;
  const Field& f = resolve_field(o.prime, 0);
  IoOpts io;
  io.out = o.out;
  emit(io, gen_instance(k, o.r, o.d, o.seed, f));
  return kOk;
}

int cmd_bench(const bench::Options& o, bool with_total) {
  const Field& f = resolve_field(o.prime ? std::optional<u64>(o.prime) : std::nullopt, 0);
  std::vector<bench::Record> recs;
  bench::run(o, f, recs);
  std::ostringstream csv;
  csv << bench::csv_header() << "\n";
  for (const auto& x : recs) {
    if (x.stage == "TOTAL" && !with_total) continue;
    csv << bench::csv_row(x) << "\n";
  }
  IoOpts io;
  io.out = o.csv;
  emit(io, csv.str());
  if (!o.summary.empty()) {
    std::ofstream s(o.summary);
    if (!s) throw Error(Error::Kind::Internal, "bench", "cannot write " + o.summary);
    s << "r,d,N,seed,bp_ns,it_ns,ur_ns,speedup,ok\n";
    for (std::size_t i = 0; i + 5 <= recs.size(); i += 5) {
      const auto &bp = recs[i], &it = recs[i + 2], &ur = recs[i + 3];
      double denom = static_cast<double>(it.time_ns + ur.time_ns);
      double speedup = denom > 0 ? static_cast<double>(bp.time_ns) / denom : 0.0;
      s << bp.r << "," << bp.d << "," << bp.N << "," << bp.seed << "," << bp.time_ns << "," << it.time_ns << ","
        << ur.time_ns << "," << speedup << "," << (bp.ok && ur.ok ? "true" : "false") << "\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polypow: polynomial matrix powers, C-finite terms and bivariate modular powers over F_p"};
  app.require_subcommand(1);

  IoOpts mat, seq, biv;
  add_io(app.add_subcommand("matpow", "N-th power of a polynomial matrix"), mat);
  add_io(app.add_subcommand("seqterm", "N-th term of a C-finite sequence"), seq);
  add_io(app.add_subcommand("bivmodpow", "Q^N mod P"), biv);

  TelescopeOpts tel;
  auto* t = app.add_subcommand("telescope", "telescoper of the generating function");
  t->add_option("--in", tel.in, "spec or matrix file")->required();
  t->add_option("--kind", tel.kind, "input kind")->check(CLI::IsMember({"spec", "matrix"}));
  t->add_flag("--symbolic-n", tel.symbolic, "operator with coefficients polynomial in n");
  t->add_option("-N", tel.N, "specialize at n = N");
  t->add_option("--hint", tel.hint, "initial guess for the degree in n");
  t->add_option("--out", tel.out, "output file (default stdout)");
  t->add_option("--prime", tel.prime, "field characteristic");

  GenOpts gen;
  auto* g = app.add_subcommand("gen", "random instance");
  g->add_option("--kind", gen.kind, "instance kind")->check(CLI::IsMember({"matrix", "spec", "bivariate"}));
  g->add_option("-r", gen.r, "size / order")->check(CLI::Range(1, 64));
  g->add_option("-d", gen.d, "x-degree");
  g->add_option("--seed", gen.seed, "SplitMix64 seed");
  g->add_option("--prime", gen.prime, "field characteristic");
  g->add_option("--out", gen.out, "output file (default stdout)");

  bench::Options bo;
  bool with_total = false;
  auto* b = app.add_subcommand("bench", "timing grid against binary powering, top-right entry");
  b->add_option("-r", bo.r, "matrix sizes")->delimiter(',');
  b->add_option("-d", bo.d, "degrees")->delimiter(',');
  b->add_option("-N", bo.N, "exponents")->delimiter(',');
  b->add_option("--seeds", bo.seeds, "seeds per cell");
  b->add_option("--first-seed", bo.first_seed, "first seed");
  b->add_option("--prime", bo.prime, "field characteristic");
  b->add_option("--csv", bo.csv, "CSV output (default stdout)");
  b->add_option("--summary", bo.summary, "speedup summary file");
  b->add_flag("--parallel", bo.parallel, "run cells concurrently");
  b->add_flag("--total", with_total, "also emit TOTAL rows (CT + IT + UR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (app.got_subcommand("matpow")) return cmd_matpow(mat);
    if (app.got_subcommand("seqterm")) return cmd_seqterm(seq);
    if (app.got_subcommand("bivmodpow")) return cmd_bivmodpow(biv);
    if (app.got_subcommand("telescope")) return cmd_telescope(tel);
    if (app.got_subcommand("gen")) return cmd_gen(gen);
    if (app.got_subcommand("bench")) return cmd_bench(bo, with_total);
  } catch (const Error& e) {
    std::cerr << "error (" << kind_name(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
