#include "ginvkit/cli.hpp"

#include "ginvkit/additive.hpp"
#include "ginvkit/block.hpp"
#include "ginvkit/gen_inverse.hpp"
#include "ginvkit/matrix_io.hpp"
#include "ginvkit/testkit.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace ginv::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Common {
  std::optional<double> tol;
  std::string out;
  bool json_stdout = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Tolerance resolve_tolerance(const Common& c) {
  if (c.tol) return Tolerance::with_zero_rel(*c.tol);
  if (const char* env = std::getenv(kTolEnv); env != nullptr && *env != '\0') {
    std::size_t used = 0;
    double rel = 0;
    try {
      rel = std::stod(env, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != std::string(env).size() || !(rel >= 0) || !std::isfinite(rel)) {
      throw UsageError(std::string(kTolEnv) + ": expected a nonnegative number, got '" + env + "'");
    }
    return Tolerance::with_zero_rel(rel);
  }
  return {};
}

CMatrix load(const std::string& path, const char* role) {
  try {
    return io::read_matrix(path);
  } catch (const io::FormatError& e) {
    throw io::FormatError(std::string(role) + " " + path + ": " + e.field(), e.detail());
  }
}

void write_json(const std::string& path, const json& doc) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << doc.dump(2) << '\n';
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(3) << std::scientific << x;
  return s.str();
}

void print_checks(std::ostream& out, const char* title, const std::vector<Check>& checks) {
  if (checks.empty()) return;
  out << "  " << title << ":\n";
  for (const auto& c : checks) {
    const char* mark = !c.evaluated ? "skip" : (c.pass ? "pass" : "FAIL");
    out << "    [" << mark << "] " << c.name << "  residual=" << num(c.residual)
        << " scale=" << num(c.scale);
    if (!c.note.empty()) out << "  (" << c.note << ")";
    out << '\n';
  }
}

void print_axioms(std::ostream& out, const AxiomCheck& c) {
  out << "    ||xax - x|| = " << num(c.xax_minus_x) << ", ||ax - xa|| = " << num(c.ax_minus_xa)
      << ", ||a^2x - a|| = " << num(c.a2x_minus_a) << '\n';
}

template <typename Report>
void print_report(std::ostream& out, const Report& r, const std::string& title) {
  out << title << ": ";
  if (!r.applicable) {
    const Check* f = ginv::first_failure(r.hypotheses);
    out << "not applicable";
    if (f != nullptr) out << ", hypothesis '" << f->name << "' fails";
  } else if (r.decision && *r.decision) {
    out << "conditions hold";
  } else {
    const Check* f = ginv::first_failure(r.conditions);
    out << "conditions fail";
    if (f != nullptr) out << " at '" << f->name << "'";
  }
  out << '\n';
  print_checks(out, "hypotheses", r.hypotheses);
  print_checks(out, "conditions", r.conditions);
  if (r.inverse) {
    out << "  inverse produced; axiom residuals:\n";
    print_axioms(out, *r.inverse_check);
  }
  for (const auto& n : r.notes) out << "  note: " << n << '\n';
  if (r.oracle_exists) out << "  oracle: " << (*r.oracle_exists ? "exists" : "does not exist");
  if (r.oracle_match) out << ", agrees: " << (*r.oracle_match ? "yes" : "NO");
  out << '\n';
}

void emit(const Common& c, std::ostream& out, const json& doc) {
  if (!c.out.empty()) write_json(c.out, doc);
  if (c.json_stdout) out << doc.dump(2) << '\n';
}

void add_common(CLI::App* cmd, Common& c, bool with_out = true) {
  cmd->add_option("--tol", c.tol, "relative zero tolerance (zero_abs = tol/100)")
      ->check(CLI::NonNegativeNumber);
  if (with_out) {
    cmd->add_option("--out", c.out, "output file");
    cmd->add_flag("--json", c.json_stdout, "print the JSON document to standard output");
  }
}

int cmd_ginv(const std::string& path, const Common& c, std::ostream& out) {
  const Tolerance tol = resolve_tolerance(c);
  const CMatrix a = load(path, "matrix");
  require_square(a);
  const auto r = group_inverse(a, tol);
  if (!r.exists) {
    out << "no group inverse: rank(A)=" << r.rank_a << ", rank(A^2)=" << r.rank_a2;
    if (r.rank_residual_disagreement) out << " (ranks agree but the axioms fail)";
    out << '\n';
    return kExitNegative;
  }
  if (!c.out.empty()) io::write_matrix(c.out, *r.inverse);
  out << "group inverse exists: rank(A)=" << r.rank_a << ", rank(A^2)=" << r.rank_a2 << '\n';
  if (r.residuals) print_axioms(out, *r.residuals);
  if (c.out.empty() || c.json_stdout) out << io::to_json(*r.inverse).dump() << '\n';
  return kExitOk;
}

int cmd_drazin(const std::string& path, const Common& c, std::ostream& out) {
  const Tolerance tol = resolve_tolerance(c);
  const CMatrix a = load(path, "matrix");
  require_square(a);
  const auto r = drazin_inverse(a, tol);
  if (!c.out.empty()) io::write_matrix(c.out, r.inverse);
  out << "Drazin index " << r.index << '\n';
  if (c.out.empty() || c.json_stdout) out << io::to_json(r.inverse).dump() << '\n';
  return kExitOk;
}

struct SumArgs {
  std::string a;
  std::string b;
  std::string theorem = "auto";
};

int cmd_sum(const SumArgs& s, const Common& c, std::ostream& out) {
  const Tolerance tol = resolve_tolerance(c);
  const CMatrix a = load(s.a, "--a");
  const CMatrix b = load(s.b, "--b");
  require_square(a);
  require_same_shape(a, b, "--a and --b must have the same size");
  if (s.theorem == "auto") {
    const AutoSumReport r = auto_sum(a, b, tol);
    for (const auto& rep : r.reports) print_report(out, rep, std::string(tag(rep.theorem)));
    out << "auto: " << r.produced << " inverse(s) produced, consensus "
        << (r.consensus ? "yes" : "NO") << '\n';
    emit(c, out, io::to_json(r));
    return r.produced > 0 ? kExitOk : kExitNegative;
  }
  const auto id = parse_sum_theorem(s.theorem);
  if (!id || *id == SumTheorem::Lem21 || *id == SumTheorem::Lem31) {
    throw UsageError("--theorem: unknown sum theorem '" + s.theorem + "'");
  }
  const SumGinvReport r = sum_ginv(*id, a, b, tol);
  print_report(out, r, s.theorem);
  emit(c, out, io::to_json(r));
  return r.inverse ? kExitOk : kExitNegative;
}

struct BlockArgs {
  std::string A;
  std::string B;
  std::string C;
  std::string D;
  std::string theorem = "auto";
  int variant = 1;
};

int cmd_block(const BlockArgs& s, const Common& c, std::ostream& out) {
  const Tolerance tol = resolve_tolerance(c);
  BlockParts parts{load(s.A, "--A"), load(s.B, "--B"), load(s.C, "--C"), load(s.D, "--D")};
  parts.validate();
  if (s.theorem == "auto") {
    const AutoBlockReport r = auto_block(parts, tol);
    for (const auto& rep : r.reports) {
      std::string title(tag(rep.theorem));
      if (rep.variant != 0) title += " (variant " + std::to_string(rep.variant) + ")";
      print_report(out, rep, title);
    }
    out << "auto: " << r.produced << " inverse(s) produced, consensus "
        << (r.consensus ? "yes" : "NO") << '\n';
    emit(c, out, io::to_json(r));
    return r.produced > 0 ? kExitOk : kExitNegative;
  }
  const auto id = parse_block_theorem(s.theorem);
  if (!id) throw UsageError("--theorem: unknown block theorem '" + s.theorem + "'");
  const BlockGinvReport r = block_ginv(*id, parts, tol, s.variant);
  print_report(out, r, s.theorem);
  emit(c, out, io::to_json(r));
  return r.inverse ? kExitOk : kExitNegative;
}

int cmd_verify(const std::string& a_path, const std::string& x_path, const Common& c,
               std::ostream& out) {
  const Tolerance tol = resolve_tolerance(c);
  const CMatrix a = load(a_path, "--a");
  const CMatrix x = load(x_path, "--x");
  require_square(a);
  require_same_shape(a, x, "--a and --x must have the same size");
  const AxiomCheck r = verify_axioms(a, x, tol);
  const double na = a.norm();
  const double nx = x.norm();
  out << "||xax - x||_F  = " << num(r.xax_minus_x) << "  scale " << num(nx * nx * na) << '\n'
      << "||ax - xa||_F  = " << num(r.ax_minus_xa) << "  scale " << num(na * nx) << '\n'
      << "||a^2x - a||_F = " << num(r.a2x_minus_a) << "  scale " << num(na * na * nx) << '\n'
      << (r.verdict ? "x is the group inverse of a" : "x is not the group inverse of a") << '\n';
  return r.verdict ? kExitOk : kExitNegative;
}

struct GenArgs {
  std::string case_id;
  int dim = 4;
  std::uint64_t seed = 0;
  std::string violate;
  std::string outdir = ".";
};

int cmd_gen(const GenArgs& g, std::ostream& out) {
  testkit::GenSpec spec{g.case_id, g.dim, g.seed, std::nullopt};
  if (!g.violate.empty()) spec.violate = g.violate;
  fs::create_directories(g.outdir);
  const fs::path dir(g.outdir);
  std::vector<std::pair<std::string, CMatrix>> files;
  if (testkit::is_sum_case(g.case_id)) {
    const auto c = testkit::gen_sum_case(spec);
    files = {{"a.json", c.a}, {"b.json", c.b}};
  } else if (testkit::is_block_case(g.case_id)) {
    const auto c = testkit::gen_block_case(spec);
    files = {{"A.json", c.parts.A}, {"B.json", c.parts.B}, {"C.json", c.parts.C}, {"D.json", c.parts.D}};
    if (g.case_id == "cor4.4") out << "variant " << c.variant << '\n';
  } else {
    throw UsageError("--case: unknown case '" + g.case_id + "'");
  }
  for (const auto& [name, m] : files) {
    io::write_matrix(dir / name, m);
    out << (dir / name).string() << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group and Drazin inverses; group invertibility of sums and block matrices"};
  app.name("ginvkit");
  app.require_subcommand(1);

  Common common;

  std::string path;
  auto* ginv_cmd = app.add_subcommand("ginv", "group inverse of a square matrix");
  ginv_cmd->add_option("path", path, "matrix file")->required();
  add_common(ginv_cmd, common);

  auto* drazin_cmd = app.add_subcommand("drazin", "Drazin inverse and index");
  drazin_cmd->add_option("path", path, "matrix file")->required();
  add_common(drazin_cmd, common);

  SumArgs sum;
  auto* sum_cmd = app.add_subcommand("sum-ginv", "group inverse of a + b by a named result");
  sum_cmd->add_option("--a", sum.a, "matrix file for a")->required();
  sum_cmd->add_option("--b", sum.b, "matrix file for b")->required();
  sum_cmd->add_option("--theorem", sum.theorem,
                      "thm2.3|cor2.4|thm2.5|cor2.6|cor2.7|thm3.2|thm3.5|cor3.6|auto");
  add_common(sum_cmd, common);

  BlockArgs blk;
  auto* block_cmd = app.add_subcommand("block-ginv", "group inverse of [[A, B], [C, D]]");
  block_cmd->add_option("--A", blk.A, "m x m block")->required();
  block_cmd->add_option("--B", blk.B, "m x n block")->required();
  block_cmd->add_option("--C", blk.C, "n x m block")->required();
  block_cmd->add_option("--D", blk.D, "n x n block")->required();
  block_cmd->add_option("--theorem", blk.theorem,
                        "thm4.1|cor4.2|cor4.3|cor4.4|thm4.5|cor4.6|thm4.7|cor4.8|auto");
  block_cmd->add_option("--variant", blk.variant, "cor4.4 variant")->check(CLI::IsMember({1, 2}));
  add_common(block_cmd, common);

  std::string a_path;
  std::string x_path;
  auto* verify_cmd = app.add_subcommand("verify", "check the group-inverse axioms for (a, x)");
  verify_cmd->add_option("--a", a_path, "matrix file for a")->required();
  verify_cmd->add_option("--x", x_path, "candidate inverse")->required();
  add_common(verify_cmd, common, false);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "write a generated instance");
  gen_cmd->add_option("--case", gen.case_id, "theorem tag")->required();
  gen_cmd->add_option("--dim", gen.dim, "size of a + b or of M")->check(CLI::Range(2, 12));
  gen_cmd->add_option("--seed", gen.seed, "64-bit seed");
  gen_cmd->add_option("--violate", gen.violate, "checklist item to break");
  gen_cmd->add_option("--outdir", gen.outdir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFailure;
  }

  try {
    if (*ginv_cmd) return cmd_ginv(path, common, out);
    if (*drazin_cmd) return cmd_drazin(path, common, out);
    if (*sum_cmd) return cmd_sum(sum, common, out);
    if (*block_cmd) return cmd_block(blk, common, out);
    if (*verify_cmd) return cmd_verify(a_path, x_path, common, out);
    if (*gen_cmd) return cmd_gen(gen, out);
  } catch (const testkit::GenerationFailed& e) {
    err << "generation failed: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace ginv::cli
