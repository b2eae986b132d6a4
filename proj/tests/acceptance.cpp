// Acceptance checks. Prints one PASS/FAIL line per criterion, followed by
// indented detail lines, and exits nonzero if any criterion fails.

#include "ginvkit/additive.hpp"
#include "ginvkit/block.hpp"
#include "ginvkit/cli.hpp"
#include "ginvkit/gen_inverse.hpp"
#include "ginvkit/matrix_io.hpp"
#include "ginvkit/testkit.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace ginv;
namespace fs = std::filesystem;

constexpr double kExampleTol = 1e-12;
constexpr double kMatchTol = 1e-8;
constexpr int kIffSeeds = 500;
constexpr int kSufficiencySeeds = 300;
constexpr int kOracleMatrices = 1000;
constexpr int kClinePairs = 200;
constexpr int kViolationSeeds = 20;
constexpr int kScaleInstances = 100;
constexpr int kRoundTrips = 100;

int dim_for(std::uint64_t seed) { return 2 + static_cast<int>(seed % 7); }

struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> details;
  bool pass = true;

  void fail(const std::string& why) {
    pass = false;
    details.push_back("FAIL " + why);
  }
  void note(const std::string& line) { details.push_back(line); }
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(2);
  s << std::scientific << x;
  return s.str();
}

CMatrix real(std::initializer_list<std::initializer_list<double>> rows) {
  CMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

CMatrix diag(std::initializer_list<double> d) {
  CMatrix m = CMatrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  Index i = 0;
  for (double v : d) m(i, i) = v, ++i;
  return m;
}

std::string data_path(const char* name) { return std::string(GINVKIT_TEST_DATA) + "/" + name; }

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ginvkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

void worked_example(Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  const CMatrix a = io::read_matrix(data_path("example_a.json"));
  const CMatrix b = io::read_matrix(data_path("example_b.json"));

  const auto gb = group_inverse(b);
  if (!gb.exists || relative_gap(*gb.inverse, diag({3, 0, 0, 3})) > kExampleTol) {
    c.fail("group_inverse(b) != diag(3, 0, 0, 3)");
  }
  const auto ga = group_inverse(a);
  if (ga.exists || ga.rank_a != 3 || ga.rank_a2 != 2) {
    c.fail("a: expected no group inverse with rank 3, rank of square 2; got rank " +
           std::to_string(ga.rank_a) + ", " + std::to_string(ga.rank_a2));
  }
  const auto da = drazin_inverse(a);
  if (da.index != 2 || relative_gap(da.inverse, diag({1, 1, 0, 0})) > kExampleTol) {
    c.fail("drazin_inverse(a) != diag(1, 1, 0, 0) with index 2");
  }

  const CMatrix corrected = io::read_matrix(data_path("example_sum_inverse.json"));
  const CMatrix printed = io::read_matrix(data_path("example_sum_inverse_bad.json"));
  const auto os = oracle_group_inverse(CMatrix(a + b));
  if (!os.exists) {
    c.fail("oracle: a + b has no group inverse");
  } else {
    if (relative_gap(*os.inverse, corrected) > kExampleTol) c.fail("(a + b)# differs from the corrected fixture");
    for (Index i = 0; i < 4; ++i) {
      for (Index j = 0; j < 4; ++j) {
        const double gap = std::abs((*os.inverse)(i, j) - printed(i, j));
        const bool differs = gap > kExampleTol;
        if (differs != (i == 2 && j == 3)) {
          c.fail("(a + b)# vs printed value at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
      }
    }
    if (std::abs((*os.inverse)(2, 3) - 9.0) > kExampleTol) c.fail("(a + b)# entry (3,4) is not 9");
  }

  const CMatrix t = a * da.inverse * b + b * *gb.inverse * a;
  const auto gt = group_inverse(t);
  CMatrix e11 = CMatrix::Zero(4, 4);
  e11(0, 0) = 0.75;
  if (!gt.exists || relative_gap(*gt.inverse, e11) > kExampleTol) {
    c.fail("(a a^D b + b b# a)# != (3/4) E11");
  }

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.note("runtime " + fmt(secs) + " s");
  if (secs >= 1.0) c.fail("runtime " + fmt(secs) + " s >= 1 s");
}

struct Tally {
  int instances = 0;
  int not_applicable = 0;
  int verdict_mismatch = 0;
  int positive = 0;
  int negative = 0;
  int produced = 0;
  int inverse_mismatch = 0;
  int generation_failed = 0;
  double worst_gap = 0;
  std::string first_mismatch;
};

void record(Tally& t, std::uint64_t seed, bool applicable, std::optional<bool> decision,
            const std::optional<CMatrix>& inverse, const CMatrix& subject) {
  ++t.instances;
  if (!applicable) {
    ++t.not_applicable;
    return;
  }
  const auto oracle = oracle_group_inverse(subject);
  (oracle.exists ? t.positive : t.negative)++;
  if (*decision != oracle.exists) {
    ++t.verdict_mismatch;
    if (t.first_mismatch.empty()) {
      t.first_mismatch = "seed " + std::to_string(seed) + " dim " + std::to_string(dim_for(seed)) +
                         ": verdict " + (*decision ? "exists" : "no") + ", oracle " +
                         (oracle.exists ? "exists" : "no");
    }
  }
  if (inverse) {
    ++t.produced;
    if (!oracle.exists) {
      ++t.inverse_mismatch;
      return;
    }
    const double gap = relative_gap(*inverse, *oracle.inverse);
    t.worst_gap = std::max(t.worst_gap, gap);
    if (gap > kMatchTol) ++t.inverse_mismatch;
  }
}

std::string summary(const std::string& id, const Tally& t) {
  std::string s = id + ": " + std::to_string(t.instances) + " instances, oracle exists " +
                  std::to_string(t.positive) + " / not " + std::to_string(t.negative) +
                  ", verdict mismatches " + std::to_string(t.verdict_mismatch) + ", produced " +
                  std::to_string(t.produced) + " (worst gap " + fmt(t.worst_gap) + ")";
  if (t.not_applicable) s += ", hypotheses rejected " + std::to_string(t.not_applicable);
  if (t.generation_failed) s += ", generation failed " + std::to_string(t.generation_failed);
  if (!t.first_mismatch.empty()) s += "; first mismatch " + t.first_mismatch;
  return s;
}

Tally run_case(const std::string& id, int seeds) {
  Tally t;
  for (std::uint64_t seed = 0; seed < static_cast<std::uint64_t>(seeds); ++seed) {
    const testkit::GenSpec spec{id, dim_for(seed), seed, std::nullopt};
    try {
      if (testkit::is_sum_case(id)) {
        const auto c = testkit::gen_sum_case(spec);
        const auto r = sum_ginv(*parse_sum_theorem(id), c.a, c.b);
        record(t, seed, r.applicable, r.decision, r.inverse, CMatrix(c.a + c.b));
      } else {
        const auto c = testkit::gen_block_case(spec);
        const auto r = block_ginv(*parse_block_theorem(id), c.parts, {}, c.variant);
        record(t, seed, r.applicable, r.decision, r.inverse, assemble(c.parts));
      }
    } catch (const testkit::GenerationFailed&) {
      ++t.generation_failed;
    }
  }
  return t;
}

void iff_validation(Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  for (const char* id : {"thm2.3", "cor2.4", "thm2.5", "cor2.6", "cor2.7", "thm3.2", "thm3.5",
                         "cor3.6", "thm4.1", "cor4.2", "cor4.3", "cor4.4"}) {
    const Tally t = run_case(id, kIffSeeds);
    c.note(summary(id, t));
    if (t.instances < kIffSeeds) c.fail(std::string(id) + ": fewer than " + std::to_string(kIffSeeds) + " instances");
    if (t.not_applicable) c.fail(std::string(id) + ": generated instances rejected by the hypotheses");
    if (t.verdict_mismatch) {
      c.fail(std::string(id) + ": verdict differs from oracle existence on " +
             std::to_string(t.verdict_mismatch) + " instances");
    }
    if (t.inverse_mismatch) c.fail(std::string(id) + ": produced inverse differs from oracle");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.note("runtime " + fmt(secs) + " s");
  if (secs >= 60.0) c.fail("runtime " + fmt(secs) + " s >= 60 s");
}

void sufficiency(Criterion& c) {
  for (const char* id : {"thm4.5", "cor4.6", "thm4.7", "cor4.8"}) {
    const Tally t = run_case(id, kSufficiencySeeds);
    c.note(summary(id, t));
    if (t.instances < kSufficiencySeeds) c.fail(std::string(id) + ": too few instances");
    if (t.not_applicable) c.fail(std::string(id) + ": generated instances rejected by the hypotheses");
    if (t.negative) c.fail(std::string(id) + ": oracle finds M outside R# on " + std::to_string(t.negative));
    if (t.produced != t.instances) c.fail(std::string(id) + ": formula did not produce an inverse every time");
    if (t.inverse_mismatch) c.fail(std::string(id) + ": produced inverse differs from oracle");
  }
}

void oracle_independence(Criterion& c) {
  testkit::Rng rng(20240601);
  int exists = 0;
  int existence_mismatch = 0;
  int value_mismatch = 0;
  double worst = 0;
  for (int i = 0; i < kOracleMatrices; ++i) {
    const Index n = 2 + i % 7;
    CMatrix x;
    switch (i % 5) {
      case 0: x = testkit::random_matrix(rng, n, n); break;
      case 1: x = testkit::random_group_invertible(rng, n, rng.integer(0, static_cast<int>(n) - 1)); break;
      case 2: x = testkit::random_nilpotent(rng, n); break;
      case 3: {
        // Invertible part plus a nilpotent Jordan part of index >= 2.
        const Index k = 2 + rng.integer(0, static_cast<int>(n) - 2);
        CMatrix core = CMatrix::Zero(n, n);
        core.topLeftCorner(n - k, n - k) = testkit::random_diagonal(rng, n - k, 0.0);
        for (Index j = n - k; j + 1 < n; ++j) core(j, j + 1) = 1;
        const auto s = testkit::random_similarity(rng, n);
        x = s.s * core * s.s_inv;
        break;
      }
      default: {
        // Rank-deficient product of random factors.
        const Index r = rng.integer(0, static_cast<int>(n) - 1);
        x = testkit::random_matrix(rng, n, r) * testkit::random_matrix(rng, r, n);
        break;
      }
    }
    const auto g = group_inverse(x);
    const auto o = oracle_group_inverse(x);
    if (g.exists != o.exists) {
      ++existence_mismatch;
      continue;
    }
    if (!g.exists) continue;
    ++exists;
    const double gap = relative_gap(*g.inverse, *o.inverse);
    worst = std::max(worst, gap);
    if (gap > kMatchTol) ++value_mismatch;
  }
  c.note(std::to_string(kOracleMatrices) + " matrices, " + std::to_string(exists) +
         " group invertible, existence mismatches " + std::to_string(existence_mismatch) +
         ", value mismatches " + std::to_string(value_mismatch) + " (worst gap " + fmt(worst) + ")");
  if (existence_mismatch) c.fail("existence disagreement on " + std::to_string(existence_mismatch));
  if (value_mismatch) c.fail("value disagreement on " + std::to_string(value_mismatch));

  int cline_mismatch = 0;
  double cline_worst = 0;
  for (int i = 0; i < kClinePairs; ++i) {
    const Index m = rng.integer(1, 6);
    const Index n = rng.integer(1, 6);
    const CMatrix x = testkit::random_matrix(rng, m, n);
    const CMatrix y = testkit::random_matrix(rng, n, m);
    const CMatrix direct = drazin_inverse(CMatrix(x * y)).inverse;
    const double gap = relative_gap(cline_drazin(x, y), direct);
    cline_worst = std::max(cline_worst, gap);
    if (gap > kMatchTol) ++cline_mismatch;
  }
  c.note(std::to_string(kClinePairs) + " rectangular pairs, Cline mismatches " +
         std::to_string(cline_mismatch) + " (worst gap " + fmt(cline_worst) + ")");
  if (cline_mismatch) c.fail("cline_drazin differs from drazin_inverse(xy) on " + std::to_string(cline_mismatch));
}

void negative_controls(Criterion& c) {
  const CMatrix nil = real({{0, 1}, {0, 0}});
  const CMatrix zero = CMatrix::Zero(2, 2);
  if (group_inverse(nil).exists || oracle_group_inverse(nil).exists) c.fail("nilpotent accepted by an inverse routine");
  if (cli({"ginv", "--tol", "1e-10", data_path("example_a.json")}) != cli::kExitNegative) {
    c.fail("index-2 fixture not rejected by the CLI");
  }
  int rejected = 0;
  for (SumTheorem id : sum_theorems()) {
    for (const auto& [a, b] : {std::pair{nil, zero}, std::pair{nil, nil}, std::pair{zero, nil}}) {
      const auto r = sum_ginv(id, a, b);
      if (r.applicable || r.inverse) c.fail(std::string(tag(id)) + " accepts a nilpotent summand");
      else ++rejected;
    }
  }
  const auto lr = lemma31_product(nil, CMatrix::Identity(2, 2));
  if (lr.applicable || lr.inverse) c.fail("product lemma accepts a nilpotent factor");
  else ++rejected;
  const BlockParts corner{nil, CMatrix::Zero(2, 1), CMatrix::Zero(1, 2), real({{1}})};
  const BlockParts whole{real({{0}}), real({{1}}), real({{0}}), real({{0}})};
  for (BlockTheorem id : block_theorems()) {
    for (int variant : {1, 2}) {
      for (const BlockParts& p : {corner, whole}) {
        const auto r = block_ginv(id, p, {}, variant);
        if (r.inverse || (r.applicable && *r.decision)) c.fail(std::string(tag(id)) + " accepts a nilpotent M");
        else ++rejected;
      }
    }
  }
  c.note("nilpotent inputs rejected by " + std::to_string(rejected) + " checker runs");

  int outputs = 0;
  int exact = 0;
  int gen_failed = 0;
  for (const char* id : {"thm2.3", "cor2.4", "thm2.5", "cor2.6", "cor2.7", "thm3.2", "cor3.3", "thm3.5",
                         "cor3.6", "thm4.1", "cor4.2", "cor4.3", "cor4.4", "thm4.5", "cor4.6", "thm4.7",
                         "cor4.8"}) {
    const std::string case_id = id;
    const std::string checker = case_id == "cor3.3" ? "thm3.2" : case_id;
    for (const auto& item : testkit::supported_violations(case_id)) {
      int item_outputs = 0;
      for (std::uint64_t seed = 0; seed < kViolationSeeds; ++seed) {
        const testkit::GenSpec spec{case_id, 4 + static_cast<int>(seed % 5), seed, item};
        std::vector<std::string> failed;
        try {
          if (testkit::is_sum_case(case_id)) {
            const auto k = testkit::gen_sum_case(spec);
            const auto r = sum_ginv(*parse_sum_theorem(checker), k.a, k.b);
            failed = failed_names(r.hypotheses);
            for (auto& n : failed_names(r.conditions)) failed.push_back(n);
          } else {
            const auto k = testkit::gen_block_case(spec);
            const auto r = block_ginv(*parse_block_theorem(checker), k.parts, {}, k.variant);
            failed = failed_names(r.hypotheses);
            for (auto& n : failed_names(r.conditions)) failed.push_back(n);
          }
        } catch (const testkit::GenerationFailed&) {
          ++gen_failed;
          continue;
        }
        ++outputs;
        ++item_outputs;
        if (failed.size() == 1 && failed.front() == item) {
          ++exact;
        } else {
          std::string got;
          for (const auto& n : failed) got += " [" + n + "]";
          c.fail(case_id + " --violate '" + item + "' seed " + std::to_string(seed) + " fails:" + got);
        }
      }
      if (item_outputs == 0) c.fail(case_id + " --violate '" + item + "' produced no instance");
    }
  }
  c.note("violation outputs " + std::to_string(outputs) + ", failing exactly the named check " +
         std::to_string(exact) + ", generation gave up " + std::to_string(gen_failed) + " times");

  int changed = 0;
  int compared = 0;
  const std::vector<std::string> cases{"thm2.3", "cor2.4", "thm2.5", "cor2.6", "cor2.7", "thm3.2", "thm3.5",
                                       "cor3.6", "thm4.1", "cor4.2", "cor4.3", "cor4.4", "thm4.5", "thm4.7"};
  for (int i = 0; i < kScaleInstances; ++i) {
    const std::string& id = cases[static_cast<std::size_t>(i) % cases.size()];
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(i);
    std::optional<std::string> violate;
    const auto items = testkit::supported_violations(id);
    if (i % 2 == 1) violate = items[static_cast<std::size_t>(i / 2) % items.size()];
    const testkit::GenSpec spec{id, 4 + i % 5, seed, violate};
    using Verdict = std::pair<bool, std::optional<bool>>;
    std::function<Verdict(double)> verdict;
    try {
      if (testkit::is_sum_case(id)) {
        const auto k = testkit::gen_sum_case(spec);
        verdict = [k, id](double s) {
          const auto r = sum_ginv(*parse_sum_theorem(id), CMatrix(s * k.a), CMatrix(s * k.b));
          return Verdict{r.applicable, r.decision};
        };
      } else {
        const auto k = testkit::gen_block_case(spec);
        verdict = [k, id](double s) {
          const BlockParts p{s * k.parts.A, s * k.parts.B, s * k.parts.C, s * k.parts.D};
          const auto r = block_ginv(*parse_block_theorem(id), p, {}, k.variant);
          return Verdict{r.applicable, r.decision};
        };
      }
    } catch (const testkit::GenerationFailed&) {
      continue;
    }
    ++compared;
    const Verdict base = verdict(1.0);
    for (double s : {1e3, 1e-3}) {
      if (verdict(s) != base) {
        ++changed;
        c.fail(id + " seed " + std::to_string(seed) + (violate ? " violating '" + *violate + "'" : "") +
               ": verdict changes under scaling by " + fmt(s));
      }
    }
  }
  c.note("scale invariance: " + std::to_string(compared) + " instances, verdict changes " + std::to_string(changed));
  if (compared < kScaleInstances) c.fail("scale invariance compared only " + std::to_string(compared) + " instances");
}

void cli_contract(Criterion& c) {
  const fs::path dir = fs::temp_directory_path() / "ginvkit_acceptance";
  fs::create_directories(dir);
  testkit::Rng rng(77);
  int inexact = 0;
  for (int i = 0; i < kRoundTrips; ++i) {
    CMatrix m = testkit::random_matrix(rng, rng.integer(1, 8), rng.integer(1, 8));
    m *= std::pow(10.0, rng.integer(-20, 20));
    const fs::path p = dir / "m.json";
    io::write_matrix(p, m);
    const CMatrix back = io::read_matrix(p);
    bool same = back.rows() == m.rows() && back.cols() == m.cols();
    for (Index k = 0; same && k < m.size(); ++k) {
      same = back.data()[k].real() == m.data()[k].real() && back.data()[k].imag() == m.data()[k].imag();
    }
    if (!same) ++inexact;
  }
  c.note(std::to_string(kRoundTrips) + " round trips, inexact " + std::to_string(inexact));
  if (inexact) c.fail("round trip not bit-exact on " + std::to_string(inexact) + " matrices");

  const std::string a = data_path("example_a.json");
  const std::string b = data_path("example_b.json");
  const std::string sum = data_path("example_sum.json");
  const std::string outdir = (dir / "gen").string();
  struct Expect {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<Expect> expectations{
      {{"ginv", a}, cli::kExitNegative},
      {{"ginv", b}, cli::kExitOk},
      {{"ginv", sum}, cli::kExitOk},
      {{"drazin", a}, cli::kExitOk},
      {{"sum-ginv", "--a", a, "--b", b}, cli::kExitNegative},
      {{"sum-ginv", "--a", a, "--b", b, "--theorem", "thm3.2"}, cli::kExitNegative},
      {{"sum-ginv", "--a", b, "--b", b, "--theorem", "thm3.2"}, cli::kExitOk},
      {{"verify", "--a", sum, "--x", data_path("example_sum_inverse.json")}, cli::kExitOk},
      {{"verify", "--a", sum, "--x", data_path("example_sum_inverse_bad.json")}, cli::kExitNegative},
      {{"ginv", (dir / "missing.json").string()}, cli::kExitFailure},
      {{"sum-ginv", "--a", a, "--b", b, "--theorem", "thm9.9"}, cli::kExitFailure},
      {{"gen", "--case", "thm2.3", "--dim", "4", "--seed", "42", "--outdir", outdir}, cli::kExitOk},
  };
  for (const auto& e : expectations) {
    const int got = cli(e.args);
    if (got != e.code) {
      std::string line;
      for (const auto& s : e.args) line += " " + s;
      c.fail("ginvkit" + line + " exited " + std::to_string(got) + ", expected " + std::to_string(e.code));
    }
  }
  c.note(std::to_string(expectations.size()) + " CLI invocations checked");
  fs::remove_all(dir);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::pair<Criterion, std::function<void(Criterion&)>>> criteria{
      {{1, "worked-example regression", {}}, worked_example},
      {{2, "per-theorem iff validation against the oracle", {}}, iff_validation},
      {{3, "sufficiency of the row and column splits", {}}, sufficiency},
      {{4, "oracle independence and Cline's formula", {}}, oracle_independence},
      {{5, "negative controls and scale invariance", {}}, negative_controls},
      {{6, "CLI contract", {}}, cli_contract},
  };
  bool all = true;
  for (auto& [c, body] : criteria) {
    try {
      body(c);
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    all = all && c.pass;
    std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << '\n';
    for (const auto& d : c.details) std::cout << "    " << d << '\n';
    std::cout.flush();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "total runtime " << fmt(secs) << " s\n";
  return all ? 0 : 1;
}
