#pragma once

// Seeded instance generators for the additive and block theorems. Every
// generator validates its output against its own predicate table (written
// independently of the checkers in additive.cpp / block.cpp) and retries up
// to kMaxRetries times before giving up.

#include "ginvkit/block.hpp"
#include "ginvkit/core.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ginv::testkit {

inline constexpr int kMaxRetries = 100;

class GenerationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenSpec {
  std::string case_id;  // theorem tag, e.g. "thm2.3"
  int dim = 4;          // size of a + b, or of the assembled M; 2..12
  std::uint64_t seed = 0;
  std::optional<std::string> violate;  // name of one checklist item to break
};

/// Portable RNG: the engine is fully specified by the standard, and the
/// variates below avoid the implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Integer in [lo, hi].
  int integer(int lo, int hi) {
    if (hi < lo) throw std::invalid_argument("Rng::integer: empty range");
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(double p) { return uniform() < p; }
  Complex complex_unit_box() { return {uniform(-1, 1), uniform(-1, 1)}; }
  /// Modulus in [lo, hi], uniform phase.
  Complex complex_modulus(double lo, double hi);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

CMatrix random_matrix(Rng& rng, Index rows, Index cols);
/// Random unitary from the QR factor of a random complex matrix.
CMatrix random_unitary(Rng& rng, Index n);

/// S = U diag(sigma) V with sigma in [1, 4]; cond(S) <= 4.
struct Similarity {
  CMatrix s;
  CMatrix s_inv;
};
Similarity random_similarity(Rng& rng, Index n);

/// Diagonal entries: 0 with probability zero_prob, else modulus in [1/2, 2].
CMatrix random_diagonal(Rng& rng, Index n, double zero_prob = 1.0 / 3.0);
/// Nonzero strictly upper triangular matrix conjugated by a random similarity.
CMatrix random_nilpotent(Rng& rng, Index n);
/// S diag(core, 0) S^-1 with core invertible of size r (random in [0, n] if r < 0).
CMatrix random_group_invertible(Rng& rng, Index n, Index r = -1);

struct SumCase {
  CMatrix a;
  CMatrix b;
};

struct BlockCase {
  BlockParts parts;
  int variant = 1;  // cor4.4 only
};

/// Commuting pair a = S La S^-1, b = S Lb S^-1. With probability 1/2 (when
/// dim >= 2) a 2x2 block pair (J_lambda, -lambda I) is included, so a + b
/// has a nilpotent part. Cases: thm3.2, thm3.5, cor3.3, cor3.6.
SumCase gen_commuting_pair(const GenSpec& spec);

/// a = S diag(A1, 0) S^-1, b = S [[b1, 0], [b3, b4]] S^-1. Cases: thm2.3,
/// cor2.4 (transposed).
SumCase gen_thm23_pair(const GenSpec& spec);

/// Any sum case: thm2.3, cor2.4, thm2.5, cor2.6, cor2.7, thm3.2, thm3.5,
/// cor3.3, cor3.6.
SumCase gen_sum_case(const GenSpec& spec);

/// Block cases thm4.1 ... cor4.8.
BlockCase gen_block_case(const GenSpec& spec);

/// Checklist item names a generator can break for the given case.
std::vector<std::string> supported_violations(const std::string& case_id);

bool is_sum_case(const std::string& case_id);
bool is_block_case(const std::string& case_id);

/// Outcome of one predicate-table entry. evaluated=false when a group
/// inverse it depends on does not exist.
struct Predicate {
  std::string name;
  bool hypothesis = true;  // false for conditions
  bool evaluated = true;
  bool holds = false;
};

/// Last entry of every predicate table: for each matrix the table inspects,
/// group_inverse's rank test and the oracle agree on membership.
inline constexpr const char* kRankAgreement = "rank test agrees with oracle";

/// The generator's own view of a sum case: hypotheses then conditions.
std::vector<Predicate> sum_predicates(const std::string& case_id, const CMatrix& a,
                                      const CMatrix& b, const Tolerance& tol = {});
std::vector<Predicate> block_predicates(const std::string& case_id, const BlockParts& parts,
                                        int variant, const Tolerance& tol = {});

/// Names of evaluated predicates that do not hold.
std::vector<std::string> failing(const std::vector<Predicate>& table);

}  // namespace ginv::testkit
