#pragma once

// Group invertibility of a + b (and of ab) from conditions on a, b and their
// spectral idempotents. Every checker returns a SumGinvReport that separates
// three outcomes:
//   applicable == false          a hypothesis failed; nothing is decided
//   applicable, decision false   hypotheses hold, the conditions do not
//   applicable, decision true    closed-form inverse in `inverse`
//
// "x in R#" means x has a group inverse. a^pi = I - a a#.

#include "ginvkit/core.hpp"
#include "ginvkit/gen_inverse.hpp"
#include "ginvkit/report.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ginv {

enum class SumTheorem { Lem21, Thm23, Cor24, Thm25, Cor26, Cor27, Lem31, Thm32, Thm35, Cor36 };

/// Catalogue tag, e.g. "thm2.3".
std::string_view tag(SumTheorem id);
std::optional<SumTheorem> parse_sum_theorem(std::string_view tag);

/// The theorems about a + b run by auto_sum, in catalogue order.
const std::vector<SumTheorem>& sum_theorems();

struct SumGinvReport {
  SumTheorem theorem = SumTheorem::Thm23;
  // The element whose group inverse is sought: a + b, ab (Lem31) or x (Lem21).
  CMatrix subject;
  std::vector<Check> hypotheses;
  std::vector<Check> conditions;
  bool applicable = false;
  std::optional<bool> decision;
  std::optional<CMatrix> inverse;
  std::optional<AxiomCheck> inverse_check;
  Trace trace;
  // Oracle existence of subject#, and whether it agrees with the decision
  // (and with the inverse when one was produced).
  std::optional<bool> oracle_exists;
  std::optional<bool> oracle_match;
  std::vector<std::string> notes;

  const Check* first_failure() const;
  const CMatrix* traced(std::string_view name) const { return find_in_trace(trace, name); }
};

struct PierceBlocks {
  CMatrix pxp;  // p x p
  CMatrix pxq;  // p x p^pi
  CMatrix qxp;  // p^pi x p
  CMatrix qxq;  // p^pi x p^pi
};

/// Full-size Pierce components of x with respect to the idempotent p.
/// Throws NotIdempotentError when ||p^2 - p|| is not negligible.
PierceBlocks pierce_blocks(const CMatrix& x, const CMatrix& p, const Tolerance& tol = {});

/// Lower-triangular Pierce form x = [[a, 0], [c, d]]_p: x in R# iff
/// d^pi c a^pi = 0, with x# = a# + u + d# and
/// u = d^pi c (a#)^2 + (d#)^2 c a^pi - d# c a#.
/// Corner group inverses are taken as full-size group inverses of pxp and
/// p^pi x p^pi. Throws ShapeViolationError if p x p^pi is not negligible.
SumGinvReport lemma21_ginv(const CMatrix& x, const CMatrix& p, const Tolerance& tol = {});

struct CornerInverses {
  CMatrix pb_sharp;  // (pb)# = p b#
  CMatrix bq_sharp;  // (b p^pi)# = b# p^pi
};

/// For b in R#, idempotent p with p b p^pi = 0 and b p^pi in R#.
/// Throws HypothesisError naming the first failed hypothesis.
CornerInverses lemma22_corner(const CMatrix& b, const CMatrix& p, const Tolerance& tol = {});

SumGinvReport thm23_sum(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});
SumGinvReport cor24_sum(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});
SumGinvReport thm25_sum(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});
SumGinvReport cor26_sum(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});
SumGinvReport cor27_sum(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});
SumGinvReport lemma31_product(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});
SumGinvReport thm32_sum(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});
SumGinvReport thm35_sum(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});
SumGinvReport cor36_sum(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});

/// Dispatch on the tag. Lem21 is not a two-element sum and is rejected.
SumGinvReport sum_ginv(SumTheorem id, const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});

struct AutoSumReport {
  std::vector<SumGinvReport> reports;
  GinvResult<Complex> oracle;
  // All produced inverses agree with each other and with the oracle.
  bool consensus = true;
  std::size_t produced = 0;
};

AutoSumReport auto_sum(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});

/// (a+b)# from w = a a#(a+b) and its group inverse:
/// w# + b# a^pi b# a^pi b a a# w^pi - b# a^pi b w# + b# a^pi.
CMatrix assemble_left_corner_inverse(const CMatrix& a, const CMatrix& a_sharp, const CMatrix& b,
                                     const CMatrix& b_sharp, const CMatrix& w_sharp,
                                     const CMatrix& w_pi);

/// (a+b)# from v = (1 + b a#) a and its group inverse:
/// v# + v^pi a a# b a^pi b# a^pi b# - v# b a^pi b# + a^pi b#.
CMatrix assemble_right_corner_inverse(const CMatrix& a, const CMatrix& a_sharp, const CMatrix& b,
                                      const CMatrix& b_sharp, const CMatrix& v_sharp,
                                      const CMatrix& v_pi);

}  // namespace ginv
