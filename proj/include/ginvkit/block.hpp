#pragma once

// Group invertibility of the 2x2 block matrix M = [[A, B], [C, D]] obtained by
// splitting M = P + Q and applying the additive results to the two parts.

#include "ginvkit/additive.hpp"
#include "ginvkit/core.hpp"
#include "ginvkit/report.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ginv {

enum class BlockTheorem { Thm41, Cor42, Cor43, Cor44, Thm45, Cor46, Thm47, Cor48 };

std::string_view tag(BlockTheorem id);
std::optional<BlockTheorem> parse_block_theorem(std::string_view tag);
const std::vector<BlockTheorem>& block_theorems();

/// A is m x m, B is m x n, C is n x m, D is n x n, with m, n >= 1.
struct BlockParts {
  CMatrix A;
  CMatrix B;
  CMatrix C;
  CMatrix D;

  Index m() const { return A.rows(); }
  Index n() const { return D.rows(); }

  /// Throws DimensionError naming the first non-conformable block.
  void validate() const;
};

CMatrix assemble(const BlockParts& parts);

struct BlockGinvReport {
  BlockTheorem theorem = BlockTheorem::Thm41;
  int variant = 0;  // 1 or 2 for cor4.4, otherwise 0
  std::vector<Check> hypotheses;
  std::vector<Check> conditions;
  bool applicable = false;
  std::optional<bool> decision;
  CMatrix M;
  CMatrix P;
  CMatrix Q;
  std::optional<CMatrix> inverse;
  std::optional<AxiomCheck> inverse_check;
  Trace trace;
  std::optional<bool> oracle_exists;
  std::optional<bool> oracle_match;
  std::vector<std::string> notes;

  const Check* first_failure() const;
  const CMatrix* traced(std::string_view name) const { return find_in_trace(trace, name); }
};

/// Diagonal split P = diag(A, D), Q = [[0, B], [C, 0]]. M# exists iff
/// A^pi(BC)^pi A = 0, D^pi(CB)^pi D = 0 and N = [[A, AA#B], [DD#C, D]] in R#.
BlockGinvReport thm41_block(const BlockParts& parts, const Tolerance& tol = {});
/// As thm41 with AB = 0; conditions BCA = 0 and D^pi(CB)^pi D = 0.
BlockGinvReport cor42_block(const BlockParts& parts, const Tolerance& tol = {});
/// As thm41 with DC = 0; conditions A^pi(BC)^pi A = 0 and CBD = 0.
BlockGinvReport cor43_block(const BlockParts& parts, const Tolerance& tol = {});
/// rank(B) = rank(C) = rank(BC) = rank(CB) replaces the B(CB)^pi, C(BC)^pi
/// hypotheses; variant 1 follows cor4.2, variant 2 follows cor4.3.
BlockGinvReport cor44_block(const BlockParts& parts, int variant, const Tolerance& tol = {});
/// Row split P = [[A, B], [0, 0]], Q = [[0, 0], [C, D]]; sufficient only.
BlockGinvReport thm45_block(const BlockParts& parts, const Tolerance& tol = {});
BlockGinvReport cor46_block(const BlockParts& parts, const Tolerance& tol = {});
/// Column split P = [[A, 0], [C, 0]], Q = [[0, B], [0, D]]; sufficient only.
BlockGinvReport thm47_block(const BlockParts& parts, const Tolerance& tol = {});
BlockGinvReport cor48_block(const BlockParts& parts, const Tolerance& tol = {});

BlockGinvReport block_ginv(BlockTheorem id, const BlockParts& parts, const Tolerance& tol = {},
                           int variant = 1);

struct AutoBlockReport {
  std::vector<BlockGinvReport> reports;
  GinvResult<Complex> oracle;
  bool consensus = true;
  std::size_t produced = 0;
};

/// Every block checker (cor4.4 in both variants) plus a consensus check.
AutoBlockReport auto_block(const BlockParts& parts, const Tolerance& tol = {});

}  // namespace ginv
