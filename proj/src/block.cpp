#include "ginvkit/block.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace ginv {

namespace {

constexpr std::array<std::pair<BlockTheorem, std::string_view>, 8> kTags{{
    {BlockTheorem::Thm41, "thm4.1"},
    {BlockTheorem::Cor42, "cor4.2"},
    {BlockTheorem::Cor43, "cor4.3"},
    {BlockTheorem::Cor44, "cor4.4"},
    {BlockTheorem::Thm45, "thm4.5"},
    {BlockTheorem::Cor46, "cor4.6"},
    {BlockTheorem::Thm47, "thm4.7"},
    {BlockTheorem::Cor48, "cor4.8"},
}};

double nprod(std::initializer_list<const CMatrix*> factors) {
  double s = 1.0;
  for (const auto* f : factors) s *= f->norm();
  return s;
}

CMatrix blocks(const CMatrix& tl, const CMatrix& tr, const CMatrix& bl, const CMatrix& br) {
  const Index m = tl.rows();
  const Index n = br.rows();
  CMatrix out(m + n, m + n);
  out << tl, tr, bl, br;
  return out;
}

CMatrix zeros(Index r, Index c) { return CMatrix::Zero(r, c); }

// Block data shared by the checkers.
struct Parts {
  const BlockParts& in;
  Index m;
  Index n;
  Element A;
  Element D;
  CMatrix M;

  Parts(const BlockParts& p, const Tolerance& tol)
      : in(p), m(p.m()), n(p.n()), A(analyze(p.A, tol)), D(analyze(p.D, tol)), M(assemble(p)) {}

  bool corners() const { return A.ginv.exists && D.ginv.exists; }
};

// BC and CB with their group inverses, for the diagonal split.
struct Cross {
  Element BC;
  Element CB;
};

Cross cross_products(const BlockParts& p, const Tolerance& tol) {
  const double scale = nprod({&p.B, &p.C});
  return {analyze(CMatrix(p.B * p.C), tol, scale), analyze(CMatrix(p.C * p.B), tol, scale)};
}

void decide(BlockGinvReport& r) {
  r.applicable = all_pass(r.hypotheses);
  if (r.applicable) r.decision = all_pass(r.conditions);
}

void finalize(BlockGinvReport& r, const Tolerance& tol) {
  if (r.inverse) {
    r.inverse_check = verify_axioms(r.M, *r.inverse, tol);
    if (!r.inverse_check->verdict) {
      r.notes.push_back("closed-form output failed the axiom check and was withheld");
      r.inverse.reset();
    }
  }
  const auto oracle = oracle_group_inverse(r.M, tol);
  r.oracle_exists = oracle.exists;
  if (r.applicable && r.decision) {
    bool match = oracle.exists == *r.decision;
    if (match && r.inverse && oracle.exists) match = matrices_agree(*r.inverse, *oracle.inverse, tol);
    r.oracle_match = match;
  }
}

void push_corner_membership(BlockGinvReport& r, const Parts& p) {
  r.hypotheses.push_back(membership_check("A in R#", p.A));
  r.hypotheses.push_back(membership_check("D in R#", p.D));
}

// B(CB)^pi = 0 and C(BC)^pi = 0.
void push_cross_annihilators(std::vector<Check>& out, const BlockParts& b, const Cross& x,
                             const Tolerance& tol, const std::string& suffix = "") {
  if (x.CB.ginv.exists) {
    out.push_back(zero_check("B(CB)^pi = 0" + suffix, b.B * x.CB.pi, nprod({&b.B, &x.CB.pi}), tol));
  } else {
    out.push_back(skipped_check("B(CB)^pi = 0" + suffix, "CB has no group inverse"));
  }
  if (x.BC.ginv.exists) {
    out.push_back(zero_check("C(BC)^pi = 0" + suffix, b.C * x.BC.pi, nprod({&b.C, &x.BC.pi}), tol));
  } else {
    out.push_back(skipped_check("C(BC)^pi = 0" + suffix, "BC has no group inverse"));
  }
}

Check abd_check(const Parts& p, const Tolerance& tol) {
  if (!p.D.ginv.exists) return skipped_check("ABD^pi = 0", "D has no group inverse");
  const auto& b = p.in;
  return zero_check("ABD^pi = 0", b.A * b.B * p.D.pi, nprod({&b.A, &b.B, &p.D.pi}), tol);
}

Check dca_check(const Parts& p, const Tolerance& tol) {
  if (!p.A.ginv.exists) return skipped_check("DCA^pi = 0", "A has no group inverse");
  const auto& b = p.in;
  return zero_check("DCA^pi = 0", b.D * b.C * p.A.pi, nprod({&b.D, &b.C, &p.A.pi}), tol);
}

Check upper_condition(const Parts& p, const Cross& x, const Tolerance& tol) {
  const auto& A = p.in.A;
  return zero_check("A^pi(BC)^pi A = 0", p.A.pi * x.BC.pi * A, nprod({&p.A.pi, &x.BC.pi, &A}), tol);
}

Check lower_condition(const Parts& p, const Cross& x, const Tolerance& tol) {
  const auto& D = p.in.D;
  return zero_check("D^pi(CB)^pi D = 0", p.D.pi * x.CB.pi * D, nprod({&p.D.pi, &x.CB.pi, &D}), tol);
}

bool cross_ready(const Parts& p, const Cross& x) {
  return p.corners() && x.BC.ginv.exists && x.CB.ginv.exists;
}

CMatrix n_matrix(const Parts& p) {
  const auto& b = p.in;
  return blocks(b.A, p.A.value * p.A.sharp * b.B, p.D.value * p.D.sharp * b.C, b.D);
}

// M# from the diagonal split through the left-corner assembly with w = N.
void produce_diagonal_split(BlockGinvReport& r, const Parts& p, const Cross& x,
                            const Tolerance& tol) {
  const auto& b = p.in;
  const CMatrix p_sharp = blocks(p.A.sharp, zeros(p.m, p.n), zeros(p.n, p.m), p.D.sharp);
  const CMatrix q_sharp =
      blocks(zeros(p.m, p.m), b.B * x.CB.sharp, b.C * x.BC.sharp, zeros(p.n, p.n));
  const Element n_elem = analyze(n_matrix(p), tol);
  r.trace.push_back({"P#", p_sharp});
  r.trace.push_back({"Q#", q_sharp});
  r.trace.push_back({"N", n_elem.value});
  if (!n_elem.ginv.exists) {
    r.notes.push_back("N has no group inverse; M# not assembled");
    return;
  }
  r.trace.push_back({"N#", n_elem.sharp});
  r.inverse = assemble_left_corner_inverse(r.P, p_sharp, r.Q, q_sharp, n_elem.sharp, n_elem.pi);
}

BlockGinvReport start(BlockTheorem id, const Parts& p) {
  BlockGinvReport r;
  r.theorem = id;
  r.M = p.M;
  return r;
}

void set_diagonal_split(BlockGinvReport& r, const Parts& p) {
  const auto& b = p.in;
  r.P = blocks(b.A, zeros(p.m, p.n), zeros(p.n, p.m), b.D);
  r.Q = blocks(zeros(p.m, p.m), b.B, b.C, zeros(p.n, p.n));
}

void push_cross_membership(BlockGinvReport& r, const Cross& x) {
  r.hypotheses.push_back(membership_check("BC in R#", x.BC));
  Check cb = membership_check("CB in R#", x.CB);
  cb.note += "; proof-implied";
  r.hypotheses.push_back(std::move(cb));
}

// Row split M = [[A, B], [0, 0]] + [[0, 0], [C, D]].
void produce_row_split(BlockGinvReport& r, const Parts& p, const Tolerance& tol) {
  const auto& b = p.in;
  r.P = blocks(b.A, b.B, zeros(p.n, p.m), zeros(p.n, p.n));
  r.Q = blocks(zeros(p.m, p.m), zeros(p.m, p.n), b.C, b.D);
  if (!r.applicable) return;
  const CMatrix& ag = p.A.sharp;
  const CMatrix& dg = p.D.sharp;
  const CMatrix p_sharp = blocks(ag, ag * ag * b.B, zeros(p.n, p.m), zeros(p.n, p.n));
  const CMatrix q_sharp = blocks(zeros(p.m, p.m), zeros(p.m, p.n), dg * dg * b.C, dg);
  const Element w = analyze(CMatrix(r.P * p_sharp * p.M), tol);
  r.trace.push_back({"P#", p_sharp});
  r.trace.push_back({"Q#", q_sharp});
  r.trace.push_back({"w", w.value});
  if (!w.ginv.exists) {
    r.notes.push_back("w = PP#M has no group inverse; M# not assembled");
    return;
  }
  r.trace.push_back({"w#", w.sharp});
  r.inverse = assemble_left_corner_inverse(r.P, p_sharp, r.Q, q_sharp, w.sharp, w.pi);
}

// Column split M = [[A, 0], [C, 0]] + [[0, B], [0, D]].
void produce_column_split(BlockGinvReport& r, const Parts& p, const Tolerance& tol) {
  const auto& b = p.in;
  r.P = blocks(b.A, zeros(p.m, p.n), b.C, zeros(p.n, p.n));
  r.Q = blocks(zeros(p.m, p.m), b.B, zeros(p.n, p.m), b.D);
  if (!r.applicable) return;
  const CMatrix& ag = p.A.sharp;
  const CMatrix& dg = p.D.sharp;
  const CMatrix p_sharp = blocks(ag, zeros(p.m, p.n), b.C * ag * ag, zeros(p.n, p.n));
  const CMatrix q_sharp = blocks(zeros(p.m, p.m), b.B * dg * dg, zeros(p.n, p.m), dg);
  const Index size = p.m + p.n;
  const Element v = analyze(CMatrix((CMatrix::Identity(size, size) + r.Q * p_sharp) * r.P), tol);
  r.trace.push_back({"P#", p_sharp});
  r.trace.push_back({"Q#", q_sharp});
  r.trace.push_back({"v", v.value});
  if (!v.ginv.exists) {
    r.notes.push_back("v = (I + QP#)P has no group inverse; M# not assembled");
    return;
  }
  r.trace.push_back({"v#", v.sharp});
  r.inverse = assemble_right_corner_inverse(r.P, p_sharp, r.Q, q_sharp, v.sharp, v.pi);
}

}  // namespace

std::string_view tag(BlockTheorem id) {
  for (const auto& [k, v] : kTags) {
    if (k == id) return v;
  }
  return "?";
}

std::optional<BlockTheorem> parse_block_theorem(std::string_view t) {
  for (const auto& [k, v] : kTags) {
    if (v == t) return k;
  }
  return std::nullopt;
}

const std::vector<BlockTheorem>& block_theorems() {
  static const std::vector<BlockTheorem> ids{BlockTheorem::Thm41, BlockTheorem::Cor42,
                                             BlockTheorem::Cor43, BlockTheorem::Cor44,
                                             BlockTheorem::Thm45, BlockTheorem::Cor46,
                                             BlockTheorem::Thm47, BlockTheorem::Cor48};
  return ids;
}

void BlockParts::validate() const {
  if (A.rows() < 1 || A.rows() != A.cols()) {
    throw DimensionError("A must be square and non-empty", shape_of(A), shape_of(A));
  }
  if (D.rows() < 1 || D.rows() != D.cols()) {
    throw DimensionError("D must be square and non-empty", shape_of(D), shape_of(D));
  }
  if (B.rows() != A.rows() || B.cols() != D.rows()) {
    throw DimensionError("B must be m x n", shape_of(B), Shape{A.rows(), D.rows()});
  }
  if (C.rows() != D.rows() || C.cols() != A.rows()) {
    throw DimensionError("C must be n x m", shape_of(C), Shape{D.rows(), A.rows()});
  }
}

CMatrix assemble(const BlockParts& parts) {
  parts.validate();
  return blocks(parts.A, parts.B, parts.C, parts.D);
}

const Check* BlockGinvReport::first_failure() const {
  if (const Check* c = ginv::first_failure(hypotheses)) return c;
  return ginv::first_failure(conditions);
}

BlockGinvReport thm41_block(const BlockParts& parts, const Tolerance& tol) {
  const Parts p(parts, tol);
  const Cross x = cross_products(parts, tol);
  BlockGinvReport r = start(BlockTheorem::Thm41, p);
  set_diagonal_split(r, p);

  push_corner_membership(r, p);
  push_cross_membership(r, x);
  push_cross_annihilators(r.hypotheses, parts, x, tol);
  r.hypotheses.push_back(abd_check(p, tol));
  r.hypotheses.push_back(dca_check(p, tol));

  if (cross_ready(p, x)) {
    r.conditions.push_back(upper_condition(p, x, tol));
    r.conditions.push_back(lower_condition(p, x, tol));
    r.conditions.push_back(membership_check("N in R#", n_matrix(p), tol));
  }
  decide(r);
  if (r.applicable && *r.decision) produce_diagonal_split(r, p, x, tol);
  finalize(r, tol);
  return r;
}

BlockGinvReport cor42_block(const BlockParts& parts, const Tolerance& tol) {
  const Parts p(parts, tol);
  const Cross x = cross_products(parts, tol);
  BlockGinvReport r = start(BlockTheorem::Cor42, p);
  set_diagonal_split(r, p);
  const auto& b = parts;

  push_corner_membership(r, p);
  push_cross_membership(r, x);
  r.hypotheses.push_back(zero_check("AB = 0", b.A * b.B, nprod({&b.A, &b.B}), tol));
  push_cross_annihilators(r.hypotheses, parts, x, tol);
  r.hypotheses.push_back(dca_check(p, tol));

  if (cross_ready(p, x)) {
    r.conditions.push_back(
        zero_check("BCA = 0", b.B * b.C * b.A, nprod({&b.B, &b.C, &b.A}), tol));
    r.conditions.push_back(lower_condition(p, x, tol));
  }
  decide(r);
  if (r.applicable && *r.decision) produce_diagonal_split(r, p, x, tol);
  finalize(r, tol);
  return r;
}

BlockGinvReport cor43_block(const BlockParts& parts, const Tolerance& tol) {
  const Parts p(parts, tol);
  const Cross x = cross_products(parts, tol);
  BlockGinvReport r = start(BlockTheorem::Cor43, p);
  set_diagonal_split(r, p);
  const auto& b = parts;

  push_corner_membership(r, p);
  push_cross_membership(r, x);
  r.hypotheses.push_back(zero_check("DC = 0", b.D * b.C, nprod({&b.D, &b.C}), tol));
  push_cross_annihilators(r.hypotheses, parts, x, tol);
  r.hypotheses.push_back(abd_check(p, tol));

  if (cross_ready(p, x)) {
    r.conditions.push_back(upper_condition(p, x, tol));
    r.conditions.push_back(
        zero_check("CBD = 0", b.C * b.B * b.D, nprod({&b.C, &b.B, &b.D}), tol));
  }
  decide(r);
  if (r.applicable && *r.decision) produce_diagonal_split(r, p, x, tol);
  finalize(r, tol);
  return r;
}

BlockGinvReport cor44_block(const BlockParts& parts, int variant, const Tolerance& tol) {
  if (variant != 1 && variant != 2) throw std::invalid_argument("cor4.4 variant must be 1 or 2");
  const Parts p(parts, tol);
  const Cross x = cross_products(parts, tol);
  BlockGinvReport r = start(BlockTheorem::Cor44, p);
  r.variant = variant;
  set_diagonal_split(r, p);
  const auto& b = parts;

  push_corner_membership(r, p);
  const Index rb = mat_rank(b.B, tol);
  const Index rc = mat_rank(b.C, tol);
  const double bc_scale = spectral_norm(b.B) * spectral_norm(b.C);
  const Index rbc = mat_rank(x.BC.value, tol, bc_scale);
  const Index rcb = mat_rank(x.CB.value, tol, bc_scale);
  Check ranks;
  ranks.name = "rank(B) = rank(C) = rank(BC) = rank(CB)";
  ranks.residual = static_cast<double>(std::max({rb, rc, rbc, rcb}) - std::min({rb, rc, rbc, rcb}));
  ranks.pass = ranks.residual == 0;
  ranks.note = "ranks " + std::to_string(rb) + ", " + std::to_string(rc) + ", " +
               std::to_string(rbc) + ", " + std::to_string(rcb);
  r.hypotheses.push_back(std::move(ranks));

  if (variant == 1) {
    r.hypotheses.push_back(zero_check("AB = 0", b.A * b.B, nprod({&b.A, &b.B}), tol));
    r.hypotheses.push_back(dca_check(p, tol));
  } else {
    r.hypotheses.push_back(zero_check("DC = 0", b.D * b.C, nprod({&b.D, &b.C}), tol));
    r.hypotheses.push_back(abd_check(p, tol));
  }

  // Consequences of the rank equality, re-verified numerically.
  std::vector<Check> implied;
  Check bc = membership_check("BC in R# (implied)", x.BC);
  Check cb = membership_check("CB in R# (implied)", x.CB);
  implied.push_back(std::move(bc));
  implied.push_back(std::move(cb));
  push_cross_annihilators(implied, parts, x, tol, " (implied)");
  for (auto& c : implied) r.hypotheses.push_back(std::move(c));

  if (cross_ready(p, x)) {
    if (variant == 1) {
      r.conditions.push_back(
          zero_check("BCA = 0", b.B * b.C * b.A, nprod({&b.B, &b.C, &b.A}), tol));
      r.conditions.push_back(lower_condition(p, x, tol));
    } else {
      r.conditions.push_back(upper_condition(p, x, tol));
      r.conditions.push_back(
          zero_check("CBD = 0", b.C * b.B * b.D, nprod({&b.C, &b.B, &b.D}), tol));
    }
  }
  decide(r);
  if (r.applicable && *r.decision) produce_diagonal_split(r, p, x, tol);
  finalize(r, tol);
  return r;
}

BlockGinvReport thm45_block(const BlockParts& parts, const Tolerance& tol) {
  const Parts p(parts, tol);
  BlockGinvReport r = start(BlockTheorem::Thm45, p);
  const auto& b = parts;

  push_corner_membership(r, p);
  if (p.A.ginv.exists) {
    r.hypotheses.push_back(zero_check("A^pi B = 0", p.A.pi * b.B, nprod({&p.A.pi, &b.B}), tol));
  } else {
    r.hypotheses.push_back(skipped_check("A^pi B = 0", "A has no group inverse"));
  }
  if (p.D.ginv.exists) {
    r.hypotheses.push_back(zero_check("D^pi C = 0", p.D.pi * b.C, nprod({&p.D.pi, &b.C}), tol));
  } else {
    r.hypotheses.push_back(skipped_check("D^pi C = 0", "D has no group inverse"));
  }
  if (p.A.ginv.exists) {
    r.hypotheses.push_back(
        zero_check("BCA^pi = 0", b.B * b.C * p.A.pi, nprod({&b.B, &b.C, &p.A.pi}), tol));
  } else {
    r.hypotheses.push_back(skipped_check("BCA^pi = 0", "A has no group inverse"));
  }
  r.hypotheses.push_back(zero_check("ABC = 0", b.A * b.B * b.C, nprod({&b.A, &b.B, &b.C}), tol));
  if (p.A.ginv.exists) {
    const CMatrix lhs = b.B * b.D;
    const CMatrix rhs = b.B * b.C * p.A.sharp * b.B;
    const double s = std::max(nprod({&b.B, &b.D}), nprod({&b.B, &b.C, &p.A.sharp, &b.B}));
    r.hypotheses.push_back(zero_check("BD = BCA#B", lhs - rhs, s, tol));
  } else {
    r.hypotheses.push_back(skipped_check("BD = BCA#B", "A has no group inverse"));
  }
  decide(r);
  produce_row_split(r, p, tol);
  finalize(r, tol);
  return r;
}

BlockGinvReport cor46_block(const BlockParts& parts, const Tolerance& tol) {
  const Parts p(parts, tol);
  BlockGinvReport r = start(BlockTheorem::Cor46, p);
  const auto& b = parts;

  push_corner_membership(r, p);
  if (p.A.ginv.exists) {
    r.hypotheses.push_back(zero_check("A^pi B = 0", p.A.pi * b.B, nprod({&p.A.pi, &b.B}), tol));
  } else {
    r.hypotheses.push_back(skipped_check("A^pi B = 0", "A has no group inverse"));
  }
  if (p.D.ginv.exists) {
    r.hypotheses.push_back(zero_check("D^pi C = 0", p.D.pi * b.C, nprod({&p.D.pi, &b.C}), tol));
  } else {
    r.hypotheses.push_back(skipped_check("D^pi C = 0", "D has no group inverse"));
  }
  r.hypotheses.push_back(zero_check("BC = 0", b.B * b.C, nprod({&b.B, &b.C}), tol));
  r.hypotheses.push_back(zero_check("BD = 0", b.B * b.D, nprod({&b.B, &b.D}), tol));
  decide(r);
  produce_row_split(r, p, tol);
  finalize(r, tol);
  return r;
}

BlockGinvReport thm47_block(const BlockParts& parts, const Tolerance& tol) {
  const Parts p(parts, tol);
  BlockGinvReport r = start(BlockTheorem::Thm47, p);
  const auto& b = parts;

  push_corner_membership(r, p);
  if (p.A.ginv.exists) {
    r.hypotheses.push_back(zero_check("CA^pi = 0", b.C * p.A.pi, nprod({&b.C, &p.A.pi}), tol));
  } else {
    r.hypotheses.push_back(skipped_check("CA^pi = 0", "A has no group inverse"));
  }
  if (p.D.ginv.exists) {
    r.hypotheses.push_back(zero_check("BD^pi = 0", b.B * p.D.pi, nprod({&b.B, &p.D.pi}), tol));
  } else {
    r.hypotheses.push_back(skipped_check("BD^pi = 0", "D has no group inverse"));
  }
  if (p.A.ginv.exists) {
    r.hypotheses.push_back(
        zero_check("A^pi BC = 0", p.A.pi * b.B * b.C, nprod({&p.A.pi, &b.B, &b.C}), tol));
  } else {
    r.hypotheses.push_back(skipped_check("A^pi BC = 0", "A has no group inverse"));
  }
  r.hypotheses.push_back(zero_check("BCA = 0", b.B * b.C * b.A, nprod({&b.B, &b.C, &b.A}), tol));
  if (p.A.ginv.exists) {
    const CMatrix lhs = b.D * b.C;
    const CMatrix rhs = b.C * p.A.sharp * b.B * b.C;
    const double s = std::max(nprod({&b.D, &b.C}), nprod({&b.C, &p.A.sharp, &b.B, &b.C}));
    r.hypotheses.push_back(zero_check("DC = CA#BC", lhs - rhs, s, tol));
  } else {
    r.hypotheses.push_back(skipped_check("DC = CA#BC", "A has no group inverse"));
  }
  decide(r);
  produce_column_split(r, p, tol);
  finalize(r, tol);
  return r;
}

BlockGinvReport cor48_block(const BlockParts& parts, const Tolerance& tol) {
  const Parts p(parts, tol);
  BlockGinvReport r = start(BlockTheorem::Cor48, p);
  const auto& b = parts;

  push_corner_membership(r, p);
  if (p.A.ginv.exists) {
    r.hypotheses.push_back(zero_check("CA^pi = 0", b.C * p.A.pi, nprod({&b.C, &p.A.pi}), tol));
  } else {
    r.hypotheses.push_back(skipped_check("CA^pi = 0", "A has no group inverse"));
  }
  if (p.D.ginv.exists) {
    r.hypotheses.push_back(zero_check("BD^pi = 0", b.B * p.D.pi, nprod({&b.B, &p.D.pi}), tol));
  } else {
    r.hypotheses.push_back(skipped_check("BD^pi = 0", "D has no group inverse"));
  }
  r.hypotheses.push_back(zero_check("BC = 0", b.B * b.C, nprod({&b.B, &b.C}), tol));
  r.hypotheses.push_back(zero_check("DC = 0", b.D * b.C, nprod({&b.D, &b.C}), tol));
  decide(r);
  produce_column_split(r, p, tol);
  finalize(r, tol);
  return r;
}

BlockGinvReport block_ginv(BlockTheorem id, const BlockParts& parts, const Tolerance& tol,
                           int variant) {
  switch (id) {
    case BlockTheorem::Thm41: return thm41_block(parts, tol);
    case BlockTheorem::Cor42: return cor42_block(parts, tol);
    case BlockTheorem::Cor43: return cor43_block(parts, tol);
    case BlockTheorem::Cor44: return cor44_block(parts, variant, tol);
    case BlockTheorem::Thm45: return thm45_block(parts, tol);
    case BlockTheorem::Cor46: return cor46_block(parts, tol);
    case BlockTheorem::Thm47: return thm47_block(parts, tol);
    case BlockTheorem::Cor48: return cor48_block(parts, tol);
  }
  throw std::invalid_argument("block_ginv: unknown theorem");
}

AutoBlockReport auto_block(const BlockParts& parts, const Tolerance& tol) {
  AutoBlockReport out;
  out.oracle = oracle_group_inverse(assemble(parts), tol);
  for (BlockTheorem id : block_theorems()) {
    out.reports.push_back(block_ginv(id, parts, tol, 1));
    if (id == BlockTheorem::Cor44) out.reports.push_back(cor44_block(parts, 2, tol));
  }
  const CMatrix* first = nullptr;
  for (const auto& r : out.reports) {
    if (!r.inverse) continue;
    ++out.produced;
    if (first == nullptr) first = &*r.inverse;
    if (!matrices_agree(*r.inverse, *first, tol)) out.consensus = false;
    if (!out.oracle.exists || !matrices_agree(*r.inverse, *out.oracle.inverse, tol)) {
      out.consensus = false;
    }
  }
  return out;
}

}  // namespace ginv
