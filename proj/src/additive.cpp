#include "ginvkit/additive.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace ginv {

namespace {

constexpr std::array<std::pair<SumTheorem, std::string_view>, 10> kTags{{
    {SumTheorem::Lem21, "lem2.1"},
    {SumTheorem::Thm23, "thm2.3"},
    {SumTheorem::Cor24, "cor2.4"},
    {SumTheorem::Thm25, "thm2.5"},
    {SumTheorem::Cor26, "cor2.6"},
    {SumTheorem::Cor27, "cor2.7"},
    {SumTheorem::Lem31, "lem3.1"},
    {SumTheorem::Thm32, "thm3.2"},
    {SumTheorem::Thm35, "thm3.5"},
    {SumTheorem::Cor36, "cor3.6"},
}};

void require_pair(const CMatrix& a, const CMatrix& b) {
  require_square(a);
  require_same_shape(a, b, "operands must have the same size");
}

CMatrix eye(Index n) { return CMatrix::Identity(n, n); }

double nprod(std::initializer_list<const CMatrix*> factors) {
  double s = 1.0;
  for (const auto* f : factors) s *= f->norm();
  return s;
}

CMatrix transposed(const CMatrix& x) { return x.transpose(); }

void finalize(SumGinvReport& r, const Tolerance& tol) {
  if (r.inverse) {
    r.inverse_check = verify_axioms(r.subject, *r.inverse, tol);
    if (!r.inverse_check->verdict) {
      r.notes.push_back("closed-form output failed the axiom check and was withheld");
      r.inverse.reset();
    }
  }
  const auto oracle = oracle_group_inverse(r.subject, tol);
  r.oracle_exists = oracle.exists;
  if (r.applicable && r.decision) {
    bool match = oracle.exists == *r.decision;
    if (match && r.inverse && oracle.exists) match = matrices_agree(*r.inverse, *oracle.inverse, tol);
    r.oracle_match = match;
  }
}

void decide(SumGinvReport& r) {
  r.applicable = all_pass(r.hypotheses);
  if (r.applicable) r.decision = all_pass(r.conditions);
}

// Pieces shared by every a + b checker.
struct Pair {
  Element a;
  Element b;
  CMatrix sum;
  Index n = 0;

  Pair(const CMatrix& a_in, const CMatrix& b_in, const Tolerance& tol)
      : a(analyze(a_in, tol)), b(analyze(b_in, tol)), sum(a_in + b_in), n(a_in.rows()) {}

  bool both() const { return a.ginv.exists && b.ginv.exists; }
};

void trace_basics(SumGinvReport& r, const Pair& p) {
  if (p.a.ginv.exists) {
    r.trace.push_back({"a#", p.a.sharp});
    r.trace.push_back({"a^pi", p.a.pi});
  }
  if (p.b.ginv.exists) {
    r.trace.push_back({"b#", p.b.sharp});
    r.trace.push_back({"b^pi", p.b.pi});
  }
}

// w = a a#(a + b) = a + a a# b, with w# supplied by the caller.
CMatrix left_corner(const Pair& p) { return p.a.value + p.a.value * p.a.sharp * p.b.value; }

// Group inverse of w = a + a a# b through s = a a# b + b b# a, valid under the
// two-sided hypotheses (aba^pi = 0, bab^pi = 0):
// w# = s# + a# b^pi + (a# b^pi)^2 t s^pi - a# b^pi t s#,  t = a b b# - a a# b b# a.
struct ViaS {
  CMatrix s;
  Element s_elem;
  CMatrix w_sharp;
};

ViaS w_sharp_via_s(const Pair& p, const Tolerance& tol) {
  const CMatrix& a = p.a.value;
  const CMatrix& b = p.b.value;
  const CMatrix& ag = p.a.sharp;
  const CMatrix& bg = p.b.sharp;
  ViaS out;
  out.s = a * ag * b + b * bg * a;
  out.s_elem = analyze(out.s, tol, std::max(nprod({&a, &ag, &b}), nprod({&b, &bg, &a})));
  if (!out.s_elem.ginv.exists) return out;
  const CMatrix& sg = out.s_elem.sharp;
  const CMatrix& spi = out.s_elem.pi;
  const CMatrix abpi = ag * p.b.pi;
  const CMatrix t = a * b * bg - a * ag * b * bg * a;
  out.w_sharp = sg + abpi + abpi * abpi * t * spi - abpi * t * sg;
  return out;
}

void add_thm25_conditions(SumGinvReport& r, const Pair& p, const ViaS& via, const Tolerance& tol) {
  const CMatrix& a = p.a.value;
  const CMatrix& b = p.b.value;
  r.conditions.push_back(membership_check("aa#b + bb#a in R#", via.s_elem));
  r.conditions.push_back(zero_check("a^pi b^pi a = 0", p.a.pi * p.b.pi * a,
                                    nprod({&p.a.pi, &p.b.pi, &a}), tol));
  r.conditions.push_back(zero_check("b^pi a^pi b = 0", p.b.pi * p.a.pi * b,
                                    nprod({&p.b.pi, &p.a.pi, &b}), tol));
}

void produce_from_s(SumGinvReport& r, const Pair& p, const ViaS& via) {
  const CMatrix w = left_corner(p);
  const CMatrix w_pi = eye(p.n) - w * via.w_sharp;
  r.trace.push_back({"s", via.s});
  r.trace.push_back({"s#", via.s_elem.sharp});
  r.trace.push_back({"s^pi", via.s_elem.pi});
  r.trace.push_back({"w", w});
  r.trace.push_back({"w#", via.w_sharp});
  r.trace.push_back({"w^pi", w_pi});
  r.inverse = assemble_left_corner_inverse(p.a.value, p.a.sharp, p.b.value, p.b.sharp, via.w_sharp,
                                           w_pi);
}

void add_commuting_like_hypotheses(SumGinvReport& r, const Pair& p, const Tolerance& tol) {
  const CMatrix& a = p.a.value;
  const CMatrix& b = p.b.value;
  r.hypotheses.push_back(membership_check("a in R#", p.a));
  r.hypotheses.push_back(membership_check("b in R#", p.b));
  r.hypotheses.push_back(zero_check("a^2b = aba", a * a * b - a * b * a, nprod({&a, &a, &b}), tol));
  r.hypotheses.push_back(zero_check("b^2a = bab", b * b * a - b * a * b, nprod({&b, &b, &a}), tol));
}

SumGinvReport transpose_back(SumGinvReport dual, SumTheorem id, const CMatrix& a, const CMatrix& b) {
  SumGinvReport r;
  r.theorem = id;
  r.subject = a + b;
  r.notes.push_back("formula evaluated on (a^T, b^T) and transposed back");
  if (dual.inverse) r.inverse = transposed(*dual.inverse);
  for (auto& entry : dual.trace) r.trace.push_back({entry.name + " (dual)", transposed(entry.value)});
  for (auto& n : dual.notes) r.notes.push_back("dual: " + n);
  return r;
}

}  // namespace

std::string_view tag(SumTheorem id) {
  for (const auto& [k, v] : kTags) {
    if (k == id) return v;
  }
  return "?";
}

std::optional<SumTheorem> parse_sum_theorem(std::string_view t) {
  for (const auto& [k, v] : kTags) {
    if (v == t) return k;
  }
  return std::nullopt;
}

const std::vector<SumTheorem>& sum_theorems() {
  static const std::vector<SumTheorem> ids{SumTheorem::Thm23, SumTheorem::Cor24, SumTheorem::Thm25,
                                           SumTheorem::Cor26, SumTheorem::Cor27, SumTheorem::Thm32,
                                           SumTheorem::Thm35, SumTheorem::Cor36};
  return ids;
}

const Check* SumGinvReport::first_failure() const {
  if (const Check* c = ginv::first_failure(hypotheses)) return c;
  return ginv::first_failure(conditions);
}

CMatrix assemble_left_corner_inverse(const CMatrix& a, const CMatrix& a_sharp, const CMatrix& b,
                                     const CMatrix& b_sharp, const CMatrix& w_sharp,
                                     const CMatrix& w_pi) {
  const Index n = a.rows();
  const CMatrix a_pi = eye(n) - a * a_sharp;
  const CMatrix bg_api = b_sharp * a_pi;
  return w_sharp + bg_api * bg_api * b * a * a_sharp * w_pi - bg_api * b * w_sharp + bg_api;
}

CMatrix assemble_right_corner_inverse(const CMatrix& a, const CMatrix& a_sharp, const CMatrix& b,
                                      const CMatrix& b_sharp, const CMatrix& v_sharp,
                                      const CMatrix& v_pi) {
  const Index n = a.rows();
  const CMatrix a_pi = eye(n) - a * a_sharp;
  const CMatrix api_bg = a_pi * b_sharp;
  return v_sharp + v_pi * a * a_sharp * b * api_bg * api_bg - v_sharp * b * api_bg + api_bg;
}

PierceBlocks pierce_blocks(const CMatrix& x, const CMatrix& p, const Tolerance& tol) {
  require_square(p);
  require_same_shape(x, p, "pierce_blocks");
  const CMatrix p2 = p * p;
  const double idem = (p2 - p).norm();
  if (!is_negligible_norm(idem, p.norm() * p.norm(), tol)) throw NotIdempotentError(idem);
  const CMatrix q = eye(p.rows()) - p;
  return {p * x * p, p * x * q, q * x * p, q * x * q};
}

SumGinvReport lemma21_ginv(const CMatrix& x, const CMatrix& p, const Tolerance& tol) {
  const PierceBlocks blocks = pierce_blocks(x, p, tol);
  const CMatrix q = eye(p.rows()) - p;
  if (!is_negligible(blocks.pxq, nprod({&p, &x, &q}), tol)) {
    throw ShapeViolationError("p x p^pi is not negligible: ||p x p^pi||_F = " +
                              std::to_string(blocks.pxq.norm()));
  }

  SumGinvReport r;
  r.theorem = SumTheorem::Lem21;
  r.subject = x;
  const Element ea = analyze(blocks.pxp, tol);
  const Element ed = analyze(blocks.qxq, tol);
  const CMatrix& c = blocks.qxp;
  r.hypotheses.push_back(membership_check("a in R#", ea));
  r.hypotheses.push_back(membership_check("d in R#", ed));
  r.trace.push_back({"a", blocks.pxp});
  r.trace.push_back({"c", c});
  r.trace.push_back({"d", blocks.qxq});

  if (ea.ginv.exists && ed.ginv.exists) {
    r.conditions.push_back(
        zero_check("d^pi c a^pi = 0", ed.pi * c * ea.pi, nprod({&ed.pi, &c, &ea.pi}), tol));
  } else {
    r.conditions.push_back(skipped_check("d^pi c a^pi = 0", "a or d has no group inverse"));
  }
  decide(r);

  if (r.applicable) {
    const CMatrix& ag = ea.sharp;
    const CMatrix& dg = ed.sharp;
    const CMatrix u = ed.pi * c * ag * ag + dg * dg * c * ea.pi - dg * c * ag;
    r.trace.push_back({"a#", ag});
    r.trace.push_back({"d#", dg});
    r.trace.push_back({"u", u});
    if (*r.decision) r.inverse = CMatrix(ag + u + dg);
  }
  finalize(r, tol);
  return r;
}

CornerInverses lemma22_corner(const CMatrix& b, const CMatrix& p, const Tolerance& tol) {
  require_square(b);
  require_same_shape(b, p, "lemma22_corner");
  const CMatrix p2 = p * p;
  const double idem = (p2 - p).norm();
  if (!is_negligible_norm(idem, p.norm() * p.norm(), tol)) throw NotIdempotentError(idem);
  const CMatrix q = eye(p.rows()) - p;

  const auto gb = group_inverse(b, tol);
  if (!gb.exists) throw HypothesisError("b in R#");
  if (!is_negligible(p * b * q, nprod({&p, &b, &q}), tol)) throw HypothesisError("pbp^pi = 0");
  const CMatrix bq = b * q;
  if (!group_inverse(bq, tol).exists) throw HypothesisError("bp^pi in R#");

  CornerInverses out{p * *gb.inverse, *gb.inverse * q};
  const CMatrix pb = p * b;
  if (!verify_axioms(pb, out.pb_sharp, tol).verdict) throw HypothesisError("(pb)# = pb# axioms");
  if (!verify_axioms(bq, out.bq_sharp, tol).verdict) {
    throw HypothesisError("(bp^pi)# = b#p^pi axioms");
  }
  return out;
}

SumGinvReport thm23_sum(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  require_pair(a, b);
  const Pair p(a, b, tol);
  SumGinvReport r;
  r.theorem = SumTheorem::Thm23;
  r.subject = p.sum;

  r.hypotheses.push_back(membership_check("a in R#", p.a));
  r.hypotheses.push_back(membership_check("b in R#", p.b));
  if (p.a.ginv.exists) {
    r.hypotheses.push_back(membership_check("ba^pi in R#", CMatrix(b * p.a.pi), tol,
                                                 nprod({&b, &p.a.pi})));
    r.hypotheses.push_back(
        zero_check("aba^pi = 0", a * b * p.a.pi, nprod({&a, &b, &p.a.pi}), tol));
  } else {
    r.hypotheses.push_back(skipped_check("ba^pi in R#", "a has no group inverse"));
    r.hypotheses.push_back(skipped_check("aba^pi = 0", "a has no group inverse"));
  }

  Element w;
  if (p.both()) {
    w = analyze(left_corner(p), tol, a.norm() + nprod({&a, &p.a.sharp, &b}));
    r.conditions.push_back(membership_check("w in R#", w));
    r.conditions.push_back(zero_check("b^pi a^pi b = 0", p.b.pi * p.a.pi * b,
                                      nprod({&p.b.pi, &p.a.pi, &b}), tol));
  }
  decide(r);
  trace_basics(r, p);
  if (p.both()) {
    r.trace.push_back({"w", w.value});
    if (w.ginv.exists) {
      r.trace.push_back({"w#", w.sharp});
      r.trace.push_back({"w^pi", w.pi});
    }
  }

  if (r.applicable && *r.decision) {
    r.inverse = assemble_left_corner_inverse(a, p.a.sharp, b, p.b.sharp, w.sharp, w.pi);
  }
  finalize(r, tol);
  return r;
}

SumGinvReport cor24_sum(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  require_pair(a, b);
  const Pair p(a, b, tol);
  SumGinvReport r;
  r.theorem = SumTheorem::Cor24;
  r.subject = p.sum;

  r.hypotheses.push_back(membership_check("a in R#", p.a));
  r.hypotheses.push_back(membership_check("b in R#", p.b));
  if (p.a.ginv.exists) {
    r.hypotheses.push_back(membership_check("a^pi b in R#", CMatrix(p.a.pi * b), tol,
                                                 nprod({&p.a.pi, &b})));
    r.hypotheses.push_back(
        zero_check("a^pi ba = 0", p.a.pi * b * a, nprod({&p.a.pi, &b, &a}), tol));
  } else {
    r.hypotheses.push_back(skipped_check("a^pi b in R#", "a has no group inverse"));
    r.hypotheses.push_back(skipped_check("a^pi ba = 0", "a has no group inverse"));
  }

  Element v;
  if (p.both()) {
    v = analyze(CMatrix((eye(p.n) + b * p.a.sharp) * a), tol, a.norm() + nprod({&b, &p.a.sharp, &a}));
    r.conditions.push_back(membership_check("v in R#", v));
    r.conditions.push_back(zero_check("ba^pi b^pi = 0", b * p.a.pi * p.b.pi,
                                      nprod({&b, &p.a.pi, &p.b.pi}), tol));
  }
  decide(r);
  trace_basics(r, p);
  if (p.both()) {
    r.trace.push_back({"v", v.value});
    if (v.ginv.exists) {
      r.trace.push_back({"v#", v.sharp});
      r.trace.push_back({"v^pi", v.pi});
    }
  }

  if (r.applicable && *r.decision) {
    r.inverse = assemble_right_corner_inverse(a, p.a.sharp, b, p.b.sharp, v.sharp, v.pi);
  }
  finalize(r, tol);
  return r;
}

SumGinvReport thm25_sum(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  require_pair(a, b);
  const Pair p(a, b, tol);
  SumGinvReport r;
  r.theorem = SumTheorem::Thm25;
  r.subject = p.sum;

  r.hypotheses.push_back(membership_check("a in R#", p.a));
  r.hypotheses.push_back(membership_check("b in R#", p.b));
  if (p.a.ginv.exists) {
    r.hypotheses.push_back(membership_check("ba^pi in R#", CMatrix(b * p.a.pi), tol,
                                                 nprod({&b, &p.a.pi})));
  } else {
    r.hypotheses.push_back(skipped_check("ba^pi in R#", "a has no group inverse"));
  }
  if (p.b.ginv.exists) {
    r.hypotheses.push_back(membership_check("ab^pi in R#", CMatrix(a * p.b.pi), tol,
                                                 nprod({&a, &p.b.pi})));
  } else {
    r.hypotheses.push_back(skipped_check("ab^pi in R#", "b has no group inverse"));
  }
  if (p.a.ginv.exists) {
    r.hypotheses.push_back(
        zero_check("aba^pi = 0", a * b * p.a.pi, nprod({&a, &b, &p.a.pi}), tol));
  } else {
    r.hypotheses.push_back(skipped_check("aba^pi = 0", "a has no group inverse"));
  }
  if (p.b.ginv.exists) {
    r.hypotheses.push_back(
        zero_check("bab^pi = 0", b * a * p.b.pi, nprod({&b, &a, &p.b.pi}), tol));
  } else {
    r.hypotheses.push_back(skipped_check("bab^pi = 0", "b has no group inverse"));
  }

  ViaS via;
  if (p.both()) {
    via = w_sharp_via_s(p, tol);
    add_thm25_conditions(r, p, via, tol);
  }
  decide(r);
  trace_basics(r, p);
  if (r.applicable && *r.decision) {
    produce_from_s(r, p, via);
  } else if (p.both()) {
    r.trace.push_back({"s", via.s});
  }
  finalize(r, tol);
  return r;
}

SumGinvReport cor26_sum(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  require_pair(a, b);
  const Pair p(a, b, tol);
  SumGinvReport r;
  r.theorem = SumTheorem::Cor26;
  r.subject = p.sum;

  r.hypotheses.push_back(membership_check("a in R#", p.a));
  r.hypotheses.push_back(membership_check("b in R#", p.b));
  CMatrix aab;
  if (p.both()) {
    aab = a * p.a.sharp * b;
    const CMatrix bba = b * p.b.sharp * a;
    const double s =
        std::max(nprod({&a, &p.a.sharp, &b}), nprod({&b, &p.b.sharp, &a}));
    r.hypotheses.push_back(membership_check("aa#b in R#", aab, tol, s));
    r.hypotheses.push_back(zero_check("aa#b = bb#a", aab - bba, s, tol));
  } else {
    r.hypotheses.push_back(skipped_check("aa#b in R#", "a or b has no group inverse"));
    r.hypotheses.push_back(skipped_check("aa#b = bb#a", "a or b has no group inverse"));
  }
  if (p.both()) {
    Check c = membership_check("2aa#b in R#", CMatrix(2.0 * aab), tol,
                               2.0 * nprod({&a, &p.a.sharp, &b}));
    c.note += "; over C equivalent to aa#b in R#";
    r.conditions.push_back(std::move(c));
  }
  decide(r);
  trace_basics(r, p);

  if (r.applicable && *r.decision) {
    r.notes.push_back("inverse through the two-sided (s = aa#b + bb#a) construction");
    produce_from_s(r, p, w_sharp_via_s(p, tol));
  }
  finalize(r, tol);
  return r;
}

SumGinvReport cor27_sum(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  require_pair(a, b);
  const Pair p(a, b, tol);
  std::vector<Check> hyps;
  std::vector<Check> conds;
  hyps.push_back(membership_check("a in R#", p.a));
  hyps.push_back(membership_check("b in R#", p.b));
  CMatrix abb;
  if (p.both()) {
    abb = a * b * p.b.sharp;
    const CMatrix baa = b * a * p.a.sharp;
    const double s = std::max(nprod({&a, &b, &p.b.sharp}), nprod({&b, &a, &p.a.sharp}));
    hyps.push_back(membership_check("abb# in R#", abb, tol, s));
    hyps.push_back(zero_check("abb# = baa#", abb - baa, s, tol));
    Check c = membership_check("2abb# in R#", CMatrix(2.0 * abb), tol,
                               2.0 * nprod({&a, &b, &p.b.sharp}));
    c.note += "; over C equivalent to abb# in R#";
    conds.push_back(std::move(c));
  } else {
    hyps.push_back(skipped_check("abb# in R#", "a or b has no group inverse"));
    hyps.push_back(skipped_check("abb# = baa#", "a or b has no group inverse"));
  }

  SumGinvReport r;
  const bool applicable = all_pass(hyps);
  const bool decision = applicable && all_pass(conds);
  if (applicable && decision) {
    r = transpose_back(cor26_sum(transposed(a), transposed(b), tol), SumTheorem::Cor27, a, b);
  } else {
    r.theorem = SumTheorem::Cor27;
    r.subject = p.sum;
  }
  r.hypotheses = std::move(hyps);
  r.conditions = std::move(conds);
  decide(r);
  trace_basics(r, p);
  finalize(r, tol);
  return r;
}

SumGinvReport lemma31_product(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  require_pair(a, b);
  const Pair p(a, b, tol);
  SumGinvReport r;
  r.theorem = SumTheorem::Lem31;
  r.subject = a * b;
  add_commuting_like_hypotheses(r, p, tol);
  decide(r);
  trace_basics(r, p);
  if (r.applicable) r.inverse = CMatrix(p.a.sharp * p.b.sharp);
  finalize(r, tol);
  return r;
}

SumGinvReport thm32_sum(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  require_pair(a, b);
  const Pair p(a, b, tol);
  SumGinvReport r;
  r.theorem = SumTheorem::Thm32;
  r.subject = p.sum;
  add_commuting_like_hypotheses(r, p, tol);

  ViaS via;
  if (p.both()) {
    via = w_sharp_via_s(p, tol);
    add_thm25_conditions(r, p, via, tol);
  }
  decide(r);
  trace_basics(r, p);
  if (r.applicable && *r.decision) {
    r.notes.push_back("inverse through the two-sided (s = aa#b + bb#a) construction");
    produce_from_s(r, p, via);
  } else if (p.both()) {
    r.trace.push_back({"s", via.s});
  }
  finalize(r, tol);
  return r;
}

SumGinvReport thm35_sum(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  require_pair(a, b);
  const Pair p(a, b, tol);
  SumGinvReport r;
  r.theorem = SumTheorem::Thm35;
  r.subject = p.sum;
  add_commuting_like_hypotheses(r, p, tol);

  Element one_plus;
  if (p.both()) {
    one_plus = analyze(CMatrix(eye(p.n) + p.a.sharp * b), tol);
    r.conditions.push_back(membership_check("I + a#b in R#", one_plus));
    r.conditions.push_back(zero_check("b^pi a^pi b = 0", p.b.pi * p.a.pi * b,
                                      nprod({&p.b.pi, &p.a.pi, &b}), tol));
  }
  decide(r);
  trace_basics(r, p);
  if (p.both()) r.trace.push_back({"I + a#b", one_plus.value});

  if (r.applicable && *r.decision) {
    const CMatrix w = left_corner(p);
    const CMatrix w_sharp = p.a.sharp * one_plus.sharp;
    const CMatrix w_pi = eye(p.n) - w * w_sharp;
    r.trace.push_back({"(I + a#b)#", one_plus.sharp});
    r.trace.push_back({"w", w});
    r.trace.push_back({"w#", w_sharp});
    r.trace.push_back({"w^pi", w_pi});
    r.inverse = assemble_left_corner_inverse(a, p.a.sharp, b, p.b.sharp, w_sharp, w_pi);
  }
  finalize(r, tol);
  return r;
}

SumGinvReport cor36_sum(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  require_pair(a, b);
  const Pair p(a, b, tol);
  std::vector<Check> hyps;
  std::vector<Check> conds;
  hyps.push_back(membership_check("a in R#", p.a));
  hyps.push_back(membership_check("b in R#", p.b));
  hyps.push_back(zero_check("ab^2 = bab", a * b * b - b * a * b, nprod({&a, &b, &b}), tol));
  hyps.push_back(zero_check("ba^2 = aba", b * a * a - a * b * a, nprod({&b, &a, &a}), tol));
  if (p.both()) {
    conds.push_back(membership_check("I + ba# in R#", CMatrix(eye(p.n) + b * p.a.sharp), tol));
    conds.push_back(zero_check("ba^pi b^pi = 0", b * p.a.pi * p.b.pi,
                               nprod({&b, &p.a.pi, &p.b.pi}), tol));
  }

  SumGinvReport r;
  const bool applicable = all_pass(hyps);
  if (applicable && all_pass(conds)) {
    r = transpose_back(thm35_sum(transposed(a), transposed(b), tol), SumTheorem::Cor36, a, b);
  } else {
    r.theorem = SumTheorem::Cor36;
    r.subject = p.sum;
  }
  r.hypotheses = std::move(hyps);
  r.conditions = std::move(conds);
  decide(r);
  trace_basics(r, p);
  finalize(r, tol);
  return r;
}

SumGinvReport sum_ginv(SumTheorem id, const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  switch (id) {
    case SumTheorem::Thm23: return thm23_sum(a, b, tol);
    case SumTheorem::Cor24: return cor24_sum(a, b, tol);
    case SumTheorem::Thm25: return thm25_sum(a, b, tol);
    case SumTheorem::Cor26: return cor26_sum(a, b, tol);
    case SumTheorem::Cor27: return cor27_sum(a, b, tol);
    case SumTheorem::Lem31: return lemma31_product(a, b, tol);
    case SumTheorem::Thm32: return thm32_sum(a, b, tol);
    case SumTheorem::Thm35: return thm35_sum(a, b, tol);
    case SumTheorem::Cor36: return cor36_sum(a, b, tol);
    case SumTheorem::Lem21: break;
  }
  throw std::invalid_argument("sum_ginv: lem2.1 takes (x, p), not a pair of summands");
}

AutoSumReport auto_sum(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  require_pair(a, b);
  AutoSumReport out;
  out.oracle = oracle_group_inverse(CMatrix(a + b), tol);
  const CMatrix* first = nullptr;
  for (SumTheorem id : sum_theorems()) {
    out.reports.push_back(sum_ginv(id, a, b, tol));
  }
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
