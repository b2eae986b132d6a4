#include "ginvkit/testkit.hpp"

#include "ginvkit/gen_inverse.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace ginv::testkit {

Complex Rng::complex_modulus(double lo, double hi) {
  const double r = uniform(lo, hi);
  const double t = uniform(0, 2 * std::numbers::pi);
  return std::polar(r, t);
}

CMatrix random_matrix(Rng& rng, Index rows, Index cols) {
  CMatrix out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) out(i, j) = rng.complex_unit_box();
  }
  return out;
}

CMatrix random_unitary(Rng& rng, Index n) {
  if (n == 0) return CMatrix(0, 0);
  Eigen::HouseholderQR<CMatrix> qr(random_matrix(rng, n, n));
  return qr.householderQ() * CMatrix::Identity(n, n);
}

Similarity random_similarity(Rng& rng, Index n) {
  const CMatrix u = random_unitary(rng, n);
  const CMatrix v = random_unitary(rng, n);
  Eigen::VectorXd sigma(n);
  for (Index i = 0; i < n; ++i) sigma(i) = rng.uniform(1, 4);
  Similarity out;
  out.s = u * sigma.cast<Complex>().asDiagonal() * v;
  out.s_inv = v.adjoint() * sigma.cwiseInverse().cast<Complex>().asDiagonal() * u.adjoint();
  return out;
}

CMatrix random_diagonal(Rng& rng, Index n, double zero_prob) {
  CMatrix out = CMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    if (!rng.chance(zero_prob)) out(i, i) = rng.complex_modulus(0.5, 2);
  }
  return out;
}

CMatrix random_nilpotent(Rng& rng, Index n) {
  CMatrix t = CMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) t(i, j) = rng.complex_unit_box();
  }
  if (n >= 2) t(0, 1) = rng.complex_modulus(0.5, 2);
  const Similarity s = random_similarity(rng, n);
  return s.s * t * s.s_inv;
}

namespace {

CMatrix zeros(Index r, Index c) { return CMatrix::Zero(r, c); }
CMatrix eye(Index n) { return CMatrix::Identity(n, n); }

void put(CMatrix& out, Index i, Index j, const CMatrix& blk) {
  if (blk.size() > 0) out.block(i, j, blk.rows(), blk.cols()) = blk;
}

CMatrix diag_blocks(const std::vector<CMatrix>& blocks) {
  Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  CMatrix out = zeros(n, n);
  Index at = 0;
  for (const auto& b : blocks) {
    put(out, at, at, b);
    at += b.rows();
  }
  return out;
}

// [[tl, tr], [bl, br]] with possibly empty blocks.
CMatrix two_by_two(const CMatrix& tl, const CMatrix& tr, const CMatrix& bl, const CMatrix& br) {
  const Index m = tl.rows();
  const Index n = br.rows();
  CMatrix out = zeros(m + n, m + n);
  put(out, 0, 0, tl);
  put(out, 0, m, tr);
  put(out, m, 0, bl);
  put(out, m, m, br);
  return out;
}

CMatrix conj(const Similarity& s, const CMatrix& x) { return s.s * x * s.s_inv; }

// Generic well-conditioned invertible matrix (cond <= 4) with a random phase.
CMatrix random_invertible(Rng& rng, Index n) {
  return rng.complex_modulus(1, 1) * random_similarity(rng, n).s;
}

// Diagonalizable with spectrum from random_diagonal; force_zero puts a zero
// eigenvalue at a random position.
CMatrix random_diagonalizable(Rng& rng, Index n, double zero_prob, bool force_zero = false) {
  CMatrix d = random_diagonal(rng, n, zero_prob);
  if (force_zero && n > 0) {
    const Index i = rng.integer(0, static_cast<int>(n) - 1);
    d(i, i) = 0;
  }
  return conj(random_similarity(rng, n), d);
}

// Full rank with probability 1/4, otherwise uniform in [lo, hi].
Index pick_rank(Rng& rng, Index lo, Index hi) {
  if (rng.chance(0.25)) return hi;
  return rng.integer(static_cast<int>(lo), static_cast<int>(hi));
}

// Product of random m x k and k x n factors; rank min(k, m, n) generically.
CMatrix random_low_rank(Rng& rng, Index m, Index k, Index n) {
  const CMatrix left = random_matrix(rng, m, k);
  const CMatrix right = random_matrix(rng, k, n);
  return left * right;
}

// x = T diag(core, 0) T^-1 together with its exact group inverse data.
struct Exact {
  CMatrix value;
  CMatrix sharp;
  CMatrix pi;
  Similarity t;
  Index rank = 0;

  // T diag(1 on [from, to)) T^-1.
  CMatrix range_projector(Index from, Index to) const {
    const Index n = value.rows();
    CMatrix d = zeros(n, n);
    for (Index i = from; i < to; ++i) d(i, i) = 1;
    return conj(t, d);
  }
};

Exact exact_group_invertible(Rng& rng, Index n, Index r) {
  Exact e;
  e.t = random_similarity(rng, n);
  e.rank = r;
  const CMatrix core = random_invertible(rng, r);
  e.value = conj(e.t, diag_blocks({core, zeros(n - r, n - r)}));
  e.sharp = conj(e.t, diag_blocks({CMatrix(core.inverse()), zeros(n - r, n - r)}));
  e.pi = conj(e.t, diag_blocks({zeros(r, r), eye(n - r)}));
  return e;
}

// T diag(core, nilpotent) T^-1: never group invertible when nil_size >= 2.
CMatrix with_nilpotent_part(Rng& rng, Index n, Index nil_size) {
  const Index r = n - nil_size;
  const CMatrix core = diag_blocks({random_invertible(rng, r), random_nilpotent(rng, nil_size)});
  return conj(random_similarity(rng, n), core);
}

// ---------------------------------------------------------------------------
// Predicate tables.

struct Gi {
  bool ok = false;
  // The rank test rank(x) == rank(x^2) reaches the same verdict as the oracle.
  bool agrees = true;
  CMatrix sharp;
  CMatrix pi;
};

Gi gi_of(const CMatrix& x, const Tolerance& tol) {
  const auto r = oracle_group_inverse(x, tol);
  Gi g;
  g.ok = r.exists;
  if (g.ok) {
    g.sharp = *r.inverse;
    g.pi = r.rank_a == x.rows() ? zeros(x.rows(), x.rows()) : CMatrix(eye(x.rows()) - x * g.sharp);
  }
  g.agrees = group_inverse(x, tol).exists == g.ok;
  return g;
}

template <typename... M>
double norms(const M&... m) {
  return (1.0 * ... * m.norm());
}

class Table {
 public:
  explicit Table(const Tolerance& tol) : tol_(tol) {}

  void member(std::string name, bool ok, bool hyp = true) { rows_.push_back({std::move(name), hyp, true, ok}); }
  void member(std::string name, const CMatrix& x, bool hyp = true) {
    const Gi g = gi_of(x, tol_);
    track(g);
    member(std::move(name), g.ok, hyp);
  }
  void track(const Gi& g) { agree_ = agree_ && g.agrees; }
  void zero(std::string name, const CMatrix& r, double scale, bool hyp = true) {
    rows_.push_back({std::move(name), hyp, true, is_negligible_norm(r.norm(), scale, tol_)});
  }
  void skip(std::string name, bool hyp = true) { rows_.push_back({std::move(name), hyp, false, false}); }

  // Appends kRankAgreement, so instances sitting on the rank cutoff are
  // rejected rather than fed to the checkers.
  std::vector<Predicate> take() {
    rows_.push_back({kRankAgreement, true, true, agree_});
    return std::move(rows_);
  }

 private:
  Tolerance tol_;
  std::vector<Predicate> rows_;
  bool agree_ = true;
};

}  // namespace

CMatrix random_group_invertible(Rng& rng, Index n, Index r) {
  if (r < 0) r = rng.integer(0, static_cast<int>(n));
  return exact_group_invertible(rng, n, r).value;
}

std::vector<std::string> failing(const std::vector<Predicate>& table) {
  std::vector<std::string> out;
  for (const auto& p : table) {
    if (p.evaluated && !p.holds) out.push_back(p.name);
  }
  return out;
}

std::vector<Predicate> sum_predicates(const std::string& id, const CMatrix& a, const CMatrix& b,
                                      const Tolerance& tol) {
  const Gi A = gi_of(a, tol);
  const Gi B = gi_of(b, tol);
  const bool both = A.ok && B.ok;
  const Index n = a.rows();
  Table t(tol);
  t.track(A);
  t.track(B);
  t.track(gi_of(a + b, tol));
  t.member("a in R#", A.ok);
  t.member("b in R#", B.ok);

  auto thm25_conditions = [&] {
    t.member("aa#b + bb#a in R#", CMatrix(a * A.sharp * b + b * B.sharp * a), false);
    t.zero("a^pi b^pi a = 0", A.pi * B.pi * a, norms(A.pi, B.pi, a), false);
    t.zero("b^pi a^pi b = 0", B.pi * A.pi * b, norms(B.pi, A.pi, b), false);
  };

  if (id == "thm2.3") {
    if (A.ok) {
      t.member("ba^pi in R#", CMatrix(b * A.pi));
      t.zero("aba^pi = 0", a * b * A.pi, norms(a, b, A.pi));
    } else {
      t.skip("ba^pi in R#");
      t.skip("aba^pi = 0");
    }
    if (both) {
      t.member("w in R#", CMatrix(a + a * A.sharp * b), false);
      t.zero("b^pi a^pi b = 0", B.pi * A.pi * b, norms(B.pi, A.pi, b), false);
    }
  } else if (id == "cor2.4") {
    if (A.ok) {
      t.member("a^pi b in R#", CMatrix(A.pi * b));
      t.zero("a^pi ba = 0", A.pi * b * a, norms(A.pi, b, a));
    } else {
      t.skip("a^pi b in R#");
      t.skip("a^pi ba = 0");
    }
    if (both) {
      t.member("v in R#", CMatrix((eye(n) + b * A.sharp) * a), false);
      t.zero("ba^pi b^pi = 0", b * A.pi * B.pi, norms(b, A.pi, B.pi), false);
    }
  } else if (id == "thm2.5") {
    if (A.ok) {
      t.member("ba^pi in R#", CMatrix(b * A.pi));
      t.zero("aba^pi = 0", a * b * A.pi, norms(a, b, A.pi));
    } else {
      t.skip("ba^pi in R#");
      t.skip("aba^pi = 0");
    }
    if (B.ok) {
      t.member("ab^pi in R#", CMatrix(a * B.pi));
      t.zero("bab^pi = 0", b * a * B.pi, norms(b, a, B.pi));
    } else {
      t.skip("ab^pi in R#");
      t.skip("bab^pi = 0");
    }
    if (both) thm25_conditions();
  } else if (id == "cor2.6") {
    if (both) {
      const CMatrix l = a * A.sharp * b;
      const CMatrix r = b * B.sharp * a;
      t.member("aa#b in R#", l);
      t.zero("aa#b = bb#a", l - r, std::max(norms(a, A.sharp, b), norms(b, B.sharp, a)));
      t.member("2aa#b in R#", CMatrix(2.0 * l), false);
    } else {
      t.skip("aa#b in R#");
      t.skip("aa#b = bb#a");
    }
  } else if (id == "cor2.7") {
    if (both) {
      const CMatrix l = a * b * B.sharp;
      const CMatrix r = b * a * A.sharp;
      t.member("abb# in R#", l);
      t.zero("abb# = baa#", l - r, std::max(norms(a, b, B.sharp), norms(b, a, A.sharp)));
      t.member("2abb# in R#", CMatrix(2.0 * l), false);
    } else {
      t.skip("abb# in R#");
      t.skip("abb# = baa#");
    }
  } else if (id == "thm3.2" || id == "cor3.3" || id == "thm3.5") {
    t.zero("a^2b = aba", a * a * b - a * b * a, norms(a, a, b));
    t.zero("b^2a = bab", b * b * a - b * a * b, norms(b, b, a));
    if (both && id == "thm3.5") {
      t.member("I + a#b in R#", CMatrix(eye(n) + A.sharp * b), false);
      t.zero("b^pi a^pi b = 0", B.pi * A.pi * b, norms(B.pi, A.pi, b), false);
    } else if (both) {
      thm25_conditions();
    }
  } else if (id == "cor3.6") {
    t.zero("ab^2 = bab", a * b * b - b * a * b, norms(a, b, b));
    t.zero("ba^2 = aba", b * a * a - a * b * a, norms(b, a, a));
    if (both) {
      t.member("I + ba# in R#", CMatrix(eye(n) + b * A.sharp), false);
      t.zero("ba^pi b^pi = 0", b * A.pi * B.pi, norms(b, A.pi, B.pi), false);
    }
  } else {
    throw std::invalid_argument("no predicate table for sum case '" + id + "'");
  }
  return t.take();
}

std::vector<Predicate> block_predicates(const std::string& id, const BlockParts& p, int variant,
                                        const Tolerance& tol) {
  p.validate();
  const CMatrix& A = p.A;
  const CMatrix& B = p.B;
  const CMatrix& C = p.C;
  const CMatrix& D = p.D;
  const Gi a = gi_of(A, tol);
  const Gi d = gi_of(D, tol);
  Table t(tol);
  t.track(a);
  t.track(d);
  t.track(gi_of(assemble(p), tol));
  t.member("A in R#", a.ok);
  t.member("D in R#", d.ok);

  const bool diagonal_split =
      id == "thm4.1" || id == "cor4.2" || id == "cor4.3" || id == "cor4.4";
  if (diagonal_split) {
    const CMatrix bc = B * C;
    const CMatrix cb = C * B;
    const Gi gbc = gi_of(bc, tol);
    const Gi gcb = gi_of(cb, tol);
    t.track(gbc);
    t.track(gcb);
    auto cross = [&](const std::string& suffix) {
      if (gcb.ok) {
        t.zero("B(CB)^pi = 0" + suffix, B * gcb.pi, norms(B, gcb.pi));
      } else {
        t.skip("B(CB)^pi = 0" + suffix);
      }
      if (gbc.ok) {
        t.zero("C(BC)^pi = 0" + suffix, C * gbc.pi, norms(C, gbc.pi));
      } else {
        t.skip("C(BC)^pi = 0" + suffix);
      }
    };
    auto abd = [&] {
      if (d.ok) {
        t.zero("ABD^pi = 0", A * B * d.pi, norms(A, B, d.pi));
      } else {
        t.skip("ABD^pi = 0");
      }
    };
    auto dca = [&] {
      if (a.ok) {
        t.zero("DCA^pi = 0", D * C * a.pi, norms(D, C, a.pi));
      } else {
        t.skip("DCA^pi = 0");
      }
    };
    const bool ready = a.ok && d.ok && gbc.ok && gcb.ok;
    auto upper = [&] {
      t.zero("A^pi(BC)^pi A = 0", a.pi * gbc.pi * A, norms(a.pi, gbc.pi, A), false);
    };
    auto lower = [&] {
      t.zero("D^pi(CB)^pi D = 0", d.pi * gcb.pi * D, norms(d.pi, gcb.pi, D), false);
    };
    auto bca = [&] { t.zero("BCA = 0", B * C * A, norms(B, C, A), false); };
    auto cbd = [&] { t.zero("CBD = 0", C * B * D, norms(C, B, D), false); };

    if (id == "cor4.4") {
      const Index rb = mat_rank(B, tol);
      const Index rc = mat_rank(C, tol);
      const double bc_scale = spectral_norm(B) * spectral_norm(C);
      const Index rbc = mat_rank(bc, tol, bc_scale);
      const Index rcb = mat_rank(cb, tol, bc_scale);
      t.member("rank(B) = rank(C) = rank(BC) = rank(CB)", rb == rc && rc == rbc && rbc == rcb);
      if (variant == 1) {
        t.zero("AB = 0", A * B, norms(A, B));
        dca();
      } else {
        t.zero("DC = 0", D * C, norms(D, C));
        abd();
      }
      t.member("BC in R# (implied)", gbc.ok);
      t.member("CB in R# (implied)", gcb.ok);
      cross(" (implied)");
      if (ready) {
        if (variant == 1) {
          bca();
          lower();
        } else {
          upper();
          cbd();
        }
      }
      return t.take();
    }

    t.member("BC in R#", gbc.ok);
    t.member("CB in R#", gcb.ok);
    if (id == "cor4.2") t.zero("AB = 0", A * B, norms(A, B));
    if (id == "cor4.3") t.zero("DC = 0", D * C, norms(D, C));
    cross("");
    if (id != "cor4.2") abd();
    if (id != "cor4.3") dca();
    if (ready) {
      if (id == "cor4.2") {
        bca();
        lower();
      } else if (id == "cor4.3") {
        upper();
        cbd();
      } else {
        upper();
        lower();
        const CMatrix n_mat = two_by_two(A, A * a.sharp * B, D * d.sharp * C, D);
        t.member("N in R#", n_mat, false);
      }
    }
    return t.take();
  }

  if (id == "thm4.5" || id == "cor4.6") {
    if (a.ok) {
      t.zero("A^pi B = 0", a.pi * B, norms(a.pi, B));
    } else {
      t.skip("A^pi B = 0");
    }
    if (d.ok) {
      t.zero("D^pi C = 0", d.pi * C, norms(d.pi, C));
    } else {
      t.skip("D^pi C = 0");
    }
    if (id == "cor4.6") {
      t.zero("BC = 0", B * C, norms(B, C));
      t.zero("BD = 0", B * D, norms(B, D));
      return t.take();
    }
    if (a.ok) {
      t.zero("BCA^pi = 0", B * C * a.pi, norms(B, C, a.pi));
    } else {
      t.skip("BCA^pi = 0");
    }
    t.zero("ABC = 0", A * B * C, norms(A, B, C));
    if (a.ok) {
      t.zero("BD = BCA#B", B * D - B * C * a.sharp * B,
             std::max(norms(B, D), norms(B, C, a.sharp, B)));
    } else {
      t.skip("BD = BCA#B");
    }
    return t.take();
  }

  if (id == "thm4.7" || id == "cor4.8") {
    if (a.ok) {
      t.zero("CA^pi = 0", C * a.pi, norms(C, a.pi));
    } else {
      t.skip("CA^pi = 0");
    }
    if (d.ok) {
      t.zero("BD^pi = 0", B * d.pi, norms(B, d.pi));
    } else {
      t.skip("BD^pi = 0");
    }
    if (id == "cor4.8") {
      t.zero("BC = 0", B * C, norms(B, C));
      t.zero("DC = 0", D * C, norms(D, C));
      return t.take();
    }
    if (a.ok) {
      t.zero("A^pi BC = 0", a.pi * B * C, norms(a.pi, B, C));
    } else {
      t.skip("A^pi BC = 0");
    }
    t.zero("BCA = 0", B * C * A, norms(B, C, A));
    if (a.ok) {
      t.zero("DC = CA#BC", D * C - C * a.sharp * B * C,
             std::max(norms(D, C), norms(C, a.sharp, B, C)));
    } else {
      t.skip("DC = CA#BC");
    }
    return t.take();
  }
  throw std::invalid_argument("no predicate table for block case '" + id + "'");
}

namespace {

// ---------------------------------------------------------------------------
// Retry harness.

bool accept(const std::vector<Predicate>& table, const std::optional<std::string>& violate) {
  if (!violate) {
    return std::all_of(table.begin(), table.end(),
                       [](const Predicate& p) { return !p.hypothesis || (p.evaluated && p.holds); });
  }
  const auto bad = failing(table);
  return bad.size() == 1 && bad.front() == *violate;
}

template <typename Case, typename Sample, typename Check>
Case generate(const GenSpec& spec, Sample sample, Check table) {
  Rng rng(spec.seed);
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    Case c = sample(rng);
    if (accept(table(c), spec.violate)) return c;
  }
  std::string what = "no valid " + spec.case_id + " instance of size " + std::to_string(spec.dim);
  if (spec.violate) what += " violating '" + *spec.violate + "'";
  throw GenerationFailed(what + " after " + std::to_string(kMaxRetries) + " attempts");
}

const std::map<std::string, std::vector<std::string>>& violation_catalogue() {
  static const std::map<std::string, std::vector<std::string>> cat{
      {"thm2.3", {"a in R#", "b in R#", "aba^pi = 0", "w in R#", "b^pi a^pi b = 0"}},
      {"cor2.4", {"a in R#", "b in R#", "a^pi ba = 0", "v in R#", "ba^pi b^pi = 0"}},
      {"thm2.5", {"a in R#", "b in R#", "aa#b + bb#a in R#"}},
      {"cor2.6", {"a in R#", "aa#b = bb#a"}},
      {"cor2.7", {"a in R#", "abb# = baa#"}},
      {"thm3.2", {"a in R#", "b in R#", "aa#b + bb#a in R#"}},
      {"cor3.3", {"a in R#", "b in R#", "aa#b + bb#a in R#"}},
      {"thm3.5", {"a in R#", "b in R#", "I + a#b in R#"}},
      {"cor3.6", {"a in R#", "b in R#", "I + ba# in R#"}},
      {"thm4.1", {"A in R#", "ABD^pi = 0", "DCA^pi = 0", "N in R#"}},
      {"cor4.2", {"AB = 0", "DCA^pi = 0"}},
      {"cor4.3", {"DC = 0", "ABD^pi = 0"}},
      {"cor4.4", {"AB = 0", "DC = 0"}},
      {"thm4.5", {"A in R#", "A^pi B = 0", "D^pi C = 0", "BD = BCA#B"}},
      {"cor4.6", {"A in R#", "A^pi B = 0", "D^pi C = 0", "BD = 0"}},
      {"thm4.7", {"A in R#", "CA^pi = 0", "BD^pi = 0", "DC = CA#BC"}},
      {"cor4.8", {"A in R#", "CA^pi = 0", "BD^pi = 0", "DC = 0"}},
  };
  return cat;
}

void check_spec(const GenSpec& spec) {
  if (spec.dim < 2 || spec.dim > 12) {
    throw std::invalid_argument("dim must be in 2..12, got " + std::to_string(spec.dim));
  }
  const auto& cat = violation_catalogue();
  const auto it = cat.find(spec.case_id);
  if (it == cat.end()) throw std::invalid_argument("unknown case '" + spec.case_id + "'");
  if (spec.violate &&
      std::find(it->second.begin(), it->second.end(), *spec.violate) == it->second.end()) {
    throw std::invalid_argument("case " + spec.case_id + " cannot violate '" + *spec.violate + "'");
  }
}

std::string mapped(const std::optional<std::string>& v,
                   const std::map<std::string, std::string>& names) {
  if (!v) return {};
  const auto it = names.find(*v);
  return it == names.end() ? *v : it->second;
}

SumCase transposed(const SumCase& c) { return {c.a.transpose(), c.b.transpose()}; }

// ---------------------------------------------------------------------------
// Sum samplers. `v` is the empty string when nothing is violated.

// a = S diag(A1, 0) S^-1, b = S [[b1, X], [b3, b4]] S^-1.
SumCase sample_triangular(Rng& rng, Index n, const std::string& v, bool b1_invertible) {
  Index lo = 1;
  Index hi = n - 1;
  if (v == "a in R#") {
    lo = 0;
    hi = n - 2;
  } else if (v == "w in R#" || v == "aa#b + bb#a in R#") {
    lo = 2;
    hi = n;
  }
  const Index r = rng.integer(static_cast<int>(lo), static_cast<int>(std::max(lo, hi)));
  const Index q = n - r;

  const CMatrix a1 = random_invertible(rng, r);
  const CMatrix a_low = v == "a in R#" ? random_nilpotent(rng, q) : zeros(q, q);

  const bool negative = v == "w in R#" || v == "aa#b + bb#a in R#" ||
                        (v.empty() && r >= 2 && rng.chance(1.0 / 3.0));
  CMatrix b1;
  if (negative) {
    b1 = random_nilpotent(rng, r) - a1;
  } else if (v == "b in R#") {
    b1 = random_diagonalizable(rng, r, 1.0 / 3.0, true);
  } else if (b1_invertible || v == "aba^pi = 0" || v == "b^pi a^pi b = 0") {
    b1 = random_invertible(rng, r);
  } else {
    b1 = random_diagonalizable(rng, r, 1.0 / 3.0);
  }

  CMatrix b4;
  if (v == "w in R#" || v == "aba^pi = 0" || v == "aa#b + bb#a in R#" || v == "a in R#") {
    b4 = random_diagonalizable(rng, q, 0.0);
  } else if (v == "b in R#" || v == "b^pi a^pi b = 0") {
    b4 = random_diagonalizable(rng, q, 1.0 / 3.0, true);
  } else {
    b4 = random_diagonalizable(rng, q, 1.0 / 3.0);
  }

  CMatrix b3 = random_matrix(rng, q, r);
  if (v != "b in R#" && r > 0 && q > 0) {
    // Makes b4^pi b3 b1^pi = 0, which keeps b group invertible.
    const Gi g1 = gi_of(b1, {});
    const Gi g4 = gi_of(b4, {});
    if (g1.ok && g4.ok) b3 -= g4.pi * b3 * g1.pi;
  }
  const CMatrix x = v == "aba^pi = 0" ? random_matrix(rng, r, q) : zeros(r, q);

  const Similarity s = random_similarity(rng, n);
  return {conj(s, diag_blocks({a1, a_low})), conj(s, two_by_two(b1, x, b3, b4))};
}

SumCase sample_cor26(Rng& rng, Index n, const std::string& v) {
  Index r1 = rng.integer(v == "aa#b = bb#a" ? 1 : 0, static_cast<int>(n));
  Index r2 = rng.integer(0, static_cast<int>(n - r1));
  if (v == "a in R#") {
    r1 = rng.integer(0, static_cast<int>(n) - 2);
    r2 = rng.integer(2, static_cast<int>(n - r1));
  }
  const Index r3 = n - r1 - r2;
  const CMatrix a1 = random_invertible(rng, r1);
  const CMatrix a2 = v == "a in R#" ? random_nilpotent(rng, r2) : random_invertible(rng, r2);
  const CMatrix b1 = v == "aa#b = bb#a" ? random_invertible(rng, r1) : a1;
  const CMatrix b3 = random_diagonalizable(rng, r3, 1.0 / 3.0);
  const Similarity s = random_similarity(rng, n);
  return {conj(s, diag_blocks({a1, a2, zeros(r3, r3)})),
          conj(s, diag_blocks({b1, zeros(r2, r2), b3}))};
}

SumCase sample_commuting(Rng& rng, Index n, const std::string& v) {
  const bool cond_violation =
      v == "aa#b + bb#a in R#" || v == "I + a#b in R#" || v == "I + ba# in R#";
  const bool special = cond_violation || v == "a in R#" || v == "b in R#";
  const bool jordan = special || (n >= 2 && rng.chance(0.5));
  const Index k = jordan ? n - 2 : n;
  CMatrix la = random_diagonal(rng, k);
  CMatrix lb = random_diagonal(rng, k);
  CMatrix ja(0, 0);
  CMatrix jb(0, 0);
  if (jordan) {
    const Complex lambda = rng.complex_modulus(0.5, 2);
    CMatrix nil = zeros(2, 2);
    nil(0, 1) = 1;
    if (v == "a in R#") {
      ja = nil;
      jb = rng.complex_modulus(0.5, 2) * eye(2);
    } else if (v == "b in R#") {
      jb = nil;
      ja = rng.complex_modulus(0.5, 2) * eye(2);
    } else {
      ja = lambda * eye(2) + nil;
      const bool cancel = cond_violation || rng.chance(0.5);
      jb = (cancel ? -lambda : rng.complex_modulus(0.5, 2)) * eye(2);
    }
  }
  const Similarity s = random_similarity(rng, n);
  return {conj(s, diag_blocks({la, ja})), conj(s, diag_blocks({lb, jb}))};
}

// ---------------------------------------------------------------------------
// Block samplers.

Index split_point(Rng& rng, Index dim, Index min_m = 1, Index min_n = 1) {
  if (dim - min_n < min_m) {
    throw GenerationFailed("dim " + std::to_string(dim) + " leaves no room for a " +
                           std::to_string(min_m) + " x " + std::to_string(min_m) +
                           " corner beside a nonempty one");
  }
  return rng.integer(static_cast<int>(min_m), static_cast<int>(dim - min_n));
}

BlockParts split(const CMatrix& m_full, Index m) {
  const Index n = m_full.rows() - m;
  return {m_full.topLeftCorner(m, m), m_full.topRightCorner(m, n), m_full.bottomLeftCorner(n, m),
          m_full.bottomRightCorner(n, n)};
}

BlockParts sample_thm41(Rng& rng, Index dim, const std::string& v) {
  if (v == "N in R#" || (v.empty() && rng.chance(1.0 / 3.0))) {
    // M with a nilpotent part in a generic basis: A, D invertible, N = M.
    const Index k = rng.integer(2, static_cast<int>(dim));
    const CMatrix core =
        diag_blocks({random_nilpotent(rng, k), random_invertible(rng, dim - k)});
    const CMatrix full = conj(random_similarity(rng, dim), core);
    return split(full, split_point(rng, dim));
  }
  const Index m = split_point(rng, dim, v == "A in R#" ? 2 : 1);
  const Index n = dim - m;
  BlockParts p;
  Exact a;
  if (v == "A in R#") {
    p.A = with_nilpotent_part(rng, m, rng.integer(2, static_cast<int>(m)));
  } else {
    const int top = v == "DCA^pi = 0" ? static_cast<int>(m) - 1 : static_cast<int>(m);
    a = exact_group_invertible(rng, m, pick_rank(rng, 0, top));
    p.A = a.value;
  }
  const int dtop = v == "ABD^pi = 0" ? static_cast<int>(n) - 1 : static_cast<int>(n);
  const Exact d = exact_group_invertible(rng, n, pick_rank(rng, 0, dtop));
  p.D = d.value;

  const Index k = rng.integer(0, static_cast<int>(std::min(m, n)));
  p.B = random_low_rank(rng, m, k, n);
  p.C = random_low_rank(rng, n, k, m);
  if (v != "ABD^pi = 0") p.B = p.B * d.value * d.sharp;
  if (v != "DCA^pi = 0" && v != "A in R#") p.C = p.C * a.value * a.sharp;
  return p;
}

// AB = 0 and DCA^pi = 0 by construction; rank(B) = rank(C) = k generically.
BlockParts sample_cor42(Rng& rng, Index dim, const std::string& v) {
  const Index m = split_point(rng, dim);
  const Index n = dim - m;
  const int am = static_cast<int>(m);
  const int dn = static_cast<int>(n);
  const Exact a = exact_group_invertible(rng, m, v == "AB = 0" ? rng.integer(1, am) : rng.integer(0, am - 1));
  const Exact d =
      exact_group_invertible(rng, n, v == "DCA^pi = 0" ? rng.integer(1, dn) : rng.integer(0, dn - 1));
  const Index k = rng.integer(v.empty() ? 0 : 1, static_cast<int>(std::min(m, n)));
  const CMatrix u = random_matrix(rng, m, k);
  const CMatrix w = random_matrix(rng, n, k);

  CMatrix left = a.pi * u;
  if (v == "AB = 0") left += a.value * a.sharp * random_matrix(rng, m, k);
  BlockParts p;
  p.A = a.value;
  p.D = d.value;
  p.B = left * random_matrix(rng, k, n);

  CMatrix right = random_matrix(rng, k, m) * a.pi;
  if (rng.chance(0.5)) right += random_matrix(rng, k, m) * a.value * a.sharp;
  CMatrix col = d.pi * w;
  if (v == "DCA^pi = 0") col += d.value * d.sharp * random_matrix(rng, n, k);
  p.C = col * right;
  return p;
}

BlockParts permuted(const BlockParts& p) { return {p.D, p.C, p.B, p.A}; }

BlockParts sample_thm45(Rng& rng, Index dim, const std::string& v) {
  const bool a_nil = v == "A in R#";
  const Index m = split_point(rng, dim, a_nil ? 2 : 1);
  const Index n = dim - m;
  BlockParts p;
  CMatrix left;  // AA# for a group invertible A
  if (a_nil) {
    p.A = with_nilpotent_part(rng, m, rng.integer(2, static_cast<int>(m)));
    left = p.A;
  } else {
    const int top = v == "A^pi B = 0" ? static_cast<int>(m) - 1 : static_cast<int>(m);
    const Exact a = exact_group_invertible(rng, m, rng.integer(0, top));
    p.A = a.value;
    left = v == "A^pi B = 0" ? eye(m) : CMatrix(a.value * a.sharp);
  }

  const int dlo = (v == "BD = BCA#B" || v == "BD = 0") ? 1 : 0;
  const int dhi = v == "D^pi C = 0" ? static_cast<int>(n) - 1 : static_cast<int>(n);
  const Exact d = exact_group_invertible(rng, n, rng.integer(dlo, dhi));
  p.D = d.value;
  const Index rd = d.rank;

  const CMatrix b0 = random_matrix(rng, m, n);
  const CMatrix c0 = random_matrix(rng, n, m);
  if (v == "D^pi C = 0") {
    const Index s = rng.integer(static_cast<int>(rd), static_cast<int>(n) - 1);
    p.B = left * b0 * d.range_projector(rd, s);
    p.C = d.value * d.sharp * c0 + d.range_projector(s, n) * random_matrix(rng, n, m);
  } else if (v == "BD = BCA#B" || v == "BD = 0") {
    const Index ra = rng.integer(0, static_cast<int>(rd) - 1);
    p.B = left * b0 * (d.pi + d.range_projector(ra, rd));
    p.C = d.range_projector(0, ra) * c0;
  } else {
    p.B = left * b0 * d.pi;
    p.C = d.value * d.sharp * c0;
    if (v.empty() && rng.chance(0.2)) p.B.setZero();
    if (v.empty() && rng.chance(0.2)) p.C.setZero();
  }
  return p;
}

// Transpose dual: thm4.5 on (A^T, C^T, B^T, D^T) is thm4.7 on (A, B, C, D).
BlockParts dual_47(const BlockParts& p) {
  return {p.A.transpose(), p.C.transpose(), p.B.transpose(), p.D.transpose()};
}

}  // namespace

std::vector<std::string> supported_violations(const std::string& case_id) {
  const auto& cat = violation_catalogue();
  const auto it = cat.find(case_id);
  return it == cat.end() ? std::vector<std::string>{} : it->second;
}

bool is_sum_case(const std::string& id) {
  return id == "thm2.3" || id == "cor2.4" || id == "thm2.5" || id == "cor2.6" ||
         id == "cor2.7" || id == "thm3.2" || id == "cor3.3" || id == "thm3.5" || id == "cor3.6";
}

bool is_block_case(const std::string& id) {
  return id == "thm4.1" || id == "cor4.2" || id == "cor4.3" || id == "cor4.4" ||
         id == "thm4.5" || id == "cor4.6" || id == "thm4.7" || id == "cor4.8";
}

SumCase gen_commuting_pair(const GenSpec& spec) {
  check_spec(spec);
  if (spec.case_id != "thm3.2" && spec.case_id != "thm3.5" && spec.case_id != "cor3.3" &&
      spec.case_id != "cor3.6") {
    throw std::invalid_argument("gen_commuting_pair: unsupported case " + spec.case_id);
  }
  const std::string v = spec.violate.value_or("");
  return generate<SumCase>(
      spec, [&](Rng& rng) { return sample_commuting(rng, spec.dim, v); },
      [&](const SumCase& c) { return sum_predicates(spec.case_id, c.a, c.b); });
}

SumCase gen_thm23_pair(const GenSpec& spec) {
  check_spec(spec);
  if (spec.case_id == "thm2.3") {
    const std::string v = spec.violate.value_or("");
    return generate<SumCase>(
        spec, [&](Rng& rng) { return sample_triangular(rng, spec.dim, v, false); },
        [&](const SumCase& c) { return sum_predicates("thm2.3", c.a, c.b); });
  }
  if (spec.case_id == "cor2.4") {
    const std::string v = mapped(spec.violate, {{"a^pi ba = 0", "aba^pi = 0"},
                                                {"v in R#", "w in R#"},
                                                {"ba^pi b^pi = 0", "b^pi a^pi b = 0"}});
    return generate<SumCase>(
        spec, [&](Rng& rng) { return transposed(sample_triangular(rng, spec.dim, v, false)); },
        [&](const SumCase& c) { return sum_predicates("cor2.4", c.a, c.b); });
  }
  throw std::invalid_argument("gen_thm23_pair: unsupported case " + spec.case_id);
}

SumCase gen_sum_case(const GenSpec& spec) {
  check_spec(spec);
  const std::string& id = spec.case_id;
  if (id == "thm2.3" || id == "cor2.4") return gen_thm23_pair(spec);
  if (id == "thm3.2" || id == "thm3.5" || id == "cor3.3" || id == "cor3.6") {
    return gen_commuting_pair(spec);
  }
  const std::string v = spec.violate.value_or("");
  auto table = [&](const SumCase& c) { return sum_predicates(id, c.a, c.b); };
  if (id == "thm2.5") {
    return generate<SumCase>(
        spec,
        [&](Rng& rng) {
          SumCase c = sample_triangular(rng, spec.dim, v, true);
          if (v.empty() && rng.chance(0.5)) std::swap(c.a, c.b);
          return c;
        },
        table);
  }
  if (id == "cor2.6") {
    return generate<SumCase>(spec, [&](Rng& rng) { return sample_cor26(rng, spec.dim, v); },
                             table);
  }
  if (id == "cor2.7") {
    const std::string base = mapped(spec.violate, {{"abb# = baa#", "aa#b = bb#a"}});
    return generate<SumCase>(
        spec, [&](Rng& rng) { return transposed(sample_cor26(rng, spec.dim, base)); }, table);
  }
  throw std::invalid_argument("gen_sum_case: unsupported case " + id);
}

BlockCase gen_block_case(const GenSpec& spec) {
  check_spec(spec);
  const std::string& id = spec.case_id;
  const std::string v = spec.violate.value_or("");
  const Index dim = spec.dim;

  if (id == "cor4.4") {
    Rng pick(spec.seed ^ 0x9e3779b97f4a7c15ULL);
    int variant = pick.integer(1, 2);
    if (v == "AB = 0") variant = 1;
    if (v == "DC = 0") variant = 2;
    const BlockParts parts = generate<BlockParts>(
        spec,
        [&](Rng& rng) {
          return variant == 1 ? sample_cor42(rng, dim, v)
                              : permuted(sample_cor42(rng, dim, v == "DC = 0" ? "AB = 0" : v));
        },
        [&](const BlockParts& p) { return block_predicates(id, p, variant); });
    return {parts, variant};
  }

  auto table = [&](const BlockParts& p) { return block_predicates(id, p, 1); };
  BlockParts parts;
  if (id == "thm4.1") {
    parts = generate<BlockParts>(spec, [&](Rng& rng) { return sample_thm41(rng, dim, v); }, table);
  } else if (id == "cor4.2") {
    parts = generate<BlockParts>(spec, [&](Rng& rng) { return sample_cor42(rng, dim, v); }, table);
  } else if (id == "cor4.3") {
    const std::string base = mapped(spec.violate, {{"DC = 0", "AB = 0"}, {"ABD^pi = 0", "DCA^pi = 0"}});
    parts = generate<BlockParts>(
        spec, [&](Rng& rng) { return permuted(sample_cor42(rng, dim, base)); }, table);
  } else if (id == "thm4.5" || id == "cor4.6") {
    parts = generate<BlockParts>(spec, [&](Rng& rng) { return sample_thm45(rng, dim, v); }, table);
  } else if (id == "thm4.7" || id == "cor4.8") {
    const std::string base = mapped(spec.violate, {{"CA^pi = 0", "A^pi B = 0"},
                                                   {"BD^pi = 0", "D^pi C = 0"},
                                                   {"DC = CA#BC", "BD = BCA#B"},
                                                   {"DC = 0", "BD = 0"}});
    parts = generate<BlockParts>(
        spec, [&](Rng& rng) { return dual_47(sample_thm45(rng, dim, base)); }, table);
  } else {
    throw std::invalid_argument("gen_block_case: unsupported case " + id);
  }
  return {parts, 1};
}

}  // namespace ginv::testkit
