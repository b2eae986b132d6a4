#include "ginvkit/report.hpp"

#include <algorithm>

namespace ginv {

Element analyze(const CMatrix& x, const Tolerance& tol) {
  Element e;
  e.value = x;
  e.ginv = group_inverse(x, tol);
  if (e.ginv.exists) {
    e.sharp = *e.ginv.inverse;
    // An invertible x has a^pi = 0 exactly; I - x x^-1 would be rounding noise.
    e.pi = e.ginv.rank_a == x.rows() ? CMatrix::Zero(x.rows(), x.cols())
                                     : CMatrix(CMatrix::Identity(x.rows(), x.cols()) - x * e.sharp);
  }
  return e;
}

Element analyze(const CMatrix& x, const Tolerance& tol, double scale) {
  if (is_negligible(x, scale, tol)) return analyze(CMatrix::Zero(x.rows(), x.cols()), tol);
  return analyze(x, tol);
}

Check membership_check(std::string name, const Element& e) {
  Check c;
  c.name = std::move(name);
  c.residual = static_cast<double>(e.ginv.rank_a - e.ginv.rank_a2);
  c.scale = 0;
  c.pass = e.ginv.exists;
  c.note = "rank=" + std::to_string(e.ginv.rank_a) + ", rank(^2)=" + std::to_string(e.ginv.rank_a2);
  if (e.ginv.rank_residual_disagreement) c.note += ", ranks agree but axioms fail";
  return c;
}

Check membership_check(std::string name, const CMatrix& x, const Tolerance& tol) {
  return membership_check(std::move(name), analyze(x, tol));
}

Check membership_check(std::string name, const CMatrix& x, const Tolerance& tol, double scale) {
  return membership_check(std::move(name), analyze(x, tol, scale));
}

Check zero_check(std::string name, const CMatrix& residual, double scale, const Tolerance& tol) {
  Check c;
  c.name = std::move(name);
  c.residual = residual.norm();
  c.scale = scale;
  c.pass = is_negligible_norm(c.residual, scale, tol);
  return c;
}

Check skipped_check(std::string name, std::string reason) {
  Check c;
  c.name = std::move(name);
  c.evaluated = false;
  c.pass = false;
  c.note = "not evaluated: " + std::move(reason);
  return c;
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* first_failure(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (c.failed()) return &c;
  }
  for (const auto& c : checks) {
    if (!c.pass) return &c;
  }
  return nullptr;
}

std::vector<std::string> failed_names(const std::vector<Check>& checks) {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (c.failed()) out.push_back(c.name);
  }
  return out;
}

bool matrices_agree(const CMatrix& x, const CMatrix& y, const Tolerance& tol) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  const double s = std::max(x.norm(), y.norm());
  return is_negligible_norm((x - y).norm(), s, tol);
}

const CMatrix* find_in_trace(const Trace& trace, std::string_view name) {
  for (const auto& entry : trace) {
    if (entry.name == name) return &entry.value;
  }
  return nullptr;
}

}  // namespace ginv
