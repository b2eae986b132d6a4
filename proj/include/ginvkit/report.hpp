#pragma once

// Checklist entries and the small helpers every theorem checker uses to
// evaluate "x in R#" and "expr = 0" items.

#include "ginvkit/core.hpp"
#include "ginvkit/gen_inverse.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ginv {

/// One hypothesis or condition. Zero tests carry the Frobenius residual and
/// the scale it was judged against; membership tests ("x in R#") carry the
/// rank deficit rank(x) - rank(x^2) with scale 0.
struct Check {
  std::string name;
  double residual = 0;
  double scale = 0;
  bool pass = false;
  // False when a prerequisite (typically a group inverse) was unavailable.
  bool evaluated = true;
  std::string note;

  bool failed() const { return evaluated && !pass; }
};

struct NamedMatrix {
  std::string name;
  CMatrix value;
};

using Trace = std::vector<NamedMatrix>;

class NotIdempotentError : public std::invalid_argument {
 public:
  explicit NotIdempotentError(double residual)
      : std::invalid_argument("p is not idempotent: ||p^2 - p||_F = " + std::to_string(residual)),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class ShapeViolationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A named hypothesis of a direct formula does not hold.
class HypothesisError : public std::runtime_error {
 public:
  explicit HypothesisError(std::string hypothesis)
      : std::runtime_error("hypothesis failed: " + hypothesis), hypothesis_(std::move(hypothesis)) {}
  const std::string& hypothesis() const { return hypothesis_; }

 private:
  std::string hypothesis_;
};

/// A square matrix together with its group-inverse data, computed once and
/// reused across a checker.
struct Element {
  CMatrix value;
  GinvResult<Complex> ginv;
  CMatrix sharp;  // a#, valid only when ginv.exists
  CMatrix pi;     // I - a a#, valid only when ginv.exists

  bool invertible_in_group() const { return ginv.exists; }
};

Element analyze(const CMatrix& x, const Tolerance& tol);
/// For a computed product or sum x whose factors have norm product `scale`:
/// when x is negligible at that scale it is replaced by the exact zero, so
/// rounding noise is never inverted.
Element analyze(const CMatrix& x, const Tolerance& tol, double scale);

Check membership_check(std::string name, const Element& e);
Check membership_check(std::string name, const CMatrix& x, const Tolerance& tol);
Check membership_check(std::string name, const CMatrix& x, const Tolerance& tol, double scale);
Check zero_check(std::string name, const CMatrix& residual, double scale, const Tolerance& tol);
Check skipped_check(std::string name, std::string reason);

bool all_pass(const std::vector<Check>& checks);
const Check* first_failure(const std::vector<Check>& checks);
std::vector<std::string> failed_names(const std::vector<Check>& checks);

/// x and y agree to within the zero tolerance relative to max(||x||, ||y||).
bool matrices_agree(const CMatrix& x, const CMatrix& y, const Tolerance& tol);

const CMatrix* find_in_trace(const Trace& trace, std::string_view name);

}  // namespace ginv
