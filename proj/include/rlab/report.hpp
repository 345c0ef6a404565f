#pragma once

#include <limits>
#include <optional>
#include <string>

namespace rlab {

// Outcome of one sampled or enumerated inequality check.  Every assertion is
// normalized to the form lhs <= rhs + tolerance and contributes the margin
// lhs - rhs; `worst_margin` is the largest margin seen, so the report passes
// iff worst_margin <= tolerance.  `applicable` is false when the hypothesis of
// the audited statement did not hold, in which case nothing was asserted.
struct AuditReport {
  std::string name;
  bool passed = true;
  bool applicable = true;
  double worst_margin = -std::numeric_limits<double>::infinity();
  std::optional<std::string> witness;
  long samples = 0;
  double tolerance = 0.0;
  std::string note;

  void record(double margin, const std::string& witness_desc) {
    ++samples;
    if (margin > worst_margin) {
      worst_margin = margin;
      if (margin > tolerance) witness = witness_desc;
    }
    if (margin > tolerance) passed = false;
  }

  void mark_inapplicable(const std::string& why) {
    applicable = false;
    if (!note.empty()) note += "; ";
    note += "inapplicable: " + why;
  }

  void add_note(const std::string& n) {
    if (!note.empty()) note += "; ";
    note += n;
  }
};

}  // namespace rlab
