#pragma once

#include <string>
#include <vector>

#include "bpx/borcherds.hpp"
#include "bpx/lift.hpp"
#include "bpx/niemeier.hpp"

namespace bpx {

struct CheckReport {
  std::string check;
  std::string cusp;
  std::string policy;
  std::string status;  // pass | fail | structural-pass | skipped
  std::string witness;
  std::string sign;
  double seconds = 0;

  bool ok() const { return status == "pass" || status == "structural-pass" ||
                           status == "skipped"; }
};

struct SuiteReport {
  std::vector<CheckReport> checks;
  double total_seconds = 0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.ok()) return false;
    return true;
  }
  void add(CheckReport c) { checks.push_back(std::move(c)); }
  void merge(const SuiteReport& o) {
    for (const auto& c : o.checks) checks.push_back(c);
    total_seconds += o.total_seconds;
  }
  std::string to_json(bool with_timings, int indent = 2) const;
  std::string to_text(bool with_timings) const;
};

struct SuiteOptions {
  EnumOptions enumeration;
  bool use_cache = true;
};

// specialization vectors for a rank-24 cusp: the Weyl vector (regular for
// every root) and the first basis vector
std::vector<std::vector<long>> default_specialization(const CuspModel& model, int k);

// Criterion 1: atlas integrity (even, unimodular, root counts, Leech).
SuiteReport atlas_suite(const std::vector<std::string>& labels, const SuiteOptions& opt);

// Criterion 2: two-design identity and both C-expressions; C = h.
SuiteReport design_suite(const SuiteOptions& opt);

// Criterion 3: theta block = affine denominator via two code paths, all
// 23 cusps, to q-order (1 + h) + rel orders, specialized to <= 2 variables.
SuiteReport thm12_structural_suite(const std::vector<std::string>& labels, long rel,
                                   const SuiteOptions& opt);

// Criterion 4: full product tier at a cusp with small h: slices C..C+2 of
// product_direct at q_rel = 1, checked against the affine denominator and
// the closed slice formulas; direct vs hecke on the window.
SuiteReport thm12_full_suite(const std::string& label, const SuiteOptions& opt);

// Criterion 5: product-representation oracle on 4A1 (full multivariate)
// and the Leech cusp (specialized).
SuiteReport products_suite(const SuiteOptions& opt);

// Criterion 6: the two leading Leech-cusp slices.
SuiteReport leech_suite(const SuiteOptions& opt);

// Criterion 7: the singular-weight identity on 4A1.
SuiteReport phi2_suite(const SuiteOptions& opt);

// Criterion 8: property checks across constructed expansions.
SuiteReport properties_suite(const SuiteOptions& opt);

SuiteReport full_acceptance(const SuiteOptions& opt);

}  // namespace bpx
