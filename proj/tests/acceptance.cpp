// Acceptance gate: runs every criterion of the verification plan and
// prints one pass/fail line per criterion, plus the detailed check list.
// Exit code 0 iff everything passes.  All comparisons are exact.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "bpx/cache.hpp"
#include "bpx/suites.hpp"

using namespace bpx;

namespace {

struct Criterion {
  int number;
  const char* title;
  SuiteReport report;
};

void print_criterion(const Criterion& c) {
  bool ok = c.report.pass();
  std::printf("[%s] criterion %d: %s (%zu checks, %.1fs)\n", ok ? "PASS" : "FAIL",
              c.number, c.title, c.report.checks.size(), c.report.total_seconds);
  for (const auto& chk : c.report.checks)
    if (!chk.ok())
      std::printf("       FAILED %s %s: %s\n", chk.check.c_str(), chk.cusp.c_str(),
                  chk.witness.c_str());
}

}  // namespace

int main() {
  SuiteOptions opt;
  opt.enumeration.workers = 2;
  opt.use_cache = !cache_directory().empty();

  std::vector<std::string> all(kCuspLabels.begin(), kCuspLabels.end());
  std::vector<Criterion> criteria;

  criteria.push_back({1, "atlas integrity (24 lattices, root counts, Leech minimum)",
                      atlas_suite(all, opt)});
  criteria.push_back({2, "two-design identity with both C-expressions, C = h",
                      design_suite(opt)});
  criteria.push_back({3, "theta block = affine denominator, all 23 cusps, two routes",
                      thm12_structural_suite(all, 2, opt)});
  {
    SuiteReport tier4 = thm12_full_suite("24A1", opt);
    tier4.merge(thm12_full_suite("12A2", opt));
    criteria.push_back({4, "full product tier at h = 2 and h = 3", std::move(tier4)});
  }
  criteria.push_back({5, "product representation oracle (4A1 and Leech cusps)",
                      products_suite(opt)});
  criteria.push_back({6, "Leech cusp slices: Delta and the lattice theta series",
                      leech_suite(opt)});
  criteria.push_back({7, "singular-weight identity on 4A1", phi2_suite(opt)});
  criteria.push_back({8, "property suites (symmetry, Hecke forms, V-swap, walls)",
                      properties_suite(opt)});

  bool all_ok = true;
  for (const auto& c : criteria) {
    print_criterion(c);
    all_ok = all_ok && c.report.pass();
  }
  std::printf("%s\n", all_ok ? "acceptance: PASS" : "acceptance: FAIL");
  return all_ok ? 0 : 1;
}
