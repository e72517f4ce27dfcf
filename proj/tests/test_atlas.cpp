#include "doctest.h"

#include <numeric>

#include "bpx/enumerate.hpp"
#include "bpx/niemeier.hpp"

using namespace bpx;

TEST_CASE("golay code") {
  auto words = golay_codewords();
  CHECK(words.size() == 4096);
  int octads = 0;
  for (const auto& w : words) {
    int wt = std::accumulate(w.begin(), w.end(), 0);
    CHECK(wt % 4 == 0);
    if (wt != 0 && wt != 24) CHECK(wt >= 8);
    if (wt == 8) ++octads;
  }
  CHECK(octads == 759);
  // self-dual: all pairwise intersections even
  const auto& basis = golay_basis();
  for (const auto& a : basis)
    for (const auto& b : basis) {
      int dot = 0;
      for (int i = 0; i < 24; ++i) dot += a[i] & b[i];
      CHECK(dot % 2 == 0);
    }
}

TEST_CASE("niemeier lattices: spot checks") {
  {
    const auto& m = cusp_model("24A1");
    CHECK(m.lattice->det() == 1);
    CHECK(m.roots.all_roots.size() == 48);
    CHECK(m.roots.coxeter_number == 2);
  }
  {
    const auto& m = cusp_model("D24");
    CHECK(m.lattice->det() == 1);
    CHECK(m.roots.all_roots.size() == 1104);
    CHECK(m.roots.coxeter_number == 46);
  }
  {
    const auto& m = cusp_model("3E8");
    CHECK(m.lattice->det() == 1);
    CHECK(m.roots.all_roots.size() == 720);
    CHECK(m.roots.coxeter_number == 30);
  }
  {
    const auto& m = cusp_model("12A2");
    CHECK(m.roots.all_roots.size() == 72);
    CHECK(m.roots.coxeter_number == 3);
  }
}

TEST_CASE("whole atlas invariants") {
  for (const char* label : kCuspLabels) {
    const auto& m = cusp_model(label);
    INFO(label);
    CHECK(m.lattice->rank() == 24);
    CHECK(m.lattice->det() == 1);
    if (m.label == "Leech") {
      CHECK(m.roots.all_roots.empty());
      continue;
    }
    long h = m.roots.coxeter_number;
    CHECK(static_cast<long>(m.roots.all_roots.size()) == 24 * h);
    CHECK(m.roots.positive_roots.size() * 2 == m.roots.all_roots.size());
    for (const auto& c : m.roots.components) {
      CHECK(c.coxeter == h);
      CHECK(c.root_count == c.rank * c.coxeter);
    }
    // rho pairs integrally with the lattice (B in L^dual)
    CHECK_NOTHROW(m.roots.rho.pairing_key(*m.lattice));
  }
}

TEST_CASE("leech minimum and kissing number") {
  const auto& m = cusp_model("Leech");
  CHECK(short_vectors_list(*m.lattice, 2).empty());
  auto tally = short_vector_tally(*m.lattice, 4, {}, {});
  long n4 = 0;
  for (const auto& [k, c] : tally.counts)
    if (k.first == 4) n4 += c;
  CHECK(n4 == 196560);
}
