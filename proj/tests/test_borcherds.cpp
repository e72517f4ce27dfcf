#include "doctest.h"

#include "bpx/borcherds.hpp"
#include "bpx/errors.hpp"
#include "bpx/niemeier.hpp"

using namespace bpx;

namespace {

// one specialization variable for the Leech cusp: the first basis vector
ContextPtr leech_ctx() {
  const auto& m = cusp_model("Leech");
  std::vector<long> u(24, 0);
  u[0] = 1;
  return specialized_context(m.lattice, {u});
}

}  // namespace

TEST_CASE("leech cusp: slice 0 is Delta, slice 1 is -theta") {
  const auto& m = cusp_model("Leech");
  auto ctx = leech_ctx();
  auto phi = weak_phi0("Leech", 1, ctx, {}, false);
  auto B = product_direct(phi, 1, 1);

  CHECK(B.a24 == 24);
  CHECK(B.c24 == 0);
  CHECK(B.weight2 == 24);  // weight 12

  auto slice0 = B.slice(0);
  auto delta = delta_series(48).specialize(ctx);
  CHECK(slice0 == delta.truncated(slice0.policy()));
  ExponentKey k;
  k.ell = {0};
  k.q24 = 24;
  CHECK(slice0.coefficient(k) == 1);   // tau(1)
  k.q24 = 48;
  CHECK(slice0.coefficient(k) == -24); // tau(2)

  auto theta = theta_lattice(m.lattice, 2, ctx, {}, false);
  auto slice1 = B.slice(1);
  CHECK(slice1 == (-theta.series).truncated(slice1.policy()));
  // norm-4 tally shows up at q^2 of slice 1
  Rat total = 0;
  for (const auto& [key, v] : slice1.terms())
    if (key.q24 == 48) total += v;
  CHECK(total == -196560);
}

TEST_CASE("leech cusp: direct, hecke and closed-form slices agree") {
  auto ctx = leech_ctx();
  auto phi = weak_phi0("Leech", 1, ctx, {}, false);
  auto direct = product_direct(phi, 1, 1);
  auto hecke = product_hecke(phi, 1, 1);
  CHECK(direct.a24 == hecke.a24);
  CHECK(direct.c24 == hecke.c24);
  CHECK(direct.expansion == hecke.expansion);

  auto cor = corollary32_terms(phi, 1, 2);
  CHECK(direct.slice(0) == cor[0]);
  CHECK(direct.slice(1) == cor[1]);

  // integrality of the expansion
  for (const auto& [k, v] : direct.expansion.terms()) CHECK(is_integer(v));
}

TEST_CASE("v-swap antisymmetry at the leech cusp (D = 1)") {
  auto ctx = leech_ctx();
  auto phi = weak_phi0("Leech", 1, ctx, {}, false);
  auto B = product_direct(phi, 1, 1);
  CHECK(B.character.v_swap_parity == 1);
  CHECK(B.character.eta_power == 0);  // 24A = 24
  auto rep = v_swap_check(B, 24);
  CHECK(rep.pass);
  CHECK(rep.compared > 0);
  // antisymmetry on the diagonal: those coefficients vanish
  ExponentKey diag;
  diag.ell = {0};
  diag.q24 = 24;
  diag.s24 = 24;
  CHECK(B.expansion.coefficient(diag) == 0);
}

TEST_CASE("fj criterion recovers the source form") {
  auto ctx = leech_ctx();
  auto phi = weak_phi0("Leech", 1, ctx, {}, false);
  auto B = product_direct(phi, 1, 1);
  auto back = fj_criterion(B.slice(0), B.slice(1));
  auto win = back.policy();
  CHECK(back == phi.series.truncated(win));
}

TEST_CASE("divisor multiplicities on a niemeier cusp") {
  const auto& m = cusp_model("24A1");
  auto phi = weak_phi0("24A1", 0, lattice_context(m.lattice), {}, false);
  const DualVector& root = m.roots.positive_roots.front();
  // primitive norm -2 vector: order one
  CHECK(divisor_multiplicity(phi, 0, root) == 1);
  // doubled vector of norm -8: only the halving step contributes
  CHECK(divisor_multiplicity(phi, 0, root.scaled(Rat(2))) == 1);
  CHECK_THROWS_AS(divisor_multiplicity(phi, 3, root), ConfigError);
}

TEST_CASE("character data across cusps") {
  for (const char* label : {"24A1", "12A2"}) {
    const auto& m = cusp_model(label);
    auto phi = weak_phi0(label, 0, lattice_context(m.lattice), {}, false);
    auto c = character_data(phi);
    CHECK(c.v_swap_parity == 1);       // single q^{-1} wall row
    CHECK(c.eta_power == 0);           // 24A = 24(1+h)
    CHECK_FALSE(c.heisenberg_nontrivial);
  }
}

TEST_CASE("product budget errors carry the missing bound") {
  auto ctx = leech_ctx();
  auto phi = weak_phi0("Leech", 0, ctx, {}, false);
  try {
    product_direct(phi, 1, 2);
    CHECK(false);
  } catch (const BudgetError& e) {
    CHECK(e.needed_norm == 6);  // needs f through n = 2, i.e. vectors to norm 6
  }
}
