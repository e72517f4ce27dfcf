#include "doctest.h"

#include <algorithm>

#include "bpx/errors.hpp"
#include "bpx/lift.hpp"

using namespace bpx;

namespace {

ExponentKey lkey(long q24, long s24, std::vector<int32_t> ell) {
  ExponentKey k;
  k.q24 = q24;
  k.s24 = s24;
  k.ell = std::move(ell);
  return k;
}

}  // namespace

TEST_CASE("theta_4a1 leading terms and slot symmetry") {
  auto th = theta_4a1(24 * 3);
  CHECK(th.series.min_q24() == 12);
  CHECK(th.series.coefficient(lkey(12, 0, {1, 1, 1, 1})) == 1);
  CHECK(th.series.coefficient(lkey(12, 0, {-1, 1, 1, 1})) == -1);
  CHECK(th.series.coefficient(lkey(12, 0, {-1, -1, 1, 1})) == 1);
  // z_i <-> z_j symmetry
  for (const auto& [k, v] : th.series.terms()) {
    auto p = k;
    std::swap(p.ell[0], p.ell[2]);
    CHECK(th.series.coefficient(p) == v);
  }
  CHECK(validate_jacobi(th, Species::Holomorphic).pass);
}

TEST_CASE("phi0_4a1: the q^0 row matches the closed display") {
  auto phi = phi0_4a1(2);
  // r1 + r2 + r3 + r4 + 4 + r1^-1 + ... : f(0,0) = 4 and eight half-vectors
  CHECK(phi.series.coefficient(lkey(0, 0, {0, 0, 0, 0})) == 4);
  int count = 0;
  for (const auto& t : phi.low_rows) {
    if (t.ell.is_zero()) {
      CHECK(t.f == 4);
    } else {
      CHECK(t.f == 1);
      ++count;
    }
  }
  CHECK(count == 8);
  for (int i = 0; i < 4; ++i) {
    // r_i is the half-dual vector omega_i, whose doubled-pairing key is 2
    std::vector<int32_t> e(4, 0);
    e[i] = 2;
    CHECK(phi.series.coefficient(lkey(0, 0, e)) == 1);
    e[i] = -2;
    CHECK(phi.series.coefficient(lkey(0, 0, e)) == 1);
  }
  CHECK(validate_jacobi(phi, Species::Weak).pass);
  CHECK(theta_decomposition_check(phi).pass);
}

TEST_CASE("phi0_4a1 design constants and characters") {
  auto phi = phi0_4a1(1);
  auto w = design_constants(phi);
  CHECK(w.A == Rat(1, 2));
  CHECK(w.C == Rat(1, 2));
  CHECK(w.C_alt == Rat(1, 2));
  CHECK(w.b_key == std::vector<int32_t>{1, 1, 1, 1});
  CHECK(check_two_design(phi).pass());

  auto c = character_data(phi);
  CHECK(c.eta_power == 12);
  CHECK(c.v_swap_parity == 0);
  CHECK(c.heisenberg_nontrivial);

  DualVector omega1;
  omega1.num = {1, 0, 0, 0};
  omega1.den = 2;
  CHECK(divisor_multiplicity(phi, 0, omega1) == 1);
}

TEST_CASE("theta block of phi0_4a1 is theta_4a1") {
  auto phi = phi0_4a1(1);
  auto psi = theta_block(phi, phi.series.context(), 24 * 3);
  auto th = theta_4a1(12 + 24 * 3);
  CHECK(psi.weight2 == 4);
  CHECK(psi.index24 == 12);
  auto win = psi.series.policy();
  CHECK(psi.series == th.series.truncated(win));
}

TEST_CASE("products on 4A1: direct = hecke = closed slices") {
  auto phi = phi0_4a1(4);
  auto direct = product_direct(phi, 1, 3);
  auto hecke = product_hecke(phi, 1, 3);
  CHECK(direct.a24 == 12);
  CHECK(direct.c24 == 12);
  CHECK(direct.weight2 == 4);  // weight 2
  CHECK(direct.expansion == hecke.expansion);

  auto cor = corollary32_terms(phi, 1, 4);
  for (int j = 0; j < 4; ++j) {
    auto sl = direct.slice(j);
    auto want = cor[j].truncated(sl.policy());
    CHECK(sl == want);
  }
  for (const auto& [k, v] : direct.expansion.terms()) CHECK(is_integer(v));
}

TEST_CASE("phi2: fourier sum = hecke sum = borcherds product") {
  const long q24 = 24 * 3, s24 = 36;  // q <= 3, s <= 3/2
  auto fourier = phi2_fourier(q24, s24);
  auto hecke = phi2_hecke_sum(q24, s24);
  CHECK(null_cone_supported(fourier));
  CHECK(null_cone_supported(hecke));
  TruncationPolicy win{q24, s24};
  CHECK(fourier.expansion.truncated(win) == hecke.expansion.truncated(win));

  auto phi = phi0_4a1(3);
  auto B = product_direct(phi, 3, 1);
  auto prod = B.expansion.truncated(win);
  prod.set_policy(win);
  CHECK(fourier.expansion.truncated(win) == prod);

  // leading slice is theta_4a1 on both sides
  auto th = theta_4a1(q24);
  CHECK(fourier.expansion.fj_slice(12) == th.series.truncated(TruncationPolicy{q24, 0}));

  // sigma_1 coefficients along rays, Kronecker factors constant
  CHECK(fourier.expansion.coefficient(lkey(12, 12, {1, 1, 1, 1})) == 1);
  CHECK(fourier.expansion.coefficient(lkey(36, 36, {3, 3, 3, 3})) == 4);  // sigma_1(3)
  CHECK(fourier.expansion.coefficient(lkey(12, 12, {1, 1, 1, -1})) == -1);
  CHECK(fourier.expansion.coefficient(lkey(36, 36, {3, 3, 3, -3})) == -4);
}

TEST_CASE("phi2 product is q-s symmetric (D = 0)") {
  auto phi = phi0_4a1(4);
  auto B = product_direct(phi, 2, 2);
  CHECK(B.character.v_swap_parity == 0);
  auto rep = v_swap_check(B, 48);
  CHECK(rep.pass);
  CHECK(rep.compared > 0);
}
