#pragma once

#include <string>
#include <vector>

#include "bpx/jacobi.hpp"

namespace bpx {

struct BorcherdsProduct {
  LatticePtr lattice;
  WeylData weyl;
  long a24 = 0, c24 = 0;  // leading q- and s-exponents (24-scaled)
  int weight2 = 0;        // = f(0,0)
  CharacterData character;
  MultiSeries expansion;  // absolute exponents; q^A r^B s^C times the product

  // Fourier-Jacobi slice j (s-exponent C + j), re-based to s = 0
  MultiSeries slice(long j) const { return expansion.fj_slice(c24 + 24 * j); }
};

// Direct expansion of q^A r^B s^C prod (1 - q^n r^l s^m)^{f(nm,l)} over the
// window of q_rel orders above A and s_rel slices above C.
BorcherdsProduct product_direct(const JacobiExpansion& phi, long q_rel, long s_rel,
                                const OrderingFunctional& order = {});

// Hecke-exponential representation: theta_block(phi) * exp(-sum_m V_m(phi) s^m).
// Must agree with product_direct exactly on the common window.
BorcherdsProduct product_hecke(const JacobiExpansion& phi, long q_rel, long s_rel,
                               const OrderingFunctional& order = {});

// Leading Fourier-Jacobi slices from the closed formulas:
//   psi, -psi phi, psi (phi^2/2 - V_2 phi), -psi (phi^3/6 - phi V_2 phi + V_3 phi)
std::vector<MultiSeries> corollary32_terms(const JacobiExpansion& phi, long q_rel,
                                           int n_slices,
                                           const OrderingFunctional& order = {});

// multiplicity of the rational quadratic divisor attached to (n, l) with
// 2n - (l,l) < 0: the divisor sum over all rational rescalings staying in
// the dual lattice
long divisor_multiplicity(const JacobiExpansion& phi, long n, const DualVector& ell);

CharacterData character_data(const JacobiExpansion& phi,
                             const OrderingFunctional& order = {});

// recovers the source form from two consecutive FJ slices: -slice_{m+1}/slice_m
MultiSeries fj_criterion(const MultiSeries& slice_m, const MultiSeries& slice_m1);

struct VSwapReport {
  bool pass = true;
  int parity = 0;
  size_t compared = 0;
  std::string witness;
};
// checks coefficient(q^a, l, s^c) = (-1)^D coefficient(q^c, l, s^a) on the
// window a,c <= w24
VSwapReport v_swap_check(const BorcherdsProduct& B, long w24);

// f-table coverage (in theta-norm units) that product windows need; used
// to size enumerations and to report budget errors
long product_table_requirement(long q_rel, long s_rel);

}  // namespace bpx
