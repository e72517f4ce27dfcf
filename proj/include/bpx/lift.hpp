#pragma once

#include "bpx/borcherds.hpp"

namespace bpx {

// The 4A1 case study: the product of four odd theta factors, the weak
// form it generates, and the singular-weight lift given by its explicit
// Fourier expansion over the null cone.

LatticePtr lattice_4a1();

// theta(tau,z1)...theta(tau,z4): weight 2, index 1/2, full multivariate.
JacobiExpansion theta_4a1(long q_max24);

// phi_{0,4A1} = -(V_3 theta_4a1) / theta_4a1, weight 0 index 1.
JacobiExpansion phi0_4a1(int q_max_natural);

// Expansion on the half-integer grid, supported on 2nm = (l,l).
struct LiftExpansion {
  MultiSeries expansion;
  int weight2 = 4;
};

// Direct Fourier sum over the null cone (odd n, m; sigma_1 of the content
// times the four Kronecker factors).
LiftExpansion phi2_fourier(long q_max24, long s_max24);

// Hecke-sum route: sum over odd m of V_m(theta_4a1) at s^{m/2}.
LiftExpansion phi2_hecke_sum(long q_max24, long s_max24);

// every nonzero coefficient must sit on the null cone 2nm = (l,l)
bool null_cone_supported(const LiftExpansion& lift);

}  // namespace bpx
