#include "bpx/lift.hpp"

#include <algorithm>

#include "bpx/errors.hpp"

namespace bpx {

LatticePtr lattice_4a1() {
  static LatticePtr L = [] {
    auto a1 = root_lattice('A', 1);
    return direct_sum({a1, a1, a1, a1});
  }();
  return L;
}

JacobiExpansion theta_4a1(long q_max24) {
  LatticePtr L = lattice_4a1();
  auto ctx = lattice_context(L);
  std::vector<MultiSeries> factors;
  for (int i = 0; i < 4; ++i) {
    std::vector<long> pv(4, 0);
    pv[i] = 1;  // pairings of omega_i with the context coordinates
    factors.push_back(theta_odd_series(ctx, q_max24 - 9, pv));
  }
  JacobiExpansion j;
  j.weight2 = 4;
  j.index24 = 12;
  j.q_grid24 = 12;
  j.lattice = L;
  j.series = assemble_product(factors, q_max24 - 12, 0);
  j.character.eta_power = 12;
  j.character.heisenberg_nontrivial = true;
  return j;
}

JacobiExpansion phi0_4a1(int q_max_natural) {
  const long target = 24L * q_max_natural;
  JacobiExpansion theta = theta_4a1(3 * (target + 12));
  JacobiExpansion v3 = hecke_vm(theta, 3);
  MultiSeries quot = exact_div(v3.series, theta.series);
  JacobiExpansion j;
  j.weight2 = 0;
  j.index24 = 24;
  j.q_grid24 = 24;
  j.lattice = theta.lattice;
  j.series = -quot;
  if (j.series.policy().q_max24 < target)
    throw BudgetError("phi0_4a1: division window too small");
  j.series = j.series.truncated(TruncationPolicy{target, 0});
  j.series.set_policy(TruncationPolicy{target, 0});
  if (j.series.min_q24() < 0) throw ConfigError("phi0_4a1: not a weak form");
  for (const auto& [k, v] : j.series.terms())
    if (k.q24 == 0) j.low_rows.push_back(Q0Term{0, dual_from_key(*j.lattice, k.ell), v});
  j.character.eta_power = 12;
  j.character.heisenberg_nontrivial = true;
  j.character.v_swap_parity = 0;
  return j;
}

LiftExpansion phi2_fourier(long q_max24, long s_max24) {
  LatticePtr L = lattice_4a1();
  auto ctx = lattice_context(L);
  LiftExpansion lift;
  lift.expansion = MultiSeries::zero(ctx, TruncationPolicy{q_max24, s_max24});
  for (long n = 1; 12 * n <= q_max24; n += 2)
    for (long m = 1; 12 * m <= s_max24; m += 2) {
      // l = (k1..k4)/2 with sum k_i^2 = 4 n m, all k_i odd
      const long target = 4 * n * m;
      long bound = 1;
      while ((bound + 2) * (bound + 2) <= target) bound += 2;
      for (long k1 = -bound; k1 <= bound; k1 += 2)
        for (long k2 = -bound; k2 <= bound; k2 += 2)
          for (long k3 = -bound; k3 <= bound; k3 += 2) {
            long rest = target - k1 * k1 - k2 * k2 - k3 * k3;
            if (rest <= 0) continue;
            long k4 = 1;
            while (k4 * k4 < rest) k4 += 2;
            if (k4 * k4 != rest) continue;
            for (long s4 : {k4, -k4}) {
              long g = gcd_ll(gcd_ll(n, m), gcd_ll(gcd_ll(k1, k2), gcd_ll(k3, s4)));
              long coeff = sigma_divisors(g, 1);
              int kron = kronecker_m4(k1) * kronecker_m4(k2) * kronecker_m4(k3) *
                         kronecker_m4(s4);
              ExponentKey key;
              key.q24 = 12 * n;
              key.s24 = 12 * m;
              key.ell = {static_cast<int32_t>(k1), static_cast<int32_t>(k2),
                         static_cast<int32_t>(k3), static_cast<int32_t>(s4)};
              lift.expansion.add_term(key, Rat(coeff * kron));
            }
          }
    }
  return lift;
}

LiftExpansion phi2_hecke_sum(long q_max24, long s_max24) {
  const long m_max = s_max24 / 12;
  JacobiExpansion theta = theta_4a1(std::max(q_max24 * m_max, 12L));
  LiftExpansion lift;
  lift.expansion =
      MultiSeries::zero(theta.series.context(), TruncationPolicy{q_max24, s_max24});
  for (long m = 1; m <= m_max; m += 2) {
    JacobiExpansion vm = hecke_vm(theta, static_cast<int>(m));
    for (const auto& [k, v] : vm.series.terms()) {
      ExponentKey e = k;
      e.s24 = 12 * m;
      lift.expansion.add_term(e, v);
    }
  }
  return lift;
}

bool null_cone_supported(const LiftExpansion& lift) {
  for (const auto& [k, v] : lift.expansion.terms()) {
    // 2 n m = (l,l): with n = q24/12, m = s24/12 and (l,l) = sum k_i^2 / 2
    long lhs = 2 * (k.q24 / 12) * (k.s24 / 12);
    long rhs = 0;
    for (int32_t e : k.ell) rhs += static_cast<long>(e) * e;
    if (2 * lhs != rhs) return false;
  }
  return true;
}

}  // namespace bpx
