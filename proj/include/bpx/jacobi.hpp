#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bpx/enumerate.hpp"
#include "bpx/series.hpp"

namespace bpx {

struct CharacterData {
  int eta_power = 0;                 // power of v_eta, mod 24
  bool heisenberg_nontrivial = false;
  int v_swap_parity = -1;            // exponent D of the V-swap sign; -1 = unset
};

// Weyl vector (A, B, C) of a weight-0 index-1 form, from its q^0 row.
struct WeylData {
  Rat A;
  DualVector B;
  std::vector<int32_t> b_key;  // doubled pairings of B, unspecialized
  Rat C;
  Rat C_alt;  // the divisor-sum expression; must agree with C
};

// Complete unspecialized rows with q-exponent <= 0 (the wall data).
struct Q0Term {
  long q24;
  DualVector ell;
  Rat f;
};

struct JacobiExpansion {
  int weight2 = 0;   // 2 * weight
  int index24 = 24;  // 24 * index
  int q_grid24 = 24; // exponent lattice of q: 24 integer, 12 half-integer
  LatticePtr lattice;
  MultiSeries series;  // s-support {0}
  CharacterData character;
  std::vector<Q0Term> low_rows;
};

JacobiExpansion jacobi_mul(const JacobiExpansion& a, const JacobiExpansion& b);

// series JSON plus the {weight2, index24, lattice digest, character} header
std::string jacobi_to_json(const JacobiExpansion& phi, int indent = 2);

// ---- theta series ------------------------------------------------------

// Odd Jacobi theta factor  theta(tau, (lhat, z))  as a series in the given
// context; pvec holds the pairings of lhat with the context coordinates.
// Sum side of the triple product.
MultiSeries theta_odd_series(const ContextPtr& ctx, long q_max24,
                             const std::vector<long>& pvec);
// Product side of the triple product (independent route).
MultiSeries theta_odd_product_series(const ContextPtr& ctx, long q_max24,
                                     const std::vector<long>& pvec);

// theta(tau,z) as a standalone expansion over A1 (weight 1/2, index 1/2).
JacobiExpansion theta_odd(long q_max24);

// Lattice theta series of an even unimodular lattice, weight rank/2,
// index 1; streamed enumeration, specialized on the fly when ctx is
// specialized.
JacobiExpansion theta_lattice(LatticePtr L, int q_max_natural, const ContextPtr& ctx,
                              const EnumOptions& opt = {}, bool use_cache = true);

// phi_{0,N} = Delta^{-1} theta_N for a cusp of the atlas (weight 0 index 1).
JacobiExpansion weak_phi0(const std::string& cusp, int q_max_natural,
                          const ContextPtr& ctx, const EnumOptions& opt = {},
                          bool use_cache = true);

// ---- operators and checks ---------------------------------------------

// Hecke operator V_m (coefficient form): index -> m * index,
// c'(n,l) = sum_{d | (n,l,m)} d^{k-1} f(n m / d^2, l / d).
JacobiExpansion hecke_vm(const JacobiExpansion& phi, int m);

// Substitution form: sum_{a d = m} a^{k-1} d^{-1} sum_{b mod d}
// phi((a tau + t b)/d, a z) realized on scaled exponents; the b-sum must
// annihilate off-grid powers exactly.
JacobiExpansion hecke_vm_substitution(const JacobiExpansion& phi, int m);

WeylData design_constants(const JacobiExpansion& phi,
                          const OrderingFunctional& order = {});

struct TwoDesignReport {
  bool matrix_identity = false;
  bool c_agreement = false;
  Rat C, C_alt;
  bool pass() const { return matrix_identity && c_agreement; }
};
TwoDesignReport check_two_design(const JacobiExpansion& phi,
                                 const OrderingFunctional& order = {});

// eta^{f(0,0)} prod_{l>0} (theta(tau,(l,z))/eta)^{f(0,l)}, in the given
// context, complete to rel_q24 above its leading exponent.
JacobiExpansion theta_block(const JacobiExpansion& phi, const ContextPtr& ctx,
                            long rel_q24, const OrderingFunctional& order = {});

// Weyl-Kac denominator of the affine algebra of R: same product taken
// directly over the positive roots, with the triple-product (product) side
// of each theta factor.  Independent of theta_block's code path.
JacobiExpansion affine_denominator(const RootSystemData& R, LatticePtr L,
                                   const ContextPtr& ctx, long rel_q24);

struct DecompositionReport {
  bool pass = true;
  std::vector<std::string> violations;
};
// groups coefficients by (discriminant class, hyperbolic norm) and checks
// constancy; realizes the theta-decomposition invariant
DecompositionReport theta_decomposition_check(const JacobiExpansion& phi);

// 24 * hyperbolic norm 2 n m - (l,l) of a term
Rat hyperbolic_norm24(const JacobiExpansion& phi, const ExponentKey& key);

enum class Species { Holomorphic, Cusp, Weak, WeaklyHolomorphic };
struct ValidationReport {
  bool pass = true;
  std::vector<std::string> violations;
};
ValidationReport validate_jacobi(const JacobiExpansion& phi, Species species);

}  // namespace bpx
