#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bpx/linalg.hpp"
#include "bpx/rational.hpp"

namespace bpx {

// Even integral positive definite lattice, stored by its Gram matrix.
// Construction validates symmetry, even diagonal and positive definiteness.
class Lattice {
 public:
  Lattice(int rank, std::vector<long> gram);

  int rank() const { return rank_; }
  long g(int i, int j) const { return gram_[i * rank_ + j]; }
  const std::vector<long>& gram() const { return gram_; }

  const Int& det() const { return det_; }
  const IMat& adj() const { return adj_; }  // adjugate: det * G^{-1}
  const std::string& digest() const { return digest_; }

  // Invariant factors > 1 of D(L) = L^dual / L, their exponent, and
  // the full Smith left transform (for class labelling).
  const std::vector<long>& invariant_factors() const { return inv_factors_; }
  long discriminant_exponent() const { return exponent_; }

  // pairing vector of a lattice element given by integer coordinates:
  // p_i = (x, b_i)
  std::vector<long> pairing_row(const std::vector<long>& coords) const;

  // norm (x,x) of an integer-coordinate vector
  long norm_of(const std::vector<long>& coords) const;

  // 24*(l,l) for a dual vector given by its doubled pairing key k = 2*(l,b_i).
  // Exact rational; returned as Rat.
  Rat norm24_of_key(const std::vector<int32_t>& key) const;

  // discriminant class of a dual vector given by its doubled pairing key;
  // canonical small string, "0" for the trivial class.
  std::string class_of_key(const std::vector<int32_t>& key) const;

 private:
  int rank_;
  std::vector<long> gram_;
  Int det_;
  IMat adj_;
  std::vector<long> inv_factors_;
  long exponent_ = 1;
  IMat smith_left_;
  std::vector<Int> smith_diag_;
  std::string digest_;
};

using LatticePtr = std::shared_ptr<const Lattice>;

// Rational vector in the dual lattice, coordinates in the basis of L.
struct DualVector {
  std::vector<long> num;
  long den = 1;

  void normalize();
  int dim() const { return static_cast<int>(num.size()); }
  Rat coord(int i) const { return Rat(num[i], den); }
  bool is_zero() const;
  DualVector operator-() const;
  DualVector operator+(const DualVector& o) const;
  DualVector scaled(const Rat& c) const;
  bool operator==(const DualVector& o) const { return num == o.num && den == o.den; }
  bool operator<(const DualVector& o) const;

  // doubled pairing key 2*(l, b_i); throws if not integral
  std::vector<int32_t> pairing_key(const Lattice& L) const;
  Rat pair(const Lattice& L, const DualVector& o) const;
  Rat norm(const Lattice& L) const { return pair(L, *this); }
};

DualVector dual_from_key(const Lattice& L, const std::vector<int32_t>& key);

// Declares l > 0 by the first nonzero pairing in a fixed coordinate
// scheme.  Default scheme: the doubled-pairing coordinates themselves,
// lexicographically.  Optional weight vectors are applied first.
struct OrderingFunctional {
  // each row is an integer functional on pairing keys (dot product)
  std::vector<std::vector<long>> weight_rows;

  // +1 / -1; throws ConfigError on an undecided (all-zero) evaluation
  int sign_of_key(const std::vector<int32_t>& key) const;
  int sign(const Lattice& L, const DualVector& v) const {
    return sign_of_key(v.pairing_key(L));
  }
};

struct RootComponent {
  char family;  // 'A', 'D', 'E'
  int rank;
  int coxeter;     // h of this component
  int root_count;  // rank * coxeter, verified by enumeration
};

struct RootSystemData {
  std::vector<RootComponent> components;
  std::vector<DualVector> all_roots;       // coordinates in the host lattice basis
  std::vector<DualVector> positive_roots;  // per the default ordering
  int coxeter_number = 0;                  // common h, 0 for empty R
  DualVector rho;                          // half sum of positive roots
};

// --- operations ---------------------------------------------------------

// Standard ADE Gram matrices.
LatticePtr root_lattice(char family, int rank);

LatticePtr direct_sum(const std::vector<LatticePtr>& parts);

struct DiscriminantGroup {
  std::vector<long> invariant_factors;  // > 1 only
  long exponent;
  Int determinant;
};
DiscriminantGroup discriminant_group(const Lattice& L);

// s(L): positive generator of the ideal of all pairings;
// n(L): positive generator of the ideal of all norms.
std::pair<long, long> ideal_generators(const Lattice& L);

int coxeter_number(const RootSystemData& R);

// The 24 cusp labels: 23 Niemeier root systems plus "Leech".
extern const std::array<const char*, 24> kCuspLabels;
bool is_cusp_label(const std::string& label);

}  // namespace bpx
