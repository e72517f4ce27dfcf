#pragma once

#include <vector>

#include "bpx/rational.hpp"

namespace bpx {

using IMat = std::vector<std::vector<Int>>;
using QMat = std::vector<std::vector<Rat>>;

IMat imat(int rows, int cols);

// Exact determinant by fraction-free (Bareiss) elimination.
Int bareiss_det(IMat a);

// Invariant factors d1 | d2 | ... of the cokernel Z^n / A Z^n for square
// nonsingular A; returned with the trivial 1-factors included.
std::vector<Int> smith_invariants(IMat a);

// Smith form with left transform: returns U with U*A*V = diag(invariants).
// Only U is needed (discriminant-class labelling).
struct SmithData {
  std::vector<Int> invariants;
  IMat left;  // U
};
SmithData smith_with_left(IMat a);

// Row Hermite normal form; returns the nonzero rows (a Z-basis of the row
// span).  Input rows may be linearly dependent.
IMat hnf_rows(IMat a);

// Exact inverse of a nonsingular rational matrix (Gauss-Jordan).
QMat qmat_inverse(QMat a);

// adjugate(A) = det(A) * A^{-1}, integral for integral A.
struct AdjDet {
  IMat adj;
  Int det;
};
AdjDet adjugate(const IMat& a);

// Exact LDL^T of a symmetric positive definite rational matrix.
// Throws ConfigError if any pivot is nonpositive.
struct Ldl {
  QMat lower;            // unit lower triangular
  std::vector<Rat> diag; // positive pivots
};
Ldl ldl_decompose(const QMat& g);

// Exact LLL reduction operating on a Gram matrix (delta = 3/4).
// Returns reduced Gram G' = U G U^T and the unimodular transform U
// (rows of U express the reduced basis in the original basis).
struct LllResult {
  IMat gram;
  IMat transform;
};
LllResult lll_gram(const IMat& gram);

}  // namespace bpx
