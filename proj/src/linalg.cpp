#include "bpx/linalg.hpp"

#include <algorithm>
#include <cstdlib>

#include "bpx/errors.hpp"

namespace bpx {

IMat imat(int rows, int cols) {
  return IMat(rows, std::vector<Int>(cols, 0));
}

Int bareiss_det(IMat a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) { p = i; break; }
      if (p < 0) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        a[i][j] = t / prev;  // exact by Bareiss
      }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

namespace {

// One round of elementary moves bringing the smallest nonzero entry to
// (t,t) and clearing its row and column.
void smith_step(IMat& a, IMat* left, int t) {
  const int n = static_cast<int>(a.size());
  auto row_op = [&](int i, int j, const Int& c) {
    // row_i -= c * row_j
    for (int k = 0; k < n; ++k) a[i][k] -= c * a[j][k];
    if (left)
      for (int k = 0; k < n; ++k) (*left)[i][k] -= c * (*left)[j][k];
  };
  auto col_op = [&](int i, int j, const Int& c) {
    for (int k = 0; k < n; ++k) a[k][i] -= c * a[k][j];
  };
  for (;;) {
    int pi = -1, pj = -1;
    for (int i = t; i < n; ++i)
      for (int j = t; j < n; ++j)
        if (a[i][j] != 0 &&
            (pi < 0 || abs(a[i][j]) < abs(a[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) return;
    if (pi != t) {
      std::swap(a[pi], a[t]);
      if (left) std::swap((*left)[pi], (*left)[t]);
    }
    if (pj != t)
      for (int k = 0; k < n; ++k) std::swap(a[k][pj], a[k][t]);
    bool dirty = false;
    for (int i = t + 1; i < n; ++i)
      if (a[i][t] != 0) {
        Int q = a[i][t] / a[t][t];
        row_op(i, t, q);
        if (a[i][t] != 0) dirty = true;
      }
    for (int j = t + 1; j < n; ++j)
      if (a[t][j] != 0) {
        Int q = a[t][j] / a[t][t];
        col_op(j, t, q);
        if (a[t][j] != 0) dirty = true;
      }
    if (dirty) continue;
    // divisibility: pivot must divide the remaining block
    for (int i = t + 1; i < n && !dirty; ++i)
      for (int j = t + 1; j < n && !dirty; ++j)
        if (a[i][j] % a[t][t] != 0) {
          row_op(t, i, Int(-1));  // fold row i into row t, retry
          dirty = true;
        }
    if (!dirty) return;
  }
}

}  // namespace

SmithData smith_with_left(IMat a) {
  const int n = static_cast<int>(a.size());
  IMat u = imat(n, n);
  for (int i = 0; i < n; ++i) u[i][i] = 1;
  for (int t = 0; t < n; ++t) smith_step(a, &u, t);
  SmithData out;
  out.left = std::move(u);
  for (int i = 0; i < n; ++i) {
    Int d = abs(a[i][i]);
    out.invariants.push_back(d);
  }
  return out;
}

std::vector<Int> smith_invariants(IMat a) {
  return smith_with_left(std::move(a)).invariants;
}

IMat hnf_rows(IMat a) {
  const int rows = static_cast<int>(a.size());
  if (rows == 0) return a;
  const int cols = static_cast<int>(a[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    // gcd the column below r into one pivot row
    for (;;) {
      int p = -1;
      for (int i = r; i < rows; ++i)
        if (a[i][c] != 0 && (p < 0 || abs(a[i][c]) < abs(a[p][c]))) p = i;
      if (p < 0) break;
      std::swap(a[r], a[p]);
      bool done = true;
      for (int i = r + 1; i < rows; ++i)
        if (a[i][c] != 0) {
          Int q = a[i][c] / a[r][c];
          for (int k = 0; k < cols; ++k) a[i][k] -= q * a[r][k];
          if (a[i][c] != 0) done = false;
        }
      if (done) break;
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0)
      for (int k = 0; k < cols; ++k) a[r][k] = -a[r][k];
    // reduce rows above
    for (int i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
      if (q != 0)
        for (int k = 0; k < cols; ++k) a[i][k] -= q * a[r][k];
    }
    ++r;
  }
  a.resize(r);
  return a;
}

QMat qmat_inverse(QMat a) {
  const int n = static_cast<int>(a.size());
  QMat inv(n, std::vector<Rat>(n, 0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (a[i][c] != 0) { p = i; break; }
    if (p < 0) throw ConfigError("qmat_inverse: singular matrix");
    std::swap(a[c], a[p]);
    std::swap(inv[c], inv[p]);
    Rat piv = a[c][c];
    for (int k = 0; k < n; ++k) {
      a[c][k] /= piv;
      inv[c][k] /= piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (int k = 0; k < n; ++k) {
        a[i][k] -= f * a[c][k];
        inv[i][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

AdjDet adjugate(const IMat& a) {
  const int n = static_cast<int>(a.size());
  AdjDet out;
  out.det = bareiss_det(a);
  if (out.det == 0) throw ConfigError("adjugate: singular matrix");
  QMat q(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q[i][j] = Rat(a[i][j]);
  QMat inv = qmat_inverse(std::move(q));
  out.adj = imat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat v = inv[i][j] * Rat(out.det);
      if (!is_integer(v)) throw ConfigError("adjugate: non-integral entry");
      out.adj[i][j] = v.get_num();
    }
  return out;
}

Ldl ldl_decompose(const QMat& g) {
  const int n = static_cast<int>(g.size());
  Ldl out;
  out.lower = QMat(n, std::vector<Rat>(n, 0));
  out.diag.assign(n, Rat(0));
  for (int i = 0; i < n; ++i) out.lower[i][i] = 1;
  for (int j = 0; j < n; ++j) {
    Rat d = g[j][j];
    for (int k = 0; k < j; ++k) d -= out.lower[j][k] * out.lower[j][k] * out.diag[k];
    if (d <= 0) throw ConfigError("ldl: matrix not positive definite");
    out.diag[j] = d;
    for (int i = j + 1; i < n; ++i) {
      Rat v = g[i][j];
      for (int k = 0; k < j; ++k) v -= out.lower[i][k] * out.lower[j][k] * out.diag[k];
      out.lower[i][j] = v / d;
    }
  }
  return out;
}

namespace {

struct Gso {
  QMat mu;
  std::vector<Rat> b2;  // squared lengths of GS vectors
};

Gso gso_from_gram(const IMat& g) {
  const int n = static_cast<int>(g.size());
  QMat q(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q[i][j] = Rat(g[i][j]);
  Ldl l = ldl_decompose(q);
  return Gso{std::move(l.lower), std::move(l.diag)};
}

}  // namespace

LllResult lll_gram(const IMat& gram) {
  const int n = static_cast<int>(gram.size());
  IMat g = gram;
  IMat u = imat(n, n);
  for (int i = 0; i < n; ++i) u[i][i] = 1;

  auto apply_translate = [&](int i, int j, const Int& q) {
    // b_i -= q b_j
    for (int k = 0; k < n; ++k) u[i][k] -= q * u[j][k];
    for (int k = 0; k < n; ++k) g[i][k] -= q * g[j][k];
    for (int k = 0; k < n; ++k) g[k][i] -= q * g[k][j];
  };
  auto apply_swap = [&](int i) {
    std::swap(u[i], u[i - 1]);
    std::swap(g[i], g[i - 1]);
    for (int k = 0; k < n; ++k) std::swap(g[k][i], g[k][i - 1]);
  };

  Gso s = gso_from_gram(g);
  int k = 1;
  const Rat delta(3, 4);
  while (k < n) {
    for (int j = k - 1; j >= 0; --j) {
      Rat mu = s.mu[k][j];
      if (mu > Rat(1, 2) || mu < Rat(-1, 2)) {
        Rat r = mu + Rat(1, 2);
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
        if (q != 0) {
          apply_translate(k, j, q);
          for (int jj = 0; jj < j; ++jj) s.mu[k][jj] -= Rat(q) * s.mu[j][jj];
          s.mu[k][j] -= Rat(q);
        }
      }
    }
    Rat lhs = s.b2[k];
    Rat rhs = (delta - s.mu[k][k - 1] * s.mu[k][k - 1]) * s.b2[k - 1];
    if (lhs < rhs) {
      apply_swap(k);
      s = gso_from_gram(g);
      k = std::max(1, k - 1);
    } else {
      ++k;
    }
  }
  return LllResult{std::move(g), std::move(u)};
}

}  // namespace bpx
