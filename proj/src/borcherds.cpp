#include "bpx/borcherds.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "bpx/errors.hpp"

namespace bpx {

namespace {

struct Factor {
  long n;  // natural q-exponent of the factor monomial
  long m;  // natural s-exponent
  std::vector<int32_t> ell;
  long f;  // integer exponent f(n m, l)
};

long as_integer(const Rat& x, const char* what) {
  if (!is_integer(x)) throw ConfigError(std::string(what) + ": not an integer");
  return x.get_num().get_si();
}

std::vector<int32_t> key_in_context(const Lattice& L, const ContextPtr& ctx,
                                    const std::vector<int32_t>& dual_key) {
  if (ctx->rkind == SeriesContext::RKind::LatticeDual) return dual_key;
  std::vector<int32_t> out(ctx->rdim);
  for (int j = 0; j < ctx->rdim; ++j) {
    long dot = 0;
    for (int i = 0; i < L.rank(); ++i)
      dot += static_cast<long>(dual_key[i]) * ctx->spec_vectors[j][i];
    out[j] = static_cast<int32_t>(dot);
  }
  return out;
}

Rat binom(long f, long j) {
  Rat r = 1;
  for (long i = 0; i < j; ++i) r *= Rat(f - i, i + 1);
  return r;
}

// (1 - q^n r^l s^m)^f within the relative window.  A power at s-exponent
// sigma may sit up to (s_rel24 - sigma) above the final q-window, since
// that is the most the q^{-1}s factors can pull it back down.
MultiSeries factor_power(const ContextPtr& ctx, const Factor& fac, long q_rel24,
                         long s_rel24) {
  TruncationPolicy pol{q_rel24 + s_rel24, s_rel24};
  MultiSeries out(ctx, pol);
  ExponentKey zero;
  zero.ell.assign(ctx->rdim, 0);
  out.add_term(zero, 1);
  long jmax;
  if (fac.m >= 1) {
    jmax = s_rel24 / (24 * fac.m);
  } else if (fac.n >= 1) {
    jmax = (q_rel24 + s_rel24) / (24 * fac.n);
  } else {
    // n = m = 0, l < 0: only nonnegative exponents keep the r-support finite
    if (fac.f < 0)
      throw ConfigError("product: negative exponent on a pure r-factor");
    jmax = fac.f;
  }
  for (long j = 1; j <= jmax; ++j) {
    ExponentKey k;
    k.q24 = 24 * fac.n * j;
    k.s24 = 24 * fac.m * j;
    if (k.q24 > q_rel24 + (s_rel24 - k.s24)) continue;
    k.ell.resize(ctx->rdim);
    for (size_t i = 0; i < fac.ell.size(); ++i)
      k.ell[i] = static_cast<int32_t>(fac.ell[i] * j);
    Rat c = binom(fac.f, j);
    if ((j % 2) != 0) c = -c;
    out.add_term(k, c);
  }
  return out;
}

}  // namespace

long product_table_requirement(long q_rel, long s_rel) {
  long best = 0;
  for (long m = 1; m <= s_rel; ++m) best = std::max(best, m * (q_rel + s_rel - m));
  return best;
}

BorcherdsProduct product_direct(const JacobiExpansion& phi, long q_rel, long s_rel,
                                const OrderingFunctional& order) {
  if (phi.weight2 != 0 || phi.index24 != 24 || phi.q_grid24 != 24)
    throw ConfigError("product_direct: need a weight-0 index-1 form");
  const Lattice& L = *phi.lattice;
  const ContextPtr& ctx = phi.series.context();
  WeylData w = design_constants(phi, order);
  const long a24 = as_integer(w.A * 24, "24A");
  const long c24 = as_integer(w.C * 24, "24C");

  // Factor-set finiteness.  Working relative to the Weyl shift, a retained
  // term has q_rel <= q_rel24 and s_rel <= s_rel24.  The j-th power of
  // factor (n,l,m) moves (q,s) by 24 j (n, m).  Negative q only comes from
  // factors with n < 0; the support bound 2nm - (l,l) >= -2 forces
  // nm = -1 on those, so their powers are capped by the s-budget, and the
  // most the rest of a product can subtract from q is s_rel - j m.  Hence
  // a factor with m >= 1, n >= 1 touches the window iff
  // n <= q_rel + s_rel - m, and the f-table must cover
  // nm <= max_m m (q_rel + s_rel - m); m = 0 factors need n <= q_rel + s_rel.
  const long needed = product_table_requirement(q_rel, s_rel);
  if (phi.series.policy().q_max24 < 24 * needed)
    throw BudgetError("product_direct: source truncation too small",
                      2 * (needed + 1),
                      "need f(n,l) through n = " + std::to_string(needed));

  std::vector<Factor> factors;
  for (const auto& t : phi.low_rows) {
    long f = as_integer(t.f, "f(0,l)");
    if (t.q24 == 0) {
      auto key = key_in_context(L, ctx, t.ell.pairing_key(L));
      if (t.ell.is_zero()) {
        for (long n = 1; n <= q_rel + s_rel; ++n) factors.push_back({n, 0, key, f});
        for (long m = 1; m <= s_rel; ++m) factors.push_back({0, m, key, f});
      } else {
        for (long n = 1; n <= q_rel + s_rel; ++n) factors.push_back({n, 0, key, f});
        for (long m = 1; m <= s_rel; ++m) factors.push_back({0, m, key, f});
        if (order.sign(L, t.ell) < 0) factors.push_back({0, 0, key, f});
      }
    } else {
      long N = t.q24 / 24;
      auto key = key_in_context(L, ctx, t.ell.pairing_key(L));
      for (long m = 1; m <= s_rel; ++m) {
        if ((-N) % m) continue;
        factors.push_back({N / m, m, key, f});
      }
    }
  }
  for (const auto& [k, v] : phi.series.terms()) {
    if (k.q24 <= 0) continue;  // covered by the wall rows
    if (k.q24 % 24) throw ConfigError("product_direct: source off the integer grid");
    long N = k.q24 / 24;
    long f = as_integer(v, "f(n,l)");
    for (long m = 1; m <= s_rel; ++m) {
      if (N % m) continue;
      long n = N / m;
      if (n > q_rel + s_rel - m) continue;
      std::vector<int32_t> key(k.ell.begin(), k.ell.end());
      factors.push_back({n, m, key, f});
    }
  }
  // negative-n factors first: afterwards q never decreases, so truncation
  // at the window is exact
  std::stable_sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) {
    return std::make_tuple(a.n >= 0, a.m, a.n, a.ell) <
           std::make_tuple(b.n >= 0, b.m, b.n, b.ell);
  });

  TruncationPolicy window{24 * q_rel, 24 * s_rel};
  MultiSeries acc = MultiSeries::one(ctx, window);
  for (const auto& fac : factors) {
    acc = MultiSeries::mul_window(acc, factor_power(ctx, fac, window.q_max24,
                                                    window.s_max24), window);
    acc.set_policy(window);
  }

  BorcherdsProduct out;
  out.lattice = phi.lattice;
  out.weyl = w;
  out.a24 = a24;
  out.c24 = c24;
  for (const auto& t : phi.low_rows)
    if (t.q24 == 0 && t.ell.is_zero()) out.weight2 = as_integer(t.f, "f(0,0)");
  out.character = character_data(phi, order);
  out.expansion = acc.shifted(a24, c24, key_in_context(L, ctx, w.b_key));
  return out;
}

BorcherdsProduct product_hecke(const JacobiExpansion& phi, long q_rel, long s_rel,
                               const OrderingFunctional& order) {
  if (phi.weight2 != 0 || phi.index24 != 24 || phi.q_grid24 != 24)
    throw ConfigError("product_hecke: need a weight-0 index-1 form");
  const ContextPtr& ctx = phi.series.context();
  const long needed = product_table_requirement(q_rel, s_rel);
  if (phi.series.policy().q_max24 < 24 * needed)
    throw BudgetError("product_hecke: source truncation too small", 2 * (needed + 1),
                      "need f(n,l) through n = " + std::to_string(needed));

  JacobiExpansion psi = theta_block(phi, ctx, 24 * (q_rel + s_rel), order);
  const long a24 = psi.series.min_q24();

  // every V_m(phi) s^m term has q24 >= -s24 (f-support has nm >= -1), and
  // exp/mul preserve that bound, so the uniform cut below loses nothing
  // that could re-enter the final window
  TruncationPolicy wide{24 * (q_rel + s_rel), 24 * s_rel};
  MultiSeries ex(ctx, wide);
  for (long m = 1; m <= s_rel; ++m) {
    JacobiExpansion vm = hecke_vm(phi, static_cast<int>(m));
    for (const auto& [k, v] : vm.series.terms()) {
      ExponentKey e = k;
      e.s24 = 24 * m;
      ex.add_term(e, -v);
    }
  }
  MultiSeries expx = exp_series(ex);
  TruncationPolicy window{a24 + 24 * q_rel, 24 * s_rel};
  MultiSeries prod = MultiSeries::mul_window(psi.series, expx, window);
  prod.set_policy(window);

  BorcherdsProduct out;
  out.lattice = phi.lattice;
  out.weyl = design_constants(phi, order);
  out.a24 = a24;
  out.c24 = as_integer(out.weyl.C * 24, "24C");
  out.weight2 = psi.weight2;
  out.character = character_data(phi, order);
  out.expansion = prod.shifted(0, out.c24, {});
  return out;
}

std::vector<MultiSeries> corollary32_terms(const JacobiExpansion& phi, long q_rel,
                                           int n_slices,
                                           const OrderingFunctional& order) {
  const ContextPtr& ctx = phi.series.context();
  // slice j multiplies psi by j-fold products of phi and its V_m images,
  // whose poles eat into the window: build psi deeper by the pole depth
  const long pole24 = std::max(0L, -phi.series.min_q24());
  JacobiExpansion psi =
      theta_block(phi, ctx, 24 * q_rel + (n_slices - 1) * pole24, order);
  const long a24 = psi.series.min_q24();
  TruncationPolicy window{a24 + 24 * q_rel, 0};
  auto clip = [&](MultiSeries s) {
    if (s.policy().q_max24 < window.q_max24)
      throw BudgetError("corollary32_terms: source truncation too small");
    s = s.truncated(window);
    s.set_policy(window);
    return s;
  };
  std::vector<MultiSeries> out;
  out.push_back(clip(psi.series));
  if (n_slices > 1) {
    out.push_back(clip(-(psi.series * phi.series)));
  }
  if (n_slices > 2) {
    MultiSeries v2 = hecke_vm(phi, 2).series;
    MultiSeries t = phi.series * phi.series;
    t = t.scaled(Rat(1, 2)) - v2;
    out.push_back(clip(psi.series * t));
  }
  if (n_slices > 3) {
    MultiSeries v2 = hecke_vm(phi, 2).series;
    MultiSeries v3 = hecke_vm(phi, 3).series;
    MultiSeries t = (phi.series * phi.series * phi.series).scaled(Rat(1, 6)) -
                    phi.series * v2 + v3;
    out.push_back(clip(-t * psi.series));
  }
  return out;
}

long divisor_multiplicity(const JacobiExpansion& phi, long n, const DualVector& ell) {
  const Lattice& L = *phi.lattice;
  Rat norm = Rat(2 * n) - ell.norm(L);
  if (norm >= 0) throw ConfigError("divisor_multiplicity: norm must be negative");
  // negative-norm coefficients depend only on (norm, class) and all occur
  // in the wall rows of a weakly holomorphic table
  std::map<std::pair<std::string, Rat>, Rat> table;
  for (const auto& t : phi.low_rows) {
    Rat nrm = Rat(2 * t.q24, 24) - t.ell.norm(L);
    nrm.canonicalize();
    if (nrm < 0) table[{L.class_of_key(t.ell.pairing_key(L)), nrm}] = t.f;
  }
  auto lookup = [&](const Rat& nrm, const DualVector& v) -> Rat {
    auto it = table.find({L.class_of_key(v.pairing_key(L)), nrm});
    return it == table.end() ? Rat(0) : it->second;
  };
  // sum f(t^2 n, t l) over rational t = a/b > 0 keeping t l in the dual
  // lattice and t^2 n integral
  auto key = ell.pairing_key(L);
  long content = 0;
  for (int32_t k : key) content = gcd_ll(content, k);
  content /= 2;  // key entries are doubled pairings
  Rat total = 0;
  for (long b = 1; b <= std::max(content, 1L); ++b) {
    if (content % b) continue;
    if (n % (b * b)) continue;
    DualVector core = ell.scaled(Rat(1, b));
    long core_n = n / (b * b);
    Rat core_norm = norm / Rat(b * b);
    for (long a = 1;; a += 1) {
      if (gcd_ll(a, b) != 1) continue;
      Rat nrm = core_norm * Rat(a * a);
      if (nrm < -2 * 24) break;  // far below any wall datum
      if (nrm < 0) total += lookup(nrm, core.scaled(Rat(a)));
      else break;
    }
  }
  return as_integer(total, "divisor multiplicity");
}

CharacterData character_data(const JacobiExpansion& phi, const OrderingFunctional& order) {
  WeylData w = design_constants(phi, order);
  CharacterData c;
  long a24 = as_integer(w.A * 24, "24A");
  c.eta_power = static_cast<int>(((a24 % 24) + 24) % 24);
  Rat d = 0;
  for (const auto& t : phi.low_rows)
    if (t.q24 < 0 && t.ell.is_zero())
      d += t.f * Rat(sigma_divisors(-t.q24 / 24, 0));
  long dv = as_integer(d, "v-swap exponent");
  c.v_swap_parity = static_cast<int>(((dv % 2) + 2) % 2);
  auto [s, nl] = ideal_generators(*phi.lattice);
  Rat half_n(nl, 2);
  half_n.canonicalize();
  Rat cn = w.C * half_n;
  c.heisenberg_nontrivial = !is_integer(cn);
  return c;
}

MultiSeries fj_criterion(const MultiSeries& slice_m, const MultiSeries& slice_m1) {
  return -exact_div(slice_m1, slice_m);
}

VSwapReport v_swap_check(const BorcherdsProduct& B, long w24) {
  VSwapReport rep;
  rep.parity = B.character.v_swap_parity;
  if (B.expansion.policy().q_max24 < w24 || B.expansion.policy().s_max24 < w24)
    throw BudgetError("v_swap_check: window exceeds the expansion");
  Rat sign = (rep.parity % 2) ? -1 : 1;
  for (const auto& [k, v] : B.expansion.terms()) {
    if (k.q24 > w24 || k.s24 > w24) continue;
    ++rep.compared;
    ExponentKey swapped = k;
    std::swap(swapped.q24, swapped.s24);
    Rat other = B.expansion.coefficient(swapped);
    if (other != sign * v) {
      rep.pass = false;
      std::ostringstream os;
      os << "q24=" << k.q24 << " s24=" << k.s24 << ": " << rat_string(v) << " vs "
         << rat_string(other);
      rep.witness = os.str();
      return rep;
    }
  }
  return rep;
}

}  // namespace bpx
