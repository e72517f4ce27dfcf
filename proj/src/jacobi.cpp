#include "bpx/jacobi.hpp"

#include <algorithm>
#include <numeric>
#include <map>
#include <sstream>

#include "bpx/cache.hpp"
#include "bpx/errors.hpp"
#include "bpx/niemeier.hpp"
#include "json.hpp"

namespace bpx {

std::string jacobi_to_json(const JacobiExpansion& phi, int indent) {
  nlohmann::ordered_json j;
  j["schema"] = "bpx-jacobi v1";
  j["weight2"] = phi.weight2;
  j["index24"] = phi.index24;
  if (phi.lattice) j["lattice-digest"] = phi.lattice->digest();
  nlohmann::ordered_json ch;
  ch["eta-power"] = phi.character.eta_power;
  ch["heisenberg-nontrivial"] = phi.character.heisenberg_nontrivial;
  if (phi.character.v_swap_parity >= 0) ch["v-swap-parity"] = phi.character.v_swap_parity;
  j["character"] = ch;
  j["series"] = nlohmann::ordered_json::parse(phi.series.to_json());
  return indent >= 0 ? j.dump(indent) : j.dump();
}

JacobiExpansion jacobi_mul(const JacobiExpansion& a, const JacobiExpansion& b) {
  JacobiExpansion r;
  r.weight2 = a.weight2 + b.weight2;
  r.index24 = a.index24 + b.index24;
  r.q_grid24 = std::gcd(a.q_grid24, b.q_grid24);
  r.lattice = a.lattice ? a.lattice : b.lattice;
  r.series = a.series * b.series;
  r.character.eta_power = (a.character.eta_power + b.character.eta_power) % 24;
  return r;
}

MultiSeries theta_odd_series(const ContextPtr& ctx, long q_max24,
                             const std::vector<long>& pvec) {
  TruncationPolicy pol{q_max24, 0};
  MultiSeries s(ctx, pol);
  for (long n = 1; 3 * n * n <= q_max24; n += 2) {
    for (long sign : {1L, -1L}) {
      long nn = sign * n;
      ExponentKey k;
      k.q24 = 3 * n * n;
      k.ell.resize(ctx->rdim);
      for (int j = 0; j < ctx->rdim; ++j)
        k.ell[j] = static_cast<int32_t>(nn * pvec[j]);
      s.add_term(k, kronecker_m4(nn));
    }
  }
  return s;
}

MultiSeries theta_odd_product_series(const ContextPtr& ctx, long q_max24,
                                     const std::vector<long>& pvec) {
  // -q^{1/8} r^{-lhat/2} prod (1-q^{n-1} r^{lhat}) (1-q^n r^{-lhat}) (1-q^n)
  const long rel = q_max24 - 3;  // leading exponent is q^{3/24}
  auto mono_key = [&](long q24, long scale) {
    ExponentKey k;
    k.q24 = q24;
    k.ell.resize(ctx->rdim);
    for (int j = 0; j < ctx->rdim; ++j)
      k.ell[j] = static_cast<int32_t>(scale * pvec[j]);
    return k;
  };
  std::vector<MultiSeries> factors;
  factors.push_back(
      MultiSeries::monomial(ctx, TruncationPolicy{3, 0}, mono_key(3, -1), -1));
  auto binomial = [&](long q24, long scale) {
    MultiSeries f(ctx, TruncationPolicy{q24 + rel, 0});
    f.add_term(mono_key(0, 0), 1);
    f.add_term(mono_key(q24, scale), -1);
    return f;
  };
  for (long n = 1; 24 * (n - 1) <= rel; ++n) factors.push_back(binomial(24 * (n - 1), 2));
  for (long n = 1; 24 * n <= rel; ++n) {
    factors.push_back(binomial(24 * n, -2));
    factors.push_back(binomial(24 * n, 0));
  }
  return assemble_product(factors, rel, 0);
}

JacobiExpansion theta_odd(long q_max24) {
  JacobiExpansion j;
  j.weight2 = 1;
  j.index24 = 12;
  j.q_grid24 = 3;
  j.lattice = root_lattice('A', 1);
  j.series = theta_odd_series(lattice_context(j.lattice), q_max24, {1});
  j.character.eta_power = 3;
  j.character.heisenberg_nontrivial = true;
  return j;
}

JacobiExpansion theta_lattice(LatticePtr L, int q_max_natural, const ContextPtr& ctx,
                              const EnumOptions& opt, bool use_cache) {
  if (L->det() != 1 || L->rank() % 8 != 0)
    throw ConfigError("theta_lattice: lattice must be even unimodular of rank 0 mod 8");
  JacobiExpansion j;
  j.weight2 = L->rank();
  j.index24 = 24;
  j.q_grid24 = 24;
  j.lattice = L;
  TruncationPolicy pol{24L * q_max_natural, 0};
  MultiSeries s(ctx, pol);
  ExponentKey zero;
  zero.ell.assign(ctx->rdim, 0);
  s.add_term(zero, 1);
  if (q_max_natural > 0) {
    if (ctx->rkind == SeriesContext::RKind::Specialized) {
      ThetaTally tally = use_cache
                             ? cached_tally(*L, 2L * q_max_natural, ctx->spec_weights, opt)
                             : short_vector_tally(*L, 2L * q_max_natural,
                                                  ctx->spec_weights, opt);
      for (const auto& [nk, count] : tally.counts) {
        ExponentKey k;
        k.q24 = 12 * nk.first;
        k.ell = nk.second;
        s.add_term(k, Rat(count));
      }
    } else {
      auto reps = short_vectors_list(*L, 2L * q_max_natural, opt);
      for (const auto& x : reps) {
        auto p = L->pairing_row(x);
        ExponentKey k;
        k.q24 = 12 * L->norm_of(x);
        k.ell.resize(L->rank());
        for (int i = 0; i < L->rank(); ++i) k.ell[i] = static_cast<int32_t>(2 * p[i]);
        s.add_term(k, 1);
        for (auto& e : k.ell) e = -e;
        s.add_term(k, 1);
      }
    }
  }
  j.series = std::move(s);
  DualVector zero_dv;
  zero_dv.num.assign(L->rank(), 0);
  j.low_rows.push_back(Q0Term{0, zero_dv, Rat(1)});
  return j;
}

JacobiExpansion weak_phi0(const std::string& cusp, int q_max_natural,
                          const ContextPtr& ctx, const EnumOptions& opt,
                          bool use_cache) {
  const CuspModel& model = cusp_model(cusp);
  JacobiExpansion theta =
      theta_lattice(model.lattice, q_max_natural + 1, ctx, opt, use_cache);
  std::vector<Rat> p24 = p24_coefficients(q_max_natural + 2);

  JacobiExpansion j;
  j.weight2 = 0;
  j.index24 = 24;
  j.q_grid24 = 24;
  j.lattice = model.lattice;
  TruncationPolicy pol{24L * q_max_natural, 0};
  MultiSeries s(ctx, pol);
  for (const auto& [tk, tv] : theta.series.terms()) {
    long jn = tk.q24 / 24;  // theta row index
    for (long n = std::max(jn - 1, -1L); n <= q_max_natural; ++n) {
      // f(n, l) = p24(n + 1 - j) theta(j, l)
      long idx = n + 1 - jn;
      if (idx < 0 || idx >= static_cast<long>(p24.size())) continue;
      ExponentKey k = tk;
      k.q24 = 24 * n;
      s.add_term(k, tv * p24[idx]);
    }
  }
  j.series = std::move(s);

  DualVector zero_dv;
  zero_dv.num.assign(model.lattice->rank(), 0);
  j.low_rows.push_back(Q0Term{-24, zero_dv, Rat(1)});
  j.low_rows.push_back(Q0Term{0, zero_dv, Rat(24)});
  for (const auto& v : model.roots.all_roots) j.low_rows.push_back(Q0Term{0, v, Rat(1)});
  return j;
}

namespace {

int weight_k(const JacobiExpansion& phi) {
  if (phi.weight2 % 2 != 0)
    throw ConfigError("Hecke operators need integral weight here");
  return phi.weight2 / 2;
}

Rat d_power(long d, int k) {
  // d^{k-1}
  if (k >= 1) {
    Int p = 1;
    for (int i = 0; i < k - 1; ++i) p *= d;
    return Rat(p);
  }
  Int p = 1;
  for (int i = 0; i < 1 - k; ++i) p *= d;
  return Rat(1, p);
}

}  // namespace

JacobiExpansion hecke_vm(const JacobiExpansion& phi, int m) {
  if (m <= 0) throw ConfigError("hecke_vm: m must be positive");
  if (phi.q_grid24 != 24 && phi.q_grid24 != 12)
    throw ConfigError("hecke_vm: unsupported exponent grid");
  const int k = weight_k(phi);
  const long grid = phi.q_grid24;
  JacobiExpansion r;
  r.weight2 = phi.weight2;
  r.index24 = phi.index24 * m;
  r.q_grid24 = phi.q_grid24;
  r.lattice = phi.lattice;
  r.character = phi.character;
  TruncationPolicy pol;
  pol.q_max24 = (phi.series.policy().q_max24 / m) / grid * grid;
  pol.s_max24 = 0;
  MultiSeries s(phi.series.context(), pol);
  for (const auto& [key, f] : phi.series.terms()) {
    for (long d = 1; d <= m; ++d) {
      if (m % d) continue;
      // dest (N, d*l) with N = n d^2 / m; requires N on the grid and
      // N/d on the grid (the d | (n,l,m) tuple condition)
      long num = key.q24 * d * d;
      if (num % m) continue;
      long N24 = num / m;
      if (N24 % grid) continue;
      if ((key.q24 * d) % (m * grid)) continue;
      ExponentKey dest;
      dest.q24 = N24;
      dest.s24 = 0;
      dest.ell.resize(key.ell.size());
      for (size_t i = 0; i < key.ell.size(); ++i)
        dest.ell[i] = static_cast<int32_t>(key.ell[i] * d);
      s.add_term(dest, f * d_power(d, k));
    }
  }
  r.series = std::move(s);
  return r;
}

JacobiExpansion hecke_vm_substitution(const JacobiExpansion& phi, int m) {
  if (m <= 0) throw ConfigError("hecke_vm_substitution: m must be positive");
  if (phi.q_grid24 != 24 && phi.q_grid24 != 12)
    throw ConfigError("hecke_vm_substitution: unsupported exponent grid");
  const int k = weight_k(phi);
  const long grid = phi.q_grid24;
  const long t = 24 / grid;  // tau -> (a tau + t b)/d keeps the multiplier grid
  JacobiExpansion r;
  r.weight2 = phi.weight2;
  r.index24 = phi.index24 * m;
  r.q_grid24 = phi.q_grid24;
  r.lattice = phi.lattice;
  r.character = phi.character;
  TruncationPolicy pol;
  pol.q_max24 = (phi.series.policy().q_max24 / m) / grid * grid;
  pol.s_max24 = 0;
  MultiSeries s(phi.series.context(), pol);
  for (long a = 1; a <= m; ++a) {
    if (m % a) continue;
    const long d = m / a;
    const Rat weight = d_power(a, k);
    for (const auto& [key, f] : phi.series.terms()) {
      // (1/d) sum_b zeta^b with zeta = e^{2 pi i n24 t / (24 d)}: equals 1
      // when 24 d | n24 t; otherwise zeta^d = 1 must hold (n24 on the
      // grid guarantees it) and the geometric sum vanishes exactly.
      long num = key.q24 * t;
      if ((num % (24 * d)) == 0) {
        long q_new_num = key.q24 * a;
        if (q_new_num % d)
          throw GridError("hecke_vm_substitution: exponent left the grid");
        ExponentKey dest;
        dest.q24 = q_new_num / d;
        dest.ell.resize(key.ell.size());
        for (size_t i = 0; i < key.ell.size(); ++i)
          dest.ell[i] = static_cast<int32_t>(key.ell[i] * a);
        s.add_term(dest, f * weight);
      } else if (num % 24 == 0) {
        continue;  // annihilated by the b-sum
      } else {
        throw GridError("hecke_vm_substitution: irrational phase sum");
      }
    }
  }
  r.series = std::move(s);
  return r;
}

WeylData design_constants(const JacobiExpansion& phi, const OrderingFunctional& order) {
  if (phi.weight2 != 0 || phi.index24 != 24)
    throw ConfigError("design_constants: need weight 0, index 1");
  if (phi.low_rows.empty()) throw ConfigError("design_constants: wall data missing");
  const Lattice& L = *phi.lattice;
  WeylData w;
  w.A = 0;
  w.C = 0;
  DualVector bsum;
  bsum.num.assign(L.rank(), 0);
  Rat neg = 0;
  for (const auto& t : phi.low_rows) {
    if (t.q24 == 0) {
      w.A += t.f;
      w.C += t.f * t.ell.norm(L);
      if (!t.ell.is_zero() && order.sign(L, t.ell) > 0)
        bsum = bsum + t.ell.scaled(t.f);
    } else {
      neg += t.f * Rat(sigma_divisors(-t.q24 / 24, 1));
    }
  }
  w.A /= 24;
  w.C /= Rat(2 * L.rank());
  w.C_alt = w.A - neg;
  w.B = bsum.scaled(Rat(1, 2));
  w.b_key = w.B.pairing_key(L);
  return w;
}

TwoDesignReport check_two_design(const JacobiExpansion& phi,
                                 const OrderingFunctional& order) {
  WeylData w = design_constants(phi, order);
  const Lattice& L = *phi.lattice;
  const int n = L.rank();
  std::vector<Rat> M(static_cast<size_t>(n) * n, Rat(0));
  for (const auto& t : phi.low_rows) {
    if (t.q24 != 0) continue;
    std::vector<Rat> p(n);
    for (int i = 0; i < n; ++i) {
      Rat s = 0;
      for (int j = 0; j < n; ++j) s += Rat(L.g(i, j)) * t.ell.coord(j);
      p[i] = s;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M[i * n + j] += t.f * p[i] * p[j];
  }
  TwoDesignReport rep;
  rep.C = w.C;
  rep.C_alt = w.C_alt;
  rep.matrix_identity = true;
  for (int i = 0; i < n && rep.matrix_identity; ++i)
    for (int j = 0; j < n; ++j)
      if (M[i * n + j] != Rat(2) * w.C * Rat(L.g(i, j))) {
        rep.matrix_identity = false;
        break;
      }
  rep.c_agreement = (w.C == w.C_alt);
  return rep;
}

namespace {

std::vector<long> pvec_in_context(const Lattice& L, const ContextPtr& ctx,
                                  const DualVector& ell) {
  auto key = ell.pairing_key(L);  // doubled pairings with the basis
  std::vector<long> p(ctx->rdim);
  if (ctx->rkind == SeriesContext::RKind::LatticeDual) {
    for (int i = 0; i < ctx->rdim; ++i) {
      if (key[i] % 2) throw ConfigError("theta factor: pairing not integral");
      p[i] = key[i] / 2;
    }
  } else {
    for (int j = 0; j < ctx->rdim; ++j) {
      long dot = 0;
      for (int i = 0; i < L.rank(); ++i)
        dot += static_cast<long>(key[i]) * ctx->spec_vectors[j][i];
      if (dot % 2) throw ConfigError("theta factor: specialized pairing not integral");
      p[j] = dot / 2;
    }
  }
  return p;
}

// numerator and denominator factor lists multiplied out to a relative
// budget, then divided; the exact_div completeness rule keeps the quotient
// complete to its own leading exponent plus rel_q24
MultiSeries block_quotient(std::vector<MultiSeries> num_factors,
                           std::vector<MultiSeries> den_factors, long epow,
                           long rel_q24) {
  std::vector<MultiSeries>& eta_side = epow >= 0 ? num_factors : den_factors;
  for (long c = 0; c < (epow < 0 ? -epow : epow); ++c)
    eta_side.push_back(eta_series(1 + rel_q24));
  MultiSeries num = num_factors.empty()
                        ? MultiSeries::one(scalar_context(), TruncationPolicy{rel_q24, 0})
                        : assemble_product(num_factors, rel_q24, 0);
  if (den_factors.empty()) return num;
  MultiSeries den = assemble_product(den_factors, rel_q24, 0);
  return exact_div(num, den);
}

}  // namespace

JacobiExpansion theta_block(const JacobiExpansion& phi, const ContextPtr& ctx,
                            long rel_q24, const OrderingFunctional& order) {
  WeylData w = design_constants(phi, order);
  const Lattice& L = *phi.lattice;
  if (!is_integer(w.A * 24) || !is_integer(w.C * 24))
    throw ConfigError("theta_block: Weyl data off the 1/24 grid");
  long lead24 = Rat(w.A * 24).get_num().get_si();

  Rat f00;
  std::vector<std::pair<DualVector, long>> positives;
  long sum_mult = 0;
  for (const auto& t : phi.low_rows) {
    if (t.q24 != 0) continue;
    if (t.ell.is_zero()) {
      f00 = t.f;
      continue;
    }
    if (!is_integer(t.f))
      throw ConfigError("theta_block: non-integral q^0 coefficient");
    if (order.sign(L, t.ell) > 0) {
      positives.emplace_back(t.ell, t.f.get_num().get_si());
      sum_mult += t.f.get_num().get_si();
    }
  }
  if (!is_integer(f00)) throw ConfigError("theta_block: non-integral f(0,0)");
  long f00i = f00.get_num().get_si();

  std::vector<MultiSeries> num_factors, den_factors;
  for (const auto& [ell, mult] : positives) {
    auto pv = pvec_in_context(L, ctx, ell);
    MultiSeries th = theta_odd_series(ctx, 3 + rel_q24, pv);
    for (long c = 0; c < (mult < 0 ? -mult : mult); ++c)
      (mult > 0 ? num_factors : den_factors).push_back(th);
  }
  JacobiExpansion out;
  out.series = block_quotient(std::move(num_factors), std::move(den_factors),
                              f00i - sum_mult, rel_q24)
                   .lifted_to(ctx);
  out.weight2 = static_cast<int>(f00i);
  Rat idx24 = w.C * 24;
  out.index24 = static_cast<int>(idx24.get_num().get_si());
  out.q_grid24 = (lead24 % 24 == 0) ? 24 : 12;
  out.lattice = phi.lattice;
  out.character.eta_power = static_cast<int>(((lead24 % 24) + 24) % 24);
  if (out.series.empty() || out.series.min_q24() != lead24)
    throw ConfigError("theta_block: leading exponent disagrees with Weyl data");
  return out;
}

JacobiExpansion affine_denominator(const RootSystemData& R, LatticePtr L,
                                   const ContextPtr& ctx, long rel_q24) {
  std::vector<MultiSeries> factors;
  for (const auto& v : R.positive_roots) {
    auto pv = pvec_in_context(*L, ctx, v);
    factors.push_back(theta_odd_product_series(ctx, 3 + rel_q24, pv));
  }
  const long npos = static_cast<long>(R.positive_roots.size());
  const long epow = L->rank() - npos;
  // eta^{rank - |R+|} carries q^{epow/24}, each theta factor q^{3/24}
  const long lead24 = epow + 3 * npos;
  JacobiExpansion out;
  out.series = block_quotient(std::move(factors), {}, epow, rel_q24).lifted_to(ctx);
  out.weight2 = L->rank();
  out.index24 = R.components.empty() ? 0 : 24 * R.coxeter_number;
  out.q_grid24 = (lead24 % 24 == 0) ? 24 : 12;
  out.lattice = L;
  if (out.series.empty() || out.series.min_q24() != lead24)
    throw ConfigError("affine_denominator: unexpected leading exponent");
  return out;
}

Rat hyperbolic_norm24(const JacobiExpansion& phi, const ExponentKey& key) {
  Rat qpart = Rat(2L * key.q24 * phi.index24, 24);
  qpart.canonicalize();
  return qpart - phi.lattice->norm24_of_key(key.ell);
}

DecompositionReport theta_decomposition_check(const JacobiExpansion& phi) {
  DecompositionReport rep;
  if (phi.series.context()->rkind != SeriesContext::RKind::LatticeDual)
    throw ConfigError("theta_decomposition_check: needs an unspecialized series");
  if (phi.index24 != 24)
    throw ConfigError("theta_decomposition_check: index 1 only");
  std::map<std::pair<std::string, Rat>, Rat> groups;
  for (const auto& [k, v] : phi.series.terms()) {
    auto cls = phi.lattice->class_of_key(k.ell);
    Rat norm = hyperbolic_norm24(phi, k);
    auto key = std::make_pair(cls, norm);
    auto it = groups.find(key);
    if (it == groups.end()) {
      groups.emplace(key, v);
    } else if (it->second != v) {
      rep.pass = false;
      std::ostringstream os;
      os << "class " << cls << " norm24 " << rat_string(norm) << ": "
         << rat_string(it->second) << " vs " << rat_string(v);
      rep.violations.push_back(os.str());
    }
  }
  return rep;
}

ValidationReport validate_jacobi(const JacobiExpansion& phi, Species species) {
  ValidationReport rep;
  const auto& terms = phi.series.terms();
  // f(n,l) = (-1)^k f(n,-l) for integral weight
  if (phi.weight2 % 2 == 0) {
    int k = phi.weight2 / 2;
    Rat sign = (k % 2) ? -1 : 1;
    for (const auto& [key, v] : terms) {
      ExponentKey nk = key;
      for (auto& e : nk.ell) e = -e;
      auto it = terms.find(nk);
      Rat other = it == terms.end() ? Rat(0) : it->second;
      if (other != sign * v) {
        rep.pass = false;
        rep.violations.push_back("coefficient symmetry violated");
        break;
      }
    }
  }
  for (const auto& [key, v] : terms) {
    bool ok = true;
    switch (species) {
      case Species::Weak: ok = key.q24 >= 0; break;
      case Species::Holomorphic: ok = hyperbolic_norm24(phi, key) >= 0; break;
      case Species::Cusp: ok = hyperbolic_norm24(phi, key) > 0; break;
      case Species::WeaklyHolomorphic: ok = true; break;
    }
    if (!ok) {
      rep.pass = false;
      rep.violations.push_back("support violates the declared species");
      break;
    }
  }
  return rep;
}

}  // namespace bpx
