#include "bpx/series.hpp"

#include <algorithm>
#include <sstream>

#include "bpx/errors.hpp"
#include "json.hpp"

namespace bpx {

std::string SeriesContext::digest() const {
  Fnv64 f;
  f.feed(rkind == RKind::LatticeDual ? "dual" : "spec");
  f.feed_i64(rdim);
  if (lattice) f.feed(lattice->digest());
  for (const auto& row : spec_weights)
    for (long v : row) f.feed_i64(v);
  return f.hex();
}

ContextPtr scalar_context() {
  static ContextPtr ctx = [] {
    auto c = std::make_shared<SeriesContext>();
    c->rkind = SeriesContext::RKind::Specialized;
    c->rdim = 0;
    return c;
  }();
  return ctx;
}

ContextPtr lattice_context(LatticePtr L) {
  auto c = std::make_shared<SeriesContext>();
  c->rkind = SeriesContext::RKind::LatticeDual;
  c->rdim = L->rank();
  c->lattice = std::move(L);
  return c;
}

ContextPtr specialized_context(LatticePtr L, const std::vector<std::vector<long>>& u) {
  auto c = std::make_shared<SeriesContext>();
  c->rkind = SeriesContext::RKind::Specialized;
  c->rdim = static_cast<int>(u.size());
  c->spec_vectors = u;
  for (const auto& v : u) c->spec_weights.push_back(L->pairing_row(v));
  c->lattice = std::move(L);
  return c;
}

MultiSeries MultiSeries::one(ContextPtr ctx, TruncationPolicy pol) {
  MultiSeries s(ctx, pol);
  ExponentKey k;
  k.ell.assign(ctx->rdim, 0);
  s.add_term(k, 1);
  return s;
}

MultiSeries MultiSeries::monomial(ContextPtr ctx, TruncationPolicy pol, ExponentKey key,
                                  Rat coeff) {
  MultiSeries s(ctx, pol);
  s.add_term(key, coeff);
  return s;
}

void MultiSeries::add_term(const ExponentKey& key, const Rat& c) {
  if (c == 0) return;
  if (key.q24 > pol_.q_max24 || key.s24 > pol_.s_max24) return;
  if (static_cast<int>(key.ell.size()) != ctx_->rdim)
    throw ConfigError("add_term: key dimension mismatch");
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

long MultiSeries::min_q24() const {
  long m = TruncationPolicy::kUnbounded;
  for (const auto& [k, v] : terms_) m = std::min(m, k.q24);
  return m;
}

long MultiSeries::min_s24() const {
  long m = TruncationPolicy::kUnbounded;
  for (const auto& [k, v] : terms_) m = std::min(m, k.s24);
  return m;
}

const ExponentKey& MultiSeries::leading_key() const {
  if (terms_.empty()) throw ConfigError("leading_key: empty series");
  return terms_.begin()->first;
}

namespace {

long clamp_bound(long b) {
  return std::min(b, TruncationPolicy::kUnbounded);
}

bool contexts_match(const ContextPtr& a, const ContextPtr& b) {
  if (a == b) return true;
  return a->digest() == b->digest();
}

}  // namespace

MultiSeries MultiSeries::operator+(const MultiSeries& o) const {
  const MultiSeries& a = *this;
  const MultiSeries& b = o;
  if (!a.ctx_->is_scalar() && !b.ctx_->is_scalar() && !contexts_match(a.ctx_, b.ctx_))
    throw ConfigError("series addition: context mismatch");
  ContextPtr ctx = a.ctx_->is_scalar() ? b.ctx_ : a.ctx_;
  TruncationPolicy p;
  p.q_max24 = std::min(a.pol_.q_max24, b.pol_.q_max24);
  p.s_max24 = std::min(a.pol_.s_max24, b.pol_.s_max24);
  MultiSeries r(ctx, p);
  auto lift = [&](const ExponentKey& k, const ContextPtr& from) {
    if (from->rdim == ctx->rdim) return k;
    ExponentKey e = k;
    e.ell.assign(ctx->rdim, 0);
    return e;
  };
  for (const auto& [k, v] : a.terms_) r.add_term(lift(k, a.ctx_), v);
  for (const auto& [k, v] : b.terms_) r.add_term(lift(k, b.ctx_), v);
  return r;
}

MultiSeries MultiSeries::operator-(const MultiSeries& o) const { return *this + (-o); }

MultiSeries MultiSeries::operator-() const { return scaled(Rat(-1)); }

MultiSeries MultiSeries::scaled(const Rat& c) const {
  MultiSeries r(ctx_, pol_);
  if (c == 0) return r;
  for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
  return r;
}

MultiSeries MultiSeries::mul_window(const MultiSeries& a, const MultiSeries& b,
                                    TruncationPolicy keep) {
  if (!a.ctx_->is_scalar() && !b.ctx_->is_scalar() && !contexts_match(a.ctx_, b.ctx_))
    throw ConfigError("series multiplication: context mismatch");
  ContextPtr ctx = a.ctx_->is_scalar() ? b.ctx_ : a.ctx_;
  // completeness of a truncated product depends on both bounds and both
  // valuations: terms up to min(qa + val_q(b), qb + val_q(a)) are exact
  TruncationPolicy p;
  p.q_max24 = clamp_bound(std::min(
      {keep.q_max24, a.pol_.q_max24 + b.min_q24(), b.pol_.q_max24 + a.min_q24()}));
  p.s_max24 = clamp_bound(std::min(
      {keep.s_max24, a.pol_.s_max24 + b.min_s24(), b.pol_.s_max24 + a.min_s24()}));
  MultiSeries r(ctx, p);
  r.pol_ = keep;  // accumulate across the window, then record completeness
  const bool lift_a = a.ctx_->rdim != ctx->rdim;
  const bool lift_b = b.ctx_->rdim != ctx->rdim;
  for (const auto& [ka, va] : a.terms_)
    for (const auto& [kb, vb] : b.terms_) {
      ExponentKey k;
      k.q24 = ka.q24 + kb.q24;
      k.s24 = ka.s24 + kb.s24;
      if (k.q24 > keep.q_max24 || k.s24 > keep.s_max24) continue;
      if (lift_a) {
        k.ell = kb.ell;
      } else if (lift_b) {
        k.ell = ka.ell;
      } else {
        k.ell.resize(ka.ell.size());
        for (size_t i = 0; i < k.ell.size(); ++i) k.ell[i] = ka.ell[i] + kb.ell[i];
      }
      r.add_term(k, va * vb);
    }
  r.pol_ = p;
  return r;
}

MultiSeries MultiSeries::operator*(const MultiSeries& o) const {
  TruncationPolicy keep;
  keep.q_max24 = clamp_bound(
      std::min(pol_.q_max24 + o.min_q24(), o.pol_.q_max24 + min_q24()));
  keep.s_max24 = clamp_bound(
      std::min(pol_.s_max24 + o.min_s24(), o.pol_.s_max24 + min_s24()));
  return mul_window(*this, o, keep);
}

Rat MultiSeries::coefficient(const ExponentKey& key) const {
  if (key.q24 > pol_.q_max24 || key.s24 > pol_.s_max24)
    throw BudgetError("coefficient outside the truncation window");
  auto it = terms_.find(key);
  return it == terms_.end() ? Rat(0) : it->second;
}

MultiSeries MultiSeries::fj_slice(long s24) const {
  if (s24 > pol_.s_max24) throw BudgetError("fj_slice outside the truncation window");
  TruncationPolicy p;
  p.q_max24 = pol_.q_max24;
  p.s_max24 = 0;
  MultiSeries r(ctx_, p);
  for (const auto& [k, v] : terms_)
    if (k.s24 == s24) {
      ExponentKey e = k;
      e.s24 = 0;
      r.terms_.emplace(e, v);
    }
  return r;
}

std::vector<long> MultiSeries::s_support() const {
  std::vector<long> out;
  for (const auto& [k, v] : terms_)
    if (out.empty() || out.back() != k.s24) out.push_back(k.s24);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MultiSeries MultiSeries::truncated(TruncationPolicy p) const {
  p.q_max24 = std::min(p.q_max24, pol_.q_max24);
  p.s_max24 = std::min(p.s_max24, pol_.s_max24);
  MultiSeries r(ctx_, p);
  for (const auto& [k, v] : terms_)
    if (k.q24 <= p.q_max24 && k.s24 <= p.s_max24) r.terms_.emplace(k, v);
  return r;
}

MultiSeries MultiSeries::shifted(long dq24, long ds24,
                                 const std::vector<int32_t>& dell) const {
  TruncationPolicy p;
  p.q_max24 = clamp_bound(pol_.q_max24 + dq24);
  p.s_max24 = clamp_bound(pol_.s_max24 + ds24);
  MultiSeries r(ctx_, p);
  for (const auto& [k, v] : terms_) {
    ExponentKey e = k;
    e.q24 += dq24;
    e.s24 += ds24;
    if (!dell.empty()) {
      if (dell.size() != e.ell.size()) throw ConfigError("shifted: dimension mismatch");
      for (size_t i = 0; i < dell.size(); ++i) e.ell[i] += dell[i];
    }
    r.terms_.emplace(e, v);
  }
  return r;
}

MultiSeries MultiSeries::swap_qs() const {
  TruncationPolicy p;
  p.q_max24 = pol_.s_max24;
  p.s_max24 = pol_.q_max24;
  MultiSeries r(ctx_, p);
  for (const auto& [k, v] : terms_) {
    ExponentKey e = k;
    std::swap(e.q24, e.s24);
    r.terms_.emplace(e, v);
  }
  return r;
}

MultiSeries MultiSeries::lifted_to(const ContextPtr& target) const {
  if (ctx_->rdim == target->rdim) {
    MultiSeries r(target, pol_);
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v);
    return r;
  }
  if (!ctx_->is_scalar()) throw ConfigError("lifted_to: source must be scalar");
  MultiSeries r(target, pol_);
  for (const auto& [k, v] : terms_) {
    ExponentKey e = k;
    e.ell.assign(target->rdim, 0);
    r.terms_.emplace(e, v);
  }
  return r;
}

MultiSeries MultiSeries::specialize(const ContextPtr& target) const {
  if (ctx_->is_scalar()) {
    MultiSeries r(target, pol_);
    for (const auto& [k, v] : terms_) {
      ExponentKey e = k;
      e.ell.assign(target->rdim, 0);
      r.add_term(e, v);
    }
    return r;
  }
  if (ctx_->rkind != SeriesContext::RKind::LatticeDual)
    throw ConfigError("specialize: source must be a lattice-dual series");
  if (!target->lattice || target->lattice->digest() != ctx_->lattice->digest())
    throw ConfigError("specialize: lattice mismatch");
  MultiSeries r(target, pol_);
  for (const auto& [k, v] : terms_) {
    ExponentKey e;
    e.q24 = k.q24;
    e.s24 = k.s24;
    e.ell.resize(target->rdim);
    for (int j = 0; j < target->rdim; ++j) {
      long dot = 0;
      for (size_t i = 0; i < k.ell.size(); ++i)
        dot += static_cast<long>(k.ell[i]) * target->spec_vectors[j][i];
      e.ell[j] = static_cast<int32_t>(dot);
    }
    r.add_term(e, v);
  }
  return r;
}

MultiSeries assemble_product(const std::vector<MultiSeries>& factors, long rel_q24,
                             long s_max24) {
  if (factors.empty()) throw ConfigError("assemble_product: no factors");
  long lead = 0;
  for (const auto& f : factors) {
    if (f.empty()) return MultiSeries::zero(f.context(), TruncationPolicy{0, s_max24});
    lead += f.min_q24();
  }
  TruncationPolicy p;
  p.q_max24 = clamp_bound(lead + rel_q24);
  p.s_max24 = s_max24;
  MultiSeries acc = MultiSeries::one(factors.front().context(), TruncationPolicy{rel_q24, s_max24});
  long running_lead = 0;
  for (const auto& f : factors) {
    running_lead += f.min_q24();
    // factors carry nothing below their leading q-exponent, so terms more
    // than rel_q24 above the accumulated leading exponent can never come
    // back inside the window
    TruncationPolicy w{clamp_bound(running_lead + rel_q24), s_max24};
    acc = MultiSeries::mul_window(acc, f, w);
    acc.set_policy(w);
  }
  acc.set_policy(p);
  return acc;
}

MultiSeries exp_series(const MultiSeries& x) {
  if (!x.empty() && x.min_s24() <= 0)
    throw ConfigError("exp_series: argument must have positive s-valuation");
  long smax = x.policy().s_max24;
  long qmax = x.policy().q_max24;
  TruncationPolicy p{qmax, smax};
  MultiSeries acc = MultiSeries::one(x.context(), p);
  if (x.empty()) return acc;
  long step = x.min_s24();
  MultiSeries term = MultiSeries::one(x.context(), p);
  for (long k = 1; k * step <= smax; ++k) {
    term = MultiSeries::mul_window(term, x, p).scaled(Rat(1, k));
    term.set_policy(p);
    acc = acc + term;
  }
  acc.set_policy(p);
  return acc;
}

MultiSeries log1p_series(const MultiSeries& x) {
  if (!x.empty() && x.min_s24() <= 0)
    throw ConfigError("log1p_series: argument must have positive s-valuation");
  long smax = x.policy().s_max24;
  long qmax = x.policy().q_max24;
  TruncationPolicy p{qmax, smax};
  MultiSeries acc = MultiSeries::zero(x.context(), p);
  if (x.empty()) return acc;
  long step = x.min_s24();
  MultiSeries power = MultiSeries::one(x.context(), p);
  for (long k = 1; k * step <= smax; ++k) {
    power = MultiSeries::mul_window(power, x, p);
    power.set_policy(p);
    acc = acc + power.scaled(Rat((k % 2) ? 1 : -1, k));
  }
  acc.set_policy(p);
  return acc;
}

namespace {

using RPoly = std::map<std::vector<int32_t>, Rat>;

struct GlexLess {
  bool operator()(const std::vector<int32_t>& a, const std::vector<int32_t>& b) const {
    long da = 0, db = 0;
    for (int32_t v : a) da += v;
    for (int32_t v : b) db += v;
    if (da != db) return da < db;
    return a < b;
  }
};

// exact division of Laurent polynomials in the r-variables; graded-lex
// monomial order after shifting to ordinary polynomials
RPoly laurent_divide(const RPoly& num, const RPoly& den) {
  if (den.empty()) throw ConfigError("laurent_divide: zero divisor");
  const size_t dim = den.begin()->first.size();
  std::vector<int32_t> shift_n(dim, 0), shift_d(dim, 0);
  auto min_shift = [&](const RPoly& p, std::vector<int32_t>& s) {
    bool first = true;
    for (const auto& [k, v] : p) {
      for (size_t i = 0; i < dim; ++i) s[i] = first ? k[i] : std::min(s[i], k[i]);
      first = false;
    }
  };
  min_shift(num, shift_n);
  min_shift(den, shift_d);
  using Ordered = std::map<std::vector<int32_t>, Rat, GlexLess>;
  Ordered n, d;
  for (const auto& [k, v] : num) {
    std::vector<int32_t> e(dim);
    for (size_t i = 0; i < dim; ++i) e[i] = k[i] - shift_n[i];
    n.emplace(std::move(e), v);
  }
  for (const auto& [k, v] : den) {
    std::vector<int32_t> e(dim);
    for (size_t i = 0; i < dim; ++i) e[i] = k[i] - shift_d[i];
    d.emplace(std::move(e), v);
  }
  const auto& lead_d = *d.rbegin();
  RPoly q;
  while (!n.empty()) {
    const auto& lead_n = *n.rbegin();
    std::vector<int32_t> t(dim);
    for (size_t i = 0; i < dim; ++i) {
      t[i] = lead_n.first[i] - lead_d.first[i];
      if (t[i] < 0)
        throw NonDivisibleError("laurent division leaves a remainder");
    }
    Rat c = lead_n.second / lead_d.second;
    std::vector<int32_t> tq(dim);
    for (size_t i = 0; i < dim; ++i) tq[i] = t[i] + shift_n[i] - shift_d[i];
    q[tq] = c;
    for (const auto& [k, v] : d) {
      std::vector<int32_t> e(dim);
      for (size_t i = 0; i < dim; ++i) e[i] = t[i] + k[i];
      auto it = n.find(e);
      Rat nv = (it == n.end() ? Rat(0) : it->second) - c * v;
      if (it != n.end()) n.erase(it);
      if (nv != 0) n.emplace(std::move(e), nv);
    }
  }
  return q;
}

}  // namespace

MultiSeries exact_div(const MultiSeries& num, const MultiSeries& den) {
  if (den.empty()) throw ConfigError("exact_div: zero divisor");
  ContextPtr ctx = num.context()->is_scalar() ? den.context() : num.context();
  if (!num.context()->is_scalar() && !den.context()->is_scalar() &&
      !contexts_match(num.context(), den.context()))
    throw ConfigError("exact_div: context mismatch");
  auto s_vals = den.s_support();
  if (s_vals.size() != 1)
    throw ConfigError("exact_div: divisor must live at a single s-exponent");
  const long sd = s_vals[0];
  const long val_d = den.min_q24();
  const long val_n = num.empty() ? 0 : num.min_q24();
  // result completeness: r at order k needs num at k + val_d and den at
  // k + 2 val_d - val_n
  TruncationPolicy rp;
  rp.q_max24 = clamp_bound(std::min(num.policy().q_max24 - val_d,
                                    den.policy().q_max24 - 2 * val_d + val_n));
  rp.s_max24 = clamp_bound(num.policy().s_max24 - sd);
  MultiSeries result(ctx, rp);
  if (num.empty()) return result;

  const int dim = ctx->rdim;
  // denominator leading q-slice
  RPoly d0;
  std::map<long, RPoly> den_slices;
  for (const auto& [k, v] : den.terms()) {
    std::vector<int32_t> e = k.ell;
    if (static_cast<int>(e.size()) != dim) e.assign(dim, 0);
    den_slices[k.q24][e] = v;
  }
  d0 = den_slices.begin()->second;

  for (long sn : num.s_support()) {
    const long s_out = sn - sd;
    if (s_out > rp.s_max24) continue;
    std::map<long, RPoly> rem;
    for (const auto& [k, v] : num.terms())
      if (k.s24 == sn) {
        std::vector<int32_t> e = k.ell;
        if (static_cast<int>(e.size()) != dim) e.assign(dim, 0);
        rem[k.q24][e] = v;
      }
    while (!rem.empty()) {
      auto first = rem.begin();
      if (first->second.empty()) {
        rem.erase(first);
        continue;
      }
      const long q0 = first->first;
      long q_out = q0 - val_d;
      if (q_out > rp.q_max24) break;  // beyond the computable window
      RPoly qs = laurent_divide(first->second, d0);
      for (const auto& [e, c] : qs) {
        ExponentKey key;
        key.q24 = q_out;
        key.s24 = s_out;
        key.ell = e;
        result.add_term(key, c);
      }
      // rem -= qs * den
      for (const auto& [dq, dpoly] : den_slices)
        for (const auto& [de, dv] : dpoly)
          for (const auto& [qe, qv] : qs) {
            std::vector<int32_t> e(dim);
            for (int i = 0; i < dim; ++i) e[i] = qe[i] + de[i];
            long qq = q_out + dq;
            auto& cell = rem[qq][e];
            cell -= qv * dv;
            if (cell == 0) rem[qq].erase(e);
          }
      if (rem.count(q0) && rem[q0].empty()) rem.erase(q0);
    }
  }
  return result;
}

MultiSeries eta_series(long q_max24) {
  TruncationPolicy p{q_max24, 0};
  MultiSeries s(scalar_context(), p);
  for (long k = 0;; ++k) {
    long e = (6 * k - 1) * (6 * k - 1);
    long e2 = (6 * k + 1) * (6 * k + 1);
    if (e > q_max24 && e2 > q_max24) break;
    ExponentKey key;
    if (e <= q_max24) {
      key.q24 = e;
      s.add_term(key, (k % 2) ? -1 : 1);
    }
    if (k > 0 && e2 <= q_max24) {
      key.q24 = e2;
      s.add_term(key, (k % 2) ? -1 : 1);
    }
  }
  return s;
}

MultiSeries delta_series(long q_max24) {
  MultiSeries eta = eta_series(q_max24 + 23);
  MultiSeries acc = eta;
  for (int i = 1; i < 24; ++i) acc = acc * eta;
  return acc.truncated(TruncationPolicy{q_max24, 0});
}

MultiSeries delta_inverse_series(long q_max24) {
  MultiSeries one = MultiSeries::one(scalar_context(), TruncationPolicy{});
  return exact_div(one, delta_series(q_max24 + 48));
}

std::vector<Rat> p24_coefficients(int count) {
  MultiSeries inv = delta_inverse_series(24L * count);
  std::vector<Rat> out(count, 0);
  for (const auto& [k, v] : inv.terms()) {
    long n = k.q24 / 24 + 1;
    if (n >= 0 && n < count) out[n] = v;
  }
  return out;
}

std::string MultiSeries::to_json(int indent) const {
  nlohmann::ordered_json j;
  j["schema"] = "bpx-series v1";
  nlohmann::ordered_json c;
  c["kind"] = ctx_->rkind == SeriesContext::RKind::LatticeDual ? "lattice-dual"
                                                               : "specialized";
  c["rdim"] = ctx_->rdim;
  if (ctx_->lattice) {
    c["lattice-rank"] = ctx_->lattice->rank();
    c["lattice-digest"] = ctx_->lattice->digest();
  }
  if (!ctx_->spec_vectors.empty()) {
    nlohmann::ordered_json u = nlohmann::ordered_json::array();
    for (const auto& v : ctx_->spec_vectors) u.push_back(v);
    c["specialization"] = u;
  }
  j["context"] = c;
  j["policy"] = {{"qMax24", pol_.q_max24}, {"sMax24", pol_.s_max24}};
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [k, v] : terms_) {
    nlohmann::ordered_json t;
    t["q24"] = k.q24;
    nlohmann::ordered_json ell = nlohmann::ordered_json::array();
    if (ctx_->rkind == SeriesContext::RKind::LatticeDual) {
      const Lattice& L = *ctx_->lattice;
      for (int i = 0; i < L.rank(); ++i) {
        Int num = 0;
        for (int jx = 0; jx < L.rank(); ++jx) num += L.adj()[i][jx] * k.ell[jx];
        Rat coord(num, 2 * L.det());
        coord.canonicalize();
        ell.push_back(rat_string(coord));
      }
    } else {
      for (int32_t e : k.ell) {
        Rat coord(e, 2);
        coord.canonicalize();
        ell.push_back(rat_string(coord));
      }
    }
    t["ell"] = ell;
    t["s24"] = k.s24;
    t["coeff"] = {{"num", v.get_num().get_str()}, {"den", v.get_den().get_str()}};
    terms.push_back(t);
  }
  j["terms"] = terms;
  return indent >= 0 ? j.dump(indent) : j.dump();
}

}  // namespace bpx
