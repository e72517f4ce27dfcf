#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bpx/lattice.hpp"

namespace bpx {

// How the r-exponent part of a key is read.
//   LatticeDual: entries are doubled pairings 2*(l, b_i) with the basis of
//     the context lattice; l recovers as G^{-1} * (key/2).
//   Specialized: entries are doubled pairings 2*(l, u_j) with the chosen
//     specialization vectors u_j (k <= 2 in production use).
// A context with rdim == 0 is scalar (plain q,s-series) and multiplies
// transparently into any other context.
struct SeriesContext {
  enum class RKind { LatticeDual, Specialized };
  RKind rkind = RKind::Specialized;
  LatticePtr lattice;  // may be null for scalar contexts
  int rdim = 0;
  std::vector<std::vector<long>> spec_vectors;  // u_j, coords in lattice basis
  std::vector<std::vector<long>> spec_weights;  // rows (b_i, u_j)

  std::string digest() const;
  bool is_scalar() const { return rdim == 0; }
};

using ContextPtr = std::shared_ptr<const SeriesContext>;

ContextPtr scalar_context();
ContextPtr lattice_context(LatticePtr L);
ContextPtr specialized_context(LatticePtr L, const std::vector<std::vector<long>>& u);

// Exponents are stored on the 1/24 grid: q24 = 24 * (q-exponent), likewise
// s24.  r-exponent entries are doubled pairings (see SeriesContext).
struct ExponentKey {
  long s24 = 0;
  long q24 = 0;
  std::vector<int32_t> ell;

  bool operator==(const ExponentKey& o) const {
    return s24 == o.s24 && q24 == o.q24 && ell == o.ell;
  }
  bool operator<(const ExponentKey& o) const {
    if (s24 != o.s24) return s24 < o.s24;
    if (q24 != o.q24) return q24 < o.q24;
    return ell < o.ell;
  }
};

// Truncation bounds: a series holds exactly the terms of the underlying
// object with q24 <= q_max24 and s24 <= s_max24 (no bound below; Laurent
// tails are finite by construction).
struct TruncationPolicy {
  long q_max24 = kUnbounded;
  long s_max24 = 0;
  static constexpr long kUnbounded = 1L << 40;
};

class MultiSeries {
 public:
  MultiSeries() : ctx_(scalar_context()) {}
  MultiSeries(ContextPtr ctx, TruncationPolicy pol) : ctx_(std::move(ctx)), pol_(pol) {}

  static MultiSeries zero(ContextPtr ctx, TruncationPolicy pol) {
    return MultiSeries(std::move(ctx), pol);
  }
  static MultiSeries one(ContextPtr ctx, TruncationPolicy pol);
  static MultiSeries monomial(ContextPtr ctx, TruncationPolicy pol, ExponentKey key,
                              Rat coeff);

  const ContextPtr& context() const { return ctx_; }
  const TruncationPolicy& policy() const { return pol_; }
  void set_policy(TruncationPolicy p) { pol_ = p; }
  const std::map<ExponentKey, Rat>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  // adds within policy bounds, dropping zero results
  void add_term(const ExponentKey& key, const Rat& c);

  long min_q24() const;  // valuation; kUnbounded when empty
  long min_s24() const;
  const ExponentKey& leading_key() const;  // smallest key, throws if empty

  MultiSeries operator+(const MultiSeries& o) const;
  MultiSeries operator-(const MultiSeries& o) const;
  MultiSeries operator-() const;
  MultiSeries scaled(const Rat& c) const;

  // Product keeping terms within `keep`; the result policy records honest
  // completeness (the min of `keep` and the bound implied by the factor
  // policies and valuations).  Callers that can prove more completeness
  // (controlled pipelines) truncate and override the policy themselves.
  static MultiSeries mul_window(const MultiSeries& a, const MultiSeries& b,
                                TruncationPolicy keep);
  MultiSeries operator*(const MultiSeries& o) const;

  bool operator==(const MultiSeries& o) const { return terms_ == o.terms_; }

  // exact coefficient lookup; throws BudgetError outside the policy window
  Rat coefficient(const ExponentKey& key) const;

  // sub-series at a fixed s-exponent, re-based to s = 0
  MultiSeries fj_slice(long s24) const;

  // list of distinct s-exponents present
  std::vector<long> s_support() const;

  MultiSeries truncated(TruncationPolicy p) const;
  MultiSeries shifted(long dq24, long ds24, const std::vector<int32_t>& dell) const;
  MultiSeries swap_qs() const;

  // ring homomorphism onto a specialized context (u_j from the target)
  MultiSeries specialize(const ContextPtr& target) const;

  // embeds a scalar series into a wider context (zero r-exponents)
  MultiSeries lifted_to(const ContextPtr& target) const;

  std::string to_json(int indent = -1) const;

 private:
  ContextPtr ctx_;
  TruncationPolicy pol_;
  std::map<ExponentKey, Rat> terms_;
};

// product of many factors with a relative q-budget above the accumulating
// leading exponent (factors must have no terms below their own leading
// q-exponent, which holds for every factor this code builds)
MultiSeries assemble_product(const std::vector<MultiSeries>& factors, long rel_q24,
                             long s_max24);

// exp of a series with strictly positive s-valuation; inverse log(1 + x)
MultiSeries exp_series(const MultiSeries& x);
MultiSeries log1p_series(const MultiSeries& x);

// exact division; throws NonDivisibleError when num is not divisible
MultiSeries exact_div(const MultiSeries& num, const MultiSeries& den);

// Dedekind eta (q^{1/24} prod (1-q^n)), Ramanujan Delta = eta^24 and its
// inverse, as scalar series complete through q_max24.
MultiSeries eta_series(long q_max24);
MultiSeries delta_series(long q_max24);
MultiSeries delta_inverse_series(long q_max24);

// p24(n): coefficient of q^{n-1} in 1/Delta, for 0 <= n <= count-1
std::vector<Rat> p24_coefficients(int count);

}  // namespace bpx
