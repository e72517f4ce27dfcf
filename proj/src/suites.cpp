#include "bpx/suites.hpp"

#include <chrono>
#include <sstream>

#include "bpx/errors.hpp"
#include "json.hpp"

namespace bpx {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Timer {
  Clock::time_point t0 = Clock::now();
  double stop() const { return seconds_since(t0); }
};

CheckReport make_report(std::string check, std::string cusp, std::string policy,
                        bool pass, std::string witness = "", double secs = 0) {
  CheckReport r;
  r.check = std::move(check);
  r.cusp = std::move(cusp);
  r.policy = std::move(policy);
  r.status = pass ? "pass" : "fail";
  r.witness = std::move(witness);
  r.seconds = secs;
  return r;
}

std::string first_difference(const MultiSeries& a, const MultiSeries& b) {
  for (const auto& [k, v] : a.terms()) {
    auto it = b.terms().find(k);
    if (it == b.terms().end() || it->second != v) {
      std::ostringstream os;
      os << "q24=" << k.q24 << " s24=" << k.s24 << ": " << rat_string(v) << " vs "
         << rat_string(it == b.terms().end() ? Rat(0) : it->second);
      return os.str();
    }
  }
  for (const auto& [k, v] : b.terms())
    if (!a.terms().count(k)) {
      std::ostringstream os;
      os << "missing q24=" << k.q24 << " s24=" << k.s24;
      return os.str();
    }
  return "";
}

// equality after truncating both to the common complete window
bool series_equal(const MultiSeries& a, const MultiSeries& b, std::string* witness) {
  TruncationPolicy w;
  w.q_max24 = std::min(a.policy().q_max24, b.policy().q_max24);
  w.s_max24 = std::min(a.policy().s_max24, b.policy().s_max24);
  MultiSeries at = a.truncated(w), bt = b.truncated(w);
  if (at == bt) return true;
  if (witness) *witness = first_difference(at, bt);
  return false;
}

}  // namespace

std::vector<std::vector<long>> default_specialization(const CuspModel& model, int k) {
  std::vector<std::vector<long>> u;
  if (k <= 0) return u;
  if (model.roots.positive_roots.empty()) {
    std::vector<long> e0(model.lattice->rank(), 0);
    e0[0] = 1;
    u.push_back(e0);
  } else {
    // the Weyl vector: integral (Cor 2.3 integrality) and regular, so no
    // theta factor collapses
    const DualVector& rho = model.roots.rho;
    if (rho.den != 1) throw ConfigError("default_specialization: rho not integral");
    u.push_back(rho.num);
  }
  if (k >= 2) {
    std::vector<long> e0(model.lattice->rank(), 0);
    e0[0] = 1;
    u.push_back(e0);
  }
  return u;
}

SuiteReport atlas_suite(const std::vector<std::string>& labels, const SuiteOptions&) {
  SuiteReport rep;
  Timer total;
  for (const auto& label : labels) {
    Timer t;
    try {
      const CuspModel& m = cusp_model(label);
      std::ostringstream os;
      os << "rank " << m.lattice->rank() << ", det " << m.lattice->det().get_str();
      bool ok = m.lattice->rank() == 24 && m.lattice->det() == 1;
      if (label == "Leech") {
        ok = ok && m.roots.all_roots.empty();
        os << ", roots 0";
      } else {
        long h = m.roots.coxeter_number;
        os << ", roots " << m.roots.all_roots.size() << ", h " << h << ",";
        for (const auto& c : m.roots.components) {
          os << " " << c.family << c.rank;
          ok = ok && c.coxeter == h && c.root_count == c.rank * h;
        }
        ok = ok && static_cast<long>(m.roots.all_roots.size()) == 24 * h;
      }
      rep.add(make_report("atlas", label, "norm-2 enumeration", ok, os.str(), t.stop()));
    } catch (const std::exception& e) {
      rep.add(make_report("atlas", label, "norm-2 enumeration", false, e.what(),
                          t.stop()));
    }
  }
  rep.total_seconds = total.stop();
  return rep;
}

SuiteReport design_suite(const SuiteOptions& opt) {
  SuiteReport rep;
  Timer total;
  for (const char* label : kCuspLabels) {
    Timer t;
    const CuspModel& m = cusp_model(label);
    auto phi = weak_phi0(label, 0, lattice_context(m.lattice), opt.enumeration,
                         opt.use_cache);
    auto r = check_two_design(phi);
    bool ok = r.pass();
    std::ostringstream os;
    os << "C = " << rat_string(r.C);
    if (m.label != "Leech") {
      ok = ok && r.C == Rat(m.roots.coxeter_number);
      os << " = h";
    }
    // integrality law: C n(L) in 2Z forces C s(L) in Z and B in the dual
    auto w = design_constants(phi);
    auto [sL, nL] = ideal_generators(*m.lattice);
    Rat cn = w.C * Rat(nL);
    if (is_integer(cn) && cn.get_num() % 2 == 0) {
      ok = ok && is_integer(w.C * Rat(sL));
      for (int32_t k : w.b_key) ok = ok && k % 2 == 0;
    }
    rep.add(make_report("two-design", label, "q^0 row", ok, os.str(), t.stop()));
  }
  {
    Timer t;
    auto phi = phi0_4a1(0);
    auto r = check_two_design(phi);
    rep.add(make_report("two-design", "4A1", "q^0 row",
                        r.pass() && r.C == Rat(1, 2), "C = " + rat_string(r.C),
                        t.stop()));
  }
  rep.total_seconds = total.stop();
  return rep;
}

SuiteReport thm12_structural_suite(const std::vector<std::string>& labels, long rel,
                                   const SuiteOptions& opt) {
  SuiteReport rep;
  Timer total;
  for (const auto& label : labels) {
    if (label == "Leech") continue;
    Timer t;
    const CuspModel& m = cusp_model(label);
    // two variables while the Weyl vector is short; for tall cusps the
    // specialized support grows with rho^2 and one variable keeps the
    // check at desk scale
    const int nvars = m.roots.coxeter_number <= 10 ? 2 : 1;
    std::ostringstream pol;
    pol << "q <= " << (1 + m.roots.coxeter_number + rel) << ", " << nvars
        << " variable" << (nvars > 1 ? "s" : "");
    try {
      auto ctx = specialized_context(m.lattice, default_specialization(m, nvars));
      auto phi = weak_phi0(label, 0, lattice_context(m.lattice), opt.enumeration,
                           opt.use_cache);
      auto psi = theta_block(phi, ctx, 24 * rel);
      auto den = affine_denominator(m.roots, m.lattice, ctx, 24 * rel);
      std::string witness;
      bool ok = psi.weight2 == 24 && psi.index24 == 24 * m.roots.coxeter_number &&
                series_equal(psi.series, den.series, &witness);
      rep.add(make_report("thm12-structural", label, pol.str(), ok, witness, t.stop()));
    } catch (const std::exception& e) {
      rep.add(make_report("thm12-structural", label, pol.str(), false, e.what(),
                          t.stop()));
    }
  }
  rep.total_seconds = total.stop();
  return rep;
}

SuiteReport thm12_full_suite(const std::string& label, const SuiteOptions& opt) {
  if (label == "Leech")
    throw ConfigError("thm12 full tier: the Leech cusp has no roots; run the leech suite");
  SuiteReport rep;
  Timer total;
  const CuspModel& m = cusp_model(label);
  const long h = m.roots.coxeter_number;
  const std::string pol = "q_rel <= 1, slices h..h+2, 2 variables";

  auto ctx = specialized_context(m.lattice, default_specialization(m, 2));
  auto phi = weak_phi0(label, 2, ctx, opt.enumeration, opt.use_cache);
  auto B = product_direct(phi, 1, 2);

  rep.add(make_report("thm12-order", label, pol, B.c24 == 24 * h,
                      "C = " + rat_string(B.weyl.C)));
  rep.add(make_report("thm12-no-lower-slice", label, pol,
                      B.expansion.min_s24() == B.c24,
                      "first s-exponent " + std::to_string(B.expansion.min_s24())));
  {
    Timer t;
    auto den = affine_denominator(m.roots, m.lattice, ctx, 24 * 1);
    auto slice0 = B.slice(0);
    // the sign depends on the choice of positive roots; determine and record
    Rat lead_slice = slice0.terms().begin()->second;
    Rat lead_den = den.series.terms().begin()->second;
    Rat sign = lead_slice / lead_den;
    std::string witness;
    bool ok = (sign == 1 || sign == -1) &&
              series_equal(slice0, den.series.scaled(sign), &witness);
    CheckReport r = make_report("thm12-denominator", label, pol, ok, witness, t.stop());
    r.sign = rat_string(sign);
    rep.add(r);
  }
  {
    Timer t;
    auto cor = corollary32_terms(phi, 1, 3);
    std::string witness;
    bool ok = true;
    for (int j = 0; j < 3 && ok; ++j)
      ok = series_equal(B.slice(j), cor[j], &witness);
    rep.add(make_report("thm12-closed-slices", label, pol, ok, witness, t.stop()));
  }
  {
    Timer t;
    auto H = product_hecke(phi, 1, 2);
    std::string witness;
    bool ok = series_equal(B.expansion, H.expansion, &witness);
    rep.add(make_report("thm12-direct-vs-hecke", label, pol, ok, witness, t.stop()));
  }
  {
    Timer t;
    auto back = fj_criterion(B.slice(0), B.slice(1));
    std::string witness;
    bool ok = series_equal(back, phi.series, &witness);
    rep.add(make_report("thm12-fj-roundtrip", label, pol, ok, witness, t.stop()));
  }
  rep.total_seconds = total.stop();
  return rep;
}

SuiteReport products_suite(const SuiteOptions& opt) {
  SuiteReport rep;
  Timer total;
  {
    Timer t;
    auto phi = phi0_4a1(4);
    auto direct = product_direct(phi, 4, 1);
    auto hecke = product_hecke(phi, 4, 1);
    std::string witness;
    bool ok = series_equal(direct.expansion, hecke.expansion, &witness);
    rep.add(make_report("products-direct-vs-hecke", "4A1",
                        "q <= 4, s <= 3/2, full multivariate", ok, witness, t.stop()));
    Timer t2;
    auto cor = corollary32_terms(phi, 4, 2);
    ok = true;
    for (int j = 0; j < 2 && ok; ++j) ok = series_equal(direct.slice(j), cor[j], &witness);
    rep.add(make_report("products-closed-slices", "4A1",
                        "q <= 4, s <= 3/2, full multivariate", ok, witness, t2.stop()));
  }
  {
    Timer t;
    const CuspModel& m = cusp_model("Leech");
    auto ctx = specialized_context(m.lattice, default_specialization(m, 1));
    auto phi = weak_phi0("Leech", 2, ctx, opt.enumeration, opt.use_cache);
    auto direct = product_direct(phi, 1, 2);
    auto hecke = product_hecke(phi, 1, 2);
    std::string witness;
    bool ok = series_equal(direct.expansion, hecke.expansion, &witness);
    rep.add(make_report("products-direct-vs-hecke", "Leech", "q <= 1, s <= 2, specialized",
                        ok, witness, t.stop()));
    Timer t2;
    auto cor = corollary32_terms(phi, 1, 3);
    ok = true;
    for (int j = 0; j < 3 && ok; ++j) ok = series_equal(direct.slice(j), cor[j], &witness);
    rep.add(make_report("products-closed-slices", "Leech", "q <= 1, s <= 2, specialized",
                        ok, witness, t2.stop()));
  }
  rep.total_seconds = total.stop();
  return rep;
}

SuiteReport leech_suite(const SuiteOptions& opt) {
  SuiteReport rep;
  Timer total;
  const CuspModel& m = cusp_model("Leech");
  auto ctx = specialized_context(m.lattice, default_specialization(m, 1));
  auto phi = weak_phi0("Leech", 1, ctx, opt.enumeration, opt.use_cache);
  auto B = product_direct(phi, 1, 1);
  {
    Timer t;
    auto slice0 = B.slice(0);
    auto delta = delta_series(slice0.policy().q_max24).specialize(ctx);
    std::string witness;
    bool ok = series_equal(slice0, delta, &witness);
    ExponentKey k;
    k.ell = {0};
    k.q24 = 24;
    ok = ok && slice0.coefficient(k) == 1;
    k.q24 = 48;
    ok = ok && slice0.coefficient(k) == -24;
    rep.add(make_report("leech-slice-delta", "Leech", "q <= 2", ok, witness, t.stop()));
  }
  {
    Timer t;
    auto theta = theta_lattice(m.lattice, 2, ctx, opt.enumeration, opt.use_cache);
    auto slice1 = B.slice(1);
    std::string witness;
    bool ok = series_equal(slice1, -theta.series, &witness);
    Rat norm4 = 0;
    for (const auto& [k, v] : slice1.terms())
      if (k.q24 == 48) norm4 += v;
    ok = ok && norm4 == -196560;
    rep.add(make_report("leech-slice-theta", "Leech", "q <= 2",
                        ok, "norm-4 tally " + rat_string(-norm4), t.stop()));
  }
  rep.total_seconds = total.stop();
  return rep;
}

SuiteReport phi2_suite(const SuiteOptions&) {
  SuiteReport rep;
  Timer total;
  const long q24 = 72, s24 = 36;
  {
    Timer t;
    auto phi = phi0_4a1(2);
    bool ok = true;
    std::ostringstream os;
    // the q^0 row must be exactly r_1 + ... + 4 + ... + r_4^{-1}
    long zero = 0, units = 0, other = 0;
    for (const auto& [k, v] : phi.series.terms()) {
      if (k.q24 != 0) continue;
      bool is_unit = false;
      long nonzero = 0;
      for (int32_t e : k.ell) nonzero += (e != 0);
      if (nonzero == 0)
        zero = (v == 4) ? 1 : -1;
      else if (nonzero == 1 && v == 1)
        ++units, is_unit = true;
      if (nonzero > 0 && !is_unit) ++other;
    }
    ok = zero == 1 && units == 8 && other == 0;
    os << "f(0,0)=4 with " << units << " unit coefficients";
    rep.add(make_report("phi2-q0-row", "4A1", "q^0", ok, os.str(), t.stop()));
  }
  {
    Timer t;
    auto fourier = phi2_fourier(q24, s24);
    auto hecke = phi2_hecke_sum(q24, s24);
    std::string witness;
    bool ok = null_cone_supported(fourier) && null_cone_supported(hecke) &&
              series_equal(fourier.expansion, hecke.expansion, &witness);
    rep.add(make_report("phi2-fourier-vs-hecke", "4A1", "q <= 3, s <= 3/2", ok, witness,
                        t.stop()));
    Timer t2;
    auto phi = phi0_4a1(3);
    auto B = product_direct(phi, 3, 1);
    MultiSeries prod = B.expansion.truncated(TruncationPolicy{q24, s24});
    prod.set_policy(TruncationPolicy{q24, s24});
    ok = series_equal(fourier.expansion, prod, &witness);
    rep.add(make_report("phi2-vs-product", "4A1", "q <= 3, s <= 3/2, full multivariate",
                        ok, witness, t2.stop()));
  }
  rep.total_seconds = total.stop();
  return rep;
}

SuiteReport properties_suite(const SuiteOptions& opt) {
  SuiteReport rep;
  Timer total;
  {
    Timer t;
    auto e8 = root_lattice('E', 8);
    auto th = theta_lattice(e8, 2, lattice_context(e8), opt.enumeration, false);
    bool ok = validate_jacobi(th, Species::Holomorphic).pass &&
              theta_decomposition_check(th).pass;
    const CuspModel& m = cusp_model("24A1");
    auto phi = weak_phi0("24A1", 0, lattice_context(m.lattice), opt.enumeration,
                         opt.use_cache);
    ok = ok && validate_jacobi(phi, Species::WeaklyHolomorphic).pass;
    auto phi4 = phi0_4a1(2);
    ok = ok && validate_jacobi(phi4, Species::Weak).pass &&
         theta_decomposition_check(phi4).pass;
    auto th4 = theta_4a1(48);
    ok = ok && validate_jacobi(th4, Species::Holomorphic).pass;
    rep.add(make_report("properties-symmetry-norm", "", "constructed expansions", ok,
                        "", t.stop()));
  }
  {
    Timer t;
    bool ok = true;
    auto phi4 = phi0_4a1(6);
    for (int mm : {2, 3}) {
      auto a = hecke_vm(phi4, mm);
      auto b = hecke_vm_substitution(phi4, mm);
      ok = ok && a.series == b.series;
    }
    auto th4 = theta_4a1(24 * 9);
    auto a = hecke_vm(th4, 3);
    auto b = hecke_vm_substitution(th4, 3);
    ok = ok && a.series == b.series;
    rep.add(make_report("properties-hecke-forms", "", "m in {2,3}", ok, "", t.stop()));
  }
  {
    Timer t;
    const CuspModel& m = cusp_model("Leech");
    auto ctx = specialized_context(m.lattice, default_specialization(m, 1));
    auto phiL = weak_phi0("Leech", 1, ctx, opt.enumeration, opt.use_cache);
    auto BL = product_direct(phiL, 1, 1);
    auto repL = v_swap_check(BL, 24);
    auto phi4 = phi0_4a1(4);
    auto B4 = product_direct(phi4, 2, 2);
    auto rep4 = v_swap_check(B4, 48);
    bool ok = repL.pass && repL.parity == 1 && rep4.pass && rep4.parity == 0;
    rep.add(make_report("properties-v-swap", "", "computed D", ok,
                        repL.witness + rep4.witness, t.stop()));

    Timer t2;
    auto backL = fj_criterion(BL.slice(0), BL.slice(1));
    auto back4 = fj_criterion(B4.slice(0), B4.slice(1));
    std::string witness;
    ok = series_equal(backL, phiL.series, &witness) &&
         series_equal(back4, phi4.series, &witness);
    rep.add(make_report("properties-fj-roundtrip", "", "slices 0,1", ok, witness,
                        t2.stop()));
  }
  {
    Timer t;
    const CuspModel& m = cusp_model("24A1");
    auto phi = weak_phi0("24A1", 0, lattice_context(m.lattice), opt.enumeration,
                         opt.use_cache);
    const DualVector& root = m.roots.positive_roots.front();
    bool ok = divisor_multiplicity(phi, 0, root) == 1 &&
              divisor_multiplicity(phi, 0, root.scaled(Rat(2))) == 1;
    auto phi4 = phi0_4a1(1);
    DualVector omega1;
    omega1.num = {1, 0, 0, 0};
    omega1.den = 2;
    ok = ok && divisor_multiplicity(phi4, 0, omega1) == 1;
    rep.add(make_report("properties-multiplicity", "", "norm -2 walls", ok, "",
                        t.stop()));
  }
  rep.total_seconds = total.stop();
  return rep;
}

SuiteReport full_acceptance(const SuiteOptions& opt) {
  SuiteReport rep;
  std::vector<std::string> all(kCuspLabels.begin(), kCuspLabels.end());
  rep.merge(atlas_suite(all, opt));
  rep.merge(design_suite(opt));
  rep.merge(thm12_structural_suite(all, 2, opt));
  rep.merge(thm12_full_suite("24A1", opt));
  rep.merge(thm12_full_suite("12A2", opt));
  rep.merge(products_suite(opt));
  rep.merge(leech_suite(opt));
  rep.merge(phi2_suite(opt));
  rep.merge(properties_suite(opt));
  return rep;
}

std::string SuiteReport::to_json(bool with_timings, int indent) const {
  nlohmann::ordered_json j;
  j["schema"] = "bpx-report v1";
  j["overall"] = pass() ? "pass" : "fail";
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["check"] = c.check;
    if (!c.cusp.empty()) e["cusp"] = c.cusp;
    e["policy"] = c.policy;
    e["status"] = c.status;
    if (!c.witness.empty()) e["witnesses"] = nlohmann::ordered_json::array({c.witness});
    if (!c.sign.empty()) e["sign"] = c.sign;
    if (with_timings) e["seconds"] = c.seconds;
    arr.push_back(e);
  }
  j["checks"] = arr;
  if (with_timings) j["total-seconds"] = total_seconds;
  return j.dump(indent);
}

std::string SuiteReport::to_text(bool with_timings) const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.ok() ? "[PASS] " : "[FAIL] ") << c.check;
    if (!c.cusp.empty()) os << " " << c.cusp;
    if (!c.policy.empty()) os << " (" << c.policy << ")";
    if (!c.sign.empty()) os << " sign " << c.sign;
    if (!c.witness.empty()) os << " -- " << c.witness;
    if (with_timings) os << " [" << c.seconds << "s]";
    os << "\n";
  }
  os << (pass() ? "overall: pass" : "overall: FAIL") << "\n";
  return os.str();
}

}  // namespace bpx
