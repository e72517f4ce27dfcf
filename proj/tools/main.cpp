// bpx -- atlas inspection, expansion jobs, verification suites and cache
// management for Borcherds products over the 24-cusp atlas.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bpx/cache.hpp"
#include "bpx/errors.hpp"
#include "bpx/suites.hpp"

using namespace bpx;

namespace {

struct GlobalOpts {
  std::string format = "json";
  int workers = 0;
  std::string cache_dir;
  bool timings = false;
  std::string out;
};

SuiteOptions suite_options(const GlobalOpts& g) {
  SuiteOptions o;
  o.enumeration.workers = g.workers > 0 ? g.workers : 2;
  o.use_cache = !cache_directory().empty();
  return o;
}

void emit(const GlobalOpts& g, const std::string& payload) {
  if (g.out.empty()) {
    std::cout << payload << "\n";
  } else {
    std::ofstream f(g.out);
    f << payload << "\n";
  }
}

int report_exit(const SuiteReport& rep) { return rep.pass() ? 0 : 1; }

std::vector<std::vector<long>> parse_specialization(const std::string& spec,
                                                    const CuspModel& model) {
  if (spec == "none") return {};
  if (spec == "auto") return default_specialization(model, 1);
  if (spec == "auto2") return default_specialization(model, 2);
  std::vector<std::vector<long>> out;
  std::istringstream rows(spec);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::vector<long> u;
    std::istringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, ',')) u.push_back(std::stol(cell));
    if (static_cast<int>(u.size()) != model.lattice->rank())
      throw ConfigError("specialization vector has wrong length");
    out.push_back(std::move(u));
  }
  return out;
}

int cmd_atlas(const GlobalOpts& g, const std::string& cusp, bool all) {
  std::vector<std::string> labels;
  if (all) {
    labels.assign(kCuspLabels.begin(), kCuspLabels.end());
  } else {
    if (!is_cusp_label(cusp)) throw ConfigError("unknown cusp label: " + cusp);
    labels.push_back(cusp);
  }
  auto rep = atlas_suite(labels, suite_options(g));
  emit(g, g.format == "json" ? rep.to_json(g.timings) : rep.to_text(g.timings));
  return report_exit(rep);
}

int cmd_expand(const GlobalOpts& g, const std::string& cusp, const std::string& lattice,
               const std::string& what, long q, const std::string& s,
               const std::string& spec) {
  SuiteOptions opt = suite_options(g);
  long s24 = 0;
  if (!s.empty()) {
    Rat sr = rat_parse(s) * 24;
    if (!is_integer(sr)) throw ConfigError("--s must be a multiple of 1/24");
    s24 = sr.get_num().get_si();
  }

  if (lattice == "4A1" || (cusp.empty() && what == "phi2")) {
    if (what == "phi2") {
      auto lift = phi2_fourier(24 * q, s24 ? s24 : 12 * std::max(1L, q / 2 * 2 - 1));
      emit(g, lift.expansion.to_json(2));
      return 0;
    }
    if (what == "phi0") {
      emit(g, jacobi_to_json(phi0_4a1(static_cast<int>(q))));
      return 0;
    }
    if (what == "theta") {
      emit(g, jacobi_to_json(theta_4a1(24 * q)));
      return 0;
    }
    if (what == "theta-block") {
      auto phi = phi0_4a1(1);
      emit(g, jacobi_to_json(theta_block(phi, phi.series.context(), 24 * q)));
      return 0;
    }
    if (what == "product" || what == "product-hecke") {
      long s_rel = s24 ? (s24 - 12) / 24 : 1;
      auto phi = phi0_4a1(static_cast<int>(product_table_requirement(q, s_rel)));
      auto B = what == "product" ? product_direct(phi, q, s_rel)
                                 : product_hecke(phi, q, s_rel);
      emit(g, B.expansion.to_json(2));
      return 0;
    }
    throw ConfigError("unknown --what for the 4A1 lattice: " + what);
  }

  if (!is_cusp_label(cusp)) throw ConfigError("unknown cusp label: " + cusp);
  const CuspModel& model = cusp_model(cusp);
  auto u = parse_specialization(spec, model);
  ContextPtr ctx = u.empty() ? lattice_context(model.lattice)
                             : specialized_context(model.lattice, u);
  if (what == "theta") {
    emit(g, jacobi_to_json(theta_lattice(model.lattice, static_cast<int>(q), ctx,
                                         opt.enumeration, opt.use_cache)));
    return 0;
  }
  if (what == "phi0") {
    emit(g, jacobi_to_json(weak_phi0(cusp, static_cast<int>(q), ctx, opt.enumeration,
                                     opt.use_cache)));
    return 0;
  }
  if (what == "theta-block" || what == "denominator") {
    auto phi = weak_phi0(cusp, 0, lattice_context(model.lattice), opt.enumeration,
                         opt.use_cache);
    if (what == "theta-block") {
      emit(g, jacobi_to_json(theta_block(phi, ctx, 24 * q)));
    } else {
      emit(g, jacobi_to_json(affine_denominator(model.roots, model.lattice, ctx,
                                                24 * q)));
    }
    return 0;
  }
  if (what == "product" || what == "product-hecke") {
    long s_rel = s24 ? s24 / 24 : 1;
    int table = static_cast<int>(product_table_requirement(q, s_rel));
    auto phi = weak_phi0(cusp, table, ctx, opt.enumeration, opt.use_cache);
    auto B = what == "product" ? product_direct(phi, q, s_rel)
                               : product_hecke(phi, q, s_rel);
    emit(g, B.expansion.to_json(2));
    return 0;
  }
  throw ConfigError("unknown --what: " + what);
}

int cmd_verify(const GlobalOpts& g, const std::string& suite, const std::string& cusp,
               long q, const std::string& tier) {
  SuiteOptions opt = suite_options(g);
  SuiteReport rep;
  std::vector<std::string> all(kCuspLabels.begin(), kCuspLabels.end());
  std::vector<std::string> targets = cusp.empty() ? all : std::vector<std::string>{cusp};
  if (suite == "atlas") {
    rep = atlas_suite(targets, opt);
  } else if (suite == "design") {
    rep = design_suite(opt);
  } else if (suite == "thm12") {
    if (tier == "full") {
      std::vector<std::string> full_targets =
          cusp.empty() ? std::vector<std::string>{"24A1", "12A2"} : targets;
      for (const auto& label : full_targets) rep.merge(thm12_full_suite(label, opt));
    } else {
      rep = thm12_structural_suite(targets, q > 0 ? q : 2, opt);
    }
  } else if (suite == "products") {
    rep = products_suite(opt);
  } else if (suite == "leech") {
    rep = leech_suite(opt);
  } else if (suite == "phi2") {
    rep = phi2_suite(opt);
  } else if (suite == "properties") {
    rep = properties_suite(opt);
  } else if (suite == "all") {
    rep = full_acceptance(opt);
  } else {
    throw ConfigError("unknown suite: " + suite);
  }
  emit(g, g.format == "json" ? rep.to_json(g.timings) : rep.to_text(g.timings));
  return report_exit(rep);
}

int cmd_cache(const GlobalOpts& g, const std::string& action) {
  std::ostringstream os;
  if (action == "list" || action == "validate") {
    auto entries = cache_list(action == "validate");
    os << "[";
    bool first = true;
    for (const auto& e : entries) {
      if (!first) os << ",";
      first = false;
      os << "\n  {\"file\": \"" << e.file << "\", \"valid\": " << (e.valid ? "true" : "false");
      if (!e.reason.empty()) os << ", \"reason\": \"" << e.reason << "\"";
      os << ", \"rank\": " << e.rank << ", \"maxNorm\": " << e.max_norm
         << ", \"entries\": " << e.entries << "}";
    }
    os << (entries.empty() ? "]" : "\n]");
    if (action == "validate") {
      auto q = cache_quarantine();
      os << "\nquarantined: " << q.size();
    }
  } else if (action == "gc") {
    os << "removed: " << cache_gc();
  } else {
    throw ConfigError("unknown cache action: " + action);
  }
  emit(g, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Borcherds-product engine for the 24-cusp atlas"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOpts g;
  app.add_option("--format", g.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--workers", g.workers, "enumeration worker threads");
  app.add_option("--cache-dir", g.cache_dir, "override BPX_CACHE_DIR");
  app.add_flag("--timings", g.timings, "include timings in reports");
  app.add_option("--out", g.out, "write output to a file");

  auto* atlas = app.add_subcommand("atlas", "inspect the 24-cusp atlas");
  std::string atlas_cusp;
  bool atlas_all = false;
  atlas->add_option("--cusp", atlas_cusp, "cusp label");
  atlas->add_flag("--all", atlas_all, "all 24 cusps");

  auto* expand = app.add_subcommand("expand", "write an expansion as series JSON");
  std::string e_cusp, e_lattice, e_what = "phi0", e_s, e_spec = "auto";
  long e_q = 1;
  expand->add_option("--cusp", e_cusp, "cusp label");
  expand->add_option("--lattice", e_lattice, "non-cusp lattice (4A1)");
  expand->add_option("--what", e_what,
                     "phi0|theta|theta-block|denominator|product|product-hecke|phi2");
  expand->add_option("--q", e_q, "q-order (relative for blocks and products)");
  expand->add_option("--s", e_s, "s-order, rational (e.g. 3/2)");
  expand->add_option("--specialize", e_spec, "none|auto|auto2|c1,..,cn[;d1,..,dn]");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::string v_suite = "all", v_cusp, v_tier = "structural";
  long v_q = 0;
  verify->add_option("suite", v_suite,
                     "atlas|design|thm12|products|leech|phi2|properties|all");
  verify->add_option("--cusp", v_cusp, "restrict to one cusp");
  verify->add_option("--q", v_q, "relative q-orders for structural checks");
  verify->add_option("--tier", v_tier, "structural|full");

  auto* cache = app.add_subcommand("cache", "enumeration cache maintenance");
  std::string c_action = "list";
  cache->add_option("action", c_action, "list|validate|gc");

  CLI11_PARSE(app, argc, argv);
  if (!g.cache_dir.empty()) setenv("BPX_CACHE_DIR", g.cache_dir.c_str(), 1);

  try {
    if (*atlas) return cmd_atlas(g, atlas_cusp, atlas_all);
    if (*expand) return cmd_expand(g, e_cusp, e_lattice, e_what, e_q, e_s, e_spec);
    if (*verify) return cmd_verify(g, v_suite, v_cusp, v_q, v_tier);
    if (*cache) return cmd_cache(g, c_action);
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what();
    if (e.needed_norm) std::cerr << " (needs enumeration to norm " << e.needed_norm << ")";
    std::cerr << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
