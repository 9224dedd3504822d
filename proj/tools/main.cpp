// Command-line front end: exact adelic arithmetic, heights of points and
// monomial curves, metric perturbation checks, and equidistribution
// experiments with CSV output.

#include <CLI11.hpp>

#include <complex>
#include <iostream>
#include <set>

#include "adelab/adelic.hpp"
#include "adelab/config.hpp"
#include "adelab/constants.hpp"
#include "adelab/equidist.hpp"
#include "adelab/heights.hpp"
#include "adelab/measures.hpp"
#include "adelab/report.hpp"
#include "adelab/selfcheck.hpp"

using namespace adelab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitConfig = 3;

struct CommonOutput {
  std::string out_path;
  void emit(const std::string& content, const std::string& summary) const {
    if (!out_path.empty()) write_text_file(out_path, content);
    std::cout << summary << "\n";
  }
};

KeyValueConfig resolve_config(const std::string& config_path,
                              const std::vector<std::pair<std::string, std::string>>& overrides,
                              const std::set<std::string>& allowed) {
  KeyValueConfig cfg =
      config_path.empty() ? KeyValueConfig{} : KeyValueConfig::from_file(config_path);
  for (const auto& [k, v] : overrides) {
    if (!v.empty()) cfg.set(k, v);
  }
  cfg.require_known_keys(allowed);
  return cfg;
}

const std::set<std::string> kExperimentKeys = {
    "experiment.family",      "experiment.ambient",  "experiment.exponents",
    "experiment.schedule",    "experiment.moments",  "experiment.metric",
    "experiment.threads",     "experiment.seed",     "experiment.eta",
    "experiment.tolerance",   "experiment.avoid",    "experiment.dictionary",
    "quadrature.radial_order", "quadrature.radial_panels", "quadrature.angular_order",
    "quadrature.tolerance",   "quadrature.tail_mass", "output.path",
};

NetConfig net_from_config(const KeyValueConfig& cfg) {
  NetConfig net;
  std::string family = cfg.get_or("experiment.family", "points");
  if (family == "points" || family == "torsion-points") {
    net.family = NetConfig::Family::TorsionPoints;
  } else if (family == "curves" || family == "torsion-curves") {
    net.family = NetConfig::Family::TorsionMonomialCurves;
  } else {
    throw ConfigError("experiment.family must be points or curves");
  }
  net.ambient = std::stoi(cfg.get_or("experiment.ambient",
                                     net.family == NetConfig::Family::TorsionPoints ? "1" : "3"));
  if (net.family == NetConfig::Family::TorsionMonomialCurves) {
    net.exponents = parse_long_list(cfg.get_or("experiment.exponents", "0,1,2,3"));
    net.ambient = static_cast<int>(net.exponents.size()) - 1;
  }
  net.conductors = parse_schedule(cfg.get_or("experiment.schedule", "primes:200"));
  net.seed = std::stoull(cfg.get_or("experiment.seed", "2024"));
  if (auto avoid = cfg.get("experiment.avoid")) {
    // '|'-separated section specs ('lin:' uses ';' internally)
    std::string cur;
    for (char ch : *avoid + "|") {
      if (ch == '|') {
        if (!cur.empty()) net.avoid_hypersurfaces.push_back(SectionSpec::parse(cur, net.ambient));
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
  }
  return net;
}

int cmd_product_check(const std::string& field, std::uint64_t q, int count, long bound,
                      int degree, std::uint64_t seed, const CommonOutput& out) {
  SplitMix64 rng(seed);
  KeyValueConfig prov;
  prov.set("product.field", field);
  prov.set("product.q", std::to_string(q));
  prov.set("product.count", std::to_string(count));
  prov.set("product.bound", std::to_string(bound));
  prov.set("product.degree", std::to_string(degree));
  prov.set("product.seed", std::to_string(seed));
  std::ostringstream csv;
  csv << "# " << prov.to_json() << "\n";
  csv << "index,element,float_defect,exact_zero\n";
  int exact_failures = 0;
  double worst = 0.0;
  if (field == "rat") {
    for (int i = 0; i < count; ++i) {
      Rat x(static_cast<long>(rng.below(static_cast<std::uint64_t>(bound))) + 1,
            static_cast<long>(rng.below(static_cast<std::uint64_t>(bound))) + 1);
      x.canonicalize();
      if (rng.below(2)) x = -x;
      double defect = product_formula_defect(x);
      bool exact = product_formula_exact(x);
      exact_failures += exact ? 0 : 1;
      worst = std::max(worst, std::fabs(defect));
      csv << i << "," << x.get_str() << "," << format_double17(defect) << ","
          << (exact ? 1 : 0) << "\n";
    }
  } else if (field == "ff") {
    std::uint64_t p = q;
    int e = 1;
    for (std::uint64_t c = 2; c * c <= q; ++c) {
      if (q % c == 0) {
        p = c;
        e = 0;
        std::uint64_t acc = 1;
        while (acc < q) {
          acc *= c;
          ++e;
        }
        break;
      }
    }
    auto ctx = FqContext::get(p, e);
    for (int i = 0; i < count; ++i) {
      std::vector<long> nc(1 + rng.below(static_cast<std::uint64_t>(degree)));
      std::vector<long> dc(1 + rng.below(static_cast<std::uint64_t>(degree)));
      for (auto& c : nc) c = static_cast<long>(rng.below(p));
      for (auto& c : dc) c = static_cast<long>(rng.below(p));
      nc.push_back(1);
      dc.push_back(1);
      FqPoly num = FqPoly::from_ints(ctx, nc);
      FqPoly den = FqPoly::from_ints(ctx, dc);
      Int layer = product_formula_integer_layer(num, den);
      bool exact = layer == 0;
      exact_failures += exact ? 0 : 1;
      double defect = product_formula_defect(num, den);
      worst = std::max(worst, std::fabs(defect));
      csv << i << "," << num.to_string() << "/" << den.to_string() << ","
          << format_double17(defect) << "," << (exact ? 1 : 0) << "\n";
    }
  } else {
    throw ConfigError("product-check: --field must be rat or ff");
  }
  std::ostringstream summary;
  summary << "product-check " << field << ": " << count << " elements, worst |defect| = "
          << format_double17(worst) << ", exact failures = " << exact_failures;
  out.emit(csv.str(), summary.str());
  return (exact_failures == 0 && worst < 1e-12) ? kExitOk : kExitNumeric;
}

int cmd_height(const std::string& metric, const std::string& point, bool orbit_mode,
               const CommonOutput& out) {
  ProjectivePoint p = parse_point(point);
  MetricFamily m = parse_metric(metric, p.ambient_dim());
  GaloisOrbit orbit = galois_orbit(p);
  HeightValue h = height_point(m, orbit);
  std::string json = height_value_json(h);
  std::ostringstream summary;
  if (orbit_mode) {
    summary << "orbit size " << orbit.size() << ", height " << format_double17(h.total) << "  "
            << json;
  } else {
    summary << format_double17(h.total) << "  " << json;
  }
  out.emit(json + "\n", summary.str());
  return kExitOk;
}

int cmd_curve_height(const std::string& metric, const std::string& exponents, long conductor,
                     const std::string& zeta_powers, const KeyValueConfig& qcfg,
                     const CommonOutput& out) {
  std::vector<long> exps = parse_long_list(exponents);
  std::vector<long> powers;
  if (!zeta_powers.empty()) powers = parse_long_list(zeta_powers);
  MonomialCurve c = make_torsion_translate(exps, conductor, powers);
  MetricFamily m = parse_metric(metric, c.ambient);
  QuadratureConfig quad = quadrature_from_config(qcfg);
  HeightValue h = curve_height(m, c, quad);
  std::ostringstream summary;
  summary << format_double17(h.total);
  if (m.kind() == MetricFamily::Kind::FubiniStudy && exps == std::vector<long>{0, 1, 2, 3}) {
    summary << "  reference " << format_double17(reference::veronese_fs_height())
            << "  abs error "
            << format_double17(std::fabs(h.total - reference::veronese_fs_height()));
  }
  out.emit(height_value_json(h) + "\n", summary.str());
  return kExitOk;
}

int cmd_perturb_check(const std::string& base_metric, const std::string& f_expr,
                      const std::string& t_str, const std::string& point,
                      const std::string& exponents, long conductor, double exact_tol,
                      double quad_tol, const KeyValueConfig& qcfg, const CommonOutput& out) {
  Rat t(t_str);
  t.canonicalize();
  auto v = Place::rational_archimedean();
  auto f = ElementaryFunction::parse(f_expr);
  KeyValueConfig prov;
  prov.set("perturb.metric", base_metric);
  prov.set("perturb.f", f_expr);
  prov.set("perturb.t", t.get_str());
  std::ostringstream report;
  report << "# " << prov.to_json() << "\n";
  std::ostringstream summary;
  if (!point.empty()) {
    ProjectivePoint p = parse_point(point);
    MetricFamily base = parse_metric(base_metric, p.ambient_dim());
    MetricFamily pert = MetricFamily::perturbed(base, v, f, t);
    GaloisOrbit orbit = galois_orbit(p);
    double favg = 0.0;
    for (const auto& member : orbit.members) {
      Eigen::VectorXcd x(member.ambient_dim() + 1);
      for (int i = 0; i <= member.ambient_dim(); ++i) {
        x[i] = member.field() == CoordField::Rational
                   ? std::complex<double>(member.rational_coords()[static_cast<std::size_t>(i)]
                                              .get_d())
                   : member.cyclotomic_coords()[static_cast<std::size_t>(i)].embed(1);
      }
      favg += f.eval(x);
    }
    favg /= static_cast<double>(orbit.size());
    double h0 = height_point(base, orbit).total;
    double h1 = height_point(pert, orbit).total;
    double residual = h1 - (h0 + t.get_d() * favg);
    report << "base_height,perturbed_height,orbit_avg_f,linear_residual\n"
           << format_double17(h0) << "," << format_double17(h1) << "," << format_double17(favg)
           << "," << format_double17(residual) << "\n";
    summary << "point linear response residual " << format_double17(residual);
    out.emit(report.str(), summary.str());
    return std::fabs(residual) < exact_tol ? kExitOk : kExitNumeric;
  }
  std::vector<long> exps = parse_long_list(exponents);
  MonomialCurve c = make_torsion_translate(exps, conductor);
  MetricFamily base = parse_metric(base_metric, c.ambient);
  QuadratureConfig quad = quadrature_from_config(qcfg);
  double delta = std::fabs(t.get_d());
  if (delta == 0.0) throw ConfigError("perturb-check: t must be nonzero for curves");
  std::vector<double> hs;
  report << "t,height\n";
  for (int step = -2; step <= 2; ++step) {
    Rat tt = t * step;
    tt.canonicalize();
    MetricFamily m = step == 0 ? base : MetricFamily::perturbed(base, v, f, tt);
    double h = curve_height(m, c, quad).total;
    hs.push_back(h);
    report << tt.get_str() << "," << format_double17(h) << "\n";
  }
  double cubic = hs[4] - 2 * hs[3] + 2 * hs[1] - hs[0];
  double lin_fit = (8.0 * (hs[3] - hs[1]) - (hs[4] - hs[0])) / (12.0 * delta);
  double lin_quad = 2.0 * curve_integral(base, c, f, quad);
  report << "# cubic_residual = " << format_double17(cubic) << "\n";
  report << "# linear_fit = " << format_double17(lin_fit) << ", 2*int_f_dmu = "
         << format_double17(lin_quad) << "\n";
  summary << "curve quadratic fit: cubic residual " << format_double17(cubic)
          << ", linear gap " << format_double17(lin_fit - lin_quad);
  out.emit(report.str(), summary.str());
  return (std::fabs(cubic) < 1e-6 && std::fabs(lin_fit - lin_quad) < quad_tol) ? kExitOk
                                                                               : kExitNumeric;
}

int cmd_equidist(const KeyValueConfig& cfg, const CommonOutput& out) {
  NetConfig net = net_from_config(cfg);
  MetricFamily m = parse_metric(cfg.get_or("experiment.metric", "canonical"), net.ambient);
  auto moments = parse_moment_list(cfg.get_or("experiment.moments", "0,1"));
  for (const auto& a : moments) {
    if (static_cast<int>(a.size()) != net.ambient + 1) {
      throw ConfigError("equidist: each moment vector needs ambient+1 entries");
    }
  }
  int threads = std::stoi(cfg.get_or("experiment.threads", "1"));
  QuadratureConfig quad = quadrature_from_config(cfg);
  auto res = run_equidistribution_experiment(net, m, moments, threads, quad);
  std::string csv = experiment_csv(res, cfg.to_json());
  double worst = 0.0;
  for (const auto& row : res.rows) worst = std::max(worst, row.abs_error);
  std::ostringstream summary;
  summary << "equidist " << net.family_name() << ": " << net.conductors.size() << " members, "
          << res.rows.size() << " rows, worst |moment - oracle| = " << format_double17(worst);
  out.emit(csv, summary.str());
  return kExitOk;
}

int cmd_minima_scan(const KeyValueConfig& cfg, const CommonOutput& out) {
  NetConfig net = net_from_config(cfg);
  MetricFamily m = parse_metric(cfg.get_or("experiment.metric", "canonical"), net.ambient);
  double eta = std::stod(cfg.get_or("experiment.eta", "0"));
  int threads = std::stoi(cfg.get_or("experiment.threads", "1"));
  QuadratureConfig quad = quadrature_from_config(cfg);
  auto res = run_equidistribution_experiment(net, m, {{std::vector<long>(net.ambient + 1, 0)}},
                                             threads, quad);
  std::vector<MinimaCandidate> candidates;
  std::ostringstream csv;
  csv << "# " << cfg.to_json() << "\n";
  csv << "N,degree,functional_value,selected\n";
  for (const auto& row : res.rows) {
    candidates.push_back({"N=" + std::to_string(row.conductor), row.smallness_value, 1.0});
  }
  auto selected = minima_filter(candidates, eta);
  std::set<std::string> chosen;
  for (const auto& c : selected) chosen.insert(c.label);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    csv << res.rows[i].conductor << "," << format_double17(res.rows[i].degree) << ","
        << format_double17(candidates[i].functional_value) << ","
        << (chosen.count(candidates[i].label) ? 1 : 0) << "\n";
  }
  std::ostringstream summary;
  summary << "minima-scan: " << selected.size() << "/" << candidates.size()
          << " members pass eta = " << eta;
  out.emit(csv.str(), summary.str());
  return kExitOk;
}

int cmd_zhang_scan(const KeyValueConfig& cfg, const CommonOutput& out) {
  NetConfig net = net_from_config(cfg);
  MetricFamily m = parse_metric(cfg.get_or("experiment.metric", "canonical"), net.ambient);
  double tol = std::stod(cfg.get_or("experiment.tolerance", "1e-9"));
  int threads = std::stoi(cfg.get_or("experiment.threads", "1"));
  QuadratureConfig quad = quadrature_from_config(cfg);
  auto res = run_equidistribution_experiment(net, m, {{std::vector<long>(net.ambient + 1, 0)}},
                                             threads, quad);
  double estimate = std::numeric_limits<double>::infinity();
  for (const auto& row : res.rows) estimate = std::min(estimate, row.smallness_value);
  double ref = 0.0;
  if (m.base_kind() == MetricFamily::Kind::FubiniStudy) {
    ref = fs_normalized_height_projective_space_exact(net.ambient).get_d();
  }
  auto z = zhang_check(estimate, ref, tol);
  std::ostringstream csv;
  csv << "# " << cfg.to_json() << "\n";
  csv << "estimate,reference,tolerance,verdict\n"
      << format_double17(z.estimate) << "," << format_double17(z.reference) << ","
      << format_double17(z.tolerance) << "," << z.verdict << "\n";
  std::ostringstream summary;
  summary << "zhang-scan: estimate " << format_double17(estimate) << " vs reference "
          << format_double17(ref) << " -> " << z.verdict;
  out.emit(csv.str(), summary.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale laboratory for adelic heights and equidistribution"};
  app.require_subcommand(1);

  // product-check
  auto* pc = app.add_subcommand("product-check", "product formula on random field elements");
  std::string pc_field = "rat";
  std::uint64_t pc_q = 2;
  int pc_count = 1000;
  long pc_bound = 1000000;
  int pc_degree = 12;
  std::uint64_t pc_seed = 2024;
  CommonOutput pc_out;
  pc->add_option("--field", pc_field, "rat | ff");
  pc->add_option("--q", pc_q, "constant field size for ff");
  pc->add_option("--count", pc_count);
  pc->add_option("--bound", pc_bound, "numerator/denominator bound over Q");
  pc->add_option("--degree", pc_degree, "degree bound over F_q(t)");
  pc->add_option("--seed", pc_seed);
  pc->add_option("--out", pc_out.out_path);

  // height / orbit-height
  std::string h_metric = "canonical", h_point;
  CommonOutput h_out;
  auto* hc = app.add_subcommand("height", "height of a point");
  hc->add_option("--metric", h_metric);
  hc->add_option("--point", h_point)->required();
  hc->add_option("--out", h_out.out_path);
  auto* oh = app.add_subcommand("orbit-height", "Galois orbit and its height");
  std::string oh_metric = "canonical", oh_point;
  CommonOutput oh_out;
  oh->add_option("--metric", oh_metric);
  oh->add_option("--point", oh_point)->required();
  oh->add_option("--out", oh_out.out_path);

  // curve-height
  auto* ch = app.add_subcommand("curve-height", "height of a torsion-translated monomial curve");
  std::string ch_metric = "fs", ch_exps = "0,1,2,3", ch_zeta;
  long ch_conductor = 1;
  CommonOutput ch_out;
  std::string ch_config;
  ch->add_option("--metric", ch_metric);
  ch->add_option("--exponents", ch_exps);
  ch->add_option("--conductor", ch_conductor);
  ch->add_option("--zeta-powers", ch_zeta, "powers of zeta_N for the translate");
  ch->add_option("--out", ch_out.out_path);
  ch->add_option("--config", ch_config, "quadrature config file");

  // perturb-check
  auto* pch = app.add_subcommand("perturb-check", "height response to a metric perturbation");
  std::string pch_metric = "fs", pch_f = "re:0,1", pch_t = "1/8", pch_point, pch_exps;
  long pch_conductor = 4;
  double pch_exact_tol = 1e-12, pch_quad_tol = 1e-3;
  std::string pch_config;
  CommonOutput pch_out;
  pch->add_option("--metric", pch_metric, "base metric");
  pch->add_option("--f", pch_f, "elementary function expression");
  pch->add_option("--t", pch_t, "rational perturbation size");
  pch->add_option("--point", pch_point);
  pch->add_option("--exponents", pch_exps, "curve exponents (curve mode)");
  pch->add_option("--conductor", pch_conductor);
  pch->add_option("--exact-tol", pch_exact_tol, "tolerance for the exact linear law");
  pch->add_option("--quad-tol", pch_quad_tol, "tolerance for quadrature targets");
  pch->add_option("--out", pch_out.out_path);
  pch->add_option("--config", pch_config);

  // experiment subcommands share config + overrides
  struct ExpArgs {
    std::string config, family, ambient, exponents, schedule, moments, metric, threads, seed,
        eta, tolerance, avoid;
    CommonOutput out;
  };
  auto add_experiment_options = [](CLI::App* sub, ExpArgs& a) {
    sub->add_option("--config", a.config, "key = value config file");
    sub->add_option("--family", a.family, "points | curves");
    sub->add_option("--ambient", a.ambient);
    sub->add_option("--exponents", a.exponents);
    sub->add_option("--schedule", a.schedule, "list:... | primes:B | primes:B:K");
    sub->add_option("--moments", a.moments, "semicolon-separated integer vectors");
    sub->add_option("--metric", a.metric);
    sub->add_option("--threads", a.threads);
    sub->add_option("--seed", a.seed);
    sub->add_option("--eta", a.eta);
    sub->add_option("--tolerance", a.tolerance);
    sub->add_option("--avoid", a.avoid, "'|'-separated section specs");
    sub->add_option("--out", a.out.out_path);
  };
  ExpArgs eq_args, mi_args, zh_args;
  auto* eq = app.add_subcommand("equidist", "Galois-cycle equidistribution experiment");
  add_experiment_options(eq, eq_args);
  auto* mi = app.add_subcommand("minima-scan", "smallness functional scan with a sublevel filter");
  add_experiment_options(mi, mi_args);
  auto* zh = app.add_subcommand("zhang-scan", "net estimate against the ambient height");
  add_experiment_options(zh, zh_args);

  auto* st = app.add_subcommand("selftest", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  }

  auto experiment_config = [&](const ExpArgs& a) {
    return resolve_config(a.config,
                          {{"experiment.family", a.family},
                           {"experiment.ambient", a.ambient},
                           {"experiment.exponents", a.exponents},
                           {"experiment.schedule", a.schedule},
                           {"experiment.moments", a.moments},
                           {"experiment.metric", a.metric},
                           {"experiment.threads", a.threads},
                           {"experiment.seed", a.seed},
                           {"experiment.eta", a.eta},
                           {"experiment.tolerance", a.tolerance},
                           {"experiment.avoid", a.avoid},
                           {"output.path", a.out.out_path}},
                          kExperimentKeys);
  };

  try {
    if (pc->parsed()) {
      return cmd_product_check(pc_field, pc_q, pc_count, pc_bound, pc_degree, pc_seed, pc_out);
    }
    if (hc->parsed()) return cmd_height(h_metric, h_point, false, h_out);
    if (oh->parsed()) return cmd_height(oh_metric, oh_point, true, oh_out);
    if (ch->parsed()) {
      KeyValueConfig qcfg = ch_config.empty() ? KeyValueConfig{}
                                              : KeyValueConfig::from_file(ch_config);
      return cmd_curve_height(ch_metric, ch_exps, ch_conductor, ch_zeta, qcfg, ch_out);
    }
    if (pch->parsed()) {
      KeyValueConfig qcfg = pch_config.empty() ? KeyValueConfig{}
                                               : KeyValueConfig::from_file(pch_config);
      return cmd_perturb_check(pch_metric, pch_f, pch_t, pch_point, pch_exps, pch_conductor,
                               pch_exact_tol, pch_quad_tol, qcfg, pch_out);
    }
    if (eq->parsed()) {
      auto cfg = experiment_config(eq_args);
      CommonOutput out;
      out.out_path = cfg.get_or("output.path", "");
      return cmd_equidist(cfg, out);
    }
    if (mi->parsed()) {
      auto cfg = experiment_config(mi_args);
      CommonOutput out;
      out.out_path = cfg.get_or("output.path", "");
      return cmd_minima_scan(cfg, out);
    }
    if (zh->parsed()) {
      auto cfg = experiment_config(zh_args);
      CommonOutput out;
      out.out_path = cfg.get_or("output.path", "");
      return cmd_zhang_scan(cfg, out);
    }
    if (st->parsed()) {
      auto results = run_acceptance_suite();
      std::cout << acceptance_report(results);
      return acceptance_all_pass(results) ? kExitOk : kExitNumeric;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << " (estimates " << e.estimate_coarse << ", "
              << e.estimate_fine << ")\n";
    return kExitNumeric;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitConfig;
}
