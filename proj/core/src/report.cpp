#include "t2hilb/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "t2hilb/hilbert.hpp"
#include "t2hilb/io.hpp"
#include "t2hilb/oracle.hpp"

namespace t2hilb {

using nlohmann::json;

namespace {

WeightMatrix mat(const std::string& text) { return WeightMatrix::parse(text); }

const char* kExample21A = "-1 0 -1; 0 -1 -1";
const char* kExample21B = "-1 0 1; 0 -1 1";
const char* kExample23A = "2 1 4; 1 -1 1";
const char* kExample23B = "4 1 6; 1 1 1";
const char* kFlagship = "1 2 3 4 5; 0 1 2 2 1";
const char* kNoGeneric = "1 1 1; 0 1 1";
const char* kKappaProbe = "1 3 4; 0 1 2";

HilbertSeries flagship_expected() {
  std::vector<long> n = {1,   0,   3,   3,   7,   11,  19,  31,  47,  68,  92,  121,
                         153, 188, 232, 273, 318, 359, 393, 426, 454, 475, 491, 496,
                         491, 475, 454, 426, 393, 359, 318, 273, 232, 188, 153, 121,
                         92,  68,  47,  31,  19,  11,  7,   3,   3,   0,   1};
  std::vector<Rat> coeffs(n.begin(), n.end());
  return HilbertSeries(Poly(std::move(coeffs)),
                       {{3, 1}, {4, 1}, {9, 1}, {10, 1}, {11, 1}, {15, 1}});
}

std::string support_str(const ShellSupport& s) {
  std::string out = "{";
  bool first = true;
  for (int i : s.columns) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(i + 1);  // columns are reported 1-based
  }
  return out + "}";
}

std::string log_str(const BasisChangeLog& log) {
  std::string out;
  for (const BasisMove& m : log.moves) {
    if (!out.empty()) out += "; ";
    switch (m.kind) {
      case BasisMove::Kind::add_row2_to_row1: out += "row1 += " + m.k.get_str() + "*row2"; break;
      case BasisMove::Kind::swap_rows: out += "swap rows"; break;
      case BasisMove::Kind::negate_row1: out += "negate row1"; break;
      case BasisMove::Kind::negate_row2: out += "negate row2"; break;
      case BasisMove::Kind::flip_columns: {
        out += "flip columns {";
        for (size_t i = 0; i < m.columns.size(); ++i)
          out += (i ? "," : "") + std::to_string(m.columns[i] + 1);
        out += "}";
        break;
      }
    }
  }
  return out.empty() ? "none" : out;
}

json series_json(const HilbertSeries& H) { return json::parse(hilbert_series_to_json(H)); }

struct KappaDiscrimination {
  KappaVariant winner;
  bool unique;
  Rat exact, theorem_value, proof_value;
};

const KappaDiscrimination& kappa_discrimination() {
  static const KappaDiscrimination d = [] {
    WeightMatrix A = mat(kKappaProbe);
    LaurentExpansion exact = laurent_at_one(hilbert_on(A), 3);
    Gamma2Result th = gamma2(A, KappaVariant::theorem);
    Gamma2Result pr = gamma2(A, KappaVariant::proof);
    KappaDiscrimination out{KappaVariant::proof, false, exact.coefficients[2], th.value, pr.value};
    const bool th_ok = th.value == out.exact, pr_ok = pr.value == out.exact;
    out.unique = th_ok != pr_ok;
    out.winner = th_ok && !pr_ok ? KappaVariant::theorem : KappaVariant::proof;
    return out;
  }();
  return d;
}

}  // namespace

KappaVariant resolve_kappa(const std::string& name) {
  if (name == "theorem") return KappaVariant::theorem;
  if (name == "proof") return KappaVariant::proof;
  if (name == "auto") return kappa_discrimination().winner;
  fail(errc::parse_error, "gamma variant must be theorem, proof or auto");
}

namespace {

void check(std::vector<VerifyCheck>& out, const std::string& name, bool pass,
           const std::string& detail) {
  out.push_back({name, pass, false, detail});
}

void observe(std::vector<VerifyCheck>& out, const std::string& name, const std::string& detail) {
  out.push_back({name, true, true, detail});
}

// Exact-series comparison against the lattice-count oracle.
bool series_matches_oracle(const HilbertSeries& on, const WeightMatrix& A, int D,
                           std::string* detail) {
  OracleSeries os = oracle_series(A, D);
  std::vector<Rat> coeffs = on.power_series(D);
  for (int d = 0; d <= D; ++d)
    if (coeffs[d] != Rat(os.on[d])) {
      *detail = "degree " + std::to_string(d) + ": series " + coeffs[d].get_str() +
                " vs oracle " + os.on[d].get_str();
      return false;
    }
  *detail = "degrees 0.." + std::to_string(D) + " agree";
  return true;
}

}  // namespace

std::vector<VerifyCheck> verify_battery(const WeightMatrix& A, int oracle_degree,
                                        int genericize_bound, KappaVariant variant,
                                        std::uint64_t seed) {
  std::vector<VerifyCheck> out;
  const HilbertOptions opt{genericize_bound};

  {
    ShellSupport s = shell_support(mat(kExample21A));
    check(out, "shell support [" + std::string(kExample21A) + "]",
          s.columns.empty() && !s.full, "support " + support_str(s) + "; quotient is a point");
    ShellSupport sb = shell_support(mat(kExample21B));
    check(out, "shell support [" + std::string(kExample21B) + "]",
          sb.columns == std::set<int>{0, 1, 2} && sb.full, "support " + support_str(sb));
  }
  {
    WeightMatrix a = mat(kExample23A), b = mat(kExample23B);
    GenericizeResult g = try_genericize(a, genericize_bound);
    check(out, "genericize [" + std::string(kExample23A) + "]", g.matrix.has_value(),
          g.matrix ? "found " + g.matrix->str() : "not found");
    HilbertSeries ha = hilbert_on(a, opt), hb = hilbert_on(b, opt);
    check(out, "series equality: Example 2.3 pair", ha == hb, ha == hb ? "identical" : "differ");
  }
  {
    HilbertSeries h = hilbert_on(mat(kFlagship), opt);
    bool ok = h == flagship_expected();
    check(out, "flagship 2x5 closed form", ok, ok ? "matches the printed series" : h.str());
    std::string detail;
    bool oracle_ok = series_matches_oracle(h, mat(kFlagship), std::min(oracle_degree, 20), &detail);
    check(out, "flagship 2x5 vs oracle", oracle_ok, detail);
  }
  {
    WeightMatrix ng = mat(kNoGeneric);
    GenericizeResult g = try_genericize(ng, genericize_bound);
    check(out, "obstruction [" + std::string(kNoGeneric) + "]",
          !g.matrix.has_value() && g.provably_impossible, "provably impossible");
    Gamma0Result g0 = gamma0(ng);
    PerturbationEstimate est = perturbation_gamma(ng, GammaKind::gamma0, 1e-3, 5, seed);
    double diff = std::abs(est.value - g0.value.get_d());
    check(out, "gamma0 u-method vs perturbation [" + std::string(kNoGeneric) + "]", diff <= 1e-4,
          "exact " + g0.value.get_str() + ", estimate spread " + std::to_string(est.spread));
  }
  {
    WeightMatrix pet = mat("1 2 3; 0 1 1");
    HilbertSeries h = hilbert_on(pet, opt);
    LaurentExpansion le = laurent_at_one(h, 3);
    Rat g0 = gamma0(pet).value, g2 = gamma2(pet, variant).value;
    check(out, "gamma consistency [1 2 3; 0 1 1]",
          le.coefficients[0] == g0 && le.coefficients[2] == g2,
          "gamma0 = " + g0.get_str() + ", gamma2 = " + g2.get_str());
  }
  {
    const KappaDiscrimination& kd = kappa_discrimination();
    check(out, "kappa discrimination [" + std::string(kKappaProbe) + "]", kd.unique,
          std::string("winner: ") + kappa_variant_name(kd.winner) + " (exact gamma2 " +
              kd.exact.get_str() + ", theorem " + kd.theorem_value.get_str() + ", proof " +
              kd.proof_value.get_str() + ")");
  }

  // Oracle comparison for the matrix under test, where the pipeline applies.
  Faithfulness f = faithfulness(A);
  if (f.faithful && A.cols() > 2) {
    try {
      HilbertSeries h = hilbert_on(A, opt);
      std::string detail;
      bool ok = series_matches_oracle(h, A, oracle_degree, &detail);
      check(out, "user matrix vs oracle", ok, detail);
      LaurentExpansion le = laurent_at_one(h, 3);
      check(out, "user matrix structural facts",
            le.pole_order == 2 * A.cols() - 4 && le.coefficients[1] == 0 &&
                le.coefficients[2] == le.coefficients[3] && h.numerator_palindromic(),
            "pole order " + std::to_string(le.pole_order));
      StandardFormResult sf = to_standard_form(A);
      Rat g0 = gamma0(sf.matrix).value;
      Rat g2 = gamma2(sf.matrix, variant).value;
      check(out, "user matrix gamma consistency",
            g0 == le.coefficients[0] && g2 == le.coefficients[2],
            "gamma0 = " + g0.get_str() + ", gamma2 = " + g2.get_str());
      observe(out, "gamma0 positivity", g0 > 0 ? "gamma0 > 0" : "gamma0 <= 0 (conjecture violated!)");
    } catch (const Error& e) {
      if (e.code() != errc::not_genericizable) throw;
      StandardFormResult sf = to_standard_form(A);
      Gamma0Result g0 = gamma0(sf.matrix);
      PerturbationEstimate est = perturbation_gamma(sf.matrix, GammaKind::gamma0, 1e-3, 5, seed);
      double diff = std::abs(est.value - g0.value.get_d());
      check(out, "user matrix gamma0 u-method vs perturbation", diff <= 1e-4,
            "exact " + g0.value.get_str() + " (series unavailable: no generic equivalent)");
      observe(out, "gamma0 positivity",
              g0.value > 0 ? "gamma0 > 0" : "gamma0 <= 0 (conjecture violated!)");
    }
  } else {
    observe(out, "user matrix oracle comparison",
            "skipped: matrix is not faithful with n > 2");
  }
  return out;
}

namespace {

struct TaskOutput {
  json j;                 // structured payload
  std::string text;       // human-readable payload
  std::string latex;      // latex payload (falls back to text when empty)
  bool failed = false;
};

TaskOutput task_classify(const WeightMatrix& A) {
  TaskOutput out;
  Classification c = classify(A);
  Faithfulness f = faithfulness(A);
  ShellSupport s = shell_support(A);

  out.j["classification"] = matrix_class_name(c.kind);
  out.j["faithful"] = f.faithful;
  out.j["rank"] = f.rank;
  out.j["minor_gcd"] = f.minor_gcd.get_str();
  json sup = json::array();
  for (int i : s.columns) sup.push_back(i + 1);
  out.j["shell_support"] = sup;
  out.j["shell_support_full"] = s.full;
  out.j["describes_M0"] = s.full;
  if (s.columns.empty()) out.j["note"] = "symplectic quotient is a point";

  std::ostringstream t;
  t << "classification: " << matrix_class_name(c.kind) << "\n";
  t << "faithful: " << (f.faithful ? "yes" : "no") << " (rank " << f.rank << ", minor gcd "
    << f.minor_gcd.get_str() << ")\n";
  t << "shell support: " << support_str(s) << (s.full ? " (full)" : "") << "\n";
  if (s.columns.empty()) t << "symplectic quotient is a point\n";
  t << "on-shell series describes R[M0]: " << (s.full ? "yes" : "no") << "\n";
  out.text = t.str();
  return out;
}

std::string gammas_line(const LaurentExpansion& le) {
  std::string out;
  for (size_t m = 0; m < le.coefficients.size(); ++m) {
    if (m) out += ", ";
    out += "gamma_" + std::to_string(m) + " = " + le.coefficients[m].get_str();
  }
  return out;
}

TaskOutput task_series(const WeightMatrix& A, const RunConfig& cfg) {
  TaskOutput out;
  const HilbertOptions opt{cfg.genericize_bound};
  try {
    HilbertReport rep = analyze(A, 3, opt);
    out.j["truncated"] = false;
    out.j["on_shell"] = series_json(rep.on_shell);
    out.j["off_shell"] = series_json(rep.off_shell);
    out.j["pole_order"] = rep.pole_order;
    json g = json::array();
    for (const Rat& c : rep.gammas.coefficients) g.push_back(c.get_str());
    out.j["gammas"] = g;
    out.j["genericized"] = rep.genericized_from ? log_str(*rep.genericized_from) : "none";
    out.j["describes_M0"] = rep.describes_M0;

    std::ostringstream t;
    t << "on-shell:  " << rep.on_shell.str() << "\n";
    t << "off-shell: " << rep.off_shell.str() << "\n";
    t << "pole order at t=1: " << rep.pole_order << "\n";
    t << "laurent at t=1: " << gammas_line(rep.gammas) << "\n";
    t << "basis changes: " << log_str(rep.genericized_from.value_or(BasisChangeLog{})) << "\n";
    out.text = t.str();

    out.latex = "\\operatorname{Hilb}^{on}(t) = " + hilbert_series_to_latex(rep.on_shell) +
                "\n\\operatorname{Hilb}^{on}(t) = " + laurent_to_latex(rep.gammas) + " + \\cdots\n";
  } catch (const Error& e) {
    if (e.code() != errc::not_genericizable) throw;
    // No generic equivalent: fall back to the oracle truncation.
    OracleSeries os = oracle_series(A, cfg.oracle_degree);
    out.j["truncated"] = true;
    json on = json::array(), off = json::array();
    for (const Int& v : os.on) on.push_back(v.get_str());
    for (const Int& v : os.off) off.push_back(v.get_str());
    out.j["on_shell_coefficients"] = on;
    out.j["off_shell_coefficients"] = off;
    out.j["degree_bound"] = os.degree_bound;

    std::ostringstream t;
    t << "no generic equivalent: series truncated at degree " << os.degree_bound
      << " (lattice-count oracle)\n";
    t << "on-shell coefficients: ";
    for (int d = 0; d <= os.degree_bound; ++d) t << (d ? ", " : "") << os.on[d].get_str();
    t << "\n";
    out.text = t.str();
  }
  return out;
}

TaskOutput task_gammas(const WeightMatrix& A, KappaVariant variant) {
  TaskOutput out;
  StandardFormResult sf = to_standard_form(A);
  const WeightMatrix& S = sf.matrix;

  Gamma0Result g0 = gamma0(S);
  Gamma2Result g2 = gamma2(S, variant);
  GammaOffResult off = gamma_off(S, variant);

  out.j["gamma0"] = g0.value.get_str();
  out.j["gamma2"] = g2.value.get_str();
  out.j["gamma3"] = g2.value.get_str();
  out.j["kappa_variant"] = kappa_variant_name(variant);
  out.j["gamma0_positive"] = g0.value > 0;
  json terms = json::array();
  for (const GammaTerm& t : g0.ledger.terms) {
    json jt;
    jt["pair"] = {t.i + 1, t.j + 1};
    jt["singular"] = t.singular;
    if (t.value) jt["value"] = t.value->get_str();
    else jt["u_fraction"] = t.u_fraction;
    terms.push_back(jt);
  }
  out.j["terms"] = terms;
  if (g0.ledger.singular_group_value)
    out.j["singular_group_value"] = g0.ledger.singular_group_value->get_str();
  json removed = json::array();
  for (const RemovedColumn& rc : g2.ledger.removed_columns)
    removed.push_back({{"column", rc.p + 1},
                       {"minor_gcd", rc.g_p.get_str()},
                       {"gamma0_formula", rc.gamma0_Ap.get_str()}});
  out.j["removed_columns"] = removed;
  out.j["off_shell"] = {{"gamma0", off.g0.get_str()},
                        {"gamma1", off.g1.get_str()},
                        {"gamma2", off.g2.get_str()},
                        {"gamma3", off.g3.get_str()}};
  if (!sf.log.empty()) out.j["standardized"] = log_str(sf.log);

  std::ostringstream t;
  if (!sf.log.empty()) t << "standardized first: " << log_str(sf.log) << "\n";
  t << "gamma_0 = " << g0.value.get_str() << "\n";
  t << "gamma_2 = gamma_3 = " << g2.value.get_str() << " (kappa variant: "
    << kappa_variant_name(variant) << ")\n";
  t << "off-shell: gamma_0 = gamma_1 = " << off.g0.get_str() << ", gamma_2 = " << off.g2.get_str()
    << ", gamma_3 = " << off.g3.get_str() << "\n";
  t << "gamma_0 > 0: " << (g0.value > 0 ? "observed" : "VIOLATED (conjectured positive)") << "\n";
  int singular = 0;
  for (const GammaTerm& gt : g0.ledger.terms) singular += gt.singular;
  t << "terms: " << g0.ledger.terms.size() << " (" << singular << " singular";
  if (g0.ledger.singular_group_value)
    t << ", joint value " << g0.ledger.singular_group_value->get_str();
  t << ")\n";
  out.text = t.str();

  out.latex = "\\gamma_0 = \\tfrac{" + g0.value.get_num().get_str() + "}{" +
              g0.value.get_den().get_str() + "},\\quad \\gamma_2 = \\gamma_3 = \\tfrac{" +
              g2.value.get_num().get_str() + "}{" + g2.value.get_den().get_str() + "}\n";
  return out;
}

TaskOutput task_verify(const WeightMatrix& A, const RunConfig& cfg, KappaVariant variant) {
  TaskOutput out;
  std::vector<VerifyCheck> checks =
      verify_battery(A, cfg.oracle_degree, cfg.genericize_bound, variant, cfg.seed);
  json arr = json::array();
  std::ostringstream t;
  bool all_pass = true;
  for (const VerifyCheck& c : checks) {
    arr.push_back({{"name", c.name},
                   {"pass", c.pass},
                   {"informational", c.informational},
                   {"detail", c.detail}});
    t << (c.informational ? "INFO" : (c.pass ? "PASS" : "FAIL")) << " " << c.name << ": "
      << c.detail << "\n";
    if (!c.informational && !c.pass) all_pass = false;
  }
  out.j["checks"] = arr;
  out.j["all_pass"] = all_pass;
  out.text = t.str();
  out.failed = !all_pass;
  return out;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  RunResult result;
  json root;
  std::ostringstream text;
  bool failed = false;

  std::string current_task = "parse";
  try {
    WeightMatrix A = WeightMatrix::parse(cfg.matrix_text);
    root["matrix"] = A.str();
    text << "matrix: " << A.str() << "\n";
    KappaVariant variant = resolve_kappa(cfg.gamma_variant);

    std::vector<std::string> order = {"classify", "series", "gammas", "verify"};
    for (const std::string& task : order) {
      if (std::find(cfg.tasks.begin(), cfg.tasks.end(), task) == cfg.tasks.end()) continue;
      current_task = task;
      TaskOutput t;
      if (task == "classify") t = task_classify(A);
      else if (task == "series") t = task_series(A, cfg);
      else if (task == "gammas") t = task_gammas(A, variant);
      else t = task_verify(A, cfg, variant);
      root[task] = t.j;
      text << "[" << task << "]\n";
      text << (cfg.format == "latex" && !t.latex.empty() ? t.latex : t.text);
      failed |= t.failed;
    }
    for (const std::string& task : cfg.tasks)
      if (std::find(order.begin(), order.end(), task) == order.end())
        fail(errc::parse_error, "unknown task '" + task + "'");
  } catch (const Error& e) {
    root["error"] = {{"task", current_task}, {"message", e.what()}};
    text << "error in task '" << current_task << "': " << e.what() << "\n";
    failed = true;
  }

  result.exit_code = failed ? 1 : 0;
  result.output = cfg.format == "json" ? root.dump(2) + "\n" : text.str();
  return result;
}

}  // namespace t2hilb
