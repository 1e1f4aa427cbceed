#include "ltdr/cli/app.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ltdr/dieudonne/models.hpp"
#include "ltdr/formal_group/formal_group.hpp"
#include "ltdr/ledger/ledger.hpp"
#include "ltdr/periods/period_matrix.hpp"
#include "ltdr/semilinear/isocrystal.hpp"

namespace ltdr::cli {

namespace {

using padic::Field;
using padic::FieldPtr;
using padic::Json;
using padic::PadicMatrix;
using padic::Rational;

constexpr int kDefaultPrecision = 32;

struct BadFlags : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

int env_precision() {
  const char* raw = std::getenv("PADIC_PRECISION");
  if (!raw || !*raw) return kDefaultPrecision;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 1 || v > 100000) throw BadFlags("PADIC_PRECISION must be a positive integer");
  return static_cast<int>(v);
}

Json header(const std::string& command) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

bool all_pass(const Json& checks) {
  for (const auto& c : checks)
    if (!c.at("pass").get<bool>()) return false;
  return true;
}

Json check(const std::string& name, Json inputs, Json expected, Json computed, bool pass) {
  return ledger::report(name, std::move(inputs), std::move(expected), std::move(computed), pass);
}

// ---------------------------------------------------------------------------

struct ModelsArgs {
  int n = 0;
  long p = 2;
  int precision = 0;
};

Result cmd_models(const ModelsArgs& a) {
  if (a.n < 1) throw BadFlags("--n must be at least 1");
  // D(G) carries the O_D action, which needs Q_{p^n} inside K.
  auto field = Field::make(a.p, a.n, a.precision);
  const int n = a.n;
  auto dh = dieudonne::build_DH(n, field);
  auto dg = dieudonne::build_DG(n, field);
  auto delta = dieudonne::delta_matrix(n, field);
  const auto s_h = semilinear::newton_slopes(dh.contravariant());
  const auto s_g = semilinear::newton_slopes(dg.contravariant());
  const auto unit_root = dg.unit_root();
  const auto s_u = semilinear::newton_slopes(unit_root);
  const auto fixed = semilinear::phi_fixed_points(unit_root, 0);

  Json inputs = {{"n", n}, {"p", a.p}, {"m", n}};
  const std::vector<Rational> want_h(n, Rational(1, n)), want_g(n * n, Rational(1, n)), want_u(n, Rational(0));
  Json checks = Json::array();
  checks.push_back(check("slopes_D_H", inputs, semilinear::slopes_json(want_h), semilinear::slopes_json(s_h), s_h == want_h));
  checks.push_back(check("slopes_D_G", inputs, semilinear::slopes_json(want_g), semilinear::slopes_json(s_g), s_g == want_g));
  checks.push_back(
      check("unit_root_slopes", inputs, semilinear::slopes_json(want_u), semilinear::slopes_json(s_u), s_u == want_u));
  checks.push_back(check("unit_root_fixed_dimension", inputs, n, fixed.cols(), fixed.cols() == n));
  const long ht = delta.computed_height();
  checks.push_back(check("delta_height", inputs, delta.declared_height, ht, ht == delta.declared_height));

  Json j = header("models");
  j["n"] = n;
  j["p"] = a.p;
  j["precision"] = a.precision;
  j["D_H"] = dieudonne::to_json(dh);
  j["D_G"] = dieudonne::to_json(dg);
  j["Phi"] = padic::to_json(dieudonne::phi_matrix(n, field), field);
  j["Delta"] = {{"matrix", padic::to_json(delta.matrix, field)},
                {"declared_height", delta.declared_height},
                {"computed_height", ht}};
  j["slopes"] = {{"D_H", semilinear::slopes_json(s_h)},
                 {"D_G", semilinear::slopes_json(s_g)},
                 {"unit_root", semilinear::slopes_json(s_u)}};
  j["checks"] = checks;
  return {all_pass(checks) ? kOk : kCheckFailed, j.dump(), ""};
}

// ---------------------------------------------------------------------------

struct CorrespondArgs {
  std::optional<int> n, m;
  std::uint64_t seed = 1;
  std::string matrix;
  long p = 2;
  int precision = 0;
};

PadicMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadFlags("cannot read --matrix file " + path);
  Json j;
  try {
    j = Json::parse(in);
    return padic::matrix_from_json(j);
  } catch (const std::exception& e) {
    throw BadFlags("malformed --matrix file: " + std::string(e.what()));
  }
}

Result cmd_correspond(const CorrespondArgs& a) {
  Json j = header("correspond");
  periods::PeriodMatrix pm;
  Json input;
  try {
    if (!a.matrix.empty()) {
      if (a.n || a.m) throw BadFlags("--matrix excludes --n/--m");
      input["matrix"] = a.matrix;
      pm = periods::from_matrix(load_matrix(a.matrix));
    } else {
      if (!a.n || !a.m) throw BadFlags("correspond needs --n and --m, or --matrix");
      if (*a.n < 2) throw BadFlags("--n must be at least 2");
      if (*a.m < 1) throw BadFlags("--m must be at least 1");
      input = {{"n", *a.n}, {"m", *a.m}, {"p", a.p}, {"seed", a.seed}, {"precision", a.precision}};
      auto field = Field::make(a.p, *a.m, a.precision);
      periods::SampleStats stats;
      try {
        pm = periods::random_point(*a.n, field, a.seed, &stats);
      } catch (const periods::FieldTooSmall& e) {
        return {kBadFlags, "", std::string("field too small: ") + e.what() + "\n"};
      } catch (const std::runtime_error&) {
        j["input"] = input;
        j["sampling"] = {{"attempts", stats.attempts}, {"indeterminate", stats.indeterminate}};
        j["error"] = "sampling budget exhausted without a certified point";
        return {kIndeterminate, j.dump(), "sampling budget exhausted\n"};
      }
      j["sampling"] = {{"attempts", stats.attempts}, {"indeterminate", stats.indeterminate}};
    }
  } catch (const periods::RankError& e) {
    j["input"] = input;
    static const char* kinds[] = {"full_rank", "rank_deficient", "indeterminate"};
    j["error"] = {{"kind", kinds[static_cast<int>(e.kind())]}, {"message", e.what()}};
    return {e.kind() == periods::RankFailure::indeterminate ? kIndeterminate : kRankRejected, j.dump(),
            std::string("rank rejection: ") + e.what() + "\n"};
  }

  const auto y = periods::correspond(pm);
  const auto back = periods::correspond(y);
  const auto h = periods::fil_H(pm), g = periods::fil_G(pm);
  const auto yh = periods::fil_H(y), yg = periods::fil_G(y);
  Json in = {{"n", pm.n}};
  Json checks = Json::array();
  checks.push_back(check("involution", in, true, padic::is_zero(back.X - pm.X), padic::is_zero(back.X - pm.X)));
  const bool dual_h = padic::same_column_space(yh.basis, g.basis);
  const bool dual_g = padic::same_column_space(yg.basis, h.basis);
  checks.push_back(check("fil_H_of_transpose_is_fil_G", in, true, dual_h, dual_h));
  checks.push_back(check("fil_G_of_transpose_is_fil_H", in, true, dual_g, dual_g));
  const bool orth_g = padic::is_zero(padic::product(g.normal, pm.X));
  const bool orth_h = padic::is_zero(padic::product(pm.X, h.normal.transpose()));
  checks.push_back(check("normal_G_annihilates_X", in, true, orth_g, orth_g));
  checks.push_back(check("X_annihilates_normal_H", in, true, orth_h, orth_h));
  const bool det0 = padic::determinant(pm.X).is_zero();
  checks.push_back(check("det_X_vanishes", in, true, det0, det0));

  bool indeterminate = false;
  for (const auto* pt : {&h, &g, &yh, &yg})
    if (periods::omega_membership(*pt).kind == periods::OmegaKind::indeterminate) indeterminate = true;

  j["input"] = input;
  j["X"] = periods::to_json(pm);
  j["transpose"] = periods::to_json(y);
  j["checks"] = checks;
  if (indeterminate) return {kIndeterminate, j.dump(), "indeterminate Omega verdict at this precision\n"};
  return {all_pass(checks) ? kOk : kCheckFailed, j.dump(), ""};
}

// ---------------------------------------------------------------------------

struct LedgerArgs {
  std::optional<long> p;
  std::optional<int> h, i0;
  std::string heights;
};

Result cmd_ledger(const LedgerArgs& a) {
  Json j = header("ledger");
  const bool cm = a.p || a.h || a.i0;
  if (cm == !a.heights.empty()) throw BadFlags("ledger needs either --p --h --i0 or --heights");
  if (cm) {
    if (!a.p || !a.h || !a.i0) throw BadFlags("ledger needs all of --p --h --i0");
    ledger::CMDatum datum;
    try {
      datum = ledger::CMDatum::dimension_one(*a.p, *a.h, *a.i0);
    } catch (const std::invalid_argument& e) {
      throw BadFlags(e.what());
    }
    j["inputs"] = {{"p", *a.p}, {"h", *a.h}, {"i0", *a.i0}};
    j["period_valuation"] = padic::rational_string(ledger::period_valuation(*a.p));
    const Json report = ledger::cm_report(datum);
    for (const auto& [k, v] : report.items()) j[k] = v;
  } else {
    std::vector<long> v;
    std::stringstream ss(a.heights);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stol(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw BadFlags("--heights expects four integers n,htH,htG,htDelta");
      }
    }
    if (v.size() != 4 || v[0] < 1) throw BadFlags("--heights expects four integers n,htH,htG,htDelta with n >= 1");
    ledger::HeightLedger l{static_cast<int>(v[0]), v[1], v[2], v[3]};
    j["inputs"] = {{"n", v[0]}, {"ht_rho_H", v[1]}, {"ht_rho_G", v[2]}, {"ht_Delta", v[3]}};
    const Json report = ledger::heights_report(l);
    for (const auto& [k, val] : report.items()) j[k] = val;
  }
  return {all_pass(j["checks"]) ? kOk : kCheckFailed, j.dump(), ""};
}

// ---------------------------------------------------------------------------

struct FormalGroupArgs {
  long p = 0;
  int h = 0;
  std::optional<int> D;
  int precision = 0;
};

Result cmd_formal_group(const FormalGroupArgs& a) {
  if (!padic::is_prime(a.p)) throw BadFlags("--p must be prime");
  if (a.h < 1) throw BadFlags("--h must be positive");
  const int d = a.D.value_or(formal_group::default_degree(a.p, a.h));
  if (d < 2) throw BadFlags("--D must be at least 2");
  Json j = header("formal-group");
  formal_group::FormalGroupLaw fgl;
  try {
    fgl = formal_group::group_law(a.p, a.h, d);
  } catch (const formal_group::IntegralityError& e) {
    return {kIntegrality, "", std::string("integrality failure: ") + e.what() + "\n"};
  }
  const Json law = formal_group::to_json(fgl);
  for (const auto& [k, v] : law.items()) j[k] = v;
  j["log"] = formal_group::series_json(fgl.log);

  Json inputs = {{"p", a.p}, {"h", a.h}, {"D", d}};
  Json checks = Json::array();
  const auto ax = formal_group::check_axioms(fgl);
  checks.push_back(check("unit", inputs, true, ax.unit, ax.unit));
  checks.push_back(check("commutativity", inputs, true, ax.commutative, ax.commutative));
  checks.push_back(check("associativity", inputs, true, ax.associative, ax.associative));
  checks.push_back(check("logarithm", inputs, true, ax.logarithm, ax.logarithm));
  checks.push_back(check("integrality", inputs, true, ax.integral, ax.integral));
  if (!ax.integral) {
    j["checks"] = checks;
    return {kIntegrality, j.dump(), "integrality failure\n"};
  }

  long q = 1;
  for (int k = 0; k < a.h; ++k) q *= a.p;
  if (d >= q) {
    const auto cert = formal_group::certify_height(fgl);
    j["p_series"] = formal_group::series_json(cert.series);
    j["height"] = {{"reduction_order", cert.reduction_order}, {"height", cert.height}};
    checks.push_back(check("height", inputs, a.h, cert.height, cert.pass));
  } else {
    j["p_series"] = nullptr;
    j["height"] = {{"skipped", "D < p^h"}};
  }

  auto zeta = formal_group::default_zeta(a.p, a.h, a.precision);
  const auto zr = formal_group::zeta_action(fgl, zeta);
  j["zeta"] = {{"zeta", padic::to_json(zeta, zeta.field())},
               {"series", formal_group::series_json(zr.series)},
               {"linear", zr.linear},
               {"endomorphism", zr.endomorphism},
               {"commutes_with_p", zr.commutes_with_p ? Json(*zr.commutes_with_p) : Json(nullptr)}};
  checks.push_back(check("zeta_endomorphism", inputs, true, zr.pass(), zr.pass()));
  j["checks"] = checks;
  return {all_pass(checks) ? kOk : kCheckFailed, j.dump(), ""};
}

}  // namespace

Result run(const std::vector<std::string>& args) {
  CLI::App app{"p-adic period-matrix and Dieudonne-model verification reports", "ltdr"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent JSON output");

  int precision = 0;
  try {
    precision = env_precision();
  } catch (const BadFlags& e) {
    return {kBadFlags, "", std::string(e.what()) + "\n"};
  }

  ModelsArgs ma;
  ma.precision = precision;
  auto* models = app.add_subcommand("models", "Dieudonne models, Phi, Delta and slope reports");
  models->add_option("--n", ma.n, "height n")->required();
  models->add_option("--p", ma.p, "prime (default 2)");
  models->add_option("--precision", ma.precision, "absolute p-adic precision");
  models->add_flag("--pretty", pretty);

  CorrespondArgs ca;
  ca.precision = precision;
  auto* corr = app.add_subcommand("correspond", "period matrix correspondence X -> transpose X");
  corr->add_option("--n", ca.n, "size of X");
  corr->add_option("--m", ca.m, "[K:Q_p]");
  corr->add_option("--seed", ca.seed, "sampler seed (default 1)");
  corr->add_option("--matrix", ca.matrix, "JSON matrix file instead of sampling");
  corr->add_option("--p", ca.p, "prime (default 2)");
  corr->add_option("--precision", ca.precision, "absolute p-adic precision");
  corr->add_flag("--pretty", pretty);

  LedgerArgs la;
  auto* led = app.add_subcommand("ledger", "CM period valuations or height ledger");
  led->add_option("--p", la.p, "prime");
  led->add_option("--h", la.h, "height");
  led->add_option("--i0", la.i0, "critical index");
  led->add_option("--heights", la.heights, "n,htH,htG,htDelta");
  led->add_flag("--pretty", pretty);

  FormalGroupArgs fa;
  fa.precision = precision;
  auto* fg = app.add_subcommand("formal-group", "Lubin-Tate formal group law, [p]-series and zeta action");
  fg->add_option("--p", fa.p, "prime")->required();
  fg->add_option("--h", fa.h, "height")->required();
  fg->add_option("--D", fa.D, "truncation degree (default p^h + p)");
  fg->add_option("--precision", fa.precision, "precision for the zeta check");
  fg->add_flag("--pretty", pretty);

  std::vector<const char*> argv{"ltdr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {code == 0 ? kOk : kBadFlags, out.str(), err.str()};
  }

  Result r;
  try {
    for (int prec : {ma.precision, ca.precision, fa.precision})
      if (prec < 1) throw BadFlags("--precision must be positive");
    if (*models)
      r = cmd_models(ma);
    else if (*corr)
      r = cmd_correspond(ca);
    else if (*led)
      r = cmd_ledger(la);
    else
      r = cmd_formal_group(fa);
  } catch (const BadFlags& e) {
    return {kBadFlags, "", std::string(e.what()) + "\n"};
  } catch (const std::invalid_argument& e) {
    return {kBadFlags, "", std::string(e.what()) + "\n"};
  }
  if (!r.out.empty()) {
    if (pretty) r.out = Json::parse(r.out).dump(2);
    r.out += "\n";
  }
  return r;
}

}  // namespace ltdr::cli
