// Acceptance run: one line per criterion, exit status 0 iff all pass.
//   usage: acceptance [path-to-cli]

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ltdr/cli/app.hpp"
#include "ltdr/dieudonne/models.hpp"
#include "ltdr/formal_group/formal_group.hpp"
#include "ltdr/ledger/ledger.hpp"
#include "ltdr/padic/io.hpp"
#include "ltdr/padic/random.hpp"
#include "ltdr/periods/period_matrix.hpp"
#include "ltdr/semilinear/isocrystal.hpp"

using namespace ltdr;
using padic::Field;
using padic::Padic;
using padic::PadicMatrix;
using padic::Rational;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few are kept for the report line.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  long checks() const { return checks_; }
  Outcome outcome(const std::string& extra = "") const {
    std::ostringstream os;
    os << checks_ << " checks";
    if (failures_) os << ", " << failures_ << " failed: " << notes_;
    if (!extra.empty()) os << ", " << extra;
    return {failures_ == 0, os.str()};
  }

 private:
  long checks_ = 0, failures_ = 0;
  std::string notes_;
};

Rational frac(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

long ipow(long p, long k) {
  long r = 1;
  while (k-- > 0) r *= p;
  return r;
}

std::string str(const std::vector<Rational>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + padic::rational_string(x);
  return "(" + s + ")";
}

// 1 -------------------------------------------------------------------------

Outcome cm_tables() {
  Tally t;
  for (long p : {2, 3, 5})
    for (int h = 1; h <= 6; ++h)
      for (int i0 = 0; i0 < h; ++i0) {
        // v(y_i) = p^((i - i0) mod h) / (p^h - 1)
        std::vector<Rational> want;
        for (int i = 0; i < h; ++i) want.push_back(frac(ipow(p, ((i - i0) % h + h) % h), ipow(p, h) - 1));
        const auto got = ledger::cm_period_valuations(p, h, i0);
        const std::string tag = "(" + std::to_string(p) + "," + std::to_string(h) + "," + std::to_string(i0) + ")";
        t.expect(got == want, tag + " table " + str(got));
        auto d = ledger::CMDatum::dimension_one(p, h, i0);
        Rational total = 0;
        for (const auto& v : got) total += v;
        t.expect(total == frac(1, p - 1), tag + " sum");
        t.expect(ledger::check_sum_identity(d), tag + " sum identity");
        t.expect(ledger::beta_integrality(d) == 0, tag + " beta");
        t.expect(ledger::functional_equation_valuations(d), tag + " functional equation");
      }
  return t.outcome();
}

// 2 -------------------------------------------------------------------------

PadicMatrix base_change(padic::Rng& rng, const semilinear::Isocrystal& iso) {
  PadicMatrix g = rng.unimodular(iso.field, iso.dim());
  return padic::product(padic::product(g, iso.frob), padic::inverse(padic::frobenius(g, 1)));
}

Outcome slope_suite() {
  Tally t;
  padic::Rng rng(2024);
  for (int n = 1; n <= 5; ++n) {
    auto k = Field::make(2, n, 20);
    auto dh = dieudonne::build_DH(n, k).contravariant();
    auto model = dieudonne::build_DG(n, k);
    auto dg = model.contravariant();
    const std::string tag = "n=" + std::to_string(n);
    const auto sh = semilinear::newton_slopes(dh);
    const auto sg = semilinear::newton_slopes(dg);
    t.expect(sh == std::vector<Rational>(n, frac(1, n)), tag + " D_H slopes " + str(sh));
    t.expect(sg == std::vector<Rational>(n * n, frac(1, n)), tag + " D_G slopes " + str(sg));
    auto u = model.unit_root();
    t.expect(semilinear::newton_slopes(u) == std::vector<Rational>(n, Rational(0)), tag + " unit-root slopes");
    t.expect(semilinear::phi_fixed_points(u, 0).cols() == n, tag + " unit-root fixed space");
    for (int trial = 0; trial < 50; ++trial) {
      t.expect(semilinear::newton_slopes(semilinear::make_isocrystal(k, base_change(rng, dh))) == sh,
               tag + " D_H base change");
      t.expect(semilinear::newton_slopes(semilinear::make_isocrystal(k, base_change(rng, dg))) == sg,
               tag + " D_G base change");
    }
  }
  return t.outcome();
}

// 3 -------------------------------------------------------------------------

Outcome correspondence_suite() {
  Tally t;
  long verdicts = 0, indeterminate = 0;
  const std::array<std::pair<int, int>, 4> cases{{{2, 2}, {2, 4}, {3, 3}, {3, 6}}};
  for (auto [n, m] : cases) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const long p = seed % 2 ? 2 : 3;
      auto k = Field::make(p, m, 32);
      const std::string tag = "(" + std::to_string(n) + "," + std::to_string(m) + ") p=" + std::to_string(p) +
                              " seed " + std::to_string(seed);
      periods::SampleStats stats;
      periods::PeriodMatrix pm;
      try {
        pm = periods::random_point(n, k, seed, &stats);
      } catch (const std::exception& e) {
        t.expect(false, tag + " sampling: " + e.what());
        continue;
      }
      verdicts += stats.attempts;
      indeterminate += stats.indeterminate;
      auto y = periods::correspond(pm);
      t.expect(padic::is_zero(periods::correspond(y).X - pm.X), tag + " involution");
      auto h = periods::fil_H(pm), g = periods::fil_G(pm);
      t.expect(padic::same_column_space(periods::fil_H(y).basis, g.basis), tag + " fil_H(tX) = fil_G(X)");
      t.expect(padic::same_column_space(periods::fil_G(y).basis, h.basis), tag + " fil_G(tX) = fil_H(X)");
      t.expect(padic::is_zero(padic::product(g.normal, pm.X)), tag + " l_G X = 0");
      t.expect(padic::is_zero(padic::product(pm.X, h.normal.transpose())), tag + " X tl_H = 0");
      t.expect(padic::determinant(pm.X).is_zero(), tag + " det X = 0");
      auto v = periods::omega_membership(g);
      ++verdicts;
      if (v.kind == periods::OmegaKind::indeterminate) ++indeterminate;
      t.expect(v.kind == periods::OmegaKind::in_omega, tag + " fil_G in Omega");
    }
  }
  const double rate = verdicts ? static_cast<double>(indeterminate) / static_cast<double>(verdicts) : 0.0;
  t.expect(rate < 0.05, "indeterminate rate");
  std::ostringstream extra;
  extra << "indeterminate " << indeterminate << "/" << verdicts << " verdicts";
  return t.outcome(extra.str());
}

// 4 -------------------------------------------------------------------------

PadicMatrix identity(int n, const padic::FieldPtr& k) { return padic::materialize(PadicMatrix::Identity(n, n), k); }

Outcome action_suite() {
  Tally t;
  padic::Rng rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = trial % 2 ? 3 : 2;
    const long p = trial % 4 < 2 ? 2 : 3;
    auto k = Field::make(p, n, 32);
    auto model = dieudonne::build_DH(n, k);
    auto pm = periods::random_point(n, k, 1000 + static_cast<std::uint64_t>(trial));
    const std::string tag = "trial " + std::to_string(trial);

    // Integral g with det p^e: a unimodular matrix times diag(1, ..., p^e).
    PadicMatrix g = rng.unimodular(k, n, true);
    const long e = static_cast<long>(rng.below(3));
    g.col(n - 1) = g.col(n - 1) * Padic::prime_power(k, e);
    dieudonne::OdElement d = dieudonne::random_od_unit(rng, k, n) *
                             dieudonne::OdElement::pi_power(k, n, static_cast<long>(rng.below(2 * n + 1)) - n);

    periods::PeriodMatrix moved;
    try {
      moved = periods::act(g, d, pm);
      moved = periods::from_matrix(moved.X);
    } catch (const std::exception& ex) {
      t.expect(false, tag + " rank: " + ex.what());
      continue;
    }
    t.expect(moved.n == pm.n, tag + " rank");
    t.expect(padic::same_column_space(periods::fil_G(moved).basis,
                                      padic::product(g.transpose(), periods::fil_G(pm).basis)),
             tag + " fil_G by tg");
    PadicMatrix translated = padic::product(periods::fil_H(pm).basis.transpose(), padic::inverse(model.iota(d)));
    t.expect(padic::same_column_space(periods::fil_H(moved).basis, translated.transpose()), tag + " fil_H by iota(d)^-1");

    Padic c = Padic::from_integer(k, static_cast<long>(1 + p * static_cast<long>(rng.below(50)))) * Padic::prime_power(k, trial % 3);
    auto central = periods::act(identity(n, k) * c, dieudonne::OdElement::scalar(n, c), pm);
    t.expect(padic::same_column_space(periods::fil_G(central).basis, periods::fil_G(pm).basis), tag + " central fil_G");
    t.expect(padic::same_column_space(periods::fil_H(central).basis, periods::fil_H(pm).basis), tag + " central fil_H");

    auto gl_only = periods::act(g, dieudonne::OdElement::scalar(n, Padic(1).in_field(k)), pm);
    t.expect(periods::omega_membership(periods::fil_G(gl_only)).kind == periods::OmegaKind::in_omega,
             tag + " Omega preserved");
  }
  return t.outcome();
}

// 5 -------------------------------------------------------------------------

Outcome height_grid() {
  Tally t;
  for (int n = 1; n <= 4; ++n)
    for (long hh = -6; hh <= 6; ++hh)
      for (long hg = -6; hg <= 6; ++hg)
        for (long hd = -6; hd <= 6; ++hd) {
          ledger::HeightLedger l{n, hh, hg, hd};
          const std::string tag = "n=" + std::to_string(n) + " (" + std::to_string(hh) + "," + std::to_string(hg) + "," +
                                  std::to_string(hd) + ")";
          t.expect(ledger::det_valuation_LT(l) == frac(-2 * hh - n * (n - 1), 2), tag + " LT law");
          t.expect(ledger::det_valuation_Dr(l) == frac(-hg - n * hd, n), tag + " Dr law");
          if (2 * hd != n * (n - 1)) continue;
          auto v = ledger::height_transfer(l);
          t.expect(v.consistent == (n * hh == hg), tag + " transfer");
          t.expect(v.consistent == (ledger::det_valuation_LT(l) == ledger::det_valuation_Dr(l)), tag + " laws agree");
          t.expect(v.transferred_height == frac(hg, n), tag + " transferred height");
        }
  return t.outcome();
}

// 6 -------------------------------------------------------------------------

Outcome formal_groups() {
  Tally t;
  for (auto [p, h] : std::vector<std::pair<long, int>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}}) {
    const int d = static_cast<int>(ipow(p, h) + p);
    const std::string tag = "(" + std::to_string(p) + "," + std::to_string(h) + ")";
    formal_group::FormalGroupLaw fgl;
    try {
      fgl = formal_group::group_law(p, h, d);
    } catch (const std::exception& e) {
      t.expect(false, tag + " " + e.what());
      continue;
    }
    auto ax = formal_group::check_axioms(fgl);
    t.expect(ax.unit, tag + " unit");
    t.expect(ax.commutative, tag + " commutativity");
    t.expect(ax.associative, tag + " associativity");
    t.expect(ax.integral, tag + " integrality");
    t.expect(ax.logarithm, tag + " logarithm");
    auto cert = formal_group::certify_height(fgl);
    t.expect(cert.pass && cert.reduction_order == ipow(p, h) && cert.height == h, tag + " height");
    auto zr = formal_group::zeta_action(fgl, formal_group::default_zeta(p, h, 32));
    t.expect(zr.linear, tag + " [zeta] = zeta T");
    t.expect(zr.endomorphism, tag + " [zeta] endomorphism");
    t.expect(zr.commutes_with_p == true, tag + " [zeta][p] = [p][zeta]");
  }
  return t.outcome();
}

// 7 -------------------------------------------------------------------------

Outcome saturation_suite() {
  Tally t;
  padic::Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const long p = trial % 3 == 0 ? 3 : 2;
    const int m = 1 + trial % 3;
    const int rows = 2 + static_cast<int>(rng.below(4));
    const int r = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(rows)));
    const int cols = r + static_cast<int>(rng.below(3));
    auto k = Field::make(p, m, 24);
    const std::string tag = "trial " + std::to_string(trial);

    // M = U diag(p^e_1, ..., p^e_r, 0, ...) V: its saturation is spanned by U's first r columns.
    PadicMatrix u = rng.unimodular(k, rows);
    PadicMatrix v = rng.unimodular(k, cols);
    PadicMatrix dmat = padic::materialize(PadicMatrix::Zero(rows, cols), k);
    for (int i = 0; i < r; ++i) dmat(i, i) = Padic::prime_power(k, static_cast<long>(rng.below(6)));
    PadicMatrix mat = padic::product(padic::product(u, dmat), v);
    PadicMatrix planted = u.leftCols(r);

    PadicMatrix s;
    try {
      s = padic::saturate_lattice(mat);
    } catch (const std::exception& e) {
      t.expect(false, tag + " " + e.what());
      continue;
    }
    t.expect(s.cols() == r, tag + " rank");
    auto cert = padic::certified_rank(s);
    bool units = cert.rank == r;
    for (const auto& dv : cert.divisors) units = units && dv == padic::Valuation::exactly(0);
    t.expect(units, tag + " unit divisors");
    t.expect(padic::same_column_space(s, mat), tag + " span over K");
    // Two saturated lattices with one K-span coincide.
    t.expect(padic::same_column_space(s, planted), tag + " planted lattice");
  }
  return t.outcome();
}

// 8 -------------------------------------------------------------------------

std::pair<int, std::string> run_process(const std::string& command) {
  std::string out;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = ::pclose(pipe);
  return {status, out};
}

Outcome determinism(const std::string& cli_path) {
  Tally t;
  auto field = Field::make(2, 1, 32);
  auto rational = std::filesystem::temp_directory_path() / "ltdr_acceptance_matrix.json";
  std::ofstream(rational) << padic::to_json(padic::from_integers(field, {{1, 1}, {1, 1}}), field).dump();

  const std::vector<std::vector<std::string>> commands{
      {"models", "--n", "1"},
      {"models", "--n", "2"},
      {"models", "--n", "4", "--precision", "32"},
      {"correspond", "--n", "2", "--m", "2", "--seed", "7"},
      {"correspond", "--n", "3", "--m", "3", "--p", "3", "--seed", "5"},
      {"correspond", "--matrix", rational.string()},
      {"correspond", "--n", "2", "--m", "1"},
      {"ledger", "--p", "2", "--h", "3", "--i0", "0"},
      {"ledger", "--heights", "2,3,6,1"},
      {"ledger", "--heights", "2,3,5,1"},
      {"formal-group", "--p", "2", "--h", "1", "--D", "4"},
      {"formal-group", "--p", "2", "--h", "2", "--D", "8"},
      {"formal-group", "--p", "3", "--h", "1", "--D", "3"},
      {"models", "--n", "2", "--pretty"},
  };
  for (const auto& c : commands) {
    std::string line;
    for (const auto& a : c) line += " " + a;
    if (!cli_path.empty()) {
      const std::string cmd = "env -u PADIC_PRECISION '" + cli_path + "'" + line + " 2>/dev/null";
      auto a = run_process(cmd), b = run_process(cmd);
      t.expect(a.first == b.first && a.second == b.second, line);
      t.expect(a.second.empty() || a.second.back() == '\n', line + " newline");
    } else {
      auto a = cli::run(c), b = cli::run(c);
      t.expect(a.code == b.code && a.out == b.out, line);
    }
  }
  return t.outcome(cli_path.empty() ? "in-process" : "via executable");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli_path = argc > 1 ? argv[1] : "";
  struct Criterion {
    const char* name;
    double budget_seconds;  // 0: no budget
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"CM valuation tables", 1.0, cm_tables},
      {"slope suite", 30.0, slope_suite},
      {"correspondence suite", 0.0, correspondence_suite},
      {"action suite", 0.0, action_suite},
      {"height ledger", 0.0, height_grid},
      {"formal group", 10.0, formal_groups},
      {"lattice saturation", 0.0, saturation_suite},
      {"CLI determinism", 0.0, [&] { return determinism(cli_path); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
      o.pass = false;
      o.detail += ", over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget";
    }
    if (!o.pass) ++failed;
    std::printf("%s  %zu  %-22s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", i + 1, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
