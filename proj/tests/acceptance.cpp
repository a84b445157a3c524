// Acceptance suite. Usage: acceptance [criterion ...]
// With no argument every criterion runs. One PASS/FAIL line per criterion.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "colsim/collision_engine.hpp"
#include "colsim/experiments.hpp"
#include "colsim/model.hpp"
#include "colsim/observables.hpp"
#include "colsim/tensor_algebra.hpp"

using namespace colsim;

namespace {

// Pinned tolerances.
constexpr double kNullCurrent = 1e-8;
constexpr double kConvergedRelativeDeviation = 0.02;
constexpr double kSmallCurrentFloor = 1e-12;
constexpr double kWeakCouplingDeviationEdge = 0.08;
constexpr double kCorrelationCurrentRelative = 1e-6;
constexpr double kRectificationOffResonant = 0.99;
constexpr double kRectificationAnisotropic = 0.98;
constexpr double kMonotoneSlack = 1e-7;
constexpr double kUnitarity = 1e-12;
constexpr double kFirstLaw = 1e-10;
constexpr double kDiscordZero = 1e-7;
constexpr double kOracleSlack = 1e-9;
constexpr double kDensityTrace = 1e-10;
constexpr double kDensityNegativity = 1e-10;
constexpr double kDensityHermiticity = 1e-12;
constexpr double kMetricSlack = 1e-12;
constexpr double kWorkNegligible = 0.1;
constexpr double kWorkSameOrderLow = 0.1;
constexpr double kWorkSameOrderHigh = 10.0;
// Same tolerance the off-resonant presets carry.
constexpr double kTightSteadyTolerance = 1e-12;

int g_failures = 0;

void detail(const char* fmt, auto... args) {
  std::printf("    ");
  std::printf(fmt, args...);
  std::printf("\n");
}

struct Outcome {
  bool pass;
  std::string summary;
};

ModelParams symmetric(double gamma, double delta, SimulationMode mode) {
  ModelParams p;
  p.T1 = 5.0;
  p.T2 = 1.0;
  p.gamma = gamma;
  p.delta = delta;
  p.mode = mode;
  return p;
}

ModelParams off_resonant(double delta, double T1, double T2, SimulationMode mode) {
  ModelParams p;
  p.omega1 = 2.0;
  p.gamma = 0.3;
  p.delta = delta;
  p.T1 = T1;
  p.T2 = T2;
  p.sys_coupling = CouplingForm::ZZ;
  p.bath_coupling = CouplingForm::XX;
  p.mode = mode;
  return p;
}

const DensityMatrix& ket11() {
  static const DensityMatrix rho = DensityMatrix::basis_state(4, 3);
  return rho;
}

// Rows of one series of a sweep, in sweep order.
std::vector<ResultRow> series_rows(const std::vector<ResultRow>& rows, std::size_t series) {
  std::vector<ResultRow> out;
  for (const auto& r : rows)
    if (r.series_index == series) out.push_back(r);
  return out;
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

// ---------------------------------------------------------------------------

Outcome zero_coupling_null() {
  double worst = 0.0;
  for (double gamma : {0.2, 0.5, 0.8})
    for (auto mode : {SimulationMode::Full, SimulationMode::LocalApprox}) {
      const auto rep = run_to_steady_state(ket11(), symmetric(gamma, 0.0, mode));
      detail("gamma=%.1f mode=%s J_h=%.3e converged=%d", gamma,
             std::string(to_string(mode)).c_str(), rep.J_h_energy, rep.converged);
      worst = std::max(worst, std::abs(rep.J_h_energy));
    }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max |J_h| at delta=0 is %.3e (limit %.0e)", worst, kNullCurrent);
  return {worst < kNullCurrent, buf};
}

Outcome local_approximation_limits() {
  auto cfg = preset_figure("fig2");
  const auto rows = run_sweep(cfg);
  const auto deltas = cfg.sweep->values();
  bool ok = true;
  std::string summary;

  auto curve = [&](std::size_t series) {
    std::vector<double> full, local;
    for (const auto& r : series_rows(rows, series)) {
      full.push_back(*r.full->J_h_energy);
      local.push_back(*r.local->J_h_energy);
    }
    return std::pair{full, local};
  };

  // gamma = 0.5 is series 1 of the preset.
  {
    const auto [full, local] = curve(1);
    std::vector<double> abs_dev(full.size()), rel_dev(full.size(), 0.0);
    for (std::size_t k = 0; k < full.size(); ++k) {
      abs_dev[k] = std::abs(full[k] - local[k]);
      if (std::abs(full[k]) > kSmallCurrentFloor) rel_dev[k] = abs_dev[k] / std::abs(full[k]);
    }
    std::size_t converged_at = full.size();
    for (std::size_t k = 1; k < full.size(); ++k)
      if (std::abs(full[k]) > kSmallCurrentFloor && rel_dev[k] < kConvergedRelativeDeviation) {
        converged_at = k;
        break;
      }
    bool ordered = true;
    for (std::size_t k = 0; k < converged_at; ++k)
      if (local[k] > full[k] + kSmallCurrentFloor) {
        ordered = false;
        detail("(a) violated at delta=%.4f: local %.6e > full %.6e", deltas[k], local[k], full[k]);
      }
    const std::size_t peak = argmax(abs_dev);
    const bool shape = abs_dev.front() < kSmallCurrentFloor && peak > 0 && peak + 1 < abs_dev.size() &&
                       rel_dev.back() < kConvergedRelativeDeviation;
    detail("(a) local <= full before convergence (first rel dev < 2%% at delta=%.4f): %s",
           converged_at < deltas.size() ? deltas[converged_at] : NAN, ordered ? "yes" : "no");
    detail("(b) |dev| at 0 = %.2e, peak at delta=%.4f (%.3e), rel dev at delta=%.2f = %.4f",
           abs_dev.front(), deltas[peak], abs_dev[peak], deltas.back(), rel_dev.back());
    ok = ok && ordered && shape;
    summary += std::string("(a) ") + (ordered ? "ok" : "fail") + ", (b) " + (shape ? "ok" : "fail");
  }

  // gamma = 0.2 is series 0.
  {
    const auto [full, local] = curve(0);
    double widest = 0.0;
    for (std::size_t k = 0; k < full.size(); ++k) {
      if (std::abs(full[k]) <= kSmallCurrentFloor) continue;
      const double rel = std::abs(full[k] - local[k]) / std::abs(full[k]);
      if (rel > kConvergedRelativeDeviation) widest = std::max(widest, deltas[k]);
    }
    const bool narrow = widest < kWeakCouplingDeviationEdge;
    detail("(c) gamma=0.2: largest delta with rel dev > 2%% is %.4f (limit %.2f)", widest,
           kWeakCouplingDeviationEdge);
    ok = ok && narrow;
    summary += std::string(", (c) ") + (narrow ? "ok" : "fail");
  }
  return {ok, summary};
}

std::vector<ResultRow> fig3_rows() {
  static const auto rows = run_sweep(preset_figure("fig3"));
  return rows;
}

std::vector<ResultRow> fig4_rows() {
  static const auto rows = run_sweep(preset_figure("fig4"));
  return rows;
}

Outcome trace_distance_peak_shift() {
  const auto cfg = preset_figure("fig3");
  const auto deltas = cfg.sweep->values();
  const auto rows = fig3_rows();
  const auto& gammas = cfg.series.columns.front().second;
  std::vector<double> peaks;
  bool shaped = true;
  for (std::size_t s = 0; s < gammas.size(); ++s) {
    std::vector<double> td;
    for (const auto& r : series_rows(rows, s)) td.push_back(*r.trace_distance);
    const std::size_t k = argmax(td);
    const bool rise_fall = td.front() < td[k] && td.back() < td[k] && k > 0 && k + 1 < td.size();
    shaped = shaped && rise_fall;
    peaks.push_back(deltas[k]);
    detail("gamma=%.1f: D_T(0)=%.2e, peak %.4e at delta'=%.4f, D_T(%.2f)=%.3e", gammas[s],
           td.front(), td[k], deltas[k], deltas.back(), td.back());
  }
  const bool increasing = std::is_sorted(peaks.begin(), peaks.end(), std::less_equal<>{}) &&
                          std::adjacent_find(peaks.begin(), peaks.end()) == peaks.end();
  return {shaped && increasing,
          std::string("rise-then-fall ") + (shaped ? "ok" : "fail") + ", delta' increasing in gamma " +
              (increasing ? "ok" : "fail")};
}

Outcome correlation_heat_current() {
  double worst = 0.0;
  for (double delta : {0.1, 0.5, 1.0}) {
    const auto p = symmetric(0.5, delta, SimulationMode::Full);
    const auto rep = run_to_steady_state(ket11(), p);
    const double corr = heat_current_correlation(p, rep.steady_rho);
    const double rel = std::abs(corr - rep.J_h_energy) / std::abs(rep.J_h_energy);
    detail("delta=%.1f: J_h=%.12e correlation=%.12e rel=%.2e", delta, rep.J_h_energy, corr, rel);
    worst = std::max(worst, rel);
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max relative gap %.2e (limit %.0e)", worst,
                kCorrelationCurrentRelative);
  return {worst < kCorrelationCurrentRelative, buf};
}

Outcome local_null_off_resonant() {
  double worst = 0.0;
  for (double delta : {0.02, 0.3, 1.0})
    for (double gamma : {0.1, 0.3, 0.8})
      for (auto [T1, T2] : {std::pair{10.0, 0.1}, std::pair{0.1, 10.0}, std::pair{5.0, 1.0}}) {
        auto p = off_resonant(delta, T1, T2, SimulationMode::LocalApprox);
        p.gamma = gamma;
        const auto rep = run_to_steady_state(ket11(), p);
        worst = std::max(worst, std::abs(rep.J_h_energy));
      }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max |J_h| over 27 points is %.3e (limit %.0e)", worst,
                kNullCurrent);
  return {worst < kNullCurrent, buf};
}

Outcome rectification_off_resonant() {
  auto cfg = preset_figure("fig5");
  cfg.series.columns = {{ParamVariable::T2, {0.1}}};
  const auto rows = run_sweep(cfg);
  double worst = INFINITY;
  for (const auto& r : rows) {
    const double R = r.rectification.value_or(0.0);
    worst = std::min(worst, R);
    if (r.sweep_index % 10 == 0 || r.sweep_index + 1 == rows.size())
      detail("delta=%.2f: J(10,0.1)=%.4e J(0.1,10)=%.4e R=%.4f", r.params.delta,
             *r.full->J_h_energy, *r.J_h_reversed, R);
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "min R over the sweep is %.4f (required >= %.2f)", worst,
                kRectificationOffResonant);
  return {worst >= kRectificationOffResonant, buf};
}

Outcome equal_temperature_anomaly() {
  auto cfg = preset_figure("fig6");
  cfg.series.columns = {{ParamVariable::T1, {10.0, 5.0}}, {ParamVariable::T2, {10.0, 10.0}}};
  const auto rows = run_sweep(cfg);
  bool equal_ok = true;
  for (const auto& r : series_rows(rows, 0)) {
    if (r.params.delta <= 0.0) continue;
    const double J = *r.full->J_h_energy;
    if (!(J > 0.0)) equal_ok = false;
    if (r.sweep_index % 10 == 0) detail("T1=T2=10 delta=%.2f: J_h=%.4e", r.params.delta, J);
  }
  // Smallest positive delta on the sweep.
  const auto inverted = series_rows(rows, 1);
  const double J_small = *inverted.at(1).full->J_h_energy;
  const bool inversion_ok = J_small > 0.0;
  detail("T1=5 T2=10 delta=%.2f: J_h=%.4e", inverted.at(1).params.delta, J_small);
  return {equal_ok && inversion_ok, std::string("J(10,10) > 0 ") + (equal_ok ? "ok" : "fail") +
                                        ", J(5,10) > 0 at small delta " +
                                        (inversion_ok ? "ok" : "fail")};
}

Outcome rectification_anisotropic() {
  const auto rows = run_sweep(preset_figure("fig9"));
  double worst = INFINITY;
  std::vector<double> R;
  for (const auto& r : rows) {
    R.push_back(r.rectification.value_or(0.0));
    worst = std::min(worst, R.back());
    if (r.sweep_index % 10 == 0 || r.sweep_index + 1 == rows.size())
      detail("delta=%.2f: J(10,1)=%.4e J(1,10)=%.4e R=%.4f", r.params.delta, *r.full->J_h_energy,
             *r.J_h_reversed, R.back());
  }
  const bool decreasing = std::is_sorted(R.rbegin(), R.rend());
  char buf[160];
  std::snprintf(buf, sizeof buf, "min R %.4f (required >= %.2f), decreasing in delta %s", worst,
                kRectificationAnisotropic, decreasing ? "ok" : "fail");
  return {worst >= kRectificationAnisotropic && decreasing, buf};
}

Outcome correlation_validity_link() {
  bool ok = true;
  std::string summary;
  {
    const auto cfg = preset_figure("fig3");
    const auto deltas = cfg.sweep->values();
    const double spacing = deltas[1] - deltas[0];
    const auto& gammas = cfg.series.columns.front().second;
    const auto td_rows = fig3_rows();
    const auto dc_rows = fig4_rows();
    bool aligned = true;
    for (std::size_t s = 0; s < gammas.size(); ++s) {
      std::vector<double> td, dc;
      for (const auto& r : series_rows(td_rows, s)) td.push_back(*r.trace_distance);
      for (const auto& r : series_rows(dc_rows, s)) dc.push_back(*r.discord);
      const double d_td = deltas[argmax(td)];
      const double d_dc = deltas[argmax(dc)];
      const bool near = std::abs(d_td - d_dc) <= spacing * (1.0 + 1e-9);
      aligned = aligned && near;
      detail("gamma=%.1f: trace-distance peak %.4f, discord peak %.4f (spacing %.4f) %s",
             gammas[s], d_td, d_dc, spacing, near ? "ok" : "apart");
    }
    ok = ok && aligned;
    summary += std::string("resonant peaks ") + (aligned ? "aligned" : "apart");
  }
  {
    const auto td_rows = run_sweep(preset_figure("fig7"));
    const auto dc_rows = run_sweep(preset_figure("fig8"));
    bool monotone = true;
    double max_discord = 0.0;
    for (std::size_t s = 0; s < preset_figure("fig7").series.size(); ++s) {
      const auto td = series_rows(td_rows, s);
      const auto dc = series_rows(dc_rows, s);
      // Open interval at zero: start from the first positive delta.
      for (std::size_t k = 2; k < td.size(); ++k) {
        if (*td[k].trace_distance + kMonotoneSlack < *td[k - 1].trace_distance) {
          monotone = false;
          detail("trace distance drops at delta=%.2f (T2=%.1f)", td[k].params.delta, td[k].params.T2);
        }
        if (*dc[k].discord + kMonotoneSlack < *dc[k - 1].discord) {
          monotone = false;
          detail("discord drops at delta=%.2f (T2=%.1f)", dc[k].params.delta, dc[k].params.T2);
        }
      }
      for (const auto& r : dc) max_discord = std::max(max_discord, *r.discord);
      detail("T2=%.1f: D_T(%.2f)=%.3e -> D_T(%.2f)=%.3e", td[1].params.T2, td[1].params.delta,
             *td[1].trace_distance, td.back().params.delta, *td.back().trace_distance);
    }
    detail("off-resonant max discord over all curves: %.3e", max_discord);
    ok = ok && monotone;
    summary += std::string(", off-resonant monotone ") + (monotone ? "ok" : "fail");
  }
  return {ok, summary};
}

DensityMatrix random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  ComplexMatrix g(4, 4);
  for (Eigen::Index r = 0; r < 4; ++r)
    for (Eigen::Index c = 0; c < 4; ++c) g(r, c) = Complex(n(rng), n(rng));
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

Outcome invariant_suites() {
  std::mt19937_64 rng(20240601);
  bool ok = true;
  std::string summary;

  const std::vector<CouplingForm> forms{CouplingForm::XX_YY, CouplingForm::XX_YY_ZZ,
                                        CouplingForm::ZZ, CouplingForm::XX, CouplingForm::ZX};
  std::vector<ModelParams> cases;
  for (auto sys : forms)
    for (auto bath : forms)
      for (auto mode : {SimulationMode::Full, SimulationMode::LocalApprox}) {
        ModelParams p;
        p.omega1 = 1.7;
        p.omega2 = 0.8;
        p.delta = 0.6;
        p.gamma = 0.45;
        p.T1 = 3.0;
        p.T2 = 0.7;
        p.sys_coupling = sys;
        p.bath_coupling = bath;
        p.mode = mode;
        cases.push_back(p);
      }

  double unit = 0.0;
  for (const auto& p : cases) {
    unit = std::max(unit, unitarity_defect(system_unitary(p)));
    for (auto side : {Side::First, Side::Second}) {
      unit = std::max(unit, unitarity_defect(collision_unitary_full(p, side)));
      unit = std::max(unit, unitarity_defect(collision_unitary_local(p, side)));
    }
  }
  const bool unit_ok = unit <= kUnitarity;
  detail("unitarity defect max %.2e over %zu parameter sets", unit, cases.size());

  // 10^4 rounds from a random start, checked every round.
  double trace_err = 0.0, min_eig = 1.0, herm = 0.0, first_law = 0.0;
  for (std::size_t c = 0; c < cases.size(); c += 7) {
    RoundPropagator prop(cases[c]);
    DensityMatrix rho = random_state(rng);
    for (int n = 0; n < 10000; ++n) {
      auto [next, ledger] = prop.step(rho);
      rho = std::move(next);
      trace_err = std::max(trace_err, std::abs(rho.matrix().trace().real() - 1.0));
      herm = std::max(herm, max_abs(rho.matrix() - rho.matrix().adjoint()));
      min_eig = std::min(min_eig, rho.eigenvalues().minCoeff());
      const auto audit = first_law_audit(ledger, cases[c]);
      first_law = std::max({first_law, std::abs(audit.residual1), std::abs(audit.residual2)});
    }
  }
  const bool density_ok =
      trace_err <= kDensityTrace && min_eig >= -kDensityNegativity && herm <= kDensityHermiticity;
  const bool law_ok = first_law <= kFirstLaw;
  detail("after 1e4 rounds: trace err %.2e, min eigenvalue %.2e, hermiticity %.2e", trace_err,
         min_eig, herm);
  detail("first-law residual max %.2e", first_law);

  double min_discord = INFINITY, product_discord = 0.0, oracle_gap = -INFINITY;
  for (int k = 0; k < 100; ++k) {
    const auto rho = random_state(rng);
    const auto d = quantum_discord(rho);
    const double oracle = discord_grid_oracle(rho, 100);
    min_discord = std::min(min_discord, d.value);
    oracle_gap = std::max(oracle_gap, d.value - oracle);
    const auto a = partial_trace(rho, {0}, TensorLayout::qubits(2));
    const auto b = partial_trace(rho, {1}, TensorLayout::qubits(2));
    product_discord =
        std::max(product_discord, quantum_discord(DensityMatrix(kron(a.matrix(), b.matrix()))).value);
  }
  const bool discord_ok =
      min_discord >= -kDiscordZero && product_discord <= kDiscordZero && oracle_gap <= kOracleSlack;
  detail("discord: min %.2e, product-state max %.2e, optimizer - oracle max %.2e", min_discord,
         product_discord, oracle_gap);

  double metric_violation = 0.0;
  for (int k = 0; k < 200; ++k) {
    const auto a = random_state(rng), b = random_state(rng), c = random_state(rng);
    const double ab = trace_distance(a, b), ba = trace_distance(b, a);
    const double ac = trace_distance(a, c), cb = trace_distance(c, b);
    metric_violation = std::max({metric_violation, std::abs(ab - ba), ab - (ac + cb), -ab,
                                 ab - 1.0, trace_distance(a, a)});
  }
  const bool metric_ok = metric_violation <= kMetricSlack;
  detail("trace-distance axioms: worst violation %.2e", metric_violation);

  ok = unit_ok && density_ok && law_ok && discord_ok && metric_ok;
  summary = std::string("unitarity ") + (unit_ok ? "ok" : "fail") + ", density " +
            (density_ok ? "ok" : "fail") + ", first law " + (law_ok ? "ok" : "fail") +
            ", discord " + (discord_ok ? "ok" : "fail") + ", metric " + (metric_ok ? "ok" : "fail");
  return {ok, summary};
}

Outcome work_magnitude_classification() {
  double resonant_worst = 0.0;
  for (double gamma : {0.2, 0.5, 0.8})
    for (double delta : {0.1, 0.5, 1.0, 2.0}) {
      const auto rep = run_to_steady_state(ket11(), symmetric(gamma, delta, SimulationMode::Full));
      resonant_worst = std::max(resonant_worst, std::abs(rep.W_sw) / std::abs(rep.J_h_energy));
    }
  double lo = INFINITY, hi = 0.0;
  for (double delta : {0.1, 0.5, 1.0})
    for (auto [T1, T2] : {std::pair{10.0, 0.1}, std::pair{0.1, 10.0}}) {
      const auto rep = run_to_steady_state(ket11(), off_resonant(delta, T1, T2, SimulationMode::Full),
                                           kTightSteadyTolerance);
      const double ratio = std::abs(rep.W_sw) / std::abs(rep.J_h_energy);
      detail("off-resonant delta=%.1f T=(%.1f,%.1f): W_sw=%.3e J_h=%.3e ratio=%.3g", delta, T1, T2,
             rep.W_sw, rep.J_h_energy, ratio);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  const bool resonant_ok = resonant_worst < kWorkNegligible;
  const bool off_ok = lo >= kWorkSameOrderLow && hi <= kWorkSameOrderHigh;
  detail("resonant exchange: max |W_sw|/|J_h| = %.3e", resonant_worst);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "resonant max ratio %.2e (< %.1f) %s; off-resonant ratio in [%.3g, %.3g] "
                "(required [%.1f, %.0f]) %s",
                resonant_worst, kWorkNegligible, resonant_ok ? "ok" : "fail", lo, hi,
                kWorkSameOrderLow, kWorkSameOrderHigh, off_ok ? "ok" : "fail");
  return {resonant_ok && off_ok, buf};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"zero_coupling_null", zero_coupling_null},
      {"local_approximation_limits", local_approximation_limits},
      {"trace_distance_peak_shift", trace_distance_peak_shift},
      {"correlation_heat_current", correlation_heat_current},
      {"local_null_off_resonant", local_null_off_resonant},
      {"rectification_off_resonant", rectification_off_resonant},
      {"equal_temperature_anomaly", equal_temperature_anomaly},
      {"rectification_anisotropic", rectification_anisotropic},
      {"correlation_validity_link", correlation_validity_link},
      {"invariant_suites", invariant_suites},
      {"work_magnitude_classification", work_magnitude_classification},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  for (const auto& w : wanted)
    if (std::none_of(criteria.begin(), criteria.end(), [&](const auto& c) { return c.first == w; })) {
      std::fprintf(stderr, "unknown criterion '%s'\n", w.c_str());
      return 2;
    }
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
    std::printf("[%2d] %s\n", index, name.c_str());
    Outcome out;
    try {
      out = fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", out.pass ? "PASS" : "FAIL", name.c_str(), out.summary.c_str());
    std::fflush(stdout);
    if (!out.pass) ++g_failures;
  }
  return g_failures == 0 ? 0 : 1;
}
