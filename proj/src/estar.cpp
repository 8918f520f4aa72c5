#include "zdl/estar.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "zdl/fit.hpp"

namespace zdl {

using nlohmann::json;

namespace {

constexpr double kThreePiOver4 = 3.0 * kPi / 4.0;

void kadd(double& sum, double& comp, double v) {
  const double y = v - comp;
  const double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}

}  // namespace

// ---------------------------------------------------------------------------
// EStarEvaluator

EStarEvaluator::EStarEvaluator(const DivisorTable& table, double crossover,
                               double grid_h)
    : table_(table), sums_(table), crossover_(crossover), grid_h_(grid_h) {
  if (!(crossover >= 100.0))
    throw PreconditionError("EStarEvaluator: crossover must be >= 100");
  if (!(grid_h > 0.0))
    throw PreconditionError("EStarEvaluator: grid spacing must be positive");
}

const ESampleGrid& EStarEvaluator::grid(double t_hi) const {
  const double want = std::max(crossover_, t_hi);
  if (!grid_ || grid_->t_max < want)
    grid_ = std::make_unique<ESampleGrid>(build_e_sample_grid(want, grid_h_));
  return *grid_;
}

double EStarEvaluator::delta_star_at(double t) const {
  const double x = t / kTwoPi;
  if (4.0 * x <= double(table_.n_max)) return delta_star_exact(x, table_);
  // Beyond the table: truncated Voronoi series with enough terms that the
  // heuristic tail x^{0.51}/sqrt(N) stays O(1).
  const auto n_trunc = std::min<std::uint64_t>(
      table_.n_max, std::uint64_t(std::pow(x, 1.02)) + 1024);
  return delta_star_voronoi(x, n_trunc, table_).value;
}

ErrorSample EStarEvaluator::sample(double t, ESource mode) const {
  if (!(t >= 10.0)) throw PreconditionError("e_star: t must be >= 10");
  ErrorSample s;
  s.t = t;
  s.source = mode;
  if (mode == ESource::quadrature) {
    const ESampleGrid& g = grid(t);
    s.E = g.E_at(t);
    s.est_err = g.est_at(t);
  } else {
    const AtkinsonEval ev = sums_.evaluate(t);
    s.E = ev.E_approx;
    // Atkinson's formula carries the O(log^2 t) error; 10 log^2 t is the
    // calibrated envelope (see the atkinson acceptance claim).
    s.est_err = 10.0 * std::log(t) * std::log(t);
  }
  s.delta_star = delta_star_at(t);
  s.e_star = s.E - kTwoPi * s.delta_star;
  return s;
}

ErrorSample EStarEvaluator::sample(double t) const {
  return sample(t, t <= crossover_ ? ESource::quadrature
                                   : ESource::atkinson_surrogate);
}

// ---------------------------------------------------------------------------
// master moment scan

double MasterScan::halving_rel(std::size_t quantity) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < T.size(); ++i) {
    const double f = fine[quantity][i];
    const double c = coarse[quantity][i];
    worst = std::max(worst, std::abs(f - c) / std::max(std::abs(f), 1e-300));
  }
  return worst;
}

MasterScan run_master_scan(const EStarEvaluator& ev, double t_max, double step,
                           std::span<const double> checkpoints) {
  if (!(t_max > 0.0) || !(step > 0.0) || t_max < 8.0 * step)
    throw PreconditionError("run_master_scan: need t_max >= 8*step > 0");
  if (4.0 * ev.grid_h() != step)
    throw PreconditionError(
        "run_master_scan: scan step must equal 4x the evaluator grid spacing");
  if (checkpoints.empty())
    throw PreconditionError("run_master_scan: no checkpoints given");

  const double h = 0.5 * step;  // fine node spacing
  auto n = std::uint64_t(std::ceil(t_max / h));
  n = (n + 3) / 4 * 4;

  // Last fine node at or below the crossover, aligned to a coarse panel
  // boundary so the source switch never lands inside a Simpson panel.
  const ESampleGrid& g = ev.grid();
  auto j_cross = std::min(n, std::uint64_t(ev.crossover() / h)) / 4 * 4;
  while (2 * j_cross >= g.I.size()) j_cross -= 4;

  const AtkinsonSums& sums = ev.sums();
  const DivisorTable& table = ev.table();

  // Phase 1: every node value, parallel over disjoint blocks.  Both E* and
  // E itself are kept: the R(t) stream integrates E by quadrature but
  // handles the Delta* part in closed form (it has jump discontinuities
  // that would otherwise dominate the step-halving error).
  std::vector<double> es(n + 1), Ev(n + 1);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t j = 1; j <= std::int64_t(n); ++j) {
    const double t = double(j) * h;
    double E;
    if (std::uint64_t(j) <= j_cross)
      E = g.I[std::size_t(2 * j)] -
          t * (std::log(t / kTwoPi) + 2.0 * kEulerGamma - 1.0);
    else
      E = sums.evaluate(t).E_approx;
    const double x = t / kTwoPi;
    Ev[std::size_t(j)] = E;
    es[std::size_t(j)] = E - kTwoPi * delta_star_exact(x, table);
  }
  es[0] = Ev[0] = 0.0;  // E(0) = 0 and Delta*(0+) -> 0

  // Snapshot indices: nearest multiple of 4 fine nodes (= 2*step in t).
  std::vector<std::uint64_t> snaps;
  for (double cp : checkpoints) {
    const auto j = std::clamp<std::uint64_t>(
        std::uint64_t(std::llround(cp / (4.0 * h))) * 4, 4, n);
    snaps.push_back(j);
  }
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());

  MasterScan scan;
  scan.t_max = t_max;
  scan.step = step;
  // record the policy crossover, not the panel-aligned frontier j_cross*h:
  // caches are matched against the configured value on reload
  scan.crossover = ev.crossover();
  scan.n_max = table.n_max;

  // Phase 2: one serial deterministic accumulation pass.
  // Quantities 1..5 integrate |E*|^k by composite Simpson; quantity 0
  // (signed int E*) and quantity 6 (R^2) split off the Delta* part, whose
  // exact prefix integral is
  //   D(t) = (1/2)[ (pi/2) sum_{m<M} A(m) + A(M)(t - M pi/2) ]
  //          - 2 pi Mint(t/(2 pi)),   M = floor(t/(pi/2)),
  // with A(m) the alternating divisor prefix (constant on each piece) and
  // Mint(X) = int_0^X x(log x + 2 gamma - 1) dx in closed form, so only the
  // smooth E part needs quadrature.  "fine" = step h, "coarse" = 2h.
  constexpr std::size_t kQ = MasterScan::kQuantities;
  static_assert(kQ == 7);
  constexpr double kPiOver2 = kPi / 2.0;
  auto q_of = [](double e, std::size_t q) {
    const double a = std::abs(e);
    switch (q) {
      case 1: return a;
      case 2: return e * e;
      case 3: return a * a * a;
      case 4: return e * e * e * e;
      default: return a * a * a * a * a;
    }
  };
  std::int64_t S = 0;  // sum of alternating prefixes over completed pieces
  std::uint64_t M = 0;
  auto D_at = [&](double t) {
    while (double(M + 1) * kPiOver2 <= t) {
      S += table.alt_prefix[M];
      ++M;
    }
    const double x = t / kTwoPi;
    const double mint =
        x * x * (0.5 * std::log(x) + kEulerGamma - 0.75);
    return 0.5 * (double(S) * kPiOver2 +
                  double(table.alt_prefix[M]) * (t - double(M) * kPiOver2)) -
           kTwoPi * mint;
  };
  double fineS[kQ] = {}, fineC[kQ] = {};
  double coarseS[kQ] = {}, coarseC[kQ] = {};
  double PE = 0.0, PEc = 0.0, PEcomp = 0.0, PEccomp = 0.0;  // prefixes of E
  double prevR2 = 0.0, prevR2c = 0.0;
  std::size_t next_snap = 0;
  for (std::uint64_t j = 1; j <= n && next_snap < snaps.size(); ++j) {
    const double t = double(j) * h;
    kadd(PE, PEcomp, 0.5 * h * (Ev[j - 1] + Ev[j]));
    const double D = D_at(t);
    const double R = PE - kTwoPi * D - kThreePiOver4 * t;
    kadd(fineS[6], fineC[6], 0.5 * h * (prevR2 + R * R));
    prevR2 = R * R;
    if (j % 2 == 0) {
      kadd(fineS[0], fineC[0],
           h / 3.0 * (Ev[j - 2] + 4.0 * Ev[j - 1] + Ev[j]));
      for (std::size_t q = 1; q < 6; ++q)
        kadd(fineS[q], fineC[q],
             h / 3.0 * (q_of(es[j - 2], q) + 4.0 * q_of(es[j - 1], q) +
                        q_of(es[j], q)));
      kadd(PEc, PEccomp, h * (Ev[j - 2] + Ev[j]));
      const double Rc = PEc - kTwoPi * D - kThreePiOver4 * t;
      kadd(coarseS[6], coarseC[6], h * (prevR2c + Rc * Rc));
      prevR2c = Rc * Rc;
    }
    if (j % 4 == 0) {
      kadd(coarseS[0], coarseC[0],
           2.0 * h / 3.0 * (Ev[j - 4] + 4.0 * Ev[j - 2] + Ev[j]));
      for (std::size_t q = 1; q < 6; ++q)
        kadd(coarseS[q], coarseC[q],
             2.0 * h / 3.0 * (q_of(es[j - 4], q) + 4.0 * q_of(es[j - 2], q) +
                              q_of(es[j], q)));
      if (j == snaps[next_snap]) {
        scan.T.push_back(t);
        const double DD = kTwoPi * D;
        scan.fine[0].push_back(fineS[0] - DD);
        scan.coarse[0].push_back(coarseS[0] - DD);
        for (std::size_t q = 1; q < kQ; ++q) {
          scan.fine[q].push_back(fineS[q]);
          scan.coarse[q].push_back(coarseS[q]);
        }
        ++next_snap;
      }
    }
  }
  return scan;
}

MomentReport moment_report(const MasterScan& scan, double k, double T_lo,
                           double T_hi) {
  MomentReport rep;
  rep.k = k;
  const auto ki = std::int64_t(k);
  if (double(ki) != k || ki < 0 || ki > 5)
    throw PreconditionError("moment_report: k must be an integer in [0, 5]");
  std::vector<double> T_sel, I_sel;
  for (std::size_t i = 0; i < scan.T.size(); ++i) {
    if (scan.T[i] < T_lo || scan.T[i] > T_hi) continue;
    T_sel.push_back(scan.T[i]);
    I_sel.push_back(ki == 0 ? scan.T[i] : scan.fine[std::size_t(ki)][i]);
  }
  if (ki != 0) {
    // Step-halving stability gate over the selected checkpoints.
    double worst = 0.0;
    for (std::size_t i = 0; i < scan.T.size(); ++i) {
      if (scan.T[i] < T_lo || scan.T[i] > T_hi) continue;
      const double f = scan.fine[std::size_t(ki)][i];
      const double c = scan.coarse[std::size_t(ki)][i];
      worst = std::max(worst, std::abs(f - c) / std::max(std::abs(f), 1e-300));
    }
    if (worst >= 0.01)
      throw RefinementError(
          "moment_report: step halving moved an integral by >= 1%");
  }
  rep.T_values = std::move(T_sel);
  rep.integrals = std::move(I_sel);
  const ExponentFit fit = fit_exponent(rep.T_values, rep.integrals);
  rep.fitted_exponent = fit.exponent;
  rep.fit_residual = fit.rms;
  return rep;
}

MomentReport moment_scan(const EStarEvaluator& ev, double k,
                         std::span<const double> T_list, double step,
                         std::optional<ESource> forced) {
  if (!(k >= 0.0)) throw PreconditionError("moment_scan: k must be >= 0");
  if (T_list.empty() || !(step > 0.0))
    throw PreconditionError("moment_scan: need checkpoints and step > 0");
  const double t_max = *std::max_element(T_list.begin(), T_list.end());
  if (!(t_max >= 8.0 * step))
    throw PreconditionError("moment_scan: max T must be >= 8*step");

  const double h = 0.5 * step;
  auto n = std::uint64_t(std::ceil(t_max / h));
  n = (n + 3) / 4 * 4;

  const double cross =
      forced ? (*forced == ESource::quadrature ? t_max + 1.0 : 0.0)
             : ev.crossover();
  const ESampleGrid& g = ev.grid(std::min(cross, double(n) * h));
  const AtkinsonSums& sums = ev.sums();
  const DivisorTable& table = ev.table();

  std::vector<double> q(n + 1);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t j = 1; j <= std::int64_t(n); ++j) {
    const double t = double(j) * h;
    const double E = t <= cross ? g.E_at(t) : sums.evaluate(t).E_approx;
    const double e = E - kTwoPi * delta_star_exact(t / kTwoPi, table);
    q[std::size_t(j)] = std::pow(std::abs(e), k);
  }
  q[0] = std::pow(0.0, k);  // 1 for k = 0 (|E*|^0 = 1 a.e.), else 0

  std::vector<std::uint64_t> snaps;
  for (double cp : T_list)
    snaps.push_back(std::clamp<std::uint64_t>(
        std::uint64_t(std::llround(cp / (4.0 * h))) * 4, 4, n));
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());

  MomentReport rep;
  rep.k = k;
  double fineS = 0.0, fineC = 0.0, coarseS = 0.0, coarseC = 0.0;
  double worst = 0.0;
  std::size_t next_snap = 0;
  for (std::uint64_t j = 2; j <= n && next_snap < snaps.size(); j += 2) {
    kadd(fineS, fineC, h / 3.0 * (q[j - 2] + 4.0 * q[j - 1] + q[j]));
    if (j % 4 == 0) {
      kadd(coarseS, coarseC,
           2.0 * h / 3.0 * (q[j - 4] + 4.0 * q[j - 2] + q[j]));
      if (j == snaps[next_snap]) {
        const double t = double(j) * h;
        rep.T_values.push_back(t);
        // k = 0 degenerates to the exact length of [0, T].
        rep.integrals.push_back(k == 0.0 ? t : fineS);
        worst = std::max(worst, std::abs(fineS - coarseS) /
                                    std::max(std::abs(fineS), 1e-300));
        ++next_snap;
      }
    }
  }
  if (k != 0.0 && worst >= 0.01)
    throw RefinementError(
        "moment_scan: step halving moved an integral by >= 1%");
  const ExponentFit fit = fit_exponent(rep.T_values, rep.integrals);
  rep.fitted_exponent = fit.exponent;
  rep.fit_residual = fit.rms;
  return rep;
}

MomentReport r_square_report(const MasterScan& scan, double T_lo,
                             double T_hi) {
  MomentReport rep;
  rep.k = 2.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < scan.T.size(); ++i) {
    if (scan.T[i] < T_lo || scan.T[i] > T_hi) continue;
    rep.T_values.push_back(scan.T[i]);
    rep.integrals.push_back(scan.fine[6][i]);
    worst = std::max(worst, std::abs(scan.fine[6][i] - scan.coarse[6][i]) /
                                std::max(std::abs(scan.fine[6][i]), 1e-300));
  }
  if (worst >= 0.01)
    throw RefinementError(
        "r_square_report: step halving moved an integral by >= 1%");
  const ExponentFit fit = fit_exponent(rep.T_values, rep.integrals);
  rep.fitted_exponent = fit.exponent;
  rep.fit_residual = fit.rms;
  return rep;
}

double r_remainder(const MasterScan& scan, double T) {
  if (T == 0.0) return 0.0;
  for (std::size_t i = 0; i < scan.T.size(); ++i)
    if (std::abs(scan.T[i] - T) <= scan.step)
      return scan.fine[0][i] - kThreePiOver4 * scan.T[i];
  throw PreconditionError("r_remainder: T is not near any scan checkpoint");
}

// ---------------------------------------------------------------------------
// scan serialization

void save_master_scan(const MasterScan& scan,
                      const std::filesystem::path& path) {
  json j;
  j["schema"] = "master_scan";
  j["version"] = MasterScan::kVersion;
  j["t_max"] = scan.t_max;
  j["step"] = scan.step;
  j["crossover"] = scan.crossover;
  j["n_max"] = scan.n_max;
  j["T"] = scan.T;
  for (std::size_t q = 0; q < MasterScan::kQuantities; ++q) {
    j["fine"][q] = scan.fine[q];
    j["coarse"][q] = scan.coarse[q];
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << j.dump(1) << "\n";
}

MasterScan load_master_scan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j = json::parse(in);
  if (j.value("schema", "") != "master_scan" ||
      j.value("version", 0) != MasterScan::kVersion)
    throw std::runtime_error(path.string() + ": not a master_scan cache");
  MasterScan scan;
  scan.t_max = j.at("t_max").get<double>();
  scan.step = j.at("step").get<double>();
  scan.crossover = j.at("crossover").get<double>();
  scan.n_max = j.at("n_max").get<std::uint64_t>();
  scan.T = j.at("T").get<std::vector<double>>();
  for (std::size_t q = 0; q < MasterScan::kQuantities; ++q) {
    scan.fine[q] = j.at("fine").at(q).get<std::vector<double>>();
    scan.coarse[q] = j.at("coarse").at(q).get<std::vector<double>>();
    if (scan.fine[q].size() != scan.T.size() ||
        scan.coarse[q].size() != scan.T.size())
      throw std::runtime_error(path.string() + ": truncated scan cache");
  }
  return scan;
}

// ---------------------------------------------------------------------------
// smoothing check

SmoothingCheck smoothing_check(const EStarEvaluator& ev, double T, double G,
                               double trunc_factor) {
  if (!(G >= 2.0) || !(G <= T / (10.0 * std::log(T))))
    throw PreconditionError("smoothing_check: need 2 <= G <= T/(10 log T)");
  const double U = trunc_factor * G * std::sqrt(40.0 * std::log(T));
  if (!(T - U >= 10.0))
    throw PreconditionError("smoothing_check: T too small for the truncation");

  // Composite Simpson in u over [0, U]; E* is slowly varying on unit scale
  // (its oscillation period near T is ~ sqrt(2 pi T)), so a step well below
  // 1 resolves everything except the Delta* jumps, which average out.
  const double h = std::min(G / 10.0, 0.5);
  const auto m = std::uint64_t(std::ceil(U / (2.0 * h)));
  const double hh = U / (2.0 * double(m));
  double up = 0.0, upc = 0.0, lo = 0.0, loc = 0.0;
  auto wu = [&](double u) {
    return ev.sample(T + u).e_star * std::exp(-(u / G) * (u / G));
  };
  auto wl = [&](double u) {
    return ev.sample(T - u).e_star * std::exp(-(u / G) * (u / G));
  };
  double fu0 = wu(0.0), fl0 = wl(0.0);
  for (std::uint64_t i = 0; i < m; ++i) {
    const double u0 = 2.0 * double(i) * hh;
    const double fu1 = wu(u0 + hh), fu2 = wu(u0 + 2.0 * hh);
    const double fl1 = wl(u0 + hh), fl2 = wl(u0 + 2.0 * hh);
    kadd(up, upc, hh / 3.0 * (fu0 + 4.0 * fu1 + fu2));
    kadd(lo, loc, hh / 3.0 * (fl0 + 4.0 * fl1 + fl2));
    fu0 = fu2;
    fl0 = fl2;
  }

  SmoothingCheck out;
  out.T = T;
  out.G = G;
  out.lhs = ev.sample(T).e_star;
  const double norm = 2.0 / (std::sqrt(kPi) * G);
  out.rhs_upper = norm * up;
  out.rhs_lower = norm * lo;
  const double unit = G * std::pow(T, 0.01);
  out.margin_constant = std::max(
      {0.0, (out.lhs - out.rhs_upper) / unit, (out.rhs_lower - out.lhs) / unit});
  return out;
}

// ---------------------------------------------------------------------------
// large values

LargeValuesReport large_values(const EStarEvaluator& ev, double V, double T,
                               double scan_step) {
  if (!(T >= 100.0)) throw PreconditionError("large_values: T must be >= 100");
  const double v_lo = std::pow(T, 1.0 / 6.0);
  const double v_hi = std::pow(T, 0.25);
  if (!(V >= v_lo) || !(V <= v_hi))
    throw PreconditionError("large_values: V outside [T^{1/6}, T^{1/4}]");
  if (!(scan_step > 0.0) || scan_step > V / 10.0)
    throw PreconditionError("large_values: scan_step must be <= V/10");

  LargeValuesReport rep;
  rep.V = V;
  rep.T = T;
  rep.bound_value = std::pow(T, 1.5) / (V * V * V * V);

  // Per-window sup of |E*| on the scan grid over [T, 2T].
  const auto n_windows = std::uint64_t(std::ceil(T / V));
  std::vector<double> sup(n_windows, -1.0), arg(n_windows, 0.0);
  const auto n_pts = std::uint64_t(std::floor(T / scan_step));
  std::vector<double> vals(n_pts + 1);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i <= std::int64_t(n_pts); ++i)
    vals[std::size_t(i)] = std::abs(ev.e_star(T + double(i) * scan_step));
  for (std::uint64_t i = 0; i <= n_pts; ++i) {
    const double t = T + double(i) * scan_step;
    const auto w = std::min(n_windows - 1, std::uint64_t((t - T) / V));
    if (vals[i] > sup[w]) {
      sup[w] = vals[i];
      arg[w] = t;
    }
  }

  // Greedy left-to-right: keep band windows whose sup point clears the
  // previous selection by at least V.
  double last = -2.0 * V + T - 1.0;
  for (std::uint64_t w = 0; w < n_windows; ++w) {
    if (sup[w] < V || sup[w] >= 2.0 * V) continue;
    if (arg[w] - last < V) continue;
    rep.points.push_back(arg[w]);
    rep.sup_values.push_back(sup[w]);
    last = arg[w];
  }
  rep.R_count = rep.points.size();
  return rep;
}

// ---------------------------------------------------------------------------
// pointwise bound and short intervals

PointwiseBound pointwise_bound_check(double T) {
  if (!(T >= 10.0))
    throw PreconditionError("pointwise_bound_check: T must be >= 10");
  PointwiseBound pb;
  pb.T = T;
  pb.lhs = std::norm(zeta_half(T).value);
  pb.rhs = std::log(T) * mean_square_between(T - 1.0, T + 1.0, 1e-6) + 1.0;
  return pb;
}

ShortIntervalDecomposition delta_star_short_interval(double T, double H,
                                                     const DivisorTable& table) {
  if (!(T >= 1.0) || !(H >= 0.0) || !(H <= T))
    throw PreconditionError("delta_star_short_interval: need 0 <= H <= T >= 1");
  const double hi = 4.0 * (T + H);
  if (hi > double(table.n_max))
    throw TableExhausted(std::uint64_t(hi) + 1, table.n_max);
  ShortIntervalDecomposition dec;
  if (H == 0.0) return dec;
  dec.total = delta_star_exact(T + H, table) - delta_star_exact(T, table);
  const auto a = std::uint64_t(4.0 * T);
  const auto b = std::uint64_t(hi);
  dec.alternating = 0.5 * double(table.alt_prefix[b] - table.alt_prefix[a]);
  dec.smooth = -(main_term(T + H) - main_term(T));
  return dec;
}

// ---------------------------------------------------------------------------
// report serialization

void save_moment_report(const MomentReport& report,
                        const std::filesystem::path& path) {
  json j;
  j["schema"] = "moment_report";
  j["version"] = 1;
  j["k"] = report.k;
  j["T_values"] = report.T_values;
  j["integrals"] = report.integrals;
  j["fitted_exponent"] = report.fitted_exponent;
  j["fit_residual"] = report.fit_residual;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << j.dump(1) << "\n";
}

void save_large_values_report(const LargeValuesReport& report,
                              const std::filesystem::path& path) {
  json j;
  j["schema"] = "large_values_report";
  j["version"] = 1;
  j["V"] = report.V;
  j["T"] = report.T;
  j["points"] = report.points;
  j["sup_values"] = report.sup_values;
  j["R_count"] = report.R_count;
  j["bound_value"] = report.bound_value;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << j.dump(1) << "\n";
}

void write_error_samples(std::span<const ErrorSample> samples,
                         const std::filesystem::path& csv) {
  std::ofstream out(csv, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + csv.string());
  out << "t,E,method,est_err,delta_star,e_star,source\n";
  char line[256];
  for (const ErrorSample& s : samples) {
    const char* method = s.source == ESource::quadrature
                             ? (s.t < kZetaSwitchT ? "euler_maclaurin"
                                                   : "riemann_siegel")
                             : "atkinson";
    const char* source = s.source == ESource::quadrature
                             ? "quadrature"
                             : "atkinson_surrogate";
    std::snprintf(line, sizeof line, "%.17g,%.17g,%s,%.3g,%.17g,%.17g,%s\n",
                  s.t, s.E, method, s.est_err, s.delta_star, s.e_star, source);
    out << line;
  }
}

}  // namespace zdl
