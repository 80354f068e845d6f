#include "fkdv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fkdv/errors.hpp"
#include "fkdv/fft.hpp"
#include "fkdv/kernels.hpp"

namespace fkdv {

namespace {

constexpr double kBlowupLevel = 1e150;

// Spectral building blocks shared by both schemes, in FFT slot order.
class SpectralOps {
 public:
  SpectralOps(const Grid& grid, const SolveConfig& cfg)
      : grid_(grid), cfg_(cfg), symbol_(grid.size()), keep_(grid.size()),
        ddx_(grid.size()), energy_weight_(grid.size()) {
    const std::size_t n = grid.size();
    const auto kmax = static_cast<long>(std::floor(cfg.dealias * n / 2.0));
    const double half = 0.5 * (cfg.params.a() + 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = grid.xi(i);
      const bool nyquist = (i == n / 2);
      const double phase = nyquist ? 0.0 : cfg.params.symbol(xi);
      symbol_[i] = cplx(-cfg.mu * xi * xi, phase);
      keep_[i] = std::abs(grid.wavenumber(i)) <= kmax && !nyquist ? 1.0 : 0.0;
      ddx_[i] = nyquist ? cplx{} : cplx(0.0, xi);
      energy_weight_[i] =
          (i == 0 || nyquist) ? 0.0 : std::pow(std::abs(xi), 2.0 * half);
    }
  }

  const Grid& grid() const { return grid_; }

  /// exp(S h), cached per distinct h.
  const std::vector<cplx>& propagator(double h) {
    auto it = cache_.find(h);
    if (it != cache_.end()) return it->second;
    std::vector<cplx> e(grid_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::exp(symbol_[i] * h);
    return cache_.emplace(h, std::move(e)).first->second;
  }

  std::vector<double> samples(const Spectrum& v) const {
    const auto c = fft::inverse(grid_, v);
    std::vector<double> out(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) out[j] = c[j].real();
    return out;
  }

  Spectrum nonlinear(const Spectrum& v) const {
    const std::size_t n = grid_.size();
    Spectrum out(n);
    if (!cfg_.nonlinear) return out;
    Spectrum w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = v[i] * keep_[i];
    auto s = samples(w);
    for (double& x : s) x *= x;
    const auto sq = fft::forward(grid_, std::span<const double>(s));
    for (std::size_t i = 0; i < n; ++i) out[i] = -0.5 * ddx_[i] * keep_[i] * sq[i];
    return out;
  }

  double mass(const Spectrum& v) const {
    std::vector<double> ones(v.size(), 1.0);
    return kernels::parallel::spectral_square_sum(v, ones, 1.0 / grid_.length());
  }

  double energy(const Spectrum& v, std::span<const double> u) const {
    const double quad =
        0.5 * kernels::parallel::spectral_square_sum(v, energy_weight_,
                                                     1.0 / grid_.length());
    double cubic = 0.0;
    for (double x : u) cubic += x * x * x;
    return quad - cubic * grid_.spacing() / 6.0;
  }

 private:
  Grid grid_;
  const SolveConfig& cfg_;
  std::vector<cplx> symbol_;
  std::vector<double> keep_;
  std::vector<cplx> ddx_;
  std::vector<double> energy_weight_;
  std::map<double, std::vector<cplx>> cache_;
};

bool healthy(std::span<const double> u) {
  for (double x : u)
    if (!std::isfinite(x) || std::abs(x) > kBlowupLevel) return false;
  return true;
}

double relative_drift(double value, double reference) {
  const double diff = std::abs(value - reference);
  return reference != 0.0 ? diff / std::abs(reference) : diff;
}

Spectrum initial_spectrum(const Field& phi) {
  Spectrum v(phi.spectrum().begin(), phi.spectrum().end());
  v[phi.grid().nyquist_index()] = 0.0;
  return v;
}

// Stored times: t = 0, the requested output times (sorted, deduplicated,
// within (0, T]) and T itself.
std::vector<double> resolve_outputs(const SolveConfig& cfg) {
  std::vector<double> out;
  for (double t : cfg.output_times) {
    if (!(t > 0.0 && t <= cfg.T * (1.0 + 1e-12)))
      throw InvalidArgument("output times must lie in (0, T]");
    out.push_back(std::min(t, cfg.T));
  }
  out.push_back(cfg.T);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct Recorder {
  SpectralOps& ops;
  Trajectory& traj;
  const SolveConfig& cfg;
  double mass0 = 0.0, energy0 = 0.0;

  void observe(double t, const Spectrum& v, std::span<const double> u,
               bool store) {
    const double m = ops.mass(v);
    const double e = ops.energy(v, u);
    if (traj.times.empty()) {
      mass0 = m;
      energy0 = e;
    }
    traj.max_mass_drift = std::max(traj.max_mass_drift, relative_drift(m, mass0));
    traj.max_energy_drift =
        std::max(traj.max_energy_drift, relative_drift(e, energy0));
    if (!store && !cfg.on_step) return;
    Field f = Field::from_spectrum(ops.grid(), v);
    if (cfg.on_step) cfg.on_step(t, f);
    if (!store) return;
    traj.times.push_back(t);
    traj.fields.push_back(std::move(f));
    traj.mass.push_back(m);
    traj.energy.push_back(e);
  }
};

}  // namespace

const char* to_string(Scheme s) {
  return s == Scheme::IFRK4 ? "ifrk4" : "picard";
}

void validate(const SolveConfig& cfg) {
  if (!std::isfinite(cfg.mu) || cfg.mu < 0.0 || cfg.mu >= 1.0)
    throw InvalidArgument("mu must lie in [0, 1)");
  if (!(cfg.T > 0.0) || !std::isfinite(cfg.T))
    throw InvalidArgument("horizon T must be positive");
  if (cfg.dt < 0.0 || !std::isfinite(cfg.dt) || (cfg.dt > 0.0 && cfg.dt > cfg.T))
    throw InvalidArgument("dt must satisfy 0 < dt <= T (0 selects the default)");
  if (!(cfg.dealias > 0.5 && cfg.dealias <= 1.0))
    throw InvalidArgument("dealias fraction must lie in (1/2, 1]");
  if (!(cfg.picard_tol > 0.0)) throw InvalidArgument("picard_tol must be positive");
  if (cfg.picard_max_iter < 1) throw InvalidArgument("picard_max_iter must be >= 1");
  if (cfg.picard_window_steps < 0)
    throw InvalidArgument("picard_window_steps must be >= 0");
}

double default_dt(const Grid& grid, double T) {
  return std::min(0.5 * grid.spacing(), T / 256.0);
}

Field nonlinear_rhs(const Field& u, double dealias) {
  if (!(dealias > 0.5 && dealias <= 1.0))
    throw InvalidArgument("dealias fraction must lie in (1/2, 1]");
  SolveConfig cfg;
  cfg.dealias = dealias;
  SpectralOps ops(u.grid(), cfg);
  Spectrum v(u.spectrum().begin(), u.spectrum().end());
  return Field::from_spectrum(u.grid(), ops.nonlinear(v));
}

Trajectory evolve(const Field& phi, const SolveConfig& cfg) {
  validate(cfg);
  const Grid& g = phi.grid();
  const std::size_t n = g.size();
  SpectralOps ops(g, cfg);
  Trajectory traj;
  traj.dt = cfg.dt > 0.0 ? cfg.dt : default_dt(g, cfg.T);
  Recorder rec{ops, traj, cfg};
  const bool store_all = cfg.output_times.empty();

  Spectrum u = initial_spectrum(phi);
  const cplx zero_mode = u[0];
  rec.observe(0.0, u, ops.samples(u), true);

  Spectrum k1, k2, k3, k4, tmp(n);
  double t = 0.0;
  for (double target : resolve_outputs(cfg)) {
    const auto steps = static_cast<std::size_t>(
        std::max(1.0, std::ceil((target - t) / traj.dt - 1e-9)));
    const double h = (target - t) / static_cast<double>(steps);
    const auto& E = ops.propagator(0.5 * h);
    for (std::size_t s = 0; s < steps; ++s) {
      k1 = ops.nonlinear(u);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = E[i] * (u[i] + 0.5 * h * k1[i]);
      k2 = ops.nonlinear(tmp);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = E[i] * u[i] + 0.5 * h * k2[i];
      k3 = ops.nonlinear(tmp);
      for (std::size_t i = 0; i < n; ++i)
        tmp[i] = E[i] * (E[i] * u[i] + h * k3[i]);
      k4 = ops.nonlinear(tmp);
      for (std::size_t i = 0; i < n; ++i) {
        const cplx e2 = E[i] * E[i];
        u[i] = e2 * u[i] +
               h / 6.0 * (e2 * k1[i] + 2.0 * E[i] * (k2[i] + k3[i]) + k4[i]);
      }
      const double t_next = (s + 1 == steps) ? target : t + h;
      const auto samples = ops.samples(u);
      if (!healthy(samples)) throw BlowupDetected(t, cfg.mu);
      if (u[0] != zero_mode) throw Error("zero mode drifted during evolution");
      t = t_next;
      ++traj.steps;
      rec.observe(t, u, samples, store_all || s + 1 == steps);
    }
  }
  return traj;
}

Trajectory picard_solve(const Field& phi, const SolveConfig& cfg) {
  validate(cfg);
  if (!(cfg.mu > 0.0))
    throw InvalidArgument("the Picard scheme needs mu > 0 for its parabolic gain");
  const Grid& g = phi.grid();
  const std::size_t n = g.size();
  SpectralOps ops(g, cfg);
  Trajectory traj;
  const double dt_req = cfg.dt > 0.0 ? cfg.dt : default_dt(g, cfg.T);
  const auto total_steps =
      static_cast<std::size_t>(std::max(1.0, std::ceil(cfg.T / dt_req - 1e-9)));
  const double dt = cfg.T / static_cast<double>(total_steps);
  traj.dt = dt;
  const std::size_t window =
      cfg.picard_window_steps > 0
          ? std::min<std::size_t>(cfg.picard_window_steps, total_steps)
          : total_steps;

  // Which global steps are stored.
  std::vector<bool> store(total_steps + 1, cfg.output_times.empty());
  store[total_steps] = true;
  for (double t : cfg.output_times) {
    const double pos = t / dt;
    const auto m = static_cast<std::size_t>(std::llround(pos));
    if (std::abs(pos - m) > 1e-9 * std::max(1.0, pos) || m == 0 || m > total_steps)
      throw InvalidArgument("Picard output times must lie on the step grid");
    store[m] = true;
  }

  Recorder rec{ops, traj, cfg};
  const auto& G = ops.propagator(dt);
  Spectrum start = initial_spectrum(phi);
  rec.observe(0.0, start, ops.samples(start), true);

  // Applies the discrete Duhamel map to the iterate v on one window.
  auto duhamel = [&](const std::vector<Spectrum>& v) {
    const std::size_t M = v.size() - 1;
    std::vector<Spectrum> out(M + 1, Spectrum(n));
    Spectrum lin = v[0], acc(n);
    Spectrum N0 = ops.nonlinear(v[0]);
    for (std::size_t i = 0; i < n; ++i) acc[i] = 0.5 * dt * N0[i];
    out[0] = v[0];
    for (std::size_t m = 1; m <= M; ++m) {
      const Spectrum Nm = ops.nonlinear(v[m]);
      for (std::size_t i = 0; i < n; ++i) {
        lin[i] *= G[i];
        acc[i] = G[i] * acc[i] + dt * Nm[i];
        out[m][i] = lin[i] + acc[i] - 0.5 * dt * Nm[i];
      }
    }
    return out;
  };
  auto sup_change = [&](const std::vector<Spectrum>& a,
                        const std::vector<Spectrum>& b) {
    double worst = 0.0;
    Spectrum d(n);
    for (std::size_t m = 0; m < a.size(); ++m) {
      for (std::size_t i = 0; i < n; ++i) d[i] = a[m][i] - b[m][i];
      for (double x : ops.samples(d)) worst = std::max(worst, std::abs(x));
    }
    return worst;
  };

  std::size_t done = 0;
  while (done < total_steps) {
    const std::size_t M = std::min(window, total_steps - done);
    const double t0 = static_cast<double>(done) * dt;
    std::vector<Spectrum> v(M + 1, start);
    for (std::size_t m = 1; m <= M; ++m)
      for (std::size_t i = 0; i < n; ++i) v[m][i] = G[i] * v[m - 1][i];

    double prev = std::numeric_limits<double>::infinity(), ratio = 0.0;
    int it = 0;
    for (;;) {
      auto next = duhamel(v);
      const double change = sup_change(next, v);
      ++it;
      v = std::move(next);
      if (!std::isfinite(change) || change > kBlowupLevel)
        throw BlowupDetected(t0, cfg.mu);
      ratio = std::isfinite(prev) && prev > 0.0 ? change / prev : 0.0;
      if (change < cfg.picard_tol) break;
      if (it >= cfg.picard_max_iter || (it >= 3 && ratio >= 1.0))
        throw ContractionFailure(ratio, it, t0);
      prev = change;
    }
    traj.iterations.push_back(it);
    traj.picard_residual = std::max(traj.picard_residual, sup_change(duhamel(v), v));

    for (std::size_t m = 1; m <= M; ++m) {
      const auto samples = ops.samples(v[m]);
      if (!healthy(samples)) throw BlowupDetected(t0 + (m - 1) * dt, cfg.mu);
      ++traj.steps;
      rec.observe(static_cast<double>(done + m) * dt, v[m], samples,
                  store[done + m]);
    }
    start = v[M];
    done += M;
  }
  return traj;
}

Trajectory solve(const Field& phi, const SolveConfig& cfg) {
  return cfg.scheme == Scheme::IFRK4 ? evolve(phi, cfg) : picard_solve(phi, cfg);
}

double Majorant::rho1(double t) const {
  if (t < 0.0) throw InvalidArgument("majorant time must be >= 0");
  if (rho1_0 == 0.0) return 0.0;
  if (t >= T_star) return std::numeric_limits<double>::infinity();
  const double d = 1.0 - 0.5 * c_s * std::sqrt(rho1_0) * t;
  return rho1_0 / (d * d);
}

double Majorant::rho1_integral(double t) const {
  if (t < 0.0) throw InvalidArgument("majorant time must be >= 0");
  if (rho1_0 == 0.0) return 0.0;
  if (t >= T_star) return std::numeric_limits<double>::infinity();
  const double w0 = 1.0 / std::sqrt(rho1_0);
  return (2.0 / c_s) * (1.0 / (w0 - 0.5 * c_s * t) - 1.0 / w0);
}

double Majorant::rho(double t) const {
  const double s = homog + c_duhamel * rho1_integral(t);
  return rho1(t) + s * s;
}

Majorant majorant(double hs_norm_sq, double homog_norm, double c_s,
                  double c_duhamel) {
  if (!(hs_norm_sq >= 0.0) || !(homog_norm >= 0.0) || !std::isfinite(hs_norm_sq) ||
      !std::isfinite(homog_norm))
    throw InvalidArgument("majorant inputs must be finite and >= 0");
  if (!(c_s > 0.0) || !(c_duhamel >= 0.0))
    throw InvalidArgument("majorant constants must be positive");
  Majorant m;
  m.rho1_0 = hs_norm_sq;
  m.homog = homog_norm;
  m.c_s = c_s;
  m.c_duhamel = c_duhamel;
  if (hs_norm_sq > 0.0) m.T_star = 2.0 / (c_s * std::sqrt(hs_norm_sq));
  return m;
}

ContinuationTable mu_continuation(const Field& phi, std::span<const double> mus,
                                  const SolveConfig& cfg) {
  if (mus.size() < 2) throw InvalidArgument("need at least two viscosities");
  std::vector<Trajectory> runs;
  SolveConfig run_cfg = cfg;
  run_cfg.scheme = Scheme::IFRK4;
  if (run_cfg.dt == 0.0) run_cfg.dt = default_dt(phi.grid(), cfg.T);
  for (double mu : mus) {
    run_cfg.mu = mu;
    try {
      runs.push_back(evolve(phi, run_cfg));
    } catch (const BlowupDetected& e) {
      throw BlowupDetected(e.last_valid_time(), mu);
    }
  }
  ContinuationTable table;
  table.mus.assign(mus.begin(), mus.end());
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
    double worst = 0.0;
    for (std::size_t k = 0; k < runs[i].fields.size(); ++k)
      worst = std::max(worst, (runs[i].fields[k] - runs[i + 1].fields[k]).l2_norm());
    table.distances.push_back(worst);
  }
  table.strictly_decreasing = true;
  for (std::size_t i = 0; i + 1 < table.distances.size(); ++i)
    if (!(table.distances[i + 1] < table.distances[i])) table.strictly_decreasing = false;
  return table;
}

}  // namespace fkdv
