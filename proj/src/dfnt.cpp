#include "fsm4d/dfnt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "fsm4d/rng.hpp"

namespace fsm4d {

CVec chirp_kernel(const DerivedGeometry& geom, double z) {
  if (!(z > 0.0)) throw std::invalid_argument("chirp_kernel: z must be positive");
  CVec k(geom.N);
  for (int n = 0; n < geom.N; ++n) {
    double u = geom.u(n);
    k[n] = std::polar(1.0, geom.k * u * u / (2.0 * z));
  }
  return k;
}

DfntOperator::DfntOperator(const DerivedGeometry& geom, double z)
    : n_(geom.N), z_(z), plan_(geom.N) {
  if (!(z > 0.0)) throw std::invalid_argument("DfntOperator: z must be positive");
  // both chirps sit on the element-pitch coordinate p*d, so each tends to
  // the identity as z grows and the pipeline degenerates to a plain FFT
  lin_ = chirp_kernel(geom, z);
  lout_ = lin_;
}

void DfntOperator::apply(CVec& x) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("DfntOperator::apply: length mismatch");
  for (int n = 0; n < n_; ++n) x[n] *= lin_[n];
  plan_.forward(x);
  for (int p = 0; p < n_; ++p) x[p] *= lout_[p];
}

void DfntOperator::inverse(CVec& x) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("DfntOperator::inverse: length mismatch");
  for (int p = 0; p < n_; ++p) x[p] *= std::conj(lout_[p]);
  plan_.inverse(x);
  for (int n = 0; n < n_; ++n) x[n] *= std::conj(lin_[n]);
}

CVec dfnt_apply(const CVec& x, const DerivedGeometry& geom, double z) {
  DfntOperator op(geom, z);
  CVec y = x;
  op.apply(y);
  return y;
}

CVec dfnt_inverse(const CVec& x, const DerivedGeometry& geom, double z) {
  DfntOperator op(geom, z);
  CVec y = x;
  op.inverse(y);
  return y;
}

CVec dfnt_apply_direct(const CVec& x, const DerivedGeometry& geom, double z) {
  const int n = geom.N;
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("dfnt_apply_direct: length mismatch");
  DfntOperator op(geom, z);
  const CVec& lin = op.lambda_in();
  const CVec& lout = op.lambda_out();

  CVec pre(n);
  for (int i = 0; i < n; ++i) pre[i] = lin[i] * x[i];

  double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
  CVec y(n);
  for (int p = 0; p < n; ++p) {
    // row phasor steps by exp(-j 2 pi p / N) per column
    double ang = -2.0 * kPi * static_cast<double>(p) / static_cast<double>(n);
    cplx step = std::polar(1.0, ang);
    cplx ph = 1.0;
    cplx acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += ph * pre[i];
      ph *= step;
    }
    y[p] = lout[p] * acc * inv_sqrt;
  }
  return y;
}

CVec precode(const Symbol4D& s, const DerivedGeometry& geom) {
  return channel_vector(s, geom);
}

BeamMap beam_intensity_map(const CVec& w, const DerivedGeometry& geom,
                           double x_min, double x_max, int nx,
                           double z_min, double z_max, int nz) {
  if (static_cast<int>(w.size()) != geom.N)
    throw std::invalid_argument("beam_intensity_map: weight length mismatch");
  if (nx < 1 || nz < 1) throw std::invalid_argument("beam_intensity_map: empty grid");
  if (!(z_min > 0.0)) throw std::invalid_argument("beam_intensity_map: z_min must be positive");

  BeamMap map;
  map.nx = nx;
  map.nz = nz;
  map.xs.resize(nx);
  map.zs.resize(nz);
  for (int i = 0; i < nx; ++i)
    map.xs[i] = nx == 1 ? x_min : x_min + (x_max - x_min) * i / (nx - 1);
  for (int j = 0; j < nz; ++j)
    map.zs[j] = nz == 1 ? z_min : z_min + (z_max - z_min) * j / (nz - 1);

  map.intensity.assign(static_cast<size_t>(nx) * nz, 0.0);
  double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(geom.N));
  double peak = 0.0;
  for (int j = 0; j < nz; ++j) {
    double z = map.zs[j];
    std::vector<double> chirp_phase(geom.N);
    for (int n = 0; n < geom.N; ++n) {
      double u = geom.u(n);
      chirp_phase[n] = geom.k * u * u / (2.0 * z);
    }
    for (int i = 0; i < nx; ++i) {
      double slope = geom.k * map.xs[i] / z;
      cplx acc = 0.0;
      for (int n = 0; n < geom.N; ++n) {
        // conj of the probe-point channel times the transmit weight
        acc += std::polar(inv_sqrt, chirp_phase[n] + slope * geom.xi[n]) * w[n];
      }
      double val = std::norm(acc);
      map.intensity[static_cast<size_t>(j) * nx + i] = val;
      peak = std::max(peak, val);
    }
  }
  map.peak_raw = peak;
  if (peak > 0.0)
    for (auto& v : map.intensity) v /= peak;
  return map;
}

FlopEstimate flop_estimate(SolverKind kind, int n, double T_c,
                           double flops_rate, int sparsity) {
  if (n < 1) throw std::invalid_argument("flop_estimate: n must be positive");
  if (!(flops_rate > 0.0)) throw std::invalid_argument("flop_estimate: rate must be positive");
  double nn = static_cast<double>(n);
  double k = static_cast<double>(sparsity);
  FlopEstimate e;
  switch (kind) {
    case SolverKind::Svd:
    case SolverKind::MmseZf:
      e.flops = (4.0 / 3.0) * nn * nn * nn;
      break;
    case SolverKind::Mf:
      e.flops = nn * nn;
      break;
    case SolverKind::Omp:
      e.flops = k * nn * nn;
      break;
    case SolverKind::Somp:
      e.flops = k * k * nn * nn;
      break;
    case SolverKind::Dfnt:
      e.flops = 5.0 * nn * std::log2(nn) + 2.0 * nn;
      break;
  }
  e.seconds = e.flops / flops_rate;
  e.ratio_vs_Tc = T_c > 0.0 ? e.seconds / T_c : 0.0;
  return e;
}

namespace {

double median_ns(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  size_t m = v.size() / 2;
  if (v.size() % 2 == 1) return v[m];
  return 0.5 * (v[m - 1] + v[m]);
}

double fit_slope(const std::vector<double>& lx, const std::vector<double>& ly) {
  double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  double den = n * sxx - sx * sx;
  return den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
}

} // namespace

BenchResult bench_scaling(const SystemConfig& base, const std::vector<int>& sizes,
                          double target_ms, int max_reps, int fixed_reps) {
  using clock = std::chrono::steady_clock;
  BenchResult res;
  std::vector<double> lx, ly_fft, ly_dir;

  for (int n : sizes) {
    SystemConfig cfg = base;
    cfg.N = n;
    DerivedGeometry geom = derive_geometry(cfg);
    DfntOperator op(geom, cfg.z0);

    SplitMix64 rng(derive_stream(cfg.seed, 0x6eb5, n));
    CVec x0(n);
    for (auto& v : x0) v = {rng.normal(), rng.normal()};

    auto time_once = [&](auto&& fn) {
      auto t0 = clock::now();
      fn();
      auto t1 = clock::now();
      return std::chrono::duration<double, std::nano>(t1 - t0).count();
    };

    volatile double sink = 0.0; // keep the optimizer honest

    CVec work = x0;
    double probe_fft = time_once([&] { op.apply(work); sink = work[0].real(); });
    int reps_fft = fixed_reps > 0
                       ? fixed_reps
                       : std::clamp(static_cast<int>(target_ms * 1e6 / std::max(probe_fft, 1.0)),
                                    3, max_reps);
    std::vector<double> t_fft;
    t_fft.reserve(reps_fft);
    for (int r = 0; r < reps_fft; ++r) {
      work = x0;
      t_fft.push_back(time_once([&] { op.apply(work); sink = work[0].real(); }));
    }

    CVec out;
    double probe_dir = time_once([&] { out = dfnt_apply_direct(x0, geom, cfg.z0); sink = out[0].real(); });
    int reps_dir = fixed_reps > 0
                       ? fixed_reps
                       : std::clamp(static_cast<int>(target_ms * 1e6 / std::max(probe_dir, 1.0)),
                                    1, max_reps);
    std::vector<double> t_dir;
    t_dir.reserve(reps_dir);
    for (int r = 0; r < reps_dir; ++r)
      t_dir.push_back(time_once([&] { out = dfnt_apply_direct(x0, geom, cfg.z0); sink = out[0].real(); }));
    (void)sink;

    BenchRow row;
    row.n = n;
    row.flops_model = 5.0 * n * std::log2(static_cast<double>(n)) + 2.0 * n;
    row.t_dfnt_ns = median_ns(t_fft);
    row.t_direct_ns = median_ns(t_dir);
    res.rows.push_back(row);

    lx.push_back(std::log2(static_cast<double>(n)));
    ly_fft.push_back(std::log2(row.t_dfnt_ns));
    ly_dir.push_back(std::log2(row.t_direct_ns));
  }

  if (lx.size() >= 2) {
    res.slope_dfnt = fit_slope(lx, ly_fft);
    res.slope_direct = fit_slope(lx, ly_dir);
  }
  return res;
}

} // namespace fsm4d
