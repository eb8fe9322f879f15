#include "dirac/numerics.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <exception>
#include <thread>

namespace dirac {

unsigned default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn, unsigned workers) {
  if (workers == 0) workers = default_workers();
  if (count == 0) return;
  const std::size_t nw = std::min<std::size_t>(workers, count);
  if (nw <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nw);
  std::vector<std::exception_ptr> errors(nw);
  const std::size_t chunk = (count + nw - 1) / nw;
  for (std::size_t w = 0; w < nw; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    pool.emplace_back([&, w, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<Peak> find_peaks(const TimeSeries<double>& series, double min_height, double min_separation) {
  if (series.empty()) throw std::domain_error("find_peaks: empty series");
  if (!(series.dt > 0)) throw std::domain_error("find_peaks: non-uniform or reversed grid");
  const auto& v = series.values;
  const std::size_t n = v.size();
  std::vector<Peak> cand;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    // Left strict, right non-strict: a flat top reports its first sample.
    if (!(v[i] > v[i - 1] && v[i] >= v[i + 1])) continue;
    const double y0 = v[i - 1], y1 = v[i], y2 = v[i + 1];
    const double denom = y0 - 2 * y1 + y2;
    double off = 0, h = y1;
    if (denom < 0) {
      off = 0.5 * (y0 - y2) / denom;
      h = y1 - 0.25 * (y0 - y2) * off;
    }
    if (h < min_height) continue;
    cand.push_back({series.time(i) + off * series.dt, h});
  }
  if (min_separation <= 0 || cand.size() < 2) return cand;

  std::vector<std::size_t> order(cand.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cand[a].height > cand[b].height; });
  std::vector<bool> keep(cand.size(), true);
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const std::size_t i = order[oi];
    if (!keep[i]) continue;
    for (std::size_t j = 0; j < cand.size(); ++j) {
      if (j != i && keep[j] && std::abs(cand[j].t - cand[i].t) < min_separation &&
          (cand[j].height < cand[i].height || (cand[j].height == cand[i].height && j > i)))
        keep[j] = false;
    }
  }
  std::vector<Peak> out;
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (keep[i]) out.push_back(cand[i]);
  return out;
}

double trapezoid(std::span<const double> values, double dx) {
  if (values.size() < 2) return 0.0;
  std::vector<double> inner(values.begin() + 1, values.end() - 1);
  const double mid = pairwise_sum<double>(inner);
  return dx * (mid + 0.5 * (values.front() + values.back()));
}

SpectralLinePeak dominant_frequency(const TimeSeries<double>& series, std::size_t pad) {
  if (series.size() < 4) throw std::domain_error("dominant_frequency: series too short");
  if (pad < 1) throw std::domain_error("dominant_frequency: pad must be at least 1");
  std::vector<double> x(series.values);
  double mean = 0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  for (double& v : x) v -= mean;
  x.resize(series.size() * pad, 0.0);

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec;
  fft.fwd(spec, x);
  const std::size_t half = x.size() / 2;
  std::size_t best = 1;
  double best_mag = -1;
  for (std::size_t k = 1; k <= half; ++k) {
    const double m = std::abs(spec[k]);
    if (m > best_mag) {
      best_mag = m;
      best = k;
    }
  }
  const double span = series.dt * static_cast<double>(series.size());
  return {static_cast<double>(best) / (span * static_cast<double>(pad)), 1.0 / span, best_mag};
}

}  // namespace dirac
