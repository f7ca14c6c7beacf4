#include "maxent/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "maxent/errors.hpp"
#include "maxent/linalg.hpp"

namespace maxent {

double log_inverse_norm(const Mat& a) {
  const auto sv = singular_values(a);
  const double smin = a.dim() == 1 ? sv[0] : sv[1];
  if (!(smin >= 1e-14)) throw DegenerateDerivative("derivative is numerically singular");
  return -std::log(smin);
}

OrbitRecord generate_orbit(const MapSpec& map, const Point& x0, int n) {
  if (n < 1) throw InvalidInput("generate_orbit: n must be >= 1");
  if (x0.dim() != map.dim()) throw InvalidInput("generate_orbit: dimension mismatch");
  OrbitRecord orbit;
  orbit.points.reserve(static_cast<std::size_t>(n) + 1);
  orbit.inv_norm_logs.reserve(static_cast<std::size_t>(n) + 1);
  Point x = x0;
  for (int i = 0; i <= n; ++i) {
    orbit.points.push_back(x);
    orbit.inv_norm_logs.push_back(log_inverse_norm(map.derivative(x)));
    x = map.eval(x);
  }
  return orbit;
}

std::vector<double> lyapunov_spectrum(const MapSpec& map, const Point& x0, int n) {
  if (n < 1) throw InvalidInput("lyapunov_spectrum: n must be >= 1");
  const int d = map.dim();
  Mat q = Mat::identity(d);
  std::vector<double> sums(static_cast<std::size_t>(d), 0.0);
  Point x = x0;
  for (int i = 0; i < n; ++i) {
    const Mat df = map.derivative(x);
    if (std::abs(det(df)) < 1e-14) throw DegenerateDerivative("lyapunov_spectrum: singular Df");
    const QR f = qr_decompose(df * q);
    for (int k = 0; k < d; ++k) sums[static_cast<std::size_t>(k)] += std::log(std::abs(f.r(k, k)));
    q = f.q;
    x = map.eval(x);
  }
  for (double& s : sums) s /= n;
  std::sort(sums.begin(), sums.end(), std::greater<>());
  return sums;
}

double log_det_average(const MapSpec& map, const Point& x0, int n) {
  if (n < 1) throw InvalidInput("log_det_average: n must be >= 1");
  double s = 0.0;
  Point x = x0;
  for (int i = 0; i < n; ++i) {
    s += std::log(std::abs(det(map.derivative(x))));
    x = map.eval(x);
  }
  return s / n;
}

IntegratedExponents integrated_exponents(const MapSpec& map, const GridMeasure& mu, int n,
                                         int samples, std::uint64_t seed) {
  if (samples < 2) throw InvalidInput("integrated_exponents: need at least two samples");
  const auto starts = sample_from_measure(mu, samples, derive_seed(seed, 0x1e7));
  const auto d = static_cast<std::size_t>(map.dim());
  std::vector<std::vector<double>> spectra(starts.size());
  const auto count = static_cast<long long>(starts.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long s = 0; s < count; ++s)
    spectra[static_cast<std::size_t>(s)] = lyapunov_spectrum(map, starts[static_cast<std::size_t>(s)], n);

  IntegratedExponents out{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
  for (const auto& sp : spectra)
    for (std::size_t k = 0; k < d; ++k) out.mean[k] += sp[k];
  for (double& m : out.mean) m /= static_cast<double>(spectra.size());
  for (std::size_t k = 0; k < d; ++k) {
    double var = 0.0;
    for (const auto& sp : spectra) var += (sp[k] - out.mean[k]) * (sp[k] - out.mean[k]);
    var /= static_cast<double>(spectra.size() - 1);
    out.std_error[k] = std::sqrt(var / static_cast<double>(spectra.size()));
  }
  return out;
}

double log_inverse_norm_power(const MapSpec& map, const Point& x0, int power) {
  if (power < 1) throw InvalidInput("log_inverse_norm_power: power must be >= 1");
  Mat acc = Mat::identity(map.dim());
  double log_scale = 0.0;
  Point x = x0;
  for (int i = 0; i < power; ++i) {
    acc = map.derivative(x) * acc;
    const double s = singular_values(acc)[0];
    if (!(s > 0.0) || !std::isfinite(s)) throw DegenerateDerivative("Df^N is degenerate");
    acc = (1.0 / s) * acc;
    log_scale += std::log(s);
    x = map.eval(x);
  }
  return log_inverse_norm(acc) - log_scale;
}

int first_qualifying_power(const std::function<double(int)>& estimate, double c, int max_power) {
  if (max_power < 1) throw InvalidInput("first_qualifying_power: max_power must be >= 1");
  double best = std::numeric_limits<double>::infinity();
  int best_n = 0;
  for (int n = 1; n <= max_power; ++n) {
    const double v = estimate(n);
    if (v < best) {
      best = v;
      best_n = n;
    }
    if (v < -4.0 * c) return n;
  }
  throw SelectionFailure(best, best_n,
                         "no power N <= " + std::to_string(max_power) +
                             " brings the averaged log inverse norm below -4c (best " +
                             std::to_string(best) + " at N = " + std::to_string(best_n) + ")");
}

int select_power_N(const MapSpec& map, const GridMeasure& mu, double c, int samples,
                   int max_power, std::uint64_t seed) {
  if (samples < 1) throw InvalidInput("select_power_N: samples must be >= 1");
  const auto pts = sample_from_measure(mu, samples, derive_seed(seed, 0x9e1));
  auto estimate = [&](int power) {
    std::vector<double> vals(pts.size());
    const auto count = static_cast<long long>(pts.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < count; ++i)
      vals[static_cast<std::size_t>(i)] = log_inverse_norm_power(map, pts[static_cast<std::size_t>(i)], power);
    double s = 0.0;
    for (double v : vals) s += v;
    return s / (static_cast<double>(vals.size()) * power);
  };
  return first_qualifying_power(estimate, c, max_power);
}

}  // namespace maxent
