#include "complab/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace complab {

double ks_distance(const std::vector<double>& sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("KS distance needs a nonempty sample");
  std::vector<double> sorted = sample;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

TwoSampleKs ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS test needs two nonempty samples");
  std::vector<double> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size()), nb = static_cast<double>(sb.size());
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double v = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == v) ++i;
    while (j < sb.size() && sb[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  TwoSampleKs result;
  result.distance = d;
  const double neff = na * nb / (na + nb);
  const double k = (std::sqrt(neff) + 0.12 + 0.11 / std::sqrt(neff)) * d;
  double q = 1.0;
  double sum = 0.0, prev_term = 0.0;
  for (int m = 1; m <= 100; ++m) {
    const double term = 2.0 * ((m % 2) ? 1.0 : -1.0) * std::exp(-2.0 * m * m * k * k);
    sum += term;
    if (std::abs(term) <= 1e-3 * std::abs(prev_term) || std::abs(term) <= 1e-12 * std::abs(sum)) {
      q = sum;
      break;
    }
    prev_term = term;
  }
  result.p_value = std::min(1.0, std::max(0.0, q));
  return result;
}

RegressionResult exponent_regression(const std::vector<double>& times,
                                     const std::vector<double>& variances) {
  if (times.size() != variances.size())
    throw std::invalid_argument("times and variances must have equal length");
  if (times.size() < 3) throw std::invalid_argument("exponent regression needs at least 3 points");
  const size_t n = times.size();
  std::vector<double> xs(n), ys(n);
  for (size_t i = 0; i < n; ++i) {
    if (!(times[i] > 0.0) || !(variances[i] > 0.0))
      throw std::invalid_argument("exponent regression needs positive times and variances");
    xs[i] = std::log(times[i]);
    ys[i] = std::log(variances[i]);
  }
  double mean_x = 0.0, mean_y = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("exponent regression needs distinct times");
  RegressionResult result;
  result.points = static_cast<int>(n);
  result.slope = sxy / sxx;
  result.intercept = mean_y - result.slope * mean_x;
  double sse = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (result.intercept + result.slope * xs[i]);
    sse += r * r;
  }
  result.slope_stderr = n > 2 ? std::sqrt(sse / (static_cast<double>(n) - 2.0) / sxx) : 0.0;
  return result;
}

NormalityResult normality_check(const std::vector<double>& sample) {
  if (sample.size() < 100)
    throw std::invalid_argument("normality check needs at least 100 observations");
  const double n = static_cast<double>(sample.size());
  double mean = 0.0;
  for (const double v : sample) mean += v;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (const double v : sample) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) throw std::invalid_argument("normality check needs a non-degenerate sample");
  NormalityResult result;
  result.skewness = m3 / std::pow(m2, 1.5);
  result.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  result.pass = std::abs(result.skewness) <= 0.15 && std::abs(result.excess_kurtosis) <= 0.3;
  return result;
}

ProfileDistance profile_l1(const DensityProfile& empirical,
                           const std::function<double(double)>& law, double exclude_lo,
                           double exclude_hi) {
  ProfileDistance result;
  for (size_t i = 0; i < empirical.size(); ++i) {
    const double r = empirical.center(i);
    if (r >= exclude_lo && r <= exclude_hi) continue;
    if (empirical.sites[i] <= 0) {
      ++result.missing_bins;
      continue;
    }
    result.l1 += empirical.bin_width * std::abs(empirical.density(i) - law(r));
    ++result.used_bins;
  }
  if (result.used_bins == 0)
    throw std::invalid_argument("profile comparison has no usable bins in the overlap");
  return result;
}

int resolve_worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("COMPETITION_LAB_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0 || v > 4096)
      throw std::invalid_argument("COMPETITION_LAB_WORKERS must be a positive integer");
    return static_cast<int>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

void parallel_for_replicas(int count, int workers, const std::function<void(int)>& body) {
  if (count <= 0) return;
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (const std::exception& e) {
        throw std::runtime_error("replica " + std::to_string(i) + ": " + e.what());
      }
    }
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  int first_error_replica = count;
  auto drain = [&] {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error) return;
      }
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (i < first_error_replica) {
          first_error_replica = i;
          first_error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
  for (std::thread& th : pool) th.join();
  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      throw std::runtime_error("replica " + std::to_string(first_error_replica) + ": " + e.what());
    }
  }
}

}  // namespace complab
