// SPDX-License-Identifier: Apache-2.0
#include "secqos/simqueue.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>
#include <string>

#include "secqos/errors.hpp"
#include "secqos/qos.hpp"

namespace secqos {

namespace {

void check_ascending(const std::vector<double> &grid, const char *name) {
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] >= 0.0) || !std::isfinite(grid[k]))
      throw ParameterError(std::string(name) + " values must be nonnegative and finite");
    if (k > 0 && !(grid[k] > grid[k - 1]))
      throw ParameterError(std::string(name) + " must be strictly ascending");
  }
}

// Tallies "value >= grid[k]" for every k by binning each value once.
class TailCounter {
public:
  explicit TailCounter(const std::vector<double> &grid) : grid_(grid), bins_(grid.size() + 1, 0) {}

  void add(double value) {
    const auto idx = std::upper_bound(grid_.begin(), grid_.end(), value) - grid_.begin();
    ++bins_[static_cast<std::size_t>(idx)];
  }

  // counts[k] = number of values >= grid[k].
  std::vector<std::int64_t> counts() const {
    std::vector<std::int64_t> out(grid_.size(), 0);
    std::int64_t running = 0;
    for (std::size_t k = grid_.size(); k-- > 0;) {
      running += bins_[k + 1];
      out[k] = running;
    }
    return out;
  }

private:
  const std::vector<double> &grid_;
  std::vector<std::int64_t> bins_;
};

// Draws the service of one block.
class ServiceSampler {
public:
  explicit ServiceSampler(const ServiceModel &service)
      : service_(service), sampler_(fading_of(service)) {
    if (const auto *n = std::get_if<NoCsiService>(&service_))
      lambda_ = n->policy.lambda(n->snr);
  }

  double next(Rng &rng) {
    const FadingSample s = sampler_(rng);
    if (const auto *p = std::get_if<PerfectCsiService>(&service_))
      return message_rate(p->message, s, p->snr, p->split);
    const auto &n = std::get<NoCsiService>(service_);
    return nocsi_secure_on(s, n.snr, lambda_) ? lambda_ : 0.0;
  }

private:
  static FadingScenario fading_of(const ServiceModel &service) {
    if (const auto *p = std::get_if<PerfectCsiService>(&service))
      return p->scenario;
    return std::get<NoCsiService>(service).scenario.fading();
  }

  const ServiceModel &service_;
  FadingSampler sampler_;
  double lambda_ = 0.0;
};

void validate_service(const ServiceModel &service) {
  if (const auto *p = std::get_if<PerfectCsiService>(&service)) {
    p->scenario.validate();
    p->split.validate();
    if (!(p->snr > 0.0) || !std::isfinite(p->snr))
      throw ParameterError("service snr must be positive, got " + std::to_string(p->snr));
    return;
  }
  const auto &n = std::get<NoCsiService>(service);
  n.scenario.validate();
  n.policy.validate();
  if (!(n.snr > 0.0) || !std::isfinite(n.snr))
    throw ParameterError("service snr must be positive, got " + std::to_string(n.snr));
}

} // namespace

void SimConfig::validate() const {
  secqos::validate(source);
  validate_service(service);
  if (horizon < kMinSimHorizon)
    throw ParameterError("simulation horizon must be at least " + std::to_string(kMinSimHorizon) +
                         " blocks, got " + std::to_string(horizon));
  if (thresholds.empty())
    throw ParameterError("threshold list is empty");
  check_ascending(thresholds, "thresholds");
  check_ascending(delay_grid, "delay grid");
  if (!delay_grid.empty() && delay_probe_interval < 1)
    throw ParameterError("delay probe interval must be positive");
}

std::vector<double> SimReport::overflow_prob() const {
  std::vector<double> out(exceed_counts.size(), 0.0);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = blocks > 0 ? static_cast<double>(exceed_counts[k]) / static_cast<double>(blocks) : 0.0;
  return out;
}

double SimReport::sigma_nonempty() const {
  return blocks > 0 ? static_cast<double>(nonempty_count) / static_cast<double>(blocks) : 0.0;
}

std::vector<double> SimReport::delay_tail() const {
  std::vector<double> out(delay_counts.size(), 0.0);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = delay_probes > 0
                 ? static_cast<double>(delay_counts[k]) / static_cast<double>(delay_probes)
                 : 0.0;
  return out;
}

double SimReport::mean_arrival_rate() const {
  return blocks > 0 ? arrived_bits / static_cast<double>(blocks) : 0.0;
}

double SimReport::mean_service_rate() const {
  return blocks > 0 ? offered_service_bits / static_cast<double>(blocks) : 0.0;
}

double calibrate_on_rate(const SourceModel &source, const ServiceModel &service, double theta) {
  validate(source);
  validate_service(service);
  double r_avg = 0.0;
  if (const auto *p = std::get_if<PerfectCsiService>(&service))
    r_avg = max_avg_arrival_rate(source, p->message, p->snr, theta, p->scenario, p->split,
                                 p->method);
  else {
    const auto &n = std::get<NoCsiService>(service);
    r_avg = nocsi_throughput(source, n.snr, theta, n.policy, n.scenario);
  }
  return r_avg / on_probability(source);
}

SimReport run_buffer_sim(const SimConfig &config, double r_on) {
  config.validate();
  if (!(r_on >= 0.0) || !std::isfinite(r_on))
    throw ParameterError("ON rate must be nonnegative, got " + std::to_string(r_on));

  Rng source_rng = make_stream(config.seed, 0);
  Rng channel_rng = make_stream(config.seed, 1);
  ArrivalGenerator arrivals(config.source, r_on, source_rng);
  ServiceSampler service(config.service);

  TailCounter queue_tail(config.thresholds);
  TailCounter delay_tail(config.delay_grid);
  const bool probe = !config.delay_grid.empty();
  // Pending probes: (start block, cumulative service that drains the tagged backlog).
  std::deque<std::pair<std::int64_t, double>> pending;

  SimReport report;
  report.blocks = config.horizon;
  report.thresholds = config.thresholds;
  report.delay_grid = config.delay_grid;

  double q = 0.0;
  double arrived = 0.0, served = 0.0;
  for (std::int64_t k = 0; k < config.horizon; ++k) {
    const double a = arrivals.next(source_rng);
    const double s = service.next(channel_rng);
    arrived += a;
    served += s;
    q = std::max(q + a - s, 0.0);
    queue_tail.add(q);
    if (q > 0.0)
      ++report.nonempty_count;

    if (probe) {
      while (!pending.empty() && pending.front().second <= served) {
        delay_tail.add(static_cast<double>(k - pending.front().first));
        pending.pop_front();
        ++report.delay_probes;
      }
      if (k % config.delay_probe_interval == 0)
        pending.emplace_back(k, served + q);
    }
  }

  report.exceed_counts = queue_tail.counts();
  report.arrived_bits = arrived;
  report.offered_service_bits = served;
  if (probe)
    report.delay_counts = delay_tail.counts();
  return report;
}

SimReport run_buffer_sim_replicas(const SimConfig &config, double r_on, int replicas) {
  if (replicas < 1)
    throw ParameterError("replica count must be positive");
  if (replicas == 1)
    return run_buffer_sim(config, r_on);
  config.validate();
  std::vector<SimReport> parts(static_cast<std::size_t>(replicas));
  parallel_for(replicas, [&](std::int64_t k) {
    SimConfig c = config;
    c.seed = derive_seed(config.seed, 1000 + static_cast<std::uint64_t>(k));
    c.horizon = config.horizon / replicas + (k < config.horizon % replicas ? 1 : 0);
    c.horizon = std::max(c.horizon, kMinSimHorizon);
    parts[static_cast<std::size_t>(k)] = run_buffer_sim(c, r_on);
  });
  SimReport total = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k)
    total = merge(total, parts[k]);
  return total;
}

SimReport merge(const SimReport &a, const SimReport &b) {
  if (a.thresholds != b.thresholds || a.delay_grid != b.delay_grid)
    throw ParameterError("cannot merge reports over different thresholds or delay grids");
  SimReport out = a;
  out.blocks += b.blocks;
  out.nonempty_count += b.nonempty_count;
  out.arrived_bits += b.arrived_bits;
  out.offered_service_bits += b.offered_service_bits;
  out.delay_probes += b.delay_probes;
  for (std::size_t k = 0; k < out.exceed_counts.size(); ++k)
    out.exceed_counts[k] += b.exceed_counts[k];
  for (std::size_t k = 0; k < out.delay_counts.size(); ++k)
    out.delay_counts[k] += b.delay_counts[k];
  return out;
}

std::pair<std::size_t, std::size_t> default_fit_range(const SimReport &report) {
  std::size_t usable = 0;
  while (usable < report.exceed_counts.size() && report.exceed_counts[usable] >= 100)
    ++usable;
  const std::size_t first = usable / 5;
  if (usable - first < 4)
    throw RangeError("only " + std::to_string(usable - first) +
                     " thresholds have at least 100 exceedances after dropping the smallest 20%; "
                     "use smaller thresholds or a longer horizon");
  return {first, usable};
}

ExponentFit fit_qos_exponent(const SimReport &report, std::size_t first, std::size_t last) {
  if (last > report.thresholds.size() || first >= last || last - first < 4)
    throw RangeError("exponent fit needs at least 4 thresholds in range");
  for (std::size_t k = first; k < last; ++k)
    if (report.exceed_counts[k] == 0)
      throw RangeError("threshold q = " + std::to_string(report.thresholds[k]) +
                       " has no exceedances; use smaller thresholds");

  // Weighted by exceedance count: ln p at threshold k has variance ~ 1/count.
  const Eigen::Index n = static_cast<Eigen::Index>(last - first);
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd y(n);
  Eigen::VectorXd w(n);
  const double blocks = static_cast<double>(report.blocks);
  for (Eigen::Index k = 0; k < n; ++k) {
    const std::size_t idx = first + static_cast<std::size_t>(k);
    const double count = static_cast<double>(report.exceed_counts[idx]);
    design(k, 0) = 1.0;
    design(k, 1) = report.thresholds[idx];
    y[k] = std::log(count / blocks);
    w[k] = count;
  }
  const Eigen::VectorXd sw = w.array().sqrt();
  const Eigen::MatrixXd a = sw.asDiagonal() * design;
  const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(sw.asDiagonal() * y);
  const Eigen::VectorXd resid = y - design * coef;
  const double wssr = (w.array() * resid.array().square()).sum();
  const Eigen::Matrix2d cov =
      (a.transpose() * a).inverse() * (wssr / static_cast<double>(n - 2));

  ExponentFit fit;
  fit.theta_sim = -coef[1];
  fit.intercept = coef[0];
  fit.residual = std::sqrt(resid.squaredNorm() / static_cast<double>(n));
  fit.theta_std_error = std::sqrt(cov(1, 1));
  fit.first = first;
  fit.last = last;
  return fit;
}

ExponentFit fit_qos_exponent(const SimReport &report) {
  const auto [first, last] = default_fit_range(report);
  return fit_qos_exponent(report, first, last);
}

std::vector<double> predict_delay_tail(const SourceModel &source, double r_on, double theta,
                                       const std::vector<double> &d_grid, double sigma) {
  const double rate = delay_exponent(source, theta, r_on);
  std::vector<double> out;
  out.reserve(d_grid.size());
  for (double d : d_grid)
    out.push_back(sigma * std::exp(-rate * d));
  return out;
}

double exponent_for_overflow_target(double sigma, double q, double epsilon) {
  if (!(sigma > 0.0 && sigma <= 1.0) || !(q > 0.0) || !(epsilon > 0.0 && epsilon < sigma))
    throw ParameterError("overflow target needs 0 < epsilon < sigma <= 1 and q > 0");
  return std::log(sigma / epsilon) / q;
}

std::vector<double> default_thresholds(double theta, int points, double span) {
  if (!(theta > 0.0) || points < 1 || !(span > 0.0))
    throw ParameterError("default thresholds need theta > 0, points >= 1, span > 0");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int k = 1; k <= points; ++k)
    out.push_back(span / theta * k / points);
  return out;
}

void write_report_csv(std::ostream &out, const SimReport &report) {
  out << "q,count,prob,ln_prob\n";
  const auto prob = report.overflow_prob();
  for (std::size_t k = 0; k < report.thresholds.size(); ++k) {
    out << report.thresholds[k] << ',' << report.exceed_counts[k] << ',' << prob[k] << ',';
    if (prob[k] > 0.0)
      out << std::log(prob[k]);
    else
      out << "-inf";
    out << '\n';
  }
}

} // namespace secqos
