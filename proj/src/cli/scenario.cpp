// SPDX-License-Identifier: Apache-2.0
#include "secqos/cli/scenario.hpp"
#include "secqos/simqueue.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

namespace secqos::cli {

namespace {

using nlohmann::json;

// A JSON object together with its dotted path, for error messages.
class Node {
public:
  Node(const json &value, std::string path) : value_(value), path_(std::move(path)) {}

  const std::string &path() const { return path_; }
  const json &value() const { return value_; }

  [[noreturn]] void fail(const std::string &what) const {
    throw ConfigError("config error at " + (path_.empty() ? std::string("<root>") : path_) + ": " +
                      what);
  }

  void require_object() const {
    if (!value_.is_object())
      fail("expected an object");
  }

  // Rejects keys outside `allowed` so typos do not pass silently.
  void only(std::initializer_list<const char *> allowed) const {
    require_object();
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto &item : value_.items())
      if (!ok.count(item.key()))
        child_path(item.key()).fail("unknown field");
  }

  bool has(const char *key) const { return value_.is_object() && value_.contains(key); }

  Node child(const char *key) const {
    if (!has(key))
      child_path(key).fail("missing field");
    return {value_.at(key), join(key)};
  }

  double number(const char *key, double fallback) const {
    return has(key) ? child(key).as_number() : fallback;
  }
  double number(const char *key) const { return child(key).as_number(); }

  std::int64_t integer(const char *key, std::int64_t fallback) const {
    return has(key) ? child(key).as_integer() : fallback;
  }

  std::string text(const char *key, const std::string &fallback) const {
    return has(key) ? child(key).as_text() : fallback;
  }

  double as_number() const {
    if (!value_.is_number())
      fail("expected a number");
    const double v = value_.get<double>();
    if (!std::isfinite(v))
      fail("expected a finite number");
    return v;
  }

  std::int64_t as_integer() const {
    if (value_.is_number_integer())
      return value_.get<std::int64_t>();
    if (value_.is_number_float()) {
      const double v = value_.get<double>();
      if (std::floor(v) == v && std::abs(v) < 9e18)
        return static_cast<std::int64_t>(v);
    }
    fail("expected an integer");
  }

  std::string as_text() const {
    if (!value_.is_string())
      fail("expected a string");
    return value_.get<std::string>();
  }

  std::vector<double> numbers() const {
    if (!value_.is_array())
      fail("expected an array of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < value_.size(); ++k)
      out.push_back(Node(value_[k], path_ + "[" + std::to_string(k) + "]").as_number());
    return out;
  }

private:
  std::string join(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }
  Node child_path(const std::string &key) const {
    static const json null_value;
    return {null_value, join(key)};
  }

  const json &value_;
  std::string path_;
};

// Runs a library validator and reports its message under the node's path.
template <typename F> void checked(const Node &node, F &&validate_fn) {
  try {
    validate_fn();
  } catch (const ParameterError &e) {
    node.fail(e.what());
  }
}

SourceModel parse_source(const Node &n) {
  n.require_object();
  const std::string type = n.text("type", "");
  SourceModel model;
  if (type == "constant") {
    n.only({"type"});
    model = ConstantRate{};
  } else if (type == "discrete_markov" || type == "discrete_mmpp") {
    n.only({"type", "p11", "p22", "s"});
    double p11 = 0, p22 = 1;
    if (n.has("s")) {
      if (n.has("p11") || n.has("p22"))
        n.fail("give either s or p11/p22");
      const double s = n.number("s");
      p11 = 1.0 - s;
      p22 = s;
    } else {
      p11 = n.number("p11");
      p22 = n.number("p22");
    }
    if (type == "discrete_markov")
      model = OnOffDiscreteMarkov{p11, p22};
    else
      model = OnOffDiscreteMmpp{p11, p22};
  } else if (type == "fluid" || type == "continuous_mmpp") {
    n.only({"type", "alpha", "beta"});
    const double alpha = n.number("alpha"), beta = n.number("beta");
    if (type == "fluid")
      model = OnOffMarkovFluid{alpha, beta};
    else
      model = OnOffContinuousMmpp{alpha, beta};
  } else {
    n.fail("source type must be one of constant, discrete_markov, fluid, discrete_mmpp, "
           "continuous_mmpp; got '" + type + "'");
  }
  checked(n, [&] { validate(model); });
  return model;
}

FadingScenario parse_fading(const Node &n) {
  n.only({"family", "mean_z1", "mean_z2", "power_correlation"});
  FadingScenario f;
  const std::string family = n.text("family", "rayleigh");
  if (family != "rayleigh")
    n.child("family").fail("only 'rayleigh' fading is supported");
  f.mean_z1 = n.number("mean_z1", 1.0);
  f.mean_z2 = n.number("mean_z2", 1.0);
  f.power_correlation = n.number("power_correlation", 0.0);
  checked(n, [&] { f.validate(); });
  return f;
}

PowerSplit parse_split(const Node &n) {
  n.only({"delta1", "delta2", "delta"});
  PowerSplit s;
  if (n.has("delta")) {
    s.delta1 = s.delta2 = n.number("delta");
  }
  s.delta1 = n.number("delta1", s.delta1);
  s.delta2 = n.number("delta2", s.delta2);
  checked(n, [&] { s.validate(); });
  return s;
}

void check_theta(const Node &n, double theta) {
  if (!(theta > 0.0))
    n.fail("theta must be positive");
}

std::array<double, 3> parse_theta(const Node &n) {
  if (n.value().is_number()) {
    const double t = n.as_number();
    check_theta(n, t);
    return {t, t, t};
  }
  n.only({"common", "user1", "user2"});
  std::array<double, 3> out{n.number("common", 1.0), n.number("user1", 1.0),
                            n.number("user2", 1.0)};
  for (const char *key : {"common", "user1", "user2"})
    if (n.has(key))
      check_theta(n.child(key), n.child(key).as_number());
  return out;
}

std::vector<double> parse_snr(const Node &n) {
  std::vector<double> grid;
  if (n.value().is_array()) {
    grid = n.numbers();
  } else {
    n.only({"values", "db_min", "db_max", "min", "max", "points"});
    if (n.has("values")) {
      grid = n.child("values").numbers();
    } else {
      const std::int64_t points = n.integer("points", 0);
      if (points < 1)
        n.fail("points must be at least 1");
      if (n.has("db_min") || n.has("db_max"))
        grid = db_grid(n.number("db_min"), n.number("db_max"), static_cast<int>(points));
      else {
        const double lo = n.number("min"), hi = n.number("max");
        if (!(lo > 0.0) || !(hi >= lo))
          n.fail("need 0 < min <= max");
        grid = log_grid(lo, hi, static_cast<int>(points));
      }
    }
  }
  if (grid.empty())
    n.fail("snr grid is empty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0.0))
      n.fail("snr values must be positive");
    if (k > 0 && !(grid[k] > grid[k - 1]))
      n.fail("snr values must be strictly ascending");
  }
  return grid;
}

ExpectationMethod parse_method(const Node &n, std::uint64_t seed) {
  n.only({"kind", "samples", "nodes"});
  const std::string kind = n.text("kind", "mc");
  if (kind == "mc") {
    const std::int64_t samples = n.integer("samples", 1'000'000);
    if (samples < 2)
      n.child("samples").fail("need at least 2 samples");
    return MonteCarlo{samples, seed};
  }
  if (kind == "quad") {
    const std::int64_t nodes = n.integer("nodes", 128);
    if (nodes < 16 || nodes > 4096)
      n.child("nodes").fail("nodes per axis must lie in [16, 4096]");
    return GaussLaguerre{static_cast<int>(nodes)};
  }
  n.child("kind").fail("method kind must be 'mc' or 'quad'");
}

FixedRatePolicy parse_policy(const Node &n, const char *a_key, const char *lambda_key) {
  if (n.has(a_key) && n.has(lambda_key))
    n.fail(std::string("give either ") + a_key + " or " + lambda_key);
  if (n.has(lambda_key)) {
    const double lambda = n.number(lambda_key);
    if (!(lambda > 0.0))
      n.child(lambda_key).fail("lambda must be positive");
    return FixedRatePolicy::explicit_rate(lambda);
  }
  const double a = n.number(a_key, 1.0);
  if (!(a > 0.0))
    n.child(a_key).fail("rate coefficient a must be positive");
  return FixedRatePolicy::coefficient(a);
}

SimulateSpec parse_simulate(const Node &n) {
  n.only({"message", "theta", "service", "snr", "horizon", "thresholds", "delay_grid", "a",
          "lambda", "gamma"});
  SimulateSpec s;
  if (n.has("message"))
    s.message = parse_message(n.child("message").as_text(), n.path() + ".message");
  s.theta = n.number("theta", 1.0);
  check_theta(n, s.theta);
  const std::string service = n.text("service", "perfect");
  if (service != "perfect" && service != "nocsi")
    n.child("service").fail("service must be 'perfect' or 'nocsi'");
  s.no_csi = service == "nocsi";
  s.snr = n.number("snr", 1.0);
  if (!(s.snr > 0.0))
    n.child("snr").fail("snr must be positive");
  s.horizon = n.integer("horizon", s.horizon);
  if (s.horizon < kMinSimHorizon)
    n.child("horizon").fail("horizon must be at least " + std::to_string(kMinSimHorizon) +
                            " blocks");
  if (n.has("thresholds")) {
    const Node t = n.child("thresholds");
    if (t.value().is_array()) {
      s.thresholds = t.numbers();
      if (s.thresholds.empty())
        t.fail("threshold list is empty");
      for (std::size_t k = 1; k < s.thresholds.size(); ++k)
        if (!(s.thresholds[k] > s.thresholds[k - 1]))
          t.fail("thresholds must be strictly ascending");
    } else {
      t.only({"points", "span"});
      s.threshold_points = static_cast<int>(t.integer("points", s.threshold_points));
      s.threshold_span = t.number("span", s.threshold_span);
      if (s.threshold_points < 4 || !(s.threshold_span > 0.0))
        t.fail("need points >= 4 and span > 0");
    }
  }
  if (n.has("delay_grid"))
    s.delay_grid = n.child("delay_grid").numbers();
  s.policy = parse_policy(n, "a", "lambda");
  s.gamma = n.number("gamma", 1.0);
  if (!(s.gamma > 0.0))
    n.child("gamma").fail("gamma must be positive");
  return s;
}

NoCsiSpec parse_nocsi(const Node &n) {
  n.only({"gamma", "theta", "coefficients", "lambdas"});
  NoCsiSpec s;
  s.gamma = n.number("gamma", 1.0);
  if (!(s.gamma > 0.0))
    n.child("gamma").fail("gamma must be positive");
  s.theta = n.number("theta", s.theta);
  check_theta(n, s.theta);
  if (n.has("coefficients") || n.has("lambdas")) {
    s.policies.clear();
    if (n.has("coefficients")) {
      const Node c = n.child("coefficients");
      for (double a : c.numbers()) {
        if (!(a > 0.0))
          c.fail("rate coefficients must be positive");
        s.policies.push_back(FixedRatePolicy::coefficient(a));
      }
    }
    if (n.has("lambdas")) {
      const Node l = n.child("lambdas");
      for (double lambda : l.numbers()) {
        if (!(lambda > 0.0))
          l.fail("lambda must be positive");
        s.policies.push_back(FixedRatePolicy::explicit_rate(lambda));
      }
    }
    if (s.policies.empty())
      n.fail("no rate policies given");
  }
  return s;
}

} // namespace

std::string message_name(Message m) {
  switch (m) {
  case Message::Common:
    return "common";
  case Message::Confidential1:
    return "user1";
  case Message::Confidential2:
    return "user2";
  }
  return "unknown";
}

Message parse_message(const std::string &name, const std::string &path) {
  if (name == "common" || name == "0")
    return Message::Common;
  if (name == "user1" || name == "1")
    return Message::Confidential1;
  if (name == "user2" || name == "2")
    return Message::Confidential2;
  throw ConfigError("config error at " + path + ": message must be common, user1 or user2; got '" +
                    name + "'");
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (n == 1)
    return {lo};
  std::vector<double> out;
  const double a = std::log10(lo), b = std::log10(hi);
  for (int k = 0; k < n; ++k)
    out.push_back(std::pow(10.0, a + (b - a) * k / (n - 1)));
  return out;
}

std::vector<double> db_grid(double db_lo, double db_hi, int n) {
  std::vector<double> out;
  for (int k = 0; k < n; ++k) {
    const double db = n == 1 ? db_lo : db_lo + (db_hi - db_lo) * k / (n - 1);
    out.push_back(std::pow(10.0, db / 10.0));
  }
  return out;
}

Scenario parse_scenario(const std::string &json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  const Node root(doc, "");
  root.only({"name", "seed", "source", "fading", "split", "theta", "snr", "method", "energy",
             "simulate", "nocsi"});
  Scenario s;
  s.name = root.text("name", s.name);
  if (root.has("seed")) {
    const std::int64_t seed = root.child("seed").as_integer();
    if (seed < 0)
      root.child("seed").fail("seed must be nonnegative");
    s.seed = static_cast<std::uint64_t>(seed);
  }
  if (root.has("source"))
    s.source = parse_source(root.child("source"));
  if (root.has("fading"))
    s.fading = parse_fading(root.child("fading"));
  if (root.has("split"))
    s.split = parse_split(root.child("split"));
  if (root.has("theta"))
    s.theta = parse_theta(root.child("theta"));
  if (root.has("snr"))
    s.snr = parse_snr(root.child("snr"));
  s.method = root.has("method") ? parse_method(root.child("method"), s.seed)
                                : ExpectationMethod{MonteCarlo{1'000'000, s.seed}};
  if (root.has("energy")) {
    const Node e = root.child("energy");
    e.only({"message"});
    if (e.has("message"))
      s.energy_message = parse_message(e.child("message").as_text(), "energy.message");
  }
  if (root.has("simulate"))
    s.simulate = parse_simulate(root.child("simulate"));
  if (root.has("nocsi"))
    s.nocsi = parse_nocsi(root.child("nocsi"));

  if (std::holds_alternative<GaussLaguerre>(s.method) && !s.fading.independent_exponential())
    throw ConfigError("config error at method.kind: quadrature requires "
                      "fading.power_correlation = 0");
  return s;
}

Scenario load_scenario(const std::filesystem::path &path) {
  std::ifstream file(path);
  if (!file)
    throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << file.rdbuf();
  return parse_scenario(text.str());
}

} // namespace secqos::cli
