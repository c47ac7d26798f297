#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>

#include "convexlab/approximation.hpp"
#include "convexlab/body_spec.hpp"
#include "convexlab/centroid.hpp"
#include "convexlab/harness.hpp"
#include "convexlab/parallel.hpp"
#include "convexlab/positioning.hpp"
#include "convexlab/stats.hpp"
#include "convexlab/vertex_index.hpp"

namespace convexlab::harness {

using nlohmann::json;
using sampling::format_double;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kIsoTag = 0x150;
constexpr std::uint64_t kReferenceTag = 0x4ef;
constexpr std::uint64_t kTrialTag = 0x7a1;
constexpr std::uint64_t kVindexTag = 0x71d;
constexpr std::uint64_t kLemmaTag = 0x1e3;
constexpr std::uint64_t kDirectionTag = 0xd13;
constexpr std::uint64_t kCenterTag = 0xba5;

class Output {
 public:
  explicit Output(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void write(const std::string& name, const std::string& content) {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + (dir_ / name).string() + "'");
    out << content;
    files_.push_back(name);
  }
  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }
  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

std::vector<double> double_list(const ExperimentConfig& cfg, const std::string& key,
                                std::vector<double> fallback) {
  const json* node = cfg.find(key);
  if (!node) return fallback;
  if (node->is_number()) return {node->get<double>()};
  if (!node->is_array()) throw ConfigError("\"" + key + "\" must be a number or an array");
  return node->get<std::vector<double>>();
}

std::vector<long> int_list(const ExperimentConfig& cfg, const std::string& key, std::vector<long> fallback) {
  const json* node = cfg.find(key);
  if (!node) return fallback;
  if (node->is_number_integer()) return {node->get<long>()};
  if (!node->is_array()) throw ConfigError("\"" + key + "\" must be an integer or an array");
  return node->get<std::vector<long>>();
}

// "body" may be a type name or a full spec; a missing "dim" comes from "n"
// (or from `dim` when a sweep sets it).
json body_spec(const ExperimentConfig& cfg, std::optional<long> dim = std::nullopt) {
  json spec = cfg.settings.value("body", json("cube"));
  if (spec.is_string()) spec = json{{"type", spec.get<std::string>()}};
  if (!spec.is_object()) throw ConfigError("\"body\" must be a type name or an object");
  const long n = dim.value_or(cfg.get<long>("n", spec.value("dim", 2L)));
  if (dim && spec.contains("dim") && spec["dim"].get<long>() != n) {
    const std::string type = spec.value("type", "");
    if (type != "cube" && type != "simplex" && type != "cross" && type != "ball") {
      throw ConfigError("a dimension sweep needs a named body type");
    }
  }
  if (!spec.contains("dim") || dim) spec["dim"] = n;
  return spec;
}

sampling::SamplerConfig sampler_config(const ExperimentConfig& cfg, const geometry::ConvexBody& body,
                                       std::uint64_t seed) {
  sampling::SamplerConfig sc = sampling::default_config(body, seed);
  if (const json* s = cfg.find("sampler")) {
    if (s->contains("method")) sc.method = sampling::method_from_string((*s)["method"].get<std::string>());
    if (s->contains("burn_in")) sc.burn_in = (*s)["burn_in"].get<long>();
    if (s->contains("thinning")) sc.thinning = (*s)["thinning"].get<long>();
    if (s->contains("chain_length")) sc.chain_length = (*s)["chain_length"].get<long>();
  }
  sc.workers = cfg.workers;
  sc.validate();
  return sc;
}

double body_volume(const ExperimentConfig& cfg, const geometry::ConvexBody& body) {
  if (body.known_volume()) return *body.known_volume();
  const auto count = cfg.get<std::size_t>("volume_samples", 200000);
  return positioning::volume_estimate(body, count, derive_seed(cfg.master_seed, 0, 0, kCenterTag), cfg.workers)
      .value;
}

std::string vector_text(const Vector& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_double(v[i]);
  return s;
}

// Translates a body whose barycenter is not the origin by construction.
geometry::ConvexBody recenter(const ExperimentConfig& cfg, const geometry::ParsedBody& parsed, std::ostream& log) {
  if (parsed.centered) return parsed.body;
  const Eigen::Index n = parsed.body.dim();
  const auto count = std::max<std::size_t>(100, cfg.get<std::size_t>("center_samples", 20000 * n));
  const auto bar = positioning::estimate_barycenter(
      parsed.body, count, sampler_config(cfg, parsed.body, derive_seed(cfg.master_seed, 0, 0, kCenterTag)));
  log << "notice: body re-centered at its estimated barycenter (" << vector_text(bar.value) << ")\n";
  return geometry::translate(parsed.body, -bar.value).with_label(parsed.body.label());
}

struct PreparedBody {
  geometry::ConvexBody body;
  double volume = 1.0;
  bool isotropized = false;
  std::optional<positioning::IsotropicReport> report;
};

PreparedBody prepare(const ExperimentConfig& cfg, const geometry::ParsedBody& parsed, bool isotropize_default,
                     std::ostream& log) {
  PreparedBody out{parsed.body, 1.0, false, std::nullopt};
  const Eigen::Index n = parsed.body.dim();
  if (cfg.get<bool>("isotropize", isotropize_default)) {
    const auto count = cfg.get<std::size_t>("isotropize_samples", std::max<std::size_t>(20000, 1000 * n));
    auto [iso, report] = positioning::isotropize(
        parsed.body, count, sampler_config(cfg, parsed.body, derive_seed(cfg.master_seed, 0, 0, kIsoTag)));
    out.body = iso;
    out.volume = iso.known_volume().value_or(1.0);
    out.isotropized = true;
    out.report = std::move(report);
    return out;
  }
  out.body = recenter(cfg, parsed, log);
  out.volume = body_volume(cfg, out.body);
  return out;
}

std::vector<Direction> directions(const ExperimentConfig& cfg, Eigen::Index n, std::size_t fallback,
                                  std::uint64_t salt) {
  const auto count = cfg.get<std::size_t>("directions", fallback);
  return geometry::quasi_uniform_directions(n, count, derive_seed(cfg.master_seed, salt, 0, kDirectionTag));
}

json quantiles(const std::vector<double>& v) {
  if (v.empty()) return json::object();
  return {{"p01", stats::quantile(v, 0.01)},
          {"p10", stats::quantile(v, 0.10)},
          {"p50", stats::quantile(v, 0.50)},
          {"p90", stats::quantile(v, 0.90)},
          {"p99", stats::quantile(v, 0.99)}};
}

// json cannot hold inf/nan; render them as strings.
json number(double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); }

struct Constants {
  double alpha = 10.0;
  double beta = 0.5;
  double C_hat = 4.0;
  std::string C_hat_mode;
};

Constants constants(const ExperimentConfig& cfg, const PreparedBody& prepared, std::ostream& log) {
  Constants c;
  c.alpha = cfg.get<double>("alpha", 10.0);
  c.beta = cfg.get<double>("beta", 0.5);
  if (cfg.find("constants.C_hat") || cfg.find("C_hat")) {
    c.C_hat = cfg.find("constants.C_hat") ? cfg.get<double>("constants.C_hat", 4.0) : cfg.get<double>("C_hat", 4.0);
    c.C_hat_mode = "configured";
    if (!(c.C_hat > 1.0)) throw ConfigError("C_hat must exceed 1");
    return c;
  }
  const Eigen::Index n = prepared.body.dim();
  try {
    const auto count = cfg.get<std::size_t>("reference_samples", 20000);
    const auto batch = sampling::sample_uniform(
        prepared.body, count, sampler_config(cfg, prepared.body, derive_seed(cfg.master_seed, 1, 0, kReferenceTag)));
    const auto dirs = geometry::quasi_uniform_directions(n, 64, derive_seed(cfg.master_seed, 1, 0, kDirectionTag));
    c.C_hat = centroid::estimate_tail_constant(batch, dirs, 2.0, prepared.volume);
    c.C_hat_mode = "empirical";
  } catch (const NumericFailure& e) {
    log << "notice: tail constant estimate failed (" << e.what() << "); using C_hat = 4\n";
    c.C_hat = 4.0;
    c.C_hat_mode = "fallback";
  }
  return c;
}

json constants_json(const Constants& c) {
  return {{"alpha", c.alpha}, {"beta", c.beta}, {"C_hat", c.C_hat}, {"C_hat_mode", c.C_hat_mode}};
}

void warn_range(long N, Eigen::Index n, std::ostream& log, json& flags) {
  if (static_cast<double>(N) > std::exp(static_cast<double>(n))) {
    log << "warning: N = " << N << " exceeds e^n = " << std::exp(static_cast<double>(n))
        << "; outside the range covered by the containment theorems\n";
    flags.push_back("N=" + std::to_string(N) + " exceeds e^n");
  }
}

struct TrialSet {
  long N = 0;
  std::vector<approximation::TrialRecord> records;
};

TrialSet run_trials(const ExperimentConfig& cfg, const PreparedBody& prepared, const Constants& c, long N,
                    std::size_t trials, RunManifest& manifest) {
  const Eigen::Index n = prepared.body.dim();
  const double q = approximation::q_select(std::max<long>(N, n), n, c.beta, c.C_hat);

  const auto ref_count = cfg.get<std::size_t>("reference_samples", 20000);
  const auto reference = sampling::sample_uniform(
      prepared.body, ref_count,
      sampler_config(cfg, prepared.body, derive_seed(cfg.master_seed, static_cast<std::uint64_t>(N), 0, kReferenceTag)));
  const auto profile_dirs = geometry::quasi_uniform_directions(
      n, cfg.get<std::size_t>("profile_directions", 64), derive_seed(cfg.master_seed, 2, 0, kDirectionTag));
  const auto profile = approximation::zq_profile(reference, q, profile_dirs, prepared.volume);

  approximation::ContainmentOptions copt;
  copt.directions = cfg.get<std::size_t>("bound_directions", 0);
  const bool mirror = cfg.get<bool>("mirror", false);
  const auto method_name = cfg.get<std::string>("sampler.method", "");

  TrialSet set;
  set.N = N;
  set.records.resize(trials);
  parallel_for(trials, cfg.workers, [&](std::size_t t) {
    approximation::TrialConfig tc;
    tc.seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(N), t, kTrialTag);
    tc.C_hat = c.C_hat;
    tc.mirror = mirror;
    if (!method_name.empty()) tc.method = sampling::method_from_string(method_name);
    tc.containment = copt;
    tc.profile = &profile;
    set.records[t] = approximation::run_containment_trial(prepared.body, N, c.beta, tc);
  });
  for (const auto& r : set.records) manifest.trial_seeds.push_back(r.seed);
  return set;
}

std::string trials_csv(const std::vector<TrialSet>& sets) {
  std::string csv = std::string(approximation::kTrialsHeader) + "\n";
  for (const auto& s : sets) {
    for (const auto& r : s.records) csv += approximation::csv_row(r) + "\n";
  }
  return csv;
}

json trial_summary(const TrialSet& s, Eigen::Index n) {
  std::vector<double> c_req, t_star, zq;
  std::size_t zeros = 0;
  for (const auto& r : s.records) {
    c_req.push_back(r.c_required);
    t_star.push_back(r.t_star);
    zq.push_back(r.zq_ratio);
    zeros += r.t_star > 0.0 ? 0 : 1;
  }
  std::vector<double> c_over_n;
  for (double v : c_req) c_over_n.push_back(v / static_cast<double>(n));
  json j;
  j["N"] = s.N;
  j["trials"] = s.records.size();
  j["q"] = s.records.empty() ? 0.0 : s.records.front().q;
  j["method"] = s.records.empty() ? "" : approximation::to_string(s.records.front().method);
  j["zero_t_star_rows"] = zeros;
  j["median_t_star"] = stats::median(t_star);
  auto to_numbers = [](json q) {
    for (auto& [k, v] : q.items()) v = number(v.get<double>());
    return q;
  };
  j["c_required"] = to_numbers(quantiles(c_req));
  j["c_required_over_n"] = to_numbers(quantiles(c_over_n));
  j["zq_ratio"] = to_numbers(quantiles(zq));
  return j;
}

// --- commands ---------------------------------------------------------------

void cmd_sample(const ExperimentConfig& cfg, Output& out, RunManifest& manifest, std::ostream& log) {
  const auto parsed = geometry::parse_body(body_spec(cfg));
  const auto count = cfg.get<std::size_t>("N", 1000);
  const auto batch = sampling::sample_uniform(parsed.body, count, sampler_config(cfg, parsed.body, cfg.master_seed));
  out.write("samples.csv", sampling::batch_csv(batch));
  out.write_json("samples.json", sampling::batch_sidecar(batch));
  manifest.trial_seeds.push_back(cfg.master_seed);
  log << "sampled " << batch.size() << " points of " << parsed.body.label() << " in R^" << batch.dim() << " ("
      << sampling::to_string(batch.config.method) << ")\n";
}

void cmd_isotropize(const ExperimentConfig& cfg, Output& out, RunManifest& manifest, std::ostream& log) {
  const auto parsed = geometry::parse_body(body_spec(cfg));
  const Eigen::Index n = parsed.body.dim();
  const auto count = cfg.get<std::size_t>("samples", std::max<std::size_t>(100000, 1000 * n));
  const auto [iso, report] = positioning::isotropize(parsed.body, count, sampler_config(cfg, parsed.body, cfg.master_seed));
  json j = positioning::to_json(report);
  j["body"] = parsed.body.label();
  out.write_json("isotropize.json", j);
  manifest.trial_seeds.push_back(cfg.master_seed);
  log << "L_K estimate " << format_double(report.L_K_est) << " +- " << format_double(report.stderr_LK) << "\n";
}

void cmd_mvee(const ExperimentConfig& cfg, Output& out, RunManifest&, std::ostream& log) {
  PointSet points;
  std::string source;
  if (cfg.has("points")) {
    source = cfg.get<std::string>("points", "");
    points = sampling::read_points_csv(source);
  } else {
    const auto parsed = geometry::parse_body(body_spec(cfg));
    points = positioning::envelope_points(parsed.body, cfg.master_seed);
    source = parsed.body.label();
  }
  positioning::MveeOptions opt;
  opt.eps = cfg.get<double>("eps", opt.eps);
  opt.max_iterations = cfg.get<long>("max_iterations", opt.max_iterations);
  const auto res = positioning::mvee(points, opt);
  const Vector radii = res.ellipsoid.radii();
  json j = positioning::to_json(res.ellipsoid);
  j["source"] = source;
  j["iterations"] = res.iterations;
  j["converged"] = res.converged;
  j["max_residual"] = res.max_residual;
  j["radii"] = std::vector<double>(radii.data(), radii.data() + radii.size());
  j["volume"] = res.ellipsoid.volume();
  out.write_json("mvee.json", j);
  log << "MVEE of " << points.cols() << " points after " << res.iterations << " iterations; radii "
      << vector_text(radii) << "\n";
}

void cmd_centroid(const ExperimentConfig& cfg, Output& out, RunManifest& manifest, std::ostream& log) {
  const auto parsed = geometry::parse_body(body_spec(cfg));
  const PreparedBody prepared = prepare(cfg, parsed, false, log);
  const Eigen::Index n = prepared.body.dim();
  const auto qs = double_list(cfg, cfg.has("q") ? "q" : "q_list", {1.0, 2.0, 4.0});
  if (qs.empty()) throw ConfigError("the q list is empty");
  std::vector<Direction> dirs;
  if (cfg.has("theta")) {
    const auto theta = cfg.get<std::vector<double>>("theta", {});
    if (static_cast<Eigen::Index>(theta.size()) != n) throw DimensionMismatch("\"theta\" has the wrong length");
    dirs.emplace_back(Eigen::Map<const Vector>(theta.data(), n));
  } else {
    dirs = directions(cfg, n, 50, 3);
  }
  const auto count = cfg.get<std::size_t>("samples", 100000);
  const auto batch =
      sampling::sample_uniform(prepared.body, count, sampler_config(cfg, prepared.body, cfg.master_seed));
  manifest.trial_seeds.push_back(cfg.master_seed);

  std::string csv = "q,direction,h_zq_plus,stderr,h_zq,stderr_two_sided";
  for (Eigen::Index k = 0; k < n; ++k) csv += ",theta" + std::to_string(k);
  csv += "\n";
  for (double q : qs) {
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      const auto plus = centroid::h_zq_plus(batch, {q, dirs[d], true}, prepared.volume);
      const auto two = centroid::h_zq(batch, {q, dirs[d], false}, prepared.volume);
      csv += format_double(q) + "," + std::to_string(d) + "," + format_double(plus.value) + "," +
             format_double(plus.stderr_) + "," + format_double(two.value) + "," + format_double(two.stderr_);
      for (Eigen::Index k = 0; k < n; ++k) csv += "," + format_double(dirs[d].vec()[k]);
      csv += "\n";
    }
  }
  out.write("centroid.csv", csv);
  log << "centroid estimates for " << qs.size() << " q values x " << dirs.size() << " directions\n";
}

void cmd_containment(const std::string& command, const ExperimentConfig& cfg, Output& out, RunManifest& manifest,
                     std::ostream& log) {
  const auto parsed = geometry::parse_body(body_spec(cfg));
  const Eigen::Index n = parsed.body.dim();
  const PreparedBody prepared = prepare(cfg, parsed, true, log);
  const Constants c = constants(cfg, prepared, log);
  const auto trials = cfg.get<std::size_t>("trials", command == "approx" ? 100 : 200);
  const long alpha_N = static_cast<long>(std::ceil(c.alpha * static_cast<double>(n)));

  std::vector<long> Ns;
  if (command == "theorem13") {
    Ns = int_list(cfg, "N_list", {10 * n, 40 * n, 160 * n});
  } else if (command == "approx" && cfg.has("N")) {
    Ns = {cfg.get<long>("N", alpha_N)};
  } else {
    Ns = {alpha_N};
  }

  json summary;
  summary["command"] = command;
  summary["body"] = parsed.body.label();
  summary["n"] = n;
  summary["isotropized"] = prepared.isotropized;
  summary["constants"] = constants_json(c);
  summary["flags"] = json::array();
  std::vector<TrialSet> sets;
  for (long N : Ns) {
    if (command == "theorem13") warn_range(N, n, log, summary["flags"]);
    if (N <= n) {
      log << "warning: N = " << N << " <= n; C_N is degenerate and t* = 0 is expected\n";
      summary["flags"].push_back("degenerate N=" + std::to_string(N));
    }
    sets.push_back(run_trials(cfg, prepared, c, N, trials, manifest));
  }
  out.write("trials.csv", trials_csv(sets));

  summary["per_N"] = json::array();
  for (const auto& s : sets) summary["per_N"].push_back(trial_summary(s, n));

  if (command == "theorem11") {
    const double c_cut = cfg.get<double>("c_cut", 20.0);
    summary["constants"]["c_cut"] = c_cut;
    std::size_t within = 0;
    for (const auto& r : sets.front().records) within += r.c_required <= c_cut * static_cast<double>(n) ? 1 : 0;
    const double freq = static_cast<double>(within) / static_cast<double>(trials);
    summary["frequency_within_cut"] = freq;
    log << "theorem11: " << parsed.body.label() << " n=" << n << " N=" << Ns.front()
        << " freq(c_required <= " << c_cut << " n) = " << format_double(freq) << "\n";
  } else if (command == "theorem13") {
    std::vector<double> x, y;
    for (const auto& s : sets) {
      std::vector<double> t, normalized;
      const double logr = std::log(static_cast<double>(s.N) / static_cast<double>(n));
      for (const auto& r : s.records) {
        t.push_back(r.t_star);
        normalized.push_back(static_cast<double>(n) * r.t_star / (c.beta * logr));
      }
      x.push_back(logr / static_cast<double>(n));
      y.push_back(stats::median(t));
      log << "theorem13: N=" << s.N << " median t* = " << format_double(y.back()) << "\n";
      auto& entry = summary["per_N"][x.size() - 1];
      entry["median_normalized"] = number(stats::median(normalized));
      entry["median_t_over_log_ratio"] = number(y.back() / x.back());
    }
    if (sets.size() < 2) {
      summary["regression"] = "skipped: a single N";
      summary["flags"].push_back("regression skipped");
    } else {
      const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
      const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
      double sxy = 0.0, sxx = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
      }
      const double slope = sxy / sxx;
      summary["regression"] = {{"x", "ln(N/n)/n"}, {"y", "median t*"}, {"slope", number(slope)},
                               {"intercept", number(my - slope * mx)}};
      bool increasing = true;
      for (std::size_t i = 1; i < y.size(); ++i) increasing = increasing && y[i] > y[i - 1];
      summary["medians_increasing"] = increasing;
    }
  }
  out.write_json("summary.json", summary);
}

void cmd_vindex(const ExperimentConfig& cfg, Output& out, RunManifest& manifest, std::ostream& log) {
  const bool sweep = cfg.has("n_list");
  const auto n_list = int_list(cfg, "n_list", {cfg.get<long>("n", body_spec(cfg)["dim"].get<long>())});
  const auto trials = cfg.get<std::size_t>("trials", 50);
  const double alpha = cfg.get<double>("alpha", 10.0);
  const std::optional<double> vi_c =
      cfg.has("constants.vi_c") ? std::optional<double>(cfg.get<double>("constants.vi_c", 0.0)) : std::nullopt;

  std::string csv = "seed,n,body,N,trials,best_total,t_star,ovr_est,lower_ratio,elapsed_ms\n";
  json summary;
  summary["command"] = "vindex";
  summary["constants"] = {{"alpha", alpha}, {"vi_c", vi_c ? json(*vi_c) : json("symbolic")}};
  summary["rows"] = json::array();
  std::vector<double> log_n, log_total;
  for (long n : n_list) {
    const auto start = std::chrono::steady_clock::now();
    const auto parsed = geometry::parse_body(body_spec(cfg, sweep ? std::optional<long>(n) : std::nullopt));
    const geometry::ConvexBody body = recenter(cfg, parsed, log);
    const long N = sweep || !cfg.has("N") ? static_cast<long>(std::ceil(alpha * static_cast<double>(n)))
                                          : cfg.get<long>("N", 0);
    vertex_index::RandomUpperConfig rc;
    rc.seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(n), 0, kVindexTag);
    rc.alpha = alpha;
    rc.mirrored = cfg.get<bool>("mirror", false);
    rc.workers = cfg.workers;
    const auto upper = vertex_index::vi_upper_random(body, N, trials, rc);
    vertex_index::LowerConfig lc;
    lc.c = vi_c;
    lc.volume_samples = cfg.get<std::size_t>("ovr_samples", 100000);
    lc.seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(n), 1, kVindexTag);
    lc.workers = cfg.workers;
    const auto lower = vertex_index::vi_lower(body, lc);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    manifest.trial_seeds.push_back(rc.seed);
    csv += std::to_string(rc.seed) + "," + std::to_string(n) + "," + parsed.body.label() + "," + std::to_string(N) +
           "," + std::to_string(trials) + "," + format_double(upper.certificate.total) + "," +
           format_double(upper.t_star) + "," + format_double(lower.ovr_used) + "," + format_double(lower.value) + "," +
           format_double(ms) + "\n";
    summary["rows"].push_back({{"n", n},
                               {"best_total", upper.certificate.total},
                               {"best_trial", upper.best_trial},
                               {"discarded_trials", upper.discarded},
                               {"lower", lower.value},
                               {"lower_mode", lower.constant_mode},
                               {"exact_containment_check", upper.certificate.exact_check},
                               {"sandwich_holds", lower.value <= upper.certificate.total}});
    log_n.push_back(std::log(static_cast<double>(n)));
    log_total.push_back(std::log(upper.certificate.total));
    log << "vindex: n=" << n << " best total " << format_double(upper.certificate.total) << ", n^1.5/ovr "
        << format_double(lower.value) << "\n";
  }
  if (log_n.size() >= 2) {
    const double mx = std::accumulate(log_n.begin(), log_n.end(), 0.0) / static_cast<double>(log_n.size());
    const double my = std::accumulate(log_total.begin(), log_total.end(), 0.0) / static_cast<double>(log_n.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
      sxy += (log_n[i] - mx) * (log_total[i] - my);
      sxx += (log_n[i] - mx) * (log_n[i] - mx);
    }
    summary["slope_log_total_vs_log_n"] = sxy / sxx;
    log << "vindex: slope of ln(best total) against ln(n) = " << format_double(sxy / sxx) << "\n";
  }
  out.write("vindex.csv", csv);
  out.write_json("summary.json", summary);
}

void cmd_lemmas(const ExperimentConfig& cfg, Output& out, RunManifest& manifest, std::ostream& log) {
  std::vector<std::string> bodies = {"cube", "simplex", "cross"};
  if (cfg.has("bodies")) bodies = cfg.get<std::vector<std::string>>("bodies", bodies);
  auto qs = double_list(cfg, "q_list", {1.0, 2.0, 4.0});
  if (qs.empty()) throw ConfigError("the q list is empty");
  std::sort(qs.begin(), qs.end());
  const auto n_list = int_list(cfg, "n_list", {cfg.get<long>("n", 3)});
  const auto dir_count = cfg.get<std::size_t>("directions", 50);
  const auto count = cfg.get<std::size_t>("samples", 20000);
  const double floor = cfg.get<double>("constants.isotropic_floor", 0.1);

  std::string rows;
  std::size_t passed = 0, total = 0;
  double max_borell = 0.0, max_upper_constant = 0.0;
  auto emit = [&](const centroid::CheckRow& row) {
    rows += centroid::to_json(row).dump() + "\n";
    ++total;
    passed += row.pass ? 1 : 0;
  };

  for (std::size_t b = 0; b < bodies.size(); ++b) {
    for (long n : n_list) {
      const geometry::ConvexBody body = geometry::named_body(bodies[b], n);
      const double volume = body.known_volume().value_or(1.0);
      const std::uint64_t seed = derive_seed(cfg.master_seed, b, static_cast<std::uint64_t>(n), kLemmaTag);
      manifest.trial_seeds.push_back(seed);
      const auto batch = sampling::sample_uniform(body, count, sampler_config(cfg, body, seed));

      std::vector<Direction> dirs;
      std::vector<std::uint64_t> dir_seeds;
      for (std::size_t d = 0; d < dir_count; ++d) {
        dir_seeds.push_back(derive_seed(seed, d, 0, kDirectionTag));
        Substream rng(dir_seeds.back());
        dirs.push_back(rng.direction(n));
      }
      auto row = [&](const char* lemma, double q, std::size_t d) {
        centroid::CheckRow r;
        r.lemma = lemma;
        r.n = n;
        r.body = bodies[b];
        r.q = q;
        r.theta_seed = dir_seeds[d];
        return r;
      };

      for (double q : qs) {
        for (std::size_t d = 0; d < dirs.size(); ++d) {
          const auto rep = centroid::check_support_bracket(body, dirs[d], q, batch, volume);
          auto r = row("support_bracket", q, d);
          r.value = rep.value;
          r.lower = rep.lower;
          r.upper = rep.upper;
          r.stderr_ = rep.stderr_;
          r.pass = rep.pass;
          emit(r);
        }
      }
      for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
        for (std::size_t d = 0; d < dirs.size(); ++d) {
          const auto rep = centroid::check_inclusion_q_r(batch, dirs[d], qs[i], qs[i + 1], volume);
          auto r = row("inclusion_q_r", qs[i], d);
          r.value = rep.factor * rep.h_q;
          r.lower = 0.0;
          r.upper = rep.h_r * (1.0 + 4.0 * rep.relative_stderr);
          r.stderr_ = rep.relative_stderr * r.value;
          r.pass = rep.pass;
          max_upper_constant = std::max(max_upper_constant, rep.upper_constant);
          max_borell = std::max(max_borell, centroid::borell_ratio(batch, dirs[d], qs[i], qs[i + 1], volume));
          emit(r);
        }
      }
      for (double q : qs) {
        if (q < 2.0) continue;
        for (std::size_t d = 0; d < dirs.size(); ++d) {
          const auto rep = centroid::check_tail_mass(batch, dirs[d], q, 0.5, volume);
          auto r = row("tail_mass", q, d);
          r.value = rep.empirical_tail;
          r.lower = rep.pz_bound;
          r.upper = 1.0;
          r.stderr_ = rep.stderr_;
          r.pass = rep.pass;
          emit(r);
        }
      }

      // Floor check on an isotropized copy.
      const auto iso_count = std::max<std::size_t>(count, 1000 * static_cast<std::size_t>(n));
      auto [iso, report] = positioning::isotropize(body, iso_count, sampler_config(cfg, body, derive_seed(seed, 0, 0, kIsoTag)));
      const auto iso_batch = sampling::sample_uniform(iso, count, sampler_config(cfg, iso, derive_seed(seed, 1, 0, kIsoTag)));
      const auto floor_rep = centroid::check_isotropic_floor(iso_batch, dirs, report.L_K_est, floor, 2.0,
                                                             iso.known_volume().value_or(1.0));
      auto r = row("isotropic_floor", 2.0, floor_rep.argmin);
      r.value = floor_rep.min_ratio;
      r.lower = floor;
      r.upper = floor_rep.max_ratio;
      r.stderr_ = 0.0;
      r.pass = floor_rep.pass;
      emit(r);
    }
  }
  out.write("lemmas.jsonl", rows);
  json summary = {{"command", "lemmas"},
                  {"rows", total},
                  {"passed", passed},
                  {"constants", {{"isotropic_floor", floor}, {"confidence_factor", 4.0}}},
                  {"observed", {{"max_two_sided_comparison_ratio", max_borell},
                                {"max_right_inclusion_constant", max_upper_constant}}}};
  out.write_json("summary.json", summary);
  log << "lemmas: " << passed << " of " << total << " rows pass\n";
}

void cmd_bound(const ExperimentConfig& cfg, Output& out, RunManifest&, std::ostream& log) {
  json grid = json::array();
  if (cfg.has("grid")) {
    grid = cfg.settings["grid"];
  } else {
    json point = {{"N", cfg.get<long>("N", 100)}, {"n", cfg.get<long>("n", 2)}};
    if (cfg.has("q")) point["q"] = cfg.get<double>("q", 2.0);
    if (cfg.has("C_hat")) point["C_hat"] = cfg.get<double>("C_hat", 4.0);
    grid.push_back(point);
  }
  const double beta = cfg.get<double>("beta", 0.5);
  std::string csv = "N,n,q,C_hat,log_bound,bound\n";
  for (const auto& p : grid) {
    const long N = p.at("N").get<long>();
    const long n = p.at("n").get<long>();
    const double C_hat = p.value("C_hat", 4.0);
    const double q = p.contains("q") ? p["q"].get<double>() : approximation::q_select(N, n, beta, C_hat);
    const double lb = approximation::log_failure_bound(N, n, q, C_hat);
    csv += std::to_string(N) + "," + std::to_string(n) + "," + format_double(q) + "," + format_double(C_hat) + "," +
           format_double(lb) + "," + format_double(approximation::failure_bound(N, n, q, C_hat)) + "\n";
    log << "bound: N=" << N << " n=" << n << " q=" << format_double(q) << " log bound " << format_double(lb) << "\n";
  }
  out.write("bound.csv", csv);
}

}  // namespace

RunManifest run_command(const std::string& command, const ExperimentConfig& cfg, std::ostream& log) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), command) == names.end()) {
    throw ConfigError("unknown command '" + command + "'");
  }
  const auto start = std::chrono::steady_clock::now();
  RunManifest manifest;
  manifest.command = command;
  manifest.config = cfg.replay_config();
  manifest.config_hash = config_hash(manifest.config);
  manifest.version = CONVEXLAB_VERSION;
  manifest.workers = cfg.workers;

  Output out(cfg.out_dir);
  if (command == "sample") {
    cmd_sample(cfg, out, manifest, log);
  } else if (command == "isotropize") {
    cmd_isotropize(cfg, out, manifest, log);
  } else if (command == "mvee") {
    cmd_mvee(cfg, out, manifest, log);
  } else if (command == "centroid") {
    cmd_centroid(cfg, out, manifest, log);
  } else if (command == "approx" || command == "theorem11" || command == "theorem13") {
    cmd_containment(command, cfg, out, manifest, log);
  } else if (command == "vindex") {
    cmd_vindex(cfg, out, manifest, log);
  } else if (command == "lemmas") {
    cmd_lemmas(cfg, out, manifest, log);
  } else {
    cmd_bound(cfg, out, manifest, log);
  }
  manifest.outputs = out.files();
  manifest.wall_clock_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  manifest.outputs.push_back("manifest.json");
  out.write_json("manifest.json", to_json(manifest));
  return manifest;
}

}  // namespace convexlab::harness
