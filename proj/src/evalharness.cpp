#include "qaoarec/evalharness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <set>

#include "qaoarec/errors.hpp"
#include "qaoarec/parallel.hpp"
#include "qaoarec/rng.hpp"

namespace qaoarec {

double approximation_ratio(double expectation_ising, double c_opt_cut) {
  if (!(c_opt_cut > 0.0)) throw DomainError("approximation_ratio: optimal cut must be positive");
  return -expectation_ising / c_opt_cut;
}

double optimality_gap(double expectation, double c_opt) {
  if (!(c_opt < 0.0))
    throw DomainError("optimality_gap: optimum must be negative; regenerate or exclude this instance");
  return (c_opt - expectation) / c_opt;
}

double ratio_to_optimal(double c_opt, double e_opt, double e_cluster) {
  const double denom = c_opt - e_cluster;
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return (c_opt - e_opt) / denom;
}

std::string to_string(MethodKind kind) {
  switch (kind) {
    case MethodKind::AngleValues: return "AngleValues";
    case MethodKind::InstanceFeatures: return "InstanceFeatures";
    case MethodKind::ExternalEmbedding: return "ExternalEmbedding";
    case MethodKind::MeanBaseline: return "Mean";
    case MethodKind::MedianBaseline: return "Median";
  }
  return "unknown";
}

MethodKind method_kind_from_string(const std::string& text) {
  if (text == "angles" || text == "AngleValues") return MethodKind::AngleValues;
  if (text == "features" || text == "InstanceFeatures") return MethodKind::InstanceFeatures;
  if (text == "embeddings" || text == "ExternalEmbedding") return MethodKind::ExternalEmbedding;
  if (text == "mean" || text == "Mean") return MethodKind::MeanBaseline;
  if (text == "median" || text == "Median") return MethodKind::MedianBaseline;
  throw ParameterError("unknown method '" + text + "' (expected angles|features|embeddings|mean|median)");
}

bool MethodConfig::uses_standardization() const {
  if (standardize) return *standardize;
  return kind == MethodKind::InstanceFeatures || kind == MethodKind::ExternalEmbedding;
}

std::vector<Encoding> method_encodings(const MethodConfig& config, int depth,
                                       const std::vector<ProblemInstance>& instances, const AngleDatabase& db,
                                       std::vector<std::string>* warnings) {
  std::vector<Encoding> out;
  for (const auto& inst : instances) {
    switch (config.kind) {
      case MethodKind::AngleValues: out.push_back(angle_encoding(db.at(inst.id, depth))); break;
      case MethodKind::InstanceFeatures:
        try {
          out.push_back(instance_features(inst, config.features));
        } catch (const FeatureError& e) {
          if (warnings) warnings->push_back(std::string("skipping instance: ") + e.what());
        }
        break;
      case MethodKind::ExternalEmbedding: {
        if (!config.embeddings) throw ParameterError("ExternalEmbedding method needs an embeddings file");
        auto it = config.embeddings->find(inst.id);
        if (it == config.embeddings->end()) throw DomainError("no external embedding for instance " + inst.id);
        out.push_back(it->second);
        break;
      }
      case MethodKind::MeanBaseline:
      case MethodKind::MedianBaseline: break;
    }
  }
  return out;
}

FittedMethod fit_method(const MethodConfig& config, int depth, int k, const std::vector<ProblemInstance>& train,
                        const AngleDatabase& db) {
  FittedMethod fm;
  if (config.kind == MethodKind::MeanBaseline || config.kind == MethodKind::MedianBaseline) {
    std::vector<const AngleRecord*> recs;
    for (const auto& inst : train) recs.push_back(&db.at(inst.id, depth));
    fm.recs.depth = depth;
    fm.recs.angles = {aggregate_baseline(
        recs, config.kind == MethodKind::MeanBaseline ? AggregateStat::Mean : AggregateStat::Median)};
    fm.recs.source = to_string(config.kind);
    fm.recs.provenance = config.label();
    return fm;
  }
  std::vector<Encoding> enc = method_encodings(config, depth, train, db, &fm.warnings);
  if (config.uses_standardization()) {
    auto [scaled, scaler] = standardize(enc);
    enc = std::move(scaled);
    fm.scaler = std::move(scaler);
  }
  ClusterModel model = kmeans_fit(enc, k, derive_seed(config.seed, {static_cast<std::uint64_t>(depth),
                                                                    static_cast<std::uint64_t>(k)}),
                                  config.kmeans);
  model.representative_rule = config.rule;
  model.depth = depth;
  model.scaler = fm.scaler;
  fm.recs = make_recommendations(model, db, depth, config.label());
  fm.model = std::move(model);
  return fm;
}

std::vector<int> make_folds(const std::vector<ProblemInstance>& instances, int folds, std::uint64_t seed,
                            bool stratified) {
  if (folds < 2) throw ParameterError("make_folds: need at least 2 folds");
  if (static_cast<std::size_t>(folds) > instances.size())
    throw ParameterError("make_folds: more folds than instances");
  std::vector<int> fold_of(instances.size(), 0);
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < instances.size(); ++i) groups[stratified ? instances[i].n : 0].push_back(i);
  int offset = 0;
  for (auto& [n, members] : groups) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(n)}));
    for (std::size_t i = members.size(); i > 1; --i) std::swap(members[i - 1], members[rng.below(i)]);
    for (std::size_t pos = 0; pos < members.size(); ++pos)
      fold_of[members[pos]] = static_cast<int>((offset + pos) % folds);
    offset = static_cast<int>((offset + members.size()) % folds);
  }
  return fold_of;
}

namespace {

void evaluate_split(const MethodConfig& config, const std::vector<ProblemInstance>& train,
                    const std::vector<ProblemInstance>& test, const AngleDatabase& db, int fold, int jobs,
                    EvalResult& out) {
  std::vector<std::unique_ptr<QaoaSimulator>> sims(test.size());
  parallel_for(test.size(), jobs, [&](std::size_t i) { sims[i] = std::make_unique<QaoaSimulator>(to_ising(test[i])); });
  const bool baseline = config.kind == MethodKind::MeanBaseline || config.kind == MethodKind::MedianBaseline;
  const std::vector<int> ks = baseline ? std::vector<int>{1} : config.ks;
  for (int depth : config.depths) {
    for (int k : ks) {
      if (static_cast<int>(train.size()) < k) {
        out.warnings.push_back("fold " + std::to_string(fold) + ": " + std::to_string(train.size()) +
                               " training points < k = " + std::to_string(k) + "; skipped");
        continue;
      }
      FittedMethod fitted = fit_method(config, depth, k, train, db);
      for (auto& w : fitted.warnings) out.warnings.push_back(w);
      std::vector<RatioSample> samples(test.size());
      parallel_for(test.size(), jobs, [&](std::size_t i) {
        const AngleRecord& rec = db.at(test[i].id, depth);
        const NativeObjective obj = native_objective(test[i]);
        const RecommendationOutcome o = evaluate_recommendations(fitted.recs, *sims[i], test[i].id);
        samples[i] = {test[i].id, config.label(), depth, k,
                      ratio_to_optimal(rec.c_opt, to_native(obj, rec.expectation), to_native(obj, o.best_expectation))};
      });
      out.samples.insert(out.samples.end(), samples.begin(), samples.end());
      out.fits.push_back({fold, depth, k, std::move(fitted)});
    }
  }
}

}  // namespace

EvalResult run_cv(const MethodConfig& config, const std::vector<ProblemInstance>& instances, const AngleDatabase& db,
                  int folds, std::uint64_t seed, bool stratified, int jobs) {
  EvalResult out;
  out.fold_of = make_folds(instances, folds, seed, stratified);
  for (int f = 0; f < folds; ++f) {
    std::vector<ProblemInstance> train, test;
    for (std::size_t i = 0; i < instances.size(); ++i) (out.fold_of[i] == f ? test : train).push_back(instances[i]);
    if (train.empty()) {
      out.warnings.push_back("fold " + std::to_string(f) + " has no training data; skipped");
      continue;
    }
    evaluate_split(config, train, test, db, f, jobs, out);
  }
  return out;
}

SizeSplit size_split(const std::vector<ProblemInstance>& instances, double train_frac) {
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < instances.size(); ++i) groups[instances[i].n].push_back(i);
  if (groups.size() < 2) throw ParameterError("size split needs at least two distinct node counts");
  const double target = train_frac * static_cast<double>(instances.size());
  SizeSplit split;
  std::size_t taken_groups = 0;
  for (const auto& [n, members] : groups) {
    const bool first = taken_groups == 0;
    const bool fits = static_cast<double>(split.train.size() + members.size()) <= target + 1e-9;
    if (taken_groups + 1 < groups.size() && (first || fits) && split.test.empty()) {
      split.train.insert(split.train.end(), members.begin(), members.end());
      ++taken_groups;
    } else {
      split.test.insert(split.test.end(), members.begin(), members.end());
    }
  }
  return split;
}

EvalResult run_size_split(const MethodConfig& config, const std::vector<ProblemInstance>& instances,
                          const AngleDatabase& db, double train_frac, int jobs) {
  MethodConfig cfg = config;
  cfg.features.include_count_features = false;
  const SizeSplit split = size_split(instances, train_frac);
  std::vector<ProblemInstance> train, test;
  for (auto i : split.train) train.push_back(instances[i]);
  for (auto i : split.test) test.push_back(instances[i]);
  EvalResult out;
  out.fold_of.assign(instances.size(), -1);
  for (auto i : split.test) out.fold_of[i] = 0;
  evaluate_split(cfg, train, test, db, 0, jobs, out);
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw ParameterError("median of an empty sample");
  const std::size_t n = values.size();
  std::sort(values.begin(), values.end());
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

MedianSummary summarize(const std::vector<double>& ratios, std::uint64_t seed, int resamples) {
  MedianSummary s;
  std::vector<double> finite;
  for (double r : ratios) {
    if (std::isinf(r) && r > 0) ++s.optimum_hits;
    else if (std::isfinite(r)) finite.push_back(r);
  }
  s.count = finite.size();
  if (finite.empty()) {
    s.median = s.ci_low = s.ci_high = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  s.median = median(finite);
  Rng rng(seed);
  std::vector<double> medians;
  medians.reserve(resamples);
  std::vector<double> draw(finite.size());
  for (int b = 0; b < resamples; ++b) {
    for (auto& d : draw) d = finite[rng.below(finite.size())];
    medians.push_back(median(draw));
  }
  std::sort(medians.begin(), medians.end());
  auto pct = [&](double q) {
    const double pos = q * static_cast<double>(medians.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, medians.size() - 1);
    return medians[lo] + (pos - static_cast<double>(lo)) * (medians[hi] - medians[lo]);
  };
  s.ci_low = pct(0.025);
  s.ci_high = pct(0.975);
  return s;
}

EcdfCurve ecdf(std::vector<double> samples, std::vector<double> grid, std::string method) {
  if (samples.empty()) throw ParameterError("ecdf: empty sample");
  EcdfCurve c;
  c.method = std::move(method);
  std::sort(samples.begin(), samples.end());
  const double count = static_cast<double>(samples.size());
  for (double t : grid) {
    double v = 0.0;
    if (t >= 0.0) {
      // Samples with r_i >= t.
      const auto first = std::lower_bound(samples.begin(), samples.end(), t);
      v = static_cast<double>(samples.end() - first) / count;
    }
    c.values.push_back(v);
  }
  c.sorted_sample = std::move(samples);
  c.grid = std::move(grid);
  return c;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  std::vector<double> g;
  if (points <= 0) return g;
  if (points == 1) return {lo};
  for (int i = 0; i < points; ++i) g.push_back(lo + (hi - lo) * i / (points - 1));
  return g;
}

}  // namespace qaoarec
