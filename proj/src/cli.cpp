#include "qaoarec/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qaoarec/angle_opt.hpp"
#include "qaoarec/clustering.hpp"
#include "qaoarec/errors.hpp"
#include "qaoarec/evalharness.hpp"
#include "qaoarec/features.hpp"
#include "qaoarec/instances.hpp"
#include "qaoarec/ising.hpp"
#include "qaoarec/parallel.hpp"
#include "qaoarec/qaoa_sim.hpp"
#include "qaoarec/recommend.hpp"
#include "qaoarec/rqaoa.hpp"
#include "qaoarec/store.hpp"

namespace qaoarec::cli {
namespace {

namespace fs = std::filesystem;
using store::json;

struct UsageError : Error {
  using Error::Error;
};

struct Globals {
  std::uint64_t seed = 0;
  int jobs = 1;
  bool verbose = false;
};

struct Context {
  Globals g;
  std::ostream& out;
  std::ostream& err;

  void log(const std::string& msg) const {
    if (g.verbose) err << msg << '\n';
  }
};

fs::path cache_dir() {
  const char* dir = std::getenv("QAOAREC_CACHE_DIR");
  return dir && *dir ? fs::path(dir) : fs::path();
}

// Explicit path, else <cache>/<name>, else empty.
fs::path cached_path(const std::string& given, const std::string& name) {
  if (!given.empty()) return given;
  const fs::path dir = cache_dir();
  return dir.empty() ? fs::path() : dir / name;
}

void write_config(const fs::path& out, const std::string& command, const Globals& g, json params) {
  params["schema_version"] = store::kSchemaVersion;
  params["command"] = command;
  params["seed"] = g.seed;
  store::write_json(fs::path(out.string() + ".config.json"), params);
}

std::map<std::string, ExactSolution> load_exact_if_present(const fs::path& path) {
  if (path.empty() || !fs::exists(path)) return {};
  return store::read_exact(path);
}

const ProblemInstance& find_instance(const std::vector<ProblemInstance>& instances, const std::string& id) {
  for (const auto& inst : instances)
    if (inst.id == id) return inst;
  throw DomainError("instance '" + id + "' not found");
}

// ---------------------------------------------------------------------------

struct GenArgs {
  bool paper = false;
  std::string family = "maxcut";
  std::vector<int> nodes{10};
  std::vector<double> probs{0.5};
  int count = 1;
  std::string out;
};

int run_gen(const Context& ctx, const GenArgs& a) {
  std::vector<ProblemInstance> instances;
  if (a.paper) {
    instances = generate_paper_datasets(ctx.g.seed);
  } else if (a.family == "maxcut") {
    instances = generate_maxcut_dataset(a.nodes, a.probs, a.count, ctx.g.seed);
  } else {
    for (int n : a.nodes)
      for (int i = 0; i < a.count; ++i) instances.push_back(generate_dense_qubo(n, ctx.g.seed, i));
  }
  store::write_instances(a.out, instances);
  write_config(a.out, "gen", ctx.g,
               {{"paper_datasets", a.paper}, {"family", a.family}, {"nodes", a.nodes}, {"probs", a.probs},
                {"count", a.count}});
  ctx.out << "wrote " << instances.size() << " instances to " << a.out << '\n';
  return 0;
}

struct SolveArgs {
  std::string instances;
  std::string out;
  int cap = kDefaultBruteForceCap;
};

int run_solve(const Context& ctx, const SolveArgs& a) {
  const fs::path out = cached_path(a.out, "exact.jsonl");
  if (out.empty()) throw UsageError("solve-exact: --out is required when QAOAREC_CACHE_DIR is unset");
  const auto instances = store::read_instances(a.instances);
  auto exact = load_exact_if_present(out);
  int solved = 0;
  for (const auto& inst : instances) {
    if (exact.count(inst.id)) continue;
    ctx.log("solving " + inst.id);
    exact[inst.id] = brute_force_solve(to_ising(inst), native_objective(inst), a.cap);
    ++solved;
  }
  store::write_exact(out, exact);
  write_config(out, "solve-exact", ctx.g, {{"instances", a.instances}, {"cap", a.cap}});
  ctx.out << "solved " << solved << " instances (" << instances.size() - solved << " cached)\n";
  return 0;
}

struct BuildArgs {
  std::string instances;
  std::vector<int> depths{1};
  int restarts = 1000;
  std::string out;
  std::string exact;
};

int run_build(const Context& ctx, const BuildArgs& a) {
  const auto instances = store::read_instances(a.instances);
  const fs::path out = a.out;
  const std::vector<AngleRecord> existing = fs::exists(out) ? store::read_angle_db(out) : std::vector<AngleRecord>{};
  const fs::path exact_path = cached_path(a.exact, "exact.jsonl");
  auto exact = load_exact_if_present(exact_path);

  BuildOptions opts;
  opts.n_restarts = a.restarts;
  opts.seed = ctx.g.seed;
  opts.jobs = ctx.g.jobs;
  const auto build = build_database(instances, a.depths, opts, existing, exact, [&](const AngleRecord& r) {
    store::append_jsonl(out, store::to_json(r));
    ctx.log("optimized " + r.instance_id + " p=" + std::to_string(r.p));
  });
  // Rewrite in canonical order so reruns produce identical files.
  store::write_angle_db(out, build.records);
  if (!exact_path.empty()) store::write_exact(exact_path, exact);
  write_config(out, "build-db", ctx.g,
               {{"instances", a.instances}, {"depths", a.depths}, {"restarts", a.restarts}});
  for (const auto& e : build.errors) ctx.err << "error: " << e.instance_id << ": " << e.message << '\n';
  ctx.out << "optimized " << build.new_optimizations << " new (instance, depth) pairs; " << build.records.size()
          << " records total\n";
  return build.errors.empty() ? 0 : 1;
}

struct EncodeArgs {
  std::string instances;
  std::string embeddings;
  std::string angle_db;
  int depth = 1;
  bool no_counts = false;
  std::string out;
};

int run_encode_features(const Context& ctx, const EncodeArgs& a) {
  const auto instances = store::read_instances(a.instances);
  FeatureOptions fo;
  fo.include_count_features = !a.no_counts;
  std::vector<Encoding> encs;
  for (const auto& inst : instances) {
    try {
      encs.push_back(instance_features(inst, fo));
    } catch (const FeatureError& e) {
      ctx.err << "warning: " << inst.id << ": " << e.what() << '\n';
    }
  }
  store::write_encodings(a.out, encs);
  write_config(a.out, "encode features", ctx.g, {{"instances", a.instances}, {"count_features", !a.no_counts}});
  ctx.out << "wrote " << encs.size() << " encodings\n";
  return 0;
}

int run_encode_import(const Context& ctx, const EncodeArgs& a) {
  auto encs = store::read_encodings(a.embeddings);
  std::set<std::string> wanted;
  if (!a.instances.empty())
    for (const auto& inst : store::read_instances(a.instances)) wanted.insert(inst.id);
  std::set<std::string> seen;
  for (auto& e : encs) {
    e.source = EncodingSource::ExternalEmbedding;
    if (!seen.insert(e.instance_id).second) throw SchemaError("duplicate embedding for '" + e.instance_id + "'");
    if (!wanted.empty() && !wanted.count(e.instance_id))
      throw SchemaError("embedding for unknown instance '" + e.instance_id + "'");
  }
  std::vector<std::string> missing;
  for (const auto& id : wanted)
    if (!seen.count(id)) missing.push_back(id);
  if (!missing.empty()) {
    std::string msg = "embeddings missing for " + std::to_string(missing.size()) + " instances:";
    for (const auto& id : missing) msg += " " + id;
    throw SchemaError(msg);
  }
  try {
    check_homogeneous(encs);
  } catch (const ParameterError& e) {
    throw SchemaError(std::string("embeddings: ") + e.what());
  }
  store::write_encodings(a.out, encs);
  write_config(a.out, "encode import-embeddings", ctx.g, {{"embeddings", a.embeddings}, {"instances", a.instances}});
  ctx.out << "imported " << encs.size() << " embeddings\n";
  return 0;
}

int run_encode_angles(const Context& ctx, const EncodeArgs& a) {
  const AngleDatabase db(store::read_angle_db(a.angle_db));
  std::vector<Encoding> encs;
  for (const AngleRecord* r : db.at_depth(a.depth)) encs.push_back(angle_encoding(*r));
  store::write_encodings(a.out, encs);
  write_config(a.out, "encode angles", ctx.g, {{"angle_db", a.angle_db}, {"depth", a.depth}});
  ctx.out << "wrote " << encs.size() << " encodings\n";
  return 0;
}

struct ClusterArgs {
  std::string encodings;
  int k = 3;
  std::string rule = "closest";
  bool standardize = false;
  int depth = 1;
  std::string out;
};

int run_cluster(const Context& ctx, const ClusterArgs& a) {
  auto encs = store::read_encodings(a.encodings);
  std::optional<Scaler> scaler;
  if (a.standardize) {
    auto [scaled, s] = standardize(encs);
    encs = std::move(scaled);
    scaler = std::move(s);
  }
  ClusterModel model = kmeans_fit(encs, a.k, ctx.g.seed);
  model.representative_rule = representative_rule_from_string(a.rule);
  model.depth = a.depth;
  model.scaler = std::move(scaler);
  store::write_json(a.out, store::to_json(model));
  write_config(a.out, "cluster", ctx.g,
               {{"encodings", a.encodings}, {"k", a.k}, {"rule", a.rule}, {"standardize", a.standardize},
                {"depth", a.depth}});
  ctx.out << "k=" << model.k << " inertia=" << format_double(model.inertia) << '\n';
  return 0;
}

struct RecommendArgs {
  std::string model;
  std::string angle_db;
  std::string test;
  int depth = 0;
  std::string out;
  std::string rec_out;
};

int run_recommend(const Context& ctx, const RecommendArgs& a) {
  const ClusterModel model = store::cluster_model_from_json(store::read_json(a.model));
  const AngleDatabase db(store::read_angle_db(a.angle_db));
  const int depth = a.depth > 0 ? a.depth : model.depth;
  const RecommendationSet recs = make_recommendations(model, db, depth, a.model);
  if (!a.rec_out.empty()) store::write_jsonl(a.rec_out, {store::to_json(recs)});
  if (!a.test.empty()) {
    if (a.out.empty()) throw UsageError("recommend: --out is required with --test");
    const auto test = store::read_instances(a.test);
    const auto outcomes = recommend_and_evaluate(recs, test, ctx.g.jobs);
    std::vector<json> rows;
    for (const auto& o : outcomes) rows.push_back(store::to_json(o));
    store::write_jsonl(a.out, rows);
    write_config(a.out, "recommend", ctx.g,
                 {{"cluster_model", a.model}, {"angle_db", a.angle_db}, {"test", a.test}, {"depth", depth}});
    ctx.out << "evaluated " << outcomes.size() << " instances with " << recs.k() << " circuits each\n";
  } else {
    ctx.out << "produced " << recs.k() << " recommendations at depth " << depth << '\n';
  }
  return 0;
}

struct EvalArgs {
  std::string instances;
  std::string angle_db;
  std::string method = "angles";
  std::string embeddings;
  std::vector<int> ks{3};
  std::vector<int> depths{1};
  std::string rule = "closest";
  int folds = 5;
  bool random_folds = false;
  double train_frac = 0.6;
  std::string out;
  std::string summary;
};

int run_eval(const Context& ctx, const EvalArgs& a, bool size_split_mode) {
  const auto instances = store::read_instances(a.instances);
  const AngleDatabase db(store::read_angle_db(a.angle_db));
  MethodConfig config;
  config.kind = method_kind_from_string(a.method);
  config.rule = representative_rule_from_string(a.rule);
  config.depths = a.depths;
  config.ks = a.ks;
  config.seed = ctx.g.seed;
  std::map<std::string, Encoding> embeddings;
  if (config.kind == MethodKind::ExternalEmbedding) {
    if (a.embeddings.empty()) throw UsageError("--embeddings is required for --method embeddings");
    for (auto& e : store::read_encodings(a.embeddings)) embeddings[e.instance_id] = std::move(e);
    config.embeddings = &embeddings;
  }
  const EvalResult result = size_split_mode
                                ? run_size_split(config, instances, db, a.train_frac, ctx.g.jobs)
                                : run_cv(config, instances, db, a.folds, ctx.g.seed, !a.random_folds, ctx.g.jobs);
  for (const auto& w : result.warnings) ctx.err << "warning: " << w << '\n';
  store::write_samples_csv(a.out, result.samples);

  json summary = json::array();
  for (int depth : a.depths) {
    for (int k : a.ks) {
      std::vector<double> ratios;
      for (const auto& s : result.samples)
        if (s.depth == depth && s.k == k) ratios.push_back(s.ratio);
      if (ratios.empty()) continue;
      const MedianSummary ms = summarize(ratios, derive_seed(ctx.g.seed, {static_cast<std::uint64_t>(depth),
                                                                         static_cast<std::uint64_t>(k)}));
      json row = store::to_json(ms);
      row["method"] = config.label();
      row["depth"] = depth;
      row["k"] = k;
      summary.push_back(row);
      ctx.out << config.label() << " p=" << depth << " k=" << k << " median=" << format_double(ms.median) << " ["
              << format_double(ms.ci_low) << ", " << format_double(ms.ci_high) << "] n=" << ms.count
              << " hits=" << ms.optimum_hits << '\n';
    }
  }
  if (!a.summary.empty())
    store::write_json(a.summary, {{"schema_version", store::kSchemaVersion}, {"summaries", summary}});
  json params = {{"instances", a.instances}, {"angle_db", a.angle_db}, {"method", a.method},
                 {"ks", a.ks},               {"depths", a.depths},     {"rule", a.rule}};
  if (size_split_mode) params["train_frac"] = a.train_frac;
  else {
    params["folds"] = a.folds;
    params["stratified"] = !a.random_folds;
  }
  write_config(a.out, size_split_mode ? "eval-size-split" : "eval-cv", ctx.g, params);
  return 0;
}

struct RqaoaArgs {
  std::string instances;
  std::vector<std::string> rec_sets;
  int depth = 0;
  std::string baseline = "none";
  int budget = 3;
  int iterations = -1;
  std::string exact;
  std::string out;
};

int run_rqaoa_cmd(const Context& ctx, const RqaoaArgs& a) {
  const auto instances = store::read_instances(a.instances);
  const auto exact = load_exact_if_present(cached_path(a.exact, "exact.jsonl"));
  const RqaoaMode mode = rqaoa_mode_from_string(a.baseline);
  std::vector<RecommendationSet> sources;
  if (mode == RqaoaMode::Recommendations) {
    if (a.rec_sets.empty()) throw UsageError("rqaoa: --rec-sets is required without --baseline");
    for (const auto& f : a.rec_sets)
      for (auto& r : store::read_recommendation_sets(f))
        if (a.depth <= 0 || r.depth == a.depth) sources.push_back(std::move(r));
    if (sources.empty()) throw DomainError("rqaoa: no recommendation sets match the requested depth");
  } else if (a.depth <= 0) {
    throw UsageError("rqaoa: --depth is required for baselines");
  }

  RqaoaOptions opts;
  opts.seed = ctx.g.seed;
  opts.budget = a.budget;
  opts.iterations = a.iterations;
  std::vector<RqaoaTrace> traces(instances.size());
  parallel_for(instances.size(), ctx.g.jobs, [&](std::size_t i) {
    const auto& inst = instances[i];
    const auto it = exact.find(inst.id);
    const double c_opt = it != exact.end() ? it->second.c_opt : 0.0;
    RqaoaOptions o = opts;
    o.seed = derive_seed(opts.seed, {stable_hash(inst.id)});
    if (mode == RqaoaMode::Recommendations) {
      const PooledRqaoa pooled = run_rqaoa_pooled(inst, sources, o, c_opt);
      traces[i] = pooled.traces[pooled.best];
    } else {
      traces[i] = run_rqaoa_baseline(inst, a.depth, mode, o, c_opt);
    }
  });
  std::vector<json> rows;
  std::vector<double> ratios;
  for (const auto& t : traces) {
    rows.push_back(store::to_json(t));
    if (t.approximation_ratio != 0.0) ratios.push_back(t.approximation_ratio);
  }
  store::write_jsonl(a.out, rows);
  write_config(a.out, "rqaoa", ctx.g,
               {{"instances", a.instances}, {"rec_sets", a.rec_sets}, {"depth", a.depth}, {"baseline", a.baseline},
                {"budget", a.budget}, {"iterations", a.iterations}});
  if (!ratios.empty()) ctx.out << "median approximation ratio " << format_double(median(ratios)) << '\n';
  return 0;
}

struct EcdfArgs {
  std::string samples;
  double lo = 0.0;
  double hi = 1.0;
  int points = 101;
  std::string out;
};

int run_report_ecdf(const Context& ctx, const EcdfArgs& a) {
  const auto samples = store::read_samples_csv(a.samples);
  if (samples.empty()) {
    ctx.err << "error: no samples in " << a.samples << '\n';
    return 1;
  }
  std::map<std::string, std::vector<double>> by_method;
  for (const auto& s : samples) {
    const std::string key = s.method + " p=" + std::to_string(s.depth) + " k=" + std::to_string(s.k);
    by_method[key].push_back(s.ratio);
  }
  const auto grid = linear_grid(a.lo, a.hi, a.points);
  std::ofstream csv;
  if (fs::path(a.out).has_parent_path()) fs::create_directories(fs::path(a.out).parent_path());
  csv.open(a.out);
  if (!csv) throw DomainError("cannot open '" + a.out + "' for writing");
  csv << "schema_version,series,t,F\n";
  for (const auto& [key, values] : by_method) {
    const EcdfCurve c = ecdf(values, grid, key);
    for (std::size_t i = 0; i < c.grid.size(); ++i)
      csv << store::kSchemaVersion << ',' << key << ',' << format_double(c.grid[i]) << ','
          << format_double(c.values[i]) << '\n';
  }
  write_config(a.out, "report-ecdf", ctx.g,
               {{"samples", a.samples}, {"lo", a.lo}, {"hi", a.hi}, {"points", a.points}});
  ctx.out << "wrote " << by_method.size() << " curves\n";
  return 0;
}

struct SimulateArgs {
  std::string instances;
  std::string id;
  std::vector<double> gamma;
  std::vector<double> beta;
  std::string out;
};

int run_simulate(const Context& ctx, const SimulateArgs& a) {
  const auto instances = store::read_instances(a.instances);
  const ProblemInstance& inst = a.id.empty() ? instances.at(0) : find_instance(instances, a.id);
  if (a.gamma.size() != a.beta.size() || a.gamma.empty())
    throw UsageError("simulate: --gamma and --beta need the same nonzero length");
  const AngleVector angles(Eigen::Map<const Eigen::VectorXd>(a.gamma.data(), a.gamma.size()),
                           Eigen::Map<const Eigen::VectorXd>(a.beta.data(), a.beta.size()));
  const QaoaSimulator sim(to_ising(inst));
  const QaoaState state = sim.evolve(angles);
  const Eigen::VectorXd probs = state.probabilities();
  std::ofstream csv(a.out);
  if (!csv) throw DomainError("cannot open '" + a.out + "' for writing");
  csv << "schema_version,index,probability,energy\n";
  for (Eigen::Index x = 0; x < probs.size(); ++x)
    csv << store::kSchemaVersion << ',' << x << ',' << format_double(probs(x)) << ','
        << format_double(sim.diagonal()(x) + sim.offset()) << '\n';
  ctx.out << "expectation " << format_double(sim.expectation(state)) << '\n';
  return 0;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"QAOA angle recommendation toolkit", "qaoarec"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Master seed for all randomness")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_flag("--verbose", g.verbose, "Log progress to stderr");
  app.fallthrough();

  std::function<int(const Context&)> action;

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Generate problem instances");
  c_gen->add_flag("--paper-datasets", gen.paper, "200 MaxCut graphs and 100 dense QUBOs");
  c_gen->add_option("--family", gen.family)->check(CLI::IsMember({"maxcut", "qubo"}));
  c_gen->add_option("--nodes", gen.nodes)->delimiter(',');
  c_gen->add_option("--probs", gen.probs)->delimiter(',');
  c_gen->add_option("--count", gen.count, "Instances per (n, p) cell")->check(CLI::PositiveNumber);
  c_gen->add_option("--out", gen.out)->required();
  c_gen->callback([&] { action = [&](const Context& c) { return run_gen(c, gen); }; });

  SolveArgs solve;
  auto* c_solve = app.add_subcommand("solve-exact", "Brute-force optimal values");
  c_solve->add_option("--instances", solve.instances)->required();
  c_solve->add_option("--out", solve.out);
  c_solve->add_option("--max-n", solve.cap);
  c_solve->callback([&] { action = [&](const Context& c) { return run_solve(c, solve); }; });

  BuildArgs build;
  auto* c_build = app.add_subcommand("build-db", "Multi-restart angle optimization");
  c_build->add_option("--instances", build.instances)->required();
  c_build->add_option("--depths", build.depths)->delimiter(',');
  c_build->add_option("--restarts", build.restarts)->check(CLI::PositiveNumber);
  c_build->add_option("--out", build.out)->required();
  c_build->add_option("--exact", build.exact);
  c_build->callback([&] { action = [&](const Context& c) { return run_build(c, build); }; });

  EncodeArgs enc;
  auto* c_enc = app.add_subcommand("encode", "Produce encodings");
  c_enc->require_subcommand(1);
  auto* c_feat = c_enc->add_subcommand("features", "Spectral instance features");
  c_feat->add_option("--instances", enc.instances)->required();
  c_feat->add_flag("--no-count-features", enc.no_counts);
  c_feat->add_option("--out", enc.out)->required();
  c_feat->callback([&] { action = [&](const Context& c) { return run_encode_features(c, enc); }; });
  auto* c_imp = c_enc->add_subcommand("import-embeddings", "Validate external embeddings");
  c_imp->add_option("--embeddings", enc.embeddings)->required();
  c_imp->add_option("--instances", enc.instances);
  c_imp->add_option("--out", enc.out)->required();
  c_imp->callback([&] { action = [&](const Context& c) { return run_encode_import(c, enc); }; });
  auto* c_ang = c_enc->add_subcommand("angles", "Optimized angles as encodings");
  c_ang->add_option("--angle-db", enc.angle_db)->required();
  c_ang->add_option("--depth", enc.depth)->check(CLI::PositiveNumber);
  c_ang->add_option("--out", enc.out)->required();
  c_ang->callback([&] { action = [&](const Context& c) { return run_encode_angles(c, enc); }; });

  ClusterArgs cl;
  auto* c_cl = app.add_subcommand("cluster", "K-means on encodings");
  c_cl->add_option("--encodings", cl.encodings)->required();
  c_cl->add_option("--k", cl.k)->check(CLI::PositiveNumber);
  c_cl->add_option("--rule", cl.rule)->check(CLI::IsMember({"closest", "centroid"}));
  c_cl->add_flag("--standardize", cl.standardize);
  c_cl->add_option("--depth", cl.depth)->check(CLI::PositiveNumber);
  c_cl->add_option("--out", cl.out)->required();
  c_cl->callback([&] { action = [&](const Context& c) { return run_cluster(c, cl); }; });

  RecommendArgs rec;
  auto* c_rec = app.add_subcommand("recommend", "Recommend and evaluate angles");
  c_rec->add_option("--cluster-model", rec.model)->required();
  c_rec->add_option("--angle-db", rec.angle_db)->required();
  c_rec->add_option("--test", rec.test);
  c_rec->add_option("--depth", rec.depth);
  c_rec->add_option("--out", rec.out);
  c_rec->add_option("--rec-out", rec.rec_out);
  c_rec->callback([&] { action = [&](const Context& c) { return run_recommend(c, rec); }; });

  EvalArgs ev;
  auto add_eval = [&](CLI::App* sub) {
    sub->add_option("--instances", ev.instances)->required();
    sub->add_option("--angle-db", ev.angle_db)->required();
    sub->add_option("--method", ev.method)
        ->check(CLI::IsMember({"angles", "features", "embeddings", "mean", "median"}));
    sub->add_option("--embeddings", ev.embeddings);
    sub->add_option("--k", ev.ks)->delimiter(',');
    sub->add_option("--depths", ev.depths)->delimiter(',');
    sub->add_option("--rule", ev.rule)->check(CLI::IsMember({"closest", "centroid"}));
    sub->add_option("--out", ev.out)->required();
    sub->add_option("--summary", ev.summary);
  };
  auto* c_cv = app.add_subcommand("eval-cv", "K-fold cross-validation");
  add_eval(c_cv);
  c_cv->add_option("--folds", ev.folds)->check(CLI::Range(2, 1000));
  c_cv->add_flag("--random-folds", ev.random_folds, "Disable stratification by node count");
  c_cv->callback([&] { action = [&](const Context& c) { return run_eval(c, ev, false); }; });
  auto* c_ss = app.add_subcommand("eval-size-split", "Train on small, test on large instances");
  add_eval(c_ss);
  c_ss->add_option("--train-frac", ev.train_frac)->check(CLI::Range(0.0, 1.0));
  c_ss->callback([&] { action = [&](const Context& c) { return run_eval(c, ev, true); }; });

  RqaoaArgs rq;
  auto* c_rq = app.add_subcommand("rqaoa", "Recursive QAOA");
  c_rq->add_option("--instances", rq.instances)->required();
  c_rq->add_option("--rec-sets", rq.rec_sets)->delimiter(',');
  c_rq->add_option("--depth", rq.depth);
  c_rq->add_option("--baseline", rq.baseline)->check(CLI::IsMember({"none", "random", "bfgs"}));
  c_rq->add_option("--budget", rq.budget)->check(CLI::PositiveNumber);
  c_rq->add_option("--iterations", rq.iterations);
  c_rq->add_option("--exact", rq.exact);
  c_rq->add_option("--out", rq.out)->required();
  c_rq->callback([&] { action = [&](const Context& c) { return run_rqaoa_cmd(c, rq); }; });

  EcdfArgs ec;
  auto* c_ec = app.add_subcommand("report-ecdf", "ECDF curves from ratio samples");
  c_ec->add_option("--samples", ec.samples)->required();
  c_ec->add_option("--grid-lo", ec.lo);
  c_ec->add_option("--grid-hi", ec.hi);
  c_ec->add_option("--grid-points", ec.points)->check(CLI::Range(2, 1000000));
  c_ec->add_option("--out", ec.out)->required();
  c_ec->callback([&] { action = [&](const Context& c) { return run_report_ecdf(c, ec); }; });

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Dump the QAOA output distribution");
  c_sim->add_option("--instances", sim.instances)->required();
  c_sim->add_option("--id", sim.id);
  c_sim->add_option("--gamma", sim.gamma)->delimiter(',')->required();
  c_sim->add_option("--beta", sim.beta)->delimiter(',')->required();
  c_sim->add_option("--out", sim.out)->required();
  c_sim->callback([&] { action = [&](const Context& c) { return run_simulate(c, sim); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const Context ctx{g, out, err};
  try {
    return action ? action(ctx) : 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qaoarec::cli
