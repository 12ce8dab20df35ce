#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qaoarec/cli.hpp"
#include "qaoarec/errors.hpp"
#include "qaoarec/store.hpp"

using namespace qaoarec;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qaoarec-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qaoarec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t lines(const fs::path& p) {
  const std::string s = slurp(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_SUITE("store") {
  TEST_CASE("records round trip") {
    AngleRecord r;
    r.instance_id = "x";
    r.p = 2;
    r.angles = AngleVector(Eigen::Vector2d(0.1, 1.0 / 3.0), Eigen::Vector2d(M_PI, 1e-17));
    r.expectation = -4.123456789012345;
    r.c_opt = 5;
    r.n_restarts = 3;
    r.n_circuit_calls = 99;
    r.best_restart_calls = 7;
    const auto back = store::angle_record_from_json(store::json::parse(store::to_json(r).dump()));
    CHECK(back.angles == r.angles);
    CHECK(back.expectation == r.expectation);
    CHECK(back.n_circuit_calls == 99);

    Encoding e{"x", EncodingSource::ExternalEmbedding, Eigen::Vector3d(0.1, -2.0 / 7.0, 3e-300), {}};
    const auto eb = store::encoding_from_json(store::json::parse(store::to_json(e).dump()));
    CHECK(eb.vector == e.vector);
    CHECK(eb.source == e.source);

    IsingModel m(3);
    m.add_coupling(0, 2, 0.3);
    m.set_bias(1, -0.7);
    m.add_offset(1.0 / 3.0);
    CHECK(store::ising_from_json(store::json::parse(store::to_json(m).dump())) == m);
  }

  TEST_CASE("schema errors name the field") {
    auto j = store::to_json(generate_er_graph(4, 0.5, 0));
    j["schema_version"] = 2;
    try {
      store::instance_from_json(j);
      FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
      CHECK(std::string(e.what()).find("schema_version") != std::string::npos);
    }
    j["schema_version"] = 1;
    j.erase("n");
    try {
      store::instance_from_json(j);
      FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
      CHECK(std::string(e.what()).find("'n'") != std::string::npos);
    }
    Encoding bad{"x", EncodingSource::AngleValues, Eigen::Vector2d(1, 2), {}};
    auto bj = store::to_json(bad);
    bj["vector"] = {1.0, nullptr};
    CHECK_THROWS_AS(store::encoding_from_json(bj), SchemaError);
    CHECK_THROWS_AS(store::read_instances("/nonexistent/file.jsonl"), DomainError);
  }

  TEST_CASE("sample csv keeps infinite ratios") {
    const auto dir = scratch("csv");
    std::vector<RatioSample> s{{"a", "m", 1, 3, 0.25}, {"b", "m", 2, 3, std::numeric_limits<double>::infinity()}};
    store::write_samples_csv(dir / "s.csv", s);
    const auto back = store::read_samples_csv(dir / "s.csv");
    REQUIRE(back.size() == 2);
    CHECK(back[0].ratio == 0.25);
    CHECK(std::isinf(back[1].ratio));
    CHECK(back[1].depth == 2);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("exit codes") {
    const auto dir = scratch("cli-codes");
    const auto gen = run({"--seed", "0", "gen", "--paper-datasets", "--out", (dir / "inst.jsonl").string()});
    CHECK(gen.code == 0);
    CHECK(lines(dir / "inst.jsonl") == 300);
    CHECK(fs::exists(dir / "inst.jsonl.config.json"));

    std::ofstream(dir / "empty.csv").close();
    const auto empty = run({"report-ecdf", "--samples", (dir / "empty.csv").string(), "--out", (dir / "e.csv").string()});
    CHECK(empty.code == 1);
    CHECK(!empty.err.empty());

    CHECK(run({"gen", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"cluster", "--encodings", "x", "--k", "0", "--out", "y"}).code == 2);
    CHECK(run({"solve-exact", "--instances", (dir / "missing.jsonl").string(), "--out", (dir / "x").string()}).code == 1);

    std::ofstream(dir / "bad.jsonl") << R"({"schema_version":7,"id":"x"})" << '\n';
    const auto bad = run({"solve-exact", "--instances", (dir / "bad.jsonl").string(), "--out", (dir / "x").string()});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("schema_version") != std::string::npos);
  }

  TEST_CASE("pipeline reruns are byte identical") {
    const auto dir = scratch("cli-pipeline");
    const auto p = [&](const char* f) { return (dir / f).string(); };
    REQUIRE(run({"--seed", "2", "gen", "--family", "maxcut", "--nodes", "5,6", "--probs", "0.6", "--count", "3", "--out", p("d.jsonl")}).code == 0);
    REQUIRE(run({"solve-exact", "--instances", p("d.jsonl"), "--out", p("exact.jsonl")}).code == 0);
    const auto cached = run({"solve-exact", "--instances", p("d.jsonl"), "--out", p("exact.jsonl")});
    CHECK(cached.out.find("solved 0") != std::string::npos);
    REQUIRE(run({"build-db", "--instances", p("d.jsonl"), "--depths", "1,2", "--restarts", "2", "--exact", p("exact.jsonl"), "--out", p("db.jsonl")}).code == 0);
    const std::string db1 = slurp(p("db.jsonl"));
    const auto rerun = run({"build-db", "--instances", p("d.jsonl"), "--depths", "1,2", "--restarts", "2", "--exact", p("exact.jsonl"), "--out", p("db.jsonl")});
    CHECK(rerun.out.find("optimized 0 new") != std::string::npos);
    CHECK(slurp(p("db.jsonl")) == db1);
    CHECK(lines(p("db.jsonl")) == 12);

    for (int round = 0; round < 2; ++round) {
      const std::string suffix = std::to_string(round);
      REQUIRE(run({"--seed", "1", "eval-cv", "--instances", p("d.jsonl"), "--angle-db", p("db.jsonl"), "--method", "features", "--k", "2", "--depths", "1", "--folds", "3", "--out", p(("s" + suffix + ".csv").c_str())}).code == 0);
    }
    CHECK(slurp(p("s0.csv")) == slurp(p("s1.csv")));
    CHECK(lines(p("s0.csv")) == 7);
    CHECK(run({"report-ecdf", "--samples", p("s0.csv"), "--out", p("e.csv")}).code == 0);

    REQUIRE(run({"encode", "features", "--instances", p("d.jsonl"), "--out", p("f.jsonl")}).code == 0);
    REQUIRE(run({"cluster", "--encodings", p("f.jsonl"), "--k", "2", "--standardize", "--depth", "1", "--out", p("cm.json")}).code == 0);
    REQUIRE(run({"recommend", "--cluster-model", p("cm.json"), "--angle-db", p("db.jsonl"), "--test", p("d.jsonl"), "--out", p("rec.jsonl"), "--rec-out", p("rs.jsonl")}).code == 0);
    CHECK(lines(p("rec.jsonl")) == 6);
    REQUIRE(run({"rqaoa", "--instances", p("d.jsonl"), "--rec-sets", p("rs.jsonl"), "--exact", p("exact.jsonl"), "--out", p("rq.jsonl")}).code == 0);
    CHECK(lines(p("rq.jsonl")) == 6);
  }

  TEST_CASE("embedding import checks ids") {
    const auto dir = scratch("cli-embed");
    const auto p = [&](const char* f) { return (dir / f).string(); };
    REQUIRE(run({"gen", "--family", "maxcut", "--nodes", "5", "--probs", "0.5", "--count", "2", "--out", p("d.jsonl")}).code == 0);
    const auto insts = store::read_instances(p("d.jsonl"));
    std::vector<Encoding> embs{{insts[0].id, EncodingSource::ExternalEmbedding, Eigen::Vector2d(1, 2), {}}};
    store::write_encodings(p("e.jsonl"), embs);
    const auto missing = run({"encode", "import-embeddings", "--embeddings", p("e.jsonl"), "--instances", p("d.jsonl"), "--out", p("o.jsonl")});
    CHECK(missing.code == 1);
    CHECK(missing.err.find(insts[1].id) != std::string::npos);
    embs.push_back({insts[1].id, EncodingSource::ExternalEmbedding, Eigen::Vector2d(3, 4), {}});
    store::write_encodings(p("e.jsonl"), embs);
    CHECK(run({"encode", "import-embeddings", "--embeddings", p("e.jsonl"), "--instances", p("d.jsonl"), "--out", p("o.jsonl")}).code == 0);
    const auto back = store::read_encodings(p("o.jsonl"));
    CHECK(back[1].vector == embs[1].vector);
  }
}
