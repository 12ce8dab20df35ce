#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "qaoarec/angle_opt.hpp"
#include "qaoarec/clustering.hpp"
#include "qaoarec/evalharness.hpp"
#include "qaoarec/features.hpp"
#include "qaoarec/instances.hpp"
#include "qaoarec/recommend.hpp"
#include "qaoarec/rqaoa.hpp"

namespace qaoarec::store {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Record <-> JSON. Every object carries "schema_version"; readers reject
// other versions and name missing or mistyped fields.
json to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const json& j);

json to_json(const std::string& instance_id, const ExactSolution& sol);
std::pair<std::string, ExactSolution> exact_from_json(const json& j);

json to_json(const AngleRecord& rec);
AngleRecord angle_record_from_json(const json& j);

json to_json(const Encoding& enc);
Encoding encoding_from_json(const json& j);

json to_json(const ClusterModel& model);
ClusterModel cluster_model_from_json(const json& j);

json to_json(const RecommendationSet& recs);
RecommendationSet recommendation_set_from_json(const json& j);

json to_json(const RecommendationOutcome& o);
RecommendationOutcome outcome_from_json(const json& j);

json to_json(const RqaoaTrace& t);
json to_json(const IsingModel& m);
IsingModel ising_from_json(const json& j);

json to_json(const AngleVector& a);
AngleVector angles_from_json(const json& j);

json to_json(const MedianSummary& s);
json to_json(const EcdfCurve& c);

// Raw line I/O. read_jsonl skips blank lines and reports the line number of
// malformed JSON.
std::vector<json> read_jsonl(const std::filesystem::path& path);
void write_jsonl(const std::filesystem::path& path, const std::vector<json>& rows);
void append_jsonl(const std::filesystem::path& path, const json& row);
json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& value);

std::vector<ProblemInstance> read_instances(const std::filesystem::path& path);
void write_instances(const std::filesystem::path& path, const std::vector<ProblemInstance>& instances);

std::map<std::string, ExactSolution> read_exact(const std::filesystem::path& path);
void write_exact(const std::filesystem::path& path, const std::map<std::string, ExactSolution>& exact);

std::vector<AngleRecord> read_angle_db(const std::filesystem::path& path);
void write_angle_db(const std::filesystem::path& path, const std::vector<AngleRecord>& records);

std::vector<Encoding> read_encodings(const std::filesystem::path& path);
void write_encodings(const std::filesystem::path& path, const std::vector<Encoding>& encodings);

std::vector<RecommendationSet> read_recommendation_sets(const std::filesystem::path& path);

// CSV of RatioSample rows with a schema_version column. Infinite ratios are
// written as "inf".
void write_samples_csv(const std::filesystem::path& path, const std::vector<RatioSample>& samples);
std::vector<RatioSample> read_samples_csv(const std::filesystem::path& path);

}  // namespace qaoarec::store
