#include <sstream>

#include "doctest.h"
#include "listings.hpp"
#include "polycomp/errors.hpp"
#include "polycomp/experiment.hpp"
#include "polycomp/io.hpp"
#include "support.hpp"

using namespace polycomp;
using support::bs;

namespace {

std::string run_to_text(const ExperimentConfig& cfg, ExperimentSummary* summary = nullptr) {
  std::ostringstream out;
  const auto hash = config_hash(cfg);
  const auto s = run_experiment(cfg, [&](const TrialRecord& rec) { out << record_to_json(rec, hash).dump() << '\n'; });
  if (summary) *summary = s;
  return out.str();
}

}  // namespace

TEST_CASE("readout JSON is canonical") {
  CHECK(emit_readout(full_readout(bs("01"))) == R"({"n":2,"classes":{"1":[[1,0],[0,1]],"2":[[1,1]]}})");
  const auto r = full_readout(bs("001010111"));
  CHECK(parse_readout(emit_readout(r)) == r);
  CHECK(emit_readout(full_readout(bs("0110"))) == emit_readout(full_readout(bs("0110").reversed())));
}

TEST_CASE("readout parsing keeps size anomalies as data") {
  auto j = readout_to_json(full_readout(bs("001010111")));
  j["classes"]["7"].push_back(Json::array({1, 6}));
  const auto r = readout_from_json(j);
  CHECK(r.oversized_classes() == std::vector<int>{7});
  CHECK(support::as_multiset(r.at(7)) == support::parse_list(listings::kC7Inserted));

  j["classes"].erase("3");
  CHECK(readout_from_json(j).missing_classes() == std::vector<int>{3});
}

TEST_CASE("malformed readouts") {
  CHECK_THROWS_AS(parse_readout("{"), ParseError);
  CHECK_THROWS_AS(parse_readout(R"({"classes":{}})"), ParseError);
  CHECK_THROWS_AS(parse_readout(R"({"n":2,"classes":{"1":[[1,1]]}})"), ParseError);
  CHECK_THROWS_AS(parse_readout(R"({"n":2,"classes":{"1":[[-1,2]]}})"), ParseError);
  CHECK_THROWS_AS(parse_readout(R"({"n":2,"classes":{"3":[[1,2]]}})"), ParseError);
  CHECK_THROWS_AS(parse_readout(R"({"n":2,"classes":{"x":[]}})"), ParseError);
  CHECK_THROWS_AS(parse_readout(R"({"n":2,"classes":{"1":[[1]]}})"), ParseError);
  CHECK_THROWS_AS(parse_readout(R"({"n":0,"classes":{}})"), ParseError);
  CHECK_THROWS_AS(parse_readout(R"({"n":2,"classes":[]})"), ParseError);
}

TEST_CASE("spec JSON and arguments") {
  const auto spec = CodebookSpec::make(Family::SDS2, 12, 1, 3);
  CHECK(spec_to_json(spec).dump() == R"({"family":"SDS2","n":12,"t":1,"a":3})");
  CHECK(spec_from_json(spec_to_json(spec)) == spec);
  CHECK(parse_spec_arg("SDS2,12,1,3") == spec);
  CHECK(parse_spec_arg("SDA,12,2") == CodebookSpec::make(Family::SDA, 12, 2));
  CHECK(parse_spec_arg("SDSprime,12").t == 2);
  CHECK_THROWS_AS(parse_spec_arg("SR"), SpecError);
  CHECK_THROWS_AS(parse_spec_arg("SR,x"), SpecError);
  CHECK_THROWS_AS(parse_spec_arg("SR,8,1,0,0"), SpecError);
  CHECK_THROWS_AS(spec_from_json(parse_json(R"({"family":"SR"})")), ParseError);
}

TEST_CASE("error spec JSON") {
  ErrorSpec del;
  del.model = ErrorModel::SymPairDelete;
  del.pairs = {2, 5};
  CHECK(error_spec_to_json(del).dump() == R"({"model":"sym_pair_delete","targets":[2,5]})");
  CHECK(error_spec_from_json(error_spec_to_json(del)) == del);

  ErrorSpec sk;
  sk.model = ErrorModel::Skew;
  sk.skews = {Skew{7, {2, 5}, {3, 4}}};
  CHECK(error_spec_to_json(sk).dump() == R"({"model":"skew","targets":[{"k":7,"from":[2,5],"to":[3,4]}]})");
  CHECK(error_spec_from_json(error_spec_to_json(sk)) == sk);

  ErrorSpec ins;
  ins.model = ErrorModel::Insert;
  ins.insertions = {Insertion{7, {1, 6}}};
  CHECK(error_spec_from_json(error_spec_to_json(ins)) == ins);

  ErrorSpec drawn;
  drawn.model = ErrorModel::AsymDelete;
  drawn.random = RandomDraw{2, 9, 1};
  CHECK(error_spec_to_json(drawn).dump() == R"({"model":"asym_delete","count":2,"seed":9})");
  CHECK(error_spec_from_json(error_spec_to_json(drawn)) == drawn);

  CHECK_THROWS_AS(error_spec_from_json(parse_json(R"({"model":"nope","targets":[]})")), InvalidErrorSpec);
  CHECK_THROWS_AS(error_spec_from_json(parse_json(R"({"model":"skew","targets":[{"k":7}]})")), ParseError);
  CHECK_THROWS_AS(error_spec_from_json(parse_json(R"({"model":"asym","count":1,"seed":-1})")), ParseError);
}

TEST_CASE("report JSON") {
  const auto report = reconstruct(full_readout(bs("001010111")), CodebookSpec::make(Family::SR, 9));
  const auto j = report_to_json(report);
  CHECK(j["status"] == "ok");
  CHECK(j["result"] == "001010111");
  CHECK(j["dropped_classes"].empty());
}

TEST_CASE("config JSON round trip and hash") {
  ExperimentConfig cfg;
  cfg.spec = CodebookSpec::make(Family::SDA, 12, 2);
  cfg.model = ErrorModel::Skew;
  cfg.t = 2;
  cfg.trials = 20;
  cfg.seed = 77;
  cfg.n_range = std::pair{10, 12};
  const auto back = config_from_json(config_to_json(cfg));
  CHECK(config_to_json(back) == config_to_json(cfg));
  CHECK(config_hash(back) == config_hash(cfg));
  CHECK(config_hash(cfg).size() == 32);
  auto other = cfg;
  other.seed = 78;
  CHECK(config_hash(other) != config_hash(cfg));
  CHECK_THROWS_AS(config_from_json(parse_json(R"({"spec":{"family":"SR","n":8},"model":"asym","n_range":[9,8]})")), ParseError);
  CHECK_THROWS_AS(config_from_json(parse_json(R"([1])")), ParseError);
}

TEST_CASE("single deletions in SR(9) always decode") {
  ExperimentConfig cfg;
  cfg.spec = CodebookSpec::make(Family::SR, 9);
  cfg.model = ErrorModel::AsymDelete;
  cfg.trials = 100;
  cfg.seed = 1;
  ExperimentSummary summary;
  run_to_text(cfg, &summary);
  CHECK(summary.trials == 100);
  CHECK(summary.successes == 100);
  CHECK(summary.disagreements == 0);
}

TEST_CASE("double skews in SDA(2)(12) always decode") {
  ExperimentConfig cfg;
  cfg.spec = CodebookSpec::make(Family::SDA, 12, 2);
  cfg.model = ErrorModel::Skew;
  cfg.t = 2;
  cfg.trials = 200;
  cfg.seed = 5;
  ExperimentSummary summary;
  run_to_text(cfg, &summary);
  CHECK(summary.successes == 200);
  CHECK(summary.disagreements == 0);
}

TEST_CASE("two symmetric pairs in SR(12) leave ambiguous codewords") {
  ExperimentConfig cfg;
  cfg.spec = CodebookSpec::make(Family::SR, 12);
  cfg.model = ErrorModel::SymPairDelete;
  cfg.t = 2;
  cfg.exhaustive = true;
  cfg.allow_unsupported = true;
  CHECK(trial_count(cfg) == 308 * 15);
  ExperimentSummary summary;
  const auto text = run_to_text(cfg, &summary);
  CHECK(summary.ambiguous > 0);
  CHECK(summary.disagreements == 0);
  CHECK(summary.successes + summary.ambiguous == summary.trials);
  CHECK(text.find("\"witnesses\"") != std::string::npos);

  cfg.allow_unsupported = false;
  run_to_text(cfg, &summary);
  CHECK(summary.unsupported == summary.trials);
}

TEST_CASE("campaigns replay byte for byte") {
  ExperimentConfig cfg;
  cfg.spec = CodebookSpec::make(Family::SDS2, 11, 1, 2);
  cfg.model = ErrorModel::SymPairDelete;
  cfg.t = 2;
  cfg.trials = 40;
  cfg.seed = 123;
  cfg.n_range = std::pair{10, 12};
  const auto first = run_to_text(cfg);
  CHECK(first == run_to_text(cfg));
  std::istringstream lines(first);
  std::string line;
  long index = 0;
  const auto hash = config_hash(cfg);
  while (std::getline(lines, line)) {
    REQUIRE(record_to_json(run_trial(cfg, index), hash).dump() == line);
    ++index;
  }
  CHECK(index == trial_count(cfg));
  CHECK(index == 120);
  CHECK_THROWS_AS(run_trial(cfg, index), DomainError);

  auto reseeded = cfg;
  reseeded.seed = 124;
  CHECK(run_to_text(reseeded) != first);
}

TEST_CASE("round robin and exhaustive skew campaigns") {
  ExperimentConfig cfg;
  cfg.spec = CodebookSpec::make(Family::SR, 8);
  cfg.model = ErrorModel::Skew;
  cfg.exhaustive = true;
  ExperimentSummary summary;
  run_to_text(cfg, &summary);
  CHECK(summary.trials > 0);
  CHECK(summary.successes == summary.trials);

  cfg.exhaustive = false;
  cfg.selection = Selection::RoundRobin;
  cfg.model = ErrorModel::Insert;
  cfg.trials = 56;
  std::vector<std::uint64_t> ranks;
  run_experiment(cfg, [&](const TrialRecord& rec) { ranks.push_back(rec.rank); });
  CHECK(ranks.front() == 0);
  CHECK(ranks[28] == 0);
  CHECK(ranks[27] == 27);

  cfg.model = ErrorModel::Skew;
  cfg.t = 2;
  cfg.exhaustive = true;
  CHECK_THROWS_AS(trial_count(cfg), DomainError);
}

TEST_CASE("timing is opt-in") {
  ExperimentConfig cfg;
  cfg.spec = CodebookSpec::make(Family::SR, 8);
  cfg.trials = 2;
  CHECK(run_to_text(cfg).find("wall_ms") == std::string::npos);
  cfg.timing = true;
  CHECK(run_to_text(cfg).find("wall_ms") != std::string::npos);
}
