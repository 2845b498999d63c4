#pragma once

// Seeded decode campaigns: pick a codeword, corrupt its readout, decode with
// the decoder that matches the error model and compare against the
// brute-force decoder. One JSON record per trial.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polycomp/channel.hpp"
#include "polycomp/codebook.hpp"
#include "polycomp/io.hpp"
#include "polycomp/reconstruct.hpp"

namespace polycomp {

enum class Selection { Seeded, RoundRobin };

struct ExperimentConfig {
  CodebookSpec spec;
  ErrorModel model = ErrorModel::AsymDelete;
  int t = 1;  // errors per trial
  long trials = 100;
  std::uint64_t seed = 0;
  // When set, spec.n is replaced by each length in [first, second] in turn,
  // with `trials` trials per length.
  std::optional<std::pair<int, int>> n_range;
  int cross_check_cap = 12;
  // Every codeword under every maximal pattern (deletion models), or every
  // single skew (skew with t = 1), instead of seeded draws.
  bool exhaustive = false;
  int per_class = 1;
  Selection selection = Selection::Seeded;
  bool timing = false;  // wall time breaks byte-identical replays, so it is opt-in
  bool experimental_nonconsecutive = false;
  bool allow_unsupported = false;
};

Json config_to_json(const ExperimentConfig& cfg);
// Throws ParseError, SpecError or InvalidErrorSpec.
ExperimentConfig config_from_json(const Json& j);
// Hex FNV-1a of the canonical config JSON.
std::string config_hash(const ExperimentConfig& cfg);

struct TrialRecord {
  long index = 0;
  int n = 0;
  std::uint64_t rank = 0;
  BitString codeword;
  ErrorSpec error;
  DecodeReport report;
  bool success = false;
  // "agree", "disagree" or "skipped"
  std::string cross_check = "skipped";
  std::optional<DecodeReport> reference;
  // Set when the channel could not draw an error for this codeword.
  std::optional<std::string> channel_error;
  std::optional<double> wall_ms;
};

Json record_to_json(const TrialRecord& rec, const std::string& hash);

struct ExperimentSummary {
  long trials = 0;
  long successes = 0;
  long unsupported = 0;
  long undecodable = 0;
  long ambiguous = 0;
  long wrong = 0;  // decoded to a different string
  long disagreements = 0;
  long errors = 0;  // trials whose error could not be drawn for this codeword
};

Json summary_to_json(const ExperimentSummary& s);

long trial_count(const ExperimentConfig& cfg);
// Deterministic in (cfg, index). Throws DomainError for index >= trial_count.
TrialRecord run_trial(const ExperimentConfig& cfg, long index);
// Runs every trial in index order, handing each record to `sink`.
ExperimentSummary run_experiment(const ExperimentConfig& cfg, const std::function<void(const TrialRecord&)>& sink = {});

}  // namespace polycomp
