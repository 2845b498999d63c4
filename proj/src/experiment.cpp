#include "polycomp/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>

#include "polycomp/composition.hpp"
#include "polycomp/errors.hpp"
#include "polycomp/hash.hpp"

namespace polycomp {

namespace {

std::string_view to_string(Selection s) { return s == Selection::RoundRobin ? "round_robin" : "seeded"; }

Selection parse_selection(std::string_view name) {
  if (name == "seeded") return Selection::Seeded;
  if (name == "round_robin") return Selection::RoundRobin;
  throw ParseError("selection must be 'seeded' or 'round_robin'");
}

bool deletion_model(ErrorModel m) {
  return m == ErrorModel::AsymDelete || m == ErrorModel::SymPairDelete || m == ErrorModel::ConsecutiveSymPairDelete;
}

// All single skews of s, in (k, from, to) order.
std::vector<Skew> single_skews(const BitString& s) {
  std::vector<Skew> out;
  const int n = static_cast<int>(s.size());
  for (int k = 1; k <= n; ++k) {
    const auto hist = window_weight_histogram(s, k);
    for (int w = 1; w <= k; ++w) {
      if (hist[static_cast<std::size_t>(w)] == 0) continue;
      for (int to = 0; to < w; ++to) out.push_back(Skew{k, Composition{k - w, w}, Composition{k - to, to}});
    }
  }
  return out;
}

// Trials for one codeword length.
struct Segment {
  CodebookSpec spec;
  long count = 0;
  std::uint64_t size = 0;
  std::vector<std::vector<int>> patterns;  // exhaustive deletion
  std::vector<long> skew_offsets;          // exhaustive skew: first trial of each rank
};

Segment plan_segment(const ExperimentConfig& cfg, int n) {
  Segment seg;
  seg.spec = CodebookSpec::make(cfg.spec.family, n, cfg.spec.t, cfg.spec.a);
  seg.size = codebook_size(seg.spec);
  if (!cfg.exhaustive) {
    seg.count = seg.size == 0 ? 0 : cfg.trials;
    return seg;
  }
  if (deletion_model(cfg.model)) {
    seg.patterns = maximal_patterns(cfg.model, n, cfg.t);
    seg.count = static_cast<long>(seg.size * seg.patterns.size());
  } else if (cfg.model == ErrorModel::Skew && cfg.t == 1) {
    long total = 0;
    for (std::uint64_t r = 0; r < seg.size; ++r) {
      seg.skew_offsets.push_back(total);
      total += static_cast<long>(single_skews(unrank(seg.spec, r)).size());
    }
    seg.count = total;
  } else {
    throw DomainError("exhaustive campaigns cover deletion models and single skews only");
  }
  return seg;
}

std::vector<Segment> plan(const ExperimentConfig& cfg) {
  std::vector<Segment> out;
  if (cfg.n_range) {
    for (int n = cfg.n_range->first; n <= cfg.n_range->second; ++n) out.push_back(plan_segment(cfg, n));
  } else {
    out.push_back(plan_segment(cfg, cfg.spec.n));
  }
  return out;
}

ErrorSpec pattern_error(ErrorModel model, int n, const std::vector<int>& pattern) {
  ErrorSpec e;
  e.model = model;
  if (model == ErrorModel::AsymDelete) {
    e.classes = pattern;
  } else {
    std::set<int> pairs;
    for (int k : pattern) pairs.insert(pair_index(n, k));
    e.pairs.assign(pairs.begin(), pairs.end());
  }
  return e;
}

DecodeReport decode_for(ErrorModel model, const Readout& r, const CodebookSpec& spec, const DecodeOptions& options) {
  switch (model) {
    case ErrorModel::Insert: return decode_insertions(r, spec, options);
    case ErrorModel::Skew: return decode_skewed(r, spec, options);
    default: return decode_deletions(r, spec, options);
  }
}

TrialRecord run_in_segment(const ExperimentConfig& cfg, const Segment& seg, long index, long local) {
  const auto started = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.index = index;
  rec.n = seg.spec.n;

  SeededRng rng(mix_seed(cfg.seed ^ mix_seed(static_cast<std::uint64_t>(index))));
  std::optional<Skew> fixed_skew;
  if (cfg.exhaustive && !seg.patterns.empty()) {
    const auto per = static_cast<long>(seg.patterns.size());
    rec.rank = static_cast<std::uint64_t>(local / per);
    rec.error = pattern_error(cfg.model, seg.spec.n, seg.patterns[static_cast<std::size_t>(local % per)]);
  } else if (cfg.exhaustive) {
    const auto it = std::upper_bound(seg.skew_offsets.begin(), seg.skew_offsets.end(), local);
    rec.rank = static_cast<std::uint64_t>(it - seg.skew_offsets.begin() - 1);
    fixed_skew = single_skews(unrank(seg.spec, rec.rank))[static_cast<std::size_t>(local - *(it - 1))];
    rec.error.model = ErrorModel::Skew;
    rec.error.skews = {*fixed_skew};
  } else {
    rec.rank = cfg.selection == Selection::RoundRobin ? static_cast<std::uint64_t>(local) % seg.size : rng.below(seg.size);
  }
  rec.codeword = unrank(seg.spec, rec.rank);
  const Readout clean = full_readout(rec.codeword);

  if (!cfg.exhaustive) {
    try {
      rec.error = random_error(cfg.model, cfg.t, rng.next(), clean, cfg.per_class);
    } catch (const InvalidErrorSpec& e) {
      rec.channel_error = e.what();
      rec.report.status = DecodeStatus::Unsupported;
      rec.report.reason = e.what();
      return rec;
    }
  }
  const Readout corrupted = apply(clean, rec.error);

  DecodeOptions options;
  options.allow_unsupported = cfg.allow_unsupported;
  options.experimental_nonconsecutive = cfg.experimental_nonconsecutive;
  rec.report = decode_for(cfg.model, corrupted, seg.spec, options);
  rec.success = rec.report.ok() && rec.report.result == rec.codeword;

  if (seg.spec.n <= cfg.cross_check_cap) {
    Readout trusted = corrupted;
    for (int k : rec.report.dropped_classes) trusted.erase(k);
    rec.reference = brute_force_decode(trusted, seg.spec);
    if (rec.report.status != DecodeStatus::Unsupported) {
      const bool agree = rec.report.status == rec.reference->status && rec.report.result == rec.reference->result;
      rec.cross_check = agree ? "agree" : "disagree";
    }
  }
  if (cfg.timing) {
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  }
  return rec;
}

}  // namespace

Json config_to_json(const ExperimentConfig& cfg) {
  return Json{{"spec", spec_to_json(cfg.spec)},
              {"model", std::string(to_string(cfg.model))},
              {"t", cfg.t},
              {"trials", cfg.trials},
              {"seed", cfg.seed},
              {"n_range", cfg.n_range ? Json::array({cfg.n_range->first, cfg.n_range->second}) : Json(nullptr)},
              {"cross_check_cap", cfg.cross_check_cap},
              {"exhaustive", cfg.exhaustive},
              {"per_class", cfg.per_class},
              {"selection", std::string(to_string(cfg.selection))},
              {"timing", cfg.timing},
              {"experimental_nonconsecutive", cfg.experimental_nonconsecutive},
              {"allow_unsupported", cfg.allow_unsupported}};
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("experiment config must be a JSON object");
  ExperimentConfig cfg;
  try {
    cfg.spec = spec_from_json(j.at("spec"));
    cfg.model = parse_error_model(j.at("model").get<std::string>());
    cfg.t = j.value("t", 1);
    cfg.trials = j.value("trials", 100L);
    cfg.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("n_range") && !j.at("n_range").is_null()) {
      const auto& range = j.at("n_range");
      if (!range.is_array() || range.size() != 2) throw ParseError("n_range must be [first, last]");
      cfg.n_range = std::pair{range[0].get<int>(), range[1].get<int>()};
    }
    cfg.cross_check_cap = j.value("cross_check_cap", 12);
    cfg.exhaustive = j.value("exhaustive", false);
    cfg.per_class = j.value("per_class", 1);
    cfg.selection = parse_selection(j.value("selection", std::string("seeded")));
    cfg.timing = j.value("timing", false);
    cfg.experimental_nonconsecutive = j.value("experimental_nonconsecutive", false);
    cfg.allow_unsupported = j.value("allow_unsupported", false);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad experiment config: ") + e.what());
  }
  if (cfg.t < 0 || cfg.trials < 0 || cfg.per_class < 1) throw ParseError("t, trials and per_class must be non-negative");
  if (cfg.n_range && cfg.n_range->first > cfg.n_range->second) throw ParseError("n_range is empty");
  return cfg;
}

std::string config_hash(const ExperimentConfig& cfg) {
  Fnv128 h;
  for (char c : config_to_json(cfg).dump()) h.add(static_cast<std::uint8_t>(c));
  const Hash128 v = h.value();
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(v >> 64),
                static_cast<unsigned long long>(v));
  return buf;
}

Json record_to_json(const TrialRecord& rec, const std::string& hash) {
  Json j{{"config_hash", hash},
         {"index", rec.index},
         {"n", rec.n},
         {"rank", rec.rank},
         {"codeword", rec.codeword.to_string()},
         {"error", error_spec_to_json(rec.error)},
         {"outcome", std::string(to_string(rec.report.status))},
         {"result", rec.report.result ? Json(rec.report.result->to_string()) : Json(nullptr)},
         {"success", rec.success},
         {"dropped_classes", rec.report.dropped_classes},
         {"pattern", rec.report.pattern},
         {"backtracks", rec.report.backtracks},
         {"max_detection_lag", rec.report.max_detection_lag},
         {"cross_check", rec.cross_check},
         {"reference", rec.reference ? Json(std::string(to_string(rec.reference->status))) : Json(nullptr)}};
  if (!rec.success) {
    const auto& set = rec.reference ? rec.reference->consistent_set : rec.report.consistent_set;
    Json witnesses = Json::array();
    for (const auto& s : set) witnesses.push_back(s.to_string());
    j["witnesses"] = std::move(witnesses);
    j["reason"] = rec.report.reason;
  }
  if (rec.channel_error) j["channel_error"] = *rec.channel_error;
  if (rec.wall_ms) j["wall_ms"] = *rec.wall_ms;
  return j;
}

Json summary_to_json(const ExperimentSummary& s) {
  return Json{{"trials", s.trials},         {"successes", s.successes},     {"unsupported", s.unsupported},
              {"undecodable", s.undecodable}, {"ambiguous", s.ambiguous},   {"wrong", s.wrong},
              {"disagreements", s.disagreements}, {"errors", s.errors}};
}

long trial_count(const ExperimentConfig& cfg) {
  long total = 0;
  for (const auto& seg : plan(cfg)) total += seg.count;
  return total;
}

TrialRecord run_trial(const ExperimentConfig& cfg, long index) {
  long offset = 0;
  for (const auto& seg : plan(cfg)) {
    if (index >= offset && index < offset + seg.count) return run_in_segment(cfg, seg, index, index - offset);
    offset += seg.count;
  }
  throw DomainError("trial index " + std::to_string(index) + " out of range");
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg, const std::function<void(const TrialRecord&)>& sink) {
  ExperimentSummary summary;
  long index = 0;
  for (const auto& seg : plan(cfg)) {
    for (long local = 0; local < seg.count; ++local, ++index) {
      const TrialRecord rec = run_in_segment(cfg, seg, index, local);
      ++summary.trials;
      if (rec.channel_error) {
        ++summary.errors;
      } else if (rec.success) {
        ++summary.successes;
      } else {
        switch (rec.report.status) {
          case DecodeStatus::Unsupported: ++summary.unsupported; break;
          case DecodeStatus::Undecodable: ++summary.undecodable; break;
          case DecodeStatus::Ambiguous: ++summary.ambiguous; break;
          case DecodeStatus::Ok: ++summary.wrong; break;
        }
      }
      if (rec.cross_check == "disagree") ++summary.disagreements;
      if (sink) sink(rec);
    }
  }
  return summary;
}

}  // namespace polycomp
