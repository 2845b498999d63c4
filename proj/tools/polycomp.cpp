// polycomp: command-line front end for composition readouts, codebooks,
// decoders and the exhaustive oracle.
//
// Exit codes: 0 success / property holds, 1 decode failure or witness found,
// 2 usage or parse error, 3 resource cap exceeded.

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "polycomp/channel.hpp"
#include "polycomp/codebook.hpp"
#include "polycomp/composition.hpp"
#include "polycomp/errors.hpp"
#include "polycomp/experiment.hpp"
#include "polycomp/io.hpp"
#include "polycomp/oracle.hpp"
#include "polycomp/reconstruct.hpp"

using namespace polycomp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitWitness = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

std::string slurp(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Inline JSON, or @path to read it from a file.
Json json_arg(const std::string& text) { return parse_json(text.rfind('@', 0) == 0 ? slurp(text.substr(1)) : text); }

std::vector<int> int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("expected a comma-separated list of integers, got '" + text + "'");
    }
  }
  return out;
}

void print(const Json& j, bool pretty) { std::cout << (pretty ? j.dump(2) : j.dump()) << '\n'; }

// Picks the decoder from the corruption that is visible in the readout.
ErrorModel infer_model(const Readout& r) {
  if (!r.oversized_classes().empty()) return ErrorModel::Insert;
  for (const auto& [k, c] : r.classes()) {
    const int q = partner(r.n(), k);
    if (q != k && r.has_class(q) && c.size() == r.expected_size(k) && r.at(q).size() == r.expected_size(q) &&
        c.cumulative_weight() != r.at(q).cumulative_weight()) {
      return ErrorModel::Skew;
    }
  }
  return ErrorModel::AsymDelete;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composition-multiset reconstruction codes: readouts, codebooks, decoders and oracles"};
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Indent JSON output");

  std::string spec_text;
  std::string model_text;
  std::string input = "-";
  int t = 1;
  std::uint64_t seed = 0;
  long trials = 100;
  std::string out_path;
  int cross_check_cap = 12;

  auto* compose = app.add_subcommand("compose", "Print the full readout of a bitstring");
  std::string bits;
  compose->add_option("bits", bits, "Bitstring such as 001010111")->required();

  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Reconstruct a string from an uncorrupted readout");
  reconstruct_cmd->add_option("input", input, "Readout JSON file, - for stdin");
  reconstruct_cmd->add_option("--spec", spec_text, "Codebook family,n[,t[,a]]");

  auto* corrupt = app.add_subcommand("corrupt", "Apply an error to a readout");
  corrupt->add_option("input", input, "Readout JSON file, - for stdin");
  std::string error_text;
  std::string targets_text;
  int count = -1;
  int per_class = 1;
  corrupt->add_option("--error", error_text, "Error spec JSON, or @file");
  corrupt->add_option("--model", model_text, "asym_delete, sym_pair_delete, consecutive_sym_pair_delete, insert, skew");
  corrupt->add_option("--targets", targets_text, "Classes (asym_delete) or pair indices (sym_pair_delete), comma-separated");
  corrupt->add_option("--count", count, "Number of random errors");
  corrupt->add_option("--seed", seed, "Seed for random errors");
  corrupt->add_option("--per-class", per_class, "Insert model: junk compositions per chosen class");
  bool show_error = false;
  corrupt->add_flag("--show-error", show_error, "Print the resolved error spec instead of the readout");

  auto* decode = app.add_subcommand("decode", "Decode a corrupted readout");
  decode->add_option("input", input, "Readout JSON file, - for stdin");
  decode->add_option("--spec", spec_text, "Codebook family,n[,t[,a]]")->required();
  decode->add_option("--model", model_text, "Decoder to use; inferred from the readout when omitted");
  bool allow_unsupported = false;
  bool experimental = false;
  bool brute_force = false;
  decode->add_flag("--allow-unsupported", allow_unsupported, "Decode patterns outside the spec's guarantee");
  decode->add_flag("--experimental", experimental, "Treat non-consecutive symmetric pairs as supported (SDSprime)");
  decode->add_flag("--brute-force", brute_force, "Fall back to the exhaustive decoder when the fast one fails");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "List codebook members in lexicographic order");
  enumerate_cmd->add_option("--spec", spec_text, "Codebook family,n[,t[,a]]")->required();
  long limit = -1;
  enumerate_cmd->add_option("--limit", limit, "Print at most this many members");

  auto* rank_cmd = app.add_subcommand("rank", "Index of a member in the lexicographic enumeration");
  rank_cmd->add_option("--spec", spec_text, "Codebook family,n[,t[,a]]")->required();
  rank_cmd->add_option("bits", bits, "Member bitstring")->required();

  auto* unrank_cmd = app.add_subcommand("unrank", "Member at an index of the lexicographic enumeration");
  unrank_cmd->add_option("--spec", spec_text, "Codebook family,n[,t[,a]]")->required();
  std::uint64_t index = 0;
  unrank_cmd->add_option("index", index, "Index")->required();

  auto* verify = app.add_subcommand("verify", "Exhaustively check a code property");
  verify->add_option("--spec", spec_text, "Codebook family,n[,t[,a]]")->required();
  verify->add_option("--model", model_text, "Error model")->required();
  verify->add_option("--t", t, "Number of errors");
  int cap = kVerifyCap;
  verify->add_option("--cap", cap, "Largest n to enumerate");

  auto* bounds = app.add_subcommand("bounds", "Redundancy bound against the measured redundancy");
  bounds->add_option("--spec", spec_text, "Codebook family,n[,t[,a]]")->required();

  auto* classes = app.add_subcommand("classes", "Count readout classes of {0,1}^n");
  int n_classes = 0;
  classes->add_option("n", n_classes, "String length")->required();
  bool representatives = false;
  classes->add_flag("--representatives", representatives, "List the smallest string of each class");
  int class_cap = kClassCountCap;
  classes->add_option("--cap", class_cap, "Largest n to enumerate");

  auto* experiment = app.add_subcommand("experiment", "Run a seeded decode campaign, writing JSONL records");
  std::string config_text;
  std::string n_range_text;
  bool exhaustive = false;
  bool timing = false;
  bool round_robin = false;
  experiment->add_option("--config", config_text, "Experiment config JSON, or @file; flags below are ignored");
  experiment->add_option("--spec", spec_text, "Codebook family,n[,t[,a]]");
  experiment->add_option("--model", model_text, "Error model");
  experiment->add_option("--t", t, "Errors per trial");
  experiment->add_option("--trials", trials, "Trials per length");
  experiment->add_option("--seed", seed, "Campaign seed");
  experiment->add_option("--out", out_path, "JSONL output file (default stdout)");
  experiment->add_option("--cross-check-cap", cross_check_cap, "Largest n cross-checked by brute force");
  experiment->add_option("--n-range", n_range_text, "Lengths first:last, replacing the spec's n");
  experiment->add_option("--per-class", per_class, "Insert model: junk compositions per chosen class");
  experiment->add_flag("--exhaustive", exhaustive, "Every codeword under every maximal pattern");
  experiment->add_flag("--timing", timing, "Record wall time per trial");
  experiment->add_flag("--round-robin", round_robin, "Cycle through codewords by rank");
  experiment->add_flag("--allow-unsupported", allow_unsupported, "Decode patterns outside the spec's guarantee");
  experiment->add_flag("--experimental", experimental, "Treat non-consecutive symmetric pairs as supported (SDSprime)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compose->parsed()) {
      print(readout_to_json(full_readout(BitString::parse(bits))), pretty);
      return kExitOk;
    }

    if (reconstruct_cmd->parsed()) {
      const Readout r = parse_readout(slurp(input));
      std::optional<CodebookSpec> spec;
      if (!spec_text.empty()) spec = parse_spec_arg(spec_text);
      const DecodeReport report = reconstruct(r, spec);
      print(report_to_json(report), pretty);
      return report.ok() ? kExitOk : kExitWitness;
    }

    if (corrupt->parsed()) {
      const Readout r = parse_readout(slurp(input));
      ErrorSpec e;
      if (!error_text.empty()) {
        e = error_spec_from_json(json_arg(error_text));
      } else {
        if (model_text.empty()) throw ParseError("corrupt needs --error or --model");
        e.model = parse_error_model(model_text);
        if (count >= 0) {
          e.random = RandomDraw{count, seed, per_class};
        } else if (e.model == ErrorModel::AsymDelete) {
          e.classes = int_list(targets_text);
        } else if (e.model == ErrorModel::SymPairDelete || e.model == ErrorModel::ConsecutiveSymPairDelete) {
          e.pairs = int_list(targets_text);
        } else {
          throw ParseError("insert and skew targets are given with --error, or drawn with --count");
        }
      }
      if (e.random) {
        e = random_error(e.model, e.random->count, e.random->seed, r, e.random->per_class);
      }
      if (show_error) {
        print(error_spec_to_json(e), pretty);
      } else {
        print(readout_to_json(apply(r, e)), pretty);
      }
      return kExitOk;
    }

    if (decode->parsed()) {
      const Readout r = parse_readout(slurp(input));
      const CodebookSpec spec = parse_spec_arg(spec_text);
      const ErrorModel model = model_text.empty() ? infer_model(r) : parse_error_model(model_text);
      DecodeOptions options;
      options.allow_unsupported = allow_unsupported;
      options.experimental_nonconsecutive = experimental;
      DecodeReport report = model == ErrorModel::Insert ? decode_insertions(r, spec, options)
                            : model == ErrorModel::Skew ? decode_skewed(r, spec, options)
                                                        : decode_deletions(r, spec, options);
      if (!report.ok() && brute_force) {
        Readout trusted = r;
        for (int k : report.dropped_classes) trusted.erase(k);
        report = brute_force_decode(trusted, spec);
        report.reason = report.ok() ? "recovered by the exhaustive decoder" : report.reason;
      }
      print(report_to_json(report), pretty);
      return report.ok() ? kExitOk : kExitWitness;
    }

    if (enumerate_cmd->parsed()) {
      const auto members = enumerate(parse_spec_arg(spec_text));
      long printed = 0;
      for (const auto& s : members) {
        if (limit >= 0 && printed++ >= limit) break;
        std::cout << s.to_string() << '\n';
      }
      return kExitOk;
    }

    if (rank_cmd->parsed()) {
      std::cout << rank(parse_spec_arg(spec_text), BitString::parse(bits)) << '\n';
      return kExitOk;
    }

    if (unrank_cmd->parsed()) {
      std::cout << unrank(parse_spec_arg(spec_text), index).to_string() << '\n';
      return kExitOk;
    }

    if (verify->parsed()) {
      const CodebookSpec spec = parse_spec_arg(spec_text);
      const ErrorModel model = parse_error_model(model_text);
      const VerifyResult result = verify_code_property(spec, model, t, cap);
      Json j = verify_to_json(result);
      j["spec"] = spec_to_json(spec);
      j["model"] = std::string(to_string(model));
      j["t"] = t;
      if (result.ok) {
        j["note"] = "no witness among " + std::to_string(result.codewords) + " codewords and " +
                    std::to_string(result.patterns) + " maximal patterns";
      }
      print(j, pretty);
      return result.ok ? kExitOk : kExitWitness;
    }

    if (bounds->parsed()) {
      const CodebookSpec spec = parse_spec_arg(spec_text);
      const std::uint64_t size = codebook_size(spec);
      Json j{{"spec", spec_to_json(spec)}, {"size", size}};
      j["redundancy"] = size == 0 ? Json(nullptr) : Json(spec.n - std::log2(static_cast<double>(size)));
      try {
        j["redundancy_bound"] = redundancy_bound(spec);
      } catch (const DomainError& e) {
        j["redundancy_bound"] = nullptr;
        j["note"] = e.what();
      }
      if (spec.family == Family::SDA) j["size_lower_bound"] = size_lower_bound(spec);
      print(j, pretty);
      return kExitOk;
    }

    if (classes->parsed()) {
      const ClassCount c = count_classes(n_classes, class_cap);
      Json j{{"n", n_classes}, {"classes", c.count}, {"bound", max_code_bound(n_classes)}};
      if (representatives) {
        Json reps = Json::array();
        for (const auto& s : c.representatives) reps.push_back(s.to_string());
        j["representatives"] = std::move(reps);
      }
      print(j, pretty);
      return kExitOk;
    }

    if (experiment->parsed()) {
      ExperimentConfig cfg;
      if (!config_text.empty()) {
        cfg = config_from_json(json_arg(config_text));
      } else {
        if (spec_text.empty() || model_text.empty()) throw ParseError("experiment needs --config or --spec and --model");
        cfg.spec = parse_spec_arg(spec_text);
        cfg.model = parse_error_model(model_text);
        cfg.t = t;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.cross_check_cap = cross_check_cap;
        cfg.exhaustive = exhaustive;
        cfg.per_class = per_class;
        cfg.timing = timing;
        cfg.selection = round_robin ? Selection::RoundRobin : Selection::Seeded;
        cfg.allow_unsupported = allow_unsupported;
        cfg.experimental_nonconsecutive = experimental;
        if (!n_range_text.empty()) {
          const auto colon = n_range_text.find(':');
          if (colon == std::string::npos) throw ParseError("--n-range must look like first:last");
          const auto lo = int_list(n_range_text.substr(0, colon));
          const auto hi = int_list(n_range_text.substr(colon + 1));
          if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0]) throw ParseError("--n-range must look like first:last");
          cfg.n_range = std::pair{lo[0], hi[0]};
        }
      }
      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw ParseError("cannot write '" + out_path + "'");
      }
      std::ostream& out = out_path.empty() ? std::cout : file;
      const std::string hash = config_hash(cfg);
      const ExperimentSummary summary =
          run_experiment(cfg, [&](const TrialRecord& rec) { out << record_to_json(rec, hash).dump() << '\n'; });
      Json j{{"config", config_to_json(cfg)}, {"config_hash", hash}, {"summary", summary_to_json(summary)}};
      (out_path.empty() ? std::cerr : std::cout) << (pretty ? j.dump(2) : j.dump()) << '\n';
      return summary.successes == summary.trials ? kExitOk : kExitWitness;
    }
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
