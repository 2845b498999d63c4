#pragma once

// Corruption of readouts under the multiset error models: asymmetric class
// deletions, symmetric pair deletions, composition insertions and skewed
// (weight-lowering) substitutions.

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "polycomp/composition.hpp"

namespace polycomp {

enum class ErrorModel { AsymDelete, SymPairDelete, ConsecutiveSymPairDelete, Insert, Skew };

std::string_view to_string(ErrorModel m);
// Accepts the canonical names plus "asym", "sym_pair", "consecutive", "consecutive_sym_pair".
// Throws InvalidErrorSpec.
ErrorModel parse_error_model(std::string_view name);

struct Insertion {
  int k = 0;
  Composition entry;

  friend bool operator==(const Insertion&, const Insertion&) = default;
};

struct Skew {
  int k = 0;
  Composition from;
  Composition to;

  friend bool operator==(const Skew&, const Skew&) = default;
};

struct RandomDraw {
  int count = 0;
  std::uint64_t seed = 0;
  int per_class = 1;  // insert model: junk compositions added to each chosen class

  friend bool operator==(const RandomDraw&, const RandomDraw&) = default;
};

// Either explicit targets for the model, or a random draw that is resolved
// against the readout when applied.
struct ErrorSpec {
  ErrorModel model = ErrorModel::AsymDelete;
  std::vector<int> classes;             // asym_delete: class lengths
  std::vector<int> pairs;               // sym_pair_delete: pair index i, meaning {i, n-i+1}
  std::vector<Insertion> insertions;    // insert
  std::vector<Skew> skews;              // skew
  std::optional<RandomDraw> random;

  friend bool operator==(const ErrorSpec&, const ErrorSpec&) = default;
};

// Throws InvalidErrorSpec (InvalidSkew for non-lowering replacements).
Readout apply(const Readout& r, const ErrorSpec& e);

// Concrete targets drawn from a seeded generator. Deletion and insertion
// models only need n; skew needs the readout to pick existing entries.
// Throws InvalidErrorSpec when count exceeds what the model allows for n.
ErrorSpec random_error(ErrorModel model, int count, std::uint64_t seed, int n, int per_class = 1);
ErrorSpec random_error(ErrorModel model, int count, std::uint64_t seed, const Readout& r, int per_class = 1);

// Class lengths removed by a deletion spec, ascending.
std::vector<int> deleted_classes(const ErrorSpec& e, int n);

// Deterministic generator for every seeded draw: std::mt19937_64 (fully
// specified by the C++ standard) with rejection-sampled bounded integers, so
// a seed yields the same stream on every platform and standard library.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  // Uniform k-subset of [0, n), ascending.
  std::vector<int> subset(int n, int k);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finaliser, used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t x);

// Largest deletion patterns admitted by a model with parameter t, each
// ascending, in lexicographic order. Every admissible pattern is a subset of
// one of these.
std::vector<std::vector<int>> maximal_patterns(ErrorModel model, int n, int t);

// Whether a set of classes is a subset of some admissible pattern.
bool pattern_admissible(ErrorModel model, int n, int t, const std::vector<int>& classes);

}  // namespace polycomp
