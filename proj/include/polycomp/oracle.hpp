#pragma once

// Exhaustive ground truth: equicomposability classes, code-property checks
// under each error model and the search for confusable codeword pairs.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "polycomp/channel.hpp"
#include "polycomp/codebook.hpp"
#include "polycomp/composition.hpp"

namespace polycomp {

// Throws DomainError on a length mismatch.
bool equicomposable(const BitString& s, const BitString& v);

struct ClassCount {
  std::uint64_t count = 0;
  // Lexicographically smallest string of each class, ascending.
  std::vector<BitString> representatives;
};

constexpr int kClassCountCap = 20;

// Partitions {0,1}^n by readout. Throws ResourceError past the cap.
ClassCount count_classes(int n, int cap = kClassCountCap);
// 2^{n-1} + 2^{ceil(n/2)-1}: pairs {s, reverse(s)} plus palindromes.
std::uint64_t max_code_bound(int n);

// Two codewords whose readouts become identical once the pattern's classes are
// corrupted. For deletion and insertion models `pattern` is exactly the set of
// classes where the clean readouts differ. For skew it lists the classes that
// take a skew, and `s_skews`/`v_skews` are the replacements applied to each.
struct ConfusabilityWitness {
  CodebookSpec spec;
  ErrorModel model = ErrorModel::AsymDelete;
  int t = 1;
  BitString s;
  BitString v;
  std::vector<int> pattern;
  std::vector<Skew> s_skews;
  std::vector<Skew> v_skews;
};

struct VerifyResult {
  bool ok = true;
  std::optional<ConfusabilityWitness> witness;
  std::uint64_t codewords = 0;
  std::uint64_t patterns = 0;
};

constexpr int kVerifyCap = 20;

// Exhaustive over codeword pairs and every admissible pattern of at most t
// errors. The witness, if any, is the lexicographically smallest (s, v).
// Throws ResourceError past the cap.
VerifyResult verify_code_property(const CodebookSpec& spec, ErrorModel model, int t, int cap = kVerifyCap);

// Confusable pair inside SR(n). Symmetric models try the central
// adjacent-pair patterns first and fall back to the full scan.
// Throws ResourceError past the cap.
std::optional<ConfusabilityWitness> find_confusable_pair(int n, ErrorModel model, int t, int cap = kVerifyCap);

// Re-derives the collision from scratch: both strings are members, distinct,
// the pattern is admissible and the corrupted readouts are identical.
bool recheck_witness(const ConfusabilityWitness& w);

// Insertion-side counterpart of a deletion witness: every class in the
// pattern receives the other string's entries, after which the two corrupted
// readouts coincide.
std::pair<Readout, Readout> insertion_collision(const ConfusabilityWitness& w);

}  // namespace polycomp
