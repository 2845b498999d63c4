#pragma once

// Outside-in reconstruction from (possibly corrupted) readouts, and the
// deletion, insertion and skewed-substitution decoders built on it.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polycomp/codebook.hpp"
#include "polycomp/composition.hpp"

namespace polycomp {

enum class DecodeStatus { Ok, Undecodable, Ambiguous, Unsupported };

std::string_view to_string(DecodeStatus s);

struct DecodeReport {
  DecodeStatus status = DecodeStatus::Undecodable;
  std::optional<BitString> result;
  std::string reason;
  std::vector<int> dropped_classes;
  std::string pattern;  // "none", "asymmetric", "symmetric", "mixed"

  // Times the (0,1) branch at sigma_i = 1 failed and (1,0) was tried.
  long backtracks = 0;
  // Largest number of inward steps a failed (0,1) branch survived before every
  // extension contradicted the readout, counted where the (1,0) branch at the
  // same position led to a solution.
  int max_detection_lag = 0;
  long sigma_candidates = 0;
  // brute_force_decode: every consistent member. Other decoders: the
  // distinct strings found, up to DecodeOptions::max_solutions.
  std::vector<BitString> consistent_set;

  bool ok() const noexcept { return status == DecodeStatus::Ok; }
};

struct DecodeOptions {
  // Decode patterns outside the spec's guarantee instead of refusing them.
  bool allow_unsupported = false;
  // Treat any t symmetric pairs as within SDSprime's reach, not only
  // consecutive ones. No proof backs this.
  bool experimental_nonconsecutive = false;
  // Search stops after this many distinct consistent strings; 2 is enough to
  // tell unique from ambiguous.
  int max_solutions = 2;
};

// Full (uncorrupted) readout. With a spec, the result is the unique member
// consistent with r. Without one, any string with readout r, preferring a
// leading 0.
DecodeReport reconstruct(const Readout& r, const std::optional<CodebookSpec>& spec = std::nullopt,
                         const DecodeOptions& options = {});

// Missing and undersized classes are dropped. Oversized classes are refused.
DecodeReport decode_deletions(const Readout& r, const CodebookSpec& spec, const DecodeOptions& options = {});
// Oversized classes are dropped whole, then the remaining gaps are decoded as deletions.
DecodeReport decode_insertions(const Readout& r, const CodebookSpec& spec, const DecodeOptions& options = {});
// Classes with w_k < w_{n-k+1} are dropped, then decoded as deletions. For
// odd n a corrupted centre class is caught by retrying without it.
DecodeReport decode_skewed(const Readout& r, const CodebookSpec& spec, const DecodeOptions& options = {});

// Every member whose readout agrees with r on each correctly sized class.
// Throws ResourceError past the enumeration cap.
DecodeReport brute_force_decode(const Readout& r, const CodebookSpec& spec, int cap = kEnumerationCap);

// Whether the spec guarantees recovery after losing `classes`.
bool pattern_supported(const CodebookSpec& spec, const std::vector<int>& classes, bool experimental_nonconsecutive = false);
// "none", "asymmetric" (no class lost together with its partner),
// "symmetric" (only whole pairs lost) or "mixed".
std::string classify_pattern(int n, const std::vector<int>& classes);

}  // namespace polycomp
