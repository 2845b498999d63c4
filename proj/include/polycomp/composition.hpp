#pragma once

// Bitstrings, substring compositions, composition multisets and the
// cumulative-weight / sigma algebra that the codebooks and decoders build on.
//
// Conventions: BitString::operator[] is 0-based. Everything that names a
// position *in the domain sense* (composition_of, fragment lengths k, pair
// indices) is 1-based, matching how readouts are indexed.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polycomp {

class BitString {
 public:
  static constexpr std::size_t kMaxLength = 64;

  BitString() = default;
  // The low `length` bits of `value`; s_1 is the most significant of them, so
  // numeric order on values equals lexicographic order on strings.
  BitString(std::uint64_t value, std::size_t length);

  // Accepts only '0'/'1'. Throws ParseError.
  static BitString parse(std::string_view text);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  bool operator[](std::size_t i) const noexcept { return (value_ >> (size_ - 1 - i)) & 1U; }
  void set(std::size_t i, bool bit) noexcept;

  std::uint64_t value() const noexcept { return value_; }
  int weight() const noexcept;
  // Ones among 0-based positions [first, last).
  int weight(std::size_t first, std::size_t last) const noexcept;

  BitString reversed() const;
  BitString erased(std::size_t i) const;
  BitString inserted(std::size_t i, bool bit) const;
  std::string to_string() const;

  // Shorter strings first, then lexicographic.
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  std::size_t size_ = 0;
  std::uint64_t value_ = 0;
};

// 0^z 1^w. Canonical order is by length, then by number of ones.
struct Composition {
  int zeros = 0;
  int ones = 0;

  int length() const noexcept { return zeros + ones; }

  friend bool operator==(const Composition&, const Composition&) = default;
  friend std::strong_ordering operator<=>(const Composition& a, const Composition& b) {
    if (auto c = a.length() <=> b.length(); c != 0) return c;
    return a.ones <=> b.ones;
  }
};

std::string to_string(const Composition& c);

// Counted multiset of compositions that all have length k. Stored as a
// histogram over the number of ones, which makes equality multiplicity-exact.
class LengthClass {
 public:
  explicit LengthClass(int k);

  int length() const noexcept { return k_; }
  int size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  int count(const Composition& c) const;
  int count_ones(int w) const { return hist_.at(static_cast<std::size_t>(w)); }
  std::span<const int> histogram() const noexcept { return hist_; }

  // Throws RangeError if c.length() != k or multiplicity < 0.
  void add(const Composition& c, int multiplicity = 1);
  // Returns false if c is not present.
  bool remove(const Composition& c);

  int cumulative_weight() const noexcept;
  std::vector<std::pair<Composition, int>> entries() const;
  // Sub-multiset test.
  bool contains_all(const LengthClass& other) const;

  friend bool operator==(const LengthClass&, const LengthClass&) = default;

 private:
  int k_;
  int size_ = 0;
  std::vector<int> hist_;
};

// Channel output: length classes keyed by fragment length, plus the claimed
// string length n. Absent keys are deleted classes.
class Readout {
 public:
  explicit Readout(int n);

  int n() const noexcept { return n_; }
  bool has_class(int k) const { return classes_.contains(k); }
  // Throws MissingClass.
  const LengthClass& at(int k) const;
  const std::map<int, LengthClass>& classes() const noexcept { return classes_; }

  // Throws RangeError if the class length is outside [1, n].
  void put(LengthClass c);
  void erase(int k) { classes_.erase(k); }

  int expected_size(int k) const noexcept { return n_ - k + 1; }
  long total_count() const;

  std::vector<int> missing_classes() const;
  std::vector<int> oversized_classes() const;
  std::vector<int> undersized_classes() const;
  // Missing, undersized, or oversized.
  std::vector<int> anomalous_classes() const;

  friend bool operator==(const Readout&, const Readout&) = default;

 private:
  int n_;
  std::map<int, LengthClass> classes_;
};

struct SigmaSequence {
  int n = 0;
  std::vector<int> values;  // sigma_1 .. sigma_ceil(n/2) at indices 0..

  friend bool operator==(const SigmaSequence&, const SigmaSequence&) = default;
};

// One term x^xdeg y^ydeg of the bivariate generating polynomial.
struct PolyTerm {
  int xdeg = 0;
  int ydeg = 0;

  friend bool operator==(const PolyTerm&, const PolyTerm&) = default;
};

constexpr int half_up(int n) noexcept { return (n + 1) / 2; }
// Length class paired with k under weight symmetry.
constexpr int partner(int n, int k) noexcept { return n - k + 1; }
// Index of the symmetric pair {k, n-k+1}, in [1, ceil(n/2)].
constexpr int pair_index(int n, int k) noexcept { return k < partner(n, k) ? k : partner(n, k); }

// Composition of s_i..s_j, 1-based inclusive. Throws RangeError.
Composition composition_of(const BitString& s, std::size_t i, std::size_t j);
// Throws RangeError unless 1 <= k <= n.
LengthClass length_class(const BitString& s, int k);
Readout full_readout(const BitString& s);
// Number of windows of length k with each possible number of ones.
std::vector<int> window_weight_histogram(const BitString& s, int k);

// Throws MissingClass.
int cumulative_weight(const Readout& r, int k);
// w_1..w_n as observed, nullopt where the class is absent. Index 0 is w_1.
std::vector<std::optional<int>> observed_weights(const Readout& r);
// sum_{k=1}^{ceil(n/2)} w_k(s), straight from the windows.
int half_weight_sum(const BitString& s);

// Recovers sigma from w_1..w_ceil(n/2) by the prefix recursion
// w_k = k*w_1 - sum_{i<k} i*sigma_{k-i} and the total sum_i sigma_i = w_1.
// `weights` holds either ceil(n/2) values, or all n, in which case the
// symmetry w_k = w_{n-k+1} is also checked. Throws InconsistentReadout when a
// value leaves {0,1,2} (or {0,1} at an odd centre), or symmetry fails.
SigmaSequence sigma_from_weights(std::span<const int> weights, int n);
SigmaSequence sigma_of_string(const BitString& s);

// Componentwise whole - part. Throws InvalidComplement on underflow or an
// empty result.
Composition complement(const Composition& whole, const Composition& part);

// n+1 terms; term i multiplies term i-1 by x for a 1 and by y for a 0.
std::vector<PolyTerm> bivariate_poly(const BitString& s);

}  // namespace polycomp
