#include <map>
#include <set>

#include "doctest.h"
#include "polycomp/channel.hpp"
#include "polycomp/errors.hpp"
#include "polycomp/oracle.hpp"
#include "polycomp/reconstruct.hpp"
#include "support.hpp"

using namespace polycomp;
using support::bs;

namespace {

const BitString kWorked = bs("001010111");
const CodebookSpec kSR9 = CodebookSpec::make(Family::SR, 9);

Readout without(const Readout& r, const std::vector<int>& classes) {
  Readout out = r;
  for (int k : classes) out.erase(k);
  return out;
}

// Reference consistent set for a deletion pattern, from the string oracles.
std::vector<std::string> reference_set(const CodebookSpec& spec, const std::string& s, const std::vector<int>& lost) {
  std::set<int> keep;
  for (int k = 1; k <= spec.n; ++k) keep.insert(k);
  for (int k : lost) keep.erase(k);
  return oracle::consistent(spec.n, oracle::readout(s), keep, [&](const std::string& v) { return is_member(spec, bs(v)); });
}

// Every member under every maximal pattern: the decoder recovers it and the
// brute-force decoder agrees.
void round_trip(const CodebookSpec& spec, ErrorModel model, int t) {
  const auto members = enumerate(spec);
  const auto patterns = maximal_patterns(model, spec.n, t);
  for (const auto& s : members) {
    const auto clean = full_readout(s);
    for (const auto& p : patterns) {
      const auto r = without(clean, p);
      const auto report = decode_deletions(r, spec);
      INFO(describe(spec), " ", s.to_string());
      REQUIRE(report.ok());
      REQUIRE(*report.result == s);
      REQUIRE(report.dropped_classes == p);
      const auto reference = brute_force_decode(r, spec);
      REQUIRE(reference.consistent_set == std::vector<BitString>{s});
    }
  }
}

}  // namespace

TEST_CASE("reconstruct from a clean readout") {
  const auto report = reconstruct(full_readout(kWorked), kSR9);
  REQUIRE(report.ok());
  CHECK(report.result->to_string() == "001010111");
  CHECK(report.dropped_classes.empty());
  CHECK(report.pattern == "none");

  const auto plain = reconstruct(full_readout(bs("01")));
  REQUIRE(plain.ok());
  CHECK(plain.result->to_string() == "01");
}

TEST_CASE("reconstruct returns the string or its reversal") {
  for (int n = 1; n <= 12; ++n) {
    for (const auto& text : oracle::all_strings(n)) {
      const auto s = bs(text);
      const auto report = reconstruct(full_readout(s));
      REQUIRE(report.ok());
      REQUIRE(full_readout(*report.result) == full_readout(s));
      if (n <= 7) REQUIRE((*report.result == s || *report.result == s.reversed()));
      if (n >= 2 && is_member(CodebookSpec::make(Family::SR, n), s)) {
        REQUIRE(*reconstruct(full_readout(s), CodebookSpec::make(Family::SR, n)).result == s);
      }
    }
  }
}

TEST_CASE("reversed members decode to the member orientation") {
  const auto spec = CodebookSpec::make(Family::SR, 10);
  SeededRng rng(2024);
  for (int i = 0; i < 50; ++i) {
    const auto s = unrank(spec, rng.below(codebook_size(spec)));
    REQUIRE(equicomposable(s, s.reversed()));
    const auto report = reconstruct(full_readout(s.reversed()), spec);
    REQUIRE(report.ok());
    CHECK(*report.result == s);
  }
}

TEST_CASE("non-members and corrupted readouts are refused") {
  const auto report = reconstruct(full_readout(bs("101010111")), kSR9);
  CHECK(report.status == DecodeStatus::Undecodable);
  const auto missing = reconstruct(without(full_readout(kWorked), {3}), kSR9);
  CHECK(missing.status == DecodeStatus::Undecodable);
  CHECK_THROWS_AS(decode_deletions(full_readout(bs("0011")), kSR9), SpecError);
}

TEST_CASE("deletion examples") {
  const auto single = decode_deletions(without(full_readout(kWorked), {3}), kSR9);
  REQUIRE(single.ok());
  CHECK(*single.result == kWorked);
  CHECK(single.dropped_classes == std::vector<int>{3});
  CHECK(single.pattern == "asymmetric");

  const auto pair = decode_deletions(without(full_readout(kWorked), {3, 7}), kSR9);
  REQUIRE(pair.ok());
  CHECK(*pair.result == kWorked);
  CHECK(pair.pattern == "symmetric");

  const auto reference = brute_force_decode(without(full_readout(kWorked), {3}), kSR9);
  CHECK(reference.consistent_set == std::vector<BitString>{kWorked});
  CHECK(brute_force_decode(full_readout(kWorked), kSR9).consistent_set == std::vector<BitString>{kWorked});
}

TEST_CASE("undersized classes count as deleted") {
  auto r = full_readout(kWorked);
  LengthClass c = r.at(4);
  c.remove(c.entries().front().first);
  r.put(c);
  const auto report = decode_deletions(r, kSR9);
  REQUIRE(report.ok());
  CHECK(report.dropped_classes == std::vector<int>{4});
  CHECK(*report.result == kWorked);
}

TEST_CASE("unsupported patterns are refused unless allowed") {
  const auto r = without(full_readout(kWorked), {2, 3});
  const auto report = decode_deletions(r, kSR9);
  CHECK(report.status == DecodeStatus::Unsupported);
  CHECK_FALSE(report.reason.empty());
  DecodeOptions options;
  options.allow_unsupported = true;
  const auto forced = decode_deletions(r, kSR9, options);
  CHECK(forced.status != DecodeStatus::Unsupported);

  auto inflated = full_readout(kWorked);
  LengthClass c = inflated.at(5);
  c.add({3, 2});
  inflated.put(c);
  CHECK(decode_deletions(inflated, kSR9).status == DecodeStatus::Unsupported);
}

TEST_CASE("pattern classification and support") {
  CHECK(classify_pattern(9, {}) == "none");
  CHECK(classify_pattern(9, {3}) == "asymmetric");
  CHECK(classify_pattern(9, {3, 7}) == "symmetric");
  CHECK(classify_pattern(9, {2, 3, 7}) == "mixed");
  CHECK(classify_pattern(9, {5}) == "asymmetric");

  CHECK(pattern_supported(kSR9, {3}));
  CHECK(pattern_supported(kSR9, {3, 7}));
  CHECK_FALSE(pattern_supported(kSR9, {2, 3}));
  const auto sda = CodebookSpec::make(Family::SDA, 12, 2);
  CHECK(pattern_supported(sda, {11, 12}));
  CHECK_FALSE(pattern_supported(sda, {2, 3, 4}));
  CHECK_FALSE(pattern_supported(sda, {3, 10, 4}));
  const auto sds2 = CodebookSpec::make(Family::SDS2, 12);
  CHECK(pattern_supported(sds2, {2, 5, 8, 11}));
  CHECK_FALSE(pattern_supported(sds2, {1, 2, 5, 8, 11, 12}));
  const auto prime = CodebookSpec::make(Family::SDSprime, 12, 2);
  CHECK(pattern_supported(prime, {4, 5, 8, 9}));
  CHECK_FALSE(pattern_supported(prime, {2, 5, 8, 11}));
  CHECK(pattern_supported(prime, {2, 5, 8, 11}, true));
  CHECK_FALSE(pattern_supported(CodebookSpec::make(Family::SCA1, 12), {3}));
}

TEST_CASE("insertion example and the clean case") {
  auto r = full_readout(kWorked);
  LengthClass c = r.at(7);
  c.add({1, 6});
  r.put(c);
  const auto report = decode_insertions(r, kSR9);
  REQUIRE(report.ok());
  CHECK(*report.result == kWorked);
  CHECK(report.dropped_classes == std::vector<int>{7});

  const auto clean = decode_insertions(full_readout(kWorked), kSR9);
  const auto direct = reconstruct(full_readout(kWorked), kSR9);
  CHECK(clean.result == direct.result);
  CHECK(clean.dropped_classes.empty());
}

TEST_CASE("skew example") {
  Skew sk{7, {2, 5}, {3, 4}};
  ErrorSpec e;
  e.model = ErrorModel::Skew;
  e.skews.push_back(sk);
  const auto r = apply(full_readout(kWorked), e);
  CHECK(r.at(7).cumulative_weight() == 11);
  CHECK(r.at(3).cumulative_weight() == 12);
  const auto report = decode_skewed(r, kSR9);
  REQUIRE(report.ok());
  CHECK(*report.result == kWorked);
  CHECK(report.dropped_classes == std::vector<int>{7});
}

TEST_CASE("decoders agree with the string oracle") {
  for (int n = 6; n <= 10; ++n) {
    const auto spec = CodebookSpec::make(Family::SR, n);
    for (const auto& s : enumerate(spec)) {
      for (auto model : {ErrorModel::AsymDelete, ErrorModel::SymPairDelete}) {
        for (const auto& p : maximal_patterns(model, n, 1)) {
          const auto report = decode_deletions(without(full_readout(s), p), spec);
          const auto reference = reference_set(spec, s.to_string(), p);
          if (reference.size() == 1) {
            REQUIRE(report.ok());
            REQUIRE(report.result->to_string() == reference.front());
          } else {
            REQUIRE(report.status == DecodeStatus::Ambiguous);
          }
        }
      }
    }
  }
}

TEST_CASE("SR round trips under one deletion") {
  for (int n = 7; n <= 12; ++n) {
    const auto spec = CodebookSpec::make(Family::SR, n);
    round_trip(spec, ErrorModel::AsymDelete, 1);
    round_trip(spec, ErrorModel::SymPairDelete, 1);
  }
}

TEST_CASE("SR(6) cannot absorb losing its central pair") {
  const auto spec = CodebookSpec::make(Family::SR, 6);
  const auto r = without(full_readout(bs("001101")), {3, 4});
  const auto reference = reference_set(spec, "001101", {3, 4});
  CHECK(reference == std::vector<std::string>{"001101", "010011"});
  CHECK(decode_deletions(r, spec).status == DecodeStatus::Ambiguous);
  CHECK(brute_force_decode(r, spec).consistent_set.size() == 2);
}

TEST_CASE("constrained families round trip within their guarantee") {
  for (int n : {9, 10, 11}) {
    round_trip(CodebookSpec::make(Family::SDA, n, 2), ErrorModel::AsymDelete, 2);
    for (int a = 0; a < 7; ++a) round_trip(CodebookSpec::make(Family::SDS2, n, 1, a), ErrorModel::SymPairDelete, 2);
  }
  round_trip(CodebookSpec::make(Family::SDA, 12, 3), ErrorModel::AsymDelete, 3);
  for (int a = 0; a < 5; ++a) {
    round_trip(CodebookSpec::make(Family::SDSprime, 12, 2, a), ErrorModel::ConsecutiveSymPairDelete, 2);
  }
}

TEST_CASE("SDA(2)(12) without its two longest classes") {
  const auto spec = CodebookSpec::make(Family::SDA, 12, 2);
  for (const auto& s : enumerate(spec)) {
    const auto report = decode_deletions(without(full_readout(s), {11, 12}), spec);
    REQUIRE(report.ok());
    REQUIRE(*report.result == s);
  }
}

TEST_CASE("insertion and deletion decoders coincide") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int n = 9 + static_cast<int>(seed % 4);
    const auto spec = CodebookSpec::make(Family::SDA, n, 2);
    const auto s = unrank(spec, mix_seed(seed) % codebook_size(spec));
    const auto clean = full_readout(s);
    const int count = 1 + static_cast<int>(seed % 2);
    const auto e = random_error(ErrorModel::Insert, count, seed, n, 1 + static_cast<int>(seed % 3));
    const auto inserted = apply(clean, e);
    const auto by_insertion = decode_insertions(inserted, spec);
    const auto by_deletion = decode_deletions(without(clean, inserted.oversized_classes()), spec);
    REQUIRE(by_insertion.status == by_deletion.status);
    REQUIRE(by_insertion.result == by_deletion.result);
    REQUIRE(by_insertion.dropped_classes == by_deletion.dropped_classes);
  }
}

TEST_CASE("two inflated classes in SDA(2)(12)") {
  const auto spec = CodebookSpec::make(Family::SDA, 12, 2);
  int decoded = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto s = unrank(spec, mix_seed(seed) % codebook_size(spec));
    const auto e = random_error(ErrorModel::Insert, 2, seed, 12, 3);
    const auto r = apply(full_readout(s), e);
    const auto report = decode_insertions(r, spec);
    const auto lost = r.oversized_classes();
    if (!pattern_supported(spec, lost)) {
      REQUIRE(report.status == DecodeStatus::Unsupported);
      continue;
    }
    REQUIRE(report.ok());
    REQUIRE(*report.result == s);
    REQUIRE(brute_force_decode(without(r, lost), spec).consistent_set == std::vector<BitString>{s});
    ++decoded;
  }
  CHECK(decoded > 150);
}

TEST_CASE("every single skew in SR(8..10)") {
  for (int n = 8; n <= 10; ++n) {
    const auto spec = CodebookSpec::make(Family::SR, n);
    for (const auto& s : enumerate(spec)) {
      const auto clean = full_readout(s);
      for (const auto& [k, c] : clean.classes()) {
        for (const auto& [from, mult] : c.entries()) {
          for (int w = 0; w < from.ones; ++w) {
            ErrorSpec e;
            e.model = ErrorModel::Skew;
            e.skews.push_back(Skew{k, from, Composition{k - w, w}});
            const auto report = decode_skewed(apply(clean, e), spec);
            INFO(s.to_string(), " class ", k);
            REQUIRE(report.ok());
            REQUIRE(*report.result == s);
          }
        }
      }
    }
  }
}

TEST_CASE("seeded double skews in SDA(2)(12)") {
  const auto spec = CodebookSpec::make(Family::SDA, 12, 2);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto s = unrank(spec, mix_seed(seed) % codebook_size(spec));
    const auto clean = full_readout(s);
    const auto r = apply(clean, random_error(ErrorModel::Skew, 2, seed, clean));
    const auto report = decode_skewed(r, spec);
    REQUIRE(report.ok());
    REQUIRE(*report.result == s);
  }
}

TEST_CASE("successful decodes reproduce the surviving classes") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto spec = CodebookSpec::make(Family::SDS2, 12, 1, static_cast<int>(seed % 7));
    const auto s = unrank(spec, mix_seed(seed) % codebook_size(spec));
    const auto r = apply(full_readout(s), random_error(ErrorModel::SymPairDelete, 2, seed, 12));
    const auto report = decode_deletions(r, spec);
    REQUIRE(report.ok());
    const auto again = full_readout(*report.result);
    for (const auto& [k, c] : r.classes()) REQUIRE(again.at(k) == c);
  }
}

TEST_CASE("failed branches are caught within t+1 steps") {
  std::map<int, int> worst;
  for (int t = 1; t <= 3; ++t) {
    for (int n = 2 * t + 4; n <= 12; ++n) {
      const auto spec = CodebookSpec::make(Family::SDA, n, t);
      for (const auto& s : enumerate(spec)) {
        for (const auto& p : maximal_patterns(ErrorModel::AsymDelete, n, t)) {
          const auto report = decode_deletions(without(full_readout(s), p), spec);
          REQUIRE(report.ok());
          worst[t] = std::max(worst[t], report.max_detection_lag);
        }
      }
    }
  }
  for (const auto& [t, lag] : worst) {
    INFO("t = ", t, " worst lag ", lag);
    CHECK(lag <= t + 1);
  }
}

TEST_CASE("brute force reports ambiguity past the guarantee") {
  const auto w = find_confusable_pair(12, ErrorModel::SymPairDelete, 2);
  REQUIRE(w.has_value());
  const auto spec = CodebookSpec::make(Family::SR, 12);
  std::set<int> pairs;
  for (int k : w->pattern) pairs.insert(pair_index(12, k));
  std::vector<int> lost;
  for (int q : pairs) {
    lost.push_back(q);
    lost.push_back(partner(12, q));
  }
  const auto report = brute_force_decode(without(full_readout(w->s), lost), spec);
  CHECK(report.status == DecodeStatus::Ambiguous);
  CHECK(report.consistent_set.size() >= 2);
  CHECK_THROWS_AS(brute_force_decode(full_readout(w->s), spec, 10), ResourceError);
}
