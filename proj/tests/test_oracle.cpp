#include <map>
#include <set>

#include "doctest.h"
#include "polycomp/errors.hpp"
#include "polycomp/oracle.hpp"
#include "support.hpp"

using namespace polycomp;
using support::bs;

TEST_CASE("equicomposability") {
  CHECK(equicomposable(bs("001010111"), bs("001010111")));
  CHECK_FALSE(equicomposable(bs("0011"), bs("0101")));
  CHECK_THROWS_AS(equicomposable(bs("001"), bs("0011")), DomainError);
  for (int n = 1; n <= 10; ++n) {
    for (const auto& text : oracle::all_strings(n)) REQUIRE(equicomposable(bs(text), bs(text).reversed()));
  }
}

TEST_CASE("class counts") {
  CHECK(count_classes(2).count == 3);
  CHECK(count_classes(6).count == 36);
  CHECK(count_classes(7).count == 72);
  CHECK(max_code_bound(2) == 3);
  CHECK(max_code_bound(6) == 36);
  CHECK(max_code_bound(9) == 272);
  CHECK_THROWS_AS(count_classes(21), ResourceError);
  for (int n = 1; n <= 7; ++n) CHECK(count_classes(n).count == max_code_bound(n));
}

TEST_CASE("class counts agree with sorting readouts") {
  for (int n = 1; n <= 14; ++n) {
    std::map<std::vector<oracle::Multiset>, std::string> first;
    for (const auto& text : oracle::all_strings(n)) first.emplace(oracle::readout(text), text);
    const auto got = count_classes(n);
    REQUIRE(got.count == first.size());
    REQUIRE(got.count <= max_code_bound(n));
    std::set<std::string> reps;
    for (const auto& [r, text] : first) reps.insert(text);
    std::set<std::string> got_reps;
    for (const auto& s : got.representatives) got_reps.insert(s.to_string());
    REQUIRE(got_reps == reps);
    REQUIRE(std::is_sorted(got.representatives.begin(), got.representatives.end()));
  }
}

TEST_CASE("single-error guarantees at moderate n") {
  for (int n = 7; n <= 10; ++n) {
    const auto spec = CodebookSpec::make(Family::SR, n);
    const auto a = verify_code_property(spec, ErrorModel::AsymDelete, 1);
    CHECK(a.ok);
    CHECK(a.codewords == codebook_size(spec));
    CHECK(verify_code_property(spec, ErrorModel::SymPairDelete, 1).ok);
    CHECK_FALSE(find_confusable_pair(n, ErrorModel::AsymDelete, 1).has_value());
  }
  CHECK_FALSE(find_confusable_pair(9, ErrorModel::SymPairDelete, 1).has_value());
  CHECK(verify_code_property(CodebookSpec::make(Family::SDS2, 12), ErrorModel::SymPairDelete, 2).ok);
  CHECK_THROWS_AS(verify_code_property(CodebookSpec::make(Family::SR, 21), ErrorModel::AsymDelete, 1), ResourceError);
}

TEST_CASE("witnesses are independently checkable") {
  const auto v = verify_code_property(CodebookSpec::make(Family::SR, 6), ErrorModel::SymPairDelete, 1);
  REQUIRE_FALSE(v.ok);
  REQUIRE(v.witness.has_value());
  const auto& w = *v.witness;
  CHECK(w.s.to_string() == "001101");
  CHECK(w.v.to_string() == "010011");
  CHECK(w.pattern == std::vector<int>{3, 4});
  CHECK(recheck_witness(w));

  // Outside the pattern the string oracle sees identical windows.
  const auto rs = oracle::readout(w.s.to_string());
  const auto rv = oracle::readout(w.v.to_string());
  for (int k = 1; k <= 6; ++k) {
    const bool lost = std::find(w.pattern.begin(), w.pattern.end(), k) != w.pattern.end();
    CHECK((rs[k] == rv[k]) != lost);
  }

  const auto [is, iv] = insertion_collision(w);
  CHECK(is == iv);
  CHECK(is.oversized_classes() == w.pattern);

  auto forged = w;
  forged.v = bs("000111");
  CHECK_FALSE(recheck_witness(forged));
  forged = w;
  forged.pattern = {3};
  CHECK_FALSE(recheck_witness(forged));
}

TEST_CASE("skew witnesses") {
  // SR without a guarantee for two skews in one pair.
  const auto v = verify_code_property(CodebookSpec::make(Family::SR, 8), ErrorModel::Skew, 2);
  if (!v.ok) {
    REQUIRE(v.witness.has_value());
    CHECK(recheck_witness(*v.witness));
  }
  CHECK(verify_code_property(CodebookSpec::make(Family::SR, 9), ErrorModel::Skew, 1).ok);
  CHECK(verify_code_property(CodebookSpec::make(Family::SDA, 10, 2), ErrorModel::Skew, 2).ok);
}

TEST_CASE("confusable pairs for two symmetric pair deletions") {
  const auto w = find_confusable_pair(8, ErrorModel::SymPairDelete, 2);
  REQUIRE(w.has_value());
  CHECK(recheck_witness(*w));
  CHECK(is_member(CodebookSpec::make(Family::SR, 8), w->s));
  CHECK(is_member(CodebookSpec::make(Family::SR, 8), w->v));
  CHECK(w->s != w->v);
}
