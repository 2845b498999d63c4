#pragma once

// Reconstruction codebooks: membership predicates, lexicographic enumeration
// and enumerative rank/unrank for
//
//   SR        composition-reconstructable code
//   SCA1      single composition-error code (predicate and enumeration only)
//   SDA(t)    t-asymmetric multiset deletion code
//   SDS2(a)   2-symmetric multiset deletion code, sum of w_i = a (mod 7)
//   SDSprime  t-symmetric consecutive multiset deletion code, modulus A(t)

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polycomp/composition.hpp"

namespace polycomp {

enum class Family { SR, SCA1, SDA, SDS2, SDSprime };

std::string_view to_string(Family f);
// Throws SpecError.
Family parse_family(std::string_view name);

struct CodebookSpec {
  Family family = Family::SR;
  int n = 2;
  int t = 1;  // meaningful for SDA and SDSprime; normalised to 1 otherwise
  int a = 0;  // residue for SDS2, SDSprime, SCA1

  // 7 for SDS2, A(t) for SDSprime, 3 for SCA1, 1 otherwise.
  int modulus() const;
  // Throws SpecError on any invariant violation.
  void validate() const;

  // Normalises t for families without a t parameter, then validates.
  static CodebookSpec make(Family family, int n, int t = 1, int a = 0);

  friend bool operator==(const CodebookSpec&, const CodebookSpec&) = default;
};

std::string describe(const CodebookSpec& spec);

// Every nonempty prefix has strictly more 0s than 1s. The empty string passes.
bool is_catalan_bertrand(const BitString& x);
// Every prefix of length >= t has at least t more 0s than 1s.
bool is_t_dominated(const BitString& x, int t);

// First-half positions i in {2, ..., floor(n/2)} with s_i != s_{n+1-i}, 1-based.
struct AntiSymmetricIndexSet {
  std::vector<int> indices;

  // The bits of s at `indices`, in order.
  BitString selected(const BitString& s) const;
};

AntiSymmetricIndexSet anti_symmetric_indices(const BitString& s);

// Throws SpecError if |s| != spec.n.
bool is_member(const CodebookSpec& spec, const BitString& s);

// Acceptor that reads a candidate codeword one mirrored pair (s_p, s_{n+1-p})
// at a time, p = 1..floor(n/2), followed by the centre bit when n is odd.
// Shared by enumeration, rank/unrank and the decoders' membership pruning.
class PairAutomaton {
 public:
  struct State {
    int diff = 0;     // zeros minus ones in the selected substring so far
    int length = 0;   // selected substring length, saturating at the dominance threshold
    int count = 0;    // |I| so far, saturating at the required minimum
    int residue = 0;  // sum of w_i so far, mod the family modulus
    int parity = 0;   // weight so far, mod 2

    friend auto operator<=>(const State&, const State&) = default;
  };

  explicit PairAutomaton(const CodebookSpec& spec);

  int pairs() const noexcept { return n_ / 2; }
  bool has_center() const noexcept { return n_ % 2 == 1; }

  State start() const noexcept { return State{}; }
  std::optional<State> step(const State& state, int p, bool left, bool right) const;
  // `center` must be set iff n is odd.
  bool accepts(const State& state, std::optional<bool> center) const;

 private:
  enum class Role { Anchor, Starred, Inner };
  Role role(int p) const noexcept;

  int n_;
  int dominance_;
  int min_count_;
  int modulus_;
  int residue_;
  bool even_weight_;
  bool starred_;
  std::vector<int> coefficient_;  // weight of sigma_p in sum_{i<=ceil(n/2)} w_i
};

constexpr int kEnumerationCap = 26;

// Members in lexicographic order. Throws ResourceError if n > cap.
std::vector<BitString> enumerate(const CodebookSpec& spec, int cap = kEnumerationCap);

std::uint64_t codebook_size(const CodebookSpec& spec);
// Index of s in the lexicographic enumeration. Throws DomainError for non-members.
std::uint64_t rank(const CodebookSpec& spec, const BitString& s);
// Throws DomainError if index >= codebook_size(spec).
BitString unrank(const CodebookSpec& spec, std::uint64_t index);

// ceil(4t^3/3 + 2t/3 - 31/4), the SDSprime modulus. Throws DomainError for t < 2.
int modulus_A(int t);
// Same expression with -35/4: the weight-sum difference bound that the
// modulus has to exceed.
int weight_sum_difference_bound(int t);

// Upper bound on redundancy in bits for the family's construction.
// Throws DomainError where the expression is undefined (e.g. n <= 2t for SDA).
double redundancy_bound(const CodebookSpec& spec);
// Binomial-sum lower bound on |SDA(t)(n)|. Throws DomainError for other families.
std::uint64_t size_lower_bound(const CodebookSpec& spec);

// Closed-form redundancy expressions for the substitution codes that are not
// built here; reported for comparison only.
double redundancy_formula_asymmetric_substitution(int n, int t);
double redundancy_formula_symmetric_substitution(int n, int t);

}  // namespace polycomp
