#include "polycomp/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "polycomp/errors.hpp"

namespace polycomp {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::SR: return "SR";
    case Family::SCA1: return "SCA1";
    case Family::SDA: return "SDA";
    case Family::SDS2: return "SDS2";
    case Family::SDSprime: return "SDSprime";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::SR, Family::SCA1, Family::SDA, Family::SDS2, Family::SDSprime}) {
    if (name == to_string(f)) return f;
  }
  throw SpecError("unknown codebook family '" + std::string(name) + "'");
}

int CodebookSpec::modulus() const {
  switch (family) {
    case Family::SDS2: return 7;
    case Family::SDSprime: return modulus_A(t);
    case Family::SCA1: return 3;
    default: return 1;
  }
}

void CodebookSpec::validate() const {
  const std::string name(to_string(family));
  if (n < 2 || n > static_cast<int>(BitString::kMaxLength)) {
    throw SpecError(name + ": n must lie in [2, " + std::to_string(BitString::kMaxLength) + "]");
  }
  if (t < 1) throw SpecError(name + ": t must be >= 1");
  if (family == Family::SDSprime) {
    if (t < 2) throw SpecError("SDSprime requires t >= 2");
    if (n < 2 * t + 4) throw SpecError("SDSprime requires n >= 2t+4");
  }
  if (family == Family::SCA1 && n < 4) throw SpecError("SCA1 requires n >= 4");
  if (a < 0 || a >= modulus()) {
    throw SpecError(name + ": residue a must lie in [0, " + std::to_string(modulus()) + ")");
  }
}

CodebookSpec CodebookSpec::make(Family family, int n, int t, int a) {
  CodebookSpec spec{family, n, (family == Family::SDA || family == Family::SDSprime) ? t : 1, a};
  spec.validate();
  return spec;
}

std::string describe(const CodebookSpec& spec) {
  std::string out(to_string(spec.family));
  out += "(n=" + std::to_string(spec.n);
  if (spec.family == Family::SDA || spec.family == Family::SDSprime) out += ", t=" + std::to_string(spec.t);
  if (spec.modulus() > 1) out += ", a=" + std::to_string(spec.a);
  return out + ")";
}

bool is_catalan_bertrand(const BitString& x) { return is_t_dominated(x, 1); }

bool is_t_dominated(const BitString& x, int t) {
  int diff = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    diff += x[i] ? -1 : 1;
    if (static_cast<int>(i) + 1 >= t && diff < t) return false;
  }
  return true;
}

BitString AntiSymmetricIndexSet::selected(const BitString& s) const {
  BitString out(0, indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) out.set(j, s[static_cast<std::size_t>(indices[j] - 1)]);
  return out;
}

AntiSymmetricIndexSet anti_symmetric_indices(const BitString& s) {
  const int n = static_cast<int>(s.size());
  AntiSymmetricIndexSet out;
  for (int i = 2; i <= n / 2; ++i) {
    if (s[static_cast<std::size_t>(i - 1)] != s[static_cast<std::size_t>(n - i)]) out.indices.push_back(i);
  }
  return out;
}

namespace {

// Reconstructable shape for even n, extended to odd n by dropping the centre, with
// the selected substring held to `dominance` and |I| >= min_count.
bool reconstructable_shape(const BitString& s, int dominance, int min_count) {
  if (s.size() % 2 == 1) return reconstructable_shape(s.erased(s.size() / 2), dominance, min_count);
  if (s.size() < 2 || s[0] || !s[s.size() - 1]) return false;
  const auto index_set = anti_symmetric_indices(s);
  if (static_cast<int>(index_set.indices.size()) < min_count) return false;
  return is_t_dominated(index_set.selected(s), dominance);
}

}  // namespace

bool is_member(const CodebookSpec& spec, const BitString& s) {
  if (static_cast<int>(s.size()) != spec.n) {
    throw SpecError(describe(spec) + ": string of length " + std::to_string(s.size()));
  }
  switch (spec.family) {
    case Family::SR:
      return reconstructable_shape(s, 1, 0);
    case Family::SDA:
      return reconstructable_shape(s, spec.t, spec.t);
    case Family::SDS2:
    case Family::SDSprime:
      return reconstructable_shape(s, 1, 0) && half_weight_sum(s) % spec.modulus() == spec.a;
    case Family::SCA1: {
      const std::size_t n = s.size();
      const BitString inner = s.erased(n - 2).erased(1);
      return reconstructable_shape(inner, 1, 0) && s.weight() % 2 == 0 && half_weight_sum(s) % 3 == spec.a &&
             s[1] <= s[n - 2];
    }
  }
  return false;
}

PairAutomaton::PairAutomaton(const CodebookSpec& spec)
    : n_(spec.n),
      dominance_(spec.family == Family::SDA ? spec.t : 1),
      min_count_(spec.family == Family::SDA ? spec.t : 0),
      modulus_(spec.modulus()),
      residue_(spec.a),
      even_weight_(spec.family == Family::SCA1),
      starred_(spec.family == Family::SCA1) {
  spec.validate();
  const int m = half_up(n_);
  coefficient_.assign(static_cast<std::size_t>(m) + 1, 0);
  for (int p = 1; p <= m; ++p) coefficient_[static_cast<std::size_t>(p)] = (p * m - p * (p - 1) / 2) % modulus_;
}

PairAutomaton::Role PairAutomaton::role(int p) const noexcept {
  if (p == 1) return Role::Anchor;
  if (starred_ && p == 2) return Role::Starred;
  return Role::Inner;
}

std::optional<PairAutomaton::State> PairAutomaton::step(const State& state, int p, bool left, bool right) const {
  State next = state;
  switch (role(p)) {
    case Role::Anchor:
      if (left || !right) return std::nullopt;
      break;
    case Role::Starred:
      if (left && !right) return std::nullopt;
      break;
    case Role::Inner:
      if (left != right) {
        const bool reached = state.length + 1 >= dominance_;
        next.length = std::min(state.length + 1, dominance_);
        next.diff += left ? -1 : 1;
        if (reached && next.diff < dominance_) return std::nullopt;
        next.count = std::min(state.count + 1, min_count_);
      }
      break;
  }
  const int sigma = static_cast<int>(left) + static_cast<int>(right);
  next.residue = (state.residue + coefficient_[static_cast<std::size_t>(p)] * sigma) % modulus_;
  next.parity = (state.parity + sigma) % 2;
  return next;
}

bool PairAutomaton::accepts(const State& state, std::optional<bool> center) const {
  State last = state;
  if (has_center()) {
    if (!center) return false;
    const int sigma = *center ? 1 : 0;
    last.residue = (last.residue + coefficient_[static_cast<std::size_t>(half_up(n_))] * sigma) % modulus_;
    last.parity = (last.parity + sigma) % 2;
  } else if (center) {
    return false;
  }
  return last.count >= min_count_ && last.residue == residue_ && (!even_weight_ || last.parity == 0);
}

namespace {

// -1 free, 0/1 pinned; indexed by 0-based position.
using Pins = std::vector<int>;

bool allowed(const Pins& pins, int pos, bool bit) { return pins[static_cast<std::size_t>(pos)] < 0 || pins[static_cast<std::size_t>(pos)] == int{bit}; }

std::uint64_t count_completions(const PairAutomaton& automaton, int n, const Pins& pins) {
  using State = PairAutomaton::State;
  std::map<State, std::uint64_t> layer{{automaton.start(), 1}};
  for (int p = 1; p <= n / 2; ++p) {
    std::map<State, std::uint64_t> next;
    for (const auto& [state, ways] : layer) {
      for (bool left : {false, true}) {
        if (!allowed(pins, p - 1, left)) continue;
        for (bool right : {false, true}) {
          if (!allowed(pins, n - p, right)) continue;
          if (auto s = automaton.step(state, p, left, right)) next[*s] += ways;
        }
      }
    }
    layer = std::move(next);
  }
  std::uint64_t total = 0;
  for (const auto& [state, ways] : layer) {
    if (automaton.has_center()) {
      for (bool c : {false, true}) {
        if (allowed(pins, n / 2, c) && automaton.accepts(state, c)) total += ways;
      }
    } else if (automaton.accepts(state, std::nullopt)) {
      total += ways;
    }
  }
  return total;
}

void generate(const PairAutomaton& automaton, int n, int p, const PairAutomaton::State& state, BitString& word,
              std::vector<BitString>& out) {
  if (p > n / 2) {
    if (automaton.has_center()) {
      for (bool c : {false, true}) {
        if (automaton.accepts(state, c)) {
          word.set(static_cast<std::size_t>(n / 2), c);
          out.push_back(word);
        }
      }
    } else if (automaton.accepts(state, std::nullopt)) {
      out.push_back(word);
    }
    return;
  }
  for (bool left : {false, true}) {
    for (bool right : {false, true}) {
      if (auto next = automaton.step(state, p, left, right)) {
        word.set(static_cast<std::size_t>(p - 1), left);
        word.set(static_cast<std::size_t>(n - p), right);
        generate(automaton, n, p + 1, *next, word, out);
      }
    }
  }
}

}  // namespace

std::vector<BitString> enumerate(const CodebookSpec& spec, int cap) {
  spec.validate();
  if (spec.n > cap) {
    throw ResourceError("enumeration of " + describe(spec) + " exceeds cap n <= " + std::to_string(cap));
  }
  const PairAutomaton automaton(spec);
  std::vector<BitString> out;
  BitString word(0, static_cast<std::size_t>(spec.n));
  generate(automaton, spec.n, 1, automaton.start(), word, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t codebook_size(const CodebookSpec& spec) {
  const PairAutomaton automaton(spec);
  return count_completions(automaton, spec.n, Pins(static_cast<std::size_t>(spec.n), -1));
}

std::uint64_t rank(const CodebookSpec& spec, const BitString& s) {
  if (!is_member(spec, s)) throw DomainError(s.to_string() + " is not a member of " + describe(spec));
  const PairAutomaton automaton(spec);
  Pins pins(static_cast<std::size_t>(spec.n), -1);
  std::uint64_t index = 0;
  for (int j = 0; j < spec.n; ++j) {
    if (s[static_cast<std::size_t>(j)]) {
      pins[static_cast<std::size_t>(j)] = 0;
      index += count_completions(automaton, spec.n, pins);
    }
    pins[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j)] ? 1 : 0;
  }
  return index;
}

BitString unrank(const CodebookSpec& spec, std::uint64_t index) {
  const PairAutomaton automaton(spec);
  Pins pins(static_cast<std::size_t>(spec.n), -1);
  if (index >= count_completions(automaton, spec.n, pins)) {
    throw DomainError("index " + std::to_string(index) + " out of range for " + describe(spec));
  }
  BitString out(0, static_cast<std::size_t>(spec.n));
  for (int j = 0; j < spec.n; ++j) {
    pins[static_cast<std::size_t>(j)] = 0;
    const std::uint64_t zeros = count_completions(automaton, spec.n, pins);
    if (index >= zeros) {
      index -= zeros;
      pins[static_cast<std::size_t>(j)] = 1;
      out.set(static_cast<std::size_t>(j), true);
    }
  }
  return out;
}

namespace {

// ceil((16t^3 + 8t - c) / 12) for a positive numerator.
int ceil_twelfths(long numerator) {
  if (numerator <= 0) return static_cast<int>(-((-numerator) / 12));
  return static_cast<int>((numerator + 11) / 12);
}

unsigned __int128 binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  unsigned __int128 out = 1;
  for (int i = 1; i <= k; ++i) out = out * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return out;
}

}  // namespace

int modulus_A(int t) {
  if (t < 2) throw DomainError("modulus A(t) requires t >= 2");
  const long tt = t;
  return ceil_twelfths(16 * tt * tt * tt + 8 * tt - 93);
}

int weight_sum_difference_bound(int t) {
  if (t < 2) throw DomainError("weight-sum difference bound requires t >= 2");
  const long tt = t;
  return ceil_twelfths(16 * tt * tt * tt + 8 * tt - 105);
}

double redundancy_bound(const CodebookSpec& spec) {
  spec.validate();
  const double n = spec.n;
  switch (spec.family) {
    case Family::SR:
      return 0.5 * std::log2(n) + 5.0;
    case Family::SCA1:
    case Family::SDS2:
      return 0.5 * std::log2(n - 2.0) + 8.0;
    case Family::SDA:
      if (spec.n <= 2 * spec.t) throw DomainError("SDA redundancy bound requires n > 2t");
      return 0.5 * std::log2(n - 2.0 * spec.t) + 2.0 * spec.t + 3.0;
    case Family::SDSprime:
      return 0.5 * std::log2(n - 2.0) + std::log2(static_cast<double>(modulus_A(spec.t))) + 5.0;
  }
  throw DomainError("no redundancy bound for this family");
}

std::uint64_t size_lower_bound(const CodebookSpec& spec) {
  spec.validate();
  if (spec.family != Family::SDA) throw DomainError("size lower bound is defined for SDA only");
  if (spec.n % 2 == 1) return 2 * size_lower_bound(CodebookSpec::make(Family::SDA, spec.n - 1, spec.t));
  const int h = spec.n / 2;
  const int t = spec.t;
  // Twice the sum, so that the 2^{h-2-i} factor stays integral at i = h-1.
  unsigned __int128 doubled = 0;
  for (int i = t; i <= h - 1; ++i) {
    const int free_pairs = i - t + 1;
    doubled += (static_cast<unsigned __int128>(1) << (h - 1 - i)) * binomial(h - 1, i) *
               binomial(free_pairs, free_pairs / 2);
  }
  return static_cast<std::uint64_t>((doubled + 1) / 2);
}

double redundancy_formula_asymmetric_substitution(int n, int t) {
  return (0.5 + 3.0 * t) * std::log2(static_cast<double>(n)) + 2.0 * t + 5.0;
}

double redundancy_formula_symmetric_substitution(int n, int t) {
  return 156.0 * t * t * std::log2(static_cast<double>(n));
}

}  // namespace polycomp
