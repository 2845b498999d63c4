#include "polycomp/composition.hpp"

#include <bit>
#include <numeric>

#include "polycomp/errors.hpp"

namespace polycomp {

namespace {

std::uint64_t low_mask(std::size_t length) {
  return length >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << length) - 1;
}

}  // namespace

BitString::BitString(std::uint64_t value, std::size_t length) : size_(length), value_(value) {
  if (length > kMaxLength) throw RangeError("bitstring longer than " + std::to_string(kMaxLength));
  if ((value & ~low_mask(length)) != 0) throw RangeError("bitstring value does not fit its length");
}

BitString BitString::parse(std::string_view text) {
  if (text.size() > kMaxLength) throw ParseError("bitstring longer than " + std::to_string(kMaxLength));
  std::uint64_t v = 0;
  for (char c : text) {
    if (c != '0' && c != '1') throw ParseError("bitstring may contain only 0 and 1: '" + std::string(text) + "'");
    v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return BitString(v, text.size());
}

void BitString::set(std::size_t i, bool bit) noexcept {
  const std::uint64_t m = std::uint64_t{1} << (size_ - 1 - i);
  value_ = bit ? (value_ | m) : (value_ & ~m);
}

int BitString::weight() const noexcept { return std::popcount(value_); }

int BitString::weight(std::size_t first, std::size_t last) const noexcept {
  if (first >= last) return 0;
  const std::uint64_t shifted = value_ >> (size_ - last);
  return std::popcount(shifted & low_mask(last - first));
}

BitString BitString::reversed() const {
  BitString out(0, size_);
  for (std::size_t i = 0; i < size_; ++i) out.set(size_ - 1 - i, (*this)[i]);
  return out;
}

BitString BitString::erased(std::size_t i) const {
  if (i >= size_) throw RangeError("erase position out of range");
  BitString out(0, size_ - 1);
  for (std::size_t j = 0, o = 0; j < size_; ++j) {
    if (j != i) out.set(o++, (*this)[j]);
  }
  return out;
}

BitString BitString::inserted(std::size_t i, bool bit) const {
  if (i > size_) throw RangeError("insert position out of range");
  BitString out(0, size_ + 1);
  for (std::size_t j = 0, o = 0; o < size_ + 1; ++o) {
    out.set(o, o == i ? bit : (*this)[j++]);
  }
  return out;
}

std::string BitString::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) out[i] = '1';
  }
  return out;
}

std::string to_string(const Composition& c) {
  return "0^" + std::to_string(c.zeros) + "1^" + std::to_string(c.ones);
}

LengthClass::LengthClass(int k) : k_(k), hist_(static_cast<std::size_t>(k < 0 ? 0 : k) + 1, 0) {
  if (k < 1) throw RangeError("length class requires k >= 1");
}

int LengthClass::count(const Composition& c) const {
  if (c.length() != k_ || c.zeros < 0 || c.ones < 0) return 0;
  return hist_[static_cast<std::size_t>(c.ones)];
}

void LengthClass::add(const Composition& c, int multiplicity) {
  if (c.zeros < 0 || c.ones < 0 || c.length() != k_) {
    throw RangeError(to_string(c) + " does not belong to length class " + std::to_string(k_));
  }
  if (multiplicity < 0) throw RangeError("negative multiplicity");
  hist_[static_cast<std::size_t>(c.ones)] += multiplicity;
  size_ += multiplicity;
}

bool LengthClass::remove(const Composition& c) {
  if (count(c) == 0) return false;
  --hist_[static_cast<std::size_t>(c.ones)];
  --size_;
  return true;
}

int LengthClass::cumulative_weight() const noexcept {
  int total = 0;
  for (std::size_t w = 0; w < hist_.size(); ++w) total += static_cast<int>(w) * hist_[w];
  return total;
}

std::vector<std::pair<Composition, int>> LengthClass::entries() const {
  std::vector<std::pair<Composition, int>> out;
  for (int w = 0; w <= k_; ++w) {
    if (const int m = hist_[static_cast<std::size_t>(w)]; m > 0) out.push_back({Composition{k_ - w, w}, m});
  }
  return out;
}

bool LengthClass::contains_all(const LengthClass& other) const {
  if (other.k_ != k_) return false;
  for (std::size_t w = 0; w < hist_.size(); ++w) {
    if (other.hist_[w] > hist_[w]) return false;
  }
  return true;
}

Readout::Readout(int n) : n_(n) {
  if (n < 1) throw RangeError("readout requires n >= 1");
}

const LengthClass& Readout::at(int k) const {
  auto it = classes_.find(k);
  if (it == classes_.end()) throw MissingClass("length class " + std::to_string(k) + " is absent");
  return it->second;
}

void Readout::put(LengthClass c) {
  const int k = c.length();
  if (k > n_) throw RangeError("length class " + std::to_string(k) + " exceeds n = " + std::to_string(n_));
  classes_.insert_or_assign(k, std::move(c));
}

long Readout::total_count() const {
  long total = 0;
  for (const auto& [k, c] : classes_) total += c.size();
  return total;
}

std::vector<int> Readout::missing_classes() const {
  std::vector<int> out;
  for (int k = 1; k <= n_; ++k) {
    if (!has_class(k)) out.push_back(k);
  }
  return out;
}

std::vector<int> Readout::oversized_classes() const {
  std::vector<int> out;
  for (const auto& [k, c] : classes_) {
    if (c.size() > expected_size(k)) out.push_back(k);
  }
  return out;
}

std::vector<int> Readout::undersized_classes() const {
  std::vector<int> out;
  for (const auto& [k, c] : classes_) {
    if (c.size() < expected_size(k)) out.push_back(k);
  }
  return out;
}

std::vector<int> Readout::anomalous_classes() const {
  std::vector<int> out;
  for (int k = 1; k <= n_; ++k) {
    auto it = classes_.find(k);
    if (it == classes_.end() || it->second.size() != expected_size(k)) out.push_back(k);
  }
  return out;
}

Composition composition_of(const BitString& s, std::size_t i, std::size_t j) {
  if (i < 1 || i > j || j > s.size()) {
    throw RangeError("composition_of requires 1 <= i <= j <= n, got i=" + std::to_string(i) +
                     " j=" + std::to_string(j) + " n=" + std::to_string(s.size()));
  }
  const int ones = s.weight(i - 1, j);
  return Composition{static_cast<int>(j - i + 1) - ones, ones};
}

std::vector<int> window_weight_histogram(const BitString& s, int k) {
  const int n = static_cast<int>(s.size());
  std::vector<int> hist(static_cast<std::size_t>(k) + 1, 0);
  int w = s.weight(0, static_cast<std::size_t>(k));
  ++hist[static_cast<std::size_t>(w)];
  for (int a = 1; a + k <= n; ++a) {
    w += static_cast<int>(s[static_cast<std::size_t>(a + k - 1)]) - static_cast<int>(s[static_cast<std::size_t>(a - 1)]);
    ++hist[static_cast<std::size_t>(w)];
  }
  return hist;
}

LengthClass length_class(const BitString& s, int k) {
  const int n = static_cast<int>(s.size());
  if (k < 1 || k > n) {
    throw RangeError("length class k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  LengthClass c(k);
  const auto hist = window_weight_histogram(s, k);
  for (int w = 0; w <= k; ++w) c.add(Composition{k - w, w}, hist[static_cast<std::size_t>(w)]);
  return c;
}

Readout full_readout(const BitString& s) {
  const int n = static_cast<int>(s.size());
  Readout r(n);
  for (int k = 1; k <= n; ++k) r.put(length_class(s, k));
  return r;
}

int cumulative_weight(const Readout& r, int k) { return r.at(k).cumulative_weight(); }

std::vector<std::optional<int>> observed_weights(const Readout& r) {
  std::vector<std::optional<int>> out(static_cast<std::size_t>(r.n()));
  for (const auto& [k, c] : r.classes()) out[static_cast<std::size_t>(k - 1)] = c.cumulative_weight();
  return out;
}

int half_weight_sum(const BitString& s) {
  const int n = static_cast<int>(s.size());
  int total = 0;
  for (int k = 1; k <= half_up(n); ++k) {
    for (std::size_t a = 0; a + static_cast<std::size_t>(k) <= s.size(); ++a) total += s.weight(a, a + static_cast<std::size_t>(k));
  }
  return total;
}

SigmaSequence sigma_from_weights(std::span<const int> weights, int n) {
  const int m = half_up(n);
  if (n < 1) throw RangeError("sigma_from_weights requires n >= 1");
  if (weights.size() != static_cast<std::size_t>(m) && weights.size() != static_cast<std::size_t>(n)) {
    throw RangeError("expected ceil(n/2) or n cumulative weights");
  }
  if (weights.size() == static_cast<std::size_t>(n)) {
    for (int k = 1; k <= n; ++k) {
      if (weights[static_cast<std::size_t>(k - 1)] != weights[static_cast<std::size_t>(partner(n, k) - 1)]) {
        throw InconsistentReadout("w_" + std::to_string(k) + " != w_" + std::to_string(partner(n, k)));
      }
    }
  }
  auto w = [&](int k) { return weights[static_cast<std::size_t>(k - 1)]; };

  SigmaSequence out{n, std::vector<int>(static_cast<std::size_t>(m), 0)};
  auto sigma = [&](int i) -> int& { return out.values[static_cast<std::size_t>(i - 1)]; };
  auto check = [&](int i) {
    const int hi = (n % 2 == 1 && i == m) ? 1 : 2;
    if (sigma(i) < 0 || sigma(i) > hi) {
      throw InconsistentReadout("sigma_" + std::to_string(i) + " = " + std::to_string(sigma(i)) +
                                " is not a valid pair weight");
    }
  };

  for (int k = 2; k <= m; ++k) {
    int v = k * w(1) - w(k);
    for (int i = 2; i <= k - 1; ++i) v -= i * sigma(k - i);
    sigma(k - 1) = v;
    check(k - 1);
  }
  int rest = w(1);
  for (int i = 1; i < m; ++i) rest -= sigma(i);
  sigma(m) = rest;
  check(m);
  return out;
}

SigmaSequence sigma_of_string(const BitString& s) {
  const int n = static_cast<int>(s.size());
  SigmaSequence out{n, {}};
  for (int i = 1; i <= n / 2; ++i) {
    out.values.push_back(static_cast<int>(s[static_cast<std::size_t>(i - 1)]) +
                         static_cast<int>(s[static_cast<std::size_t>(n - i)]));
  }
  if (n % 2 == 1) out.values.push_back(static_cast<int>(s[static_cast<std::size_t>(n / 2)]));
  return out;
}

Composition complement(const Composition& whole, const Composition& part) {
  const Composition out{whole.zeros - part.zeros, whole.ones - part.ones};
  if (out.zeros < 0 || out.ones < 0) {
    throw InvalidComplement(to_string(part) + " is not contained in " + to_string(whole));
  }
  if (out.length() == 0) throw InvalidComplement("complement is the empty composition");
  return out;
}

std::vector<PolyTerm> bivariate_poly(const BitString& s) {
  std::vector<PolyTerm> terms{PolyTerm{0, 0}};
  for (std::size_t i = 0; i < s.size(); ++i) {
    PolyTerm next = terms.back();
    if (s[i]) {
      ++next.xdeg;
    } else {
      ++next.ydeg;
    }
    terms.push_back(next);
  }
  return terms;
}

}  // namespace polycomp
