#include "polycomp/reconstruct.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "polycomp/errors.hpp"

namespace polycomp {

std::string_view to_string(DecodeStatus s) {
  switch (s) {
    case DecodeStatus::Ok: return "ok";
    case DecodeStatus::Undecodable: return "undecodable";
    case DecodeStatus::Ambiguous: return "ambiguous";
    case DecodeStatus::Unsupported: return "unsupported";
  }
  return "?";
}

std::string classify_pattern(int n, const std::vector<int>& classes) {
  if (classes.empty()) return "none";
  const std::set<int> lost(classes.begin(), classes.end());
  bool whole_pair = false;
  bool single = false;
  for (int k : lost) {
    if (partner(n, k) != k && lost.contains(partner(n, k))) {
      whole_pair = true;
    } else {
      single = true;
    }
  }
  if (whole_pair && single) return "mixed";
  return whole_pair ? "symmetric" : "asymmetric";
}

bool pattern_supported(const CodebookSpec& spec, const std::vector<int>& classes, bool experimental_nonconsecutive) {
  const int n = spec.n;
  const std::set<int> lost(classes.begin(), classes.end());
  if (lost.empty()) return true;
  if (spec.family == Family::SCA1) return false;

  std::set<int> pairs;
  bool center = false;
  bool mutual = false;
  for (int k : lost) {
    pairs.insert(pair_index(n, k));
    if (partner(n, k) == k) center = true;
    if (partner(n, k) != k && lost.contains(partner(n, k))) mutual = true;
  }
  const int count = static_cast<int>(lost.size());
  const bool single_pair = pairs.size() == 1;
  if (count == 1 || (count == 2 && single_pair && !center)) return true;

  switch (spec.family) {
    case Family::SDA:
      return !mutual && count <= spec.t;
    case Family::SDS2:
      return !center && pairs.size() <= 2;
    case Family::SDSprime: {
      if (center) return false;
      if (experimental_nonconsecutive) return static_cast<int>(pairs.size()) <= spec.t;
      return *pairs.rbegin() - *pairs.begin() + 1 <= spec.t;
    }
    default:
      return false;
  }
}

namespace {

class Solver {
 public:
  Solver(const Readout& r, const std::optional<CodebookSpec>& spec, const DecodeOptions& options, DecodeReport& report)
      : r_(r), n_(r.n()), m_(half_up(r.n())), spec_(spec), options_(options), report_(report) {
    if (spec_) automaton_.emplace(*spec_);
    known_.assign(static_cast<std::size_t>(n_) + 1, std::nullopt);
    for (const auto& [k, c] : r_.classes()) {
      const int w = c.cumulative_weight();
      for (int j : {k, partner(n_, k)}) {
        if (!known_[static_cast<std::size_t>(j)]) known_[static_cast<std::size_t>(j)] = w;
      }
    }
    sigma_.assign(static_cast<std::size_t>(m_) + 1, 0);
    tail_.assign(static_cast<std::size_t>(m_) + 2, 0);
  }

  void run() {
    int lo = 0;
    int hi = n_;
    if (known_[1]) lo = hi = *known_[1];
    for (int total = lo; total <= hi && !done(); ++total) {
      total_ = total;
      sigma_dfs(1, 0, 0);
    }
  }

 private:
  bool done() const { return static_cast<int>(report_.consistent_set.size()) >= options_.max_solutions; }
  int max_sigma(int i) const { return (n_ % 2 == 1 && i == m_) ? 1 : 2; }

  // sigma_1..sigma_{i-1} are set; `used` is their sum and `moment` is
  // sum_{p<i} p*sigma_p, so that w_i = moment + i*(total - used).
  void sigma_dfs(int i, int used, int moment) {
    if (done()) return;
    if (i > m_) {
      if (used != total_) return;
      if (!leaf_weights_ok()) return;
      ++report_.sigma_candidates;
      tail_[static_cast<std::size_t>(m_) + 1] = 0;
      for (int p = m_; p >= 1; --p) tail_[static_cast<std::size_t>(p)] = tail_[static_cast<std::size_t>(p) + 1] + sigma_[static_cast<std::size_t>(p)];
      word_ = BitString(0, static_cast<std::size_t>(n_));
      pair_dfs(1, automaton_ ? std::optional<PairAutomaton::State>(automaton_->start()) : std::nullopt);
      return;
    }
    for (int v = 0; v <= max_sigma(i); ++v) {
      if (i == 1 && spec_ && v != 1) continue;
      const int u = used + v;
      const int mo = moment + i * v;
      if (u > total_) break;
      int capacity = 0;
      for (int p = i + 1; p <= m_; ++p) capacity += max_sigma(p);
      if (total_ - u > capacity) continue;
      // w_{i+1} is now fixed.
      if (i + 1 <= m_) {
        const auto& want = known_[static_cast<std::size_t>(i) + 1];
        if (want && *want != mo + (i + 1) * (total_ - u)) continue;
      }
      sigma_[static_cast<std::size_t>(i)] = v;
      sigma_dfs(i + 1, u, mo);
      if (done()) return;
    }
  }

  bool leaf_weights_ok() const {
    int moment = 0;
    int used = 0;
    long sum = 0;
    bool all_known_match = true;
    for (int k = 1; k <= m_; ++k) {
      // w_k = sum_{p<k} p*sigma_p + k*(total - sum_{p<k} sigma_p)
      const int w = moment + k * (total_ - used);
      if (known_[static_cast<std::size_t>(k)] && *known_[static_cast<std::size_t>(k)] != w) all_known_match = false;
      sum += w;
      moment += k * sigma_[static_cast<std::size_t>(k)];
      used += sigma_[static_cast<std::size_t>(k)];
    }
    if (!all_known_match) return false;
    if (spec_) {
      const int mod = spec_->modulus();
      if (sum % mod != spec_->a) return false;
      if (spec_->family == Family::SCA1 && total_ % 2 != 0) return false;
    }
    return true;
  }

  // Every window whose weight is determined at depth d (pairs 1..d placed,
  // the middle holding tail_[d+1] ones) fits inside the observed class.
  bool windows_fit(int d) const {
    const int inner_lo = d + 1;
    const int inner_hi = n_ - d;
    const int middle = inner_lo <= inner_hi ? tail_[static_cast<std::size_t>(std::min(d + 1, m_ + 1))] : 0;
    std::vector<int> prefix(static_cast<std::size_t>(n_) + 1, 0);
    for (int j = 1; j <= n_; ++j) prefix[static_cast<std::size_t>(j)] = prefix[static_cast<std::size_t>(j) - 1] + word_[static_cast<std::size_t>(j) - 1];
    std::vector<int> counts;
    for (const auto& [k, c] : r_.classes()) {
      counts.assign(static_cast<std::size_t>(k) + 1, 0);
      const auto observed = c.histogram();
      for (int a = 1; a + k - 1 <= n_; ++a) {
        const int b = a + k - 1;
        const bool covers = a <= inner_lo && b >= inner_hi;
        if (!(b <= d || a >= n_ - d + 1 || covers)) continue;
        const int w = prefix[static_cast<std::size_t>(b)] - prefix[static_cast<std::size_t>(a) - 1] + (covers ? middle : 0);
        if (w > k || ++counts[static_cast<std::size_t>(w)] > observed[static_cast<std::size_t>(w)]) return false;
      }
    }
    return true;
  }

  // Returns the deepest depth reached below this node.
  int pair_dfs(int d, std::optional<PairAutomaton::State> state) {
    if (d > n_ / 2) return finish(state);
    const int s = sigma_[static_cast<std::size_t>(d)];
    std::vector<std::pair<bool, bool>> choices;
    if (s == 0) choices = {{false, false}};
    if (s == 2) choices = {{true, true}};
    if (s == 1) choices = {{false, true}, {true, false}};

    int deepest = d;
    int wrong_turn = -1;
    for (std::size_t c = 0; c < choices.size() && !done(); ++c) {
      const auto [left, right] = choices[c];
      const std::size_t before = report_.consistent_set.size();
      int reached = d;
      std::optional<PairAutomaton::State> next = state;
      bool alive = true;
      if (automaton_) {
        next = automaton_->step(*state, d, left, right);
        alive = next.has_value();
      }
      if (alive) {
        word_.set(static_cast<std::size_t>(d - 1), left);
        word_.set(static_cast<std::size_t>(n_ - d), right);
        if (windows_fit(d)) reached = pair_dfs(d + 1, next);
        word_.set(static_cast<std::size_t>(d - 1), false);
        word_.set(static_cast<std::size_t>(n_ - d), false);
      }
      deepest = std::max(deepest, reached);
      if (s == 1 && c == 0 && report_.consistent_set.size() == before) {
        ++report_.backtracks;
        wrong_turn = reached - d;
      }
      if (s == 1 && c == 1 && wrong_turn >= 0 && report_.consistent_set.size() > before) {
        report_.max_detection_lag = std::max(report_.max_detection_lag, wrong_turn);
      }
    }
    return deepest;
  }

  int finish(const std::optional<PairAutomaton::State>& state) {
    const int depth = m_;
    std::optional<bool> center;
    if (n_ % 2 == 1) {
      center = sigma_[static_cast<std::size_t>(m_)] == 1;
      word_.set(static_cast<std::size_t>(n_ / 2), *center);
    }
    bool ok = true;
    if (automaton_ && !automaton_->accepts(*state, center)) ok = false;
    if (ok && spec_ && !is_member(*spec_, word_)) ok = false;
    if (ok) {
      for (const auto& [k, c] : r_.classes()) {
        const auto hist = window_weight_histogram(word_, k);
        if (!std::equal(hist.begin(), hist.end(), c.histogram().begin(), c.histogram().end())) {
          ok = false;
          break;
        }
      }
    }
    if (ok && std::find(report_.consistent_set.begin(), report_.consistent_set.end(), word_) == report_.consistent_set.end()) {
      report_.consistent_set.push_back(word_);
    }
    if (n_ % 2 == 1) word_.set(static_cast<std::size_t>(n_ / 2), false);
    return depth;
  }

  const Readout& r_;
  int n_;
  int m_;
  std::optional<CodebookSpec> spec_;
  std::optional<PairAutomaton> automaton_;
  DecodeOptions options_;
  DecodeReport& report_;
  std::vector<std::optional<int>> known_;
  std::vector<int> sigma_;
  std::vector<int> tail_;
  int total_ = 0;
  BitString word_;
};

void conclude(DecodeReport& report) {
  if (report.consistent_set.empty()) {
    report.status = DecodeStatus::Undecodable;
    report.result.reset();
    if (report.reason.empty()) report.reason = "no string is consistent with the readout";
  } else if (report.consistent_set.size() > 1) {
    report.status = DecodeStatus::Ambiguous;
    report.result.reset();
    if (report.reason.empty()) report.reason = "more than one string is consistent with the readout";
  } else {
    report.status = DecodeStatus::Ok;
    report.result = report.consistent_set.front();
    report.reason.clear();
  }
}

DecodeReport solve(const Readout& trusted, const std::optional<CodebookSpec>& spec, const DecodeOptions& options,
                   std::vector<int> dropped) {
  DecodeReport report;
  std::sort(dropped.begin(), dropped.end());
  report.dropped_classes = dropped;
  report.pattern = classify_pattern(trusted.n(), dropped);
  if (spec && !pattern_supported(*spec, dropped, options.experimental_nonconsecutive) && !options.allow_unsupported) {
    report.status = DecodeStatus::Unsupported;
    report.reason = describe(*spec) + " does not guarantee recovery after losing this " + report.pattern + " pattern";
    return report;
  }
  Solver solver(trusted, spec, options, report);
  solver.run();
  conclude(report);
  return report;
}

void check_spec_length(const Readout& r, const CodebookSpec& spec) {
  spec.validate();
  if (r.n() != spec.n) {
    throw SpecError("readout has n = " + std::to_string(r.n()) + " but " + describe(spec) + " expects " +
                    std::to_string(spec.n));
  }
}

std::vector<int> join(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace

DecodeReport reconstruct(const Readout& r, const std::optional<CodebookSpec>& spec, const DecodeOptions& options) {
  if (spec) check_spec_length(r, *spec);
  if (!r.anomalous_classes().empty()) {
    DecodeReport report;
    report.status = DecodeStatus::Undecodable;
    report.reason = "readout is not complete; use a decoder for corrupted readouts";
    report.dropped_classes = r.anomalous_classes();
    report.pattern = classify_pattern(r.n(), report.dropped_classes);
    return report;
  }
  DecodeOptions opts = options;
  if (!spec) opts.max_solutions = 1;
  return solve(r, spec, opts, {});
}

DecodeReport decode_deletions(const Readout& r, const CodebookSpec& spec, const DecodeOptions& options) {
  check_spec_length(r, spec);
  if (const auto over = r.oversized_classes(); !over.empty()) {
    DecodeReport report;
    report.status = DecodeStatus::Unsupported;
    report.reason = "class " + std::to_string(over.front()) + " is oversized; decode it as an insertion";
    return report;
  }
  Readout trusted = r;
  const auto undersized = r.undersized_classes();
  for (int k : undersized) trusted.erase(k);
  return solve(trusted, spec, options, join(r.missing_classes(), undersized));
}

DecodeReport decode_insertions(const Readout& r, const CodebookSpec& spec, const DecodeOptions& options) {
  check_spec_length(r, spec);
  Readout trusted = r;
  for (int k : r.oversized_classes()) trusted.erase(k);
  return decode_deletions(trusted, spec, options);
}

DecodeReport decode_skewed(const Readout& r, const CodebookSpec& spec, const DecodeOptions& options) {
  check_spec_length(r, spec);
  const int n = r.n();
  Readout trusted = r;
  for (int k : r.anomalous_classes()) trusted.erase(k);
  std::vector<int> flagged;
  for (const auto& [k, c] : trusted.classes()) {
    const int q = partner(n, k);
    if (q != k && trusted.has_class(q) && c.cumulative_weight() < trusted.at(q).cumulative_weight()) flagged.push_back(k);
  }
  Readout cleaned = trusted;
  for (int k : flagged) cleaned.erase(k);
  DecodeReport report = decode_deletions(cleaned, spec, options);

  const int center = half_up(n);
  if (n % 2 == 1 && report.status == DecodeStatus::Undecodable && cleaned.has_class(center)) {
    cleaned.erase(center);
    DecodeReport retry = decode_deletions(cleaned, spec, options);
    retry.backtracks += report.backtracks;
    retry.max_detection_lag = std::max(retry.max_detection_lag, report.max_detection_lag);
    retry.sigma_candidates += report.sigma_candidates;
    return retry;
  }
  return report;
}

DecodeReport brute_force_decode(const Readout& r, const CodebookSpec& spec, int cap) {
  check_spec_length(r, spec);
  const auto members = enumerate(spec, cap);
  Readout trusted = r;
  const auto dropped = r.anomalous_classes();
  for (int k : dropped) trusted.erase(k);

  auto agrees = [&](const BitString& s) {
    for (const auto& [k, c] : trusted.classes()) {
      const auto hist = window_weight_histogram(s, k);
      if (!std::equal(hist.begin(), hist.end(), c.histogram().begin(), c.histogram().end())) return false;
    }
    return true;
  };

  // Contiguous shards, merged in shard order so the result is schedule-independent.
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, members.size() / 256));
  std::vector<std::vector<BitString>> found(workers);
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (members.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(members.size(), lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) {
          if (agrees(members[i])) found[w].push_back(members[i]);
        }
      });
    }
  }

  DecodeReport report;
  report.dropped_classes = dropped;
  report.pattern = classify_pattern(r.n(), dropped);
  for (auto& part : found) report.consistent_set.insert(report.consistent_set.end(), part.begin(), part.end());
  conclude(report);
  return report;
}

}  // namespace polycomp
