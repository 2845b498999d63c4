#include "polycomp/oracle.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "polycomp/errors.hpp"
#include "polycomp/hash.hpp"

namespace polycomp {

Hash128 readout_hash(const Readout& r, const std::vector<int>& skip) {
  Fnv128 h;
  h.add(static_cast<std::uint32_t>(r.n()));
  for (const auto& [k, c] : r.classes()) {
    if (std::binary_search(skip.begin(), skip.end(), k)) continue;
    h.add(static_cast<std::uint32_t>(k));
    const auto hist = c.histogram();
    for (std::size_t w = 0; w < hist.size(); ++w) {
      if (hist[w] == 0) continue;
      h.add(static_cast<std::uint32_t>(k - static_cast<int>(w)));
      h.add(static_cast<std::uint32_t>(w));
      h.add(static_cast<std::uint32_t>(hist[w]));
    }
    h.add(0xffffffffU);
  }
  return h.value();
}

bool equicomposable(const BitString& s, const BitString& v) {
  if (s.size() != v.size()) throw DomainError("equicomposable requires equal lengths");
  return full_readout(s) == full_readout(v);
}

ClassCount count_classes(int n, int cap) {
  if (n < 1) throw DomainError("count_classes requires n >= 1");
  if (n > cap) throw ResourceError("count_classes over 2^" + std::to_string(n) + " strings exceeds cap n <= " + std::to_string(cap));
  std::unordered_map<Hash128, std::vector<std::uint64_t>, Hash128Hasher> seen;
  ClassCount out;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t value = 0; value < total; ++value) {
    const BitString s(value, static_cast<std::size_t>(n));
    const Readout r = full_readout(s);
    auto& reps = seen[readout_hash(r)];
    const bool known = std::any_of(reps.begin(), reps.end(), [&](std::uint64_t rep) {
      return full_readout(BitString(rep, static_cast<std::size_t>(n))) == r;
    });
    if (!known) {
      reps.push_back(value);
      out.representatives.push_back(s);
    }
  }
  out.count = out.representatives.size();
  return out;
}

std::uint64_t max_code_bound(int n) {
  if (n < 1 || n > 64) throw DomainError("max_code_bound requires 1 <= n <= 64");
  return (std::uint64_t{1} << (n - 1)) + (std::uint64_t{1} << (half_up(n) - 1));
}

namespace {

struct Codebook {
  std::vector<BitString> members;
  std::vector<Readout> readouts;
};

Codebook load(const CodebookSpec& spec, int cap) {
  spec.validate();
  if (spec.n > cap) throw ResourceError("verification of " + describe(spec) + " exceeds cap n <= " + std::to_string(cap));
  Codebook book;
  book.members = enumerate(spec, cap);
  book.readouts.reserve(book.members.size());
  for (const auto& s : book.members) book.readouts.push_back(full_readout(s));
  return book;
}

bool agree_outside(const Readout& a, const Readout& b, const std::vector<int>& pattern) {
  for (int k = 1; k <= a.n(); ++k) {
    if (std::binary_search(pattern.begin(), pattern.end(), k)) continue;
    if (!(a.at(k) == b.at(k))) return false;
  }
  return true;
}

std::vector<int> differing_classes(const Readout& a, const Readout& b) {
  std::vector<int> out;
  for (int k = 1; k <= a.n(); ++k) {
    if (!(a.at(k) == b.at(k))) out.push_back(k);
  }
  return out;
}

using IndexPair = std::pair<std::size_t, std::size_t>;

// Smallest (i, j) whose readouts agree outside `pattern`.
std::optional<IndexPair> min_collision(const Codebook& book, const std::vector<int>& pattern) {
  std::unordered_map<Hash128, std::vector<std::size_t>, Hash128Hasher> buckets;
  for (std::size_t i = 0; i < book.members.size(); ++i) buckets[readout_hash(book.readouts[i], pattern)].push_back(i);
  std::optional<IndexPair> best;
  for (const auto& [h, idx] : buckets) {
    if (idx.size() < 2) continue;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      if (best && idx[a] >= best->first) break;
      bool found = false;
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        if (agree_outside(book.readouts[idx[a]], book.readouts[idx[b]], pattern)) {
          const IndexPair candidate{idx[a], idx[b]};
          if (!best || candidate < *best) best = candidate;
          found = true;
          break;
        }
      }
      if (found) break;
    }
  }
  return best;
}

// Ways to make one class of s and v identical with lower-weight replacements.
struct SkewOptions {
  std::optional<Skew> only_s;
  std::optional<Skew> only_v;
  std::optional<std::pair<Skew, Skew>> both;
};

// delta = target - source; a single skew x -> y of the source closes it iff
// delta is +1 at y, -1 at x, y < x, and zero elsewhere.
std::optional<std::pair<int, int>> single_skew(const std::vector<int>& delta) {
  int plus = -1;
  int minus = -1;
  for (std::size_t w = 0; w < delta.size(); ++w) {
    if (delta[w] == 0) continue;
    if (delta[w] == 1 && plus < 0) {
      plus = static_cast<int>(w);
    } else if (delta[w] == -1 && minus < 0) {
      minus = static_cast<int>(w);
    } else {
      return std::nullopt;
    }
  }
  if (plus < 0 || minus < 0 || plus >= minus) return std::nullopt;
  return std::pair{minus, plus};
}

Skew make_skew(int k, int from, int to) { return Skew{k, Composition{k - from, from}, Composition{k - to, to}}; }

SkewOptions skew_options(int k, std::span<const int> hs, std::span<const int> hv) {
  SkewOptions out;
  std::vector<int> delta(hs.size());
  for (std::size_t w = 0; w < hs.size(); ++w) delta[w] = hv[w] - hs[w];
  if (auto sk = single_skew(delta)) out.only_s = make_skew(k, sk->first, sk->second);
  std::vector<int> neg(delta.size());
  for (std::size_t w = 0; w < delta.size(); ++w) neg[w] = -delta[w];
  if (auto sk = single_skew(neg)) out.only_v = make_skew(k, sk->first, sk->second);
  for (int x = 1; x <= k && !out.both; ++x) {
    if (hs[static_cast<std::size_t>(x)] == 0) continue;
    for (int y = 0; y < x && !out.both; ++y) {
      // After s skews x -> y, v must close the remaining gap with one skew.
      std::vector<int> rest(neg);
      rest[static_cast<std::size_t>(x)] -= 1;
      rest[static_cast<std::size_t>(y)] += 1;
      // rest = (hs after skew) - hv; v's skew x' -> y' needs it +1 at y', -1 at x'.
      if (auto sk = single_skew(rest)) out.both = std::pair{make_skew(k, x, y), make_skew(k, sk->first, sk->second)};
    }
  }
  return out;
}

struct SkewAssignment {
  std::vector<Skew> s_skews;
  std::vector<Skew> v_skews;
};

bool assign_skews(int n, int t, const std::vector<int>& classes, const std::vector<SkewOptions>& options, std::size_t i,
                  std::set<int>& s_pairs, std::set<int>& v_pairs, SkewAssignment& out) {
  if (i == classes.size()) return true;
  const int q = pair_index(n, classes[i]);
  const auto& o = options[i];
  auto try_with = [&](const std::optional<Skew>& on_s, const std::optional<Skew>& on_v) {
    if (on_s && (s_pairs.contains(q) || static_cast<int>(s_pairs.size()) >= t)) return false;
    if (on_v && (v_pairs.contains(q) || static_cast<int>(v_pairs.size()) >= t)) return false;
    if (on_s) {
      s_pairs.insert(q);
      out.s_skews.push_back(*on_s);
    }
    if (on_v) {
      v_pairs.insert(q);
      out.v_skews.push_back(*on_v);
    }
    if (assign_skews(n, t, classes, options, i + 1, s_pairs, v_pairs, out)) return true;
    if (on_s) {
      s_pairs.erase(q);
      out.s_skews.pop_back();
    }
    if (on_v) {
      v_pairs.erase(q);
      out.v_skews.pop_back();
    }
    return false;
  };
  if (o.only_s && try_with(o.only_s, std::nullopt)) return true;
  if (o.only_v && try_with(std::nullopt, o.only_v)) return true;
  if (o.both && try_with(o.both->first, o.both->second)) return true;
  return false;
}

std::optional<SkewAssignment> skew_collision(const Readout& a, const Readout& b, int t) {
  const int n = a.n();
  const auto classes = differing_classes(a, b);
  if (static_cast<int>(classes.size()) > 2 * t) return std::nullopt;
  std::vector<SkewOptions> options;
  for (int k : classes) {
    auto o = skew_options(k, a.at(k).histogram(), b.at(k).histogram());
    if (!o.only_s && !o.only_v && !o.both) return std::nullopt;
    options.push_back(std::move(o));
  }
  std::set<int> s_pairs;
  std::set<int> v_pairs;
  SkewAssignment out;
  if (!assign_skews(n, t, classes, options, 0, s_pairs, v_pairs, out)) return std::nullopt;
  return out;
}

ConfusabilityWitness deletion_witness(const CodebookSpec& spec, ErrorModel model, int t, const Codebook& book,
                                      const IndexPair& p) {
  ConfusabilityWitness w;
  w.spec = spec;
  w.model = model;
  w.t = t;
  w.s = book.members[p.first];
  w.v = book.members[p.second];
  w.pattern = differing_classes(book.readouts[p.first], book.readouts[p.second]);
  return w;
}

}  // namespace

VerifyResult verify_code_property(const CodebookSpec& spec, ErrorModel model, int t, int cap) {
  if (t < 1) throw DomainError("verify_code_property requires t >= 1");
  const Codebook book = load(spec, cap);
  VerifyResult result;
  result.codewords = book.members.size();

  if (model == ErrorModel::Skew) {
    result.patterns = maximal_patterns(model, spec.n, t).size();
    for (std::size_t i = 0; i < book.members.size(); ++i) {
      for (std::size_t j = i + 1; j < book.members.size(); ++j) {
        if (auto hit = skew_collision(book.readouts[i], book.readouts[j], t)) {
          ConfusabilityWitness w;
          w.spec = spec;
          w.model = model;
          w.t = t;
          w.s = book.members[i];
          w.v = book.members[j];
          w.s_skews = hit->s_skews;
          w.v_skews = hit->v_skews;
          std::set<int> touched;
          for (const auto& sk : w.s_skews) touched.insert(sk.k);
          for (const auto& sk : w.v_skews) touched.insert(sk.k);
          w.pattern.assign(touched.begin(), touched.end());
          result.ok = false;
          result.witness = std::move(w);
          return result;
        }
      }
    }
    return result;
  }

  const auto patterns = maximal_patterns(model, spec.n, t);
  result.patterns = patterns.size();
  std::optional<IndexPair> best;
  for (const auto& pattern : patterns) {
    if (auto hit = min_collision(book, pattern); hit && (!best || *hit < *best)) best = hit;
  }
  if (best) {
    result.ok = false;
    result.witness = deletion_witness(spec, model, t, book, *best);
  }
  return result;
}

std::optional<ConfusabilityWitness> find_confusable_pair(int n, ErrorModel model, int t, int cap) {
  const auto spec = CodebookSpec::make(Family::SR, n);
  const bool symmetric = model == ErrorModel::SymPairDelete || model == ErrorModel::ConsecutiveSymPairDelete;
  if (symmetric && t >= 2 && n / 2 >= 2) {
    const Codebook book = load(spec, cap);
    // Two adjacent symmetric pairs {k-1, k, n-k+1, n-k+2}, outermost first.
    for (int q = 1; q + 1 <= n / 2; ++q) {
      std::vector<int> pattern{q, q + 1, partner(n, q + 1), partner(n, q)};
      std::sort(pattern.begin(), pattern.end());
      if (auto hit = min_collision(book, pattern)) return deletion_witness(spec, model, t, book, *hit);
    }
  }
  return verify_code_property(spec, model, t, cap).witness;
}

bool recheck_witness(const ConfusabilityWitness& w) {
  const int n = w.spec.n;
  if (static_cast<int>(w.s.size()) != n || static_cast<int>(w.v.size()) != n || w.s == w.v) return false;
  if (!is_member(w.spec, w.s) || !is_member(w.spec, w.v)) return false;
  const Readout rs = full_readout(w.s);
  const Readout rv = full_readout(w.v);

  if (w.model == ErrorModel::Skew) {
    std::set<int> s_pairs;
    std::set<int> v_pairs;
    for (const auto& sk : w.s_skews) {
      if (!s_pairs.insert(pair_index(n, sk.k)).second) return false;
    }
    for (const auto& sk : w.v_skews) {
      if (!v_pairs.insert(pair_index(n, sk.k)).second) return false;
    }
    if (static_cast<int>(s_pairs.size()) > w.t || static_cast<int>(v_pairs.size()) > w.t) return false;
    ErrorSpec es{ErrorModel::Skew, {}, {}, {}, w.s_skews, std::nullopt};
    ErrorSpec ev{ErrorModel::Skew, {}, {}, {}, w.v_skews, std::nullopt};
    try {
      return apply(rs, es) == apply(rv, ev);
    } catch (const InvalidErrorSpec&) {
      return false;
    }
  }

  if (!pattern_admissible(w.model, n, w.t, w.pattern)) return false;
  Readout cs = rs;
  Readout cv = rv;
  for (int k : w.pattern) {
    cs.erase(k);
    cv.erase(k);
  }
  if (!(cs == cv)) return false;
  const auto [is, iv] = insertion_collision(w);
  return is == iv;
}

std::pair<Readout, Readout> insertion_collision(const ConfusabilityWitness& w) {
  const Readout rs = full_readout(w.s);
  const Readout rv = full_readout(w.v);
  ErrorSpec es{ErrorModel::Insert, {}, {}, {}, {}, std::nullopt};
  ErrorSpec ev = es;
  for (int k : w.pattern) {
    for (const auto& [c, mult] : rv.at(k).entries()) {
      for (int i = 0; i < mult; ++i) es.insertions.push_back(Insertion{k, c});
    }
    for (const auto& [c, mult] : rs.at(k).entries()) {
      for (int i = 0; i < mult; ++i) ev.insertions.push_back(Insertion{k, c});
    }
  }
  return {apply(rs, es), apply(rv, ev)};
}

}  // namespace polycomp
