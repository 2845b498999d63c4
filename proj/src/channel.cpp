#include "polycomp/channel.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "polycomp/errors.hpp"

namespace polycomp {

std::string_view to_string(ErrorModel m) {
  switch (m) {
    case ErrorModel::AsymDelete: return "asym_delete";
    case ErrorModel::SymPairDelete: return "sym_pair_delete";
    case ErrorModel::ConsecutiveSymPairDelete: return "consecutive_sym_pair_delete";
    case ErrorModel::Insert: return "insert";
    case ErrorModel::Skew: return "skew";
  }
  return "?";
}

ErrorModel parse_error_model(std::string_view name) {
  for (ErrorModel m : {ErrorModel::AsymDelete, ErrorModel::SymPairDelete, ErrorModel::ConsecutiveSymPairDelete,
                       ErrorModel::Insert, ErrorModel::Skew}) {
    if (name == to_string(m)) return m;
  }
  if (name == "asym") return ErrorModel::AsymDelete;
  if (name == "sym_pair" || name == "sym") return ErrorModel::SymPairDelete;
  if (name == "consecutive" || name == "consecutive_sym_pair") return ErrorModel::ConsecutiveSymPairDelete;
  throw InvalidErrorSpec("unknown error model '" + std::string(name) + "'");
}

std::uint64_t SeededRng::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidErrorSpec("empty range for random draw");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = next();
    if (x >= threshold) return x % bound;
  }
}

std::vector<int> SeededRng::subset(int n, int k) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(i) + below(static_cast<std::uint64_t>(n - i));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

void require_class(const Readout& r, int k, std::string_view what) {
  if (k < 1 || k > r.n()) {
    throw InvalidErrorSpec(std::string(what) + ": class " + std::to_string(k) + " outside [1, " +
                           std::to_string(r.n()) + "]");
  }
  if (!r.has_class(k)) throw InvalidErrorSpec(std::string(what) + ": class " + std::to_string(k) + " is absent");
}

void require_distinct_pairs(int n, const std::vector<int>& classes, std::string_view what) {
  std::set<int> seen;
  for (int k : classes) {
    if (!seen.insert(pair_index(n, k)).second) {
      throw InvalidErrorSpec(std::string(what) + ": two targets in the symmetric pair of class " + std::to_string(k));
    }
  }
}

std::vector<int> sym_pair_classes(int n, const std::vector<int>& pairs) {
  std::vector<int> out;
  for (int q : pairs) {
    out.push_back(q);
    out.push_back(partner(n, q));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void check_pairs(int n, const std::vector<int>& pairs, bool consecutive) {
  std::set<int> seen;
  for (int q : pairs) {
    if (q < 1 || q > n / 2) {
      throw InvalidErrorSpec("sym_pair_delete: pair index " + std::to_string(q) + " outside [1, " +
                             std::to_string(n / 2) + "]");
    }
    if (!seen.insert(q).second) throw InvalidErrorSpec("sym_pair_delete: repeated pair " + std::to_string(q));
  }
  if (consecutive && !seen.empty() && *seen.rbegin() - *seen.begin() + 1 != static_cast<int>(seen.size())) {
    throw InvalidErrorSpec("consecutive_sym_pair_delete: pairs are not consecutive");
  }
}

// Uniform draw over sets of `count` classes with at most one class per
// symmetric pair.
std::vector<int> draw_asymmetric(SeededRng& rng, int n, int count) {
  const int m = half_up(n);
  if (count < 0 || count > m) {
    throw InvalidErrorSpec("at most " + std::to_string(m) + " asymmetric targets fit n = " + std::to_string(n));
  }
  for (;;) {
    const auto chosen = rng.subset(m, count);
    const bool has_center = n % 2 == 1 && !chosen.empty() && chosen.back() == m - 1;
    // A centre pair has one member instead of two; thin those draws to keep
    // the pattern distribution uniform.
    if (has_center && rng.below(2) == 1) continue;
    std::vector<int> classes;
    for (int q0 : chosen) {
      const int q = q0 + 1;
      if (q == partner(n, q)) {
        classes.push_back(q);
      } else {
        classes.push_back(rng.below(2) == 1 ? partner(n, q) : q);
      }
    }
    std::sort(classes.begin(), classes.end());
    return classes;
  }
}

bool skewable(const LengthClass& c) {
  for (int w = 1; w <= c.length(); ++w) {
    if (c.count_ones(w) > 0) return true;
  }
  return false;
}

}  // namespace

Readout apply(const Readout& r, const ErrorSpec& e) {
  if (e.random) {
    ErrorSpec resolved = random_error(e.model, e.random->count, e.random->seed, r, e.random->per_class);
    return apply(r, resolved);
  }
  const int n = r.n();
  Readout out = r;
  switch (e.model) {
    case ErrorModel::AsymDelete: {
      for (int k : e.classes) require_class(r, k, "asym_delete");
      require_distinct_pairs(n, e.classes, "asym_delete");
      for (int k : e.classes) out.erase(k);
      break;
    }
    case ErrorModel::SymPairDelete:
    case ErrorModel::ConsecutiveSymPairDelete: {
      check_pairs(n, e.pairs, e.model == ErrorModel::ConsecutiveSymPairDelete);
      for (int k : sym_pair_classes(n, e.pairs)) require_class(r, k, "sym_pair_delete");
      for (int k : sym_pair_classes(n, e.pairs)) out.erase(k);
      break;
    }
    case ErrorModel::Insert: {
      for (const auto& ins : e.insertions) {
        require_class(r, ins.k, "insert");
        if (ins.entry.zeros < 0 || ins.entry.ones < 0 || ins.entry.length() != ins.k) {
          throw InvalidErrorSpec("insert: " + to_string(ins.entry) + " does not have length " + std::to_string(ins.k));
        }
        LengthClass c = out.at(ins.k);
        c.add(ins.entry);
        out.put(std::move(c));
      }
      break;
    }
    case ErrorModel::Skew: {
      std::set<int> seen;
      for (const auto& skew : e.skews) {
        require_class(r, skew.k, "skew");
        if (!seen.insert(skew.k).second) throw InvalidErrorSpec("skew: two replacements in class " + std::to_string(skew.k));
        if (skew.from.length() != skew.k || skew.to.length() != skew.k || skew.to.zeros < 0 || skew.to.ones < 0) {
          throw InvalidSkew("skew: replacement must keep length " + std::to_string(skew.k));
        }
        if (skew.to.ones >= skew.from.ones) {
          throw InvalidSkew("skew: " + to_string(skew.from) + " -> " + to_string(skew.to) + " does not lower the weight");
        }
        LengthClass c = out.at(skew.k);
        if (!c.remove(skew.from)) {
          throw InvalidErrorSpec("skew: " + to_string(skew.from) + " not present in class " + std::to_string(skew.k));
        }
        c.add(skew.to);
        out.put(std::move(c));
      }
      break;
    }
  }
  return out;
}

ErrorSpec random_error(ErrorModel model, int count, std::uint64_t seed, int n, int per_class) {
  if (count < 0) throw InvalidErrorSpec("negative error count");
  SeededRng rng(seed);
  ErrorSpec e;
  e.model = model;
  switch (model) {
    case ErrorModel::AsymDelete:
      e.classes = draw_asymmetric(rng, n, count);
      break;
    case ErrorModel::SymPairDelete: {
      if (count > n / 2) throw InvalidErrorSpec("at most " + std::to_string(n / 2) + " symmetric pairs fit n = " + std::to_string(n));
      for (int q0 : rng.subset(n / 2, count)) e.pairs.push_back(q0 + 1);
      break;
    }
    case ErrorModel::ConsecutiveSymPairDelete: {
      if (count > n / 2) throw InvalidErrorSpec("at most " + std::to_string(n / 2) + " symmetric pairs fit n = " + std::to_string(n));
      if (count > 0) {
        const int start = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 2 - count + 1)));
        for (int q = start; q < start + count; ++q) e.pairs.push_back(q);
      }
      break;
    }
    case ErrorModel::Insert: {
      if (count > n) throw InvalidErrorSpec("at most n classes can receive insertions");
      if (per_class < 1) throw InvalidErrorSpec("per_class must be >= 1");
      for (int k0 : rng.subset(n, count)) {
        const int k = k0 + 1;
        for (int j = 0; j < per_class; ++j) {
          const int ones = static_cast<int>(rng.below(static_cast<std::uint64_t>(k) + 1));
          e.insertions.push_back(Insertion{k, Composition{k - ones, ones}});
        }
      }
      break;
    }
    case ErrorModel::Skew:
      throw InvalidErrorSpec("skew draws are resolved against a readout");
  }
  return e;
}

ErrorSpec random_error(ErrorModel model, int count, std::uint64_t seed, const Readout& r, int per_class) {
  if (model != ErrorModel::Skew) return random_error(model, count, seed, r.n(), per_class);
  if (count < 0) throw InvalidErrorSpec("negative error count");
  const int n = r.n();
  std::set<int> eligible_pairs;
  for (const auto& [k, c] : r.classes()) {
    if (skewable(c)) eligible_pairs.insert(pair_index(n, k));
  }
  if (static_cast<int>(eligible_pairs.size()) < count) {
    throw InvalidErrorSpec("only " + std::to_string(eligible_pairs.size()) + " symmetric pairs can take a skew");
  }
  SeededRng rng(seed);
  std::vector<int> classes;
  for (;;) {
    classes = draw_asymmetric(rng, n, count);
    const bool ok = std::all_of(classes.begin(), classes.end(),
                                [&](int k) { return r.has_class(k) && skewable(r.at(k)); });
    if (ok) break;
  }
  ErrorSpec e;
  e.model = ErrorModel::Skew;
  for (int k : classes) {
    const LengthClass& c = r.at(k);
    std::uint64_t total = 0;
    for (int w = 1; w <= k; ++w) total += static_cast<std::uint64_t>(c.count_ones(w));
    std::uint64_t pick = rng.below(total);
    int w = 1;
    for (; w <= k; ++w) {
      const auto m = static_cast<std::uint64_t>(c.count_ones(w));
      if (pick < m) break;
      pick -= m;
    }
    const int drop = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(w)));
    e.skews.push_back(Skew{k, Composition{k - w, w}, Composition{k - w + drop, w - drop}});
  }
  return e;
}

std::vector<int> deleted_classes(const ErrorSpec& e, int n) {
  switch (e.model) {
    case ErrorModel::AsymDelete: {
      auto out = e.classes;
      std::sort(out.begin(), out.end());
      return out;
    }
    case ErrorModel::SymPairDelete:
    case ErrorModel::ConsecutiveSymPairDelete:
      return sym_pair_classes(n, e.pairs);
    default:
      return {};
  }
}

namespace {

void combinations(int n, int k, int first, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == k) {
    out.push_back(current);
    return;
  }
  for (int i = first; i <= n; ++i) {
    current.push_back(i);
    combinations(n, k, i + 1, current, out);
    current.pop_back();
  }
}

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  if (k >= 0 && k <= n) combinations(n, k, 1, current, out);
  return out;
}

}  // namespace

std::vector<std::vector<int>> maximal_patterns(ErrorModel model, int n, int t) {
  std::vector<std::vector<int>> out;
  const int m = half_up(n);
  const int pairs = n / 2;
  switch (model) {
    case ErrorModel::AsymDelete:
    case ErrorModel::Skew: {
      for (const auto& chosen : combinations(m, std::min(t, m))) {
        std::vector<std::vector<int>> partial{{}};
        for (int q : chosen) {
          std::vector<std::vector<int>> grown;
          for (const auto& p : partial) {
            grown.push_back(p);
            grown.back().push_back(q);
            if (partner(n, q) != q) {
              grown.push_back(p);
              grown.back().push_back(partner(n, q));
            }
          }
          partial = std::move(grown);
        }
        for (auto& p : partial) {
          std::sort(p.begin(), p.end());
          out.push_back(std::move(p));
        }
      }
      break;
    }
    case ErrorModel::SymPairDelete:
      for (const auto& chosen : combinations(pairs, std::min(t, pairs))) out.push_back(sym_pair_classes(n, chosen));
      break;
    case ErrorModel::ConsecutiveSymPairDelete: {
      const int len = std::min(t, pairs);
      for (int q = 1; q + len - 1 <= pairs; ++q) {
        std::vector<int> chosen(static_cast<std::size_t>(len));
        std::iota(chosen.begin(), chosen.end(), q);
        out.push_back(sym_pair_classes(n, chosen));
      }
      break;
    }
    case ErrorModel::Insert:
      out = combinations(n, std::min(t, n));
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool pattern_admissible(ErrorModel model, int n, int t, const std::vector<int>& classes) {
  std::set<int> pair_set;
  bool has_center = false;
  for (int k : classes) {
    if (k < 1 || k > n) return false;
    pair_set.insert(pair_index(n, k));
    if (partner(n, k) == k) has_center = true;
  }
  const int distinct = static_cast<int>(std::set<int>(classes.begin(), classes.end()).size());
  switch (model) {
    case ErrorModel::AsymDelete:
    case ErrorModel::Skew:
      return distinct <= t && static_cast<int>(pair_set.size()) == distinct;
    case ErrorModel::SymPairDelete:
      return !has_center && static_cast<int>(pair_set.size()) <= t;
    case ErrorModel::ConsecutiveSymPairDelete:
      return !has_center && (pair_set.empty() || *pair_set.rbegin() - *pair_set.begin() + 1 <= t);
    case ErrorModel::Insert:
      return distinct <= t;
  }
  return false;
}

}  // namespace polycomp
