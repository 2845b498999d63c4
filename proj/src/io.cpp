#include "polycomp/io.hpp"

#include <charconv>

#include "polycomp/errors.hpp"

namespace polycomp {

namespace {

int to_int(const Json& j, std::string_view what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  const auto v = j.get<long long>();
  if (v < -1'000'000'000LL || v > 1'000'000'000LL) throw ParseError(std::string(what) + " is out of range");
  return static_cast<int>(v);
}

int to_count(const Json& j, std::string_view what) {
  const int v = to_int(j, what);
  if (v < 0) throw ParseError(std::string(what) + " must not be negative");
  return v;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Composition composition_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("a composition is a [zeros, ones] pair");
  return Composition{to_count(j[0], "zeros"), to_count(j[1], "ones")};
}

Json skew_to_json(const Skew& s) {
  return Json{{"k", s.k}, {"from", composition_to_json(s.from)}, {"to", composition_to_json(s.to)}};
}

Skew skew_from_json(const Json& j) {
  return Skew{to_int(field(j, "k"), "k"), composition_from_json(field(j, "from")), composition_from_json(field(j, "to"))};
}

int parse_int(std::string_view text, std::string_view what) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw SpecError(std::string(what) + " must be an integer, got '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Json composition_to_json(const Composition& c) { return Json::array({c.zeros, c.ones}); }

Json readout_to_json(const Readout& r) {
  Json classes = Json::object();
  for (const auto& [k, c] : r.classes()) {
    Json entries = Json::array();
    for (const auto& [comp, mult] : c.entries()) {
      for (int i = 0; i < mult; ++i) entries.push_back(composition_to_json(comp));
    }
    classes[std::to_string(k)] = std::move(entries);
  }
  return Json{{"n", r.n()}, {"classes", std::move(classes)}};
}

std::string emit_readout(const Readout& r) { return readout_to_json(r).dump(); }

Readout readout_from_json(const Json& j) {
  const int n = to_int(field(j, "n"), "n");
  if (n < 1 || n > static_cast<int>(BitString::kMaxLength)) {
    throw ParseError("n must lie in [1, " + std::to_string(BitString::kMaxLength) + "]");
  }
  const Json& classes = field(j, "classes");
  if (!classes.is_object()) throw ParseError("'classes' must be an object keyed by fragment length");
  Readout r(n);
  for (const auto& [key, entries] : classes.items()) {
    int k = 0;
    const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), k);
    if (key.empty() || ec != std::errc{} || ptr != key.data() + key.size()) {
      throw ParseError("class key '" + key + "' is not an integer");
    }
    if (k < 1 || k > n) throw ParseError("class " + key + " outside [1, " + std::to_string(n) + "]");
    if (r.has_class(k)) throw ParseError("class " + key + " listed twice");
    if (!entries.is_array()) throw ParseError("class " + key + " must be an array of [zeros, ones] pairs");
    LengthClass c(k);
    for (const auto& e : entries) {
      const Composition comp = composition_from_json(e);
      if (comp.length() != k) {
        throw ParseError("entry " + to_string(comp) + " in class " + key + " does not have length " + key);
      }
      c.add(comp);
    }
    r.put(std::move(c));
  }
  return r;
}

Readout parse_readout(std::string_view text) { return readout_from_json(parse_json(text)); }

Json spec_to_json(const CodebookSpec& spec) {
  return Json{{"family", std::string(to_string(spec.family))}, {"n", spec.n}, {"t", spec.t}, {"a", spec.a}};
}

CodebookSpec spec_from_json(const Json& j) {
  const auto& family = field(j, "family");
  if (!family.is_string()) throw ParseError("'family' must be a string");
  const int t = j.contains("t") ? to_int(j.at("t"), "t") : 1;
  const int a = j.contains("a") ? to_int(j.at("a"), "a") : 0;
  return CodebookSpec::make(parse_family(family.get<std::string>()), to_int(field(j, "n"), "n"), t, a);
}

CodebookSpec parse_spec_arg(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() < 2 || parts.size() > 4) throw SpecError("spec must look like family,n[,t[,a]]");
  const Family family = parse_family(parts[0]);
  const int n = parse_int(parts[1], "n");
  const int t = parts.size() > 2 ? parse_int(parts[2], "t") : (family == Family::SDSprime ? 2 : 1);
  const int a = parts.size() > 3 ? parse_int(parts[3], "a") : 0;
  return CodebookSpec::make(family, n, t, a);
}

Json error_spec_to_json(const ErrorSpec& e) {
  Json j{{"model", std::string(to_string(e.model))}};
  if (e.random) {
    j["count"] = e.random->count;
    j["seed"] = e.random->seed;
    if (e.random->per_class != 1) j["per_class"] = e.random->per_class;
    return j;
  }
  Json targets = Json::array();
  switch (e.model) {
    case ErrorModel::AsymDelete:
      for (int k : e.classes) targets.push_back(k);
      break;
    case ErrorModel::SymPairDelete:
    case ErrorModel::ConsecutiveSymPairDelete:
      for (int q : e.pairs) targets.push_back(q);
      break;
    case ErrorModel::Insert:
      for (const auto& ins : e.insertions) targets.push_back(Json{{"k", ins.k}, {"entry", composition_to_json(ins.entry)}});
      break;
    case ErrorModel::Skew:
      for (const auto& s : e.skews) targets.push_back(skew_to_json(s));
      break;
  }
  j["targets"] = std::move(targets);
  return j;
}

ErrorSpec error_spec_from_json(const Json& j) {
  const auto& model = field(j, "model");
  if (!model.is_string()) throw ParseError("'model' must be a string");
  ErrorSpec e;
  e.model = parse_error_model(model.get<std::string>());
  if (j.contains("count")) {
    RandomDraw draw;
    draw.count = to_count(j.at("count"), "count");
    const auto& seed = field(j, "seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
      throw ParseError("'seed' must be a non-negative integer");
    }
    draw.seed = seed.get<std::uint64_t>();
    if (j.contains("per_class")) draw.per_class = to_count(j.at("per_class"), "per_class");
    e.random = draw;
    return e;
  }
  const auto& targets = field(j, "targets");
  if (!targets.is_array()) throw ParseError("'targets' must be an array");
  for (const auto& t : targets) {
    switch (e.model) {
      case ErrorModel::AsymDelete:
        e.classes.push_back(to_int(t, "class"));
        break;
      case ErrorModel::SymPairDelete:
      case ErrorModel::ConsecutiveSymPairDelete:
        e.pairs.push_back(to_int(t, "pair index"));
        break;
      case ErrorModel::Insert:
        e.insertions.push_back(Insertion{to_int(field(t, "k"), "k"), composition_from_json(field(t, "entry"))});
        break;
      case ErrorModel::Skew:
        e.skews.push_back(skew_from_json(t));
        break;
    }
  }
  return e;
}

Json report_to_json(const DecodeReport& report) {
  Json consistent = Json::array();
  for (const auto& s : report.consistent_set) consistent.push_back(s.to_string());
  return Json{{"status", std::string(to_string(report.status))},
              {"result", report.result ? Json(report.result->to_string()) : Json(nullptr)},
              {"reason", report.reason},
              {"dropped_classes", report.dropped_classes},
              {"pattern", report.pattern},
              {"backtracks", report.backtracks},
              {"max_detection_lag", report.max_detection_lag},
              {"sigma_candidates", report.sigma_candidates},
              {"consistent_set", std::move(consistent)}};
}

Json witness_to_json(const ConfusabilityWitness& w) {
  Json j{{"spec", spec_to_json(w.spec)},
         {"model", std::string(to_string(w.model))},
         {"t", w.t},
         {"s", w.s.to_string()},
         {"v", w.v.to_string()},
         {"pattern", w.pattern}};
  if (w.model == ErrorModel::Skew) {
    Json s_skews = Json::array();
    Json v_skews = Json::array();
    for (const auto& sk : w.s_skews) s_skews.push_back(skew_to_json(sk));
    for (const auto& sk : w.v_skews) v_skews.push_back(skew_to_json(sk));
    j["s_skews"] = std::move(s_skews);
    j["v_skews"] = std::move(v_skews);
  }
  return j;
}

Json verify_to_json(const VerifyResult& v) {
  return Json{{"ok", v.ok},
              {"codewords", v.codewords},
              {"patterns", v.patterns},
              {"witness", v.witness ? witness_to_json(*v.witness) : Json(nullptr)}};
}

}  // namespace polycomp
