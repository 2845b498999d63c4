#pragma once

// JSON formats for readouts, codebook specs, error specs, decode reports and
// witnesses. Output is canonical: the same value always produces the same bytes.

#include <string>
#include <string_view>

#include "json.hpp"
#include "polycomp/channel.hpp"
#include "polycomp/codebook.hpp"
#include "polycomp/composition.hpp"
#include "polycomp/oracle.hpp"
#include "polycomp/reconstruct.hpp"

namespace polycomp {

using Json = nlohmann::ordered_json;

// {"n":2,"classes":{"1":[[1,0],[0,1]],"2":[[1,1]]}}: classes by ascending k,
// each entry [z, w] repeated by multiplicity, ascending in w.
Json readout_to_json(const Readout& r);
std::string emit_readout(const Readout& r);
// Size anomalies are kept as data. Throws ParseError on malformed input,
// z + w != k, negative counts or k outside [1, n].
Readout readout_from_json(const Json& j);
Readout parse_readout(std::string_view text);

Json spec_to_json(const CodebookSpec& spec);
// Throws ParseError or SpecError.
CodebookSpec spec_from_json(const Json& j);
// "family,n[,t[,a]]", e.g. "SDA,12,2" or "SDS2,12,1,3". Throws SpecError.
CodebookSpec parse_spec_arg(std::string_view text);

Json error_spec_to_json(const ErrorSpec& e);
// Throws ParseError or InvalidErrorSpec.
ErrorSpec error_spec_from_json(const Json& j);

Json composition_to_json(const Composition& c);
Json report_to_json(const DecodeReport& report);
Json witness_to_json(const ConfusabilityWitness& w);
Json verify_to_json(const VerifyResult& v);

// Throws ParseError with the nlohmann diagnostic.
Json parse_json(std::string_view text);

}  // namespace polycomp
