#pragma once

#include <string>

#include <json.hpp>

#include "fraisse/amalgam.hpp"
#include "fraisse/bm_game.hpp"
#include "fraisse/dichotomy.hpp"
#include "fraisse/extension.hpp"
#include "fraisse/katetov.hpp"
#include "fraisse/wreath.hpp"

namespace fraisse {

using Json = nlohmann::json;

// Every *_from_json throws InputError on malformed input.

Json rational_to_json(const Rational& r);  // "p/q", or "p" for integers
Rational rational_from_json(const Json& j);

Json signature_to_json(const Signature& sig);
SignaturePtr signature_from_json(const Json& j);

// {"signature":[{"name","arity"}], "n", "interp":{name: sorted tuples}}
Json structure_to_json(const FinStructure& s);
// With `expected`, the file's signature must equal it and the result shares the pointer.
FinStructure structure_from_json(const Json& j, const SignaturePtr& expected = nullptr);

Json map_to_json(const PartialMap& f);  // [[a, b], ...]
PartialMap map_from_json(const Json& j);
Json violation_to_json(const Violation& v, const Signature* sig = nullptr);
Violation violation_from_json(const Json& j);

// {"n", "d": row-major "p/q" strings, "bound"?}
Json metric_to_json(const MetricSpace& X);
MetricSpace metric_from_json(const Json& j);
Json katetov_map_to_json(const KatetovMap& g);
KatetovMap katetov_map_from_json(const Json& j);

// {"I", "H_generators", "block_sizes"}
Json wreath_spec_to_json(const WreathSpec& w);
WreathSpec wreath_spec_from_json(const Json& j);

Json approx_to_json(const LimitApprox& a);
LimitApprox approx_from_json(const Json& j);
Json partition_to_json(const AbsorbingPartition& p);
AbsorbingPartition partition_from_json(const Json& j);
Json bundle_to_json(const Bundle& b);
Bundle bundle_from_json(const Json& j);

Json witness_to_json(const SplitWitness& w);
SplitWitness witness_from_json(const Json& j, const SignaturePtr& sig);
Json split_search_to_json(const SplitSearch& s);
SplitSearch split_search_from_json(const Json& j, const SignaturePtr& sig);
Json control_to_json(const ControlCertificate& c);
ControlCertificate control_from_json(const Json& j, const SignaturePtr& sig);
Json dichotomy_to_json(const DichotomyReport& r);
DichotomyReport dichotomy_from_json(const Json& j);

Json property_report_to_json(const PropertyReport& r);
Json closure_report_to_json(const ClosureReport& r);
Json extension_result_to_json(const ExtensionResult& r);
Json wreath_report_to_json(const WreathReport& r);
Json aut_group_to_json(const AutGroup& g);
Json type_tree_to_json(const TypeTree& t);
TypeTree type_tree_from_json(const Json& j);

Json transcript_to_json(const GameState& s);
GameState transcript_from_json(const Json& j);
Json metric_transcript_to_json(const MetricGameState& s);
MetricGameState metric_transcript_from_json(const Json& j);

Json read_json_file(const std::string& path);  // "-" reads stdin
void write_json_file(const std::string& path, const Json& j);  // "-" writes stdout

}  // namespace fraisse
