#pragma once

#include <string>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "wvn/closed_set.hpp"
#include "wvn/domains.hpp"
#include "wvn/equivalence.hpp"
#include "wvn/eps_net.hpp"
#include "wvn/matching.hpp"
#include "wvn/metrics.hpp"
#include "wvn/sequence.hpp"
#include "wvn/spectra.hpp"
#include "wvn/turbulence.hpp"

namespace wvn {

using Json = nlohmann::json;

// Readers throw ParseError on malformed documents and unknown keys.

// { "label", "basis", "prefix": [..], "generator": str, "meta": { "bounded_above",
//   "bounded_below", "accumulation": { "points", "intervals", "progressions",
//   "abs_divergent" }, "finitely_many_isolated" } }
OperatorSpec operator_from_json(const Json& j);
Json to_json(const OperatorSpec& op);

Json to_json(const ClosedSetApprox& s);
ClosedSetApprox closed_set_from_json(const Json& j);

// { "dims": [int | "cap"], "lower_bounds": [bool], "growth": str | null, "label", "horizon" }
Json to_json(const BandProfile& p);
BandProfile band_profile_from_json(const Json& j);

// { "base", "target", "kind", "steps": [[{"idx", "shift"}]], "distances", "delta", "r", ... }
Json to_json(const OrbitWalk& w);

// { "re": [[..]], "im": [[..]] } ("im" optional).
Eigen::MatrixXcd matrix_from_json(const Json& j);

Json to_json(const SigmaBar& s);
Json to_json(const SpectrumReport& r);
Json to_json(const SrtDistance& d);
Json to_json(const NrtDistance& d);
Json to_json(const PermutationPlan& p);  // pi reported 1-based
Json to_json(const CompactCertificate& c);
Json to_json(const WvnConstruction& w);
Json to_json(const UcresResult& r);
Json to_json(const RelCompactReport& r);
Json to_json(const ObstructionResult& r);
Json to_json(const FWVerdict& v);
Json to_json(const DomainEquality& d);
Json to_json(const SignPartition& s);
Json to_json(const WalkCheck& c);
Json to_json(const EpsNetResult& r);
Json to_json(const PerturbationIntersection& r);
Json to_json(const TailMeta& m);

std::string to_string(TailStatus s);

}  // namespace wvn
