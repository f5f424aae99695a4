#pragma once

// JSON views of the module results. Field order is fixed (ordered_json) so the
// results block of a rerun is byte-identical.

#include "tubecalc/amenability.hpp"
#include "tubecalc/annular_checks.hpp"
#include "tubecalc/betti.hpp"
#include "tubecalc/fusion.hpp"
#include "tubecalc/tube.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace tubecalc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.3.0";

/// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

Json to_json(const FusionRing& ring, const std::vector<AxiomFailure>& failures);
Json to_json(const BettiZeroReport& r);
Json to_json(const HochschildWitness& w);
Json to_json(const VerificationReport& r);
Json to_json(const CornerMatch& c);
Json to_json(const HomologyReport& h);
Json to_json(const annular::H0Report& r);
Json to_json(const annular::H1Report& r);
Json to_json(const annular::H2Report& r);
Json to_json(const annular::TruncatedHomology& r);
Json to_json(const BettiProfile& p);
Json to_json(const FolnerReport& r, const WeightedGraph& g);
Json to_json(const KestenReport& r);

/// Plain-text rendering of a report, derived from the JSON only.
std::string render_text(const Json& report);

}  // namespace tubecalc
