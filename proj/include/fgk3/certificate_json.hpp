#pragma once

// JSON documents for certificates, Landweber reports and ring presentations.
// Field order is fixed (ordered_json) so that outputs diff cleanly.

#include "fgk3/landweber.hpp"

#include <json.hpp>

namespace fgk3 {

using Json = nlohmann::ordered_json;

inline constexpr const char *kCertificateSchema = "fgk3.certificate/1";
inline constexpr const char *kReportSchema = "fgk3.landweber-report/1";
inline constexpr const char *kRingSchema = "fgk3.ring/1";

std::string tool_version();

struct JsonOptions
{
	bool timestamp = true;
};

Json ring_to_json(const RingPresentation &R);
/// Accepts {"p", "parameters", "cap", "relations": [strings], "torsion_free"};
/// only "p" is required. Throws std::invalid_argument on malformed input.
RingPresentation ring_from_json(const Json &j);
/// "zp", or a path to a JSON file in the format above. `p` and `cap` fill in
/// for "zp" and for files that omit them.
RingPresentation load_ring(const std::string &name_or_path, std::optional<long> p, int cap);

Json law_to_json(const FormalGroupLaw<RationalField> &law);
Json verdict_to_json(const RegularityVerdict &v);
Json report_to_json(const LandweberReport &rep, const JsonOptions &opts = {});
Json certificate_to_json(const K3SpectrumCertificate &cert, const JsonOptions &opts = {});

/// UTC, ISO 8601.
std::string utc_timestamp();

} // namespace fgk3
