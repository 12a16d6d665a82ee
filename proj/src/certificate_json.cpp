#include "fgk3/certificate_json.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#ifndef FGK3_VERSION
#define FGK3_VERSION "dev"
#endif

namespace fgk3 {

std::string tool_version() { return FGK3_VERSION; }

std::string utc_timestamp()
{
	auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
	std::tm tm{};
	gmtime_r(&now, &tm);
	char buf[32];
	std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
	return buf;
}

namespace {

void stamp(Json &j, const JsonOptions &opts)
{
	j["tool_version"] = tool_version();
	if (opts.timestamp)
		j["generated_at"] = utc_timestamp();
}

Json strings(const std::vector<TruncPoly> &xs)
{
	Json a = Json::array();
	for (const auto &x : xs)
		a.push_back(x.str());
	return a;
}

Json height_to_json(const HeightResult &h)
{
	Json j;
	j["kind"] = h.is_finite() ? "finite" : "at_least";
	j["h"] = h.h;
	if (h.first_nonzero_degree)
		j["first_nonzero_degree"] = *h.first_nonzero_degree;
	else
		j["first_nonzero_degree"] = nullptr;
	return j;
}

Json quartic_to_json(const QuarticForm &f)
{
	Json j;
	j["name"] = f.name();
	j["polynomial"] = f.str();
	Json terms = Json::array();
	for (const auto &[e, c] : f.terms())
		terms.push_back(Json::array({e[0], e[1], e[2], e[3], c.get_str()}));
	j["terms"] = terms;
	return j;
}

} // namespace

Json ring_to_json(const RingPresentation &R)
{
	Json j;
	j["p"] = R.p.value();
	j["parameters"] = R.parameters;
	j["cap"] = R.cap;
	j["relations"] = strings(R.relations);
	j["torsion_free"] = R.torsion_free_declared;
	j["description"] = R.describe();
	return j;
}

RingPresentation ring_from_json(const Json &j)
{
	if (!j.is_object())
		throw std::invalid_argument("ring presentation must be a JSON object");
	if (!j.contains("p") || !j["p"].is_number_integer())
		throw std::invalid_argument("ring presentation needs an integer field \"p\"");
	PrimeP p(j["p"].get<long>());
	int cap = j.value("cap", 12);
	if (cap < 1)
		throw std::invalid_argument("ring presentation cap must be positive");
	std::vector<std::string> params;
	if (j.contains("parameters"))
		params = j["parameters"].get<std::vector<std::string>>();
	RingPresentation R{p, params, cap, {}, true};
	if (j.contains("relations"))
		for (const auto &rel : j["relations"])
			R.relations.push_back(R.element(rel.get<std::string>()));
	R.torsion_free_declared = j.value("torsion_free", R.relations.empty());
	return R;
}

RingPresentation load_ring(const std::string &name_or_path, std::optional<long> p, int cap)
{
	if (name_or_path == "zp")
	{
		if (!p)
			throw std::invalid_argument("--ring zp needs --p");
		return RingPresentation::zp(PrimeP(*p), cap);
	}
	std::ifstream in(name_or_path);
	if (!in)
		throw std::invalid_argument("cannot open ring presentation '" + name_or_path + "'");
	Json j;
	try
	{
		j = Json::parse(in);
	}
	catch (const nlohmann::json::parse_error &e)
	{
		throw std::invalid_argument("ring presentation '" + name_or_path + "': " + e.what());
	}
	if (!j.contains("p") && p)
		j["p"] = *p;
	if (!j.contains("cap"))
		j["cap"] = cap;
	if (p && j["p"].get<long>() != *p)
		throw std::invalid_argument("--p " + std::to_string(*p) + " disagrees with p = " +
		                            std::to_string(j["p"].get<long>()) + " in " + name_or_path);
	return ring_from_json(j);
}

Json law_to_json(const FormalGroupLaw<RationalField> &law)
{
	Json j;
	j["cap"] = law.cap();
	j["provenance"] = law.provenance();
	Json coeffs = Json::array();
	for (int d = 1; d <= law.cap(); ++d)
		for (int i = d; i >= 0; --i)
		{
			Rational c = law.coefficient(i, d - i);
			if (c != 0)
				coeffs.push_back(Json::array({i, d - i, to_string(c)}));
		}
	j["coefficients"] = coeffs;
	return j;
}

Json verdict_to_json(const RegularityVerdict &v)
{
	Json j;
	j["status"] = to_string(v.status);
	j["witness"] = v.witness ? Json(v.witness->str()) : Json(nullptr);
	j["reason"] = v.reason;
	return j;
}

Json report_to_json(const LandweberReport &rep, const JsonOptions &opts)
{
	Json j;
	j["schema"] = kReportSchema;
	j["p"] = rep.p;
	j["ring"] = rep.ring;
	j["series_cap"] = rep.series_cap;
	j["h_max"] = rep.h_max;
	j["verdict"] = to_string(rep.verdict);
	j["reason"] = rep.reason;
	j["stabilization"] = rep.stabilization ? Json(*rep.stabilization) : Json(nullptr);
	j["closed_fibre_height"] = height_to_json(rep.closed_fibre_height);
	j["v"] = strings(rep.chain.v);
	Json verdicts = Json::array();
	for (std::size_t n = 0; n < rep.verdicts.size(); ++n)
	{
		Json v = verdict_to_json(rep.verdicts[n]);
		Json entry;
		entry["element"] = "v_" + std::to_string(n);
		for (auto &[k, val] : v.items())
			entry[k] = val;
		verdicts.push_back(entry);
	}
	j["verdicts"] = verdicts;
	Json chain = Json::array();
	for (std::size_t n = 0; n < rep.chain.generators.size(); ++n)
		chain.push_back(strings(rep.chain.generators[n]));
	j["ideal_chain"] = chain;
	j["notes"] = rep.notes;
	stamp(j, opts);
	return j;
}

Json certificate_to_json(const K3SpectrumCertificate &cert, const JsonOptions &opts)
{
	Json j;
	j["schema"] = kCertificateSchema;
	j["kind"] = cert.rational_case ? "rational" : "landweber";
	j["base"] = cert.base;
	j["ring"] = cert.ring ? ring_to_json(*cert.ring) : Json(nullptr);
	j["surface"] = quartic_to_json(cert.surface);
	j["law"] = law_to_json(cert.law);

	Json iso;
	iso["coordinate"] = cert.iso.coordinate;
	iso["normalization"] = cert.iso.normalization;
	iso["description"] = cert.iso.description;
	j["iso"] = iso;

	const auto &H = cert.homotopy;
	Json hom;
	hom["pi0"] = H.pi0;
	Json groups = Json::array();
	// odd groups vanish and are not listed
	for (int d = 2 * H.min_n; d <= 2 * H.max_n; d += 2)
	{
		Json g;
		g["degree"] = d;
		g["rank"] = H.rank(d);
		g["generator"] = H.generator(d);
		groups.push_back(g);
	}
	hom["groups"] = groups;
	hom["periodic"] = H.periodic();
	hom["lie_algebra"] = H.lie_algebra();
	j["homotopy"] = hom;

	if (cert.report)
		j["report"] = report_to_json(*cert.report, {.timestamp = false});
	else
		j["report"] = "rational_case";
	stamp(j, opts);
	return j;
}

} // namespace fgk3
