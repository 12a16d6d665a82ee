#pragma once

// Landweber-exactness verdicts over presented local rings and the K3
// spectrum certificates built on them.

#include "fgk3/ideal.hpp"
#include "fgk3/k3brauer.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgk3 {

/// Z_(p)-local[t_1..t_k] / (relations), truncated at total degree `cap`.
struct RingPresentation
{
	PrimeP p;
	std::vector<std::string> parameters;
	int cap = 12;
	std::vector<TruncPoly> relations;
	bool torsion_free_declared = true;

	/// Z_(p) itself (no parameters, no relations).
	static RingPresentation zp(PrimeP p, int cap = 12);
	static RingPresentation polynomial(PrimeP p, std::vector<std::string> parameters, int cap);
	/// Z_(p) / (p^k): the standard p-torsion example.
	static RingPresentation torsion(PrimeP p, int exponent = 2, int cap = 12);

	PolyRing poly_ring() const { return {parameters, cap}; }
	TruncPoly element(const std::string &text) const { return TruncPoly::parse(text, parameters, cap); }
	TruncPoly constant(const Rational &c) const { return TruncPoly(parameters, cap, c); }
	bool relation_free() const { return relations.empty(); }
	std::string describe() const;
};

struct RegularityVerdict
{
	enum class Status { regular, zerodivisor, unit, unknown };
	Status status;
	/// Nonzero element of R/(earlier) killed by the tested element.
	std::optional<TruncPoly> witness;
	std::string reason;

	static RegularityVerdict regular(std::string why) { return {Status::regular, std::nullopt, std::move(why)}; }
	static RegularityVerdict unit(std::string why) { return {Status::unit, std::nullopt, std::move(why)}; }
	static RegularityVerdict zerodivisor(TruncPoly w, std::string why) { return {Status::zerodivisor, std::move(w), std::move(why)}; }
	static RegularityVerdict unknown(std::string why) { return {Status::unknown, std::nullopt, std::move(why)}; }
};

std::string to_string(RegularityVerdict::Status s);

/// One verdict per element, each relative to the ideal generated by the
/// relations and the earlier elements. Throws std::invalid_argument when an
/// element is not expressible in R (wrong parameters or cap, or not p-integral).
std::vector<RegularityVerdict> check_regular_sequence(const RingPresentation &R, const std::vector<TruncPoly> &elems);

struct LandweberReport
{
	enum class Verdict { exact, not_exact, inconclusive };

	long p = 0;
	std::string ring;
	int series_cap = 0;
	int h_max = 0;
	LandweberIdealChain<PolyRing> chain;
	/// Verdicts for v_0 = p, v_1, ... up to the first unit or failure.
	std::vector<RegularityVerdict> verdicts;
	/// Index n at which v_n is a unit.
	std::optional<int> stabilization;
	HeightResult closed_fibre_height;
	Verdict verdict = Verdict::inconclusive;
	std::string reason;
	std::vector<std::string> notes;

	bool exact() const { return verdict == Verdict::exact; }
};

std::string to_string(LandweberReport::Verdict v);

LandweberReport landweber_check(const RingPresentation &R, const Logarithm<PolyRing> &l, int h_max);
LandweberReport landweber_check(const RingPresentation &R, const Logarithm<RationalField> &l, int h_max);
LandweberReport landweber_check(const RingPresentation &R, const FormalGroupLaw<PolyRing> &law, int h_max);
LandweberReport landweber_check(const RingPresentation &R, const FormalGroupLaw<RationalField> &law, int h_max);

/// Names accepted by run_scenario: zp-multiplicative, zp-additive,
/// hazewinkel-t1, torsion.
std::vector<std::string> builtin_scenarios();
LandweberReport run_scenario(const std::string &name, const PrimeP &p, int h_max, int cap = 12);

/// pi_{2n} = R u^n, odd groups zero.
struct HomotopyShadow
{
	std::string pi0;
	int min_n = -3;
	int max_n = 3;

	int rank(int degree) const { return degree % 2 == 0 ? 1 : 0; }
	/// Generator of pi_degree, or empty for odd degrees.
	std::string generator(int degree) const;
	/// Degree of the product of the generators of pi_a and pi_b.
	int product_degree(int a, int b) const { return a + b; }
	bool periodic() const;
	std::string lie_algebra() const { return "Lie(Gamma_E) = pi_{-2}E, the dual of pi_2E"; }
};

struct IsoRecord
{
	std::string coordinate;
	std::string normalization;
	std::string description;
};

struct K3SpectrumCertificate
{
	std::optional<RingPresentation> ring; ///< empty in the rational case
	std::string base;
	QuarticForm surface;
	FormalGroupLaw<RationalField> law;
	IsoRecord iso;
	HomotopyShadow homotopy;
	std::optional<LandweberReport> report; ///< empty in the rational case
	bool rational_case = false;
};

class CertificationRefused : public std::runtime_error
{
  public:
	CertificationRefused(LandweberReport report, const std::string &why)
	    : std::runtime_error("certification refused: " + why), report_(std::move(report))
	{
	}
	const LandweberReport &report() const { return report_; }

  private:
	LandweberReport report_;
};

class SmoothnessCheckFailed : public std::invalid_argument
{
  public:
	using std::invalid_argument::invalid_argument;
};

/// Cap of the bivariate law stored in certificates.
inline constexpr int kCertificateLawCap = 8;

K3SpectrumCertificate certify_k3_spectrum(const RingPresentation &R, const QuarticForm &f, int h_max);
K3SpectrumCertificate rational_certificate(const QuarticForm &f);

} // namespace fgk3
