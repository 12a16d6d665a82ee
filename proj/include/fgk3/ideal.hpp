#pragma once

// Ideals of the truncated local ring Z_(p)[t_1..t_k] / (total degree > D).
// The ring is a free Z_(p)-module on the monomials of degree <= D, and an
// ideal is the Z_(p)-span of all monomial multiples of its generators, so
// membership reduces to echelon elimination over the discrete valuation ring
// Z_(p): pivots are chosen of minimal valuation, which keeps every
// elimination multiplier p-integral.

#include "fgk3/coefficients.hpp"

#include <map>
#include <vector>

namespace fgk3 {

class LocalIdeal
{
  public:
	/// Generators must live in `variables` at `cap` and be p-integral
	/// (NonIntegral otherwise).
	LocalIdeal(PrimeP p, std::vector<std::string> variables, int cap, std::vector<TruncPoly> generators);

	const PrimeP &prime() const { return p_; }
	const std::vector<TruncPoly> &generators() const { return generators_; }

	bool contains(const TruncPoly &f) const;
	bool contains_all(const std::vector<TruncPoly> &fs) const;
	bool contains(const LocalIdeal &other) const { return contains_all(other.generators_); }
	/// True when 1 is in the ideal.
	bool is_whole_ring() const;

	/// The ideal with extra generators appended.
	LocalIdeal plus(const std::vector<TruncPoly> &more) const;

  private:
	std::vector<Rational> to_vector(const TruncPoly &f) const;

	PrimeP p_;
	std::vector<std::string> vars_;
	int cap_;
	std::vector<TruncPoly> generators_;
	std::vector<Exponents> monomials_;
	std::map<Exponents, std::size_t> column_of_;
	struct PivotRow
	{
		std::size_t column;
		std::vector<Rational> row;
	};
	std::vector<PivotRow> echelon_; // sorted by pivot column
};

/// Mutual containment.
bool ideals_equal(const LocalIdeal &a, const LocalIdeal &b);

} // namespace fgk3
