#pragma once

// Coefficient-ring descriptors. A ring object carries whatever context its
// elements need (modulus, parameter names, degree cap); elements are plain
// values. Series and formal group laws are parameterised over these.

#include "fgk3/coefficients.hpp"

#include <concepts>
#include <optional>
#include <string>

namespace fgk3 {

template <class R>
concept CoefficientRing = requires(const R &r, const typename R::value_type &a, const Integer &n) {
	{ r.zero() } -> std::same_as<typename R::value_type>;
	{ r.one() } -> std::same_as<typename R::value_type>;
	{ r.from_integer(n) } -> std::same_as<typename R::value_type>;
	{ r.add(a, a) } -> std::same_as<typename R::value_type>;
	{ r.sub(a, a) } -> std::same_as<typename R::value_type>;
	{ r.mul(a, a) } -> std::same_as<typename R::value_type>;
	{ r.neg(a) } -> std::same_as<typename R::value_type>;
	{ r.is_zero(a) } -> std::convertible_to<bool>;
	{ r.divide(a, n) } -> std::same_as<std::optional<typename R::value_type>>;
	{ r.inverse(a) } -> std::same_as<std::optional<typename R::value_type>>;
	{ r.str(a) } -> std::convertible_to<std::string>;
	{ r.describe() } -> std::convertible_to<std::string>;
	{ r == r } -> std::convertible_to<bool>;
};

/// The rational numbers.
struct RationalField
{
	using value_type = Rational;

	Rational zero() const { return 0; }
	Rational one() const { return 1; }
	Rational from_integer(const Integer &n) const { return Rational(n); }
	Rational add(const Rational &a, const Rational &b) const { return a + b; }
	Rational sub(const Rational &a, const Rational &b) const { return a - b; }
	Rational mul(const Rational &a, const Rational &b) const { return a * b; }
	Rational neg(const Rational &a) const { return -a; }
	bool is_zero(const Rational &a) const { return a == 0; }
	std::optional<Rational> divide(const Rational &a, const Integer &n) const
	{
		if (n == 0)
			return std::nullopt;
		return Rational(a / Rational(n));
	}
	std::optional<Rational> inverse(const Rational &a) const
	{
		if (a == 0)
			return std::nullopt;
		return Rational(1 / a);
	}
	std::string str(const Rational &a) const { return to_string(a); }
	std::string describe() const { return "Q"; }
	bool operator==(const RationalField &) const { return true; }
};

/// Z/p^M as a coefficient ring.
struct ResidueField
{
	using value_type = Integer;

	ResidueRing ring;

	Integer zero() const { return 0; }
	Integer one() const { return ring.canonical(1); }
	Integer from_integer(const Integer &n) const { return ring.canonical(n); }
	Integer add(const Integer &a, const Integer &b) const { return ring.add(a, b); }
	Integer sub(const Integer &a, const Integer &b) const { return ring.sub(a, b); }
	Integer mul(const Integer &a, const Integer &b) const { return ring.mul(a, b); }
	Integer neg(const Integer &a) const { return ring.canonical(-a); }
	bool is_zero(const Integer &a) const { return a == 0; }
	std::optional<Integer> divide(const Integer &a, const Integer &n) const
	{
		auto inv = ring.inverse(ring.canonical(n));
		if (!inv)
			return std::nullopt;
		return ring.mul(a, *inv);
	}
	std::optional<Integer> inverse(const Integer &a) const { return ring.inverse(a); }
	std::string str(const Integer &a) const { return to_string(a); }
	std::string describe() const { return ring.describe(); }
	bool operator==(const ResidueField &o) const { return ring == o.ring; }
};

/// Q[t_1..t_k] truncated at total degree `cap`, the rationalisation of a
/// presented local ring.
struct PolyRing
{
	using value_type = TruncPoly;

	std::vector<std::string> variables;
	int cap = 0;

	TruncPoly zero() const { return TruncPoly(variables, cap); }
	TruncPoly one() const { return TruncPoly(variables, cap, 1); }
	TruncPoly from_integer(const Integer &n) const { return TruncPoly(variables, cap, Rational(n)); }
	TruncPoly constant(const Rational &c) const { return TruncPoly(variables, cap, c); }
	TruncPoly variable(std::size_t i) const { return TruncPoly::variable(variables, cap, i); }
	TruncPoly add(const TruncPoly &a, const TruncPoly &b) const { return a + b; }
	TruncPoly sub(const TruncPoly &a, const TruncPoly &b) const { return a - b; }
	TruncPoly mul(const TruncPoly &a, const TruncPoly &b) const { return a * b; }
	TruncPoly neg(const TruncPoly &a) const { return -a; }
	bool is_zero(const TruncPoly &a) const { return a.is_zero(); }
	std::optional<TruncPoly> divide(const TruncPoly &a, const Integer &n) const
	{
		if (n == 0)
			return std::nullopt;
		return a * make_rational(1, n);
	}
	/// Units are exactly the elements with nonzero constant term; the inverse
	/// is a finite geometric series because positive-degree parts are nilpotent.
	std::optional<TruncPoly> inverse(const TruncPoly &a) const
	{
		Rational c = a.constant_term();
		if (c == 0)
			return std::nullopt;
		TruncPoly x = a * (1 / c) - one(); // a = c(1 + x)
		TruncPoly result = one();
		TruncPoly term = one();
		for (int k = 1; k <= cap; ++k)
		{
			term = term * -x;
			if (term.is_zero())
				break;
			result += term;
		}
		return result * (1 / c);
	}
	std::string str(const TruncPoly &a) const { return a.str(); }
	std::string describe() const;
	bool operator==(const PolyRing &o) const { return variables == o.variables && cap == o.cap; }
};

inline std::string PolyRing::describe() const
{
	if (variables.empty())
		return "Q";
	std::string s = "Q[";
	for (std::size_t i = 0; i < variables.size(); ++i)
		s += (i ? "," : "") + variables[i];
	return s + "]/(deg>" + std::to_string(cap) + ")";
}

static_assert(CoefficientRing<RationalField>);
static_assert(CoefficientRing<ResidueField>);
static_assert(CoefficientRing<PolyRing>);

} // namespace fgk3
