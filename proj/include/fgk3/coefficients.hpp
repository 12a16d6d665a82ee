#pragma once

// Exact arithmetic foundation: big integers and rationals, p-adic
// valuations, residue rings Z/p^M and sparse truncated polynomials.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgk3 {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms with a positive denominator.
Rational make_rational(const Integer &num, const Integer &den = 1);

std::string to_string(const Integer &x);
std::string to_string(const Rational &x);
/// Parses "a" or "a/b".
Rational parse_rational(const std::string &text);

/// An odd prime. Primality is checked by trial division on construction.
class PrimeP
{
  public:
	explicit PrimeP(long p);

	long value() const { return p_; }
	Integer integer() const { return Integer(p_); }

	auto operator<=>(const PrimeP &) const = default;

  private:
	long p_;
};

bool is_prime(long n);

/// p-adic valuation; infinite exactly for zero.
class Valuation
{
  public:
	constexpr Valuation() : infinite_(true) {}
	constexpr explicit Valuation(long v) : value_(v), infinite_(false) {}
	static constexpr Valuation infinity() { return Valuation(); }

	bool is_infinite() const { return infinite_; }
	/// Only meaningful when finite.
	long value() const;

	bool operator==(const Valuation &) const = default;
	std::strong_ordering operator<=>(const Valuation &o) const;

	std::string str() const;

  private:
	long value_ = 0;
	bool infinite_;
};

Valuation val_p(const Integer &x, const PrimeP &p);
Valuation val_p(const Rational &x, const PrimeP &p);
inline bool is_p_integral(const Rational &x, const PrimeP &p) { return val_p(x, p) >= Valuation(0); }

/// Raised whenever a quantity with negative p-adic valuation would have to be
/// reduced modulo p. `degree` locates the offending series coefficient when
/// known (-1 otherwise).
class NonIntegral : public std::domain_error
{
  public:
	NonIntegral(Rational value, const PrimeP &p, long degree = -1, const std::string &context = "");

	const Rational &value() const { return value_; }
	long prime() const { return prime_; }
	long degree() const { return degree_; }
	NonIntegral at_degree(long degree, const std::string &context) const;

  private:
	Rational value_;
	long prime_;
	long degree_;
};

/// Raised when an operation needs to divide by something that is not
/// invertible in the coefficient ring.
class DivisionFailure : public std::domain_error
{
  public:
	using std::domain_error::domain_error;
};

Integer factorial(long n);
/// n! / (parts[0]! ... parts[r-1]!); parts must be non-negative and sum to n.
Integer multinomial(long n, std::span<const long> parts);

/// Z/p^M with elements stored as canonical residues in [0, p^M).
class ResidueRing
{
  public:
	ResidueRing(PrimeP p, int precision);

	const PrimeP &prime() const { return p_; }
	int precision() const { return precision_; }
	const Integer &modulus() const { return modulus_; }

	Integer canonical(const Integer &x) const;
	/// Throws NonIntegral when val_p(x) < 0.
	Integer reduce(const Rational &x) const;

	Integer add(const Integer &a, const Integer &b) const { return canonical(a + b); }
	Integer sub(const Integer &a, const Integer &b) const { return canonical(a - b); }
	Integer mul(const Integer &a, const Integer &b) const { return canonical(a * b); }
	std::optional<Integer> inverse(const Integer &a) const;

	bool operator==(const ResidueRing &o) const { return p_ == o.p_ && precision_ == o.precision_; }
	std::string describe() const;

  private:
	PrimeP p_;
	int precision_;
	Integer modulus_;
};

inline Integer reduce_mod(const Rational &x, const ResidueRing &ring) { return ring.reduce(x); }

using Exponents = std::vector<int>;

/// Polynomial over Q in named parameters, truncated at total degree `cap`.
/// Terms are stored sparsely and never hold zero coefficients.
class TruncPoly
{
  public:
	TruncPoly() = default;
	TruncPoly(std::vector<std::string> variables, int cap);
	TruncPoly(std::vector<std::string> variables, int cap, const Rational &constant);

	static TruncPoly variable(std::vector<std::string> variables, int cap, std::size_t index);
	static TruncPoly monomial(std::vector<std::string> variables, int cap, Exponents e, const Rational &c = 1);
	/// Parses sums of terms like "3*t^2*s - 1/2*t + 7".
	static TruncPoly parse(const std::string &text, std::vector<std::string> variables, int cap);

	const std::vector<std::string> &variables() const { return vars_; }
	int cap() const { return cap_; }
	const std::map<Exponents, Rational> &terms() const { return terms_; }
	/// Number of terms dropped by truncation while producing this value.
	long truncated_terms() const { return dropped_; }

	bool is_zero() const { return terms_.empty(); }
	Rational coefficient(const Exponents &e) const;
	Rational constant_term() const;
	int lowest_degree() const;

	void add_term(const Exponents &e, const Rational &c);

	TruncPoly operator-() const;
	TruncPoly &operator+=(const TruncPoly &o);
	TruncPoly &operator-=(const TruncPoly &o);
	TruncPoly &operator*=(const Rational &c);
	friend TruncPoly operator+(TruncPoly a, const TruncPoly &b) { return a += b; }
	friend TruncPoly operator-(TruncPoly a, const TruncPoly &b) { return a -= b; }
	friend TruncPoly operator*(const TruncPoly &a, const TruncPoly &b);
	friend TruncPoly operator*(TruncPoly a, const Rational &c) { return a *= c; }

	bool operator==(const TruncPoly &o) const { return vars_ == o.vars_ && cap_ == o.cap_ && terms_ == o.terms_; }

	TruncPoly pow(unsigned long n) const;
	/// Minimum p-adic valuation over all coefficients.
	Valuation valuation(const PrimeP &p) const;
	TruncPoly truncated(int cap) const;

	std::string str() const;

  private:
	void check_compatible(const TruncPoly &o) const;

	std::vector<std::string> vars_;
	int cap_ = 0;
	std::map<Exponents, Rational> terms_;
	long dropped_ = 0;
};

enum class PolyOp { add, mul };
/// Sum or product; throws std::invalid_argument on mismatched variables or caps.
TruncPoly trunc_poly_arith(const TruncPoly &a, const TruncPoly &b, PolyOp op);

/// All exponent vectors in `nvars` variables of total degree <= cap, ordered by
/// degree then lexicographically.
std::vector<Exponents> monomials_up_to(std::size_t nvars, int cap);

} // namespace fgk3
