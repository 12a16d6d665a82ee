#pragma once

// Shared helpers for the unit tests: seeded random inputs and brute-force
// oracles that do not route through the library code under test.

#include "fgk3/fgl.hpp"

#include <map>
#include <random>
#include <vector>

namespace testing_support {

using namespace fgk3;

inline std::mt19937 &rng()
{
	static std::mt19937 gen(987654321u);
	return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline Rational random_rational(long span = 30)
{
	long den = uniform(1, span);
	Rational r(uniform(-span, span), den);
	r.canonicalize();
	return r;
}

inline Rational random_nonzero_rational(long span = 30)
{
	for (;;)
	{
		auto r = random_rational(span);
		if (r != 0)
			return r;
	}
}

/// Random series a_1 T + ... with a_1 != 0 (and a_0 = 0).
inline Series1<RationalField> random_unit_series(int cap, long span = 6)
{
	Series1<RationalField> s(RationalField{}, cap);
	s.set(1, random_nonzero_rational(span));
	for (int d = 2; d <= cap; ++d)
		s.set(d, random_rational(span));
	return s;
}

inline Series1<RationalField> series_of(std::vector<Rational> coeffs, int cap)
{
	Series1<RationalField> s(RationalField{}, cap);
	for (std::size_t d = 0; d < coeffs.size(); ++d)
		s.set(static_cast<int>(d), coeffs[d]);
	return s;
}

/// Valuation by repeated division, independent of mpz_remove.
inline long trial_valuation(Integer n, long p)
{
	long v = 0;
	while (n != 0 && n % p == 0)
	{
		n /= p;
		++v;
	}
	return v;
}

inline Integer naive_factorial(long n)
{
	Integer r = 1;
	for (long k = 2; k <= n; ++k)
		r *= k;
	return r;
}

/// Dense product of two univariate coefficient lists truncated at `cap`.
inline std::vector<Rational> dense_mul(const std::vector<Rational> &a, const std::vector<Rational> &b, int cap)
{
	std::vector<Rational> c(cap + 1, 0);
	for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= cap; ++i)
		for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= cap; ++j)
			c[i + j] += a[i] * b[j];
	return c;
}

/// a(b(T)) by Horner on dense lists, b[0] == 0.
inline std::vector<Rational> dense_compose(const std::vector<Rational> &a, const std::vector<Rational> &b, int cap)
{
	std::vector<Rational> acc(cap + 1, 0);
	for (int d = static_cast<int>(std::min<std::size_t>(a.size(), cap + 1)) - 1; d >= 0; --d)
	{
		acc = dense_mul(acc, b, cap);
		acc[0] += a[d];
	}
	return acc;
}

inline std::vector<Rational> dense(const Series1<RationalField> &s)
{
	std::vector<Rational> out(s.cap() + 1, 0);
	for (const auto &[d, c] : s.terms())
		out[d] = c;
	return out;
}

/// Legendre symbol by Euler's criterion.
inline long legendre(long a, long p)
{
	a = ((a % p) + p) % p;
	if (a == 0)
		return 0;
	long r = 1, base = a, e = (p - 1) / 2;
	while (e)
	{
		if (e & 1)
			r = r * base % p;
		base = base * base % p;
		e >>= 1;
	}
	return r == 1 ? 1 : -1;
}

/// a_p of y^2 = x^3 + A x + B via a character sum.
inline long trace_by_character_sum(long A, long B, long p)
{
	long s = 0;
	for (long x = 0; x < p; ++x)
		s += legendre(x * x * x + A * x + B, p);
	return -s;
}

} // namespace testing_support
