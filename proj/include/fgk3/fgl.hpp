#pragma once

// One-dimensional formal group laws: construction from logarithms, standard
// and elliptic laws, the Hazewinkel recursion, p-series, heights and the
// ideal chain I_{p,n} with its v-elements.

#include "fgk3/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fgk3 {

// ---------------------------------------------------------------------------
// p-adic helpers shared by the rational-algebra coefficient rings

inline Valuation element_valuation(const Rational &x, const PrimeP &p) { return val_p(x, p); }
inline Valuation element_valuation(const TruncPoly &x, const PrimeP &p) { return x.valuation(p); }

inline TruncPoly as_poly(const Rational &x, const PolyRing &R) { return R.constant(x); }
inline TruncPoly as_poly(const TruncPoly &x, const PolyRing &) { return x; }

/// Throws NonIntegral (with the degree) at the first coefficient of negative
/// valuation.
template <CoefficientRing Ring>
void require_integral(const Series1<Ring> &s, const PrimeP &p, const std::string &context)
{
	for (const auto &[d, c] : s.terms())
		if (element_valuation(c, p) < Valuation(0))
		{
			if constexpr (std::is_same_v<typename Ring::value_type, Rational>)
				throw NonIntegral(c, p, d, context);
			else
			{
				// report the worst coefficient of the polynomial
				Rational worst = 0;
				Valuation wv = Valuation::infinity();
				for (const auto &[e, q] : c.terms())
					if (val_p(q, p) < wv)
						wv = val_p(q, p), worst = q;
				throw NonIntegral(worst, p, d, context);
			}
		}
}

template <CoefficientRing Ring>
void require_integral(const SeriesN<Ring> &s, const PrimeP &p, const std::string &context)
{
	for (const auto &[m, c] : s.terms())
		if (element_valuation(c, p) < Valuation(0))
		{
			Rational worst;
			if constexpr (std::is_same_v<typename Ring::value_type, Rational>)
				worst = c;
			else
			{
				Valuation wv = Valuation::infinity();
				for (const auto &[e, q] : c.terms())
					if (val_p(q, p) < wv)
						wv = val_p(q, p), worst = q;
			}
			throw NonIntegral(worst, p, packed_degree(m), context);
		}
}

// ---------------------------------------------------------------------------
// Logarithms and laws

/// l(T) = T + b2 T^2 + ... over a rational algebra.
template <CoefficientRing Ring>
class Logarithm
{
  public:
	explicit Logarithm(Series1<Ring> series) : series_(std::move(series))
	{
		const Ring &R = series_.ring();
		if (!R.is_zero(series_.coefficient(0)))
			throw std::invalid_argument("logarithm must have zero constant term");
		if (series_.cap() >= 1 && !R.is_zero(R.sub(series_.coefficient(1), R.one())))
			throw std::invalid_argument("logarithm must have linear coefficient 1");
	}

	const Series1<Ring> &series() const { return series_; }
	const Ring &ring() const { return series_.ring(); }
	int cap() const { return series_.cap(); }
	typename Ring::value_type coefficient(int d) const { return series_.coefficient(d); }

	bool operator==(const Logarithm &) const = default;

  private:
	Series1<Ring> series_;
};

template <CoefficientRing Ring>
class FormalGroupLaw
{
  public:
	FormalGroupLaw(Series2<Ring> F, std::string provenance = {}) : F_(std::move(F)), provenance_(std::move(provenance))
	{
		if (F_.nvars() != 2)
			throw std::invalid_argument("a formal group law is bivariate");
	}

	const Series2<Ring> &series() const { return F_; }
	const Ring &ring() const { return F_.ring(); }
	int cap() const { return F_.cap(); }
	const std::string &provenance() const { return provenance_; }
	typename Ring::value_type coefficient(int i, int j) const { return F_.coefficient(i, j); }

  private:
	Series2<Ring> F_;
	std::string provenance_;
};

struct AxiomReport
{
	bool unit = false;
	bool commutative = false;
	bool associative = false;
	bool ok() const { return unit && commutative && associative; }
};

/// Checks F(X,0) = X, F(0,Y) = Y, F(X,Y) = F(Y,X) and associativity, all up
/// to the law's cap.
template <CoefficientRing Ring>
AxiomReport check_axioms(const FormalGroupLaw<Ring> &law)
{
	const auto &F = law.series();
	const Ring &R = law.ring();
	AxiomReport rep;
	rep.unit = R.is_zero(F.constant_term());
	rep.commutative = true;
	for (const auto &[m, c] : F.terms())
	{
		int i = packed_exponent(m, 0), j = packed_exponent(m, 1);
		if ((i == 0 || j == 0) && !(i + j == 1 && c == R.one()))
			rep.unit = false;
		if (!(F.coefficient(j, i) == c))
			rep.commutative = false;
	}
	if (law.cap() >= 1 && !(F.coefficient(1, 0) == R.one() && F.coefficient(0, 1) == R.one()))
		rep.unit = false;

	int cap = law.cap();
	auto X = SeriesN<Ring>::variable(R, 3, cap, 0);
	auto Y = SeriesN<Ring>::variable(R, 3, cap, 1);
	auto Z = SeriesN<Ring>::variable(R, 3, cap, 2);
	auto left = evaluate2(F, evaluate2(F, X, Y), Z);
	auto right = evaluate2(F, X, evaluate2(F, Y, Z));
	rep.associative = left == right;
	return rep;
}

enum class StandardKind { additive, multiplicative };

template <CoefficientRing Ring>
FormalGroupLaw<Ring> standard_law(StandardKind kind, const Ring &ring, int cap)
{
	Series2<Ring> F(ring, 2, cap);
	F.add_term({1, 0, 0, 0}, ring.one());
	F.add_term({0, 1, 0, 0}, ring.one());
	if (kind == StandardKind::multiplicative)
		F.add_term({1, 1, 0, 0}, ring.one());
	return {F, kind == StandardKind::additive ? "additive" : "multiplicative"};
}

/// log(1+T) = T - T^2/2 + T^3/3 - ...
template <CoefficientRing Ring>
Logarithm<Ring> multiplicative_log(const Ring &ring, int cap)
{
	Series1<Ring> s(ring, cap);
	for (int d = 1; d <= cap; ++d)
		s.set(d, *ring.divide(ring.from_integer(d % 2 ? 1 : -1), Integer(d)));
	return Logarithm<Ring>(s);
}

template <CoefficientRing Ring>
Logarithm<Ring> additive_log(const Ring &ring, int cap)
{
	return Logarithm<Ring>(Series1<Ring>::identity(ring, cap));
}

/// F = l^{-1}(l(X) + l(Y)) up to `cap`. With `integral_at` set, every
/// coefficient must be p-integral, otherwise NonIntegral names the degree.
template <CoefficientRing Ring>
FormalGroupLaw<Ring> fgl_from_log(const Logarithm<Ring> &l, int cap, std::optional<PrimeP> integral_at = std::nullopt,
                                  std::string provenance = "from logarithm")
{
	if (cap > l.cap())
		throw std::invalid_argument("fgl_from_log: logarithm known only to degree " + std::to_string(l.cap()));
	const Ring &R = l.ring();
	auto lt = truncate(l.series(), cap);
	auto X = SeriesN<Ring>::variable(R, 2, cap, 0);
	auto Y = SeriesN<Ring>::variable(R, 2, cap, 1);
	auto sum = compose(lt, X) + compose(lt, Y);
	auto F = compose(reversion(lt), sum);
	if (integral_at)
		require_integral(F, *integral_at, "formal group law");
	return {F, std::move(provenance)};
}

/// Integrates 1 / (dF/dY)(T, 0).
template <CoefficientRing Ring>
Logarithm<Ring> log_from_fgl(const FormalGroupLaw<Ring> &law, int cap)
{
	if (cap > law.cap())
		throw std::invalid_argument("log_from_fgl: law known only to degree " + std::to_string(law.cap()));
	const Ring &R = law.ring();
	// (dF/dY)(T,0) = sum_i c_{i,1} T^i
	Series1<Ring> dfy(R, cap - 1);
	for (const auto &[m, c] : law.series().terms())
		if (packed_exponent(m, 1) == 1)
			dfy.set(packed_exponent(m, 0), c);
	return Logarithm<Ring>(integrate(inverse(dfy)));
}

/// Conjugate law u^{-1}(F(u(X), u(Y))) for a coordinate change u = T + ...
template <CoefficientRing Ring>
FormalGroupLaw<Ring> conjugate(const FormalGroupLaw<Ring> &law, const Series1<Ring> &u)
{
	const Ring &R = law.ring();
	int cap = std::min(law.cap(), u.cap());
	auto ut = truncate(u, cap);
	auto uX = compose(ut, SeriesN<Ring>::variable(R, 2, cap, 0));
	auto uY = compose(ut, SeriesN<Ring>::variable(R, 2, cap, 1));
	auto inner = evaluate2(truncate(law.series(), cap), uX, uY);
	return {compose(reversion(ut), inner), law.provenance() + " (conjugated)"};
}

// ---------------------------------------------------------------------------
// p-series

/// [p](T) = a_0 T + a_1 T^2 + ..., so a_i is the coefficient of T^{i+1}.
template <CoefficientRing Ring>
struct PSeries
{
	PrimeP p;
	Series1<Ring> series;

	int cap() const { return series.cap(); }
	typename Ring::value_type a(int i) const { return series.coefficient(i + 1); }
};

/// l^{-1}(p * l(T)).
template <CoefficientRing Ring>
PSeries<Ring> p_series(const Logarithm<Ring> &l, const PrimeP &p, int cap)
{
	if (cap < p.value())
		throw std::invalid_argument("p_series: cap must be at least p");
	if (cap > l.cap())
		throw std::invalid_argument("p_series: logarithm known only to degree " + std::to_string(l.cap()));
	const Ring &R = l.ring();
	auto lt = truncate(l.series(), cap);
	auto inner = scale(lt, R.from_integer(p.integer()));
	return {p, compose(reversion(lt), inner)};
}

/// The p-fold iterate F(T, F(T, ... )).
template <CoefficientRing Ring>
PSeries<Ring> p_series(const FormalGroupLaw<Ring> &law, const PrimeP &p, int cap)
{
	if (cap < p.value())
		throw std::invalid_argument("p_series: cap must be at least p");
	if (cap > law.cap())
		throw std::invalid_argument("p_series: law known only to degree " + std::to_string(law.cap()));
	auto T = Series1<Ring>::identity(law.ring(), cap);
	auto acc = T;
	for (long k = 1; k < p.value(); ++k)
		acc = evaluate2(law.series(), T, acc);
	return {p, acc};
}

/// Reduction of a rational series into Z/p^M; NonIntegral carries the degree.
Series1<ResidueField> reduce_series(const Series1<RationalField> &s, const ResidueRing &ring);
PSeries<ResidueField> reduce(const PSeries<RationalField> &ps, int precision = 1);

/// Parameters set to zero: the image over the closed point.
Series1<RationalField> closed_fibre(const Series1<PolyRing> &s);
PSeries<RationalField> closed_fibre(const PSeries<PolyRing> &ps);

/// Rational series viewed over a polynomial ring (constants).
Series1<PolyRing> lift(const Series1<RationalField> &s, const PolyRing &R);
Logarithm<PolyRing> lift(const Logarithm<RationalField> &l, const PolyRing &R);

// ---------------------------------------------------------------------------
// Heights

struct HeightResult
{
	enum class Kind { finite, at_least };
	Kind kind;
	int h;
	std::optional<long> first_nonzero_degree;

	static HeightResult finite(int h, long degree) { return {Kind::finite, h, degree}; }
	static HeightResult at_least(int h_max) { return {Kind::at_least, h_max, std::nullopt}; }

	bool is_finite() const { return kind == Kind::finite; }
	bool operator==(const HeightResult &) const = default;
	std::string str() const;
};

class FirstNonzeroNotPPower : public std::logic_error
{
  public:
	using std::logic_error::logic_error;
};

/// floor(log_p n).
int floor_log(long n, long p);
long ipow(long base, int e);

/// Height of a p-series reduced mod p, scanning degrees up to p^{h_max}.
HeightResult height(const PSeries<ResidueField> &ps, int h_max);
/// Defaults h_max to floor(log_p cap).
HeightResult height(const PSeries<ResidueField> &ps);

// ---------------------------------------------------------------------------
// The chain I_{p,0} = 0 <= I_{p,1} = (p) <= I_{p,2} <= ...

template <CoefficientRing Ring>
struct LandweberIdealChain
{
	PrimeP p;
	/// generators[n] = (a_0, ..., a_{p^{n-1}-1}); generators[0] is empty.
	std::vector<std::vector<typename Ring::value_type>> generators;
	/// v[0] = a_0 = p, v[n] = a_{p^n - 1}.
	std::vector<typename Ring::value_type> v;
};

template <CoefficientRing Ring>
LandweberIdealChain<Ring> landweber_chain(const PSeries<Ring> &ps, int n_max)
{
	long top = ipow(ps.p.value(), n_max);
	if (ps.cap() < top)
		throw std::invalid_argument("landweber_chain: cap " + std::to_string(ps.cap()) + " below p^n_max = " +
		                            std::to_string(top));
	LandweberIdealChain<Ring> chain{ps.p, {}, {}};
	chain.generators.emplace_back();
	for (int n = 1; n <= n_max + 1; ++n)
	{
		long count = ipow(ps.p.value(), n - 1);
		std::vector<typename Ring::value_type> gens;
		for (long i = 0; i < count; ++i)
			gens.push_back(ps.a(static_cast<int>(i)));
		chain.generators.push_back(std::move(gens));
	}
	for (int n = 0; n <= n_max; ++n)
		chain.v.push_back(ps.a(static_cast<int>(ipow(ps.p.value(), n) - 1)));
	return chain;
}

// ---------------------------------------------------------------------------
// Hazewinkel laws: l(T) = sum m_n T^{p^n}, m_0 = 1,
// m_n = (1/p) sum_{i<n} m_i v_{n-i}^{p^i}.

Logarithm<PolyRing> hazewinkel_log(const std::vector<TruncPoly> &v, const PrimeP &p, int cap, const PolyRing &R);
/// The m_n themselves, for n with p^n <= cap.
std::vector<TruncPoly> hazewinkel_coefficients(const std::vector<TruncPoly> &v, const PrimeP &p, int cap,
                                               const PolyRing &R);

// ---------------------------------------------------------------------------
// Elliptic curves y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6

struct Weierstrass
{
	Integer a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
	std::string str() const;
};

Integer discriminant(const Weierstrass &E);

struct EllipticLaw
{
	FormalGroupLaw<RationalField> law;
	Logarithm<RationalField> log;
};

/// Expansion in the parameter z = -x/y. `law_cap` bounds the bivariate law,
/// which is much more expensive than the logarithm (known to `log_cap`).
Logarithm<RationalField> elliptic_log(const Weierstrass &E, int log_cap);
EllipticLaw elliptic_fgl(const Weierstrass &E, int cap);
EllipticLaw elliptic_fgl(const Weierstrass &E, int law_cap, int log_cap);

enum class Reduction { ordinary, supersingular };

/// Brute-force point count over F_p; a_p = p + 1 - #E(F_p).
long elliptic_trace(const Weierstrass &E, const PrimeP &p);
Reduction elliptic_ss_oracle(const Weierstrass &E, const PrimeP &p);

} // namespace fgk3
