#include "fgk3/coefficients.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace fgk3 {

Rational make_rational(const Integer &num, const Integer &den)
{
	if (den == 0)
		throw std::invalid_argument("zero denominator");
	Rational r(num, den);
	r.canonicalize();
	return r;
}

std::string to_string(const Integer &x) { return x.get_str(); }

std::string to_string(const Rational &x) { return x.get_str(); }

Rational parse_rational(const std::string &text)
{
	auto slash = text.find('/');
	try
	{
		if (slash == std::string::npos)
			return Rational(Integer(text));
		return make_rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
	}
	catch (const std::invalid_argument &)
	{
		throw std::invalid_argument("not a rational number: '" + text + "'");
	}
}

bool is_prime(long n)
{
	if (n < 2)
		return false;
	for (long d = 2; d * d <= n; ++d)
		if (n % d == 0)
			return false;
	return true;
}

PrimeP::PrimeP(long p) : p_(p)
{
	if (p == 2)
		throw std::invalid_argument("p = 2 is not supported: characteristic 2 is excluded (need char != 2)");
	if (!is_prime(p))
		throw std::invalid_argument(std::to_string(p) + " is not an odd prime");
}

long Valuation::value() const
{
	if (infinite_)
		throw std::logic_error("valuation of zero is infinite");
	return value_;
}

std::strong_ordering Valuation::operator<=>(const Valuation &o) const
{
	if (infinite_ || o.infinite_)
		return infinite_ == o.infinite_ ? std::strong_ordering::equal
		       : infinite_              ? std::strong_ordering::greater
		                                : std::strong_ordering::less;
	return value_ <=> o.value_;
}

std::string Valuation::str() const { return infinite_ ? "inf" : std::to_string(value_); }

Valuation val_p(const Integer &x, const PrimeP &p)
{
	if (x == 0)
		return Valuation::infinity();
	Integer rest;
	auto v = mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.integer().get_mpz_t());
	return Valuation(static_cast<long>(v));
}

Valuation val_p(const Rational &x, const PrimeP &p)
{
	if (x == 0)
		return Valuation::infinity();
	return Valuation(val_p(Integer(x.get_num()), p).value() - val_p(Integer(x.get_den()), p).value());
}

NonIntegral::NonIntegral(Rational value, const PrimeP &p, long degree, const std::string &context)
    : std::domain_error("coefficient " + to_string(value) + " is not " + std::to_string(p.value()) + "-integral" +
                        (degree >= 0 ? " (degree " + std::to_string(degree) + ")" : std::string()) +
                        (context.empty() ? std::string() : " in " + context)),
      value_(std::move(value)), prime_(p.value()), degree_(degree)
{
}

NonIntegral NonIntegral::at_degree(long degree, const std::string &context) const
{
	return NonIntegral(value_, PrimeP(prime_), degree, context);
}

Integer factorial(long n)
{
	if (n < 0)
		throw std::invalid_argument("factorial of a negative number");
	Integer r;
	mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
	return r;
}

Integer multinomial(long n, std::span<const long> parts)
{
	long sum = 0;
	for (long k : parts)
	{
		if (k < 0)
			throw std::invalid_argument("multinomial: negative part");
		sum += k;
	}
	if (sum != n)
		throw std::invalid_argument("multinomial: parts sum to " + std::to_string(sum) + ", expected " +
		                            std::to_string(n));
	Integer r = factorial(n);
	for (long k : parts)
		r /= factorial(k);
	return r;
}

ResidueRing::ResidueRing(PrimeP p, int precision) : p_(p), precision_(precision)
{
	if (precision < 1)
		throw std::invalid_argument("residue ring precision must be >= 1");
	mpz_ui_pow_ui(modulus_.get_mpz_t(), static_cast<unsigned long>(p.value()), static_cast<unsigned long>(precision));
}

Integer ResidueRing::canonical(const Integer &x) const
{
	Integer r;
	mpz_mod(r.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
	return r;
}

Integer ResidueRing::reduce(const Rational &x) const
{
	if (!is_p_integral(x, p_))
		throw NonIntegral(x, p_);
	Integer den(x.get_den()), inv;
	mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus_.get_mpz_t());
	return canonical(Integer(x.get_num()) * inv);
}

std::optional<Integer> ResidueRing::inverse(const Integer &a) const
{
	Integer inv;
	if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), modulus_.get_mpz_t()) == 0)
		return std::nullopt;
	return canonical(inv);
}

std::string ResidueRing::describe() const
{
	return "Z/" + std::to_string(p_.value()) + (precision_ > 1 ? "^" + std::to_string(precision_) : "");
}

// ---------------------------------------------------------------------------
// TruncPoly

namespace {

int total_degree(const Exponents &e) { return std::accumulate(e.begin(), e.end(), 0); }

} // namespace

TruncPoly::TruncPoly(std::vector<std::string> variables, int cap) : vars_(std::move(variables)), cap_(cap)
{
	if (cap < 0)
		throw std::invalid_argument("negative degree cap");
}

TruncPoly::TruncPoly(std::vector<std::string> variables, int cap, const Rational &constant)
    : TruncPoly(std::move(variables), cap)
{
	add_term(Exponents(vars_.size(), 0), constant);
}

TruncPoly TruncPoly::variable(std::vector<std::string> variables, int cap, std::size_t index)
{
	if (index >= variables.size())
		throw std::out_of_range("variable index");
	Exponents e(variables.size(), 0);
	e[index] = 1;
	return monomial(std::move(variables), cap, std::move(e));
}

TruncPoly TruncPoly::monomial(std::vector<std::string> variables, int cap, Exponents e, const Rational &c)
{
	TruncPoly r(std::move(variables), cap);
	if (e.size() != r.vars_.size())
		throw std::invalid_argument("exponent vector length does not match variables");
	r.add_term(e, c);
	return r;
}

void TruncPoly::add_term(const Exponents &e, const Rational &c)
{
	if (c == 0)
		return;
	if (total_degree(e) > cap_)
	{
		++dropped_;
		return;
	}
	auto [it, inserted] = terms_.try_emplace(e, c);
	if (!inserted)
	{
		it->second += c;
		if (it->second == 0)
			terms_.erase(it);
	}
}

Rational TruncPoly::coefficient(const Exponents &e) const
{
	auto it = terms_.find(e);
	return it == terms_.end() ? Rational(0) : it->second;
}

Rational TruncPoly::constant_term() const { return coefficient(Exponents(vars_.size(), 0)); }

int TruncPoly::lowest_degree() const
{
	int best = -1;
	for (const auto &[e, c] : terms_)
	{
		int d = total_degree(e);
		if (best < 0 || d < best)
			best = d;
	}
	return best;
}

void TruncPoly::check_compatible(const TruncPoly &o) const
{
	if (vars_ != o.vars_)
		throw std::invalid_argument("truncated polynomials over different variable lists");
	if (cap_ != o.cap_)
		throw std::invalid_argument("truncated polynomials with different degree caps");
}

TruncPoly TruncPoly::operator-() const
{
	TruncPoly r = *this;
	for (auto &[e, c] : r.terms_)
		c = -c;
	return r;
}

TruncPoly &TruncPoly::operator+=(const TruncPoly &o)
{
	check_compatible(o);
	for (const auto &[e, c] : o.terms_)
		add_term(e, c);
	dropped_ += o.dropped_;
	return *this;
}

TruncPoly &TruncPoly::operator-=(const TruncPoly &o)
{
	check_compatible(o);
	for (const auto &[e, c] : o.terms_)
		add_term(e, -c);
	dropped_ += o.dropped_;
	return *this;
}

TruncPoly &TruncPoly::operator*=(const Rational &c)
{
	if (c == 0)
		terms_.clear();
	for (auto &[e, x] : terms_)
		x *= c;
	return *this;
}

TruncPoly operator*(const TruncPoly &a, const TruncPoly &b)
{
	a.check_compatible(b);
	TruncPoly r(a.vars_, a.cap_);
	r.dropped_ = a.dropped_ + b.dropped_;
	if (a.vars_.empty())
	{
		// constants: skip the exponent bookkeeping
		if (!a.terms_.empty() && !b.terms_.empty())
			r.terms_.emplace(Exponents{}, a.terms_.begin()->second * b.terms_.begin()->second);
		return r;
	}
	Exponents e(a.vars_.size());
	for (const auto &[ea, ca] : a.terms_)
	{
		int da = total_degree(ea);
		for (const auto &[eb, cb] : b.terms_)
		{
			for (std::size_t i = 0; i < e.size(); ++i)
				e[i] = ea[i] + eb[i];
			if (da + total_degree(eb) > r.cap_)
			{
				++r.dropped_;
				continue;
			}
			r.add_term(e, ca * cb);
		}
	}
	return r;
}

TruncPoly TruncPoly::pow(unsigned long n) const
{
	TruncPoly r(vars_, cap_, 1);
	TruncPoly base = *this;
	while (n > 0)
	{
		if (n & 1)
			r = r * base;
		n >>= 1;
		if (n > 0)
			base = base * base;
	}
	return r;
}

Valuation TruncPoly::valuation(const PrimeP &p) const
{
	Valuation v = Valuation::infinity();
	for (const auto &[e, c] : terms_)
		v = std::min(v, val_p(c, p));
	return v;
}

TruncPoly TruncPoly::truncated(int cap) const
{
	TruncPoly r(vars_, cap);
	for (const auto &[e, c] : terms_)
		r.add_term(e, c);
	return r;
}

std::string TruncPoly::str() const
{
	if (terms_.empty())
		return "0";
	std::ostringstream out;
	bool first = true;
	// highest degree first reads more naturally
	std::vector<std::pair<Exponents, Rational>> sorted(terms_.begin(), terms_.end());
	std::stable_sort(sorted.begin(), sorted.end(), [](const auto &x, const auto &y) {
		return total_degree(x.first) < total_degree(y.first);
	});
	for (const auto &[e, c] : sorted)
	{
		Rational a = abs(c);
		if (!first)
			out << (c < 0 ? " - " : " + ");
		else if (c < 0)
			out << "-";
		first = false;
		bool is_const = total_degree(e) == 0;
		if (is_const || a != 1)
			out << a.get_str();
		bool need_star = !is_const && a != 1;
		for (std::size_t i = 0; i < e.size(); ++i)
		{
			if (e[i] == 0)
				continue;
			if (need_star)
				out << "*";
			out << vars_[i];
			if (e[i] > 1)
				out << "^" << e[i];
			need_star = true;
		}
	}
	return out.str();
}

TruncPoly TruncPoly::parse(const std::string &text, std::vector<std::string> variables, int cap)
{
	TruncPoly result(variables, cap);
	std::size_t pos = 0;
	auto skip_ws = [&] {
		while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
			++pos;
	};
	auto fail = [&](const std::string &why) {
		throw std::invalid_argument("cannot parse polynomial '" + text + "': " + why);
	};
	auto read_while = [&](auto pred) {
		std::size_t start = pos;
		while (pos < text.size() && pred(static_cast<unsigned char>(text[pos])))
			++pos;
		return text.substr(start, pos - start);
	};

	skip_ws();
	if (pos == text.size())
		fail("empty input");
	bool first = true;
	while (true)
	{
		skip_ws();
		if (pos == text.size())
			break;
		int sign = 1;
		if (text[pos] == '+' || text[pos] == '-')
		{
			sign = text[pos] == '-' ? -1 : 1;
			++pos;
			skip_ws();
		}
		else if (!first)
			fail("expected '+' or '-'");
		first = false;

		Rational coeff = sign;
		Exponents e(variables.size(), 0);
		bool any_factor = false;
		while (true)
		{
			skip_ws();
			if (pos >= text.size())
				break;
			unsigned char ch = static_cast<unsigned char>(text[pos]);
			if (std::isdigit(ch))
			{
				std::string num = read_while([](unsigned char c) { return std::isdigit(c) || c == '/'; });
				coeff *= parse_rational(num);
			}
			else if (std::isalpha(ch) || ch == '_')
			{
				std::string name = read_while([](unsigned char c) { return std::isalnum(c) || c == '_'; });
				auto it = std::find(variables.begin(), variables.end(), name);
				if (it == variables.end())
					fail("unknown variable '" + name + "'");
				int power = 1;
				skip_ws();
				if (pos < text.size() && text[pos] == '^')
				{
					++pos;
					skip_ws();
					std::string digits = read_while([](unsigned char c) { return std::isdigit(c); });
					if (digits.empty())
						fail("missing exponent");
					power = std::stoi(digits);
				}
				e[static_cast<std::size_t>(it - variables.begin())] += power;
			}
			else
				fail(std::string("unexpected character '") + text[pos] + "'");
			any_factor = true;
			skip_ws();
			if (pos < text.size() && text[pos] == '*')
			{
				++pos;
				continue;
			}
			break;
		}
		if (!any_factor)
			fail("empty term");
		result.add_term(e, coeff);
	}
	return result;
}

TruncPoly trunc_poly_arith(const TruncPoly &a, const TruncPoly &b, PolyOp op)
{
	return op == PolyOp::add ? a + b : a * b;
}

std::vector<Exponents> monomials_up_to(std::size_t nvars, int cap)
{
	std::vector<Exponents> out;
	Exponents e(nvars, 0);
	for (int d = 0; d <= cap; ++d)
	{
		if (nvars == 0)
		{
			out.push_back({});
			break;
		}
		// enumerate compositions of d into nvars parts, lexicographically descending
		std::vector<Exponents> level;
		auto rec = [&](auto &&self, std::size_t i, int left) -> void {
			if (i + 1 == nvars)
			{
				e[i] = left;
				level.push_back(e);
				return;
			}
			for (int k = left; k >= 0; --k)
			{
				e[i] = k;
				self(self, i + 1, left - k);
			}
		};
		rec(rec, 0, d);
		out.insert(out.end(), level.begin(), level.end());
	}
	return out;
}

} // namespace fgk3
