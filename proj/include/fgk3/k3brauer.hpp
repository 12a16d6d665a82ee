#pragma once

// Quartic K3 surfaces and their formal Brauer groups.
//
// The logarithm of the formal Brauer group of a quartic f in P^3 is
// sum_m beta_m T^m / m, where beta_m is the coefficient of (T0 T1 T2 T3)^{m-1}
// in f^{m-1}. For the Fermat quartic this is (4n)!/(n!)^4 at m = 4n + 1.

#include "fgk3/fgl.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace fgk3 {

using Exponent4 = std::array<int, 4>;

class QuarticForm
{
  public:
	QuarticForm(std::map<Exponent4, Integer> terms, std::string name = {});

	static QuarticForm fermat();
	/// Lines of `e0 e1 e2 e3 coeff`; blank lines and '#' comments ignored.
	static QuarticForm parse(const std::string &text, std::string name = {});
	/// Built-in name or a path to a file in the textual format.
	static QuarticForm load(const std::string &name_or_path);

	const std::map<Exponent4, Integer> &terms() const { return terms_; }
	const std::string &name() const { return name_; }

	/// Only pure fourth powers T_i^4.
	bool is_diagonal() const;
	/// The four diagonal coefficients (zero where absent).
	std::array<Integer, 4> diagonal_coefficients() const;

	long evaluate_mod(const std::array<long, 4> &point, long p) const;
	long partial_mod(std::size_t var, const std::array<long, 4> &point, long p) const;

	std::string str() const;
	/// Serialises in the textual format read by parse().
	std::string to_text() const;

	bool operator==(const QuarticForm &o) const { return terms_ == o.terms_; }

  private:
	std::map<Exponent4, Integer> terms_;
	std::string name_;
};

/// Named quartics shipped with the tool (all smooth away from a few primes).
std::vector<std::string> builtin_quartic_names();
QuarticForm builtin_quartic(const std::string &name);

struct BrauerLog
{
	Logarithm<RationalField> log;
	QuarticForm source;
	/// beta[m] for m = 0..cap; beta[0] is unused and zero.
	std::vector<Integer> beta;
};

/// T + sum_{n>=1} (4n)!/(n!)^4 T^{4n+1}/(4n+1) up to `cap`.
BrauerLog fermat_log(int cap);

enum class StienstraMethod
{
	automatic, ///< closed multinomial form for diagonal quartics, expansion otherwise
	expansion, ///< always expand f^{m-1} and read off the diagonal monomial
};

/// beta_1..beta_cap for f, computed by `method`.
std::vector<Integer> stienstra_betas(const QuarticForm &f, int cap, StienstraMethod method = StienstraMethod::automatic);
BrauerLog stienstra_log(const QuarticForm &f, int cap, StienstraMethod method = StienstraMethod::automatic);
Integer stienstra_beta(const QuarticForm &f, int m, StienstraMethod method = StienstraMethod::automatic);

/// Full pipeline at cap p^{h_max} + 1: Stienstra logarithm, p-integral law
/// (checked up to degree law_check_cap), p-series, height mod p.
HeightResult brauer_height(const QuarticForm &f, const PrimeP &p, int h_max);
/// Same pipeline at an explicit cap; decides heights up to floor(log_p cap).
HeightResult brauer_height_at_cap(const QuarticForm &f, const PrimeP &p, int cap);
/// Degree up to which brauer_height checks integrality of the bivariate law.
int brauer_law_check_cap(const PrimeP &p, int cap);

/// beta_p != 0 mod p.
bool ordinarity_criterion(const QuarticForm &f, const PrimeP &p);

/// Largest prime accepted by smooth_check_fp.
inline constexpr long kSmoothCheckMaxPrime = 13;

/// No point of P^3(F_p) kills f and all four partials. p <= 13.
bool smooth_check_fp(const QuarticForm &f, const PrimeP &p);

} // namespace fgk3
