#pragma once

#include "lovelock/polyroot.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lovelock {

struct RegimeError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/// Coupling vectors (alpha, beta) of the trace-modified Lovelock equation in
/// boundary dimension n. beta may be tied to alpha by the pure-Lovelock
/// relation beta_q = -alpha_q / (2q).
struct Couplings {
	int n = 0;
	std::vector<Rational> alpha;
	std::vector<Rational> beta;
	bool lovelock_beta = false;

	static Couplings make(int n, std::vector<Rational> alpha, std::vector<Rational> beta);
	static Couplings make_lovelock(int n, std::vector<Rational> alpha);
	static Couplings einstein(int n);

	int qmax() const { return int(alpha.size()); }
	/// alpha_q + (n+1) beta_q as a vector; all-zero violates the standing
	/// assumption alpha != -(n+1) beta
	std::vector<Rational> trace_combination() const;
	void validate() const;
};

/// lambda^(2q) = (-1/2)^q n! (2q)! / (n-2q+1)!, q = 1..floor((n+1)/2)
Rational lambda2q(int n, int q);
std::vector<Rational> lambda_coeffs(int n);

/// coefficient functions A_1..A_4 of a coupling vector at kappa
Rational coeff_A(int which, const std::vector<Rational> &c, int n, const Rational &kappa);

/// mode-polymorphic variants (float kappa for irrational roots)
Scalar coeff_A_scalar(int which, const std::vector<Rational> &c, int n, const Scalar &kappa);
Scalar coeff_B_scalar(int i, int j, const Couplings &c, const Scalar &kappa);

/// A_1(alpha, .) as a polynomial in kappa (for certified root exclusion)
QPoly coeff_A1_poly(const std::vector<Rational> &alpha, int n);

/// derived scalar coefficients controlling every linear solve
struct DerivedCoeffs {
	std::vector<Rational> lambda; // lambda^(2q), q = 1..qmax
	Rational lambda_alpha;        // sum alpha_q lambda^(2q)
	Rational A_alpha[5];          // index 1..4
	Rational A_beta[5];
	Rational B12, B34; // B_{1,2} and B_{3,4}
};

DerivedCoeffs coeff_functions(const Couplings &c, const Rational &kappa);

/// B_{i,j}(alpha, beta, kappa) = A_j(alpha) + A_i(beta) + (n+1) A_j(beta)
Rational coeff_B(int i, int j, const Couplings &c, const Rational &kappa);

/// the polynomial sum lambda^(2q) (alpha_q + (n+1) beta_q) (kappa^q - 1)
QPoly kappa_polynomial(const Couplings &c);

/// an admissible limiting curvature: isolated positive root of the kappa
/// polynomial with certified A_1(alpha, kappa) != 0
struct KappaRoot {
	Rational lo, hi;
	std::optional<Rational> exact;
	int multiplicity = 1;
	int a1_sign = 0; // certified sign of A_1(alpha, .) on the interval
	std::optional<Rational> a1_value; // exact when the root is rational

	double approx() const
	{
		return exact ? exact->get_d() : Rational((lo + hi) / 2).get_d();
	}
};

/// all admissible limiting curvatures, exactly isolated; may be empty
std::vector<KappaRoot> limsec(const Couplings &c);

} // namespace lovelock
