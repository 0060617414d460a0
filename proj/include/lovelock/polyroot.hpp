#pragma once

#include "lovelock/scalar.hpp"

#include <optional>
#include <vector>

namespace lovelock {

/// dense univariate polynomial over Q, coefficients by ascending degree
struct QPoly {
	std::vector<Rational> c;

	QPoly() = default;
	explicit QPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { normalize(); }
	static QPoly constant(Rational v) { return QPoly({std::move(v)}); }

	void normalize()
	{
		while (!c.empty() && sgn(c.back()) == 0)
			c.pop_back();
	}
	bool is_zero() const { return c.empty(); }
	int degree() const { return int(c.size()) - 1; }
	const Rational &lead() const { return c.back(); }
	Rational eval(const Rational &x) const;
	void set(int k, Rational v);
};

QPoly operator+(const QPoly &a, const QPoly &b);
QPoly operator-(const QPoly &a, const QPoly &b);
QPoly operator*(const QPoly &a, const QPoly &b);
QPoly scale(const QPoly &a, const Rational &s);
QPoly derivative(const QPoly &a);
/// division with remainder; divisor must be nonzero
std::pair<QPoly, QPoly> divrem(const QPoly &a, const QPoly &b);
/// monic gcd
QPoly poly_gcd(QPoly a, QPoly b);
/// Yun's square-free decomposition: p ~ prod f_i^i, returns f_1, f_2, ...
std::vector<QPoly> squarefree_decomposition(const QPoly &p);

/// one isolated real root of a squarefree polynomial
struct IsolatedRoot {
	Rational lo, hi;               // lo < root <= hi (half-open bracketing)
	std::optional<Rational> exact; // set when the root is rational
	int multiplicity = 1;
};

/// number of distinct real roots of a squarefree p in (a, b]
int sturm_count(const QPoly &p, const Rational &a, const Rational &b);

/// upper bound on the absolute value of all real roots
Rational root_bound(const QPoly &p);

/// shrink a bracketing interval by bisection
void refine_root(const QPoly &p, Rational &lo, Rational &hi, int steps);

/// all roots in (0, inf) of an arbitrary nonzero polynomial, isolated into
/// disjoint intervals with exact rational roots recognized and multiplicities
/// from the square-free decomposition; exact Sturm sequences throughout
std::vector<IsolatedRoot> isolate_positive_roots(const QPoly &p);

} // namespace lovelock
