#include "lovelock/couplings.hpp"

namespace lovelock {

Couplings Couplings::make(int n, std::vector<Rational> alpha, std::vector<Rational> beta)
{
	Couplings c;
	c.n = n;
	c.alpha = std::move(alpha);
	c.beta = std::move(beta);
	c.validate();
	return c;
}

Couplings Couplings::make_lovelock(int n, std::vector<Rational> alpha)
{
	Couplings c;
	c.n = n;
	c.alpha = std::move(alpha);
	c.beta.resize(c.alpha.size());
	for (size_t q = 1; q <= c.alpha.size(); ++q)
		c.beta[q - 1] = -c.alpha[q - 1] / Rational(2 * long(q));
	c.lovelock_beta = true;
	c.validate();
	return c;
}

Couplings Couplings::einstein(int n)
{
	std::vector<Rational> a(size_t((n + 1) / 2), Rational(0));
	a[0] = 1;
	std::vector<Rational> b(a.size(), Rational(0));
	return make(n, std::move(a), std::move(b));
}

std::vector<Rational> Couplings::trace_combination() const
{
	std::vector<Rational> t(alpha.size());
	for (size_t q = 0; q < alpha.size(); ++q)
		t[q] = alpha[q] + Rational(n + 1) * beta[q];
	return t;
}

void Couplings::validate() const
{
	if (n < 3)
		throw RegimeError("couplings: boundary dimension must be >= 3");
	size_t want = size_t((n + 1) / 2);
	if (alpha.size() != want || beta.size() != want)
		throw RegimeError("couplings: alpha and beta must have length floor((n+1)/2) = " +
		                  std::to_string(want));
	bool all_zero = true;
	for (const auto &t : trace_combination())
		if (sgn(t) != 0)
			all_zero = false;
	if (all_zero)
		throw RegimeError("couplings: alpha = -(n+1) beta violates the standing assumption");
}

Rational lambda2q(int n, int q)
{
	Rational r = factorial_q(n) * factorial_q(2 * q) / factorial_q(n - 2 * q + 1);
	for (int i = 0; i < q; ++i)
		r /= -2;
	return r;
}

std::vector<Rational> lambda_coeffs(int n)
{
	std::vector<Rational> out;
	for (int q = 1; q <= (n + 1) / 2; ++q)
		out.push_back(lambda2q(n, q));
	return out;
}

namespace {

Rational half_pow(const Rational &kappa, int e) // (-kappa/2)^e, e >= 0
{
	Rational b = -kappa / 2, r = 1;
	for (int i = 0; i < e; ++i)
		r *= b;
	return r;
}

} // namespace

Rational coeff_A(int which, const std::vector<Rational> &c, int n, const Rational &kappa)
{
	Rational s = 0;
	for (int q = 1; q <= int(c.size()); ++q) {
		const Rational &cq = c[size_t(q - 1)];
		if (sgn(cq) == 0)
			continue;
		Rational term;
		switch (which) {
		case 1:
			term = half_pow(kappa, q - 1) * factorial_q(2 * q) / 2 * falling_q(n - 2, 2 * q - 2);
			break;
		case 2:
			if (q == 1)
				continue;
			term = half_pow(kappa, q - 1) * factorial_q(2 * q) / 2 * falling_q(n - 2, 2 * q - 3) *
			       (q - 1);
			break;
		case 3:
			if (q == 1)
				continue;
			term = half_pow(kappa, q - 2) * factorial_q(2 * q) / 24 * falling_q(n - 4, 2 * q - 4) *
			       (q - 1);
			break;
		case 4:
			if (q <= 2)
				continue;
			term = half_pow(kappa, q - 2) * factorial_q(2 * q) / 24 * falling_q(n - 4, 2 * q - 5) *
			       Rational((q - 1) * (q - 2), 2);
			break;
		default:
			throw std::domain_error("coeff_A: index must be 1..4");
		}
		s += cq * term;
	}
	return s;
}

Scalar coeff_A_scalar(int which, const std::vector<Rational> &c, int n, const Scalar &kappa)
{
	if (kappa.exact_mode())
		return Scalar(coeff_A(which, c, n, kappa.rat()));
	double k = kappa.fval();
	double s = 0;
	for (int q = 1; q <= int(c.size()); ++q) {
		double cq = c[size_t(q - 1)].get_d();
		if (cq == 0)
			continue;
		auto hp = [&](int e) {
			double b = -k / 2, r = 1;
			for (int i = 0; i < e; ++i)
				r *= b;
			return r;
		};
		switch (which) {
		case 1:
			s += cq * hp(q - 1) * factorial_q(2 * q).get_d() / 2 *
			     falling_q(n - 2, 2 * q - 2).get_d();
			break;
		case 2:
			if (q > 1)
				s += cq * hp(q - 1) * factorial_q(2 * q).get_d() / 2 *
				     falling_q(n - 2, 2 * q - 3).get_d() * (q - 1);
			break;
		case 3:
			if (q > 1)
				s += cq * hp(q - 2) * factorial_q(2 * q).get_d() / 24 *
				     falling_q(n - 4, 2 * q - 4).get_d() * (q - 1);
			break;
		case 4:
			if (q > 2)
				s += cq * hp(q - 2) * factorial_q(2 * q).get_d() / 24 *
				     falling_q(n - 4, 2 * q - 5).get_d() * (q - 1) * (q - 2) / 2;
			break;
		default:
			throw std::domain_error("coeff_A_scalar: index must be 1..4");
		}
	}
	return Scalar::flt(s);
}

Scalar coeff_B_scalar(int i, int j, const Couplings &c, const Scalar &kappa)
{
	Scalar r = coeff_A_scalar(j, c.alpha, c.n, kappa);
	r += coeff_A_scalar(i, c.beta, c.n, kappa);
	Scalar nj = coeff_A_scalar(j, c.beta, c.n, kappa);
	if (kappa.exact_mode())
		r += Scalar(Rational(c.n + 1)) * nj;
	else
		r += Scalar::flt(c.n + 1) * nj;
	return r;
}

QPoly coeff_A1_poly(const std::vector<Rational> &alpha, int n)
{
	// A_1(alpha, kappa) = sum_q alpha_q (-1/2)^(q-1) [(2q)!/2] ff(n-2, 2q-2) kappa^(q-1)
	QPoly p;
	for (int q = 1; q <= int(alpha.size()); ++q) {
		Rational base = alpha[size_t(q - 1)] * factorial_q(2 * q) / 2 *
		                falling_q(n - 2, 2 * q - 2) * half_pow(Rational(1), q - 1);
		if (sgn(base) != 0)
			p.set(q - 1, base);
	}
	return p;
}

DerivedCoeffs coeff_functions(const Couplings &c, const Rational &kappa)
{
	DerivedCoeffs d;
	d.lambda = lambda_coeffs(c.n);
	d.lambda_alpha = 0;
	for (size_t q = 0; q < c.alpha.size(); ++q)
		d.lambda_alpha += c.alpha[q] * d.lambda[q];
	for (int i = 1; i <= 4; ++i) {
		d.A_alpha[i] = coeff_A(i, c.alpha, c.n, kappa);
		d.A_beta[i] = coeff_A(i, c.beta, c.n, kappa);
	}
	d.B12 = coeff_B(1, 2, c, kappa);
	d.B34 = coeff_B(3, 4, c, kappa);
	return d;
}

Rational coeff_B(int i, int j, const Couplings &c, const Rational &kappa)
{
	// as displayed: the lone A_i term takes beta
	return coeff_A(j, c.alpha, c.n, kappa) + coeff_A(i, c.beta, c.n, kappa) +
	       Rational(c.n + 1) * coeff_A(j, c.beta, c.n, kappa);
}

QPoly kappa_polynomial(const Couplings &c)
{
	auto lam = lambda_coeffs(c.n);
	auto tc = c.trace_combination();
	QPoly p;
	for (int q = 1; q <= int(tc.size()); ++q) {
		Rational w = lam[size_t(q - 1)] * tc[size_t(q - 1)];
		if (sgn(w) == 0)
			continue;
		QPoly term;
		term.set(q, w);
		term.set(0, Rational(-w));
		p = p + term;
	}
	return p;
}

std::vector<KappaRoot> limsec(const Couplings &c)
{
	QPoly p = kappa_polynomial(c);
	if (p.is_zero())
		throw RegimeError("limsec: kappa polynomial vanishes identically");
	QPoly a1 = coeff_A1_poly(c.alpha, c.n);

	std::vector<KappaRoot> out;
	for (const IsolatedRoot &r : isolate_positive_roots(p)) {
		KappaRoot kr;
		kr.lo = r.lo;
		kr.hi = r.hi;
		kr.exact = r.exact;
		kr.multiplicity = r.multiplicity;
		if (r.exact) {
			Rational v = a1.eval(*r.exact);
			if (sgn(v) == 0)
				continue; // A_1 vanishes: excluded from the admissible set
			kr.a1_value = v;
			kr.a1_sign = sgn(v);
		} else {
			// certify that A_1 has no root in the isolating interval, then
			// read its constant sign there
			Rational lo = kr.lo, hi = kr.hi;
			QPoly sf = QPoly::constant(Rational(1));
			for (const auto &f : squarefree_decomposition(p))
				if (f.degree() >= 1)
					sf = sf * f;
			QPoly common = poly_gcd(sf, a1);
			if (common.degree() >= 1 && sturm_count(common, lo, hi) > 0)
				continue; // the root itself kills A_1
			if (!a1.is_zero() && a1.degree() >= 1) {
				// shrink around the root until the interval is free of A_1 roots
				int guard = 0;
				while (sturm_count(a1, lo, hi) > 0 && guard++ < 64)
					refine_root(sf, lo, hi, 4);
				if (sturm_count(a1, lo, hi) > 0)
					continue; // could not certify; treat as excluded
			}
			int s = sgn(a1.eval((lo + hi) / 2));
			if (s == 0)
				continue;
			kr.lo = lo;
			kr.hi = hi;
			kr.a1_sign = s;
		}
		out.push_back(kr);
	}
	return out;
}

} // namespace lovelock
