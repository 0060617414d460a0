#include "lovelock/polyroot.hpp"

#include <algorithm>

namespace lovelock {

Rational QPoly::eval(const Rational &x) const
{
	Rational r = 0;
	for (size_t i = c.size(); i-- > 0;)
		r = r * x + c[i];
	return r;
}

void QPoly::set(int k, Rational v)
{
	if (int(c.size()) <= k)
		c.resize(k + 1, Rational(0));
	c[size_t(k)] = std::move(v);
	normalize();
}

QPoly operator+(const QPoly &a, const QPoly &b)
{
	QPoly r;
	r.c.resize(std::max(a.c.size(), b.c.size()), Rational(0));
	for (size_t i = 0; i < a.c.size(); ++i)
		r.c[i] += a.c[i];
	for (size_t i = 0; i < b.c.size(); ++i)
		r.c[i] += b.c[i];
	r.normalize();
	return r;
}

QPoly operator-(const QPoly &a, const QPoly &b)
{
	QPoly r;
	r.c.resize(std::max(a.c.size(), b.c.size()), Rational(0));
	for (size_t i = 0; i < a.c.size(); ++i)
		r.c[i] += a.c[i];
	for (size_t i = 0; i < b.c.size(); ++i)
		r.c[i] -= b.c[i];
	r.normalize();
	return r;
}

QPoly operator*(const QPoly &a, const QPoly &b)
{
	if (a.is_zero() || b.is_zero())
		return {};
	QPoly r;
	r.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
	for (size_t i = 0; i < a.c.size(); ++i)
		for (size_t j = 0; j < b.c.size(); ++j)
			r.c[i + j] += a.c[i] * b.c[j];
	r.normalize();
	return r;
}

QPoly scale(const QPoly &a, const Rational &s)
{
	QPoly r = a;
	for (auto &x : r.c)
		x *= s;
	r.normalize();
	return r;
}

QPoly derivative(const QPoly &a)
{
	QPoly r;
	if (a.c.size() <= 1)
		return r;
	r.c.resize(a.c.size() - 1);
	for (size_t i = 1; i < a.c.size(); ++i)
		r.c[i - 1] = a.c[i] * int(i);
	r.normalize();
	return r;
}

std::pair<QPoly, QPoly> divrem(const QPoly &a, const QPoly &b)
{
	if (b.is_zero())
		throw std::domain_error("QPoly divrem: division by zero polynomial");
	QPoly q, r = a;
	while (!r.is_zero() && r.degree() >= b.degree()) {
		int k = r.degree() - b.degree();
		Rational f = r.lead() / b.lead();
		QPoly t;
		t.c.assign(size_t(k) + 1, Rational(0));
		t.c[size_t(k)] = f;
		q = q + t;
		r = r - t * b;
	}
	return {q, r};
}

QPoly poly_gcd(QPoly a, QPoly b)
{
	while (!b.is_zero()) {
		QPoly r = divrem(a, b).second;
		a = std::move(b);
		b = std::move(r);
	}
	if (!a.is_zero())
		a = scale(a, Rational(1) / a.lead());
	return a;
}

std::vector<QPoly> squarefree_decomposition(const QPoly &p)
{
	std::vector<QPoly> out;
	if (p.degree() < 1)
		return out;
	QPoly g = poly_gcd(p, derivative(p));
	QPoly w = divrem(p, g).first;
	QPoly y = divrem(derivative(p), g).first;
	QPoly z = y - derivative(w);
	while (!w.is_zero() && w.degree() >= 1) {
		QPoly f = poly_gcd(w, z);
		out.push_back(f);
		w = divrem(w, f).first;
		z = divrem(z, f).first - derivative(w);
	}
	// trailing exact factors of degree 0 carry no roots
	return out;
}

namespace {

std::vector<QPoly> sturm_chain(const QPoly &p)
{
	std::vector<QPoly> s;
	s.push_back(p);
	s.push_back(derivative(p));
	while (!s.back().is_zero() && s.back().degree() >= 1) {
		QPoly r = divrem(s[s.size() - 2], s.back()).second;
		if (r.is_zero())
			break;
		s.push_back(scale(r, Rational(-1)));
	}
	return s;
}

int sign_variations(const std::vector<QPoly> &chain, const Rational &x)
{
	int var = 0, prev = 0;
	for (const auto &p : chain) {
		int s = sgn(p.eval(x));
		if (s == 0)
			continue;
		if (prev != 0 && s != prev)
			++var;
		prev = s;
	}
	return var;
}

/// all positive divisors of |v| by trial division (desk-scale numbers)
std::vector<mpz_class> divisors_of(const mpz_class &v)
{
	std::vector<mpz_class> out;
	mpz_class a = abs(v);
	if (a == 0)
		return out;
	if (a > mpz_class("1000000000000"))
		return out; // give up on exactness, interval roots still reported
	for (mpz_class d = 1; d * d <= a; ++d)
		if (a % d == 0) {
			out.push_back(d);
			if (d * d != a)
				out.push_back(a / d);
		}
	return out;
}

} // namespace

int sturm_count(const QPoly &p, const Rational &a, const Rational &b)
{
	auto chain = sturm_chain(p);
	return sign_variations(chain, a) - sign_variations(chain, b);
}

Rational root_bound(const QPoly &p)
{
	Rational m = 0;
	for (size_t i = 0; i + 1 < p.c.size(); ++i) {
		Rational v = abs(p.c[i] / p.lead());
		if (v > m)
			m = v;
	}
	return m + 1;
}

void refine_root(const QPoly &p, Rational &lo, Rational &hi, int steps)
{
	int slo = sgn(p.eval(lo));
	for (int i = 0; i < steps; ++i) {
		Rational mid = (lo + hi) / 2;
		int sm = sgn(p.eval(mid));
		if (sm == 0) {
			// landed exactly on the root: keep it inside the half-open bracket
			lo = mid - (hi - lo) / 4;
			hi = mid;
			return;
		}
		if (sm == slo)
			lo = mid;
		else
			hi = mid;
	}
}

std::vector<IsolatedRoot> isolate_positive_roots(const QPoly &p)
{
	std::vector<IsolatedRoot> roots;
	if (p.degree() < 1)
		return roots;
	auto factors = squarefree_decomposition(p);

	// squarefree part of p carrying every distinct root once
	QPoly sf = QPoly::constant(Rational(1));
	for (const auto &f : factors)
		if (f.degree() >= 1)
			sf = sf * f;

	// strip the root at zero
	size_t vz = 0;
	while (vz < sf.c.size() && sgn(sf.c[vz]) == 0)
		++vz;
	if (vz > 0)
		sf.c.erase(sf.c.begin(), sf.c.begin() + long(vz));
	sf.normalize();
	if (sf.degree() < 1)
		return roots;

	// rational roots via the rational-root theorem on the cleared form
	mpz_class den_lcm = 1;
	for (const auto &q : sf.c)
		den_lcm = lcm(den_lcm, q.get_den());
	std::vector<mpz_class> ip;
	for (const auto &q : sf.c)
		ip.push_back(mpz_class(q * den_lcm));
	QPoly rem = sf;
	std::vector<Rational> rational_roots;
	for (const auto &pnum : divisors_of(ip.front()))
		for (const auto &pden : divisors_of(ip.back())) {
			Rational cand(pnum, pden);
			cand.canonicalize();
			if (sgn(rem.eval(cand)) == 0) {
				rational_roots.push_back(cand);
				QPoly lin({-cand, Rational(1)});
				rem = divrem(rem, lin).first;
				if (rem.degree() < 1)
					break;
			}
		}

	auto multiplicity_of = [&](const Rational &lo, const Rational &hi,
	                           const std::optional<Rational> &exact) {
		for (size_t i = factors.size(); i-- > 0;) {
			const QPoly &f = factors[i];
			if (f.degree() < 1)
				continue;
			if (exact) {
				if (sgn(f.eval(*exact)) == 0)
					return int(i) + 1;
			} else if (sturm_count(f, lo, hi) > 0)
				return int(i) + 1;
		}
		return 1;
	};

	for (const auto &r : rational_roots) {
		if (sgn(r) <= 0)
			continue;
		IsolatedRoot ir;
		ir.exact = r;
		ir.lo = r - Rational(1, 1024);
		ir.hi = r + Rational(1, 1024);
		ir.multiplicity = multiplicity_of(ir.lo, ir.hi, ir.exact);
		roots.push_back(ir);
	}

	// remaining (irrational) roots of rem in (0, bound]: bisect until each
	// interval holds exactly one
	if (rem.degree() >= 1) {
		Rational bound = root_bound(rem);
		std::vector<std::pair<Rational, Rational>> stack{{Rational(0), bound}};
		while (!stack.empty()) {
			auto [lo, hi] = stack.back();
			stack.pop_back();
			int cnt = sturm_count(rem, lo, hi);
			if (cnt == 0)
				continue;
			if (cnt == 1) {
				IsolatedRoot ir;
				ir.lo = lo;
				ir.hi = hi;
				refine_root(rem, ir.lo, ir.hi, 8);
				ir.multiplicity = multiplicity_of(ir.lo, ir.hi, std::nullopt);
				roots.push_back(ir);
				continue;
			}
			Rational mid = (lo + hi) / 2;
			stack.push_back({lo, mid});
			stack.push_back({mid, hi});
		}
	}

	std::sort(roots.begin(), roots.end(),
	          [](const IsolatedRoot &a, const IsolatedRoot &b) { return a.hi < b.hi; });
	return roots;
}

} // namespace lovelock
