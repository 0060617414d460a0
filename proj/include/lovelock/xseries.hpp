#pragma once

#include "lovelock/rings.hpp"

#include <vector>

namespace lovelock {

/// Truncated power series in the boundary defining function x, with
/// coefficients in an arbitrary ring R (jets, tensors of jets, duals).
/// `trunc` is the reliable order: coefficients of x^k for k > trunc are
/// unknown. Singular prefactors (x^-2 and friends) are never expanded; block
/// assembly tracks them as explicit exponent offsets next to these series.
template <class R> struct XSer {
	int trunc = kDegInf;
	std::vector<R> c; // c[k] multiplies x^k; trailing zeros may be omitted
	R proto;          // zero element fixing the coefficient-ring context

	XSer() = default;
	static XSer make(R zero_proto, int trunc)
	{
		XSer s;
		s.proto = std::move(zero_proto);
		s.trunc = trunc;
		return s;
	}
	static XSer constant(R v, int trunc)
	{
		XSer s = make(zero_like(v), trunc);
		if (!is_zero_el(v))
			s.c.push_back(std::move(v));
		return s;
	}

	const R &coeff(int k) const
	{
		static thread_local R dummy;
		if (k < 0 || k >= int(c.size())) {
			dummy = proto;
			return dummy;
		}
		return c[k];
	}
	void set_coeff(int k, R v)
	{
		if (k > trunc)
			throw DegreeError("XSer::set_coeff beyond truncation order");
		if (int(c.size()) <= k)
			c.resize(k + 1, proto);
		c[k] = std::move(v);
	}
	int val() const
	{
		for (int k = 0; k < int(c.size()); ++k)
			if (!is_zero_el(c[k]))
				return k;
		return kDegInf;
	}
	bool is_zero_all() const { return val() >= kDegInf; }
	void compress()
	{
		// trailing zeros are dropped only when exactly known: a zero that is
		// reliable to a finite degree still carries information
		while (!c.empty() && is_zero_el(c.back()) && fully_known_el(c.back()))
			c.pop_back();
		if (int(c.size()) > trunc + 1 && trunc < kDegInf)
			c.resize(trunc + 1 < 0 ? 0 : trunc + 1);
	}
};

template <class R> XSer<R> add(const XSer<R> &a, const XSer<R> &b)
{
	XSer<R> r = XSer<R>::make(a.proto, deg_min(a.trunc, b.trunc));
	int n = int(std::max(a.c.size(), b.c.size()));
	for (int k = 0; k < n && k <= r.trunc; ++k)
		r.set_coeff(k, add(a.coeff(k), b.coeff(k)));
	r.compress();
	return r;
}

template <class R> XSer<R> sub(const XSer<R> &a, const XSer<R> &b)
{
	XSer<R> r = XSer<R>::make(a.proto, deg_min(a.trunc, b.trunc));
	int n = int(std::max(a.c.size(), b.c.size()));
	for (int k = 0; k < n && k <= r.trunc; ++k)
		r.set_coeff(k, sub(a.coeff(k), b.coeff(k)));
	r.compress();
	return r;
}

template <class R> XSer<R> neg(const XSer<R> &a)
{
	XSer<R> r = a;
	for (auto &v : r.c)
		v = neg(v);
	return r;
}

template <class R> XSer<R> mul(const XSer<R> &a, const XSer<R> &b)
{
	XSer<R> r = XSer<R>::make(a.proto,
	                          deg_min(deg_add(a.trunc, b.val()), deg_add(b.trunc, a.val())));
	int top = deg_min(r.trunc, int(a.c.size()) + int(b.c.size()) - 2);
	for (int k = 0; k <= top; ++k) {
		R s = a.proto;
		for (int i = 0; i < int(a.c.size()) && i <= k; ++i) {
			if (is_zero_el(a.c[i]))
				continue;
			const R &bj = b.coeff(k - i);
			if (is_zero_el(bj))
				continue;
			s = add(s, mul(a.c[i], bj));
		}
		if (!is_zero_el(s))
			r.set_coeff(k, std::move(s));
	}
	r.compress();
	return r;
}

template <class R> XSer<R> scale(const XSer<R> &a, const Scalar &s)
{
	XSer<R> r = a;
	for (auto &v : r.c)
		v = scale(v, s);
	r.compress();
	return r;
}

/// multiply by x^j (j >= 0): exactly known orders improve by j
template <class R> XSer<R> shift_up(const XSer<R> &a, int j)
{
	XSer<R> r = XSer<R>::make(a.proto, deg_add(a.trunc, j));
	for (int k = 0; k < int(a.c.size()); ++k)
		if (!skippable(a.c[k]))
			r.set_coeff(k + j, a.c[k]);
	return r;
}

/// divide by x^j; the first j coefficients must vanish
template <class R> XSer<R> shift_down(const XSer<R> &a, int j)
{
	for (int k = 0; k < j; ++k)
		if (!is_zero_el(a.coeff(k)))
			throw std::domain_error("XSer shift_down: series not divisible by x^j");
	XSer<R> r = XSer<R>::make(a.proto, a.trunc >= kDegInf ? kDegInf : a.trunc - j);
	for (int k = j; k < int(a.c.size()); ++k)
		r.set_coeff(k - j, a.c[k]);
	return r;
}

template <class R> XSer<R> derive_x(const XSer<R> &a)
{
	XSer<R> r = XSer<R>::make(a.proto, a.trunc >= kDegInf ? kDegInf : a.trunc - 1);
	for (int k = 1; k < int(a.c.size()); ++k) {
		if (is_zero_el(a.c[k]) || k - 1 > r.trunc)
			continue;
		r.set_coeff(k - 1, scale(a.c[k], make_scalar(Rational(k), smode(a.proto))));
	}
	return r;
}

template <class R> XSer<R> invert(const XSer<R> &a)
{
	if (!is_unit(a.coeff(0)))
		throw NotAUnitError("XSer invert: order-0 coefficient is not a unit");
	int top = a.trunc >= kDegInf ? int(a.c.size()) - 1 : a.trunc;
	if (top < 0)
		top = 0;
	if (a.trunc >= kDegInf && int(a.c.size()) > 1)
		throw DegreeError("XSer invert: nonconstant series with unbounded order; truncate first");
	XSer<R> r = XSer<R>::make(a.proto, a.trunc);
	R b0 = invert(a.coeff(0));
	r.set_coeff(0, b0);
	for (int k = 1; k <= top; ++k) {
		R s = a.proto;
		for (int i = 1; i <= k; ++i) {
			const R &ai = a.coeff(i);
			if (is_zero_el(ai))
				continue;
			const R &bj = r.coeff(k - i);
			if (is_zero_el(bj))
				continue;
			s = add(s, mul(ai, bj));
		}
		r.set_coeff(k, neg(mul(b0, s)));
	}
	r.compress();
	return r;
}

template <class R> XSer<R> pvar(const XSer<R> &a, int i)
{
	XSer<R> r = XSer<R>::make(pvar(a.proto, i), a.trunc);
	for (int k = 0; k < int(a.c.size()); ++k)
		if (!skippable(a.c[k]))
			r.set_coeff(k, pvar(a.c[k], i));
	return r;
}

template <class R> bool is_zero(const XSer<R> &a) { return a.is_zero_all(); }
template <class R> int reldeg(const XSer<R> &a)
{
	int d = kDegInf;
	for (const auto &v : a.c)
		d = deg_min(d, reldeg(v));
	return d;
}
template <class R> int gate_reldeg(const XSer<R> &a) { return gate_reldeg(a.coeff(0)); }
template <class R> bool fully_known(const XSer<R> &a)
{
	if (a.trunc < kDegInf)
		return false;
	for (const auto &v : a.c)
		if (!fully_known(v))
			return false;
	return true;
}
template <class R> bool is_unit(const XSer<R> &a) { return is_unit(a.coeff(0)); }
template <class R> Scalar::Mode smode(const XSer<R> &a) { return smode(a.proto); }
template <class R> XSer<R> zero_like(const XSer<R> &a) { return XSer<R>::make(a.proto, a.trunc); }
template <class R> XSer<R> one_like(const XSer<R> &a)
{
	return XSer<R>::constant(one_like(a.proto), a.trunc);
}
template <class R> bool ring_eq(const XSer<R> &a, const XSer<R> &b)
{
	int d = deg_min(a.trunc, b.trunc);
	int n = int(std::max(a.c.size(), b.c.size()));
	for (int k = 0; k <= std::min(d, n - 1); ++k)
		if (!ring_eq(a.coeff(k), b.coeff(k)))
			return false;
	return true;
}

/// Sum_{k} c_k x0^k, reading the series as the polynomial it stores.
template <class R> R eval_poly(const XSer<R> &a, const Scalar &x0)
{
	R r = a.proto;
	Scalar p = Scalar::one(x0.mode());
	for (int k = 0; k < int(a.c.size()); ++k) {
		if (!is_zero_el(a.c[k]))
			r = add(r, scale(a.c[k], p));
		p *= x0;
	}
	return r;
}

template <class R> bool eq_through(const XSer<R> &a, const XSer<R> &b, int order)
{
	for (int k = 0; k <= order; ++k)
		if (!ring_eq(a.coeff(k), b.coeff(k)))
			return false;
	return true;
}

} // namespace lovelock
