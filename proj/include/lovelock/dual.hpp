#pragma once

#include "lovelock/rings.hpp"

#include <vector>

namespace lovelock {

/// Nilpotent extension R[eps_1..eps_k]/(eps_i eps_j = 0): the exact
/// directional-derivative probe. The eps slots carry independent first
/// variations through any ring-generic computation; products of two eps
/// parts vanish identically, so the slots stay exactly linear.
template <class R> struct Dual {
	R a;
	std::vector<R> eps;

	Dual() = default;
	explicit Dual(R base) : a(std::move(base)) {}
	Dual(R base, std::vector<R> e) : a(std::move(base)), eps(std::move(e)) {}

	static Dual lift(R base, int slots)
	{
		Dual d(std::move(base));
		d.eps.resize(slots, zero_like(d.a));
		return d;
	}

	bool is_zero_all() const
	{
		if (!is_zero(a))
			return false;
		for (const auto &e : eps)
			if (!is_zero(e))
				return false;
		return true;
	}
};

namespace detail {
template <class R>
std::vector<R> eps_binary(const std::vector<R> &x, const std::vector<R> &y,
                          const R &ctx, R (*op)(const R &, const R &))
{
	size_t k = std::max(x.size(), y.size());
	std::vector<R> r;
	r.reserve(k);
	for (size_t i = 0; i < k; ++i) {
		const R &xi = i < x.size() ? x[i] : ctx;
		const R &yi = i < y.size() ? y[i] : ctx;
		r.push_back(op(xi, yi));
	}
	return r;
}
} // namespace detail

template <class R> Dual<R> add(const Dual<R> &x, const Dual<R> &y)
{
	R z = zero_like(x.a);
	return {add(x.a, y.a), detail::eps_binary<R>(x.eps, y.eps, z,
	                                             [](const R &p, const R &q) { return add(p, q); })};
}

template <class R> Dual<R> sub(const Dual<R> &x, const Dual<R> &y)
{
	R z = zero_like(x.a);
	return {sub(x.a, y.a), detail::eps_binary<R>(x.eps, y.eps, z,
	                                             [](const R &p, const R &q) { return sub(p, q); })};
}

template <class R> Dual<R> neg(const Dual<R> &x)
{
	Dual<R> r(neg(x.a));
	r.eps.reserve(x.eps.size());
	for (const auto &e : x.eps)
		r.eps.push_back(neg(e));
	return r;
}

template <class R> Dual<R> mul(const Dual<R> &x, const Dual<R> &y)
{
	Dual<R> r(mul(x.a, y.a));
	size_t k = std::max(x.eps.size(), y.eps.size());
	r.eps.reserve(k);
	for (size_t i = 0; i < k; ++i) {
		R t = zero_like(x.a);
		if (i < x.eps.size() && !skippable(x.eps[i]))
			t = add(t, mul(x.eps[i], y.a));
		if (i < y.eps.size() && !skippable(y.eps[i]))
			t = add(t, mul(x.a, y.eps[i]));
		r.eps.push_back(std::move(t));
	}
	return r;
}

template <class R> Dual<R> scale(const Dual<R> &x, const Scalar &s)
{
	Dual<R> r(scale(x.a, s));
	r.eps.reserve(x.eps.size());
	for (const auto &e : x.eps)
		r.eps.push_back(scale(e, s));
	return r;
}

template <class R> Dual<R> invert(const Dual<R> &x)
{
	R ia = invert(x.a);
	Dual<R> r(ia);
	r.eps.reserve(x.eps.size());
	for (const auto &e : x.eps)
		r.eps.push_back(neg(mul(ia, mul(e, ia))));
	return r;
}

template <class R> Dual<R> pvar(const Dual<R> &x, int i)
{
	Dual<R> r(pvar(x.a, i));
	r.eps.reserve(x.eps.size());
	for (const auto &e : x.eps)
		r.eps.push_back(pvar(e, i));
	return r;
}

template <class R> bool is_zero(const Dual<R> &x) { return x.is_zero_all(); }
template <class R> int reldeg(const Dual<R> &x)
{
	int d = reldeg(x.a);
	for (const auto &e : x.eps)
		d = deg_min(d, reldeg(e));
	return d;
}
template <class R> int gate_reldeg(const Dual<R> &x) { return gate_reldeg(x.a); }
template <class R> bool fully_known(const Dual<R> &x)
{
	if (!fully_known(x.a))
		return false;
	for (const auto &e : x.eps)
		if (!fully_known(e))
			return false;
	return true;
}
template <class R> bool is_unit(const Dual<R> &x) { return is_unit(x.a); }
template <class R> Scalar::Mode smode(const Dual<R> &x) { return smode(x.a); }
template <class R> Dual<R> zero_like(const Dual<R> &x)
{
	Dual<R> r(zero_like(x.a));
	r.eps.assign(x.eps.size(), zero_like(x.a));
	return r;
}
template <class R> Dual<R> one_like(const Dual<R> &x)
{
	Dual<R> r(one_like(x.a));
	r.eps.assign(x.eps.size(), zero_like(x.a));
	return r;
}
template <class R> bool ring_eq(const Dual<R> &x, const Dual<R> &y)
{
	if (!ring_eq(x.a, y.a))
		return false;
	size_t k = std::max(x.eps.size(), y.eps.size());
	R z = zero_like(x.a);
	for (size_t i = 0; i < k; ++i) {
		const R &xi = i < x.eps.size() ? x.eps[i] : z;
		const R &yi = i < y.eps.size() ? y.eps[i] : z;
		if (!ring_eq(xi, yi))
			return false;
	}
	return true;
}

/// eps-coefficient of f(base + eps * direction): the exact first variation
template <class R, class F> R nilpotent_probe(F &&f, const R &base, const R &direction)
{
	Dual<R> x(base, {direction});
	Dual<R> y = f(x);
	return y.eps.empty() ? zero_like(y.a) : y.eps[0];
}

} // namespace lovelock
