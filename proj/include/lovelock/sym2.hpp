#pragma once

#include "lovelock/double_form.hpp"

namespace lovelock {

/// symmetric 2-tensor with components in a ring K, packed upper triangle
template <class K> struct SymT2 {
	int dim = 0;
	K proto;
	std::vector<K> v;

	SymT2() = default;
	SymT2(int dim_, K proto_) : dim(dim_), proto(std::move(proto_))
	{
		v.assign(size_t(dim * (dim + 1) / 2), proto);
	}
	int idx(int i, int j) const
	{
		if (i > j)
			std::swap(i, j);
		return i * dim - i * (i - 1) / 2 + (j - i);
	}
	const K &at(int i, int j) const { return v[idx(i, j)]; }
	void set(int i, int j, K x) { v[idx(i, j)] = std::move(x); }

	DForm<K> form() const
	{
		DForm<K> f = DForm<K>::zero(dim, 1, 1, proto);
		for (int i = 0; i < dim; ++i)
			for (int j = 0; j < dim; ++j)
				f.set(tup_pack({i}), tup_pack({j}), at(i, j));
		return f;
	}
	static SymT2 from_form(const DForm<K> &f)
	{
		SymT2 t(f.dim, f.proto);
		for (int i = 0; i < f.dim; ++i)
			for (int j = i; j < f.dim; ++j)
				t.set(i, j, f.at(tup_pack({i}), tup_pack({j})));
		return t;
	}
	static SymT2 from_mat(const Mat<K> &g, const K &proto)
	{
		SymT2 t(int(g.size()), proto);
		for (int i = 0; i < t.dim; ++i)
			for (int j = i; j < t.dim; ++j)
				t.set(i, j, g[i][j]);
		return t;
	}
	Mat<K> to_mat() const
	{
		Mat<K> g(dim, std::vector<K>(dim, proto));
		for (int i = 0; i < dim; ++i)
			for (int j = 0; j < dim; ++j)
				g[i][j] = at(i, j);
		return g;
	}
};

template <class K> SymT2<K> add(const SymT2<K> &a, const SymT2<K> &b)
{
	SymT2<K> r(a.dim, a.proto);
	for (size_t i = 0; i < r.v.size(); ++i)
		r.v[i] = add(a.v[i], b.v[i]);
	return r;
}
template <class K> SymT2<K> sub(const SymT2<K> &a, const SymT2<K> &b)
{
	SymT2<K> r(a.dim, a.proto);
	for (size_t i = 0; i < r.v.size(); ++i)
		r.v[i] = sub(a.v[i], b.v[i]);
	return r;
}
template <class K> SymT2<K> neg(const SymT2<K> &a)
{
	SymT2<K> r(a.dim, a.proto);
	for (size_t i = 0; i < r.v.size(); ++i)
		r.v[i] = neg(a.v[i]);
	return r;
}
template <class K> SymT2<K> scale(const SymT2<K> &a, const Scalar &s)
{
	SymT2<K> r(a.dim, a.proto);
	for (size_t i = 0; i < r.v.size(); ++i)
		r.v[i] = scale(a.v[i], s);
	return r;
}
template <class K> SymT2<K> scale_el(const SymT2<K> &a, const K &s)
{
	SymT2<K> r(a.dim, a.proto);
	for (size_t i = 0; i < r.v.size(); ++i)
		r.v[i] = mul(a.v[i], s);
	return r;
}
template <class K> bool is_zero(const SymT2<K> &a)
{
	for (const auto &x : a.v)
		if (!is_zero(x))
			return false;
	return true;
}
template <class K> bool fully_known(const SymT2<K> &a)
{
	for (const auto &x : a.v)
		if (!fully_known(x))
			return false;
	return true;
}
template <class K> bool ring_eq(const SymT2<K> &a, const SymT2<K> &b)
{
	for (size_t i = 0; i < a.v.size(); ++i)
		if (!ring_eq(a.v[i], b.v[i]))
			return false;
	return true;
}
template <class K> Scalar::Mode smode(const SymT2<K> &a) { return smode(a.proto); }

/// g-trace of a symmetric 2-tensor
template <class K> K trace_of(const Metric<K> &g, const SymT2<K> &t)
{
	K s = t.proto;
	for (int i = 0; i < t.dim; ++i)
		for (int j = 0; j < t.dim; ++j)
			if (!skippable(g.ginv[i][j]))
				s = add(s, mul(g.ginv[i][j], t.at(i, j)));
	return s;
}

/// t with one index raised: (g^{-1} t)^i_j as a matrix
template <class K> Mat<K> raise_one(const Metric<K> &g, const SymT2<K> &t)
{
	return mat_mul(g.ginv, t.to_mat(), t.proto);
}

template <class K> struct OneForm {
	int dim = 0;
	K proto;
	std::vector<K> v;

	OneForm() = default;
	OneForm(int dim_, K proto_) : dim(dim_), proto(std::move(proto_)), v(dim_, proto_) {}
	const K &at(int i) const { return v[size_t(i)]; }
	void set(int i, K x) { v[size_t(i)] = std::move(x); }
};

template <class K> OneForm<K> add(const OneForm<K> &a, const OneForm<K> &b)
{
	OneForm<K> r(a.dim, a.proto);
	for (int i = 0; i < a.dim; ++i)
		r.v[i] = add(a.v[i], b.v[i]);
	return r;
}
template <class K> OneForm<K> sub(const OneForm<K> &a, const OneForm<K> &b)
{
	OneForm<K> r(a.dim, a.proto);
	for (int i = 0; i < a.dim; ++i)
		r.v[i] = sub(a.v[i], b.v[i]);
	return r;
}
template <class K> OneForm<K> scale(const OneForm<K> &a, const Scalar &s)
{
	OneForm<K> r = a;
	for (auto &x : r.v)
		x = scale(x, s);
	return r;
}
template <class K> bool is_zero(const OneForm<K> &a)
{
	for (const auto &x : a.v)
		if (!is_zero(x))
			return false;
	return true;
}
template <class K> bool fully_known(const OneForm<K> &a)
{
	for (const auto &x : a.v)
		if (!fully_known(x))
			return false;
	return true;
}
template <class K> bool ring_eq(const OneForm<K> &a, const OneForm<K> &b)
{
	for (int i = 0; i < a.dim; ++i)
		if (!ring_eq(a.v[i], b.v[i]))
			return false;
	return true;
}
template <class K> Scalar::Mode smode(const OneForm<K> &a) { return smode(a.proto); }

} // namespace lovelock
