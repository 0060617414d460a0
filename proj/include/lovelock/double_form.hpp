#pragma once

#include "lovelock/matrix.hpp"

#include <map>
#include <tuple>
#include <vector>

namespace lovelock {

// ---------------------------------------------------------------------------
// Index tuples. A tuple is a strictly increasing list of indices in 0..m-1,
// packed as [len : 8][t0 : 8][t1 : 8]... so that the packed word orders
// tuples by length then lexicographically.

using Tup = uint64_t;

inline Tup tup_empty() { return 0; }
inline int tup_len(Tup t) { return int(t >> 56); }
inline int tup_get(Tup t, int i) { return int((t >> (8 * (6 - i))) & 0xff); }

inline Tup tup_pack(const std::vector<int> &v)
{
	Tup t = Tup(v.size()) << 56;
	for (size_t i = 0; i < v.size(); ++i)
		t |= Tup(v[i]) << (8 * (6 - i));
	return t;
}

inline std::vector<int> tup_unpack(Tup t)
{
	std::vector<int> v(tup_len(t));
	for (size_t i = 0; i < v.size(); ++i)
		v[i] = tup_get(t, int(i));
	return v;
}

inline bool tup_contains(Tup t, int x)
{
	for (int i = 0; i < tup_len(t); ++i)
		if (tup_get(t, i) == x)
			return true;
	return false;
}

/// sorted insertion of x as a new FRONT slot: returns {sign, tuple} where
/// sign = (-1)^(number of entries < x), or sign 0 if x already occurs
inline std::pair<int, Tup> tup_insert_front(Tup t, int x)
{
	int n = tup_len(t), p = 0;
	std::vector<int> v;
	v.reserve(n + 1);
	for (int i = 0; i < n; ++i) {
		int e = tup_get(t, i);
		if (e == x)
			return {0, 0};
		if (e < x)
			++p;
		v.push_back(e);
	}
	v.insert(v.begin() + p, x);
	return {p % 2 ? -1 : 1, tup_pack(v)};
}

/// remove the entry at position p; returns {entry, rest}
inline std::pair<int, Tup> tup_remove_at(Tup t, int p)
{
	std::vector<int> v = tup_unpack(t);
	int e = v[p];
	v.erase(v.begin() + p);
	return {e, tup_pack(v)};
}

/// shuffle-merge of two increasing tuples: {sign of the sorting permutation,
/// merged tuple}, sign 0 when they intersect
inline std::pair<int, Tup> tup_merge(Tup a, Tup b)
{
	int na = tup_len(a), nb = tup_len(b);
	std::vector<int> v;
	v.reserve(na + nb);
	int inv = 0;
	for (int j = 0; j < nb; ++j) {
		int x = tup_get(b, j);
		int greater = 0;
		for (int i = 0; i < na; ++i) {
			int y = tup_get(a, i);
			if (y == x)
				return {0, 0};
			if (y > x)
				++greater;
		}
		inv += greater;
	}
	for (int i = 0; i < na; ++i)
		v.push_back(tup_get(a, i));
	for (int j = 0; j < nb; ++j)
		v.push_back(tup_get(b, j));
	std::sort(v.begin(), v.end());
	return {inv % 2 ? -1 : 1, tup_pack(v)};
}

/// sort an arbitrary tuple: {sign, increasing tuple}, sign 0 on repeats
inline std::pair<int, Tup> tup_sort(const std::vector<int> &v)
{
	std::vector<int> w = v;
	int sign = 1;
	for (size_t i = 0; i < w.size(); ++i)
		for (size_t j = i + 1; j < w.size(); ++j) {
			if (w[i] == w[j])
				return {0, 0};
			if (w[i] > w[j]) {
				std::swap(w[i], w[j]);
				sign = -sign;
			}
		}
	return {sign, tup_pack(w)};
}

/// all increasing k-tuples from 0..m-1
inline std::vector<Tup> tuples_of(int m, int k)
{
	std::vector<Tup> out;
	if (k < 0 || k > m)
		return out;
	std::vector<int> v(k);
	for (int i = 0; i < k; ++i)
		v[i] = i;
	while (true) {
		out.push_back(tup_pack(v));
		int i = k - 1;
		while (i >= 0 && v[i] == m - k + i)
			--i;
		if (i < 0)
			break;
		++v[i];
		for (int j = i + 1; j < k; ++j)
			v[j] = v[j - 1] + 1;
	}
	return out;
}

// ---------------------------------------------------------------------------

struct DKey {
	Tup I, J;
	auto operator<=>(const DKey &) const = default;
};

/// Bidegree-(a,b) double form: alternating in each slot group, components
/// stored on increasing tuples only, values in an arbitrary coefficient
/// ring R. The zero form keeps its bidegree so bidegree arithmetic is total.
template <class R> struct DForm {
	int dim = 0;
	int pa = 0, pb = 0;
	R proto;
	std::map<DKey, R> comp;

	static DForm zero(int dim, int a, int b, R proto)
	{
		DForm f;
		f.dim = dim;
		f.pa = a;
		f.pb = b;
		f.proto = std::move(proto);
		return f;
	}
	static DForm scalar(int dim, R v)
	{
		DForm f = zero(dim, 0, 0, zero_like(v));
		f.set(tup_empty(), tup_empty(), std::move(v));
		return f;
	}

	bool is_zero_form() const { return comp.empty(); }

	void set(Tup I, Tup J, R v)
	{
		if (skippable(v))
			comp.erase(DKey{I, J});
		else
			comp[DKey{I, J}] = std::move(v);
	}
	void accumulate(Tup I, Tup J, const R &v)
	{
		if (skippable(v))
			return;
		auto [it, fresh] = comp.try_emplace(DKey{I, J}, v);
		if (!fresh) {
			it->second = add(it->second, v);
			if (skippable(it->second))
				comp.erase(it);
		}
	}

	/// component on increasing tuples (zero context if absent)
	const R &at(Tup I, Tup J) const
	{
		auto it = comp.find(DKey{I, J});
		return it == comp.end() ? proto : it->second;
	}

	/// component on arbitrary tuples via antisymmetric extension
	R get_general(const std::vector<int> &I, const std::vector<int> &J) const
	{
		auto [si, ti] = tup_sort(I);
		if (si == 0)
			return proto;
		auto [sj, tj] = tup_sort(J);
		if (sj == 0)
			return proto;
		const R &v = at(ti, tj);
		int s = si * sj;
		return s == 1 ? v : neg(v);
	}

	void check_shape(const DForm &o) const
	{
		if (dim != o.dim)
			throw DimensionError("double form dimension mismatch");
	}
};

template <class R> DForm<R> add(const DForm<R> &x, const DForm<R> &y)
{
	x.check_shape(y);
	if (x.is_zero_form() && !(x.pa == y.pa && x.pb == y.pb))
		return y;
	if (y.is_zero_form() && !(x.pa == y.pa && x.pb == y.pb))
		return x;
	if (x.pa != y.pa || x.pb != y.pb)
		throw DimensionError("double form bidegree mismatch in addition");
	DForm<R> r = x;
	for (const auto &[k, v] : y.comp)
		r.accumulate(k.I, k.J, v);
	return r;
}

template <class R> DForm<R> neg(const DForm<R> &x)
{
	DForm<R> r = x;
	for (auto &[k, v] : r.comp)
		v = neg(v);
	return r;
}

template <class R> DForm<R> sub(const DForm<R> &x, const DForm<R> &y)
{
	return add(x, neg(y));
}

template <class R> DForm<R> scale(const DForm<R> &x, const Scalar &s)
{
	DForm<R> r = x;
	if (s.is_zero()) {
		r.comp.clear();
		return r;
	}
	for (auto &[k, v] : r.comp)
		v = scale(v, s);
	return r;
}

template <class R> DForm<R> scale_el(const DForm<R> &x, const R &s)
{
	DForm<R> r = DForm<R>::zero(x.dim, x.pa, x.pb, x.proto);
	if (skippable(s))
		return r;
	for (const auto &[k, v] : x.comp)
		r.set(k.I, k.J, mul(v, s));
	return r;
}

/// Kulkarni-Nomizu product: wedge on each slot group.
template <class R> DForm<R> kn_product(const DForm<R> &x, const DForm<R> &y)
{
	x.check_shape(y);
	int a = x.pa + y.pa, b = x.pb + y.pb;
	DForm<R> r = DForm<R>::zero(x.dim, std::min(a, x.dim + 1), std::min(b, x.dim + 1), x.proto);
	if (a > x.dim || b > x.dim) {
		r.pa = a > x.dim ? x.dim : a; // zero form, clamp bidegree bookkeeping
		r.pb = b > x.dim ? x.dim : b;
		return r;
	}
	r.pa = a;
	r.pb = b;
	for (const auto &[kx, vx] : x.comp)
		for (const auto &[ky, vy] : y.comp) {
			auto [si, I] = tup_merge(kx.I, ky.I);
			if (si == 0)
				continue;
			auto [sj, J] = tup_merge(kx.J, ky.J);
			if (sj == 0)
				continue;
			R term = mul(vx, vy);
			if (si * sj == -1)
				term = neg(term);
			r.accumulate(I, J, term);
		}
	return r;
}

template <class R> DForm<R> kn_power(const DForm<R> &x, int k)
{
	DForm<R> r = DForm<R>::scalar(x.dim, one_like(x.proto));
	for (int i = 0; i < k; ++i)
		r = kn_product(r, x);
	return r;
}

// ---------------------------------------------------------------------------

/// Metric as a symmetric (1,1)-form with cached inverse components.
template <class R> struct Metric {
	int dim = 0;
	R proto;
	Mat<R> g;    // g_ij
	Mat<R> ginv; // g^ij

	Metric() = default;
	Metric(Mat<R> comps, R zero_proto) : dim(int(comps.size())), proto(std::move(zero_proto)), g(std::move(comps))
	{
		ginv = mat_inverse(g, proto);
	}
	/// explicit inverse (used where the inverse has block structure)
	Metric(Mat<R> comps, Mat<R> inv, R zero_proto)
	    : dim(int(comps.size())), proto(std::move(zero_proto)), g(std::move(comps)),
	      ginv(std::move(inv))
	{
	}

	DForm<R> form() const
	{
		DForm<R> f = DForm<R>::zero(dim, 1, 1, proto);
		for (int i = 0; i < dim; ++i)
			for (int j = 0; j < dim; ++j)
				f.set(tup_pack({i}), tup_pack({j}), g[i][j]);
		return f;
	}
};

/// Contraction against the metric: bidegree drops by (1,1); forms with an
/// empty slot group contract to zero.
template <class R> DForm<R> contract(const Metric<R> &m, const DForm<R> &x)
{
	int a = x.pa, b = x.pb;
	if (a == 0 || b == 0)
		return DForm<R>::zero(x.dim, 0, 0, x.proto);
	DForm<R> r = DForm<R>::zero(x.dim, a - 1, b - 1, x.proto);
	for (const auto &[k, v] : x.comp)
		for (int p = 0; p < a; ++p) {
			auto [rI, restI] = tup_remove_at(k.I, p);
			for (int q = 0; q < b; ++q) {
				auto [sJ, restJ] = tup_remove_at(k.J, q);
				const R &gi = m.ginv[rI][sJ];
				if (skippable(gi))
					continue;
				R term = mul(gi, v);
				if ((p + q) % 2)
					term = neg(term);
				r.accumulate(restI, restJ, term);
			}
		}
	return r;
}

template <class R> DForm<R> contract_p(const Metric<R> &m, DForm<R> x, int p)
{
	for (int i = 0; i < p; ++i)
		x = contract(m, x);
	return x;
}

/// full contraction down to a ring element (bidegree must be square)
template <class R> R full_contract(const Metric<R> &m, const DForm<R> &x)
{
	if (x.pa != x.pb)
		throw DimensionError("full_contract: bidegree not square");
	DForm<R> c = contract_p(m, x, x.pa);
	return c.at(tup_empty(), tup_empty());
}

/// First-Bianchi operator: (a,b) -> (a+1, b-1), the alternating sum that
/// cycles one second-slot vector through the first slot group.
template <class R> DForm<R> bianchi1(const DForm<R> &x)
{
	if (x.pb < 1)
		throw DimensionError("bianchi1: second bidegree must be >= 1");
	DForm<R> r = DForm<R>::zero(x.dim, x.pa + 1, x.pb - 1, x.proto);
	if (x.pa + 1 > x.dim)
		return r;
	// B1(w)((V_1..V_{a+1}), (W_1..W_{b-1})) =
	//   sum_j (-1)^j w((V_1..^V_j..V_{a+1}), (V_j, W_1..W_{b-1}))
	for (Tup I : tuples_of(x.dim, x.pa + 1)) {
		for (Tup J : tuples_of(x.dim, x.pb - 1)) {
			R v = x.proto;
			bool any = false;
			for (int j = 0; j < x.pa + 1; ++j) {
				auto [vj, restI] = tup_remove_at(I, j);
				auto [s, JJ] = tup_insert_front(J, vj);
				if (s == 0)
					continue;
				const R &w = x.at(restI, JJ);
				if (skippable(w))
					continue;
				any = true;
				int sign = ((j + 1) % 2 ? -1 : 1) * s;
				v = add(v, sign == 1 ? w : neg(w));
			}
			if (any && !is_zero(v))
				r.set(I, J, v);
		}
	}
	return r;
}

/// Classical full-tuple norm of a square-bidegree form: extend components by
/// antisymmetry to all tuples, raise every index, and sum over all (not just
/// increasing) tuples. Normalized so |R|^2 = R_ijkl R^ijkl and |Ric|^2 =
/// R_ij R^ij.
template <class R> R full_norm2(const Metric<R> &m, const DForm<R> &x)
{
	if (x.pa != x.pb)
		throw DimensionError("full_norm2: bidegree not square");
	int a = x.pa;
	// Gram matrix on increasing a-tuples: G^{I,I'} = det(g^{i_r i'_s})
	auto tuples = tuples_of(x.dim, a);
	auto gram = [&](Tup I, Tup II) {
		Mat<R> mm(a, std::vector<R>(a, x.proto));
		for (int r = 0; r < a; ++r)
			for (int s = 0; s < a; ++s)
				mm[r][s] = m.ginv[tup_get(I, r)][tup_get(II, s)];
		return mat_det(mm, x.proto);
	};
	R total = x.proto;
	for (const auto &[k, v] : x.comp) {
		// raised component on (k.I, k.J), then pair with x itself
		for (const auto &[k2, v2] : x.comp) {
			R gI = gram(k.I, k2.I);
			if (skippable(gI))
				continue;
			R gJ = gram(k.J, k2.J);
			if (skippable(gJ))
				continue;
			total = add(total, mul(mul(v, v2), mul(gI, gJ)));
		}
	}
	Rational f = factorial_q(a) * factorial_q(a);
	return scale_rat(total, f);
}

/// k-th elementary symmetric function of g^{-1} w (w a symmetric (1,1)
/// form), computed exactly from power traces via Newton's identities.
template <class R> R elem_sym(const Metric<R> &m, const DForm<R> &w, int k)
{
	if (w.pa != 1 || w.pb != 1)
		throw DimensionError("elem_sym: bidegree must be (1,1)");
	if (k < 0 || k > w.dim)
		throw DimensionError("elem_sym: k out of range");
	int n = w.dim;
	Mat<R> W = mat_zero(n, w.proto);
	for (const auto &[key, v] : w.comp)
		W[tup_get(key.I, 0)][tup_get(key.J, 0)] = v;
	Mat<R> M = mat_mul(m.ginv, W, w.proto);
	std::vector<R> p(k + 1, w.proto); // power sums p_1..p_k
	Mat<R> Mp = M;
	for (int j = 1; j <= k; ++j) {
		p[j] = mat_trace(Mp, w.proto);
		if (j < k)
			Mp = mat_mul(Mp, M, w.proto);
	}
	std::vector<R> sig(k + 1, w.proto);
	sig[0] = one_like(w.proto);
	for (int j = 1; j <= k; ++j) {
		R s = w.proto;
		for (int i = 1; i <= j; ++i) {
			R t = mul(sig[j - i], p[i]);
			s = add(s, i % 2 ? t : neg(t));
		}
		sig[j] = scale_rat(s, Rational(1, j));
	}
	return sig[k];
}

template <class R> bool ring_eq(const DForm<R> &x, const DForm<R> &y)
{
	if (x.dim != y.dim)
		return false;
	for (const auto &[k, v] : x.comp)
		if (!ring_eq(v, y.at(k.I, k.J)))
			return false;
	for (const auto &[k, v] : y.comp)
		if (x.comp.find(k) == x.comp.end() && !ring_eq(v, x.proto))
			return false;
	return true;
}

template <class R> bool is_zero(const DForm<R> &x)
{
	for (const auto &[k, v] : x.comp)
		if (!is_zero_el(v))
			return false;
	return true;
}
template <class R> Scalar::Mode smode(const DForm<R> &x) { return smode(x.proto); }
template <class R> bool fully_known(const DForm<R> &x)
{
	for (const auto &[k, v] : x.comp)
		if (!fully_known(v))
			return false;
	return true;
}
template <class R> DForm<R> zero_like(const DForm<R> &x)
{
	return DForm<R>::zero(x.dim, x.pa, x.pb, x.proto);
}

} // namespace lovelock
