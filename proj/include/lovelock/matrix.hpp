#pragma once

#include "lovelock/rings.hpp"

#include <vector>

namespace lovelock {

template <class R> using Mat = std::vector<std::vector<R>>;

template <class R> Mat<R> mat_zero(int n, const R &proto)
{
	return Mat<R>(n, std::vector<R>(n, proto));
}

template <class R> Mat<R> mat_mul(const Mat<R> &a, const Mat<R> &b, const R &proto)
{
	int n = int(a.size());
	Mat<R> r = mat_zero(n, proto);
	for (int i = 0; i < n; ++i)
		for (int k = 0; k < n; ++k) {
			if (skippable(a[i][k]))
				continue;
			for (int j = 0; j < n; ++j) {
				if (skippable(b[k][j]))
					continue;
				r[i][j] = add(r[i][j], mul(a[i][k], b[k][j]));
			}
		}
	return r;
}

template <class R> R mat_trace(const Mat<R> &a, const R &proto)
{
	R t = proto;
	for (size_t i = 0; i < a.size(); ++i)
		t = add(t, a[i][i]);
	return t;
}

/// Gauss-Jordan inverse over a commutative ring; pivots must be units
/// (nonzero at the base point). Fails loudly otherwise.
template <class R> Mat<R> mat_inverse(Mat<R> a, const R &proto)
{
	int n = int(a.size());
	Mat<R> inv = mat_zero(n, proto);
	for (int i = 0; i < n; ++i)
		inv[i][i] = one_like(proto);
	for (int col = 0; col < n; ++col) {
		int piv = -1;
		for (int r = col; r < n; ++r)
			if (is_unit(a[r][col])) {
				piv = r;
				break;
			}
		if (piv < 0)
			throw NotAUnitError("matrix inverse: no unit pivot (singular at base point)");
		std::swap(a[piv], a[col]);
		std::swap(inv[piv], inv[col]);
		R ip = invert(a[col][col]);
		for (int j = 0; j < n; ++j) {
			a[col][j] = mul(ip, a[col][j]);
			inv[col][j] = mul(ip, inv[col][j]);
		}
		for (int r = 0; r < n; ++r) {
			if (r == col || skippable(a[r][col]))
				continue;
			R f = a[r][col];
			for (int j = 0; j < n; ++j) {
				a[r][j] = sub(a[r][j], mul(f, a[col][j]));
				inv[r][j] = sub(inv[r][j], mul(f, inv[col][j]));
			}
		}
	}
	return inv;
}

/// cofactor-expansion determinant (used for small Gram matrices)
template <class R> R mat_det(const Mat<R> &a, const R &proto)
{
	int n = int(a.size());
	if (n == 0)
		return one_like(proto);
	if (n == 1)
		return a[0][0];
	R det = proto;
	for (int r = 0; r < n; ++r) {
		if (skippable(a[r][0]))
			continue;
		Mat<R> minor;
		minor.reserve(n - 1);
		for (int i = 0; i < n; ++i) {
			if (i == r)
				continue;
			minor.emplace_back(a[i].begin() + 1, a[i].end());
		}
		R term = mul(a[r][0], mat_det(minor, proto));
		det = add(det, r % 2 ? neg(term) : term);
	}
	return det;
}

} // namespace lovelock
