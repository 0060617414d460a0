#pragma once

#include "lovelock/couplings.hpp"
#include "lovelock/curvature.hpp"
#include "lovelock/xseries.hpp"

namespace lovelock {

/// Metric in normal form x^{-2}(dx^2/kappa + h(x)) near the boundary:
/// h is a truncated series in x whose coefficients are boundary symmetric
/// 2-tensors over the ring K. Stored as a metric of series so boundary
/// contractions and curvature run through the generic tensor layer.
template <class K> struct ProductMetric {
	int n = 0;
	Scalar kappa;
	int trunc = 0;
	Metric<XSer<K>> h;

	static ProductMetric make(int n, Scalar kappa, int trunc,
	                          const std::vector<SymT2<K>> &coeffs)
	{
		ProductMetric pm;
		pm.n = n;
		pm.kappa = std::move(kappa);
		pm.trunc = trunc;
		if (coeffs.empty())
			throw DimensionError("product metric needs at least the order-0 coefficient");
		XSer<K> proto = XSer<K>::make(coeffs[0].proto, trunc);
		Mat<XSer<K>> g(n, std::vector<XSer<K>>(n, proto));
		for (int i = 0; i < n; ++i)
			for (int j = 0; j < n; ++j) {
				XSer<K> s = proto;
				for (int k = 0; k < int(coeffs.size()) && k <= trunc; ++k)
					s.set_coeff(k, coeffs[size_t(k)].at(i, j));
				g[i][j] = std::move(s);
			}
		pm.h = Metric<XSer<K>>(std::move(g), proto);
		return pm;
	}
};

/// The three blocks of the curvature of x^{-2}(dx^2/kappa + h):
///   R_g = (dx (x) dx) ^ x^-4 A + x^-2 S((dx (x) 1) ^ Dhp) + x^-4 T
/// with A a boundary (1,1)-form series, Dhp a (1,2)-form series and T a
/// (2,2)-form series. The singular prefactors stay symbolic.
template <class K> struct CurvatureBlocks {
	DForm<XSer<K>> A;
	DForm<XSer<K>> Dhp;
	DForm<XSer<K>> T;
};

template <class K>
DForm<XSer<K>> sym2_series_form(const ProductMetric<K> &pm, int which /*0: h, 1: h'*/)
{
	using R = XSer<K>;
	DForm<R> f = DForm<R>::zero(pm.n, 1, 1, pm.h.proto);
	for (int i = 0; i < pm.n; ++i)
		for (int j = 0; j < pm.n; ++j) {
			R v = pm.h.g[i][j];
			if (which == 1)
				v = derive_x(v);
			f.set(tup_pack({i}), tup_pack({j}), std::move(v));
		}
	return f;
}

template <class K> CurvatureBlocks<K> product_curvature_blocks(const ProductMetric<K> &pm)
{
	using R = XSer<K>;
	const Metric<R> &h = pm.h;
	DForm<R> hf = sym2_series_form(pm, 0);
	DForm<R> hp = sym2_series_form(pm, 1);
	DForm<R> hpp = DForm<R>::zero(pm.n, 1, 1, h.proto);
	for (const auto &[k, v] : hp.comp)
		hpp.set(k.I, k.J, derive_x(v));

	// A = (x^2/2)(-h'' + C(h')h'/2 - C(h'^2)/4) + (x/2) h' - h
	R chp = full_contract(h, hp); // C_h(h'), the h-trace of h'
	DForm<R> inner = scale(hpp, Scalar::exact(-1));
	inner = add(inner, scale(scale_el(hp, chp), Scalar(1, 2)));
	inner = add(inner, scale(contract(h, kn_product(hp, hp)), Scalar(-1, 4)));
	DForm<R> A = DForm<R>::zero(pm.n, 1, 1, h.proto);
	for (const auto &[k, v] : inner.comp)
		A.accumulate(k.I, k.J, scale(shift_up(v, 2), Scalar(1, 2)));
	for (const auto &[k, v] : hp.comp)
		A.accumulate(k.I, k.J, scale(shift_up(v, 1), Scalar(1, 2)));
	A = add(A, neg(hf));

	// T = x^2 R_h - (kappa/2) ((x/2) h' - h)^2
	DForm<R> Rh = riemann(h);
	DForm<R> x2Rh = DForm<R>::zero(pm.n, 2, 2, h.proto);
	for (const auto &[k, v] : Rh.comp)
		x2Rh.set(k.I, k.J, shift_up(v, 2));
	DForm<R> B = DForm<R>::zero(pm.n, 1, 1, h.proto);
	for (const auto &[k, v] : hp.comp)
		B.accumulate(k.I, k.J, scale(shift_up(v, 1), Scalar(1, 2)));
	B = add(B, neg(hf));
	DForm<R> T = add(x2Rh, scale(kn_product(B, B), pm.kappa * Scalar(-1, 2)));

	// Mixed block of the curvature: R_g((dx,U),(V,W)) = x^-2 Dhp(U)(V,W) with
	// Dhp(U)(V,W) = ((nabla_W h')(U,V) - (nabla_V h')(U,W)) / 2 (h-connection);
	// pinned against the generic curvature of the full metric jet
	Christoffel<R> ch = christoffel(h);
	SymT2<R> hps(pm.n, h.proto);
	for (int i = 0; i < pm.n; ++i)
		for (int j = i; j < pm.n; ++j)
			hps.set(i, j, hp.at(tup_pack({i}), tup_pack({j})));
	std::vector<SymT2<R>> nab;
	nab.reserve(pm.n);
	for (int v = 0; v < pm.n; ++v)
		nab.push_back(cov_deriv_entry(h, ch, hps, v));
	DForm<R> Dhp = DForm<R>::zero(pm.n, 1, 2, h.proto);
	for (int u = 0; u < pm.n; ++u)
		for (int v = 0; v < pm.n; ++v)
			for (int w = v + 1; w < pm.n; ++w) {
				R val = scale(sub(nab[w].at(u, v), nab[v].at(u, w)), Scalar(1, 2));
				Dhp.set(tup_pack({u}), tup_pack({v, w}), std::move(val));
			}

	return {std::move(A), std::move(Dhp), std::move(T)};
}

/// Residual F_g(alpha, beta) in blocks, uniformly carrying the exponent
/// offset: F = x^offset ( dxdx-coefficient * dx(x)dx + mixed + tangential ).
template <class K> struct ResidualBlocks {
	int n = 0;
	int offset = -2;
	XSer<K> dxdx;
	std::vector<XSer<K>> mixed; // F_{0l} series, l = 0..n-1
	SymT2<XSer<K>> tangential;
};

template <class K>
ResidualBlocks<K> residual_F(const ProductMetric<K> &pm, const Couplings &c)
{
	using R = XSer<K>;
	if (pm.n != c.n)
		throw DimensionError("residual_F: boundary dimension mismatch");
	const Metric<R> &h = pm.h;
	CurvatureBlocks<K> blk = product_curvature_blocks(pm);
	Scalar::Mode md = smode(h.proto);
	Scalar kap = pm.kappa;
	Scalar ikap = kap.inv();
	int n = pm.n;
	int m = n + 1;

	// Rt := x^4 R_g as a (2,2)-form on the n+1 indices (0 = the x-slot) with
	// boundary-series entries; every contraction against g^{-1} contributes
	// a symbolic factor x^2, so with the constant block metric
	// ghat^{-1} = kappa (+) h^{-1}(x):
	//   C_g^{2q-1}(R_g^q) = x^{-2} C_ghat^{2q-1}(Rt^q),
	//   C_g^{2q}(R_g^q)   =        C_ghat^{2q}(Rt^q).
	// This keeps every sector of R^q (including the quadratic mixed-block
	// cross terms) without transcribing per-sector contraction formulas.
	DForm<R> Rt = DForm<R>::zero(m, 2, 2, h.proto);
	for (const auto &[k, v] : blk.A.comp) {
		int i = tup_get(k.I, 0), j = tup_get(k.J, 0);
		Rt.set(tup_pack({0, 1 + i}), tup_pack({0, 1 + j}), v);
	}
	for (const auto &[k, v] : blk.Dhp.comp) {
		int u = tup_get(k.I, 0);
		int a = tup_get(k.J, 0), b = tup_get(k.J, 1);
		R sv = shift_up(v, 2);
		Rt.set(tup_pack({0, 1 + u}), tup_pack({1 + a, 1 + b}), sv);
		Rt.set(tup_pack({1 + a, 1 + b}), tup_pack({0, 1 + u}), std::move(sv));
	}
	for (const auto &[k, v] : blk.T.comp)
		Rt.set(tup_pack({1 + tup_get(k.I, 0), 1 + tup_get(k.I, 1)}),
		       tup_pack({1 + tup_get(k.J, 0), 1 + tup_get(k.J, 1)}), v);

	Mat<R> ghat(m, std::vector<R>(m, h.proto));
	Mat<R> ghat_inv(m, std::vector<R>(m, h.proto));
	ghat[0][0] = scale(one_like(h.proto), ikap);
	ghat_inv[0][0] = scale(one_like(h.proto), kap);
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			ghat[1 + i][1 + j] = h.g[i][j];
			ghat_inv[1 + i][1 + j] = h.ginv[i][j];
		}
	Metric<R> gh(std::move(ghat), std::move(ghat_inv), h.proto);

	ResidualBlocks<K> F;
	F.n = n;
	F.dxdx = h.proto;
	F.mixed.assign(size_t(n), h.proto);
	F.tangential = SymT2<R>(n, h.proto);
	R one_ser = one_like(h.proto);
	R beta_scalar = h.proto;

	DForm<R> Rq = DForm<R>::scalar(m, one_like(h.proto));
	for (int q = 1; q <= c.qmax(); ++q) {
		Rq = kn_product(Rq, Rt); // Rt^q
		Rational aq = c.alpha[size_t(q - 1)];
		Rational bq = c.beta[size_t(q - 1)];
		Rational lam = lambda2q(n, q);
		if (sgn(aq) == 0 && sgn(bq) == 0)
			continue;
		DForm<R> ric = contract_p(gh, Rq, 2 * q - 1); // x^2 C_g^{2q-1}(R^q), (1,1)
		if (sgn(aq) != 0) {
			Scalar aqs = make_scalar(aq, md);
			// dx (x) dx coefficient, minus lambda^{2q} g_00 = lambda/kappa
			R v00 = ric.at(tup_pack({0}), tup_pack({0}));
			F.dxdx = add(F.dxdx, scale(v00, aqs));
			F.dxdx = add(F.dxdx, scale(one_ser, aqs * make_scalar(-lam, md) * ikap));
			for (int l = 0; l < n; ++l) {
				const R &v = ric.at(tup_pack({0}), tup_pack({1 + l}));
				if (!skippable(v))
					F.mixed[size_t(l)] = add(F.mixed[size_t(l)], scale(v, aqs));
			}
			for (int i = 0; i < n; ++i)
				for (int j = i; j < n; ++j) {
					R v = ric.at(tup_pack({1 + i}), tup_pack({1 + j}));
					v = add(v, scale(h.g[i][j], make_scalar(-lam, md)));
					F.tangential.set(i, j, add(F.tangential.at(i, j), scale(v, aqs)));
				}
		}
		if (sgn(bq) != 0) {
			R ell = full_contract(gh, contract(gh, ric));
			ell = add(ell, scale(one_ser, make_scalar(-lam * (n + 1), md)));
			beta_scalar = add(beta_scalar, scale(ell, make_scalar(bq, md)));
		}
	}

	// beta part multiplies g = x^-2 (dx(x)dx / kappa + h)
	if (!skippable(beta_scalar)) {
		F.dxdx = add(F.dxdx, scale(beta_scalar, ikap));
		for (int i = 0; i < n; ++i)
			for (int j = i; j < n; ++j)
				F.tangential.set(i, j, add(F.tangential.at(i, j), mul(beta_scalar, h.g[i][j])));
	}
	return F;
}

} // namespace lovelock
