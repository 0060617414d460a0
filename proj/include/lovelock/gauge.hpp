#pragma once

#include "lovelock/couplings.hpp"
#include "lovelock/curvature.hpp"

namespace lovelock {

template <class K> struct GaugePair {
	SymT2<K> Phi;
	SymT2<K> Q;
	OneForm<K> omega; // the gauge one-form g t^{-1} delta_g G^2_g(t)
};

/// DeTurck-style gauge perturbation and the gauge-fixed operator
///   Q_(a,b)(g,t) = sum_q a_q (Ric^2q - l^2q g) + b_q (scal^2q - (n+1) l^2q) g
///                  - Phi_(a,b)(g,t)
/// on an (n+1)-dimensional metric; ring-generic so nilpotent probes can
/// differentiate through it.
template <class K>
GaugePair<K> gauge_pair(const Metric<K> &g, const Metric<K> &t, const Couplings &c)
{
	int m = g.dim;
	int n = c.n;
	if (m != n + 1)
		throw DimensionError("gauge_pair: metric dimension must be n+1");
	Scalar::Mode md = smode(g.proto);

	Christoffel<K> ch = christoffel(g);
	DForm<K> R = riemann(g, ch);
	SymT2<K> gsym = SymT2<K>::from_mat(g.g, g.proto);
	SymT2<K> tsym = SymT2<K>::from_mat(t.g, t.proto);

	// omega = g t^{-1} delta_g G^(2)_g(t)
	SymT2<K> g2t = gravitation(g, 1, tsym);
	OneForm<K> wt = divergence(g, ch, g2t);
	OneForm<K> omega(m, g.proto);
	for (int i = 0; i < m; ++i) {
		K v = g.proto;
		for (int j = 0; j < m; ++j)
			for (int k = 0; k < m; ++k) {
				if (skippable(g.g[i][j]) || skippable(t.ginv[j][k]))
					continue;
				v = add(v, mul(g.g[i][j], mul(t.ginv[j][k], wt.at(k))));
			}
		omega.set(i, std::move(v));
	}

	SymT2<K> ds_omega = div_star(g, ch, omega);
	K d_omega = divergence(g, ch, omega);
	SymT2<K> g_domega = scale_el(gsym, d_omega);

	SymT2<K> Phi(m, g.proto);
	SymT2<K> Q(m, g.proto);
	K beta_scalar = g.proto;
	for (int q = 1; q <= c.qmax(); ++q) {
		Rational lam = lambda2q(n, q);
		Rational aq = c.alpha[size_t(q - 1)];
		Rational bq = c.beta[size_t(q - 1)];
		if (sgn(aq) != 0 || sgn(bq) != 0) {
			LovelockFamily<K> fam = lovelock_family(g, q, R);
			if (sgn(aq) != 0) {
				SymT2<K> part = sub(fam.ric2q, scale(gsym, make_scalar(lam, md)));
				Q = add(Q, scale(part, make_scalar(aq, md)));
			}
			if (sgn(bq) != 0) {
				K sc = add(fam.scal2q,
				           scale(one_like(g.proto), make_scalar(-lam * (n + 1), md)));
				beta_scalar = add(beta_scalar, scale(sc, make_scalar(bq, md)));
			}
		}
		// Phi coefficients
		Rational f1 = -lam * aq * (n - 2 * q + 1) / (n * (n - 1));
		Rational f2 = lam * (aq * (q - 1) + bq * (n - 1) * q) / (n * (n - 1));
		if (sgn(f1) != 0)
			Phi = add(Phi, scale(ds_omega, make_scalar(f1, md)));
		if (sgn(f2) != 0)
			Phi = add(Phi, scale(g_domega, make_scalar(f2, md)));
	}
	if (!skippable(beta_scalar))
		Q = add(Q, scale_el(gsym, beta_scalar));
	Q = sub(Q, Phi);
	return {std::move(Phi), std::move(Q), std::move(omega)};
}

} // namespace lovelock
