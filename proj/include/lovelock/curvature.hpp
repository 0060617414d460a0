#pragma once

#include "lovelock/dual.hpp"
#include "lovelock/sym2.hpp"

namespace lovelock {

/// Levi-Civita connection coefficients of a metric of jets (or any ring K
/// carrying partial derivatives): G[k][i][j] = Gamma^k_ij.
template <class K> struct Christoffel {
	int dim = 0;
	std::vector<K> g; // flattened [k][i][j], j >= i slots mirrored
	const K &at(int k, int i, int j) const { return g[size_t((k * dim + i) * dim + j)]; }
};

template <class K> Christoffel<K> christoffel(const Metric<K> &m)
{
	int n = m.dim;
	Christoffel<K> ch;
	ch.dim = n;
	ch.g.assign(size_t(n) * n * n, m.proto);
	// dg[l][i][j] = partial_l g_ij
	std::vector<K> dg(size_t(n) * n * n, m.proto);
	auto D = [&](int l, int i, int j) -> K & { return dg[size_t((l * n + i) * n + j)]; };
	for (int l = 0; l < n; ++l)
		for (int i = 0; i < n; ++i)
			for (int j = i; j < n; ++j) {
				K d = pvar(m.g[i][j], l);
				D(l, i, j) = d;
				if (i != j)
					D(l, j, i) = d;
			}
	for (int k = 0; k < n; ++k)
		for (int i = 0; i < n; ++i)
			for (int j = i; j < n; ++j) {
				K s = m.proto;
				for (int l = 0; l < n; ++l) {
					if (skippable(m.ginv[k][l]))
						continue;
					K t = add(D(i, j, l), sub(D(j, i, l), D(l, i, j)));
					if (skippable(t))
						continue;
					s = add(s, mul(m.ginv[k][l], t));
				}
				s = scale_rat(s, Rational(1, 2));
				ch.g[size_t((k * n + i) * n + j)] = s;
				if (i != j)
					ch.g[size_t((k * n + j) * n + i)] = std::move(s);
			}
	return ch;
}

/// Curvature as a symmetric (2,2) double form, with the sign pinned so that
/// a constant-sectional-curvature-kappa metric satisfies R = (kappa/2) g^2
/// (so the round sphere comes out positive).
template <class K> int metric_reldeg(const Metric<K> &m)
{
	int d = kDegInf;
	for (const auto &row : m.g)
		for (const auto &v : row)
			d = deg_min(d, gate_reldeg(v));
	return d;
}

template <class K> DForm<K> riemann(const Metric<K> &m, const Christoffel<K> &ch)
{
	int n = m.dim;
	if (metric_reldeg(m) < 2)
		throw DegreeError("riemann: metric jets carry fewer than 2 reliable derivatives");
	DForm<K> R = DForm<K>::zero(n, 2, 2, m.proto);
	if (n < 2)
		return R;
	// lower R(i,j,k,.): L[s] = dGamma/coord terms of R^s_{ijk}
	for (Tup I : tuples_of(n, 2)) {
		int i = tup_get(I, 0), j = tup_get(I, 1);
		// R^s_{ijk} = d_i G^s_{jk} - d_j G^s_{ik} + G^s_{ia}G^a_{jk} - G^s_{ja}G^a_{ik}
		std::vector<K> Rs(size_t(n) * n, m.proto); // [s][k]
		for (int s = 0; s < n; ++s)
			for (int k = 0; k < n; ++k) {
				K t = sub(pvar(ch.at(s, j, k), i), pvar(ch.at(s, i, k), j));
				for (int a = 0; a < n; ++a) {
					if (!skippable(ch.at(s, i, a)) && !skippable(ch.at(a, j, k)))
						t = add(t, mul(ch.at(s, i, a), ch.at(a, j, k)));
					if (!skippable(ch.at(s, j, a)) && !skippable(ch.at(a, i, k)))
						t = sub(t, mul(ch.at(s, j, a), ch.at(a, i, k)));
				}
				Rs[size_t(s) * n + k] = std::move(t);
			}
		for (Tup J : tuples_of(n, 2)) {
			int k = tup_get(J, 0), l = tup_get(J, 1);
			// R_g((V_i,V_j),(V_k,V_l)) = g(R(V_i,V_j)V_k, V_l), sign fixed by
			// the constant-curvature normalization
			K v = m.proto;
			for (int s = 0; s < n; ++s) {
				const K &r = Rs[size_t(s) * n + k];
				if (skippable(r) || skippable(m.g[s][l]))
					continue;
				v = add(v, mul(m.g[s][l], r));
			}
			R.set(I, J, neg(v));
		}
	}
	return R;
}

template <class K> DForm<K> riemann(const Metric<K> &m)
{
	return riemann(m, christoffel(m));
}

/// generalized Ricci form, Lovelock scalar and Lovelock tensor of order 2q
template <class K> struct LovelockFamily {
	SymT2<K> ric2q;
	K scal2q;
	SymT2<K> e2q;
};

template <class K>
LovelockFamily<K> lovelock_family(const Metric<K> &m, int q, const DForm<K> &R)
{
	DForm<K> Rq = kn_power(R, q);
	DForm<K> ric_form = contract_p(m, Rq, 2 * q - 1);
	K scal = full_contract(m, contract(m, ric_form));
	SymT2<K> ric = SymT2<K>::from_form(ric_form);
	SymT2<K> gsym = SymT2<K>::from_mat(m.g, m.proto);
	SymT2<K> e = sub(ric, scale_el(gsym, scale_rat(scal, Rational(1, 2 * q))));
	return {std::move(ric), std::move(scal), std::move(e)};
}

template <class K> LovelockFamily<K> lovelock_family(const Metric<K> &m, int q)
{
	return lovelock_family(m, q, riemann(m));
}

/// gravitation operator: Phi - (1/2q) tr_g(Phi) g, takes Ric^(2q) to E^(2q)
template <class K> SymT2<K> gravitation(const Metric<K> &m, int q, const SymT2<K> &phi)
{
	SymT2<K> gsym = SymT2<K>::from_mat(m.g, m.proto);
	return sub(phi, scale_el(gsym, scale_rat(trace_of(m, phi), Rational(1, 2 * q))));
}

/// Schouten tensor and Weyl (2,2)-form: R = W + g * P with C(W) = 0
template <class K> struct SchoutenWeyl {
	SymT2<K> P;
	DForm<K> W;
};

template <class K> SchoutenWeyl<K> schouten_weyl(const Metric<K> &m, const DForm<K> &R)
{
	int mm = m.dim;
	if (mm < 3)
		throw DimensionError("schouten_weyl: dimension must be >= 3");
	DForm<K> ric = contract(m, R);
	K scal = full_contract(m, ric);
	DForm<K> gform = SymT2<K>::from_mat(m.g, m.proto).form();
	DForm<K> p = scale_rat(add(ric, scale_el(gform, scale_rat(scal, Rational(-1, 2 * (mm - 1))))),
	                       Rational(1, mm - 2));
	DForm<K> W = sub(R, kn_product(gform, p));
	return {SymT2<K>::from_form(p), std::move(W)};
}

template <class K> SchoutenWeyl<K> schouten_weyl(const Metric<K> &m)
{
	return schouten_weyl(m, riemann(m));
}

// ---------------------------------------------------------------------------
// First-order differential operators. Comma notation means covariant
// differentiation throughout; the Laplacian is the non-negative rough
// Laplacian nabla* nabla.

template <class K>
SymT2<K> cov_deriv_entry(const Metric<K> &m, const Christoffel<K> &ch, const SymT2<K> &t, int k)
{
	SymT2<K> r(t.dim, t.proto);
	for (int i = 0; i < t.dim; ++i)
		for (int j = i; j < t.dim; ++j) {
			K v = pvar(t.at(i, j), k);
			for (int s = 0; s < t.dim; ++s) {
				if (!skippable(ch.at(s, k, i)))
					v = sub(v, mul(ch.at(s, k, i), t.at(s, j)));
				if (!skippable(ch.at(s, k, j)))
					v = sub(v, mul(ch.at(s, k, j), t.at(i, s)));
			}
			r.set(i, j, std::move(v));
		}
	return r;
}

template <class K>
OneForm<K> cov_deriv_entry(const Metric<K> &m, const Christoffel<K> &ch, const OneForm<K> &w,
                           int k)
{
	OneForm<K> r(w.dim, w.proto);
	for (int i = 0; i < w.dim; ++i) {
		K v = pvar(w.at(i), k);
		for (int s = 0; s < w.dim; ++s)
			if (!skippable(ch.at(s, k, i)))
				v = sub(v, mul(ch.at(s, k, i), w.at(s)));
		r.set(i, std::move(v));
	}
	return r;
}

/// (delta t)_i = -g^{jk} t_{ij,k}
template <class K>
OneForm<K> divergence(const Metric<K> &m, const Christoffel<K> &ch, const SymT2<K> &t)
{
	OneForm<K> r(t.dim, t.proto);
	std::vector<SymT2<K>> dt;
	dt.reserve(t.dim);
	for (int k = 0; k < t.dim; ++k)
		dt.push_back(cov_deriv_entry(m, ch, t, k));
	for (int i = 0; i < t.dim; ++i) {
		K v = t.proto;
		for (int j = 0; j < t.dim; ++j)
			for (int k = 0; k < t.dim; ++k)
				if (!skippable(m.ginv[j][k]))
					v = add(v, mul(m.ginv[j][k], dt[k].at(i, j)));
		r.set(i, neg(v));
	}
	return r;
}

/// delta of a one-form: -g^{jk} w_{j,k}
template <class K>
K divergence(const Metric<K> &m, const Christoffel<K> &ch, const OneForm<K> &w)
{
	K v = w.proto;
	for (int k = 0; k < w.dim; ++k) {
		OneForm<K> dw = cov_deriv_entry(m, ch, w, k);
		for (int j = 0; j < w.dim; ++j)
			if (!skippable(m.ginv[j][k]))
				v = add(v, mul(m.ginv[j][k], dw.at(j)));
	}
	return neg(v);
}

/// (delta* w)_ij = (w_{i,j} + w_{j,i}) / 2
template <class K>
SymT2<K> div_star(const Metric<K> &m, const Christoffel<K> &ch, const OneForm<K> &w)
{
	SymT2<K> r(w.dim, w.proto);
	std::vector<OneForm<K>> dw;
	dw.reserve(w.dim);
	for (int k = 0; k < w.dim; ++k)
		dw.push_back(cov_deriv_entry(m, ch, w, k));
	for (int i = 0; i < w.dim; ++i)
		for (int j = i; j < w.dim; ++j)
			r.set(i, j, scale_rat(add(dw[j].at(i), dw[i].at(j)), Rational(1, 2)));
	return r;
}

template <class K> OneForm<K> dee(const K &f, int dim)
{
	OneForm<K> r(dim, zero_like(f));
	for (int i = 0; i < dim; ++i)
		r.set(i, pvar(f, i));
	return r;
}

/// Hessian of a scalar: f_{;ij}
template <class K>
SymT2<K> hessian(const Metric<K> &m, const Christoffel<K> &ch, const K &f)
{
	SymT2<K> r(m.dim, m.proto);
	for (int i = 0; i < m.dim; ++i)
		for (int j = i; j < m.dim; ++j) {
			K v = pvar(pvar(f, i), j);
			for (int s = 0; s < m.dim; ++s)
				if (!skippable(ch.at(s, i, j)))
					v = sub(v, mul(ch.at(s, i, j), pvar(f, s)));
			r.set(i, j, std::move(v));
		}
	return r;
}

/// rough Laplacian on scalars, Delta = nabla* nabla (non-negative)
template <class K>
K laplacian(const Metric<K> &m, const Christoffel<K> &ch, const K &f)
{
	SymT2<K> h = hessian(m, ch, f);
	return neg(trace_of(m, h));
}

/// rough Laplacian on symmetric 2-tensors
template <class K>
SymT2<K> laplacian(const Metric<K> &m, const Christoffel<K> &ch, const SymT2<K> &t)
{
	int n = t.dim;
	std::vector<SymT2<K>> dt;
	dt.reserve(n);
	for (int k = 0; k < n; ++k)
		dt.push_back(cov_deriv_entry(m, ch, t, k));
	SymT2<K> r(n, t.proto);
	for (int a = 0; a < n; ++a)
		for (int b = 0; b < n; ++b) {
			if (skippable(m.ginv[a][b]))
				continue;
			// (nabla^2 t)_{ab,ij}
			SymT2<K> d2(n, t.proto);
			for (int i = 0; i < n; ++i)
				for (int j = i; j < n; ++j) {
					K v = pvar(dt[b].at(i, j), a);
					for (int s = 0; s < n; ++s) {
						if (!skippable(ch.at(s, a, b)))
							v = sub(v, mul(ch.at(s, a, b), dt[s].at(i, j)));
						if (!skippable(ch.at(s, a, i)))
							v = sub(v, mul(ch.at(s, a, i), dt[b].at(s, j)));
						if (!skippable(ch.at(s, a, j)))
							v = sub(v, mul(ch.at(s, a, j), dt[b].at(i, s)));
					}
					d2.set(i, j, std::move(v));
				}
			r = sub(r, scale_el(d2, m.ginv[a][b]));
		}
	return r;
}

/// Lichnerowicz Laplacian, Besse convention:
/// Delta_L t = Delta t + Ric o t + t o Ric - 2 Rdot t
template <class K>
SymT2<K> lichnerowicz(const Metric<K> &m, const Christoffel<K> &ch, const DForm<K> &R,
                      const SymT2<K> &t)
{
	int n = t.dim;
	SymT2<K> lap = laplacian(m, ch, t);
	SymT2<K> ric = SymT2<K>::from_form(contract(m, R));
	Mat<K> ric_up = raise_one(m, ric); // Ric^s_j
	Mat<K> t_up = raise_one(m, t);
	SymT2<K> comp(n, t.proto);
	for (int i = 0; i < n; ++i)
		for (int j = i; j < n; ++j) {
			K v = t.proto;
			for (int s = 0; s < n; ++s) {
				if (!skippable(ric_up[s][i]))
					v = add(v, mul(ric_up[s][i], t.at(s, j)));
				if (!skippable(ric_up[s][j]))
					v = add(v, mul(ric_up[s][j], t.at(i, s)));
			}
			comp.set(i, j, std::move(v));
		}
	// (Rdot t)_ij = R((i,s),(j,t)) t^{st}
	SymT2<K> rt(n, t.proto);
	for (int i = 0; i < n; ++i)
		for (int j = i; j < n; ++j) {
			K v = t.proto;
			for (int s = 0; s < n; ++s)
				for (int u = 0; u < n; ++u) {
					K tu = t.proto;
					for (int a = 0; a < n; ++a)
						for (int b = 0; b < n; ++b) {
							if (skippable(m.ginv[s][a]) || skippable(m.ginv[u][b]))
								continue;
							tu = add(tu, mul(mul(m.ginv[s][a], m.ginv[u][b]), t.at(a, b)));
						}
					if (skippable(tu))
						continue;
					K rr = R.get_general({i, s}, {j, u});
					if (skippable(rr))
						continue;
					v = add(v, mul(rr, tu));
				}
			rt.set(i, j, std::move(v));
		}
	return add(add(lap, comp), scale_rat(rt, Rational(-2)));
}

/// exact first variation of (Ric, scal) at h0 in direction k: the probe IS
/// the implementation; displayed Lichnerowicz formulas are checked against
/// it in the tests
template <class K> struct RicDot {
	SymT2<K> dric;
	K dscal;
};

template <class K> RicDot<K> ric_dot(const Metric<K> &h0, const SymT2<K> &k)
{
	int n = h0.dim;
	Mat<Dual<K>> gd(n, std::vector<Dual<K>>(n, Dual<K>::lift(h0.proto, 1)));
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			gd[i][j] = Dual<K>(h0.g[i][j], {k.at(i, j)});
	Metric<Dual<K>> md(gd, Dual<K>::lift(h0.proto, 1));
	DForm<Dual<K>> R = riemann(md);
	DForm<Dual<K>> ric = contract(md, R);
	Dual<K> scal = full_contract(md, contract(md, ric));
	RicDot<K> out{SymT2<K>(n, h0.proto), scal.eps.empty() ? h0.proto : scal.eps[0]};
	for (int i = 0; i < n; ++i)
		for (int j = i; j < n; ++j) {
			const Dual<K> &v = ric.at(tup_pack({i}), tup_pack({j}));
			out.dric.set(i, j, v.eps.empty() ? h0.proto : v.eps[0]);
		}
	return out;
}

} // namespace lovelock
