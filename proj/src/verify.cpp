#include "lovelock/verify.hpp"

namespace lovelock {

// --------------------------------------------------------------------------
// offset-series helpers

OffSer off_add(const OffSer &a, const OffSer &b)
{
	int off = std::min(a.off, b.off);
	XSer<Jet> sa = shift_up(a.s, a.off - off);
	XSer<Jet> sb = shift_up(b.s, b.off - off);
	return {off, add(sa, sb)};
}

OffSer off_scale(const OffSer &a, const Scalar &v) { return {a.off, scale(a.s, v)}; }

OffSer off_mul_series(const OffSer &a, const XSer<Jet> &f) { return {a.off, mul(a.s, f)}; }

OffSer off_ddx(const OffSer &a)
{
	// d/dx (x^e s) = x^{e-1} (e s + x s')
	XSer<Jet> t = scale(a.s, make_scalar(Rational(a.off), smode(a.s.proto)));
	t = add(t, shift_up(derive_x(a.s), 1));
	return {a.off - 1, t};
}

OffSer off_xpow(const OffSer &a, int j) { return {a.off + j, a.s}; }

bool off_eq_through(const OffSer &a, const OffSer &b, int order_from_off)
{
	int off = std::min(a.off, b.off);
	XSer<Jet> sa = shift_up(a.s, a.off - off);
	XSer<Jet> sb = shift_up(b.s, b.off - off);
	return eq_through(sa, sb, order_from_off - off);
}

// --------------------------------------------------------------------------
// pointwise block evaluation against the generic curvature

namespace {

/// evaluate the dorder-th x-derivative of the stored polynomial at x0
Jet eval_deriv(const XSer<Jet> &s, int dorder, const Rational &x0, const Jet &proto)
{
	Jet r = proto;
	Rational p = 1;
	for (int k = dorder; k < int(s.c.size()); ++k) {
		// falling factorial k (k-1) ... (k-dorder+1) x0^{k-dorder}
		if (!s.c[size_t(k)].is_zero()) {
			Rational f = falling_q(k, dorder);
			Rational xp = 1;
			for (int t = 0; t < k - dorder; ++t)
				xp *= x0;
			r = jet_add(r, jet_scale(s.c[size_t(k)], Scalar(f * xp)));
		}
	}
	(void)p;
	return r;
}

Jet drop_t(const Jet &a) // restrict an (n+1)-variable jet to t = 0 (variable 0)
{
	Jet r = a;
	std::erase_if(r.terms, [](const auto &t) { return mono_exp(t.first, 0) > 0; });
	return r;
}

} // namespace

CrossCheckResult generic_cross_check(const ProductMetric<Jet> &pm, const Rational &x0)
{
	if (sgn(x0) <= 0)
		throw RegimeError("generic_cross_check: x0 must be positive (metric is singular "
		                  "at the boundary)");
	if (smode(pm.h.proto) != Scalar::Mode::Exact)
		throw ModeError("generic_cross_check: exact mode required");
	int n = pm.n;
	Jet bproto = pm.h.proto.proto;
	Rational kq = pm.kappa.rat();

	// pointwise boundary data at x = x0
	Mat<Jet> hm(n, std::vector<Jet>(n, bproto));
	SymT2<Jet> hps(n, bproto), hpps(n, bproto);
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			hm[i][j] = eval_deriv(pm.h.g[i][j], 0, x0, bproto);
			if (j >= i) {
				hps.set(i, j, eval_deriv(pm.h.g[i][j], 1, x0, bproto));
				hpps.set(i, j, eval_deriv(pm.h.g[i][j], 2, x0, bproto));
			}
		}
	Metric<Jet> hx(hm, bproto);
	DForm<Jet> hf = SymT2<Jet>::from_mat(hx.g, bproto).form();
	DForm<Jet> hp = hps.form();
	DForm<Jet> hpp = hpps.form();

	Scalar sx0 = Scalar(x0);
	Scalar x2 = Scalar(x0 * x0);

	// A = (x^2/2)(-h'' + C(h') h'/2 - C(h'^2)/4) + (x/2) h' - h, at x0
	Jet chp = full_contract(hx, hp);
	DForm<Jet> inner = scale(hpp, Scalar::exact(-1));
	inner = add(inner, scale(scale_el(hp, chp), Scalar(1, 2)));
	inner = add(inner, scale(contract(hx, kn_product(hp, hp)), Scalar(-1, 4)));
	DForm<Jet> A = scale(inner, x2 * Scalar(1, 2));
	A = add(A, scale(hp, sx0 * Scalar(1, 2)));
	A = add(A, neg(hf));

	// T = x^2 R_h - (kappa/2)((x/2) h' - h)^2, at x0
	DForm<Jet> B = add(scale(hp, sx0 * Scalar(1, 2)), neg(hf));
	DForm<Jet> T = add(scale(riemann(hx), x2),
	                   scale(kn_product(B, B), Scalar(kq) * Scalar(-1, 2)));

	// mixed block at x0 from the pointwise h-connection (the curvature's
	// sign convention)
	Christoffel<Jet> ch = christoffel(hx);
	std::vector<SymT2<Jet>> nab;
	for (int v = 0; v < n; ++v)
		nab.push_back(cov_deriv_entry(hx, ch, hps, v));
	DForm<Jet> Dhp = DForm<Jet>::zero(n, 1, 2, bproto);
	for (int u = 0; u < n; ++u)
		for (int v = 0; v < n; ++v)
			for (int w = v + 1; w < n; ++w)
				Dhp.set(tup_pack({u}), tup_pack({v, w}),
				        jet_scale(jet_sub(nab[w].at(u, v), nab[v].at(u, w)), Scalar(1, 2)));

	// full (n+1)-variable metric jet around (x0, base point)
	int m = n + 1;
	Jet u = jet_add(Jet::constant(m, Scalar(x0)), Jet::variable(m, 0));
	int dfull = kDegInf;
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			dfull = deg_min(dfull, reldeg(pm.h.g[i][j]));
	if (dfull >= kDegInf)
		dfull = 4;
	Jet u2inv = jet_invert(jet_truncate(jet_mul(u, u), dfull));
	Mat<Jet> gf(m, std::vector<Jet>(m, Jet::zero(m)));
	gf[0][0] = jet_scale(u2inv, pm.kappa.inv());
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			Jet hij = Jet::zero(m);
			Jet upow = u.one_like();
			for (int k = 0; k < int(pm.h.g[i][j].c.size()); ++k) {
				const Jet &ck = pm.h.g[i][j].c[size_t(k)];
				if (!ck.is_zero())
					hij = jet_add(hij, jet_mul(jet_lift(ck, m, 1), upow));
				upow = jet_truncate(jet_mul(upow, u), dfull);
			}
			gf[1 + i][1 + j] = jet_mul(u2inv, hij);
		}
	Metric<Jet> gfull(gf, Jet::zero(m));
	DForm<Jet> Rfull = riemann(gfull);

	Scalar im4 = Scalar(Rational(1) / (x0 * x0 * x0 * x0));
	Scalar im2 = Scalar(Rational(1) / (x0 * x0));

	CrossCheckResult out;
	out.dxdx_ok = true;
	out.tangential_ok = true;
	out.mixed_ok = true;
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			Jet lhs = drop_t(Rfull.get_general({0, 1 + i}, {0, 1 + j}));
			Jet rhs = jet_scale(jet_lift(A.at(tup_pack({i}), tup_pack({j})), m, 1), im4);
			if (!jet_eq(lhs, rhs))
				out.dxdx_ok = false;
		}
	for (Tup I : tuples_of(n, 2))
		for (Tup J : tuples_of(n, 2)) {
			Jet lhs = drop_t(Rfull.get_general({1 + tup_get(I, 0), 1 + tup_get(I, 1)},
			                                   {1 + tup_get(J, 0), 1 + tup_get(J, 1)}));
			Jet rhs = jet_scale(jet_lift(T.at(I, J), m, 1), im4);
			if (!jet_eq(lhs, rhs))
				out.tangential_ok = false;
		}
	for (int uu = 0; uu < n; ++uu)
		for (Tup J : tuples_of(n, 2)) {
			Jet lhs = drop_t(Rfull.get_general({0, 1 + uu},
			                                   {1 + tup_get(J, 0), 1 + tup_get(J, 1)}));
			Jet rhs = jet_scale(jet_lift(Dhp.at(tup_pack({uu}), J), m, 1), im2);
			if (!jet_eq(lhs, rhs))
				out.mixed_ok = false;
		}
	out.ok = out.dxdx_ok && out.tangential_ok && out.mixed_ok;
	return out;
}

// --------------------------------------------------------------------------
// divergence identity

DivergenceCheck divergence_identity(const ProductMetric<Jet> &pm, const Couplings &c)
{
	if (!c.lovelock_beta)
		throw RegimeError("divergence_identity: requires the Lovelock trace combination");
	using R = XSer<Jet>;
	int n = pm.n;
	const Metric<R> &h = pm.h;
	Scalar kap = pm.kappa;
	Scalar::Mode md = smode(h.proto.proto);

	ResidualBlocks<Jet> F = residual_F(pm, c);
	Christoffel<R> ch = christoffel(h);

	// h' entries and tr = h^{ij} h'_{ij}
	Mat<R> hp(n, std::vector<R>(n, h.proto));
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			hp[i][j] = derive_x(h.g[i][j]);
	R tr = h.proto;
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			if (!is_zero(h.ginv[i][j]))
				tr = add(tr, mul(h.ginv[i][j], hp[i][j]));

	auto pencil = [&](const OffSer &f, int shift_1n) {
		// kappa (d/dx + shift/x + tr/2) f
		OffSer r = off_ddx(f);
		r = off_add(r, off_xpow(off_scale(f, make_scalar(Rational(shift_1n), md)), -1));
		r = off_add(r, off_mul_series(f, scale(tr, Scalar(1, 2))));
		return off_scale(r, kap);
	};

	DivergenceCheck out;
	int through = kDegInf;

	// tangential components: kappa(d/dx + (1-n)/x + tr/2) F_{0l} = delta_h(F_tang)_l
	// (barred connection; the x-direction Christoffel corrections cancel)
	SymT2<R> S = F.tangential;
	OneForm<R> divS = divergence(h, ch, S);
	bool okl = true;
	for (int l = 0; l < n; ++l) {
		OffSer lhs = pencil({F.offset, F.mixed[size_t(l)]}, 1 - n);
		OffSer rhs{F.offset, divS.at(l)};
		int cmp = std::min(deg_min(lhs.s.trunc, rhs.s.trunc) + std::min(lhs.off, rhs.off),
		                   kDegInf);
		through = std::min(through, cmp);
		if (!off_eq_through(lhs, rhs, cmp))
			okl = false;
	}
	out.component_tangential = okl;

	// normal component: kappa(d/dx + (2-n)/x + tr/2) F_00 =
	//   (h^{ij} h^{kl} h'_{il}/2 - h^{jk}/x) F_{jk}
	//   - (h^{ij} d_i - h^{ik} Gammabar^j_{ik}) F_{j0}
	{
		OffSer lhs = pencil({F.offset, F.dxdx}, 2 - n);
		OffSer rhs{F.offset, h.proto};
		// (1/2) h^{ij} h^{kl} h'_{il} F_{jk} and -(1/x) h^{jk} F_{jk}
		R term1 = h.proto, term2 = h.proto;
		for (int jj = 0; jj < n; ++jj)
			for (int kk = 0; kk < n; ++kk) {
				const R &Fjk = S.at(jj, kk);
				if (is_zero(Fjk))
					continue;
				R w = h.proto;
				for (int i = 0; i < n; ++i)
					for (int l = 0; l < n; ++l) {
						if (is_zero(h.ginv[i][jj]) || is_zero(h.ginv[kk][l]))
							continue;
						w = add(w, mul(mul(h.ginv[i][jj], h.ginv[kk][l]), hp[i][l]));
					}
				if (!is_zero(w))
					term1 = add(term1, mul(w, Fjk));
				if (!is_zero(h.ginv[jj][kk]))
					term2 = add(term2, mul(h.ginv[jj][kk], Fjk));
			}
		rhs = off_add(rhs, {F.offset, scale(term1, Scalar(1, 2))});
		rhs = off_add(rhs, {F.offset - 1, neg(term2)});
		// -(h^{ij} d_i - h^{ik} Gammabar^j_{ik}) F_{j0}
		R term3 = h.proto;
		for (int i = 0; i < n; ++i)
			for (int j = 0; j < n; ++j) {
				if (!is_zero(h.ginv[i][j]))
					term3 = add(term3, mul(h.ginv[i][j], pvar(F.mixed[size_t(j)], i)));
				for (int k = 0; k < n; ++k) {
					if (is_zero(h.ginv[i][k]) || is_zero(ch.at(j, i, k)))
						continue;
					term3 = sub(term3, mul(mul(h.ginv[i][k], ch.at(j, i, k)),
					                       F.mixed[size_t(j)]));
				}
			}
		rhs = off_add(rhs, {F.offset, neg(term3)});
		int cmp = std::min(deg_min(lhs.s.trunc, rhs.s.trunc) + std::min(lhs.off, rhs.off),
		                   kDegInf);
		through = std::min(through, cmp);
		out.component_normal = off_eq_through(lhs, rhs, cmp);
	}
	out.through = through >= kDegInf ? -1 : through;
	return out;
}

// --------------------------------------------------------------------------

SplitTrace split_trace(const Metric<Jet> &g0, const SymT2<Jet> &r)
{
	Jet u = jet_scale(trace_of(g0, r), make_scalar(Rational(1, g0.dim), r.proto.mode));
	SymT2<Jet> gs = SymT2<Jet>::from_mat(g0.g, g0.proto);
	return {u, sub(r, scale_el(gs, u))};
}

GaugePair<Jet> gauge_q_phi(const Metric<Jet> &g, const Metric<Jet> &t, const Couplings &c)
{
	return gauge_pair(g, t, c);
}

// --------------------------------------------------------------------------
// linearization battery

namespace {

void require_hyperbolic(const Metric<Jet> &g0)
{
	DForm<Jet> R = riemann(g0);
	DForm<Jet> g2 = kn_power(SymT2<Jet>::from_mat(g0.g, g0.proto).form(), 2);
	if (!ring_eq(R, scale(g2, Scalar(-1, 2))))
		throw RegimeError("lin_check: base metric must have constant sectional curvature "
		                  "-1 (only there are the displayed formulas exact)");
}

using DJ = Dual<Jet>;

Metric<DJ> dual_metric(const Metric<Jet> &g, const SymT2<Jet> &dir)
{
	int m = g.dim;
	Mat<DJ> gd(m, std::vector<DJ>(m, DJ::lift(g.proto, 1)));
	for (int i = 0; i < m; ++i)
		for (int j = 0; j < m; ++j)
			gd[i][j] = DJ(g.g[i][j], {dir.at(i, j)});
	return Metric<DJ>(gd, DJ::lift(g.proto, 1));
}

SymT2<Jet> eps_part(const SymT2<DJ> &t, const Jet &proto)
{
	SymT2<Jet> r(t.dim, proto);
	for (int i = 0; i < t.dim; ++i)
		for (int j = i; j < t.dim; ++j)
			r.set(i, j, t.at(i, j).eps.empty() ? proto : t.at(i, j).eps[0]);
	return r;
}

} // namespace

LinCheckResult lin_check(const Metric<Jet> &g0, const SymT2<Jet> &r, const Couplings &c,
                         LinKind kind, int q)
{
	int m = g0.dim;
	int n = m - 1;
	if (c.n != n)
		throw DimensionError("lin_check: couplings dimension must be dim - 1");
	require_hyperbolic(g0);
	Scalar::Mode md = smode(g0.proto);
	Rational lam = lambda2q(n, q);

	// left side: nilpotent probe of the named map
	Metric<DJ> gd = dual_metric(g0, r);
	SymT2<DJ> gdsym = SymT2<DJ>::from_mat(gd.g, gd.proto);
	SymT2<Jet> lhs(m, g0.proto);
	switch (kind) {
	case LinKind::Ric: {
		LovelockFamily<DJ> fam = lovelock_family(gd, q);
		SymT2<DJ> map = sub(fam.ric2q, scale(gdsym, make_scalar(lam, md)));
		lhs = eps_part(map, g0.proto);
		break;
	}
	case LinKind::Scal: {
		LovelockFamily<DJ> fam = lovelock_family(gd, q);
		DJ sc = add(fam.scal2q, scale(one_like(gd.proto), make_scalar(-lam * (n + 1), md)));
		lhs = eps_part(scale_el(gdsym, sc), g0.proto);
		break;
	}
	case LinKind::Einstein: {
		LovelockFamily<DJ> fam = lovelock_family(gd, q);
		Rational f = lam * (1 - Rational(n + 1, 2 * q));
		SymT2<DJ> map = sub(fam.e2q, scale(gdsym, make_scalar(f, md)));
		lhs = eps_part(map, g0.proto);
		break;
	}
	case LinKind::QPure:
	case LinKind::QMixed: {
		Metric<DJ> td = dual_metric(g0, SymT2<Jet>(m, g0.proto)); // t fixed at g0
		GaugePair<DJ> gp = gauge_pair(gd, td, c);
		lhs = eps_part(gp.Q, g0.proto);
		break;
	}
	}

	// right side: the displayed formulas assembled from the operator layer
	Christoffel<Jet> ch = christoffel(g0);
	DForm<Jet> R0 = riemann(g0, ch);
	SymT2<Jet> gsym = SymT2<Jet>::from_mat(g0.g, g0.proto);
	Jet trr = trace_of(g0, r);
	SymT2<Jet> g2r = gravitation(g0, 1, r);
	OneForm<Jet> div_g2r = divergence(g0, ch, g2r);
	Jet dd_g2r = divergence(g0, ch, div_g2r);            // delta delta G^2 r
	SymT2<Jet> dsd_g2r = div_star(g0, ch, div_g2r);      // delta* delta G^2 r
	Jet lap_tr = laplacian(g0, ch, trr);
	SymT2<Jet> lap_r = laplacian(g0, ch, r);

	SymT2<Jet> rhs(m, g0.proto);
	auto S_of = [&](const Rational &v) { return make_scalar(v, md); };

	switch (kind) {
	case LinKind::Ric: {
		Jet scal_part = jet_scale(trr, S_of(Rational(2 * q - n * q - 1)));
		Jet inner = jet_add(jet_scale(lap_tr, S_of(Rational(1, 2))), dd_g2r);
		scal_part = jet_sub(scal_part, jet_scale(inner, S_of(Rational(q - 1))));
		SymT2<Jet> tens = sub(sub(scale(lap_r, S_of(Rational(1, 2))), dsd_g2r), r);
		rhs = scale_el(gsym, scal_part);
		rhs = sub(rhs, scale(tens, S_of(Rational(n - 2 * q + 1))));
		rhs = scale(rhs, S_of(lam / (n * (n - 1))));
		break;
	}
	case LinKind::Scal: {
		Jet inner = jet_scale(trr, S_of(Rational(n)));
		inner = jet_add(inner, jet_scale(lap_tr, S_of(Rational(1, 2))));
		inner = jet_add(inner, dd_g2r);
		rhs = scale_el(gsym, jet_scale(inner, S_of(-lam * q / n)));
		break;
	}
	case LinKind::Einstein: {
		Jet inner = jet_add(jet_scale(lap_tr, S_of(Rational(1, 2))), dd_g2r);
		inner = jet_add(inner, jet_scale(trr, S_of(Rational(n - 2))));
		rhs = scale_el(gsym, jet_scale(inner, S_of(Rational(1, 2))));
		SymT2<Jet> tens = sub(sub(scale(lap_r, S_of(Rational(1, 2))), dsd_g2r), r);
		rhs = sub(rhs, tens);
		rhs = scale(rhs, S_of(lam * (n - 2 * q + 1) / (n * (n - 1))));
		break;
	}
	case LinKind::QPure:
	case LinKind::QMixed: {
		SplitTrace st = split_trace(g0, r);
		SymT2<Jet> ug = scale_el(gsym, st.u);
		SymT2<Jet> pencil_u = add(laplacian(g0, ch, ug), scale(ug, S_of(Rational(2 * n))));
		SymT2<Jet> pencil_r0 =
		    add(laplacian(g0, ch, st.r0), scale(st.r0, S_of(Rational(-2))));
		if (kind == LinKind::QMixed) {
			if (!c.lovelock_beta)
				throw RegimeError("lin_check: the mixed display needs Lovelock beta");
			Rational A1 = coeff_A(1, c.alpha, n, Rational(1));
			rhs = add(scale(pencil_u, S_of(-A1 * (n - 1) / 4)),
			          scale(pencil_r0, S_of(A1 / 2)));
		} else {
			for (int qq = 1; qq <= c.qmax(); ++qq) {
				Rational lamq = lambda2q(n, qq);
				Rational aq = c.alpha[size_t(qq - 1)];
				Rational bq = c.beta[size_t(qq - 1)];
				Rational w = -lamq / (2 * n * (n - 1));
				Rational cu = w * qq * (n - 1) * (aq + (n + 1) * bq);
				Rational cr = w * (n - 2 * qq + 1) * aq;
				if (sgn(cu) != 0)
					rhs = add(rhs, scale(pencil_u, S_of(cu)));
				if (sgn(cr) != 0)
					rhs = add(rhs, scale(pencil_r0, S_of(cr)));
			}
		}
		break;
	}
	}

	LinCheckResult out;
	out.lhs = lhs;
	out.rhs = rhs;
	out.ok = true;
	for (int i = 0; i < m && out.ok; ++i)
		for (int j = i; j < m && out.ok; ++j)
			if (!jet_near(lhs.at(i, j), rhs.at(i, j)))
				out.ok = false;
	return out;
}

// --------------------------------------------------------------------------

namespace {

BlockReport block_report(const char *name, const std::vector<const XSer<Jet> *> &parts,
                         int offset)
{
	BlockReport br;
	br.name = name;
	br.offset = offset;
	int trunc = kDegInf;
	for (auto *p : parts)
		trunc = deg_min(trunc, p->trunc);
	br.trunc = trunc;
	Rational lead_abs = 0;
	br.first_nonzero = -1;
	br.verified_through = -1;
	for (int s = 0; s <= trunc && s < kDegInf; ++s) {
		bool usable = true, nonzero = false;
		for (auto *p : parts) {
			const Jet &cj = p->coeff(s);
			if (reldeg(cj) < 0)
				usable = false;
			if (!cj.is_zero())
				nonzero = true;
		}
		if (!usable)
			break;
		br.verified_through = s;
		if (nonzero && br.first_nonzero < 0) {
			br.first_nonzero = s;
			for (auto *p : parts)
				for (const auto &[mo, cc] : p->coeff(s).terms)
					if (cc.exact_mode() && abs(cc.rat()) > lead_abs)
						lead_abs = abs(cc.rat());
		}
	}
	br.leading_abs = br.first_nonzero < 0 ? std::string("0") : Rational(lead_abs).get_str();
	return br;
}

} // namespace

ResidualReport residual_report(const Expansion &e)
{
	ProductMetric<Jet> pm = e.metric();
	ResidualBlocks<Jet> F = residual_F(pm, e.couplings);
	ResidualReport rep;
	rep.n = e.n;
	rep.trunc = e.trunc;
	rep.log_present = e.log_present;
	rep.dxdx = block_report("dxdx", {&F.dxdx}, F.offset);
	std::vector<const XSer<Jet> *> mixed;
	for (const auto &s : F.mixed)
		mixed.push_back(&s);
	rep.mixed = block_report("mixed", mixed, F.offset);
	std::vector<const XSer<Jet> *> tang;
	for (const auto &s : F.tangential.v)
		tang.push_back(&s);
	rep.tangential = block_report("tangential", tang, F.offset);
	return rep;
}

} // namespace lovelock
