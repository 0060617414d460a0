#include "lovelock/fg_expansion.hpp"

#include "lovelock/curvature.hpp"

namespace lovelock {

namespace {

struct SolverError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

using DJ = Dual<Jet>;

/// lift the known coefficients into the dual ring and insert the two probe
/// directions eps_0 B0, eps_1 B1 at series position pos
ProductMetric<DJ> probe_metric(const std::vector<SymT2<Jet>> &hc, int upto, int pos,
                               const SymT2<Jet> &B0, const SymT2<Jet> &B1, int n,
                               const Scalar &kappa)
{
	DJ dproto = DJ::lift(B0.proto, 2);
	std::vector<SymT2<DJ>> dc;
	for (int k = 0; k <= upto; ++k) {
		SymT2<DJ> layer(n, dproto);
		for (int i = 0; i < n; ++i)
			for (int j = i; j < n; ++j) {
				Jet a = (k < int(hc.size()) && k < pos) ? hc[size_t(k)].at(i, j) : B0.proto;
				Jet e0 = k == pos ? B0.at(i, j) : B0.proto;
				Jet e1 = k == pos ? B1.at(i, j) : B0.proto;
				layer.set(i, j, DJ(std::move(a), {std::move(e0), std::move(e1)}));
			}
		dc.push_back(std::move(layer));
	}
	return ProductMetric<DJ>::make(n, kappa, upto, dc);
}

Scalar constant_of(const Jet &j, const char *what)
{
	if (j.mode == Scalar::Mode::Exact) {
		if (!j.is_constant())
			throw SolverError(std::string(what) +
			                  ": probe response is not pointwise-constant");
	} else {
		for (const auto &[m, c] : j.terms)
			if (m != mono_one() && !c.near(Scalar::flt(0.0)))
				throw SolverError(std::string(what) +
				                  ": probe response is not pointwise-constant");
	}
	return j.constant_term();
}

bool jet_vanishes(const Jet &a)
{
	if (a.mode == Scalar::Mode::Exact)
		return a.is_zero();
	return jet_near(a, a.zero_like());
}

bool sym_vanishes(const SymT2<Jet> &t)
{
	for (const auto &v : t.v)
		if (!jet_vanishes(v))
			return false;
	return true;
}

SymT2<Jet> tracefree_part(const Metric<Jet> &h0, const SymT2<Jet> &t)
{
	Jet tr = trace_of(h0, t);
	SymT2<Jet> gs = SymT2<Jet>::from_mat(h0.g, h0.proto);
	return sub(t, scale_el(gs, jet_scale(tr, make_scalar(Rational(1, h0.dim), t.proto.mode))));
}

} // namespace

ProductMetric<Jet> Expansion::metric() const { return metric(trunc); }

ProductMetric<Jet> Expansion::metric(int trunc_override) const
{
	return ProductMetric<Jet>::make(n, kappa, trunc_override, coeffs);
}

int required_boundary_degree(int N) { return std::max(2, N); }

Expansion expand(const Metric<Jet> &h0, const Couplings &c, const Scalar &kappa, int N,
                 std::optional<SymT2<Jet>> hn_tf)
{
	int n = c.n;
	if (h0.dim != n)
		throw DimensionError("expand: boundary metric dimension does not match couplings");
	int d = metric_reldeg(h0);
	if (d < required_boundary_degree(N))
		throw DegreeError("expand: boundary jet degree " + std::to_string(d) +
		                  " insufficient for order-" + std::to_string(N) +
		                  " expansion; need >= " +
		                  std::to_string(required_boundary_degree(N)));

	Scalar::Mode md = smode(h0.proto);
	if ((md == Scalar::Mode::Exact) != kappa.exact_mode())
		throw ModeError("expand: kappa and boundary metric disagree on exact/float mode");
	if (kappa.exact_mode()) {
		if (sgn(kappa_polynomial(c).eval(kappa.rat())) != 0)
			throw RegimeError("expand: kappa is not a limiting curvature (kappa polynomial "
			                  "does not vanish)");
	}
	Scalar A1 = coeff_A_scalar(1, c.alpha, n, kappa);
	if (A1.is_zero())
		throw RegimeError("expand: A_1(alpha, kappa) = 0; expansion coefficients are not "
		                  "determined in this regime");
	if (hn_tf && n % 2 == 0)
		throw RegimeError("expand: free trace-free data exists only for odd n");

	SymT2<Jet> gsym = SymT2<Jet>::from_mat(h0.g, h0.proto);
	// trace-free probe direction: a diagonal elementary tensor minus its
	// trace part, picked so the response can be read off a unit component
	SymT2<Jet> btf(n, h0.proto);
	int lead_idx = -1;
	for (int r = 0; r < n && lead_idx < 0; ++r) {
		SymT2<Jet> err(n, h0.proto);
		err.set(r, r, Jet::constant(n, Scalar::one(md)));
		SymT2<Jet> cand = tracefree_part(h0, err);
		if (is_unit(cand.at(r, r))) {
			btf = cand;
			lead_idx = r;
		}
	}
	if (lead_idx < 0)
		throw SolverError("expand: no usable trace-free probe direction");

	Expansion out;
	out.n = n;
	out.kappa = kappa;
	out.couplings = c;
	out.trunc = N;
	out.coeffs.assign(size_t(N) + 1, SymT2<Jet>(n, h0.proto));
	out.coeffs[0] = gsym;
	out.trace_hn = h0.proto;
	out.hn_free = SymT2<Jet>(n, h0.proto);

	Scalar n_s = make_scalar(Rational(n), md);

	for (int m = 1; m <= N; ++m) {
		ProductMetric<DJ> pm = probe_metric(out.coeffs, m, m, gsym, btf, n, kappa);
		ResidualBlocks<DJ> F = residual_F(pm, c);

		// the residual of the truncated series must already vanish below the
		// solve order
		for (int s = 0; s < m; ++s) {
			bool ok = jet_vanishes(F.dxdx.coeff(s).a);
			for (int i = 0; ok && i < n; ++i)
				for (int j = i; ok && j < n; ++j)
					ok = jet_vanishes(F.tangential.at(i, j).coeff(s).a);
			if (!ok)
				throw SolverError("expand: residual order " + std::to_string(s) +
				                  " nonzero entering step " + std::to_string(m));
		}

		Jet Kd = F.dxdx.coeff(m).a;
		SymT2<Jet> Kt(n, h0.proto);
		for (int i = 0; i < n; ++i)
			for (int j = i; j < n; ++j)
				Kt.set(i, j, F.tangential.at(i, j).coeff(m).a);

		// probe responses: slot 0 carries B = h0, slot 1 the trace-free
		// direction. Their shape certifies the pointwise linear solve
		// a C(U) (dx x dx slot) and b U + c h0 C(U) (tangential slot).
		Jet resp_d0 = F.dxdx.coeff(m).eps[0];
		Jet resp_d1 = F.dxdx.coeff(m).eps[1];
		SymT2<Jet> resp_t0(n, h0.proto), resp_t1(n, h0.proto);
		for (int i = 0; i < n; ++i)
			for (int j = i; j < n; ++j) {
				resp_t0.set(i, j, F.tangential.at(i, j).coeff(m).eps[0]);
				resp_t1.set(i, j, F.tangential.at(i, j).coeff(m).eps[1]);
			}

		if (!jet_vanishes(resp_d1))
			throw SolverError("expand: trace-free probe leaks into the dx x dx trace "
			                  "equation at step " + std::to_string(m));
		Scalar a_hat = constant_of(resp_d0, "expand: dxdx response") * n_s.inv();
		Scalar b_hat;
		{
			Jet lead = btf.at(lead_idx, lead_idx);
			Jet ratio = jet_mul(resp_t1.at(lead_idx, lead_idx), jet_invert(lead));
			b_hat = constant_of(jet_truncate(ratio, 0), "expand: trace-free response");
			SymT2<Jet> predicted = scale(btf, b_hat);
			for (int i = 0; i < n; ++i)
				for (int j = i; j < n; ++j)
					if (!jet_near(resp_t1.at(i, j), predicted.at(i, j)))
						throw SolverError("expand: trace-free probe response is not "
						                  "proportional to the direction at step " +
						                  std::to_string(m));
		}
		Scalar mu; // b + c n
		{
			Jet trj = jet_scale(trace_of(h0, resp_t0), n_s.inv());
			mu = constant_of(jet_truncate(trj, 0), "expand: trace response");
			SymT2<Jet> predicted = scale(gsym, mu);
			for (int i = 0; i < n; ++i)
				for (int j = i; j < n; ++j)
					if (!jet_near(resp_t0.at(i, j), predicted.at(i, j)))
						throw SolverError("expand: trace probe response is not proportional "
						                  "to h0 at step " + std::to_string(m));
		}
		Scalar c_hat = (mu - b_hat) * n_s.inv();
		if (md == Scalar::Mode::Exact)
			out.certs.push_back({m, a_hat.rat(), b_hat.rat(), c_hat.rat()});

		Jet trKt = trace_of(h0, Kt);

		if (m == n && n % 2 == 1) {
			// parity forces the entire order-n inhomogeneity to vanish; the
			// trace of h_n is zero and its trace-free part is free data
			if (!jet_vanishes(Kd) || !sym_vanishes(Kt))
				throw SolverError("expand: odd-order inhomogeneity at the free order n");
			SymT2<Jet> freepart = hn_tf ? *hn_tf : SymT2<Jet>(n, h0.proto);
			if (!jet_vanishes(trace_of(h0, freepart)))
				throw RegimeError("expand: supplied order-n data is not trace-free");
			out.coeffs[size_t(m)] = freepart;
			out.hn_free = freepart;
			out.trace_hn = h0.proto;
			continue;
		}

		// trace first: a C(U) = -Kd and (b + cn) C(U) = -C(Kt). Through order
		// n both must be satisfiable simultaneously; past n the tangential
		// tensor equation takes precedence and a leftover in the dx(x)dx
		// slot is recorded (generic order-n data violates the divergence
		// constraint that honest solutions satisfy).
		Scalar bc = b_hat + c_hat * n_s;
		Jet T;
		bool prefer_a = m <= n;
		if (prefer_a && !a_hat.is_zero())
			T = jet_scale(jet_neg(Kd), a_hat.inv());
		else if (!bc.is_zero())
			T = jet_scale(jet_neg(trKt), bc.inv());
		else if (!a_hat.is_zero())
			T = jet_scale(jet_neg(Kd), a_hat.inv());
		else
			throw SolverError("expand: both trace equations degenerate at step " +
			                  std::to_string(m));
		bool consistent = jet_near(jet_scale(T, a_hat), jet_neg(Kd)) &&
		                  jet_near(jet_scale(T, bc), jet_neg(trKt));
		if (!consistent) {
			if (m <= n)
				throw SolverError("expand: trace equations inconsistent at step " +
				                  std::to_string(m) + " (convention or order bug)");
			if (out.dxdx_defect_from < 0)
				out.dxdx_defect_from = m;
			// keep the tangential-trace solution
			T = jet_scale(jet_neg(trKt), bc.inv());
		}

		if (m == n) { // n even: trace determined, trace-free part set to zero
			out.coeffs[size_t(m)] = scale_el(gsym, jet_scale(T, n_s.inv()));
			out.trace_hn = T;
			// the trace-free tangential residual at order n is the
			// obstruction (log coefficient suppressed by construction)
			ProductMetric<Jet> pmj = out.metric(n);
			ResidualBlocks<Jet> Fj = residual_F(pmj, c);
			if (!jet_vanishes(Fj.dxdx.coeff(n)))
				throw SolverError("expand: dx x dx residual survives the order-n trace solve");
			SymT2<Jet> tn(n, h0.proto);
			for (int i = 0; i < n; ++i)
				for (int j = i; j < n; ++j)
					tn.set(i, j, Fj.tangential.at(i, j).coeff(n));
			if (!jet_vanishes(trace_of(h0, tn)))
				throw SolverError("expand: tangential trace survives the order-n solve");
			out.obstruction = tn;
			Christoffel<Jet> ch = christoffel(h0);
			out.obstruction_div = divergence(h0, ch, tn);
			out.log_present = !sym_vanishes(tn);
			if (out.log_present && N > n)
				throw RegimeError("expand: nonzero obstruction at order n; the smooth "
				                  "expansion does not extend past order " + std::to_string(n));
			continue;
		}

		if (b_hat.is_zero())
			throw SolverError("expand: linear solve singular at step " + std::to_string(m) +
			                  " != n (convention or order bug)");
		// U = (-Kt - c h0 T) / b
		SymT2<Jet> rhs = neg(Kt);
		rhs = sub(rhs, scale_el(gsym, jet_scale(T, c_hat)));
		out.coeffs[size_t(m)] = scale(rhs, b_hat.inv());
	}

	return out;
}

SymT2<Jet> closed_form_h2(const Metric<Jet> &h0, const Scalar &kappa)
{
	SchoutenWeyl<Jet> sw = schouten_weyl(h0);
	return scale(sw.P, -kappa.inv());
}

ClosedForms closed_forms(const Metric<Jet> &h0, const Couplings &c, const Scalar &kappa)
{
	int n = c.n;
	if (n == 4)
		throw RegimeError("closed_forms: order 4 is the obstruction order when n = 4; "
		                  "use the recursion");
	if (n < 5)
		throw RegimeError("closed_forms: h4 needs n >= 5");
	if (h0.dim != n)
		throw DimensionError("closed_forms: dimension mismatch");

	Scalar::Mode md = smode(h0.proto);
	Scalar A1 = coeff_A_scalar(1, c.alpha, n, kappa);
	Scalar A3 = coeff_A_scalar(3, c.alpha, n, kappa);
	Scalar B12 = coeff_B_scalar(1, 2, c, kappa);
	Scalar B34 = coeff_B_scalar(3, 4, c, kappa);
	if (A1.is_zero())
		throw RegimeError("closed_forms: A_1(alpha, kappa) = 0");

	DForm<Jet> R = riemann(h0);
	SchoutenWeyl<Jet> sw = schouten_weyl(h0, R);
	SymT2<Jet> h2 = scale(sw.P, -kappa.inv());
	SymT2<Jet> gsym = SymT2<Jet>::from_mat(h0.g, h0.proto);

	DForm<Jet> h2f = h2.form();
	DForm<Jet> h2sq = kn_product(h2f, h2f);
	SymT2<Jet> c_h2sq = SymT2<Jet>::from_form(contract(h0, h2sq));   // C(h2^2)
	Jet c2_h2sq = full_contract(h0, contract(h0, h2sq));             // C^2(h2^2)
	Jet tr_h2 = trace_of(h0, h2);                                    // C(h2)
	Jet tr_h2_sq = jet_mul(tr_h2, tr_h2);                            // C(h2)^2
	DForm<Jet> W2 = kn_product(sw.W, sw.W);
	SymT2<Jet> c3_W2 = SymT2<Jet>::from_form(contract_p(h0, W2, 3)); // C^3(W^2)
	Jet c4_W2 = full_contract(h0, contract_p(h0, W2, 3));            // C^4(W^2)

	RicDot<Jet> dot = ric_dot(h0, h2); // first variation in the direction h2
	Jet c_dric = trace_of(h0, dot.dric);

	Scalar ik = kappa.inv();
	auto S_of = [&](const Rational &r) { return make_scalar(r, md); };

	// trace part of the pair determined by the contracted order-rho
	// equations (this is C of twice h4, matching the derivative bookkeeping
	// of the rho-coordinate displays)
	Jet S = jet_scale(c2_h2sq, S_of(Rational(-1, 4)));
	S = jet_add(S, jet_scale(tr_h2_sq, S_of(Rational(1, 2))));
	S = jet_add(S, jet_scale(c_dric, S_of(Rational(-1, 4 * (n - 1))) * ik));
	S = jet_add(S, jet_scale(c4_W2, S_of(Rational(-1, 4 * (n - 1))) * A3 * A1.inv() * ik));

	SymT2<Jet> G(n, h0.proto);
	{
		SymT2<Jet> inner =
		    scale_el(gsym, jet_scale(c_dric, S_of(Rational(-1, 4 * (n - 1))) * ik));
		inner = add(inner, scale_el(gsym, jet_add(jet_scale(c2_h2sq, S_of(Rational(1, 4))),
		                                          jet_scale(tr_h2_sq, S_of(Rational(-1, 2))))));
		inner = sub(inner, c_h2sq);
		inner = add(inner, scale_el(h2, jet_scale(tr_h2, S_of(Rational(2)))));
		inner = add(inner, scale(dot.dric, ik));
		G = scale(inner, S_of(Rational(-1, n - 4)));
	}
	{
		Jet inner = jet_scale(c2_h2sq, S_of(Rational(2 * n - 5, 2)));
		inner = jet_add(inner, jet_scale(tr_h2_sq, S_of(Rational(-2 * (n - 2)))));
		inner = jet_add(inner, jet_scale(dot.dscal, ik));
		G = add(G, scale_el(gsym, jet_scale(inner, S_of(Rational(-1, n - 4)) * B12 * A1.inv())));
	}
	G = add(G, scale_el(gsym, jet_scale(S, S_of(Rational(-2 * (n - 3), n - 4)) * B12 * A1.inv())));
	{
		SymT2<Jet> t = scale(c3_W2, S_of(Rational(4 * (n - 1))) * A3);
		t = add(t, scale_el(gsym, jet_scale(c4_W2, S_of(Rational(4 * (n - 1))) * B34 - A3)));
		G = add(G, scale(t, S_of(Rational(-1, 4 * (n - 1) * (n - 4))) * A1.inv() * ik));
	}

	// the assembled display evaluates the rho-derivative pair (2 h4, 2 C(h4))
	SymT2<Jet> h4 = scale(G, S_of(Rational(1, 2)));
	return {std::move(h2), std::move(h4)};
}

ObstructionResult obstruction(const Metric<Jet> &h0, const Couplings &c, const Scalar &kappa)
{
	if (c.n % 2 != 0)
		throw RegimeError("obstruction: defined for even n only");
	if (!c.lovelock_beta)
		throw RegimeError("obstruction: requires the Lovelock trace combination beta_q = "
		                  "-alpha_q/(2q)");
	Expansion e = expand(h0, c, kappa, c.n);
	return {*e.obstruction, *e.obstruction_div, std::move(e)};
}

} // namespace lovelock
