#include "lovelock/presets.hpp"
#include "lovelock/verify.hpp"

#include <doctest.h>

using namespace lovelock;
namespace pre = lovelock::presets;

namespace {

Couplings quad_family(int n, const Rational &a)
{
	std::vector<Rational> alpha(size_t((n + 1) / 2), Rational(0));
	alpha[0] = Rational(6 * (n - 2) * (n - 3)) * a;
	alpha[1] = 1;
	return Couplings::make_lovelock(n, alpha);
}

} // namespace

TEST_CASE("expansion of the flat boundary is trivial")
{
	int n = 3;
	Metric<Jet> h0 = pre::flat(n);
	Expansion e = expand(h0, Couplings::einstein(n), Scalar::exact(1), 5);
	for (int k = 1; k <= 5; ++k)
		CHECK(is_zero(e.coeffs[size_t(k)]));

	// flat solves for any admissible kappa of any couplings
	Couplings quad = quad_family(5, Rational(2));
	Expansion e2 = expand(pre::flat(5), quad, Scalar::exact(3), 4);
	for (int k = 1; k <= 4; ++k)
		CHECK(is_zero(e2.coeffs[size_t(k)]));
}

TEST_CASE("expansion gates: kappa admissibility, A1, degree budget")
{
	int n = 3;
	Metric<Jet> h0 = pre::flat(n);
	// kappa = 2 does not solve the Einstein kappa polynomial
	CHECK_THROWS_AS(expand(h0, Couplings::einstein(n), Scalar::exact(2), 3), RegimeError);
	// kappa root with A_1 = 0: quadratic family at a = 1 has kappa = 1 degenerate
	Couplings bad = quad_family(5, Rational(1));
	CHECK_THROWS_AS(expand(pre::flat(5), bad, Scalar::exact(1), 3), RegimeError);
	// insufficient jet degree is rejected with the required bound
	Metric<Jet> shallow = pre::random_metric(3, 4, 3);
	CHECK_THROWS_WITH_AS(expand(shallow, Couplings::make_lovelock(4, {Rational(1), Rational(0)}), Scalar::exact(1), 4),
	                     doctest::Contains("need >= 4"), DegreeError);
}

TEST_CASE("hyperbolic ball expansion: exact coefficients of (1-x^2/4)^2 h0")
{
	int n = 5, N = 6;
	Metric<Jet> h0 = pre::round_sphere(n, N + 2);
	Expansion e = expand(h0, Couplings::einstein(n), Scalar::exact(1), N);
	SymT2<Jet> h0s = SymT2<Jet>::from_mat(h0.g, h0.proto);
	CHECK(ring_eq(e.coeffs[2], scale(h0s, Scalar(-1, 2))));
	CHECK(ring_eq(e.coeffs[4], scale(h0s, Scalar(1, 16))));
	CHECK(is_zero(e.coeffs[1]));
	CHECK(is_zero(e.coeffs[3]));
	CHECK(is_zero(e.coeffs[5]));
	CHECK(is_zero(e.coeffs[6]));

	ResidualReport rep = residual_report(e);
	CHECK(rep.dxdx.first_nonzero == -1);
	CHECK(rep.mixed.first_nonzero == -1);
	CHECK(rep.tangential.first_nonzero == -1);
}

TEST_CASE("h2 is the Schouten multiple and h2/h4 equal the closed forms")
{
	for (int n : {5, 6}) {
		Metric<Jet> h0 = pre::random_metric(17 + uint64_t(n), n, 4);
		Couplings quad = quad_family(n, Rational(2));
		std::vector<std::pair<Couplings, Scalar>> battery = {
		    {Couplings::einstein(n), Scalar::exact(1)},
		    {quad, Scalar::exact(3)},
		};
		for (auto &[c, kap] : battery) {
			Expansion e = expand(h0, c, kap, 4);
			ClosedForms cf = closed_forms(h0, c, kap);
			CHECK(ring_eq(e.coeffs[2], cf.h2));
			CHECK(ring_eq(e.coeffs[4], cf.h4));
			CHECK(is_zero(e.coeffs[1]));
			CHECK(is_zero(e.coeffs[3]));
			// h2 = -P(h0)/kappa and its printed trace
			SchoutenWeyl<Jet> sw = schouten_weyl(h0);
			CHECK(ring_eq(cf.h2, scale(sw.P, -kap.inv())));
			DForm<Jet> R = riemann(h0);
			Jet c2r = full_contract(h0, contract(h0, R));
			Jet want = jet_scale(c2r, Scalar(Rational(-1, 2 * (n - 1))) * kap.inv());
			CHECK(jet_eq(trace_of(h0, cf.h2), want));
		}
	}
	CHECK_THROWS_AS(closed_forms(pre::random_metric(1, 4, 4),
	                             Couplings::make_lovelock(4, {Rational(1), Rational(0)}),
	                             Scalar::exact(1)),
	                RegimeError);
}

TEST_CASE("probe certificates equal the closed-form solve coefficients")
{
	// the probe-built linear map at step m has constants m*(a, b, c) with
	//   a = ((2-m) A1 + 2(n-m+1) B12)/2
	//   b = kappa (n-m) A1 / 2
	//   c = kappa (A1 + 2(n-m+1) B12) / 2
	for (int n : {4, 5}) {
		Metric<Jet> h0 = pre::random_metric(51 + uint64_t(n), n, 5);
		Couplings c = n == 4 ? Couplings::make_lovelock(4, {Rational(1), Rational(1, 3)})
		                     : quad_family(5, Rational(2));
		Rational kap = n == 5 ? Rational(3) : Rational(1);
		Expansion e = expand(h0, c, Scalar(kap), std::min(n, 5));
		Rational A1 = coeff_A(1, c.alpha, n, kap);
		Rational B12 = coeff_B(1, 2, c, kap);
		for (const SolveCert &sc : e.certs) {
			int m = sc.order;
			Rational a = Rational(m) * (Rational(2 - m) * A1 + Rational(2 * (n - m + 1)) * B12) / 2;
			Rational b = Rational(m) * kap * Rational(n - m) * A1 / 2;
			Rational cc = Rational(m) * kap * (A1 + Rational(2 * (n - m + 1)) * B12) / 2;
			CHECK(sc.a == a);
			CHECK(sc.b == b);
			CHECK(sc.c == cc);
		}
	}
}

TEST_CASE("odd n structure: free trace-free data at order n")
{
	int n = 5, N = 7;
	Metric<Jet> h0 = pre::random_metric(61, n, N);
	Couplings lov = Couplings::make_lovelock(n, {Rational(1), Rational(0), Rational(0)});

	// default hn_tf = 0: everything below n even, order-n trace forced zero
	Expansion e = expand(h0, lov, Scalar::exact(1), N);
	CHECK(is_zero(e.coeffs[1]));
	CHECK(is_zero(e.coeffs[3]));
	CHECK(e.trace_hn.is_zero());
	CHECK(is_zero(e.coeffs[5]));

	// with hn_tf = 0 all blocks vanish through the truncation
	ResidualReport rep = residual_report(e);
	CHECK(rep.dxdx.first_nonzero == -1);
	CHECK(rep.tangential.first_nonzero == -1);
	CHECK(rep.mixed.first_nonzero == -1);

	CHECK(e.dxdx_defect_from == -1);

	// perturbing the free data changes h7 but not the coefficients below 5;
	// generic trace-free data fails the divergence constraint of honest
	// solutions, which surfaces as a recorded dx x dx defect past order n
	SymT2<Jet> seed_tf = pre::random_sym2(62, n, N);
	SymT2<Jet> tf = split_trace(h0, seed_tf).r0;
	Expansion e2 = expand(h0, lov, Scalar::exact(1), N, tf);
	CHECK(ring_eq(e2.coeffs[5], tf));
	for (int k = 1; k < 5; ++k)
		CHECK(ring_eq(e2.coeffs[size_t(k)], e.coeffs[size_t(k)]));
	CHECK(!ring_eq(e2.coeffs[7], e.coeffs[7]));

	// non-trace-free data is rejected
	CHECK_THROWS_AS(expand(h0, lov, Scalar::exact(1), N, pre::random_sym2(63, n, N)),
	                RegimeError);
}

TEST_CASE("even n structure: obstruction at order n")
{
	int n = 4;
	Couplings lov = Couplings::make_lovelock(n, {Rational(1), Rational(0)});

	// conformally flat boundary: obstruction vanishes (Einstein couplings)
	Metric<Jet> cf = pre::conformally_flat(n, 6, pre::random_phi(9, n, 6, 3));
	ObstructionResult ob0 = obstruction(cf, lov, Scalar::exact(1));
	CHECK(is_zero(ob0.tensor));
	CHECK(!ob0.expansion.log_present);

	// random boundary: nonzero, trace-free, divergence-free (the log-free
	// representative has vanishing B coefficient)
	Metric<Jet> h0 = pre::random_metric(23, n, 5);
	ObstructionResult ob = obstruction(h0, lov, Scalar::exact(1));
	CHECK(!is_zero(ob.tensor));
	CHECK(trace_of(h0, ob.tensor).is_zero());
	CHECK(is_zero(ob.div_h0));
	CHECK(ob.expansion.log_present);

	// independent product-gauge path for the divergence of the obstruction
	ProductMetric<Jet> pm = ob.expansion.metric(n);
	ResidualBlocks<Jet> F = residual_F(pm, lov);
	Christoffel<XSer<Jet>> ch = christoffel(pm.h);
	OneForm<XSer<Jet>> divS = divergence(pm.h, ch, F.tangential);
	for (int l = 0; l < n; ++l)
		CHECK(jet_eq(divS.at(l).coeff(n), ob.div_h0.at(l)));

	// a nonzero obstruction blocks continuation past order n
	Metric<Jet> h0b = pre::random_metric(23, n, 6);
	CHECK_THROWS_AS(expand(h0b, lov, Scalar::exact(1), n + 2), RegimeError);
	// ... while a vanishing obstruction continues smoothly
	Expansion cont = expand(cf, lov, Scalar::exact(1), n + 2);
	CHECK(cont.trunc == n + 2);

	CHECK_THROWS_AS(obstruction(pre::random_metric(1, 5, 5),
	                            Couplings::make_lovelock(5, {Rational(1), Rational(0), Rational(0)}),
	                            Scalar::exact(1)),
	                RegimeError);
	CHECK_THROWS_AS(obstruction(h0, Couplings::einstein(4), Scalar::exact(1)), RegimeError);
}

TEST_CASE("negative control: corrupting h2 breaks the residual at its order")
{
	int n = 4;
	Metric<Jet> h0 = pre::random_metric(71, n, 4);
	Expansion e = expand(h0, Couplings::make_lovelock(n, {Rational(1), Rational(0)}),
	                     Scalar::exact(1), 3);
	ResidualReport clean = residual_report(e);
	CHECK(clean.dxdx.first_nonzero == -1);
	CHECK(clean.tangential.first_nonzero == -1);

	Expansion bad = e;
	bad.coeffs[2] = add(bad.coeffs[2], scale(bad.coeffs[0], Scalar(1, 7)));
	ResidualReport rep = residual_report(bad);
	CHECK(rep.dxdx.first_nonzero == 2);
	CHECK(rep.tangential.first_nonzero == 2);
}
