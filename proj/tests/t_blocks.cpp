#include "lovelock/presets.hpp"
#include "lovelock/verify.hpp"

#include <doctest.h>

using namespace lovelock;
namespace pre = lovelock::presets;

namespace {

/// h(x) = (1 - x^2/4)^2 h0 with h0 the round sphere of curvature kappa:
/// the exact hyperbolic model for every admissible kappa
std::vector<SymT2<Jet>> ball_series(int n, int deg, const Rational &kap, int N)
{
	Metric<Jet> h0 = pre::round_sphere(n, deg, kap);
	SymT2<Jet> h0s = SymT2<Jet>::from_mat(h0.g, h0.proto);
	std::vector<SymT2<Jet>> cs(size_t(N) + 1, SymT2<Jet>(n, h0.proto));
	cs[0] = h0s;
	if (N >= 2)
		cs[2] = scale(h0s, Scalar(-1, 2));
	if (N >= 4)
		cs[4] = scale(h0s, Scalar(1, 16));
	return cs;
}

ProductMetric<Jet> random_pm(uint64_t seed, int n, int N, int deg)
{
	Metric<Jet> h0 = pre::random_metric(seed, n, deg);
	std::vector<SymT2<Jet>> cs(size_t(N) + 1, SymT2<Jet>(n, h0.proto));
	cs[0] = SymT2<Jet>::from_mat(h0.g, h0.proto);
	for (int k = 1; k <= N; ++k)
		cs[size_t(k)] = pre::random_sym2(seed + 100 * uint64_t(k), n, deg);
	return ProductMetric<Jet>::make(n, Scalar::exact(1), N, cs);
}

bool residual_zero(const ResidualBlocks<Jet> &F)
{
	bool z = is_zero(F.dxdx);
	for (const auto &s : F.mixed)
		z = z && is_zero(s);
	for (const auto &s : F.tangential.v)
		z = z && is_zero(s);
	return z;
}

} // namespace

TEST_CASE("product blocks reproduce the flat and ball models")
{
	// flat: A = -h, T = -(kappa/2) h^2, Dhp = 0
	int n = 4;
	Metric<Jet> flat = pre::flat(n);
	SymT2<Jet> fs = SymT2<Jet>::from_mat(flat.g, flat.proto);
	ProductMetric<Jet> pm = ProductMetric<Jet>::make(n, Scalar(3, 2), 4, {fs});
	CurvatureBlocks<Jet> blk = product_curvature_blocks(pm);
	CHECK(is_zero(blk.Dhp));
	for (int i = 0; i < n; ++i) {
		CHECK(jet_eq(blk.A.at(tup_pack({i}), tup_pack({i})).coeff(0),
		             Jet::constant(n, Scalar::exact(-1))));
	}
	// T == -(kappa/2) h^2 as series forms
	DForm<XSer<Jet>> hser = sym2_series_form(pm, 0);
	DForm<XSer<Jet>> expectT = scale(kn_product(hser, hser), pm.kappa * Scalar(-1, 2));
	CHECK(ring_eq(blk.T, expectT));

	// hyperbolic ball: A == -h, T == -(kappa/2) h^2, Dhp == 0 as exact series
	for (Rational kap : {Rational(1), Rational(3)}) {
		int nn = 3;
		ProductMetric<Jet> ball =
		    ProductMetric<Jet>::make(nn, Scalar(kap), 5, ball_series(nn, 6, kap, 5));
		CurvatureBlocks<Jet> b = product_curvature_blocks(ball);
		CHECK(is_zero(b.Dhp));
		DForm<XSer<Jet>> hb = sym2_series_form(ball, 0);
		CHECK(ring_eq(b.A, neg(hb)));
		CHECK(ring_eq(b.T, scale(kn_product(hb, hb), Scalar(kap) * Scalar(-1, 2))));
	}
}

TEST_CASE("residual vanishes identically on exact hyperbolic models")
{
	// flat boundary solves every admissible (alpha, beta, kappa)
	{
		int n = 5;
		Metric<Jet> flat = pre::flat(n);
		SymT2<Jet> fs = SymT2<Jet>::from_mat(flat.g, flat.proto);
		ProductMetric<Jet> pm = ProductMetric<Jet>::make(n, Scalar::exact(1), 4, {fs});
		CHECK(residual_zero(residual_F(pm, Couplings::einstein(n))));
		// sign-alternating alpha
		Couplings alt = Couplings::make_lovelock(n, {Rational(2), Rational(-1), Rational(1, 3)});
		CHECK(residual_zero(residual_F(pm, alt)));
	}
	// hyperbolic ball with curvature-kappa sphere boundary, three coupling
	// vectors, kappa in the admissible set
	{
		int n = 4;
		std::vector<Rational> alpha(size_t((n + 1) / 2), Rational(0));
		alpha[0] = Rational(6 * (n - 2) * (n - 3)) * 2; // quadratic family, a = 2
		alpha[1] = 1;
		Couplings quad = Couplings::make_lovelock(n, alpha);
		Couplings alt = Couplings::make_lovelock(n, {Rational(3), Rational(-1, 2)});
		struct Case {
			Couplings c;
			Rational kap;
		};
		std::vector<Case> cases = {{Couplings::einstein(n), Rational(1)},
		                           {quad, Rational(1)},
		                           {quad, Rational(3)},
		                           {alt, Rational(1)}};
		for (auto &cs : cases) {
			ProductMetric<Jet> ball = ProductMetric<Jet>::make(
			    n, Scalar(cs.kap), 5, ball_series(n, 7, cs.kap, 5));
			CHECK(residual_zero(residual_F(ball, cs.c)));
		}
	}
}

TEST_CASE("residual leading order matches the most singular displayed term")
{
	// pm with h'(0) != 0: the order-1 coefficient of the dx x dx block is
	// (A_1 + 2n B_12) C(h_1)/2 and the tangential one
	// kappa((n-1) A_1 h_1 + (A_1 + 2n B_12) h_0 C(h_1))/2
	int n = 4;
	uint64_t seed = 77;
	Metric<Jet> h0m = pre::random_metric(seed, n, 3);
	SymT2<Jet> h0 = SymT2<Jet>::from_mat(h0m.g, h0m.proto);
	SymT2<Jet> h1 = pre::random_sym2(seed + 1, n, 3);
	ProductMetric<Jet> pm = ProductMetric<Jet>::make(n, Scalar::exact(1), 2, {h0, h1});
	Couplings c = Couplings::make_lovelock(n, {Rational(1), Rational(1, 5)});
	Rational A1 = coeff_A(1, c.alpha, n, Rational(1));
	Rational B12 = coeff_B(1, 2, c, Rational(1));
	ResidualBlocks<Jet> F = residual_F(pm, c);

	CHECK(F.dxdx.coeff(0).is_zero()); // kappa in the admissible set: no x^-2 term
	Jet trh1 = trace_of(h0m, h1);
	Jet want_d = jet_scale(trh1, Scalar((A1 + 2 * n * B12) / 2));
	CHECK(jet_eq(F.dxdx.coeff(1), want_d));
	SymT2<Jet> want_t = scale(h1, Scalar(Rational(n - 1, 2) * A1));
	want_t = add(want_t, scale_el(h0, jet_scale(trh1, Scalar((A1 + 2 * n * B12) / 2))));
	for (int i = 0; i < n; ++i)
		for (int j = i; j < n; ++j)
			CHECK(jet_eq(F.tangential.at(i, j).coeff(1), want_t.at(i, j)));
}

TEST_CASE("generic curvature cross-check at interior points")
{
	// flat model
	{
		int n = 3;
		SymT2<Jet> fs = SymT2<Jet>::from_mat(pre::flat(n).g, Jet::zero(n));
		ProductMetric<Jet> pm = ProductMetric<Jet>::make(n, Scalar::exact(1), 3, {fs});
		CHECK(generic_cross_check(pm, Rational(1, 2)).ok);
	}
	// hyperbolic ball at x0 = 1/3
	{
		int n = 3;
		ProductMetric<Jet> ball =
		    ProductMetric<Jet>::make(n, Scalar::exact(1), 5, ball_series(n, 6, Rational(1), 5));
		CHECK(generic_cross_check(ball, Rational(1, 3)).ok);
	}
	// random product metrics, n = 3, 4, 5
	for (int n = 3; n <= 5; ++n) {
		ProductMetric<Jet> pm = random_pm(400 + uint64_t(n), n, 3, 4);
		CrossCheckResult cc = generic_cross_check(pm, Rational(1, 2));
		CHECK(cc.dxdx_ok);
		CHECK(cc.mixed_ok);
		CHECK(cc.tangential_ok);
	}
	CHECK_THROWS_AS(generic_cross_check(random_pm(1, 3, 2, 3), Rational(0)), RegimeError);
}

TEST_CASE("divergence identity holds termwise on non-solutions")
{
	// the identity is contracted second Bianchi, so it must hold for
	// arbitrary product metrics, not only solutions of the equation
	for (uint64_t seed : {81ull, 82ull}) {
		int n = 3;
		ProductMetric<Jet> pm = random_pm(seed, n, 3, 4);
		Couplings lov = Couplings::make_lovelock(n, {Rational(1), Rational(1, 7)});
		DivergenceCheck dc = divergence_identity(pm, lov);
		CHECK(dc.component_normal);
		CHECK(dc.component_tangential);
	}
	// n = 4 activates the q = 2 mixed-block contraction chain
	{
		ProductMetric<Jet> pm = random_pm(83, 4, 3, 3);
		Couplings lov = Couplings::make_lovelock(4, {Rational(1), Rational(2, 5)});
		DivergenceCheck dc = divergence_identity(pm, lov);
		CHECK(dc.component_normal);
		CHECK(dc.component_tangential);
		// Einstein couplings as well (both displayed component identities)
		Couplings ein = Couplings::make_lovelock(4, {Rational(1), Rational(0)});
		DivergenceCheck dce = divergence_identity(pm, ein);
		CHECK(dce.component_normal);
		CHECK(dce.component_tangential);
	}
	// non-Lovelock beta is not claimed
	CHECK_THROWS_AS(divergence_identity(random_pm(1, 3, 2, 3), Couplings::einstein(3)),
	                RegimeError);
}
