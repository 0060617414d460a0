#include "lovelock/curvature.hpp"
#include "lovelock/presets.hpp"

#include <doctest.h>

using namespace lovelock;
namespace pre = lovelock::presets;

namespace {

Rational lambda2q(int n, int q)
{
	Rational r = factorial_q(n) * factorial_q(2 * q) / factorial_q(n - 2 * q + 1);
	for (int i = 0; i < q; ++i)
		r /= -2;
	return r;
}

DForm<Jet> metric_form(const Metric<Jet> &g)
{
	return SymT2<Jet>::from_mat(g.g, g.proto).form();
}

} // namespace

TEST_CASE("riemann: flat, Poincare ball, round sphere")
{
	CHECK(is_zero(riemann(pre::flat(4))));

	Metric<Jet> ball = pre::poincare_ball(4, 4);
	DForm<Jet> R = riemann(ball);
	CHECK(ring_eq(R, scale(kn_power(metric_form(ball), 2), Scalar(-1, 2))));

	Metric<Jet> sph = pre::round_sphere(4, 4);
	CHECK(ring_eq(riemann(sph), scale(kn_power(metric_form(sph), 2), Scalar(1, 2))));

	// curvature needs two reliable derivatives
	Metric<Jet> shallow = pre::random_metric(1, 3, 1);
	CHECK_THROWS_AS(riemann(shallow), DegreeError);
}

TEST_CASE("lovelock family at constant curvature")
{
	for (int n = 3; n <= 5; ++n) {
		int m = n + 1;
		Metric<Jet> hyp = pre::poincare_ball(m, 4);
		DForm<Jet> R = riemann(hyp);
		SymT2<Jet> gsym = SymT2<Jet>::from_mat(hyp.g, hyp.proto);
		for (int q = 1; 2 * q <= n + 1; ++q) {
			LovelockFamily<Jet> fam = lovelock_family(hyp, q, R);
			Rational lam = lambda2q(n, q);
			CHECK(ring_eq(fam.ric2q, scale(gsym, Scalar(lam))));
			CHECK(jet_eq(fam.scal2q, Jet::constant(m, Scalar(lam * (n + 1)))));
			Rational efac = lam * (1 - Rational(n + 1, 2 * q));
			CHECK(ring_eq(fam.e2q, scale(gsym, Scalar(efac))));
			// scal^(2q) == C_g(Ric^(2q)) consistency
			CHECK(jet_eq(fam.scal2q, trace_of(hyp, fam.ric2q)));
		}
	}
}

TEST_CASE("dimensional vanishing and flat-torus products")
{
	// R^l, Ric^(2l), scal^(2l) vanish for 2l > m
	Metric<Jet> g = pre::random_metric(11, 3, 4);
	DForm<Jet> R = riemann(g);
	CHECK(is_zero(kn_power(R, 2))); // (4,4) form in dim 3
	LovelockFamily<Jet> fam = lovelock_family(g, 2, R);
	CHECK(is_zero(fam.ric2q));
	CHECK(fam.scal2q.is_zero());

	// E^(2q)(product with flat torus) == 0 whenever 2q > n_factor
	for (auto [nf, tk] : {std::pair{2, 2}, std::pair{3, 2}}) {
		Metric<Jet> prod = pre::product_with_torus(5, nf, tk, 4);
		LovelockFamily<Jet> f2 = lovelock_family(prod, 2);
		CHECK(is_zero(f2.e2q)); // 2q = 4 > n_factor
		// ... while the scalar curvature part is generally nonzero
		LovelockFamily<Jet> f1 = lovelock_family(prod, 1);
		CHECK(!is_zero(f1.e2q));
	}

	// q = 1 sanity: scal^(2) = K m(m-1) at constant curvature K
	Metric<Jet> sph = pre::round_sphere(5, 3);
	CHECK(jet_eq(lovelock_family(sph, 1).scal2q, Jet::constant(5, Scalar::exact(5 * 4))));
}

TEST_CASE("gravitation operator")
{
	Metric<Jet> g = pre::random_metric(13, 4, 3);
	SymT2<Jet> gsym = SymT2<Jet>::from_mat(g.g, g.proto);

	// G^(2)(g) = (1 - m/2) g
	CHECK(ring_eq(gravitation(g, 1, gsym), scale(gsym, Scalar(Rational(2 - 4, 2)))));

	// G^(2q) takes Ric^(2q) to E^(2q)
	DForm<Jet> R = riemann(g);
	for (int q = 1; q <= 2; ++q) {
		LovelockFamily<Jet> fam = lovelock_family(g, q, R);
		CHECK(ring_eq(gravitation(g, q, fam.ric2q), fam.e2q));
	}

	CHECK(is_zero(gravitation(g, 2, SymT2<Jet>(4, g.proto))));
}

TEST_CASE("schouten and weyl")
{
	// constant curvature K: P = (K/2) g, W = 0
	Metric<Jet> sph = pre::round_sphere(4, 4);
	SchoutenWeyl<Jet> sw = schouten_weyl(sph);
	CHECK(ring_eq(sw.P, scale(SymT2<Jet>::from_mat(sph.g, sph.proto), Scalar(1, 2))));
	CHECK(is_zero(sw.W));

	// conformally flat: W == 0
	Metric<Jet> cf = pre::conformally_flat(4, 5, pre::random_phi(3, 4, 5, 3));
	CHECK(is_zero(schouten_weyl(cf).W));

	// random: R == W + g * P and C(W) == 0
	Metric<Jet> g = pre::random_metric(17, 4, 4);
	DForm<Jet> R = riemann(g);
	SchoutenWeyl<Jet> sw2 = schouten_weyl(g, R);
	DForm<Jet> recomposed = add(sw2.W, kn_product(metric_form(g), sw2.P.form()));
	CHECK(ring_eq(R, recomposed));
	CHECK(is_zero(contract(g, sw2.W)));

	CHECK_THROWS_AS(schouten_weyl(pre::flat(2)), DimensionError);
}

TEST_CASE("differential operators: basics and metric compatibility")
{
	Metric<Jet> g = pre::random_metric(19, 3, 4);
	Christoffel<Jet> ch = christoffel(g);

	// delta_g g == 0
	CHECK(is_zero(divergence(g, ch, SymT2<Jet>::from_mat(g.g, g.proto))));

	// Euclidean, t = y0^2 dy0 (x) dy0: (delta t)_0 = -2 y0
	Metric<Jet> flat = pre::flat(3);
	Christoffel<Jet> chf = christoffel(flat);
	SymT2<Jet> t(3, Jet::zero(3));
	t.set(0, 0, jet_mul(Jet::variable(3, 0), Jet::variable(3, 0)));
	OneForm<Jet> d = divergence(flat, chf, t);
	CHECK(jet_eq(d.at(0), jet_scale(Jet::variable(3, 0), Scalar::exact(-2))));
	CHECK(d.at(1).is_zero());

	// Hessian/Laplacian on flat space
	Jet f = jet_mul(Jet::variable(3, 0), Jet::variable(3, 1));
	SymT2<Jet> H = hessian(flat, chf, f);
	CHECK(jet_eq(H.at(0, 1), Jet::constant(3, Scalar::exact(1))));
	CHECK(laplacian(flat, chf, pre::sq_norm(3)).coeff(mono_one()) == Scalar::exact(-6));
}

TEST_CASE("contracted second Bianchi: Lovelock tensors are divergence-free")
{
	for (uint64_t seed : {23ull, 29ull}) {
		int m = 4;
		Metric<Jet> g = pre::random_metric(seed, m, 4);
		Christoffel<Jet> ch = christoffel(g);
		DForm<Jet> R = riemann(g);
		for (int q = 1; 2 * q <= m; ++q) {
			LovelockFamily<Jet> fam = lovelock_family(g, q, R);
			OneForm<Jet> div = divergence(g, ch, fam.e2q);
			CHECK(is_zero(div));
		}
	}
}

TEST_CASE("ric_dot: probe derivative equals the displayed formulas")
{
	// trivial directions
	Metric<Jet> h0 = pre::random_metric(31, 3, 4);
	RicDot<Jet> z = ric_dot(h0, SymT2<Jet>(3, h0.proto));
	CHECK(is_zero(z.dric));
	CHECK(z.dscal.is_zero());

	Metric<Jet> flat = pre::flat(3);
	SymT2<Jet> cg = scale(SymT2<Jet>::from_mat(flat.g, flat.proto), Scalar::exact(5));
	RicDot<Jet> zf = ric_dot(flat, cg);
	CHECK(is_zero(zf.dric));
	CHECK(zf.dscal.is_zero());

	// random: dRic == Lichnerowicz display, dScal == trace display
	for (uint64_t seed : {37ull, 41ull, 43ull}) {
		int m = 3 + int(seed % 2);
		Metric<Jet> g = pre::random_metric(seed, m, 4);
		SymT2<Jet> k = pre::random_sym2(seed + 1, m, 4);
		RicDot<Jet> probe = ric_dot(g, k);

		Christoffel<Jet> ch = christoffel(g);
		DForm<Jet> R = riemann(g);
		K_check : {
			SymT2<Jet> lich = lichnerowicz(g, ch, R, k);
			OneForm<Jet> divk = divergence(g, ch, k);
			Jet trk = trace_of(g, k);
			SymT2<Jet> rhs = sub(sub(scale(lich, Scalar(1, 2)), div_star(g, ch, divk)),
			                     scale(hessian(g, ch, trk), Scalar(1, 2)));
			CHECK(ring_eq(probe.dric, rhs));

			// dscal = C(dRic) + C^2(Ric * k)/2 - C(k) scal
			DForm<Jet> ric = contract(g, R);
			Jet scal = full_contract(g, ric);
			Jet c2 = full_contract(g, contract(g, kn_product(ric, k.form())));
			Jet rhs_scal = jet_add(trace_of(g, probe.dric),
			                       jet_sub(jet_scale(c2, Scalar(1, 2)), jet_mul(trk, scal)));
			CHECK(jet_eq(probe.dscal, rhs_scal));
		}
	}
}

TEST_CASE("quadratic Lovelock scalar identity")
{
	// scal^(4) == 6 (|R|^2 - 4 |Ric|^2 + scal^2), pinning the norm convention
	for (uint64_t seed : {47ull, 53ull}) {
		int m = 5;
		Metric<Jet> g = pre::random_metric(seed, m, 3);
		DForm<Jet> R = riemann(g);
		DForm<Jet> ric = contract(g, R);
		Jet scal = full_contract(g, ric);
		Jet n_r = full_norm2(g, R);
		Jet n_ric = full_norm2(g, ric);
		Jet lhs = lovelock_family(g, 2, R).scal2q;
		Jet rhs = jet_scale(
		    jet_add(jet_sub(n_r, jet_scale(n_ric, Scalar::exact(4))), jet_mul(scal, scal)),
		    Scalar::exact(6));
		CHECK(jet_eq(lhs, rhs));
	}
}

TEST_CASE("locally conformally flat: Lovelock scalars are Schouten sigmas")
{
	// scal^(2q) == (2q)! q! (m-q)!/(m-2q)! sigma_q(g^{-1} P) for LCF metrics;
	// the combinatorial factor is pinned by the sigma oracle
	for (uint64_t seed : {59ull, 61ull}) {
		int m = 4;
		Metric<Jet> g = pre::conformally_flat(m, 5, pre::random_phi(seed, m, 5, 3));
		DForm<Jet> R = riemann(g);
		SchoutenWeyl<Jet> sw = schouten_weyl(g, R);
		for (int q = 1; 2 * q <= m; ++q) {
			Jet lhs = lovelock_family(g, q, R).scal2q;
			Rational fac = factorial_q(2 * q) * factorial_q(q) * factorial_q(m - q) /
			               factorial_q(m - 2 * q);
			Jet rhs = jet_scale(elem_sym(g, sw.P.form(), q), Scalar(fac));
			CHECK(jet_eq(lhs, rhs));
		}
	}
}
