#include "t_util.hpp"

#include "lovelock/dual.hpp"
#include "lovelock/xseries.hpp"

#include <doctest.h>

using namespace lovelock;

namespace {

XSer<Jet> rand_ser(lt::Rng &rng, int nvars, int trunc, int deg = 3)
{
	XSer<Jet> s = XSer<Jet>::make(Jet::zero(nvars), trunc);
	for (int k = 0; k <= trunc; ++k)
		s.set_coeff(k, lt::rand_jet(rng, nvars, deg, 2));
	return s;
}

} // namespace

TEST_CASE("x-series basics")
{
	Jet h0 = Jet::constant(1, Scalar::exact(5));
	Jet h2 = Jet::constant(1, Scalar::exact(7));
	XSer<Jet> h = XSer<Jet>::make(Jet::zero(1), 4);
	h.set_coeff(0, h0);
	h.set_coeff(2, h2);

	// derive_x(h0 + h2 x^2) = 2 h2 x
	XSer<Jet> hp = derive_x(h);
	CHECK(hp.coeff(0).is_zero());
	CHECK(jet_eq(hp.coeff(1), jet_scale(h2, Scalar::exact(2))));
	CHECK(hp.trunc == 3);

	// invert(1 - x) at N = 3 -> 1 + x + x^2 + x^3
	XSer<Jet> a = XSer<Jet>::make(Jet::zero(1), 3);
	a.set_coeff(0, Jet::constant(1, Scalar::exact(1)));
	a.set_coeff(1, Jet::constant(1, Scalar::exact(-1)));
	XSer<Jet> ia = invert(a);
	for (int k = 0; k <= 3; ++k)
		CHECK(jet_eq(ia.coeff(k), Jet::constant(1, Scalar::exact(1))));

	CHECK_THROWS_AS(invert(shift_up(a, 1)), NotAUnitError);
}

TEST_CASE("x-series Leibniz rule and inverse on random series")
{
	lt::Rng rng(21);
	for (int it = 0; it < 15; ++it) {
		XSer<Jet> a = rand_ser(rng, 2, 4);
		XSer<Jet> b = rand_ser(rng, 2, 4);
		XSer<Jet> lhs = derive_x(mul(a, b));
		XSer<Jet> rhs = add(mul(derive_x(a), b), mul(a, derive_x(b)));
		CHECK(eq_through(lhs, rhs, 3));

		XSer<Jet> u = a;
		u.set_coeff(0, jet_add(a.coeff(0), Jet::constant(2, Scalar::exact(3))));
		if (is_unit(u.coeff(0))) {
			XSer<Jet> prod = mul(u, invert(u));
			CHECK(eq_through(prod, one_like(u), 4));
		}
	}
}

TEST_CASE("x-series shifts track exponent offsets")
{
	lt::Rng rng(22);
	XSer<Jet> a = rand_ser(rng, 2, 3);
	XSer<Jet> up = shift_up(a, 2);
	CHECK(up.trunc == 5);
	CHECK(up.coeff(0).is_zero());
	CHECK(jet_eq(up.coeff(2), a.coeff(0)));
	XSer<Jet> back = shift_down(up, 2);
	CHECK(eq_through(back, a, 3));
	CHECK_THROWS(shift_down(up, 3));
}

TEST_CASE("x-series over dual ring differentiates coefficientwise")
{
	// (a + eps b)^2 has eps part 2ab, order by order
	lt::Rng rng(23);
	XSer<Jet> a = rand_ser(rng, 2, 3);
	XSer<Jet> b = rand_ser(rng, 2, 3);
	XSer<Dual<Jet>> da = XSer<Dual<Jet>>::make(Dual<Jet>::lift(Jet::zero(2), 1), 3);
	for (int k = 0; k <= 3; ++k)
		da.set_coeff(k, Dual<Jet>(a.coeff(k), {b.coeff(k)}));
	XSer<Dual<Jet>> sq = mul(da, da);
	XSer<Jet> expect = scale(mul(a, b), Scalar::exact(2));
	for (int k = 0; k <= 3; ++k)
		CHECK(jet_eq(sq.coeff(k).eps[0], expect.coeff(k)));
}
