#pragma once

#include "lovelock/double_form.hpp"
#include "lovelock/jet.hpp"

#include <random>

namespace lt {

using namespace lovelock;

using Rng = std::mt19937_64;

inline Scalar rand_q(Rng &rng, int span = 3)
{
	std::uniform_int_distribution<int> num(-span, span);
	std::uniform_int_distribution<int> den(1, 3);
	return Scalar(num(rng), den(rng));
}

inline Scalar rand_q_nonzero(Rng &rng, int span = 3)
{
	Scalar s = rand_q(rng, span);
	while (s.is_zero())
		s = rand_q(rng, span);
	return s;
}

/// random jet with a handful of terms, reliable to degree `deg`
inline Jet rand_jet(Rng &rng, int nvars, int deg, int nterms = 4, bool with_constant = true)
{
	Jet j = Jet::zero(nvars);
	j.deg = deg;
	std::uniform_int_distribution<int> vd(0, nvars - 1);
	std::uniform_int_distribution<int> dd(with_constant ? 0 : 1, std::max(deg, 1));
	for (int t = 0; t < nterms; ++t) {
		int td = std::min(dd(rng), deg);
		Mono m = mono_one();
		for (int k = 0; k < td; ++k)
			m = mono_mul(m, mono_var(vd(rng)));
		Jet term = Jet::zero(nvars);
		term.deg = deg;
		Scalar c = rand_q(rng);
		if (!c.is_zero())
			term.terms.emplace_back(m, c);
		j = jet_add(j, term);
	}
	return j;
}

/// random symmetric metric jet: identity + small perturbation, unit at 0
inline Mat<Jet> rand_metric_entries(Rng &rng, int m, int deg, int nterms = 2)
{
	Mat<Jet> g(m, std::vector<Jet>(m, Jet::zero(m)));
	for (int i = 0; i < m; ++i)
		for (int j = i; j < m; ++j) {
			Jet pert = jet_scale(rand_jet(rng, m, deg, nterms, false), Scalar(1, 4));
			Jet base = i == j ? Jet::constant(m, Scalar::exact(1)) : Jet::zero(m);
			base.deg = kDegInf;
			Jet v = jet_add(base, pert);
			v.deg = deg;
			g[i][j] = v;
			g[j][i] = v;
		}
	return g;
}

inline Metric<Jet> rand_metric(Rng &rng, int m, int deg, int nterms = 2)
{
	return Metric<Jet>(rand_metric_entries(rng, m, deg, nterms), Jet::zero(m));
}

/// random double form of bidegree (a,b)
inline DForm<Jet> rand_form(Rng &rng, int m, int a, int b, int deg = 2, int ncomp = 5)
{
	DForm<Jet> f = DForm<Jet>::zero(m, a, b, Jet::zero(m));
	auto Is = tuples_of(m, a);
	auto Js = tuples_of(m, b);
	std::uniform_int_distribution<size_t> pi(0, Is.size() - 1), pj(0, Js.size() - 1);
	for (int k = 0; k < ncomp; ++k)
		f.accumulate(Is[pi(rng)], Js[pj(rng)], rand_jet(rng, m, deg, 2));
	return f;
}

/// random SYMMETRIC square form (w((V),(W)) = w((W),(V)))
inline DForm<Jet> rand_sym_form(Rng &rng, int m, int a, int deg = 2, int ncomp = 5)
{
	DForm<Jet> f = DForm<Jet>::zero(m, a, a, Jet::zero(m));
	auto Is = tuples_of(m, a);
	std::uniform_int_distribution<size_t> pi(0, Is.size() - 1);
	for (int k = 0; k < ncomp; ++k) {
		Tup I = Is[pi(rng)], J = Is[pi(rng)];
		Jet v = rand_jet(rng, m, deg, 2);
		f.accumulate(I, J, v);
		if (I != J)
			f.accumulate(J, I, v);
	}
	return f;
}

} // namespace lt
