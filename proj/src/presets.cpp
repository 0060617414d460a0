#include "lovelock/presets.hpp"

#include <random>

namespace lovelock::presets {

namespace {

using Rng = std::mt19937_64;

Scalar small_q(Rng &rng, int span = 3)
{
	std::uniform_int_distribution<int> num(-span, span);
	std::uniform_int_distribution<int> den(1, 3);
	return Scalar(num(rng), den(rng));
}

Jet sparse_jet(Rng &rng, int m, int deg, int nterms, bool allow_constant)
{
	Jet j = Jet::zero(m);
	j.deg = deg;
	if (deg < 1)
		return j;
	std::uniform_int_distribution<int> vd(0, m - 1);
	std::uniform_int_distribution<int> dd(allow_constant ? 0 : 1, std::max(1, deg));
	for (int t = 0; t < nterms; ++t) {
		int td = std::min(dd(rng), deg);
		Mono mo = mono_one();
		for (int k = 0; k < td; ++k)
			mo = mono_mul(mo, mono_var(vd(rng)));
		Jet term = Jet::zero(m);
		term.deg = deg;
		Scalar c = small_q(rng);
		if (!c.is_zero())
			term.terms.emplace_back(mo, c);
		j = jet_add(j, term);
	}
	return j;
}

Metric<Jet> conformal_delta(int m, const Jet &factor)
{
	Mat<Jet> g(m, std::vector<Jet>(m, Jet::zero(m)));
	for (int i = 0; i < m; ++i)
		g[i][i] = factor;
	return Metric<Jet>(g, Jet::zero(m));
}

} // namespace

Jet sq_norm(int m)
{
	Jet r = Jet::zero(m);
	for (int i = 0; i < m; ++i)
		r = jet_add(r, jet_mul(Jet::variable(m, i), Jet::variable(m, i)));
	return r;
}

Metric<Jet> flat(int m)
{
	return conformal_delta(m, Jet::constant(m, Scalar::exact(1)));
}

Metric<Jet> poincare_ball(int m, int deg)
{
	Jet f = jet_truncate(jet_sub(Jet::constant(m, Scalar::exact(1)), sq_norm(m)), deg);
	Jet inv = jet_invert(f);
	return conformal_delta(m, jet_scale(jet_mul(inv, inv), Scalar::exact(4)));
}

Metric<Jet> round_sphere(int m, int deg, const Rational &curvature)
{
	Jet r2 = jet_scale(sq_norm(m), Scalar(curvature));
	Jet f = jet_truncate(jet_add(Jet::constant(m, Scalar::exact(1)), r2), deg);
	Jet inv = jet_invert(f);
	return conformal_delta(m, jet_scale(jet_mul(inv, inv), Scalar::exact(4)));
}

Metric<Jet> conformally_flat(int m, int deg, const Jet &phi)
{
	Jet e = jet_exp(jet_truncate(jet_scale(phi, Scalar::exact(2)), deg));
	return conformal_delta(m, e);
}

Jet random_phi(uint64_t seed, int m, int deg, int nterms)
{
	Rng rng(seed * 0x9e3779b97f4a7c15ull + 1);
	Jet phi = jet_scale(sparse_jet(rng, m, deg, nterms, false), Scalar(1, 4));
	return phi;
}

Metric<Jet> random_metric(uint64_t seed, int m, int deg, int terms_per_entry)
{
	Rng rng(seed * 0x9e3779b97f4a7c15ull + 2);
	Mat<Jet> g(m, std::vector<Jet>(m, Jet::zero(m)));
	for (int i = 0; i < m; ++i)
		for (int j = i; j < m; ++j) {
			Jet pert = jet_scale(sparse_jet(rng, m, deg, terms_per_entry, false), Scalar(1, 4));
			Jet base = i == j ? Jet::constant(m, Scalar::exact(1)) : Jet::zero(m);
			Jet v = jet_add(base, pert);
			v.deg = deg;
			g[i][j] = v;
			g[j][i] = v;
		}
	return Metric<Jet>(g, Jet::zero(m));
}

Metric<Jet> product_with_torus(uint64_t seed, int n_factor, int torus_k, int deg)
{
	int m = n_factor + torus_k;
	Metric<Jet> base = random_metric(seed, n_factor, deg);
	Mat<Jet> g(m, std::vector<Jet>(m, Jet::zero(m)));
	for (int i = 0; i < n_factor; ++i)
		for (int j = 0; j < n_factor; ++j)
			g[i][j] = jet_lift(base.g[i][j], m, 0);
	for (int i = n_factor; i < m; ++i)
		g[i][i] = Jet::constant(m, Scalar::exact(1));
	return Metric<Jet>(g, Jet::zero(m));
}

SymT2<Jet> random_sym2(uint64_t seed, int m, int deg, int terms_per_entry)
{
	Rng rng(seed * 0x9e3779b97f4a7c15ull + 3);
	SymT2<Jet> t(m, Jet::zero(m));
	for (int i = 0; i < m; ++i)
		for (int j = i; j < m; ++j)
			t.set(i, j, sparse_jet(rng, m, deg, terms_per_entry, true));
	return t;
}

OneForm<Jet> random_one_form(uint64_t seed, int m, int deg, int terms_per_entry)
{
	Rng rng(seed * 0x9e3779b97f4a7c15ull + 4);
	OneForm<Jet> w(m, Jet::zero(m));
	for (int i = 0; i < m; ++i)
		w.set(i, sparse_jet(rng, m, deg, terms_per_entry, true));
	return w;
}

Jet random_jet(uint64_t seed, int m, int deg, int nterms)
{
	Rng rng(seed * 0x9e3779b97f4a7c15ull + 5);
	return sparse_jet(rng, m, deg, nterms, true);
}

} // namespace lovelock::presets
