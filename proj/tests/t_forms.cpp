#include "t_util.hpp"

#include <doctest.h>

#include <functional>

using namespace lovelock;

namespace {

/// brute-force Kulkarni-Nomizu product: antisymmetrized sum over all
/// splittings of the output tuples (independent of the merge-based engine)
DForm<Jet> kn_oracle(const DForm<Jet> &x, const DForm<Jet> &y)
{
	int a = x.pa + y.pa, b = x.pb + y.pb;
	DForm<Jet> r = DForm<Jet>::zero(x.dim, std::min(a, x.dim), std::min(b, x.dim), x.proto);
	if (a > x.dim || b > x.dim)
		return r;
	r.pa = a;
	r.pb = b;
	auto splittings = [](Tup T, int k) {
		std::vector<std::tuple<int, Tup, Tup>> out; // sign, chosen, rest
		int n = tup_len(T);
		std::vector<int> idx(k);
		std::function<void(int, int)> rec = [&](int start, int depth) {
			if (depth == k) {
				std::vector<int> A, B;
				for (int i = 0, j = 0; i < n; ++i) {
					if (j < k && idx[j] == i) {
						A.push_back(tup_get(T, i));
						++j;
					} else
						B.push_back(tup_get(T, i));
				}
				auto [s, merged] = tup_merge(tup_pack(A), tup_pack(B));
				(void)merged;
				out.emplace_back(s, tup_pack(A), tup_pack(B));
				return;
			}
			for (int i = start; i <= n - (k - depth); ++i) {
				idx[depth] = i;
				rec(i + 1, depth + 1);
			}
		};
		rec(0, 0);
		return out;
	};
	for (Tup I : tuples_of(x.dim, a))
		for (Tup J : tuples_of(x.dim, b)) {
			Jet v = x.proto;
			for (auto &[si, A, Arest] : splittings(I, x.pa))
				for (auto &[sj, B, Brest] : splittings(J, x.pb)) {
					Jet term = jet_mul(x.at(A, B), y.at(Arest, Brest));
					if (term.is_zero())
						continue;
					v = jet_add(v, si * sj == 1 ? term : jet_neg(term));
				}
			r.set(I, J, v);
		}
	return r;
}

/// brute-force contraction via the antisymmetric extension accessor
DForm<Jet> contract_oracle(const Metric<Jet> &m, const DForm<Jet> &x)
{
	if (x.pa == 0 || x.pb == 0)
		return DForm<Jet>::zero(x.dim, 0, 0, x.proto);
	DForm<Jet> r = DForm<Jet>::zero(x.dim, x.pa - 1, x.pb - 1, x.proto);
	for (Tup I : tuples_of(x.dim, x.pa - 1))
		for (Tup J : tuples_of(x.dim, x.pb - 1)) {
			Jet v = x.proto;
			for (int a = 0; a < x.dim; ++a)
				for (int b = 0; b < x.dim; ++b) {
					if (m.ginv[a][b].is_zero())
						continue;
					std::vector<int> vi = {a}, vj = {b};
					for (int t = 0; t < tup_len(I); ++t)
						vi.push_back(tup_get(I, t));
					for (int t = 0; t < tup_len(J); ++t)
						vj.push_back(tup_get(J, t));
					Jet w = x.get_general(vi, vj);
					if (w.is_zero())
						continue;
					v = jet_add(v, jet_mul(m.ginv[a][b], w));
				}
			r.set(I, J, v);
		}
	return r;
}

Metric<Jet> identity_metric(int m)
{
	Mat<Jet> g(m, std::vector<Jet>(m, Jet::zero(m)));
	for (int i = 0; i < m; ++i)
		g[i][i] = Jet::constant(m, Scalar::exact(1));
	return Metric<Jet>(g, Jet::zero(m));
}

Rational binom_q(long s, long r) { return falling_q(s, r) / factorial_q(r); }

} // namespace

TEST_CASE("kn product basics")
{
	// g*g at (I,J) = ({0,1},{0,1}) with g = identity -> 2
	int m = 4;
	Metric<Jet> g = identity_metric(m);
	DForm<Jet> g2 = kn_product(g.form(), g.form());
	CHECK(jet_eq(g2.at(tup_pack({0, 1}), tup_pack({0, 1})), Jet::constant(m, Scalar::exact(2))));

	// four-term display for (1,1) x (1,1) products
	lt::Rng rng(31);
	DForm<Jet> w = lt::rand_form(rng, 3, 1, 1);
	DForm<Jet> e = lt::rand_form(rng, 3, 1, 1);
	DForm<Jet> we = kn_product(w, e);
	for (int s = 0; s < 3; ++s)
		for (int t = 0; t < 3; ++t)
			for (int sg = 0; sg < 3; ++sg)
				for (int tu = 0; tu < 3; ++tu) {
					Jet expect = jet_mul(w.get_general({s}, {t}), e.get_general({sg}, {tu}));
					expect = jet_sub(expect, jet_mul(w.get_general({s}, {tu}), e.get_general({sg}, {t})));
					expect = jet_sub(expect, jet_mul(w.get_general({sg}, {t}), e.get_general({s}, {tu})));
					expect = jet_add(expect, jet_mul(w.get_general({sg}, {tu}), e.get_general({s}, {t})));
					CHECK(jet_eq(we.get_general({s, sg}, {t, tu}), expect));
				}
}

TEST_CASE("kn product: graded commutativity and the shuffle oracle")
{
	lt::Rng rng(33);
	for (int it = 0; it < 12; ++it) {
		int m = 3 + int(rng() % 3);
		int p = int(rng() % 3), q = int(rng() % 3);
		int r = int(rng() % 2) + (it % 2), s = int(rng() % 3);
		if (p + r > m || q + s > m)
			continue;
		DForm<Jet> w = lt::rand_form(rng, m, p, q, 2, 4);
		DForm<Jet> e = lt::rand_form(rng, m, r, s, 2, 4);
		DForm<Jet> we = kn_product(w, e);
		DForm<Jet> ew = kn_product(e, w);
		int sign = (p * r + q * s) % 2 ? -1 : 1;
		CHECK(ring_eq(we, sign == 1 ? ew : neg(ew)));
		CHECK(ring_eq(we, kn_oracle(w, e)));
	}

	// the even-sign case: (1,1) against (2,2) commutes
	lt::Rng rng2(34);
	DForm<Jet> w = lt::rand_form(rng2, 4, 1, 1);
	DForm<Jet> e = lt::rand_form(rng2, 4, 2, 2);
	CHECK(ring_eq(kn_product(w, e), kn_product(e, w)));
}

TEST_CASE("contraction: closed form C^k(g^k), zero cases, oracle")
{
	// C_g^k(g^k) == k! m!/(m-k)! for all k <= m <= 7
	for (int m = 1; m <= 7; ++m) {
		Metric<Jet> g = identity_metric(m);
		for (int k = 0; k <= m; ++k) {
			Jet c = full_contract(g, kn_power(g.form(), k));
			Rational expect = factorial_q(k) * factorial_q(m) / factorial_q(m - k);
			CHECK(jet_eq(c, Jet::constant(m, Scalar(expect))));
		}
	}

	// C_g^2(g^2) in m=4 -> 24
	Metric<Jet> g4 = identity_metric(4);
	CHECK(jet_eq(contract_p(g4, kn_power(g4.form(), 2), 2).at(tup_empty(), tup_empty()),
	             Jet::constant(4, Scalar::exact(24))));

	// contraction of a (0,b) form vanishes
	lt::Rng rng(35);
	DForm<Jet> w0b = lt::rand_form(rng, 4, 0, 2);
	CHECK(is_zero(contract(g4, w0b)));

	// metric powers: g^0 is the scalar 1; g^{m+1} is the zero form
	CHECK(jet_eq(kn_power(g4.form(), 0).at(tup_empty(), tup_empty()),
	             Jet::constant(4, Scalar::exact(1))));
	CHECK(is_zero(kn_power(g4.form(), 5)));

	// random non-diagonal metric: engine contraction == brute force
	for (int it = 0; it < 8; ++it) {
		int m = 3 + int(rng() % 2);
		Metric<Jet> g = lt::rand_metric(rng, m, 2);
		DForm<Jet> w = lt::rand_form(rng, m, 2, 2, 2, 5);
		CHECK(ring_eq(contract(g, w), contract_oracle(g, w)));
	}
}

TEST_CASE("contraction lemma, square bidegree")
{
	lt::Rng rng(36);
	for (int it = 0; it < 10; ++it) {
		int m = 3 + int(rng() % 3);
		int l = int(rng() % std::min(3, m));
		Metric<Jet> g = lt::rand_metric(rng, m, 2);
		DForm<Jet> w = lt::rand_form(rng, m, l, l, 2, 4);
		DForm<Jet> gf = g.form();

		// part (0): C(w g) = g C(w) + (m - 2l) w
		DForm<Jet> lhs0 = contract(g, kn_product(w, gf));
		DForm<Jet> rhs0 = add(kn_product(gf, contract(g, w)),
		                      scale_rat(w, Rational(m - 2 * l)));
		CHECK(ring_eq(lhs0, rhs0));

		// part (1): C(g^k w) = g^k C(w) + k(m - 2l - k + 1) g^{k-1} w
		for (int k = 1; k + l <= m && k <= 3; ++k) {
			DForm<Jet> gk = kn_power(gf, k);
			DForm<Jet> lhs = contract(g, kn_product(gk, w));
			DForm<Jet> rhs = add(kn_product(gk, contract(g, w)),
			                     scale_rat(kn_product(kn_power(gf, k - 1), w),
			                               Rational(k * (m - 2 * l - k + 1))));
			CHECK(ring_eq(lhs, rhs));
		}

		// part (2): C^p(g^k w) with the stated conventions (g^{k-r} = 0 for
		// k-r < 0, C^{p-r}(w) = 0 for p-r outside [0, l])
		for (int k = 0; k <= 2; ++k) {
			if (k + l > m)
				continue;
			for (int p = 1; p <= std::min(3, k + l); ++p) {
				DForm<Jet> lhs = contract_p(g, kn_product(kn_power(gf, k), w), p);
				DForm<Jet> rhs = DForm<Jet>::zero(m, std::max(k + l - p, 0),
				                                  std::max(k + l - p, 0), w.proto);
				for (int r = 0; r <= p; ++r) {
					if (k - r < 0 || p - r > l)
						continue;
					Rational coef = binom_q(m - 2 * l + p - k, r) *
					                (factorial_q(k) / factorial_q(k - r)) *
					                (factorial_q(p) / factorial_q(p - r));
					DForm<Jet> term = kn_product(kn_power(gf, k - r), contract_p(g, w, p - r));
					rhs = add(rhs, scale_rat(term, coef));
				}
				CHECK(ring_eq(lhs, rhs));
			}
		}
	}
}

TEST_CASE("contraction lemma, general bidegree a != b")
{
	lt::Rng rng(37);
	for (int it = 0; it < 10; ++it) {
		int m = 4 + int(rng() % 2);
		int a = 1 + int(rng() % 2);
		int b = a + 1;
		Metric<Jet> g = lt::rand_metric(rng, m, 2);
		DForm<Jet> w = lt::rand_form(rng, m, a, b, 2, 4);
		DForm<Jet> gf = g.form();
		for (int k = 0; k <= 2 && k + b <= m; ++k)
			for (int p = 1; p <= 2; ++p) {
				DForm<Jet> lhs = contract_p(g, kn_product(kn_power(gf, k), w), p);
				DForm<Jet> rhs = DForm<Jet>::zero(m, std::max(k + a - p, 0),
				                                  std::max(k + b - p, 0), w.proto);
				for (int r = 0; r <= p; ++r) {
					if (k - r < 0 || p - r > std::min(a, b))
						continue;
					Rational coef = binom_q(m - a - b + p - k, r) *
					                (factorial_q(k) / factorial_q(k - r)) *
					                (factorial_q(p) / factorial_q(p - r));
					rhs = add(rhs, scale_rat(kn_product(kn_power(gf, k - r), contract_p(g, w, p - r)),
					                         coef));
				}
				CHECK(ring_eq(lhs, rhs));
			}
	}
}

TEST_CASE("first Bianchi operator")
{
	lt::Rng rng(38);
	int m = 4;
	Metric<Jet> g = lt::rand_metric(rng, m, 2);

	// B1(g) == 0 by symmetry of the metric
	CHECK(is_zero(bianchi1(g.form())));

	// products of symmetric (1,1)-forms stay in the B1 kernel
	for (int it = 0; it < 6; ++it) {
		DForm<Jet> w = lt::rand_sym_form(rng, m, 1);
		DForm<Jet> e = lt::rand_sym_form(rng, m, 1);
		CHECK(is_zero(bianchi1(w)));
		DForm<Jet> we = kn_product(w, e);
		CHECK(is_zero(bianchi1(we)));
		// ... and contraction preserves the kernel together with symmetry
		DForm<Jet> c = contract(g, kn_product(we, e));
		CHECK(is_zero(bianchi1(c)));
	}

	CHECK_THROWS_AS(bianchi1(lt::rand_form(rng, m, 1, 0)), DimensionError);
}

TEST_CASE("multiplication of symmetric square-bidegree forms is commutative")
{
	lt::Rng rng(39);
	for (int it = 0; it < 6; ++it) {
		int m = 4 + int(rng() % 2);
		DForm<Jet> w = lt::rand_sym_form(rng, m, 1);
		DForm<Jet> e = lt::rand_sym_form(rng, m, 2);
		CHECK(ring_eq(kn_product(w, e), kn_product(e, w)));
	}
}

TEST_CASE("full norm: identity values and the naive summation oracle")
{
	// |g|^2 = m for the identity metric
	for (int m = 2; m <= 5; ++m) {
		Metric<Jet> g = identity_metric(m);
		CHECK(jet_eq(full_norm2(g, g.form()), Jet::constant(m, Scalar::exact(m))));
	}

	// naive full-tuple summation oracle, m = 3, omega = g^2
	{
		int m = 3;
		Metric<Jet> g = identity_metric(m);
		DForm<Jet> g2 = kn_power(g.form(), 2);
		Jet brute = Jet::zero(m);
		for (int i = 0; i < m; ++i)
			for (int j = 0; j < m; ++j)
				for (int k = 0; k < m; ++k)
					for (int l = 0; l < m; ++l) {
						Jet v = g2.get_general({i, j}, {k, l});
						brute = jet_add(brute, jet_mul(v, v)); // identity metric: raising is free
					}
		CHECK(jet_eq(full_norm2(g, g2), brute));
		CHECK(jet_eq(brute, Jet::constant(m, Scalar::exact(48))));
	}

	// random metric: oracle with explicit index raising
	lt::Rng rng(40);
	for (int it = 0; it < 3; ++it) {
		int m = 3;
		Metric<Jet> g = lt::rand_metric(rng, m, 2);
		DForm<Jet> w = lt::rand_sym_form(rng, m, 2, 2, 3);
		Jet brute = Jet::zero(m);
		auto idx = [&](int a, int b) { return std::vector<int>{a, b}; };
		for (int i = 0; i < m; ++i)
			for (int j = 0; j < m; ++j)
				for (int k = 0; k < m; ++k)
					for (int l = 0; l < m; ++l) {
						Jet lower = w.get_general(idx(i, j), idx(k, l));
						if (lower.is_zero())
							continue;
						Jet raised = Jet::zero(m);
						for (int i2 = 0; i2 < m; ++i2)
							for (int j2 = 0; j2 < m; ++j2)
								for (int k2 = 0; k2 < m; ++k2)
									for (int l2 = 0; l2 < m; ++l2) {
										Jet v = w.get_general(idx(i2, j2), idx(k2, l2));
										if (v.is_zero())
											continue;
										Jet f = jet_mul(jet_mul(g.ginv[i][i2], g.ginv[j][j2]),
										                jet_mul(g.ginv[k][k2], g.ginv[l][l2]));
										raised = jet_add(raised, jet_mul(f, v));
									}
						brute = jet_add(brute, jet_mul(lower, raised));
					}
		CHECK(jet_eq(full_norm2(g, w), brute));
	}
}

TEST_CASE("elementary symmetric functions and the contraction normalization")
{
	// sigma_1 == C(w)
	lt::Rng rng(41);
	for (int it = 0; it < 5; ++it) {
		int m = 3 + int(rng() % 2);
		Metric<Jet> g = lt::rand_metric(rng, m, 2);
		DForm<Jet> w = lt::rand_sym_form(rng, m, 1);
		CHECK(jet_eq(elem_sym(g, w, 1), contract(g, w).at(tup_empty(), tup_empty())));
	}

	// sigma_m at the identity metric with diag(1,2,3) -> det = 6
	{
		int m = 3;
		Metric<Jet> g = identity_metric(m);
		DForm<Jet> w = DForm<Jet>::zero(m, 1, 1, Jet::zero(m));
		for (int i = 0; i < m; ++i)
			w.set(tup_pack({i}), tup_pack({i}), Jet::constant(m, Scalar::exact(i + 1)));
		CHECK(jet_eq(elem_sym(g, w, m), Jet::constant(m, Scalar::exact(6))));
	}

	// pinned normalization: C_g^k(w^k) == (k!)^2 sigma_k(g^{-1} w),
	// determined by brute force at m <= 4 and asserted everywhere
	for (int it = 0; it < 8; ++it) {
		int m = 3 + int(rng() % 2);
		Metric<Jet> g = lt::rand_metric(rng, m, 2);
		DForm<Jet> w = lt::rand_sym_form(rng, m, 1);
		for (int k = 1; k <= m; ++k) {
			Jet lhs = full_contract(g, kn_power(w, k));
			Jet rhs = jet_scale(elem_sym(g, w, k),
			                    Scalar(factorial_q(k) * factorial_q(k)));
			CHECK(jet_eq(lhs, rhs));
		}
	}

	CHECK_THROWS_AS(elem_sym(identity_metric(3), lt::rand_form(rng, 3, 1, 1), 4),
	                DimensionError);
}
