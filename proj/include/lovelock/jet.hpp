#pragma once

#include "lovelock/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <vector>

namespace lovelock {

inline constexpr int kMaxVars = 7;
inline constexpr int kDegInf = 1 << 20;

struct DimensionError : std::runtime_error {
	using std::runtime_error::runtime_error;
};
struct NotAUnitError : std::runtime_error {
	using std::runtime_error::runtime_error;
};
struct DegreeError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/// Monomial key packed as [total degree : 8][e0 : 8]...[e6 : 8].
/// Unsigned comparison of the packed word is graded-lex order, which is the
/// canonical term order everywhere (storage, serialization, reports).
using Mono = uint64_t;

inline Mono mono_one() { return 0; }

inline int mono_total(Mono m) { return int(m >> 56); }

inline int mono_exp(Mono m, int i) { return int((m >> (8 * (6 - i))) & 0xff); }

inline Mono mono_set(Mono m, int i, int e)
{
	int shift = 8 * (6 - i);
	int old = mono_exp(m, i);
	m &= ~(Mono(0xff) << shift);
	m |= Mono(e) << shift;
	int total = mono_total(m) - old + e;
	m &= ~(Mono(0xff) << 56);
	m |= Mono(total) << 56;
	return m;
}

inline Mono mono_var(int i) { return mono_set(mono_one(), i, 1); }

/// product of monomials; byte-wise addition is safe at the degrees we run
inline Mono mono_mul(Mono a, Mono b) { return a + b; }

inline std::vector<int> mono_exps(Mono m, int nvars)
{
	std::vector<int> e(nvars);
	for (int i = 0; i < nvars; ++i)
		e[i] = mono_exp(m, i);
	return e;
}

inline Mono mono_from_exps(const std::vector<int> &e)
{
	Mono m = 0;
	for (size_t i = 0; i < e.size(); ++i)
		m = mono_set(m, int(i), e[i]);
	return m;
}

/// Truncated multivariate polynomial ("jet") with exact coefficients, the
/// scalar ring of every tensor component in the engine.
///
/// `deg` is the reliable truncation degree: coefficients of total degree
/// > deg are unknown and never stored. kDegInf marks exactly-known values
/// (constants, coordinate polynomials); differentiation and multiplication
/// propagate reliability:
///   deg(a*b) = min(deg a + val b, deg b + val a),  deg(da) = deg a - 1.
class Jet
{
  public:
	int nvars = 1;
	int deg = kDegInf;
	Scalar::Mode mode = Scalar::Mode::Exact;
	std::vector<std::pair<Mono, Scalar>> terms; // sorted, zero-free, total <= deg

	Jet() = default;
	static Jet zero(int nvars, Scalar::Mode m = Scalar::Mode::Exact)
	{
		Jet j;
		j.nvars = nvars;
		j.mode = m;
		return j;
	}
	static Jet constant(int nvars, Scalar c)
	{
		Jet j = zero(nvars, c.mode());
		if (!c.is_zero())
			j.terms.emplace_back(mono_one(), std::move(c));
		return j;
	}
	static Jet variable(int nvars, int i, Scalar::Mode m = Scalar::Mode::Exact)
	{
		Jet j = zero(nvars, m);
		j.terms.emplace_back(mono_var(i), Scalar::one(m));
		return j;
	}

	bool is_zero() const { return terms.empty(); }
	bool is_constant() const
	{
		return terms.empty() || (terms.size() == 1 && terms[0].first == mono_one());
	}
	/// lowest total degree of a stored term (kDegInf for the zero jet)
	int val() const { return terms.empty() ? kDegInf : mono_total(terms[0].first); }

	Scalar coeff(Mono m) const
	{
		auto it = std::lower_bound(terms.begin(), terms.end(), m,
		                           [](const auto &t, Mono k) { return t.first < k; });
		if (it != terms.end() && it->first == m)
			return it->second;
		return Scalar::zero(mode);
	}
	Scalar constant_term() const { return coeff(mono_one()); }

	Jet zero_like() const { return zero(nvars, mode); }
	Jet one_like() const { return constant(nvars, Scalar::one(mode)); }

	void check_compat(const Jet &b) const
	{
		if (nvars != b.nvars)
			throw DimensionError("jet operands have different variable counts");
		if (mode != b.mode)
			throw ModeError("exact/float mode mixed in one computation");
	}
};

inline int deg_min(int a, int b) { return a < b ? a : b; }
inline int deg_add(int a, int b)
{
	long s = long(a) + long(b);
	return s >= kDegInf ? kDegInf : int(s);
}

inline Jet jet_truncate(Jet a, int d)
{
	if (d < 0)
		d = -1; // vacuous jet: nothing reliable
	a.deg = deg_min(a.deg, d);
	while (!a.terms.empty() && mono_total(a.terms.back().first) > a.deg)
		a.terms.pop_back();
	// terms are graded-sorted, so popping from the back is enough only for
	// the top block; do a full sweep to be safe against interior ordering
	std::erase_if(a.terms, [&](const auto &t) { return mono_total(t.first) > a.deg; });
	return a;
}

inline Jet jet_add(const Jet &a, const Jet &b)
{
	a.check_compat(b);
	Jet r = Jet::zero(a.nvars, a.mode);
	r.deg = deg_min(a.deg, b.deg);
	r.terms.reserve(a.terms.size() + b.terms.size());
	auto ia = a.terms.begin(), ib = b.terms.begin();
	while (ia != a.terms.end() || ib != b.terms.end()) {
		if (ib == b.terms.end() || (ia != a.terms.end() && ia->first < ib->first)) {
			if (mono_total(ia->first) <= r.deg)
				r.terms.push_back(*ia);
			++ia;
		} else if (ia == a.terms.end() || ib->first < ia->first) {
			if (mono_total(ib->first) <= r.deg)
				r.terms.push_back(*ib);
			++ib;
		} else {
			Scalar s = ia->second + ib->second;
			if (!s.is_zero() && mono_total(ia->first) <= r.deg)
				r.terms.emplace_back(ia->first, std::move(s));
			++ia;
			++ib;
		}
	}
	return r;
}

inline Jet jet_neg(Jet a)
{
	for (auto &t : a.terms)
		t.second = -t.second;
	return a;
}

inline Jet jet_sub(const Jet &a, const Jet &b) { return jet_add(a, jet_neg(b)); }

inline Jet jet_scale(Jet a, const Scalar &s)
{
	if (a.terms.empty())
		return a;
	if (a.mode != s.mode())
		throw ModeError("exact/float mode mixed in one computation");
	if (s.is_zero()) {
		a.terms.clear();
		return a;
	}
	for (auto &t : a.terms)
		t.second *= s;
	return a;
}

inline Jet jet_mul(const Jet &a, const Jet &b)
{
	a.check_compat(b);
	Jet r = Jet::zero(a.nvars, a.mode);
	// plain min keeps reliability route-independent: both sides of any
	// algebraic identity end up with the same reliable degree per entry
	r.deg = deg_min(a.deg, b.deg);
	if (a.terms.empty() || b.terms.empty())
		return r;
	std::map<Mono, Scalar> acc;
	for (const auto &[ma, ca] : a.terms) {
		int ta = mono_total(ma);
		if (ta > r.deg)
			break;
		for (const auto &[mb, cb] : b.terms) {
			if (ta + mono_total(mb) > r.deg)
				break;
			auto [it, fresh] = acc.try_emplace(mono_mul(ma, mb), Scalar::zero(a.mode));
			if (fresh)
				it->second = ca * cb;
			else
				it->second += ca * cb;
		}
	}
	r.terms.reserve(acc.size());
	for (auto &[m, c] : acc)
		if (!c.is_zero())
			r.terms.emplace_back(m, std::move(c));
	return r;
}

/// a += s*b, the accumulation primitive behind tensor contractions
inline void jet_acc(Jet &a, const Scalar &s, const Jet &b)
{
	if (b.terms.empty()) {
		a.deg = deg_min(a.deg, b.deg);
		return;
	}
	a = jet_add(a, jet_scale(b, s));
}

inline Jet jet_partial(const Jet &a, int i)
{
	if (i < 0 || i >= a.nvars)
		throw DimensionError("jet_partial: variable index out of range");
	Jet r = Jet::zero(a.nvars, a.mode);
	r.deg = a.deg == kDegInf ? kDegInf : a.deg - 1;
	for (const auto &[m, c] : a.terms) {
		int e = mono_exp(m, i);
		if (e == 0)
			continue;
		Mono md = mono_set(m, i, e - 1);
		if (mono_total(md) > r.deg)
			continue;
		Scalar s = a.mode == Scalar::Mode::Exact ? Scalar::exact(e) : Scalar::flt(e);
		r.terms.emplace_back(md, c * s);
	}
	std::sort(r.terms.begin(), r.terms.end(),
	          [](const auto &x, const auto &y) { return x.first < y.first; });
	return r;
}

inline Jet jet_pow(const Jet &a, int k)
{
	Jet r = a.one_like();
	for (int i = 0; i < k; ++i)
		r = jet_mul(r, a);
	return r;
}

/// multiplicative inverse up to the reliable degree; the constant term must
/// be a nonzero scalar
inline Jet jet_invert(const Jet &a)
{
	Scalar c0 = a.constant_term();
	if (c0.is_zero())
		throw NotAUnitError("jet_invert: zero constant term");
	if (a.is_constant())
		return Jet::constant(a.nvars, c0.inv());
	if (a.deg >= kDegInf)
		throw DegreeError("jet_invert: nonconstant jet with unbounded degree; truncate first");
	// 1/(c0 (1+u)) with val(u) >= 1: geometric series terminates at deg
	Scalar ic = c0.inv();
	Jet u = jet_scale(jet_sub(a, Jet::constant(a.nvars, c0)), ic);
	Jet r = a.one_like();
	r.deg = a.deg;
	Jet upow = r;
	int steps = a.deg;
	for (int k = 1; k <= steps; ++k) {
		upow = jet_mul(upow, u);
		if (upow.is_zero())
			break;
		r = jet_add(r, k % 2 ? jet_neg(upow) : upow);
	}
	r = jet_scale(r, ic);
	r.deg = a.deg;
	return r;
}

/// exp of a jet with zero constant term (terminates at the truncation degree)
inline Jet jet_exp(const Jet &a)
{
	if (!a.constant_term().is_zero())
		throw std::domain_error("jet_exp: nonzero constant term");
	if (a.deg >= kDegInf && !a.is_zero())
		throw DegreeError("jet_exp: truncate the exponent first");
	Jet r = a.one_like();
	r.deg = a.deg;
	Jet term = r;
	for (int k = 1; k <= a.deg && !term.is_zero(); ++k) {
		term = jet_mul(term, a);
		term = jet_scale(term, Scalar(Rational(1, k)));
		r = jet_add(r, term);
	}
	r.deg = a.deg;
	return r;
}

/// equality of the reliably-known parts (both truncated to the common degree)
inline bool jet_eq(const Jet &a, const Jet &b)
{
	a.check_compat(b);
	int d = deg_min(a.deg, b.deg);
	return jet_truncate(a, d).terms == jet_truncate(b, d).terms;
}

/// reliable degree of a ring element (kDegInf when exactly known)
inline int reldeg(const Jet &a) { return a.deg; }

/// degree that gates curvature computations (for series rings this looks at
/// the boundary metric itself, i.e. the order-0 coefficient)
inline int gate_reldeg(const Jet &a) { return a.deg; }

/// exactly known (no truncation): zero values of this kind may be skipped
/// in sums and products without losing reliability bounds
inline bool fully_known(const Jet &a) { return a.deg >= kDegInf; }

/// jet_eq in exact mode; coefficientwise tolerance in float mode
inline bool jet_near(const Jet &a, const Jet &b)
{
	a.check_compat(b);
	if (a.mode == Scalar::Mode::Exact)
		return jet_eq(a, b);
	int d = deg_min(a.deg, b.deg);
	Jet diff = jet_truncate(jet_sub(a, b), d);
	for (const auto &[m, c] : diff.terms)
		if (!c.near(Scalar::flt(0.0)))
			return false;
	return true;
}

/// re-embed into a ring with more variables, variable i -> i + shift
inline Jet jet_lift(const Jet &a, int new_nvars, int shift)
{
	Jet r = Jet::zero(new_nvars, a.mode);
	r.deg = a.deg;
	for (const auto &[m, c] : a.terms) {
		Mono mm = 0;
		for (int i = 0; i < a.nvars; ++i)
			mm = mono_set(mm, i + shift, mono_exp(m, i));
		r.terms.emplace_back(mm, c);
	}
	std::sort(r.terms.begin(), r.terms.end(),
	          [](const auto &x, const auto &y) { return x.first < y.first; });
	return r;
}

inline void require_degree(const Jet &a, int d, const char *what)
{
	if (a.deg < d)
		throw DegreeError(std::string(what) + ": jet degree " + std::to_string(a.deg) +
		                  " insufficient, need >= " + std::to_string(d));
}

} // namespace lovelock
