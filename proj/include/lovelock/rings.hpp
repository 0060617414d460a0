#pragma once

#include "lovelock/jet.hpp"

namespace lovelock {

// Uniform ring vocabulary. Every coefficient ring used by the tensor layer
// (Jet, Dual<R>, XSer<R>) provides these free functions so double forms,
// curvature and the product-gauge blocks can be written once.

inline Jet add(const Jet &a, const Jet &b) { return jet_add(a, b); }
inline Jet sub(const Jet &a, const Jet &b) { return jet_sub(a, b); }
inline Jet neg(const Jet &a) { return jet_neg(a); }
inline Jet mul(const Jet &a, const Jet &b) { return jet_mul(a, b); }
inline Jet scale(const Jet &a, const Scalar &s) { return jet_scale(a, s); }
inline Jet invert(const Jet &a) { return jet_invert(a); }
inline Jet pvar(const Jet &a, int i) { return jet_partial(a, i); }
inline bool is_zero(const Jet &a) { return a.is_zero(); }
inline bool is_unit(const Jet &a) { return !a.constant_term().is_zero(); }
inline Scalar::Mode smode(const Jet &a) { return a.mode; }
inline Jet zero_like(const Jet &a) { return a.zero_like(); }
inline Jet one_like(const Jet &a) { return a.one_like(); }
inline bool ring_eq(const Jet &a, const Jet &b) { return jet_eq(a, b); }

inline Scalar make_scalar(const Rational &q, Scalar::Mode m)
{
	return m == Scalar::Mode::Exact ? Scalar(q) : Scalar::flt(q.get_d());
}

template <class R> R scale_rat(const R &a, const Rational &q)
{
	return scale(a, make_scalar(q, smode(a)));
}

/// ADL dispatchers usable inside class templates defined before the
/// concrete ring overloads exist
template <class R> bool is_zero_el(const R &r) { return is_zero(r); }
template <class R> int reldeg_el(const R &r) { return reldeg(r); }
template <class R> bool fully_known_el(const R &r) { return fully_known(r); }
/// an element that is zero AND exactly known contributes nothing to values
/// or to reliability bookkeeping; only these may be skipped
template <class R> bool skippable(const R &r) { return is_zero(r) && fully_known(r); }

template <class R> void acc(R &a, const R &b) { a = add(a, b); }
template <class R> void acc_scaled(R &a, const Scalar &s, const R &b)
{
	a = add(a, scale(b, s));
}

} // namespace lovelock
