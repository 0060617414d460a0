#pragma once

#include "lovelock/fg_expansion.hpp"
#include "lovelock/gauge.hpp"

#include <string>

namespace lovelock {

/// exponent-offset series: value = x^off * s
struct OffSer {
	int off = 0;
	XSer<Jet> s;
};

OffSer off_add(const OffSer &a, const OffSer &b);
OffSer off_scale(const OffSer &a, const Scalar &v);
OffSer off_mul_series(const OffSer &a, const XSer<Jet> &f);
OffSer off_ddx(const OffSer &a);
OffSer off_xpow(const OffSer &a, int j); // multiply by x^j (j may be negative)
bool off_eq_through(const OffSer &a, const OffSer &b, int order_from_off);

/// product-gauge curvature blocks evaluated pointwise at x0 against the
/// generic curvature of the full (n+1)-variable metric jet: exact equality
struct CrossCheckResult {
	bool ok = false;
	bool dxdx_ok = false, mixed_ok = false, tangential_ok = false;
};
CrossCheckResult generic_cross_check(const ProductMetric<Jet> &pm, const Rational &x0);

/// the contracted-Bianchi divergence identity of the product gauge, checked
/// termwise on arbitrary (non-solution) inputs; requires the Lovelock trace
/// combination
struct DivergenceCheck {
	bool component_normal = false;     // the u = 0 display
	bool component_tangential = false; // the u = l display
	int through = -1;                  // series order both were verified to
	bool ok() const { return component_normal && component_tangential; }
};
DivergenceCheck divergence_identity(const ProductMetric<Jet> &pm, const Couplings &c);

/// r = u g0 + r0 with C_{g0}(r0) = 0
struct SplitTrace {
	Jet u;
	SymT2<Jet> r0;
};
SplitTrace split_trace(const Metric<Jet> &g0, const SymT2<Jet> &r);

GaugePair<Jet> gauge_q_phi(const Metric<Jet> &g, const Metric<Jet> &t, const Couplings &c);

/// linearization checks at a hyperbolic metric: left side is always the
/// nilpotent-probe derivative, right side the displayed closed formula
enum class LinKind { Ric, Scal, Einstein, QPure, QMixed };

struct LinCheckResult {
	bool ok = false;
	SymT2<Jet> lhs, rhs;
};
LinCheckResult lin_check(const Metric<Jet> &g0, const SymT2<Jet> &r, const Couplings &c,
                         LinKind kind, int q = 1);

/// residual orders of a computed expansion, per block
struct BlockReport {
	std::string name;
	int offset = -2;
	int trunc = 0;            // reliable series order of the recomputed block
	int verified_through = -1; // highest series order with usable jets
	int first_nonzero = -1;   // lowest series order with a nonzero reliable
	                          // coefficient, or -1 when clean through trunc
	std::string leading_abs;  // largest |coefficient| at first_nonzero
};

struct ResidualReport {
	int n = 0;
	int trunc = 0;
	bool log_present = false;
	BlockReport dxdx, mixed, tangential;
};

ResidualReport residual_report(const Expansion &e);

} // namespace lovelock
