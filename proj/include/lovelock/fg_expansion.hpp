#pragma once

#include "lovelock/product_blocks.hpp"

#include <optional>

namespace lovelock {

/// response constants of the probe-built linear map at one solve order
/// (the coefficients of C(U), U and h0 C(U) in the located residual order)
struct SolveCert {
	int order = 0;
	Rational a, b, c;
};

/// Computed asymptotic expansion h ~ h0 + h2 x^2 + ... of the normal-form
/// metric x^{-2}(dx^2/kappa + h) solving the trace-modified Lovelock
/// equations order by order.
struct Expansion {
	int n = 0;
	Scalar kappa;
	Couplings couplings;
	int trunc = 0;
	std::vector<SymT2<Jet>> coeffs; // h_0 .. h_N
	Jet trace_hn;                   // forced zero for n odd
	SymT2<Jet> hn_free;             // installed trace-free data at order n (n odd)
	std::optional<SymT2<Jet>> obstruction;     // n even
	std::optional<OneForm<Jet>> obstruction_div; // its h0-divergence
	bool log_present = false;
	/// first order past n whose dx(x)dx trace equation could not be
	/// satisfied simultaneously (-1 when none): occurs exactly when the
	/// order-n data fails the divergence constraint of honest solutions
	int dxdx_defect_from = -1;
	std::vector<SolveCert> certs;

	ProductMetric<Jet> metric() const;
	ProductMetric<Jet> metric(int trunc_override) const;
};

/// boundary jet degree needed to determine coefficients through order N
int required_boundary_degree(int N);

/// Solve for h_1..h_N from h0. Unknowns are determined with nilpotent probes
/// against a trace/trace-free basis; the recursion's closed-form solve
/// coefficients are recorded as certificates. hn_tf supplies the free
/// trace-free data at order n when n is odd (default zero).
Expansion expand(const Metric<Jet> &h0, const Couplings &c, const Scalar &kappa, int N,
                 std::optional<SymT2<Jet>> hn_tf = std::nullopt);

struct ClosedForms {
	SymT2<Jet> h2, h4;
};

/// closed-form h2 and h4 (n >= 5); the recursion is the oracle they are
/// tested against
ClosedForms closed_forms(const Metric<Jet> &h0, const Couplings &c, const Scalar &kappa);

/// closed-form h2 alone (n >= 3): -P(h0)/kappa
SymT2<Jet> closed_form_h2(const Metric<Jet> &h0, const Scalar &kappa);

struct ObstructionResult {
	SymT2<Jet> tensor;
	OneForm<Jet> div_h0;
	Expansion expansion;
};

/// trace-free obstruction at order n-2 (n even, Lovelock beta), together
/// with its boundary divergence
ObstructionResult obstruction(const Metric<Jet> &h0, const Couplings &c, const Scalar &kappa);

} // namespace lovelock
