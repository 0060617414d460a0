#pragma once

#include "lovelock/fg_expansion.hpp"
#include "lovelock/verify.hpp"

#include <json.hpp>

namespace lovelock {

using nlohmann::json;

// Rationals serialize as "p/q" in lowest terms ("-" on the numerator,
// plain "p" for integers); multi-indices as arrays of non-negative
// integers; term order is graded-lex throughout.

json scalar_to_json(const Scalar &s);
Scalar scalar_from_json(const json &j, Scalar::Mode mode);

json jet_to_json(const Jet &a);
Jet jet_from_json(const json &j, Scalar::Mode mode);

json sym2_to_json(const SymT2<Jet> &t);
SymT2<Jet> sym2_from_json(const json &j, Scalar::Mode mode);

json oneform_to_json(const OneForm<Jet> &w);

json dform_to_json(const DForm<Jet> &f);
DForm<Jet> dform_from_json(const json &j, Scalar::Mode mode);

json couplings_to_json(const Couplings &c);
Couplings couplings_from_json(const json &j);

json kappa_root_to_json(const KappaRoot &r);

json expansion_to_json(const Expansion &e);
Expansion expansion_from_json(const json &j);

json residual_report_to_json(const ResidualReport &r);

/// decimal rendering of every rational for human skimming; stored values
/// are unchanged
json float_render(const json &j);

} // namespace lovelock
