#pragma once

#include "lovelock/curvature.hpp"

#include <cstdint>

namespace lovelock::presets {

/// |y|^2 as an exactly-known jet
Jet sq_norm(int m);

/// Euclidean metric (exactly known; curvature zero)
Metric<Jet> flat(int m);

/// Poincare ball jet 4 delta / (1-|y|^2)^2: sectional curvature -1
Metric<Jet> poincare_ball(int m, int deg);

/// stereographic round-sphere jet 4 delta / (1 + c |y|^2)^2: curvature c > 0
Metric<Jet> round_sphere(int m, int deg, const Rational &curvature = Rational(1));

/// e^{2 phi} delta for a jet phi with zero constant term
Metric<Jet> conformally_flat(int m, int deg, const Jet &phi);

/// deterministic pseudo-random conformal exponent with zero constant term
Jet random_phi(uint64_t seed, int m, int deg, int nterms = 4);

/// identity + small sparse rational perturbation, positive at the base point
Metric<Jet> random_metric(uint64_t seed, int m, int deg, int terms_per_entry = 2);

/// block product of a random n-dimensional factor with a flat k-torus
Metric<Jet> product_with_torus(uint64_t seed, int n_factor, int torus_k, int deg);

/// random symmetric 2-tensor of jets
SymT2<Jet> random_sym2(uint64_t seed, int m, int deg, int terms_per_entry = 2);

/// random one-form of jets
OneForm<Jet> random_one_form(uint64_t seed, int m, int deg, int terms_per_entry = 2);

/// random scalar jet
Jet random_jet(uint64_t seed, int m, int deg, int nterms = 4);

} // namespace lovelock::presets
