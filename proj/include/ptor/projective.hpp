#pragma once

#include "ptor/tensor.hpp"

namespace ptor {

/// A projective class stored through one torsion-free representative.
struct ProjectiveStructure {
  ConnectionField rep;
};

/// conn + ι(Υ): the projectively equivalent representative.
ConnectionField add_iota(const ConnectionField& conn,
                         const OneFormField& upsilon);

/// X^i = c·g^{jk}(∇−∇^g)₀^i_{jk} with c = (n+1)/((n+2)(n−1)); surface case.
VectorField x_g(const ConnectionField& conn, const MetricField& g);

/// Pointwise variant in dimension diff.dim: diff = ∇ − ∇^g at one point,
/// metric given as a dense row-major dim×dim matrix.
std::vector<double> x_g_point(const PointTensor& diff,
                              const std::vector<double>& metric);

/// A_[g] = (∇ − ∇^g − g⊗X_g)₀.
EndoOneForm a_form(const ProjectiveStructure& p, const MetricField& g);

struct CanonicalPair {
  ConnectionField conformal_rep;
  ConnectionField projective_rep;
};

/// The unique [g]-conformal connection with p.rep − (conformal_rep + A) pure
/// trace, together with projective_rep = conformal_rep + A_[g].
CanonicalPair canonical_pair(const ProjectiveStructure& p,
                             const MetricField& g);

/// |A|²_g = g_{il}g^{jm}g^{kp}A^i_{jk}A^l_{mp}.
ScalarField a_norm_squared(const EndoOneForm& a, const MetricField& g);

/// |A_[g]|²_g·√det g relative to dx¹∧dx².
ScalarField energy_density(const ProjectiveStructure& p, const MetricField& g);

double energy(const ProjectiveStructure& p, const MetricField& g);
double energy(const ProjectiveStructure& p, const ConformalStructure& m);

}  // namespace ptor
