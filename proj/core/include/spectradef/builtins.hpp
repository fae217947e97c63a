#pragma once

#include "spectradef/model.hpp"

namespace spectradef {

/// Iwasawa manifold: d phi3 = -phi1^phi2 and its conjugate.
ModelSpec iwasawa_spec();
/// Nakamura-type solvmanifold in the adapted coframe. k must be nonzero;
/// the structure constant C + conj(C) - 2i equals -2i for every k.
/// Carries an explicit admissible basis (see the "basis_notes" entry).
ModelSpec nakamura_spec(long k = 1);
/// Complex torus of dimension n: all structure equations vanish.
ModelSpec abelian_spec(int n);

Model iwasawa();
Model nakamura(long k = 1);
Model abelian(int n);

}  // namespace spectradef
