#pragma once

// JSON forms of the public objects. Key order is fixed by nlohmann's sorted
// object map, so dumps are byte-stable.

#include <json.hpp>

#include "mtcircle/eisen.hpp"
#include "mtcircle/modsym.hpp"
#include "mtcircle/ssgraph.hpp"
#include "mtcircle/theorems.hpp"

namespace mtc {

using json = nlohmann::json;

json to_json(const ZMat& a);
ZMat zmat_from_json(const json& j);

// {"p", "qnr", "S": [[c0, c1], ...], "weights"}
json to_json(const SupersingularSet& S);
SupersingularSet supersingular_from_json(const json& j);

// {"modulus", "mat"}
json to_json(const LMatrix& L);
json to_json(const BrandtMatrix& B);
json to_json(const HeckePolynomial& P);

json to_json(const ManinSpace& space);
ManinSpace presentation_from_json(const json& j);

// Dimensions, subspace ranks, filtration orders and operator checks.
json homology_json(const Circle& c);

// {"p", "ell", "s", "alpha", "stabilized", "merel_sum", "i2_eq_i3"} plus the
// cross-check fields.
json to_json(const AlphaReport& a);

json to_json(const VerificationReport& r, bool with_timing = false);

}  // namespace mtc
