#ifndef LOGFORMS_LOGFORMS_HPP
#define LOGFORMS_LOGFORMS_HPP

/// Umbrella header: exact logarithmic differential one-forms on P^n, the
/// parametrizing map mu and its derivative, base-locus enumeration, the
/// second-stratum ideal, and desk-scale stability certificates.

#include "logforms/baselocus.hpp"
#include "logforms/fields.hpp"
#include "logforms/form.hpp"
#include "logforms/generate.hpp"
#include "logforms/json_io.hpp"
#include "logforms/logarithmic.hpp"
#include "logforms/matrix.hpp"
#include "logforms/monomial.hpp"
#include "logforms/polynomial.hpp"
#include "logforms/rng.hpp"
#include "logforms/singular.hpp"
#include "logforms/tangent.hpp"

#endif  // LOGFORMS_LOGFORMS_HPP
