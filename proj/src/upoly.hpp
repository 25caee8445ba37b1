#pragma once

#include <gmpxx.h>

#include <vector>

// Dense univariate integer polynomials and their factorization over Z.
// Internal to the library; coefficient vectors are ascending by degree with
// no trailing zeros, so the zero polynomial is empty.

namespace logstrat::detail {

using ZPoly = std::vector<mpz_class>;

void trim(ZPoly& f);
long degree(const ZPoly& f);

ZPoly mul(const ZPoly& a, const ZPoly& b);

// Quotient when b divides a exactly over Z.
bool divides_exactly(const ZPoly& a, const ZPoly& b, ZPoly* quotient);

// f must be primitive, square-free, of positive degree, with positive leading
// coefficient. Returns its irreducible factors over Z, each primitive with
// positive leading coefficient, sorted by degree and then coefficients.
std::vector<ZPoly> factor_squarefree(const ZPoly& f);

}  // namespace logstrat::detail
