// JSON forms of the domain objects (complex numbers as "a+bi" strings,
// polynomials as coefficient-string arrays ascending by degree).
#pragma once

#include "core/cpoly.hpp"
#include "core/diff_operator.hpp"
#include "core/jsonio.hpp"
#include "core/nevanlinna.hpp"
#include "core/ratpoly.hpp"
#include "core/ratsolve.hpp"
#include "core/sharing.hpp"
#include "core/solution.hpp"

namespace merodiff {

Json complex_json(Cplx z);
Cplx complex_from_json(const Json& j);

Json ratpoly_json(const RatPoly& p);
RatPoly ratpoly_from_json(const Json& j);

Json cpoly_json(const ComplexPoly& p);
ComplexPoly cpoly_from_json(const Json& j);

// {"shift": "c", "coeffs": ["a0", ...]}
Json operator_json(const LinearDifferenceOperator& op);
LinearDifferenceOperator operator_from_json(const Json& j);

// {"coeffs": [[...], ...] ascending shift, "rhs": [...], "step": "1"}
Json recurrence_json(const PolynomialRecurrence& rec);
PolynomialRecurrence recurrence_from_json(const Json& j);

Json atom_json(const PeriodicAtom& atom);
PeriodicAtom atom_from_json(const Json& j, Cplx period);

Json root_set_json(const RootSet& rs);
Json solution_json(const GeneralSolution& gs);
Json residual_json_obj(const ResidualReport& rep);
Json nevanlinna_json_obj(const NevanlinnaReport& rep);
Json sharing_json(const SharingVerdict& v);
Json certificate_json(const SubstitutionCertificate& cert);
Json rational_solutions_json(const RationalSolutionSet& s);

}  // namespace merodiff
