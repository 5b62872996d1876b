#pragma once

// Cohomology of line bundles on P1 x P1 in the Cech (Laurent monomial) model.
//
//   H^0(O(a,b)): z0^i z1^j w0^k w1^l with all exponents >= 0
//   H^1(O(a,b)): z-part >= 0 and w-part <= -1, or z-part <= -1 and w-part >= 0
//   H^2(O(a,b)): all exponents <= -1
//
// with i + j = a and k + l = b. A polynomial acts by exponent addition; a
// product that leaves the sign pattern of the target is zero in cohomology.
//
// Basis order: z-part outer, w-part inner, each with the exponent of the
// first variable descending. H^1 lists the (+,-) block before the (-,+) block.

#include <optional>
#include <vector>

#include "natcoh/bigraded.hpp"
#include "natcoh/linalg.hpp"
#include "natcoh/sheaf_map.hpp"

namespace natcoh {

/// h^i(O(a,b)) for i in {0,1,2}; 0 for any other i.
long long coh_dim(int i, Bidegree d);

/// Sum of h^i over the summands of s.
long long coh_dim(int i, const LineBundleSum& s);

struct CohBasis {
    Bidegree twist;
    int degree = 0;
    std::vector<Monomial> basis;
};

CohBasis coh_basis(int i, Bidegree d);

/// Position of m in coh_basis(i, d), or nullopt if m does not have the
/// bidegree or sign pattern of that basis (it is zero in H^i).
std::optional<std::size_t> coh_basis_index(int i, Bidegree d, const Monomial& m);

struct InducedMap {
    int degree = 0;
    Bidegree twist;
    /// Rows index H^i(target(t)), columns H^i(source(t)), summand blocks in order.
    ExactMatrix matrix;
};

/// Matrix of H^i(phi(t)).
InducedMap induced_map(const SheafMap& phi, int i, Bidegree t);

}  // namespace natcoh
