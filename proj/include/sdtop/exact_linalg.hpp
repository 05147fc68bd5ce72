#ifndef SDTOP_EXACT_LINALG_HPP
#define SDTOP_EXACT_LINALG_HPP

#include <vector>

#include "sdtop/rational.hpp"

namespace sdtop {

using IntMat = std::vector<std::vector<long long>>;
using RatMat = std::vector<std::vector<Rat>>;
using RatVec = std::vector<Rat>;
using Poly = std::vector<Rat>;  // coefficient i of X^i

IntMat int_mat_mul(const IntMat& a, const IntMat& b);
IntMat int_identity(int n);
bool int_mat_eq(const IntMat& a, const IntMat& b);
IntMat int_transpose(const IntMat& a);

long long binomial(int n, int k);

/// Basis of the kernel of a rational matrix (exact Gaussian elimination).
std::vector<RatVec> rat_kernel(RatMat a);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Rat& c);
bool poly_eq(const Poly& a, const Poly& b);
Rat poly_eval(const Poly& a, const Rat& x);
/// (X - 1)^m expanded.
Poly poly_x_minus_one_pow(int m);

}  // namespace sdtop

#endif  // SDTOP_EXACT_LINALG_HPP
