#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lefloc/ratfun.hpp"

namespace lefloc {

// Dense exact-rational matrix, row-major.
struct MatQ {
    std::size_t rows = 0, cols = 0;
    std::vector<Rat> a;

    MatQ() = default;
    MatQ(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    static MatQ identity(std::size_t n) {
        MatQ m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    Rat& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool operator==(const MatQ&) const = default;
};

MatQ mat_mul(const MatQ& x, const MatQ& y);
MatQ mat_add(const MatQ& x, const MatQ& y);
MatQ mat_transpose(const MatQ& x);
bool mat_is_zero(const MatQ& x);
Rat mat_trace(const MatQ& x);

// Exact Gauss-Jordan reduction in place; returns the pivot columns.
std::vector<std::size_t> mat_rref(MatQ& m);
std::size_t mat_rank(MatQ m);
// Columns form a basis of { x : m x = 0 }.
MatQ mat_nullspace(const MatQ& m);
// Unique solution of A x = rhs for full-column-rank A; nullopt if inconsistent.
std::optional<std::vector<Rat>> mat_solve(const MatQ& A, const std::vector<Rat>& rhs);

// A cochain complex 0 -> H_0 -> H_1 -> ... -> H_N -> 0 of finite-dimensional
// spaces with exact-rational differentials P_k : H_k -> H_{k+1}.
struct FiniteComplex {
    std::vector<int> dims;
    std::vector<MatQ> differentials;
};

// Degree-preserving maps T_k : H_k -> H_k intertwining the differentials.
struct ComplexEndomorphism {
    std::vector<MatQ> maps;
};

// Shape checks throw; returns whether P.P == 0 and P.T == T.P hold exactly.
bool validate(const FiniteComplex& c, const ComplexEndomorphism& t);

// dim ker(P_k) - rank(P_{k-1}) per degree.
std::vector<int> cohomology_dims(const FiniteComplex& c);

// sum_k b^k tr( map induced by T_k on ker P_k / im P_{k-1} ), all exact.
BSeries lefschetz_poly(const FiniteComplex& c, const ComplexEndomorphism& t);

// sum_k b^k Tr( T_k e^{-time Delta_k} ) with Delta_k = P_k^T P_k + P_{k-1} P_{k-1}^T,
// assembled exactly, diagonalized by cyclic Jacobi rotations.
double heat_supertrace(const FiniteComplex& c, const ComplexEndomorphism& t,
                       double time, double b);

// The positive spectra of P_k^T P_k and P_k P_k^T agree within 1e-9 per k.
bool supersymmetry_check(const FiniteComplex& c);

// Graded tensor product with Koszul-sign differential and T1 (x) T2.
std::pair<FiniteComplex, ComplexEndomorphism> tensor_product(
    const FiniteComplex& c1, const ComplexEndomorphism& t1,
    const FiniteComplex& c2, const ComplexEndomorphism& t2);

// Product supertrace == product of factor supertraces (1e-8) and product
// Lefschetz polynomial == graded product of factor polynomials (exact).
bool kunneth_check(const FiniteComplex& c1, const ComplexEndomorphism& t1,
                   const FiniteComplex& c2, const ComplexEndomorphism& t2,
                   double b, double time);

// Transposed differentials on the reversed grading; adjoint endomorphism.
std::pair<FiniteComplex, ComplexEndomorphism> dual_pair(
    const FiniteComplex& c, const ComplexEndomorphism& t);

// L(P, T) == (-1)^N L(P*, T*), both sides exact.
bool duality_check(const FiniteComplex& c, const ComplexEndomorphism& t);

}  // namespace lefloc
