#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pil/errors.hpp"

namespace pil {

// Dense matrix over the prime field F_p. All entries kept reduced in [0, p).
// Dimensions in this project stay small (well under a few hundred), so plain
// Gaussian elimination is the right tool: exact and simple.
struct FFMatrix {
  std::uint32_t p = 2;
  int rows = 0;
  int cols = 0;
  std::vector<std::uint32_t> a;  // row-major

  FFMatrix() = default;
  FFMatrix(std::uint32_t p_, int r, int c);

  static FFMatrix identity(std::uint32_t p, int n);

  std::uint32_t& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  std::uint32_t at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  bool operator==(const FFMatrix& o) const {
    return p == o.p && rows == o.rows && cols == o.cols && a == o.a;
  }
  bool operator!=(const FFMatrix& o) const { return !(*this == o); }

  bool is_zero() const;
  FFMatrix transpose() const;
};

void check_prime(std::uint32_t p);

FFMatrix matmul(const FFMatrix& A, const FFMatrix& B);
FFMatrix add(const FFMatrix& A, const FFMatrix& B);
FFMatrix sub(const FFMatrix& A, const FFMatrix& B);
FFMatrix scale(const FFMatrix& A, std::uint32_t c);

int rank(const FFMatrix& A);

// Any solution x of A·x = b, or nullopt when inconsistent.
std::optional<std::vector<std::uint32_t>> solve(const FFMatrix& A,
                                                const std::vector<std::uint32_t>& b);

// Any solution X of A·X = B (columnwise), or nullopt.
std::optional<FFMatrix> solve_matrix(const FFMatrix& A, const FFMatrix& B);

// Any solution X of X·A = B; nullopt when inconsistent.
std::optional<FFMatrix> solve_left(const FFMatrix& A, const FFMatrix& B);

// Columns form a basis of {x : A·x = 0}; shape cols(A) × nullity.
FFMatrix kernel_basis(const FFMatrix& A);

// Cokernel of A : F^cols → F^rows. dim = rows − rank; Q is dim × rows with
// Q·A = 0 and rank(Q) = dim, and ker(Q) = im(A).
struct Cokernel {
  int dim = 0;
  FFMatrix Q;
};
Cokernel cokernel(const FFMatrix& A);

bool is_invertible(const FFMatrix& A);
std::optional<FFMatrix> inverse(const FFMatrix& A);

// Stack blocks: hstack [A | B], vstack [A ; B].
FFMatrix hstack(const FFMatrix& A, const FFMatrix& B);
FFMatrix vstack(const FFMatrix& A, const FFMatrix& B);

// Flatten row-major into a single column vector (for building linear systems
// whose unknowns are matrix entries).
std::vector<std::uint32_t> vec(const FFMatrix& A);

}  // namespace pil
