#include "pil/ffmatrix.hpp"

#include <string>

namespace pil {

void check_prime(std::uint32_t p) {
  if (p < 2) throw NotPrime("modulus " + std::to_string(p) + " is not prime");
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw NotPrime("modulus " + std::to_string(p) + " is not prime");
}

FFMatrix::FFMatrix(std::uint32_t p_, int r, int c) : p(p_), rows(r), cols(c) {
  check_prime(p_);
  if (r < 0 || c < 0) throw ShapeMismatch("negative matrix dimension");
  a.assign(static_cast<std::size_t>(r) * c, 0);
}

FFMatrix FFMatrix::identity(std::uint32_t p, int n) {
  FFMatrix m(p, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool FFMatrix::is_zero() const {
  for (auto v : a)
    if (v != 0) return false;
  return true;
}

FFMatrix FFMatrix::transpose() const {
  FFMatrix t(p, cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

namespace {

void check_same_modulus(const FFMatrix& A, const FFMatrix& B) {
  if (A.p != B.p)
    throw ModulusMismatch("matrix moduli differ: " + std::to_string(A.p) + " vs " +
                          std::to_string(B.p));
}

std::uint32_t inv_mod(std::uint32_t x, std::uint32_t p) {
  // Fermat: x^(p-2) mod p; p prime, x != 0.
  std::uint64_t base = x % p, result = 1;
  std::uint32_t e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

// Row-reduce M in place; returns pivot column per pivot row. When track is
// non-null it receives the same row operations (starts as identity to record
// the transform E with E·M_original = M_reduced).
std::vector<int> row_reduce(FFMatrix& M, FFMatrix* track) {
  const std::uint32_t p = M.p;
  std::vector<int> pivot_cols;
  int r = 0;
  for (int c = 0; c < M.cols && r < M.rows; ++c) {
    int pr = -1;
    for (int i = r; i < M.rows; ++i)
      if (M.at(i, c) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r) {
      for (int j = 0; j < M.cols; ++j) std::swap(M.at(pr, j), M.at(r, j));
      if (track)
        for (int j = 0; j < track->cols; ++j) std::swap(track->at(pr, j), track->at(r, j));
    }
    std::uint32_t inv = inv_mod(M.at(r, c), p);
    for (int j = 0; j < M.cols; ++j)
      M.at(r, j) = static_cast<std::uint32_t>(static_cast<std::uint64_t>(M.at(r, j)) * inv % p);
    if (track)
      for (int j = 0; j < track->cols; ++j)
        track->at(r, j) =
            static_cast<std::uint32_t>(static_cast<std::uint64_t>(track->at(r, j)) * inv % p);
    for (int i = 0; i < M.rows; ++i) {
      if (i == r || M.at(i, c) == 0) continue;
      std::uint32_t f = M.at(i, c);
      for (int j = 0; j < M.cols; ++j) {
        std::uint64_t sub = static_cast<std::uint64_t>(f) * M.at(r, j) % p;
        M.at(i, j) = static_cast<std::uint32_t>((M.at(i, j) + p - sub) % p);
      }
      if (track)
        for (int j = 0; j < track->cols; ++j) {
          std::uint64_t sub = static_cast<std::uint64_t>(f) * track->at(r, j) % p;
          track->at(i, j) = static_cast<std::uint32_t>((track->at(i, j) + p - sub) % p);
        }
    }
    pivot_cols.push_back(c);
    ++r;
  }
  return pivot_cols;
}

}  // namespace

FFMatrix matmul(const FFMatrix& A, const FFMatrix& B) {
  check_same_modulus(A, B);
  if (A.cols != B.rows)
    throw ShapeMismatch("matmul: " + std::to_string(A.rows) + "x" + std::to_string(A.cols) +
                        " times " + std::to_string(B.rows) + "x" + std::to_string(B.cols));
  FFMatrix C(A.p, A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      std::uint64_t aik = A.at(i, k);
      if (!aik) continue;
      for (int j = 0; j < B.cols; ++j)
        C.at(i, j) = static_cast<std::uint32_t>((C.at(i, j) + aik * B.at(k, j)) % A.p);
    }
  return C;
}

FFMatrix add(const FFMatrix& A, const FFMatrix& B) {
  check_same_modulus(A, B);
  if (A.rows != B.rows || A.cols != B.cols) throw ShapeMismatch("add: shapes differ");
  FFMatrix C = A;
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = (C.a[i] + B.a[i]) % A.p;
  return C;
}

FFMatrix sub(const FFMatrix& A, const FFMatrix& B) {
  check_same_modulus(A, B);
  if (A.rows != B.rows || A.cols != B.cols) throw ShapeMismatch("sub: shapes differ");
  FFMatrix C = A;
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = (C.a[i] + A.p - B.a[i]) % A.p;
  return C;
}

FFMatrix scale(const FFMatrix& A, std::uint32_t c) {
  FFMatrix C = A;
  c %= A.p;
  for (auto& v : C.a) v = static_cast<std::uint32_t>(static_cast<std::uint64_t>(v) * c % A.p);
  return C;
}

int rank(const FFMatrix& A) {
  FFMatrix M = A;
  return static_cast<int>(row_reduce(M, nullptr).size());
}

std::optional<std::vector<std::uint32_t>> solve(const FFMatrix& A,
                                                const std::vector<std::uint32_t>& b) {
  if (static_cast<int>(b.size()) != A.rows) throw ShapeMismatch("solve: rhs length");
  FFMatrix B(A.p, A.rows, 1);
  for (int i = 0; i < A.rows; ++i) B.at(i, 0) = b[i] % A.p;
  auto X = solve_matrix(A, B);
  if (!X) return std::nullopt;
  std::vector<std::uint32_t> x(A.cols);
  for (int i = 0; i < A.cols; ++i) x[i] = X->at(i, 0);
  return x;
}

std::optional<FFMatrix> solve_matrix(const FFMatrix& A, const FFMatrix& B) {
  check_same_modulus(A, B);
  if (A.rows != B.rows) throw ShapeMismatch("solve_matrix: row counts differ");
  FFMatrix M = hstack(A, B);
  auto pivots = row_reduce(M, nullptr);
  // Inconsistent iff a pivot lands in the B block.
  FFMatrix X(A.p, A.cols, B.cols);
  std::size_t k = 0;
  for (int c : pivots) {
    if (c >= A.cols) return std::nullopt;
    ++k;
  }
  // Particular solution: free variables 0, pivot variables read off.
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (int j = 0; j < B.cols; ++j) X.at(pivots[r], j) = M.at(static_cast<int>(r), A.cols + j);
  (void)k;
  return X;
}

std::optional<FFMatrix> solve_left(const FFMatrix& A, const FFMatrix& B) {
  // X·A = B  ⇔  Aᵀ·Xᵀ = Bᵀ.
  auto Xt = solve_matrix(A.transpose(), B.transpose());
  if (!Xt) return std::nullopt;
  return Xt->transpose();
}

FFMatrix kernel_basis(const FFMatrix& A) {
  FFMatrix M = A;
  auto pivots = row_reduce(M, nullptr);
  std::vector<bool> is_pivot(A.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < A.cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  FFMatrix K(A.p, A.cols, static_cast<int>(free_cols.size()));
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    int fc = free_cols[j];
    K.at(fc, static_cast<int>(j)) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      std::uint32_t v = M.at(static_cast<int>(r), fc);
      if (v) K.at(pivots[r], static_cast<int>(j)) = A.p - v;
    }
  }
  return K;
}

Cokernel cokernel(const FFMatrix& A) {
  // E·A = R in reduced form; the zero rows of R give E-rows annihilating im(A).
  FFMatrix M = A;
  FFMatrix E = FFMatrix::identity(A.p, A.rows);
  auto pivots = row_reduce(M, &E);
  int r = static_cast<int>(pivots.size());
  Cokernel ck;
  ck.dim = A.rows - r;
  ck.Q = FFMatrix(A.p, ck.dim, A.rows);
  for (int i = 0; i < ck.dim; ++i)
    for (int j = 0; j < A.rows; ++j) ck.Q.at(i, j) = E.at(r + i, j);
  return ck;
}

bool is_invertible(const FFMatrix& A) {
  return A.rows == A.cols && rank(A) == A.rows;
}

std::optional<FFMatrix> inverse(const FFMatrix& A) {
  if (A.rows != A.cols) return std::nullopt;
  return solve_matrix(A, FFMatrix::identity(A.p, A.rows));
}

FFMatrix hstack(const FFMatrix& A, const FFMatrix& B) {
  check_same_modulus(A, B);
  if (A.rows != B.rows) throw ShapeMismatch("hstack: row counts differ");
  FFMatrix C(A.p, A.rows, A.cols + B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
    for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
  }
  return C;
}

FFMatrix vstack(const FFMatrix& A, const FFMatrix& B) {
  check_same_modulus(A, B);
  if (A.cols != B.cols) throw ShapeMismatch("vstack: column counts differ");
  FFMatrix C(A.p, A.rows + B.rows, A.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
  for (int i = 0; i < B.rows; ++i)
    for (int j = 0; j < A.cols; ++j) C.at(A.rows + i, j) = B.at(i, j);
  return C;
}

std::vector<std::uint32_t> vec(const FFMatrix& A) { return A.a; }

}  // namespace pil
