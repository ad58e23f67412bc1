#pragma once

// Exact arithmetic and linear algebra over the chain rings Z/p^k.
//
// Matrices act on row vectors: a map R^m -> R^n is an m x n matrix and
// x |-> x * A. Every routine here is exact; there are no tolerances.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace profmod {

using Elem = std::uint64_t;
using Vec = std::vector<Elem>;

bool is_prime(std::uint64_t n);

class ChainRing {
 public:
  // Throws InvalidArgument unless p is prime, k >= 1 and p^k < 2^62.
  ChainRing(std::uint64_t p, unsigned k = 1);

  std::uint64_t p() const noexcept { return p_; }
  unsigned k() const noexcept { return k_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  bool is_field() const noexcept { return k_ == 1; }

  // Global dimension of the ring: 0 for a field, none (infinite) otherwise.
  std::optional<unsigned> global_dimension() const {
    return is_field() ? std::optional<unsigned>(0) : std::nullopt;
  }

  Elem reduce(std::int64_t v) const noexcept;
  Elem add(Elem a, Elem b) const noexcept {
    Elem s = a + b;
    return s >= modulus_ ? s - modulus_ : s;
  }
  Elem sub(Elem a, Elem b) const noexcept {
    return a >= b ? a - b : a + modulus_ - b;
  }
  Elem neg(Elem a) const noexcept { return a == 0 ? 0 : modulus_ - a; }
  Elem mul(Elem a, Elem b) const noexcept {
    if (small_) return (a * b) % modulus_;
    return static_cast<Elem>(static_cast<unsigned __int128>(a) * b % modulus_);
  }

  // Largest v <= k with p^v | a; valuation(0) == k.
  unsigned valuation(Elem a) const noexcept;
  // p^v as a canonical representative (0 when v >= k).
  Elem p_power(unsigned v) const noexcept;
  bool is_unit(Elem a) const noexcept { return a % p_ != 0; }
  Elem inverse(Elem unit) const;

  std::string name() const;

  friend bool operator==(const ChainRing& a, const ChainRing& b) {
    return a.p_ == b.p_ && a.k_ == b.k_;
  }

 private:
  std::uint64_t p_;
  unsigned k_;
  std::uint64_t modulus_;
  bool small_;
};

class Mat {
 public:
  Mat(const ChainRing& ring, std::size_t rows, std::size_t cols);

  static Mat identity(const ChainRing& ring, std::size_t n);
  static Mat from_rows(const ChainRing& ring,
                       const std::vector<std::vector<std::int64_t>>& rows,
                       std::size_t cols_if_empty = 0);
  static Mat from_vectors(const ChainRing& ring, std::size_t cols,
                          const std::vector<Vec>& rows);
  static Mat row_vector(const ChainRing& ring, std::span<const Elem> v);

  const ChainRing& ring() const noexcept { return ring_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Elem operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }
  Elem& at(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, std::int64_t v) {
    data_[i * cols_ + j] = ring_.reduce(v);
  }

  std::span<const Elem> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<Elem> row(std::size_t i) noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  Vec row_vec(std::size_t i) const { return {row(i).begin(), row(i).end()}; }
  const Vec& data() const noexcept { return data_; }

  bool is_zero() const noexcept;
  bool is_identity() const noexcept;

  Mat transpose() const;
  Mat scaled(Elem c) const;
  Mat select_rows(const std::vector<std::size_t>& idx) const;
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Mat& b);

  static Mat hstack(const Mat& a, const Mat& b);
  static Mat vstack(const Mat& a, const Mat& b);
  static Mat block_diag(const std::vector<Mat>& blocks, const ChainRing& ring);
  static Mat kron(const Mat& a, const Mat& b);

  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.data_ == b.data_;
  }

  std::vector<std::vector<std::int64_t>> to_rows() const;

 private:
  ChainRing ring_;
  std::size_t rows_;
  std::size_t cols_;
  Vec data_;
};

// x * A for a row vector x.
Vec times(std::span<const Elem> x, const Mat& a);

// ---- normal forms and solving --------------------------------------------

// Howell normal form: same row span, pivots p^v with strictly increasing
// columns, entries above a pivot reduced below it, zero rows dropped, and the
// Howell property (every span element vanishing on the first j columns is a
// combination of the rows whose pivot lies at or after column j).
Mat howell_form(const Mat& a);

struct Pivot {
  std::size_t col;
  unsigned valuation;
};
std::vector<Pivot> pivots(const Mat& howell);

// log_p of the number of elements in the row span of a Howell form.
unsigned log_size(const Mat& howell);

// Reduction test against a Howell form.
bool in_row_span(const Mat& howell, std::span<const Elem> v);

// {x : x A = 0} as the rows of a Howell form.
Mat left_kernel(const Mat& a);

struct SolutionSet {
  std::optional<Vec> particular;
  Mat kernel_basis;  // Howell form; cols == number of unknowns

  bool solvable() const noexcept { return particular.has_value(); }
  bool unique() const noexcept { return solvable() && kernel_basis.rows() == 0; }
};

// All x with x A = b.
SolutionSet solve_affine(const Mat& a, std::span<const Elem> b);

struct RankProfile {
  unsigned image_log;   // log_p |{x A}|
  unsigned kernel_log;  // log_p |{x : x A = 0}|
  std::uint64_t p;

  std::uint64_t image_size() const;
  std::uint64_t kernel_size() const;
};
RankProfile rank_profile(const Mat& a);

bool is_invertible(const Mat& a);
Mat inverse(const Mat& a);
bool is_injective(const Mat& a);
bool is_surjective(const Mat& a);
inline bool is_bijective(const Mat& a) { return a.square() && is_invertible(a); }

// A basis of the submodule spanned by the rows; throws NotFree if that
// submodule is not a free R-module.
Mat free_basis(const Mat& generators);

// Coordinates of each row of `vectors` in the free basis `basis`.
Mat coordinates(const Mat& basis, const Mat& vectors);

// R^n / span(relations) when it is free. `projection` (n x dim) sends a vector
// to its class; `section` (dim x n) picks representatives, with
// section * projection == identity.
struct Quotient {
  std::size_t dim;
  Mat projection;
  Mat section;
};
Quotient free_quotient(const Mat& relations);

}  // namespace profmod
