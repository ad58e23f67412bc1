#include "profmod/ring.hpp"

#include <algorithm>
#include <utility>

#include "profmod/error.hpp"

namespace profmod {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// row[j] -= q * src[j] for j >= from
void axpy(Vec& row, Elem q, const Vec& src, std::size_t from, const ChainRing& R) {
  if (q == 0) return;
  for (std::size_t j = from; j < row.size(); ++j) {
    if (src[j] != 0) row[j] = R.sub(row[j], R.mul(q, src[j]));
  }
}

bool all_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

}  // namespace

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// ---- ChainRing -------------------------------------------------------------

ChainRing::ChainRing(std::uint64_t p, unsigned k) : p_(p), k_(k), modulus_(1) {
  if (!is_prime(p)) {
    throw Error(ErrorKind::InvalidArgument,
                "ring characteristic " + std::to_string(p) + " is not prime");
  }
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "ring exponent must be >= 1");
  constexpr std::uint64_t limit = 1ull << 62;
  for (unsigned i = 0; i < k; ++i) {
    if (modulus_ > limit / p) {
      throw Error(ErrorKind::InvalidArgument, "modulus p^k exceeds 2^62");
    }
    modulus_ *= p;
  }
  small_ = modulus_ < (1ull << 32);
}

Elem ChainRing::reduce(std::int64_t v) const noexcept {
  auto m = static_cast<std::int64_t>(modulus_);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<Elem>(r);
}

unsigned ChainRing::valuation(Elem a) const noexcept {
  if (a == 0) return k_;
  unsigned v = 0;
  while (a % p_ == 0) {
    a /= p_;
    ++v;
  }
  return v;
}

Elem ChainRing::p_power(unsigned v) const noexcept {
  if (v >= k_) return 0;
  Elem r = 1;
  for (unsigned i = 0; i < v; ++i) r *= p_;
  return r;
}

Elem ChainRing::inverse(Elem unit) const {
  if (!is_unit(unit)) {
    throw Error(ErrorKind::NotInvertible,
                std::to_string(unit) + " is not a unit in " + name());
  }
  // extended Euclid on (unit, modulus)
  std::int64_t old_r = static_cast<std::int64_t>(unit % modulus_);
  std::int64_t r = static_cast<std::int64_t>(modulus_);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  return reduce(old_s);
}

std::string ChainRing::name() const {
  if (k_ == 1) return "F_" + std::to_string(p_);
  return "Z/" + std::to_string(modulus_);
}

// ---- Mat -------------------------------------------------------------------

Mat::Mat(const ChainRing& ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Mat Mat::identity(const ChainRing& ring, std::size_t n) {
  Mat m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1 % ring.modulus();
  return m;
}

Mat Mat::from_rows(const ChainRing& ring,
                   const std::vector<std::vector<std::int64_t>>& rows,
                   std::size_t cols_if_empty) {
  std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
  Mat m(ring, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw Error(ErrorKind::DimensionMismatch,
                  "row " + std::to_string(i) + " has " +
                      std::to_string(rows[i].size()) + " entries, expected " +
                      std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Mat Mat::from_vectors(const ChainRing& ring, std::size_t cols,
                      const std::vector<Vec>& rows) {
  Mat m(ring, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw Error(ErrorKind::DimensionMismatch, "ragged vector list");
    }
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

Mat Mat::row_vector(const ChainRing& ring, std::span<const Elem> v) {
  Mat m(ring, 1, v.size());
  std::copy(v.begin(), v.end(), m.row(0).begin());
  return m;
}

bool Mat::is_zero() const noexcept { return all_zero(data_); }

bool Mat::is_identity() const noexcept {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 % ring_.modulus() : 0)) return false;
  return true;
}

Mat Mat::transpose() const {
  Mat t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::scaled(Elem c) const {
  Mat r(*this);
  for (auto& e : r.data_) e = ring_.mul(e, c);
  return r;
}

Mat Mat::select_rows(const std::vector<std::size_t>& idx) const {
  Mat r(ring_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    auto src = row(idx[i]);
    std::copy(src.begin(), src.end(), r.row(i).begin());
  }
  return r;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw Error(ErrorKind::DimensionMismatch, "block out of range");
  }
  Mat b(ring_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b.at(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) {
    throw Error(ErrorKind::DimensionMismatch, "block out of range");
  }
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) at(r0 + i, c0 + j) = b(i, j);
}

Mat Mat::hstack(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "hstack");
  Mat r(a.ring(), a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

Mat Mat::vstack(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "vstack");
  Mat r(a.ring(), a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

Mat Mat::block_diag(const std::vector<Mat>& blocks, const ChainRing& ring) {
  std::size_t nr = 0, nc = 0;
  for (const auto& b : blocks) {
    nr += b.rows();
    nc += b.cols();
  }
  Mat r(ring, nr, nc);
  std::size_t i = 0, j = 0;
  for (const auto& b : blocks) {
    r.set_block(i, j, b);
    i += b.rows();
    j += b.cols();
  }
  return r;
}

Mat Mat::kron(const Mat& a, const Mat& b) {
  const auto& R = a.ring();
  Mat r(R, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Elem x = a(i, j);
      if (x == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r.at(i * b.rows() + k, j * b.cols() + l) = R.mul(x, b(k, l));
    }
  return r;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch,
                "product of " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                    "x" + std::to_string(b.cols()));
  }
  if (!(a.ring() == b.ring())) throw Error(ErrorKind::RingMismatch, "matrix product");
  const auto& R = a.ring();
  Mat r(R, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = r.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Elem x = a(i, k);
      if (x == 0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (brow[j] != 0) out[j] = R.add(out[j], R.mul(x, brow[j]));
      }
    }
  }
  return r;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::DimensionMismatch, "matrix sum");
  Mat r(a);
  for (std::size_t i = 0; i < r.data_.size(); ++i)
    r.data_[i] = a.ring().add(a.data_[i], b.data_[i]);
  return r;
}

Mat operator-(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::DimensionMismatch, "matrix difference");
  Mat r(a);
  for (std::size_t i = 0; i < r.data_.size(); ++i)
    r.data_[i] = a.ring().sub(a.data_[i], b.data_[i]);
  return r;
}

std::vector<std::vector<std::int64_t>> Mat::to_rows() const {
  std::vector<std::vector<std::int64_t>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out[i].push_back(static_cast<std::int64_t>((*this)(i, j)));
  return out;
}

Vec times(std::span<const Elem> x, const Mat& a) {
  if (x.size() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "vector times matrix");
  const auto& R = a.ring();
  Vec out(a.cols(), 0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] == 0) continue;
    auto row = a.row(k);
    for (std::size_t j = 0; j < out.size(); ++j)
      if (row[j] != 0) out[j] = R.add(out[j], R.mul(x[k], row[j]));
  }
  return out;
}

// ---- Howell form -------------------------------------------------------------

Mat howell_form(const Mat& a) {
  const ChainRing& R = a.ring();
  const std::size_t n = a.cols();
  std::vector<Vec> rows;
  rows.reserve(a.rows() + n);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Vec v = a.row_vec(i);
    if (!all_zero(v)) rows.push_back(std::move(v));
  }

  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t best = rows.size();
    unsigned best_v = R.k();
    for (std::size_t i = r; i < rows.size(); ++i) {
      unsigned v = R.valuation(rows[i][c]);
      if (v < best_v) {
        best_v = v;
        best = i;
        if (v == 0) break;
      }
    }
    if (best == rows.size()) continue;
    std::swap(rows[r], rows[best]);

    const Elem pv = R.p_power(best_v);
    Vec& piv = rows[r];
    const Elem unit_inv = R.inverse(piv[c] / pv);
    for (std::size_t j = c; j < n; ++j) piv[j] = R.mul(piv[j], unit_inv);

    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] != 0) axpy(rows[i], rows[i][c] / pv, piv, c, R);
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i][c] >= pv) axpy(rows[i], rows[i][c] / pv, piv, c, R);
    }
    if (best_v > 0) {
      // p^(k-v) * pivot row vanishes at column c but may not elsewhere; it must
      // stay in the pool for the Howell property.
      Vec ann = rows[r];
      const Elem s = R.p_power(R.k() - best_v);
      for (auto& e : ann) e = R.mul(e, s);
      if (!all_zero(ann)) rows.push_back(std::move(ann));
    }
    ++r;
  }
  rows.resize(r);
  return Mat::from_vectors(R, n, rows);
}

std::vector<Pivot> pivots(const Mat& howell) {
  std::vector<Pivot> out;
  const auto& R = howell.ring();
  for (std::size_t i = 0; i < howell.rows(); ++i) {
    auto row = howell.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) {
        out.push_back({j, R.valuation(row[j])});
        break;
      }
    }
  }
  return out;
}

unsigned log_size(const Mat& howell) {
  unsigned total = 0;
  for (const auto& pv : pivots(howell)) total += howell.ring().k() - pv.valuation;
  return total;
}

bool in_row_span(const Mat& howell, std::span<const Elem> v) {
  const auto& R = howell.ring();
  if (v.size() != howell.cols()) throw Error(ErrorKind::DimensionMismatch, "span test");
  Vec w(v.begin(), v.end());
  const auto piv = pivots(howell);
  for (std::size_t i = 0; i < piv.size(); ++i) {
    const std::size_t c = piv[i].col;
    if (w[c] == 0) continue;
    const Elem pv = R.p_power(piv[i].valuation);
    if (w[c] % pv != 0) return false;
    const Elem q = w[c] / pv;
    auto row = howell.row(i);
    for (std::size_t j = c; j < w.size(); ++j)
      if (row[j] != 0) w[j] = R.sub(w[j], R.mul(q, row[j]));
  }
  return all_zero(w);
}

Mat left_kernel(const Mat& a) {
  const auto& R = a.ring();
  const std::size_t n = a.rows(), m = a.cols();
  Mat aug(R, n, m + n);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < n; ++i) aug.at(i, m + i) = 1 % R.modulus();
  Mat h = howell_form(aug);
  std::vector<Vec> ker;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    auto row = h.row(i);
    if (std::all_of(row.begin(), row.begin() + m, [](Elem e) { return e == 0; }))
      ker.emplace_back(row.begin() + m, row.end());
  }
  return Mat::from_vectors(R, n, ker);
}

SolutionSet solve_affine(const Mat& a, std::span<const Elem> b) {
  const auto& R = a.ring();
  if (b.size() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                "right-hand side has " + std::to_string(b.size()) +
                    " entries, system has " + std::to_string(a.cols()) + " equations");
  }
  const std::size_t n = a.rows(), m = a.cols();
  // Rows [A_i | 0 | e_i] and [-b | 1 | 0]; a solution is a span element with
  // zero A-part and unit t-coordinate.
  Mat aug(R, n + 1, m + 1 + n);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < n; ++i) aug.at(i, m + 1 + i) = 1 % R.modulus();
  for (std::size_t j = 0; j < m; ++j) aug.at(n, j) = R.neg(b[j] % R.modulus());
  aug.at(n, m) = 1 % R.modulus();

  Mat h = howell_form(aug);
  SolutionSet out{std::nullopt, Mat(R, 0, n)};
  std::vector<Vec> ker;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    auto row = h.row(i);
    if (!std::all_of(row.begin(), row.begin() + m, [](Elem e) { return e == 0; }))
      continue;
    if (row[m] != 0) {
      if (R.valuation(row[m]) == 0) out.particular = Vec(row.begin() + m + 1, row.end());
      continue;
    }
    ker.emplace_back(row.begin() + m + 1, row.end());
  }
  out.kernel_basis = Mat::from_vectors(R, n, ker);
  return out;
}

std::uint64_t RankProfile::image_size() const {
  std::uint64_t s = 1;
  for (unsigned i = 0; i < image_log; ++i) {
    if (s > UINT64_MAX / p) throw Error(ErrorKind::InvalidArgument, "image size overflows 64 bits");
    s *= p;
  }
  return s;
}

std::uint64_t RankProfile::kernel_size() const {
  std::uint64_t s = 1;
  for (unsigned i = 0; i < kernel_log; ++i) {
    if (s > UINT64_MAX / p) throw Error(ErrorKind::InvalidArgument, "kernel size overflows 64 bits");
    s *= p;
  }
  return s;
}

RankProfile rank_profile(const Mat& a) {
  const unsigned img = log_size(howell_form(a));
  const unsigned total = a.ring().k() * static_cast<unsigned>(a.rows());
  return {img, total - img, a.ring().p()};
}

bool is_invertible(const Mat& a) {
  return a.square() && howell_form(a).is_identity();
}

Mat inverse(const Mat& a) {
  if (!a.square()) throw Error(ErrorKind::NotInvertible, "matrix is not square");
  const std::size_t n = a.rows();
  Mat h = howell_form(Mat::hstack(a, Mat::identity(a.ring(), n)));
  if (h.rows() != n || !h.block(0, 0, n, n).is_identity()) {
    throw Error(ErrorKind::NotInvertible, "matrix is singular over " + a.ring().name());
  }
  return h.block(0, n, n, n);
}

bool is_injective(const Mat& a) { return left_kernel(a).rows() == 0; }

bool is_surjective(const Mat& a) {
  Mat h = howell_form(a);
  return h.rows() == a.cols() && h.is_identity();
}

Mat free_basis(const Mat& generators) {
  const auto& R = generators.ring();
  Mat h = howell_form(generators);
  const auto piv = pivots(h);
  if (std::all_of(piv.begin(), piv.end(), [](const Pivot& p) { return p.valuation == 0; }))
    return h;
  // S free of rank t iff |S| = p^(k t) with t = dim_Fp S/pS; lift a basis of
  // S/pS greedily from the Howell rows (Nakayama).
  Mat ps = howell_form(h.scaled(R.p() % R.modulus()));
  const unsigned ls = log_size(h);
  const unsigned t = ls - log_size(ps);
  if (ls != R.k() * t) {
    throw Error(ErrorKind::NotFree, "submodule of " + R.name() + "^" +
                                        std::to_string(generators.cols()) +
                                        " is not free");
  }
  Mat span = ps;
  std::vector<Vec> chosen;
  for (std::size_t i = 0; i < h.rows() && chosen.size() < t; ++i) {
    if (in_row_span(span, h.row(i))) continue;
    chosen.push_back(h.row_vec(i));
    span = howell_form(Mat::vstack(span, Mat::row_vector(R, h.row(i))));
  }
  return Mat::from_vectors(R, generators.cols(), chosen);
}

Mat coordinates(const Mat& basis, const Mat& vectors) {
  const auto& R = basis.ring();
  if (basis.cols() != vectors.cols())
    throw Error(ErrorKind::DimensionMismatch, "coordinates: ambient dimension");
  Mat out(R, vectors.rows(), basis.rows());
  const auto piv = pivots(basis);
  const bool fast = piv.size() == basis.rows() &&
                    std::all_of(piv.begin(), piv.end(),
                                [](const Pivot& p) { return p.valuation == 0; }) &&
                    howell_form(basis) == basis;
  for (std::size_t i = 0; i < vectors.rows(); ++i) {
    if (fast) {
      for (std::size_t b = 0; b < piv.size(); ++b) out.at(i, b) = vectors(i, piv[b].col);
    } else {
      auto sol = solve_affine(basis, vectors.row(i));
      if (!sol.particular)
        throw Error(ErrorKind::InvalidArgument, "vector is not in the span of the basis");
      std::copy(sol.particular->begin(), sol.particular->end(), out.row(i).begin());
    }
  }
  if (fast && !(out * basis == vectors))
    throw Error(ErrorKind::InvalidArgument, "vector is not in the span of the basis");
  return out;
}

Quotient free_quotient(const Mat& relations) {
  const auto& R = relations.ring();
  const std::size_t n = relations.cols();
  Mat h = howell_form(relations);
  const auto piv = pivots(h);
  const bool unit_pivots = std::all_of(piv.begin(), piv.end(),
                                       [](const Pivot& p) { return p.valuation == 0; });

  std::vector<bool> is_piv(n, false);
  if (unit_pivots) {
    for (const auto& p : piv) is_piv[p.col] = true;
  } else {
    // Pivot columns of the relations reduced mod p decide the complement.
    ChainRing fp(R.p(), 1);
    Mat red(fp, h.rows(), n);
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t j = 0; j < n; ++j) red.at(i, j) = h(i, j) % R.p();
    for (const auto& p : pivots(howell_form(red))) is_piv[p.col] = true;
  }
  std::vector<std::size_t> comp, index(n, n);
  for (std::size_t j = 0; j < n; ++j)
    if (!is_piv[j]) {
      index[j] = comp.size();
      comp.push_back(j);
    }
  const std::size_t t = comp.size();
  if (R.k() * n - log_size(h) != R.k() * t) {
    throw Error(ErrorKind::NotFree,
                "quotient of " + R.name() + "^" + std::to_string(n) + " is not free");
  }

  Mat section(R, t, n);
  for (std::size_t j = 0; j < t; ++j) section.at(j, comp[j]) = 1 % R.modulus();
  Mat projection(R, n, t);
  if (unit_pivots) {
    for (std::size_t j = 0; j < t; ++j) projection.at(comp[j], j) = 1 % R.modulus();
    for (std::size_t i = 0; i < piv.size(); ++i) {
      const std::size_t c = piv[i].col;
      for (std::size_t j = 0; j < t; ++j) projection.at(c, j) = R.neg(h(i, comp[j]));
    }
  } else {
    Mat sys = Mat::vstack(section, h);
    for (std::size_t i = 0; i < n; ++i) {
      Vec e(n, 0);
      e[i] = 1 % R.modulus();
      auto sol = solve_affine(sys, e);
      if (!sol.particular) throw Error(ErrorKind::NotFree, "complement does not generate quotient");
      for (std::size_t j = 0; j < t; ++j) projection.at(i, j) = (*sol.particular)[j];
    }
  }
  return {t, std::move(projection), std::move(section)};
}

}  // namespace profmod
