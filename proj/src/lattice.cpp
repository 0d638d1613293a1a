#include "qcancel/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "qcancel/errors.hpp"

namespace qcancel {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer trunc_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw UsageError("IntMatrix: ragged initializer");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::size_t cols, const std::vector<IntVector>& rows) {
  IntMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t c) const {
  IntVector out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::append_row(const IntVector& row) {
  if (row.size() != cols_) throw UsageError("IntMatrix::append_row: width mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw UsageError("IntMatrix: dimension mismatch in product");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.to_string(); }

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw UsageError("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Hermite and Smith normal forms

HermiteForm hnf(const IntMatrix& m) {
  HermiteForm out{m, IntMatrix::identity(m.rows())};
  IntMatrix& H = out.H;
  IntMatrix& U = out.U;
  const std::size_t rows = H.rows();
  std::size_t pivot = 0;
  for (std::size_t col = 0; col < H.cols() && pivot < rows; ++col) {
    bool has_pivot = false;
    while (true) {
      std::size_t best = rows;
      for (std::size_t r = pivot; r < rows; ++r) {
        if (H(r, col) == 0) continue;
        if (best == rows || abs(H(r, col)) < abs(H(best, col))) best = r;
      }
      if (best == rows) break;
      has_pivot = true;
      H.swap_rows(pivot, best);
      U.swap_rows(pivot, best);
      bool clean = true;
      for (std::size_t r = pivot + 1; r < rows; ++r) {
        if (H(r, col) == 0) continue;
        Integer q = trunc_div(H(r, col), H(pivot, col));
        H.add_row_multiple(r, pivot, -q);
        U.add_row_multiple(r, pivot, -q);
        if (H(r, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (!has_pivot) continue;
    if (H(pivot, col) < 0) {
      H.negate_row(pivot);
      U.negate_row(pivot);
    }
    for (std::size_t r = 0; r < pivot; ++r) {
      Integer q = floor_div(H(r, col), H(pivot, col));
      H.add_row_multiple(r, pivot, -q);
      U.add_row_multiple(r, pivot, -q);
    }
    ++pivot;
  }
  return out;
}

SmithForm snf(const IntMatrix& m) {
  SmithForm out{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& D = out.D;
  IntMatrix& U = out.U;
  IntMatrix& V = out.V;
  const std::size_t rows = D.rows();
  const std::size_t cols = D.cols();
  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    while (true) {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (D(i, j) == 0) continue;
          if (bi == rows || abs(D(i, j)) < abs(D(bi, bj))) {
            bi = i;
            bj = j;
          }
        }
      if (bi == rows) return out;  // remaining block is zero
      D.swap_rows(t, bi);
      U.swap_rows(t, bi);
      D.swap_cols(t, bj);
      V.swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (D(i, t) == 0) continue;
        Integer q = trunc_div(D(i, t), D(t, t));
        D.add_row_multiple(i, t, -q);
        U.add_row_multiple(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (D(t, j) == 0) continue;
        Integer q = trunc_div(D(t, j), D(t, t));
        D.add_col_multiple(j, t, -q);
        V.add_col_multiple(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce d_t | every entry of the trailing block.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      D.add_row_multiple(t, bad, 1);
      U.add_row_multiple(t, bad, 1);
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// IntegerLattice

IntegerLattice IntegerLattice::from_generators(std::size_t ambient, const std::vector<IntVector>& generators) {
  IntegerLattice lat(ambient);
  if (generators.empty()) return lat;
  auto h = hnf(IntMatrix::from_rows(ambient, generators));
  for (std::size_t r = 0; r < h.H.rows(); ++r) {
    IntVector row = h.H.row(r);
    bool zero = std::all_of(row.begin(), row.end(), [](const Integer& v) { return v == 0; });
    if (!zero) lat.basis_.push_back(std::move(row));
  }
  return lat;
}

IntegerLattice IntegerLattice::scaled_standard(std::size_t ambient, const Integer& scale) {
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < ambient; ++i) {
    IntVector v(ambient, Integer(0));
    v[i] = scale;
    gens.push_back(std::move(v));
  }
  return from_generators(ambient, gens);
}

IntegerLattice IntegerLattice::direct_sum(const IntegerLattice& a, const IntegerLattice& b) {
  const std::size_t n = a.ambient_ + b.ambient_;
  std::vector<IntVector> gens;
  for (const auto& v : a.basis_) {
    IntVector w(n, Integer(0));
    std::copy(v.begin(), v.end(), w.begin());
    gens.push_back(std::move(w));
  }
  for (const auto& v : b.basis_) {
    IntVector w(n, Integer(0));
    std::copy(v.begin(), v.end(), w.begin() + static_cast<std::ptrdiff_t>(a.ambient_));
    gens.push_back(std::move(w));
  }
  return from_generators(n, gens);
}

bool IntegerLattice::contains(const IntVector& v) const {
  if (v.size() != ambient_) throw UsageError("IntegerLattice::contains: dimension mismatch");
  IntVector rem = v;
  for (const auto& row : basis_) {
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    if (!mpz_divisible_p(rem[p].get_mpz_t(), row[p].get_mpz_t())) return false;
    Integer q = rem[p] / row[p];
    for (std::size_t c = p; c < ambient_; ++c) rem[c] -= q * row[c];
  }
  return std::all_of(rem.begin(), rem.end(), [](const Integer& x) { return x == 0; });
}

IntVector coordinate_gcds(const IntegerLattice& lattice) {
  IntVector g(lattice.ambient_dimension(), Integer(0));
  for (const auto& row : lattice.basis())
    for (std::size_t i = 0; i < row.size(); ++i) g[i] = gcd(g[i], row[i]);
  return g;
}

std::optional<Integer> lattice_index(const IntegerLattice& lattice) {
  if (!lattice.is_full_rank()) return std::nullopt;
  if (lattice.ambient_dimension() == 0) return Integer(1);
  auto s = snf(lattice.basis_matrix());
  Integer index = 1;
  for (std::size_t i = 0; i < lattice.ambient_dimension(); ++i) index *= s.D(i, i);
  return index;
}

Integer axis_period(const IntegerLattice& lattice, std::size_t axis) {
  const std::size_t n = lattice.ambient_dimension();
  if (axis >= n) throw UsageError("axis_period: axis out of range");
  const std::size_t rank = lattice.rank();
  if (rank == 0) return 0;
  // sum_j c_j B_j - k e_axis = 0 over Z, unknowns (c_1..c_rank, k).
  CongruenceSystem sys(rank + 1);
  for (std::size_t l = 0; l < n; ++l) {
    IntVector row(rank + 1, Integer(0));
    for (std::size_t j = 0; j < rank; ++j) row[j] = lattice.basis()[j][l];
    row[rank] = (l == axis) ? -1 : 0;
    sys.add_equation(row, 0, 0);
  }
  auto result = solve(sys);
  const auto& kernel = std::get<Solvable>(result).kernel;
  Integer g = 0;
  for (const auto& v : kernel.basis()) g = gcd(g, v[rank]);
  return g;
}

std::optional<IntVector> find_nonzero_nonneg_vector(const IntegerLattice& lattice, NonnegSearchOptions options) {
  const std::size_t n = lattice.ambient_dimension();
  const std::size_t rank = lattice.rank();
  if (rank == 0) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i) {
    Integer p = axis_period(lattice, i);
    if (p > 0) {
      IntVector v(n, Integer(0));
      v[i] = p;
      return v;
    }
  }

  long bound = options.coefficient_bound;
  if (bound <= 0) {
    Integer max_pivot = 1;
    for (const auto& row : lattice.basis())
      for (const auto& x : row)
        if (x != 0) {
          if (abs(x) > max_pivot) max_pivot = abs(x);
          break;
        }
    if (!max_pivot.fits_slong_p() || max_pivot > 1'000'000)
      throw BoundExceededError("find_nonzero_nonneg_vector: HNF pivots too large");
    bound = 3 * max_pivot.get_si();
  }
  const unsigned long long width = 2ULL * static_cast<unsigned long long>(bound) + 1ULL;
  unsigned long long total = 1;
  for (std::size_t j = 0; j < rank; ++j) {
    if (total > options.max_combinations / width)
      throw BoundExceededError("find_nonzero_nonneg_vector: enumeration exceeds " +
                               std::to_string(options.max_combinations) + " combinations");
    total *= width;
  }

  std::vector<long> coeff(rank, -bound);
  IntVector v(n);
  for (unsigned long long step = 0; step < total; ++step) {
    std::fill(v.begin(), v.end(), Integer(0));
    bool zero_coeffs = true;
    for (std::size_t j = 0; j < rank; ++j) {
      if (coeff[j] == 0) continue;
      zero_coeffs = false;
      for (std::size_t i = 0; i < n; ++i) v[i] += coeff[j] * lattice.basis()[j][i];
    }
    if (!zero_coeffs) {
      bool nonneg = std::all_of(v.begin(), v.end(), [](const Integer& x) { return x >= 0; });
      bool nonzero = std::any_of(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
      if (nonneg && nonzero) return v;
    }
    for (std::size_t j = 0; j < rank; ++j) {
      if (++coeff[j] <= bound) break;
      coeff[j] = -bound;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Congruence systems

void CongruenceSystem::add_equation(const IntVector& row, const Integer& value, const Integer& modulus) {
  if (modulus < 0) throw UsageError("CongruenceSystem: negative modulus");
  coefficients.append_row(row);
  rhs.push_back(value);
  moduli.push_back(modulus);
}

bool CongruenceSystem::is_satisfied_by(const IntVector& d) const {
  if (d.size() != variables()) throw UsageError("CongruenceSystem: solution length mismatch");
  for (std::size_t i = 0; i < equations(); ++i) {
    Integer lhs = 0;
    for (std::size_t j = 0; j < variables(); ++j) lhs += coefficients(i, j) * d[j];
    Integer diff = lhs - rhs[i];
    if (moduli[i] == 0) {
      if (diff != 0) return false;
    } else if (!mpz_divisible_p(diff.get_mpz_t(), moduli[i].get_mpz_t())) {
      return false;
    }
  }
  return true;
}

SolveResult solve(const CongruenceSystem& system) {
  const std::size_t s = system.equations();
  const std::size_t t = system.variables();
  if (system.rhs.size() != s || system.moduli.size() != s)
    throw UsageError("CongruenceSystem: inconsistent dimensions");

  std::vector<std::size_t> modular;
  for (std::size_t i = 0; i < s; ++i)
    if (system.moduli[i] != 0) modular.push_back(i);

  const std::size_t width = t + modular.size();
  IntMatrix a(s, width);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < t; ++j) a(i, j) = system.coefficients(i, j);
  for (std::size_t k = 0; k < modular.size(); ++k) a(modular[k], t + k) = system.moduli[modular[k]];

  auto sf = snf(a);
  IntVector c(s, Integer(0));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) c[i] += sf.U(i, j) * system.rhs[j];

  std::size_t rank = 0;
  while (rank < std::min(s, width) && sf.D(rank, rank) != 0) ++rank;

  IntVector z(width, Integer(0));
  for (std::size_t i = 0; i < s; ++i) {
    if (i < rank) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), sf.D(i, i).get_mpz_t())) return Unsolvable{};
      z[i] = c[i] / sf.D(i, i);
    } else if (c[i] != 0) {
      return Unsolvable{};
    }
  }

  IntVector particular(t, Integer(0));
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < width; ++j) particular[i] += sf.V(i, j) * z[j];

  std::vector<IntVector> kernel_gens;
  for (std::size_t j = rank; j < width; ++j) {
    IntVector v(t);
    for (std::size_t i = 0; i < t; ++i) v[i] = sf.V(i, j);
    kernel_gens.push_back(std::move(v));
  }
  auto kernel = IntegerLattice::from_generators(t, kernel_gens);
  if (!system.is_satisfied_by(particular)) throw InternalError("solve: particular solution check failed");
  return Solvable{std::move(particular), std::move(kernel)};
}

}  // namespace qcancel
