#pragma once

// Exact integer and rational linear algebra: dense and row-sparse matrices,
// Smith normal form, lattices given by generators, kernels modulo row
// moduli, and quotient presentations of finitely generated abelian groups.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rgc {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols)
    {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols && j < rows[i].size(); ++j)
                m(i, j) = rows[i][j];
        return m;
    }

    static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows)
    {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < rows && i < cols[j].size(); ++i)
                m(i, j) = cols[j][i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> column(std::size_t j) const
    {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    std::vector<T> row(std::size_t i) const
    {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    std::vector<std::vector<T>> columns() const
    {
        std::vector<std::vector<T>> out;
        out.reserve(cols_);
        for (std::size_t j = 0; j < cols_; ++j)
            out.push_back(column(j));
        return out;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (x != 0)
                return false;
        return true;
    }

    std::vector<T> apply(const std::vector<T>& v) const
    {
        std::vector<T> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0 && v[j] != 0)
                    out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (b(k, j) != 0)
                        c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Matrix operator+(Matrix a, const Matrix& b)
    {
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] += b.data_[i];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b)
    {
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] -= b.data_[i];
        return a;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

// Row-sparse matrix; rows hold (column, value) pairs with nonzero values.
template <class T>
class SparseMatrix {
public:
    using Entry = std::pair<std::size_t, T>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    // Accumulates value into (i, j).
    void add(std::size_t i, std::size_t j, const T& value)
    {
        if (value == 0)
            return;
        for (auto& [c, v] : rows_[i])
            if (c == j) {
                v += value;
                return;
            }
        rows_[i].emplace_back(j, value);
    }

    // Drops entries that cancelled to zero and sorts each row by column.
    void compress();

    const std::vector<Entry>& row(std::size_t i) const { return rows_[i]; }

    std::vector<T> apply(const std::vector<T>& v) const
    {
        std::vector<T> out(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (const auto& [c, x] : rows_[i])
                if (v[c] != 0)
                    out[i] += x * v[c];
        return out;
    }

    Matrix<T> to_dense() const
    {
        Matrix<T> m(rows_.size(), cols_);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (const auto& [c, x] : rows_[i])
                m(i, c) += x;
        return m;
    }

    static SparseMatrix from_dense(const Matrix<T>& m)
    {
        SparseMatrix s(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m(i, j) != 0)
                    s.rows_[i].emplace_back(j, m(i, j));
        return s;
    }

    // this * B for dense B given by its columns.
    std::vector<std::vector<T>> times_columns(const std::vector<std::vector<T>>& columns) const
    {
        std::vector<std::vector<T>> out;
        out.reserve(columns.size());
        for (const auto& c : columns)
            out.push_back(apply(c));
        return out;
    }

private:
    std::size_t cols_ = 0;
    std::vector<std::vector<Entry>> rows_;
};

template <class T>
void SparseMatrix<T>::compress()
{
    for (auto& r : rows_) {
        std::vector<Entry> kept;
        for (auto& e : r)
            if (e.second != 0)
                kept.push_back(std::move(e));
        std::sort(kept.begin(), kept.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
        r = std::move(kept);
    }
}

// Rows of a followed by rows of b.
template <class T>
SparseMatrix<T> vstack(const SparseMatrix<T>& a, const SparseMatrix<T>& b)
{
    SparseMatrix<T> out(a.rows() + b.rows(), std::max(a.cols(), b.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (const auto& [c, v] : a.row(i))
            out.add(i, c, v);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (const auto& [c, v] : b.row(i))
            out.add(a.rows() + i, c, v);
    return out;
}

using SparseIntMatrix = SparseMatrix<Integer>;
using SparseRatMatrix = SparseMatrix<Rational>;

/// Result of a Smith normal form computation: U * M * V = D, with U and V
/// unimodular and D diagonal with d_1 | d_2 | ... | d_rank, all d_i > 0.
struct SmithForm {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
    IntMatrix U_inverse;
    std::size_t rank = 0;

    std::vector<Integer> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Integer solution of M x = b, decided through the Smith form.
std::optional<IntVector> solve_linear(const IntMatrix& m, const IntVector& b);
/// Rational solution of M x = b by Gaussian elimination.
std::optional<RatVector> solve_linear(const RatMatrix& m, const RatVector& b);

Integer floor_mod(const Integer& a, const Integer& m);

// Reduces entries i with moduli[i] > 0 into [0, moduli[i]).
void reduce_mod(IntVector& v, std::span<const Integer> moduli);

/// A sublattice of Z^dim held as an echelon basis: basis vector k is zero
/// above its pivot row, and pivot rows strictly increase with k. Pivot
/// entries are positive.
class Lattice {
public:
    Lattice() = default;
    explicit Lattice(std::size_t dim) : dim_(dim) {}

    // Lattice generated by the given vectors together with moduli[i] * e_i
    // for every coordinate with a positive modulus.
    static Lattice span(std::vector<IntVector> generators, std::size_t dim, std::span<const Integer> moduli = {});

    std::size_t dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return basis_.size(); }
    const std::vector<IntVector>& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    // Coefficients of v with respect to basis(), or nullopt if v is not a member.
    std::optional<IntVector> coordinates(const IntVector& v) const;
    bool contains(const IntVector& v) const { return coordinates(v).has_value(); }
    bool contains(const Lattice& other) const;

    // Brings v into the fundamental box of the pivot entries without
    // changing its coset modulo the lattice.
    void size_reduce(IntVector& v) const;

    friend bool operator==(const Lattice& a, const Lattice& b)
    {
        return a.dim_ == b.dim_ && a.contains(b) && b.contains(a);
    }

private:
    std::size_t dim_ = 0;
    std::vector<IntVector> basis_;
    std::vector<std::size_t> pivots_;
};

/// Generators of { x in Z^cols : (A x)_i = 0 mod moduli[i] for every row }
/// (modulus 0 means exact vanishing). If a reduction lattice is supplied,
/// every one of its vectors must already satisfy all row conditions; it is
/// used to keep entries bounded and its basis is part of the output.
std::vector<IntVector> kernel_mod(const SparseIntMatrix& a, std::span<const Integer> moduli,
                                  const Lattice* reduction = nullptr);

/// Some x with A x = b modulo the row moduli, or nullopt.
std::optional<IntVector> solve_mod(const SparseIntMatrix& a, const IntVector& b, std::span<const Integer> moduli,
                                   const Lattice* reduction = nullptr);

/// Isomorphism type of a finitely generated abelian group: Z^free_rank plus
/// cyclic factors with invariant factors torsion[0] | torsion[1] | ...
struct GroupInvariants {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool is_finite() const { return free_rank == 0; }
    // Order of a finite group.
    Integer order() const;
    std::string to_string() const;

    friend bool operator==(const GroupInvariants& a, const GroupInvariants& b)
    {
        return a.free_rank == b.free_rank && a.torsion == b.torsion;
    }
};

// Canonical invariants of Z^free_rank + (+)_i Z/orders[i] (orders may be 1,
// which contributes nothing, or 0, which contributes a free summand).
GroupInvariants canonical_invariants(std::size_t free_rank, const std::vector<Integer>& orders);
GroupInvariants direct_sum(const GroupInvariants& a, const GroupInvariants& b);

/// Presentation of L1 / L2 for lattices L2 <= L1 <= Z^dim, with lifts of
/// the generators and a classifier for members of L1.
class AbelianGroupPresentation {
public:
    AbelianGroupPresentation() = default;
    // numerator / denominator are generating sets; the moduli relations are
    // added to both lattices.
    AbelianGroupPresentation(const std::vector<IntVector>& numerator, const std::vector<IntVector>& denominator,
                             std::size_t dim, std::span<const Integer> moduli = {});

    const GroupInvariants& invariants() const noexcept { return invariants_; }
    std::size_t free_rank() const noexcept { return invariants_.free_rank; }
    const std::vector<Integer>& invariant_factors() const noexcept { return invariants_.torsion; }

    // One lift per cyclic factor (torsion factors first, then free ones).
    const std::vector<IntVector>& generators() const noexcept { return generators_; }
    // Order of each generator; 0 for free generators.
    const std::vector<Integer>& orders() const noexcept { return orders_; }

    // Coordinates of v in terms of generators(); torsion coordinates are
    // reduced modulo their order. nullopt when v is outside L1.
    std::optional<IntVector> classify(const IntVector& v) const;

    // Lift of the element with the given coordinates.
    IntVector lift(const IntVector& coordinates) const;

private:
    GroupInvariants invariants_;
    Lattice numerator_;
    std::vector<IntVector> generators_;
    std::vector<Integer> orders_;
    std::vector<IntVector> transform_rows_;  // rows of U selected for the generators
};

/// quotient(ker, im): the presentation of span(ker) / span(im).
AbelianGroupPresentation quotient(const IntMatrix& kernel_generators, const IntMatrix& image_generators);

// ---- rational linear algebra ----

/// Subspace of Q^dim in reduced row-echelon coordinates.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t dim) : dim_(dim) {}
    static Subspace span(const std::vector<RatVector>& generators, std::size_t dim);

    // Adds v; returns true when the dimension grew.
    bool insert(RatVector v);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return basis_.size(); }
    const std::vector<RatVector>& basis() const noexcept { return basis_; }

    std::optional<RatVector> coordinates(const RatVector& v) const;
    bool contains(const RatVector& v) const { return coordinates(v).has_value(); }
    bool contains(const Subspace& other) const;

private:
    std::size_t dim_ = 0;
    std::vector<RatVector> basis_;  // echelon: pivot entries 1, zero in other basis vectors' pivot columns
    std::vector<std::size_t> pivots_;
};

std::size_t rank(const RatMatrix& m);
std::vector<RatVector> nullspace(const SparseRatMatrix& a);

/// Presentation of the quotient of rational subspaces V2 <= V1 <= Q^dim.
class VectorSpaceQuotient {
public:
    VectorSpaceQuotient() = default;
    VectorSpaceQuotient(const std::vector<RatVector>& numerator, const std::vector<RatVector>& denominator,
                        std::size_t dim);

    std::size_t dimension() const noexcept { return complement_.size(); }
    const std::vector<RatVector>& generators() const noexcept { return complement_; }
    std::optional<RatVector> classify(const RatVector& v) const;

private:
    Subspace numerator_;
    std::size_t dim_ = 0;
    std::size_t denominator_rank_ = 0;
    std::vector<RatVector> complement_;
    std::vector<RatVector> solve_basis_;  // denominator basis + complement
};

}  // namespace rgc
