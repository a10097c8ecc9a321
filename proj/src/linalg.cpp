#include "rgc/linalg.hpp"

#include "rgc/error.hpp"

#include <sstream>

namespace rgc {

namespace {

Integer abs_of(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// q = trunc(a / b)
Integer tdiv(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer fdiv(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// v -= q * w, starting at index `from`.
void axpy_neg(IntVector& v, const Integer& q, const IntVector& w, std::size_t from = 0)
{
    if (q == 0)
        return;
    for (std::size_t i = from; i < v.size(); ++i)
        if (w[i] != 0)
            mpz_submul(v[i].get_mpz_t(), q.get_mpz_t(), w[i].get_mpz_t());
}

bool is_zero(const IntVector& v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

void reduce_tail(IntVector& v, std::span<const Integer> moduli, std::size_t from)
{
    if (moduli.empty())
        return;
    for (std::size_t i = from; i < v.size(); ++i)
        if (moduli[i] > 0 && (v[i] < 0 || v[i] >= moduli[i]))
            mpz_fdiv_r(v[i].get_mpz_t(), v[i].get_mpz_t(), moduli[i].get_mpz_t());
}

struct SnfWork {
    IntMatrix D, U, Uinv, V;
    bool track_u = false;
    bool track_v = false;
    std::size_t rank = 0;

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < D.cols(); ++j)
            std::swap(D(a, j), D(b, j));
        if (track_u) {
            for (std::size_t j = 0; j < U.cols(); ++j)
                std::swap(U(a, j), U(b, j));
            for (std::size_t i = 0; i < Uinv.rows(); ++i)
                std::swap(Uinv(i, a), Uinv(i, b));
        }
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t i = 0; i < D.rows(); ++i)
            std::swap(D(i, a), D(i, b));
        if (track_v)
            for (std::size_t i = 0; i < V.rows(); ++i)
                std::swap(V(i, a), V(i, b));
    }

    // row_i -= q * row_t ; D entries left of column `from` are zero in both rows.
    void row_sub(std::size_t i, std::size_t t, const Integer& q, std::size_t from)
    {
        for (std::size_t j = from; j < D.cols(); ++j)
            if (D(t, j) != 0)
                mpz_submul(D(i, j).get_mpz_t(), q.get_mpz_t(), D(t, j).get_mpz_t());
        if (track_u) {
            for (std::size_t j = 0; j < U.cols(); ++j)
                if (U(t, j) != 0)
                    mpz_submul(U(i, j).get_mpz_t(), q.get_mpz_t(), U(t, j).get_mpz_t());
            // Uinv: column t += q * column i
            for (std::size_t r = 0; r < Uinv.rows(); ++r)
                if (Uinv(r, i) != 0)
                    mpz_addmul(Uinv(r, t).get_mpz_t(), q.get_mpz_t(), Uinv(r, i).get_mpz_t());
        }
    }

    // col_j -= q * col_t
    void col_sub(std::size_t j, std::size_t t, const Integer& q, std::size_t from)
    {
        for (std::size_t i = from; i < D.rows(); ++i)
            if (D(i, t) != 0)
                mpz_submul(D(i, j).get_mpz_t(), q.get_mpz_t(), D(i, t).get_mpz_t());
        if (track_v)
            for (std::size_t i = 0; i < V.rows(); ++i)
                if (V(i, t) != 0)
                    mpz_submul(V(i, j).get_mpz_t(), q.get_mpz_t(), V(i, t).get_mpz_t());
    }

    // row_t += row_i
    void row_add(std::size_t t, std::size_t i, std::size_t from)
    {
        for (std::size_t j = from; j < D.cols(); ++j)
            D(t, j) += D(i, j);
        if (track_u) {
            for (std::size_t j = 0; j < U.cols(); ++j)
                U(t, j) += U(i, j);
            for (std::size_t r = 0; r < Uinv.rows(); ++r)
                Uinv(r, i) -= Uinv(r, t);
        }
    }

    void negate_row(std::size_t t)
    {
        for (std::size_t j = 0; j < D.cols(); ++j)
            D(t, j) = -D(t, j);
        if (track_u) {
            for (std::size_t j = 0; j < U.cols(); ++j)
                U(t, j) = -U(t, j);
            for (std::size_t r = 0; r < Uinv.rows(); ++r)
                Uinv(r, t) = -Uinv(r, t);
        }
    }

    void run()
    {
        const std::size_t m = D.rows(), n = D.cols();
        std::size_t t = 0;
        while (t < m && t < n) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::size_t pi = m, pj = n;
            Integer best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (D(i, j) != 0) {
                        Integer a = abs_of(D(i, j));
                        if (pi == m || a < best) {
                            best = a;
                            pi = i;
                            pj = j;
                            if (best == 1)
                                goto found;
                        }
                    }
        found:
            if (pi == m)
                break;
            swap_rows(t, pi);
            swap_cols(t, pj);

            for (;;) {
                bool clean = true;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (D(i, t) != 0) {
                        row_sub(i, t, tdiv(D(i, t), D(t, t)), t);
                        if (D(i, t) != 0)
                            clean = false;
                    }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(t, j) != 0) {
                        col_sub(j, t, tdiv(D(t, j), D(t, t)), t);
                        if (D(t, j) != 0)
                            clean = false;
                    }
                if (!clean) {
                    std::size_t bi = t, bj = t;
                    Integer b = abs_of(D(t, t));
                    for (std::size_t i = t + 1; i < m; ++i)
                        if (D(i, t) != 0 && abs_of(D(i, t)) < b) {
                            b = abs_of(D(i, t));
                            bi = i;
                            bj = t;
                        }
                    for (std::size_t j = t + 1; j < n; ++j)
                        if (D(t, j) != 0 && abs_of(D(t, j)) < b) {
                            b = abs_of(D(t, j));
                            bi = t;
                            bj = j;
                        }
                    swap_rows(t, bi);
                    swap_cols(t, bj);
                    continue;
                }
                if (abs_of(D(t, t)) != 1) {
                    std::size_t bad = m;
                    for (std::size_t i = t + 1; i < m && bad == m; ++i)
                        for (std::size_t j = t + 1; j < n; ++j)
                            if (D(i, j) != 0 && !mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
                                bad = i;
                                break;
                            }
                    if (bad != m) {
                        row_add(t, bad, t);
                        continue;
                    }
                }
                break;
            }
            if (D(t, t) < 0)
                negate_row(t);
            ++t;
        }
        rank = t;
    }
};

SnfWork run_snf(const IntMatrix& m, bool track_u, bool track_v)
{
    SnfWork w;
    w.D = m;
    w.track_u = track_u;
    w.track_v = track_v;
    if (track_u) {
        w.U = IntMatrix::identity(m.rows());
        w.Uinv = IntMatrix::identity(m.rows());
    }
    if (track_v)
        w.V = IntMatrix::identity(m.cols());
    w.run();
    return w;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0)
            ++p;
        if (p == a.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a(p, j), a(r, j));
        Rational inv = 1 / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j)
            if (a(r, j) != 0)
                a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0)
                continue;
            Rational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                if (a(r, j) != 0)
                    a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Integer floor_mod(const Integer& a, const Integer& m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

void reduce_mod(IntVector& v, std::span<const Integer> moduli) { reduce_tail(v, moduli, 0); }

// ---- Smith form ----

std::vector<Integer> SmithForm::diagonal() const
{
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
        d.push_back(D(i, i));
    return d;
}

SmithForm smith_normal_form(const IntMatrix& m)
{
    SnfWork w = run_snf(m, true, true);
    SmithForm f;
    f.U = std::move(w.U);
    f.D = std::move(w.D);
    f.V = std::move(w.V);
    f.U_inverse = std::move(w.Uinv);
    f.rank = w.rank;
    return f;
}

std::optional<IntVector> solve_linear(const IntMatrix& m, const IntVector& b)
{
    require(b.size() == m.rows(), ErrorKind::invalid_argument, "solve_linear: dimension mismatch");
    SmithForm f = smith_normal_form(m);
    IntVector ub = f.U.apply(b);
    IntVector y(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i < f.rank) {
            if (!mpz_divisible_p(ub[i].get_mpz_t(), f.D(i, i).get_mpz_t()))
                return std::nullopt;
            y[i] = ub[i] / f.D(i, i);
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return f.V.apply(y);
}

std::optional<RatVector> solve_linear(const RatMatrix& m, const RatVector& b)
{
    require(b.size() == m.rows(), ErrorKind::invalid_argument, "solve_linear: dimension mismatch");
    RatMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto pivots = rref(aug);
    RatVector x(m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == m.cols())
            return std::nullopt;
        x[pivots[r]] = aug(r, m.cols());
    }
    return x;
}

// ---- lattices ----

Lattice Lattice::span(std::vector<IntVector> generators, std::size_t dim, std::span<const Integer> moduli)
{
    require(moduli.empty() || moduli.size() == dim, ErrorKind::invalid_argument, "Lattice::span: moduli size");
    Lattice lat(dim);
    std::vector<IntVector> pool;
    pool.reserve(generators.size());
    for (auto& g : generators) {
        require(g.size() == dim, ErrorKind::invalid_argument, "Lattice::span: generator dimension");
        reduce_tail(g, moduli, 0);
        if (!is_zero(g))
            pool.push_back(std::move(g));
    }

    std::vector<std::size_t> cand;
    for (std::size_t r = 0; r < dim; ++r) {
        if (!moduli.empty() && moduli[r] > 0) {
            IntVector rel(dim);
            rel[r] = moduli[r];
            pool.push_back(std::move(rel));
        }
        cand.clear();
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (pool[i][r] != 0)
                cand.push_back(i);
        if (cand.empty())
            continue;
        while (cand.size() > 1) {
            std::size_t p = cand[0];
            for (std::size_t c : cand)
                if (abs_of(pool[c][r]) < abs_of(pool[p][r]))
                    p = c;
            std::vector<std::size_t> next{p};
            for (std::size_t c : cand) {
                if (c == p)
                    continue;
                axpy_neg(pool[c], tdiv(pool[c][r], pool[p][r]), pool[p], r);
                reduce_tail(pool[c], moduli, r + 1);
                if (pool[c][r] != 0)
                    next.push_back(c);
            }
            cand = std::move(next);
        }
        IntVector piv = std::move(pool[cand[0]]);
        if (piv[r] < 0) {
            for (auto& x : piv)
                x = -x;
            reduce_tail(piv, moduli, r + 1);
        }
        lat.basis_.push_back(std::move(piv));
        lat.pivots_.push_back(r);
        std::vector<IntVector> rest;
        rest.reserve(pool.size());
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (i != cand[0] && !is_zero(pool[i]))
                rest.push_back(std::move(pool[i]));
        pool = std::move(rest);
    }
    return lat;
}

std::optional<IntVector> Lattice::coordinates(const IntVector& v) const
{
    require(v.size() == dim_, ErrorKind::invalid_argument, "Lattice::coordinates: dimension");
    IntVector w = v;
    IntVector coef(basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        const std::size_t p = pivots_[k];
        if (w[p] == 0)
            continue;
        if (!mpz_divisible_p(w[p].get_mpz_t(), basis_[k][p].get_mpz_t()))
            return std::nullopt;
        coef[k] = w[p] / basis_[k][p];
        axpy_neg(w, coef[k], basis_[k], p);
    }
    if (!is_zero(w))
        return std::nullopt;
    return coef;
}

bool Lattice::contains(const Lattice& other) const
{
    for (const auto& b : other.basis_)
        if (!contains(b))
            return false;
    return true;
}

void Lattice::size_reduce(IntVector& v) const
{
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        const std::size_t p = pivots_[k];
        if (v[p] >= 0 && v[p] < basis_[k][p])
            continue;
        axpy_neg(v, fdiv(v[p], basis_[k][p]), basis_[k], p);
    }
}

std::vector<IntVector> kernel_mod(const SparseIntMatrix& a, std::span<const Integer> moduli, const Lattice* reduction)
{
    const std::size_t n = a.cols();
    require(moduli.empty() || moduli.size() == a.rows(), ErrorKind::invalid_argument, "kernel_mod: moduli size");
    require(reduction == nullptr || reduction->dim() == n, ErrorKind::invalid_argument, "kernel_mod: reduction dim");

    std::vector<IntVector> basis(n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i)
        basis[i][i] = 1;

    std::vector<Integer> values;
    std::vector<std::size_t> active;
    for (std::size_t row = 0; row < a.rows(); ++row) {
        const auto& entries = a.row(row);
        if (entries.empty())
            continue;
        const Integer d = moduli.empty() ? Integer(0) : moduli[row];
        values.assign(basis.size(), Integer(0));
        active.clear();
        for (std::size_t b = 0; b < basis.size(); ++b) {
            Integer& v = values[b];
            for (const auto& [c, x] : entries)
                if (basis[b][c] != 0)
                    mpz_addmul(v.get_mpz_t(), x.get_mpz_t(), basis[b][c].get_mpz_t());
            if (d > 0)
                mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
            if (v != 0)
                active.push_back(b);
        }
        if (active.empty())
            continue;
        std::vector<std::size_t> touched = active;
        while (active.size() > 1) {
            std::size_t p = active[0];
            for (std::size_t c : active)
                if (abs_of(values[c]) < abs_of(values[p]))
                    p = c;
            std::vector<std::size_t> next{p};
            for (std::size_t c : active) {
                if (c == p)
                    continue;
                Integer q = tdiv(values[c], values[p]);
                axpy_neg(basis[c], q, basis[p]);
                mpz_submul(values[c].get_mpz_t(), q.get_mpz_t(), values[p].get_mpz_t());
                if (d > 0)
                    mpz_fdiv_r(values[c].get_mpz_t(), values[c].get_mpz_t(), d.get_mpz_t());
                if (values[c] != 0)
                    next.push_back(c);
            }
            active = std::move(next);
        }
        const std::size_t p = active[0];
        if (d == 0) {
            basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(p));
            for (auto& t : touched)
                if (t > p)
                    --t;
                else if (t == p)
                    t = basis.size();
        } else {
            Integer g = gcd(values[p], d);
            Integer mult = d / g;
            for (auto& x : basis[p])
                x *= mult;
        }
        if (reduction)
            for (std::size_t t : touched)
                if (t < basis.size())
                    reduction->size_reduce(basis[t]);
    }
    std::vector<IntVector> out;
    for (auto& b : basis)
        if (!is_zero(b))
            out.push_back(std::move(b));
    if (reduction)
        for (const auto& b : reduction->basis())
            out.push_back(b);
    return out;
}

std::optional<IntVector> solve_mod(const SparseIntMatrix& a, const IntVector& b, std::span<const Integer> moduli,
                                   const Lattice* reduction)
{
    require(b.size() == a.rows(), ErrorKind::invalid_argument, "solve_mod: dimension mismatch");
    const std::size_t n = a.cols();
    SparseIntMatrix aug(a.rows(), n + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (const auto& [c, x] : a.row(i))
            aug.add(i, c, x);
        if (b[i] != 0)
            aug.add(i, n, -b[i]);
    }
    std::optional<Lattice> ext;
    if (reduction) {
        std::vector<IntVector> gens;
        for (auto v : reduction->basis()) {
            v.push_back(0);
            gens.push_back(std::move(v));
        }
        ext = Lattice::span(std::move(gens), n + 1);
    }
    auto kernel = kernel_mod(aug, moduli, ext ? &*ext : nullptr);
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < kernel.size(); ++i)
        if (kernel[i][n] != 0)
            active.push_back(i);
    if (active.empty())
        return std::nullopt;
    while (active.size() > 1) {
        std::size_t p = active[0];
        for (std::size_t c : active)
            if (abs_of(kernel[c][n]) < abs_of(kernel[p][n]))
                p = c;
        std::vector<std::size_t> next{p};
        for (std::size_t c : active) {
            if (c == p)
                continue;
            axpy_neg(kernel[c], tdiv(kernel[c][n], kernel[p][n]), kernel[p]);
            if (kernel[c][n] != 0)
                next.push_back(c);
        }
        active = std::move(next);
    }
    IntVector& v = kernel[active[0]];
    if (abs_of(v[n]) != 1)
        return std::nullopt;
    IntVector x(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
    if (v[n] < 0)
        for (auto& e : x)
            e = -e;
    return x;
}

// ---- group invariants ----

Integer GroupInvariants::order() const
{
    require(is_finite(), ErrorKind::invalid_argument, "order of an infinite group");
    Integer o = 1;
    for (const auto& d : torsion)
        o *= d;
    return o;
}

std::string GroupInvariants::to_string() const
{
    if (is_trivial())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& d : torsion) {
        os << (first ? "" : " + ") << "Z/" << d.get_str();
        first = false;
    }
    if (free_rank > 0) {
        os << (first ? "" : " + ") << "Z";
        if (free_rank > 1)
            os << "^" << free_rank;
    }
    return os.str();
}

GroupInvariants canonical_invariants(std::size_t free_rank, const std::vector<Integer>& orders)
{
    GroupInvariants g;
    g.free_rank = free_rank;
    std::vector<Integer> finite;
    for (const auto& o : orders) {
        if (o == 0)
            ++g.free_rank;
        else if (abs_of(o) != 1)
            finite.push_back(abs_of(o));
    }
    if (finite.empty())
        return g;
    IntMatrix d(finite.size(), finite.size());
    for (std::size_t i = 0; i < finite.size(); ++i)
        d(i, i) = finite[i];
    SnfWork w = run_snf(d, false, false);
    for (std::size_t i = 0; i < w.rank; ++i)
        if (w.D(i, i) != 1)
            g.torsion.push_back(w.D(i, i));
    return g;
}

GroupInvariants direct_sum(const GroupInvariants& a, const GroupInvariants& b)
{
    std::vector<Integer> orders = a.torsion;
    orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
    return canonical_invariants(a.free_rank + b.free_rank, orders);
}

// ---- quotient presentations ----

AbelianGroupPresentation::AbelianGroupPresentation(const std::vector<IntVector>& numerator,
                                                   const std::vector<IntVector>& denominator, std::size_t dim,
                                                   std::span<const Integer> moduli)
{
    numerator_ = Lattice::span(numerator, dim, moduli);
    Lattice den = Lattice::span(denominator, dim, moduli);
    const std::size_t k = numerator_.rank();
    IntMatrix m(k, den.rank());
    for (std::size_t j = 0; j < den.rank(); ++j) {
        auto c = numerator_.coordinates(den.basis()[j]);
        if (!c)
            fail(ErrorKind::internal, "image not contained in kernel");
        for (std::size_t i = 0; i < k; ++i)
            m(i, j) = (*c)[i];
    }
    SnfWork w = run_snf(m, true, false);
    std::vector<Integer> orders;
    for (std::size_t i = 0; i < k; ++i) {
        Integer o = i < w.rank ? w.D(i, i) : Integer(0);
        orders.push_back(o);
        if (o == 1)
            continue;
        IntVector gen(dim);
        for (std::size_t b = 0; b < k; ++b)
            if (w.Uinv(b, i) != 0)
                for (std::size_t r = 0; r < dim; ++r)
                    if (numerator_.basis()[b][r] != 0)
                        mpz_addmul(gen[r].get_mpz_t(), w.Uinv(b, i).get_mpz_t(),
                                   numerator_.basis()[b][r].get_mpz_t());
        reduce_tail(gen, moduli, 0);
        generators_.push_back(std::move(gen));
        orders_.push_back(o);
        transform_rows_.push_back(w.U.row(i));
    }
    invariants_ = canonical_invariants(0, orders);
}

std::optional<IntVector> AbelianGroupPresentation::classify(const IntVector& v) const
{
    auto y = numerator_.coordinates(v);
    if (!y)
        return std::nullopt;
    IntVector z(generators_.size());
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        for (std::size_t b = 0; b < y->size(); ++b)
            if ((*y)[b] != 0 && transform_rows_[i][b] != 0)
                mpz_addmul(z[i].get_mpz_t(), transform_rows_[i][b].get_mpz_t(), (*y)[b].get_mpz_t());
        if (orders_[i] > 0)
            z[i] = floor_mod(z[i], orders_[i]);
    }
    return z;
}

IntVector AbelianGroupPresentation::lift(const IntVector& coordinates) const
{
    require(coordinates.size() == generators_.size(), ErrorKind::invalid_argument, "lift: coordinate count");
    IntVector v(numerator_.dim());
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (coordinates[i] != 0)
            for (std::size_t r = 0; r < v.size(); ++r)
                v[r] += coordinates[i] * generators_[i][r];
    return v;
}

AbelianGroupPresentation quotient(const IntMatrix& kernel_generators, const IntMatrix& image_generators)
{
    require(kernel_generators.rows() == image_generators.rows() || image_generators.cols() == 0,
            ErrorKind::invalid_argument, "quotient: ambient dimension mismatch");
    std::vector<IntVector> im;
    if (image_generators.cols() > 0)
        im = image_generators.columns();
    return AbelianGroupPresentation(kernel_generators.columns(), im, kernel_generators.rows());
}

// ---- rational ----

Subspace Subspace::span(const std::vector<RatVector>& generators, std::size_t dim)
{
    Subspace s(dim);
    for (const auto& g : generators)
        s.insert(g);
    return s;
}

bool Subspace::insert(RatVector v)
{
    require(v.size() == dim_, ErrorKind::invalid_argument, "Subspace: vector dimension");
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        const Rational f = v[pivots_[k]];
        if (f == 0)
            continue;
        for (std::size_t i = 0; i < dim_; ++i)
            if (basis_[k][i] != 0)
                v[i] -= f * basis_[k][i];
    }
    std::size_t p = 0;
    while (p < dim_ && v[p] == 0)
        ++p;
    if (p == dim_)
        return false;
    const Rational inv = 1 / v[p];
    for (auto& x : v)
        if (x != 0)
            x *= inv;
    for (auto& b : basis_) {
        const Rational f = b[p];
        if (f == 0)
            continue;
        for (std::size_t i = 0; i < dim_; ++i)
            if (v[i] != 0)
                b[i] -= f * v[i];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, p);
    basis_.insert(basis_.begin() + pos, std::move(v));
    return true;
}

std::optional<RatVector> Subspace::coordinates(const RatVector& v) const
{
    require(v.size() == dim_, ErrorKind::invalid_argument, "Subspace::coordinates: dimension");
    RatVector w = v;
    RatVector c(basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        c[k] = v[pivots_[k]];
        if (c[k] == 0)
            continue;
        for (std::size_t i = 0; i < dim_; ++i)
            if (basis_[k][i] != 0)
                w[i] -= c[k] * basis_[k][i];
    }
    for (const auto& x : w)
        if (x != 0)
            return std::nullopt;
    return c;
}

bool Subspace::contains(const Subspace& other) const
{
    for (const auto& b : other.basis_)
        if (!contains(b))
            return false;
    return true;
}

std::size_t rank(const RatMatrix& m)
{
    RatMatrix a = m;
    return rref(a).size();
}

std::vector<RatVector> nullspace(const SparseRatMatrix& a)
{
    RatMatrix d = a.to_dense();
    auto pivots = rref(d);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<RatVector> out;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f])
            continue;
        RatVector v(a.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -d(r, f);
        out.push_back(std::move(v));
    }
    return out;
}

VectorSpaceQuotient::VectorSpaceQuotient(const std::vector<RatVector>& numerator,
                                         const std::vector<RatVector>& denominator, std::size_t dim)
    : dim_(dim)
{
    numerator_ = Subspace::span(numerator, dim);
    Subspace den = Subspace::span(denominator, dim);
    if (!numerator_.contains(den))
        fail(ErrorKind::internal, "image not contained in kernel");
    denominator_rank_ = den.rank();
    solve_basis_ = den.basis();
    Subspace acc = den;
    for (const auto& b : numerator_.basis())
        if (acc.insert(b)) {
            complement_.push_back(b);
            solve_basis_.push_back(b);
        }
}

std::optional<RatVector> VectorSpaceQuotient::classify(const RatVector& v) const
{
    if (!numerator_.contains(v))
        return std::nullopt;
    if (solve_basis_.empty())
        return RatVector{};
    auto a = solve_linear(RatMatrix::from_columns(solve_basis_, dim_), v);
    if (!a)
        fail(ErrorKind::internal, "quotient classification failed");
    return RatVector(a->begin() + static_cast<std::ptrdiff_t>(denominator_rank_), a->end());
}

}  // namespace rgc
