#include "rgc/les.hpp"

namespace rgc {

namespace {

std::string tuple_label(const RealCochainComplex& cx, std::size_t n, std::size_t orbit)
{
    std::string s = "(";
    auto t = cx.nerve().level(n).tuple(cx.basis(n).reps[orbit]);
    for (std::size_t i = 0; i < t.size(); ++i)
        s += (i ? "," : "") + std::to_string(t[i]);
    return s + ")";
}

std::vector<IntVector> unit_vectors(std::size_t dim)
{
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < dim; ++i) {
        IntVector e(dim);
        e[i] = 1;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

ValidationReport check_sequence(const RealShortExactSequence& seq)
{
    return check_short_exact(seq.sub, seq.total, seq.quotient, seq.inclusion, seq.projection);
}

RealCochain push_forward(const RealCochainComplex& from, const RealCochainComplex& to, const CoefficientMorphism& f,
                         const RealCochain& c)
{
    require(from.basis(c.degree).reps == to.basis(c.degree).reps, ErrorKind::invalid_argument,
            "push forward between complexes over different groupoids");
    RealCochain out{c.degree, {}};
    for (const auto& v : c.values)
        out.values.push_back(to.coefficients().reduce(f.matrix.apply(v)));
    return out;
}

CohomologyHom induced_map(const RealCochainComplex& from, const CohomologyGroup& h_from, const RealCochainComplex& to,
                          const CohomologyGroup& h_to, const CoefficientMorphism& f)
{
    CohomologyHom h;
    for (const auto& g : h_from.generators()) {
        RealCochain c = push_forward(from, to, f, from.unflatten(h_from.degree(), g));
        auto coords = h_to.classify(to.flatten(c));
        require(coords.has_value(), ErrorKind::internal, "pushed cocycle is not a cocycle");
        h.images.push_back(*coords);
    }
    return h;
}

Lattice image_lattice(const CohomologyHom& h, const CohomologyGroup& target)
{
    return Lattice::span(h.images, target.orders().size(), target.orders());
}

Lattice kernel_lattice(const CohomologyHom& h, const CohomologyGroup& source, const CohomologyGroup& target)
{
    const std::size_t cols = source.orders().size(), rows = target.orders().size();
    std::vector<IntVector> gens;
    if (rows == 0) {
        gens = unit_vectors(cols);
    } else if (cols > 0) {
        SparseIntMatrix m(rows, cols);
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t r = 0; r < rows; ++r)
                m.add(r, j, h.images[j][r]);
        m.compress();
        gens = kernel_mod(m, target.orders());
    }
    return Lattice::span(gens, cols, source.orders());
}

Lattice zero_lattice(const CohomologyGroup& g) { return Lattice::span({}, g.orders().size(), g.orders()); }

LongExactSequence::LongExactSequence(FiniteRealGroupoid g, RealShortExactSequence seq, std::size_t top_degree)
    : top_(top_degree), seq_(std::move(seq)), a_(g, seq_.sub, top_degree + 2), b_(g, seq_.total, top_degree + 2),
      c_(std::move(g), seq_.quotient, top_degree + 2)
{
    auto report = check_sequence(seq_);
    if (!report.ok())
        fail(ErrorKind::validation_failed, "not a short exact sequence of Real coefficient groups: " +
                                               report.violations.front().axiom);
    for (std::size_t n = 0; n <= top_ + 1; ++n)
        ha_.push_back(a_.cohomology(n));
    for (std::size_t n = 0; n <= top_; ++n) {
        hb_.push_back(b_.cohomology(n));
        hc_.push_back(c_.cohomology(n));
    }
    for (std::size_t n = 0; n <= top_; ++n) {
        i_.push_back(induced_map(a_, ha_[n], b_, hb_[n], seq_.inclusion));
        p_.push_back(induced_map(b_, hb_[n], c_, hc_[n], seq_.projection));
        CohomologyHom d;
        for (const auto& z : hc_[n].generators()) {
            RealCochain zc = c_.unflatten(n, z);
            auto coords = ha_[n + 1].classify(a_.flatten(connecting_cochain(zc, lift(zc))));
            require(coords.has_value(), ErrorKind::internal, "connecting cochain is not a cocycle");
            d.images.push_back(*coords);
        }
        delta_.push_back(std::move(d));
    }
}

RealCochain LongExactSequence::lift(const RealCochain& z) const
{
    const auto& bs = seq_.total;
    const auto& cs = seq_.quotient;
    const auto& basis = c_.basis(z.degree);
    require(z.values.size() == basis.reps.size(), ErrorKind::invalid_argument, "cochain size does not match");
    SparseIntMatrix p = SparseIntMatrix::from_dense(seq_.projection.matrix);
    // p on top of tau - 1 for fixed tuples
    IntMatrix tm = bs.tau() - IntMatrix::identity(bs.dim());
    SparseIntMatrix pf = vstack(p, SparseIntMatrix::from_dense(tm));
    std::vector<Integer> moduli_f(cs.moduli());
    moduli_f.insert(moduli_f.end(), bs.moduli().begin(), bs.moduli().end());

    RealCochain y{z.degree, {}};
    for (std::size_t o = 0; o < basis.reps.size(); ++o) {
        std::optional<IntVector> pre;
        if (basis.fixed[o]) {
            IntVector rhs = z.values[o];
            rhs.resize(cs.dim() + bs.dim());
            pre = solve_mod(pf, rhs, moduli_f);
            if (!pre)
                fail(ErrorKind::obstruction, "no Real lift: the fixed value at " + tuple_label(c_, z.degree, o) +
                                                 " has no preimage fixed by the involution of the middle group");
        } else {
            pre = solve_mod(p, z.values[o], cs.moduli());
            require(pre.has_value(), ErrorKind::validation_failed, "projection is not surjective");
        }
        y.values.push_back(bs.reduce(*pre));
    }
    return y;
}

RealCochain LongExactSequence::connecting_cochain(const RealCochain& z, const RealCochain& y) const
{
    require(c_.is_cocycle(z), ErrorKind::not_a_cocycle, "connecting map applied to a non-cocycle");
    RealCochain dy = b_.apply_differential(y);
    SparseIntMatrix inc = SparseIntMatrix::from_dense(seq_.inclusion.matrix);
    RealCochain x{dy.degree, {}};
    for (std::size_t o = 0; o < dy.values.size(); ++o) {
        auto pre = solve_mod(inc, dy.values[o], seq_.total.moduli());
        if (!pre)
            fail(ErrorKind::invalid_argument, "d(lift) leaves the image of the inclusion at " +
                                                  tuple_label(b_, dy.degree, o) + "; not a lift of the cocycle");
        x.values.push_back(seq_.sub.reduce(*pre));
    }
    return x;
}

std::vector<LongExactSequence::Slot> LongExactSequence::exactness() const
{
    std::vector<Slot> out;
    for (std::size_t n = 0; n <= top_; ++n) {
        const std::string deg = "HR^" + std::to_string(n);
        Lattice in_a = n == 0 ? zero_lattice(ha_[0]) : image_lattice(delta_[n - 1], ha_[n]);
        out.push_back({deg + "(sub)", in_a == kernel_lattice(i_[n], ha_[n], hb_[n])});
        out.push_back({deg + "(total)", image_lattice(i_[n], hb_[n]) == kernel_lattice(p_[n], hb_[n], hc_[n])});
        out.push_back(
            {deg + "(quotient)", image_lattice(p_[n], hc_[n]) == kernel_lattice(delta_[n], hc_[n], ha_[n + 1])});
    }
    return out;
}

}  // namespace rgc
