#include "sgtk/stein.hpp"

#include <algorithm>

#include "sgtk/error.hpp"

namespace sgtk::stein {

namespace checked = zlinalg::checked;

void SteinProblem::validate() const
{
    const std::size_t p = one_handles.size();
    if (curves.empty())
        throw InputError("stein problem has no 2-handle curves");
    if (distinguished >= curves.size())
        throw InputError("distinguished curve index " + std::to_string(distinguished) + " out of range");
    for (const auto& c : curves) {
        if (c.traversal.size() != p)
            throw InputError("curve '" + c.name + "' has a traversal of length " +
                             std::to_string(c.traversal.size()) + " but there are " + std::to_string(p) +
                             " one-handles");
        if (c.sign != 1)
            throw PreconditionError("curve '" + c.name +
                                    "' carries a negative twist; the Stein construction needs positive twists");
        if (c.word) {
            IntVector ab(p, 0);
            for (const auto& run : *c.word) {
                if (run.handle >= p)
                    throw InputError("curve '" + c.name + "' runs over an unknown one-handle");
                if (run.sign != 1 && run.sign != -1)
                    throw InputError("curve '" + c.name + "' has a run with sign other than +-1");
                ab[run.handle] = checked::add(ab[run.handle], run.sign);
            }
            if (ab != c.traversal)
                throw InputError("curve '" + c.name + "' word does not match its traversal vector");
        }
    }
}

Int alternation_convention(const HandleWord& word)
{
    const std::size_t len = word.size();
    Int changes = 0;
    for (std::size_t i = 0; i < len; ++i)
        if (word[i].sign != word[(i + 1) % len].sign)
            ++changes;
    // cyclic sign changes always come in pairs
    return -changes / 2;
}

Int base_rotation_planar(const std::optional<HandleWord>& word, const RotationConvention& convention)
{
    if (!word)
        throw PreconditionError(
            "base rotation needs a traversal word; a homology class alone does not determine it. "
            "Supply the word or an explicit rotation");
    return convention(*word);
}

IntMatrix boundary_matrix(const SteinProblem& problem)
{
    const std::size_t p = problem.one_handles.size();
    std::vector<IntVector> cols;
    for (const auto& c : problem.curves) {
        if (c.traversal.size() != p)
            throw InputError("curve '" + c.name + "' traversal length does not match the one-handle count");
        cols.push_back(c.traversal);
    }
    return IntMatrix::from_columns(cols, p);
}

IntVector c1_cochain(const SteinProblem& problem, const RotationConvention& convention)
{
    IntVector r;
    r.reserve(problem.curves.size());
    for (const auto& c : problem.curves)
        r.push_back(c.base_rotation ? *c.base_rotation : base_rotation_planar(c.word, convention));
    return r;
}

RotationResult rotation_number(const SteinProblem& problem, const RotationConvention& convention)
{
    problem.validate();
    const IntMatrix d2 = boundary_matrix(problem);
    const std::size_t k = problem.distinguished;

    RotationResult res;
    res.c1_cochain = c1_cochain(problem, convention);
    const auto basis = zlinalg::kernel_basis(d2);
    res.kernel_rank = basis.size();
    for (const auto& v : basis)
        res.basis_pairings.push_back({v, zlinalg::dot(v, res.c1_cochain)});

    // Coordinates y in the kernel basis with sum y_j b_j[k] = 1.
    IntMatrix row(1, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        row(0, j) = basis[j][k];
    const IntVector one{1};
    const auto y = basis.empty() ? std::nullopt : zlinalg::solve_integer(row, one);
    if (!y) {
        Int g = 0;
        for (const auto& v : basis)
            g = zlinalg::gcd(g, v[k]);
        throw PreconditionError("no H_2 class meets curve '" + problem.curves[k].name +
                                "' with coefficient +-1: ker d_2 has rank " + std::to_string(basis.size()) +
                                " and its coefficients on that curve have gcd " + std::to_string(g));
    }

    IntVector h(problem.curves.size(), 0);
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < h.size(); ++i)
            h[i] = checked::add(h[i], checked::mul((*y)[j], basis[j][i]));

    // Is <c1, .> constant on {h' in ker : h'[k] = 1}? Equivalent to vanishing on
    // the sublattice with zero distinguished coefficient.
    const auto avoiding = zlinalg::kernel_basis(row);
    for (const auto& w : avoiding) {
        IntVector v(problem.curves.size(), 0);
        for (std::size_t j = 0; j < basis.size(); ++j)
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = checked::add(v[i], checked::mul(w[j], basis[j][i]));
        if (zlinalg::dot(v, res.c1_cochain) != 0) {
            res.ambiguous = true;
            return res;
        }
    }

    if (zlinalg::multiply(d2, h) != IntVector(d2.rows(), 0))
        throw std::logic_error("rotation_number: h is not a cycle");
    res.rot = zlinalg::dot(h, res.c1_cochain);
    res.h = std::move(h);
    return res;
}

}  // namespace sgtk::stein
